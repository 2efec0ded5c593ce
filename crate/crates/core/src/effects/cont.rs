use std::any::Any;
use std::rc::Rc;

use super::{Applicative, Predictable, Stable};
use crate::data::Delay;
use crate::eval::{EvalLater, Meter, Obs, Pad};
use crate::later::{delay, Fun, Later, Partial, Value};

/// Continuation-passing computation with answer type `R`.
pub struct Cont<R, A>(Rc<dyn Fn(Fun<A, R>) -> R>);

impl<R, A> Clone for Cont<R, A> {
    fn clone(&self) -> Self {
        Cont(Rc::clone(&self.0))
    }
}

impl<R, A> std::fmt::Debug for Cont<R, A> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Cont(<fn>)")
    }
}

impl<R: Value, A: Value> Cont<R, A> {
    pub fn new(run: impl Fn(Fun<A, R>) -> R + 'static) -> Self {
        Cont(Rc::new(run))
    }

    pub fn run(&self, k: Fun<A, R>) -> R {
        (self.0)(k)
    }

    pub fn pure(a: A) -> Self {
        Cont::new(move |k| k.call(a.clone()))
    }
}

/// `wait . fmap (\c -> c (z . delay)) x`: every application adds one wait.
pub fn predict_cont<R: Stable, A: Value>(x: Later<Cont<R, A>>) -> Cont<R, Later<A>> {
    Cont::new(move |z: Fun<Later<A>, R>| {
        R::wait(x.map(move |c| c.run(Fun::new(move |a| z.call(delay(a))))))
    })
}

/// The continuation used to observe a `Cont`: an embedding of the value
/// into the answer type.
pub trait Terminal<A>: Stable {
    fn terminal(a: A) -> Self;
}

impl Terminal<i64> for Delay<i64> {
    fn terminal(a: i64) -> Self {
        Delay::Now(a)
    }
}

impl Terminal<u64> for Delay<u64> {
    fn terminal(a: u64) -> Self {
        Delay::Now(a)
    }
}

impl Terminal<bool> for Delay<bool> {
    fn terminal(a: bool) -> Self {
        Delay::Now(a)
    }
}

impl<X: Value, R: Terminal<X>> Terminal<Later<X>> for R {
    fn terminal(x: Later<X>) -> Self {
        R::wait(x.map(R::terminal))
    }
}

impl<R: Terminal<A> + EvalLater, A: Value> EvalLater for Cont<R, A> {
    fn leval(&self, m: &mut Meter) -> Obs {
        self.run(Fun::new(R::terminal)).leval(m)
    }
}

impl<R: Pad, A: Value> Pad for Cont<R, A> {
    fn pad(&self, j: usize) -> Self {
        let c = self.clone();
        Cont::new(move |k| c.run(k).pad(j))
    }
}

/// A type-erased value, so that one answer type serves every element type.
#[derive(Clone)]
pub struct Opaque(Rc<dyn Any>);

impl Opaque {
    pub fn new<A: Value>(a: A) -> Self {
        Opaque(Rc::new(a))
    }

    pub fn get<A: Value>(&self) -> Option<A> {
        self.0.downcast_ref::<A>().cloned()
    }
}

impl std::fmt::Debug for Opaque {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Opaque")
    }
}

/// Continuations answering in `Delay`. Observation runs the computation
/// with the `Now` continuation and evaluates the delayed answer.
pub struct ContEff;

pub type ContD<A> = Cont<Delay<Opaque>, A>;

impl Applicative for ContEff {
    type F<A: Value> = ContD<A>;

    fn name() -> String {
        "Cont".into()
    }
    fn pure<A: Value>(a: A) -> ContD<A> {
        Cont::pure(a)
    }
    fn map<A: Value, B: Value>(fa: ContD<A>, f: impl Fn(A) -> B + 'static) -> ContD<B> {
        let f = Rc::new(f);
        Cont::new(move |k: Fun<B, Delay<Opaque>>| {
            let f = Rc::clone(&f);
            fa.run(Fun::new(move |a| k.call(f(a))))
        })
    }
    fn map2<A: Value, B: Value, C: Value>(
        fa: ContD<A>,
        fb: ContD<B>,
        f: impl Fn(A, B) -> C + 'static,
    ) -> ContD<C> {
        let f = Rc::new(f);
        Cont::new(move |k: Fun<C, Delay<Opaque>>| {
            let (f, fb) = (Rc::clone(&f), fb.clone());
            fa.run(Fun::new(move |a: A| {
                let (f, k) = (Rc::clone(&f), k.clone());
                fb.run(Fun::new(move |b| k.call(f(a.clone(), b))))
            }))
        })
    }
    fn observe<A: Value>(fa: &ContD<A>, m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs {
        let mut cur = fa.run(Fun::new(|a: A| Delay::Now(Opaque::new(a))));
        loop {
            match cur {
                Delay::Now(o) => {
                    let a = o.get::<A>().expect("Cont answered with a foreign value");
                    return elem(&a, m);
                }
                Delay::Wait(l) => match m.force(&l) {
                    Partial::Value(d) => cur = d,
                    Partial::Exhausted => return Obs::Exhausted,
                },
            }
        }
    }
}

impl Predictable for ContEff {
    fn predict<A: Value>(x: Later<ContD<A>>) -> ContD<Later<A>> {
        predict_cont(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{observe, observe_counted, ObsBudget};

    #[test]
    fn predicted_pure_costs_two_forces() {
        let c = predict_cont::<Delay<i64>, i64>(delay(Cont::pure(3)));
        assert_eq!(observe_counted(&c, ObsBudget::new(1, 2)), (Obs::Int(3), 2));
        assert_eq!(observe(&c, ObsBudget::new(1, 1)), Obs::Exhausted);
    }

    #[test]
    fn each_predict_adds_one_wait() {
        // Relative to its (already delayed) input, predict costs exactly one force.
        let b = ObsBudget::new(1, 100);
        let c0: Cont<Delay<i64>, i64> = Cont::pure(3);
        let c1 = predict_cont(delay(c0.clone()));
        assert_eq!(observe_counted(&c1, b).1, observe_counted(&delay(c0), b).1 + 1);
        let c2 = predict_cont(delay(c1.clone()));
        assert_eq!(observe_counted(&c2, b).1, observe_counted(&delay(c1), b).1 + 1);
    }

    #[test]
    fn cont_effect_observation_goes_through_now() {
        let c = ContEff::map2(ContEff::pure(2i64), ContEff::pure(5i64), |a, b| a * b);
        let mut m = Meter::with_fuel(10);
        assert_eq!(ContEff::observe(&c, &mut m, &|a: &i64, _| Obs::Int(*a)), Obs::Int(10));
    }
}
