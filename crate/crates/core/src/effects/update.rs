use std::marker::PhantomData;

use super::{predict_update, Applicative, ApplyAction, Monoid, Predictable, Stable};
use crate::data::PStream;
use crate::eval::{observe_fn, EvalLater, Meter, Obs, Pad, Probes};
use crate::later::{Fun, Later, Value};

/// Reader-state with a monoidal output acting on the state: `s -> (p, a)`.
pub struct Update<P, S, A>(pub Fun<S, (P, A)>);

impl<P, S, A> Clone for Update<P, S, A> {
    fn clone(&self) -> Self {
        Update(self.0.clone())
    }
}

impl<P, S, A> std::fmt::Debug for Update<P, S, A> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Update(<fn>)")
    }
}

impl<P: Value, S: Value, A: Value> Update<P, S, A> {
    pub fn new(run: impl Fn(S) -> (P, A) + 'static) -> Self {
        Update(Fun::new(run))
    }

    pub fn run(&self, s: S) -> (P, A) {
        self.0.call(s)
    }
}

/// Observed as a function of the initial state: `(output, value)` at each
/// probe state.
impl<P: EvalLater, S: Probes, A: EvalLater> EvalLater for Update<P, S, A> {
    fn leval(&self, m: &mut Meter) -> Obs {
        observe_fn::<S>(m, |s, m| self.run(s.clone()).leval(m))
    }
}

impl<P: Pad, S: Value, A: Pad> Pad for Update<P, S, A> {
    fn pad(&self, j: usize) -> Self {
        Update(self.0.pad(j))
    }
}

/// Sets the state to the immediately available head of `p`, if any.
///
/// Not bisimulation invariant: a leading `Wait` hides the head.
pub fn apply_action_head<A: Value>(p: &PStream<A>, s: A) -> A {
    match p {
        PStream::Cons(x, _) => x.clone(),
        PStream::Nil | PStream::Wait(_) => s,
    }
}

impl<A: Value> ApplyAction<A> for PStream<A> {
    fn apply_action(&self, s: A) -> A {
        apply_action_head(self, s)
    }
}

pub fn update_bind<P, S, A, B>(u: Update<P, S, A>, k: impl Fn(A) -> Update<P, S, B> + 'static) -> Update<P, S, B>
where
    P: ApplyAction<S>,
    S: Value,
    A: Value,
    B: Value,
{
    Update::new(move |s: S| {
        let (p, a) = u.run(s.clone());
        let (q, b) = k(a).run(p.apply_action(s));
        (p.append(&q), b)
    })
}

pub fn put_action<P: Value, S: Value>(p: P) -> Update<P, S, ()> {
    Update::new(move |_| (p.clone(), ()))
}

pub fn get_state<P: Monoid, S: Value>() -> Update<P, S, S> {
    Update::new(|s| (P::empty(), s))
}

pub struct UpdateEff<P, S>(PhantomData<(P, S)>);

impl<P, S> Applicative for UpdateEff<P, S>
where
    P: ApplyAction<S> + Stable + EvalLater,
    S: Probes,
{
    type F<A: Value> = Update<P, S, A>;

    fn name() -> String {
        "Update".into()
    }
    fn pure<A: Value>(a: A) -> Update<P, S, A> {
        Update::new(move |_| (P::empty(), a.clone()))
    }
    fn map<A: Value, B: Value>(fa: Update<P, S, A>, f: impl Fn(A) -> B + 'static) -> Update<P, S, B> {
        Update::new(move |s| {
            let (p, a) = fa.run(s);
            (p, f(a))
        })
    }
    fn map2<A: Value, B: Value, C: Value>(
        fa: Update<P, S, A>,
        fb: Update<P, S, B>,
        f: impl Fn(A, B) -> C + 'static,
    ) -> Update<P, S, C> {
        Update::new(move |s: S| {
            let (p, a) = fa.run(s.clone());
            let (q, b) = fb.run(p.apply_action(s));
            (p.append(&q), f(a, b))
        })
    }
    fn observe<A: Value>(fa: &Update<P, S, A>, m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs {
        observe_fn::<S>(m, |s, m| {
            let (p, a) = fa.run(s.clone());
            let po = p.leval(m);
            Obs::pair(po, elem(&a, m))
        })
    }
}

impl<P, S> Predictable for UpdateEff<P, S>
where
    P: ApplyAction<S> + Stable + EvalLater,
    S: Probes,
{
    fn predict<A: Value>(x: Later<Update<P, S, A>>) -> Update<P, S, Later<A>> {
        predict_update(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{bisimilar, observe, ObsBudget};
    use crate::later::delay;

    type P = PStream<i64>;

    fn step() -> Update<P, i64, i64> {
        update_bind(get_state::<P, i64>(), |s| {
            update_bind(put_action::<P, i64>(PStream::from_slice(&[s + 1])), |_| get_state())
        })
    }

    #[test]
    fn read_write_read() {
        let (log, v) = step().run(0);
        assert_eq!(v, 1);
        assert_eq!(observe(&log, ObsBudget::new(5, 5)), Obs::ended(Obs::ints(&[1])));
    }

    #[test]
    fn head_action() {
        assert_eq!(apply_action_head(&PStream::from_slice(&[5i64]), 0), 5);
        assert_eq!(apply_action_head(&PStream::<i64>::Nil, 0), 0);
        assert_eq!(apply_action_head(&PStream::Wait(delay(PStream::from_slice(&[5i64]))), 0), 0);
    }

    #[test]
    fn monad_identity_laws() {
        let id = |o: Obs| o;
        let b = ObsBudget::new(4, 50);
        let k = |a: i64| put_action::<P, i64>(PStream::from_slice(&[a * 2])).0.then(Fun::new(move |(p, _)| (p, a)));
        let k = move |a: i64| Update(k(a));
        let pure3 = UpdateEff::<P, i64>::pure(3i64);
        assert!(bisimilar(&update_bind(pure3, k), &k(3), b, &id));
        assert!(bisimilar(&update_bind(step(), UpdateEff::<P, i64>::pure), &step(), b, &id));
    }

    #[test]
    fn predict_runs_the_suspended_update() {
        let x = delay(get_state::<P, i64>());
        let (p, a) = predict_update(x).run(4);
        let b = ObsBudget::new(3, 5);
        assert_eq!(observe(&p, b), Obs::ended(vec![]));
        assert_eq!(observe(&a, b), Obs::Int(4));
        let (p, _) = predict_update(delay(put_action::<P, i64>(PStream::from_slice(&[9])))).run(0);
        assert_eq!(observe(&p, b), Obs::ended(Obs::ints(&[9])));
    }
}
