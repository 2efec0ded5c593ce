//! The `Later` modality: a memoized one-tick suspension, its applicative
//! structure and the guarded fixpoint.
//!
//! Code outside [`crate::eval`] never forces a `Later`. The only way to get
//! at the value inside is [`Later::force`], which demands a [`Metatheory`]
//! token; the token can only be minted by the evaluation module.

use std::any::Any;
use std::cell::{Cell as StdCell, RefCell};
use std::fmt;
use std::rc::Rc;

use crate::eval::Metatheory;

/// Anything that can live inside a guarded structure.
///
/// Suspensions hand out clones of their cached value, so every payload must
/// be cheaply cloneable. All guarded carriers in this crate are `Rc`-backed.
pub trait Value: Clone + 'static {}

impl<T: Clone + 'static> Value for T {}

enum Cell<A> {
    Pending(Box<dyn FnOnce() -> A>),
    Evaluating,
    Ready(A),
}

/// A value that is only available one step from now.
pub struct Later<A: 'static>(Rc<RefCell<Cell<A>>>);

thread_local! {
    static TRASH: RefCell<Vec<Box<dyn Any>>> = const { RefCell::new(Vec::new()) };
    static DRAINING: StdCell<bool> = const { StdCell::new(false) };
}

// Long evaluated chains (a stream observed to depth 10^4, say) would
// otherwise be freed by one nested drop per link. The last owner of a cell
// moves its contents to a queue which the outermost drop empties.
impl<A: 'static> Drop for Later<A> {
    fn drop(&mut self) {
        if Rc::strong_count(&self.0) != 1 {
            return;
        }
        let Ok(mut cell) = self.0.try_borrow_mut() else { return };
        let contents = std::mem::replace(&mut *cell, Cell::Evaluating);
        drop(cell);
        let boxed: Box<dyn Any> = Box::new(contents);
        let queued = TRASH.try_with(|t| t.borrow_mut().push(boxed)).is_ok();
        if !queued || DRAINING.with(|d| d.replace(true)) {
            return;
        }
        while let Some(item) = TRASH.with(|t| t.borrow_mut().pop()) {
            drop(item);
        }
        DRAINING.with(|d| d.set(false));
    }
}

impl<A: 'static> Clone for Later<A> {
    fn clone(&self) -> Self {
        Later(Rc::clone(&self.0))
    }
}

impl<A: 'static> fmt::Debug for Later<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let state = match &*self.0.borrow() {
            Cell::Pending(_) => "pending",
            Cell::Evaluating => "evaluating",
            Cell::Ready(_) => "ready",
        };
        write!(f, "Later(<{state}>)")
    }
}

impl<A: Value> Later<A> {
    /// `pure` for the modality: if I know `a` now, I still know it later.
    pub fn delay(a: A) -> Self {
        Later(Rc::new(RefCell::new(Cell::Ready(a))))
    }

    fn suspend(thunk: impl FnOnce() -> A + 'static) -> Self {
        Later(Rc::new(RefCell::new(Cell::Pending(Box::new(thunk)))))
    }

    // Host-side evaluation of the suspension. Private: guarded code only
    // manipulates `Later` through `map`/`zip_with`/`lap`/`lfix`.
    fn get(&self) -> A {
        if let Cell::Ready(a) = &*self.0.borrow() {
            return a.clone();
        }
        let previous = std::mem::replace(&mut *self.0.borrow_mut(), Cell::Evaluating);
        match previous {
            Cell::Pending(thunk) => {
                let a = thunk();
                *self.0.borrow_mut() = Cell::Ready(a.clone());
                a
            }
            Cell::Evaluating => panic!(
                "a Later was demanded while its own value was being computed (unguarded recursion)"
            ),
            Cell::Ready(_) => unreachable!(),
        }
    }

    pub fn map<B: Value>(&self, f: impl FnOnce(A) -> B + 'static) -> Later<B> {
        let this = self.clone();
        Later::suspend(move || f(this.get()))
    }

    pub fn zip_with<B: Value, C: Value>(
        &self,
        other: &Later<B>,
        f: impl FnOnce(A, B) -> C + 'static,
    ) -> Later<C> {
        let (x, y) = (self.clone(), other.clone());
        Later::suspend(move || f(x.get(), y.get()))
    }

    /// Metered elimination. Costs exactly one unit of fuel, cached or not.
    pub fn force(&self, fuel: &mut Fuel, _cap: &Metatheory) -> Partial<A> {
        if fuel.spend() {
            Partial::Value(self.get())
        } else {
            Partial::Exhausted
        }
    }

    /// Whether the suspension has already been computed.
    pub fn is_evaluated(&self) -> bool {
        matches!(&*self.0.borrow(), Cell::Ready(_))
    }

    pub fn ptr_eq(&self, other: &Later<A>) -> bool {
        Rc::ptr_eq(&self.0, &other.0)
    }
}

pub fn delay<A: Value>(a: A) -> Later<A> {
    Later::delay(a)
}

/// Applicative application for `Later`. The result is a single tick deep.
pub fn lap<A: Value, B: Value>(f: &Later<Fun<A, B>>, x: &Later<A>) -> Later<B> {
    f.zip_with(x, |f, x| f.call(x))
}

/// Guarded fixpoint.
///
/// The body receives a suspension of its own result. The knot is tied after
/// the body returns, so the suspension is shared: forcing it any number of
/// times never re-runs the body.
pub fn lfix<A: Value>(body: impl FnOnce(Later<A>) -> A) -> A {
    let knot = Later(Rc::new(RefCell::new(Cell::Evaluating)));
    let a = body(knot.clone());
    *knot.0.borrow_mut() = Cell::Ready(a.clone());
    a
}

/// A shareable function value, used for function-typed fixpoints and for the
/// evaluation of arrow types.
pub struct Fun<A, B>(Rc<dyn Fn(A) -> B>);

impl<A, B> Clone for Fun<A, B> {
    fn clone(&self) -> Self {
        Fun(Rc::clone(&self.0))
    }
}

impl<A, B> fmt::Debug for Fun<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Fun(<fn>)")
    }
}

impl<A: 'static, B: 'static> Fun<A, B> {
    pub fn new(f: impl Fn(A) -> B + 'static) -> Self {
        Fun(Rc::new(f))
    }

    pub fn call(&self, a: A) -> B {
        (self.0)(a)
    }

    pub fn then<C: 'static>(&self, g: Fun<B, C>) -> Fun<A, C> {
        let f = self.clone();
        Fun::new(move |a| g.call(f.call(a)))
    }
}

/// Budget of permitted `Later` forces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fuel(u64);

impl Fuel {
    pub fn new(budget: u64) -> Self {
        Fuel(budget)
    }

    pub fn remaining(&self) -> u64 {
        self.0
    }

    /// Takes one unit if any is left.
    pub fn spend(&mut self) -> bool {
        if self.0 == 0 {
            false
        } else {
            self.0 -= 1;
            true
        }
    }
}

/// Outcome of a fuel-bounded evaluation. `Exhausted` stands in for ⊥.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Partial<A> {
    Value(A),
    Exhausted,
}

impl<A> Partial<A> {
    pub fn is_exhausted(&self) -> bool {
        matches!(self, Partial::Exhausted)
    }

    pub fn value(self) -> Option<A> {
        match self {
            Partial::Value(a) => Some(a),
            Partial::Exhausted => None,
        }
    }

    pub fn map<B>(self, f: impl FnOnce(A) -> B) -> Partial<B> {
        match self {
            Partial::Value(a) => Partial::Value(f(a)),
            Partial::Exhausted => Partial::Exhausted,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::Meter;

    fn force<A: Value>(x: &Later<A>, fuel: u64) -> (Partial<A>, u64) {
        let mut m = Meter::with_fuel(fuel);
        let p = m.force(x);
        (p, m.remaining())
    }

    #[test]
    fn delay_costs_one_force() {
        assert_eq!(force(&delay(5), 1), (Partial::Value(5), 0));
        assert_eq!(force(&delay(5), 0), (Partial::Exhausted, 0));
        assert_eq!(force(&delay(5).map(|x| x), 1).0, Partial::Value(5));
    }

    #[test]
    fn lap_applies() {
        let inc = delay(Fun::new(|x: i64| x + 1));
        assert_eq!(force(&lap(&inc, &delay(2)), 1).0, Partial::Value(3));
    }

    #[test]
    fn forcing_twice_hits_the_cache_but_charges_twice() {
        let runs = Rc::new(StdCell::new(0));
        let counter = Rc::clone(&runs);
        let x = delay(7).map(move |v| {
            counter.set(counter.get() + 1);
            v
        });
        let mut m = Meter::with_fuel(2);
        assert_eq!(m.force(&x), Partial::Value(7));
        assert_eq!(m.force(&x), Partial::Value(7));
        assert_eq!(m.remaining(), 0);
        assert_eq!(runs.get(), 1);
        assert_eq!(m.force(&x), Partial::Exhausted);
    }

    #[test]
    fn lfix_ignoring_its_argument_is_the_constant() {
        assert_eq!(lfix(|_: Later<i64>| 42), 42);
    }

    #[test]
    fn lfix_shares_its_suspension() {
        let runs = Rc::new(StdCell::new(0));
        let counter = Rc::clone(&runs);
        let l: Later<i64> = lfix(move |l: Later<Later<i64>>| {
            counter.set(counter.get() + 1);
            let _ = l;
            delay(1)
        });
        let mut m = Meter::with_fuel(10);
        assert_eq!(m.force(&l), Partial::Value(1));
        assert_eq!(runs.get(), 1);
    }

    #[test]
    #[should_panic(expected = "unguarded recursion")]
    fn forcing_the_knot_inside_the_body_is_caught() {
        let _: i64 = lfix(|l: Later<i64>| {
            let mut m = Meter::with_fuel(1);
            m.force(&l).value().unwrap_or(0)
        });
    }

    #[test]
    fn long_evaluated_chains_drop_without_recursion() {
        let s = crate::data::naturals();
        let o = crate::eval::observe(&s, crate::eval::ObsBudget::new(200_000, 200_000));
        assert_eq!(o.items().map(<[_]>::len), Some(200_000));
        drop(s);
        let built = crate::data::Stream::from_vec((0..200_000u64).collect());
        drop(built);
    }

    #[test]
    fn fuel_never_goes_negative() {
        let mut f = Fuel::new(1);
        assert!(f.spend());
        assert!(!f.spend());
        assert_eq!(f.remaining(), 0);
    }
}
