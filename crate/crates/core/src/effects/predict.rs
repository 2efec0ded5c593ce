use super::{Predictable, Prod, Stable, Update, Writer};
use crate::later::{delay, Fun, Later, Value};

pub fn predict_later<A: Value>(x: Later<Later<A>>) -> Later<Later<A>> {
    x
}

pub fn predict_reader<R: Value, A: Value>(x: Later<Fun<R, A>>) -> Fun<R, Later<A>> {
    Fun::new(move |r: R| x.map(move |f| f.call(r)))
}

pub fn predict_writer<W: Stable, A: Value>(x: Later<Writer<W, A>>) -> Writer<W, Later<A>> {
    Writer { value: x.map(|w| w.value), log: W::wait(x.map(|w| w.log)) }
}

pub fn predict_const_pair<C: Stable, A: Value>(x: Later<(C, A)>) -> (C, Later<A>) {
    (C::wait(x.map(|p| p.0)), x.map(|p| p.1))
}

pub fn predict_update<P: Stable, S: Value, A: Value>(x: Later<Update<P, S, A>>) -> Update<P, S, Later<A>> {
    Update::new(move |s: S| predict_const_pair(x.map(move |u| u.run(s))))
}

pub fn predict_prod<F: Predictable, G: Predictable, A: Value>(
    x: Later<Prod<F::F<A>, G::F<A>>>,
) -> Prod<F::F<Later<A>>, G::F<Later<A>>> {
    Prod { pr1: F::predict(x.map(|p| p.pr1)), pr2: G::predict(x.map(|p| p.pr2)) }
}

/// Predict the outer layer, then map the inner predict over it.
pub fn predict_compose<F: Predictable, G: Predictable, A: Value>(
    x: Later<F::F<G::F<A>>>,
) -> F::F<G::F<Later<A>>> {
    F::map(F::predict(x), G::predict::<A>)
}

/// Contravariant functors, as markers with a carrier.
pub trait Contravariant: 'static {
    type F<A: Value>: Value;
    fn contramap<A: Value, B: Value>(fa: Self::F<A>, f: impl Fn(B) -> A + 'static) -> Self::F<B>;
}

pub type Pred<A> = Fun<A, bool>;

pub struct PredEff;

impl Contravariant for PredEff {
    type F<A: Value> = Pred<A>;
    fn contramap<A: Value, B: Value>(p: Pred<A>, f: impl Fn(B) -> A + 'static) -> Pred<B> {
        Fun::new(move |b| p.call(f(b)))
    }
}

/// Prediction for a function out of a contravariant argument into a stable
/// answer: `wait (fmap ($ contramap delay z) f)`.
pub fn predict_negative<C: Contravariant, A: Value, R: Stable>(f: Later<Fun<C::F<A>, R>>, z: C::F<Later<A>>) -> R {
    R::wait(f.map(move |g| g.call(C::contramap(z, delay::<A>))))
}

/// A deliberately wrong "prediction" for `Maybe`: it commits to `Just`
/// before the suspended value is known, filling in a default for `Nothing`.
pub fn predict_maybe_guess<A: Value + Default>(x: Later<Option<A>>) -> Option<Later<A>> {
    Some(x.map(|o| o.unwrap_or_default()))
}
