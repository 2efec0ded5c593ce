//! Effects: applicatives, `predict`, stable carriers and stable monoids.
//!
//! Rust lacks higher-kinded types, so an effect is a zero-sized marker type
//! implementing [`Applicative`], whose generic associated type `F<A>` is the
//! carrier. Traversals are written once against these traits.

mod cont;
mod instances;
mod monoid;
mod predict;
mod update;

use std::marker::PhantomData;

use crate::eval::{EvalLater, Meter, Obs};
use crate::later::{Fun, Later, Value};

pub use cont::{predict_cont, Cont, ContD, ContEff, Opaque, Terminal};
pub use instances::{
    Compose, ComposeEff, Identity, IdentityEff, LaterEff, ListEff, MaybeEff, Prod, ProdEff, ReaderEff, Writer,
    WriterEff, ZipList, ZipListEff,
};
pub use monoid::{dfirst_chain_left, dfirst_chain_right, dlast_chain_left, dlast_chain_right, pappend, DFirst, DLast};
pub use predict::{
    predict_compose, predict_const_pair, predict_later, predict_maybe_guess, predict_negative, predict_prod,
    predict_reader, predict_update, predict_writer, Contravariant, Pred, PredEff,
};
pub use update::{apply_action_head, get_state, put_action, update_bind, Update, UpdateEff};

/// An applicative functor, given as a marker type with a carrier `F<A>`.
pub trait Applicative: 'static {
    type F<A: Value>: Value;

    fn name() -> String;

    fn pure<A: Value>(a: A) -> Self::F<A>;

    fn map<A: Value, B: Value>(fa: Self::F<A>, f: impl Fn(A) -> B + 'static) -> Self::F<B>;

    fn map2<A: Value, B: Value, C: Value>(
        fa: Self::F<A>,
        fb: Self::F<B>,
        f: impl Fn(A, B) -> C + 'static,
    ) -> Self::F<C>;

    fn apply<A: Value, B: Value>(ff: Self::F<Fun<A, B>>, fa: Self::F<A>) -> Self::F<B> {
        Self::map2(ff, fa, |f, a| f.call(a))
    }

    /// Evaluates the effect layer, delegating the contents to `elem`.
    fn observe<A: Value>(fa: &Self::F<A>, m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs;
}

/// Applicatives that can move a `Later` inwards.
pub trait Predictable: Applicative {
    fn predict<A: Value>(x: Later<Self::F<A>>) -> Self::F<Later<A>>;
}

/// Types that can absorb a delay.
pub trait Stable: Value {
    fn wait(x: Later<Self>) -> Self;
}

pub trait Monoid: Value {
    fn empty() -> Self;
    fn append(&self, other: &Self) -> Self;
}

/// A monoid acting on a state space.
pub trait ApplyAction<S>: Monoid {
    fn apply_action(&self, s: S) -> S;
}

/// An effectful value viewed as a guarded value in its own right.
pub struct Observed<E: Applicative, A: Value>(pub E::F<A>, PhantomData<E>);

impl<E: Applicative, A: Value> Observed<E, A> {
    pub fn new(fa: E::F<A>) -> Self {
        Observed(fa, PhantomData)
    }
}

impl<E: Applicative, A: Value> Clone for Observed<E, A> {
    fn clone(&self) -> Self {
        Observed(self.0.clone(), PhantomData)
    }
}

impl<E: Applicative, A: EvalLater> EvalLater for Observed<E, A> {
    fn leval(&self, m: &mut Meter) -> Obs {
        leval_in::<E, A>(&self.0, m)
    }
}

/// `leval` on an effectful value.
pub fn leval_in<E: Applicative, A: EvalLater>(fa: &E::F<A>, m: &mut Meter) -> Obs {
    E::observe(fa, m, &|a: &A, m: &mut Meter| a.leval(m))
}

impl<A: Stable, B: Stable> Stable for (A, B) {
    fn wait(x: Later<Self>) -> Self {
        (A::wait(x.map(|p| p.0)), B::wait(x.map(|p| p.1)))
    }
}

impl<A: Value, B: Stable> Stable for Fun<A, B> {
    fn wait(x: Later<Self>) -> Self {
        Fun::new(move |a: A| B::wait(x.map(move |f| f.call(a))))
    }
}
