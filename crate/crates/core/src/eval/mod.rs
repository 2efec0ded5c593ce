//! Bisimilarity by evaluation.
//!
//! This module is the metatheory: it is the only place holding the
//! capability to force a [`Later`]. Evaluation (`leval`) strips every
//! `Later`/`Wait` layer, charging one unit of fuel per force, and produces a
//! finite [`Obs`]. Lifting (`llift`) goes the other way, re-embedding plain
//! values as guarded ones.

mod check;
mod obs;

use std::collections::BTreeSet;
use std::rc::Rc;

use serde::Serialize;

use crate::data::{Bistream, Delay, ITree, PStream, Stream};
use crate::later::{delay, Fuel, Fun, Later, Partial, Value};

pub use check::{
    bisimilar, check_bisim_invariance, check_composition_closure, check_gwbeq, compare,
    ClosureReport, Comparison, Failure, Pad, Report,
};
pub use obs::{End, Obs};

/// Permission to eliminate `Later`. Only this module can construct one.
pub struct Metatheory(());

/// Depth and fuel limits for one observation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ObsBudget {
    pub depth: usize,
    pub fuel: u64,
}

impl ObsBudget {
    pub fn new(depth: usize, fuel: u64) -> Self {
        ObsBudget { depth, fuel }
    }

    /// Same budget with both limits doubled.
    pub fn doubled(self) -> Self {
        ObsBudget { depth: self.depth.saturating_mul(2), fuel: self.fuel.saturating_mul(2) }
    }
}

/// Running state of one observation: shared fuel, the depth limit and a
/// record of the probe sets used to observe functions.
pub struct Meter {
    fuel: Fuel,
    initial: u64,
    depth: usize,
    cap: Metatheory,
    probes: BTreeSet<String>,
}

impl Meter {
    pub fn new(budget: ObsBudget) -> Self {
        Meter {
            fuel: Fuel::new(budget.fuel),
            initial: budget.fuel,
            depth: budget.depth,
            cap: Metatheory(()),
            probes: BTreeSet::new(),
        }
    }

    /// Unlimited depth.
    pub fn with_fuel(fuel: u64) -> Self {
        Meter::new(ObsBudget::new(usize::MAX, fuel))
    }

    pub fn force<A: Value>(&mut self, x: &Later<A>) -> Partial<A> {
        x.force(&mut self.fuel, &self.cap)
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn remaining(&self) -> u64 {
        self.fuel.remaining()
    }

    pub fn used(&self) -> u64 {
        self.initial - self.fuel.remaining()
    }

    pub fn note_probes(&mut self, description: String) {
        self.probes.insert(description);
    }

    pub fn probes(&self) -> impl Iterator<Item = &String> {
        self.probes.iter()
    }
}

/// Evaluation to a `Later`-free observation.
pub trait EvalLater: Value {
    fn leval(&self, m: &mut Meter) -> Obs;
}

/// Plain (evaluated) values: the `Result` side of evaluation.
pub trait Plain: Value {
    fn to_obs(&self) -> Obs;
}

/// Reading a complete observation back as a plain value.
pub trait FromObs: Sized {
    fn from_obs(o: &Obs) -> Option<Self>;
}

/// Right inverse of evaluation.
pub trait LiftLater: EvalLater {
    type Result: Plain;
    fn llift(r: &Self::Result) -> Self;
}

/// Finite argument sets used to observe functions.
pub trait Probes: Plain {
    fn probes() -> Vec<Self>;
    fn describe() -> String;
}

/// Observes `x` once under `budget`.
pub fn observe<T: EvalLater>(x: &T, budget: ObsBudget) -> Obs {
    x.leval(&mut Meter::new(budget))
}

/// Observation plus the fuel it consumed.
pub fn observe_counted<T: EvalLater>(x: &T, budget: ObsBudget) -> (Obs, u64) {
    let mut m = Meter::new(budget);
    let o = x.leval(&mut m);
    (o, m.used())
}

const PLAIN_FUEL: u64 = 1_000_000;

/// Total evaluation of a guarded value to its plain counterpart.
///
/// Used by the arrow-type instances, which need `leval` inside a lifted
/// function. Panics if the value has no finite evaluation (the ⊥ case).
pub fn leval_plain<T: LiftLater>(x: &T) -> T::Result
where
    T::Result: FromObs,
{
    let o = x.leval(&mut Meter::with_fuel(PLAIN_FUEL));
    T::Result::from_obs(&o).unwrap_or_else(|| panic!("value has no finite evaluation: {o}"))
}

fn observe_function<A: Probes, R>(m: &mut Meter, mut at: impl FnMut(&A, &mut Meter) -> R) -> Vec<(Obs, R)> {
    m.note_probes(A::describe());
    A::probes().iter().map(|p| (p.to_obs(), at(p, m))).collect()
}

/// Observes a function given as `arg ↦ observation`, over `A`'s probes.
pub fn observe_fn<A: Probes>(m: &mut Meter, at: impl FnMut(&A, &mut Meter) -> Obs) -> Obs {
    Obs::Fn(observe_function(m, at))
}

// ---------------------------------------------------------------- ground types

macro_rules! ground {
    ($t:ty, $ctor:expr, $back:pat => $val:expr) => {
        impl EvalLater for $t {
            fn leval(&self, _: &mut Meter) -> Obs {
                $ctor(*self)
            }
        }
        impl Plain for $t {
            fn to_obs(&self) -> Obs {
                $ctor(*self)
            }
        }
        impl FromObs for $t {
            fn from_obs(o: &Obs) -> Option<Self> {
                match o {
                    $back => $val,
                    _ => None,
                }
            }
        }
        impl LiftLater for $t {
            type Result = $t;
            fn llift(r: &$t) -> $t {
                *r
            }
        }
        impl Pad for $t {
            fn pad(&self, _: usize) -> Self {
                *self
            }
        }
    };
}

ground!(i64, Obs::Int, Obs::Int(n) => Some(*n));
ground!(u64, |n: u64| Obs::Int(n as i64), Obs::Int(n) => u64::try_from(*n).ok());
ground!(bool, Obs::Bool, Obs::Bool(b) => Some(*b));
ground!((), |_| Obs::Unit, Obs::Unit => Some(()));

impl Probes for i64 {
    fn probes() -> Vec<i64> {
        vec![-3, 0, 1, 2, 5]
    }
    fn describe() -> String {
        "i64: -3,0,1,2,5".into()
    }
}

impl Probes for u64 {
    fn probes() -> Vec<u64> {
        vec![0, 1, 2, 3, 7]
    }
    fn describe() -> String {
        "u64: 0,1,2,3,7".into()
    }
}

impl Probes for bool {
    fn probes() -> Vec<bool> {
        vec![false, true]
    }
    fn describe() -> String {
        "bool: false,true".into()
    }
}

impl Probes for () {
    fn probes() -> Vec<()> {
        vec![()]
    }
    fn describe() -> String {
        "(): ()".into()
    }
}

/// Probe predicates on integers.
impl Probes for Fun<i64, bool> {
    fn probes() -> Vec<Self> {
        vec![
            Fun::new(|_| true),
            Fun::new(|_| false),
            Fun::new(|n| n > 0),
            Fun::new(|n| n % 2 == 0),
            Fun::new(|n| n == 3),
        ]
    }
    fn describe() -> String {
        "i64 -> bool: const true, const false, >0, even, ==3".into()
    }
}

// ------------------------------------------------------------------ products

impl<A: EvalLater, B: EvalLater> EvalLater for (A, B) {
    fn leval(&self, m: &mut Meter) -> Obs {
        let a = self.0.leval(m);
        Obs::pair(a, self.1.leval(m))
    }
}

impl<A: Plain, B: Plain> Plain for (A, B) {
    fn to_obs(&self) -> Obs {
        Obs::pair(self.0.to_obs(), self.1.to_obs())
    }
}

impl<A: FromObs, B: FromObs> FromObs for (A, B) {
    fn from_obs(o: &Obs) -> Option<Self> {
        match o {
            Obs::Pair(a, b) => Some((A::from_obs(a)?, B::from_obs(b)?)),
            _ => None,
        }
    }
}

impl<A: LiftLater, B: LiftLater> LiftLater for (A, B) {
    type Result = (A::Result, B::Result);
    fn llift(r: &Self::Result) -> Self {
        (A::llift(&r.0), B::llift(&r.1))
    }
}

// -------------------------------------------------------------------- option

impl<A: EvalLater> EvalLater for Option<A> {
    fn leval(&self, m: &mut Meter) -> Obs {
        Obs::Maybe(self.as_ref().map(|a| Box::new(a.leval(m))))
    }
}

impl<A: Plain> Plain for Option<A> {
    fn to_obs(&self) -> Obs {
        Obs::Maybe(self.as_ref().map(|a| Box::new(a.to_obs())))
    }
}

impl<A: FromObs> FromObs for Option<A> {
    fn from_obs(o: &Obs) -> Option<Self> {
        match o {
            Obs::Maybe(None) => Some(None),
            Obs::Maybe(Some(a)) => Some(Some(A::from_obs(a)?)),
            _ => None,
        }
    }
}

impl<A: LiftLater> LiftLater for Option<A> {
    type Result = Option<A::Result>;
    fn llift(r: &Self::Result) -> Self {
        r.as_ref().map(A::llift)
    }
}

// ------------------------------------------------------------- finite lists

impl<A: EvalLater> EvalLater for Vec<A> {
    fn leval(&self, m: &mut Meter) -> Obs {
        let depth = m.depth();
        let items = self.iter().take(depth).map(|a| a.leval(m)).collect();
        let end = if self.len() > depth { End::Truncated(depth) } else { End::Ended };
        Obs::List { items, end }
    }
}

impl<A: Plain> Plain for Vec<A> {
    fn to_obs(&self) -> Obs {
        Obs::ended(self.iter().map(Plain::to_obs).collect())
    }
}

impl<A: FromObs> FromObs for Vec<A> {
    fn from_obs(o: &Obs) -> Option<Self> {
        match o {
            Obs::List { items, end: End::Ended } => items.iter().map(A::from_obs).collect(),
            _ => None,
        }
    }
}

impl<A: LiftLater> LiftLater for Vec<A> {
    type Result = Vec<A::Result>;
    fn llift(r: &Self::Result) -> Self {
        r.iter().map(A::llift).collect()
    }
}

// --------------------------------------------------------------------- Later

impl<A: EvalLater> EvalLater for Later<A> {
    fn leval(&self, m: &mut Meter) -> Obs {
        match m.force(self) {
            Partial::Value(a) => a.leval(m),
            Partial::Exhausted => Obs::Exhausted,
        }
    }
}

impl<A: LiftLater> LiftLater for Later<A> {
    type Result = A::Result;
    fn llift(r: &Self::Result) -> Self {
        delay(A::llift(r))
    }
}

// -------------------------------------------------------------------- Stream

impl<A: EvalLater> EvalLater for Stream<A> {
    fn leval(&self, m: &mut Meter) -> Obs {
        let mut items = Vec::new();
        let mut cur = self.clone();
        loop {
            match cur {
                Stream::Nil => return Obs::List { items, end: End::Ended },
                Stream::Cons(x, tail) => {
                    if items.len() >= m.depth() {
                        return Obs::List { items, end: End::Truncated(m.depth()) };
                    }
                    items.push(x.leval(m));
                    match m.force(&tail) {
                        Partial::Value(next) => cur = next,
                        Partial::Exhausted => return Obs::List { items, end: End::Exhausted },
                    }
                }
            }
        }
    }
}

impl<A: LiftLater> LiftLater for Stream<A> {
    type Result = Vec<A::Result>;
    fn llift(r: &Self::Result) -> Self {
        r.iter().rev().fold(Stream::Nil, |acc, x| Stream::Cons(A::llift(x), delay(acc)))
    }
}

// --------------------------------------------------------------------- Delay

impl<A: EvalLater> EvalLater for Delay<A> {
    fn leval(&self, m: &mut Meter) -> Obs {
        let mut cur = self.clone();
        loop {
            match cur {
                Delay::Now(a) => return a.leval(m),
                Delay::Wait(l) => match m.force(&l) {
                    Partial::Value(d) => cur = d,
                    Partial::Exhausted => return Obs::Exhausted,
                },
            }
        }
    }
}

impl<A: LiftLater> LiftLater for Delay<A> {
    type Result = A::Result;
    fn llift(r: &Self::Result) -> Self {
        Delay::Now(A::llift(r))
    }
}

// ------------------------------------------------------------------- PStream

impl<A: EvalLater> EvalLater for PStream<A> {
    fn leval(&self, m: &mut Meter) -> Obs {
        let mut items = Vec::new();
        let mut cur = self.clone();
        loop {
            match cur {
                PStream::Nil => return Obs::List { items, end: End::Ended },
                PStream::Wait(l) => match m.force(&l) {
                    Partial::Value(p) => cur = p,
                    Partial::Exhausted => return Obs::List { items, end: End::Exhausted },
                },
                PStream::Cons(x, rest) => {
                    if items.len() >= m.depth() {
                        return Obs::List { items, end: End::Truncated(m.depth()) };
                    }
                    items.push(x.leval(m));
                    cur = (*rest).clone();
                }
            }
        }
    }
}

impl<A: LiftLater> LiftLater for PStream<A> {
    type Result = Vec<A::Result>;
    fn llift(r: &Self::Result) -> Self {
        r.iter().rev().fold(PStream::Nil, |acc, x| PStream::Cons(A::llift(x), Rc::new(acc)))
    }
}

// --------------------------------------------------------------------- trees

/// Plain binary tree: the evaluated form of [`ITree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tree<A> {
    Leaf(A),
    Branch(Box<Tree<A>>, Box<Tree<A>>),
}

impl<A> Tree<A> {
    pub fn branch(l: Tree<A>, r: Tree<A>) -> Self {
        Tree::Branch(Box::new(l), Box::new(r))
    }

    pub fn height(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Branch(l, r) => 1 + l.height().max(r.height()),
        }
    }

    /// Leaves left to right.
    pub fn leaves(&self) -> Vec<&A> {
        match self {
            Tree::Leaf(a) => vec![a],
            Tree::Branch(l, r) => {
                let mut v = l.leaves();
                v.extend(r.leaves());
                v
            }
        }
    }
}

impl<A: Plain> Plain for Tree<A> {
    fn to_obs(&self) -> Obs {
        match self {
            Tree::Leaf(a) => Obs::Leaf(Box::new(a.to_obs())),
            Tree::Branch(l, r) => Obs::Branch(Box::new(l.to_obs()), Box::new(r.to_obs())),
        }
    }
}

impl<A: FromObs> FromObs for Tree<A> {
    fn from_obs(o: &Obs) -> Option<Self> {
        match o {
            Obs::Leaf(a) => Some(Tree::Leaf(A::from_obs(a)?)),
            Obs::Branch(l, r) => Some(Tree::branch(Tree::from_obs(l)?, Tree::from_obs(r)?)),
            _ => None,
        }
    }
}

fn leval_itree<A: EvalLater>(t: &ITree<A>, level: usize, m: &mut Meter) -> Obs {
    match t {
        ITree::Leaf(a) => Obs::Leaf(Box::new(a.leval(m))),
        ITree::Branch(l, r) => {
            if level >= m.depth() {
                return Obs::Cut;
            }
            let child = |x: &Later<ITree<A>>, m: &mut Meter| match m.force(x) {
                Partial::Value(t) => leval_itree(&t, level + 1, m),
                Partial::Exhausted => Obs::Exhausted,
            };
            let lo = child(l, m);
            let ro = child(r, m);
            Obs::Branch(Box::new(lo), Box::new(ro))
        }
    }
}

impl<A: EvalLater> EvalLater for ITree<A> {
    fn leval(&self, m: &mut Meter) -> Obs {
        leval_itree(self, 0, m)
    }
}

impl<A: LiftLater> LiftLater for ITree<A> {
    type Result = Tree<A::Result>;
    fn llift(r: &Self::Result) -> Self {
        match r {
            Tree::Leaf(a) => ITree::Leaf(A::llift(a)),
            Tree::Branch(l, r) => ITree::Branch(delay(ITree::llift(l)), delay(ITree::llift(r))),
        }
    }
}

/// Observes the node reached by following `path` from the root: one force
/// per step. Stepping into a leaf is a shape mismatch and yields `None`.
pub fn observe_at_path<A: EvalLater>(t: &ITree<A>, path: &[crate::data::Dir], m: &mut Meter) -> Option<Obs> {
    use crate::data::Dir;
    let mut cur = t.clone();
    for d in path {
        let next = match (&cur, d) {
            (ITree::Branch(l, _), Dir::L) => l.clone(),
            (ITree::Branch(_, r), Dir::R) => r.clone(),
            (ITree::Leaf(_), _) => return None,
        };
        match m.force(&next) {
            Partial::Value(t) => cur = t,
            Partial::Exhausted => return Some(Obs::Exhausted),
        }
    }
    Some(match &cur {
        ITree::Leaf(a) => Obs::Leaf(Box::new(a.leval(m))),
        ITree::Branch(..) => Obs::Branch(Box::new(Obs::Cut), Box::new(Obs::Cut)),
    })
}

// ------------------------------------------------------------------ Bistream

impl<A: EvalLater> EvalLater for Bistream<A> {
    fn leval(&self, m: &mut Meter) -> Obs {
        let f = self.forward.leval(m);
        Obs::pair(f, self.backward.leval(m))
    }
}

impl<A: LiftLater> LiftLater for Bistream<A> {
    type Result = (Vec<A::Result>, Vec<A::Result>);
    fn llift(r: &Self::Result) -> Self {
        Bistream { forward: Stream::llift(&r.0), backward: Stream::llift(&r.1) }
    }
}

// ---------------------------------------------------------------- functions

// `leval f = leval . f . llift`, observed at the argument type's probes.
impl<A, B> EvalLater for Fun<A, B>
where
    A: LiftLater,
    A::Result: Probes,
    B: EvalLater,
{
    fn leval(&self, m: &mut Meter) -> Obs {
        observe_fn::<A::Result>(m, |p, m| self.call(A::llift(p)).leval(m))
    }
}

impl<A: Probes, B: Plain> Plain for Fun<A, B> {
    fn to_obs(&self) -> Obs {
        Obs::Fn(A::probes().into_iter().map(|p| (p.to_obs(), self.call(p).to_obs())).collect())
    }
}

// `llift f = llift . f . leval`
impl<A, B> LiftLater for Fun<A, B>
where
    A: LiftLater,
    A::Result: Probes + FromObs,
    B: LiftLater,
{
    type Result = Fun<A::Result, B::Result>;
    fn llift(f: &Self::Result) -> Self {
        let f = f.clone();
        Fun::new(move |x: A| B::llift(&f.call(leval_plain(&x))))
    }
}
