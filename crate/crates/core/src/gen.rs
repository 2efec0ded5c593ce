//! Seeded generators for guarded values and effectful elements.
//!
//! Everything is driven by a ChaCha stream so identical seeds give
//! identical samples. Degenerate cases (`Nil`, `mempty`, `Nothing`) are
//! produced with fixed probability rather than left to chance.

use std::rc::Rc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::data::{itree_full, Bistream, Delay, Dir, ITree, PStream, Stream};
use crate::effects::{
    Cont, ComposeEff, ContEff, DFirst, DLast, Identity, IdentityEff, LaterEff, Predictable, Prod,
    ProdEff, ReaderEff, Update, UpdateEff, Writer, WriterEff,
};
use crate::eval::{Pad, Tree};
use crate::later::{delay, Fun, Value};

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Independent generator for a named sub-task, so adding samples to one
    /// check does not shift another's.
    pub fn split(seed: u64, label: &str) -> Self {
        let h = label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        Gen::new(seed ^ h)
    }

    pub fn int(&mut self) -> i64 {
        self.rng.gen_range(-5..=5)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn upto(&mut self, n: u64) -> u64 {
        self.rng.gen_range(0..=n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn vec<X>(&mut self, max_len: usize, mut f: impl FnMut(&mut Gen) -> X) -> Vec<X> {
        let n = self.rng.gen_range(0..=max_len);
        (0..n).map(|_| f(self)).collect()
    }

    pub fn ints(&mut self, max_len: usize) -> Vec<i64> {
        self.vec(max_len, Gen::int)
    }

    /// Finite, with up to two waits before each element and at the end.
    pub fn pstream(&mut self) -> PStream<i64> {
        if self.chance(0.2) {
            return PStream::Nil;
        }
        let xs = self.ints(3);
        let tail_waits = self.below(3);
        let mut p = PStream::wait_n(tail_waits, PStream::Nil);
        for x in xs.into_iter().rev() {
            let w = self.below(3);
            p = PStream::wait_n(w, PStream::cons(x, p));
        }
        p
    }

    /// Finite and wait-free.
    pub fn prompt_pstream(&mut self) -> PStream<i64> {
        let xs = self.ints(3);
        PStream::from_slice(&xs)
    }

    pub fn delayed_option(&mut self) -> Delay<Option<i64>> {
        let w = self.below(3);
        let v = if self.chance(0.3) { None } else { Some(self.int()) };
        Delay::after(w, v)
    }

    pub fn dfirst(&mut self) -> DFirst<i64> {
        DFirst(self.delayed_option())
    }

    pub fn dlast(&mut self) -> DLast<i64> {
        DLast(self.delayed_option())
    }

    pub fn delay_int(&mut self) -> Delay<i64> {
        let w = self.below(4);
        Delay::after(w, self.int())
    }

    /// A reader given by a small table indexed by the environment, plus an
    /// optional linear term.
    pub fn reader(&mut self) -> Fun<i64, i64> {
        let table = Rc::new(self.vec(3, Gen::int));
        let slope = self.upto(1) as i64;
        Fun::new(move |r: i64| {
            let base = if table.is_empty() { 0 } else { table[r.rem_euclid(table.len() as i64) as usize] };
            base + slope * r
        })
    }

    pub fn finite_stream<X: Value>(&mut self, max_len: usize, f: impl FnMut(&mut Gen) -> X) -> Stream<X> {
        Stream::from_vec(self.vec(max_len, f))
    }

    /// Cycles a fresh non-empty block forever.
    pub fn infinite_stream<X: Value>(&mut self, mut f: impl FnMut(&mut Gen) -> X) -> Stream<X> {
        let n = 1 + self.below(3);
        let block: Vec<X> = (0..n).map(|_| f(self)).collect();
        Stream::cycle(block)
    }

    pub fn stream<X: Value>(&mut self, max_len: usize, f: impl FnMut(&mut Gen) -> X) -> Stream<X> {
        if self.chance(0.3) {
            self.infinite_stream(f)
        } else {
            self.finite_stream(max_len, f)
        }
    }

    pub fn tree<X: Clone>(&mut self, max_height: usize, f: &mut impl FnMut(&mut Gen) -> X) -> Tree<X> {
        if max_height == 0 || self.chance(0.35) {
            Tree::Leaf(f(self))
        } else {
            let l = self.tree(max_height - 1, f);
            let r = self.tree(max_height - 1, f);
            Tree::branch(l, r)
        }
    }

    pub fn finite_itree<X: Value>(&mut self, max_height: usize, mut f: impl FnMut(&mut Gen) -> X) -> ITree<X> {
        fn build<X: Value>(t: &Tree<X>) -> ITree<X> {
            match t {
                Tree::Leaf(x) => ITree::Leaf(x.clone()),
                Tree::Branch(l, r) => ITree::branch(build(l), build(r)),
            }
        }
        build(&self.tree(max_height, &mut f))
    }

    /// Leaves labelled from a fixed table by path; either never a leaf, or a
    /// leaf wherever the path ends in a chosen pattern.
    pub fn infinite_itree<X: Value>(&mut self, mut f: impl FnMut(&mut Gen) -> X) -> ITree<X> {
        let table: Rc<Vec<X>> = Rc::new((0..4).map(|_| f(self)).collect());
        let never = self.chance(0.5);
        let stop_after = 1 + self.below(2);
        let label = move |p: &[Dir]| {
            let h = p.iter().fold(p.len(), |h, d| h.wrapping_mul(2).wrapping_add(usize::from(*d == Dir::R)));
            table[h % table.len()].clone()
        };
        // Right spines go on forever; a left turn ends after `stop_after` more levels.
        let is_leaf = move |p: &[Dir]| {
            !never && p.iter().position(|d| *d == Dir::L).is_some_and(|i| p.len() >= i + 1 + stop_after)
        };
        itree_full(label, is_leaf)
    }

    pub fn itree<X: Value>(&mut self, max_height: usize, f: impl FnMut(&mut Gen) -> X) -> ITree<X> {
        if self.chance(0.3) {
            self.infinite_itree(f)
        } else {
            self.finite_itree(max_height, f)
        }
    }

    pub fn bistream<X: Value>(&mut self, max_len: usize, mut f: impl FnMut(&mut Gen) -> X) -> Bistream<X> {
        let fw = self.stream(max_len, &mut f);
        let bw = self.stream(max_len, &mut f);
        Bistream::new(fw, bw)
    }
}

/// Effects whose elements can be generated.
pub trait SampleEffect: Predictable {
    fn sample(g: &mut Gen) -> Self::F<i64>;
}

impl SampleEffect for IdentityEff {
    fn sample(g: &mut Gen) -> Identity<i64> {
        Identity(g.int())
    }
}

impl SampleEffect for LaterEff {
    fn sample(g: &mut Gen) -> crate::later::Later<i64> {
        delay(g.int())
    }
}

impl SampleEffect for ReaderEff<i64> {
    fn sample(g: &mut Gen) -> Fun<i64, i64> {
        g.reader()
    }
}

impl SampleEffect for WriterEff<PStream<i64>> {
    fn sample(g: &mut Gen) -> Writer<PStream<i64>, i64> {
        Writer::new(g.int(), g.pstream())
    }
}

impl SampleEffect for WriterEff<DFirst<i64>> {
    fn sample(g: &mut Gen) -> Writer<DFirst<i64>, i64> {
        Writer::new(g.int(), g.dfirst())
    }
}

impl SampleEffect for WriterEff<DLast<i64>> {
    fn sample(g: &mut Gen) -> Writer<DLast<i64>, i64> {
        Writer::new(g.int(), g.dlast())
    }
}

/// Reads the state, optionally writes `s + d` (with some waits in front),
/// and returns `s + c` or a constant.
pub fn sample_update(g: &mut Gen) -> Update<PStream<i64>, i64, i64> {
    let writes = g.chance(0.7);
    let d = g.int();
    let waits = g.below(2);
    let c = g.int();
    let constant = g.chance(0.3);
    Update::new(move |s: i64| {
        let log = if writes { PStream::wait_n(waits, PStream::from_slice(&[s + d])) } else { PStream::Nil };
        (log, if constant { c } else { s + c })
    })
}

impl SampleEffect for UpdateEff<PStream<i64>, i64> {
    fn sample(g: &mut Gen) -> Update<PStream<i64>, i64, i64> {
        sample_update(g)
    }
}

impl SampleEffect for ContEff {
    fn sample(g: &mut Gen) -> crate::effects::ContD<i64> {
        let a = g.int();
        let w = g.below(3);
        Cont::new(move |k: Fun<i64, Delay<crate::effects::Opaque>>| k.call(a).pad(w))
    }
}

impl<F: SampleEffect, G: SampleEffect> SampleEffect for ProdEff<F, G> {
    fn sample(g: &mut Gen) -> Prod<F::F<i64>, G::F<i64>> {
        Prod { pr1: F::sample(g), pr2: G::sample(g) }
    }
}

impl<F: SampleEffect, G: SampleEffect> SampleEffect for ComposeEff<F, G> {
    fn sample(g: &mut Gen) -> F::F<G::F<i64>> {
        let outer = F::sample(g);
        let inner = G::sample(g);
        F::map(outer, move |x| G::map(inner.clone(), move |y| x + y))
    }
}

/// Elements of the inner effect nested in the outer one, for composition laws.
pub fn sample_nested<F: SampleEffect, G: SampleEffect>(g: &mut Gen) -> F::F<G::F<i64>> {
    <ComposeEff<F, G> as SampleEffect>::sample(g)
}
