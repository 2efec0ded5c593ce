use std::marker::PhantomData;
use std::rc::Rc;

use super::{Applicative, Monoid, Predictable, Stable};
use crate::eval::{observe_fn, EvalLater, LiftLater, Meter, Obs, Pad, Probes};
use crate::later::{delay, Fun, Later, Partial, Value};

// ------------------------------------------------------------------ Identity

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity<A>(pub A);

pub struct IdentityEff;

impl Applicative for IdentityEff {
    type F<A: Value> = Identity<A>;

    fn name() -> String {
        "Identity".into()
    }
    fn pure<A: Value>(a: A) -> Identity<A> {
        Identity(a)
    }
    fn map<A: Value, B: Value>(fa: Identity<A>, f: impl Fn(A) -> B + 'static) -> Identity<B> {
        Identity(f(fa.0))
    }
    fn map2<A: Value, B: Value, C: Value>(
        fa: Identity<A>,
        fb: Identity<B>,
        f: impl Fn(A, B) -> C + 'static,
    ) -> Identity<C> {
        Identity(f(fa.0, fb.0))
    }
    fn observe<A: Value>(fa: &Identity<A>, m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs {
        elem(&fa.0, m)
    }
}

impl Predictable for IdentityEff {
    fn predict<A: Value>(x: Later<Identity<A>>) -> Identity<Later<A>> {
        Identity(x.map(|i| i.0))
    }
}

impl<A: EvalLater> EvalLater for Identity<A> {
    fn leval(&self, m: &mut Meter) -> Obs {
        self.0.leval(m)
    }
}

impl<A: LiftLater> LiftLater for Identity<A> {
    type Result = A::Result;
    fn llift(r: &A::Result) -> Self {
        Identity(A::llift(r))
    }
}

impl<A: Pad> Pad for Identity<A> {
    fn pad(&self, j: usize) -> Self {
        Identity(self.0.pad(j))
    }
}

// --------------------------------------------------------------------- Later

pub struct LaterEff;

impl Applicative for LaterEff {
    type F<A: Value> = Later<A>;

    fn name() -> String {
        "Later".into()
    }
    fn pure<A: Value>(a: A) -> Later<A> {
        delay(a)
    }
    fn map<A: Value, B: Value>(fa: Later<A>, f: impl Fn(A) -> B + 'static) -> Later<B> {
        fa.map(f)
    }
    fn map2<A: Value, B: Value, C: Value>(fa: Later<A>, fb: Later<B>, f: impl Fn(A, B) -> C + 'static) -> Later<C> {
        fa.zip_with(&fb, f)
    }
    fn observe<A: Value>(fa: &Later<A>, m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs {
        match m.force(fa) {
            Partial::Value(a) => elem(&a, m),
            Partial::Exhausted => Obs::Exhausted,
        }
    }
}

impl Predictable for LaterEff {
    fn predict<A: Value>(x: Later<Later<A>>) -> Later<Later<A>> {
        x
    }
}

// -------------------------------------------------------------------- Reader

/// Reader over environment `R`. The carrier is a plain [`Fun`].
pub struct ReaderEff<R>(PhantomData<R>);

impl<R: Probes> Applicative for ReaderEff<R> {
    type F<A: Value> = Fun<R, A>;

    fn name() -> String {
        "Reader".into()
    }
    fn pure<A: Value>(a: A) -> Fun<R, A> {
        Fun::new(move |_| a.clone())
    }
    fn map<A: Value, B: Value>(fa: Fun<R, A>, f: impl Fn(A) -> B + 'static) -> Fun<R, B> {
        Fun::new(move |r| f(fa.call(r)))
    }
    fn map2<A: Value, B: Value, C: Value>(
        fa: Fun<R, A>,
        fb: Fun<R, B>,
        f: impl Fn(A, B) -> C + 'static,
    ) -> Fun<R, C> {
        Fun::new(move |r: R| f(fa.call(r.clone()), fb.call(r)))
    }
    fn observe<A: Value>(fa: &Fun<R, A>, m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs {
        observe_fn::<R>(m, |r, m| elem(&fa.call(r.clone()), m))
    }
}

impl<R: Probes> Predictable for ReaderEff<R> {
    fn predict<A: Value>(x: Later<Fun<R, A>>) -> Fun<R, Later<A>> {
        Fun::new(move |r: R| x.map(move |f| f.call(r)))
    }
}

// -------------------------------------------------------------------- Writer

/// A value paired with a log. Strict in both components.
#[derive(Clone, Debug)]
pub struct Writer<W, A> {
    pub value: A,
    pub log: W,
}

impl<W: Value, A: Value> Writer<W, A> {
    pub fn new(value: A, log: W) -> Self {
        Writer { value, log }
    }
}

impl<W: Value> Writer<W, ()> {
    pub fn tell(log: W) -> Self {
        Writer { value: (), log }
    }
}

impl<W: EvalLater, A: EvalLater> EvalLater for Writer<W, A> {
    fn leval(&self, m: &mut Meter) -> Obs {
        let v = self.value.leval(m);
        Obs::pair(v, self.log.leval(m))
    }
}

impl<W: LiftLater, A: LiftLater> LiftLater for Writer<W, A> {
    type Result = (A::Result, W::Result);
    fn llift(r: &Self::Result) -> Self {
        Writer { value: A::llift(&r.0), log: W::llift(&r.1) }
    }
}

impl<W: Pad, A: Pad> Pad for Writer<W, A> {
    fn pad(&self, j: usize) -> Self {
        Writer { value: self.value.pad(j), log: self.log.pad(j) }
    }
}

pub struct WriterEff<W>(PhantomData<W>);

impl<W: Monoid + Stable + EvalLater> Applicative for WriterEff<W> {
    type F<A: Value> = Writer<W, A>;

    fn name() -> String {
        let full = std::any::type_name::<W>();
        let short = full.split('<').next().unwrap_or(full).rsplit("::").next().unwrap_or(full);
        format!("Writer<{short}>")
    }
    fn pure<A: Value>(a: A) -> Writer<W, A> {
        Writer { value: a, log: W::empty() }
    }
    fn map<A: Value, B: Value>(fa: Writer<W, A>, f: impl Fn(A) -> B + 'static) -> Writer<W, B> {
        Writer { value: f(fa.value), log: fa.log }
    }
    fn map2<A: Value, B: Value, C: Value>(
        fa: Writer<W, A>,
        fb: Writer<W, B>,
        f: impl Fn(A, B) -> C + 'static,
    ) -> Writer<W, C> {
        Writer { log: fa.log.append(&fb.log), value: f(fa.value, fb.value) }
    }
    fn observe<A: Value>(fa: &Writer<W, A>, m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs {
        let v = elem(&fa.value, m);
        Obs::pair(v, fa.log.leval(m))
    }
}

impl<W: Monoid + Stable + EvalLater> Predictable for WriterEff<W> {
    fn predict<A: Value>(x: Later<Writer<W, A>>) -> Writer<W, Later<A>> {
        super::predict_writer(x)
    }
}

// --------------------------------------------------------------------- Maybe

pub struct MaybeEff;

impl Applicative for MaybeEff {
    type F<A: Value> = Option<A>;

    fn name() -> String {
        "Maybe".into()
    }
    fn pure<A: Value>(a: A) -> Option<A> {
        Some(a)
    }
    fn map<A: Value, B: Value>(fa: Option<A>, f: impl Fn(A) -> B + 'static) -> Option<B> {
        fa.map(f)
    }
    fn map2<A: Value, B: Value, C: Value>(fa: Option<A>, fb: Option<B>, f: impl Fn(A, B) -> C + 'static) -> Option<C> {
        Some(f(fa?, fb?))
    }
    fn observe<A: Value>(fa: &Option<A>, m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs {
        Obs::Maybe(fa.as_ref().map(|a| Box::new(elem(a, m))))
    }
}

// ---------------------------------------------------------------------- List

/// Nondeterminism: `map2` is the cross product.
pub struct ListEff;

fn observe_items<A>(items: &[A], m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs {
    let depth = m.depth();
    let obs = items.iter().take(depth).map(|a| elem(a, m)).collect();
    let end = if items.len() > depth { crate::eval::End::Truncated(depth) } else { crate::eval::End::Ended };
    Obs::List { items: obs, end }
}

impl Applicative for ListEff {
    type F<A: Value> = Vec<A>;

    fn name() -> String {
        "List".into()
    }
    fn pure<A: Value>(a: A) -> Vec<A> {
        vec![a]
    }
    fn map<A: Value, B: Value>(fa: Vec<A>, f: impl Fn(A) -> B + 'static) -> Vec<B> {
        fa.into_iter().map(f).collect()
    }
    fn map2<A: Value, B: Value, C: Value>(fa: Vec<A>, fb: Vec<B>, f: impl Fn(A, B) -> C + 'static) -> Vec<C> {
        fa.iter().flat_map(|a| fb.iter().map(|b| f(a.clone(), b.clone())).collect::<Vec<_>>()).collect()
    }
    fn observe<A: Value>(fa: &Vec<A>, m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs {
        observe_items(fa, m, elem)
    }
}

// ------------------------------------------------------------------- ZipList

/// Zipping applicative. `pure` is the constant infinite list.
#[derive(Clone, Debug)]
pub enum ZipList<A> {
    Repeat(A),
    Finite(Rc<Vec<A>>),
}

impl<A: Value> ZipList<A> {
    pub fn finite(xs: Vec<A>) -> Self {
        ZipList::Finite(Rc::new(xs))
    }
}

pub struct ZipListEff;

impl Applicative for ZipListEff {
    type F<A: Value> = ZipList<A>;

    fn name() -> String {
        "ZipList".into()
    }
    fn pure<A: Value>(a: A) -> ZipList<A> {
        ZipList::Repeat(a)
    }
    fn map<A: Value, B: Value>(fa: ZipList<A>, f: impl Fn(A) -> B + 'static) -> ZipList<B> {
        match fa {
            ZipList::Repeat(a) => ZipList::Repeat(f(a)),
            ZipList::Finite(xs) => ZipList::finite(xs.iter().cloned().map(f).collect()),
        }
    }
    fn map2<A: Value, B: Value, C: Value>(
        fa: ZipList<A>,
        fb: ZipList<B>,
        f: impl Fn(A, B) -> C + 'static,
    ) -> ZipList<C> {
        match (fa, fb) {
            (ZipList::Repeat(a), ZipList::Repeat(b)) => ZipList::Repeat(f(a, b)),
            (ZipList::Repeat(a), ZipList::Finite(ys)) => {
                ZipList::finite(ys.iter().map(|b| f(a.clone(), b.clone())).collect())
            }
            (ZipList::Finite(xs), ZipList::Repeat(b)) => {
                ZipList::finite(xs.iter().map(|a| f(a.clone(), b.clone())).collect())
            }
            (ZipList::Finite(xs), ZipList::Finite(ys)) => {
                ZipList::finite(xs.iter().zip(ys.iter()).map(|(a, b)| f(a.clone(), b.clone())).collect())
            }
        }
    }
    fn observe<A: Value>(fa: &ZipList<A>, m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs {
        match fa {
            ZipList::Finite(xs) => observe_items(xs, m, elem),
            ZipList::Repeat(a) => {
                let depth = m.depth().min(64);
                let items = (0..depth).map(|_| elem(a, m)).collect();
                Obs::List { items, end: crate::eval::End::Truncated(depth) }
            }
        }
    }
}

// ------------------------------------------------------------------- Product

#[derive(Clone, Debug)]
pub struct Prod<A, B> {
    pub pr1: A,
    pub pr2: B,
}

impl<A: EvalLater, B: EvalLater> EvalLater for Prod<A, B> {
    fn leval(&self, m: &mut Meter) -> Obs {
        let a = self.pr1.leval(m);
        Obs::pair(a, self.pr2.leval(m))
    }
}

impl<A: Pad, B: Pad> Pad for Prod<A, B> {
    fn pad(&self, j: usize) -> Self {
        Prod { pr1: self.pr1.pad(j), pr2: self.pr2.pad(j) }
    }
}

pub struct ProdEff<F, G>(PhantomData<(F, G)>);

impl<F: Applicative, G: Applicative> Applicative for ProdEff<F, G> {
    type F<A: Value> = Prod<F::F<A>, G::F<A>>;

    fn name() -> String {
        format!("Prod<{}, {}>", F::name(), G::name())
    }
    fn pure<A: Value>(a: A) -> Self::F<A> {
        Prod { pr1: F::pure(a.clone()), pr2: G::pure(a) }
    }
    fn map<A: Value, B: Value>(fa: Self::F<A>, f: impl Fn(A) -> B + 'static) -> Self::F<B> {
        let f = Rc::new(f);
        let g = Rc::clone(&f);
        Prod { pr1: F::map(fa.pr1, move |a| f(a)), pr2: G::map(fa.pr2, move |a| g(a)) }
    }
    fn map2<A: Value, B: Value, C: Value>(
        fa: Self::F<A>,
        fb: Self::F<B>,
        f: impl Fn(A, B) -> C + 'static,
    ) -> Self::F<C> {
        let f = Rc::new(f);
        let g = Rc::clone(&f);
        Prod {
            pr1: F::map2(fa.pr1, fb.pr1, move |a, b| f(a, b)),
            pr2: G::map2(fa.pr2, fb.pr2, move |a, b| g(a, b)),
        }
    }
    fn observe<A: Value>(fa: &Self::F<A>, m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs {
        let a = F::observe(&fa.pr1, m, elem);
        Obs::pair(a, G::observe(&fa.pr2, m, elem))
    }
}

impl<F: Predictable, G: Predictable> Predictable for ProdEff<F, G> {
    fn predict<A: Value>(x: Later<Self::F<A>>) -> Self::F<Later<A>> {
        super::predict_prod::<F, G, A>(x)
    }
}

// ---------------------------------------------------------------- Compose

/// `F` outside, `G` inside. The carrier is the plain nesting `F<G<A>>`.
pub struct ComposeEff<F, G>(PhantomData<(F, G)>);

/// Marker for documentation purposes: `Compose<F, G, A>` is `F::F<G::F<A>>`.
pub type Compose<F, G, A> = <F as Applicative>::F<<G as Applicative>::F<A>>;

impl<F: Applicative, G: Applicative> Applicative for ComposeEff<F, G> {
    type F<A: Value> = F::F<G::F<A>>;

    fn name() -> String {
        format!("Compose<{}, {}>", F::name(), G::name())
    }
    fn pure<A: Value>(a: A) -> Self::F<A> {
        F::pure(G::pure(a))
    }
    fn map<A: Value, B: Value>(fa: Self::F<A>, f: impl Fn(A) -> B + 'static) -> Self::F<B> {
        let f = Rc::new(f);
        F::map(fa, move |ga| {
            let f = Rc::clone(&f);
            G::map(ga, move |a| f(a))
        })
    }
    fn map2<A: Value, B: Value, C: Value>(
        fa: Self::F<A>,
        fb: Self::F<B>,
        f: impl Fn(A, B) -> C + 'static,
    ) -> Self::F<C> {
        let f = Rc::new(f);
        F::map2(fa, fb, move |ga, gb| {
            let f = Rc::clone(&f);
            G::map2(ga, gb, move |a, b| f(a, b))
        })
    }
    fn observe<A: Value>(fa: &Self::F<A>, m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs {
        F::observe(fa, m, &|ga: &G::F<A>, m: &mut Meter| G::observe(ga, m, elem))
    }
}

impl<F: Predictable, G: Predictable> Predictable for ComposeEff<F, G> {
    fn predict<A: Value>(x: Later<Self::F<A>>) -> Self::F<Later<A>> {
        super::predict_compose::<F, G, A>(x)
    }
}
