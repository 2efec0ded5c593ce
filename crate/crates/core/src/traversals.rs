//! Infinite traversals over guarded codata, their laws, and the finite
//! list oracles they are compared against.

use std::marker::PhantomData;
use std::rc::Rc;

use crate::data::{Bistream, Delay, ITree, PStream, Stream};
use crate::effects::{
    leval_in, Applicative, ComposeEff, DFirst, DLast, Identity, IdentityEff, Predictable, Prod, ProdEff, ReaderEff,
    Writer, WriterEff,
};
use crate::eval::{EvalLater, Meter, Obs, ObsBudget, Report};
use crate::later::{lap, lfix, Fun, Later, Partial, Value};

type Step<X, Y> = Fun<X, Y>;

/// `Cons <$> a <*> predict (rec <*> s)`: the prompt traversal.
pub fn isequence_stream<E: Predictable, A: Value>(s: Stream<E::F<A>>) -> E::F<Stream<A>> {
    let go = lfix(|rec: Later<Step<Stream<E::F<A>>, E::F<Stream<A>>>>| {
        Fun::new(move |s| match s {
            Stream::Nil => E::pure(Stream::Nil),
            Stream::Cons(a, tail) => E::map2(a, E::predict(lap(&rec, &tail)), Stream::Cons),
        })
    });
    go.call(s)
}

/// `flip Cons <$> predict (rec <*> s) <*> a`: effects of the tail run
/// before the head's. Not prompt.
pub fn ibackquence<E: Predictable, A: Value>(s: Stream<E::F<A>>) -> E::F<Stream<A>> {
    let go = lfix(|rec: Later<Step<Stream<E::F<A>>, E::F<Stream<A>>>>| {
        Fun::new(move |s| match s {
            Stream::Nil => E::pure(Stream::Nil),
            Stream::Cons(a, tail) => E::map2(E::predict(lap(&rec, &tail)), a, |t, x| Stream::Cons(x, t)),
        })
    });
    go.call(s)
}

pub fn isequence_itree<E: Predictable, A: Value>(t: ITree<E::F<A>>) -> E::F<ITree<A>> {
    let go = lfix(|rec: Later<Step<ITree<E::F<A>>, E::F<ITree<A>>>>| {
        Fun::new(move |t| match t {
            ITree::Leaf(fa) => E::map(fa, ITree::Leaf),
            ITree::Branch(l, r) => E::map2(E::predict(lap(&rec, &l)), E::predict(lap(&rec, &r)), ITree::Branch),
        })
    });
    go.call(t)
}

/// Forward half prompt, backward half backwards.
pub fn isequence_bistream<E: Predictable, A: Value>(b: Bistream<E::F<A>>) -> E::F<Bistream<A>> {
    E::map2(isequence_stream::<E, A>(b.forward), ibackquence::<E, A>(b.backward), Bistream::new)
}

/// Textbook list sequence.
pub fn sequence_list_oracle<E: Applicative, A: Value>(xs: Vec<E::F<A>>) -> E::F<Vec<A>> {
    xs.into_iter().rev().fold(E::pure(Vec::new()), |acc, x| {
        E::map2(x, acc, |a, mut rest: Vec<A>| {
            rest.insert(0, a);
            rest
        })
    })
}

/// List sequence with the effect order reversed; element order preserved.
pub fn backquence_list<E: Applicative, A: Value>(xs: Vec<E::F<A>>) -> E::F<Vec<A>> {
    xs.into_iter().rev().fold(E::pure(Vec::new()), |acc, x| {
        E::map2(acc, x, |mut rest: Vec<A>, a| {
            rest.insert(0, a);
            rest
        })
    })
}

/// Compares `leval . isequence . llift` with the list oracle on one input.
/// `Ok` carries the common observation.
pub fn fusion_compare<E: Predictable, A: EvalLater>(xs: Vec<E::F<A>>, budget: ObsBudget) -> Result<Obs, (Obs, Obs)> {
    let lhs = leval_in::<E, Stream<A>>(&isequence_stream::<E, A>(Stream::from_vec(xs.clone())), &mut Meter::new(budget));
    let rhs = leval_in::<E, Vec<A>>(&sequence_list_oracle::<E, A>(xs), &mut Meter::new(budget));
    if lhs == rhs {
        Ok(lhs)
    } else {
        Err((rhs, lhs))
    }
}

pub fn fusion_check<E: Predictable, A: EvalLater>(inputs: Vec<Vec<E::F<A>>>, budget: ObsBudget) -> Report {
    let mut report = Report::new("fusion", &E::name());
    report.budgets = vec![budget];
    for (i, xs) in inputs.into_iter().enumerate() {
        report.samples += 1;
        let mut m = Meter::new(budget);
        let _ = leval_in::<E, Vec<A>>(&sequence_list_oracle::<E, A>(xs.clone()), &mut m);
        report.note_probes(m.probes());
        if let Err((expected, actual)) = fusion_compare::<E, A>(xs, budget) {
            report.mismatch(i, budget, expected, actual);
        }
    }
    report
}

/// Containers with an infinite traversal.
pub trait ITraversable: 'static {
    type T<A: Value>: Value;

    fn name() -> String;
    fn fmap<A: Value, B: Value>(t: Self::T<A>, f: impl Fn(A) -> B + 'static) -> Self::T<B>;
    fn isequence<E: Predictable, A: Value>(t: Self::T<E::F<A>>) -> E::F<Self::T<A>>;
    fn observe<A: Value>(t: &Self::T<A>, m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs;
}

pub struct StreamT;
pub struct ITreeT;
pub struct BistreamT;

fn observe_stream<A: Value>(s: &Stream<A>, m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs {
    // Same shape as Stream's own leval, with a pluggable element observer.
    use crate::eval::End;
    let mut items = Vec::new();
    let mut cur = s.clone();
    loop {
        match cur {
            Stream::Nil => return Obs::List { items, end: End::Ended },
            Stream::Cons(x, tail) => {
                if items.len() >= m.depth() {
                    return Obs::List { items, end: End::Truncated(m.depth()) };
                }
                items.push(elem(&x, m));
                match m.force(&tail) {
                    Partial::Value(next) => cur = next,
                    Partial::Exhausted => return Obs::List { items, end: End::Exhausted },
                }
            }
        }
    }
}

fn observe_itree<A: Value>(t: &ITree<A>, level: usize, m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs {
    match t {
        ITree::Leaf(a) => Obs::Leaf(Box::new(elem(a, m))),
        ITree::Branch(l, r) => {
            if level >= m.depth() {
                return Obs::Cut;
            }
            let child = |x: &Later<ITree<A>>, m: &mut Meter| match m.force(x) {
                Partial::Value(t) => observe_itree(&t, level + 1, m, elem),
                Partial::Exhausted => Obs::Exhausted,
            };
            let lo = child(l, m);
            let ro = child(r, m);
            Obs::Branch(Box::new(lo), Box::new(ro))
        }
    }
}

impl ITraversable for StreamT {
    type T<A: Value> = Stream<A>;

    fn name() -> String {
        "Stream".into()
    }
    fn fmap<A: Value, B: Value>(t: Stream<A>, f: impl Fn(A) -> B + 'static) -> Stream<B> {
        t.map(f)
    }
    fn isequence<E: Predictable, A: Value>(t: Stream<E::F<A>>) -> E::F<Stream<A>> {
        isequence_stream::<E, A>(t)
    }
    fn observe<A: Value>(t: &Stream<A>, m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs {
        observe_stream(t, m, elem)
    }
}

impl ITraversable for ITreeT {
    type T<A: Value> = ITree<A>;

    fn name() -> String {
        "ITree".into()
    }
    fn fmap<A: Value, B: Value>(t: ITree<A>, f: impl Fn(A) -> B + 'static) -> ITree<B> {
        t.map(f)
    }
    fn isequence<E: Predictable, A: Value>(t: ITree<E::F<A>>) -> E::F<ITree<A>> {
        isequence_itree::<E, A>(t)
    }
    fn observe<A: Value>(t: &ITree<A>, m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs {
        observe_itree(t, 0, m, elem)
    }
}

impl ITraversable for BistreamT {
    type T<A: Value> = Bistream<A>;

    fn name() -> String {
        "Bistream".into()
    }
    fn fmap<A: Value, B: Value>(t: Bistream<A>, f: impl Fn(A) -> B + 'static) -> Bistream<B> {
        t.map(f)
    }
    fn isequence<E: Predictable, A: Value>(t: Bistream<E::F<A>>) -> E::F<Bistream<A>> {
        isequence_bistream::<E, A>(t)
    }
    fn observe<A: Value>(t: &Bistream<A>, m: &mut Meter, elem: &dyn Fn(&A, &mut Meter) -> Obs) -> Obs {
        let f = observe_stream(&t.forward, m, elem);
        Obs::pair(f, observe_stream(&t.backward, m, elem))
    }
}

fn leval_t<T: ITraversable, A: EvalLater>(t: &T::T<A>, m: &mut Meter) -> Obs {
    T::observe(t, m, &|a: &A, m: &mut Meter| a.leval(m))
}

fn leval_ft<T: ITraversable, E: Applicative, A: EvalLater>(ft: &E::F<T::T<A>>, m: &mut Meter) -> Obs {
    E::observe(ft, m, &|t: &T::T<A>, m: &mut Meter| leval_t::<T, A>(t, m))
}

fn law_loop<S>(
    report: &mut Report,
    samples: Vec<S>,
    budgets: &[ObsBudget],
    lhs: impl Fn(&S, &mut Meter) -> Obs,
    rhs: impl Fn(&S, &mut Meter) -> Obs,
) {
    report.budgets = budgets.to_vec();
    for (i, s) in samples.iter().enumerate() {
        report.samples += 1;
        for &b in budgets {
            let mut ml = Meter::new(b);
            let l = lhs(s, &mut ml);
            let mut mr = Meter::new(b);
            let r = rhs(s, &mut mr);
            report.note_probes(ml.probes().chain(mr.probes()));
            if l != r {
                report.mismatch(i, b, l, r);
            }
        }
    }
}

/// `isequence . fmap Identity = Identity`
pub fn identity_law<T: ITraversable, A: EvalLater>(samples: Vec<T::T<A>>, budgets: &[ObsBudget]) -> Report {
    let mut report = Report::new("identity law", &T::name());
    law_loop(
        &mut report,
        samples,
        budgets,
        |t, m| {
            let r = T::isequence::<IdentityEff, A>(T::fmap(t.clone(), Identity));
            leval_ft::<T, IdentityEff, A>(&r, m)
        },
        |t, m| leval_t::<T, A>(t, m),
    );
    report
}

/// `isequence_{Compose F G} = Compose . fmap isequence_G . isequence_F`
pub fn composition_law<T, F, G, A>(samples: Vec<T::T<F::F<G::F<A>>>>, budgets: &[ObsBudget]) -> Report
where
    T: ITraversable,
    F: Predictable,
    G: Predictable,
    A: EvalLater,
{
    let subject = format!("{} at {}", T::name(), ComposeEff::<F, G>::name());
    let mut report = Report::new("composition law", &subject);
    law_loop(
        &mut report,
        samples,
        budgets,
        |t, m| {
            let r = T::isequence::<ComposeEff<F, G>, A>(t.clone());
            leval_ft::<T, ComposeEff<F, G>, A>(&r, m)
        },
        |t, m| {
            let outer = T::isequence::<F, G::F<A>>(t.clone());
            let r = F::map(outer, T::isequence::<G, A>);
            leval_ft::<T, ComposeEff<F, G>, A>(&r, m)
        },
    );
    report
}

/// An applicative morphism between predictable effects, assumed to commute
/// with `predict` up to bisimilarity.
pub trait Morphism: 'static {
    type Src: Predictable;
    type Dst: Predictable;
    fn name() -> String;
    fn apply<A: Value>(fa: <Self::Src as Applicative>::F<A>) -> <Self::Dst as Applicative>::F<A>;
}

/// `t . isequence = isequence . fmap t`
pub fn naturality_law<T, M, A>(samples: Vec<T::T<<M::Src as Applicative>::F<A>>>, budgets: &[ObsBudget]) -> Report
where
    T: ITraversable,
    M: Morphism,
    A: EvalLater,
{
    let subject = format!("{} under {}", T::name(), M::name());
    let mut report = Report::new("naturality law", &subject);
    law_loop(
        &mut report,
        samples,
        budgets,
        |t, m| {
            let r = M::apply(T::isequence::<M::Src, A>(t.clone()));
            leval_ft::<T, M::Dst, A>(&r, m)
        },
        |t, m| {
            let r = T::isequence::<M::Dst, A>(T::fmap(t.clone(), M::apply::<A>));
            leval_ft::<T, M::Dst, A>(&r, m)
        },
    );
    report
}

/// First element of a possibly productive stream, one `Wait` per `Wait`.
/// A monoid morphism from `PStream` to `DFirst`.
pub fn pfirst<A: Value>(p: PStream<A>) -> DFirst<A> {
    let go = lfix(|rec: Later<Fun<PStream<A>, Delay<Option<A>>>>| {
        Fun::new(move |p| match p {
            PStream::Nil => Delay::Now(None),
            PStream::Cons(x, _) => Delay::Now(Some(x)),
            PStream::Wait(l) => Delay::Wait(lap(&rec, &l)),
        })
    });
    DFirst(go.call(p))
}

type PLog = PStream<i64>;

/// `Writer<PStream> -> Writer<DFirst>` by taking the head of the log.
pub struct LogHead;

impl Morphism for LogHead {
    type Src = WriterEff<PLog>;
    type Dst = WriterEff<DFirst<i64>>;
    fn name() -> String {
        "log head".into()
    }
    fn apply<A: Value>(w: Writer<PLog, A>) -> Writer<DFirst<i64>, A> {
        Writer { value: w.value, log: pfirst(w.log) }
    }
}

/// `Writer<PStream> -> Writer<DLast>` by taking the last entry of the log.
pub struct LogLast;

impl Morphism for LogLast {
    type Src = WriterEff<PLog>;
    type Dst = WriterEff<DLast<i64>>;
    fn name() -> String {
        "log last".into()
    }
    fn apply<A: Value>(w: Writer<PLog, A>) -> Writer<DLast<i64>, A> {
        Writer { value: w.value, log: DLast(crate::data::plast(w.log)) }
    }
}

/// Reader precomposition with `r -> 2r + 1`.
pub struct ReaderReindex;

impl Morphism for ReaderReindex {
    type Src = ReaderEff<i64>;
    type Dst = ReaderEff<i64>;
    fn name() -> String {
        "reader r -> 2r+1".into()
    }
    fn apply<A: Value>(f: Fun<i64, A>) -> Fun<i64, A> {
        Fun::new(move |r| f.call(2 * r + 1))
    }
}

/// Forgets the log.
pub struct ForgetLog;

impl Morphism for ForgetLog {
    type Src = WriterEff<PLog>;
    type Dst = IdentityEff;
    fn name() -> String {
        "forget log".into()
    }
    fn apply<A: Value>(w: Writer<PLog, A>) -> Identity<A> {
        Identity(w.value)
    }
}

/// First projection out of a product.
pub struct ProjFirst<F, G>(PhantomData<(F, G)>);

impl<F: Predictable, G: Predictable> Morphism for ProjFirst<F, G> {
    type Src = ProdEff<F, G>;
    type Dst = F;
    fn name() -> String {
        format!("first projection of {}", ProdEff::<F, G>::name())
    }
    fn apply<A: Value>(p: Prod<F::F<A>, G::F<A>>) -> F::F<A> {
        p.pr1
    }
}

/// Observation of a prefix together with the fuel it took.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Probe {
    pub obs: Obs,
    pub fuel_used: u64,
}

/// Applies the algebra and observes `k` elements, doubling the fuel from
/// `k + 1` until the prefix comes out whole or `max_fuel` is reached.
pub fn productivity_probe<X, A: EvalLater>(fx: X, alg: impl FnOnce(X) -> Stream<A>, k: usize, max_fuel: u64) -> Probe {
    let s = alg(fx);
    let mut fuel = (k as u64 + 1).min(max_fuel);
    loop {
        let mut m = Meter::new(ObsBudget::new(k, fuel));
        let obs = s.leval(&mut m);
        if !obs.contains_exhausted() || fuel >= max_fuel {
            return Probe { obs, fuel_used: m.used() };
        }
        fuel = fuel.saturating_mul(2).min(max_fuel);
    }
}

/// Sequencing by forcing the whole input through the metatheory first, as
/// a non-predictable applicative has to. Exhausts on infinite inputs.
pub fn naive_sequence<E: Applicative, A: Value>(s: &Stream<E::F<A>>, m: &mut Meter) -> Partial<E::F<Vec<A>>> {
    let mut xs = Vec::new();
    let mut cur = s.clone();
    loop {
        match cur {
            Stream::Nil => return Partial::Value(sequence_list_oracle::<E, A>(xs)),
            Stream::Cons(x, tail) => {
                xs.push(x);
                match m.force(&tail) {
                    Partial::Value(next) => cur = next,
                    Partial::Exhausted => return Partial::Exhausted,
                }
            }
        }
    }
}

/// Rows indexed by the stream, columns by the environment.
pub fn transpose_infinite<A: Value>(rows: Stream<Fun<u64, A>>) -> Fun<u64, Stream<A>> {
    isequence_stream::<ReaderEff<u64>, A>(rows)
}

const NTH_FUEL: u64 = 1_000_000;

/// `n`-th element, forcing through the metatheory.
pub fn stream_nth<A: Value>(s: &Stream<A>, n: usize, m: &mut Meter) -> Partial<Option<A>> {
    let mut cur = s.clone();
    let mut i = 0;
    loop {
        match cur {
            Stream::Nil => return Partial::Value(None),
            Stream::Cons(x, tail) => {
                if i == n {
                    return Partial::Value(Some(x));
                }
                i += 1;
                match m.force(&tail) {
                    Partial::Value(next) => cur = next,
                    Partial::Exhausted => return Partial::Exhausted,
                }
            }
        }
    }
}

/// The other distribution: a family of columns back into a stream of rows,
/// reading entries with [`stream_nth`]. Inverse to [`transpose_infinite`].
pub fn transpose_back<A: Value>(cols: Fun<u64, Stream<A>>) -> Stream<Fun<u64, A>> {
    let cols = Rc::new(cols);
    Stream::unfold(0u64, move |&i| {
        let cols = Rc::clone(&cols);
        let row = Fun::new(move |j: u64| match stream_nth(&cols.call(j), i as usize, &mut Meter::with_fuel(NTH_FUEL)) {
            Partial::Value(Some(a)) => a,
            _ => panic!("column {j} has no row {i}"),
        });
        (row, i + 1)
    })
}

/// Entry `(i, j)` of a matrix given as a family of columns.
pub fn col_entry<A: Value>(cols: &Fun<u64, Stream<A>>, i: u64, j: u64, m: &mut Meter) -> Partial<Option<A>> {
    stream_nth(&cols.call(j), i as usize, m)
}

/// Entry `(i, j)` of a matrix given as a stream of rows.
pub fn row_entry<A: Value>(rows: &Stream<Fun<u64, A>>, i: u64, j: u64, m: &mut Meter) -> Partial<Option<A>> {
    stream_nth(rows, i as usize, m).map(|r| r.map(|f| f.call(j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{itree_full, naturals, repeat_forever, Dir};
    use crate::effects::{put_action, MaybeEff, Update, UpdateEff};
    use crate::eval::{observe, observe_at_path, End, LiftLater};

    type PW = WriterEff<PLog>;

    fn tell(n: i64) -> Writer<PLog, i64> {
        Writer::new(n, PStream::from_slice(&[n]))
    }

    fn ask() -> Fun<i64, i64> {
        Fun::new(|r| r)
    }

    #[test]
    fn reader_repeat_ask() {
        let r = isequence_stream::<ReaderEff<i64>, i64>(repeat_forever(ask()));
        let o = observe(&r.call(1), ObsBudget::new(5, 100));
        assert_eq!(o, Obs::List { items: Obs::ints(&[1; 5]), end: End::Truncated(5) });
    }

    #[test]
    fn nil_is_pure_nil() {
        let r = isequence_stream::<PW, i64>(Stream::Nil);
        assert_eq!(observe(&r, ObsBudget::new(3, 3)).to_string(), "([], [])");
        let r = ibackquence::<PW, i64>(Stream::Nil);
        assert_eq!(observe(&r, ObsBudget::new(3, 3)).to_string(), "([], [])");
    }

    #[test]
    fn identity_on_a_lifted_list() {
        let s = Stream::<i64>::llift(&vec![1, 2, 3]).map(Identity);
        let r = isequence_stream::<IdentityEff, i64>(s);
        assert_eq!(observe(&r, ObsBudget::new(5, 10)), Obs::ended(Obs::ints(&[1, 2, 3])));
    }

    #[test]
    fn tree_logs_left_to_right() {
        let t = ITree::branch(ITree::Leaf(tell(1)), ITree::Leaf(tell(2)));
        let r = isequence_itree::<PW, i64>(t);
        assert_eq!(observe(&r.log, ObsBudget::new(5, 10)), Obs::ended(Obs::ints(&[1, 2])));
        let r = isequence_itree::<PW, i64>(ITree::Leaf(tell(4)));
        assert!(matches!(r.value, ITree::Leaf(4)));
    }

    #[test]
    fn reader_on_an_infinite_tree_observes_a_path() {
        let t = itree_full(|p| Fun::new({ let d = p.len() as i64; move |r: i64| r + d }), |_| false);
        let r = isequence_itree::<ReaderEff<i64>, i64>(t).call(10);
        let mut m = Meter::with_fuel(20);
        let o = observe_at_path(&r, &[Dir::L, Dir::R], &mut m).unwrap();
        assert_eq!(o, Obs::Branch(Box::new(Obs::Cut), Box::new(Obs::Cut)));
        let t = itree_full(|p| Fun::new({ let d = p.len() as i64; move |r: i64| r + d }), |p| p.len() == 2);
        let r = isequence_itree::<ReaderEff<i64>, i64>(t).call(10);
        let mut m = Meter::with_fuel(20);
        assert_eq!(observe_at_path(&r, &[Dir::L, Dir::R], &mut m), Some(Obs::Leaf(Box::new(Obs::Int(12)))));
    }

    #[test]
    fn list_oracles() {
        assert_eq!(sequence_list_oracle::<MaybeEff, i64>(vec![]), Some(vec![]));
        assert_eq!(sequence_list_oracle::<MaybeEff, i64>(vec![Some(1), Some(2)]), Some(vec![1, 2]));
        assert_eq!(sequence_list_oracle::<MaybeEff, i64>(vec![Some(1), None]), None);
        let b = ObsBudget::new(5, 5);
        let fwd = sequence_list_oracle::<PW, i64>(vec![tell(1), tell(2)]);
        assert_eq!(observe(&fwd, b).to_string(), "([1,2], [1,2])");
        let bwd = backquence_list::<PW, i64>(vec![tell(1), tell(2)]);
        assert_eq!(observe(&bwd, b).to_string(), "([1,2], [2,1])");
        let ra = backquence_list::<ReaderEff<i64>, i64>(vec![ask(), ask()]);
        let rb = sequence_list_oracle::<ReaderEff<i64>, i64>(vec![ask(), ask()]);
        assert_eq!(observe(&ra, b), observe(&rb, b));
        assert_eq!(backquence_list::<MaybeEff, i64>(vec![]), Some(vec![]));
    }

    #[test]
    fn fusion_on_small_inputs() {
        let b = ObsBudget::new(10, 200);
        assert!(fusion_compare::<PW, i64>(vec![], b).is_ok());
        assert!(fusion_compare::<PW, i64>(vec![tell(1), tell(2), tell(3)], b).is_ok());
        assert!(fusion_compare::<ReaderEff<i64>, i64>(vec![ask(), Fun::new(|r| r * r)], b).is_ok());
    }

    #[test]
    fn backward_traversal_preserves_element_order() {
        let s = Stream::from_vec(vec![Identity(1i64), Identity(2), Identity(3)]);
        let r = ibackquence::<IdentityEff, i64>(s);
        assert_eq!(observe(&r, ObsBudget::new(5, 20)), Obs::ended(Obs::ints(&[1, 2, 3])));
    }

    #[test]
    fn naive_maybe_sequence_never_finishes() {
        let s = repeat_forever(Some(1i64));
        for fuel in [10, 100, 1000] {
            assert!(naive_sequence::<MaybeEff, i64>(&s, &mut Meter::with_fuel(fuel)).is_exhausted());
        }
        let f = Stream::from_vec(vec![Some(1i64), Some(2)]);
        assert_eq!(naive_sequence::<MaybeEff, i64>(&f, &mut Meter::with_fuel(10)), Partial::Value(Some(vec![1, 2])));
    }

    #[test]
    fn transpose_small() {
        let rows = || Stream::unfold(0u64, |&i| (Fun::new(move |j: u64| (i, j)), i + 1));
        let cols = transpose_infinite(rows());
        let o: Vec<(u64, u64)> = (0..3)
            .map(|i| col_entry(&cols, i, 2, &mut Meter::with_fuel(100)).value().flatten().unwrap())
            .collect();
        assert_eq!(o, vec![(0, 2), (1, 2), (2, 2)]);
        let back = transpose_back(cols.clone());
        assert_eq!(row_entry(&back, 7, 4, &mut Meter::with_fuel(100)), Partial::Value(Some((7, 4))));
        let again = transpose_infinite(back);
        assert_eq!(col_entry(&again, 7, 4, &mut Meter::with_fuel(100)), Partial::Value(Some((7, 4))));
        let single = transpose_infinite(Stream::from_vec(vec![Fun::new(|j: u64| j * 10)]));
        assert_eq!(observe(&single.call(3), ObsBudget::new(4, 4)), Obs::ended(Obs::ints(&[30])));
    }

    #[test]
    fn dfirst_and_dlast_promptness() {
        let writes = || naturals().map(|n| Writer::new(n as i64, DFirst::just(n as i64)));
        let b = ObsBudget::new(3, 1000);
        let fwd = isequence_stream::<WriterEff<DFirst<i64>>, i64>(writes());
        assert_eq!(observe(&fwd.log, b), Obs::just(Obs::Int(0)));
        let bwd = ibackquence::<WriterEff<DFirst<i64>>, i64>(writes());
        assert_eq!(observe(&bwd.log, b), Obs::Exhausted);
        let writes = || naturals().map(|n| Writer::new(n as i64, DLast::just(n as i64)));
        let fwd = isequence_stream::<WriterEff<DLast<i64>>, i64>(writes());
        assert_eq!(observe(&fwd.log, b), Obs::Exhausted);
        let bwd = ibackquence::<WriterEff<DLast<i64>>, i64>(writes());
        assert_eq!(observe(&bwd.log, b), Obs::just(Obs::Int(0)));
    }

    #[test]
    fn state_transducer_values_and_log() {
        type U = UpdateEff<PLog, i64>;
        let step: Update<PLog, i64, i64> = crate::effects::update_bind(crate::effects::get_state(), |s: i64| {
            crate::effects::update_bind(put_action(PStream::from_slice(&[s + 1])), |_| crate::effects::get_state())
        });
        let (log, values) = isequence_stream::<U, i64>(repeat_forever(step)).run(0);
        let b = ObsBudget::new(5, 100);
        assert_eq!(observe(&values, b).items().unwrap(), &Obs::ints(&[1, 2, 3, 4, 5])[..]);
        assert_eq!(observe(&log, b).items().unwrap(), &Obs::ints(&[1, 2, 3, 4, 5])[..]);
        let last = crate::data::plast(log);
        assert_eq!(observe(&last, ObsBudget::new(1, 1000)), Obs::Exhausted);
    }

    #[test]
    fn productivity_of_reader_is_linear() {
        for k in [1usize, 5, 20, 50] {
            let r = isequence_stream::<ReaderEff<i64>, i64>(repeat_forever(ask()));
            let p = productivity_probe(r, |f| f.call(1), k, 10_000);
            assert!(!p.obs.contains_exhausted());
            assert!(p.fuel_used <= 2 * k as u64 + 2, "k={k} used={}", p.fuel_used);
        }
    }
}
