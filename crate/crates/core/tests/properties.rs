use proptest::prelude::*;

use predictable::data::{naturals, repeat_forever, sinterleave, szip, Delay, ITree, PStream, Stream};
use predictable::effects::{Applicative, IdentityEff, ReaderEff, UpdateEff, WriterEff, DFirst};
use predictable::eval::{leval_plain, observe, observe_counted, LiftLater, Obs, ObsBudget, Tree};
use predictable::gen::{Gen, SampleEffect};
use predictable::later::{delay, lap, lfix, Fun};
use predictable::traversals::{fusion_check, ibackquence, isequence_stream};

fn budget() -> impl Strategy<Value = ObsBudget> {
    (0usize..12, 0u64..200).prop_map(|(d, f)| ObsBudget::new(d, f))
}

fn tree() -> impl Strategy<Value = Tree<i64>> {
    let leaf = (-9i64..9).prop_map(Tree::Leaf);
    leaf.prop_recursive(4, 16, 2, |t| (t.clone(), t).prop_map(|(l, r)| Tree::branch(l, r)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn right_inverse_on_lists(xs in proptest::collection::vec(-50i64..50, 0..20)) {
        prop_assert_eq!(leval_plain(&Stream::<i64>::llift(&xs)), xs.clone());
        prop_assert_eq!(leval_plain(&PStream::<i64>::llift(&xs)), xs.clone());
        prop_assert_eq!(leval_plain(&Vec::<Delay<i64>>::llift(&xs)), xs);
    }

    #[test]
    fn right_inverse_on_trees(t in tree()) {
        prop_assert_eq!(leval_plain(&ITree::<i64>::llift(&t)), t);
    }

    #[test]
    fn fuel_and_depth_monotone(seed in any::<u64>(), b in budget(), extra_depth in 0usize..6, extra_fuel in 0u64..400) {
        let mut g = Gen::new(seed);
        let x = g.pstream();
        let s = g.stream(6, Gen::int);
        let bigger = ObsBudget::new(b.depth + extra_depth, b.fuel + extra_fuel);
        prop_assert!(observe(&x, b).approximates(&observe(&x, bigger)));
        prop_assert!(observe(&s, b).approximates(&observe(&s, bigger)));
        let more_fuel = ObsBudget::new(b.depth, b.fuel + extra_fuel);
        let t = g.infinite_itree(Gen::int);
        prop_assert!(observe(&t, b).approximates(&observe(&t, more_fuel)));
    }

    #[test]
    fn later_applicative_laws(v in -20i64..20, k in -5i64..5, b in budget()) {
        let x = delay(v);
        let id = delay(Fun::new(|a: i64| a));
        prop_assert_eq!(observe(&lap(&id, &x), b), observe(&x, b));
        let f = Fun::new(move |a: i64| a + k);
        prop_assert_eq!(observe(&lap(&delay(f.clone()), &delay(v)), b), observe(&delay(f.call(v)), b));
        let g = Fun::new(|a: i64| a * 3);
        let composed = lap(&delay(g.clone()), &lap(&delay(f.clone()), &x));
        prop_assert_eq!(observe(&composed, b), observe(&lap(&delay(f.then(g)), &x), b));
        let interchange = lap(&delay(Fun::new(move |h: Fun<i64, i64>| h.call(v))), &delay(f.clone()));
        prop_assert_eq!(observe(&lap(&delay(f), &x), b), observe(&interchange, b));
    }

    #[test]
    fn lfix_unrolls(xs in proptest::collection::vec(-9i64..9, 1..4), b in budget()) {
        let ys = xs.clone();
        let cyc = lfix(move |l| {
            ys.iter().rev().skip(1).fold(Stream::Cons(*ys.last().unwrap(), l), |acc, x| Stream::Cons(*x, delay(acc)))
        });
        let unrolled = xs.iter().rev().fold(cyc.clone(), |acc, x| Stream::Cons(*x, delay(acc)));
        prop_assert_eq!(observe(&cyc, ObsBudget::new(b.depth, 10_000)), observe(&unrolled, ObsBudget::new(b.depth, 10_000)));
    }

    #[test]
    fn zip_and_interleave_match_lists(a in proptest::collection::vec(-9i64..9, 0..10), b in proptest::collection::vec(-9i64..9, 0..10)) {
        let z = szip(Stream::<i64>::llift(&a), Stream::<i64>::llift(&b));
        let want: Vec<(i64, i64)> = a.iter().copied().zip(b.iter().copied()).collect();
        prop_assert_eq!(leval_plain(&z), want);
        let i = sinterleave(Stream::<i64>::llift(&a), Stream::<i64>::llift(&b));
        prop_assert_eq!(leval_plain(&i), interleave_lists(&a, &b));
    }

    #[test]
    fn repeat_prefix_costs_k(k in 0usize..60, v in -9i64..9) {
        let (o, used) = observe_counted(&repeat_forever(v), ObsBudget::new(k, 10_000));
        prop_assert_eq!(o.items().unwrap(), &Obs::ints(&vec![v; k])[..]);
        prop_assert!(used <= k as u64 + 1);
    }

    #[test]
    fn identity_traversals_preserve_order(seed in any::<u64>(), b in budget()) {
        let mut g = Gen::new(seed);
        let s = g.stream(8, Gen::int);
        let lifted = s.clone().map(IdentityEff::pure);
        prop_assert_eq!(observe(&isequence_stream::<IdentityEff, i64>(lifted.clone()).0, b), observe(&s, b));
        prop_assert_eq!(observe(&ibackquence::<IdentityEff, i64>(lifted).0, b), observe(&s, b));
        let nat = naturals().map(|n| n as i64).map(IdentityEff::pure);
        prop_assert_eq!(
            observe(&isequence_stream::<IdentityEff, i64>(nat).0, b),
            observe(&naturals().map(|n| n as i64), b)
        );
    }

    #[test]
    fn fusion_holds_for_any_seed(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let b = ObsBudget::new(10, 2000);
        let r: Vec<Vec<_>> = (0..8).map(|_| g.vec(6, <ReaderEff<i64> as SampleEffect>::sample)).collect();
        prop_assert!(fusion_check::<ReaderEff<i64>, i64>(r, b).passed());
        let w: Vec<Vec<_>> = (0..8).map(|_| g.vec(6, <WriterEff<DFirst<i64>> as SampleEffect>::sample)).collect();
        prop_assert!(fusion_check::<WriterEff<DFirst<i64>>, i64>(w, b).passed());
        let u: Vec<Vec<_>> = (0..8).map(|_| g.vec(6, <UpdateEff<PStream<i64>, i64> as SampleEffect>::sample)).collect();
        prop_assert!(fusion_check::<UpdateEff<PStream<i64>, i64>, i64>(u, b).passed());
    }
}

fn interleave_lists(a: &[i64], b: &[i64]) -> Vec<i64> {
    // Alternate while the current stream has elements; when it runs out the
    // other one follows in full.
    let (mut cur, mut other) = (a.to_vec(), b.to_vec());
    let mut out = Vec::new();
    loop {
        if cur.is_empty() {
            out.extend(other);
            return out;
        }
        out.push(cur.remove(0));
        std::mem::swap(&mut cur, &mut other);
    }
}
