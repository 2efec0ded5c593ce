//! Guarded codata and the combinators written over them.
//!
//! Every recursive occurrence is wrapped in [`Later`], except for the
//! element-carrying tail of [`PStream::Cons`], which is deliberately
//! unguarded: finite runs of elements may sit between two `Wait`s.

use std::rc::Rc;

use crate::later::{delay, lfix, Fun, Later, Value};

/// Possibly infinite stream.
#[derive(Clone, Debug)]
pub enum Stream<A: 'static> {
    Nil,
    Cons(A, Later<Stream<A>>),
}

/// Capretta's partiality type: a value now, or a tick and another try.
#[derive(Clone, Debug)]
pub enum Delay<A: 'static> {
    Now(A),
    Wait(Later<Delay<A>>),
}

/// Possibly productive stream: runs of elements separated by arbitrary
/// (possibly infinite) sequences of waits.
#[derive(Clone, Debug)]
pub enum PStream<A: 'static> {
    Nil,
    Wait(Later<PStream<A>>),
    Cons(A, Rc<PStream<A>>),
}

/// Guarded binary tree with labelled leaves.
#[derive(Clone, Debug)]
pub enum ITree<A: 'static> {
    Leaf(A),
    Branch(Later<ITree<A>>, Later<ITree<A>>),
}

/// A forwards stream paired with a backwards one.
#[derive(Clone, Debug)]
pub struct Bistream<A: 'static> {
    pub forward: Stream<A>,
    pub backward: Stream<A>,
}

/// Branch direction inside an [`ITree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    L,
    R,
}

impl<A: Value> Stream<A> {
    pub fn cons(head: A, tail: Stream<A>) -> Self {
        Stream::Cons(head, delay(tail))
    }

    /// Guarded `fmap`.
    pub fn map<B: Value>(self, f: impl Fn(A) -> B + 'static) -> Stream<B> {
        let f = Rc::new(f);
        let go = lfix(move |rec: Later<Fun<Stream<A>, Stream<B>>>| {
            Fun::new(move |s| match s {
                Stream::Nil => Stream::Nil,
                Stream::Cons(x, xs) => Stream::Cons(f(x), rec.zip_with(&xs, |g, t| g.call(t))),
            })
        });
        go.call(self)
    }

    /// Structural lift of a finite list, leaving the elements as they are.
    pub fn from_vec(xs: Vec<A>) -> Self {
        xs.into_iter().rev().fold(Stream::Nil, |acc, x| Stream::Cons(x, delay(acc)))
    }

    /// Builds a stream that loops over `items` forever. Empty input yields `Nil`.
    pub fn cycle(items: Vec<A>) -> Self {
        if items.is_empty() {
            return Stream::Nil;
        }
        lfix(move |knot: Later<Stream<A>>| {
            let mut tail = knot;
            let mut it = items.into_iter();
            let first = it.next().expect("non-empty");
            let rest: Vec<A> = it.collect();
            for x in rest.into_iter().rev() {
                tail = delay(Stream::Cons(x, tail));
            }
            Stream::Cons(first, tail)
        })
    }

    /// Infinite stream from a seed and a step function.
    pub fn unfold<S: Value>(seed: S, step: impl Fn(&S) -> (A, S) + 'static) -> Self {
        let step = Rc::new(step);
        let go = lfix(move |rec: Later<Fun<S, Stream<A>>>| {
            Fun::new(move |s: S| {
                let (a, next) = step(&s);
                Stream::Cons(a, rec.map(move |g| g.call(next)))
            })
        });
        go.call(seed)
    }
}

/// `lfix (Cons a)`.
pub fn repeat_forever<A: Value>(a: A) -> Stream<A> {
    lfix(move |l| Stream::Cons(a, l))
}

/// 0, 1, 2, ...
pub fn naturals() -> Stream<u64> {
    Stream::unfold(0u64, |n| (*n, n + 1))
}

/// Alternates elements starting from `s1`; once `s1` ends the remainder of
/// the other stream follows.
pub fn sinterleave<A: Value>(s1: Stream<A>, s2: Stream<A>) -> Stream<A> {
    type Step<A> = Fun<(Stream<A>, Stream<A>), Stream<A>>;
    let go: Step<A> = lfix(|rec: Later<Step<A>>| {
        Fun::new(move |(s1, s2)| match s1 {
            Stream::Cons(x, xs) => Stream::Cons(x, rec.zip_with(&xs, move |f, t| f.call((s2, t)))),
            Stream::Nil => s2,
        })
    });
    go.call((s1, s2))
}

/// Truncated zip.
pub fn szip<A: Value, B: Value>(s1: Stream<A>, s2: Stream<B>) -> Stream<(A, B)> {
    type Step<A, B> = Fun<(Stream<A>, Stream<B>), Stream<(A, B)>>;
    let go: Step<A, B> = lfix(|rec: Later<Step<A, B>>| {
        Fun::new(move |pair| match pair {
            (Stream::Cons(x, xs), Stream::Cons(y, ys)) => {
                let tails = xs.zip_with(&ys, |a, b| (a, b));
                Stream::Cons((x, y), rec.zip_with(&tails, |f, t| f.call(t)))
            }
            _ => Stream::Nil,
        })
    });
    go.call((s1, s2))
}

/// Last element of a possibly infinite stream: one `Wait` per element.
pub fn slast<A: Value>(s: Stream<A>) -> Delay<Option<A>> {
    type Step<A> = Fun<(Option<A>, Stream<A>), Delay<Option<A>>>;
    let go: Step<A> = lfix(|rec: Later<Step<A>>| {
        Fun::new(move |(def, s)| match s {
            Stream::Cons(x, xs) => {
                Delay::Wait(rec.zip_with(&xs, move |f, t| f.call((Some(x), t))))
            }
            Stream::Nil => Delay::Now(def),
        })
    });
    go.call((None, s))
}

/// Last element of a possibly productive stream. Every element and every
/// wait contributes one `Wait`.
pub fn plast<A: Value>(p: PStream<A>) -> Delay<Option<A>> {
    type Step<A> = Fun<(Option<A>, PStream<A>), Delay<Option<A>>>;
    let go: Step<A> = lfix(|rec: Later<Step<A>>| {
        Fun::new(move |(def, p)| match p {
            PStream::Nil => Delay::Now(def),
            PStream::Cons(x, rest) => {
                let rest = (*rest).clone();
                Delay::Wait(rec.map(move |f| f.call((Some(x), rest))))
            }
            PStream::Wait(l) => Delay::Wait(rec.zip_with(&l, move |f, t| f.call((def, t)))),
        })
    });
    go.call((None, p))
}

impl<A: Value> Delay<A> {
    /// `Now` wrapped in `n` waits.
    pub fn after(n: usize, a: A) -> Self {
        (0..n).fold(Delay::Now(a), |d, _| Delay::Wait(delay(d)))
    }

    pub fn map<B: Value>(self, f: impl Fn(A) -> B + 'static) -> Delay<B> {
        let f = Rc::new(f);
        let go = lfix(move |rec: Later<Fun<Delay<A>, Delay<B>>>| {
            Fun::new(move |d| match d {
                Delay::Now(a) => Delay::Now(f(a)),
                Delay::Wait(l) => Delay::Wait(rec.zip_with(&l, |g, d| g.call(d))),
            })
        });
        go.call(self)
    }

    /// `lfix Wait`: never produces a value.
    pub fn never() -> Self {
        lfix(Delay::Wait)
    }
}

impl<A: Value> PStream<A> {
    pub fn cons(x: A, rest: PStream<A>) -> Self {
        PStream::Cons(x, Rc::new(rest))
    }

    /// Finite run with no waits.
    pub fn from_slice(xs: &[A]) -> Self {
        xs.iter().rev().fold(PStream::Nil, |acc, x| PStream::cons(x.clone(), acc))
    }

    pub fn wait_n(n: usize, p: PStream<A>) -> Self {
        (0..n).fold(p, |p, _| PStream::Wait(delay(p)))
    }

    /// Whether the first element is available without waiting.
    pub fn is_prompt(&self) -> bool {
        matches!(self, PStream::Cons(..))
    }
}

impl<A: Value> ITree<A> {
    pub fn branch(l: ITree<A>, r: ITree<A>) -> Self {
        ITree::Branch(delay(l), delay(r))
    }

    pub fn map<B: Value>(self, f: impl Fn(A) -> B + 'static) -> ITree<B> {
        let f = Rc::new(f);
        let go = lfix(move |rec: Later<Fun<ITree<A>, ITree<B>>>| {
            Fun::new(move |t| match t {
                ITree::Leaf(a) => ITree::Leaf(f(a)),
                ITree::Branch(l, r) => {
                    ITree::Branch(rec.zip_with(&l, |g, t| g.call(t)), rec.zip_with(&r, |g, t| g.call(t)))
                }
            })
        });
        go.call(self)
    }
}

/// Tree generated from a path-indexed labelling. A node becomes a leaf
/// exactly when `is_leaf(path)` holds; with a predicate that is never true
/// the tree is infinite in every direction.
pub fn itree_full<A: Value>(
    label: impl Fn(&[Dir]) -> A + 'static,
    is_leaf: impl Fn(&[Dir]) -> bool + 'static,
) -> ITree<A> {
    let label = Rc::new(label);
    let is_leaf = Rc::new(is_leaf);
    let go = lfix(move |rec: Later<Fun<Vec<Dir>, ITree<A>>>| {
        Fun::new(move |path: Vec<Dir>| {
            if is_leaf(&path) {
                return ITree::Leaf(label(&path));
            }
            let mut left = path.clone();
            left.push(Dir::L);
            let mut right = path;
            right.push(Dir::R);
            ITree::Branch(rec.map(move |g| g.call(left)), rec.map(move |g| g.call(right)))
        })
    });
    go.call(Vec::new())
}

impl<A: Value> Bistream<A> {
    pub fn empty() -> Self {
        Bistream { forward: Stream::Nil, backward: Stream::Nil }
    }

    pub fn new(forward: Stream<A>, backward: Stream<A>) -> Self {
        Bistream { forward, backward }
    }

    pub fn map<B: Value>(self, f: impl Fn(A) -> B + 'static) -> Bistream<B> {
        let f = Rc::new(f);
        let g = Rc::clone(&f);
        Bistream {
            forward: self.forward.map(move |a| f(a)),
            backward: self.backward.map(move |a| g(a)),
        }
    }
}

pub fn bicons<A: Value>(x: A, b: Bistream<A>) -> Bistream<A> {
    Bistream { forward: Stream::Cons(x, delay(b.forward)), backward: b.backward }
}

pub fn bisnoc<A: Value>(y: A, b: Bistream<A>) -> Bistream<A> {
    Bistream { forward: b.forward, backward: Stream::Cons(y, delay(b.backward)) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{observe, Obs, ObsBudget};

    fn b(depth: usize) -> ObsBudget {
        ObsBudget::new(depth, 1000)
    }

    #[test]
    fn repeat_and_naturals() {
        assert_eq!(observe(&repeat_forever(1i64), ObsBudget::new(3, 3)).to_string(), "[1,1,1,…]");
        assert_eq!(observe(&naturals(), b(4)).items().unwrap(), &Obs::ints(&[0, 1, 2, 3])[..]);
    }

    #[test]
    fn interleave_and_zip() {
        let i = sinterleave(naturals(), naturals().map(|n| n + 100));
        assert_eq!(observe(&i, b(5)).to_string(), "[0,100,1,101,2,…]");
        let shorter = Stream::from_vec(vec![7u64, 8]);
        assert_eq!(observe(&sinterleave(shorter, naturals()), b(5)).to_string(), "[7,0,8,1,2,…]");
        let z = szip(naturals(), Stream::from_vec(vec!['a', 'b']));
        assert_eq!(observe(&z.map(|(n, _)| n), b(5)).to_string(), "[0,1]");
    }

    #[test]
    fn last_of_finite_and_infinite() {
        assert_eq!(observe(&slast(Stream::from_vec(vec![1i64, 2, 3])), b(1)).to_string(), "Just 3");
        assert_eq!(observe(&slast(Stream::<i64>::Nil), b(1)).to_string(), "Nothing");
        assert_eq!(observe(&slast(repeat_forever(1i64)), b(1)), Obs::Exhausted);
        let p = PStream::wait_n(2, PStream::cons(4i64, PStream::wait_n(1, PStream::Nil)));
        assert_eq!(observe(&plast(p), b(1)).to_string(), "Just 4");
    }

    #[test]
    fn delay_and_prompt_streams() {
        assert_eq!(observe(&Delay::after(3, 9i64), ObsBudget::new(1, 3)), Obs::Int(9));
        assert_eq!(observe(&Delay::after(3, 9i64), ObsBudget::new(1, 2)), Obs::Exhausted);
        assert_eq!(observe(&Delay::<i64>::never(), b(1)), Obs::Exhausted);
        assert!(PStream::from_slice(&[1i64, 2]).is_prompt());
        assert!(!PStream::wait_n(1, PStream::from_slice(&[1i64])).is_prompt());
    }

    #[test]
    fn bistream_ends() {
        let x = bisnoc(9i64, bicons(1, Bistream::empty()));
        let want = Bistream::new(Stream::from_vec(vec![1i64]), Stream::from_vec(vec![9]));
        assert_eq!(observe(&x, b(4)), observe(&want, b(4)));
        let t = itree_full(|p: &[Dir]| p.len() as i64, |p: &[Dir]| p.len() == 1);
        assert_eq!(observe(&t, b(3)), observe(&ITree::branch(ITree::Leaf(1i64), ITree::Leaf(1)), b(3)));
    }
}
