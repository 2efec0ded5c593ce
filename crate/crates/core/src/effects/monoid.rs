use std::rc::Rc;

use super::{Monoid, Stable};
use crate::data::{Delay, PStream};
use crate::eval::{EvalLater, LiftLater, Meter, Obs, Pad};
use crate::later::{lfix, Later, Value};

impl<A: Value> Stable for Delay<A> {
    fn wait(x: Later<Self>) -> Self {
        Delay::Wait(x)
    }
}

impl<A: Value> Stable for PStream<A> {
    fn wait(x: Later<Self>) -> Self {
        PStream::Wait(x)
    }
}

/// Concatenation. Runs of elements are copied eagerly; a `Wait` on the
/// left defers the rest of the append to the next step.
pub fn pappend<A: Value>(p: &PStream<A>, y: &PStream<A>) -> PStream<A> {
    match p {
        PStream::Nil => y.clone(),
        PStream::Cons(x, rest) => PStream::Cons(x.clone(), Rc::new(pappend(rest, y))),
        PStream::Wait(l) => {
            let y = y.clone();
            PStream::Wait(l.map(move |p| pappend(&p, &y)))
        }
    }
}

impl<A: Value> Monoid for PStream<A> {
    fn empty() -> Self {
        PStream::Nil
    }
    fn append(&self, other: &Self) -> Self {
        pappend(self, other)
    }
}

/// The first `Just`, searching left to right.
#[derive(Clone, Debug)]
pub struct DFirst<A: 'static>(pub Delay<Option<A>>);

/// The last `Just`, searching right to left.
#[derive(Clone, Debug)]
pub struct DLast<A: 'static>(pub Delay<Option<A>>);

macro_rules! delayed_option {
    ($t:ident) => {
        impl<A: Value> $t<A> {
            pub fn just(a: A) -> Self {
                $t(Delay::Now(Some(a)))
            }
            pub fn nothing() -> Self {
                $t(Delay::Now(None))
            }
        }

        impl<A: Value> Stable for $t<A> {
            fn wait(x: Later<Self>) -> Self {
                $t(Delay::Wait(x.map(|d| d.0)))
            }
        }

        impl<A: EvalLater> EvalLater for $t<A> {
            fn leval(&self, m: &mut Meter) -> Obs {
                self.0.leval(m)
            }
        }

        impl<A: LiftLater> LiftLater for $t<A> {
            type Result = Option<A::Result>;
            fn llift(r: &Self::Result) -> Self {
                $t(Delay::Now(r.as_ref().map(A::llift)))
            }
        }

        impl<A: Value> Pad for $t<A> {
            fn pad(&self, j: usize) -> Self {
                $t(self.0.pad(j))
            }
        }
    };
}

delayed_option!(DFirst);
delayed_option!(DLast);

impl<A: Value> Monoid for DFirst<A> {
    fn empty() -> Self {
        DFirst::nothing()
    }
    fn append(&self, other: &Self) -> Self {
        match &self.0 {
            Delay::Now(None) => other.clone(),
            Delay::Now(Some(_)) => self.clone(),
            Delay::Wait(y) => {
                let other = other.clone();
                DFirst::wait(y.map(move |d| DFirst(d).append(&other)))
            }
        }
    }
}

impl<A: Value> Monoid for DLast<A> {
    fn empty() -> Self {
        DLast::nothing()
    }
    fn append(&self, other: &Self) -> Self {
        match &other.0 {
            Delay::Now(None) => self.clone(),
            Delay::Now(Some(_)) => other.clone(),
            Delay::Wait(y) => {
                let this = self.clone();
                DLast::wait(y.map(move |d| this.append(&DLast(d))))
            }
        }
    }
}

/// `x <> (x <> (x <> ...))`
pub fn dfirst_chain_right<A: Value>(x: DFirst<A>) -> DFirst<A> {
    lfix(move |rest| x.append(&DFirst::wait(rest)))
}

/// `((... <> x) <> x) <> x`
pub fn dfirst_chain_left<A: Value>(x: DFirst<A>) -> DFirst<A> {
    lfix(move |rest| DFirst::wait(rest).append(&x))
}

pub fn dlast_chain_right<A: Value>(x: DLast<A>) -> DLast<A> {
    lfix(move |rest| x.append(&DLast::wait(rest)))
}

pub fn dlast_chain_left<A: Value>(x: DLast<A>) -> DLast<A> {
    lfix(move |rest| DLast::wait(rest).append(&x))
}
