use std::fmt;

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

/// How a list-like observation stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    /// The structure really ended.
    Ended,
    /// The requested depth was reached with more structure remaining.
    Truncated(usize),
    /// Fuel ran out before the next constructor was reached.
    Exhausted,
}

impl End {
    pub fn label(&self) -> &'static str {
        match self {
            End::Ended => "ended",
            End::Truncated(_) => "truncated",
            End::Exhausted => "exhausted",
        }
    }
}

/// A finite, `Later`-free observation of a guarded value.
///
/// `Exhausted` may appear at any position; it is the budgeted stand-in for ⊥.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obs {
    Exhausted,
    Unit,
    Bool(bool),
    Int(i64),
    Pair(Box<Obs>, Box<Obs>),
    Maybe(Option<Box<Obs>>),
    List { items: Vec<Obs>, end: End },
    Leaf(Box<Obs>),
    Branch(Box<Obs>, Box<Obs>),
    /// A tree node beyond the requested depth.
    Cut,
    /// A function observed at a finite probe set: `(argument, result)` pairs.
    Fn(Vec<(Obs, Obs)>),
}

impl Obs {
    pub fn pair(a: Obs, b: Obs) -> Obs {
        Obs::Pair(Box::new(a), Box::new(b))
    }

    pub fn just(a: Obs) -> Obs {
        Obs::Maybe(Some(Box::new(a)))
    }

    pub fn nothing() -> Obs {
        Obs::Maybe(None)
    }

    pub fn ended(items: Vec<Obs>) -> Obs {
        Obs::List { items, end: End::Ended }
    }

    pub fn ints(xs: &[i64]) -> Vec<Obs> {
        xs.iter().map(|&x| Obs::Int(x)).collect()
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, Obs::Exhausted)
    }

    /// True if ⊥ occurs anywhere inside.
    pub fn contains_exhausted(&self) -> bool {
        match self {
            Obs::Exhausted => true,
            Obs::Unit | Obs::Bool(_) | Obs::Int(_) | Obs::Cut => false,
            Obs::Pair(a, b) | Obs::Branch(a, b) => a.contains_exhausted() || b.contains_exhausted(),
            Obs::Maybe(a) => a.as_ref().is_some_and(|a| a.contains_exhausted()),
            Obs::Leaf(a) => a.contains_exhausted(),
            Obs::List { items, end } => {
                *end == End::Exhausted || items.iter().any(Obs::contains_exhausted)
            }
            Obs::Fn(cases) => cases.iter().any(|(a, r)| a.contains_exhausted() || r.contains_exhausted()),
        }
    }

    /// `self` is at most as defined as `other` and agrees with it wherever
    /// both are defined. Used to check fuel and depth monotonicity.
    pub fn approximates(&self, other: &Obs) -> bool {
        match (self, other) {
            (Obs::Exhausted, _) => true,
            (Obs::Cut, _) => true,
            (Obs::Pair(a, b), Obs::Pair(c, d)) | (Obs::Branch(a, b), Obs::Branch(c, d)) => {
                a.approximates(c) && b.approximates(d)
            }
            (Obs::Maybe(None), Obs::Maybe(None)) => true,
            (Obs::Maybe(Some(a)), Obs::Maybe(Some(b))) => a.approximates(b),
            (Obs::Leaf(a), Obs::Leaf(b)) => a.approximates(b),
            (Obs::List { items: xs, end: e1 }, Obs::List { items: ys, end: e2 }) => {
                let prefix_ok = xs.len() <= ys.len()
                    && xs.iter().zip(ys).all(|(x, y)| x.approximates(y));
                match e1 {
                    End::Ended => prefix_ok && xs.len() == ys.len() && *e2 == End::Ended,
                    End::Truncated(_) | End::Exhausted => prefix_ok,
                }
            }
            (Obs::Fn(f), Obs::Fn(g)) => {
                f.len() == g.len()
                    && f.iter().zip(g).all(|((a, r), (b, s))| a == b && r.approximates(s))
            }
            (a, b) => a == b,
        }
    }

    /// Elements of a list observation, if this is one.
    pub fn items(&self) -> Option<&[Obs]> {
        match self {
            Obs::List { items, .. } => Some(items),
            _ => None,
        }
    }

    pub fn end(&self) -> Option<End> {
        match self {
            Obs::List { end, .. } => Some(*end),
            _ => None,
        }
    }
}

impl fmt::Display for Obs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obs::Exhausted => f.write_str("⊥"),
            Obs::Unit => f.write_str("()"),
            Obs::Bool(b) => write!(f, "{b}"),
            Obs::Int(n) => write!(f, "{n}"),
            Obs::Pair(a, b) => write!(f, "({a}, {b})"),
            Obs::Maybe(None) => f.write_str("Nothing"),
            Obs::Maybe(Some(a)) => write!(f, "Just {a}"),
            Obs::List { items, end } => {
                f.write_str("[")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                match end {
                    End::Ended => f.write_str("]"),
                    End::Truncated(_) => f.write_str(if items.is_empty() { "…]" } else { ",…]" }),
                    End::Exhausted => f.write_str(if items.is_empty() { "⊥]" } else { ",⊥]" }),
                }
            }
            Obs::Leaf(a) => write!(f, "Leaf {a}"),
            Obs::Branch(a, b) => write!(f, "<{a} | {b}>"),
            Obs::Cut => f.write_str("…"),
            Obs::Fn(cases) => {
                f.write_str("{")?;
                for (i, (a, r)) in cases.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a} ↦ {r}")?;
                }
                f.write_str("}")
            }
        }
    }
}

// JSON encoding: ground values map to JSON scalars, ⊥ to the string "⊥",
// and structured observations to small tagged objects.
impl Serialize for Obs {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Obs::Exhausted => s.serialize_str("⊥"),
            Obs::Unit => s.serialize_unit(),
            Obs::Bool(b) => s.serialize_bool(*b),
            Obs::Int(n) => s.serialize_i64(*n),
            Obs::Pair(a, b) => {
                let mut seq = s.serialize_seq(Some(2))?;
                seq.serialize_element(a)?;
                seq.serialize_element(b)?;
                seq.end()
            }
            Obs::Maybe(None) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("nothing", &())?;
                m.end()
            }
            Obs::Maybe(Some(a)) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("just", a)?;
                m.end()
            }
            Obs::List { items, end } => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("items", items)?;
                m.serialize_entry("end", end.label())?;
                m.end()
            }
            Obs::Leaf(a) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("leaf", a)?;
                m.end()
            }
            Obs::Branch(a, b) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("branch", &[a, b])?;
                m.end()
            }
            Obs::Cut => s.serialize_str("…"),
            Obs::Fn(cases) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("probes", cases)?;
                m.end()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_marks_bottom_and_truncation() {
        let o = Obs::List { items: Obs::ints(&[1, 2]), end: End::Exhausted };
        assert_eq!(o.to_string(), "[1,2,⊥]");
        let o = Obs::List { items: Obs::ints(&[1]), end: End::Truncated(1) };
        assert_eq!(o.to_string(), "[1,…]");
    }

    #[test]
    fn json_shape() {
        let o = Obs::pair(Obs::Int(1), Obs::Exhausted);
        assert_eq!(serde_json::to_string(&o).unwrap(), r#"[1,"⊥"]"#);
        let o = Obs::ended(Obs::ints(&[3]));
        assert_eq!(serde_json::to_string(&o).unwrap(), r#"{"items":[3],"end":"ended"}"#);
    }

    #[test]
    fn approximation_order() {
        let short = Obs::List { items: Obs::ints(&[1]), end: End::Exhausted };
        let long = Obs::List { items: Obs::ints(&[1, 2]), end: End::Ended };
        assert!(short.approximates(&long));
        assert!(!long.approximates(&short));
        assert!(!Obs::ended(vec![]).approximates(&long));
    }
}
