//! Named demonstrations with a declared terminator and a content oracle.
//!
//! Exit codes: 0 when a value-bearing demo matches, 2 when a demo expected
//! to diverge exhausts its fuel, 1 on any contract violation.

use serde::Serialize;

use crate::data::{naturals, plast, repeat_forever, sinterleave, slast, PStream, Stream};
use crate::effects::{
    get_state, leval_in, put_action, update_bind, Applicative, ContEff, DFirst, DLast, MaybeEff, ReaderEff, Update,
    UpdateEff, Writer, WriterEff,
};
use crate::eval::{End, EvalLater, Meter, Obs, ObsBudget};
use crate::later::{Fun, Partial};
use crate::traversals::{ibackquence, isequence_stream, naive_sequence, transpose_infinite};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DemoParams {
    pub depth: usize,
    pub fuel: u64,
    pub seed: u64,
    pub env: i64,
    pub s0: i64,
}

impl Default for DemoParams {
    fn default() -> Self {
        DemoParams { depth: 5, fuel: 1000, seed: 0, env: 1, s0: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Terminator {
    Ended,
    Truncated,
    Exhausted,
}

impl Terminator {
    pub fn of(o: &Obs) -> Terminator {
        match o {
            Obs::List { end: End::Ended, .. } => Terminator::Ended,
            Obs::List { end: End::Truncated(_), .. } => Terminator::Truncated,
            Obs::List { end: End::Exhausted, .. } | Obs::Exhausted => Terminator::Exhausted,
            _ if o.contains_exhausted() => Terminator::Exhausted,
            _ => Terminator::Ended,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Terminator::Ended => "ended",
            Terminator::Truncated => "truncated",
            Terminator::Exhausted => "exhausted",
        }
    }
}

pub struct DemoInfo {
    pub name: &'static str,
    pub about: &'static str,
    pub expects: Terminator,
}

pub const DEMOS: &[DemoInfo] = &[
    DemoInfo { name: "reader-repeat", about: "sequence repeat(ask) in Reader, run at --env", expects: Terminator::Truncated },
    DemoInfo {
        name: "state-transducer",
        about: "read s, write s+1, read again, forever, from --s0; values and state log",
        expects: Terminator::Truncated,
    },
    DemoInfo { name: "state-final", about: "last entry of the transducer's state log", expects: Terminator::Exhausted },
    DemoInfo {
        name: "maybe-diverges",
        about: "sequence repeat(Just 1) in Maybe by forcing the whole input",
        expects: Terminator::Exhausted,
    },
    DemoInfo { name: "dfirst-forward", about: "Writer<DFirst> log, prompt traversal of naturals", expects: Terminator::Ended },
    DemoInfo {
        name: "dfirst-backward",
        about: "Writer<DFirst> log, backward traversal of naturals",
        expects: Terminator::Exhausted,
    },
    DemoInfo { name: "dlast-forward", about: "Writer<DLast> log, prompt traversal of naturals", expects: Terminator::Exhausted },
    DemoInfo { name: "dlast-backward", about: "Writer<DLast> log, backward traversal of naturals", expects: Terminator::Ended },
    DemoInfo { name: "cont-diverges", about: "sequence repeat(pure 1) in Cont", expects: Terminator::Exhausted },
    DemoInfo { name: "slast-infinite", about: "last element of repeat(1)", expects: Terminator::Exhausted },
    DemoInfo {
        name: "transpose",
        about: "column --env of the transposed matrix M(i, j) = (i, j)",
        expects: Terminator::Truncated,
    },
    DemoInfo { name: "interleave", about: "interleave naturals with 100 + naturals", expects: Terminator::Truncated },
];

pub fn find(name: &str) -> Option<&'static DemoInfo> {
    DEMOS.iter().find(|d| d.name == name)
}

/// Fuel bound for `reader-repeat`: slope times depth plus a constant,
/// frozen at the first measurement.
pub const READER_FUEL_SLOPE: u64 = 2;
pub const READER_FUEL_CONST: u64 = 2;

#[derive(Clone, Debug, Serialize)]
pub struct DemoRun {
    pub demo: String,
    pub params: DemoParams,
    pub elements: Vec<Obs>,
    pub terminator: Terminator,
    pub fuel_used: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log: Option<Vec<Obs>>,
    pub expected: Terminator,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
    #[serde(skip)]
    pub observation: Obs,
    #[serde(skip)]
    pub log_observation: Option<Obs>,
}

impl DemoRun {
    fn new(info: &DemoInfo, params: &DemoParams, observation: Obs, fuel_used: u64) -> Self {
        let elements = match &observation {
            Obs::List { items, .. } => items.clone(),
            Obs::Exhausted => Vec::new(),
            o => vec![o.clone()],
        };
        let terminator = Terminator::of(&observation);
        let mut run = DemoRun {
            demo: info.name.into(),
            params: params.clone(),
            elements,
            terminator,
            fuel_used,
            log: None,
            expected: info.expects,
            violations: Vec::new(),
            observation,
            log_observation: None,
        };
        if terminator != info.expects {
            run.violate(format!("expected {}, got {}", info.expects.label(), terminator.label()));
        }
        run
    }

    fn violate(&mut self, why: String) {
        self.violations.push(why);
    }

    fn with_log(mut self, log: Obs) -> Self {
        self.log = Some(log.items().map(<[Obs]>::to_vec).unwrap_or_else(|| vec![log.clone()]));
        self.log_observation = Some(log);
        self
    }

    /// Checks the elements against an oracle, when the run has any.
    fn expect_elements(&mut self, want: Vec<Obs>) {
        if self.terminator != Terminator::Exhausted && self.elements != want {
            let got = Obs::List { items: self.elements.clone(), end: End::Ended };
            self.violate(format!("elements {got} differ from {}", Obs::ended(want)));
        }
    }

    pub fn exit_code(&self) -> i32 {
        if !self.violations.is_empty() {
            1
        } else if self.terminator == Terminator::Exhausted {
            2
        } else {
            0
        }
    }

    pub fn json(&self) -> String {
        serde_json::to_string(self).expect("demo runs serialize")
    }

    pub fn text(&self) -> String {
        let mut out = format!("{}: {}\n", self.demo, self.observation);
        if let Some(l) = &self.log_observation {
            out.push_str(&format!("log: {l}\n"));
        }
        out.push_str(&format!(
            "terminator: {} (expected {}), fuel used: {}\n",
            self.terminator.label(),
            self.expected.label(),
            self.fuel_used
        ));
        for v in &self.violations {
            out.push_str(&format!("violation: {v}\n"));
        }
        out
    }
}

fn measure<T: EvalLater>(x: &T, p: &DemoParams) -> (Obs, u64) {
    let mut m = Meter::new(ObsBudget::new(p.depth, p.fuel));
    let o = x.leval(&mut m);
    (o, m.used())
}

/// `get >>= \s -> put [s + 1] >> get`
pub fn transducer_step() -> Update<PStream<i64>, i64, i64> {
    update_bind(get_state(), |s: i64| update_bind(put_action(PStream::from_slice(&[s + 1])), |_| get_state()))
}

fn transducer(s0: i64) -> (PStream<i64>, Stream<i64>) {
    isequence_stream::<UpdateEff<PStream<i64>, i64>, i64>(repeat_forever(transducer_step())).run(s0)
}

fn writes<W: Clone + 'static>(f: fn(i64) -> W) -> Stream<Writer<W, i64>> {
    naturals().map(move |n| Writer::new(n as i64, f(n as i64)))
}

pub fn run_demo(name: &str, p: &DemoParams) -> Result<DemoRun, String> {
    let info = find(name).ok_or_else(|| format!("unknown demo `{name}`"))?;
    let ints = |xs: Vec<i64>| Obs::ints(&xs);
    let run = match name {
        "reader-repeat" => {
            let ask = Fun::new(|r: i64| r);
            let r = isequence_stream::<ReaderEff<i64>, i64>(repeat_forever(ask));
            let (o, used) = measure(&r.call(p.env), p);
            let mut run = DemoRun::new(info, p, o, used);
            run.expect_elements(ints(vec![p.env; p.depth]));
            let bound = READER_FUEL_SLOPE * p.depth as u64 + READER_FUEL_CONST;
            if used > bound {
                run.violate(format!("used {used} fuel, bound is {bound}"));
            }
            run
        }
        "state-transducer" => {
            let (log, values) = transducer(p.s0);
            let (o, used) = measure(&values, p);
            let (l, lused) = measure(&log, p);
            let want: Vec<i64> = (1..=p.depth as i64).map(|k| p.s0 + k).collect();
            let log_term = Terminator::of(&l);
            let log_items = l.items().map(<[Obs]>::to_vec);
            let mut run = DemoRun::new(info, p, o, used + lused).with_log(l);
            run.expect_elements(ints(want.clone()));
            if log_term != Terminator::Truncated {
                run.violate(format!("log {}, expected truncated", log_term.label()));
            } else if log_items != Some(ints(want)) {
                run.violate("log differs from the running states".into());
            }
            run
        }
        "state-final" => {
            let (log, _) = transducer(p.s0);
            let (o, used) = measure(&plast(log), p);
            DemoRun::new(info, p, o, used)
        }
        "maybe-diverges" => {
            let mut m = Meter::with_fuel(p.fuel);
            let o = match naive_sequence::<MaybeEff, i64>(&repeat_forever(Some(1i64)), &mut m) {
                Partial::Exhausted => Obs::Exhausted,
                Partial::Value(v) => v.map_or(Obs::nothing(), |xs| Obs::just(Obs::ended(Obs::ints(&xs)))),
            };
            DemoRun::new(info, p, o, m.used())
        }
        "dfirst-forward" | "dfirst-backward" => {
            type W = WriterEff<DFirst<i64>>;
            let s = writes(DFirst::just);
            let r = if name == "dfirst-forward" { isequence_stream::<W, i64>(s) } else { ibackquence::<W, i64>(s) };
            let (o, used) = measure(&r.log, p);
            let mut run = DemoRun::new(info, p, o, used);
            run.expect_elements(vec![Obs::just(Obs::Int(0))]);
            run
        }
        "dlast-forward" | "dlast-backward" => {
            type W = WriterEff<DLast<i64>>;
            let s = writes(DLast::just);
            let r = if name == "dlast-forward" { isequence_stream::<W, i64>(s) } else { ibackquence::<W, i64>(s) };
            let (o, used) = measure(&r.log, p);
            let mut run = DemoRun::new(info, p, o, used);
            run.expect_elements(vec![Obs::just(Obs::Int(0))]);
            run
        }
        "cont-diverges" => {
            let r = isequence_stream::<ContEff, i64>(repeat_forever(ContEff::pure(1i64)));
            let mut m = Meter::new(ObsBudget::new(p.depth, p.fuel));
            let o = leval_in::<ContEff, Stream<i64>>(&r, &mut m);
            DemoRun::new(info, p, o, m.used())
        }
        "slast-infinite" => {
            let (o, used) = measure(&slast(repeat_forever(1i64)), p);
            DemoRun::new(info, p, o, used)
        }
        "transpose" => {
            let j = u64::try_from(p.env).map_err(|_| "transpose needs --env >= 0 (the column index)".to_string())?;
            let rows = Stream::unfold(0u64, |&i| (Fun::new(move |j: u64| (i as i64, j as i64)), i + 1));
            let (o, used) = measure(&transpose_infinite(rows).call(j), p);
            let mut run = DemoRun::new(info, p, o, used);
            run.expect_elements((0..p.depth as i64).map(|i| Obs::pair(Obs::Int(i), Obs::Int(j as i64))).collect());
            run
        }
        "interleave" => {
            let s = sinterleave(naturals(), naturals().map(|n| n + 100));
            let (o, used) = measure(&s, p);
            let mut run = DemoRun::new(info, p, o, used);
            run.expect_elements(ints((0..p.depth as i64).map(|i| if i % 2 == 0 { i / 2 } else { 100 + i / 2 }).collect()));
            run
        }
        _ => unreachable!("registered demo without a runner"),
    };
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(name: &str, f: impl FnOnce(&mut DemoParams)) -> DemoRun {
        let mut p = DemoParams::default();
        f(&mut p);
        run_demo(name, &p).unwrap()
    }

    #[test]
    fn every_demo_meets_its_contract_at_defaults() {
        for d in DEMOS {
            let r = run(d.name, |_| {});
            assert!(r.violations.is_empty(), "{}: {:?}", d.name, r.violations);
            assert_eq!(r.exit_code(), if d.expects == Terminator::Exhausted { 2 } else { 0 }, "{}", d.name);
        }
    }

    #[test]
    fn reader_repeat_at_env_1() {
        let r = run("reader-repeat", |p| p.env = 1);
        assert_eq!(r.elements, Obs::ints(&[1; 5]));
        assert_eq!(r.terminator, Terminator::Truncated);
    }

    #[test]
    fn reader_fuel_is_linear_in_depth() {
        for depth in [0usize, 1, 5, 20, 100] {
            let r = run("reader-repeat", |p| {
                p.depth = depth;
                p.fuel = 10_000;
            });
            assert!(r.violations.is_empty(), "depth {depth}: {:?}", r.violations);
        }
    }

    #[test]
    fn state_transducer_values_and_log() {
        let r = run("state-transducer", |p| p.s0 = 0);
        assert_eq!(r.elements, Obs::ints(&[1, 2, 3, 4, 5]));
        assert_eq!(r.log.unwrap(), Obs::ints(&[1, 2, 3, 4, 5]));
        let r = run("state-transducer", |p| p.s0 = 10);
        assert_eq!(r.elements, Obs::ints(&[11, 12, 13, 14, 15]));
    }

    #[test]
    fn too_little_fuel_is_a_violation() {
        let r = run("reader-repeat", |p| p.fuel = 2);
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.terminator, Terminator::Exhausted);
    }

    #[test]
    fn unknown_and_bad_params() {
        assert!(run_demo("nope", &DemoParams::default()).is_err());
        let p = DemoParams { env: -1, ..DemoParams::default() };
        assert!(run_demo("transpose", &p).is_err());
    }

    #[test]
    fn json_has_the_documented_fields() {
        let r = run("maybe-diverges", |_| {});
        let v: serde_json::Value = serde_json::from_str(&r.json()).unwrap();
        for k in ["demo", "params", "elements", "terminator", "fuel_used"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        assert_eq!(v["terminator"], "exhausted");
        assert!(r.text().contains('⊥'));
    }
}
