//! The law suite: every shipped check, grouped and seeded, reported as one
//! JSON object per item.
//!
//! Items carry the verdict they are expected to reach. Deliberately wrong
//! candidates (the guessing `Maybe` predict, non-invariant functions) are
//! expected to fail, and an item is only "ok" when the verdict matches.

use std::rc::Rc;

use serde::Serialize;

use crate::data::{naturals, repeat_forever, Bistream, Delay, ITree, PStream, Stream};
use crate::effects::{
    apply_action_head, dfirst_chain_left, dfirst_chain_right, dlast_chain_left, dlast_chain_right, predict_compose,
    predict_const_pair, predict_cont, predict_later, predict_maybe_guess, predict_negative, predict_prod,
    predict_reader, predict_update, predict_writer, Cont, ContEff, DFirst, DLast, IdentityEff, Monoid, Observed,
    Pred, PredEff, ProdEff, ReaderEff, Stable, Update, UpdateEff, Writer, WriterEff,
};
use crate::eval::{
    check_bisim_invariance, check_composition_closure, check_gwbeq, compare, leval_plain, observe, observe_counted,
    EvalLater, Failure, FromObs, LiftLater, Meter, Obs, ObsBudget, Pad, Plain, Report,
};
use crate::gen::{sample_nested, sample_update, Gen, SampleEffect};
use crate::later::{delay, Fun, Later, Partial};
use crate::traversals::{
    col_entry, composition_law, fusion_check, identity_law, naturality_law, row_entry, transpose_back,
    transpose_infinite, BistreamT, ForgetLog, ITraversable, ITreeT, LogHead, LogLast, ProjFirst, ReaderReindex,
    StreamT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Gwbeq,
    Closure,
    Invariance,
    Monoid,
    Laws,
    Fusion,
    Transpose,
    Inverse,
}

impl Group {
    pub const ALL: [Group; 8] = [
        Group::Gwbeq,
        Group::Closure,
        Group::Invariance,
        Group::Monoid,
        Group::Laws,
        Group::Fusion,
        Group::Transpose,
        Group::Inverse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Group::Gwbeq => "gwbeq",
            Group::Closure => "closure",
            Group::Invariance => "invariance",
            Group::Monoid => "monoid",
            Group::Laws => "laws",
            Group::Fusion => "fusion",
            Group::Transpose => "transpose",
            Group::Inverse => "inverse",
        }
    }

    /// A single group name, or `all`.
    pub fn parse(s: &str) -> Option<Vec<Group>> {
        if s == "all" {
            return Some(Group::ALL.to_vec());
        }
        Group::ALL.iter().find(|g| g.name() == s).map(|g| vec![*g])
    }
}

/// One suite entry.
#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub group: &'static str,
    pub check: String,
    pub subject: String,
    pub expect_pass: bool,
    pub passed: bool,
    pub samples: usize,
    pub budgets: Vec<ObsBudget>,
    pub probes: Vec<String>,
    pub failures: usize,
    pub witness: Option<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Item {
    pub fn from_report(group: Group, report: Report, expect_pass: bool) -> Self {
        Item {
            group: group.name(),
            passed: report.passed(),
            failures: report.failures.len(),
            witness: report.failures.first().cloned(),
            check: report.check,
            subject: report.subject,
            expect_pass,
            samples: report.samples,
            budgets: report.budgets,
            probes: report.probes,
            note: None,
        }
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }

    /// The verdict is the expected one.
    pub fn ok(&self) -> bool {
        self.passed == self.expect_pass
    }

    pub fn json(&self) -> String {
        serde_json::to_string(self).expect("items serialize")
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub budgets: Vec<ObsBudget>,
}

impl SuiteConfig {
    pub fn new(seed: u64) -> Self {
        SuiteConfig { seed, budgets: default_budgets() }
    }

    /// Three budgets growing from a base.
    pub fn with_base(seed: u64, base: ObsBudget) -> Self {
        let b = |dd: usize, k: u64| ObsBudget::new(base.depth + dd, base.fuel.saturating_mul(k));
        SuiteConfig { seed, budgets: vec![base, b(4, 4), b(10, 20)] }
    }

    fn gen(&self, label: &str) -> Gen {
        Gen::split(self.seed, label)
    }

    fn widest(&self) -> ObsBudget {
        *self.budgets.last().expect("at least one budget")
    }
}

pub fn default_budgets() -> Vec<ObsBudget> {
    vec![ObsBudget::new(6, 500), ObsBudget::new(10, 2000), ObsBudget::new(16, 10_000)]
}

pub const GWBEQ_SAMPLES: usize = 100;
pub const INVARIANCE_SAMPLES: usize = 60;
pub const MONOID_SAMPLES: usize = 100;
pub const LAW_SAMPLES: usize = 50;
pub const FUSION_SAMPLES: usize = 200;
pub const FUSION_MAX_LEN: usize = 8;
pub const TRANSPOSE_PAIRS: usize = 20;
pub const INVERSE_SAMPLES: usize = 200;
const INFINITE_TREE_SAMPLES: usize = 40;

pub fn run_suite(groups: &[Group], cfg: &SuiteConfig) -> Vec<Item> {
    let mut items = Vec::new();
    for g in groups {
        items.extend(match g {
            Group::Gwbeq => gwbeq_group(cfg),
            Group::Closure => closure_group(cfg),
            Group::Invariance => invariance_group(cfg),
            Group::Monoid => monoid_group(cfg),
            Group::Laws => laws_group(cfg),
            Group::Fusion => fusion_group(cfg),
            Group::Transpose => transpose_group(cfg),
            Group::Inverse => inverse_group(cfg),
        });
    }
    items
}

fn id(o: Obs) -> Obs {
    o
}

// -------------------------------------------------------------------- gwbeq

fn gwbeq_item<T: EvalLater, U: EvalLater>(
    cfg: &SuiteConfig,
    subject: &str,
    expect_pass: bool,
    f: impl Fn(T) -> U,
    mut sample: impl FnMut(&mut Gen) -> T,
) -> Item {
    let mut g = cfg.gen(subject);
    let samples: Vec<Result<T, String>> = (0..GWBEQ_SAMPLES).map(|_| Ok(sample(&mut g))).collect();
    Item::from_report(Group::Gwbeq, check_gwbeq(subject, f, samples, &cfg.budgets, &id), expect_pass)
}

fn cont_sample(g: &mut Gen) -> Cont<Delay<i64>, i64> {
    let a = g.int();
    let w = g.below(3);
    if g.chance(0.25) {
        // Ignores its continuation.
        Cont::new(move |_| Delay::after(w, a))
    } else {
        Cont::new(move |k: Fun<i64, Delay<i64>>| k.call(a).pad(w))
    }
}

fn negative_sample(g: &mut Gen) -> Fun<Pred<i64>, Delay<bool>> {
    let (x, y) = (g.int(), g.int());
    let w = g.below(3);
    match g.below(3) {
        0 => Fun::new(move |p: Pred<i64>| Delay::after(w, p.call(x))),
        1 => Fun::new(move |p: Pred<i64>| Delay::after(w, p.call(x) && !p.call(y))),
        _ => Fun::new(move |_| Delay::after(w, x > 0)),
    }
}

/// `z` for the contravariant predict: the probe predicates lifted to
/// delayed arguments.
fn negative_predict(f: Later<Fun<Pred<i64>, Delay<bool>>>) -> Fun<Pred<Later<i64>>, Delay<bool>> {
    Fun::new(move |z: Pred<Later<i64>>| predict_negative::<PredEff, i64, Delay<bool>>(f.clone(), z))
}

fn stable_item<C: Stable + EvalLater>(cfg: &SuiteConfig, name: &str, mut sample: impl FnMut(&mut Gen) -> C) -> Item {
    gwbeq_item(cfg, &format!("wait on {name}"), true, C::wait, move |g| delay(sample(g)))
}

fn gwbeq_group(cfg: &SuiteConfig) -> Vec<Item> {
    type WP = WriterEff<PStream<i64>>;
    type WF = WriterEff<DFirst<i64>>;
    type WL = WriterEff<DLast<i64>>;
    type RW = ProdEff<ReaderEff<i64>, WP>;
    vec![
        gwbeq_item(cfg, "predict later", true, predict_later, |g| delay(delay(g.pstream()))),
        gwbeq_item(cfg, "predict reader", true, predict_reader, |g| delay(g.reader())),
        gwbeq_item(cfg, "predict writer<PStream>", true, predict_writer, |g| delay(WP::sample(g))),
        gwbeq_item(cfg, "predict writer<DFirst>", true, predict_writer, |g| delay(WF::sample(g))),
        gwbeq_item(cfg, "predict writer<DLast>", true, predict_writer, |g| delay(WL::sample(g))),
        gwbeq_item(cfg, "predict const-pair<Delay>", true, predict_const_pair, |g| {
            delay((g.delay_int(), g.int()))
        }),
        gwbeq_item(cfg, "predict const-pair<PStream>", true, predict_const_pair, |g| delay((g.pstream(), g.int()))),
        gwbeq_item(cfg, "predict prod<Reader, Writer<PStream>>", true, predict_prod::<ReaderEff<i64>, WP, i64>, |g| {
            delay(RW::sample(g))
        }),
        gwbeq_item(
            cfg,
            "predict compose<Reader, Writer<DFirst>>",
            true,
            predict_compose::<ReaderEff<i64>, WF, i64>,
            |g| delay(sample_nested::<ReaderEff<i64>, WF>(g)),
        ),
        gwbeq_item(cfg, "predict update<PStream>", true, predict_update, |g| delay(sample_update(g))),
        gwbeq_item(cfg, "predict cont<Delay>", true, predict_cont, |g| delay(cont_sample(g))),
        gwbeq_item(
            cfg,
            "predict cont (effect instance)",
            true,
            |x: Later<Observed<ContEff, i64>>| Observed::<ContEff, Later<i64>>::new(predict_cont(x.map(|o| o.0))),
            |g| delay(Observed::new(ContEff::sample(g))),
        ),
        gwbeq_item(cfg, "predict negative<Pred>", true, negative_predict, |g| delay(negative_sample(g))),
        stable_item(cfg, "Delay", Gen::delay_int),
        stable_item(cfg, "PStream", Gen::pstream),
        stable_item(cfg, "DFirst", Gen::dfirst),
        stable_item(cfg, "DLast", Gen::dlast),
        stable_item(cfg, "(Delay, PStream)", |g| (g.delay_int(), g.pstream())),
        stable_item(cfg, "Reader<Delay>", |g| {
            let w = g.below(3);
            g.reader().then(Fun::new(move |x| Delay::after(w, x)))
        }),
        gwbeq_item(
            cfg,
            "wait on Delay derived from const-pair predict",
            true,
            |x: Later<Delay<i64>>| predict_const_pair(x.map(|c| (c, ()))).0,
            |g| delay(g.delay_int()),
        ),
        gwbeq_item(
            cfg,
            "predict const-pair guessing a non-stable carrier",
            false,
            |x: Later<(i64, i64)>| (0i64, x.map(|p| p.1)),
            |g| delay((g.int(), g.int())),
        ),
        gwbeq_item(cfg, "predict maybe (constant-shape guess)", false, predict_maybe_guess, |g| {
            delay(if g.chance(0.3) { None } else { Some(g.int()) })
        }),
    ]
}

// ------------------------------------------------------------------ closure

fn closure_item<T: EvalLater, U: EvalLater, V: EvalLater>(
    cfg: &SuiteConfig,
    subject: &str,
    f: impl Fn(T) -> U,
    g: impl Fn(U) -> V,
    mut sample: impl FnMut(&mut Gen) -> T,
) -> Item {
    let mut gen = cfg.gen(subject);
    let samples: Vec<T> = (0..GWBEQ_SAMPLES).map(|_| sample(&mut gen)).collect();
    let c = check_composition_closure(subject, f, g, samples, &cfg.budgets);
    let mut r = Report::new("closure", subject);
    r.samples = c.composite.samples;
    r.budgets = cfg.budgets.clone();
    r.note_probes(c.composite.probes.iter());
    for &i in &c.closure_violations {
        r.fail(i, None, "f and g are gwbeq here but g . f is not");
    }
    for &i in &c.two_of_three_violations {
        if !c.closure_violations.contains(&i) {
            r.fail(i, None, "exactly two of f, g, g . f are gwbeq here");
        }
    }
    let note = format!(
        "failing samples: f {}, g {}, g.f {}",
        distinct(&c.f),
        distinct(&c.g),
        distinct(&c.composite)
    );
    Item::from_report(Group::Closure, r, true).with_note(note)
}

fn distinct(r: &Report) -> usize {
    let mut xs: Vec<usize> = r.failures.iter().map(|f| f.sample_index).collect();
    xs.dedup();
    xs.len()
}

fn closure_group(cfg: &SuiteConfig) -> Vec<Item> {
    vec![
        closure_item(cfg, "delay then predict reader", delay, predict_reader, |g| g.reader()),
        closure_item(cfg, "delay then predict writer<PStream>", delay, predict_writer, |g| {
            WriterEff::<PStream<i64>>::sample(g)
        }),
        closure_item(cfg, "predict update then run at 0", predict_update, |u: Update<PStream<i64>, i64, Later<i64>>| u.run(0), |g| {
            delay(sample_update(g))
        }),
        closure_item(cfg, "constant 0 then identity", |_: i64| 0i64, |x: i64| x, Gen::int),
        closure_item(cfg, "maybe guess then identity", predict_maybe_guess, |x: Option<Later<i64>>| x, |g| {
            delay(if g.chance(0.3) { None } else { Some(g.int()) })
        }),
    ]
}

// --------------------------------------------------------------- invariance

/// A log whose head is un-delayed; padding only delays the tail, so every
/// padded variant is prompt as well.
#[derive(Clone, Debug)]
struct PromptLog(PStream<i64>);

impl EvalLater for PromptLog {
    fn leval(&self, m: &mut Meter) -> Obs {
        self.0.leval(m)
    }
}

impl Pad for PromptLog {
    fn pad(&self, j: usize) -> Self {
        match &self.0 {
            PStream::Cons(x, rest) => PromptLog(PStream::Cons(*x, Rc::new(rest.pad(j)))),
            p => PromptLog(p.clone()),
        }
    }
}

const PADS: [usize; 3] = [1, 2, 3];

fn invariance_item<T: EvalLater + Pad, U: EvalLater>(
    cfg: &SuiteConfig,
    subject: &str,
    expect_pass: bool,
    f: impl Fn(T) -> U,
    mut sample: impl FnMut(&mut Gen) -> T,
) -> Item {
    let mut g = cfg.gen(subject);
    let samples: Vec<T> = (0..INVARIANCE_SAMPLES).map(|_| sample(&mut g)).collect();
    let r = check_bisim_invariance(subject, f, samples, &PADS, cfg.widest());
    Item::from_report(Group::Invariance, r, expect_pass)
}

fn delayed_reader(g: &mut Gen) -> Fun<i64, Delay<i64>> {
    let w = g.below(3);
    g.reader().then(Fun::new(move |x| Delay::after(w, x)))
}

fn invariance_group(cfg: &SuiteConfig) -> Vec<Item> {
    type WP = WriterEff<PStream<i64>>;
    type WF = WriterEff<DFirst<i64>>;
    type RW = ProdEff<ReaderEff<i64>, WP>;
    vec![
        invariance_item(cfg, "is-now on Delay", false, |d: Delay<i64>| matches!(d, Delay::Now(_)), Gen::delay_int),
        invariance_item(cfg, "apply_action_head on PWait-headed inputs", false, |p: PStream<i64>| {
            apply_action_head(&p, 0)
        }, Gen::pstream),
        invariance_item(cfg, "apply_action_head on prompt inputs", true, |p: PromptLog| apply_action_head(&p.0, 0), |g| {
            PromptLog(g.prompt_pstream())
        }),
        invariance_item(cfg, "map(+1) on Delay", true, |d: Delay<i64>| d.map(|x| x + 1), Gen::delay_int),
        invariance_item(cfg, "map(+1) on streams of Delay", true, |s: Stream<Delay<i64>>| s.map(|d| d.map(|x| x + 1)), |g| {
            g.stream(5, Gen::delay_int)
        }),
        invariance_item(cfg, "constant on Delay", true, |_: Delay<i64>| 7i64, Gen::delay_int),
        invariance_item(cfg, "constant on PStream", true, |_: PStream<i64>| PStream::from_slice(&[1i64]), Gen::pstream),
        invariance_item(cfg, "predict later", true, predict_later, |g| delay(delay(g.delay_int()))),
        invariance_item(cfg, "predict reader", true, predict_reader, |g| delay(delayed_reader(g))),
        invariance_item(cfg, "predict writer<PStream>", true, predict_writer, |g| {
            delay(Writer::new(g.delay_int(), g.pstream()))
        }),
        invariance_item(cfg, "predict writer<DFirst>", true, predict_writer, |g| {
            delay(Writer::new(g.delay_int(), g.dfirst()))
        }),
        invariance_item(cfg, "predict writer<DLast>", true, predict_writer, |g| {
            delay(Writer::new(g.delay_int(), g.dlast()))
        }),
        invariance_item(cfg, "predict const-pair", true, predict_const_pair, |g| delay((g.delay_int(), g.delay_int()))),
        invariance_item(cfg, "predict prod<Reader, Writer<PStream>>", true, predict_prod::<ReaderEff<i64>, WP, i64>, |g| {
            delay(RW::sample(g))
        }),
        invariance_item(
            cfg,
            "predict compose<Reader, Writer<DFirst>>",
            true,
            predict_compose::<ReaderEff<i64>, WF, i64>,
            |g| delay(sample_nested::<ReaderEff<i64>, WF>(g)),
        ),
        invariance_item(cfg, "predict update<PStream>", true, predict_update, |g| delay(sample_update(g))),
        invariance_item(cfg, "predict cont<Delay>", true, predict_cont, |g| delay(cont_sample(g))),
        invariance_item(cfg, "predict negative<Pred>", true, negative_predict, |g| delay(negative_sample(g))),
    ]
}

// ------------------------------------------------------------------- monoid

/// `lhs(s)` and `rhs(s)` must be bisimilar for every sample.
fn equation<S, X: EvalLater>(
    subject: &str,
    check: &str,
    samples: &[S],
    budgets: &[ObsBudget],
    lhs: impl Fn(&S) -> X,
    rhs: impl Fn(&S) -> X,
) -> Report {
    let mut r = Report::new(check, subject);
    r.budgets = budgets.to_vec();
    for (i, s) in samples.iter().enumerate() {
        r.samples += 1;
        let (l, rr) = (lhs(s), rhs(s));
        for &b in budgets {
            let c = compare(&l, &rr, b, &id);
            r.note_probes(c.probes.iter());
            if !c.equal() {
                r.mismatch(i, b, c.left, c.right);
            }
        }
    }
    r
}

fn monoid_laws<M: Monoid + EvalLater>(cfg: &SuiteConfig, name: &str, mut sample: impl FnMut(&mut Gen) -> M) -> Vec<Item> {
    let mut g = cfg.gen(name);
    let xs: Vec<(M, M, M)> = (0..MONOID_SAMPLES).map(|_| (sample(&mut g), sample(&mut g), sample(&mut g))).collect();
    let b = &cfg.budgets;
    let item = |r| Item::from_report(Group::Monoid, r, true);
    vec![
        item(equation(name, "left identity", &xs, b, |t| M::empty().append(&t.0), |t| t.0.clone())),
        item(equation(name, "right identity", &xs, b, |t| t.0.append(&M::empty()), |t| t.0.clone())),
        item(equation(
            name,
            "associativity",
            &xs,
            b,
            |(x, y, z)| x.append(y).append(z),
            |(x, y, z)| x.append(&y.append(z)),
        )),
    ]
}

/// One deterministic expectation about an observation.
fn witness(check: &str, subject: &str, budget: ObsBudget, got: Obs, want: Obs, extra: Option<String>) -> Report {
    let mut r = Report::new(check, subject);
    r.samples = 1;
    r.budgets = vec![budget];
    if got != want {
        r.mismatch(0, budget, want, got);
    } else if let Some(e) = extra {
        r.fail(0, Some(budget), e);
    }
    r
}

pub const CHAIN_PROMPT_FUEL: u64 = 3;
pub const CHAIN_EXHAUST_FUELS: [u64; 4] = [10, 100, 1000, 10_000];

fn chain_items<M: EvalLater>(subject_ok: &str, ok: &M, subject_bad: &str, bad: &M, want: Obs) -> Vec<Item> {
    let b = ObsBudget::new(1, CHAIN_PROMPT_FUEL);
    let (o, used) = observe_counted(ok, b);
    let over = (used > CHAIN_PROMPT_FUEL).then(|| format!("used {used} fuel"));
    let subject = format!("{subject_ok} within fuel {CHAIN_PROMPT_FUEL}");
    let mut items = vec![Item::from_report(Group::Monoid, witness("chain", &subject, b, o, want, over), true)];
    for fuel in CHAIN_EXHAUST_FUELS {
        let b = ObsBudget::new(1, fuel);
        let r = witness("chain", &format!("{subject_bad} at fuel {fuel}"), b, observe(bad, b), Obs::Exhausted, None);
        items.push(Item::from_report(Group::Monoid, r, true));
    }
    items
}

fn monoid_group(cfg: &SuiteConfig) -> Vec<Item> {
    let mut items = Vec::new();
    items.extend(monoid_laws(cfg, "DFirst", Gen::dfirst));
    items.extend(monoid_laws(cfg, "DLast", Gen::dlast));
    items.extend(monoid_laws(cfg, "PStream", Gen::pstream));
    items.extend(chain_items(
        "DFirst right-nested x <> (x <> ...)",
        &dfirst_chain_right(DFirst::just(1i64)),
        "DFirst left-nested (... <> x) <> x",
        &dfirst_chain_left(DFirst::just(1i64)),
        Obs::just(Obs::Int(1)),
    ));
    items.extend(chain_items(
        "DLast left-nested (... <> x) <> x",
        &dlast_chain_left(DLast::just(1i64)),
        "DLast right-nested x <> (x <> ...)",
        &dlast_chain_right(DLast::just(1i64)),
        Obs::just(Obs::Int(1)),
    ));

    // Action laws for the head action. The head of `p <> q` is the head of
    // `p` when there is one, so the action composes with `p` outermost.
    let b = &cfg.budgets;
    let act = |p: &PStream<i64>, s: i64| apply_action_head(p, s);
    let mut g = cfg.gen("action");
    let prompt: Vec<(PStream<i64>, PStream<i64>, i64)> =
        (0..MONOID_SAMPLES).map(|_| (g.prompt_pstream(), g.prompt_pstream(), g.int())).collect();
    let waity: Vec<(PStream<i64>, PStream<i64>, i64)> =
        (0..MONOID_SAMPLES).map(|_| (g.pstream(), g.pstream(), g.int())).collect();
    let item = |r, expect| Item::from_report(Group::Monoid, r, expect);
    items.push(item(
        equation("apply_action_head, Wait-free", "action identity", &prompt, b, |t| act(&PStream::empty(), t.2), |t| t.2),
        true,
    ));
    items.push(item(
        equation(
            "apply_action_head, Wait-free",
            "action: act(p <> q) = act(p) . act(q)",
            &prompt,
            b,
            |(p, q, s)| act(&p.append(q), *s),
            |(p, q, s)| act(p, act(q, *s)),
        ),
        true,
    ));
    items.push(item(
        equation(
            "apply_action_head, Wait-free",
            "action: act(p <> q) = act(q) . act(p)",
            &prompt,
            b,
            |(p, q, s)| act(&p.append(q), *s),
            |(p, q, s)| act(q, act(p, *s)),
        ),
        false,
    ));
    items.push(item(
        equation(
            "apply_action_head, with Waits",
            "action: act(p <> q) = act(p) . act(q)",
            &waity,
            b,
            |(p, q, s)| act(&p.append(q), *s),
            |(p, q, s)| act(p, act(q, *s)),
        ),
        false,
    ));
    items
}

// --------------------------------------------------------------------- laws

type WP = WriterEff<PStream<i64>>;
type WF = WriterEff<DFirst<i64>>;

/// Budgets for the law suite: laws compare two differently staged
/// computations, so fuel is kept well clear of the amount either needs.
pub fn law_budgets() -> Vec<ObsBudget> {
    vec![ObsBudget::new(3, 100), ObsBudget::new(5, 200), ObsBudget::new(7, 400)]
}

trait Shape: ITraversable {
    /// Every effect runs front to back.
    const PROMPT: bool;
    fn sample<X: crate::later::Value>(g: &mut Gen, f: impl FnMut(&mut Gen) -> X) -> Self::T<X>;
}

impl Shape for StreamT {
    const PROMPT: bool = true;
    fn sample<X: crate::later::Value>(g: &mut Gen, f: impl FnMut(&mut Gen) -> X) -> Stream<X> {
        g.stream(6, f)
    }
}

impl Shape for ITreeT {
    const PROMPT: bool = true;
    fn sample<X: crate::later::Value>(g: &mut Gen, f: impl FnMut(&mut Gen) -> X) -> ITree<X> {
        g.itree(3, f)
    }
}

impl Shape for BistreamT {
    const PROMPT: bool = false;
    fn sample<X: crate::later::Value>(g: &mut Gen, f: impl FnMut(&mut Gen) -> X) -> Bistream<X> {
        g.bistream(4, f)
    }
}

fn samples_of<T: Shape, X: crate::later::Value>(cfg: &SuiteConfig, label: &str, f: impl FnMut(&mut Gen) -> X + Clone) -> Vec<T::T<X>> {
    let mut g = cfg.gen(&format!("{} {}", T::name(), label));
    (0..LAW_SAMPLES).map(|_| T::sample(&mut g, f.clone())).collect()
}

fn laws_for<T: Shape>(cfg: &SuiteConfig) -> Vec<Item> {
    let b = law_budgets();
    let item = |r| Item::from_report(Group::Laws, r, true);
    type RWP = ProdEff<ReaderEff<i64>, WP>;
    // `plast` only respects `<>` when the left log is finite. Backward
    // traversals put the infinite part on the left, so naturality is
    // expected to fail there.
    let mut log_last = Item::from_report(
        Group::Laws,
        naturality_law::<T, LogLast, i64>(samples_of::<T, _>(cfg, "log last", WP::sample), &b),
        T::PROMPT,
    );
    if !T::PROMPT {
        log_last = log_last.with_note("plast(p <> q) is bottom for infinite p, while plast p <> plast q is plast q".into());
    }
    vec![
        item(identity_law::<T, i64>(samples_of::<T, _>(cfg, "identity", Gen::int), &b)),
        item(renamed(
            identity_law::<T, PStream<i64>>(samples_of::<T, _>(cfg, "identity pstream", Gen::pstream), &b),
            format!("{} of PStream", T::name()),
        )),
        item(composition_law::<T, ReaderEff<i64>, WF, i64>(
            samples_of::<T, _>(cfg, "compose reader writer", sample_nested::<ReaderEff<i64>, WF>),
            &b,
        )),
        item(composition_law::<T, WP, ReaderEff<i64>, i64>(
            samples_of::<T, _>(cfg, "compose writer reader", sample_nested::<WP, ReaderEff<i64>>),
            &b,
        )),
        item(composition_law::<T, UpdateEff<PStream<i64>, i64>, IdentityEff, i64>(
            samples_of::<T, _>(cfg, "compose update identity", sample_nested::<UpdateEff<PStream<i64>, i64>, IdentityEff>),
            &b,
        )),
        item(naturality_law::<T, LogHead, i64>(samples_of::<T, _>(cfg, "log head", WP::sample), &b)),
        log_last,
        item(naturality_law::<T, ForgetLog, i64>(samples_of::<T, _>(cfg, "forget log", WP::sample), &b)),
        item(naturality_law::<T, ReaderReindex, i64>(samples_of::<T, _>(cfg, "reindex", ReaderEff::<i64>::sample), &b)),
        item(naturality_law::<T, ProjFirst<ReaderEff<i64>, WP>, i64>(samples_of::<T, _>(cfg, "projection", RWP::sample), &b)),
    ]
}

fn renamed(mut r: Report, subject: String) -> Report {
    r.subject = subject;
    r
}

fn laws_group(cfg: &SuiteConfig) -> Vec<Item> {
    let mut items = laws_for::<StreamT>(cfg);
    items.extend(laws_for::<ITreeT>(cfg));
    items.extend(laws_for::<BistreamT>(cfg));
    items
}

// ------------------------------------------------------------------- fusion

fn fusion_item<E: SampleEffect>(cfg: &SuiteConfig) -> Item {
    let mut g = cfg.gen(&format!("fusion {}", E::name()));
    let inputs: Vec<Vec<E::F<i64>>> = (0..FUSION_SAMPLES)
        .map(|i| {
            // Every length from 0 to the maximum appears.
            let n = if i <= FUSION_MAX_LEN { i } else { g.below(FUSION_MAX_LEN + 1) };
            (0..n).map(|_| E::sample(&mut g)).collect()
        })
        .collect();
    let mut merged = Report::new("fusion", &E::name());
    for &b in &cfg.budgets {
        let r = fusion_check::<E, i64>(inputs.clone(), b);
        merged.samples = r.samples;
        merged.budgets.push(b);
        merged.note_probes(r.probes.iter());
        merged.failures.extend(r.failures);
    }
    Item::from_report(Group::Fusion, merged, true)
}

fn fusion_group(cfg: &SuiteConfig) -> Vec<Item> {
    vec![
        fusion_item::<IdentityEff>(cfg),
        fusion_item::<ReaderEff<i64>>(cfg),
        fusion_item::<WriterEff<DFirst<i64>>>(cfg),
        fusion_item::<WriterEff<DLast<i64>>>(cfg),
        fusion_item::<WriterEff<PStream<i64>>>(cfg),
        fusion_item::<UpdateEff<PStream<i64>, i64>>(cfg),
        fusion_item::<crate::effects::LaterEff>(cfg),
        fusion_item::<ProdEff<ReaderEff<i64>, WP>>(cfg),
        fusion_item::<ContEff>(cfg),
    ]
}

// ---------------------------------------------------------------- transpose

pub const TRANSPOSE_MAX_INDEX: u64 = 50;
const ENTRY_FUEL: u64 = 1000;

/// A seeded matrix entry function.
pub fn matrix(seed: u64) -> impl Fn(u64, u64) -> i64 + Clone + 'static {
    let a = (seed % 7) as i64 + 1;
    let c = (seed % 13) as i64;
    move |i, j| a * i as i64 * 100 + j as i64 * 3 + c
}

pub fn matrix_rows(m: impl Fn(u64, u64) -> i64 + Clone + 'static) -> Stream<Fun<u64, i64>> {
    Stream::unfold(0u64, move |&i| {
        let m = m.clone();
        (Fun::new(move |j| m(i, j)), i + 1)
    })
}

fn entry_obs(p: Partial<Option<i64>>) -> Obs {
    match p {
        Partial::Value(Some(x)) => Obs::Int(x),
        Partial::Value(None) => Obs::nothing(),
        Partial::Exhausted => Obs::Exhausted,
    }
}

pub fn transpose_pairs(seed: u64) -> Vec<(u64, u64)> {
    let mut g = Gen::split(seed, "transpose pairs");
    (0..TRANSPOSE_PAIRS).map(|_| (g.upto(TRANSPOSE_MAX_INDEX), g.upto(TRANSPOSE_MAX_INDEX))).collect()
}

fn transpose_group(cfg: &SuiteConfig) -> Vec<Item> {
    let m = matrix(cfg.seed);
    let rows = matrix_rows(m.clone());
    let cols = transpose_infinite(rows);
    let back = transpose_back(cols.clone());
    let again = transpose_infinite(back.clone());
    let pairs = transpose_pairs(cfg.seed);
    let budget = ObsBudget::new(0, ENTRY_FUEL);
    let mut pointwise = Report::new("transpose", "column j, row i equals M(i, j)");
    let mut round = Report::new("double transpose", "back and forth equals M(i, j)");
    for r in [&mut pointwise, &mut round] {
        r.budgets = vec![budget];
    }
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let want = Obs::Int(m(i, j));
        pointwise.samples += 1;
        let got = entry_obs(col_entry(&cols, i, j, &mut Meter::with_fuel(ENTRY_FUEL)));
        if got != want {
            pointwise.mismatch(k, budget, want.clone(), got);
        }
        round.samples += 1;
        let got = entry_obs(row_entry(&back, i, j, &mut Meter::with_fuel(ENTRY_FUEL)));
        if got != want {
            round.mismatch(k, budget, want.clone(), got);
        }
        let got = entry_obs(col_entry(&again, i, j, &mut Meter::with_fuel(ENTRY_FUEL)));
        if got != want {
            round.mismatch(k, budget, want, got);
        }
    }
    vec![Item::from_report(Group::Transpose, pointwise, true), Item::from_report(Group::Transpose, round, true)]
}

// ------------------------------------------------------------------ inverse

fn inverse_item<T>(cfg: &SuiteConfig, subject: &str, mut sample: impl FnMut(&mut Gen) -> T::Result) -> Item
where
    T: LiftLater,
    T::Result: FromObs + PartialEq,
{
    let mut g = cfg.gen(&format!("inverse {subject}"));
    let mut r = Report::new("right inverse", subject);
    for i in 0..INVERSE_SAMPLES {
        r.samples += 1;
        let x = sample(&mut g);
        let back = leval_plain(&T::llift(&x));
        if back != x {
            r.failures.push(Failure {
                sample_index: i,
                budget: None,
                reason: "leval . llift changed the value".into(),
                expected: Some(x.to_obs()),
                actual: Some(back.to_obs()),
            });
        }
    }
    Item::from_report(Group::Inverse, r, true)
}

/// Re-observes every fixture with doubled fuel at the same depth, and with
/// both doubled. Returns the two items in that order.
fn monotone_items<T: EvalLater>(
    cfg: &SuiteConfig,
    subject: &str,
    doubled_expected: bool,
    n: usize,
    mut sample: impl FnMut(&mut Gen) -> T,
) -> Vec<Item> {
    let mut g = cfg.gen(&format!("monotone {subject}"));
    let xs: Vec<T> = (0..n).map(|_| sample(&mut g)).collect();
    let more_fuel = |b: ObsBudget| ObsBudget::new(b.depth, b.fuel.saturating_mul(2));
    let run = |check: &str, enlarge: &dyn Fn(ObsBudget) -> ObsBudget| {
        let mut r = Report::new(check, subject);
        r.budgets = cfg.budgets.clone();
        for (i, x) in xs.iter().enumerate() {
            r.samples += 1;
            for &b in &cfg.budgets {
                let (small, big) = (observe(x, b), observe(x, enlarge(b)));
                if !small.approximates(&big) {
                    r.failures.push(Failure {
                        sample_index: i,
                        budget: Some(b),
                        reason: "the larger budget lost part of the observation".into(),
                        expected: Some(small),
                        actual: Some(big),
                    });
                }
            }
        }
        r
    };
    let fuel = Item::from_report(Group::Inverse, run("fuel monotone", &more_fuel), true);
    let mut both = Item::from_report(Group::Inverse, run("depth and fuel monotone", &ObsBudget::doubled), doubled_expected);
    if !doubled_expected {
        both = both.with_note("one fuel pool is shared depth-first, so deeper left subtrees starve right ones".into());
    }
    vec![fuel, both]
}

fn lifted<T: LiftLater>(r: T::Result) -> T {
    T::llift(&r)
}

fn inverse_group(cfg: &SuiteConfig) -> Vec<Item> {
    let tree = |g: &mut Gen| g.tree(4, &mut Gen::int);
    let mut items = vec![
        inverse_item::<Stream<i64>>(cfg, "lists as streams", |g| g.ints(8)),
        inverse_item::<PStream<i64>>(cfg, "lists as partial streams", |g| g.ints(8)),
        inverse_item::<Vec<Delay<i64>>>(cfg, "lists of delayed values", |g| g.ints(8)),
        inverse_item::<ITree<i64>>(cfg, "trees", tree),
        inverse_item::<(Stream<i64>, Later<i64>)>(cfg, "pairs", |g| (g.ints(6), g.int())),
        inverse_item::<Bistream<i64>>(cfg, "bistreams", |g| (g.ints(5), g.ints(5))),
        inverse_item::<i64>(cfg, "integers", Gen::int),
        inverse_item::<Later<bool>>(cfg, "booleans", |g| g.chance(0.5)),
        inverse_item::<Option<Delay<i64>>>(cfg, "options", |g| (!g.chance(0.3)).then(|| g.int())),
    ];
    let fixtures = [
        monotone_items(cfg, "lifted lists", true, INVERSE_SAMPLES, |g| lifted::<Stream<i64>>(g.ints(10))),
        monotone_items(cfg, "lifted trees", true, INVERSE_SAMPLES, |g| lifted::<ITree<i64>>(g.tree(5, &mut Gen::int))),
        monotone_items(cfg, "lifted pairs", true, INVERSE_SAMPLES, |g| lifted::<(Stream<i64>, Delay<i64>)>((g.ints(6), g.int()))),
        monotone_items(cfg, "lifted scalars", true, INVERSE_SAMPLES, |g| lifted::<Later<i64>>(g.int())),
        monotone_items(cfg, "partial streams with waits", true, INVERSE_SAMPLES, Gen::pstream),
        monotone_items(cfg, "infinite streams", true, INVERSE_SAMPLES, |g| g.infinite_stream(Gen::int)),
        monotone_items(cfg, "repeat and naturals", true, INVERSE_SAMPLES, |g| {
            if g.chance(0.5) {
                repeat_forever(g.upto(9))
            } else {
                naturals()
            }
        }),
        monotone_items(cfg, "infinite trees", false, INFINITE_TREE_SAMPLES, |g| g.infinite_itree(Gen::int)),
    ];
    items.extend(fixtures.into_iter().flatten());
    items
}
