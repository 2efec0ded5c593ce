use std::panic::{catch_unwind, AssertUnwindSafe};

use serde::Serialize;

use super::{EvalLater, Meter, Obs, ObsBudget};
use crate::data::{Delay, PStream, Stream};
use crate::later::{delay, Fun, Later, Value};

/// One failing sample.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub sample_index: usize,
    pub budget: Option<ObsBudget>,
    pub reason: String,
    pub expected: Option<Obs>,
    pub actual: Option<Obs>,
}

/// Outcome of a sample-based check. An empty failure list is a pass.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub subject: String,
    pub samples: usize,
    pub budgets: Vec<ObsBudget>,
    pub probes: Vec<String>,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(check: &str, subject: &str) -> Self {
        Report {
            check: check.into(),
            subject: subject.into(),
            samples: 0,
            budgets: Vec::new(),
            probes: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, sample_index: usize, budget: Option<ObsBudget>, reason: impl Into<String>) {
        self.failures.push(Failure { sample_index, budget, reason: reason.into(), expected: None, actual: None });
    }

    pub fn mismatch(&mut self, sample_index: usize, budget: ObsBudget, expected: Obs, actual: Obs) {
        self.failures.push(Failure {
            sample_index,
            budget: Some(budget),
            reason: "observations differ".into(),
            expected: Some(expected),
            actual: Some(actual),
        });
    }

    pub fn note_probes<'a>(&mut self, probes: impl Iterator<Item = &'a String>) {
        for p in probes {
            if !self.probes.contains(p) {
                self.probes.push(p.clone());
            }
        }
    }

    /// First failure, for witness reporting.
    pub fn witness(&self) -> Option<&Failure> {
        self.failures.first()
    }

    pub fn summary(&self) -> String {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        format!(
            "{} {} [{}]: {} samples x {} budgets, {} failures",
            verdict,
            self.check,
            self.subject,
            self.samples,
            self.budgets.len(),
            self.failures.len()
        )
    }
}

/// Both sides of one comparison.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub left: Obs,
    pub right: Obs,
    pub probes: Vec<String>,
}

impl Comparison {
    pub fn equal(&self) -> bool {
        self.left == self.right
    }
}

/// Observes `x` and `y` with separate meters at the same budget; `iso` is
/// applied to the left observation.
pub fn compare<T: EvalLater, U: EvalLater>(x: &T, y: &U, budget: ObsBudget, iso: &dyn Fn(Obs) -> Obs) -> Comparison {
    let mut mx = Meter::new(budget);
    let left = iso(x.leval(&mut mx));
    let mut my = Meter::new(budget);
    let right = y.leval(&mut my);
    let probes = mx.probes().chain(my.probes()).cloned().collect();
    Comparison { left, right, probes }
}

pub fn bisimilar<T: EvalLater, U: EvalLater>(x: &T, y: &U, budget: ObsBudget, iso: &dyn Fn(Obs) -> Obs) -> bool {
    compare(x, y, budget, iso).equal()
}

fn panic_message(e: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = e.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = e.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".into()
    }
}

fn guarded<R>(f: impl FnOnce() -> R) -> Result<R, String> {
    catch_unwind(AssertUnwindSafe(f)).map_err(panic_message)
}

/// Checks that `f` sends every sample to an evaluated-bisimilar value.
///
/// Generator errors and panics during application or observation are
/// recorded as failures rather than propagated.
pub fn check_gwbeq<T, U>(
    subject: &str,
    f: impl Fn(T) -> U,
    samples: impl IntoIterator<Item = Result<T, String>>,
    budgets: &[ObsBudget],
    iso: &dyn Fn(Obs) -> Obs,
) -> Report
where
    T: EvalLater,
    U: EvalLater,
{
    let mut report = Report::new("gwbeq", subject);
    report.budgets = budgets.to_vec();
    for (i, sample) in samples.into_iter().enumerate() {
        report.samples += 1;
        let x = match sample {
            Ok(x) => x,
            Err(e) => {
                report.fail(i, None, format!("generator: {e}"));
                continue;
            }
        };
        let fx = match guarded(|| f(x.clone())) {
            Ok(y) => y,
            Err(e) => {
                report.fail(i, None, format!("application panicked: {e}"));
                continue;
            }
        };
        for &b in budgets {
            match guarded(|| compare(&x, &fx, b, iso)) {
                Ok(c) => {
                    report.note_probes(c.probes.iter());
                    if !c.equal() {
                        report.mismatch(i, b, c.left, c.right);
                    }
                }
                Err(e) => report.fail(i, Some(b), format!("observation panicked: {e}")),
            }
        }
    }
    report
}

/// Reports for `f`, `g` and `g ∘ f` over the same samples, and the
/// sample-level consistency of the three verdicts.
#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub f: Report,
    pub g: Report,
    pub composite: Report,
    /// Samples where `f` and `g` pass but `g ∘ f` does not.
    pub closure_violations: Vec<usize>,
    /// Samples where exactly two of the three pass.
    pub two_of_three_violations: Vec<usize>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.closure_violations.is_empty() && self.two_of_three_violations.is_empty()
    }
}

pub fn check_composition_closure<T, U, V>(
    subject: &str,
    f: impl Fn(T) -> U,
    g: impl Fn(U) -> V,
    samples: Vec<T>,
    budgets: &[ObsBudget],
) -> ClosureReport
where
    T: EvalLater,
    U: EvalLater,
    V: EvalLater,
{
    let id = |o: Obs| o;
    let images: Vec<U> = samples.iter().cloned().map(&f).collect();
    let rf = check_gwbeq(&format!("{subject}: f"), &f, samples.iter().cloned().map(Ok), budgets, &id);
    let rg = check_gwbeq(&format!("{subject}: g"), &g, images.into_iter().map(Ok), budgets, &id);
    let rc = check_gwbeq(&format!("{subject}: g.f"), |x| g(f(x)), samples.iter().cloned().map(Ok), budgets, &id);
    let failed = |r: &Report, i: usize| r.failures.iter().any(|x| x.sample_index == i);
    let mut closure = Vec::new();
    let mut two = Vec::new();
    for i in 0..samples.len() {
        let (a, b, c) = (!failed(&rf, i), !failed(&rg, i), !failed(&rc, i));
        if a && b && !c {
            closure.push(i);
        }
        if [a, b, c].iter().filter(|&&p| p).count() == 2 {
            two.push(i);
        }
    }
    ClosureReport { f: rf, g: rg, composite: rc, closure_violations: closure, two_of_three_violations: two }
}

/// Injection of extra delay: `pad(j)` is bisimilar to the original but
/// carries `j` more `Later`/`Wait` layers wherever the type admits them.
pub trait Pad: Value {
    fn pad(&self, j: usize) -> Self;
}

impl<A: Pad, B: Pad> Pad for (A, B) {
    fn pad(&self, j: usize) -> Self {
        (self.0.pad(j), self.1.pad(j))
    }
}

impl<A: Pad> Pad for Option<A> {
    fn pad(&self, j: usize) -> Self {
        self.as_ref().map(|a| a.pad(j))
    }
}

impl<A: Pad> Pad for Later<A> {
    fn pad(&self, j: usize) -> Self {
        self.map(move |a| a.pad(j))
    }
}

impl<A: Value> Pad for Delay<A> {
    fn pad(&self, j: usize) -> Self {
        (0..j).fold(self.clone(), |d, _| Delay::Wait(delay(d)))
    }
}

impl<A: Value> Pad for PStream<A> {
    fn pad(&self, j: usize) -> Self {
        PStream::wait_n(j, self.clone())
    }
}

impl<A: Pad> Pad for Stream<A> {
    fn pad(&self, j: usize) -> Self {
        self.clone().map(move |a| a.pad(j))
    }
}

impl<A: Value, B: Pad> Pad for Fun<A, B> {
    fn pad(&self, j: usize) -> Self {
        let f = self.clone();
        Fun::new(move |a| f.call(a).pad(j))
    }
}

/// Flags `f` wherever `f(x)` and `f(pad_j(x))` are observably different.
/// Samples whose padding is itself not bisimilar are reported too, since
/// the check would then be meaningless.
pub fn check_bisim_invariance<T, U>(
    subject: &str,
    f: impl Fn(T) -> U,
    samples: Vec<T>,
    pad_depths: &[usize],
    budget: ObsBudget,
) -> Report
where
    T: EvalLater + Pad,
    U: EvalLater,
{
    let id = |o: Obs| o;
    let mut report = Report::new("invariance", subject);
    report.budgets = vec![budget];
    for (i, x) in samples.into_iter().enumerate() {
        report.samples += 1;
        let fx = f(x.clone());
        for &j in pad_depths {
            let padded = x.pad(j);
            let pre = compare(&x, &padded, budget, &id);
            if !pre.equal() {
                report.failures.push(Failure {
                    sample_index: i,
                    budget: Some(budget),
                    reason: format!("padding by {j} changed the input observation"),
                    expected: Some(pre.left),
                    actual: Some(pre.right),
                });
                continue;
            }
            let c = compare(&fx, &f(padded), budget, &id);
            report.note_probes(c.probes.iter());
            if !c.equal() {
                report.failures.push(Failure {
                    sample_index: i,
                    budget: Some(budget),
                    reason: format!("output changed under padding by {j}"),
                    expected: Some(c.left),
                    actual: Some(c.right),
                });
            }
        }
    }
    report
}
