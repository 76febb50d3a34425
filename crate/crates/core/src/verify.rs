//! Per-point verification of a theorem and parameter sweeps over grids.
//!
//! All bounds in a [`PointReport`] are expressed in the `z` variable: bounds
//! on a squared zero are square-rooted before comparison and output.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::FamilyParams;
use crate::closed_form::{generic_surds, ClosedForms, ConstantTable, TheoremBounds, TheoremId};
use crate::error::{Error, Result};
use crate::geometry::{check_maximality, DEFAULT_ANGLES, DEFAULT_EPSILON};
use crate::rayleigh::{bound_ladder, power_sums, variable_map, BoundLadder, RayleighSums};
use crate::scalar::{parse_rational, rational_to_string, Precision, Rational, Scalar};
use crate::series::{PowerSeries, DEFAULT_ORDER};
use crate::zeros::{kernel_zero_with_order, RadiusResult};

pub const DEFAULT_LADDER_DEPTH: usize = 6;
/// Zero tolerance for sweeps; sandwich margins are `10 · tol`.
pub const DEFAULT_SWEEP_TOL: f64 = 1e-10;
const FLOAT_MATCH_TOL: f64 = 1e-12;

/// Inclusive arithmetic grid `start, start + step, ... ≤ stop`, held exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub start: Rational,
    pub stop: Rational,
    pub step: Rational,
}

impl Grid {
    /// Parses `a:b:step`; a bare number is a one-point grid.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [a] => {
                let a = parse_rational(a)?;
                Ok(Grid::single(a))
            }
            [a, b, step] => {
                let step = parse_rational(step)?;
                if !step.is_positive() {
                    return Err(Error::Usage(format!("grid step must be positive in `{s}`")));
                }
                Ok(Grid {
                    start: parse_rational(a)?,
                    stop: parse_rational(b)?,
                    step,
                })
            }
            _ => Err(Error::Usage(format!(
                "grid `{s}` is not of the form a:b:step"
            ))),
        }
    }

    pub fn single(value: Rational) -> Self {
        Grid {
            start: value.clone(),
            stop: value,
            step: Rational::from_integer(1.into()),
        }
    }

    /// `n` equally spaced interior points of `(a, b)`.
    pub fn interior(a: Rational, b: Rational, n: usize) -> Self {
        let step = (&b - &a) / Rational::from_integer((n as i64 + 1).into());
        Grid {
            start: &a + &step,
            stop: &b - &step,
            step,
        }
    }

    pub fn points(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut x = self.start.clone();
        while x <= self.stop {
            out.push(x.clone());
            x += &self.step;
        }
        out
    }
}

/// Everything a sweep needs besides the grid.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub depth: usize,
    pub tol: f64,
    pub precision: Precision,
    pub geometry: bool,
    pub n_angles: usize,
    pub epsilon: f64,
    pub constants: ConstantTable,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            depth: DEFAULT_LADDER_DEPTH,
            tol: DEFAULT_SWEEP_TOL,
            precision: Precision::Rational,
            geometry: true,
            n_angles: DEFAULT_ANGLES,
            epsilon: DEFAULT_EPSILON,
            constants: ConstantTable::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderLine {
    pub k: usize,
    pub lower_generic: f64,
    pub lower_paper: Option<f64>,
    pub upper_paper: Option<f64>,
    pub upper_generic: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Evaluated {
        zero: Option<RadiusResult>,
        lines: Vec<LadderLine>,
        checks: Vec<Check>,
    },
    Skipped {
        code: &'static str,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointReport {
    pub theorem: TheoremId,
    pub nu: Option<String>,
    pub alpha: Option<String>,
    pub mu: Option<String>,
    #[serde(flatten)]
    pub outcome: Outcome,
}

impl PointReport {
    pub fn is_skipped(&self) -> bool {
        matches!(self.outcome, Outcome::Skipped { .. })
    }

    /// True when evaluated and every line and check passed.
    pub fn pass(&self) -> bool {
        match &self.outcome {
            Outcome::Evaluated { lines, checks, .. } => {
                lines.iter().all(|l| l.pass) && checks.iter().all(|c| c.pass)
            }
            Outcome::Skipped { .. } => false,
        }
    }

    pub fn failures(&self) -> Vec<&Check> {
        match &self.outcome {
            Outcome::Evaluated { checks, .. } => checks.iter().filter(|c| !c.pass).collect(),
            Outcome::Skipped { .. } => Vec::new(),
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        match &self.outcome {
            Outcome::Evaluated { checks, .. } => checks.iter().find(|c| c.name == name),
            Outcome::Skipped { .. } => None,
        }
    }

    pub fn zero(&self) -> Option<&RadiusResult> {
        match &self.outcome {
            Outcome::Evaluated { zero, .. } => zero.as_ref(),
            Outcome::Skipped { .. } => None,
        }
    }

    pub fn lines(&self) -> &[LadderLine] {
        match &self.outcome {
            Outcome::Evaluated { lines, .. } => lines,
            Outcome::Skipped { .. } => &[],
        }
    }

    pub fn label(&self) -> String {
        let mut parts = vec![self.theorem.to_string()];
        for (name, v) in [("nu", &self.nu), ("alpha", &self.alpha), ("mu", &self.mu)] {
            if let Some(v) = v {
                parts.push(format!("{name}={v}"));
            }
        }
        parts.join(" ")
    }
}

fn skipped(theorem: TheoremId, value: &Rational, alpha: &Rational, err: &Error) -> PointReport {
    let code = match err {
        Error::Domain { .. } => "domain",
        Error::UnsupportedFamily { .. } => "unsupported",
        _ => "invalid",
    };
    let mut report = labelled(theorem, value, alpha);
    report.outcome = Outcome::Skipped {
        code,
        reason: err.to_string(),
    };
    report
}

fn labelled(theorem: TheoremId, value: &Rational, alpha: &Rational) -> PointReport {
    let uses_mu = theorem.family().uses_mu();
    PointReport {
        theorem,
        nu: (!uses_mu).then(|| rational_to_string(value)),
        alpha: theorem
            .family()
            .uses_alpha()
            .then(|| rational_to_string(alpha)),
        mu: uses_mu.then(|| rational_to_string(value)),
        outcome: Outcome::Evaluated {
            zero: None,
            lines: Vec::new(),
            checks: Vec::new(),
        },
    }
}

/// Verifies one theorem at one point.
pub fn verify_point(
    theorem: TheoremId,
    value: &Rational,
    alpha: &Rational,
    opts: &VerifyOptions,
) -> PointReport {
    let params = match theorem.params(value.clone(), alpha.clone()) {
        Ok(p) => p,
        Err(e) => return skipped(theorem, value, alpha, &e),
    };
    let mut report = labelled(theorem, value, alpha);
    report.outcome = match opts.precision {
        Precision::Rational => evaluate::<Rational>(theorem, &params, opts),
        Precision::Float => evaluate::<f64>(theorem, &params, opts),
    };
    report
}

fn scalar_eq<T: Scalar>(a: &T, b: &T) -> bool {
    if T::EXACT {
        a == b
    } else {
        let (a, b) = (a.to_f64(), b.to_f64());
        (a - b).abs() <= FLOAT_MATCH_TOL * a.abs().max(b.abs())
    }
}

fn fail(name: &'static str, detail: String) -> Check {
    Check {
        name,
        pass: false,
        detail,
    }
}

fn pass(name: &'static str) -> Check {
    Check {
        name,
        pass: true,
        detail: String::new(),
    }
}

/// The theorem and parameters whose displayed bounds apply at this point.
fn displayed_source(theorem: TheoremId, params: &FamilyParams) -> Result<(TheoremId, FamilyParams)> {
    match theorem {
        TheoremId::T4 => Ok((
            TheoremId::T2,
            TheoremId::T2.params(params.nu().clone(), Rational::zero())?,
        )),
        TheoremId::T5 => Ok((
            TheoremId::T3,
            TheoremId::T3.params(params.mu().clone(), Rational::zero())?,
        )),
        other => Ok((other, params.clone())),
    }
}

fn evaluate<T: Scalar>(theorem: TheoremId, params: &FamilyParams, opts: &VerifyOptions) -> Outcome {
    let forms = ClosedForms::new(opts.constants.clone());
    let depth = opts.depth.max(1);
    let margin = 10.0 * opts.tol;
    let mut checks = Vec::new();

    let kernel: Result<PowerSeries<T>> = params.kernel(theorem.kernel_kind(), depth + 1);
    let sums = kernel.and_then(|k| power_sums(&k, depth + 1));
    let ladder = sums
        .as_ref()
        .map_err(Clone::clone)
        .and_then(|s| bound_ladder(s).map(|l| variable_map(&l, s.parity())));
    let zero = kernel_zero_with_order(params, theorem.kernel_kind(), opts.tol, DEFAULT_ORDER);

    let (sums, ladder, zero) = match (sums, ladder, zero) {
        (Ok(s), Ok(l), Ok(z)) => (s, l, z),
        (s, l, z) => {
            let err = [s.err(), l.err(), z.err()].into_iter().flatten().next();
            let detail = err.map(|e| e.to_string()).unwrap_or_default();
            return Outcome::Evaluated {
                zero: None,
                lines: Vec::new(),
                checks: vec![fail("evaluation", detail)],
            };
        }
    };
    // Deep ladders can be tighter than `tol`; refine the bracket until it
    // separates from every entry, or precision runs out.
    let tightest = ladder
        .entries
        .iter()
        .map(|e| e.upper - e.lower)
        .fold(f64::INFINITY, f64::min);
    let encloses = |z: &RadiusResult| {
        ladder
            .entries
            .iter()
            .all(|e| e.lower < z.bracket.0 && z.bracket.1 < e.upper)
    };
    let zero = if !encloses(&zero) && tightest > 0.0 {
        let refined_tol = (0.25 * tightest).max(4.0 * f64::EPSILON * zero.value);
        kernel_zero_with_order(params, theorem.kernel_kind(), refined_tol, DEFAULT_ORDER)
            .ok()
            .filter(|z| z.width() < zero.width())
            .unwrap_or(zero)
    } else {
        zero
    };
    checks.push(if sums.satisfies_cauchy_schwarz() {
        pass("cauchy_schwarz")
    } else {
        fail("cauchy_schwarz", "S_{k-1} S_{k+1} < S_k^2".into())
    });

    // Displayed sums against the generic power sums.
    if TheoremId::WITH_BOUNDS.contains(&theorem) {
        checks.push(match forms.proof_sums::<T>(theorem, params) {
            Ok(shown) => oracle_check(&shown, &sums),
            Err(e) => fail("oracle", e.to_string()),
        });
    }

    let displayed = displayed_source(theorem, params).and_then(|(src, p)| {
        let bounds = forms.theorem_bounds::<T>(src, &p)?;
        Ok((src, p, bounds))
    });
    let (lines, displayed_bounds) = match &displayed {
        Ok((_, _, bounds)) => {
            checks.push(display_check(bounds, &sums));
            (
                ladder_lines(&ladder, Some(bounds), &zero, margin),
                Some(bounds),
            )
        }
        Err(e) => {
            checks.push(Check {
                name: "display",
                pass: true,
                detail: format!("no displayed bounds at this point: {e}"),
            });
            (ladder_lines::<T>(&ladder, None, &zero, margin), None)
        }
    };
    checks.push(sandwich_check(&lines));
    checks.push(if ladder.is_monotone() {
        pass("monotone")
    } else {
        fail("monotone", "ladder is not monotone in k".into())
    });
    // Only a ladder deeper than the displayed bounds can improve on them.
    if let Some(bounds) = displayed_bounds.filter(|b| depth > b.lowers.len().max(b.uppers.len())) {
        checks.push(tighter_check(&ladder, bounds, depth));
    }
    if theorem == TheoremId::T2 {
        checks.push(t2_from_t1_check(&forms, params));
    }
    if opts.geometry && theorem.geometry() != crate::closed_form::Geometry::None {
        checks.push(
            match check_maximality(params, zero.value, opts.epsilon, opts.n_angles) {
                Ok(m) if m.holds() => pass("geometry"),
                Ok(m) => fail(
                    "geometry",
                    format!(
                        "min Re at {:.6} = {:e}, at {:.6} = {:e}",
                        m.inside.radius,
                        m.inside.min_real_part,
                        m.outside.radius,
                        m.outside.min_real_part
                    ),
                ),
                Err(e) => fail("geometry", e.to_string()),
            },
        );
    }
    Outcome::Evaluated {
        zero: Some(zero),
        lines,
        checks,
    }
}

fn oracle_check<T: Scalar>(shown: &RayleighSums<T>, generic: &RayleighSums<T>) -> Check {
    for k in 1..=shown.len() {
        let (a, b) = (shown.get(k), generic.get(k));
        let ok = matches!((a, b), (Some(a), Some(b)) if scalar_eq(a, b));
        if !ok {
            return fail(
                "oracle",
                format!(
                    "displayed S_{k} = {:?} but power sums give {:?}",
                    a.map(Scalar::to_f64),
                    b.map(Scalar::to_f64)
                ),
            );
        }
    }
    pass("oracle")
}

fn display_check<T: Scalar>(bounds: &TheoremBounds<T>, sums: &RayleighSums<T>) -> Check {
    let (lowers, uppers) = generic_surds(sums, bounds.target);
    for (kind, shown, generic) in [
        ("lower", &bounds.lowers, &lowers),
        ("upper", &bounds.uppers, &uppers),
    ] {
        for (i, s) in shown.iter().enumerate() {
            let ok = generic
                .get(i)
                .is_some_and(|g| s.matches(g, FLOAT_MATCH_TOL));
            if !ok {
                return fail(
                    "display",
                    format!(
                        "{} {kind}_{} = {} differs from the ladder value {:?}",
                        bounds.theorem,
                        i + 1,
                        s.value(),
                        generic.get(i).map(|g| g.value())
                    ),
                );
            }
        }
    }
    pass("display")
}

/// Generic entries must strictly enclose the certified bracket of the zero;
/// displayed bounds must clear the zero by more than `margin`.
fn ladder_lines<T: Scalar>(
    ladder: &BoundLadder,
    bounds: Option<&TheoremBounds<T>>,
    zero: &RadiusResult,
    margin: f64,
) -> Vec<LadderLine> {
    let (lp, up) = match bounds {
        Some(b) => (b.lower_values_in_z(), b.upper_values_in_z()),
        None => (Vec::new(), Vec::new()),
    };
    let (lo, hi) = zero.bracket;
    ladder
        .entries
        .iter()
        .map(|e| {
            let lower_paper = lp.get(e.k - 1).copied();
            let upper_paper = up.get(e.k - 1).copied();
            let pass = e.lower < lo
                && hi < e.upper
                && lower_paper.is_none_or(|l| l + margin < zero.value)
                && upper_paper.is_none_or(|u| zero.value + margin < u);
            LadderLine {
                k: e.k,
                lower_generic: e.lower,
                lower_paper,
                upper_paper,
                upper_generic: e.upper,
                pass,
            }
        })
        .collect()
}

fn sandwich_check(lines: &[LadderLine]) -> Check {
    match lines.iter().find(|l| !l.pass) {
        None => pass("sandwich"),
        Some(l) => fail(
            "sandwich",
            format!("bounds at k = {} do not enclose the zero", l.k),
        ),
    }
}

fn tighter_check<T: Scalar>(
    ladder: &BoundLadder,
    bounds: &TheoremBounds<T>,
    depth: usize,
) -> Check {
    let Some(last) = ladder.entry(depth) else {
        return fail("tighter", format!("ladder has no entry k = {depth}"));
    };
    let best_lower = bounds.best_lower_in_z();
    let best_upper = bounds.best_upper_in_z();
    if last.lower > best_lower && last.upper < best_upper {
        pass("tighter")
    } else {
        fail(
            "tighter",
            format!(
                "k = {depth} bounds ({}, {}) not inside displayed ({best_lower}, {best_upper})",
                last.lower, last.upper
            ),
        )
    }
}

fn t2_from_t1_check(forms: &ClosedForms, params: &FamilyParams) -> Check {
    let t1 = TheoremId::T1
        .params(params.nu().clone(), Rational::zero())
        .and_then(|p| forms.theorem_bounds::<Rational>(TheoremId::T1, &p));
    let t2 = forms.theorem_bounds::<Rational>(TheoremId::T2, params);
    match (t1, t2) {
        (Ok(a), Ok(b)) => {
            let same = a.lowers.len() == b.lowers.len()
                && a.uppers.len() == b.uppers.len()
                && a.lowers
                    .iter()
                    .zip(&b.lowers)
                    .all(|(x, y)| x.matches(y, 0.0))
                && a.uppers
                    .iter()
                    .zip(&b.uppers)
                    .all(|(x, y)| x.matches(y, 0.0));
            if same {
                pass("t2_equals_t1")
            } else {
                fail("t2_equals_t1", "T2 bounds differ from T1 at α = 0".into())
            }
        }
        (Err(e), _) | (_, Err(e)) => fail("t2_equals_t1", e.to_string()),
    }
}

/// Grid points for one theorem in a sweep.
#[derive(Debug, Clone)]
pub struct TheoremSweep {
    pub theorem: TheoremId,
    pub values: Vec<Rational>,
    /// α values (T1 only; a single 0 otherwise).
    pub alphas: Vec<Rational>,
}

impl TheoremSweep {
    pub fn new(theorem: TheoremId, values: Vec<Rational>, alphas: Vec<Rational>) -> Self {
        let alphas = if theorem.family().uses_alpha() && !alphas.is_empty() {
            alphas
        } else {
            vec![Rational::zero()]
        };
        TheoremSweep {
            theorem,
            values,
            alphas,
        }
    }

    /// Coarse default grid inside the theorem's hypothesis.
    pub fn coarse(theorem: TheoremId) -> Self {
        let q = |n: i64, d: i64| Rational::new(n.into(), d.into());
        let values = match theorem {
            TheoremId::T1 => vec![q(-1, 4), q(0, 1), q(1, 4)],
            TheoremId::T2 => vec![q(-2, 5), q(-1, 5), q(0, 1), q(1, 5), q(2, 5)],
            TheoremId::T3 | TheoremId::T5 => vec![q(-2, 5), q(-1, 5), q(1, 5), q(1, 2), q(4, 5)],
            TheoremId::T4 | TheoremId::T8 | TheoremId::T9 => {
                vec![q(-1, 2), q(-1, 4), q(0, 1), q(1, 4), q(1, 2)]
            }
            TheoremId::T6 | TheoremId::T7 => vec![q(-1, 2), q(0, 1), q(1, 2), q(1, 1), q(3, 1)],
        };
        let alphas = if theorem == TheoremId::T1 {
            vec![q(-1, 2), q(0, 1), q(1, 1)]
        } else {
            vec![q(0, 1)]
        };
        TheoremSweep::new(theorem, values, alphas)
    }

    pub fn points(&self) -> Vec<(Rational, Rational)> {
        let mut out = Vec::new();
        for v in &self.values {
            for a in &self.alphas {
                out.push((v.clone(), a.clone()));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSummary {
    pub rows: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// Verifies every point, in parallel, returning reports in grid order.
pub fn run_sweep(sweeps: &[TheoremSweep], opts: &VerifyOptions) -> Vec<PointReport> {
    let jobs: Vec<(TheoremId, Rational, Rational)> = sweeps
        .iter()
        .flat_map(|s| s.points().into_iter().map(move |(v, a)| (s.theorem, v, a)))
        .collect();
    jobs.par_iter()
        .map(|(t, v, a)| verify_point(*t, v, a, opts))
        .collect()
}

pub fn summarize(reports: &[PointReport]) -> SweepSummary {
    let skipped = reports.iter().filter(|r| r.is_skipped()).count();
    let passed = reports.iter().filter(|r| r.pass()).count();
    SweepSummary {
        rows: reports.len(),
        passed,
        failed: reports.len() - passed - skipped,
        skipped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn grid_parsing_is_exact() {
        let g = Grid::parse("0:1/2:1/10").unwrap();
        assert_eq!(g.points().len(), 6);
        assert_eq!(g.points()[5], q(1, 2));
        let g = Grid::parse("0:0.3:0.1").unwrap();
        assert_eq!(g.points(), vec![q(0, 1), q(1, 10), q(2, 10), q(3, 10)]);
        assert!(Grid::parse("1:0:1").unwrap().points().is_empty());
        assert!(Grid::parse("0:1:0").is_err());
        assert!(Grid::parse("0:1").is_err());
        assert_eq!(Grid::parse("1/3").unwrap().points(), vec![q(1, 3)]);
        let g = Grid::interior(q(-1, 2), q(1, 2), 10);
        let pts = g.points();
        assert_eq!(pts.len(), 10);
        assert!(pts.iter().all(|p| p.abs() < q(1, 2)));
    }

    #[test]
    fn bessel_g_row_passes() {
        let r = verify_point(TheoremId::T6, &q(0, 1), &q(0, 1), &VerifyOptions::default());
        assert!(r.pass(), "{:?}", r.failures());
        let first = &r.lines()[0];
        assert_eq!(first.lower_paper, Some(2.0 / 3.0));
        assert!((first.upper_paper.unwrap() - 0.72494).abs() < 1e-5);
    }

    #[test]
    fn invalid_points_are_skipped_with_reason() {
        let r = verify_point(TheoremId::T3, &q(0, 1), &q(0, 1), &VerifyOptions::default());
        match &r.outcome {
            Outcome::Skipped { code, reason } => {
                assert_eq!(*code, "domain");
                assert!(reason.contains("μ ≠ 0 required"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn corrupted_constant_fails() {
        let opts = VerifyOptions {
            constants: ConstantTable::default()
                .perturbed("kappa1", 8, 134)
                .unwrap(),
            geometry: false,
            ..VerifyOptions::default()
        };
        let r = verify_point(TheoremId::T1, &q(0, 1), &q(0, 1), &opts);
        assert!(!r.pass());
        assert!(!r.check("oracle").unwrap().pass);
    }

    #[test]
    fn float_mode_agrees() {
        let opts = VerifyOptions {
            precision: Precision::Float,
            ..VerifyOptions::default()
        };
        for t in TheoremId::ALL {
            let s = TheoremSweep::coarse(t);
            let (v, a) = s.points()[1].clone();
            let r = verify_point(t, &v, &a, &opts);
            assert!(r.pass(), "{}: {:?}", r.label(), r.failures());
        }
    }
}
