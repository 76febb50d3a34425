//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{grid20, q};
use radii::catalog::bessel_j_series;
use radii::closed_form::{proof_sums, theorem_bounds};
use radii::geometry::check_maximality;
use radii::rayleigh::z_ladder;
use radii::series::DEFAULT_ORDER;
use radii::zeros::{kernel_zero_with_order, smallest_positive_zero};
use radii::{power_sums, ConstantTable, Parity, PowerSeries, Rational, TheoremId};

const SANDWICH_TOL: f64 = 1e-10;
const J0_ZERO: f64 = 2.404825557695773;

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn from_failures(failures: Vec<String>, ok: impl FnOnce() -> String) -> Self {
        match failures.first() {
            None => Verdict {
                pass: true,
                detail: ok(),
            },
            Some(first) => Verdict {
                pass: false,
                detail: format!("{} failure(s), first: {first}", failures.len()),
            },
        }
    }
}

fn timed(budget: Option<Duration>, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let mut v = f();
    let elapsed = start.elapsed();
    v.detail = format!("{} [{:.2?}]", v.detail, elapsed);
    if let Some(budget) = budget {
        if elapsed > budget {
            v.pass = false;
            v.detail = format!("{}; over the {budget:?} budget", v.detail);
        }
    }
    v
}

const ORACLE_THEOREMS: [TheoremId; 6] = [
    TheoremId::T1,
    TheoremId::T3,
    TheoremId::T6,
    TheoremId::T7,
    TheoremId::T8,
    TheoremId::T9,
];

fn oracle_equivalence() -> Verdict {
    let mut failures = Vec::new();
    let mut compared = 0;
    for t in ORACLE_THEOREMS {
        for (v, a) in grid20(t) {
            let p = t.params(v.clone(), a.clone()).unwrap();
            let shown = proof_sums::<Rational>(t, &p).unwrap();
            let n = shown.len();
            let kernel = p.kernel::<Rational>(t.kernel_kind(), n + 1).unwrap();
            let generic = power_sums(&kernel, n).unwrap();
            compared += n;
            if shown.sums() != &generic.sums()[..n] {
                failures.push(format!("{t} at ({v}, {a})"));
            }
        }
    }
    Verdict::from_failures(failures, || format!("{compared} sums equal exactly"))
}

fn sandwich() -> Verdict {
    let mut failures = Vec::new();
    let mut worst = f64::INFINITY;
    for t in ORACLE_THEOREMS {
        for (v, a) in grid20(t) {
            let p = t.params(v.clone(), a.clone()).unwrap();
            let bounds = theorem_bounds::<Rational>(t, &p).unwrap();
            let zero = kernel_zero_with_order(&p, t.kernel_kind(), SANDWICH_TOL, DEFAULT_ORDER);
            let zero = match zero {
                Ok(z) => z,
                Err(e) => {
                    failures.push(format!("{t} at ({v}, {a}): {e}"));
                    continue;
                }
            };
            let (lo, hi) = zero.bracket;
            for l in bounds.lower_values_in_z() {
                worst = worst.min(lo - l);
                if l.is_nan() || lo - l <= 10.0 * SANDWICH_TOL {
                    failures.push(format!(
                        "{t} at ({v}, {a}): lower {l} vs zero in [{lo}, {hi}]"
                    ));
                }
            }
            for u in bounds.upper_values_in_z() {
                worst = worst.min(u - hi);
                if u.is_nan() || u - hi <= 10.0 * SANDWICH_TOL {
                    failures.push(format!(
                        "{t} at ({v}, {a}): upper {u} vs zero in [{lo}, {hi}]"
                    ));
                }
            }
        }
    }
    Verdict::from_failures(failures, || {
        format!("120 points, smallest margin {worst:.3e}")
    })
}

/// Theorem whose displayed bounds apply to the kernel of `t`.
fn bounds_theorem(t: TheoremId) -> TheoremId {
    t.bounds_source().unwrap_or(t)
}

fn monotone_and_tighter() -> Verdict {
    let mut failures = Vec::new();
    let mut points = 0;
    let mut tightened = 0;
    for t in TheoremId::ALL {
        for (v, a) in grid20(t) {
            points += 1;
            let p = t.params(v.clone(), a.clone()).unwrap();
            let kernel = p.kernel::<Rational>(t.kernel_kind(), 8).unwrap();
            let ladder = z_ladder(&kernel, 6).unwrap();
            if !ladder.is_monotone() {
                failures.push(format!("{t} at ({v}, {a}): ladder not monotone"));
            }
            // T2 excludes |ν| = 1/2, so the endpoints of the T4 grid have no displayed bounds.
            let src = bounds_theorem(t);
            let Ok(src_params) = src.params(v.clone(), a.clone()) else {
                continue;
            };
            tightened += 1;
            let shown = theorem_bounds::<Rational>(src, &src_params).unwrap();
            let e6 = ladder.entry(6).unwrap();
            let (bl, bu) = (shown.best_lower_in_z(), shown.best_upper_in_z());
            if !(e6.lower > bl && e6.upper < bu) {
                failures.push(format!(
                    "{t} at ({v}, {a}): k = 6 ({}, {}) not inside ({bl}, {bu})",
                    e6.lower, e6.upper
                ));
            }
        }
    }
    Verdict::from_failures(failures, || {
        format!("{points} ladders monotone, {tightened} tighter than displayed at K = 6")
    })
}

fn t2_is_t1_at_zero_alpha() -> Verdict {
    let mut failures = Vec::new();
    for (nu, _) in grid20(TheoremId::T2).into_iter().step_by(2) {
        let t1 = theorem_bounds::<Rational>(
            TheoremId::T1,
            &TheoremId::T1.params(nu.clone(), q(0, 1)).unwrap(),
        )
        .unwrap();
        let t2 = theorem_bounds::<Rational>(
            TheoremId::T2,
            &TheoremId::T2.params(nu.clone(), q(0, 1)).unwrap(),
        )
        .unwrap();
        let same = |a: &[radii::Surd<Rational>], b: &[radii::Surd<Rational>]| {
            a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.matches(y, 0.0))
        };
        if !(same(&t1.lowers, &t2.lowers) && same(&t1.uppers, &t2.uppers)) {
            failures.push(format!("ν = {nu}"));
        }
    }
    Verdict::from_failures(failures, || "10 points, all bounds exactly equal".into())
}

fn geometry() -> Verdict {
    let mut failures = Vec::new();
    let mut points = 0;
    for t in &TheoremId::ALL[3..] {
        for (v, a) in grid20(*t) {
            points += 1;
            let p = t.params(v.clone(), a.clone()).unwrap();
            let outcome = kernel_zero_with_order(&p, t.kernel_kind(), 1e-12, DEFAULT_ORDER)
                .and_then(|z| check_maximality(&p, z.value, 0.05, 512));
            match outcome {
                Ok(m) if m.holds() => {}
                Ok(m) => failures.push(format!(
                    "{t} at {v}: min Re {} inside, {} outside",
                    m.inside.min_real_part, m.outside.min_real_part
                )),
                Err(e) => failures.push(format!("{t} at {v}: {e}")),
            }
        }
    }
    Verdict::from_failures(failures, || format!("{points} radii maximal at 0.95/1.05"))
}

fn newton_identities() -> Verdict {
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let mut failures = Vec::new();
    for trial in 0..100 {
        let degree = rng.random_range(1..=6);
        let roots: Vec<Rational> = (0..degree)
            .map(|_| {
                let d = rng.random_range(1..=12i64);
                let n = rng.random_range((d + 1) / 2..=10 * d);
                q(n, d)
            })
            .collect();
        // prod (1 - w / r) = sum (-1)^n e_n(1/r) w^n
        let mut coeffs = vec![Rational::one()];
        for r in &roots {
            let inv = r.recip();
            let mut next = coeffs.clone();
            next.push(Rational::zero());
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] -= c * &inv;
            }
            coeffs = next;
        }
        let s = PowerSeries::polynomial(coeffs, Parity::General);
        let depth = 8;
        let sums = match power_sums(&s, depth) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("trial {trial}: {e}"));
                continue;
            }
        };
        for k in 1..=depth {
            let direct: Rational = roots
                .iter()
                .map(|r| radii::scalar::rational_powi(&r.recip(), k as i32))
                .sum();
            if sums.get(k) != Some(&direct) {
                failures.push(format!("trial {trial}, k = {k}, roots {roots:?}"));
            }
        }
    }
    Verdict::from_failures(failures, || "100 polynomials, S_1..S_8 exact".into())
}

/// `J_0` normalized series in `w = x²` evaluated exactly; the tail of the
/// alternating series after `n ≥ 1` is bounded by its first term for `x ≤ 3`.
fn j0_sign(x: &Rational) -> Option<i8> {
    let w = x * x / Rational::from_integer(4.into());
    let mut term = Rational::one();
    let mut sum = Rational::zero();
    for n in 1..=40i64 {
        sum += &term;
        term = -&term * &w / Rational::from_integer((n * n).into());
    }
    if sum.abs() > term.abs() {
        Some(if sum.is_positive() { 1 } else { -1 })
    } else {
        None
    }
}

fn j0_oracle() -> (Rational, Rational) {
    let (mut lo, mut hi) = (q(2, 1), q(3, 1));
    assert_eq!((j0_sign(&lo), j0_sign(&hi)), (Some(1), Some(-1)));
    for _ in 0..52 {
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        match j0_sign(&mid).expect("sign certified away from the zero") {
            1 => lo = mid,
            _ => hi = mid,
        }
    }
    (lo, hi)
}

fn known_constant() -> Verdict {
    use num_traits::ToPrimitive;
    let (lo, hi) = j0_oracle();
    let oracle = ((&lo + &hi) / Rational::from_integer(2.into()))
        .to_f64()
        .unwrap();
    let s = bessel_j_series::<f64>(&0.0, DEFAULT_ORDER).unwrap();
    let z = smallest_positive_zero(&s, None, 1e-13).unwrap();
    let pass = (z.value - J0_ZERO).abs() < 1e-10 && (oracle - J0_ZERO).abs() < 1e-10;
    Verdict {
        pass,
        detail: format!(
            "module {:.15}, exact bisection {oracle:.15}, reference {J0_ZERO}",
            z.value
        ),
    }
}

fn fault_injection() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_radii");
    let run = |fault: Option<String>| {
        let mut cmd = Command::new(bin);
        cmd.args(["verify", "--no-geometry"])
            .env("RADII_PRECISION", "rational");
        if let Some(f) = fault {
            cmd.arg("--inject-fault").arg(f);
        }
        cmd.output().expect("run radii")
    };
    let clean = run(None);
    if clean.status.code() != Some(0) {
        return Verdict {
            pass: false,
            detail: "unperturbed sweep does not pass".into(),
        };
    }
    let mut failures = Vec::new();
    let mut count = 0;
    for entry in ConstantTable::default().entries() {
        for (i, v) in entry.values.iter().enumerate() {
            for delta in [-1, 1] {
                count += 1;
                let fault = format!("{}:{i}:{}", entry.name, v + delta);
                let out = run(Some(fault.clone()));
                let stderr = String::from_utf8_lossy(&out.stderr);
                let names_row = stderr.lines().any(|l| l.starts_with("FAIL T"));
                if out.status.code() != Some(1) || !names_row {
                    failures.push(format!("{fault}: exit {:?}", out.status.code()));
                }
            }
        }
    }
    Verdict::from_failures(failures, || {
        format!("all {count} perturbations fail with a named row")
    })
}

type Criterion = (&'static str, Option<Duration>, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "oracle equivalence",
            Some(Duration::from_secs(5)),
            oracle_equivalence,
        ),
        (
            "sandwich reproduction",
            Some(Duration::from_secs(30)),
            sandwich,
        ),
        ("ladder monotonicity", None, monotone_and_tighter),
        ("T2 equals T1 at alpha = 0", None, t2_is_t1_at_zero_alpha),
        ("geometry maximality", None, geometry),
        ("Newton-identity oracle", None, newton_identities),
        ("known constant j0,1", None, known_constant),
        ("fault injection", None, fault_injection),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.into_iter().enumerate() {
        let v = timed(budget, f);
        if !v.pass {
            failed += 1;
        }
        println!(
            "criterion {} {}: {name}: {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
