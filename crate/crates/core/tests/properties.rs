mod common;

use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

use common::q;
use radii::catalog::bessel_j_series;
use radii::rayleigh::z_ladder;
use radii::series::pochhammer;
use radii::verify::Grid;
use radii::zeros::{kernel_zero, smallest_positive_zero};
use radii::{
    bound_ladder, parse_rational, power_sums, ClosedForms, Error, FamilyParams, KernelKind, Parity,
    PowerSeries, Rational, Surd, TheoremId,
};

/// `prod (1 − w/r)` with the given positive roots.
fn from_roots(roots: &[Rational]) -> PowerSeries<Rational> {
    let mut coeffs = vec![Rational::one()];
    for r in roots {
        let inv = r.recip();
        let mut next = coeffs.clone();
        next.push(Rational::zero());
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] -= c * &inv;
        }
        coeffs = next;
    }
    PowerSeries::polynomial(coeffs, Parity::General)
}

fn positive_root() -> impl Strategy<Value = Rational> {
    (1i64..=8).prop_flat_map(|d| ((d + 1) / 2..=10 * d).prop_map(move |n| q(n, d)))
}

fn roots() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(positive_root(), 1..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ladder_brackets_smallest_root(roots in roots()) {
        let s = from_roots(&roots);
        let sums = power_sums(&s, 7).unwrap();
        prop_assert!(sums.satisfies_cauchy_schwarz());
        let ladder = bound_ladder(&sums).unwrap();
        // entries coincide for a single distinct root, so allow rounding
        for w in ladder.entries.windows(2) {
            prop_assert!(w[1].lower >= w[0].lower * (1.0 - 1e-14));
            prop_assert!(w[1].upper <= w[0].upper * (1.0 + 1e-14));
        }
        let smallest = roots.iter().min().unwrap().to_f64().unwrap();
        for e in &ladder.entries {
            // equality is attained when every root is the smallest one
            let slack = 1e-12 * smallest;
            prop_assert!(e.lower <= smallest + slack && smallest <= e.upper + slack,
                "k = {}: {} <= {smallest} <= {}", e.k, e.lower, e.upper);
        }
    }

    #[test]
    fn float_power_sums_track_exact(roots in roots()) {
        let s = from_roots(&roots);
        let exact = power_sums(&s, 6).unwrap();
        let float = power_sums(&s.to_f64(), 6).unwrap();
        for k in 1..=6 {
            let e = exact.get(k).unwrap().to_f64().unwrap();
            let f = *float.get(k).unwrap();
            prop_assert!((e - f).abs() <= 1e-9 * e.abs(), "k = {k}: {e} vs {f}");
        }
    }

    #[test]
    fn polynomial_zero_is_smallest_root(roots in roots()) {
        let s = from_roots(&roots).to_f64();
        let smallest = roots.iter().min().unwrap().to_f64().unwrap();
        // a sign-change scan resolves zeros only when the step is below their separation
        let mut distinct: Vec<f64> = roots.iter().map(|r| r.to_f64().unwrap()).collect();
        distinct.sort_by(f64::total_cmp);
        distinct.dedup();
        let gap = distinct.windows(2).map(|w| w[1] - w[0]).fold(smallest, f64::min);
        let r = smallest_positive_zero(&s, Some(0.5 * gap), 1e-10);
        // a repeated smallest root touches zero without a sign change
        let multiplicity = roots.iter().filter(|x| x.to_f64() == Some(smallest)).count();
        if multiplicity % 2 == 1 {
            // either an accurate zero, or a refusal located at the root itself
            // when clustered roots flatten the polynomial below its rounding error
            match r {
                Ok(r) => prop_assert!((r.value - smallest).abs() < 1e-8, "{} vs {smallest}", r.value),
                Err(Error::PrecisionExhausted { z, .. }) => {
                    prop_assert!((z - smallest).abs() < 1e-8, "gave up at {z}, root {smallest}")
                }
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }

    #[test]
    fn bessel_coefficients_match_closed_form(n in -9i64..=40, d in 1i64..=10) {
        prop_assume!(n * 10 > -9 * d);
        let nu = q(n, d);
        let s = bessel_j_series(&nu, 12).unwrap();
        let mut factorial = Rational::one();
        for (k, c) in s.coeffs().iter().enumerate() {
            if k > 0 {
                factorial *= Rational::from_integer((k as i64).into());
            }
            let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
            let four = Rational::from_integer(num_traits::pow(4.into(), k));
            let expected = sign / (four * &factorial * pochhammer(&(&nu + Rational::one()), k));
            prop_assert_eq!(c, &expected);
        }
    }

    #[test]
    fn convexity_ladder_brackets_zero(n in -4i64..=30, d in 1i64..=5) {
        prop_assume!(n > -d);
        let p = FamilyParams::bessel_g(q(n, d)).unwrap();
        let kernel = p.kernel::<Rational>(KernelKind::ConvexityKernel, 8).unwrap();
        let ladder = z_ladder(&kernel, 6).unwrap();
        prop_assert!(ladder.is_monotone());
        let zero = kernel_zero(&p, KernelKind::ConvexityKernel, 1e-12).unwrap();
        prop_assert!(ladder.brackets(zero.value), "{:?} vs {}", ladder, zero.value);
    }

    #[test]
    fn float_and_exact_closed_forms_agree(n in -9i64..=9, d in 18i64..=30) {
        let forms = ClosedForms::default();
        for t in [TheoremId::T6, TheoremId::T8] {
            let p = t.params(q(n, d), q(0, 1)).unwrap();
            let exact = forms.theorem_bounds::<Rational>(t, &p).unwrap();
            let float = forms.theorem_bounds::<f64>(t, &p).unwrap();
            for (a, b) in exact.lower_values().iter().zip(float.lower_values()) {
                prop_assert!((a - b).abs() <= 1e-12 * a.abs());
            }
            for (a, b) in exact.upper_values().iter().zip(float.upper_values()) {
                prop_assert!((a - b).abs() <= 1e-12 * a.abs());
            }
        }
    }

    #[test]
    fn surd_equality_is_exact(c in 1i64..=50, r in 1i64..=50, index in 2u32..=4) {
        let c = q(c, 7);
        let r = q(r, 3);
        let a = Surd::scaled(c.clone(), r.clone(), index);
        let b = Surd::root(num_traits::pow(c.clone(), index as usize) * &r, index);
        prop_assert!(a.matches(&b, 0.0));
        let off = Surd::root(num_traits::pow(c, index as usize) * &r + q(1, 1_000_000), index);
        prop_assert!(!a.matches(&off, 0.0));
    }

    #[test]
    fn rational_parsing_round_trips(n in -10_000i64..=10_000, d in 1i64..=10_000) {
        prop_assert_eq!(parse_rational(&format!("{n}/{d}")).unwrap(), q(n, d));
        prop_assert_eq!(parse_rational(&format!("{n}e-3")).unwrap(), q(n, 1000));
    }

    #[test]
    fn grid_point_count(a in -50i64..=50, len in 0i64..=40, step in 1i64..=7) {
        let g = Grid::parse(&format!("{a}/10:{}/10:{step}/10", a + len)).unwrap();
        let points = g.points();
        prop_assert_eq!(points.len() as i64, len / step + 1);
        prop_assert!(points.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn float_ladder_matches_exact_on_family_kernels() {
    for t in TheoremId::ALL {
        let (v, a) = common::grid20(t)[7].clone();
        let p = t.params(v, a).unwrap();
        let exact = z_ladder(&p.kernel::<Rational>(t.kernel_kind(), 8).unwrap(), 6).unwrap();
        let float = z_ladder(&p.kernel::<f64>(t.kernel_kind(), 8).unwrap(), 6).unwrap();
        for (e, f) in exact.entries.iter().zip(&float.entries) {
            assert!(
                (e.lower - f.lower).abs() <= 1e-12 * e.lower,
                "{t}: {e:?} vs {f:?}"
            );
            assert!(
                (e.upper - f.upper).abs() <= 1e-12 * e.upper,
                "{t}: {e:?} vs {f:?}"
            );
        }
    }
}
