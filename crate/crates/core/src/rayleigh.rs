//! Euler–Rayleigh sums and sandwich bounds for the smallest zero.
//!
//! For a normalized series `1 + a_1 w + a_2 w² + ...` of genus zero with only
//! positive zeros `x_n`, the logarithmic derivative gives the Newton identities
//!
//! ```text
//! S_1 = −a_1,    S_k = −k a_k − Σ_{j=1}^{k−1} a_j S_{k−j},    S_k = Σ_n x_n^{−k}
//! ```
//!
//! and the sums sandwich the smallest zero: `S_k^{−1/k} < x_1 < S_k / S_{k+1}`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{Parity, PowerSeries};

pub const DEFAULT_DEPTH: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct RayleighSums<T> {
    /// `sums[k-1] = S_k`.
    sums: Vec<T>,
    /// Absolute error estimates, all zero in exact arithmetic.
    errors: Vec<f64>,
    parity: Parity,
}

impl<T: Scalar> RayleighSums<T> {
    pub fn new(sums: Vec<T>, parity: Parity) -> Self {
        let errors = vec![0.0; sums.len()];
        RayleighSums {
            sums,
            errors,
            parity,
        }
    }

    /// `S_k` for `k ≥ 1`.
    pub fn get(&self, k: usize) -> Option<&T> {
        k.checked_sub(1).and_then(|i| self.sums.get(i))
    }

    pub fn sums(&self) -> &[T] {
        &self.sums
    }

    pub fn len(&self) -> usize {
        self.sums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sums.is_empty()
    }

    /// Parity of the series the sums were taken from; decides whether the
    /// zeros are `z²` (even) or `z` (general).
    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Relative error estimate for `S_k` (zero in rational mode).
    pub fn relative_error(&self, k: usize) -> f64 {
        let i = k - 1;
        let v = self.sums[i].to_f64().abs();
        if v == 0.0 {
            f64::INFINITY
        } else {
            self.errors[i] / v
        }
    }

    /// `S_{k−1} S_{k+1} ≥ S_k²` for every interior `k`.
    pub fn satisfies_cauchy_schwarz(&self) -> bool {
        (2..self.sums.len()).all(|k| {
            let lhs = self.sums[k - 2].clone() * self.sums[k].clone();
            let rhs = self.sums[k - 1].clone() * self.sums[k - 1].clone();
            if T::EXACT {
                lhs >= rhs
            } else {
                let slack = 1e-12 * rhs.to_f64().abs();
                lhs.to_f64() >= rhs.to_f64() - slack
            }
        })
    }
}

/// Power sums `S_1..S_K` of the reciprocal zeros of a normalized series.
pub fn power_sums<T: Scalar>(s: &PowerSeries<T>, depth: usize) -> Result<RayleighSums<T>> {
    assert!(
        s.is_normalized(),
        "power sums need a normalized series (c_0 = 1)"
    );
    let available = s.truncation_order();
    if depth > available && s.tail() == crate::series::Tail::Truncated {
        return Err(Error::InsufficientOrder {
            requested: depth,
            available,
        });
    }
    let a = |j: usize| s.coeff(j).cloned().unwrap_or_else(T::zero);
    let mut sums: Vec<T> = Vec::with_capacity(depth);
    let mut errors: Vec<f64> = Vec::with_capacity(depth);
    for k in 1..=depth {
        let mut terms = Vec::with_capacity(k);
        terms.push(-(T::from_i64(k as i64) * a(k)));
        let mut propagated = 0.0;
        for j in 1..k {
            let term = -(a(j) * sums[k - j - 1].clone());
            propagated += a(j).to_f64().abs() * errors[k - j - 1];
            terms.push(term);
        }
        let (sum, rounding) = T::sum_with_error(&terms);
        let err = if T::EXACT {
            0.0
        } else {
            rounding + propagated + 2.0 * f64::EPSILON * sum.to_f64().abs()
        };
        sums.push(sum);
        errors.push(err);
    }
    Ok(RayleighSums {
        sums,
        errors,
        parity: s.parity(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct LadderEntry {
    pub k: usize,
    pub lower: f64,
    pub upper: f64,
}

/// Sandwich bounds `(S_k^{−1/k}, S_k/S_{k+1})`, `k = 1..K−1`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BoundLadder {
    pub entries: Vec<LadderEntry>,
    /// True once the ladder has been mapped back to the `z` variable.
    pub in_z: bool,
}

impl BoundLadder {
    pub fn entry(&self, k: usize) -> Option<&LadderEntry> {
        self.entries.iter().find(|e| e.k == k)
    }

    pub fn depth(&self) -> usize {
        self.entries.len()
    }

    pub fn is_monotone(&self) -> bool {
        self.entries
            .windows(2)
            .all(|w| w[1].lower >= w[0].lower && w[1].upper <= w[0].upper)
    }

    pub fn brackets(&self, x: f64) -> bool {
        self.entries.iter().all(|e| e.lower < x && x < e.upper)
    }
}

pub fn bound_ladder<T: Scalar>(sums: &RayleighSums<T>) -> Result<BoundLadder> {
    if sums.len() < 2 {
        return Err(Error::InsufficientOrder {
            requested: 2,
            available: sums.len(),
        });
    }
    for (i, s) in sums.sums.iter().enumerate() {
        if !s.is_positive_value() {
            return Err(Error::NonPositiveSum {
                k: i + 1,
                value: s.to_f64(),
            });
        }
    }
    let entries = (1..sums.len())
        .map(|k| {
            let s_k = &sums.sums[k - 1];
            let lower = s_k.to_f64().powf(-1.0 / k as f64);
            let upper = (s_k.clone() / sums.sums[k].clone()).to_f64();
            LadderEntry { k, lower, upper }
        })
        .collect();
    Ok(BoundLadder {
        entries,
        in_z: false,
    })
}

/// Maps bounds on the zero in the series' own variable to bounds on `z`:
/// square roots for even series, identity otherwise.
pub fn variable_map(ladder: &BoundLadder, parity: Parity) -> BoundLadder {
    if ladder.in_z {
        return ladder.clone();
    }
    let entries = match parity {
        Parity::EvenInZ | Parity::OddInZ => ladder
            .entries
            .iter()
            .map(|e| LadderEntry {
                k: e.k,
                lower: e.lower.sqrt(),
                upper: e.upper.sqrt(),
            })
            .collect(),
        Parity::General => ladder.entries.clone(),
    };
    BoundLadder {
        entries,
        in_z: true,
    }
}

/// Ladder of depth `depth` (entries `k = 1..=depth`) on the smallest positive
/// zero in `z`, from `depth + 1` power sums of `s`.
pub fn z_ladder<T: Scalar>(s: &PowerSeries<T>, depth: usize) -> Result<BoundLadder> {
    let sums = power_sums(s, depth + 1)?;
    Ok(variable_map(&bound_ladder(&sums)?, s.parity()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn single_zero() {
        let s = PowerSeries::polynomial(vec![q(1, 1), q(-1, 1)], Parity::General);
        let sums = power_sums(&s, 5).unwrap();
        assert!(sums.sums().iter().all(|x| *x == q(1, 1)));
    }

    #[test]
    fn two_zeros() {
        let s = PowerSeries::polynomial(vec![q(1, 1), q(-3, 2), q(1, 2)], Parity::General);
        let sums = power_sums(&s, 2).unwrap();
        assert_eq!(sums.sums(), &[q(3, 2), q(5, 4)]);
        let ladder = bound_ladder(&sums).unwrap();
        assert_eq!(ladder.entries[0].lower, 2.0 / 3.0);
        assert_eq!(ladder.entries[0].upper, 6.0 / 5.0);
        assert!(ladder.brackets(1.0));
    }

    #[test]
    fn insufficient_order() {
        let s = PowerSeries::truncated(vec![q(1, 1), q(-1, 4)], Parity::EvenInZ);
        assert!(matches!(
            power_sums(&s, 3),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn non_positive_sum() {
        let sums = RayleighSums::new(vec![q(-1, 1), q(1, 1)], Parity::General);
        assert!(matches!(
            bound_ladder(&sums),
            Err(Error::NonPositiveSum { k: 1, .. })
        ));
    }

    #[test]
    fn variable_map_even_and_general() {
        let ladder = BoundLadder {
            entries: vec![LadderEntry {
                k: 1,
                lower: 4.0,
                upper: 9.0,
            }],
            in_z: false,
        };
        let even = variable_map(&ladder, Parity::EvenInZ);
        assert_eq!((even.entries[0].lower, even.entries[0].upper), (2.0, 3.0));
        let general = variable_map(&ladder, Parity::General);
        assert_eq!(general.entries, ladder.entries);
    }

    #[test]
    fn float_sums_carry_error_estimates() {
        let s = PowerSeries::polynomial(vec![1.0, -1.5, 0.5], Parity::General);
        let sums = power_sums(&s, 4).unwrap();
        for k in 1..=4 {
            let exact = 1.0 + 0.5f64.powi(k as i32);
            let actual = (sums.get(k).unwrap() - exact).abs();
            assert!(actual <= sums.relative_error(k) * exact);
            assert!(sums.relative_error(k) < 64.0 * f64::EPSILON);
        }
    }
}
