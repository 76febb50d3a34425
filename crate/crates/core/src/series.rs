//! Truncated Maclaurin series with parity metadata and certified evaluation.
//!
//! A [`PowerSeries`] stores coefficients `c_0..c_N` of a series in its own
//! variable `w`. The [`Parity`] records how `w` relates to `z`:
//!
//! * `EvenInZ`: `f(z) = Σ c_n z^{2n}`, so `w = z²`;
//! * `OddInZ`:  `f(z) = z · Σ c_n z^{2n}` (the derivative of an even series);
//! * `General`: `f(z) = Σ c_n z^n`.
//!
//! Evaluation returns the partial sum together with a rigorous bound on the
//! omitted tail (alternating-series remainder, or a geometric majorant when
//! the terms do not alternate) and an estimate of accumulated rounding.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    EvenInZ,
    OddInZ,
    General,
}

/// Whether coefficients past the truncation order are known to vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    /// The stored coefficients are the whole (polynomial) series.
    Exact,
    /// The series continues past `truncation_order`.
    Truncated,
}

pub const DEFAULT_ORDER: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
    parity: Parity,
    tail: Tail,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    /// Bound on the magnitude of the omitted tail.
    pub truncation_bound: f64,
    /// Estimate of floating-point error in the partial sum.
    pub rounding_bound: f64,
    pub terms_used: usize,
}

impl EvalResult {
    pub fn error_bound(&self) -> f64 {
        self.truncation_bound + self.rounding_bound
    }

    /// True when the sign of `value` is certified by the error bound.
    pub fn sign_is_certain(&self) -> bool {
        self.value.abs() > self.error_bound()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexEval {
    pub value: Complex64,
    pub error_bound: f64,
}

/// Rising factorial `x (x+1) ... (x+n-1)`; 1 when `n = 0`.
pub fn pochhammer<T: Scalar>(x: &T, n: usize) -> T {
    let mut acc = T::one();
    let mut factor = x.clone();
    for _ in 0..n {
        acc = acc * factor.clone();
        factor = factor + T::one();
    }
    acc
}

impl<T: Scalar> PowerSeries<T> {
    /// A truncated series whose tail continues past the last coefficient.
    pub fn truncated(coeffs: Vec<T>, parity: Parity) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        PowerSeries {
            coeffs,
            parity,
            tail: Tail::Truncated,
        }
    }

    /// A polynomial: coefficients past the last one are exactly zero.
    pub fn polynomial(coeffs: Vec<T>, parity: Parity) -> Self {
        let coeffs = if coeffs.is_empty() {
            vec![T::zero()]
        } else {
            coeffs
        };
        PowerSeries {
            coeffs,
            parity,
            tail: Tail::Exact,
        }
    }

    /// Builds `c_0 = first`, `c_n = c_{n-1} · ratio(n)` for `n = 1..=order`.
    pub fn from_ratio_recurrence(
        first: T,
        order: usize,
        parity: Parity,
        mut ratio: impl FnMut(usize) -> T,
    ) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(first);
        for n in 1..=order {
            let next = coeffs[n - 1].clone() * ratio(n);
            coeffs.push(next);
        }
        Self::truncated(coeffs, parity)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&T> {
        self.coeffs.get(n)
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_normalized(&self) -> bool {
        self.coeffs[0] == T::one()
    }

    /// `sign(c_n) = (-1)^n` for every stored coefficient, strictly.
    pub fn is_strictly_alternating(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(n, c)| {
            if n % 2 == 0 {
                *c > T::zero()
            } else {
                *c < T::zero()
            }
        })
    }

    pub fn to_f64(&self) -> PowerSeries<f64> {
        PowerSeries {
            coeffs: self.coeffs.iter().map(Scalar::to_f64).collect(),
            parity: self.parity,
            tail: self.tail,
        }
    }

    /// Keeps coefficients `0..=order` (a no-op when already shorter).
    pub fn truncate(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coeffs.len());
        PowerSeries {
            coeffs: self.coeffs[..keep].to_vec(),
            parity: self.parity,
            tail: if keep < self.coeffs.len() {
                Tail::Truncated
            } else {
                self.tail
            },
        }
    }

    /// Derivative with respect to `z`.
    ///
    /// Even series become odd (`z · E(z²)`), odd series become even, and
    /// general series shift down with `c'_n = (n+1) c_{n+1}`.
    pub fn differentiate(&self) -> Self {
        let c = &self.coeffs;
        let (coeffs, parity): (Vec<T>, Parity) = match self.parity {
            Parity::General => (
                (1..c.len())
                    .map(|n| T::from_i64(n as i64) * c[n].clone())
                    .collect(),
                Parity::General,
            ),
            Parity::EvenInZ => (
                (1..c.len())
                    .map(|n| T::from_i64(2 * n as i64) * c[n].clone())
                    .collect(),
                Parity::OddInZ,
            ),
            Parity::OddInZ => (
                (0..c.len())
                    .map(|n| T::from_i64(2 * n as i64 + 1) * c[n].clone())
                    .collect(),
                Parity::EvenInZ,
            ),
        };
        if coeffs.is_empty() {
            return PowerSeries::polynomial(vec![T::zero()], parity);
        }
        PowerSeries {
            coeffs,
            parity,
            tail: self.tail,
        }
    }

    /// `(Σ c_n w^n)^p` for a normalized series, by the J.C.P. Miller recurrence
    /// `b_n = (1/n) Σ_{k=1..n} ((p+1)k − n) c_k b_{n−k}`.
    pub fn pow_normalized(&self, exponent: &T) -> Self {
        assert!(self.is_normalized(), "pow_normalized needs c_0 = 1");
        let c = &self.coeffs;
        let mut b: Vec<T> = Vec::with_capacity(c.len());
        b.push(T::one());
        let p1 = exponent.clone() + T::one();
        for n in 1..c.len() {
            let mut acc = T::zero();
            for k in 1..=n {
                let weight = p1.clone() * T::from_i64(k as i64) - T::from_i64(n as i64);
                acc = acc + weight * c[k].clone() * b[n - k].clone();
            }
            b.push(acc / T::from_i64(n as i64));
        }
        PowerSeries {
            coeffs: b,
            parity: self.parity,
            tail: Tail::Truncated,
        }
    }

    /// Coefficients of `f(z)` as a plain series in `z` (expands parity).
    pub fn z_coefficients(&self) -> Vec<T> {
        match self.parity {
            Parity::General => self.coeffs.clone(),
            Parity::EvenInZ | Parity::OddInZ => {
                let offset = usize::from(self.parity == Parity::OddInZ);
                let len = 2 * self.coeffs.len() - 1 + offset;
                let mut out = vec![T::zero(); len];
                for (n, c) in self.coeffs.iter().enumerate() {
                    out[2 * n + offset] = c.clone();
                }
                out
            }
        }
    }
}

impl PowerSeries<f64> {
    /// The series' own variable at `z`.
    pub fn own_variable(&self, z: f64) -> f64 {
        match self.parity {
            Parity::EvenInZ | Parity::OddInZ => z * z,
            Parity::General => z,
        }
    }

    /// Evaluation to full accuracy: terms are summed until the certified tail
    /// is negligible against the partial sum.
    pub fn eval(&self, z: f64) -> Result<EvalResult> {
        evaluate(self, z, 1, true)
    }

    pub fn eval_complex(&self, z: Complex64) -> Result<ComplexEval> {
        let w = match self.parity {
            Parity::EvenInZ | Parity::OddInZ => z * z,
            Parity::General => z,
        };
        let c = &self.coeffs;
        let n_max = c.len() - 1;
        let mut acc = Complex64::zero();
        for coeff in c.iter().rev() {
            acc = acc * w + coeff;
        }
        let modulus = w.norm();
        let mut magnitude = 0.0;
        let mut weighted = 0.0;
        let mut power = 1.0;
        let mut last_term = 0.0;
        for (n, coeff) in c.iter().enumerate() {
            last_term = coeff.abs() * power;
            magnitude += last_term;
            weighted += (4 * n + 2) as f64 * last_term;
            power *= modulus;
        }
        let tail = match self.tail {
            Tail::Exact => 0.0,
            Tail::Truncated => {
                let q = ratio_estimate(c, modulus);
                if q.is_nan() || q >= 1.0 {
                    return Err(Error::NonConvergent {
                        z: z.norm(),
                        order: n_max,
                    });
                }
                last_term * q / (1.0 - q)
            }
        };
        let rounding = f64::EPSILON * (weighted + magnitude);
        let (mut value, mut error) = (acc, tail + rounding);
        if self.parity == Parity::OddInZ {
            value *= z;
            error *= z.norm();
        }
        Ok(ComplexEval {
            value,
            error_bound: error,
        })
    }
}

/// `|c_N / c_{N-1}| · |w|`: the next-term ratio estimate at the end of storage.
fn ratio_estimate(c: &[f64], modulus: f64) -> f64 {
    let n = c.len() - 1;
    if n == 0 || c[n - 1] == 0.0 {
        return f64::INFINITY;
    }
    (c[n] / c[n - 1]).abs() * modulus
}

/// Evaluates `s` at real `z` using at least `min_terms` terms.
///
/// Summation stops at the first index past `min_terms` from which term
/// magnitudes are nonincreasing, so the alternating-series remainder applies;
/// `truncation_bound` is then the magnitude of the first omitted term.
pub fn eval_series(s: &PowerSeries<f64>, z: f64, min_terms: usize) -> Result<EvalResult> {
    evaluate(s, z, min_terms, false)
}

fn evaluate(s: &PowerSeries<f64>, z: f64, min_terms: usize, converge: bool) -> Result<EvalResult> {
    let w = s.own_variable(z);
    let c = &s.coeffs;
    let n_max = c.len() - 1;
    let scale = if s.parity == Parity::OddInZ { z } else { 1.0 };

    let mut terms = Vec::with_capacity(c.len());
    let mut power = 1.0f64;
    for coeff in c {
        terms.push(coeff * power);
        power *= w;
    }

    let finish = |used: usize, tail: f64| -> EvalResult {
        let (sum, summation_error) = f64::sum_with_error(&terms[..used]);
        let propagated: f64 = terms[..used]
            .iter()
            .enumerate()
            .map(|(n, t)| (4 * n + 2) as f64 * t.abs())
            .sum::<f64>()
            * f64::EPSILON;
        EvalResult {
            value: sum * scale,
            truncation_bound: tail * scale.abs(),
            rounding_bound: (summation_error + propagated) * scale.abs(),
            terms_used: used,
        }
    };

    if s.tail == Tail::Exact {
        return Ok(finish(c.len(), 0.0));
    }

    // decreasing_from[m]: |t_m| >= |t_{m+1}| >= ... >= |t_N|
    let mut decreasing_from = vec![false; c.len()];
    decreasing_from[n_max] = true;
    for m in (0..n_max).rev() {
        decreasing_from[m] = decreasing_from[m + 1] && terms[m].abs() >= terms[m + 1].abs();
    }
    let alternating = w >= 0.0 && s.is_strictly_alternating();
    let tail_bound = |m: usize| -> Option<f64> {
        // bound on |Σ_{n>=m} t_n|, given the decay from m on
        let first = terms[m].abs();
        if alternating {
            return Some(first);
        }
        if m == 0 || terms[m - 1] == 0.0 {
            return None;
        }
        let q = (terms[m] / terms[m - 1]).abs();
        (q < 1.0).then(|| first / (1.0 - q))
    };

    let start = min_terms.max(1);
    for used in start..=n_max {
        if !decreasing_from[used] || terms[used - 1].abs() < terms[used].abs() {
            continue;
        }
        let Some(bound) = tail_bound(used) else {
            continue;
        };
        if converge {
            let partial: f64 = terms[..used].iter().sum();
            if bound > 0.5 * f64::EPSILON * partial.abs() && bound != 0.0 {
                continue;
            }
        }
        return Ok(finish(used, bound));
    }

    // All stored terms used; the omitted tail starts at index N+1.
    let q = ratio_estimate(c, w.abs());
    if q < 1.0 && decreasing_from[start.min(n_max)] {
        let next = terms[n_max].abs() * q;
        let bound = if alternating { next } else { next / (1.0 - q) };
        return Ok(finish(c.len(), bound));
    }
    Err(Error::NonConvergent { z, order: n_max })
}
