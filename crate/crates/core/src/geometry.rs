//! Circle scans of the starlikeness and convexity functionals.
//!
//! Both functionals are ratios of integer-power series evaluated by complex
//! Horner, so no branch of a fractional power is ever chosen:
//!
//! ```text
//! z u′/u  = K(z²) / U(z²)            (struve_deriv, K the derivative kernel)
//! z f′/f  = l_μ(z²) / S(z²)          (lommel_f)
//! 1 + z f″/f′ = (z f′)′ / f′         (bessel_g, bessel_h, struve_u, struve_w)
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{derivative_kernel_series, Family, FamilyParams, KernelKind};
use crate::error::{Error, Result};
use crate::series::{Parity, PowerSeries, DEFAULT_ORDER};

pub const DEFAULT_ANGLES: usize = 512;
pub const MIN_ANGLES: usize = 64;
/// Relative distance from the radius used by the maximality check.
pub const DEFAULT_EPSILON: f64 = 0.05;

/// `numerator(z) / denominator(z)`, both normalized to 1 at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct Functional {
    pub numerator: PowerSeries<f64>,
    pub denominator: PowerSeries<f64>,
}

impl Functional {
    /// The constant functional 1 of the identity map `f(z) = z`.
    pub fn identity() -> Self {
        let one = PowerSeries::polynomial(vec![1.0], Parity::General);
        Functional {
            numerator: one.clone(),
            denominator: one,
        }
    }

    /// `z f′/f` for the starlikeness families.
    pub fn starlikeness(params: &FamilyParams, order: usize) -> Result<Self> {
        match params.family() {
            Family::StruveDeriv | Family::LommelF => Ok(Functional {
                numerator: derivative_kernel_series(params, order)?,
                denominator: params.function_series(order)?,
            }),
            other => Err(Error::UnsupportedFamily {
                family: other.name().into(),
                what: "starlikeness functional".into(),
            }),
        }
    }

    /// `1 + z f″/f′` for the convexity families.
    pub fn convexity(params: &FamilyParams, order: usize) -> Result<Self> {
        Ok(Functional {
            numerator: params.kernel(KernelKind::ConvexityKernel, order)?,
            denominator: params.first_derivative_series(order)?,
        })
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let num = self.numerator.eval_complex(z)?;
        let den = self.denominator.eval_complex(z)?;
        let modulus = den.value.norm();
        if modulus < 10.0 * den.error_bound {
            return Err(Error::PoleTooClose {
                z: format!("{z}"),
                modulus,
                bound: den.error_bound,
            });
        }
        Ok(num.value / den.value)
    }

    /// Minimum of the real part over `n_angles` equally spaced points of
    /// `|z| = r`, starting at `θ = 0`.
    pub fn scan(&self, r: f64, n_angles: usize) -> Result<DiskScan> {
        if n_angles < MIN_ANGLES {
            return Err(Error::Usage(format!(
                "at least {MIN_ANGLES} angles are needed, got {n_angles}"
            )));
        }
        if r.is_nan() || r <= 0.0 {
            return Err(Error::Usage(format!("radius must be positive, got {r}")));
        }
        let values = (0..n_angles)
            .into_par_iter()
            .map(|j| {
                let theta = 2.0 * PI * j as f64 / n_angles as f64;
                self.eval(Complex64::from_polar(r, theta))
                    .map(|v| (v.re, theta))
            })
            .collect::<Result<Vec<_>>>()?;
        // first index attaining the minimum, so ties resolve to the smallest angle
        let (min_real_part, argmin_angle) =
            values
                .iter()
                .copied()
                .fold((f64::INFINITY, 0.0), |best, cur| {
                    if cur.0 < best.0 {
                        cur
                    } else {
                        best
                    }
                });
        Ok(DiskScan {
            radius: r,
            n_angles,
            min_real_part,
            argmin_angle,
            real_axis_value: values[0].0,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskScan {
    pub radius: f64,
    pub n_angles: usize,
    pub min_real_part: f64,
    pub argmin_angle: f64,
    /// Real part at `θ = 0`.
    pub real_axis_value: f64,
}

pub fn min_re_star_functional(params: &FamilyParams, r: f64, n_angles: usize) -> Result<DiskScan> {
    Functional::starlikeness(params, DEFAULT_ORDER)?.scan(r, n_angles)
}

pub fn min_re_convex_functional(
    params: &FamilyParams,
    r: f64,
    n_angles: usize,
) -> Result<DiskScan> {
    Functional::convexity(params, DEFAULT_ORDER)?.scan(r, n_angles)
}

/// The functional whose positivity defines the family's radius.
pub fn geometric_functional(params: &FamilyParams) -> Result<Functional> {
    if params.family().has_convexity_kernel() {
        Functional::convexity(params, DEFAULT_ORDER)
    } else {
        Functional::starlikeness(params, DEFAULT_ORDER)
    }
}

/// Whether the circle minimum sits on the positive real axis: the sampled
/// value at `θ = 0` is the minimum up to rounding.
pub fn real_axis_minimum_property(params: &FamilyParams, r: f64) -> bool {
    geometric_functional(params)
        .and_then(|f| f.scan(r, DEFAULT_ANGLES))
        .is_ok_and(|scan| attains_minimum_on_axis(&scan))
}

pub fn attains_minimum_on_axis(scan: &DiskScan) -> bool {
    let slack = 1e-12 * scan.real_axis_value.abs().max(1.0);
    scan.real_axis_value <= scan.min_real_part + slack
}

/// Sign check of the functional just inside and just outside `radius`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Maximality {
    pub inside: DiskScan,
    pub outside: DiskScan,
}

impl Maximality {
    pub fn holds(&self) -> bool {
        self.inside.min_real_part > 0.0 && self.outside.min_real_part < 0.0
    }
}

pub fn check_maximality(
    params: &FamilyParams,
    radius: f64,
    epsilon: f64,
    n_angles: usize,
) -> Result<Maximality> {
    let f = geometric_functional(params)?;
    Ok(Maximality {
        inside: f.scan((1.0 - epsilon) * radius, n_angles)?,
        outside: f.scan((1.0 + epsilon) * radius, n_angles)?,
    })
}
