//! Certified smallest positive zeros and the radii built on them.
//!
//! The scan runs from the origin to 110% of the first Euler–Rayleigh upper
//! bound. A scan step is accepted only when both endpoints have a sign that
//! the evaluation error bound certifies; the first certified sign change is
//! then refined by bisection.

use serde::Serialize;

use crate::catalog::{Family, FamilyParams, KernelKind};
use crate::error::{Error, Result};
use crate::rayleigh::z_ladder;
use crate::series::{PowerSeries, DEFAULT_ORDER};

pub const DEFAULT_TOL: f64 = 1e-12;
/// Scan steps per Euler–Rayleigh upper bound.
pub const DEFAULT_SCAN_DIVISIONS: f64 = 64.0;
const SCAN_INFLATION: f64 = 1.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusKind {
    Starlikeness,
    Convexity,
    SmallestZero,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusResult {
    pub value: f64,
    /// Certified sign change: `kernel(lo)` and `kernel(hi)` have opposite signs.
    pub bracket: (f64, f64),
    pub kind: RadiusKind,
    pub kernel: String,
    pub scan_limit: f64,
    pub scan_step: f64,
}

impl RadiusResult {
    pub fn width(&self) -> f64 {
        self.bracket.1 - self.bracket.0
    }
}

/// Sign of `s(z)` when the error bound certifies it.
fn sign_at(s: &PowerSeries<f64>, z: f64) -> Result<Option<f64>> {
    let e = s.eval(z)?;
    Ok(e.sign_is_certain().then(|| e.value.signum()))
}

fn exhausted(s: &PowerSeries<f64>, z: f64) -> Error {
    let (value, bound) = s
        .eval(z)
        .map(|e| (e.value, e.error_bound()))
        .unwrap_or((f64::NAN, f64::NAN));
    Error::PrecisionExhausted { z, value, bound }
}

enum Probe {
    Crossing(f64, f64),
    /// Certified positive on both sides.
    Touch,
    Unresolved,
}

/// Around a point `x` whose sign is uncertain, looks for certified points
/// `x − δ > 0` and `x + δ < 0` inside `(lo, hi)`, shrinking `δ` from half the
/// interval down to `tol / 4`.
fn straddle(s: &PowerSeries<f64>, x: f64, lo: f64, hi: f64, tol: f64) -> Result<Probe> {
    let mut delta = 0.5 * (x - lo).min(hi - x);
    while delta >= 0.25 * tol && delta > 0.0 {
        match (sign_at(s, x - delta)?, sign_at(s, x + delta)?) {
            (Some(l), Some(r)) if l > 0.0 && r < 0.0 => {
                return Ok(Probe::Crossing(x - delta, x + delta))
            }
            (Some(l), Some(r)) if l > 0.0 && r > 0.0 => return Ok(Probe::Touch),
            _ => delta *= 0.5,
        }
    }
    Ok(Probe::Unresolved)
}

/// Smallest positive zero (in `z`) of a normalized series.
///
/// `scan_step` defaults to the first upper bound divided by 64.
pub fn smallest_positive_zero(
    s: &PowerSeries<f64>,
    scan_step: Option<f64>,
    tol: f64,
) -> Result<RadiusResult> {
    assert!(
        s.is_normalized(),
        "zero search needs a normalized series (c_0 = 1)"
    );
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Usage(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let upper = z_ladder(s, 1)?.entries[0].upper;
    let limit = SCAN_INFLATION * upper;
    let step = scan_step.unwrap_or(upper / DEFAULT_SCAN_DIVISIONS);
    if step.is_nan() || step <= 0.0 {
        return Err(Error::Usage(format!(
            "scan step must be positive, got {step}"
        )));
    }

    let mut lo = 0.0;
    let mut hi = None;
    let mut i = 1u64;
    loop {
        let x = (i as f64 * step).min(limit);
        match sign_at(s, x)? {
            Some(sign) if sign < 0.0 => {
                hi = Some(x);
                break;
            }
            Some(_) => lo = x,
            None => match straddle(s, x, lo, x + step, tol)? {
                Probe::Crossing(l, h) => {
                    lo = l;
                    hi = Some(h);
                    break;
                }
                Probe::Touch => lo = x,
                Probe::Unresolved => return Err(exhausted(s, x)),
            },
        }
        if x >= limit {
            break;
        }
        i += 1;
    }
    let Some(mut hi) = hi else {
        return Err(Error::NoZeroFound { limit });
    };

    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match sign_at(s, mid)? {
            Some(sign) if sign > 0.0 => lo = mid,
            Some(_) => hi = mid,
            None => {
                let Probe::Crossing(l, h) = straddle(s, mid, lo, hi, tol)? else {
                    return Err(exhausted(s, mid));
                };
                lo = l;
                hi = h;
            }
        }
    }
    Ok(RadiusResult {
        value: 0.5 * (lo + hi),
        bracket: (lo, hi),
        kind: RadiusKind::SmallestZero,
        kernel: String::new(),
        scan_limit: limit,
        scan_step: step,
    })
}

/// Smallest positive zero of the chosen kernel of `params`.
pub fn kernel_zero(params: &FamilyParams, kind: KernelKind, tol: f64) -> Result<RadiusResult> {
    kernel_zero_with_order(params, kind, tol, DEFAULT_ORDER)
}

pub fn kernel_zero_with_order(
    params: &FamilyParams,
    kind: KernelKind,
    tol: f64,
    order: usize,
) -> Result<RadiusResult> {
    let s: PowerSeries<f64> = params.kernel(kind, order)?;
    let mut r = smallest_positive_zero(&s, None, tol)?;
    r.kind = match kind {
        KernelKind::ConvexityKernel => RadiusKind::Convexity,
        KernelKind::DerivativeZeroKernel if params.family().has_convexity_kernel() => {
            RadiusKind::SmallestZero
        }
        KernelKind::DerivativeZeroKernel => match params.family() {
            Family::StruveDeriv | Family::LommelF => RadiusKind::Starlikeness,
            _ => RadiusKind::SmallestZero,
        },
        KernelKind::FunctionItself => RadiusKind::SmallestZero,
    };
    r.kernel = format!("{kind} of {}", params.describe());
    Ok(r)
}

/// Radius of convexity: smallest positive zero of `(z f′(z))′`.
pub fn radius_of_convexity(params: &FamilyParams, tol: f64) -> Result<RadiusResult> {
    if !params.family().has_convexity_kernel() {
        return Err(Error::UnsupportedFamily {
            family: params.family().name().into(),
            what: "radius of convexity".into(),
        });
    }
    kernel_zero(params, KernelKind::ConvexityKernel, tol)
}

/// Radius of starlikeness: smallest positive zero of the derivative kernel.
pub fn radius_of_starlikeness(params: &FamilyParams, tol: f64) -> Result<RadiusResult> {
    if !matches!(params.family(), Family::StruveDeriv | Family::LommelF) {
        return Err(Error::UnsupportedFamily {
            family: params.family().name().into(),
            what: "radius of starlikeness".into(),
        });
    }
    kernel_zero(params, KernelKind::DerivativeZeroKernel, tol)
}

/// The radius appropriate to the family: convexity for the Bessel and Struve
/// normalizations, starlikeness for the derivative families, otherwise the
/// smallest zero of the derivative kernel.
pub fn primary_radius(params: &FamilyParams, tol: f64) -> Result<RadiusResult> {
    kernel_zero(params, params.primary_kernel_kind(), tol)
}
