//! Coefficient generators for the normalized Bessel, Struve and Lommel
//! families and their derivative and convexity kernels.
//!
//! Every generator returns a normalized series (`c_0 = 1`) built by a ratio
//! recurrence `c_n = c_{n-1} · r(n)`, so no Gamma function is ever evaluated.
//! Writing `j_n`, `s_n`, `l_n` for the normalized Bessel, Struve and Lommel
//! coefficients:
//!
//! | series | coefficient | variable |
//! |---|---|---|
//! | Bessel `J` | `(-1)^n / (4^n n! (ν+1)_n)` | `z²` |
//! | Struve `H` | `(-1)^n / (4^n (3/2)_n (ν+3/2)_n)` | `z²` |
//! | Lommel `s_{μ-1/2,1/2}` | `(-1)^n / (4^n ((μ+2)/2)_n ((μ+3)/2)_n)` | `z²` |
//! | Struve combination | `(2n+ν+α+1)/(ν+α+1) · s_n` | `z²` |
//! | Lommel derivative `l_μ` | `(2n+μ+1/2)/(μ+1/2) · l_n` | `z²` |
//! | `Δ_ν = (z g')'` | `(2n+1)² j_n` | `z²` |
//! | `θ_ν = (z h')'` | `(n+1)² j_n` | `z` |
//! | `Ω_ν = (z u')'` | `(2n+1)² s_n` | `z²` |
//! | `ψ_ν = (z w')'` | `(n+1)² s_n` | `z` |

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rational_to_string, Rational, Scalar};
use crate::series::{Parity, PowerSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `2^ν Γ(ν+1) z^{1-ν} J_ν(z)`
    BesselG,
    /// `2^ν Γ(ν+1) z^{1-ν/2} J_ν(√z)`
    BesselH,
    /// `√π 2^ν Γ(ν+3/2) z^{-ν} H_ν(z)`
    StruveU,
    /// `√π 2^ν Γ(ν+3/2) z^{(1-ν)/2} H_ν(√z)`
    StruveW,
    /// `α H_ν(z) + z H_ν'(z)`
    StruveCombo,
    /// `H_ν'`, also the power-normalized Struve function whose starlikeness
    /// radius is the first zero of `H_ν'`.
    StruveDeriv,
    /// `(μ(μ+1) s_{μ-1/2,1/2}(z))^{1/(μ+1/2)}`
    LommelF,
    /// `z s'_{μ-1/2,1/2}(z)`
    LommelL,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::BesselG,
        Family::BesselH,
        Family::StruveU,
        Family::StruveW,
        Family::StruveCombo,
        Family::StruveDeriv,
        Family::LommelF,
        Family::LommelL,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::BesselG => "bessel_g",
            Family::BesselH => "bessel_h",
            Family::StruveU => "struve_u",
            Family::StruveW => "struve_w",
            Family::StruveCombo => "struve_combo",
            Family::StruveDeriv => "struve_deriv",
            Family::LommelF => "lommel_f",
            Family::LommelL => "lommel_l",
        }
    }

    pub fn uses_mu(self) -> bool {
        matches!(self, Family::LommelF | Family::LommelL)
    }

    pub fn uses_alpha(self) -> bool {
        self == Family::StruveCombo
    }

    pub fn has_convexity_kernel(self) -> bool {
        matches!(
            self,
            Family::BesselG | Family::BesselH | Family::StruveU | Family::StruveW
        )
    }

    pub fn has_derivative_kernel(self) -> bool {
        matches!(
            self,
            Family::StruveCombo | Family::StruveDeriv | Family::LommelL | Family::LommelF
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_lowercase().replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == wanted)
            .ok_or_else(|| {
                let names: Vec<_> = Family::ALL.iter().map(|f| f.name()).collect();
                Error::Usage(format!(
                    "unknown family `{s}` (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    FunctionItself,
    DerivativeZeroKernel,
    ConvexityKernel,
}

impl FromStr for KernelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "function" | "function_itself" | "itself" => Ok(KernelKind::FunctionItself),
            "derivative" | "derivative_zero_kernel" => Ok(KernelKind::DerivativeZeroKernel),
            "convexity" | "convexity_kernel" => Ok(KernelKind::ConvexityKernel),
            other => Err(Error::Usage(format!(
                "unknown kernel `{other}` (expected function, derivative or convexity)"
            ))),
        }
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelKind::FunctionItself => "function",
            KernelKind::DerivativeZeroKernel => "derivative kernel",
            KernelKind::ConvexityKernel => "convexity kernel",
        })
    }
}

/// A family together with validated parameters, held exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyParams {
    family: Family,
    nu: Rational,
    alpha: Rational,
    mu: Rational,
}

fn half() -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(2))
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl FamilyParams {
    /// Validates the family's parameter domain.
    ///
    /// | family | domain |
    /// |---|---|
    /// | bessel_g, bessel_h | ν > −1 |
    /// | struve_u, struve_w, struve_deriv | abs(ν) ≤ 1/2 |
    /// | struve_combo | α + ν > −1, abs(ν) < 1/2 |
    /// | lommel_l | μ ∈ (−1, 1), μ ≠ 0, μ ≠ −1/2 |
    /// | lommel_f | μ ∈ (−1/2, 1), μ ≠ 0 |
    ///
    /// Parameters a family does not use must be zero.
    pub fn new(family: Family, nu: Rational, alpha: Rational, mu: Rational) -> Result<Self> {
        if !family.uses_alpha() && !alpha.is_zero() {
            return Err(Error::domain(
                format!("{family} takes no α"),
                rational_to_string(&alpha),
            ));
        }
        if family.uses_mu() && !nu.is_zero() {
            return Err(Error::domain(
                format!("{family} takes no ν"),
                rational_to_string(&nu),
            ));
        }
        if !family.uses_mu() && !mu.is_zero() {
            return Err(Error::domain(
                format!("{family} takes no μ"),
                rational_to_string(&mu),
            ));
        }
        let nu_s = rational_to_string(&nu);
        let mu_s = rational_to_string(&mu);
        match family {
            Family::BesselG | Family::BesselH => {
                if nu <= int(-1) {
                    return Err(Error::domain("ν > −1 required", nu_s));
                }
            }
            Family::StruveU | Family::StruveW | Family::StruveDeriv => {
                if nu.abs() > half() {
                    return Err(Error::domain("|ν| ≤ 1/2 required", nu_s));
                }
            }
            Family::StruveCombo => {
                if nu.abs() >= half() {
                    return Err(Error::domain("|ν| < 1/2 required", nu_s));
                }
                if &alpha + &nu <= int(-1) {
                    return Err(Error::domain(
                        "α + ν > −1 required",
                        format!("α + ν = {}", rational_to_string(&(&alpha + &nu))),
                    ));
                }
            }
            Family::LommelL => {
                if mu <= int(-1) || mu >= int(1) {
                    return Err(Error::domain("μ ∈ (−1, 1) required", mu_s));
                }
                if mu.is_zero() {
                    return Err(Error::domain("μ ≠ 0 required", mu_s));
                }
                if mu == -half() {
                    return Err(Error::domain("μ ≠ −1/2 required", mu_s));
                }
            }
            Family::LommelF => {
                if mu <= -half() || mu >= int(1) {
                    return Err(Error::domain("μ ∈ (−1/2, 1) required", mu_s));
                }
                if mu.is_zero() {
                    return Err(Error::domain("μ ≠ 0 required", mu_s));
                }
            }
        }
        Ok(FamilyParams {
            family,
            nu,
            alpha,
            mu,
        })
    }

    pub fn bessel_g(nu: Rational) -> Result<Self> {
        Self::new(Family::BesselG, nu, Rational::zero(), Rational::zero())
    }

    pub fn bessel_h(nu: Rational) -> Result<Self> {
        Self::new(Family::BesselH, nu, Rational::zero(), Rational::zero())
    }

    pub fn struve_u(nu: Rational) -> Result<Self> {
        Self::new(Family::StruveU, nu, Rational::zero(), Rational::zero())
    }

    pub fn struve_w(nu: Rational) -> Result<Self> {
        Self::new(Family::StruveW, nu, Rational::zero(), Rational::zero())
    }

    pub fn struve_combo(alpha: Rational, nu: Rational) -> Result<Self> {
        Self::new(Family::StruveCombo, nu, alpha, Rational::zero())
    }

    pub fn struve_deriv(nu: Rational) -> Result<Self> {
        Self::new(Family::StruveDeriv, nu, Rational::zero(), Rational::zero())
    }

    pub fn lommel_f(mu: Rational) -> Result<Self> {
        Self::new(Family::LommelF, Rational::zero(), Rational::zero(), mu)
    }

    pub fn lommel_l(mu: Rational) -> Result<Self> {
        Self::new(Family::LommelL, Rational::zero(), Rational::zero(), mu)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn nu(&self) -> &Rational {
        &self.nu
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    /// The kernel series of the requested kind.
    pub fn kernel<T: Scalar>(&self, kind: KernelKind, order: usize) -> Result<PowerSeries<T>> {
        match kind {
            KernelKind::FunctionItself => self.function_series(order),
            KernelKind::DerivativeZeroKernel => derivative_kernel_series(self, order),
            KernelKind::ConvexityKernel => convexity_kernel_series(self, order),
        }
    }

    /// The kernel whose smallest positive zero is the family's radius
    /// (convexity families) or derivative zero (Struve/Lommel derivative families).
    pub fn primary_kernel_kind(&self) -> KernelKind {
        if self.family.has_convexity_kernel() {
            KernelKind::ConvexityKernel
        } else {
            KernelKind::DerivativeZeroKernel
        }
    }

    /// The normalized function itself (with the leading power of `z` removed).
    pub fn function_series<T: Scalar>(&self, order: usize) -> Result<PowerSeries<T>> {
        let nu = T::from_rational(&self.nu);
        let mu = T::from_rational(&self.mu);
        Ok(match self.family {
            Family::BesselG => bessel_j_series(&nu, order)?,
            Family::BesselH => with_parity(bessel_j_series(&nu, order)?, Parity::General),
            Family::StruveU | Family::StruveDeriv => struve_series(&nu, order)?,
            Family::StruveW => with_parity(struve_series(&nu, order)?, Parity::General),
            Family::StruveCombo => struve_combo_series(&T::from_rational(&self.alpha), &nu, order)?,
            Family::LommelF => lommel_s_series(&mu, order)?,
            Family::LommelL => lommel_l_series(&mu, order)?,
        })
    }

    /// `f'(z)` for the convexity families, as the series with the same
    /// parity convention as the convexity kernel (`1 + z f''/f' = (z f')'/f'`).
    pub fn first_derivative_series<T: Scalar>(&self, order: usize) -> Result<PowerSeries<T>> {
        let nu = T::from_rational(&self.nu);
        let (base, even) = match self.family {
            Family::BesselG => (bessel_j_series(&nu, order)?, true),
            Family::BesselH => (bessel_j_series(&nu, order)?, false),
            Family::StruveU => (struve_series(&nu, order)?, true),
            Family::StruveW => (struve_series(&nu, order)?, false),
            other => {
                return Err(Error::UnsupportedFamily {
                    family: other.name().into(),
                    what: "first derivative series".into(),
                })
            }
        };
        // f = z · Σ c_n w^n with w = z² (even) or z (general).
        let coeffs = base
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| {
                let k = if even { 2 * n + 1 } else { n + 1 };
                T::from_i64(k as i64) * c.clone()
            })
            .collect();
        let parity = if even {
            Parity::EvenInZ
        } else {
            Parity::General
        };
        Ok(PowerSeries::truncated(coeffs, parity))
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        if self.family.uses_mu() {
            parts.push(format!("μ={}", rational_to_string(&self.mu)));
        } else {
            parts.push(format!("ν={}", rational_to_string(&self.nu)));
        }
        if self.family.uses_alpha() {
            parts.push(format!("α={}", rational_to_string(&self.alpha)));
        }
        format!("{}({})", self.family, parts.join(", "))
    }
}

fn with_parity<T: Scalar>(s: PowerSeries<T>, parity: Parity) -> PowerSeries<T> {
    PowerSeries::truncated(s.coeffs().to_vec(), parity)
}

fn is_nonpositive_integer<T: Scalar>(x: &T) -> bool {
    x.to_rational()
        .is_some_and(|q| q.is_integer() && !q.is_positive())
}

/// Normalized Bessel series `2^ν Γ(ν+1) z^{-ν} J_ν(z) = Σ (-1)^n t^n / (4^n n! (ν+1)_n)`, `t = z²`.
pub fn bessel_j_series<T: Scalar>(nu: &T, order: usize) -> Result<PowerSeries<T>> {
    if is_nonpositive_integer(&(nu.clone() + T::one())) {
        return Err(Error::domain("ν ∉ {−1, −2, …} required", format!("{nu:?}")));
    }
    let four = T::from_i64(4);
    Ok(PowerSeries::from_ratio_recurrence(
        T::one(),
        order,
        Parity::EvenInZ,
        |n| {
            let n_t = T::from_i64(n as i64);
            -T::one() / (four.clone() * n_t.clone() * (nu.clone() + n_t))
        },
    ))
}

/// Normalized Struve series `√π 2^ν Γ(ν+3/2) z^{-ν-1} H_ν(z)` in `t = z²`.
pub fn struve_series<T: Scalar>(nu: &T, order: usize) -> Result<PowerSeries<T>> {
    let three_halves = T::from_ratio(3, 2);
    if is_nonpositive_integer(&(nu.clone() + three_halves.clone())) {
        return Err(Error::domain("−ν − 3/2 ∉ ℕ required", format!("{nu:?}")));
    }
    Ok(PowerSeries::from_ratio_recurrence(
        T::one(),
        order,
        Parity::EvenInZ,
        |n| struve_ratio(nu, n),
    ))
}

/// `s_n / s_{n-1} = −1 / (4 (n + 1/2)(ν + n + 1/2))`
fn struve_ratio<T: Scalar>(nu: &T, n: usize) -> T {
    let n_half = T::from_i64(2 * n as i64 + 1) / T::from_i64(2);
    -T::one() / (T::from_i64(4) * n_half.clone() * (nu.clone() + n_half))
}

/// Normalized `α H_ν + z H_ν'` in `t = z²`:
/// `c_n = (−1)^n (2n+ν+α+1) / (4^n (ν+α+1) (3/2)_n (ν+3/2)_n)`.
pub fn struve_combo_series<T: Scalar>(alpha: &T, nu: &T, order: usize) -> Result<PowerSeries<T>> {
    let base = nu.clone() + alpha.clone() + T::one();
    if base.is_zero() {
        return Err(Error::domain(
            "α + ν ≠ −1 required",
            format!("{alpha:?} + {nu:?}"),
        ));
    }
    let weight = |n: usize| T::from_i64(2 * n as i64) + base.clone();
    Ok(PowerSeries::from_ratio_recurrence(
        T::one(),
        order,
        Parity::EvenInZ,
        |n| struve_ratio(nu, n) * weight(n) / weight(n - 1),
    ))
}

/// `((μ+2)/2 + n − 1)((μ+3)/2 + n − 1)` times 4, the Lommel ratio denominator.
fn lommel_ratio<T: Scalar>(mu: &T, n: usize) -> T {
    let two = T::from_i64(2);
    let n_t = T::from_i64(n as i64 - 1);
    let a = (mu.clone() + T::from_i64(2)) / two.clone() + n_t.clone();
    let b = (mu.clone() + T::from_i64(3)) / two + n_t;
    -T::one() / (T::from_i64(4) * a * b)
}

/// Normalized `μ(μ+1) z^{−μ−1/2} s_{μ−1/2,1/2}(z)` in `t = z²`:
/// `c_n = (−1)^n / (4^n ((μ+2)/2)_n ((μ+3)/2)_n)`.
pub fn lommel_s_series<T: Scalar>(mu: &T, order: usize) -> Result<PowerSeries<T>> {
    let two = T::from_i64(2);
    for shift in [2, 3] {
        let a = (mu.clone() + T::from_i64(shift)) / two.clone();
        if is_nonpositive_integer(&a) {
            return Err(Error::domain(
                "(−μ ± 1/2 − 3)/2 ∉ ℕ required",
                format!("{mu:?}"),
            ));
        }
    }
    Ok(PowerSeries::from_ratio_recurrence(
        T::one(),
        order,
        Parity::EvenInZ,
        |n| lommel_ratio(mu, n),
    ))
}

/// Normalized `z s'_{μ−1/2,1/2}(z)` in `t = z²`:
/// `c_n = (−1)^n (2n+μ+1/2) / (4^n (μ+1/2) ((μ+2)/2)_n ((μ+3)/2)_n)`.
pub fn lommel_l_series<T: Scalar>(mu: &T, order: usize) -> Result<PowerSeries<T>> {
    let base = mu.clone() + T::from_ratio(1, 2);
    if base.is_zero() {
        return Err(Error::domain("μ ≠ −1/2 required", format!("{mu:?}")));
    }
    let weight = |n: usize| T::from_i64(2 * n as i64) + base.clone();
    // Domain of the underlying s-series.
    lommel_s_series(mu, 0)?;
    Ok(PowerSeries::from_ratio_recurrence(
        T::one(),
        order,
        Parity::EvenInZ,
        |n| lommel_ratio(mu, n) * weight(n) / weight(n - 1),
    ))
}

/// The convexity kernel `(z f'(z))'` for the four convexity families:
/// `Δ_ν` (bessel_g), `θ_ν` (bessel_h), `Ω_ν` (struve_u), `ψ_ν` (struve_w).
pub fn convexity_kernel_series<T: Scalar>(
    params: &FamilyParams,
    order: usize,
) -> Result<PowerSeries<T>> {
    let nu = T::from_rational(params.nu());
    let (base, even) = match params.family() {
        Family::BesselG => (bessel_j_series(&nu, order)?, true),
        Family::BesselH => (bessel_j_series(&nu, order)?, false),
        Family::StruveU => (struve_series(&nu, order)?, true),
        Family::StruveW => (struve_series(&nu, order)?, false),
        other => {
            return Err(Error::UnsupportedFamily {
                family: other.name().into(),
                what: "convexity kernel".into(),
            })
        }
    };
    let coeffs = base
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let k = if even { 2 * n + 1 } else { n + 1 } as i64;
            T::from_i64(k * k) * c.clone()
        })
        .collect();
    let parity = if even {
        Parity::EvenInZ
    } else {
        Parity::General
    };
    Ok(PowerSeries::truncated(coeffs, parity))
}

/// The normalized series whose positive zeros (in `z`) are the zeros of
/// `α H_ν + z H_ν'` (struve_combo), of `H_ν'` (struve_deriv, α = 0), or of
/// `s'_{μ−1/2,1/2}` (lommel_l, lommel_f).
pub fn derivative_kernel_series<T: Scalar>(
    params: &FamilyParams,
    order: usize,
) -> Result<PowerSeries<T>> {
    let nu = T::from_rational(params.nu());
    match params.family() {
        Family::StruveCombo => struve_combo_series(&T::from_rational(params.alpha()), &nu, order),
        Family::StruveDeriv => struve_combo_series(&T::zero(), &nu, order),
        Family::LommelL | Family::LommelF => lommel_l_series(&T::from_rational(params.mu()), order),
        other => Err(Error::UnsupportedFamily {
            family: other.name().into(),
            what: "derivative kernel".into(),
        }),
    }
}

/// Maclaurin coefficients (in `z`) of the power-normalized function
/// `z · B(z²)^{1/p}` where `B` is the normalized base series and `p` is
/// `ν + 1` (Struve, struve_deriv) or `μ + 1/2` (Lommel, lommel_f).
pub fn power_normalized_maclaurin(params: &FamilyParams, order: usize) -> Result<Vec<Rational>> {
    let (base, p) = match params.family() {
        Family::StruveDeriv => (
            struve_series::<Rational>(params.nu(), order)?,
            params.nu() + Rational::one(),
        ),
        Family::LommelF => (
            lommel_s_series::<Rational>(params.mu(), order)?,
            params.mu() + half(),
        ),
        other => {
            return Err(Error::UnsupportedFamily {
                family: other.name().into(),
                what: "power-normalized Maclaurin series".into(),
            })
        }
    };
    let powered = base.pow_normalized(&p.recip());
    let odd = PowerSeries::truncated(powered.coeffs().to_vec(), Parity::OddInZ);
    Ok(odd.z_coefficients())
}
