//! Closed-form Euler–Rayleigh sums and bounds for the nine theorems.
//!
//! Each explicit bound is kept as a [`Surd`] `c · r^{1/m}` with rational `c`
//! and `r`, so the closed forms can be compared exactly against the
//! generic ladder built from [`crate::rayleigh::power_sums`].
//!
//! Every integer polynomial and scale factor lives in a [`ConstantTable`].
//! The table can be perturbed entry by entry, which is how the verifier is
//! shown to catch a single wrong constant.
//!
//! The `δ₃` denominator carries `(α+ν+1)³` (a square does not match the
//! series for α + ν ≠ 0), and the `ρ₄` denominator scale is 256.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::catalog::{Family, FamilyParams, KernelKind};
use crate::error::{Error, Result};
use crate::rayleigh::RayleighSums;
use crate::scalar::{rational_powi, Rational, Scalar};
use crate::series::Parity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
}

/// What the theorem's functional-analytic content is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    /// Only zero bounds (no radius statement).
    None,
    Starlikeness,
    Convexity,
}

/// Which quantity a theorem's displayed bounds refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// Bounds on `x²` where `x` is the smallest positive zero in `z`.
    SquaredZero,
    /// Bounds on the radius (or zero) itself.
    Radius,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::T6,
        TheoremId::T7,
        TheoremId::T8,
        TheoremId::T9,
    ];

    /// Theorems with explicit closed-form bounds.
    pub const WITH_BOUNDS: [TheoremId; 7] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T6,
        TheoremId::T7,
        TheoremId::T8,
        TheoremId::T9,
    ];

    pub fn family(self) -> Family {
        match self {
            TheoremId::T1 => Family::StruveCombo,
            TheoremId::T2 | TheoremId::T4 => Family::StruveDeriv,
            TheoremId::T3 => Family::LommelL,
            TheoremId::T5 => Family::LommelF,
            TheoremId::T6 => Family::BesselG,
            TheoremId::T7 => Family::BesselH,
            TheoremId::T8 => Family::StruveU,
            TheoremId::T9 => Family::StruveW,
        }
    }

    pub fn geometry(self) -> Geometry {
        match self {
            TheoremId::T1 | TheoremId::T2 | TheoremId::T3 => Geometry::None,
            TheoremId::T4 | TheoremId::T5 => Geometry::Starlikeness,
            _ => Geometry::Convexity,
        }
    }

    pub fn kernel_kind(self) -> KernelKind {
        match self.geometry() {
            Geometry::Convexity => KernelKind::ConvexityKernel,
            _ => KernelKind::DerivativeZeroKernel,
        }
    }

    pub fn target(self) -> Target {
        match self {
            TheoremId::T1 | TheoremId::T2 | TheoremId::T3 => Target::SquaredZero,
            _ => Target::Radius,
        }
    }

    /// Theorem whose displayed bounds apply to this theorem's radius.
    pub fn bounds_source(self) -> Option<TheoremId> {
        match self {
            TheoremId::T4 => Some(TheoremId::T2),
            TheoremId::T5 => Some(TheoremId::T3),
            other => Some(other),
        }
    }

    /// Order up to which the Euler–Rayleigh sums are displayed.
    pub fn displayed_sum_order(self) -> usize {
        match self {
            TheoremId::T1 | TheoremId::T2 | TheoremId::T3 => 3,
            TheoremId::T4 | TheoremId::T5 => 0,
            _ => 4,
        }
    }

    pub fn parameter_name(self) -> &'static str {
        if self.family().uses_mu() {
            "mu"
        } else {
            "nu"
        }
    }

    /// Builds parameters for this theorem, enforcing its hypothesis.
    ///
    /// `value` is ν (or μ for T3/T5); `alpha` is only used by T1.
    pub fn params(self, value: Rational, alpha: Rational) -> Result<FamilyParams> {
        let zero = Rational::zero();
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        match self {
            TheoremId::T1 => FamilyParams::struve_combo(alpha, value),
            TheoremId::T2 => {
                if value.abs() >= half {
                    return Err(Error::domain(
                        "|ν| < 1/2 required",
                        crate::scalar::rational_to_string(&value),
                    ));
                }
                FamilyParams::new(Family::StruveDeriv, value, alpha, zero)
            }
            TheoremId::T3 | TheoremId::T5 => {
                FamilyParams::new(self.family(), zero.clone(), alpha, value)
            }
            _ => FamilyParams::new(self.family(), value, alpha, zero),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        let digit = t.strip_prefix('T').unwrap_or(&t);
        TheoremId::ALL
            .into_iter()
            .find(|id| format!("{id:?}")[1..] == *digit)
            .ok_or_else(|| Error::Usage(format!("unknown theorem `{s}` (expected T1..T9)")))
    }
}

/// `coeff · radicand^{1/index}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Surd<T> {
    pub coeff: T,
    pub radicand: T,
    pub index: u32,
}

impl<T: Scalar> Surd<T> {
    pub fn rational(value: T) -> Self {
        Surd {
            coeff: value,
            radicand: T::one(),
            index: 1,
        }
    }

    pub fn root(radicand: T, index: u32) -> Self {
        Surd {
            coeff: T::one(),
            radicand,
            index,
        }
    }

    pub fn scaled(coeff: T, radicand: T, index: u32) -> Self {
        Surd {
            coeff,
            radicand,
            index,
        }
    }

    pub fn value(&self) -> f64 {
        let r = self.radicand.to_f64();
        let root = if self.index == 1 {
            r
        } else if self.index % 2 == 1 && r < 0.0 {
            -(-r).powf(1.0 / self.index as f64)
        } else {
            r.powf(1.0 / self.index as f64)
        };
        self.coeff.to_f64() * root
    }

    /// Square root of the surd (doubles the root index).
    pub fn sqrt(&self) -> Self {
        Surd {
            coeff: T::one(),
            radicand: power(&self.coeff, self.index) * self.radicand.clone(),
            index: 2 * self.index,
        }
    }

    /// Equality: exact for rationals, relative `rel_tol` for floats.
    pub fn matches(&self, other: &Self, rel_tol: f64) -> bool {
        if T::EXACT {
            let a = to_rational_surd(self);
            let b = to_rational_surd(other);
            match (a, b) {
                (Some(a), Some(b)) => exact_surd_eq(&a, &b),
                _ => false,
            }
        } else {
            let (a, b) = (self.value(), other.value());
            (a - b).abs() <= rel_tol * a.abs().max(b.abs())
        }
    }
}

fn power<T: Scalar>(x: &T, n: u32) -> T {
    (0..n).fold(T::one(), |acc, _| acc * x.clone())
}

fn to_rational_surd<T: Scalar>(s: &Surd<T>) -> Option<Surd<Rational>> {
    Some(Surd {
        coeff: s.coeff.to_rational()?,
        radicand: s.radicand.to_rational()?,
        index: s.index,
    })
}

fn exact_surd_eq(a: &Surd<Rational>, b: &Surd<Rational>) -> bool {
    let sign = |s: &Surd<Rational>| -> i8 {
        let c = if s.coeff.is_zero() {
            0
        } else if s.coeff.is_positive() {
            1
        } else {
            -1
        };
        let r = if s.radicand.is_zero() {
            0
        } else if s.radicand.is_positive() || s.index.is_multiple_of(2) {
            1
        } else {
            -1
        };
        c * r
    };
    if sign(a) != sign(b) {
        return false;
    }
    if sign(a) == 0 {
        return true;
    }
    let l = (a.index as u64).lcm(&(b.index as u64)) as u32;
    let pow_of = |s: &Surd<Rational>| {
        rational_powi(&s.coeff, l as i32) * rational_powi(&s.radicand, (l / s.index) as i32)
    };
    pow_of(a).abs() == pow_of(b).abs()
}

/// Layout of a stored constant vector.
#[derive(Debug, Clone, PartialEq)]
pub enum Layout {
    /// Coefficients of a polynomial in one parameter, lowest degree first.
    Univariate,
    /// Coefficients of `α^i ν^j` for the listed `(i, j)` exponents.
    Bivariate(&'static [(u32, u32)]),
    /// Independent scale factors.
    Scalars,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedConstant {
    pub name: &'static str,
    pub values: Vec<i64>,
    pub layout: Layout,
}

/// Exponents `(α, ν)` of the κ₁ monomials.
const KAPPA1_MONOMIALS: &[(u32, u32)] = &[
    (2, 1),
    (2, 0),
    (1, 2),
    (1, 1),
    (1, 0),
    (0, 3),
    (0, 2),
    (0, 1),
    (0, 0),
];

/// Exponents `(α, ν)` of the κ₂ monomials.
const KAPPA2_MONOMIALS: &[(u32, u32)] = &[
    (3, 2),
    (3, 1),
    (3, 0),
    (2, 3),
    (2, 2),
    (2, 1),
    (2, 0),
    (1, 4),
    (1, 3),
    (1, 2),
    (1, 1),
    (1, 0),
    (0, 5),
    (0, 4),
    (0, 3),
    (0, 2),
    (0, 1),
    (0, 0),
];

/// All integer constants that enter the closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantTable {
    entries: Vec<NamedConstant>,
}

impl Default for ConstantTable {
    fn default() -> Self {
        use Layout::*;
        let c = |name: &'static str, values: &[i64], layout: Layout| NamedConstant {
            name,
            values: values.to_vec(),
            layout,
        };
        ConstantTable {
            entries: vec![
                // T1 (struve_combo)
                c(
                    "kappa1",
                    &[-2, 7, -4, 2, 42, -2, -5, 72, 135],
                    Bivariate(KAPPA1_MONOMIALS),
                ),
                c(
                    "kappa2",
                    &[
                        -4, -96, 145, -12, -324, -429, 1305, -12, -360, -1689, 1170, 6291, -4,
                        -132, -1115, 621, 12339, 14931,
                    ],
                    Bivariate(KAPPA2_MONOMIALS),
                ),
                c("delta_scale", &[3, 45, 945], Scalars),
                c("delta3_quadratic", &[35, 24, 4], Univariate),
                // T2 (struve_deriv): κ₁, κ₂ at α = 0
                c("t2_kappa1", &[135, 72, -5, -2], Univariate),
                c(
                    "t2_kappa2",
                    &[14931, 12339, 621, -1115, -132, -4],
                    Univariate,
                ),
                // T3 (lommel_l)
                c("eta1_den", &[6, 17, 11, 2], Univariate),
                c("eta2_num", &[392, 295, 19, -24, -4], Univariate),
                c(
                    "eta3_num",
                    &[72384, 85834, 23551, -7672, -4731, -554, 44, 8],
                    Univariate,
                ),
                // T6 (Δ_ν)
                c("rho1_num", &[9], Scalars),
                c("rho_scale", &[4, 16, 32, 256], Scalars),
                c("rho2_num", &[137, 56], Univariate),
                c("rho3_num", &[1693, 1172, 208], Univariate),
                c(
                    "rho4_num",
                    &[223803, 312197, 161424, 36768, 3104],
                    Univariate,
                ),
                // T7 (θ_ν)
                c("varrho_scale", &[1, 16, 32, 256], Scalars),
                c("varrho2_num", &[23, 7], Univariate),
                c("varrho3_num", &[115, 60, 9], Univariate),
                c("varrho4_num", &[6195, 7221, 3136, 621, 47], Univariate),
                // T8 (Ω_ν)
                c("chi1_num", &[3], Scalars),
                c("chi_scale", &[1, 3, 5, 315], Scalars),
                c("chi2_num", &[105, 34], Univariate),
                c("chi3_num", &[3213, 1824, 268], Univariate),
                c(
                    "nu_star",
                    &[24017715, 27626796, 11855904, 2256464, 160336],
                    Univariate,
                ),
                c("t8_upper1_num", &[135, 144, 36], Univariate),
                // T9 (ψ_ν)
                c("phi_num_scale", &[4, 2, 4, 2], Scalars),
                c("phi_scale", &[3, 45, 945, 14175], Scalars),
                c("phi2_num", &[119, 26], Univariate),
                c("phi3_num", &[8665, 3396, 404], Univariate),
                c(
                    "nu_double_star",
                    &[11828151, 10793332, 3695776, 588848, 36368],
                    Univariate,
                ),
            ],
        }
    }
}

impl ConstantTable {
    pub fn entries(&self) -> &[NamedConstant] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> &NamedConstant {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .unwrap_or_else(|| panic!("no constant named {name}"))
    }

    /// A copy with `values[index]` of `name` replaced.
    pub fn perturbed(&self, name: &str, index: usize, value: i64) -> Result<Self> {
        let mut out = self.clone();
        let entry = out
            .entries
            .iter_mut()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::Usage(format!("no stored constant named `{name}`")))?;
        let slot = entry
            .values
            .get_mut(index)
            .ok_or_else(|| Error::Usage(format!("constant `{name}` has no index {index}")))?;
        *slot = value;
        Ok(out)
    }

    fn scalar<T: Scalar>(&self, name: &str, i: usize) -> T {
        T::from_i64(self.get(name).values[i])
    }

    /// Horner evaluation of a univariate entry.
    fn poly<T: Scalar>(&self, name: &str, x: &T) -> T {
        let e = self.get(name);
        debug_assert_eq!(e.layout, Layout::Univariate);
        e.values
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * x.clone() + T::from_i64(c))
    }

    fn bivariate<T: Scalar>(&self, name: &str, alpha: &T, nu: &T) -> T {
        let e = self.get(name);
        let Layout::Bivariate(monomials) = e.layout else {
            panic!("{name} is not bivariate");
        };
        e.values
            .iter()
            .zip(monomials.iter())
            .fold(T::zero(), |acc, (&c, &(i, j))| {
                acc + T::from_i64(c) * power(alpha, i) * power(nu, j)
            })
    }

    pub fn kappa1<T: Scalar>(&self, alpha: &T, nu: &T) -> T {
        self.bivariate("kappa1", alpha, nu)
    }

    pub fn kappa2<T: Scalar>(&self, alpha: &T, nu: &T) -> T {
        self.bivariate("kappa2", alpha, nu)
    }

    pub fn nu_star<T: Scalar>(&self, nu: &T) -> T {
        self.poly("nu_star", nu)
    }

    pub fn nu_double_star<T: Scalar>(&self, nu: &T) -> T {
        self.poly("nu_double_star", nu)
    }
}

pub fn kappa1<T: Scalar>(alpha: &T, nu: &T) -> T {
    ConstantTable::default().kappa1(alpha, nu)
}

pub fn kappa2<T: Scalar>(alpha: &T, nu: &T) -> T {
    ConstantTable::default().kappa2(alpha, nu)
}

pub fn nu_star<T: Scalar>(nu: &T) -> T {
    ConstantTable::default().nu_star(nu)
}

pub fn nu_double_star<T: Scalar>(nu: &T) -> T {
    ConstantTable::default().nu_double_star(nu)
}

/// The displayed bounds of one theorem at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremBounds<T> {
    pub theorem: TheoremId,
    pub lowers: Vec<Surd<T>>,
    pub uppers: Vec<Surd<T>>,
    pub target: Target,
}

impl<T: Scalar> TheoremBounds<T> {
    pub fn lower_values(&self) -> Vec<f64> {
        self.lowers.iter().map(Surd::value).collect()
    }

    pub fn upper_values(&self) -> Vec<f64> {
        self.uppers.iter().map(Surd::value).collect()
    }

    /// Bounds converted to the `z` variable (square roots for squared targets).
    pub fn lower_values_in_z(&self) -> Vec<f64> {
        self.convert(self.lower_values())
    }

    pub fn upper_values_in_z(&self) -> Vec<f64> {
        self.convert(self.upper_values())
    }

    fn convert(&self, v: Vec<f64>) -> Vec<f64> {
        match self.target {
            Target::Radius => v,
            Target::SquaredZero => v.into_iter().map(|x| x.max(0.0).sqrt()).collect(),
        }
    }

    pub fn best_lower_in_z(&self) -> f64 {
        self.lower_values_in_z()
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn best_upper_in_z(&self) -> f64 {
        self.upper_values_in_z()
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }
}

fn lin<T: Scalar>(a: i64, b: i64, x: &T) -> T {
    T::from_i64(a) * x.clone() + T::from_i64(b)
}

/// Closed forms evaluated against a particular constant table.
#[derive(Debug, Clone, Default)]
pub struct ClosedForms {
    table: ConstantTable,
}

impl ClosedForms {
    pub fn new(table: ConstantTable) -> Self {
        ClosedForms { table }
    }

    pub fn table(&self) -> &ConstantTable {
        &self.table
    }

    fn check(&self, theorem: TheoremId, params: &FamilyParams) -> Result<()> {
        if params.family() != theorem.family() {
            return Err(Error::UnsupportedFamily {
                family: params.family().name().into(),
                what: format!("theorem {theorem}"),
            });
        }
        // Scale factors divide; a zero one (only reachable by perturbation) is an error, not a panic.
        if let Some(e) = self
            .table
            .entries()
            .iter()
            .find(|e| e.layout == Layout::Scalars && e.values.contains(&0))
        {
            return Err(Error::Usage(format!(
                "stored constant `{}` has a zero scale",
                e.name
            )));
        }
        Ok(())
    }

    /// Displayed Euler–Rayleigh sums (`δ_k`, `η_k`, `ρ_k`, `ϱ_k`, `χ_k`, `φ_k`).
    pub fn proof_sums<T: Scalar>(
        &self,
        theorem: TheoremId,
        params: &FamilyParams,
    ) -> Result<RayleighSums<T>> {
        self.check(theorem, params)?;
        let t = &self.table;
        let nu = T::from_rational(params.nu());
        let mu = T::from_rational(params.mu());
        let one = T::one();
        let (sums, parity) = match theorem {
            TheoremId::T1 | TheoremId::T2 => {
                let alpha = T::from_rational(params.alpha());
                let (k1, k2) = if theorem == TheoremId::T1 {
                    (t.kappa1(&alpha, &nu), t.kappa2(&alpha, &nu))
                } else {
                    (t.poly("t2_kappa1", &nu), t.poly("t2_kappa2", &nu))
                };
                let a = alpha.clone() + nu.clone() + one.clone();
                let b = lin(2, 3, &nu);
                let d1 = (alpha.clone() + nu.clone() + T::from_i64(3))
                    / (t.scalar::<T>("delta_scale", 0) * b.clone() * a.clone());
                let d2 = k1
                    / (t.scalar::<T>("delta_scale", 1)
                        * power(&b, 2)
                        * lin(2, 5, &nu)
                        * power(&a, 2));
                let d3 = k2
                    / (t.scalar::<T>("delta_scale", 2)
                        * power(&b, 3)
                        * t.poly("delta3_quadratic", &nu)
                        * power(&a, 3));
                (vec![d1, d2, d3], Parity::EvenInZ)
            }
            TheoremId::T3 => {
                let m = |k: i64| mu.clone() + T::from_i64(k);
                let tm1 = lin(2, 1, &mu);
                let e1 = lin(2, 5, &mu) / t.poly("eta1_den", &mu);
                let e2 = t.poly("eta2_num", &mu)
                    / (power(&m(2), 2) * power(&m(3), 2) * m(4) * m(5) * power(&tm1, 2));
                let e3 = t.poly("eta3_num", &mu)
                    / (power(&m(2), 3)
                        * power(&m(3), 3)
                        * m(4)
                        * m(5)
                        * m(6)
                        * m(7)
                        * power(&tm1, 3));
                (vec![e1, e2, e3], Parity::EvenInZ)
            }
            TheoremId::T6 | TheoremId::T7 => {
                let n = |k: i64| nu.clone() + T::from_i64(k);
                let (scale, first, p2, p3, p4, parity) = if theorem == TheoremId::T6 {
                    (
                        "rho_scale",
                        t.scalar::<T>("rho1_num", 0),
                        "rho2_num",
                        "rho3_num",
                        "rho4_num",
                        Parity::EvenInZ,
                    )
                } else {
                    (
                        "varrho_scale",
                        one.clone(),
                        "varrho2_num",
                        "varrho3_num",
                        "varrho4_num",
                        Parity::General,
                    )
                };
                let s1 = first / (t.scalar::<T>(scale, 0) * n(1));
                let s2 = t.poly(p2, &nu) / (t.scalar::<T>(scale, 1) * power(&n(1), 2) * n(2));
                let s3 =
                    t.poly(p3, &nu) / (t.scalar::<T>(scale, 2) * power(&n(1), 3) * n(2) * n(3));
                let s4 = t.poly(p4, &nu)
                    / (t.scalar::<T>(scale, 3) * power(&n(1), 4) * power(&n(2), 2) * n(3) * n(4));
                (vec![s1, s2, s3, s4], parity)
            }
            TheoremId::T8 => {
                let b = |k: i64| lin(2, k, &nu);
                let x1 = t.scalar::<T>("chi1_num", 0) / (t.scalar::<T>("chi_scale", 0) * b(3));
                let x2 = t.poly("chi2_num", &nu)
                    / (t.scalar::<T>("chi_scale", 1) * power(&b(3), 2) * b(5));
                let x3 = t.poly("chi3_num", &nu)
                    / (t.scalar::<T>("chi_scale", 2) * power(&b(3), 3) * b(5) * b(7));
                let x4 = t.nu_star(&nu)
                    / (t.scalar::<T>("chi_scale", 3)
                        * power(&b(3), 4)
                        * power(&b(5), 2)
                        * b(7)
                        * b(9));
                (vec![x1, x2, x3, x4], Parity::EvenInZ)
            }
            TheoremId::T9 => {
                let b = |k: i64| lin(2, k, &nu);
                let num = |i: usize| t.scalar::<T>("phi_num_scale", i);
                let den = |i: usize| t.scalar::<T>("phi_scale", i);
                let f1 = num(0) / (den(0) * b(3));
                let f2 = num(1) * t.poly("phi2_num", &nu) / (den(1) * power(&b(3), 2) * b(5));
                let f3 =
                    num(2) * t.poly("phi3_num", &nu) / (den(2) * power(&b(3), 3) * b(5) * b(7));
                let f4 = num(3) * t.nu_double_star(&nu)
                    / (den(3) * power(&b(3), 4) * power(&b(5), 2) * b(7) * b(9));
                (vec![f1, f2, f3, f4], Parity::General)
            }
            TheoremId::T4 | TheoremId::T5 => {
                return Err(Error::UnsupportedFamily {
                    family: params.family().name().into(),
                    what: format!("displayed sums of theorem {theorem}"),
                })
            }
        };
        Ok(RayleighSums::new(sums, parity))
    }

    /// Every displayed lower and upper bound of `theorem` at `params`.
    pub fn theorem_bounds<T: Scalar>(
        &self,
        theorem: TheoremId,
        params: &FamilyParams,
    ) -> Result<TheoremBounds<T>> {
        self.check(theorem, params)?;
        let t = &self.table;
        let nu = T::from_rational(params.nu());
        let mu = T::from_rational(params.mu());
        let i = |k: i64| T::from_i64(k);
        let (lowers, uppers) = match theorem {
            TheoremId::T1 | TheoremId::T2 => {
                let alpha = T::from_rational(params.alpha());
                let (k1, k2) = if theorem == TheoremId::T1 {
                    (t.kappa1(&alpha, &nu), t.kappa2(&alpha, &nu))
                } else {
                    (t.poly("t2_kappa1", &nu), t.poly("t2_kappa2", &nu))
                };
                let a = alpha.clone() + nu.clone() + i(1);
                let a3 = alpha.clone() + nu.clone() + i(3);
                let b = |k: i64| lin(2, k, &nu);
                let lead = i(3) * b(3) * a.clone();
                (
                    vec![
                        Surd::rational(lead.clone() / a3.clone()),
                        Surd::scaled(lead.clone(), i(5) * b(5) / k1.clone(), 2),
                        Surd::scaled(lead, i(35) * b(5) * b(7) / k2.clone(), 3),
                    ],
                    vec![
                        Surd::rational(i(15) * b(3) * b(5) * a.clone() * a3 / k1.clone()),
                        Surd::rational(i(21) * b(3) * b(7) * a * k1 / k2),
                    ],
                )
            }
            TheoremId::T3 => {
                let m = |k: i64| mu.clone() + i(k);
                let p = t.poly("eta2_num", &mu);
                let q = t.poly("eta3_num", &mu);
                let lead = m(2) * m(3) * lin(2, 1, &mu);
                (
                    vec![
                        Surd::rational(lead.clone() / lin(2, 5, &mu)),
                        Surd::scaled(lead.clone(), m(4) * m(5) / p.clone(), 2),
                        Surd::scaled(lead, m(4) * m(5) * m(6) * m(7) / q.clone(), 3),
                    ],
                    vec![
                        Surd::rational(
                            m(2) * m(3) * m(4) * m(5) * lin(2, 1, &mu) * lin(2, 5, &mu) / p.clone(),
                        ),
                        Surd::rational(m(2) * m(3) * m(6) * m(7) * lin(2, 1, &mu) * p / q),
                    ],
                )
            }
            TheoremId::T6 => {
                let n = |k: i64| nu.clone() + i(k);
                let r2 = t.poly("rho2_num", &nu);
                let r3 = t.poly("rho3_num", &nu);
                let r4 = t.poly("rho4_num", &nu);
                (
                    vec![
                        Surd::scaled(T::from_ratio(2, 3), n(1), 2),
                        Surd::scaled(i(2), power(&n(1), 2) * n(2) / r2.clone(), 4),
                        Surd::root(i(32) * power(&n(1), 3) * n(2) * n(3) / r3.clone(), 6),
                    ],
                    vec![
                        Surd::scaled(i(6), n(1) * n(2) / r2.clone(), 2),
                        Surd::root(i(2) * r2 * n(1) * n(3) / r3.clone(), 2),
                        Surd::scaled(i(2), i(2) * n(1) * n(2) * n(4) * r3 / r4, 2),
                    ],
                )
            }
            TheoremId::T7 => {
                let n = |k: i64| nu.clone() + i(k);
                let v2 = t.poly("varrho2_num", &nu);
                let v3 = t.poly("varrho3_num", &nu);
                let v4 = t.poly("varrho4_num", &nu);
                (
                    vec![
                        Surd::rational(n(1)),
                        Surd::root(i(16) * power(&n(1), 2) * n(2) / v2.clone(), 2),
                        Surd::root(i(32) * power(&n(1), 3) * n(2) * n(3) / v3.clone(), 3),
                    ],
                    vec![
                        Surd::rational(i(16) * n(1) * n(2) / v2.clone()),
                        Surd::rational(i(2) * n(1) * n(3) * v2 / v3.clone()),
                        Surd::rational(i(8) * n(1) * n(2) * n(4) * v3 / v4),
                    ],
                )
            }
            TheoremId::T8 => {
                let b = |k: i64| lin(2, k, &nu);
                let x2 = t.poly("chi2_num", &nu);
                let x3 = t.poly("chi3_num", &nu);
                let star = t.nu_star(&nu);
                (
                    vec![
                        Surd::root(b(3) / i(3), 2),
                        Surd::root(i(3) * power(&b(3), 2) * b(5) / x2.clone(), 4),
                        Surd::root(i(5) * power(&b(3), 3) * b(5) * b(7) / x3.clone(), 6),
                    ],
                    vec![
                        Surd::root(t.poly("t8_upper1_num", &nu) / x2.clone(), 2),
                        Surd::root(i(5) * b(3) * b(7) * x2 / (i(3) * x3.clone()), 2),
                        Surd::scaled(i(3), i(7) * b(3) * b(5) * b(9) * x3 / star, 2),
                    ],
                )
            }
            TheoremId::T9 => {
                let b = |k: i64| lin(2, k, &nu);
                let f2 = t.poly("phi2_num", &nu);
                let f3 = t.poly("phi3_num", &nu);
                let dstar = t.nu_double_star(&nu);
                (
                    vec![
                        Surd::rational(i(3) * b(3) / i(4)),
                        Surd::root(i(45) * power(&b(3), 2) * b(5) / (i(2) * f2.clone()), 2),
                        Surd::root(
                            i(945) * power(&b(3), 3) * b(5) * b(7) / (i(4) * f3.clone()),
                            3,
                        ),
                    ],
                    vec![
                        Surd::rational(i(30) * b(3) * b(5) / f2.clone()),
                        Surd::rational(i(21) * b(3) * b(7) * f2 / (i(2) * f3.clone())),
                        Surd::rational(i(30) * b(3) * b(5) * b(9) * f3 / dstar),
                    ],
                )
            }
            TheoremId::T4 | TheoremId::T5 => {
                return Err(Error::UnsupportedFamily {
                    family: params.family().name().into(),
                    what: format!("closed-form bounds of theorem {theorem}"),
                })
            }
        };
        Ok(TheoremBounds {
            theorem,
            lowers,
            uppers,
            target: theorem.target(),
        })
    }
}

/// Bounds with the default constants.
pub fn theorem_bounds<T: Scalar>(
    theorem: TheoremId,
    params: &FamilyParams,
) -> Result<TheoremBounds<T>> {
    ClosedForms::default().theorem_bounds(theorem, params)
}

/// Displayed sums with the default constants.
pub fn proof_sums<T: Scalar>(theorem: TheoremId, params: &FamilyParams) -> Result<RayleighSums<T>> {
    ClosedForms::default().proof_sums(theorem, params)
}

/// The generic ladder expressed as surds in the theorem's target variable:
/// `S_k^{−1/k}` and `S_k/S_{k+1}`, square-rooted when the theorem bounds a
/// radius of an even kernel.
pub fn generic_surds<T: Scalar>(
    sums: &RayleighSums<T>,
    target: Target,
) -> (Vec<Surd<T>>, Vec<Surd<T>>) {
    let to_z = target == Target::Radius && sums.parity() != Parity::General;
    let s = sums.sums();
    let mut lowers = Vec::new();
    let mut uppers = Vec::new();
    for k in 1..s.len() {
        let lower = Surd::root(T::one() / s[k - 1].clone(), k as u32);
        let upper = Surd::rational(s[k - 1].clone() / s[k].clone());
        lowers.push(if to_z { lower.sqrt() } else { lower });
        uppers.push(if to_z { upper.sqrt() } else { upper });
    }
    (lowers, uppers)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn kappa_constants() {
        assert_eq!(kappa1(&q(0, 1), &q(0, 1)), q(135, 1));
        assert_eq!(kappa2(&q(0, 1), &q(0, 1)), q(14931, 1));
        assert_eq!(kappa1(&q(1, 1), &q(0, 1)), q(184, 1));
    }

    #[test]
    fn nu_star_constants() {
        assert_eq!(nu_star(&q(0, 1)), q(24017715, 1));
        assert_eq!(nu_double_star(&q(0, 1)), q(11828151, 1));
        let nu = q(-1, 2);
        let monomial = |c: &[i64]| {
            c.iter().enumerate().fold(q(0, 1), |acc, (k, &ck)| {
                acc + q(ck, 1) * rational_powi(&nu, k as i32)
            })
        };
        let table = ConstantTable::default();
        assert_eq!(nu_star(&nu), monomial(&table.get("nu_star").values));
        assert_eq!(
            nu_double_star(&nu),
            monomial(&table.get("nu_double_star").values)
        );
    }

    #[test]
    fn displayed_sum_examples() {
        let p = FamilyParams::struve_u(q(1, 2)).unwrap();
        let chi: RayleighSums<Rational> = proof_sums(TheoremId::T8, &p).unwrap();
        assert_eq!(chi.get(1).unwrap(), &q(3, 4));
        let p = FamilyParams::struve_w(q(0, 1)).unwrap();
        let phi: RayleighSums<Rational> = proof_sums(TheoremId::T9, &p).unwrap();
        assert_eq!(phi.get(2).unwrap(), &q(238, 2025));
        let p = FamilyParams::struve_combo(q(0, 1), q(0, 1)).unwrap();
        let delta: RayleighSums<Rational> = proof_sums(TheoremId::T1, &p).unwrap();
        assert_eq!(delta.get(1).unwrap(), &q(1, 3));
        assert_eq!(delta.get(2).unwrap(), &q(1, 15));
    }

    #[test]
    fn theorem_bound_examples() {
        let p = FamilyParams::bessel_h(q(0, 1)).unwrap();
        let b: TheoremBounds<Rational> = theorem_bounds(TheoremId::T7, &p).unwrap();
        assert!(b.lowers[0].matches(&Surd::rational(q(1, 1)), 0.0));
        assert!(b.uppers[0].matches(&Surd::rational(q(32, 23)), 0.0));

        let p = FamilyParams::bessel_g(q(0, 1)).unwrap();
        let b: TheoremBounds<Rational> = theorem_bounds(TheoremId::T6, &p).unwrap();
        assert!(b.lowers[0].matches(&Surd::rational(q(2, 3)), 0.0));
        assert!(b.uppers[0].matches(&Surd::scaled(q(6, 1), q(2, 137), 2), 0.0));

        let p = FamilyParams::struve_w(q(1, 2)).unwrap();
        let b: TheoremBounds<Rational> = theorem_bounds(TheoremId::T9, &p).unwrap();
        assert!(b.lowers[0].matches(&Surd::rational(q(3, 1)), 0.0));
        assert!(b.uppers[0].matches(&Surd::rational(q(60, 11)), 0.0));
    }

    #[test]
    fn surd_equality_is_exact() {
        let a = Surd::scaled(q(2, 1), q(3, 1), 2); // 2√3 = √12
        let b = Surd::root(q(12, 1), 2);
        let c = Surd::root(q(144, 1), 4);
        assert!(a.matches(&b, 0.0));
        assert!(a.matches(&c, 0.0));
        assert!(!a.matches(&Surd::root(q(13, 1), 2), 0.0));
        assert!(!a.matches(&Surd::scaled(q(-2, 1), q(3, 1), 2), 0.0));
        assert!((a.value() - 12f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn perturbation_changes_only_one_entry() {
        let base = ConstantTable::default();
        let bad = base.perturbed("kappa1", 8, 134).unwrap();
        assert_eq!(bad.kappa1(&q(0, 1), &q(0, 1)), q(134, 1));
        assert_eq!(bad.get("kappa2"), base.get("kappa2"));
        assert!(base.perturbed("kappa1", 99, 1).is_err());
        assert!(base.perturbed("kappa9", 0, 1).is_err());
    }

    #[test]
    fn theorem_ids_parse_and_map() {
        assert_eq!("t6".parse::<TheoremId>().unwrap(), TheoremId::T6);
        assert_eq!("T1".parse::<TheoremId>().unwrap(), TheoremId::T1);
        assert!("T10".parse::<TheoremId>().is_err());
        assert!(TheoremId::T2.params(q(1, 2), q(0, 1)).is_err());
        assert!(TheoremId::T4.params(q(1, 2), q(0, 1)).is_ok());
        assert!(TheoremId::T3.params(q(0, 1), q(0, 1)).is_err());
    }

    fn sample_points(theorem: TheoremId) -> Vec<(Rational, Rational)> {
        let zero = q(0, 1);
        match theorem {
            TheoremId::T1 => vec![
                (q(0, 1), q(0, 1)),
                (q(1, 3), q(1, 1)),
                (q(-1, 4), q(-1, 2)),
                (q(2, 5), q(3, 2)),
            ],
            TheoremId::T2 => vec![
                (q(0, 1), zero.clone()),
                (q(-1, 3), zero.clone()),
                (q(2, 5), zero),
            ],
            TheoremId::T3 => vec![
                (q(1, 2), zero.clone()),
                (q(-1, 4), zero.clone()),
                (q(9, 10), zero),
            ],
            TheoremId::T8 | TheoremId::T9 => {
                vec![
                    (q(-1, 3), zero.clone()),
                    (q(0, 1), zero.clone()),
                    (q(1, 2), zero),
                ]
            }
            _ => vec![
                (q(-1, 2), zero.clone()),
                (q(0, 1), zero.clone()),
                (q(7, 3), zero),
            ],
        }
    }

    #[test]
    fn displayed_forms_agree_with_generic_ladder() {
        for theorem in TheoremId::WITH_BOUNDS {
            for (value, alpha) in sample_points(theorem) {
                let p = theorem.params(value.clone(), alpha).unwrap();
                let kernel: crate::series::PowerSeries<Rational> =
                    p.kernel(theorem.kernel_kind(), 12).unwrap();
                let generic = crate::rayleigh::power_sums(&kernel, 4).unwrap();
                let shown: RayleighSums<Rational> = proof_sums(theorem, &p).unwrap();
                for k in 1..=shown.len() {
                    assert_eq!(shown.get(k), generic.get(k), "{theorem} {value} S_{k}");
                }
                let (lo, up) = generic_surds(&generic, theorem.target());
                let b: TheoremBounds<Rational> = theorem_bounds(theorem, &p).unwrap();
                for (i, l) in b.lowers.iter().enumerate() {
                    assert!(l.matches(&lo[i], 0.0), "{theorem} {value} lower {}", i + 1);
                }
                for (i, u) in b.uppers.iter().enumerate() {
                    assert!(u.matches(&up[i], 0.0), "{theorem} {value} upper {}", i + 1);
                }
            }
        }
    }

    #[test]
    fn delta3_needs_cubed_denominator() {
        let (alpha, nu) = (q(1, 1), q(0, 1));
        let p = FamilyParams::struve_combo(alpha.clone(), nu.clone()).unwrap();
        let kernel: crate::series::PowerSeries<Rational> =
            p.kernel(KernelKind::DerivativeZeroKernel, 8).unwrap();
        let generic = crate::rayleigh::power_sums(&kernel, 3).unwrap();
        let a = &alpha + &nu + q(1, 1);
        let squared = kappa2(&alpha, &nu) / (q(945, 1) * q(27, 1) * q(35, 1) * &a * &a);
        assert_ne!(generic.get(3).unwrap(), &squared);
        assert_eq!(generic.get(3).unwrap(), &(squared / a));
    }
}
