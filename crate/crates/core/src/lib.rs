//! Euler–Rayleigh bounds and certified geometric radii for normalized
//! Bessel, Struve and Lommel functions.

pub mod catalog;
pub mod cli;
pub mod closed_form;
pub mod error;
pub mod geometry;
pub mod rayleigh;
pub mod report;
pub mod scalar;
pub mod series;
pub mod verify;
pub mod zeros;

pub use catalog::{Family, FamilyParams, KernelKind};
pub use closed_form::{ClosedForms, ConstantTable, Surd, TheoremBounds, TheoremId};
pub use error::{Error, Result};
pub use rayleigh::{bound_ladder, power_sums, BoundLadder, RayleighSums};
pub use scalar::{parse_rational, Precision, Rational, Scalar};
pub use series::{Parity, PowerSeries, Tail};
