//! Exact computations around a general four-form in eight variables.
//!
//! The crate builds, over ℚ or a prime field, the Coble quartic in ℙ⁷ and its Kummer
//! singular locus, the Coble quadric in G(2,8) with its singular locus D, the abelian
//! threefold in Fl(1,7;8), and checks the two self-duality statements pointwise. It also
//! carries a Bott–Borel–Weil calculator and a torus-localization integrator for the
//! cohomological and enumerative counts attached to these varieties.
//!
//! Layering, bottom to top: [`field`], [`linalg`], [`poly`] → [`exterior`] → [`theta`] →
//! [`strata`] → [`duality`], [`covariants`]; [`rep`] and [`schubert`] are independent of
//! the four-form and only share the scalar layer.

pub mod covariants;
pub mod duality;
pub mod exterior;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod rep;
pub mod schubert;
pub mod strata;
pub mod theta;

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Shapes or degrees that do not fit together.
    #[error("dimension error: {0}")]
    Dimension(String),
    /// A documented precondition does not hold for the given input.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The computation cannot decide for this input; resampling is the usual remedy.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
