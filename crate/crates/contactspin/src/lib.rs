//! Exact-arithmetic computational engine for 5-dimensional almost contact
//! metric geometry on invariant coframes.
//!
//! The crate constructs invariant coframe algebras (structure constants on an
//! orthonormal coframe `e1..e5`, optionally extended by an auxiliary
//! connection 1-form `A`), computes their contact data, metric connections
//! with skew-symmetric torsion, curvature and Ricci tensors, and solves for
//! parallel spinor fields in the 4-dimensional spin representation. All
//! geometric quantities are exact: coefficients live in arbitrary-precision
//! rationals, spinor algebra in Gaussian rationals, and floating point enters
//! only in numeric kernel-rank fallbacks.
//!
//! Modules mirror the pipeline:
//!
//! * [`exterior_core`] — exterior algebra, Hodge duality, form inner products;
//! * [`clifford_spin`] — the 4×4 spin representation, Clifford action of
//!   forms, the Σ⁺/Σ⁻/Σ² splitting and Lie-algebra membership tests;
//! * [`coframe_models`] — structure definitions, builtin model families,
//!   gauge substitution and frame changes;
//! * [`contact_structures`] — fundamental form, Nijenhuis tensor, Lee form,
//!   classification flags, torsion form, codifferential;
//! * [`connection_curvature`] — Levi-Civita and torsion connections,
//!   curvature, Ricci, curvature operator;
//! * [`string_spinor_suite`] — parallel-spinor kernels, torsion spectra,
//!   dilation solvability, conformal transformations, pointwise identities;
//! * [`cli_reporter`] — deterministic verification reports and suite runner.

pub mod cli_reporter;
pub mod clifford_spin;
pub mod coframe_models;
pub mod connection_curvature;
pub mod contact_structures;
pub mod exterior_core;
pub mod string_spinor_suite;

use num_bigint::BigInt;

/// Exact rational scalar used for every geometric coefficient.
pub type Rat = num_rational::BigRational;

/// Exact Gaussian-rational scalar used by the spin representation.
pub type CRat = num_complex::Complex<Rat>;

/// Shorthand for `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer as an exact rational.
pub fn ratz(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Errors shared by the whole engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("coframe size mismatch: {left} vs {right}")]
    CoframeMismatch { left: u8, right: u8 },
    #[error("generator index {index} outside coframe of size {n}")]
    IndexOutOfRange { index: u8, n: u8 },
    #[error("multi-index {0:?} is not strictly increasing")]
    NonIncreasingIndex(Vec<u8>),
    #[error("{mode} Hodge dual undefined for forms containing generator {generator}")]
    HodgeDomain { mode: &'static str, generator: u8 },
    #[error("inner product needs equal pure degrees, got a degree-mixed or mismatched pair")]
    MixedDegree,
    #[error("operation needs a form without auxiliary-generator component ({context})")]
    AuxiliaryComponent { context: &'static str },
    #[error("coframe is not integrable: d(d e{generator}) = {residual} != 0")]
    NotIntegrable { generator: u8, residual: String },
    #[error("auxiliary part of the metric connection is overdetermined at pair ({i},{j})")]
    ConnectionOverdetermined { i: u8, j: u8 },
    #[error("Nijenhuis tensor is not totally skew; torsion connection undefined")]
    NijenhuisNotSkew,
    #[error("the Reeb field is not Killing (ξ⌟dF ≠ 0); torsion form undefined")]
    ReebNotKilling,
    #[error("gauge substitution A := {lambda}*e5 is inconsistent with dA")]
    GaugeInconsistent { lambda: String },
    #[error("frame change is singular")]
    FrameChangeSingular,
    #[error("frame change needs irrational scale ratio at constant ({i},{j},{k})")]
    FrameChangeIrrational { i: u8, j: u8, k: u8 },
    #[error("form must annihilate the Reeb direction ({context})")]
    ReebComponent { context: &'static str },
    #[error("definition is malformed: {0}")]
    InvalidDefinition(String),
    #[error("rational coefficient does not fit the serialization range: {0}")]
    CoefficientRange(String),
    #[error("spinor system has no structure definition support: {0}")]
    Unsupported(&'static str),
    #[error("report file I/O failed: {0}")]
    ReportIo(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
