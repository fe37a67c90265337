//! Exact spectral analysis of trees.
//!
//! Everything is computed with arbitrary-precision integers and rationals:
//! characteristic polynomials, root counts in rational intervals and
//! integrality verdicts are certificates rather than floating-point
//! estimates.

pub mod poly;
pub mod reduction;
pub mod search;
pub mod spectra;
pub mod tree;
pub mod verifier;

pub use poly::{IntPoly, PolyError, Rational, SpectrumSummary};
pub use spectra::{SpectraError, TreeSpectrum};
pub use tree::{AttachSpec, CanonicalCode, Tree, TreeError};
