//! Bound-state spectra of central potentials through the effective quantum
//! number `T = (n + ½) + φλ`.
//!
//! - [`potential`]: radial models and the ellipsoidal deformation.
//! - [`semiclassical`]: the action `Φ(E)`, solving `Φ(E) = T`, estimating φ.
//! - [`tnumber`]: `T` itself, deformation splitting, scaling laws, fits.
//! - [`oracle`]: exact reference spectra (Numerov, closed forms).
//! - [`dots`]: quantum-dot composite spectra.
//! - [`report`]: the command layer behind the `tnum` binary.
//!
//! Units: ħ = 2m = 1, so energies are in 1/length².

pub mod dots;
pub mod error;
pub mod format;
pub mod oracle;
pub mod potential;
pub mod quadrature;
pub mod report;
pub mod roots;
pub mod semiclassical;
pub mod tnumber;

pub use error::{Error, Result};
