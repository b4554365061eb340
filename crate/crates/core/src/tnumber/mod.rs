//! The effective quantum number `T = (n + 1/2) + φλ` and everything built on
//! it: the quadrupole factor governing deformation splitting, virial and
//! scaling relations, level enumeration, and fits of φ to spectra.

mod label;
mod levels;
mod scaling;
mod table;

pub use label::StateLabel;
pub use levels::enumerate_levels;
pub use scaling::{
    energy_from_scaling, exponent_for_beta, fit_phi, fit_scaling, PhiFit, ScalingFit,
};
pub use table::{label_fields, Provenance, SpectrumRow, SpectrumTable, CSV_HEADER};

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::potential::{check_alpha, Dimension, DEFAULT_ALPHA_GUARD};

/// Upper end of the accepted φ window.
pub const PHI_MAX: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TParams {
    phi: f64,
    dimension: Dimension,
}

impl TParams {
    pub fn new(phi: f64, dimension: Dimension) -> Result<Self> {
        if !(phi > 0.0 && phi <= PHI_MAX) {
            return Err(Error::InvalidParameter(format!(
                "phi = {phi} outside (0, {PHI_MAX}]"
            )));
        }
        Ok(Self { phi, dimension })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn dimension(&self) -> Dimension {
        self.dimension
    }
}

/// `T = (n + 1/2) + φλ` with `λ = l + 1/2` in 3D and `λ = |m|` in 2D.
pub fn effective_t(state: &StateLabel, params: &TParams) -> Result<f64> {
    let lambda = state.lambda(params.dimension)?;
    Ok(state.n as f64 + 0.5 + params.phi * lambda)
}

/// `f(m, l) = [m² − l(l+1)/3] / [(2l − 1)(2l + 3)]`, exact. `f(0, 0) = 0`.
pub fn quadrupole_factor(m: i32, l: u32) -> Result<Ratio<i64>> {
    if m.unsigned_abs() > l {
        return Err(Error::InvalidState(format!(
            "|m| = {} exceeds l = {l}",
            m.abs()
        )));
    }
    if l == 0 {
        return Ok(Ratio::from_integer(0));
    }
    let (m, l) = (i64::from(m), i64::from(l));
    Ok(Ratio::new(
        3 * m * m - l * (l + 1),
        3 * (2 * l - 1) * (2 * l + 3),
    ))
}

pub fn quadrupole_factor_f64(m: i32, l: u32) -> Result<f64> {
    let f = quadrupole_factor(m, l)?;
    Ok(*f.numer() as f64 / *f.denom() as f64)
}

/// Coefficient convention for the deformation correction of `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeformMode {
    /// `T' = [1 + α f / 2] T`.
    PaperLiteral,
    /// `T' = [1 + 2α f] T`, obtained by composing the energy shift
    /// `4αK f` with the virial and scaling relations.
    #[default]
    DerivedConsistent,
}

impl DeformMode {
    /// Multiplier of `α f` in `T'/T − 1`.
    pub fn coefficient(self) -> f64 {
        match self {
            DeformMode::PaperLiteral => 0.5,
            DeformMode::DerivedConsistent => 2.0,
        }
    }
}

impl fmt::Display for DeformMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeformMode::PaperLiteral => "paper",
            DeformMode::DerivedConsistent => "derived",
        })
    }
}

impl FromStr for DeformMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" | "paper-literal" => Ok(DeformMode::PaperLiteral),
            "derived" | "derived-consistent" => Ok(DeformMode::DerivedConsistent),
            other => Err(Error::InvalidParameter(format!(
                "unknown deformation mode '{other}'"
            ))),
        }
    }
}

/// Effective quantum number of `state` in the deformed potential.
pub fn deformed_t(
    state: &StateLabel,
    params: &TParams,
    alpha: f64,
    mode: DeformMode,
) -> Result<f64> {
    Ok(effective_t(state, params)? + deformed_t_shift(state, params, alpha, mode)?)
}

/// `T′ − T = c·α·f(m, l)·T`, `c` set by `mode`. Computed directly rather than
/// as a difference, so the two modes differ by exactly the factor 4.
pub fn deformed_t_shift(
    state: &StateLabel,
    params: &TParams,
    alpha: f64,
    mode: DeformMode,
) -> Result<f64> {
    check_alpha(alpha, DEFAULT_ALPHA_GUARD)?;
    if params.dimension != Dimension::Three {
        return Err(Error::Dimension(params.dimension.value()));
    }
    let (l, m) = match (state.l, state.m) {
        (Some(l), Some(m)) => (l, m),
        _ => return Err(Error::InvalidState(format!("{state} needs both l and m"))),
    };
    let f = quadrupole_factor_f64(m, l)?;
    let t = effective_t(state, params)?;
    Ok(mode.coefficient() * alpha * f * t)
}

/// Mean kinetic energy `K = βE/(β + 2)` of a power-law potential; `K = E` for
/// the hard wall (`β = +∞`).
pub fn virial_kinetic(energy: f64, beta: f64) -> Result<f64> {
    if beta == f64::INFINITY {
        return Ok(energy);
    }
    if !beta.is_finite() || beta == 0.0 || beta == -2.0 {
        return Err(Error::SingularBeta(beta));
    }
    Ok(beta * energy / (beta + 2.0))
}

/// First-order energy shift `ΔE = 4αK f(m, l)` of a weakly deformed level.
pub fn deformation_energy_shift(kinetic: f64, alpha: f64, m: i32, l: u32) -> Result<f64> {
    check_alpha(alpha, DEFAULT_ALPHA_GUARD)?;
    Ok(4.0 * alpha * kinetic * quadrupole_factor_f64(m, l)?)
}
