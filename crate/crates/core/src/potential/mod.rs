//! Radial potential models and the volume-preserving ellipsoidal deformation.
//!
//! Units follow ħ = 2m = 1 throughout the crate: the radial equation reads
//! `−u″ + V_eff u = E u` and energies carry units of 1/length².

mod config;
mod pchip;
mod problem;

pub use config::PotentialConfig;
pub use pchip::MonotoneCubic;
pub use problem::{Dimension, Problem};

use crate::error::{Error, Result};

/// Default guard on |α| for [`DeformationSpec`].
pub const DEFAULT_ALPHA_GUARD: f64 = 0.2;

/// Value of a potential at a point: either finite or the impenetrable wall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialValue {
    Finite(f64),
    Impenetrable,
}

impl PotentialValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            PotentialValue::Finite(v) => Some(v),
            PotentialValue::Impenetrable => None,
        }
    }

    pub fn is_impenetrable(self) -> bool {
        matches!(self, PotentialValue::Impenetrable)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RadialPotential {
    /// `V(r) = coeff · (r / scale)^beta`.
    PowerLaw { beta: f64, coeff: f64, scale: f64 },
    /// Zero inside `r < radius`, impenetrable from `radius` outwards.
    HardWall { radius: f64 },
    /// Monotone-cubic interpolation of `(r, V)` samples.
    Tabulated(MonotoneCubic),
}

impl RadialPotential {
    pub fn power_law(beta: f64, coeff: f64, scale: f64) -> Result<Self> {
        if !(beta.is_finite() && coeff.is_finite() && scale.is_finite()) {
            return Err(Error::InvalidPotential(
                "non-finite power-law parameter".into(),
            ));
        }
        if beta == 0.0 {
            return Err(Error::SingularBeta(beta));
        }
        if beta == -2.0 {
            return Err(Error::SingularBeta(beta));
        }
        if scale <= 0.0 {
            return Err(Error::InvalidPotential(format!(
                "scale R = {scale} must be positive"
            )));
        }
        if beta > 0.0 && coeff <= 0.0 {
            return Err(Error::InvalidPotential(format!(
                "beta = {beta} > 0 needs a positive (confining) coefficient, got {coeff}"
            )));
        }
        if beta < 0.0 && coeff >= 0.0 {
            return Err(Error::InvalidPotential(format!(
                "beta = {beta} < 0 needs a negative (attractive) coefficient, got {coeff}"
            )));
        }
        Ok(RadialPotential::PowerLaw { beta, coeff, scale })
    }

    /// Isotropic oscillator `V = r²`.
    pub fn oscillator() -> Self {
        RadialPotential::PowerLaw {
            beta: 2.0,
            coeff: 1.0,
            scale: 1.0,
        }
    }

    /// Attractive Coulomb potential `V = −1/r`.
    pub fn coulomb() -> Self {
        RadialPotential::PowerLaw {
            beta: -1.0,
            coeff: -1.0,
            scale: 1.0,
        }
    }

    pub fn hard_wall(radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidPotential(format!(
                "wall radius R = {radius} must be positive"
            )));
        }
        Ok(RadialPotential::HardWall { radius })
    }

    pub fn tabulated(samples: &[(f64, f64)]) -> Result<Self> {
        let (x, y): (Vec<f64>, Vec<f64>) = samples.iter().copied().unzip();
        if x.first().is_some_and(|&r| r < 0.0) {
            return Err(Error::InvalidPotential(
                "first abscissa must be >= 0".into(),
            ));
        }
        Ok(RadialPotential::Tabulated(MonotoneCubic::new(x, y)?))
    }

    pub fn evaluate(&self, r: f64) -> Result<PotentialValue> {
        if r < 0.0 || r.is_nan() {
            return Err(Error::NegativeRadius(r));
        }
        match self {
            RadialPotential::PowerLaw { beta, coeff, scale } => {
                Ok(PotentialValue::Finite(coeff * (r / scale).powf(*beta)))
            }
            RadialPotential::HardWall { radius } => Ok(if r < *radius {
                PotentialValue::Finite(0.0)
            } else {
                PotentialValue::Impenetrable
            }),
            RadialPotential::Tabulated(table) => {
                if r < table.x_min() || r > table.x_max() {
                    return Err(Error::OutOfRange {
                        r,
                        min: table.x_min(),
                        max: table.x_max(),
                    });
                }
                Ok(PotentialValue::Finite(table.eval(r)))
            }
        }
    }

    /// Evaluates the deformed potential `V((x²+y²)/a² + z²/c²)` whose spherical
    /// form is `V((x²+y²+z²)/R²)`, with `R`, `a`, `c` taken from `deformation`.
    pub fn deformed_evaluate(
        &self,
        deformation: &DeformationSpec,
        x: f64,
        y: f64,
        z: f64,
    ) -> Result<PotentialValue> {
        deformation.check_guard()?;
        self.evaluate(deformation.effective_radius(x, y, z))
    }

    /// Power-law exponent β; `+∞` for the hard wall, `None` for tables.
    pub fn power_exponent(&self) -> Option<f64> {
        match self {
            RadialPotential::PowerLaw { beta, .. } => Some(*beta),
            RadialPotential::HardWall { .. } => Some(f64::INFINITY),
            RadialPotential::Tabulated(_) => None,
        }
    }

    /// Characteristic length of the model.
    pub fn length_scale(&self) -> f64 {
        match self {
            RadialPotential::PowerLaw { scale, .. } => *scale,
            RadialPotential::HardWall { radius } => *radius,
            RadialPotential::Tabulated(t) => t.x_max(),
        }
    }

    /// Characteristic energy of the model: `V(R)` for power laws, the lowest
    /// cavity level `(π/R)²` for the hard wall, and the mid-range value for tables.
    pub fn characteristic_energy(&self) -> f64 {
        match self {
            RadialPotential::PowerLaw { coeff, .. } => *coeff,
            RadialPotential::HardWall { radius } => (std::f64::consts::PI / radius).powi(2),
            RadialPotential::Tabulated(t) => {
                let (lo, hi) = min_max(t.values());
                0.5 * (lo + hi)
            }
        }
    }

    /// Infimum of `V` over its domain.
    pub fn min_value(&self) -> f64 {
        match self {
            RadialPotential::PowerLaw { beta, .. } if *beta < 0.0 => f64::NEG_INFINITY,
            RadialPotential::PowerLaw { .. } | RadialPotential::HardWall { .. } => 0.0,
            RadialPotential::Tabulated(t) => min_max(t.values()).0,
        }
    }

    /// Energy above which motion is unbounded, if any.
    pub fn escape_threshold(&self) -> Option<f64> {
        match self {
            RadialPotential::PowerLaw { beta, .. } if *beta < 0.0 => Some(0.0),
            _ => None,
        }
    }

    /// Inner and outer impenetrable boundaries of the radial domain.
    ///
    /// Tabulated potentials are confined to their sample range: a first
    /// abscissa above zero acts as an inner wall and the last abscissa as an
    /// outer wall.
    pub fn walls(&self) -> (Option<f64>, Option<f64>) {
        match self {
            RadialPotential::PowerLaw { .. } => (None, None),
            RadialPotential::HardWall { radius } => (None, Some(*radius)),
            RadialPotential::Tabulated(t) => {
                let inner = (t.x_min() > 0.0).then_some(t.x_min());
                (inner, Some(t.x_max()))
            }
        }
    }

    /// Finite profile used by the solvers inside the walls. The hard wall is
    /// zero up to and including `R`; tables are clamped to their range.
    pub(crate) fn interior_value(&self, r: f64) -> f64 {
        match self {
            RadialPotential::PowerLaw { beta, coeff, scale } => coeff * (r / scale).powf(*beta),
            RadialPotential::HardWall { .. } => 0.0,
            RadialPotential::Tabulated(t) => t.eval(r),
        }
    }
}

fn min_max(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
}

/// Volume-preserving ellipsoidal deformation `a = R(1 − α/3)`, `c = R(1 + 2α/3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformationSpec {
    alpha: f64,
    radius: f64,
    guard: f64,
}

impl DeformationSpec {
    pub fn new(alpha: f64, radius: f64) -> Result<Self> {
        Self::with_guard(alpha, radius, DEFAULT_ALPHA_GUARD)
    }

    pub fn with_guard(alpha: f64, radius: f64, guard: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "reference radius R = {radius} must be positive"
            )));
        }
        if !(guard.is_finite() && guard > 0.0 && guard < 1.5) {
            return Err(Error::InvalidParameter(format!(
                "alpha guard {guard} must lie in (0, 1.5)"
            )));
        }
        let spec = Self {
            alpha,
            radius,
            guard,
        };
        spec.check_guard()?;
        Ok(spec)
    }

    fn check_guard(&self) -> Result<()> {
        check_alpha(self.alpha, self.guard)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Equatorial semi-axis `a`.
    pub fn a(&self) -> f64 {
        self.radius * (1.0 - self.alpha / 3.0)
    }

    /// Polar semi-axis `c`.
    pub fn c(&self) -> f64 {
        self.radius * (1.0 + 2.0 * self.alpha / 3.0)
    }

    /// `a²c / R³`, equal to one up to `O(α²)`.
    pub fn volume_ratio(&self) -> f64 {
        let a = self.a() / self.radius;
        let c = self.c() / self.radius;
        a * a * c
    }

    /// Spherical radius equivalent to the point `(x, y, z)` of the deformed
    /// potential: `R·√((x²+y²)/a² + z²/c²)`.
    pub fn effective_radius(&self, x: f64, y: f64, z: f64) -> f64 {
        let (a, c) = (self.a(), self.c());
        self.radius * ((x * x + y * y) / (a * a) + z * z / (c * c)).sqrt()
    }
}

pub(crate) fn check_alpha(alpha: f64, guard: f64) -> Result<()> {
    if !alpha.is_finite() || alpha.abs() > guard {
        return Err(Error::DeformationGuard {
            alpha: alpha.abs(),
            guard,
        });
    }
    Ok(())
}
