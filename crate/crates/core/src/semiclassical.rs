//! Modified semiclassical quantization.
//!
//! The action `Φ(E) = (1/π) ∫ √(E − V) dr` is taken over the classically
//! allowed region of the bare potential (no centrifugal term), and bound-state
//! energies solve `Φ(E) = T` for the effective quantum number `T`. The angular
//! weight φ is estimated from the ratio
//! `φ² = [∫√(E−V) dr]³ / (2π² ∫ w(r) (E−V)^{3/2} dr)` with `w(r) = r²`.
//!
//! Both integrands vanish like a square root at turning points and may diverge
//! like `r^{-1/2}` at a Coulomb origin; [`integrate_sqrt_endpoints`] maps each
//! end through `r = end ± t²`, which removes both behaviours.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::potential::{Problem, RadialPotential};
use crate::quadrature::integrate_sqrt_endpoints;
use crate::roots::brent;

/// Radial weight used in the denominator of the φ estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhiWeight {
    /// `r²` in every dimension.
    #[default]
    Literal,
    /// `r^{D−1}`: `r²` in 3D, `r` in 2D.
    Dimension,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiclassicalConfig {
    /// Relative tolerance of every quadrature.
    pub quad_rel_tol: f64,
    /// Bound on `|Φ(E) − T|` accepted by [`Quantizer::solve_energy`].
    pub root_tol: f64,
    pub phi_weight: PhiWeight,
}

impl Default for SemiclassicalConfig {
    fn default() -> Self {
        Self {
            quad_rel_tol: 1e-12,
            root_tol: 1e-9,
            phi_weight: PhiWeight::Literal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionResult {
    pub phi_of_e: f64,
    pub turning_points: (f64, f64),
}

/// Semiclassical operations bound to one problem and configuration.
#[derive(Debug, Clone, Copy)]
pub struct Quantizer<'a> {
    problem: &'a Problem,
    config: SemiclassicalConfig,
}

impl<'a> Quantizer<'a> {
    pub fn new(problem: &'a Problem) -> Self {
        Self::with_config(problem, SemiclassicalConfig::default())
    }

    pub fn with_config(problem: &'a Problem, config: SemiclassicalConfig) -> Self {
        Self { problem, config }
    }

    pub fn config(&self) -> SemiclassicalConfig {
        self.config
    }

    fn potential(&self) -> &RadialPotential {
        &self.problem.potential
    }

    fn check_supported(&self) -> Result<()> {
        if let RadialPotential::PowerLaw { beta, .. } = self.potential() {
            if *beta <= -2.0 {
                return Err(Error::UnsupportedPotential(format!(
                    "V ~ r^{beta} diverges too fast at the origin for the action integrals"
                )));
            }
        }
        Ok(())
    }

    /// Maximal intervals of `{r > 0 : V(r) < E}` inside the potential's walls.
    pub fn allowed_intervals(&self, energy: f64) -> Result<Vec<(f64, f64)>> {
        self.check_supported()?;
        if !energy.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "energy {energy} is not finite"
            )));
        }
        if let Some(threshold) = self.potential().escape_threshold() {
            if energy >= threshold {
                return Err(Error::Unbound { energy, threshold });
            }
        }
        let intervals = match self.potential() {
            RadialPotential::PowerLaw { beta, coeff, scale } => {
                let ratio = energy / coeff;
                if ratio <= 0.0 {
                    vec![]
                } else {
                    vec![(0.0, scale * ratio.powf(1.0 / beta))]
                }
            }
            RadialPotential::HardWall { radius } => {
                if energy > 0.0 {
                    vec![(0.0, *radius)]
                } else {
                    vec![]
                }
            }
            RadialPotential::Tabulated(table) => tabulated_intervals(table, energy),
        };
        if intervals.is_empty() {
            return Err(Error::NoClassicalMotion(energy));
        }
        Ok(intervals)
    }

    /// Infimum and supremum of the classically allowed region.
    pub fn turning_points(&self, energy: f64) -> Result<(f64, f64)> {
        let intervals = self.allowed_intervals(energy)?;
        Ok((intervals[0].0, intervals[intervals.len() - 1].1))
    }

    fn integrate_allowed<F>(&self, intervals: &[(f64, f64)], f: F) -> Result<f64>
    where
        F: Fn(f64) -> f64,
    {
        intervals.iter().try_fold(0.0, |acc, &(a, b)| {
            Ok(acc + integrate_sqrt_endpoints(&f, a, b, self.config.quad_rel_tol)?.value)
        })
    }

    fn kinetic(&self, energy: f64, r: f64) -> f64 {
        (energy - self.potential().interior_value(r)).max(0.0)
    }

    pub fn action(&self, energy: f64) -> Result<ActionResult> {
        let intervals = self.allowed_intervals(energy)?;
        let integral = self.integrate_allowed(&intervals, |r| self.kinetic(energy, r).sqrt())?;
        Ok(ActionResult {
            phi_of_e: integral / PI,
            turning_points: (intervals[0].0, intervals[intervals.len() - 1].1),
        })
    }

    /// `Φ(E)`, with zero below the bottom of the well.
    fn action_or_zero(&self, energy: f64) -> Result<f64> {
        match self.action(energy) {
            Ok(a) => Ok(a.phi_of_e),
            Err(Error::NoClassicalMotion(_)) => Ok(0.0),
            Err(e) => Err(e),
        }
    }

    /// Solves `Φ(E) = T` for the bound-state energy.
    pub fn solve_energy(&self, t: f64) -> Result<f64> {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidParameter(format!("T = {t} must be positive")));
        }
        self.check_supported()?;
        let (lo, hi) = self.bracket(t)?;
        let energy = brent(
            |e| Ok(self.action_or_zero(e)? - t),
            lo,
            hi,
            0.0,
            4.0 * f64::EPSILON,
            1e-3 * self.config.root_tol,
            200,
        )?;
        let residual = (self.action_or_zero(energy)? - t).abs();
        if residual > self.config.root_tol {
            return Err(Error::NonConvergence(format!(
                "|Phi(E) - T| = {residual:e} at E = {energy} exceeds {}",
                self.config.root_tol
            )));
        }
        Ok(energy)
    }

    /// Energy bracket `[lo, hi]` with `Φ(lo) <= T <= Φ(hi)`, grown geometrically
    /// from the characteristic energy of the potential.
    fn bracket(&self, t: f64) -> Result<(f64, f64)> {
        const MAX_STEPS: usize = 200;
        let potential = self.potential();
        let floor = potential.min_value();
        let mut step = potential.characteristic_energy().abs();
        if let RadialPotential::Tabulated(table) = potential {
            let vs = table.values();
            let spread = vs.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - floor;
            let r = table.x_max() - table.x_min();
            step = spread.max((PI / r).powi(2));
        }
        if !(step.is_finite() && step > 0.0) {
            step = 1.0;
        }
        let unreachable = |reason: &str| Error::Unreachable {
            target: t,
            reason: reason.to_string(),
        };

        match potential.escape_threshold() {
            None => {
                let mut lo = floor;
                for _ in 0..MAX_STEPS {
                    let hi = floor + step;
                    if self.action_or_zero(hi)? >= t {
                        return Ok((lo, hi));
                    }
                    lo = hi;
                    step *= 2.0;
                }
                Err(unreachable("no upper energy bracket found"))
            }
            Some(ceiling) => {
                let mut gap = step;
                if self.action_or_zero(ceiling - gap)? < t {
                    let mut lo = ceiling - gap;
                    for _ in 0..MAX_STEPS {
                        gap *= 0.5;
                        let hi = ceiling - gap;
                        if hi >= ceiling {
                            break;
                        }
                        if self.action_or_zero(hi)? >= t {
                            return Ok((lo, hi));
                        }
                        lo = hi;
                    }
                    Err(unreachable(
                        "action stays below T up to the escape threshold",
                    ))
                } else {
                    let mut hi = ceiling - gap;
                    for _ in 0..MAX_STEPS {
                        gap *= 2.0;
                        let lo = ceiling - gap;
                        if self.action_or_zero(lo)? < t {
                            return Ok((lo, hi));
                        }
                        hi = lo;
                    }
                    Err(unreachable("no lower energy bracket found"))
                }
            }
        }
    }

    /// Estimates the angular weight φ at energy `E`.
    pub fn estimate_phi(&self, energy: f64) -> Result<f64> {
        let intervals = self.allowed_intervals(energy)?;
        let linear = self.integrate_allowed(&intervals, |r| self.kinetic(energy, r).sqrt())?;
        let d = self.problem.dimension.value() as i32;
        let weight = |r: f64| match self.config.phi_weight {
            PhiWeight::Literal => r * r,
            PhiWeight::Dimension => r.powi(d - 1),
        };
        let moment = self.integrate_allowed(&intervals, |r| {
            weight(r) * self.kinetic(energy, r).powf(1.5)
        })?;
        if !(moment > 0.0) {
            return Err(Error::NonConvergence(format!(
                "vanishing moment integral at E = {energy}"
            )));
        }
        Ok((linear.powi(3) / (2.0 * PI * PI * moment)).sqrt())
    }
}

fn tabulated_intervals(table: &crate::potential::MonotoneCubic, energy: f64) -> Vec<(f64, f64)> {
    let x = table.knots();
    let y = table.values();
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut push = |a: f64, b: f64| {
        if b <= a {
            return;
        }
        match out.last_mut() {
            Some(last) if last.1 == a => last.1 = b,
            _ => out.push((a, b)),
        }
    };
    for k in 0..x.len() - 1 {
        let (a, b) = (x[k], x[k + 1]);
        let (va, vb) = (y[k] < energy, y[k + 1] < energy);
        match (va, vb) {
            (true, true) => push(a, b),
            (false, false) => {}
            // Each segment is monotone, so there is exactly one crossing.
            _ => {
                let crossing = segment_crossing(table, k, energy);
                if va {
                    push(a, crossing)
                } else {
                    push(crossing, b)
                }
            }
        }
    }
    out
}

fn segment_crossing(table: &crate::potential::MonotoneCubic, k: usize, energy: f64) -> f64 {
    let x = table.knots();
    let (mut lo, mut hi) = (x[k], x[k + 1]);
    let below_at_lo = table.values()[k] < energy;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (table.eval_in_segment(k, mid) < energy) == below_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn turning_points(problem: &Problem, energy: f64) -> Result<(f64, f64)> {
    Quantizer::new(problem).turning_points(energy)
}

pub fn action(problem: &Problem, energy: f64) -> Result<ActionResult> {
    Quantizer::new(problem).action(energy)
}

pub fn solve_energy(problem: &Problem, t: f64) -> Result<f64> {
    Quantizer::new(problem).solve_energy(t)
}

pub fn estimate_phi(problem: &Problem, energy: f64) -> Result<f64> {
    Quantizer::new(problem).estimate_phi(energy)
}
