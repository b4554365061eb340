//! Exact numerical reference spectra.
//!
//! [`solve_radial`] finds the level with `n` radial nodes of
//! `−u″ + [V + c_D/r²]u = Eu`, `c_D = l(l+1)` in 3D and `m² − ¼` in 2D, by
//! Numerov integration on a logarithmic grid with Sturm node counting, then
//! removes the leading `h⁴` grid error by Richardson extrapolation over two
//! step sizes. Potentials without an outer wall get an outer cut-off that is
//! pushed out until the WKB tail beyond the turning point is below `e^{-28}`.

mod closed_form;
mod numerov;
mod ordering;

pub use closed_form::{
    anisotropic_oscillator_shift, bessel_j, bessel_zero, exact_energy, spherical_bessel_j,
    spherical_bessel_zero,
};
pub use ordering::{kendall_tau_b, ordering_agreement, t_ordering_agreement};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::potential::{Dimension, Problem, RadialPotential};
use crate::tnumber::{Provenance, SpectrumTable, StateLabel};
use numerov::Grid;

/// Innermost grid radius, relative to the potential's length scale.
const R_MIN: f64 = 1e-8;
/// First guess for the outer cut-off, relative to the length scale.
const R_MAX_START: f64 = 8.0;
/// The cut-off is never pushed beyond this many length scales.
const R_MAX_CAP: f64 = 1e7;
/// Required `∫κ dr` between the outer turning point and the cut-off.
const TAIL_ACTION: f64 = 28.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Step in `ln r`; the extrapolated answer also uses `h/2`.
    pub h: f64,
    /// Fixed outer cut-off for potentials without a wall; automatic if `None`.
    pub r_max: Option<f64>,
    /// Relative width at which the eigenvalue bisection stops.
    pub tolerance: f64,
    /// Budget for bracket expansion and bisection, each.
    pub max_iterations: u32,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            h: 1e-3,
            r_max: None,
            tolerance: 1e-10,
            max_iterations: 200,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.h < 0.5) {
            return Err(Error::InvalidParameter(format!(
                "grid step h = {} must lie in (0, 0.5)",
                self.h
            )));
        }
        if let Some(r) = self.r_max {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "r_max = {r} must be positive"
                )));
            }
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1e-2) {
            return Err(Error::InvalidParameter(format!(
                "tolerance {} must lie in (0, 0.01)",
                self.tolerance
            )));
        }
        if self.max_iterations < 10 {
            return Err(Error::InvalidParameter(
                "max_iterations must be at least 10".into(),
            ));
        }
        Ok(())
    }
}

/// An eigenstate on the finer of the two grids.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution {
    /// Extrapolated eigenvalue.
    pub energy: f64,
    /// Eigenvalue of the fine grid alone.
    pub grid_energy: f64,
    /// Sign changes of `u` strictly inside the domain.
    pub nodes: u32,
    pub r: Vec<f64>,
    /// `u(r) = r^{(D−1)/2} ψ(r)`, normalized to `∫u² dr = 1`.
    pub u: Vec<f64>,
    log_step: f64,
}

impl RadialSolution {
    /// `∫ g(r) u(r)² dr`.
    pub fn expectation(&self, g: impl Fn(f64) -> f64) -> f64 {
        trapezoid_log(&self.r, self.log_step, |i| {
            g(self.r[i]) * self.u[i] * self.u[i]
        })
    }

    /// Mean kinetic energy `E − ⟨V⟩` (centrifugal part included).
    pub fn mean_kinetic(&self, potential: &RadialPotential) -> f64 {
        self.energy - self.expectation(|r| potential.interior_value(r))
    }
}

fn trapezoid_log(r: &[f64], h: f64, g: impl Fn(usize) -> f64) -> f64 {
    let last = r.len() - 1;
    let body: f64 = (1..last).map(|i| g(i) * r[i]).sum();
    h * (body + 0.5 * (g(0) * r[0] + g(last) * r[last]))
}

/// Everything about a solve that does not depend on the grid step.
struct Setup<'a> {
    potential: &'a RadialPotential,
    nu: f64,
    r_start: f64,
    inner_wall: bool,
    outer_wall: Option<f64>,
    scale: f64,
}

impl<'a> Setup<'a> {
    fn new(problem: &'a Problem, angular: u32) -> Self {
        let potential = &problem.potential;
        let nu = match problem.dimension {
            Dimension::Three => angular as f64 + 0.5,
            Dimension::Two => angular as f64,
        };
        let (inner, outer_wall) = potential.walls();
        let length = potential.length_scale();
        let (r_start, inner_wall) = match inner {
            Some(r0) => (r0, true),
            None => (R_MIN * length, false),
        };
        let scale = potential
            .characteristic_energy()
            .abs()
            .max(1.0 / (length * length));
        Self {
            potential,
            nu,
            r_start,
            inner_wall,
            outer_wall,
            scale,
        }
    }

    fn grid(&self, r_end: f64, h: f64, refine: usize) -> Grid {
        let segments = ((r_end / self.r_start).ln() / h).ceil().max(16.0) as usize;
        Grid::new(
            self.potential,
            self.nu,
            self.r_start,
            r_end,
            segments * refine,
            self.inner_wall,
        )
    }
}

/// Radius beyond which the WKB amplitude of a level at `energy` has decayed
/// by `e^{-TAIL_ACTION}`; `None` if the level is not below the escape threshold.
fn tail_radius(potential: &RadialPotential, energy: f64) -> Option<f64> {
    let RadialPotential::PowerLaw { beta, coeff, scale } = *potential else {
        return None;
    };
    if beta < 0.0 && energy >= 0.0 {
        return None;
    }
    let turning = if energy > 0.0 || beta < 0.0 {
        scale * (energy / coeff).powf(1.0 / beta)
    } else {
        scale
    };
    let mut r = turning.max(R_MIN * scale);
    let mut action = 0.0;
    for _ in 0..100_000 {
        if action >= TAIL_ACTION {
            return Some(r);
        }
        let dr = 0.02 * r;
        let mid = r + 0.5 * dr;
        action += (potential.interior_value(mid) - energy).max(0.0).sqrt() * dr;
        r += dr;
    }
    None
}

/// Grid eigenvalue with `n` nodes, the outer cut-off it was found on, and
/// the step used.
fn coarse_solve(setup: &Setup, n: u32, config: &SolverConfig) -> Result<(f64, f64)> {
    let solve = |r_end: f64| {
        setup.grid(r_end, config.h, 1).eigenvalue(
            n,
            setup.scale,
            config.tolerance * 1e-2,
            config.max_iterations,
        )
    };
    if let Some(wall) = setup.outer_wall {
        return Ok((solve(wall)?, wall));
    }
    let threshold = setup.potential.escape_threshold();
    let no_bound = || Error::NoBoundState {
        nodes: n,
        lambda: setup.nu,
    };
    if let Some(r_max) = config.r_max {
        let e = solve(r_max)?;
        if threshold.is_some_and(|t| e >= t) {
            return Err(no_bound());
        }
        return Ok((e, r_max));
    }
    let length = setup.potential.length_scale();
    let mut r_max = R_MAX_START * length;
    loop {
        let e = solve(r_max)?;
        match tail_radius(setup.potential, e) {
            Some(needed) if needed <= r_max => return Ok((e, r_max)),
            Some(needed) => r_max = needed.max(1.25 * r_max),
            None => r_max *= 2.0,
        }
        if r_max > R_MAX_CAP * length {
            return Err(no_bound());
        }
    }
}

/// Energy of the level with `n` radial nodes and angular number `angular`
/// (`l` in 3D, `|m|` in 2D).
pub fn solve_radial(problem: &Problem, n: u32, angular: u32, config: &SolverConfig) -> Result<f64> {
    solve_radial_state(problem, n, angular, config).map(|s| s.energy)
}

/// As [`solve_radial`], also returning the fine-grid wavefunction.
pub fn solve_radial_state(
    problem: &Problem,
    n: u32,
    angular: u32,
    config: &SolverConfig,
) -> Result<RadialSolution> {
    config.validate()?;
    let setup = Setup::new(problem, angular);
    let (coarse, r_end) = coarse_solve(&setup, n, config)?;
    let fine_grid = setup.grid(r_end, config.h, 2);
    let fine = fine_grid.eigenvalue(
        n,
        setup.scale,
        config.tolerance * 1e-2,
        config.max_iterations,
    )?;
    let energy = fine + (fine - coarse) / 15.0;

    let w = fine_grid.integrate(fine);
    let r = fine_grid.r.clone();
    let mut u: Vec<f64> = r.iter().zip(&w).map(|(r, w)| r.sqrt() * w).collect();
    let log_step = (r[r.len() - 1] / r[0]).ln() / (r.len() - 1) as f64;
    let norm = trapezoid_log(&r, log_step, |i| u[i] * u[i]).sqrt();
    u.iter_mut().for_each(|v| *v /= norm);
    let interior = &u[1..u.len() - 1];
    let nodes = interior
        .windows(2)
        .filter(|p| (p[0] < 0.0) != (p[1] < 0.0))
        .count() as u32;
    Ok(RadialSolution {
        energy,
        grid_energy: fine,
        nodes,
        r,
        u,
        log_step,
    })
}

/// All levels with `n ≤ n_max` and angular number `≤ l_max` (`|m|` in 2D),
/// sorted by energy. Solves run in parallel on the current rayon pool.
pub fn spectrum(
    problem: &Problem,
    n_max: u32,
    l_max: u32,
    config: &SolverConfig,
) -> Result<SpectrumTable> {
    let states: Vec<(u32, u32)> = (0..=n_max)
        .flat_map(|n| (0..=l_max).map(move |a| (n, a)))
        .collect();
    let pairs = states
        .par_iter()
        .map(|&(n, a)| {
            let label = match problem.dimension {
                Dimension::Three => StateLabel::radial(n, a),
                Dimension::Two => StateLabel::planar(n, a as i32),
            };
            solve_radial(problem, n, a, config).map(|e| (label, e))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumTable::from_pairs(pairs, Provenance::Oracle)?.sorted_by_energy())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        (a / b - 1.0).abs()
    }

    #[test]
    fn spec_examples() {
        let cfg = SolverConfig::default();
        let cavity = Problem::three_d(RadialPotential::hard_wall(1.0).unwrap());
        assert!(rel(solve_radial(&cavity, 0, 0, &cfg).unwrap(), PI * PI) < 1e-9);
        let osc = Problem::three_d(RadialPotential::oscillator());
        for (n, l, e) in [(0, 0, 3.0), (0, 1, 5.0), (1, 0, 7.0)] {
            assert!(rel(solve_radial(&osc, n, l, &cfg).unwrap(), e) < 1e-9);
        }
        let h = Problem::three_d(RadialPotential::coulomb());
        assert!(rel(solve_radial(&h, 0, 0, &cfg).unwrap(), -0.25) < 1e-9);
        let disk = Problem::two_d(RadialPotential::hard_wall(1.0).unwrap());
        assert!(rel(solve_radial(&disk, 0, 0, &cfg).unwrap(), 5.783185962946784) < 1e-9);
    }

    #[test]
    fn node_counts() {
        let cfg = SolverConfig::default();
        let quartic = Problem::three_d(RadialPotential::power_law(4.0, 1.0, 1.0).unwrap());
        for n in 0..5 {
            let s = solve_radial_state(&quartic, n, 1, &cfg).unwrap();
            assert_eq!(s.nodes, n);
            assert!((s.expectation(|_| 1.0) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn virial_from_wavefunction() {
        // ⟨K⟩ = βE/(β+2) for a power law
        let cfg = SolverConfig::default();
        let osc = Problem::three_d(RadialPotential::oscillator());
        let s = solve_radial_state(&osc, 1, 2, &cfg).unwrap();
        assert!(rel(s.mean_kinetic(&osc.potential), 5.5) < 1e-6);
        let wall = Problem::three_d(RadialPotential::hard_wall(1.0).unwrap());
        let s = solve_radial_state(&wall, 0, 1, &cfg).unwrap();
        assert_eq!(s.mean_kinetic(&wall.potential), s.energy);
    }

    #[test]
    fn coulomb_threshold_and_config() {
        let h = Problem::three_d(RadialPotential::coulomb());
        let boxed = SolverConfig {
            r_max: Some(5.0),
            ..SolverConfig::default()
        };
        assert!(matches!(
            solve_radial(&h, 3, 0, &boxed),
            Err(Error::NoBoundState { .. })
        ));
        let bad = SolverConfig {
            h: 0.0,
            ..SolverConfig::default()
        };
        assert!(solve_radial(&h, 0, 0, &bad).is_err());
    }

    #[test]
    fn spectrum_is_sorted() {
        let osc = Problem::three_d(RadialPotential::oscillator());
        let t = spectrum(&osc, 2, 2, &SolverConfig::default()).unwrap();
        assert_eq!(t.len(), 9);
        for row in t.rows() {
            let exact = (4 * row.label.n + 2 * row.label.l.unwrap() + 3) as f64;
            assert!(rel(row.energy, exact) < 1e-8);
        }
        assert!(t.rows().windows(2).all(|w| w[0].energy <= w[1].energy));
        assert_eq!(
            spectrum(&osc, 0, 0, &SolverConfig::default())
                .unwrap()
                .len(),
            1
        );
    }
}
