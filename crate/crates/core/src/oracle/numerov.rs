//! Numerov integration on a logarithmic grid.
//!
//! With `r = eˣ` and `u = √r·w` the radial equation `−u″ + [V + (ν² − ¼)/r²]u = Eu`
//! becomes `w″ = [ν² + r²(V − E)] w`, free of the centrifugal singularity: the
//! regular solution starts as `w ∝ e^{νx}`. Dirichlet conditions hold at both
//! grid ends, so the number of sign changes of `w` counts the eigenvalues
//! below `E` (Sturm), and bisection on that count brackets any level.

use crate::error::{Error, Result};
use crate::potential::RadialPotential;

const RESCALE_ABOVE: f64 = 1e150;

pub(crate) struct Grid {
    h: f64,
    /// `w` at the first two points.
    start: (f64, f64),
    pub(crate) r: Vec<f64>,
    r2: Vec<f64>,
    /// `ν² + r²V(r)`; the energy enters as `q = q0 − E r²`.
    q0: Vec<f64>,
}

impl Grid {
    /// `segments` equal log steps from `r_start` to `r_end`.
    pub(crate) fn new(
        potential: &RadialPotential,
        nu: f64,
        r_start: f64,
        r_end: f64,
        segments: usize,
        inner_wall: bool,
    ) -> Self {
        let (x0, x1) = (r_start.ln(), r_end.ln());
        let h = (x1 - x0) / segments as f64;
        let r: Vec<f64> = (0..=segments)
            .map(|i| match i {
                0 => r_start,
                i if i == segments => r_end,
                i => (x0 + i as f64 * h).exp(),
            })
            .collect();
        let r2: Vec<f64> = r.iter().map(|r| r * r).collect();
        let q0 = r
            .iter()
            .zip(&r2)
            .map(|(&r, &r2)| nu * nu + r2 * potential.interior_value(r))
            .collect();
        let start = if inner_wall {
            (0.0, 1.0)
        } else {
            let growth = (nu * (r[1] / r[0]).ln()).exp();
            (
                1.0,
                growth * core_series(potential, nu, r[1]) / core_series(potential, nu, r[0]),
            )
        };
        Self {
            h,
            start,
            r,
            r2,
            q0,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.r.len()
    }

    /// Lowest `V + ν²/r²` on the grid: no level lies below it.
    pub(crate) fn floor_energy(&self) -> f64 {
        self.q0
            .iter()
            .zip(&self.r2)
            .map(|(q, r2)| q / r2)
            .fold(f64::INFINITY, f64::min)
    }

    fn q(&self, i: usize, energy: f64) -> f64 {
        self.q0[i] - energy * self.r2[i]
    }

    fn f(&self, i: usize, energy: f64) -> f64 {
        1.0 - self.h * self.h / 12.0 * self.q(i, energy)
    }

    /// Sign changes of `w` over the whole grid, endpoint included.
    pub(crate) fn count_nodes(&self, energy: f64) -> u32 {
        let mut nodes = 0;
        let (w0, w1) = self.start;
        let mut negative = w1 < 0.0;
        let mut march = March::new(self, energy, 0, w0, w1);
        for i in 1..self.len() - 1 {
            let w = march.step(self, energy, i, i + 1);
            if (w < 0.0) != negative {
                nodes += 1;
                negative = w < 0.0;
            }
        }
        nodes
    }

    /// The solution at `energy`, integrated outward up to the last
    /// classically allowed point and inward from the outer boundary beyond
    /// it, so the decaying tail is not swamped by the growing one.
    pub(crate) fn integrate(&self, energy: f64) -> Vec<f64> {
        let last = self.len() - 1;
        let mut w = vec![0.0; self.len()];
        (w[0], w[1]) = self.start;
        let mut march = March::new(self, energy, 0, w[0], w[1]);
        for i in 1..last {
            w[i + 1] = march.step(self, energy, i, i + 1);
            if march.rescaled {
                w[..=i].iter_mut().for_each(|v| *v /= RESCALE_ABOVE);
            }
        }
        let Some(mut join) = (0..last).rev().find(|&i| self.q(i, energy) < 0.0) else {
            return w;
        };
        if join + 2 >= last {
            return w;
        }
        // Join away from a node of the outward solution.
        let peak = w[..=join].iter().fold(0.0f64, |a, v| a.max(v.abs()));
        while join > 1 && w[join].abs() < 1e-3 * peak {
            join -= 1;
        }
        let mut tail = vec![0.0; self.len()];
        tail[last - 1] = 1.0;
        let mut march = March::new(self, energy, last, 0.0, 1.0);
        for i in (join + 1..last).rev() {
            tail[i - 1] = march.step(self, energy, i, i - 1);
            if march.rescaled {
                tail[i..].iter_mut().for_each(|v| *v /= RESCALE_ABOVE);
            }
        }
        let ratio = w[join] / tail[join];
        for i in join + 1..=last {
            w[i] = ratio * tail[i];
        }
        w
    }

    /// Discrete eigenvalue with `n` nodes by bisection on the node count.
    /// `scale` sets the initial bracket width. The lower end starts near
    /// `−scale` rather than at the grid floor: a `−1/r` or `−1/r²` core can
    /// put the floor so deep that `h²q/12` exceeds one at large `r`, where
    /// the recurrence is unstable and node counts mean nothing.
    pub(crate) fn eigenvalue(
        &self,
        n: u32,
        scale: f64,
        rel_tol: f64,
        max_iter: u32,
    ) -> Result<f64> {
        let floor = self.floor_energy();
        if !floor.is_finite() {
            return Err(Error::NonConvergence(
                "potential not finite on the grid".into(),
            ));
        }
        let no_bracket =
            || Error::NonConvergence(format!("no bracket for the level with {n} nodes"));
        let scale = scale.abs().max(f64::MIN_POSITIVE);
        let mut lo = floor.max(-scale);
        let mut step = scale;
        let mut iterations = 0;
        while lo > floor && self.count_nodes(lo) > n {
            step *= 2.0;
            lo = floor.max(lo - step);
            iterations += 1;
            if iterations > max_iter {
                return Err(no_bracket());
            }
        }
        let mut step = scale.max(lo.abs() * 1e-3);
        let mut hi = lo + step;
        while self.count_nodes(hi) <= n {
            lo = hi;
            step *= 2.0;
            hi = lo + step;
            iterations += 1;
            if iterations > max_iter || !hi.is_finite() {
                return Err(no_bracket());
            }
        }
        for _ in 0..max_iter {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= rel_tol * lo.abs().max(hi.abs()) {
                return Ok(mid);
            }
            if self.count_nodes(mid) > n {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(Error::NonConvergence(format!(
            "bisection for the level with {n} nodes stalled in [{lo}, {hi}]"
        )))
    }
}

/// `w e^{−νx}` of the regular solution near the origin. An attractive core
/// `a r^β` with `−2 < β < 0` adds `r^{2+β}` corrections that are not small at
/// the first grid point (`~1e-8` for Coulomb); they follow from
/// `c_k = a c_{k−1} / (kp(2ν + kp))`, `p = 2 + β`. Energy terms are `O(r²)`.
fn core_series(potential: &RadialPotential, nu: f64, r: f64) -> f64 {
    let RadialPotential::PowerLaw { beta, coeff, scale } = *potential else {
        return 1.0;
    };
    if beta >= 0.0 {
        return 1.0;
    }
    let p = 2.0 + beta;
    let x = coeff / scale.powf(beta) * r.powf(p);
    let (mut term, mut sum) = (1.0, 1.0);
    for k in 1..400 {
        let kp = k as f64 * p;
        term *= x / (kp * (2.0 * nu + kp));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Numerov recurrence in summed form, `d_{i+1} = d_i + h² q_i w_i`,
/// `y_{i+1} = y_i + d_{i+1}` with `y = (1 − h²q/12) w`. Accumulating the small
/// increments keeps roundoff from building up over long stretches where
/// `q ≈ 0`, which the three-term form does not.
struct March {
    y: f64,
    d: f64,
    w: f64,
    rescaled: bool,
}

impl March {
    /// Starts from `w` at `from` and `w_next` one step further (in either
    /// direction).
    fn new(grid: &Grid, energy: f64, from: usize, w: f64, w_next: f64) -> Self {
        let next = if from == 0 { 1 } else { from - 1 };
        let y0 = grid.f(from, energy) * w;
        let y1 = grid.f(next, energy) * w_next;
        Self {
            y: y1,
            d: y1 - y0,
            w: w_next,
            rescaled: false,
        }
    }

    /// Advances from point `at` (the current one) to `to`.
    fn step(&mut self, grid: &Grid, energy: f64, at: usize, to: usize) -> f64 {
        self.d += grid.h * grid.h * grid.q(at, energy) * self.w;
        self.y += self.d;
        self.w = self.y / grid.f(to, energy);
        self.rescaled = self.w.abs() > RESCALE_ABOVE;
        if self.rescaled {
            self.w /= RESCALE_ABOVE;
            self.y /= RESCALE_ABOVE;
            self.d /= RESCALE_ABOVE;
        }
        self.w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn box_levels_are_sin_modes() {
        // l = 0 in a cavity: u = sin(kπr), E = (kπ)²
        let wall = RadialPotential::hard_wall(1.0).unwrap();
        let grid = Grid::new(&wall, 0.5, 1e-8, 1.0, 20_000, false);
        for n in 0..3u32 {
            let e = grid.eigenvalue(n, 1.0, 1e-13, 200).unwrap();
            let exact = ((n + 1) as f64 * PI).powi(2);
            assert!((e / exact - 1.0).abs() < 1e-7, "n = {n}: {e}");
            assert_eq!(grid.count_nodes(e * (1.0 - 1e-9)), n);
            assert_eq!(grid.count_nodes(e * (1.0 + 1e-9)), n + 1);
        }
    }

    #[test]
    fn inner_wall_shell() {
        // V = 0 between walls at 1 and 2, l = 0: E = π²
        let flat = RadialPotential::tabulated(&[(1.0, 0.0), (2.0, 0.0)]).unwrap();
        let grid = Grid::new(&flat, 0.5, 1.0, 2.0, 4000, true);
        let e = grid.eigenvalue(0, 1.0, 1e-13, 200).unwrap();
        assert!((e / (PI * PI) - 1.0).abs() < 1e-8, "{e}");
    }
}
