//! Exactly solvable spectra: the oscillator, the Coulomb problem, and the
//! hard sphere/disk through Bessel zeros; plus the first-order level shifts
//! of the anisotropic oscillator.

use crate::error::{Error, Result};
use crate::potential::{check_alpha, Dimension, Problem, RadialPotential, DEFAULT_ALPHA_GUARD};
use crate::roots::brent;

/// Closed-form energy of the level with `n` radial nodes and angular number
/// `angular` (`l` in 3D, `|m|` in 2D), where one exists.
pub fn exact_energy(problem: &Problem, n: u32, angular: u32) -> Result<f64> {
    let lambda = match problem.dimension {
        Dimension::Three => angular as f64 + 0.5,
        Dimension::Two => angular as f64,
    };
    let n_f = n as f64;
    match problem.potential {
        RadialPotential::PowerLaw { beta, coeff, scale } if beta == 2.0 => {
            Ok(coeff.sqrt() / scale * (4.0 * n_f + 2.0 * lambda + 2.0))
        }
        RadialPotential::PowerLaw { beta, coeff, scale } if beta == -1.0 => {
            let g = -coeff * scale;
            Ok(-g * g / (4.0 * (n_f + lambda + 0.5).powi(2)))
        }
        RadialPotential::HardWall { radius } => {
            let zero = match problem.dimension {
                Dimension::Three => spherical_bessel_zero(angular, n + 1)?,
                Dimension::Two => bessel_zero(angular, n + 1)?,
            };
            Ok((zero / radius).powi(2))
        }
        _ => Err(Error::UnsupportedPotential(
            "no closed-form spectrum for this potential".into(),
        )),
    }
}

/// Integer-order Bessel function `J_m(x)` from its integral representation,
/// evaluated by the (spectrally accurate) periodic trapezoid rule.
pub fn bessel_j(m: u32, x: f64) -> f64 {
    let points = 2 * (x.abs().ceil() as usize + m as usize + 32);
    let dt = 2.0 * std::f64::consts::PI / points as f64;
    let sum: f64 = (0..points)
        .map(|k| {
            let t = k as f64 * dt;
            (m as f64 * t - x * t.sin()).cos()
        })
        .sum();
    sum / points as f64
}

/// Spherical Bessel function `j_l(x)` by downward (Miller) recurrence.
pub fn spherical_bessel_j(l: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if l == 0 { 1.0 } else { 0.0 };
    }
    let j0 = x.sin() / x;
    if l == 0 {
        return j0;
    }
    let j1 = x.sin() / (x * x) - x.cos() / x;
    let top = l as usize + x.abs().ceil() as usize + 40;
    let (mut above, mut here) = (0.0f64, 1e-300f64);
    let (mut at_l, mut at_0, mut at_1) = (0.0, 0.0, 0.0);
    for k in (1..=top).rev() {
        // j_{k-1} = (2k+1)/x · j_k − j_{k+1}
        let below = (2 * k + 1) as f64 / x * here - above;
        above = here;
        here = below;
        if k == l as usize + 1 {
            at_l = here;
        }
        if k == 2 {
            at_1 = here;
        }
        if k == 1 {
            at_0 = here;
        }
        if here.abs() > 1e250 {
            here *= 1e-250;
            above *= 1e-250;
            at_l *= 1e-250;
            at_1 *= 1e-250;
            at_0 *= 1e-250;
        }
    }
    if l == 1 {
        at_l = at_1;
    }
    if j0.abs() >= j1.abs() {
        at_l * j0 / at_0
    } else {
        at_l * j1 / at_1
    }
}

/// `k`-th positive zero of `f`, scanning upward from `start`.
fn kth_zero(f: impl Fn(f64) -> f64, start: f64, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidParameter("zeros are counted from 1".into()));
    }
    let step = 0.05;
    let mut a = start;
    let mut fa = f(a);
    let mut found = 0;
    for _ in 0..1_000_000 {
        let b = a + step;
        let fb = f(b);
        if fa.signum() != fb.signum() || fb == 0.0 {
            found += 1;
            if found == k {
                return brent(|x| Ok(f(x)), a, b, 1e-15, 4.0 * f64::EPSILON, 0.0, 200);
            }
        }
        a = b;
        fa = fb;
    }
    Err(Error::NonConvergence(format!("zero {k} not found")))
}

/// `k`-th positive zero of `J_m`.
pub fn bessel_zero(m: u32, k: u32) -> Result<f64> {
    kth_zero(|x| bessel_j(m, x), m as f64 + 0.1, k)
}

/// `k`-th positive zero of `j_l`.
pub fn spherical_bessel_zero(l: u32, k: u32) -> Result<f64> {
    kth_zero(|x| spherical_bessel_j(l, x), l as f64 + 0.1, k)
}

/// First-order shift of level `(n, l, m)` of an oscillator `V = c(r/s)²` under
/// the deformation with frequencies `ω_ρ = ω₀(1 + α/3)`, `ω_z = ω₀(1 − 2α/3)`.
///
/// The separable levels `ω_ρ(2n_ρ + |m| + 1) + ω_z(n_z + ½)` are matched to
/// spherical labels by `n_ρ = n`, `n_z = l − |m|`, which keeps the shell
/// `2n + l` and `m`.
pub fn anisotropic_oscillator_shift(
    potential: &RadialPotential,
    n: u32,
    l: u32,
    m: i32,
    alpha: f64,
) -> Result<f64> {
    let omega0 = match potential {
        RadialPotential::PowerLaw { beta, coeff, scale } if *beta == 2.0 => {
            2.0 * coeff.sqrt() / scale
        }
        _ => {
            return Err(Error::UnsupportedPotential(
                "the anisotropic shift needs an oscillator".into(),
            ))
        }
    };
    check_alpha(alpha, DEFAULT_ALPHA_GUARD)?;
    let m_abs = m.unsigned_abs();
    if m_abs > l {
        return Err(Error::InvalidState(format!(
            "|m| = {m_abs} exceeds l = {l}"
        )));
    }
    let n_z = (l - m_abs) as f64;
    let planar = (2 * n + m_abs + 1) as f64;
    Ok(omega0 * alpha * (planar / 3.0 - 2.0 * (n_z + 0.5) / 3.0))
}
