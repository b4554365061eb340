//! Power-law scaling `E = F·T^p` with `p = 2β/(2+β)`, and the fits that
//! recover `(F, p)` and φ from a spectrum.

use serde::Serialize;

use super::{effective_t, SpectrumTable, TParams, PHI_MAX};
use crate::error::{Error, Result};
use crate::oracle::kendall_tau_b;
use crate::potential::Dimension;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingFit {
    /// Prefactor `F`, carrying the sign of the energies.
    pub prefactor: f64,
    pub exponent: f64,
    /// `β = 2p/(2 − p)`; `+∞` when `p = 2`.
    pub beta: f64,
    /// RMS residual of `ln|E|` about the fitted line.
    pub residual_rms: f64,
}

impl ScalingFit {
    /// Exact scaling law of a power-law potential with exponent `beta`.
    pub fn for_beta(prefactor: f64, beta: f64) -> Result<Self> {
        let exponent = exponent_for_beta(beta)?;
        Ok(Self {
            prefactor,
            exponent,
            beta,
            residual_rms: 0.0,
        })
    }
}

/// `p = 2β/(2 + β)`, with `p = 2` for `β = +∞`.
pub fn exponent_for_beta(beta: f64) -> Result<f64> {
    if beta == f64::INFINITY {
        return Ok(2.0);
    }
    if !beta.is_finite() || beta == 0.0 || beta == -2.0 {
        return Err(Error::SingularBeta(beta));
    }
    Ok(2.0 * beta / (2.0 + beta))
}

fn beta_for_exponent(p: f64) -> f64 {
    if p == 2.0 {
        f64::INFINITY
    } else {
        2.0 * p / (2.0 - p)
    }
}

pub fn energy_from_scaling(t: f64, fit: &ScalingFit) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("T = {t} must be positive")));
    }
    Ok(fit.prefactor * t.powf(fit.exponent))
}

struct LineFit {
    intercept: f64,
    slope: f64,
    sum_sq: f64,
}

/// Ordinary least squares of `y` on `x`.
fn fit_line(x: &[f64], y: &[f64]) -> Option<LineFit> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if !(sxx > 1e-300) {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sum_sq = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    Some(LineFit {
        intercept,
        slope,
        sum_sq,
    })
}

/// Signed log-energies of a table; all energies must share one sign.
fn log_energies(table: &SpectrumTable) -> Result<(f64, Vec<f64>)> {
    let energies: Vec<f64> = table.rows().iter().map(|r| r.energy).collect();
    if energies.iter().any(|e| !e.is_finite() || *e == 0.0) {
        return Err(Error::Fit("energies must be finite and non-zero".into()));
    }
    let sign = energies[0].signum();
    if energies.iter().any(|e| e.signum() != sign) {
        return Err(Error::Fit("energies of mixed sign".into()));
    }
    Ok((sign, energies.iter().map(|e| e.abs().ln()).collect()))
}

/// Least-squares fit of `ln|E|` against `ln T` at fixed φ.
pub fn fit_scaling(table: &SpectrumTable, params: &TParams) -> Result<ScalingFit> {
    if table.len() < 3 {
        return Err(Error::Fit(format!(
            "need at least 3 rows, got {}",
            table.len()
        )));
    }
    let (sign, y) = log_energies(table)?;
    let x = table
        .rows()
        .iter()
        .map(|r| effective_t(&r.label, params).map(f64::ln))
        .collect::<Result<Vec<_>>>()?;
    let line =
        fit_line(&x, &y).ok_or_else(|| Error::Fit("all rows share one value of T".into()))?;
    Ok(ScalingFit {
        prefactor: sign * line.intercept.exp(),
        exponent: line.slope,
        beta: beta_for_exponent(line.slope),
        residual_rms: (line.sum_sq / x.len() as f64).sqrt(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiFit {
    pub phi: f64,
    pub scaling: ScalingFit,
    /// Kendall tau-b between the table's energies and `T(φ̂)`.
    pub ordering_tau: f64,
}

const PHI_SCAN_POINTS: usize = 300;

/// Finds the φ that best collapses the table onto one curve `E = F·T(φ)^p`.
///
/// Minimizes the residual sum of squares of the inner `(ln F, p)` line fit
/// over `φ ∈ (0, 1.5]`: a uniform scan followed by golden-section refinement
/// around the best scan point.
pub fn fit_phi(table: &SpectrumTable, dimension: Dimension) -> Result<PhiFit> {
    if table.len() < 3 {
        return Err(Error::Fit(format!(
            "need at least 3 rows, got {}",
            table.len()
        )));
    }
    let lambdas = table
        .rows()
        .iter()
        .map(|r| r.label.lambda(dimension))
        .collect::<Result<Vec<_>>>()?;
    let mut distinct: Vec<f64> = lambdas.clone();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::Fit(
            "need at least two distinct angular numbers".into(),
        ));
    }
    let (_, y) = log_energies(table)?;
    let ns: Vec<f64> = table
        .rows()
        .iter()
        .map(|r| r.label.n as f64 + 0.5)
        .collect();

    let objective = |phi: f64| -> f64 {
        let x: Vec<f64> = ns
            .iter()
            .zip(&lambdas)
            .map(|(n, l)| (n + phi * l).ln())
            .collect();
        fit_line(&x, &y).map_or(f64::INFINITY, |f| f.sum_sq)
    };

    let step = PHI_MAX / PHI_SCAN_POINTS as f64;
    let best = (1..=PHI_SCAN_POINTS)
        .map(|k| (k, objective(k as f64 * step)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(k, _)| k)
        .expect("non-empty scan");
    let lo = (best as f64 - 1.0) * step;
    let hi = ((best + 1) as f64 * step).min(PHI_MAX);
    let phi = golden_section(&objective, lo.max(1e-9), hi, 1e-12);

    let params = TParams::new(phi, dimension)?;
    let scaling = fit_scaling(table, &params)?;
    let energies: Vec<f64> = table.rows().iter().map(|r| r.energy).collect();
    let ts = table
        .rows()
        .iter()
        .map(|r| effective_t(&r.label, &params))
        .collect::<Result<Vec<_>>>()?;
    // Negative energies order the same way as their magnitudes shrink.
    let ordering_tau = kendall_tau_b(&energies, &ts)?;
    Ok(PhiFit {
        phi,
        scaling,
        ordering_tau,
    })
}

fn golden_section<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tnumber::{Provenance, StateLabel};

    fn table(f: impl Fn(u32, u32) -> f64, n_max: u32, l_max: u32) -> SpectrumTable {
        SpectrumTable::from_pairs(
            (0..=n_max)
                .flat_map(|n| (0..=l_max).map(move |l| (n, l)))
                .map(|(n, l)| (StateLabel::radial(n, l), f(n, l))),
            Provenance::Oracle,
        )
        .unwrap()
    }

    fn oscillator_table() -> SpectrumTable {
        table(|n, l| (4 * n + 2 * l + 3) as f64, 3, 3)
    }

    fn hydrogen_table() -> SpectrumTable {
        table(|n, l| -0.25 / ((n + l + 1) as f64).powi(2), 3, 3)
    }

    #[test]
    fn scaling_law_examples() {
        let osc = ScalingFit::for_beta(4.0, 2.0).unwrap();
        assert_eq!(osc.exponent, 1.0);
        assert_eq!(energy_from_scaling(0.75, &osc).unwrap(), 3.0);
        let coulomb = ScalingFit::for_beta(-0.25, -1.0).unwrap();
        assert_eq!(coulomb.exponent, -2.0);
        assert_eq!(energy_from_scaling(1.0, &coulomb).unwrap(), -0.25);
        assert_eq!(exponent_for_beta(f64::INFINITY).unwrap(), 2.0);
        assert!(energy_from_scaling(0.0, &osc).is_err());
    }

    #[test]
    fn recovers_exact_scaling() {
        let fit = fit_scaling(
            &oscillator_table(),
            &TParams::new(0.5, Dimension::Three).unwrap(),
        )
        .unwrap();
        assert!((fit.prefactor - 4.0).abs() < 1e-6 && (fit.exponent - 1.0).abs() < 1e-6);
        assert!((fit.beta - 2.0).abs() < 1e-5);
        let fit = fit_scaling(
            &hydrogen_table(),
            &TParams::new(1.0, Dimension::Three).unwrap(),
        )
        .unwrap();
        assert!((fit.exponent + 2.0).abs() < 1e-6 && (fit.prefactor + 0.25).abs() < 1e-6);
    }

    #[test]
    fn scaling_fit_errors() {
        let params = TParams::new(0.5, Dimension::Three).unwrap();
        let two = oscillator_table().truncated(2);
        assert!(matches!(fit_scaling(&two, &params), Err(Error::Fit(_))));
        let mixed = SpectrumTable::from_pairs(
            [
                (StateLabel::radial(0, 0), -1.0),
                (StateLabel::radial(1, 0), 1.0),
                (StateLabel::radial(2, 0), 2.0),
            ],
            Provenance::File,
        )
        .unwrap();
        assert!(fit_scaling(&mixed, &params).is_err());
    }

    #[test]
    fn recovers_phi() {
        let fit = fit_phi(&oscillator_table(), Dimension::Three).unwrap();
        assert!((fit.phi - 0.5).abs() < 1e-3, "{}", fit.phi);
        assert!(fit.ordering_tau > 0.999);
        let fit = fit_phi(&hydrogen_table(), Dimension::Three).unwrap();
        assert!((fit.phi - 1.0).abs() < 1e-3, "{}", fit.phi);
    }

    #[test]
    fn phi_fit_needs_angular_diversity() {
        let s_only = table(|n, _| (4 * n + 3) as f64, 4, 0);
        assert!(matches!(
            fit_phi(&s_only, Dimension::Three),
            Err(Error::Fit(_))
        ));
    }

    #[test]
    fn fits_are_bit_reproducible() {
        let a = fit_phi(&hydrogen_table(), Dimension::Three).unwrap();
        let b = fit_phi(&hydrogen_table(), Dimension::Three).unwrap();
        assert_eq!(a.phi.to_bits(), b.phi.to_bits());
        assert_eq!(a.scaling.prefactor.to_bits(), b.scaling.prefactor.to_bits());
    }
}
