//! Quantum dots: an infinite-wall slab of thickness `d` along z times a 2D
//! in-plane potential. Energies add, `E(N, n, m) = K(N) + E(n, m)`, with
//! `K(N) = π²N²/d²`; the in-plane part comes from the oracle or from the
//! semiclassical rule with `T = (n + ½) + φ|m|`.

use std::f64::consts::PI;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{solve_radial, SolverConfig};
use crate::potential::{Dimension, PotentialConfig, Problem, RadialPotential};
use crate::semiclassical::Quantizer;
use crate::tnumber::{effective_t, Provenance, SpectrumTable, StateLabel, TParams};

/// Energy `π²N²/d²` of slab mode `N ≥ 1`.
pub fn slab_energy(slab: u32, d: f64) -> Result<f64> {
    if slab == 0 {
        return Err(Error::InvalidState("slab index starts at 1".into()));
    }
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "slab thickness d = {d} must be positive"
        )));
    }
    Ok((PI * slab as f64 / d).powi(2))
}

/// `T` of the in-plane motion; the slab index plays no part.
pub fn dot_t(state: &StateLabel, phi: f64) -> Result<f64> {
    if state.m.is_none() {
        return Err(Error::InvalidState(format!("{state} has no m")));
    }
    effective_t(state, &TParams::new(phi, Dimension::Two)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DotSpec {
    d: f64,
    inplane: RadialPotential,
}

#[derive(Debug, Deserialize, Serialize)]
struct DotConfig {
    d: Option<f64>,
    inplane: PotentialConfig,
    /// Overrides the in-plane length scale when given.
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    radius: Option<f64>,
}

impl DotSpec {
    pub fn new(d: f64, inplane: RadialPotential) -> Result<Self> {
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "slab thickness d = {d} must be positive"
            )));
        }
        Ok(Self { d, inplane })
    }

    /// Parses `{"d": ..., "inplane": {<potential>}, "R": ...}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let config: DotConfig = serde_json::from_str(text)?;
        let d = config
            .d
            .ok_or_else(|| Error::InvalidParameter("dot thickness required".into()))?;
        let inplane = match (config.inplane, config.radius) {
            (PotentialConfig::PowerLaw { beta, coeff, .. }, Some(radius)) => {
                PotentialConfig::PowerLaw {
                    beta,
                    coeff,
                    radius,
                }
            }
            (PotentialConfig::HardWall { .. }, Some(radius)) => {
                PotentialConfig::HardWall { radius }
            }
            (PotentialConfig::Tabulated { .. }, Some(_)) => {
                return Err(Error::InvalidParameter(
                    "R cannot rescale a tabulated in-plane potential".into(),
                ))
            }
            (other, None) => other,
        };
        Self::new(d, inplane.try_into()?)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let config = DotConfig {
            d: Some(self.d),
            inplane: (&self.inplane).into(),
            radius: None,
        };
        serde_json::to_string(&config).expect("dot config serializes")
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn inplane(&self) -> &RadialPotential {
        &self.inplane
    }

    pub fn inplane_problem(&self) -> Problem {
        Problem::two_d(self.inplane.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DotMethod {
    Exact(SolverConfig),
    /// `phi: None` estimates φ from the in-plane potential.
    Semiclassical {
        phi: Option<f64>,
    },
}

/// Which states to emit. In-plane rows carry `m ≥ 0`; `±m` are degenerate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DotRange {
    Box {
        slab_max: u32,
        n_max: u32,
        m_max: u32,
    },
    /// Every state with `E < e_cut`.
    Cutoff { e_cut: f64 },
}

/// φ used by the semiclassical method when none is given: the estimator at the
/// potential's characteristic energy, in the in-plane problem.
pub fn inplane_phi(spec: &DotSpec) -> Result<f64> {
    let problem = spec.inplane_problem();
    Quantizer::new(&problem).estimate_phi(spec.inplane.characteristic_energy())
}

struct InPlane<'a> {
    problem: Problem,
    method: &'a DotMethod,
    phi: f64,
}

impl InPlane<'_> {
    fn energy(&self, n: u32, m: u32) -> Result<f64> {
        match self.method {
            DotMethod::Exact(config) => solve_radial(&self.problem, n, m, config),
            DotMethod::Semiclassical { .. } => {
                let t = dot_t(&StateLabel::planar(n, m as i32), self.phi)?;
                Quantizer::new(&self.problem).solve_energy(t)
            }
        }
    }

    /// In-plane levels with energy below `limit`.
    fn below(&self, limit: f64) -> Result<Vec<(u32, u32, f64)>> {
        let mut levels = Vec::new();
        for m in 0.. {
            let ground = self.energy(0, m)?;
            if ground >= limit {
                break;
            }
            levels.push((0, m, ground));
            for n in 1.. {
                let e = self.energy(n, m)?;
                if e >= limit {
                    break;
                }
                levels.push((n, m, e));
            }
        }
        Ok(levels)
    }
}

pub fn dot_spectrum(spec: &DotSpec, range: DotRange, method: DotMethod) -> Result<SpectrumTable> {
    let phi = match method {
        DotMethod::Semiclassical { phi: Some(phi) } => phi,
        DotMethod::Semiclassical { phi: None } => inplane_phi(spec)?,
        DotMethod::Exact(config) => {
            config.validate()?;
            f64::NAN
        }
    };
    let inplane = InPlane {
        problem: spec.inplane_problem(),
        method: &method,
        phi,
    };
    let (slabs, levels) = match range {
        DotRange::Box {
            slab_max,
            n_max,
            m_max,
        } => {
            let states: Vec<(u32, u32)> = (0..=n_max)
                .flat_map(|n| (0..=m_max).map(move |m| (n, m)))
                .collect();
            let levels = states
                .par_iter()
                .map(|&(n, m)| inplane.energy(n, m).map(|e| (n, m, e)))
                .collect::<Result<Vec<_>>>()?;
            ((1..=slab_max).collect::<Vec<_>>(), levels)
        }
        DotRange::Cutoff { e_cut } => {
            let lowest_slab = slab_energy(1, spec.d)?;
            if let Some(threshold) = spec.inplane.escape_threshold() {
                if e_cut - lowest_slab > threshold {
                    return Err(Error::InvalidParameter(format!(
                        "E_cut = {e_cut} reaches the in-plane continuum above {}",
                        lowest_slab + threshold
                    )));
                }
            }
            let levels = inplane.below(e_cut - lowest_slab)?;
            let floor = levels.iter().map(|l| l.2).fold(f64::INFINITY, f64::min);
            let slabs = (1..)
                .take_while(|&s| slab_energy(s, spec.d).is_ok_and(|k| k + floor < e_cut))
                .collect();
            (slabs, levels)
        }
    };
    let mut rows = Vec::new();
    for &slab in &slabs {
        let k = slab_energy(slab, spec.d)?;
        for &(n, m, e) in &levels {
            let total = k + e;
            if let DotRange::Cutoff { e_cut } = range {
                if total >= e_cut {
                    continue;
                }
            }
            rows.push((StateLabel::dot(slab, n, m as i32)?, total));
        }
    }
    let provenance = match method {
        DotMethod::Exact(_) => Provenance::Oracle,
        DotMethod::Semiclassical { .. } => Provenance::Semiclassical,
    };
    Ok(SpectrumTable::from_pairs(rows, provenance)?.sorted_by_energy())
}

/// Largest violation of `E(N,n,m) − E(N′,n,m) = K(N) − K(N′)` over all pairs
/// of rows sharing `(n, m)`, relative to the row energies.
pub fn separability_defect(table: &SpectrumTable, d: f64) -> Result<f64> {
    let rows = table.rows();
    let mut worst: f64 = 0.0;
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i + 1..] {
            let (Some(na), Some(nb)) = (a.label.slab, b.label.slab) else {
                return Err(Error::InvalidState("dot rows need a slab index".into()));
            };
            if (a.label.n, a.label.m) != (b.label.n, b.label.m) {
                continue;
            }
            let expected = slab_energy(na, d)? - slab_energy(nb, d)?;
            let defect =
                (a.energy - b.energy - expected).abs() / a.energy.abs().max(b.energy.abs());
            worst = worst.max(defect);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk_spec() -> DotSpec {
        DotSpec::from_json(r#"{"d": 0.5, "inplane": {"type": "hard_wall", "R": 1.0}}"#).unwrap()
    }

    #[test]
    fn slab_examples() {
        assert!((slab_energy(1, 1.0).unwrap() - PI * PI).abs() < 1e-14);
        assert!((slab_energy(2, 2.0).unwrap() - PI * PI).abs() < 1e-14);
        let err = slab_energy(0, 1.0).unwrap_err();
        assert!(err.to_string().contains("slab index starts at 1"));
        assert!(slab_energy(1, 0.0).is_err());
    }

    #[test]
    fn dot_t_examples() {
        assert_eq!(
            dot_t(&StateLabel::dot(1, 0, 0).unwrap(), 0.39).unwrap(),
            0.5
        );
        assert!((dot_t(&StateLabel::dot(3, 1, 2).unwrap(), 0.39).unwrap() - 2.28).abs() < 1e-14);
        assert_eq!(
            dot_t(&StateLabel::planar(2, 3), 0.39).unwrap(),
            dot_t(&StateLabel::planar(2, -3), 0.39).unwrap()
        );
        assert!(dot_t(&StateLabel::radial(0, 1), 0.39).is_err());
    }

    #[test]
    fn config_errors() {
        let err =
            DotSpec::from_json(r#"{"inplane": {"type": "hard_wall", "R": 1.0}}"#).unwrap_err();
        assert!(err.to_string().contains("dot thickness required"));
        assert!(
            DotSpec::from_json(r#"{"d": -1, "inplane": {"type": "hard_wall", "R": 1.0}}"#).is_err()
        );
        let scaled =
            DotSpec::from_json(r#"{"d": 1, "inplane": {"type": "hard_wall", "R": 1.0}, "R": 2.0}"#)
                .unwrap();
        assert_eq!(scaled.inplane().length_scale(), 2.0);
        let back = DotSpec::from_json(&scaled.to_json()).unwrap();
        assert_eq!(back, scaled);
    }

    #[test]
    fn exact_disk_ground_and_separability() {
        let spec = disk_spec();
        let range = DotRange::Box {
            slab_max: 2,
            n_max: 1,
            m_max: 2,
        };
        let table = dot_spectrum(&spec, range, DotMethod::Exact(SolverConfig::default())).unwrap();
        assert_eq!(table.len(), 12);
        let ground = &table.rows()[0];
        assert_eq!(ground.label, StateLabel::dot(1, 0, 0).unwrap());
        assert!((ground.energy - 45.26160356730421).abs() < 1e-6);
        assert!(separability_defect(&table, spec.d()).unwrap() < 1e-14);
    }

    #[test]
    fn semiclassical_disk() {
        let spec = disk_spec();
        let range = DotRange::Box {
            slab_max: 1,
            n_max: 0,
            m_max: 0,
        };
        let table =
            dot_spectrum(&spec, range, DotMethod::Semiclassical { phi: Some(0.3899) }).unwrap();
        let inplane = table.rows()[0].energy - slab_energy(1, 0.5).unwrap();
        assert!((inplane - PI * PI / 4.0).abs() < 1e-7, "{inplane}");
        assert!((inplane_phi(&spec).unwrap() - 0.3898484).abs() < 1e-6);
    }

    #[test]
    fn cutoff_enumeration() {
        let spec = disk_spec();
        let e_cut = 200.0;
        let exact = DotMethod::Exact(SolverConfig::default());
        let table = dot_spectrum(&spec, DotRange::Cutoff { e_cut }, exact).unwrap();
        assert!(table.rows().iter().all(|r| r.energy < e_cut));
        // K(2) = 16π² ≈ 157.9 leaves room for j₀₁, j₁₁, j₂₁, j₀₂, j₃₁
        let second = table
            .rows()
            .iter()
            .filter(|r| r.label.slab == Some(2))
            .count();
        assert_eq!(second, 5);
        let boxed = dot_spectrum(
            &spec,
            DotRange::Box {
                slab_max: 3,
                n_max: 4,
                m_max: 10,
            },
            exact,
        )
        .unwrap();
        let expected = boxed.rows().iter().filter(|r| r.energy < e_cut).count();
        assert_eq!(table.len(), expected);
    }
}
