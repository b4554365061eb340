use std::fmt::Write as _;
use std::fs::File;
use std::path::Path;

use num_rational::Ratio;
use rayon::prelude::*;
use serde_json::json;

use super::{
    json_num, json_opt, to_json_body, Command, DotMethodArg, Format, Method, Outcome, Settings,
    WeightArg,
};
use crate::dots::{dot_spectrum, separability_defect, slab_energy, DotMethod, DotRange, DotSpec};
use crate::error::{Error, Result};
use crate::format::g12;
use crate::oracle::{kendall_tau_b, solve_radial, solve_radial_state, spectrum, SolverConfig};
use crate::potential::{check_alpha, Dimension, PotentialConfig, Problem, DEFAULT_ALPHA_GUARD};
use crate::semiclassical::{PhiWeight, Quantizer, SemiclassicalConfig};
use crate::tnumber::{
    deformation_energy_shift, deformed_t_shift, effective_t, enumerate_levels, fit_phi,
    label_fields, quadrupole_factor, virial_kinetic, DeformMode, SpectrumTable, StateLabel,
    TParams,
};

pub fn execute(command: &Command, settings: &Settings) -> Result<Outcome> {
    match command {
        Command::Phi {
            energy,
            state,
            fit,
            weight,
        } => phi(settings, *energy, *state, fit.as_deref(), *weight),
        Command::Spectrum {
            n_max,
            l_max,
            method,
        } => spectrum_report(settings, *n_max, *l_max, *method),
        Command::Deform {
            alpha,
            mode,
            states,
        } => deform(settings, *alpha, mode, states),
        Command::Dot {
            config,
            d,
            method,
            slab_max,
            n_max,
            m_max,
            ecut,
        } => {
            let range = match ecut {
                Some(e_cut) => DotRange::Cutoff { e_cut: *e_cut },
                None => DotRange::Box {
                    slab_max: *slab_max,
                    n_max: *n_max,
                    m_max: *m_max,
                },
            };
            dot(settings, config.as_deref(), *d, *method, range)
        }
        Command::SweepPhi {
            phis,
            phi_min,
            phi_max,
            steps,
            levels,
        } => sweep_phi(settings, phis, *phi_min, *phi_max, *steps, *levels),
        Command::Exact {
            n_max,
            l_max,
            h,
            r_max,
        } => exact(settings, *n_max, *l_max, *h, *r_max),
    }
}

fn solver_config(settings: &Settings, h: Option<f64>, r_max: Option<f64>) -> Result<SolverConfig> {
    let default = SolverConfig::default();
    let config = SolverConfig {
        h: h.unwrap_or(default.h),
        r_max,
        tolerance: settings.tol.unwrap_or(default.tolerance),
        ..default
    };
    config.validate()?;
    Ok(config)
}

fn semiclassical_config(settings: &Settings) -> SemiclassicalConfig {
    let default = SemiclassicalConfig::default();
    SemiclassicalConfig {
        root_tol: settings.tol.unwrap_or(default.root_tol),
        ..default
    }
}

/// `--phi` if given, else the estimator at the potential's characteristic energy.
fn resolve_phi(settings: &Settings, problem: &Problem, notes: &mut Vec<String>) -> Result<f64> {
    if let Some(phi) = settings.phi {
        return Ok(phi);
    }
    let energy = problem.potential.characteristic_energy();
    let phi =
        Quantizer::with_config(problem, semiclassical_config(settings)).estimate_phi(energy)?;
    notes.push(format!("phi estimated at E={}: {}", g12(energy), g12(phi)));
    Ok(phi)
}

fn phi(
    settings: &Settings,
    energy: Option<f64>,
    state: Option<(u32, u32)>,
    fit: Option<&Path>,
    weight: WeightArg,
) -> Result<Outcome> {
    let mut text = String::new();
    let mut estimate = None;
    if settings.has_potential() || fit.is_none() {
        let problem = Problem::new(settings.potential()?, settings.dim);
        let energy = match (energy, state) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidParameter(
                    "--energy and --state are mutually exclusive".into(),
                ))
            }
            (Some(e), None) => e,
            (None, Some((n, l))) => {
                solve_radial(&problem, n, l, &solver_config(settings, None, None)?)?
            }
            (None, None) => problem.potential.characteristic_energy(),
        };
        let config = SemiclassicalConfig {
            phi_weight: match weight {
                WeightArg::Literal => PhiWeight::Literal,
                WeightArg::Dimension => PhiWeight::Dimension,
            },
            ..semiclassical_config(settings)
        };
        let phi = Quantizer::with_config(&problem, config).estimate_phi(energy)?;
        writeln!(text, "phi={phi:.6}").unwrap();
        let weight = match weight {
            WeightArg::Literal => "literal",
            WeightArg::Dimension => "dimension",
        };
        estimate =
            Some(json!({ "phi": json_num(phi), "energy": json_num(energy), "weight": weight }));
    }
    let mut fitted = None;
    if let Some(path) = fit {
        let table = SpectrumTable::read_csv(File::open(path)?)?;
        let f = fit_phi(&table, settings.dim)?;
        writeln!(text, "phi_hat={:.3}", f.phi).unwrap();
        for (key, value) in [
            ("F", f.scaling.prefactor),
            ("exponent", f.scaling.exponent),
            ("beta", f.scaling.beta),
            ("residual_rms", f.scaling.residual_rms),
            ("tau", f.ordering_tau),
        ] {
            writeln!(text, "{key}={}", g12(value)).unwrap();
        }
        fitted = Some(json!({
            "phi": json_num(f.phi),
            "F": json_num(f.scaling.prefactor),
            "exponent": json_num(f.scaling.exponent),
            "beta": json_num(f.scaling.beta),
            "residual_rms": json_num(f.scaling.residual_rms),
            "tau": json_num(f.ordering_tau),
            "mode": "fit_phi",
            "rows": table.len(),
        }));
    }
    let body = match settings.format {
        Format::Csv => text,
        Format::Json => to_json_body(&match (estimate, fitted) {
            (Some(e), Some(f)) => json!({ "estimate": e, "fit": f }),
            (Some(e), None) => e,
            (None, Some(f)) => f,
            (None, None) => unreachable!("one branch always runs"),
        }),
    };
    Ok(Outcome {
        body,
        ..Outcome::default()
    })
}

struct SpectrumLine {
    label: StateLabel,
    t: f64,
    semi: Option<std::result::Result<f64, String>>,
    exact: Option<std::result::Result<f64, String>>,
}

impl SpectrumLine {
    fn semi(&self) -> Option<f64> {
        self.semi.as_ref().and_then(|r| r.as_ref().ok().copied())
    }

    fn exact(&self) -> Option<f64> {
        self.exact.as_ref().and_then(|r| r.as_ref().ok().copied())
    }

    fn rel_err(&self) -> Option<f64> {
        Some(((self.semi()? - self.exact()?) / self.exact()?).abs())
    }

    fn status(&self) -> &'static str {
        match (
            self.semi.as_ref().is_some_and(|r| r.is_err()),
            self.exact.as_ref().is_some_and(|r| r.is_err()),
        ) {
            (false, false) => "ok",
            (true, false) => "semi_failed",
            (false, true) => "exact_failed",
            (true, true) => "failed",
        }
    }
}

fn spectrum_report(settings: &Settings, n_max: u32, l_max: u32, method: Method) -> Result<Outcome> {
    let problem = Problem::new(settings.potential()?, settings.dim);
    let mut notes = Vec::new();
    let phi = resolve_phi(settings, &problem, &mut notes)?;
    let params = TParams::new(phi, settings.dim)?;
    let solver = solver_config(settings, None, None)?;
    let quantizer = Quantizer::with_config(&problem, semiclassical_config(settings));
    let states: Vec<StateLabel> = (0..=n_max)
        .flat_map(|n| (0..=l_max).map(move |a| (n, a)))
        .map(|(n, a)| match settings.dim {
            Dimension::Three => StateLabel::radial(n, a),
            Dimension::Two => StateLabel::planar(n, a as i32),
        })
        .collect();
    let mut lines = states
        .par_iter()
        .map(|&label| {
            let t = effective_t(&label, &params)?;
            let semi = matches!(method, Method::Semiclassical | Method::Both)
                .then(|| quantizer.solve_energy(t).map_err(|e| e.to_string()));
            let exact = matches!(method, Method::Exact | Method::Both).then(|| {
                solve_radial(&problem, label.n, label.angular(), &solver).map_err(|e| e.to_string())
            });
            Ok(SpectrumLine {
                label,
                t,
                semi,
                exact,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    lines.sort_by(|a, b| {
        a.t.total_cmp(&b.t)
            .then_with(|| a.label.cmp_order(&b.label))
    });

    let mut failed = false;
    for line in &lines {
        for (which, result) in [("semiclassical", &line.semi), ("exact", &line.exact)] {
            if let Some(Err(e)) = result {
                failed = true;
                notes.push(format!("{} {which}: {e}", line.label));
            }
        }
    }
    let solved: Vec<(f64, f64)> = lines
        .iter()
        .filter_map(|l| l.exact().map(|e| (l.t, e)))
        .collect();
    let tau = if solved.len() >= 2 {
        let (ts, es): (Vec<f64>, Vec<f64>) = solved.into_iter().unzip();
        kendall_tau_b(&ts, &es).ok()
    } else {
        None
    };
    if let Some(tau) = tau {
        notes.push(format!("kendall_tau={}", g12(tau)));
    }

    let body = match settings.format {
        Format::Csv => {
            let mut s = String::from("n,l,m,N,T,E_semi,E_exact,rel_err,status,label\n");
            let opt = |x: Option<f64>| x.map(g12).unwrap_or_default();
            for l in &lines {
                writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    label_fields(&l.label),
                    g12(l.t),
                    opt(l.semi()),
                    opt(l.exact()),
                    opt(l.rel_err()),
                    l.status(),
                    l.label.spectroscopic()
                )
                .unwrap();
            }
            s
        }
        Format::Json => {
            let rows: Vec<_> = lines
                .iter()
                .map(|l| {
                    json!({
                        "n": l.label.n, "l": l.label.l, "m": l.label.m, "N": l.label.slab,
                        "T": json_num(l.t),
                        "E_semi": json_opt(l.semi()),
                        "E_exact": json_opt(l.exact()),
                        "rel_err": json_opt(l.rel_err()),
                        "status": l.status(),
                        "label": l.label.spectroscopic(),
                    })
                })
                .collect();
            to_json_body(&json!({
                "phi": json_num(phi),
                "dimension": settings.dim.value(),
                "kendall_tau": json_opt(tau),
                "rows": rows,
            }))
        }
    };
    Ok(Outcome {
        body,
        notes,
        partial_failure: failed,
    })
}

fn ratio_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn deform(settings: &Settings, alpha: f64, mode: &str, states: &[(u32, u32)]) -> Result<Outcome> {
    let mode: DeformMode = mode.parse()?;
    check_alpha(alpha, DEFAULT_ALPHA_GUARD)?;
    if settings.dim != Dimension::Three {
        return Err(Error::Dimension(settings.dim.value()));
    }
    let problem = Problem::three_d(settings.potential()?);
    let mut notes = Vec::new();
    let phi = resolve_phi(settings, &problem, &mut notes)?;
    let params = TParams::new(phi, Dimension::Three)?;
    let solver = solver_config(settings, None, None)?;

    let multiplets = states
        .par_iter()
        .map(|&(n, l)| {
            let (energy, kinetic) = match problem.potential.power_exponent() {
                Some(beta) => {
                    let e = solve_radial(&problem, n, l, &solver)?;
                    (e, virial_kinetic(e, beta)?)
                }
                None => {
                    let s = solve_radial_state(&problem, n, l, &solver)?;
                    (s.energy, s.mean_kinetic(&problem.potential))
                }
            };
            let t = effective_t(&StateLabel::radial(n, l), &params)?;
            let rows = (-(l as i32)..=l as i32)
                .map(|m| {
                    let state = StateLabel::with_m(n, l, m)?;
                    let f = quadrupole_factor(m, l)?;
                    let de = deformation_energy_shift(kinetic, alpha, m, l)?;
                    let dt = deformed_t_shift(&state, &params, alpha, mode)?;
                    Ok((m, f, de, dt))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((n, l, energy, kinetic, t, rows))
        })
        .collect::<Result<Vec<_>>>()?;

    let body = match settings.format {
        Format::Csv => {
            let mut s = String::from("n,l,m,f,dE,dT,T_deformed,mode\n");
            for (n, l, _, _, t, rows) in &multiplets {
                let (mut sum_f, mut sum_de, mut sum_dt) = (Ratio::from_integer(0), 0.0, 0.0);
                for &(m, f, de, dt) in rows {
                    writeln!(
                        s,
                        "{n},{l},{m},{},{},{},{},{mode}",
                        g12(ratio_f64(f)),
                        g12(de),
                        g12(dt),
                        g12(t + dt)
                    )
                    .unwrap();
                    sum_f += f;
                    sum_de += de;
                    sum_dt += dt;
                }
                writeln!(
                    s,
                    "{n},{l},sum,{},{},{},,{mode}",
                    g12(ratio_f64(sum_f)),
                    g12(sum_de),
                    g12(sum_dt)
                )
                .unwrap();
            }
            s
        }
        Format::Json => {
            let docs: Vec<_> = multiplets
                .iter()
                .map(|(n, l, e, k, t, rows)| {
                    let sum_f: Ratio<i64> = rows.iter().map(|r| r.1).sum();
                    json!({
                        "n": n, "l": l, "E": json_num(*e), "K": json_num(*k), "T": json_num(*t),
                        "rows": rows.iter().map(|&(m, f, de, dt)| json!({
                            "m": m, "f": json_num(ratio_f64(f)), "f_exact": f.to_string(),
                            "dE": json_num(de), "dT": json_num(dt), "T_deformed": json_num(t + dt),
                        })).collect::<Vec<_>>(),
                        "sum_f": sum_f.to_string(),
                        "sum_dE": json_num(rows.iter().map(|r| r.2).sum()),
                        "sum_dT": json_num(rows.iter().map(|r| r.3).sum()),
                    })
                })
                .collect();
            to_json_body(
                &json!({ "mode": mode.to_string(), "alpha": alpha, "phi": json_num(phi), "multiplets": docs }),
            )
        }
    };
    Ok(Outcome {
        body,
        notes,
        partial_failure: false,
    })
}

fn dot(
    settings: &Settings,
    config: Option<&Path>,
    d: Option<f64>,
    method: DotMethodArg,
    range: DotRange,
) -> Result<Outcome> {
    let spec = match config {
        Some(path) => {
            let mut value: serde_json::Value =
                serde_json::from_str(&std::fs::read_to_string(path)?)?;
            let object = value.as_object_mut().ok_or_else(|| {
                Error::InvalidParameter("dot config must be a JSON object".into())
            })?;
            if let Some(d) = d {
                object.insert("d".into(), json!(d));
            }
            if settings.has_potential() {
                let inplane = PotentialConfig::from(&settings.potential()?);
                object.insert("inplane".into(), serde_json::to_value(inplane)?);
                object.remove("R");
            }
            DotSpec::from_json(&value.to_string())?
        }
        None => {
            let d = d.ok_or_else(|| Error::InvalidParameter("dot thickness required".into()))?;
            DotSpec::new(d, settings.potential()?)?
        }
    };
    let method = match method {
        DotMethodArg::Exact => DotMethod::Exact(solver_config(settings, None, None)?),
        DotMethodArg::Semiclassical => DotMethod::Semiclassical { phi: settings.phi },
    };
    let table = dot_spectrum(&spec, range, method)?;
    let mut notes = vec![format!(
        "separability_defect={}",
        g12(separability_defect(&table, spec.d())?)
    )];
    let slabs: Vec<u32> = table.rows().iter().filter_map(|r| r.label.slab).collect();
    if slabs.contains(&1) && slabs.contains(&2) {
        let dk = slab_energy(2, spec.d())? - slab_energy(1, spec.d())?;
        notes.push(format!("dK(2,1)={}", g12(dk)));
    }
    let body = match settings.format {
        Format::Csv => table.to_csv_string(),
        Format::Json => {
            let mut doc = table.to_json_value();
            doc["d"] = json_num(spec.d());
            to_json_body(&doc)
        }
    };
    Ok(Outcome {
        body,
        notes,
        partial_failure: false,
    })
}

fn sweep_phi(
    settings: &Settings,
    phis: &[f64],
    phi_min: Option<f64>,
    phi_max: Option<f64>,
    steps: usize,
    levels: usize,
) -> Result<Outcome> {
    let empty = || Error::InvalidParameter("empty phi range".into());
    let phis: Vec<f64> = if !phis.is_empty() {
        phis.to_vec()
    } else {
        match (phi_min, phi_max, settings.phi) {
            (Some(a), Some(b), _) => {
                if steps == 0 || b < a || (steps == 1 && a != b) {
                    return Err(empty());
                }
                let step = if steps == 1 {
                    0.0
                } else {
                    (b - a) / (steps - 1) as f64
                };
                (0..steps)
                    .map(|i| {
                        if i + 1 == steps {
                            b
                        } else {
                            a + i as f64 * step
                        }
                    })
                    .collect()
            }
            (None, None, Some(phi)) => vec![phi],
            _ => return Err(empty()),
        }
    };
    if levels == 0 {
        return Err(Error::InvalidParameter(
            "--levels must be at least 1".into(),
        ));
    }
    let blocks = phis
        .iter()
        .map(|&phi| {
            Ok((
                phi,
                enumerate_levels(&TParams::new(phi, settings.dim)?, levels),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let body = match settings.format {
        Format::Csv => {
            let mut s = String::from("phi,rank,n,l,m,label,T\n");
            for (phi, block) in &blocks {
                for (rank, (label, t)) in block.iter().enumerate() {
                    let opt = |x: Option<String>| x.unwrap_or_default();
                    writeln!(
                        s,
                        "{},{},{},{},{},{},{}",
                        g12(*phi),
                        rank + 1,
                        label.n,
                        opt(label.l.map(|v| v.to_string())),
                        opt(label.m.map(|v| v.to_string())),
                        label.spectroscopic(),
                        g12(*t)
                    )
                    .unwrap();
                }
            }
            s
        }
        Format::Json => {
            let docs: Vec<_> = blocks
                .iter()
                .map(|(phi, block)| {
                    json!({
                        "phi": json_num(*phi),
                        "levels": block.iter().enumerate().map(|(rank, (label, t))| json!({
                            "rank": rank + 1, "n": label.n, "l": label.l, "m": label.m,
                            "label": label.spectroscopic(), "T": json_num(*t),
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            to_json_body(&json!({ "dimension": settings.dim.value(), "sweep": docs }))
        }
    };
    Ok(Outcome {
        body,
        ..Outcome::default()
    })
}

fn exact(
    settings: &Settings,
    n_max: u32,
    l_max: u32,
    h: Option<f64>,
    r_max: Option<f64>,
) -> Result<Outcome> {
    let problem = Problem::new(settings.potential()?, settings.dim);
    let table = spectrum(&problem, n_max, l_max, &solver_config(settings, h, r_max)?)?;
    let body = match settings.format {
        Format::Csv => table.to_csv_string(),
        Format::Json => to_json_body(&table.to_json_value()),
    };
    Ok(Outcome {
        body,
        ..Outcome::default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{Common, FileDefaults};

    fn settings(potential: &str, phi: Option<f64>) -> (tempfile::TempDir, Settings) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pot.json");
        std::fs::write(&path, potential).unwrap();
        let common = Common {
            potential: Some(path),
            phi,
            ..Common::default()
        };
        let s = Settings::resolve(&common, FileDefaults::default()).unwrap();
        (dir, s)
    }

    const OSC: &str = r#"{"type": "power_law", "beta": 2, "coeff": 1}"#;

    #[test]
    fn phi_line() {
        let (_d, s) = settings(OSC, None);
        let out = execute(
            &Command::Phi {
                energy: None,
                state: None,
                fit: None,
                weight: WeightArg::Literal,
            },
            &s,
        )
        .unwrap();
        assert_eq!(out.body, "phi=0.500000\n");
    }

    #[test]
    fn deform_rows() {
        let (_d, s) = settings(OSC, Some(0.5));
        let cmd = Command::Deform {
            alpha: 0.01,
            mode: "derived".into(),
            states: vec![(0, 1)],
        };
        let out = execute(&cmd, &s).unwrap();
        let lines: Vec<&str> = out.body.lines().collect();
        assert_eq!(lines[0], "n,l,m,f,dE,dT,T_deformed,mode");
        // oscillator (0,1): E = 5, K = 2.5, dE = 4·α·K·f = 0.1 f
        let field = |row: &str, i: usize| row.split(',').nth(i).unwrap().parse::<f64>().unwrap();
        assert!(
            lines[2].starts_with("0,1,0,-0.133333333333,"),
            "{}",
            lines[2]
        );
        assert!((field(lines[2], 4) + 0.1 * 2.0 / 15.0).abs() < 1e-11);
        assert!((field(lines[1], 4) - 0.1 / 15.0).abs() < 1e-11);
        assert!(lines[4].starts_with("0,1,sum,0,"), "{}", lines[4]);
    }

    #[test]
    fn sweep_needs_a_range() {
        let (_d, s) = settings(OSC, None);
        let cmd = Command::SweepPhi {
            phis: vec![],
            phi_min: None,
            phi_max: None,
            steps: 5,
            levels: 10,
        };
        assert!(execute(&cmd, &s).unwrap_err().is_config());
        let cmd = Command::SweepPhi {
            phis: vec![],
            phi_min: Some(0.5),
            phi_max: Some(0.4),
            steps: 5,
            levels: 10,
        };
        assert!(execute(&cmd, &s).is_err());
        let cmd = Command::SweepPhi {
            phis: vec![],
            phi_min: Some(0.3),
            phi_max: Some(0.5),
            steps: 3,
            levels: 2,
        };
        let body = execute(&cmd, &s).unwrap().body;
        assert_eq!(body.lines().count(), 7);
        assert!(body.lines().nth(5).unwrap().starts_with("0.5,1,0,0,,1s,"));
    }
}
