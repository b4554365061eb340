//! The nine acceptance criteria, one PASS/FAIL line each. Exits non-zero if
//! any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use num_rational::Ratio;
use tnum::dots::{dot_spectrum, separability_defect, DotMethod, DotRange, DotSpec};
use tnum::oracle::{
    anisotropic_oscillator_shift, solve_radial, spectrum, t_ordering_agreement, SolverConfig,
};
use tnum::potential::{Dimension, Problem, RadialPotential};
use tnum::semiclassical::Quantizer;
use tnum::tnumber::{
    deformation_energy_shift, deformed_t_shift, effective_t, enumerate_levels, exponent_for_beta,
    fit_phi, fit_scaling, quadrupole_factor, quadrupole_factor_f64, virial_kinetic, DeformMode,
    StateLabel, TParams,
};

type Outcome = Result<String, String>;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn oscillator() -> Problem {
    Problem::three_d(RadialPotential::oscillator())
}

fn hydrogen() -> Problem {
    Problem::three_d(RadialPotential::coulomb())
}

fn cavity() -> Problem {
    Problem::three_d(RadialPotential::hard_wall(1.0).unwrap())
}

fn phi_exact_values() -> Outcome {
    let cavity_phi = (3.0 / (2.0 * PI * PI)).sqrt();
    let mut worst: f64 = 0.0;
    let mut check = |problem: &Problem, energy: f64, expected: f64| -> Result<(), String> {
        let phi = Quantizer::new(problem)
            .estimate_phi(energy)
            .map_err(|e| e.to_string())?;
        let err = (phi - expected).abs();
        worst = worst.max(err);
        if err > 1e-6 {
            return fail(format!("phi({energy}) = {phi}, expected {expected}"));
        }
        Ok(())
    };
    for e in [1.0, 10.0, 100.0] {
        check(&oscillator(), e, 0.5)?;
    }
    for e in [1.0, 30.0, 400.0] {
        check(&cavity(), e, cavity_phi)?;
    }
    check(&hydrogen(), -1.0, 1.0)?;
    Ok(format!("max |phi - exact| = {worst:.1e}"))
}

fn semiclassical_anchors() -> Outcome {
    let mut worst: f64 = 0.0;
    for (problem, phi) in [(oscillator(), 0.5), (hydrogen(), 1.0)] {
        let quantizer = Quantizer::new(&problem);
        let params = TParams::new(phi, Dimension::Three).unwrap();
        for n in 0..=4u32 {
            for l in 0..=4u32 {
                let t = effective_t(&StateLabel::radial(n, l), &params).unwrap();
                let e = quantizer.solve_energy(t).map_err(|e| e.to_string())?;
                let exact = if phi == 0.5 {
                    (4 * n + 2 * l + 3) as f64
                } else {
                    -1.0 / (4.0 * ((n + l + 1) as f64).powi(2))
                };
                worst = worst.max(rel(e, exact));
                if rel(e, exact) > 1e-7 {
                    return fail(format!("phi = {phi}, (n,l) = ({n},{l}): {e} vs {exact}"));
                }
            }
        }
    }
    Ok(format!("max rel err = {worst:.1e}"))
}

fn oracle_correctness() -> Outcome {
    let config = SolverConfig::default();
    let disk = Problem::two_d(RadialPotential::hard_wall(1.0).unwrap());
    // first five zeros of j0 and J0
    let sphere_zeros = [PI, 2.0 * PI, 3.0 * PI, 4.0 * PI, 5.0 * PI];
    let disk_zeros: [f64; 5] = [
        2.404825557695773,
        5.520078110286311,
        8.653727912911013,
        11.79153443901428,
        14.93091770848779,
    ];
    let mut worst: f64 = 0.0;
    let mut check = |what: &str, e: tnum::Result<f64>, exact: f64| -> Result<(), String> {
        let e = e.map_err(|err| format!("{what}: {err}"))?;
        worst = worst.max(rel(e, exact));
        if rel(e, exact) > 1e-7 {
            return fail(format!("{what}: {e} vs {exact}"));
        }
        Ok(())
    };
    for n in 0..5u32 {
        let k = n as usize;
        check(
            "sphere",
            solve_radial(&cavity(), n, 0, &config),
            sphere_zeros[k].powi(2),
        )?;
        check(
            "disk",
            solve_radial(&disk, n, 0, &config),
            disk_zeros[k].powi(2),
        )?;
    }
    // lowest five (n, l) states of each
    for (n, l) in [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1)] {
        check(
            "oscillator",
            solve_radial(&oscillator(), n, l, &config),
            (4 * n + 2 * l + 3) as f64,
        )?;
    }
    for (n, l) in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)] {
        let exact = -1.0 / (4.0 * ((n + l + 1) as f64).powi(2));
        check("hydrogen", solve_radial(&hydrogen(), n, l, &config), exact)?;
    }
    Ok(format!("max rel err = {worst:.1e}"))
}

fn deformation_first_order() -> Outcome {
    let potential = RadialPotential::oscillator();
    let config = SolverConfig::default();
    let mut violations = Vec::new();
    let mut checked = 0;
    for (n, l) in [(0u32, 0u32), (0, 1), (1, 0), (0, 2), (1, 1), (0, 3)] {
        let e = solve_radial(&oscillator(), n, l, &config).map_err(|e| e.to_string())?;
        let k = virial_kinetic(e, 2.0).map_err(|e| e.to_string())?;
        for alpha in [0.01, 0.02, 0.05] {
            for m in -(l as i32)..=l as i32 {
                let first_order =
                    deformation_energy_shift(k, alpha, m, l).map_err(|e| e.to_string())?;
                let exact = anisotropic_oscillator_shift(&potential, n, l, m, alpha)
                    .map_err(|e| e.to_string())?;
                checked += 1;
                let gap = (first_order - exact).abs();
                if gap > 5.0 * alpha * alpha * e {
                    violations.push(format!(
                        "(n={n},l={l},m={m},a={alpha}): {first_order:.5} vs {exact:.5}"
                    ));
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(format!("{checked} (state, alpha) pairs within 5 alpha^2 E"))
    } else {
        fail(format!(
            "{} of {checked} outside 5 alpha^2 E, e.g. {}",
            violations.len(),
            violations[0]
        ))
    }
}

fn quadrupole_identities() -> Outcome {
    for l in 0..=10u32 {
        let sum: Ratio<i64> = (-(l as i32)..=l as i32)
            .map(|m| quadrupole_factor(m, l).unwrap())
            .sum();
        if sum != Ratio::from_integer(0) {
            return fail(format!("sum over m for l = {l} is {sum}"));
        }
    }
    for (m, l, expected) in [
        (0, 1, Ratio::new(-2, 15)),
        (1, 1, Ratio::new(1, 15)),
        (2, 2, Ratio::new(2, 21)),
    ] {
        let f = quadrupole_factor(m, l).unwrap();
        if f != expected {
            return fail(format!("f({m},{l}) = {f}, expected {expected}"));
        }
    }
    Ok("sums vanish for l <= 10; f(0,1), f(1,1), f(2,2) exact".into())
}

fn level_ordering() -> Outcome {
    let phi = 0.389848;
    let params = TParams::new(phi, Dimension::Three).unwrap();
    let exact = spectrum(&cavity(), 4, 10, &SolverConfig::default())
        .map_err(|e| e.to_string())?
        .truncated(20);
    let tau = t_ordering_agreement(&exact, &params).map_err(|e| e.to_string())?;
    let expected = ["1s", "1p", "1d", "2s", "1f", "2p", "1g", "2d", "1h", "3s"];
    let oracle: Vec<String> = exact
        .rows()
        .iter()
        .take(10)
        .map(|r| r.label.spectroscopic())
        .collect();
    let by_t: Vec<String> = enumerate_levels(&params, 10)
        .iter()
        .map(|(s, _)| s.spectroscopic())
        .collect();
    if oracle != expected {
        return fail(format!("oracle order {}", oracle.join(",")));
    }
    if by_t != expected {
        return fail(format!("T order {}", by_t.join(",")));
    }
    if tau < 0.95 {
        return fail(format!("kendall tau = {tau:.4} over 20 levels"));
    }
    Ok(format!(
        "first 10 match, kendall tau = {tau:.4} over 20 levels"
    ))
}

fn scaling_law() -> Outcome {
    let config = SolverConfig::default();
    let osc = spectrum(&oscillator(), 3, 3, &config).map_err(|e| e.to_string())?;
    let hyd = spectrum(&hydrogen(), 3, 3, &config).map_err(|e| e.to_string())?;
    let p3 = |phi| TParams::new(phi, Dimension::Three).unwrap();
    let fit_osc = fit_scaling(&osc, &p3(0.5)).map_err(|e| e.to_string())?;
    let fit_hyd = fit_scaling(&hyd, &p3(1.0)).map_err(|e| e.to_string())?;
    if (fit_osc.prefactor - 4.0).abs() > 1e-6 || (fit_osc.exponent - 1.0).abs() > 1e-6 {
        return fail(format!(
            "oscillator F = {}, p = {}",
            fit_osc.prefactor, fit_osc.exponent
        ));
    }
    if (fit_hyd.exponent + 2.0).abs() > 1e-6 {
        return fail(format!("hydrogen p = {}", fit_hyd.exponent));
    }
    let phi_osc = fit_phi(&osc, Dimension::Three)
        .map_err(|e| e.to_string())?
        .phi;
    let phi_hyd = fit_phi(&hyd, Dimension::Three)
        .map_err(|e| e.to_string())?
        .phi;
    if (phi_osc - 0.5).abs() > 1e-3 || (phi_hyd - 1.0).abs() > 1e-3 {
        return fail(format!("fitted phi = {phi_osc} / {phi_hyd}"));
    }
    Ok(format!(
        "F = {:.9}, p = {:.9}; hydrogen p = {:.9}; phi = {phi_osc:.6} / {phi_hyd:.6}",
        fit_osc.prefactor, fit_osc.exponent, fit_hyd.exponent
    ))
}

fn quantum_dot() -> Outcome {
    let d = 0.5;
    let spec =
        DotSpec::new(d, RadialPotential::hard_wall(1.0).unwrap()).map_err(|e| e.to_string())?;
    let range = DotRange::Box {
        slab_max: 3,
        n_max: 2,
        m_max: 3,
    };
    let table = dot_spectrum(&spec, range, DotMethod::Exact(SolverConfig::default()))
        .map_err(|e| e.to_string())?;
    let ground = table.rows()[0];
    let expected = PI * PI / (d * d) + 2.404825557695773f64.powi(2);
    if ground.label != StateLabel::dot(1, 0, 0).unwrap() || (ground.energy - expected).abs() > 1e-6
    {
        return fail(format!(
            "ground {} at {}, expected {expected}",
            ground.label, ground.energy
        ));
    }
    let defect = separability_defect(&table, d).map_err(|e| e.to_string())?;
    if defect > 1e-12 {
        return fail(format!("separability defect {defect:e}"));
    }
    Ok(format!(
        "ground = {:.9}, separability defect = {defect:.1e} over {} rows",
        ground.energy,
        table.len()
    ))
}

fn deformation_consistency() -> Outcome {
    let alpha = 0.01;
    let mut worst: f64 = 0.0;
    for beta in [-1.0, 1.0, 2.0, 4.0] {
        let coeff = if beta < 0.0 { -1.0 } else { 1.0 };
        let problem = Problem::three_d(RadialPotential::power_law(beta, coeff, 1.0).unwrap());
        let quantizer = Quantizer::new(&problem);
        let phi = quantizer
            .estimate_phi(problem.potential.characteristic_energy())
            .map_err(|e| e.to_string())?;
        let params = TParams::new(phi, Dimension::Three).unwrap();
        let p = exponent_for_beta(beta).unwrap();
        for (n, l) in [(0u32, 1u32), (1, 2), (0, 3)] {
            let t = effective_t(&StateLabel::radial(n, l), &params).unwrap();
            let e = quantizer.solve_energy(t).map_err(|e| e.to_string())?;
            let k = virial_kinetic(e, beta).unwrap();
            for m in 0..=l as i32 {
                // E ∝ T^p, so δT/T = δE/(pE)
                let composed = deformation_energy_shift(k, alpha, m, l).unwrap() / (p * e);
                let f = quadrupole_factor_f64(m, l).unwrap();
                worst = worst.max((composed - 2.0 * alpha * f).abs());
                let state = StateLabel::with_m(n, l, m).unwrap();
                let derived =
                    deformed_t_shift(&state, &params, alpha, DeformMode::DerivedConsistent)
                        .unwrap();
                let paper =
                    deformed_t_shift(&state, &params, alpha, DeformMode::PaperLiteral).unwrap();
                if 4.0 * paper != derived {
                    return fail(format!(
                        "paper {paper} is not a quarter of derived {derived}"
                    ));
                }
                worst = worst.max((derived / t - composed).abs());
            }
        }
    }
    if worst > 1e-10 {
        return fail(format!("dT/T deviates from 2 alpha f by {worst:e}"));
    }
    Ok(format!(
        "dT/T = 2 alpha f to {worst:.1e} for beta in {{-1,1,2,4}}; paper = derived/4 exactly"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("phi exact values", phi_exact_values),
        ("semiclassical exactness anchors", semiclassical_anchors),
        ("oracle vs closed forms", oracle_correctness),
        (
            "deformation first order vs anisotropic oscillator",
            deformation_first_order,
        ),
        ("quadrupole identities", quadrupole_identities),
        ("level ordering", level_ordering),
        ("scaling law and phi fit", scaling_law),
        ("quantum dot", quantum_dot),
        ("deformation internal consistency", deformation_consistency),
    ];
    let started = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let (tag, detail) = match check() {
            Ok(detail) => ("PASS", detail),
            Err(detail) => {
                failed += 1;
                ("FAIL", detail)
            }
        };
        println!(
            "{tag} {} {name}: {detail} [{:.2}s]",
            i + 1,
            t0.elapsed().as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
