//! Splitting of oscillator shells under a small quadrupole deformation:
//! first-order `4αK f(m,l)` beside the anisotropic-oscillator shift.
//!
//!     cargo run --release --example deformation_splitting

use tnum::oracle::{anisotropic_oscillator_shift, solve_radial, SolverConfig};
use tnum::potential::{Dimension, Problem, RadialPotential};
use tnum::tnumber::{
    deformation_energy_shift, deformed_t_shift, quadrupole_factor, virial_kinetic, DeformMode,
    StateLabel, TParams,
};

fn main() -> tnum::Result<()> {
    let alpha = 0.02;
    let potential = RadialPotential::oscillator();
    let problem = Problem::three_d(potential.clone());
    let params = TParams::new(0.5, Dimension::Three)?;
    println!("alpha = {alpha}");
    println!(
        "{:<4} {:>3} {:>8} {:>12} {:>12} {:>12} {:>12}",
        "", "m", "f", "4aKf", "aniso", "dT", "dT paper"
    );
    for (n, l) in [(0, 1), (0, 2), (1, 1), (0, 3)] {
        let e = solve_radial(&problem, n, l, &SolverConfig::default())?;
        let k = virial_kinetic(e, 2.0)?;
        for m in 0..=l as i32 {
            let state = StateLabel::with_m(n, l, m)?;
            println!(
                "{:<4} {m:>3} {:>8} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
                state.spectroscopic(),
                quadrupole_factor(m, l)?.to_string(),
                deformation_energy_shift(k, alpha, m, l)?,
                anisotropic_oscillator_shift(&potential, n, l, m, alpha)?,
                deformed_t_shift(&state, &params, alpha, DeformMode::DerivedConsistent)?,
                deformed_t_shift(&state, &params, alpha, DeformMode::PaperLiteral)?,
            );
        }
    }
    Ok(())
}
