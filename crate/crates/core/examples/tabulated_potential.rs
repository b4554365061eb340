//! A potential known only on a grid: φ, oracle levels and mean kinetic
//! energies, and the deformation splitting that uses them.
//!
//!     cargo run --release --example tabulated_potential

use tnum::oracle::{solve_radial_state, SolverConfig};
use tnum::potential::{Problem, RadialPotential};
use tnum::semiclassical::Quantizer;
use tnum::tnumber::deformation_energy_shift;

fn main() -> tnum::Result<()> {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/anharmonic_table.json"
    );
    let problem = Problem::three_d(RadialPotential::from_path(path)?);
    let quantizer = Quantizer::new(&problem);
    let config = SolverConfig::default();
    println!(
        "{:<4} {:>12} {:>12} {:>8} {:>12}",
        "", "E", "<K>", "phi(E)", "dE(m=0)"
    );
    for (n, l) in [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1)] {
        let state = solve_radial_state(&problem, n, l, &config)?;
        let kinetic = state.mean_kinetic(&problem.potential);
        println!(
            "{n},{l}  {:>12.6} {kinetic:>12.6} {:>8.4} {:>12.6}",
            state.energy,
            quantizer.estimate_phi(state.energy)?,
            deformation_energy_shift(kinetic, 0.02, 0, l)?
        );
    }
    Ok(())
}
