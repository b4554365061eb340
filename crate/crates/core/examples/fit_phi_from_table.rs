//! Calibrating φ and the scaling law E = F·T^p from a level table, here
//! written to CSV and read back the way an external table would be.
//!
//!     cargo run --release --example fit_phi_from_table

use tnum::oracle::{spectrum, SolverConfig};
use tnum::potential::{Dimension, Problem, RadialPotential};
use tnum::tnumber::{fit_phi, fit_scaling, SpectrumTable, TParams};

fn main() -> tnum::Result<()> {
    for (name, potential) in [
        ("oscillator", RadialPotential::oscillator()),
        ("coulomb", RadialPotential::coulomb()),
        ("r^1", RadialPotential::power_law(1.0, 1.0, 1.0)?),
        ("r^4", RadialPotential::power_law(4.0, 1.0, 1.0)?),
    ] {
        let table = spectrum(&Problem::three_d(potential), 3, 3, &SolverConfig::default())?;
        let mut csv = Vec::new();
        table.write_csv(&mut csv)?;
        let table = SpectrumTable::read_csv(csv.as_slice())?;

        let fit = fit_phi(&table, Dimension::Three)?;
        println!(
            "{name:<11} phi = {:.4}  F = {:.5}  p = {:.5}  rms = {:.1e}  tau = {:.3}",
            fit.phi,
            fit.scaling.prefactor,
            fit.scaling.exponent,
            fit.scaling.residual_rms,
            fit.ordering_tau
        );
        if name == "oscillator" {
            let at_half = fit_scaling(&table, &TParams::new(0.5, Dimension::Three)?)?;
            println!(
                "{:<11} fixed phi = 0.5: F = {:.9}, p = {:.9}",
                "", at_half.prefactor, at_half.exponent
            );
        }
    }
    Ok(())
}
