//! φ from the action integral across the power-law family, and its energy
//! dependence for a potential that is not scale-free.
//!
//!     cargo run --example phi_estimates

use tnum::potential::{Problem, RadialPotential};
use tnum::semiclassical::Quantizer;

fn main() -> tnum::Result<()> {
    println!("{:>8} {:>12}", "beta", "phi");
    for beta in [-1.5, -1.0, -0.5, 0.5, 1.0, 2.0, 4.0, 8.0] {
        let coeff = if beta < 0.0 { -1.0 } else { 1.0 };
        let problem = Problem::three_d(RadialPotential::power_law(beta, coeff, 1.0)?);
        let energy = problem.potential.characteristic_energy();
        let phi = Quantizer::new(&problem).estimate_phi(energy)?;
        println!("{beta:>8} {phi:>12.6}");
    }
    let cavity = Problem::three_d(RadialPotential::hard_wall(1.0)?);
    println!(
        "{:>8} {:>12.6}",
        "wall",
        Quantizer::new(&cavity).estimate_phi(50.0)?
    );

    // r² + r⁴/4 drifts from the oscillator value toward the quartic one
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/anharmonic_table.json"
    );
    let table = Problem::three_d(RadialPotential::from_path(path)?);
    let quantizer = Quantizer::new(&table);
    println!("\nanharmonic table");
    for energy in [0.5, 2.0, 8.0, 32.0, 128.0] {
        println!(
            "  E = {energy:>6}: phi = {:.6}",
            quantizer.estimate_phi(energy)?
        );
    }
    Ok(())
}
