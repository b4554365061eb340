//! The Numerov oracle on potentials with and without closed forms.
//!
//!     cargo run --release --example exact_oracle

use tnum::oracle::{bessel_zero, solve_radial, solve_radial_state, spectrum, SolverConfig};
use tnum::potential::{Problem, RadialPotential};

fn main() -> tnum::Result<()> {
    let config = SolverConfig::default();

    let disk = Problem::two_d(RadialPotential::hard_wall(1.0)?);
    println!("hard disk, m = 0");
    for n in 0..5 {
        let e = solve_radial(&disk, n, 0, &config)?;
        let zero = bessel_zero(0, n + 1)?;
        println!("  n = {n}: {e:.12}  j0 zero² = {:.12}", zero * zero);
    }

    let hydrogen = Problem::three_d(RadialPotential::coulomb());
    let state = solve_radial_state(&hydrogen, 1, 1, &config)?;
    println!(
        "\nhydrogen 3p: E = {:.12}, nodes = {}, <r> = {:.6} (exact 25), <u²> = {:.12}",
        state.energy,
        state.nodes,
        state.expectation(|r| r),
        state.expectation(|_| 1.0)
    );

    let quartic = Problem::three_d(RadialPotential::power_law(4.0, 1.0, 1.0)?);
    println!("\nquartic r⁴, lowest levels");
    for row in spectrum(&quartic, 2, 2, &config)?.rows() {
        println!("  {:<3} {:.10}", row.label.spectroscopic(), row.energy);
    }
    Ok(())
}
