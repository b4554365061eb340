//! How the T-ordering of the lowest levels reorganizes with φ, and how well
//! it tracks the exact cavity ordering.
//!
//!     cargo run --release --example level_ordering_sweep

use tnum::oracle::{spectrum, t_ordering_agreement, SolverConfig};
use tnum::potential::{Dimension, Problem, RadialPotential};
use tnum::tnumber::{enumerate_levels, TParams};

fn main() -> tnum::Result<()> {
    for phi in [0.25, 0.389848, 0.5, 0.75, 1.0] {
        let levels = enumerate_levels(&TParams::new(phi, Dimension::Three)?, 10);
        let labels: Vec<String> = levels
            .iter()
            .map(|(s, t)| format!("{}({t:.2})", s.spectroscopic()))
            .collect();
        println!("phi = {phi:<8} {}", labels.join(" "));
    }

    let cavity = Problem::three_d(RadialPotential::hard_wall(1.0)?);
    let exact = spectrum(&cavity, 4, 8, &SolverConfig::default())?.truncated(20);
    let labels: Vec<String> = exact
        .rows()
        .iter()
        .map(|r| r.label.spectroscopic())
        .collect();
    println!("\ncavity, exact: {}", labels.join(" "));
    for phi in [0.3, 0.35, 0.389848, 0.45, 0.5] {
        let tau = t_ordering_agreement(&exact, &TParams::new(phi, Dimension::Three)?)?;
        println!("  phi = {phi:<8} kendall tau = {tau:.4}");
    }
    Ok(())
}
