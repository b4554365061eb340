//! A flat cylindrical dot: slab modes plus a hard-disk in-plane spectrum.
//!
//!     cargo run --release --example quantum_dot

use tnum::dots::{
    dot_spectrum, inplane_phi, separability_defect, slab_energy, DotMethod, DotRange, DotSpec,
};
use tnum::oracle::SolverConfig;

fn main() -> tnum::Result<()> {
    let spec = DotSpec::from_path(
        concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/examples/data/hard_disk_dot.json"
        )
        .as_ref(),
    )?;
    let range = DotRange::Box {
        slab_max: 2,
        n_max: 2,
        m_max: 3,
    };
    let exact = dot_spectrum(&spec, range, DotMethod::Exact(SolverConfig::default()))?;
    let phi = inplane_phi(&spec)?;
    let semi = dot_spectrum(&spec, range, DotMethod::Semiclassical { phi: Some(phi) })?;

    println!("d = {}, in-plane phi = {phi:.6}", spec.d());
    println!(
        "{:>2} {:>2} {:>2} {:>14} {:>14}",
        "N", "n", "m", "exact", "semiclassical"
    );
    for row in exact.rows().iter().take(12) {
        let semi_e = semi.energy_of(&row.label).unwrap_or(f64::NAN);
        println!(
            "{:>2} {:>2} {:>2} {:>14.6} {:>14.6}",
            row.label.slab.unwrap_or(0),
            row.label.n,
            row.label.m.unwrap_or(0),
            row.energy,
            semi_e
        );
    }
    println!(
        "\nK(2) - K(1) = {:.6}",
        slab_energy(2, spec.d())? - slab_energy(1, spec.d())?
    );
    println!(
        "separability defect = {:.2e}",
        separability_defect(&exact, spec.d())?
    );

    let low = dot_spectrum(
        &spec,
        DotRange::Cutoff { e_cut: 120.0 },
        DotMethod::Exact(SolverConfig::default()),
    )?;
    println!("{} levels below E = 120", low.len());
    Ok(())
}
