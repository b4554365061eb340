//! First-order splitting against the exact anisotropic oscillator where the
//! comparison is meaningful state by state, and block by block where it is not.

use std::collections::BTreeMap;

use proptest::prelude::*;
use tnum::oracle::anisotropic_oscillator_shift;
use tnum::potential::RadialPotential;
use tnum::tnumber::{deformation_energy_shift, quadrupole_factor, virial_kinetic};

fn oscillator_states(max_shell: u32) -> impl Iterator<Item = (u32, u32, i32)> {
    (0..=max_shell).flat_map(move |shell| {
        (0..=shell / 2).flat_map(move |n| {
            let l = shell - 2 * n;
            (-(l as i32)..=l as i32).map(move |m| (n, l, m))
        })
    })
}

fn shifts(n: u32, l: u32, m: i32, alpha: f64) -> (f64, f64, f64) {
    let e = (4 * n + 2 * l + 3) as f64;
    let k = virial_kinetic(e, 2.0).unwrap();
    let first = deformation_energy_shift(k, alpha, m, l).unwrap();
    let exact =
        anisotropic_oscillator_shift(&RadialPotential::oscillator(), n, l, m, alpha).unwrap();
    (e, first, exact)
}

#[test]
fn unmixed_states_agree() {
    // The shell's other l values are l − 2, l − 4, …, and only n = 0 has
    // l at the top of its shell; |m| > l − 2 keeps them out of the block.
    let unmixed = |&(n, l, m): &(u32, u32, i32)| n == 0 && m.unsigned_abs() + 2 > l;
    for alpha in [0.01, 0.02, 0.05] {
        for (n, l, m) in oscillator_states(4).filter(unmixed) {
            let (e, first, exact) = shifts(n, l, m, alpha);
            assert!(
                (first - exact).abs() <= 5.0 * alpha * alpha * e,
                "({n},{l},{m}) at {alpha}: {first} vs {exact}"
            );
        }
    }
}

#[test]
fn block_traces_agree() {
    // The spherical basis does not diagonalize a (shell, m) block with several
    // l, but the trace over the block is basis independent.
    let alpha = 0.03;
    let mut blocks: BTreeMap<(u32, i32), (f64, f64)> = BTreeMap::new();
    for (n, l, m) in oscillator_states(6) {
        let (_, first, exact) = shifts(n, l, m, alpha);
        let entry = blocks.entry((2 * n + l, m)).or_default();
        entry.0 += first;
        entry.1 += exact;
    }
    for ((shell, m), (first, exact)) in blocks {
        assert!(
            (first - exact).abs() < 1e-12,
            "shell {shell}, m = {m}: {first} vs {exact}"
        );
    }
}

#[test]
fn mixed_states_disagree() {
    let (_, first, exact) = shifts(1, 0, 0, 0.01);
    assert_eq!(first, 0.0);
    assert!(exact > 0.01);
}

proptest! {
    #[test]
    fn multiplet_sums_vanish(l in 0u32..40) {
        let sum: num_rational::Ratio<i64> = (-(l as i32)..=l as i32).map(|m| quadrupole_factor(m, l).unwrap()).sum();
        prop_assert_eq!(sum, num_rational::Ratio::from_integer(0));
    }

    #[test]
    fn factor_is_even_in_m(l in 0u32..40, m in 0i32..40) {
        prop_assume!(m as u32 <= l);
        prop_assert_eq!(quadrupole_factor(m, l).unwrap(), quadrupole_factor(-m, l).unwrap());
    }
}
