use super::{effective_t, StateLabel, TParams};
use crate::potential::Dimension;

/// The `count` states with the smallest `T`, ascending, ties broken by `(l, n)`.
/// In 2D each `|m|` appears once.
pub fn enumerate_levels(params: &TParams, count: usize) -> Vec<(StateLabel, f64)> {
    // T grows with both n and λ, so the lowest `count` states have n, λ < count.
    let bound = count as u32;
    let mut levels: Vec<(StateLabel, f64)> = (0..bound)
        .flat_map(|n| (0..bound).map(move |a| (n, a)))
        .map(|(n, a)| {
            let label = match params.dimension() {
                Dimension::Three => StateLabel::radial(n, a),
                Dimension::Two => StateLabel::planar(n, a as i32),
            };
            let t = effective_t(&label, params).expect("label matches dimension");
            (label, t)
        })
        .collect();
    levels.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.cmp_order(&b.0)));
    levels.truncate(count);
    levels
}
