use crate::error::{Error, Result};
use crate::tnumber::{effective_t, SpectrumTable, TParams};

/// Kendall tau-b rank correlation, with the usual tie correction.
/// O(n²), which is plenty for spectra of a few hundred levels.
pub fn kendall_tau_b(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LabelMismatch(format!(
            "{} vs {} values",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::InvalidParameter("need at least two values".into()));
    }
    let (mut concordant, mut discordant) = (0i64, 0i64);
    let (mut tie_x, mut tie_y) = (0i64, 0i64);
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let dx = x[i].total_cmp(&x[j]) as i64;
            let dy = y[i].total_cmp(&y[j]) as i64;
            match (dx, dy) {
                (0, 0) => {}
                (0, _) => tie_x += 1,
                (_, 0) => tie_y += 1,
                _ if dx == dy => concordant += 1,
                _ => discordant += 1,
            }
        }
    }
    let denom = (((concordant + discordant + tie_x) as f64)
        * ((concordant + discordant + tie_y) as f64))
        .sqrt();
    if denom == 0.0 {
        return Err(Error::InvalidParameter("all values tied".into()));
    }
    Ok((concordant - discordant) as f64 / denom)
}

/// Kendall tau-b between the energy orderings of two tables over the same
/// set of states.
pub fn ordering_agreement(a: &SpectrumTable, b: &SpectrumTable) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LabelMismatch(format!(
            "{} vs {} states",
            a.len(),
            b.len()
        )));
    }
    let mut x = Vec::with_capacity(a.len());
    let mut y = Vec::with_capacity(a.len());
    for row in a.rows() {
        let other = b.energy_of(&row.label).ok_or_else(|| {
            Error::LabelMismatch(format!("{} missing from second table", row.label))
        })?;
        x.push(row.energy);
        y.push(other);
    }
    kendall_tau_b(&x, &y)
}

/// Agreement between a reference spectrum and the ordering implied by `T`.
pub fn t_ordering_agreement(reference: &SpectrumTable, params: &TParams) -> Result<f64> {
    let energies: Vec<f64> = reference.rows().iter().map(|r| r.energy).collect();
    let ts = reference
        .rows()
        .iter()
        .map(|r| effective_t(&r.label, params))
        .collect::<Result<Vec<_>>>()?;
    kendall_tau_b(&energies, &ts)
}
