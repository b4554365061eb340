//! Globally adaptive 7/15-point Gauss–Kronrod quadrature, plus a wrapper that
//! absorbs square-root behaviour at both interval ends.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

const MAX_INTERVALS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let sum = f(center - dx) + f(center + dx);
        kron += w * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    Panel {
        a,
        b,
        value: kron * half,
        error: ((kron - gauss) * half).abs(),
    }
}

/// Integrates `f` over `[a, b]` until the estimated error is below
/// `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Quadrature> {
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            error: 0.0,
        });
    }
    let rel_tol = rel_tol.max(50.0 * f64::EPSILON);
    let mut panels = vec![kronrod(&f, a, b)];
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if !value.is_finite() {
            return Err(Error::NonConvergence(format!(
                "non-finite integrand on [{a}, {b}]"
            )));
        }
        if error <= abs_tol.max(rel_tol * value.abs()) {
            return Ok(Quadrature { value, error });
        }
        if panels.len() >= MAX_INTERVALS {
            return Err(Error::NonConvergence(format!(
                "quadrature on [{a}, {b}] stalled at error {error:e} (value {value:e})"
            )));
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // Panel cannot be split further in floating point.
            return Ok(Quadrature { value, error });
        }
        panels.push(kronrod(&f, p.a, mid));
        panels.push(kronrod(&f, mid, p.b));
    }
}

/// Integrates `f` over `[a, b]` where `f` may behave like `√(x − a)`,
/// `√(b − x)` or `1/√(x − a)` at the ends. Each half is mapped through
/// `x = end ± t²`, which turns those endpoint behaviours into smooth ones.
pub fn integrate_sqrt_endpoints<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<Quadrature> {
    if b <= a {
        return Ok(Quadrature {
            value: 0.0,
            error: 0.0,
        });
    }
    let half = 0.5 * (b - a);
    let span = half.sqrt();
    let left = integrate(|t: f64| 2.0 * t * f(a + t * t), 0.0, span, 0.0, rel_tol)?;
    let right = integrate(|t: f64| 2.0 * t * f(b - t * t), 0.0, span, 0.0, rel_tol)?;
    Ok(Quadrature {
        value: left.value + right.value,
        error: left.error + right.error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomials_are_exact() {
        let q = integrate(|x| x.powi(5) - 3.0 * x * x, -1.0, 2.0, 0.0, 1e-14).unwrap();
        assert!((q.value - (64.0 / 6.0 - 1.0 / 6.0 - 9.0)).abs() < 1e-13);
    }

    #[test]
    fn semicircle_with_sqrt_edges() {
        let q =
            integrate_sqrt_endpoints(|x| (1.0 - x * x).max(0.0).sqrt(), -1.0, 1.0, 1e-13).unwrap();
        assert!((q.value - PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn inverse_sqrt_singularity() {
        // ∫0^1 1/√x dx = 2
        let q = integrate_sqrt_endpoints(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-13).unwrap();
        assert!((q.value - 2.0).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_integrand() {
        let q = integrate(|x| (10.0 * x).cos(), 0.0, PI, 1e-13, 1e-12).unwrap();
        assert!(q.value.abs() < 1e-12);
    }
}
