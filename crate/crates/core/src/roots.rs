//! Bracketed scalar root finding.

use crate::error::{Error, Result};

/// Brent's method on a sign-changing bracket `[a, b]`.
///
/// Stops when the bracket shrinks below `xtol + rtol·|x|` or `|f(x)| <= ftol`.
pub fn brent<F>(
    mut f: F,
    a: f64,
    b: f64,
    xtol: f64,
    rtol: f64,
    ftol: f64,
    max_iter: usize,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut xpre, mut xcur) = (a, b);
    let (mut fpre, mut fcur) = (f(a)?, f(b)?);
    if fpre == 0.0 {
        return Ok(xpre);
    }
    if fcur == 0.0 {
        return Ok(xcur);
    }
    if fpre.signum() == fcur.signum() {
        return Err(Error::NonConvergence(format!(
            "root not bracketed: f({a}) = {fpre:e}, f({b}) = {fcur:e}"
        )));
    }
    let (mut xblk, mut fblk) = (0.0, 0.0);
    let (mut spre, mut scur) = (0.0, 0.0);

    for _ in 0..max_iter {
        if fpre != 0.0 && fcur != 0.0 && fpre.signum() != fcur.signum() {
            xblk = xpre;
            fblk = fpre;
            spre = xcur - xpre;
            scur = spre;
        }
        if fblk.abs() < fcur.abs() {
            xpre = xcur;
            xcur = xblk;
            xblk = xpre;
            fpre = fcur;
            fcur = fblk;
            fblk = fpre;
        }

        let delta = 0.5 * (xtol + rtol * xcur.abs());
        let sbis = 0.5 * (xblk - xcur);
        if fcur == 0.0 || fcur.abs() <= ftol || sbis.abs() < delta {
            return Ok(xcur);
        }

        if spre.abs() > delta && fcur.abs() < fpre.abs() {
            let stry = if xpre == xblk {
                -fcur * (xcur - xpre) / (fcur - fpre)
            } else {
                let dpre = (fpre - fcur) / (xpre - xcur);
                let dblk = (fblk - fcur) / (xblk - xcur);
                -fcur * (fblk * dblk - fpre * dpre) / (dblk * dpre * (fblk - fpre))
            };
            if 2.0 * stry.abs() < spre.abs().min(3.0 * sbis.abs() - delta) {
                spre = scur;
                scur = stry;
            } else {
                spre = sbis;
                scur = sbis;
            }
        } else {
            spre = sbis;
            scur = sbis;
        }

        xpre = xcur;
        fpre = fcur;
        xcur += if scur.abs() > delta {
            scur
        } else {
            delta.copysign(sbis)
        };
        fcur = f(xcur)?;
    }
    Err(Error::NonConvergence(format!(
        "Brent iteration budget of {max_iter} exhausted"
    )))
}

/// Bisection on a monotone boolean predicate: `pred(lo)` false, `pred(hi)` true.
/// Returns the final `(lo, hi)` bracket of the transition.
pub fn bisect_predicate<P>(
    mut pred: P,
    mut lo: f64,
    mut hi: f64,
    rtol: f64,
    atol: f64,
    max_iter: usize,
) -> Result<(f64, f64)>
where
    P: FnMut(f64) -> Result<bool>,
{
    for _ in 0..max_iter {
        if hi - lo <= atol + rtol * lo.abs().max(hi.abs()) {
            return Ok((lo, hi));
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok((lo, hi));
        }
        if pred(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo, hi))
}
