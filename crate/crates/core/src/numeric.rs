//! Scalar numerical kernels: grids, bisection, adaptive Simpson quadrature.

use crate::error::{Error, Result};

/// `n` evenly spaced nodes on `[lo, hi]`, endpoints included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + i as f64 * step })
                .collect()
        }
    }
}

/// Bisection on a bracketing interval: `f(lo)` and `f(hi)` must have opposite
/// signs (or one endpoint is an exact zero). Refines until the interval is
/// narrower than `xtol` and returns the midpoint.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, xtol: f64) -> f64 {
    let mut flo = f(lo);
    if flo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    debug_assert!(flo.signum() != f(hi).signum(), "bisect requires a bracket");
    // 64 halvings reach f64 resolution from any finite bracket
    for _ in 0..64 {
        if (hi - lo).abs() < xtol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return mid;
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Central finite difference of `f` at `x` with half-width `h`.
pub fn central_diff<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Adaptive Simpson integration of `f` over `[a, b]` to absolute tolerance
/// `abs_tol`. Errors if `max_evals` integrand evaluations are exhausted.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_evals: usize,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let mut evals = 3usize;
    let (fa, fb) = (f(a), f(b));
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson_panel(a, b, fa, fm, fb);
    let value = recurse(
        f, a, b, fa, fm, fb, whole, abs_tol, 48, &mut evals, max_evals,
    )?;
    Ok(value)
}

fn simpson_panel(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    evals: &mut usize,
    max_evals: usize,
) -> Result<f64> {
    if *evals + 2 > max_evals {
        return Err(Error::Quadrature { evals: *evals });
    }
    *evals += 2;
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson_panel(a, m, fa, flm, fm);
    let right = simpson_panel(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        // Richardson correction: one order beyond plain Simpson
        return Ok(left + right + delta / 15.0);
    }
    let half = 0.5 * tol;
    let l = recurse(
        f,
        a,
        m,
        fa,
        flm,
        fm,
        left,
        half,
        depth - 1,
        evals,
        max_evals,
    )?;
    let r = recurse(
        f,
        m,
        b,
        fm,
        frm,
        fb,
        right,
        half,
        depth - 1,
        evals,
        max_evals,
    )?;
    Ok(l + r)
}
