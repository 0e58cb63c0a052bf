//! Integral Lyapunov candidate around the stable equilibrium.
//!
//! With the field shifted to the equilibrium, `L(x) = -∫₀ˣ f` is zero at the
//! origin and grows in both directions as long as `f` is restoring (positive
//! below the equilibrium, negative above). Its orbital derivative is the
//! closed form `dL/dt = L'(x)·ẋ = -f(x)²`, never positive, which is what
//! makes the candidate a Lyapunov function on any window inside the basin.
//!
//! The field is not exactly odd about the equilibrium, so no symmetry is
//! assumed anywhere; [`oddness_defect`] quantifies the asymmetry instead.

use crate::dynamics::SwingSystem;
use crate::equilibria;
use crate::error::{Error, Result};
use crate::fmt::fmt_g;
use crate::model::ModelDef;
use crate::numeric;

/// Absolute quadrature tolerance for [`lyapunov_value`]; window values are
/// O(1e-4..1e-2), so this leaves plenty of clean digits.
pub const QUADRATURE_TOL: f64 = 1e-10;
/// Integrand-evaluation budget before [`Error::Quadrature`].
pub const QUADRATURE_MAX_EVALS: usize = 1_000_000;

/// One sampled point of the candidate and its orbital derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovSample {
    pub x: f64,
    pub l: f64,
    pub dl_dt: f64,
}

/// Machine-checkable record of the two Lyapunov conditions on a window.
#[derive(Debug, Clone)]
pub struct LyapunovReport {
    pub v_w: f64,
    /// Stable equilibrium the window is centered on.
    pub s0: f64,
    /// Displacement window `(x_lo, x_hi)` around the equilibrium.
    pub window: (f64, f64),
    /// `L(0)`; zero by construction.
    pub l_zero: f64,
    /// `L(x) > 0` for every sampled `x != 0`.
    pub positivity_ok: bool,
    /// `dL/dt <= 0` at every sample.
    pub derivative_ok: bool,
    pub samples: Vec<LyapunovSample>,
}

impl LyapunovReport {
    /// CSV export: `x,L,dLdt` rows plus one `#`-prefixed summary line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,L,dLdt\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{},{},{}\n",
                fmt_g(s.x),
                fmt_g(s.l),
                fmt_g(s.dl_dt)
            ));
        }
        out.push_str(&format!(
            "# summary v_w={} s0={} window={}:{} l_zero={} positivity_ok={} derivative_ok={}\n",
            fmt_g(self.v_w),
            fmt_g(self.s0),
            fmt_g(self.window.0),
            fmt_g(self.window.1),
            fmt_g(self.l_zero),
            self.positivity_ok,
            self.derivative_ok
        ));
        out
    }
}

/// `L(x) = -∫₀ˣ f(x') dx'` by adaptive Simpson quadrature. `L(0) = 0`
/// exactly by construction.
pub fn lyapunov_value(model: &ModelDef, v_w: f64, s0: f64, x: f64) -> Result<f64> {
    let sys = SwingSystem::new(model)?;
    value_sys(&sys, v_w, s0, x)
}

fn value_sys(sys: &SwingSystem, v_w: f64, s0: f64, x: f64) -> Result<f64> {
    if x == 0.0 {
        return Ok(0.0);
    }
    let f = |xp: f64| sys.accel(v_w, s0 + xp);
    let integral = if x > 0.0 {
        numeric::adaptive_simpson(&f, 0.0, x, QUADRATURE_TOL, QUADRATURE_MAX_EVALS)?
    } else {
        -numeric::adaptive_simpson(&f, x, 0.0, QUADRATURE_TOL, QUADRATURE_MAX_EVALS)?
    };
    Ok(-integral)
}

/// Orbital derivative `dL/dt = -f(x)²`, taken from the closed form rather
/// than by differentiating the quadrature.
pub fn lyapunov_derivative(model: &ModelDef, v_w: f64, s0: f64, x: f64) -> Result<f64> {
    let sys = SwingSystem::new(model)?;
    Ok(derivative_sys(&sys, v_w, s0, x))
}

fn derivative_sys(sys: &SwingSystem, v_w: f64, s0: f64, x: f64) -> f64 {
    let f = sys.accel(v_w, s0 + x);
    -(f * f)
}

/// Samples `L` and `dL/dt` on `n_samples` uniform points of `window` around
/// the stable equilibrium for `v_w` and checks the two Lyapunov conditions.
///
/// A failed positivity flag is a result, not an error — expected whenever
/// the window crosses the unstable equilibrium.
pub fn verify_candidate(
    model: &ModelDef,
    v_w: f64,
    window: (f64, f64),
    n_samples: usize,
) -> Result<LyapunovReport> {
    let (x_lo, x_hi) = window;
    if !(x_lo <= 0.0 && 0.0 <= x_hi) {
        return Err(Error::InvalidWindow(format!(
            "window [{x_lo}, {x_hi}] must contain 0"
        )));
    }
    let s0 = equilibria::stable_equilibrium(model, v_w)?.s_star;
    if s0 + x_lo <= -1.0 {
        return Err(Error::WindowExceedsDomain(format!(
            "s0 + x_lo = {} <= -1",
            s0 + x_lo
        )));
    }
    if s0 + x_hi > model.slip_domain_upper {
        return Err(Error::WindowExceedsDomain(format!(
            "s0 + x_hi = {} exceeds slip_domain_upper = {}",
            s0 + x_hi,
            model.slip_domain_upper
        )));
    }
    let sys = SwingSystem::new(model)?;
    let xs = if x_lo == x_hi {
        vec![x_lo]
    } else {
        numeric::linspace(x_lo, x_hi, n_samples.max(2))
    };
    let mut samples = Vec::with_capacity(xs.len());
    let mut positivity_ok = true;
    let mut derivative_ok = true;
    for x in xs {
        let l = value_sys(&sys, v_w, s0, x)?;
        let dl_dt = derivative_sys(&sys, v_w, s0, x);
        if x != 0.0 && (l.is_nan() || l <= 0.0) {
            positivity_ok = false;
        }
        if dl_dt.is_nan() || dl_dt > 0.0 {
            derivative_ok = false;
        }
        samples.push(LyapunovSample { x, l, dl_dt });
    }
    Ok(LyapunovReport {
        v_w,
        s0,
        window,
        l_zero: value_sys(&sys, v_w, s0, 0.0)?,
        positivity_ok,
        derivative_ok,
        samples,
    })
}

/// Asymmetry diagnostic `max |f(x) + f(-x)|` over `n` samples of
/// `(0, x_max]`. Zero only for an exactly odd field, which this one is not.
pub fn oddness_defect(model: &ModelDef, v_w: f64, s0: f64, x_max: f64, n: usize) -> Result<f64> {
    let sys = SwingSystem::new(model)?;
    let mut worst: f64 = 0.0;
    for x in numeric::linspace(x_max / n as f64, x_max, n) {
        worst = worst.max((sys.accel(v_w, s0 + x) + sys.accel(v_w, s0 - x)).abs());
    }
    Ok(worst)
}
