//! Stationary points of the swing equation for a given wind velocity.
//!
//! `g(s) = T_m(s) - T_e(s)` is scanned on a bracketing grid over
//! `[1e-6, slip_domain_upper]`; each sign change is refined by bisection.
//! Bisection rather than Newton: `T_e` has a steep shoulder just past the
//! pull-out slip, and the bracketing grid guarantees convergence there.

use crate::dynamics::SwingSystem;
use crate::error::{Error, Result};
use crate::fmt::fmt_g;
use crate::model::ModelDef;
use crate::numeric;

/// Bracketing-grid size over the slip domain.
const SCAN_POINTS: usize = 2000;
/// Lower edge of the scan; avoids the trivial `g > 0` limit point at s = 0.
const SCAN_FLOOR: f64 = 1e-6;
/// Bisection interval-width target.
const ROOT_XTOL: f64 = 1e-12;
/// Half-width of the central difference used for stability classification.
const SLOPE_H: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Unstable,
}

impl Stability {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stability::Stable => "stable",
            Stability::Unstable => "unstable",
        }
    }
}

/// A refined root of `T_m - T_e` with its classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equilibrium {
    /// Slip of the stationary point (pu).
    pub s_star: f64,
    /// Wind velocity it belongs to (pu).
    pub v_w: f64,
    pub stability: Stability,
    /// `|T_m - T_e|` at `s_star` (pu).
    pub residual: f64,
}

/// Finds and classifies every root of `T_m - T_e` on the analysis domain,
/// sorted by slip. Errors with [`Error::NoEquilibrium`] when the grid scan
/// sees no sign change.
pub fn find_equilibria(model: &ModelDef, v_w: f64) -> Result<Vec<Equilibrium>> {
    let sys = SwingSystem::new(model)?;
    find_equilibria_sys(&sys, model.slip_domain_upper, v_w)
}

pub(crate) fn find_equilibria_sys(
    sys: &SwingSystem,
    domain_upper: f64,
    v_w: f64,
) -> Result<Vec<Equilibrium>> {
    if !(v_w > 0.0 && v_w <= 2.0) {
        return Err(Error::Domain(format!("v_w must lie in (0, 2], got {v_w}")));
    }
    let g = |s: f64| sys.torque_imbalance(v_w, s);
    let grid = numeric::linspace(SCAN_FLOOR, domain_upper, SCAN_POINTS);
    let mut roots = Vec::new();
    let mut g_prev = g(grid[0]);
    if g_prev == 0.0 {
        roots.push(grid[0]);
    }
    for pair in grid.windows(2) {
        let g_next = g(pair[1]);
        if g_next == 0.0 {
            roots.push(pair[1]);
        } else if g_prev != 0.0 && g_prev.signum() != g_next.signum() {
            roots.push(numeric::bisect(&g, pair[0], pair[1], ROOT_XTOL));
        }
        g_prev = g_next;
    }
    if roots.is_empty() {
        return Err(Error::NoEquilibrium { v_w });
    }
    Ok(roots
        .into_iter()
        .map(|s_star| {
            let slope = numeric::central_diff(&g, s_star, SLOPE_H);
            Equilibrium {
                s_star,
                v_w,
                stability: if slope < 0.0 {
                    Stability::Stable
                } else {
                    Stability::Unstable
                },
                residual: g(s_star).abs(),
            }
        })
        .collect())
}

/// The lowest root, which must classify stable and lie below the pull-out
/// slip. A lowest root that classifies unstable signals an inconsistent
/// torque model and is reported as [`Error::StabilityMismatch`].
pub fn stable_equilibrium(model: &ModelDef, v_w: f64) -> Result<Equilibrium> {
    let eq = find_equilibria(model, v_w)?[0];
    if eq.stability != Stability::Stable {
        return Err(Error::StabilityMismatch {
            v_w,
            s_star: eq.s_star,
        });
    }
    Ok(eq)
}

/// CSV export: `v_w,s_star,stability,residual`.
pub fn equilibria_csv(rows: &[Equilibrium]) -> String {
    let mut out = String::from("v_w,s_star,stability,residual\n");
    for eq in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_g(eq.v_w),
            fmt_g(eq.s_star),
            eq.stability.as_str(),
            fmt_g(eq.residual)
        ));
    }
    out
}
