//! Region-of-attraction analysis over the (slip, wind-velocity) plane.
//!
//! In one dimension the basin of the stable equilibrium is exact: it is the
//! interval from the domain floor up to the unstable equilibrium (or the
//! domain cap when none exists below it). Grid classification therefore
//! costs one root-structure computation per wind column instead of one ODE
//! run per node; the ODE runs remain the acceptance oracle.

use rayon::prelude::*;

use crate::dynamics::SwingSystem;
use crate::equilibria::{self, Stability};
use crate::error::{Error, Result};
use crate::fmt::fmt_g;
use crate::model::ModelDef;
use crate::numeric;

/// Sign band: `|W| <= W_SIGN_BAND` counts as zero.
pub const W_SIGN_BAND: f64 = 1e-12;

/// Per-node record of the swing field over the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridCell {
    /// `(T_m - T_e)/M` at the node (pu / pu-time).
    pub w_value: f64,
    /// Sign of `w_value` with a `W_SIGN_BAND` zero band.
    pub w_sign: i8,
    /// Node lies strictly inside the basin interval of its wind column.
    pub in_basin: bool,
}

/// Classified mesh over slip (rows) and wind velocity (columns).
#[derive(Debug, Clone)]
pub struct GridMap {
    pub s_axis: Vec<f64>,
    pub v_axis: Vec<f64>,
    /// Row-major over wind columns: `cells[iv * s_axis.len() + is]`.
    cells: Vec<GridCell>,
}

impl GridMap {
    pub fn cell(&self, is: usize, iv: usize) -> &GridCell {
        &self.cells[iv * self.s_axis.len() + is]
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Long-format CSV: `s,v_w,w_value,w_sign,in_basin`, grouped by column.
    pub fn grid_csv(&self) -> String {
        let mut out = String::from("s,v_w,w_value,w_sign,in_basin\n");
        for (iv, &v) in self.v_axis.iter().enumerate() {
            for (is, &s) in self.s_axis.iter().enumerate() {
                let c = self.cell(is, iv);
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    fmt_g(s),
                    fmt_g(v),
                    fmt_g(c.w_value),
                    c.w_sign,
                    c.in_basin
                ));
            }
        }
        out
    }
}

/// Basin interval `(lower, upper)` of the stable equilibrium at `v_w`:
/// lower is the domain floor 0, upper the unstable equilibrium when one
/// exists below `slip_domain_upper`, else the cap itself. Every start
/// strictly inside converges to the stable equilibrium.
pub fn basin_interval(model: &ModelDef, v_w: f64) -> Result<(f64, f64)> {
    let eqs = equilibria::find_equilibria(model, v_w)?;
    if eqs[0].stability != Stability::Stable {
        return Err(Error::StabilityMismatch {
            v_w,
            s_star: eqs[0].s_star,
        });
    }
    let upper = eqs
        .iter()
        .find(|e| e.stability == Stability::Unstable)
        .map(|e| e.s_star)
        .unwrap_or(model.slip_domain_upper);
    Ok((0.0, upper))
}

/// Evaluates `W = (T_m - T_e)/M` on an `(n_s, n_v)` mesh and classifies each
/// node against its column's basin interval. Columns with no equilibrium at
/// all (high wind beyond pull-over) simply have no basin.
pub fn classify_grid(
    model: &ModelDef,
    s_range: (f64, f64),
    v_range: (f64, f64),
    mesh: (usize, usize),
) -> Result<GridMap> {
    let (n_s, n_v) = mesh;
    if n_s < 2 || n_v < 2 {
        return Err(Error::Domain(format!(
            "mesh must be at least 2x2, got {n_s}x{n_v}"
        )));
    }
    if s_range.1 < s_range.0 || v_range.1 < v_range.0 {
        return Err(Error::Domain("ranges must have non-negative length".into()));
    }
    let sys = SwingSystem::new(model)?;
    let s_axis = numeric::linspace(s_range.0, s_range.1, n_s);
    let v_axis = numeric::linspace(v_range.0, v_range.1, n_v);
    // Columns are independent; assembly order is fixed by the index map, so
    // the result is identical for any worker count.
    let columns: Vec<Vec<GridCell>> = v_axis
        .par_iter()
        .map(|&v_w| {
            let basin = match equilibria::find_equilibria_sys(&sys, model.slip_domain_upper, v_w) {
                Ok(eqs) if eqs[0].stability == Stability::Stable => {
                    let upper = eqs
                        .iter()
                        .find(|e| e.stability == Stability::Unstable)
                        .map(|e| e.s_star)
                        .unwrap_or(model.slip_domain_upper);
                    Some((0.0, upper))
                }
                // winds beyond pull-over have no root structure and no basin
                Ok(_) | Err(Error::NoEquilibrium { .. }) => None,
                Err(e) => return Err(e),
            };
            Ok(s_axis
                .iter()
                .map(|&s| {
                    let w_value = sys.accel(v_w, s);
                    let w_sign = if w_value.abs() <= W_SIGN_BAND {
                        0
                    } else if w_value > 0.0 {
                        1
                    } else {
                        -1
                    };
                    let in_basin = basin.is_some_and(|(lo, hi)| s > lo && s < hi);
                    GridCell {
                        w_value,
                        w_sign,
                        in_basin,
                    }
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(GridMap {
        s_axis,
        v_axis,
        cells: columns.into_iter().flatten().collect(),
    })
}

/// Flattened `(s, v_w, W)` node list for quiver plotting; the wind component
/// of the plotted field is identically zero (wind is a parameter, not a
/// state).
pub fn vector_field_samples(
    model: &ModelDef,
    s_range: (f64, f64),
    v_range: (f64, f64),
    mesh: (usize, usize),
) -> Result<Vec<(f64, f64, f64)>> {
    let grid = classify_grid(model, s_range, v_range, mesh)?;
    let mut out = Vec::with_capacity(grid.cell_count());
    for (iv, &v) in grid.v_axis.iter().enumerate() {
        for (is, &s) in grid.s_axis.iter().enumerate() {
            out.push((s, v, grid.cell(is, iv).w_value));
        }
    }
    Ok(out)
}

/// Quiver CSV: `s,v_w,W,0` (the trailing column is the zero wind component).
pub fn quiver_csv(samples: &[(f64, f64, f64)]) -> String {
    let mut out = String::from("s,v_w,W,0\n");
    for &(s, v, w) in samples {
        out.push_str(&format!("{},{},{},0\n", fmt_g(s), fmt_g(v), fmt_g(w)));
    }
    out
}

/// Basin intervals per wind value, CSV `v_w,lower,upper`; wind values with
/// no equilibrium are skipped.
pub fn basin_csv(model: &ModelDef, v_axis: &[f64]) -> Result<String> {
    let mut out = String::from("v_w,lower,upper\n");
    for &v_w in v_axis {
        match basin_interval(model, v_w) {
            Ok((lo, hi)) => {
                out.push_str(&format!("{},{},{}\n", fmt_g(v_w), fmt_g(lo), fmt_g(hi)));
            }
            Err(Error::NoEquilibrium { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
