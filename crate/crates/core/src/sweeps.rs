//! Parameter sensitivity studies: torque families over wind velocity,
//! compensation susceptance, and rotor-resistance multiplier, plus basin
//! edges as functions of those parameters.

use rayon::prelude::*;

use crate::equilibria::{self, Stability};
use crate::error::{Error, Result};
use crate::fmt::fmt_g;
use crate::machine::{self, TheveninEquivalent};
use crate::model::{ModelDef, RESONANCE_GUARD};
use crate::numeric;
use crate::turbine;

/// Pull-out summary of one torque curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PullOut {
    /// Slip of maximum torque.
    pub s_max: f64,
    /// Torque at `s_max`.
    pub t_max: f64,
    /// True when `s_max` falls outside the sampled slip axis.
    pub extrapolated: bool,
}

/// One labeled curve of a family.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    /// CSV label; the parameter value for swept curves.
    pub label: String,
    /// Numeric parameter value, when the curve corresponds to one.
    pub parameter: Option<f64>,
    /// Torque at each node of the family's slip axis.
    pub torques: Vec<f64>,
}

/// Curves sampled over a common slip axis with per-curve pull-out summaries.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveFamily {
    pub parameter_name: String,
    pub s_axis: Vec<f64>,
    pub curves: Vec<Curve>,
    pub per_curve_summary: Vec<PullOut>,
}

impl CurveFamily {
    pub fn parameter_values(&self) -> Vec<f64> {
        self.curves.iter().filter_map(|c| c.parameter).collect()
    }

    /// Long-format CSV: `parameter,s,torque`.
    pub fn family_csv(&self) -> String {
        let mut out = String::from("parameter,s,torque\n");
        for curve in &self.curves {
            for (&s, &t) in self.s_axis.iter().zip(&curve.torques) {
                out.push_str(&format!("{},{},{}\n", curve.label, fmt_g(s), fmt_g(t)));
            }
        }
        out
    }

    /// Summary CSV: `parameter,s_max,t_max`.
    pub fn summary_csv(&self) -> String {
        let mut out = String::from("parameter,s_max,t_max\n");
        for (curve, p) in self.curves.iter().zip(&self.per_curve_summary) {
            out.push_str(&format!(
                "{},{},{}\n",
                curve.label,
                fmt_g(p.s_max),
                fmt_g(p.t_max)
            ));
        }
        out
    }
}

fn sample_electrical(
    th: &TheveninEquivalent,
    r_s: f64,
    r_r: f64,
    r_mult: f64,
    s_axis: &[f64],
) -> Vec<f64> {
    s_axis
        .iter()
        .map(|&s| machine::electrical_torque(th, r_s, r_r, r_mult, s))
        .collect()
}

/// Pull-out summary for an electrical torque curve: the closed form is
/// cross-checked against the grid argmax and the grid value wins when they
/// disagree by more than one grid step.
fn electrical_summary(
    th: &TheveninEquivalent,
    r_s: f64,
    r_r: f64,
    r_mult: f64,
    s_axis: &[f64],
    torques: &[f64],
) -> PullOut {
    let s_closed = machine::pullout_slip(th, r_s, r_r, r_mult);
    let t_closed = machine::max_torque(th, r_s, r_r, r_mult);
    let lo = s_axis.first().copied().unwrap_or(0.0);
    let hi = s_axis.last().copied().unwrap_or(0.0);
    if s_closed < lo || s_closed > hi {
        return PullOut {
            s_max: s_closed,
            t_max: t_closed,
            extrapolated: true,
        };
    }
    let (i_best, &t_best) = torques
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty axis");
    let step = if s_axis.len() > 1 {
        (hi - lo) / (s_axis.len() - 1) as f64
    } else {
        0.0
    };
    if (s_axis[i_best] - s_closed).abs() > step {
        // diagnostic fallback, reported instead of silently preferred
        PullOut {
            s_max: s_axis[i_best],
            t_max: t_best,
            extrapolated: false,
        }
    } else {
        PullOut {
            s_max: s_closed,
            t_max: t_closed,
            extrapolated: false,
        }
    }
}

/// Summary by grid argmax alone, for curves with no closed-form pull-out.
fn grid_summary(s_axis: &[f64], torques: &[f64]) -> PullOut {
    let (i_best, &t_best) = torques
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty axis");
    PullOut {
        s_max: s_axis[i_best],
        t_max: t_best,
        extrapolated: false,
    }
}

/// The electrical torque curve plus one mechanical torque curve per wind
/// velocity, on `n` slip nodes over `s_range`.
pub fn torque_family_wind(
    model: &ModelDef,
    v_list: &[f64],
    s_range: (f64, f64),
    n: usize,
) -> Result<CurveFamily> {
    if v_list.is_empty() {
        return Err(Error::Domain("wind list must be non-empty".into()));
    }
    for &v in v_list {
        turbine::WindOperatingPoint::new(v, 0.0)?;
    }
    let m = &model.machine;
    let th = machine::thevenin_reduce(m)?;
    let s_axis = numeric::linspace(s_range.0, s_range.1, n);
    let mut curves = Vec::with_capacity(1 + v_list.len());
    let mut summaries = Vec::with_capacity(1 + v_list.len());
    let te = sample_electrical(&th, m.r_s, m.r_r, m.r_mult, &s_axis);
    summaries.push(electrical_summary(
        &th, m.r_s, m.r_r, m.r_mult, &s_axis, &te,
    ));
    curves.push(Curve {
        label: "Te".to_string(),
        parameter: None,
        torques: te,
    });
    for &v_w in v_list {
        let torques: Vec<f64> = s_axis
            .iter()
            .map(|&s| turbine::torque_raw(&model.turbine, v_w, s))
            .collect();
        summaries.push(grid_summary(&s_axis, &torques));
        curves.push(Curve {
            label: format!("Tm@{v_w}"),
            parameter: Some(v_w),
            torques,
        });
    }
    Ok(CurveFamily {
        parameter_name: "v_w".to_string(),
        s_axis,
        curves,
        per_curve_summary: summaries,
    })
}

/// One electrical torque curve per compensation susceptance, each from a
/// fresh circuit reduction. Values inside the resonance guard band are
/// rejected up front, naming the offender.
pub fn compensation_sweep(
    model: &ModelDef,
    yc_list: &[f64],
    s_range: (f64, f64),
    n: usize,
) -> Result<CurveFamily> {
    if yc_list.is_empty() {
        return Err(Error::Domain("y_c list must be non-empty".into()));
    }
    let resonance = 1.0 / model.machine.x_m_prime;
    for &y_c in yc_list {
        if y_c.is_nan() || y_c < 0.0 {
            return Err(Error::Domain(format!("y_c must be >= 0, got {y_c}")));
        }
        if (y_c * model.machine.x_m_prime - 1.0).abs() <= RESONANCE_GUARD {
            return Err(Error::Resonance { y_c, resonance });
        }
    }
    let s_axis = numeric::linspace(s_range.0, s_range.1, n);
    let entries: Vec<(Curve, PullOut)> = yc_list
        .par_iter()
        .map(|&y_c| {
            let mut m = model.machine;
            m.y_c = y_c;
            let th = machine::thevenin_reduce(&m)?;
            let torques = sample_electrical(&th, m.r_s, m.r_r, m.r_mult, &s_axis);
            let summary = electrical_summary(&th, m.r_s, m.r_r, m.r_mult, &s_axis, &torques);
            Ok((
                Curve {
                    label: format!("{y_c}"),
                    parameter: Some(y_c),
                    torques,
                },
                summary,
            ))
        })
        .collect::<Result<_>>()?;
    let (curves, per_curve_summary) = entries.into_iter().unzip();
    Ok(CurveFamily {
        parameter_name: "y_c".to_string(),
        s_axis,
        curves,
        per_curve_summary,
    })
}

/// One electrical torque curve per rotor-resistance multiplier. Pull-out
/// slip scales exactly linearly with the multiplier while the maximum
/// torque stays put.
pub fn rotor_resistance_sweep(
    model: &ModelDef,
    r_list: &[f64],
    s_range: (f64, f64),
    n: usize,
) -> Result<CurveFamily> {
    if r_list.is_empty() {
        return Err(Error::Domain("multiplier list must be non-empty".into()));
    }
    for &r in r_list {
        if r.is_nan() || r < 1.0 {
            return Err(Error::Domain(format!("r_mult must be >= 1, got {r}")));
        }
    }
    let m = &model.machine;
    let th = machine::thevenin_reduce(m)?;
    let s_axis = numeric::linspace(s_range.0, s_range.1, n);
    let entries: Vec<(Curve, PullOut)> = r_list
        .par_iter()
        .map(|&r_mult| {
            let torques = sample_electrical(&th, m.r_s, m.r_r, r_mult, &s_axis);
            let summary = electrical_summary(&th, m.r_s, m.r_r, r_mult, &s_axis, &torques);
            (
                Curve {
                    label: format!("{r_mult}"),
                    parameter: Some(r_mult),
                    torques,
                },
                summary,
            )
        })
        .collect();
    let (curves, per_curve_summary) = entries.into_iter().unzip();
    Ok(CurveFamily {
        parameter_name: "r_mult".to_string(),
        s_axis,
        curves,
        per_curve_summary,
    })
}

/// Which parameter a basin sweep varies.
#[derive(Debug, Clone, Copy)]
pub enum SweepParameter<'a> {
    /// Compensation susceptance values.
    Compensation(&'a [f64]),
    /// Rotor-resistance multipliers.
    RotorR(&'a [f64]),
}

/// Basin upper edge at `v_w` for each parameter value: a quantitative
/// version of "more compensation / more rotor resistance widens the basin".
/// A missing equilibrium is reported with the offending parameter value.
pub fn basin_vs_parameter(
    model: &ModelDef,
    parameter: SweepParameter<'_>,
    v_w: f64,
) -> Result<Vec<(f64, f64)>> {
    let values: Vec<(f64, ModelDef)> = match parameter {
        SweepParameter::Compensation(list) => list
            .iter()
            .map(|&y_c| {
                let mut m = *model;
                m.machine.y_c = y_c;
                (y_c, m)
            })
            .collect(),
        SweepParameter::RotorR(list) => list
            .iter()
            .map(|&r| {
                let mut m = *model;
                m.machine.r_mult = r;
                (r, m)
            })
            .collect(),
    };
    values
        .into_iter()
        .map(|(value, variant)| {
            let eqs = equilibria::find_equilibria(&variant, v_w).map_err(|e| match e {
                Error::NoEquilibrium { v_w } => Error::Domain(format!(
                    "no equilibrium at v_w = {v_w} for parameter value {value}"
                )),
                other => other,
            })?;
            let upper = eqs
                .iter()
                .find(|e| e.stability == Stability::Unstable)
                .map(|e| e.s_star)
                .unwrap_or(variant.slip_domain_upper);
            Ok((value, upper))
        })
        .collect()
}

/// Basin-edge CSV: `parameter,basin_upper`.
pub fn basin_sweep_csv(rows: &[(f64, f64)]) -> String {
    let mut out = String::from("parameter,basin_upper\n");
    for &(p, upper) in rows {
        out.push_str(&format!("{},{}\n", fmt_g(p), fmt_g(upper)));
    }
    out
}
