//! Per-unit aerodynamic model: tip-speed ratio, power-coefficient fit,
//! mechanical power and torque as functions of slip and wind velocity.

use crate::error::{Error, Result};
use crate::model::TurbineParams;

/// A validated (wind velocity, slip) pair: `v_w > 0` keeps the tip-speed
/// ratio finite and `s > -1` keeps rotor speed positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindOperatingPoint {
    v_w: f64,
    s: f64,
}

impl WindOperatingPoint {
    pub fn new(v_w: f64, s: f64) -> Result<Self> {
        if !v_w.is_finite() || v_w <= 0.0 {
            return Err(Error::Domain(format!(
                "v_w must be finite and > 0, got {v_w}"
            )));
        }
        if !s.is_finite() || s <= -1.0 {
            return Err(Error::Domain(format!("s must be finite and > -1, got {s}")));
        }
        Ok(Self { v_w, s })
    }

    pub fn v_w(&self) -> f64 {
        self.v_w
    }

    pub fn slip(&self) -> f64 {
        self.s
    }
}

/// Tip-speed ratio `lambda = lambda_0 * v_w / (s + 1)`.
pub fn tip_speed_ratio(tp: &TurbineParams, p: WindOperatingPoint) -> f64 {
    tp.lambda_0 * p.v_w / (p.s + 1.0)
}

/// Power-coefficient fit `C_p = (a/lambda - b) * exp(-c/lambda)`.
///
/// Negative values are returned as-is for large lambda; use
/// [`positivity_condition`] to query where the fit stays non-negative.
pub fn power_coefficient(tp: &TurbineParams, lambda: f64) -> Result<f64> {
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(Error::Domain(format!("lambda must be > 0, got {lambda}")));
    }
    Ok(cp_raw(tp, lambda))
}

/// Mechanical power `P = v_w^3 * C_p(lambda)` in pu.
pub fn mechanical_power(tp: &TurbineParams, p: WindOperatingPoint) -> f64 {
    power_raw(tp, p.v_w, p.s)
}

/// Mechanical torque `T_m = P / (s + 1)` in pu.
pub fn mechanical_torque(tp: &TurbineParams, p: WindOperatingPoint) -> f64 {
    torque_raw(tp, p.v_w, p.s)
}

/// Non-negativity predicate for the power fit:
/// `a * (s + 1) / (lambda_0 * v_w) - b >= 0`. True implies `P >= 0`.
pub fn positivity_condition(tp: &TurbineParams, p: WindOperatingPoint) -> bool {
    tp.a * (p.s + 1.0) / (tp.lambda_0 * p.v_w) - tp.b >= 0.0
}

/// Tip-speed ratio maximizing the fit, `a*c / (a + b*c)`. Generally close to
/// but not equal to `lambda_0`; both are reported by diagnostics.
pub fn optimal_tip_speed_ratio(tp: &TurbineParams) -> f64 {
    tp.a * tp.c / (tp.a + tp.b * tp.c)
}

// Unchecked kernels for hot loops; callers guarantee v_w > 0 and s > -1.

pub(crate) fn cp_raw(tp: &TurbineParams, lambda: f64) -> f64 {
    (tp.a / lambda - tp.b) * (-tp.c / lambda).exp()
}

pub(crate) fn power_raw(tp: &TurbineParams, v_w: f64, s: f64) -> f64 {
    let lambda = tp.lambda_0 * v_w / (s + 1.0);
    v_w * v_w * v_w * cp_raw(tp, lambda)
}

pub(crate) fn torque_raw(tp: &TurbineParams, v_w: f64, s: f64) -> f64 {
    power_raw(tp, v_w, s) / (s + 1.0)
}
