//! Thevenin reduction of the compensated machine + line circuit and the
//! electrical torque-slip characteristic.
//!
//! The non-resistive network (magnetizing branch, terminal compensation,
//! line, infinite bus) collapses to one source `v_th` behind one reactance
//! `x_th`. Electrical torque then depends on slip only through the
//! rotor-branch resistance `r_mult * r_r / s`, which is what makes the
//! pull-out point and the Type-B scaling laws closed-form.

use crate::error::{Error, Result};
use crate::model::{MachineParams, RESONANCE_GUARD};

/// Reduced source-side network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheveninEquivalent {
    /// Equivalent source voltage (pu).
    pub v_th: f64,
    /// Equivalent series reactance (pu).
    pub x_th: f64,
    /// Magnetizing reactance after compensation (pu); negative past resonance.
    pub x_m_eff: f64,
}

/// Collapses bus, line, magnetizing branch, and compensation to a
/// [`TheveninEquivalent`]:
///
/// ```text
/// x_m_eff = x_m' / (1 - x_m' * y_c)
/// v_th    = v_b * x_m_eff / (x_m_eff + x_l)
/// x_th    = x_m_eff * x_l / (x_m_eff + x_l) + x_s + x_r
/// ```
pub fn thevenin_reduce(machine: &MachineParams) -> Result<TheveninEquivalent> {
    let denom = 1.0 - machine.x_m_prime * machine.y_c;
    if denom.abs() <= RESONANCE_GUARD {
        return Err(Error::Resonance {
            y_c: machine.y_c,
            resonance: 1.0 / machine.x_m_prime,
        });
    }
    let x_m_eff = machine.x_m_prime / denom;
    let total = x_m_eff + machine.x_l;
    if total == 0.0 {
        return Err(Error::DegenerateCircuit);
    }
    Ok(TheveninEquivalent {
        v_th: machine.v_b * x_m_eff / total,
        x_th: x_m_eff * machine.x_l / total + machine.x_s + machine.x_r,
        x_m_eff,
    })
}

/// Electrical torque at slip `s`:
///
/// ```text
/// T_e(s) = v_th^2 * u / ((r_s - u)^2 + x_th^2),   u = r_mult * r_r / s
/// ```
///
/// Positive for `s > 0` (generation), negative for `s < 0` (motoring).
/// The removable singularity at `s = 0` takes its continuous limit, 0.
pub fn electrical_torque(th: &TheveninEquivalent, r_s: f64, r_r: f64, r_mult: f64, s: f64) -> f64 {
    if s == 0.0 {
        return 0.0;
    }
    let u = r_mult * r_r / s;
    th.v_th * th.v_th * u / ((r_s - u) * (r_s - u) + th.x_th * th.x_th)
}

/// Slip of maximum electrical torque, `r_mult * r_r / sqrt(r_s^2 + x_th^2)`.
/// The multiplier is applied last so scaling in `r_mult` is bit-exact.
pub fn pullout_slip(th: &TheveninEquivalent, r_s: f64, r_r: f64, r_mult: f64) -> f64 {
    r_r / (r_s * r_s + th.x_th * th.x_th).sqrt() * r_mult
}

/// Electrical torque at the pull-out slip. Independent of `r_mult`: the
/// torque sees rotor resistance only through `r_mult * r_r / s`, and the
/// pull-out slip rescales by exactly the same factor.
pub fn max_torque(th: &TheveninEquivalent, r_s: f64, r_r: f64, r_mult: f64) -> f64 {
    let s_max = pullout_slip(th, r_s, r_r, r_mult);
    electrical_torque(th, r_s, r_r, r_mult, s_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelDef;
    use approx::assert_relative_eq;

    fn reference_thevenin() -> (TheveninEquivalent, MachineParams) {
        let machine = ModelDef::reference().machine;
        (thevenin_reduce(&machine).unwrap(), machine)
    }

    #[test]
    fn reference_reduction_values() {
        let (th, _) = reference_thevenin();
        assert_relative_eq!(th.v_th, 0.974843, epsilon = 1e-6);
        assert_relative_eq!(th.x_th, 0.357987, epsilon = 1e-6);
        assert_eq!(th.x_m_eff, 3.1);
    }

    #[test]
    fn no_line_limit_exposes_bus() {
        let mut machine = ModelDef::reference().machine;
        machine.x_l = 1e-12;
        let th = thevenin_reduce(&machine).unwrap();
        assert_relative_eq!(th.v_th, machine.v_b, epsilon = 1e-6);
        assert_relative_eq!(th.x_th, machine.x_s + machine.x_r, epsilon = 1e-6);
    }

    #[test]
    fn compensation_raises_x_m_eff() {
        let mut machine = ModelDef::reference().machine;
        machine.y_c = 0.1;
        let th = thevenin_reduce(&machine).unwrap();
        assert_relative_eq!(th.x_m_eff, 4.492754, epsilon = 1e-6);
    }

    #[test]
    fn resonant_y_c_is_an_error() {
        let mut machine = ModelDef::reference().machine;
        machine.y_c = 1.0 / machine.x_m_prime;
        assert!(matches!(
            thevenin_reduce(&machine),
            Err(Error::Resonance { .. })
        ));
    }

    #[test]
    fn line_cancellation_is_degenerate() {
        let mut machine = ModelDef::reference().machine;
        // choose y_c so that x_m_eff = -x_l exactly
        machine.y_c = (1.0 + machine.x_m_prime / machine.x_l) / machine.x_m_prime;
        assert!(matches!(
            thevenin_reduce(&machine),
            Err(Error::DegenerateCircuit)
        ));
    }

    #[test]
    fn torque_has_zero_limit_at_standstill() {
        let (th, m) = reference_thevenin();
        assert_eq!(electrical_torque(&th, m.r_s, m.r_r, m.r_mult, 0.0), 0.0);
        assert_eq!(electrical_torque(&th, m.r_s, m.r_r, m.r_mult, -0.0), 0.0);
    }

    #[test]
    fn torque_spot_values() {
        let (th, m) = reference_thevenin();
        let s_max = pullout_slip(&th, m.r_s, m.r_r, m.r_mult);
        assert_relative_eq!(
            electrical_torque(&th, m.r_s, m.r_r, m.r_mult, s_max),
            1.4472,
            epsilon = 1e-3
        );
        assert_relative_eq!(
            electrical_torque(&th, m.r_s, m.r_r, m.r_mult, 0.02),
            0.9683,
            epsilon = 1e-3
        );
    }

    #[test]
    fn pullout_slip_value_and_scaling() {
        let (th, m) = reference_thevenin();
        let base = pullout_slip(&th, m.r_s, m.r_r, 1.0);
        assert_relative_eq!(base, 0.050094, epsilon = 1e-6);
        assert_eq!(pullout_slip(&th, m.r_s, m.r_r, 2.0), 2.0 * base);
        assert_eq!(pullout_slip(&th, m.r_s, m.r_r, 3.0), 3.0 * base);
    }

    #[test]
    fn pullout_collapses_without_stator_resistance() {
        let th = TheveninEquivalent {
            v_th: 1.0,
            x_th: 0.018,
            x_m_eff: 3.1,
        };
        assert_eq!(pullout_slip(&th, 0.0, 0.018, 1.0), 1.0);
    }

    #[test]
    fn max_torque_value_and_r_mult_invariance() {
        let (th, m) = reference_thevenin();
        let base = max_torque(&th, m.r_s, m.r_r, 1.0);
        assert_relative_eq!(base, 1.4472, epsilon = 1e-3);
        for r in [2.0, 3.0, 4.0] {
            let scaled = max_torque(&th, m.r_s, m.r_r, r);
            assert_relative_eq!(scaled, base, max_relative = 1e-9);
        }
    }

    #[test]
    fn max_torque_scales_with_source_voltage_squared() {
        let (th, m) = reference_thevenin();
        let doubled = TheveninEquivalent {
            v_th: 2.0 * th.v_th,
            ..th
        };
        assert_eq!(
            max_torque(&doubled, m.r_s, m.r_r, 1.0),
            4.0 * max_torque(&th, m.r_s, m.r_r, 1.0)
        );
    }

    #[test]
    fn closed_form_pullout_matches_grid_argmax() {
        let (th, m) = reference_thevenin();
        let s_max = pullout_slip(&th, m.r_s, m.r_r, m.r_mult);
        let step = 1e-5;
        let mut best = (0.0, f64::MIN);
        let mut s = step;
        while s <= 0.4 {
            let t = electrical_torque(&th, m.r_s, m.r_r, m.r_mult, s);
            if t > best.1 {
                best = (s, t);
            }
            s += step;
        }
        assert!(
            (best.0 - s_max).abs() <= step,
            "argmax {} vs closed form {s_max}",
            best.0
        );
    }

    #[test]
    fn torque_derivative_vanishes_at_pullout() {
        let (th, m) = reference_thevenin();
        let s_max = pullout_slip(&th, m.r_s, m.r_r, m.r_mult);
        let h = 1e-6;
        let d = (electrical_torque(&th, m.r_s, m.r_r, m.r_mult, s_max + h)
            - electrical_torque(&th, m.r_s, m.r_r, m.r_mult, s_max - h))
            / (2.0 * h);
        assert!(d.abs() < 1e-4, "dTe/ds at pull-out = {d}");
    }

    #[test]
    fn thevenin_below_bus_with_line_present() {
        let (th, m) = reference_thevenin();
        assert!(th.v_th < m.v_b);
        assert!(th.x_th > m.x_s + m.x_r);
    }
}
