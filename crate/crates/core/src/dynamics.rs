//! Slip swing equation `M ds/dt = T_m(s) - T_e(s)`, its equilibrium-shifted
//! vector field, and fixed-step time-domain integration.
//!
//! The state is one-dimensional, so trajectories are monotone in slip and
//! terminal classification reduces to: settle on an equilibrium, or leave
//! the analysis box. Classic RK4 with a fixed step keeps runs deterministic
//! and golden-file friendly.

use crate::equilibria;
use crate::error::{Error, Result};
use crate::fmt::fmt_g;
use crate::machine::{self, TheveninEquivalent};
use crate::model::{ModelDef, TurbineParams};
use crate::turbine;

/// Slip distance to a known equilibrium below which a trajectory counts as
/// converged.
pub const CONVERGENCE_SLIP_TOL: f64 = 1e-6;
/// Acceleration magnitude below which the state is considered stationary.
pub const CONVERGENCE_RATE_TOL: f64 = 1e-9;
/// Lower edge of the divergence box; the upper edge is the model's
/// `slip_domain_upper`.
pub const DIVERGENCE_FLOOR: f64 = -0.1;

/// Precomputed right-hand side of the swing equation. Reducing the circuit
/// once keeps grid sweeps and integration loops allocation- and
/// branch-free.
#[derive(Debug, Clone, Copy)]
pub struct SwingSystem {
    th: TheveninEquivalent,
    r_s: f64,
    r_r: f64,
    r_mult: f64,
    turbine: TurbineParams,
    inertia: f64,
    domain_upper: f64,
}

impl SwingSystem {
    pub fn new(model: &ModelDef) -> Result<Self> {
        Ok(Self {
            th: machine::thevenin_reduce(&model.machine)?,
            r_s: model.machine.r_s,
            r_r: model.machine.r_r,
            r_mult: model.machine.r_mult,
            turbine: model.turbine,
            inertia: model.turbine.inertia_m,
            domain_upper: model.slip_domain_upper,
        })
    }

    pub fn thevenin(&self) -> &TheveninEquivalent {
        &self.th
    }

    pub fn domain_upper(&self) -> f64 {
        self.domain_upper
    }

    pub fn inertia(&self) -> f64 {
        self.inertia
    }

    /// `T_m - T_e` at (v_w, s); callers guarantee `v_w > 0`, `s > -1`.
    pub fn torque_imbalance(&self, v_w: f64, s: f64) -> f64 {
        turbine::torque_raw(&self.turbine, v_w, s)
            - machine::electrical_torque(&self.th, self.r_s, self.r_r, self.r_mult, s)
    }

    /// `ds/dt = (T_m - T_e) / M` at (v_w, s).
    pub fn accel(&self, v_w: f64, s: f64) -> f64 {
        self.torque_imbalance(v_w, s) / self.inertia
    }
}

/// Net rotor acceleration `(T_m(s, v_w) - T_e(s)) / M`.
pub fn net_acceleration(model: &ModelDef, v_w: f64, s: f64) -> Result<f64> {
    turbine::WindOperatingPoint::new(v_w, s)?;
    Ok(SwingSystem::new(model)?.accel(v_w, s))
}

/// The field shifted to a candidate equilibrium `s0`:
/// `f(x) = (T_m(x + s0) - T_e(x + s0)) / M`, so `f(0) = 0` at equilibrium.
pub fn shifted_field(model: &ModelDef, v_w: f64, s0: f64, x: f64) -> Result<f64> {
    net_acceleration(model, v_w, s0 + x)
}

/// Where a finished trajectory ended up.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    /// Settled onto the equilibrium at the given slip.
    Converged(f64),
    /// Left the analysis box in the given direction.
    Diverged(Direction),
    /// Still in transit at the end of the horizon.
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// Time-stamped slip samples plus terminal classification.
#[derive(Debug, Clone)]
pub struct Trajectory {
    /// `(t, s)` pairs, constant spacing `step`.
    pub samples: Vec<(f64, f64)>,
    pub outcome: Outcome,
    pub step: f64,
}

impl Trajectory {
    pub fn final_slip(&self) -> f64 {
        self.samples.last().expect("at least the initial sample").1
    }

    /// CSV export: header `t,s`, one row per sample.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,s\n");
        for &(t, s) in &self.samples {
            out.push_str(&fmt_g(t));
            out.push(',');
            out.push_str(&fmt_g(s));
            out.push('\n');
        }
        out
    }
}

/// Integrates the swing equation from `s_init` with classic fixed-step RK4.
///
/// Halts early when the state is stationary within [`CONVERGENCE_RATE_TOL`]
/// and sits within [`CONVERGENCE_SLIP_TOL`] of a known equilibrium, or when
/// slip leaves `[DIVERGENCE_FLOOR, slip_domain_upper]`. Otherwise the run is
/// `Undecided` at `t_end`.
pub fn simulate(
    model: &ModelDef,
    v_w: f64,
    s_init: f64,
    step: f64,
    t_end: f64,
) -> Result<Trajectory> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::Step(format!("step must be > 0, got {step}")));
    }
    if !t_end.is_finite() || t_end < step {
        return Err(Error::Step(format!(
            "t_end ({t_end}) must be at least one step ({step})"
        )));
    }
    turbine::WindOperatingPoint::new(v_w, s_init)?;
    let sys = SwingSystem::new(model)?;
    // Equilibria give the convergence targets; their absence only disables
    // early convergence detection.
    let targets: Vec<f64> = match equilibria::find_equilibria(model, v_w) {
        Ok(eqs) => eqs.into_iter().map(|e| e.s_star).collect(),
        Err(Error::NoEquilibrium { .. }) => Vec::new(),
        Err(e) => return Err(e),
    };

    let n_steps = (t_end / step).ceil() as usize;
    let mut samples = Vec::with_capacity(n_steps.min(1 << 20) + 1);
    let mut s = s_init;
    let mut outcome = Outcome::Undecided;
    for k in 0..=n_steps {
        samples.push((k as f64 * step, s));
        if s < DIVERGENCE_FLOOR {
            outcome = Outcome::Diverged(Direction::Down);
            break;
        }
        if s > sys.domain_upper {
            outcome = Outcome::Diverged(Direction::Up);
            break;
        }
        if sys.accel(v_w, s).abs() < CONVERGENCE_RATE_TOL {
            if let Some(&target) = targets
                .iter()
                .find(|&&e| (s - e).abs() <= CONVERGENCE_SLIP_TOL)
            {
                outcome = Outcome::Converged(target);
                break;
            }
        }
        if k == n_steps {
            break;
        }
        s = rk4_step(&sys, v_w, s, step);
    }
    Ok(Trajectory {
        samples,
        outcome,
        step,
    })
}

fn rk4_step(sys: &SwingSystem, v_w: f64, s: f64, h: f64) -> f64 {
    let k1 = sys.accel(v_w, s);
    let k2 = sys.accel(v_w, s + 0.5 * h * k1);
    let k3 = sys.accel(v_w, s + 0.5 * h * k2);
    let k4 = sys.accel(v_w, s + h * k3);
    s + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn model() -> ModelDef {
        ModelDef::reference()
    }

    #[test]
    fn acceleration_at_standstill() {
        // T_e(0) = 0, so ds/dt = T_m(0)/M
        let a = net_acceleration(&model(), 1.0, 0.0).unwrap();
        assert_relative_eq!(a, 1.239, epsilon = 1e-2);
        assert!(a > 0.0);
    }

    #[test]
    fn acceleration_negative_past_stable_root() {
        // T_m(0.1) ~ 0.8745 < T_e(0.1) ~ 1.1377
        assert!(net_acceleration(&model(), 1.0, 0.1).unwrap() < 0.0);
    }

    #[test]
    fn acceleration_vanishes_at_equilibrium() {
        let model = model();
        let eq = equilibria::stable_equilibrium(&model, 1.0).unwrap();
        assert!(net_acceleration(&model, 1.0, eq.s_star).unwrap().abs() < 1e-9);
    }

    #[test]
    fn shifted_field_is_zero_at_origin_and_restoring() {
        let model = model();
        let s0 = equilibria::stable_equilibrium(&model, 1.0).unwrap().s_star;
        assert!(shifted_field(&model, 1.0, s0, 0.0).unwrap().abs() < 1e-9);
        assert!(shifted_field(&model, 1.0, s0, 0.01).unwrap() < 0.0);
        assert!(shifted_field(&model, 1.0, s0, -0.01).unwrap() > 0.0);
    }

    #[test]
    fn converges_to_stable_equilibrium() {
        let model = model();
        let traj = simulate(&model, 1.0, 0.001, 1e-3, 50.0).unwrap();
        match traj.outcome {
            Outcome::Converged(s_star) => {
                assert_relative_eq!(s_star, 0.0201, epsilon = 1e-3);
                assert!((traj.final_slip() - s_star).abs() <= CONVERGENCE_SLIP_TOL);
            }
            other => panic!("expected convergence, got {other:?}"),
        }
    }

    #[test]
    fn diverges_above_unstable_equilibrium() {
        let traj = simulate(&model(), 1.0, 0.25, 1e-3, 50.0).unwrap();
        assert_eq!(traj.outcome, Outcome::Diverged(Direction::Up));
    }

    #[test]
    fn fixed_point_converges_immediately() {
        let model = model();
        let s0 = equilibria::stable_equilibrium(&model, 1.0).unwrap().s_star;
        let traj = simulate(&model, 1.0, s0, 1e-3, 50.0).unwrap();
        assert_eq!(traj.outcome, Outcome::Converged(s0));
        assert_eq!(traj.samples.len(), 1);
        assert!((traj.final_slip() - s0).abs() < 1e-9);
    }

    #[test]
    fn trajectory_is_monotone_until_convergence() {
        let traj = simulate(&model(), 1.0, 0.001, 1e-3, 50.0).unwrap();
        for pair in traj.samples.windows(2) {
            assert!(pair[1].1 >= pair[0].1 - 1e-12);
        }
    }

    #[test]
    fn time_axis_has_constant_step() {
        let traj = simulate(&model(), 1.0, 0.001, 1e-3, 1.0).unwrap();
        for (k, &(t, _)) in traj.samples.iter().enumerate() {
            assert_eq!(t, k as f64 * 1e-3);
        }
    }

    #[test]
    fn step_validation() {
        assert!(matches!(
            simulate(&model(), 1.0, 0.0, 0.0, 1.0),
            Err(Error::Step(_))
        ));
        assert!(matches!(
            simulate(&model(), 1.0, 0.0, 1e-3, 1e-4),
            Err(Error::Step(_))
        ));
    }

    #[test]
    fn csv_has_header_and_all_samples() {
        let traj = simulate(&model(), 1.0, 0.001, 1e-3, 0.01).unwrap();
        let csv = traj.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("t,s"));
        assert_eq!(lines.count(), traj.samples.len());
    }
}
