//! Independent-oracle checks: every numerical route in the library is
//! compared against a brute-force re-derivation living only in this file
//! (raw formula evaluation, hand-rolled bisection, explicit Euler,
//! trapezoid quadrature), so no implementation path checks itself.

use approx::assert_relative_eq;

use typea_stab_core::model::ModelDef;
use typea_stab_core::{dynamics, equilibria, lyapunov, roa, Outcome, Stability};

// ---- test-local re-derivation of the torque model from raw parameters ----

const R_S: f64 = 0.031;
const X_S: f64 = 0.10;
const X_M: f64 = 3.1;
const R_R: f64 = 0.018;
const X_R: f64 = 0.18;
const X_L: f64 = 0.08;
const LAMBDA0: f64 = 7.04;
const A: f64 = 247.7079;
const B: f64 = 21.6539;
const C: f64 = 18.40;
const INERTIA: f64 = 0.8;

fn oracle_v_th() -> f64 {
    X_M / (X_M + X_L)
}

fn oracle_x_th() -> f64 {
    X_M * X_L / (X_M + X_L) + X_S + X_R
}

fn oracle_te(s: f64, r_mult: f64) -> f64 {
    if s == 0.0 {
        return 0.0;
    }
    let u = r_mult * R_R / s;
    let v_th = oracle_v_th();
    let x_th = oracle_x_th();
    v_th * v_th * u / ((R_S - u) * (R_S - u) + x_th * x_th)
}

fn oracle_tm(v_w: f64, s: f64) -> f64 {
    let lambda = LAMBDA0 * v_w / (1.0 + s);
    v_w.powi(3) * (A / lambda - B) * (-C / lambda).exp() / (1.0 + s)
}

fn oracle_g(v_w: f64, s: f64) -> f64 {
    oracle_tm(v_w, s) - oracle_te(s, 1.0)
}

/// Hand-rolled bracketing + bisection on the oracle imbalance.
fn oracle_roots(v_w: f64) -> Vec<f64> {
    let n = 4000;
    let lo = 1e-6;
    let hi = 0.5;
    let mut roots = Vec::new();
    let mut prev_s = lo;
    let mut prev_g = oracle_g(v_w, lo);
    for i in 1..=n {
        let s = lo + (hi - lo) * i as f64 / n as f64;
        let g = oracle_g(v_w, s);
        if prev_g.signum() != g.signum() {
            let (mut a, mut b) = (prev_s, s);
            let mut ga = prev_g;
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if m == a || m == b {
                    break;
                }
                let gm = oracle_g(v_w, m);
                if gm.signum() == ga.signum() {
                    a = m;
                    ga = gm;
                } else {
                    b = m;
                }
            }
            roots.push(0.5 * (a + b));
        }
        prev_s = s;
        prev_g = g;
    }
    roots
}

#[test]
fn equilibria_match_bisection_oracle() {
    let model = ModelDef::reference();
    for v_w in [0.6, 0.8, 0.9, 0.975, 1.0, 1.05, 1.1] {
        let expected = oracle_roots(v_w);
        let found = equilibria::find_equilibria(&model, v_w).unwrap();
        assert_eq!(found.len(), expected.len(), "v_w = {v_w}");
        for (eq, oracle) in found.iter().zip(&expected) {
            assert_relative_eq!(eq.s_star, oracle, epsilon = 1e-9);
            assert!(eq.residual <= 1e-10);
            assert!(oracle_g(v_w, eq.s_star).abs() <= 1e-10);
        }
    }
}

#[test]
fn reference_roots_bracket_spec_spot_values() {
    // sign structure around the two v_w = 1 roots
    assert!(oracle_g(1.0, 0.02) > 0.0);
    assert!(oracle_g(1.0, 0.022) < 0.0);
    assert!(oracle_g(1.0, 0.15) < 0.0);
    assert!(oracle_g(1.0, 0.175) > 0.0);
    let roots = oracle_roots(1.0);
    assert!((roots[0] - 0.0201).abs() < 1e-3);
    assert!((roots[1] - 0.16).abs() < 1e-2);
}

#[test]
fn simulate_agrees_with_explicit_euler_oracle() {
    let model = ModelDef::reference();
    let traj = dynamics::simulate(&model, 1.0, 0.001, 1e-3, 50.0).unwrap();
    let converged = match traj.outcome {
        Outcome::Converged(s) => s,
        other => panic!("expected convergence, got {other:?}"),
    };
    // independent explicit Euler at h = 1e-5 on the oracle field
    let h = 1e-5;
    let mut s = 0.001;
    for _ in 0..((50.0 / h) as usize) {
        let ds = oracle_g(1.0, s) / INERTIA;
        s += h * ds;
        if ds.abs() < 1e-12 {
            break;
        }
    }
    assert!(
        (converged - s).abs() < 1e-3,
        "rk4 target {converged} vs euler oracle {s}"
    );
}

#[test]
fn rk4_order_via_step_halving() {
    // terminal error against a 1e-5-step reference must drop >= 8x per halving
    let model = ModelDef::reference();
    let terminal = |step: f64| {
        dynamics::simulate(&model, 1.0, 0.001, step, 0.05)
            .unwrap()
            .final_slip()
    };
    let reference = terminal(1e-5);
    let e1 = (terminal(5e-3) - reference).abs();
    let e2 = (terminal(2.5e-3) - reference).abs();
    assert!(
        e1 / e2 >= 8.0,
        "order ratio {} (e1 = {e1:.3e}, e2 = {e2:.3e})",
        e1 / e2
    );
}

#[test]
fn rk4_discrete_slope_consistency() {
    // (s_{k+1} - s_k)/h = f(midpoint) + h²(f f'²/12 + f² f''/24) + O(h³);
    // on this transient the bracket peaks near 460, bounded here by 500
    let model = ModelDef::reference();
    for step in [1e-3, 5e-4] {
        let traj = dynamics::simulate(&model, 1.0, 0.001, step, 2.0).unwrap();
        let bound = 500.0 * step * step;
        for pair in traj.samples.windows(2) {
            let slope = (pair[1].1 - pair[0].1) / step;
            let mid =
                dynamics::net_acceleration(&model, 1.0, 0.5 * (pair[0].1 + pair[1].1)).unwrap();
            assert!(
                (slope - mid).abs() <= bound,
                "step {step}: |{slope} - {mid}| > {bound}"
            );
        }
    }
}

#[test]
fn lyapunov_value_matches_trapezoid_oracle() {
    let model = ModelDef::reference();
    let s0 = equilibria::stable_equilibrium(&model, 1.0).unwrap().s_star;
    for x in [0.01, -0.01] {
        // 1e5-panel trapezoid on the oracle field
        let n = 100_000;
        let h = x / n as f64;
        let f = |xp: f64| oracle_g(1.0, s0 + xp) / INERTIA;
        let mut acc = 0.5 * (f(0.0) + f(x));
        for i in 1..n {
            acc += f(i as f64 * h);
        }
        let oracle = -acc * h;
        let value = lyapunov::lyapunov_value(&model, 1.0, s0, x).unwrap();
        assert!(
            (value - oracle).abs() < 1e-8,
            "L({x}) = {value} vs oracle {oracle}"
        );
        assert!(value > 0.0);
    }
}

#[test]
fn lyapunov_derivative_identity_on_windows() {
    // the closed form -f² and the chain rule through the quadrature agree
    let model = ModelDef::reference();
    for v_w in [0.6, 1.0, 1.05] {
        let s0 = equilibria::stable_equilibrium(&model, v_w).unwrap().s_star;
        let h = 1e-5;
        for x in [-0.008, -0.004, 0.0035, 0.0075] {
            let f = dynamics::shifted_field(&model, v_w, s0, x).unwrap();
            let dl_dx = (lyapunov::lyapunov_value(&model, v_w, s0, x + h).unwrap()
                - lyapunov::lyapunov_value(&model, v_w, s0, x - h).unwrap())
                / (2.0 * h);
            let direct = lyapunov::lyapunov_derivative(&model, v_w, s0, x).unwrap();
            assert_relative_eq!(dl_dx * f, direct, max_relative = 1e-6);
        }
    }
}

#[test]
fn lyapunov_conditions_hold_per_wind() {
    let model = ModelDef::reference();
    for v_w in [0.6, 1.0, 1.05] {
        let report = lyapunov::verify_candidate(&model, v_w, (-0.01, 0.01), 401).unwrap();
        assert!(report.l_zero.abs() <= 1e-12, "v_w = {v_w}");
        assert!(report.positivity_ok, "v_w = {v_w}");
        assert!(report.derivative_ok, "v_w = {v_w}");
    }
}

#[test]
fn lyapunov_non_increasing_along_converging_trajectory() {
    let model = ModelDef::reference();
    let s0 = equilibria::stable_equilibrium(&model, 1.0).unwrap().s_star;
    let traj = dynamics::simulate(&model, 1.0, 0.001, 1e-3, 50.0).unwrap();
    assert!(matches!(traj.outcome, Outcome::Converged(_)));
    let mut prev = f64::INFINITY;
    for (_, s) in traj.samples.iter().step_by(50) {
        let l = lyapunov::lyapunov_value(&model, 1.0, s0, s - s0).unwrap();
        assert!(l <= prev + 1e-8, "L rose from {prev} to {l}");
        prev = l;
    }
}

#[test]
fn basin_edges_match_unstable_root_oracle() {
    let model = ModelDef::reference();
    // v_w = 1: oracle unstable root bounds the basin
    let oracle_upper = oracle_roots(1.0)[1];
    let (lo, hi) = roa::basin_interval(&model, 1.0).unwrap();
    assert_eq!(lo, 0.0);
    assert_relative_eq!(hi, oracle_upper, epsilon = 1e-9);
    // r_mult = 2 stretches T_e horizontally; the oracle sees no second root
    // below the domain cap, so the basin runs to the cap
    let stretched = |v_w: f64, s: f64| oracle_tm(v_w, s) - oracle_te(s, 2.0);
    let mut sign_changes = 0;
    let mut prev = stretched(1.0, 1e-6);
    for i in 1..=4000 {
        let s = 1e-6 + (0.5 - 1e-6) * i as f64 / 4000.0;
        let g = stretched(1.0, s);
        if prev.signum() != g.signum() {
            sign_changes += 1;
        }
        prev = g;
    }
    assert_eq!(sign_changes, 1, "only the stable crossing for r_mult = 2");
    let mut model2 = model;
    model2.machine.r_mult = 2.0;
    let (_, hi2) = roa::basin_interval(&model2, 1.0).unwrap();
    assert_eq!(hi2, model2.slip_domain_upper);
    assert!(hi2 > hi);
}

#[test]
fn equilibrium_classification_matches_field_slope() {
    let model = ModelDef::reference();
    for v_w in [0.975, 1.0, 1.05, 1.1] {
        for eq in equilibria::find_equilibria(&model, v_w).unwrap() {
            let h = 1e-7;
            let slope = (oracle_g(v_w, eq.s_star + h) - oracle_g(v_w, eq.s_star - h)) / (2.0 * h);
            match eq.stability {
                Stability::Stable => assert!(slope < 0.0),
                Stability::Unstable => assert!(slope > 0.0),
            }
        }
    }
}
