//! Error type shared by every analysis module.

use crate::model::ValidationReport;

/// Errors produced by model ingestion and the numerical analyses.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The configuration file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// The model parsed but violates parameter invariants.
    #[error("validation failed: {0}")]
    Validation(ValidationReport),

    /// Compensation susceptance sits inside the parallel-resonance guard band.
    #[error("resonance: y_c = {y_c} is within the guard band of 1/x_m' = {resonance}")]
    Resonance { y_c: f64, resonance: f64 },

    /// Net magnetizing reactance cancels the line reactance exactly.
    #[error("degenerate circuit: x_m_eff + x_l = 0")]
    DegenerateCircuit,

    /// An input left the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid integration step or horizon.
    #[error("step error: {0}")]
    Step(String),

    /// No sign change of T_m - T_e on the scan grid.
    #[error("no equilibrium found for v_w = {v_w}")]
    NoEquilibrium { v_w: f64 },

    /// The lowest root classified unstable; the torque model is inconsistent.
    #[error("stability mismatch at v_w = {v_w}: lowest root {s_star} classifies unstable")]
    StabilityMismatch { v_w: f64, s_star: f64 },

    /// Adaptive quadrature could not reach its tolerance.
    #[error("quadrature tolerance unreachable after {evals} integrand evaluations")]
    Quadrature { evals: usize },

    /// A Lyapunov window maps outside the valid slip range.
    #[error("window exceeds slip domain: {0}")]
    WindowExceedsDomain(String),

    /// A Lyapunov window that does not contain the origin.
    #[error("invalid window: {0}")]
    InvalidWindow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
