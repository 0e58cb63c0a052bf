//! Transient stability analysis of a fixed-speed (Type-A) wind turbine:
//! a squirrel-cage induction generator behind a line on an infinite bus.
//!
//! The library models the machine-side circuit by Thevenin reduction, the
//! turbine by a per-unit power-coefficient fit, and the rotor by the 1-D
//! slip swing equation `M ds/dt = T_m(s) - T_e(s)`. On top of that sit:
//!
//! - [`equilibria`] — stationary points and their classification,
//! - [`dynamics`] — fixed-step RK4 integration with terminal classification,
//! - [`lyapunov`] — the integral Lyapunov candidate `L(x) = -∫₀ˣ f` and its
//!   orbital derivative `-f(x)²`,
//! - [`roa`] — basin intervals and (slip, wind) grid classification,
//! - [`sweeps`] — torque families over wind, compensation, and rotor
//!   resistance (Type-B operation),
//! - [`bench`](mod@bench) — wall-clock micro-benchmarks of the hot paths.
//!
//! Everything is per-unit with synchronous speed 1 pu; slip `s > 0` is
//! generator operation. All analysis types are immutable after construction
//! and safe to share across threads; grid and family evaluations run on
//! rayon worker pools with deterministic assembly.

pub mod bench;
pub mod dynamics;
pub mod equilibria;
pub mod error;
pub mod fmt;
pub mod lyapunov;
pub mod machine;
pub mod model;
pub mod numeric;
pub mod roa;
pub mod sweeps;
pub mod turbine;

pub use dynamics::{Direction, Outcome, SwingSystem, Trajectory};
pub use equilibria::{Equilibrium, Stability};
pub use error::{Error, Result};
pub use lyapunov::{LyapunovReport, LyapunovSample};
pub use machine::TheveninEquivalent;
pub use model::{MachineParams, ModelDef, TurbineParams, ValidationReport, Violation};
pub use roa::{GridCell, GridMap};
pub use sweeps::{Curve, CurveFamily, PullOut, SweepParameter};
pub use turbine::WindOperatingPoint;
