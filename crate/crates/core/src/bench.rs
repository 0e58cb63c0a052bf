//! Wall-clock micro-benchmarks of the hot paths, exposed as a library
//! routine so the CLI can emit `bench.csv`. Thresholds are report-only; the
//! one gated property is that benchmarking never perturbs numerical output,
//! checked through [`probe_checksum`].

use std::time::Instant;

use crate::dynamics::{self, SwingSystem};
use crate::error::Result;
use crate::fmt::fmt_g;
use crate::machine;
use crate::model::ModelDef;
use crate::roa;

/// One timed measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    pub name: String,
    /// Inner iterations per repetition.
    pub iterations: u64,
    /// Median nanoseconds per operation across repetitions.
    pub ns_per_op: f64,
    /// Nodes per second, for grid-shaped work.
    pub throughput: Option<f64>,
}

/// Suite sizing; [`BenchConfig::default`] matches the reported figures
/// (500x500 grid, 1e5 integration steps, medians of 10 repetitions).
#[derive(Debug, Clone, Copy)]
pub struct BenchConfig {
    pub repetitions: usize,
    pub grid_mesh: (usize, usize),
    pub sim_steps: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            repetitions: 10,
            grid_mesh: (500, 500),
            sim_steps: 100_000,
        }
    }
}

impl BenchConfig {
    /// Small sizing for tests and smoke runs.
    pub fn quick() -> Self {
        Self {
            repetitions: 3,
            grid_mesh: (50, 50),
            sim_steps: 1000,
        }
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// Times a single electrical-torque evaluation, a full grid classification,
/// and a fixed-step integration run.
pub fn bench_suite(model: &ModelDef, cfg: &BenchConfig) -> Result<Vec<BenchResult>> {
    let sys = SwingSystem::new(model)?;
    let th = *sys.thevenin();
    let m = &model.machine;
    let mut results = Vec::with_capacity(3);

    // electrical_torque: single evaluation, measured over a tight loop
    let torque_iters: u64 = 100_000;
    let mut reps = Vec::with_capacity(cfg.repetitions);
    for _ in 0..cfg.repetitions {
        let start = Instant::now();
        let mut acc = 0.0f64;
        for i in 0..torque_iters {
            let s = 1e-4 + (i as f64) * 1e-9;
            acc += machine::electrical_torque(&th, m.r_s, m.r_r, m.r_mult, s);
        }
        let elapsed = start.elapsed().as_nanos() as f64;
        std::hint::black_box(acc);
        reps.push(elapsed / torque_iters as f64);
    }
    results.push(BenchResult {
        name: "electrical_torque".to_string(),
        iterations: torque_iters,
        ns_per_op: median(reps),
        throughput: None,
    });

    // classify_grid over the configured mesh
    let (n_s, n_v) = cfg.grid_mesh;
    let nodes = (n_s * n_v) as u64;
    let mut reps = Vec::with_capacity(cfg.repetitions);
    for _ in 0..cfg.repetitions {
        let start = Instant::now();
        let grid = roa::classify_grid(model, (0.0, 0.5), (0.6, 1.2), cfg.grid_mesh)?;
        let elapsed = start.elapsed().as_nanos() as f64;
        std::hint::black_box(grid.cell_count());
        reps.push(elapsed);
    }
    let ns = median(reps);
    results.push(BenchResult {
        name: format!("classify_grid_{n_s}x{n_v}"),
        iterations: nodes,
        ns_per_op: ns / nodes as f64,
        throughput: Some(nodes as f64 / (ns * 1e-9)),
    });

    // simulate: per-step cost over however many steps the run actually
    // takes (early convergence shortens the configured horizon)
    let t_end = cfg.sim_steps as f64 * 1e-5;
    let mut reps = Vec::with_capacity(cfg.repetitions);
    let mut steps_taken = 0u64;
    for _ in 0..cfg.repetitions {
        let start = Instant::now();
        let traj = dynamics::simulate(model, 1.0, 0.001, 1e-5, t_end)?;
        let elapsed = start.elapsed().as_nanos() as f64;
        steps_taken = (traj.samples.len() - 1) as u64;
        std::hint::black_box(steps_taken);
        reps.push(elapsed / steps_taken.max(1) as f64);
    }
    results.push(BenchResult {
        name: format!("simulate_{}_steps", cfg.sim_steps),
        iterations: steps_taken,
        ns_per_op: median(reps),
        throughput: None,
    });

    Ok(results)
}

/// FNV-1a checksum of a small probe grid's CSV bytes. Used to show
/// benchmarking leaves numerical results untouched.
pub fn probe_checksum(model: &ModelDef) -> Result<u64> {
    let grid = roa::classify_grid(model, (0.0, 0.5), (0.6, 1.2), (15, 12))?;
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in grid.grid_csv().bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    Ok(hash)
}

/// CSV export: `name,iterations,ns_per_op,throughput`.
pub fn bench_csv(results: &[BenchResult]) -> String {
    let mut out = String::from("name,iterations,ns_per_op,throughput\n");
    for r in results {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.name,
            r.iterations,
            fmt_g(r.ns_per_op),
            r.throughput.map(fmt_g).unwrap_or_default()
        ));
    }
    out
}
