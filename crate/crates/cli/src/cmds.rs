//! Subcommand implementations. Every command writes its tables through a
//! [`Sink`] and finishes with a manifest; stdout carries a short status,
//! stderr carries warnings and errors.

use std::process::ExitCode;

use typea_stab_core::model::ModelDef;
use typea_stab_core::{bench, dynamics, equilibria, lyapunov, roa, sweeps};
use typea_stab_core::{Error, Outcome, Result, SweepParameter};

use crate::output::Sink;
use crate::{goldens, Cli, Command};

pub fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Validate => validate(cli),
        Command::TorqueCurves(args) => torque_curves(cli, args),
        Command::Equilibria(args) => equilibria_cmd(cli, args),
        Command::Simulate(args) => simulate(cli, args),
        Command::Lyapunov(args) => lyapunov_cmd(cli, args),
        Command::Roa(args) => roa_cmd(cli, args),
        Command::SweepComp(args) => sweep_comp(cli, args),
        Command::SweepRotor(args) => sweep_rotor(cli, args),
        Command::Bench(args) => bench_cmd(cli, args),
        Command::RegenGoldens(args) => goldens::run(cli, args),
    }
}

fn load(cli: &Cli) -> Result<ModelDef> {
    ModelDef::load(&cli.model)
}

fn sink(cli: &Cli, command: &str) -> Result<Sink> {
    Sink::new(
        &cli.output_dir,
        cli.format,
        command,
        &cli.model.display().to_string(),
    )
}

fn finish(sink: Sink) -> Result<ExitCode> {
    for name in sink.finish()? {
        println!("wrote {name}");
    }
    println!("wrote manifest.json");
    Ok(ExitCode::SUCCESS)
}

fn validate(cli: &Cli) -> Result<ExitCode> {
    let model = load(cli)?;
    let report = model.validate();
    let mut csv = String::from("field,status,message\n");
    for w in &report.warnings {
        csv.push_str(&format!("{},warning,{}\n", w.field, w.message));
    }
    csv.push_str("-,pass,model satisfies all invariants\n");
    let mut out = sink(cli, "validate")?;
    out.write_table("validation", &csv)?;
    println!("validation: pass ({} warnings)", report.warnings.len());
    finish(out)
}

fn torque_curves(cli: &Cli, args: &crate::TorqueCurvesArgs) -> Result<ExitCode> {
    let model = load(cli)?;
    let family = sweeps::torque_family_wind(&model, &args.v, args.s.bounds(), args.s.n)?;
    let mut out = sink(cli, "torque-curves")?;
    out.manifest.parameter("v", join(&args.v));
    out.manifest.parameter("s", format_range(&args.s));
    out.write_table("torque_curves", &family.family_csv())?;
    out.write_table("torque_curves_summary", &family.summary_csv())?;
    println!("torque-curves: {} curves", family.curves.len());
    finish(out)
}

fn equilibria_cmd(cli: &Cli, args: &crate::EquilibriaArgs) -> Result<ExitCode> {
    let model = load(cli)?;
    let mut rows = Vec::new();
    for &v_w in &args.v {
        match equilibria::find_equilibria(&model, v_w) {
            Ok(mut eqs) => rows.append(&mut eqs),
            Err(e @ Error::NoEquilibrium { .. }) => eprintln!("warning: {e}"),
            Err(e) => return Err(e),
        }
    }
    let mut out = sink(cli, "equilibria")?;
    out.manifest.parameter("v", join(&args.v));
    out.write_table("equilibria", &equilibria::equilibria_csv(&rows))?;
    println!("equilibria: {} roots", rows.len());
    finish(out)
}

fn simulate(cli: &Cli, args: &crate::SimulateArgs) -> Result<ExitCode> {
    let model = load(cli)?;
    let traj = dynamics::simulate(&model, args.v, args.s_init, args.step, args.t_end)?;
    let mut out = sink(cli, "simulate")?;
    out.manifest.parameter("v", args.v);
    out.manifest.parameter("s_init", args.s_init);
    out.manifest.parameter("step", args.step);
    out.manifest.parameter("t_end", args.t_end);
    out.manifest
        .parameter("outcome", outcome_label(&traj.outcome));
    out.write_table("trajectory", &traj.to_csv())?;
    println!(
        "simulate: {} samples, outcome {}",
        traj.samples.len(),
        outcome_label(&traj.outcome)
    );
    finish(out)
}

fn outcome_label(outcome: &Outcome) -> String {
    match outcome {
        Outcome::Converged(s) => format!("converged({})", typea_stab_core::fmt::fmt_g(*s)),
        Outcome::Diverged(dynamics::Direction::Up) => "diverged(up)".to_string(),
        Outcome::Diverged(dynamics::Direction::Down) => "diverged(down)".to_string(),
        Outcome::Undecided => "undecided".to_string(),
    }
}

fn lyapunov_cmd(cli: &Cli, args: &crate::LyapunovArgs) -> Result<ExitCode> {
    let model = load(cli)?;
    let report =
        lyapunov::verify_candidate(&model, args.v, (args.window.lo, args.window.hi), args.n)?;
    let mut out = sink(cli, "lyapunov")?;
    out.manifest.parameter("v", args.v);
    out.manifest
        .parameter("window", format!("{}:{}", args.window.lo, args.window.hi));
    out.manifest.parameter("n", args.n);
    out.write_table("lyapunov", &report.to_csv())?;
    println!(
        "lyapunov: positivity_ok={} derivative_ok={}",
        report.positivity_ok, report.derivative_ok
    );
    finish(out)
}

fn roa_cmd(cli: &Cli, args: &crate::RoaArgs) -> Result<ExitCode> {
    let model = load(cli)?;
    let grid = roa::classify_grid(
        &model,
        args.s.bounds(),
        args.v.bounds(),
        (args.s.n, args.v.n),
    )?;
    let samples = roa::vector_field_samples(
        &model,
        args.s.bounds(),
        args.v.bounds(),
        (args.s.n, args.v.n),
    )?;
    let basins = roa::basin_csv(&model, &grid.v_axis)?;
    let mut out = sink(cli, "roa")?;
    out.manifest.parameter("s", format_range(&args.s));
    out.manifest.parameter("v", format_range(&args.v));
    out.write_table("roa_grid", &grid.grid_csv())?;
    out.write_table("roa_quiver", &roa::quiver_csv(&samples))?;
    out.write_table("roa_basin", &basins)?;
    println!("roa: {} cells", grid.cell_count());
    finish(out)
}

fn sweep_comp(cli: &Cli, args: &crate::SweepCompArgs) -> Result<ExitCode> {
    let model = load(cli)?;
    let resonance = 1.0 / model.machine.x_m_prime;
    // the guard band is checked before the below/above split so resonant
    // values cannot fall through it
    for &y_c in &args.yc {
        if (y_c * model.machine.x_m_prime - 1.0).abs() <= typea_stab_core::model::RESONANCE_GUARD {
            return Err(Error::Resonance { y_c, resonance });
        }
    }
    let below: Vec<f64> = args.yc.iter().copied().filter(|&y| y < resonance).collect();
    let above: Vec<f64> = args.yc.iter().copied().filter(|&y| y > resonance).collect();
    if !above.is_empty() && !args.allow_past_resonance {
        return Err(Error::Domain(format!(
            "y_c values {:?} lie past the parallel resonance 1/x_m' = {resonance}; pass \
             --allow-past-resonance to sweep them",
            above
        )));
    }
    let mut out = sink(cli, "sweep-comp")?;
    out.manifest.parameter("yc", join(&args.yc));
    out.manifest.parameter("s", format_range(&args.s));
    out.manifest
        .parameter("allow_past_resonance", args.allow_past_resonance);
    let mut curve_count = 0;
    if !below.is_empty() {
        let family = sweeps::compensation_sweep(&model, &below, args.s.bounds(), args.s.n)?;
        curve_count += family.curves.len();
        out.write_table("comp_sweep", &family.family_csv())?;
        out.write_table("comp_sweep_summary", &family.summary_csv())?;
    }
    if !above.is_empty() {
        // output split at the singularity: the past-resonance branch gets
        // its own files
        let family = sweeps::compensation_sweep(&model, &above, args.s.bounds(), args.s.n)?;
        curve_count += family.curves.len();
        out.write_table("comp_sweep_above_resonance", &family.family_csv())?;
        out.write_table("comp_sweep_above_resonance_summary", &family.summary_csv())?;
    }
    if let Some(v_w) = args.basin_v {
        let edges = sweeps::basin_vs_parameter(&model, SweepParameter::Compensation(&below), v_w)?;
        out.manifest.parameter("basin_v", v_w);
        out.write_table("comp_basin", &sweeps::basin_sweep_csv(&edges))?;
    }
    println!("sweep-comp: {curve_count} curves");
    finish(out)
}

fn sweep_rotor(cli: &Cli, args: &crate::SweepRotorArgs) -> Result<ExitCode> {
    let model = load(cli)?;
    let family = sweeps::rotor_resistance_sweep(&model, &args.r, args.s.bounds(), args.s.n)?;
    let mut out = sink(cli, "sweep-rotor")?;
    out.manifest.parameter("r", join(&args.r));
    out.manifest.parameter("s", format_range(&args.s));
    out.write_table("rotor_sweep", &family.family_csv())?;
    out.write_table("rotor_sweep_summary", &family.summary_csv())?;
    if let Some(v_w) = args.basin_v {
        let edges = sweeps::basin_vs_parameter(&model, SweepParameter::RotorR(&args.r), v_w)?;
        out.manifest.parameter("basin_v", v_w);
        out.write_table("rotor_basin", &sweeps::basin_sweep_csv(&edges))?;
    }
    println!("sweep-rotor: {} curves", family.curves.len());
    finish(out)
}

fn bench_cmd(cli: &Cli, args: &crate::BenchArgs) -> Result<ExitCode> {
    let model = load(cli)?;
    let cfg = if args.quick {
        bench::BenchConfig::quick()
    } else {
        bench::BenchConfig::default()
    };
    let probe_before = bench::probe_checksum(&model)?;
    let results = bench::bench_suite(&model, &cfg)?;
    let probe_after = bench::probe_checksum(&model)?;
    let mut out = sink(cli, "bench")?;
    out.manifest.parameter("quick", args.quick);
    out.manifest
        .parameter("probe_checksum", format!("{probe_before:016x}"));
    out.manifest
        .parameter("probe_unchanged", probe_before == probe_after);
    out.write_table("bench", &bench::bench_csv(&results))?;
    for r in &results {
        println!("bench {}: {:.1} ns/op", r.name, r.ns_per_op);
    }
    finish(out)
}

fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn format_range(r: &crate::ranges::Range) -> String {
    format!("{}:{}:{}", r.lo, r.hi, r.n)
}
