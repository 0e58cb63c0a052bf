use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use typea_stab_core::dynamics::{self, SwingSystem};
use typea_stab_core::model::ModelDef;
use typea_stab_core::{machine, roa};

fn bench_torque(c: &mut Criterion) {
    let model = ModelDef::reference();
    let m = model.machine;
    let th = machine::thevenin_reduce(&m).unwrap();
    c.bench_function("electrical_torque", |b| {
        let mut s = 1e-4;
        b.iter(|| {
            s += 1e-9;
            machine::electrical_torque(std::hint::black_box(&th), m.r_s, m.r_r, m.r_mult, s)
        })
    });
}

fn bench_grid(c: &mut Criterion) {
    let model = ModelDef::reference();
    let mut group = c.benchmark_group("classify_grid");
    for n in [100usize, 250] {
        group.throughput(Throughput::Elements((n * n) as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| roa::classify_grid(&model, (0.0, 0.5), (0.6, 1.2), (n, n)).unwrap())
        });
    }
    group.finish();
}

fn bench_rk4(c: &mut Criterion) {
    let model = ModelDef::reference();
    let sys = SwingSystem::new(&model).unwrap();
    c.bench_function("accel_eval", |b| {
        let mut s = 0.001;
        b.iter(|| {
            s = if s > 0.02 { 0.001 } else { s + 1e-9 };
            sys.accel(1.0, s)
        })
    });
    c.bench_function("simulate_10k_steps", |b| {
        b.iter(|| dynamics::simulate(&model, 1.0, 0.001, 1e-5, 0.1).unwrap())
    });
}

criterion_group!(benches, bench_torque, bench_grid, bench_rk4);
criterion_main!(benches);
