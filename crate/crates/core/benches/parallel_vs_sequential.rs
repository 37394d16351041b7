use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use beta_intertwine::kernels::{sample_composed, ChamberPoint, KernelParams};
use beta_intertwine::numerics::RngStream;
use beta_intertwine::parallel::{map_indexed_with, Execution};
use beta_intertwine::semigroup::{simulate_sde_with, GeneratorKind, GeneratorSpec, SdeConfig};
use beta_intertwine::verify::{find_check, run_check, Overrides, RunOptions, VerifyConfig};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn kernel_draws(c: &mut Criterion) {
    let x = ChamberPoint::nonnegative(vec![0.3, 0.9, 1.8, 3.1]).unwrap();
    let params = KernelParams::new(1.5, 0.4, 3).unwrap();
    let mut group = c.benchmark_group("composed kernel, 20000 draws");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| map_indexed_with(exec, 20_000, |i| sample_composed(&x, &params, &mut RngStream::new(7, i as u64)).unwrap()))
        });
    }
    group.finish();
}

fn sde_paths(c: &mut Criterion) {
    let spec = GeneratorSpec::new(GeneratorKind::Laguerre, 1.0, 0.5, 2).unwrap();
    let x0 = ChamberPoint::nonnegative(vec![1.0, 2.0]).unwrap();
    let cfg = SdeConfig::new(1e-3, 0.5, 2_000).unwrap();
    let mut group = c.benchmark_group("SDE, 2000 paths of 500 steps");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| simulate_sde_with(exec, &spec, &x0, &cfg, 3).unwrap()));
    }
    group.finish();
}

fn quadrature_grid(c: &mut Criterion) {
    let config = VerifyConfig::builtin();
    let check = find_check("thm-2.2-quadrature").unwrap();
    let mut group = c.benchmark_group("quadrature eigenrelation grid, N = 2");
    group.sample_size(10);
    for (name, exec) in MODES {
        let mut options = RunOptions::new(config.seed);
        options.overrides = Overrides { n: Some(2), ..Default::default() };
        options.execution = exec;
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| run_check(check, &config, &options)));
    }
    group.finish();
}

criterion_group!(benches, kernel_draws, sde_paths, quadrature_grid);
criterion_main!(benches);
