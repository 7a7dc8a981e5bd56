use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use supint::audit::{run_audit, AuditSettings};
use supint::geometry::curvature_spherical;
use supint::parallel::map;
use supint::{ConformalProfile, ExecMode, SpaceSpec};

fn modes() -> [(&'static str, ExecMode); 2] {
    [("parallel", ExecMode::Parallel), ("sequential", ExecMode::Sequential)]
}

fn audit(c: &mut Criterion) {
    let space = SpaceSpec::new(0.6, 1.0, ConformalProfile::CosCubed, [0.1, 0.2, 0.3]).unwrap();
    let mut group = c.benchmark_group("audit");
    group.sample_size(10);
    for (name, mode) in modes() {
        let settings = AuditSettings { mode, ..AuditSettings::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| run_audit(&space, &settings)));
    }
    group.finish();
}

fn curvature_grid(c: &mut Criterion) {
    let space = SpaceSpec::free(0.8, ConformalProfile::PowerCosine { k: 0.3 }).unwrap();
    let edge = space.patch_radius().unwrap();
    let grid: Vec<(f64, f64)> =
        (0..4096).map(|i| (edge * (0.02 + 0.9 * (i / 64) as f64 / 63.0), 0.1 + 1.3 * (i % 64) as f64 / 63.0)).collect();
    let mut group = c.benchmark_group("curvature-grid");
    for (name, mode) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| map(&grid, mode, |&(r, th)| curvature_spherical(r, th, &space).map(|k| k.scalar)))
        });
    }
    group.finish();
}

criterion_group!(benches, audit, curvature_grid);
criterion_main!(benches);
