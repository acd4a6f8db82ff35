use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lacuna_core::exact::rational::rat;
use lacuna_core::exact::wallis;
use lacuna_core::fitter::{detect_degree, disk_segment_samples, fit_poly, lacuna_grid_samples};
use lacuna_core::oracle::{mc_cut_volume, quad_dvdb};
use lacuna_core::tube::{tube_dvdb, tube_total_volume, Hyperplane, NormalForm, TubeSpec};

fn exact(c: &mut Criterion) {
    let mut g = c.benchmark_group("tube_dvdb");
    for (k, m) in [(1, 1), (2, 2), (3, 3), (4, 3)] {
        let spec = TubeSpec::new(k, m, rat(1, 2)).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(format!("k{k}m{m}")), &spec, |b, s| {
            b.iter(|| tube_dvdb(black_box(s)))
        });
    }
    g.finish();
    c.bench_function("wallis(20,20)", |b| b.iter(|| wallis(black_box(20), black_box(20))));
}

fn numeric(c: &mut Criterion) {
    let spec = TubeSpec::new(2, 2, rat(1, 2)).unwrap();
    c.bench_function("quad_dvdb k2m2", |b| {
        b.iter(|| quad_dvdb(&spec, black_box(0.3), black_box(0.2), 1e-10).unwrap())
    });
    c.bench_function("tube_total_volume k2m2", |b| {
        b.iter(|| tube_total_volume(black_box(&spec), 1e-10).unwrap())
    });

    let body = spec.implicit_body();
    let h = Hyperplane::from_normal_form(spec.n() as usize, 2, NormalForm { a: 0.1, b: 0.05 });
    let plane = h.functional();
    let mut g = c.benchmark_group("mc_cut_volume");
    g.sample_size(10);
    g.bench_function("1e6 samples", |b| {
        b.iter(|| mc_cut_volume(&body, &plane, 1_000_000, black_box(0)).unwrap())
    });
    g.finish();
}

fn fitting(c: &mut Criterion) {
    let spec = TubeSpec::new(3, 1, rat(1, 2)).unwrap();
    let cut = tube_dvdb(&spec).antiderivative_b();
    let samples = lacuna_grid_samples(&spec, &cut, 15, "tube P").unwrap();
    c.bench_function("fit_poly 2d degree 5", |b| {
        b.iter(|| fit_poly(black_box(&samples), 5).unwrap())
    });
    let disk = disk_segment_samples(-0.95, 0.95, 200).unwrap();
    c.bench_function("detect_degree newton dmax 15", |b| {
        b.iter(|| detect_degree(black_box(&disk), 15, 1e-6).unwrap())
    });
}

criterion_group!(benches, exact, numeric, fitting);
criterion_main!(benches);
