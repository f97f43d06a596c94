use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use skewcat::algebra::{center, enveloping_rank_oracle, ideal_generated, is_simple_over_c, radical};
use skewcat::builtins;
use skewcat::linalg::{rref, Matrix};
use skewcat::verifier::{run_checks, CheckConfig, GenBounds, Generator, Instance};
use skewcat::{Algebra, DynSys};

/// The largest groupoid system among the first few seeds.
fn large_groupoid() -> DynSys {
    let bounds = GenBounds::default();
    (0..64)
        .filter_map(|seed| Generator::LocallyAbelianGroupoid.generate(seed, &bounds).ok())
        .map(|i| i.system)
        .max_by_key(skewcat::io::algebra_dim)
        .unwrap()
}

fn systems() -> Vec<(&'static str, DynSys)> {
    vec![
        ("abs", builtins::abs()),
        ("subsets2", builtins::subsets(2)),
        ("pair6", builtins::pair(6)),
        ("groupoid", large_groupoid()),
    ]
}

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    for (name, sys) in systems() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &sys, |b, sys| {
            b.iter(|| Algebra::new(black_box(sys.clone())))
        });
    }
    group.finish();
}

fn structure(c: &mut Criterion) {
    let mut group = c.benchmark_group("structure");
    group.sample_size(20);
    for (name, sys) in systems() {
        let a = Algebra::new(sys);
        group.bench_with_input(BenchmarkId::new("radical", name), &a, |b, a| b.iter(|| radical(a)));
        group.bench_with_input(BenchmarkId::new("center", name), &a, |b, a| b.iter(|| center(a)));
        group.bench_with_input(BenchmarkId::new("simple", name), &a, |b, a| b.iter(|| is_simple_over_c(a)));
        if a.dim() <= 36 {
            group.bench_with_input(BenchmarkId::new("oracle", name), &a, |b, a| {
                b.iter(|| enveloping_rank_oracle(a).unwrap())
            });
        }
    }
    group.finish();
}

fn ideals(c: &mut Criterion) {
    let mut group = c.benchmark_group("ideal");
    let abs = Algebra::new(builtins::abs());
    let u = abs.u(abs.system().category().morphism("abs").unwrap());
    group.bench_function("abs", |b| b.iter(|| ideal_generated(&abs, std::slice::from_ref(&u))));
    let g = Algebra::new(large_groupoid());
    let z = skewcat::Element::basis(g.dim() / 2);
    group.bench_function("groupoid", |b| b.iter(|| ideal_generated(&g, std::slice::from_ref(&z))));
    group.finish();
}

fn elimination(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    for n in [8usize, 16, 32] {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| ((i * 7 + j * 13 + i * j) % 17) as i64 - 8).collect())
            .collect();
        let m = Matrix::from_i64(n, &rows).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| rref(m)));
    }
    group.finish();
}

fn checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("checks");
    group.sample_size(10);
    let config = CheckConfig::default();
    for (name, sys) in systems() {
        let inst = Instance::new(sys, name, 0);
        group.bench_with_input(BenchmarkId::from_parameter(name), &inst, |b, inst| {
            b.iter(|| run_checks(inst, &config))
        });
    }
    group.finish();
}

criterion_group!(benches, build, structure, ideals, elimination, checks);
criterion_main!(benches);
