use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dihedral_nullity::oracle::JACOBI_TOL;
use dihedral_nullity::{
    audit_instance, build_block_adjacency, cyclotomic, exact_nullity, paper_nullity_dihedral,
    run_census, symmetric_eigenvalues, CensusSpec, ConnectingSet, Mode,
};

fn sample_set(n: usize) -> ConnectingSet {
    ConnectingSet::new(n, [1, n - 1, 3, n - 3], [0, 2, 5]).unwrap()
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("exact_nullity");
    for n in [10, 32] {
        let a = build_block_adjacency(&sample_set(n)).expand();
        g.bench_with_input(BenchmarkId::from_parameter(2 * n), &a, |b, a| {
            b.iter(|| exact_nullity(black_box(a)).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("jacobi");
    for n in [10, 32] {
        let a = build_block_adjacency(&sample_set(n)).expand().to_real();
        g.bench_with_input(BenchmarkId::from_parameter(2 * n), &a, |b, a| {
            b.iter(|| symmetric_eigenvalues(black_box(a), JACOBI_TOL).unwrap())
        });
    }
    g.finish();
}

fn formula(c: &mut Criterion) {
    c.bench_function("cyclotomic/210", |b| b.iter(|| cyclotomic(black_box(210))));
    let cs = sample_set(60);
    c.bench_function("paper_nullity/n=60", |b| {
        b.iter(|| paper_nullity_dihedral(black_box(&cs)))
    });
    c.bench_function("audit_instance/n=16", |b| {
        let cs = sample_set(16);
        b.iter(|| audit_instance(black_box(&cs), Mode::Dihedral, true).unwrap())
    });
}

fn census(c: &mut Criterion) {
    let mut g = c.benchmark_group("census");
    g.sample_size(10);
    g.bench_function("dihedral n<=7", |b| {
        let spec = CensusSpec::exhaustive(Mode::Dihedral, 3, 7);
        b.iter(|| run_census(&spec, false).unwrap())
    });
    g.finish();
}

criterion_group!(benches, oracle, formula, census);
criterion_main!(benches);
