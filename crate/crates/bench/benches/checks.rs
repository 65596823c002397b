use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use twistlab_bench::{cyclic_pair, sign_qci};
use twistlab_core::scalar::root_of_unity;
use twistlab_core::twist::{check_coalgebra_compat, check_frobenius_inheritance, check_twisting, iterated_twist};
use twistlab_core::FieldSpec;

fn scalars(c: &mut Criterion) {
    let f = FieldSpec::cyclotomic(12).unwrap();
    let z = root_of_unity(&f, 12).unwrap();
    c.bench_function("cyclotomic power z^1000", |b| b.iter(|| black_box(&z).pow(1000).unwrap()));
}

fn twists(c: &mut Criterion) {
    let (a, b, tau) = cyclic_pair(3).unwrap();
    c.bench_function("check_twisting kC3⊗kC3", |bn| bn.iter(|| check_twisting(black_box(&tau)).unwrap()));
    c.bench_function("comultiplication hexagon kC3⊗kC3", |bn| {
        bn.iter(|| check_coalgebra_compat(&tau, &a.frobenius.coalgebra, &b.frobenius.coalgebra).unwrap())
    });
    c.bench_function("frobenius inheritance kC3⊗kC3", |bn| {
        bn.iter(|| check_frobenius_inheritance(&tau, &a.frobenius, &b.frobenius).unwrap())
    });
    c.bench_function("iterated twist τ_{2,2} kC3⊗kC3", |bn| bn.iter(|| iterated_twist(&tau, 2, 2).unwrap()));
}

fn complete_intersections(c: &mut Criterion) {
    let mut group = c.benchmark_group("quantum complete intersection");
    group.sample_size(10);
    group.bench_function("build m = (3,3)", |b| b.iter(|| sign_qci(black_box(&[3, 3])).unwrap()));
    group.bench_function("build m = (2,2,2)", |b| b.iter(|| sign_qci(black_box(&[2, 2, 2])).unwrap()));
    group.finish();
}

criterion_group!(benches, scalars, twists, complete_intersections);
criterion_main!(benches);
