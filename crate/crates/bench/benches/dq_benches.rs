use criterion::{criterion_group, criterion_main, Criterion};

use dq_core::homology::snf;
use dq_core::quantized::build_hbar_derham;
use dq_core::sample::Sampler;
use dq_core::star::{PbwRelations, StarProduct};
use dq_core::symbolic::{Context, HSeries, Poly};

fn bench_star_mul(c: &mut Criterion) {
    let ctx = Context::new(vec!["x1", "x2", "x3", "x4"]).unwrap();
    let mut s = Sampler::new(1);
    let sp = StarProduct::weyl(&ctx, 8, s.skew_matrix(4)).unwrap();
    let f = HSeries::from_poly(&s.poly(&ctx, 4, 4), 8);
    let g = HSeries::from_poly(&s.poly(&ctx, 4, 4), 8);
    c.bench_function("weyl_star_mul_4vars_order8", |b| {
        b.iter(|| sp.star_mul(std::hint::black_box(&f), std::hint::black_box(&g)).unwrap())
    });
}

fn bench_snf(c: &mut Criterion) {
    let mut s = Sampler::new(2);
    let a = dq_core::homology::random::random_matrix(&mut s, 5, 5, 3);
    c.bench_function("snf_5x5_degree3", |b| b.iter(|| snf(std::hint::black_box(&a))));
}

fn bench_derham(c: &mut Criterion) {
    c.bench_function("derham_homology_2vars_bound2", |b| {
        b.iter(|| build_hbar_derham(2, 2).unwrap().deformed.homology())
    });
}

fn bench_pbw(c: &mut Criterion) {
    let ctx = Context::new(vec!["x1", "x2"]).unwrap();
    let rel = PbwRelations::new(&ctx, vec![((0, 1), Poly::var(&ctx, 0))]).unwrap();
    let sp = StarProduct::pbw(&ctx, 8, rel).unwrap();
    let x1 = Poly::var(&ctx, 0);
    let x2 = Poly::var(&ctx, 1);
    let word = x2.pow(3).mul(&x1.pow(3)).unwrap();
    let f = HSeries::from_poly(&word, 8);
    let g = HSeries::from_poly(&word, 8);
    c.bench_function("pbw_normal_form_deg6", |b| {
        b.iter(|| sp.star_mul(std::hint::black_box(&f), std::hint::black_box(&g)).unwrap())
    });
}

criterion_group!(benches, bench_star_mul, bench_snf, bench_derham, bench_pbw);
criterion_main!(benches);
