//! Criterion benchmarks for the hot paths: root isolation, weight-vector
//! assembly, the monoid engine end to end, the zeta48 computation, mod-p
//! factor degrees, and tree characteristic polynomials.

use arboreal_core::analyze::{analyze, InputKind};
use arboreal_core::certify::{signed_delta, weight_vector, SearchBudget};
use arboreal_core::cyclo::classify_cyclotomic;
use arboreal_core::modp::modp_factor_degrees;
use arboreal_core::obstruct::zeta48_three_adic_report;
use arboreal_core::poly::parse_polynomial;
use arboreal_core::roots::isolate_positive_roots;
use arboreal_core::spectrum::{InterlacingSet, Side, SquaresSpectrum};
use arboreal_core::startree::{char_poly_closed_form, RootedStarTree};
use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::hint::black_box;

fn octic_squares() -> arboreal_core::poly::IntPolynomial {
    parse_polynomial("x^4 - 44x^3 + 567x^2 - 2660x + 3564").unwrap()
}

fn bench_isolation(c: &mut Criterion) {
    let f = octic_squares();
    c.bench_function("isolate octic squares roots", |b| {
        b.iter(|| isolate_positive_roots(black_box(&f)).unwrap())
    });
}

fn bench_weight_vector(c: &mut Criterion) {
    let f = octic_squares();
    let ks = InterlacingSet::new(vec![0, 3, 7, 10], Side::Left);
    c.bench_function("weight vector + signed delta", |b| {
        b.iter(|| {
            let wv = weight_vector(black_box(&f), black_box(&ks)).unwrap();
            signed_delta(&wv)
        })
    });
}

fn bench_analyze_octic(c: &mut Criterion) {
    let f = parse_polynomial("x^8 - 44x^6 + 567x^4 - 2660x^2 + 3564").unwrap();
    c.bench_function("analyze octic end to end", |b| {
        b.iter(|| analyze(black_box(&f), InputKind::Lambda, &SearchBudget::default()).unwrap())
    });
}

fn bench_spectrum(c: &mut Criterion) {
    let f = octic_squares();
    c.bench_function("squared spectrum construction", |b| {
        b.iter(|| SquaresSpectrum::new(black_box(&f)).unwrap())
    });
}

fn bench_zeta48(c: &mut Criterion) {
    c.bench_function("zeta48 three-adic report to 100", |b| {
        b.iter(|| zeta48_three_adic_report(black_box(100)).unwrap())
    });
}

fn bench_classify_m48(c: &mut Criterion) {
    let budget = SearchBudget::default();
    c.bench_function("classify cyclotomic m=48", |b| {
        b.iter(|| classify_cyclotomic(black_box(48), &budget).unwrap())
    });
}

fn bench_ddf(c: &mut Criterion) {
    let f = parse_polynomial("x^4 - 8x^3 + 20x^2 - 16x + 1").unwrap();
    c.bench_function("mod-p factor degrees (p=3)", |b| {
        b.iter(|| modp_factor_degrees(black_box(&f), 3).unwrap())
    });
}

fn bench_charpoly(c: &mut Criterion) {
    let branches: BTreeMap<u64, BigInt> = [(0u64, 2i64), (4, 4), (8, 2)]
        .into_iter()
        .map(|(k, a)| (k, BigInt::from(a)))
        .collect();
    let tree = RootedStarTree::new(branches).unwrap();
    c.bench_function("closed-form charpoly of 41-vertex witness", |b| {
        b.iter(|| char_poly_closed_form(black_box(&tree)))
    });
}

criterion_group!(
    benches,
    bench_isolation,
    bench_weight_vector,
    bench_analyze_octic,
    bench_spectrum,
    bench_zeta48,
    bench_classify_m48,
    bench_ddf,
    bench_charpoly
);
criterion_main!(benches);
