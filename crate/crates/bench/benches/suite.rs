//! Hot-path benchmarks: quadrature rule construction, assembly down both
//! potential routes, both eigensolver routes, the recursion sweep behind
//! the characteristic probe, and dense grid sampling.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use ptspec_core::eigen::{complex_eigen, householder_tridiagonalize, tridiag_eigen};
use ptspec_core::hamiltonian::{assemble, BasisSpec, PotentialSpec};
use ptspec_core::laguerre::{gauss_laguerre_rule, ExpansionMode};
use ptspec_core::wavefunction::{
    default_grid, expansion_coefficients, reconstruct, recursion_eval,
};
use ptspec_core::TridiagonalSymmetric;

fn quadrature(c: &mut Criterion) {
    c.bench_function("gauss_laguerre_rule alpha 2.5 K 64", |b| {
        b.iter(|| gauss_laguerre_rule(black_box(2.5), black_box(64)).unwrap())
    });
}

fn assembly(c: &mut Criterion) {
    let basis = BasisSpec::new(1.0, 32).unwrap();
    let corrected = PotentialSpec::new(2.0, ExpansionMode::Corrected).unwrap();
    let paper = PotentialSpec::new(2.0, ExpansionMode::PaperFaithful).unwrap();
    c.bench_function("assemble corrected N 2 M 32", |b| {
        b.iter(|| assemble(black_box(&basis), black_box(&corrected)).unwrap())
    });
    c.bench_function("assemble paper-faithful N 2 M 32", |b| {
        b.iter(|| assemble(black_box(&basis), black_box(&paper)).unwrap())
    });
}

fn eigensolvers(c: &mut Criterion) {
    let basis = BasisSpec::new(1.0, 32).unwrap();
    let pot = PotentialSpec::new(2.0, ExpansionMode::Corrected).unwrap();
    let real_part = assemble(&basis, &pot).unwrap().matrix().real_part();
    c.bench_function("real symmetric route M 32", |b| {
        b.iter(|| {
            let t = householder_tridiagonalize(black_box(&real_part)).unwrap();
            tridiag_eigen(&t).unwrap()
        })
    });

    let basis = BasisSpec::new(1.0, 16).unwrap();
    let pot = PotentialSpec::new(1.1, ExpansionMode::Corrected).unwrap();
    let h = assemble(&basis, &pot).unwrap();
    c.bench_function("complex dense route M 16", |b| {
        b.iter(|| complex_eigen(black_box(h.matrix())).unwrap())
    });
}

fn recursion(c: &mut Criterion) {
    let size = 64usize;
    let diag: Vec<f64> = (0..size).map(|j| 2.0 * j as f64 + 1.5).collect();
    let off: Vec<f64> = (0..size - 1)
        .map(|j| ((j as f64 + 1.0) * (j as f64 + 1.5)).sqrt())
        .collect();
    let t = TridiagonalSymmetric::new(diag, off);
    let e = Complex64::new(40.3, 0.7);
    c.bench_function("recursion sweep M 64", |b| {
        b.iter(|| recursion_eval(black_box(&t), black_box(e)).unwrap())
    });
}

fn sampling(c: &mut Criterion) {
    let basis = BasisSpec::new(3.0, 10).unwrap();
    let pot = PotentialSpec::new(2.0, ExpansionMode::Corrected).unwrap();
    let h = assemble(&basis, &pot).unwrap();
    let coeffs = expansion_coefficients(&h, 0).unwrap();
    let grid = default_grid(&basis);
    c.bench_function("reconstruct 401 points M 10", |b| {
        b.iter(|| reconstruct(black_box(&coeffs), black_box(&basis), black_box(&grid)).unwrap())
    });
}

criterion_group!(benches, quadrature, assembly, eigensolvers, recursion, sampling);
criterion_main!(benches);
