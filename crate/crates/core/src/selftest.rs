//! Runtime invariant suite: every module's key properties re-checked in one
//! deterministic pass, cheap enough to run on demand from the CLI.
//!
//! Each suite accumulates named checks and returns the failures instead of
//! panicking, so one broken invariant never hides the rest.

use std::time::{Duration, Instant};

use num_complex::Complex64;

use crate::eigen::{classify, complex_eigen, solve, tridiag_eigen, DEFAULT_TOL_REAL};
use crate::error::Result;
use crate::hamiltonian::{
    assemble, potential_via_expansion, BasisSpec, ComplexSymmetricMatrix, PotentialSpec,
};
use crate::laguerre::{
    gauss_laguerre_rule, integrate, laguerre_all, laguerre_derivative_identity,
    laguerre_ode_residual, monomial_expansion, triple_product, ExpansionMode,
};
use crate::matrix::{ComplexMatrix, RealMatrix};
use crate::reference::{
    compare_energy_table, compare_matrix, sweep_reality, ReferenceDataset, DATASET_DIGEST,
};
use crate::special::gamma;
use crate::wavefunction::{
    basis_eval, characteristic_value, decay_metric, default_grid, discrete_orthogonality,
    expansion_coefficients, recursion_eval, reconstruct,
};
use crate::eigen::householder_tridiagonalize;

/// Outcome of one invariant suite.
#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
    pub duration: Duration,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn all_passed(results: &[SuiteResult]) -> bool {
    results.iter().all(SuiteResult::passed)
}

struct Checker {
    checks: usize,
    failures: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Checker {
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, label: &str, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures.push(label.to_string());
        }
    }

    fn check_le(&mut self, label: &str, value: f64, bound: f64) {
        self.checks += 1;
        if !(value <= bound) {
            self.failures
                .push(format!("{label}: {value:.3e} exceeds {bound:.3e}"));
        }
    }

    fn record<T>(&mut self, label: &str, result: Result<T>) -> Option<T> {
        match result {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{label}: {e}"));
                None
            }
        }
    }

    fn finish(self, name: &str, started: Instant) -> SuiteResult {
        SuiteResult {
            name: name.to_string(),
            checks: self.checks,
            failures: self.failures,
            duration: started.elapsed(),
        }
    }
}

/// Small deterministic PRNG so suite inputs never depend on platform state.
struct XorShift(u64);

impl XorShift {
    fn next_f64(&mut self) -> f64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        (x >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    }
}

/// Determinant by LU with partial pivoting: the independent oracle for
/// eigenvalue products.
fn det_lu(a: &ComplexMatrix) -> Complex64 {
    let n = a.size();
    let mut m: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j)).collect())
        .collect();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| m[i][k].norm().total_cmp(&m[j][k].norm()))
            .unwrap();
        if m[pivot][k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != k {
            m.swap(pivot, k);
            det = -det;
        }
        det *= m[k][k];
        for i in k + 1..n {
            let factor = m[i][k] / m[k][k];
            for j in k..n {
                let sub = factor * m[k][j];
                m[i][j] -= sub;
            }
        }
    }
    det
}

fn assembly(lambda: f64, big_n: f64, size: usize, mode: ExpansionMode) -> Result<ComplexSymmetricMatrix> {
    let basis = BasisSpec::new(lambda, size)?;
    let potential = PotentialSpec::new(big_n, mode)?;
    assemble(&basis, &potential)
}

fn laguerre_suite() -> SuiteResult {
    let started = Instant::now();
    let mut c = Checker::new();

    for &nu in &[0.5, 1.5, 2.0] {
        for n in 0..8usize {
            for &y in &[0.3, 1.0, 4.0, 9.0] {
                let r = laguerre_ode_residual(n, nu, y).unwrap();
                c.check_le(&format!("ode residual n={n} nu={nu} y={y}"), r.abs(), 1e-8);
                let (lhs, rhs) = laguerre_derivative_identity(n, nu, y).unwrap();
                c.check_le(
                    &format!("derivative identity n={n} nu={nu} y={y}"),
                    (lhs - rhs).abs(),
                    1e-9 * (1.0 + lhs.abs()),
                );
            }
        }
    }

    for &alpha in &[0.5, 1.5] {
        for &k in &[6usize, 12] {
            if let Some(rule) = c.record("rule construction", gauss_laguerre_rule(alpha, k)) {
                for j in 0..2 * k {
                    let value = integrate(&rule, |y| y.powi(j as i32));
                    let expect = gamma(alpha + j as f64 + 1.0);
                    c.check_le(
                        &format!("rule exactness alpha={alpha} k={k} degree={j}"),
                        (value - expect).abs() / expect,
                        1e-10,
                    );
                }
            }
        }
    }

    for big_n in 1..=4usize {
        if let Some(exp) = c.record(
            "expansion construction",
            monomial_expansion(big_n as f64, 0.5, ExpansionMode::Corrected),
        ) {
            for &y in &[1.0, 2.0, 4.0] {
                let table = laguerre_all(big_n, 0.5, y).unwrap();
                let mut acc = 0.0;
                for (k, &ck) in exp.coeffs.iter().enumerate() {
                    acc += ck * table[k];
                }
                let expect = y.powi(big_n as i32);
                c.check_le(
                    &format!("expansion round trip N={big_n} y={y}"),
                    (acc - expect).abs() / expect,
                    1e-10,
                );
            }
        }
    }

    for &(k, n, m) in &[(1usize, 2usize, 3usize), (2, 2, 4), (0, 5, 5)] {
        let a = triple_product(k, n, m, 0.5).unwrap();
        let b = triple_product(k, m, n, 0.5).unwrap();
        c.check_le(
            &format!("triple product symmetry k={k} n={n} m={m}"),
            (a - b).abs(),
            1e-12 * (1.0 + a.abs()),
        );
    }

    c.finish("laguerre", started)
}

fn hamiltonian_suite() -> SuiteResult {
    let started = Instant::now();
    let mut c = Checker::new();

    // harmonic limit: diagonal matrix with 4n+3 on the diagonal
    if let Some(h) = c.record(
        "harmonic assembly",
        assembly(std::f64::consts::SQRT_2, 1.0, 16, ExpansionMode::Corrected),
    ) {
        let scale = h.matrix().max_abs();
        let mut max_off = 0.0f64;
        let mut max_diag = 0.0f64;
        for i in 0..16 {
            for j in 0..16 {
                let v = h.get(i, j).norm();
                if i == j {
                    max_diag = max_diag.max((h.get(i, i).re - (4 * i + 3) as f64).abs());
                } else {
                    max_off = max_off.max(v);
                }
            }
        }
        c.check_le("harmonic limit off-diagonal", max_off, 1e-8 * scale);
        c.check_le("harmonic limit diagonal vs 4n+3", max_diag, 1e-8);
    }

    if let Some(h) = c.record(
        "complex assembly",
        assembly(1.0, 1.1, 8, ExpansionMode::Corrected),
    ) {
        c.check(
            "complex symmetric assembly is exactly symmetric",
            h.matrix().max_asymmetry() == 0.0,
        );
    }

    for &big_n in &[1.0, 2.0, 3.0, 4.0] {
        for &lambda in &[1.0, 2.9] {
            if let Some(h) = c.record(
                "integer assembly",
                assembly(lambda, big_n, 16, ExpansionMode::Corrected),
            ) {
                c.check(
                    &format!("integer N={big_n} lambda={lambda} entries real"),
                    h.matrix().is_effectively_real(1e-12),
                );
                if let Some(s) = c.record("integer solve", solve(h.matrix())) {
                    let summary = classify(&s, DEFAULT_TOL_REAL);
                    c.check(
                        &format!("integer N={big_n} lambda={lambda} spectrum real"),
                        summary.n_complex == 0,
                    );
                }
            }
        }
    }

    for big_n in 1..=4usize {
        let basis = BasisSpec::new(1.7, 12).unwrap();
        let pot = PotentialSpec::new(big_n as f64, ExpansionMode::Corrected).unwrap();
        let h = assemble(&basis, &pot).unwrap();
        let coeffs = monomial_expansion(big_n as f64, 0.5, ExpansionMode::Corrected).unwrap();
        let v_exp = potential_via_expansion(&basis, &pot, &coeffs).unwrap();
        let scale = h.matrix().max_abs();
        let mut max_delta = 0.0f64;
        for i in 0..12 {
            for j in 0..12 {
                let v_quad = h.get(i, j) - kinetic_part(&basis, i, j);
                max_delta = max_delta.max((v_exp.get(i, j) - v_quad).norm());
            }
        }
        c.check_le(
            &format!("expansion/quadrature equivalence N={big_n}"),
            max_delta,
            1e-10 * scale.max(1.0),
        );
    }

    // potential scales as lambda^(-2N)
    let b1 = BasisSpec::new(1.3, 6).unwrap();
    let b2 = BasisSpec::new(2.6, 6).unwrap();
    let pot = PotentialSpec::new(2.0, ExpansionMode::Corrected).unwrap();
    let v1 = assemble(&b1, &pot).unwrap();
    let v2 = assemble(&b2, &pot).unwrap();
    let mut max_scale_err = 0.0f64;
    for i in 0..6 {
        for j in 0..6 {
            let p1 = v1.get(i, j) - kinetic_part(&b1, i, j);
            let p2 = v2.get(i, j) - kinetic_part(&b2, i, j);
            let lhs = p1 * Complex64::new(1.3f64.powi(4), 0.0);
            let rhs = p2 * Complex64::new(2.6f64.powi(4), 0.0);
            max_scale_err = max_scale_err.max((lhs - rhs).norm() / (1.0 + lhs.norm()));
        }
    }
    c.check_le("potential lambda scaling", max_scale_err, 1e-10);

    c.finish("hamiltonian", started)
}

/// Closed-form kinetic entry, used to separate V from H in suite checks.
fn kinetic_part(basis: &BasisSpec, i: usize, j: usize) -> Complex64 {
    let lambda = basis.lambda();
    let d = basis.d();
    let two_l2 = 2.0 * lambda * lambda;
    let value = if i == j {
        two_l2 * (0.75 + i as f64 - d * (2.0 * i as f64 + 1.5))
    } else if j == i + 1 || i == j + 1 {
        let n = i.min(j) as f64;
        two_l2 * d * ((n + 1.0) * (n + 1.5)).sqrt()
    } else {
        0.0
    };
    Complex64::new(value, 0.0)
}

fn eigensolver_suite() -> SuiteResult {
    let started = Instant::now();
    let mut c = Checker::new();
    let mut rng = XorShift(0x9e3779b97f4a7c15);

    for case in 0..20usize {
        let size = [4usize, 8, 12][case % 3];
        let a = {
            let mut m = RealMatrix::zeros(size);
            for i in 0..size {
                for j in 0..=i {
                    let v = rng.next_f64() * 3.0;
                    m.set(i, j, v);
                    m.set(j, i, v);
                }
            }
            m
        };
        let t = match c.record("householder", householder_tridiagonalize(&a)) {
            Some(t) => t,
            None => continue,
        };
        let symmetric = match c.record("tridiag solve", tridiag_eigen(&t)) {
            Some(s) => s,
            None => continue,
        };
        let dense = match c.record("dense solve", complex_eigen(&ComplexMatrix::from_real(&a))) {
            Some(s) => s,
            None => continue,
        };
        let norm = a.frobenius_norm().max(1.0);
        let mut max_delta = 0.0f64;
        for (x, y) in symmetric.values().iter().zip(dense.values()) {
            max_delta = max_delta.max((x - y).norm());
        }
        c.check_le(
            &format!("route agreement case {case} size {size}"),
            max_delta,
            1e-9 * norm,
        );
    }

    for &big_n in &[0.5, 1.0, 1.1, 1.5, 2.0] {
        if let Some(h) = c.record(
            "assembly for trace",
            assembly(1.4, big_n, 8, ExpansionMode::Corrected),
        ) {
            if let Some(s) = c.record("solve for trace", solve(h.matrix())) {
                let trace = h.matrix().trace();
                let sum: Complex64 = s.values().iter().sum();
                c.check_le(
                    &format!("trace identity N={big_n}"),
                    (trace - sum).norm(),
                    1e-8 * trace.norm().max(1.0),
                );
                let product: Complex64 = s.values().iter().product();
                let det = det_lu(h.matrix());
                c.check_le(
                    &format!("determinant identity N={big_n}"),
                    (product - det).norm(),
                    1e-8 * det.norm().max(1.0),
                );
                c.check_le(
                    &format!("solver residual N={big_n}"),
                    s.residual(),
                    1e-9,
                );
            }
        }
    }

    c.finish("eigensolver", started)
}

fn wavefunction_suite() -> SuiteResult {
    let started = Instant::now();
    let mut c = Checker::new();

    for &(big_n, lambda) in &[(1.0, 1.0), (2.0, 2.9)] {
        let h = match c.record(
            "assembly",
            assembly(lambda, big_n, 10, ExpansionMode::Corrected),
        ) {
            Some(h) => h,
            None => continue,
        };
        let t = match c.record(
            "tridiagonalization",
            householder_tridiagonalize(&h.matrix().real_part()),
        ) {
            Some(t) => t,
            None => continue,
        };
        let bare = crate::eigen::TridiagonalSymmetric::new(t.diag().to_vec(), t.offdiag().to_vec());
        let s = match c.record("tridiag solve", tridiag_eigen(&bare)) {
            Some(s) => s,
            None => continue,
        };
        let vectors = s.vectors().unwrap();
        for k in 0..10 {
            let p = match c.record("recursion", recursion_eval(&bare, s.values()[k])) {
                Some(p) => p,
                None => continue,
            };
            let v0 = vectors.get(0, k).re;
            let mut scale = 1.0f64;
            for n in 0..10 {
                scale = scale.max((vectors.get(n, k).re / v0).abs());
            }
            let mut max_err = 0.0f64;
            for n in 0..10 {
                max_err = max_err.max((p.values()[n].re - vectors.get(n, k).re / v0).abs());
            }
            c.check_le(
                &format!("recursion matches eigenvector N={big_n} level {k}"),
                max_err,
                1e-8 * scale,
            );
        }
        for &e in s.values() {
            let (p_m, local) = characteristic_value(&bare, e).unwrap();
            c.check_le(
                &format!("characteristic root at {:.3}", e.re),
                p_m.norm(),
                1e-7 * local,
            );
        }
        for pair in s.values().windows(2) {
            let mid = (pair[0] + pair[1]) * 0.5;
            let (p_m, local) = characteristic_value(&bare, mid).unwrap();
            c.check(
                &format!("characteristic midpoint {:.3}", mid.re),
                p_m.norm() >= 1e-3 * local,
            );
        }
        if let Some(report) = c.record("discrete orthogonality", discrete_orthogonality(&bare)) {
            c.check_le(
                &format!("gram off-diagonal N={big_n}"),
                report.max_offdiag,
                1e-8,
            );
            c.check_le(
                &format!("gram diagonal deviation N={big_n}"),
                report.max_diag_dev,
                1e-8,
            );
        }
    }

    // Jacobi matrix orthogonality at several sizes
    for &m in &[4usize, 8, 12] {
        let diag: Vec<f64> = (0..m).map(|j| 2.0 * j as f64 + 1.5).collect();
        let off: Vec<f64> = (0..m - 1)
            .map(|j| {
                let jf = j as f64 + 1.0;
                (jf * (jf + 0.5)).sqrt()
            })
            .collect();
        let jacobi = crate::eigen::TridiagonalSymmetric::new(diag, off);
        if let Some(report) = c.record("jacobi orthogonality", discrete_orthogonality(&jacobi)) {
            c.check_le(&format!("jacobi gram m={m}"), report.max_offdiag, 1e-8);
            c.check_le(
                &format!("jacobi gram diagonal m={m}"),
                report.max_diag_dev,
                1e-8,
            );
        }
    }

    // figure-level decay checks
    for &(big_n, lambda, size) in &[(2.0, 3.0, 10usize), (0.5, 2.5, 5)] {
        let basis = BasisSpec::new(lambda, size).unwrap();
        let h = match c.record(
            "assembly for decay",
            assembly(lambda, big_n, size, ExpansionMode::Corrected),
        ) {
            Some(h) => h,
            None => continue,
        };
        let f = match c.record("ground coefficients", expansion_coefficients(&h, 0)) {
            Some(f) => f,
            None => continue,
        };
        let grid = default_grid(&basis);
        let samples = match c.record("reconstruction", reconstruct(&f, &basis, &grid)) {
            Some(s) => s,
            None => continue,
        };
        let origin = samples
            .x
            .iter()
            .zip(&samples.psi)
            .find(|(x, _)| **x == 0.0)
            .map(|(_, z)| z.norm())
            .unwrap_or(0.0);
        c.check(
            &format!("origin value N={big_n}"),
            origin == 0.0,
        );
        if let Some(metric) = c.record("decay metric", decay_metric(&samples, 4.0)) {
            c.check_le(&format!("tail decay N={big_n}"), metric, 1e-3);
        }
        // coefficient-space residual
        let s = solve(h.matrix()).unwrap();
        let e = s.values()[0];
        let hf = h.matrix().mul_vec(&f);
        let mut diff = 0.0f64;
        for i in 0..size {
            diff += (hf[i] - e * f[i]).norm_sqr();
        }
        c.check_le(
            &format!("coefficient residual N={big_n}"),
            diff.sqrt(),
            1e-8 * h.matrix().frobenius_norm(),
        );
    }

    // basis normalization through an independent quadrature
    let basis = BasisSpec::new(1.0, 1).unwrap();
    let rule = gauss_laguerre_rule(0.5, 24).unwrap();
    for n in 0..4usize {
        let total = integrate(&rule, |y| {
            let x = y.sqrt();
            let phi = basis_eval(n, &basis, x).unwrap();
            phi * phi * y.exp() / y.sqrt() / (2.0 * y.sqrt())
        });
        c.check_le(
            &format!("basis norm n={n}"),
            (total - 1.0).abs(),
            1e-10,
        );
    }

    c.finish("wavefunction", started)
}

fn reference_suite() -> SuiteResult {
    let started = Instant::now();
    let mut c = Checker::new();
    let dataset = ReferenceDataset::load();

    c.check("dataset digest", dataset.digest() == DATASET_DIGEST);

    let reference = ComplexMatrix::from_real(dataset.hermitian_print());
    let basis = BasisSpec::new(1.0, 5).unwrap();
    if let Some(h) = c.record(
        "corrected assembly",
        assemble(
            &basis,
            &PotentialSpec::new(1.0, ExpansionMode::Corrected).unwrap(),
        ),
    ) {
        if let Some(report) = c.record(
            "corrected comparison",
            compare_matrix(&h, &reference, "suite corrected"),
        ) {
            let corner = report.entry(0, 0).unwrap().abs_delta;
            c.check_le("corrected corner delta", (corner - 0.654).abs(), 1e-12);
            c.check(
                "deltas nonnegative",
                report.entries.iter().all(|e| e.abs_delta >= 0.0),
            );
        }
        if let Some(report) = c.record("self comparison", compare_matrix(&h, h.matrix(), "self")) {
            c.check("self comparison zero", report.max_abs_delta == 0.0);
        }
    }
    if let Some(h) = c.record(
        "paper assembly",
        assemble(
            &basis,
            &PotentialSpec::new(1.0, ExpansionMode::PaperFaithful).unwrap(),
        ),
    ) {
        if let Some(report) = c.record(
            "paper comparison",
            compare_matrix(&h, &reference, "suite paper"),
        ) {
            let corner = report.entry(0, 0).unwrap().abs_delta;
            c.check_le("paper corner delta", (corner - 0.154).abs(), 1e-12);
        }
    }

    if let Some(report) = c.record("energy table", compare_energy_table(ExpansionMode::Corrected))
    {
        c.check("energy table rows", report.entries.len() == 8);
        let a = serde_json::to_string(&report).unwrap();
        let b = serde_json::to_string(&report).unwrap();
        c.check("report serialization deterministic", a == b);
    }

    let sweep_basis = BasisSpec::new(2.5, 5).unwrap();
    let table = sweep_reality(&[0.5, 1.0, 1.5, 2.0], &sweep_basis, ExpansionMode::Corrected);
    for row in &table.rows {
        c.check(
            &format!("sweep bookkeeping N={}", row.big_n),
            row.n_real.unwrap_or(0) + row.n_complex.unwrap_or(0) == 5,
        );
    }
    c.check(
        "integer sweep rows fully real",
        table.rows[1].n_complex == Some(0) && table.rows[3].n_complex == Some(0),
    );
    c.check("csv deterministic", table.to_csv() == table.to_csv());

    c.finish("reference", started)
}

/// Run every suite and return the per-suite results in a fixed order.
pub fn run_all() -> Vec<SuiteResult> {
    vec![
        laguerre_suite(),
        hamiltonian_suite(),
        eigensolver_suite(),
        wavefunction_suite(),
        reference_suite(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_quickly() {
        let started = Instant::now();
        let results = run_all();
        let elapsed = started.elapsed();
        for suite in &results {
            assert!(
                suite.passed(),
                "suite {} failed: {:?}",
                suite.name,
                suite.failures
            );
            assert!(suite.checks > 0);
        }
        assert!(all_passed(&results));
        assert!(
            elapsed.as_secs() < 60,
            "suite took {:?}, budget is 60 s",
            elapsed
        );
    }

    #[test]
    fn determinant_oracle_matches_closed_forms() {
        let a = ComplexMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 0) => Complex64::new(1.0, 0.0),
            (0, 1) => Complex64::new(2.0, 0.0),
            (1, 0) => Complex64::new(3.0, 0.0),
            (1, 1) => Complex64::new(4.0, 0.0),
            _ => unreachable!(),
        });
        let det = det_lu(&a);
        assert!((det - Complex64::new(-2.0, 0.0)).norm() < 1e-14);

        let b = ComplexMatrix::from_fn(2, |i, j| {
            if i == j {
                Complex64::new(0.0, 1.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        assert!((det_lu(&b) - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
    }
}
