//! Acceptance gate: one test per shipping criterion, each printing a
//! single verdict line. Run with
//! `cargo test -p ptspec-cli --test acceptance -- --nocapture`
//! to see every line; a failing criterion prints its detail before
//! panicking.

use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use ptspec_core::eigen::{
    complex_eigen, householder_tridiagonalize, tridiag_eigen, DEFAULT_TOL_REAL,
};
use ptspec_core::hamiltonian::{
    assemble, potential_matrix, potential_via_expansion, BasisSpec, PotentialSpec,
};
use ptspec_core::laguerre::{monomial_expansion, ExpansionMode};
use ptspec_core::wavefunction::{
    decay_metric, default_grid, discrete_orthogonality, expansion_coefficients, reconstruct,
    recursion_eval,
};
use ptspec_core::{classify, solve, ComplexMatrix, RealMatrix, TridiagonalSymmetric};

struct Verdict {
    number: usize,
    label: &'static str,
    failures: Vec<String>,
}

impl Verdict {
    fn new(number: usize, label: &'static str) -> Self {
        Verdict {
            number,
            label,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: String) {
        if !ok {
            self.failures.push(detail);
        }
    }

    fn le(&mut self, what: &str, value: f64, bound: f64) {
        self.check(
            value <= bound,
            format!("{what}: {value:.3e} exceeds {bound:.3e}"),
        );
    }

    fn within(&mut self, what: &str, elapsed: Duration, budget: Duration) {
        self.check(
            elapsed <= budget,
            format!("{what}: {elapsed:?} exceeds {budget:?}"),
        );
    }

    fn conclude(self, summary: String) {
        if self.failures.is_empty() {
            println!("[criterion {:>2}] PASS  {} ({summary})", self.number, self.label);
        } else {
            println!("[criterion {:>2}] FAIL  {}", self.number, self.label);
            for f in &self.failures {
                println!("              - {f}");
            }
            panic!("criterion {} failed", self.number);
        }
    }
}

struct SplitMix(u64);

impl SplitMix {
    fn next_unit(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    }
}

fn sorted_by_re(values: &[Complex64]) -> Vec<Complex64> {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    v
}

fn bare_tridiagonal(h: &ComplexMatrix) -> TridiagonalSymmetric {
    let t = householder_tridiagonalize(&h.real_part()).unwrap();
    TridiagonalSymmetric::new(t.diag().to_vec(), t.offdiag().to_vec())
}

#[test]
fn criterion_01_harmonic_point_is_exactly_diagonal() {
    let mut v = Verdict::new(1, "harmonic point assembles diagonal with entries 4n + 3");
    let started = Instant::now();
    let basis = BasisSpec::new(std::f64::consts::SQRT_2, 16).unwrap();
    let pot = PotentialSpec::new(1.0, ExpansionMode::Corrected).unwrap();
    let h = assemble(&basis, &pot).unwrap();
    let elapsed = started.elapsed();

    let scale = h.matrix().max_abs();
    let mut max_off = 0.0f64;
    let mut max_diag = 0.0f64;
    for i in 0..16 {
        for j in 0..16 {
            if i == j {
                max_diag = max_diag.max((h.get(i, i) - Complex64::from((4 * i + 3) as f64)).norm());
            } else {
                max_off = max_off.max(h.get(i, j).norm());
            }
        }
    }
    v.le("off-diagonal magnitude", max_off, 1e-8 * scale);
    v.le("diagonal deviation from 4n + 3", max_diag, 1e-8);
    v.within("assembly time", elapsed, Duration::from_secs(1));
    v.conclude(format!(
        "max offdiag {max_off:.1e}, max diag delta {max_diag:.1e}, {elapsed:?}"
    ));
}

#[test]
fn criterion_02_oscillator_spectrum_converges_at_unit_lambda() {
    let mut v = Verdict::new(2, "three lowest eigenvalues reach 3, 7, 11 at lambda 1");
    let started = Instant::now();
    let basis = BasisSpec::new(1.0, 32).unwrap();
    let pot = PotentialSpec::new(1.0, ExpansionMode::Corrected).unwrap();
    let h = assemble(&basis, &pot).unwrap();
    let spectrum = solve(h.matrix()).unwrap();
    let elapsed = started.elapsed();

    let values = sorted_by_re(spectrum.values());
    let mut worst = 0.0f64;
    for (k, expect) in [3.0, 7.0, 11.0].into_iter().enumerate() {
        worst = worst.max((values[k] - Complex64::from(expect)).norm());
    }
    v.le("eigenvalue deviation", worst, 1e-6);
    v.within("assemble + solve time", elapsed, Duration::from_secs(1));
    v.conclude(format!("worst deviation {worst:.1e}, {elapsed:?}"));
}

#[test]
fn criterion_03_integer_exponents_stay_real() {
    let mut v = Verdict::new(3, "integer exponents give real assemblies and fully real spectra");
    let mut worst_imag_ratio = 0.0f64;
    for big_n in 1..=4 {
        for &lambda in &[1.0, 2.9] {
            let basis = BasisSpec::new(lambda, 16).unwrap();
            let pot = PotentialSpec::new(big_n as f64, ExpansionMode::Corrected).unwrap();
            let h = assemble(&basis, &pot).unwrap();
            let ratio = h.matrix().max_abs_imag() / h.matrix().max_abs();
            worst_imag_ratio = worst_imag_ratio.max(ratio);
            v.le(
                &format!("imaginary part ratio at N = {big_n}, lambda = {lambda}"),
                ratio,
                1e-12,
            );
            let spectrum = solve(h.matrix()).unwrap();
            let summary = classify(&spectrum, DEFAULT_TOL_REAL);
            v.check(
                summary.n_complex == 0,
                format!(
                    "N = {big_n}, lambda = {lambda}: {} eigenvalues classified complex",
                    summary.n_complex
                ),
            );
        }
    }
    v.conclude(format!("worst imaginary ratio {worst_imag_ratio:.1e} over 8 assemblies"));
}

#[test]
fn criterion_04_expansion_route_matches_quadrature_route() {
    let mut v = Verdict::new(4, "expansion and quadrature potential routes agree entrywise");
    let mut worst = 0.0f64;
    for big_n in 1..=4 {
        for &lambda in &[1.0, 2.9] {
            let basis = BasisSpec::new(lambda, 12).unwrap();
            let pot = PotentialSpec::new(big_n as f64, ExpansionMode::Corrected).unwrap();
            let quad = potential_matrix(&basis, &pot).unwrap();
            let coeffs = monomial_expansion(big_n as f64, BasisSpec::NU, ExpansionMode::Corrected)
                .unwrap();
            let exp = potential_via_expansion(&basis, &pot, &coeffs).unwrap();
            let scale = quad.matrix().max_abs().max(1.0);
            let mut max_delta = 0.0f64;
            for i in 0..12 {
                for j in 0..12 {
                    max_delta = max_delta.max((quad.get(i, j) - exp.get(i, j)).norm());
                }
            }
            worst = worst.max(max_delta / scale);
            v.le(
                &format!("route difference at N = {big_n}, lambda = {lambda}"),
                max_delta,
                1e-10 * scale,
            );
        }
    }
    v.conclude(format!("worst scaled difference {worst:.1e} over 8 assemblies"));
}

#[test]
fn criterion_05_eigensolver_routes_cross_validate() {
    let mut v = Verdict::new(5, "symmetric and dense eigensolver routes agree; traces match");
    let mut rng = SplitMix(0x5eed5eed5eed5eed);
    let mut worst_route = 0.0f64;
    for case in 0..20usize {
        let n = [4usize, 8, 12][case % 3];
        let mut vals = vec![vec![0.0f64; n]; n];
        for i in 0..n {
            for j in i..n {
                let x = 3.0 * rng.next_unit();
                vals[i][j] = x;
                vals[j][i] = x;
            }
        }
        let a = RealMatrix::from_fn(n, |i, j| vals[i][j]);
        let t = householder_tridiagonalize(&a).unwrap();
        let sym = tridiag_eigen(&t).unwrap();
        let dense = complex_eigen(&ComplexMatrix::from_real(&a)).unwrap();
        let sv = sorted_by_re(sym.values());
        let dv = sorted_by_re(dense.values());
        let mut max_delta = 0.0f64;
        for k in 0..n {
            max_delta = max_delta.max((sv[k] - dv[k]).norm());
        }
        let bound = 1e-9 * a.frobenius_norm();
        worst_route = worst_route.max(max_delta / a.frobenius_norm());
        v.le(&format!("route disagreement in case {case}"), max_delta, bound);
    }

    let mut worst_trace = 0.0f64;
    for &(big_n, lambda, size) in &[
        (0.5f64, 1.4f64, 8usize),
        (1.1, 1.4, 8),
        (1.5, 1.4, 8),
        (2.5, 1.4, 8),
        (1.1, 1.0, 5),
    ] {
        let basis = BasisSpec::new(lambda, size).unwrap();
        let pot = PotentialSpec::new(big_n, ExpansionMode::Corrected).unwrap();
        let h = assemble(&basis, &pot).unwrap();
        let spectrum = solve(h.matrix()).unwrap();
        let sum: Complex64 = spectrum.values().iter().sum();
        let trace = h.matrix().trace();
        let rel = (sum - trace).norm() / trace.norm();
        worst_trace = worst_trace.max(rel);
        v.le(
            &format!("trace mismatch at N = {big_n}, lambda = {lambda}"),
            rel,
            1e-8,
        );
    }
    v.conclude(format!(
        "worst route gap {worst_route:.1e} of scale, worst trace gap {worst_trace:.1e}"
    ));
}

#[test]
fn criterion_06_recursion_reproduces_eigenvector_ratios() {
    let mut v = Verdict::new(6, "recursion values reproduce tridiagonal eigenvector ratios");
    let mut worst = 0.0f64;
    for &(big_n, lambda) in &[(1.0f64, 1.0f64), (2.0, 2.9)] {
        let basis = BasisSpec::new(lambda, 10).unwrap();
        let pot = PotentialSpec::new(big_n, ExpansionMode::Corrected).unwrap();
        let h = assemble(&basis, &pot).unwrap();
        let t = bare_tridiagonal(h.matrix());
        let spectrum = tridiag_eigen(&t).unwrap();
        let vectors = spectrum.vectors().expect("tridiagonal route returns vectors");
        for (k, &e) in spectrum.values().iter().enumerate() {
            let p = recursion_eval(&t, e).unwrap();
            let lead = vectors.get(0, k);
            let mut scale = 1.0f64;
            let mut max_delta = 0.0f64;
            for n in 0..t.size() {
                let ratio = vectors.get(n, k) / lead;
                scale = scale.max(ratio.norm());
                max_delta = max_delta.max((p.values()[n] - ratio).norm());
            }
            worst = worst.max(max_delta / scale);
            v.le(
                &format!("ratio mismatch at N = {big_n}, eigenpair {k}"),
                max_delta,
                1e-8 * scale,
            );
        }
    }
    v.conclude(format!("worst scaled mismatch {worst:.1e} over all eigenpairs"));
}

#[test]
fn criterion_07_discrete_orthogonality_holds() {
    let mut v = Verdict::new(7, "discrete orthogonality holds for recursion polynomial families");
    let mut worst = 0.0f64;
    for &(big_n, lambda) in &[(1.0f64, 1.0f64), (2.0, 2.9)] {
        let basis = BasisSpec::new(lambda, 12).unwrap();
        let pot = PotentialSpec::new(big_n, ExpansionMode::Corrected).unwrap();
        let h = assemble(&basis, &pot).unwrap();
        let t = bare_tridiagonal(h.matrix());
        let report = discrete_orthogonality(&t).unwrap();
        worst = worst.max(report.max_offdiag).max(report.max_diag_dev);
        v.le(
            &format!("gram off-diagonal at N = {big_n}"),
            report.max_offdiag,
            1e-8,
        );
        v.le(
            &format!("gram diagonal deviation at N = {big_n}"),
            report.max_diag_dev,
            1e-8,
        );
    }
    for &size in &[6usize, 12] {
        let diag: Vec<f64> = (0..size).map(|j| 2.0 * j as f64 + 1.5).collect();
        let off: Vec<f64> = (0..size - 1)
            .map(|j| ((j as f64 + 1.0) * (j as f64 + 1.5)).sqrt())
            .collect();
        let t = TridiagonalSymmetric::new(diag, off);
        let report = discrete_orthogonality(&t).unwrap();
        worst = worst.max(report.max_offdiag).max(report.max_diag_dev);
        v.le(
            &format!("gram off-diagonal for the order {size} recurrence"),
            report.max_offdiag,
            1e-8,
        );
        v.le(
            &format!("gram diagonal deviation for the order {size} recurrence"),
            report.max_diag_dev,
            1e-8,
        );
    }
    v.conclude(format!("worst gram deviation {worst:.1e} over 4 matrices"));
}

#[test]
fn criterion_08_comparison_document_is_deterministic_and_complete() {
    let mut v = Verdict::new(
        8,
        "comparison document is deterministic and carries the published deltas",
    );
    let exe = env!("CARGO_BIN_EXE_ptspec");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("compare.json");

    let started = Instant::now();
    let mut bytes = Vec::new();
    for _ in 0..2 {
        let out = Command::new(exe)
            .arg("compare")
            .env("PTSPEC_OUTPUT_DIR", dir.path())
            .output()
            .unwrap();
        v.check(
            out.status.success(),
            format!("compare run failed: {}", String::from_utf8_lossy(&out.stderr)),
        );
        bytes.push(std::fs::read(&path).unwrap());
    }
    let elapsed = started.elapsed();
    v.check(bytes[0] == bytes[1], "reruns produced different bytes".into());
    v.within("two generation runs", elapsed, Duration::from_secs(5));

    let doc: serde_json::Value = serde_json::from_slice(&bytes[0]).unwrap();
    for key in [
        "dataset_digest",
        "real_print_corrected",
        "real_print_paper_faithful",
        "complex_print_corrected",
        "energy_table_corrected",
        "energy_table_paper_faithful",
    ] {
        v.check(!doc[key].is_null(), format!("missing section {key}"));
    }

    let corner = |section: &str| doc[section]["entries"][0]["abs_delta"].as_f64().unwrap();
    let corrected_corner = corner("real_print_corrected");
    let paper_corner = corner("real_print_paper_faithful");
    v.le(
        "corrected corner delta drift from 0.654",
        (corrected_corner - 0.654).abs(),
        1e-9,
    );
    v.le(
        "paper-faithful corner delta drift from 0.154",
        (paper_corner - 0.154).abs(),
        1e-9,
    );
    v.check(
        doc["complex_print_corrected"]["entries"].as_array().map(|a| a.len()) == Some(25),
        "complex print report does not cover all 25 entries".into(),
    );

    let printed_ours = [1.4868, 6.6219, 16.6386, 32.1948];
    let printed_reference = [1.4771, 6.0333, 11.8023, 18.4590];
    for table in ["energy_table_corrected", "energy_table_paper_faithful"] {
        let entries = doc[table]["entries"].as_array().unwrap();
        v.check(
            entries.len() == 8,
            format!("{table} has {} entries, expected 8", entries.len()),
        );
        for level in 0..4 {
            let ours = entries[2 * level]["reference"][0].as_f64().unwrap();
            let other = entries[2 * level + 1]["reference"][0].as_f64().unwrap();
            v.check(
                ours == printed_ours[level] && other == printed_reference[level],
                format!("{table} level {level} printed columns are {ours}, {other}"),
            );
        }
    }
    v.conclude(format!(
        "byte-identical reruns, corners {corrected_corner:.3} and {paper_corner:.3}, {elapsed:?}"
    ));
}

#[test]
fn criterion_09_ground_states_vanish_at_origin_and_decay() {
    let mut v = Verdict::new(9, "ground-state samples vanish at the origin and decay by |x| = 4");
    let mut summary = Vec::new();
    for &(big_n, lambda, size) in &[(2.0f64, 3.0f64, 10usize), (0.5, 2.5, 5)] {
        let basis = BasisSpec::new(lambda, size).unwrap();
        let pot = PotentialSpec::new(big_n, ExpansionMode::Corrected).unwrap();
        let h = assemble(&basis, &pot).unwrap();
        let coeffs = expansion_coefficients(&h, 0).unwrap();
        let grid = default_grid(&basis);
        let samples = reconstruct(&coeffs, &basis, &grid).unwrap();

        let origin = grid.iter().position(|&x| x == 0.0).expect("grid contains the origin");
        v.check(
            samples.psi[origin].norm() == 0.0,
            format!("N = {big_n}: |psi(0)| = {:.3e}", samples.psi[origin].norm()),
        );
        let metric = decay_metric(&samples, 4.0).unwrap();
        v.le(&format!("tail metric at N = {big_n}"), metric, 1e-3);
        summary.push(format!("N = {big_n} tail {metric:.1e}"));
    }
    v.conclude(summary.join(", "));
}

#[test]
fn criterion_10_selftest_battery_passes_in_budget() {
    let mut v = Verdict::new(10, "self-test battery passes inside its time budget");
    let started = Instant::now();
    let results = ptspec_core::run_all();
    let elapsed = started.elapsed();
    let checks: usize = results.iter().map(|r| r.checks).sum();
    for suite in &results {
        v.check(
            suite.passed(),
            format!("suite {} failed: {:?}", suite.name, suite.failures),
        );
    }
    v.within("battery time", elapsed, Duration::from_secs(60));
    v.conclude(format!("{checks} checks across {} suites, {elapsed:?}", results.len()));
}
