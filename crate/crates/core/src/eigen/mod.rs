//! Eigenvalue machinery: Householder reduction, QL iteration for the
//! symmetric tridiagonal case, and a dense complex QR solver.
//!
//! `solve` dispatches between the two routes. A matrix whose imaginary part
//! is numerical dust (relative to its largest entry) and whose real part is
//! symmetric goes down the orthogonal route; everything else takes the
//! unitary Schur route. Both report the same diagnostics through
//! [`Spectrum`].

mod complex;
mod householder;
mod tridiag;

pub use complex::{complex_eigen, MAX_SIZE};
pub use householder::{householder_tridiagonalize, SYMMETRY_TOL};
pub use tridiag::tridiag_eigen;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, RealMatrix};

/// Default threshold for calling an eigenvalue real: |Im E| ≤ tol·(1 + |E|).
pub const DEFAULT_TOL_REAL: f64 = 1e-8;

/// Relative imaginary-part threshold for taking the real-symmetric route.
pub const REALNESS_TOL: f64 = 1e-12;

/// Symmetric tridiagonal matrix, optionally carrying the orthogonal
/// transform that produced it from a dense matrix.
///
/// `offdiag[i]` couples rows `i` and `i+1`. When `transform` is `Some(q)`,
/// the original dense matrix is `q * T * qᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSymmetric {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
    transform: Option<RealMatrix>,
}

impl TridiagonalSymmetric {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Self {
        assert_eq!(
            offdiag.len() + 1,
            diag.len(),
            "offdiag must be one shorter than diag"
        );
        Self {
            diag,
            offdiag,
            transform: None,
        }
    }

    pub fn with_transform(diag: Vec<f64>, offdiag: Vec<f64>, q: RealMatrix) -> Self {
        assert_eq!(offdiag.len() + 1, diag.len());
        assert_eq!(q.size(), diag.len());
        Self {
            diag,
            offdiag,
            transform: Some(q),
        }
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    pub fn transform(&self) -> Option<&RealMatrix> {
        self.transform.as_ref()
    }

    /// Matrix-vector product T x.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        assert_eq!(x.len(), n);
        let mut out = vec![0.0f64; n];
        for i in 0..n {
            let mut acc = self.diag[i] * x[i];
            if i > 0 {
                acc += self.offdiag[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                acc += self.offdiag[i] * x[i + 1];
            }
            out[i] = acc;
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut acc: f64 = self.diag.iter().map(|d| d * d).sum();
        acc += 2.0 * self.offdiag.iter().map(|e| e * e).sum::<f64>();
        acc.sqrt()
    }
}

/// Per-eigenvalue reality tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumClass {
    Real,
    Complex,
}

/// Counts from classifying a spectrum at some tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub n_real: usize,
    pub n_complex: usize,
}

/// Result of an eigensolve: sorted eigenvalues, matching eigenvector
/// columns, a worst-case relative residual, and per-eigenvalue reality tags.
///
/// Eigenvalues are ordered by real part, ties broken by imaginary part.
/// Eigenvectors have unit 2-norm. The residual is
/// max_k ||A v_k − E_k v_k||₂ / ||A||_F.
#[derive(Debug, Clone)]
pub struct Spectrum {
    values: Vec<Complex64>,
    vectors: Option<ComplexMatrix>,
    residual: f64,
    tol_real: f64,
    classes: Vec<SpectrumClass>,
}

fn tag(value: Complex64, tol_real: f64) -> SpectrumClass {
    if value.im.abs() <= tol_real * (1.0 + value.norm()) {
        SpectrumClass::Real
    } else {
        SpectrumClass::Complex
    }
}

impl Spectrum {
    /// Assemble from the real-symmetric route. Residual is computed against
    /// the tridiagonal operator in its own coordinates; `vectors` are
    /// already mapped back to the original matrix when a transform was
    /// present.
    pub(crate) fn from_real_parts(
        values: Vec<Complex64>,
        vectors: RealMatrix,
        residual: f64,
    ) -> Self {
        let classes = values.iter().map(|&v| tag(v, DEFAULT_TOL_REAL)).collect();
        Self {
            values,
            vectors: Some(ComplexMatrix::from_real(&vectors)),
            residual,
            tol_real: DEFAULT_TOL_REAL,
            classes,
        }
    }

    /// Assemble from the complex route, computing the residual against `a`.
    pub(crate) fn from_complex_parts(
        values: Vec<Complex64>,
        vectors: ComplexMatrix,
        a: &ComplexMatrix,
    ) -> Self {
        let n = a.size();
        let fro = a.frobenius_norm().max(f64::MIN_POSITIVE);
        let mut worst = 0.0f64;
        for k in 0..n {
            let col: Vec<Complex64> = (0..n).map(|i| vectors.get(i, k)).collect();
            let av = a.mul_vec(&col);
            let mut diff = 0.0f64;
            for i in 0..n {
                diff += (av[i] - values[k] * col[i]).norm_sqr();
            }
            worst = worst.max(diff.sqrt());
        }
        let residual = worst / fro;
        let classes = values.iter().map(|&v| tag(v, DEFAULT_TOL_REAL)).collect();
        Self {
            values,
            vectors: Some(vectors),
            residual,
            tol_real: DEFAULT_TOL_REAL,
            classes,
        }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Lowest eigenvalue in the (Re, Im) order.
    pub fn ground(&self) -> Complex64 {
        self.values[0]
    }

    pub fn vectors(&self) -> Option<&ComplexMatrix> {
        self.vectors.as_ref()
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn tol_real(&self) -> f64 {
        self.tol_real
    }

    pub fn classes(&self) -> &[SpectrumClass] {
        &self.classes
    }

    /// Re-tag every eigenvalue with a different reality tolerance.
    pub fn with_tol_real(mut self, tol_real: f64) -> Self {
        self.tol_real = tol_real;
        self.classes = self.values.iter().map(|&v| tag(v, tol_real)).collect();
        self
    }

    /// Counts under the stored tolerance.
    pub fn summary(&self) -> ClassSummary {
        let n_real = self
            .classes
            .iter()
            .filter(|c| **c == SpectrumClass::Real)
            .count();
        ClassSummary {
            n_real,
            n_complex: self.values.len() - n_real,
        }
    }

    /// Serializable snapshot.
    pub fn document(&self) -> SpectrumDocument {
        let summary = self.summary();
        SpectrumDocument {
            values: self.values.iter().map(|v| [v.re, v.im]).collect(),
            residual: self.residual,
            n_real: summary.n_real,
            n_complex: summary.n_complex,
            tol_real: self.tol_real,
        }
    }
}

/// Classify a spectrum's eigenvalues at an explicit tolerance.
pub fn classify(spectrum: &Spectrum, tol_real: f64) -> ClassSummary {
    let n_real = spectrum
        .values()
        .iter()
        .filter(|v| tag(**v, tol_real) == SpectrumClass::Real)
        .count();
    ClassSummary {
        n_real,
        n_complex: spectrum.values().len() - n_real,
    }
}

/// On-disk form of a [`Spectrum`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumDocument {
    pub values: Vec<[f64; 2]>,
    pub residual: f64,
    pub n_real: usize,
    pub n_complex: usize,
    pub tol_real: f64,
}

/// Diagonalize a general complex matrix, picking the cheapest sound route.
///
/// Real symmetric inputs (imaginary parts at most `REALNESS_TOL` of the
/// largest entry, symmetric to the Householder tolerance) go through the
/// orthogonal reduction; everything else through the unitary Schur path.
pub fn solve(a: &ComplexMatrix) -> Result<Spectrum> {
    let n = a.size();
    if n == 0 {
        return Err(Error::Parameter("empty matrix".into()));
    }
    if a.is_effectively_real(REALNESS_TOL) {
        let r = a.real_part();
        if r.max_asymmetry() <= SYMMETRY_TOL * r.max_abs().max(f64::MIN_POSITIVE) {
            let t = householder_tridiagonalize(&r)?;
            return tridiag_eigen(&t);
        }
    }
    complex_eigen(a)
}
