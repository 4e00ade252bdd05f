//! Dense complex eigensolver: unitary Hessenberg reduction followed by
//! single-shift QR iteration to Schur form, then eigenvectors by
//! back-substitution on the triangular factor.
//!
//! The whole pipeline accumulates one unitary Z with A = Z T Zᴴ, so
//! eigenvectors of T map straight back to eigenvectors of A. Shifts are
//! Wilkinson shifts from the trailing 2x2 block, with an exceptional shift
//! thrown in when a block refuses to deflate.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

use super::Spectrum;

/// Largest matrix the dense QR path accepts.
pub const MAX_SIZE: usize = 128;

/// Per-matrix cap on QR sweeps, scaled by size.
pub const MAX_SWEEPS_PER_ROW: usize = 50;

/// Iterations without deflation before an exceptional shift is injected.
const EXCEPTIONAL_EVERY: usize = 10;

/// Eigenvalues and eigenvectors of a general complex matrix.
///
/// Eigenvalues are sorted by real part, then imaginary part; eigenvector
/// columns follow the same order and have unit 2-norm.
pub fn complex_eigen(a: &ComplexMatrix) -> Result<Spectrum> {
    let n = a.size();
    if n == 0 {
        return Err(Error::Parameter("empty matrix".into()));
    }
    if n > MAX_SIZE {
        return Err(Error::Contract(format!(
            "matrix size {n} exceeds the dense QR limit {MAX_SIZE}"
        )));
    }

    let mut t = a.clone();
    let mut z = ComplexMatrix::identity(n);
    hessenberg(&mut t, &mut z);
    schur(&mut t, &mut z, MAX_SWEEPS_PER_ROW * n)?;

    let values: Vec<Complex64> = (0..n).map(|i| t.get(i, i)).collect();
    let vectors = eigenvectors_from_schur(&t, &z);

    // Sort by (Re, Im), keeping vector columns aligned.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&p, &q| {
        values[p]
            .re
            .total_cmp(&values[q].re)
            .then(values[p].im.total_cmp(&values[q].im))
    });
    let sorted_values: Vec<Complex64> = order.iter().map(|&k| values[k]).collect();
    let sorted_vectors = ComplexMatrix::from_fn(n, |i, j| vectors.get(i, order[j]));

    Ok(Spectrum::from_complex_parts(sorted_values, sorted_vectors, a))
}

/// Reduce to upper Hessenberg form by Householder reflectors, accumulating
/// the transform into `z` (right-multiplication).
fn hessenberg(h: &mut ComplexMatrix, z: &mut ComplexMatrix) {
    let n = h.size();
    if n < 3 {
        return;
    }
    let mut u = vec![Complex64::new(0.0, 0.0); n];

    for k in 0..n - 2 {
        // Column k below the subdiagonal.
        let mut norm_sq = 0.0f64;
        for i in (k + 1)..n {
            norm_sq += h.get(i, k).norm_sqr();
        }
        let norm = norm_sq.sqrt();
        if norm <= f64::MIN_POSITIVE {
            continue;
        }
        let x0 = h.get(k + 1, k);
        // alpha = -sign(x0) * norm keeps the reflector well conditioned.
        let alpha = if x0.norm() > 0.0 {
            -(x0 / x0.norm()) * norm
        } else {
            Complex64::new(-norm, 0.0)
        };

        let mut u_norm_sq = 0.0f64;
        for i in (k + 1)..n {
            let ui = if i == k + 1 {
                h.get(i, k) - alpha
            } else {
                h.get(i, k)
            };
            u[i] = ui;
            u_norm_sq += ui.norm_sqr();
        }
        if u_norm_sq <= f64::MIN_POSITIVE {
            continue;
        }
        let inv = 1.0 / u_norm_sq.sqrt();
        for u_i in u.iter_mut().take(n).skip(k + 1) {
            *u_i *= inv;
        }

        // Left: rows k+1..n of columns k..n get (I - 2uuᴴ).
        for j in k..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in (k + 1)..n {
                dot += u[i].conj() * h.get(i, j);
            }
            let dot = 2.0 * dot;
            for i in (k + 1)..n {
                let val = h.get(i, j) - dot * u[i];
                h.set(i, j, val);
            }
        }
        // Right: columns k+1..n of all rows.
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for j in (k + 1)..n {
                dot += h.get(i, j) * u[j];
            }
            let dot = 2.0 * dot;
            for j in (k + 1)..n {
                let val = h.get(i, j) - dot * u[j].conj();
                h.set(i, j, val);
            }
        }
        // Accumulate into Z (right side only).
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for j in (k + 1)..n {
                dot += z.get(i, j) * u[j];
            }
            let dot = 2.0 * dot;
            for j in (k + 1)..n {
                let val = z.get(i, j) - dot * u[j].conj();
                z.set(i, j, val);
            }
        }

        // Force the exact zeros the reflector was built to produce.
        h.set(k + 1, k, alpha);
        for i in (k + 2)..n {
            h.set(i, k, Complex64::new(0.0, 0.0));
        }
    }
}

/// Complex Givens rotation: returns (c, s) with c real so that
/// [c s; -s̄ c]ᴴ... applied as rows: row_k ← c·row_k + s·row_{k+1},
/// row_{k+1} ← -s̄·row_k + c·row_{k+1} maps (x, y) to (r, 0).
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let xn = x.norm();
    let yn = y.norm();
    if yn == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if xn == 0.0 {
        return (0.0, y.conj() / yn);
    }
    let scale = xn.max(yn);
    let r = scale * ((xn / scale).powi(2) + (yn / scale).powi(2)).sqrt();
    let c = xn / r;
    let s = (x / xn) * (y.conj() / r);
    (c, s)
}

/// Wilkinson shift: eigenvalue of the trailing 2x2 block closest to the
/// bottom-right entry.
fn wilkinson_shift(h: &ComplexMatrix, m: usize) -> Complex64 {
    let a = h.get(m - 1, m - 1);
    let b = h.get(m - 1, m);
    let c = h.get(m, m - 1);
    let d = h.get(m, m);
    let half = (a + d) * 0.5;
    let quarter = (a - d) * 0.5;
    let disc = (quarter * quarter + b * c).sqrt();
    let lam1 = half + disc;
    let lam2 = half - disc;
    if (lam1 - d).norm() <= (lam2 - d).norm() {
        lam1
    } else {
        lam2
    }
}

/// Single-shift QR on a Hessenberg matrix, in place, accumulating Z.
/// On success `h` is upper triangular (Schur form).
fn schur(h: &mut ComplexMatrix, z: &mut ComplexMatrix, max_sweeps: usize) -> Result<()> {
    let n = h.size();
    if n == 1 {
        return Ok(());
    }
    let eps = f64::EPSILON;
    let smlnum = f64::MIN_POSITIVE / eps;
    let scale = h.max_abs().max(f64::MIN_POSITIVE);

    let mut m = n - 1;
    let mut sweeps = 0usize;
    let mut since_deflation = 0usize;

    loop {
        // Kill negligible subdiagonals in the active window.
        for i in 1..=m {
            let tst = h.get(i - 1, i - 1).norm() + h.get(i, i).norm();
            let tst = if tst == 0.0 { scale } else { tst };
            if h.get(i, i - 1).norm() <= (eps * tst).max(smlnum) {
                h.set(i, i - 1, Complex64::new(0.0, 0.0));
            }
        }

        // Deflate converged trailing eigenvalues.
        while m > 0 && h.get(m, m - 1).norm() == 0.0 {
            m -= 1;
            since_deflation = 0;
        }
        if m == 0 {
            return Ok(());
        }

        // Start of the active block.
        let mut l = m;
        while l > 0 && h.get(l, l - 1).norm() != 0.0 {
            l -= 1;
        }

        sweeps += 1;
        since_deflation += 1;
        if sweeps > max_sweeps {
            let partial: Vec<Complex64> = ((m + 1)..n).map(|i| h.get(i, i)).collect();
            return Err(Error::NonConvergence {
                sweeps,
                converged: n - 1 - m,
                size: n,
                partial,
            });
        }

        let mu = if since_deflation % EXCEPTIONAL_EVERY == 0 {
            h.get(m, m) + Complex64::new(0.75 * h.get(m, m - 1).norm(), 0.0)
        } else {
            wilkinson_shift(h, m)
        };

        // Implicit single-shift sweep l..m, chasing the bulge with Givens
        // rotations.
        let mut x = h.get(l, l) - mu;
        let mut y = h.get(l + 1, l);
        for k in l..m {
            let (c, s) = givens(x, y);
            let sc = s.conj();

            // Left rotation on rows k, k+1.
            let col_start = if k > l { k - 1 } else { l };
            for j in col_start..n {
                let hk = h.get(k, j);
                let hk1 = h.get(k + 1, j);
                h.set(k, j, c * hk + s * hk1);
                h.set(k + 1, j, -sc * hk + c * hk1);
            }
            // Right rotation on columns k, k+1.
            let row_end = (k + 2).min(m);
            for i in 0..=row_end {
                let hik = h.get(i, k);
                let hik1 = h.get(i, k + 1);
                h.set(i, k, c * hik + sc * hik1);
                h.set(i, k + 1, -s * hik + c * hik1);
            }
            // Accumulate into Z.
            for i in 0..n {
                let zik = z.get(i, k);
                let zik1 = z.get(i, k + 1);
                z.set(i, k, c * zik + sc * zik1);
                z.set(i, k + 1, -s * zik + c * zik1);
            }

            if k + 1 < m {
                x = h.get(k + 1, k);
                y = h.get(k + 2, k);
            }
        }
    }
}

/// Back-substitute eigenvectors of the triangular Schur factor and map them
/// through Z. Near-zero denominators (clustered eigenvalues) are perturbed
/// by one ulp of the matrix scale, the standard inverse-iteration dodge.
fn eigenvectors_from_schur(t: &ComplexMatrix, z: &ComplexMatrix) -> ComplexMatrix {
    let n = t.size();
    let scale = t.max_abs().max(f64::MIN_POSITIVE);
    let smin = f64::EPSILON * scale;

    let mut vectors = ComplexMatrix::zeros(n);
    let mut x = vec![Complex64::new(0.0, 0.0); n];

    for k in 0..n {
        let lam = t.get(k, k);
        for x_i in x.iter_mut() {
            *x_i = Complex64::new(0.0, 0.0);
        }
        x[k] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut sum = Complex64::new(0.0, 0.0);
            for j in (i + 1)..=k {
                sum += t.get(i, j) * x[j];
            }
            let mut den = t.get(i, i) - lam;
            if den.norm() < smin {
                den = Complex64::new(smin, 0.0);
            }
            x[i] = -sum / den;
        }

        // v = Z x, then normalize.
        let mut norm_sq = 0.0f64;
        for i in 0..n {
            let mut vi = Complex64::new(0.0, 0.0);
            for j in 0..=k {
                vi += z.get(i, j) * x[j];
            }
            vectors.set(i, k, vi);
            norm_sq += vi.norm_sqr();
        }
        let inv = 1.0 / norm_sq.sqrt();
        for i in 0..n {
            let val = vectors.get(i, k) * inv;
            vectors.set(i, k, val);
        }
    }
    vectors
}
