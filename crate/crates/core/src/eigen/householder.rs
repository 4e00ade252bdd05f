//! Householder reduction of a real symmetric matrix to tridiagonal form,
//! with accumulation of the orthogonal transform.
//!
//! Port of the classic Algol/EISPACK `tred2` procedure (the same lineage as
//! the Handbook for Automatic Computation and the JAMA translation).

use crate::error::{Error, Result};
use crate::matrix::RealMatrix;

use super::TridiagonalSymmetric;

/// Relative asymmetry allowed in the input, measured against max |entry|.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Reduce a symmetric matrix to tridiagonal form T = QᵀAQ.
///
/// Returns the diagonal, the off-diagonal (entry `i` couples rows `i` and
/// `i+1`; signs follow the reflector convention, magnitudes are those of an
/// orthogonal similarity) and the accumulated transform Q with A = Q T Qᵀ.
/// Inputs of size 1 or 2 are already tridiagonal and come back unchanged
/// with Q = I.
pub fn householder_tridiagonalize(a: &RealMatrix) -> Result<TridiagonalSymmetric> {
    let n = a.size();
    if n == 0 {
        return Err(Error::Parameter("empty matrix".into()));
    }
    let scale = a.max_abs();
    if a.max_asymmetry() > SYMMETRY_TOL * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Contract(format!(
            "input is not symmetric: max asymmetry {:.3e} exceeds {:.1e} of scale {:.3e}",
            a.max_asymmetry(),
            SYMMETRY_TOL,
            scale
        )));
    }

    if n <= 2 {
        let diag: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
        let offdiag: Vec<f64> = (0..n.saturating_sub(1)).map(|i| a.get(i, i + 1)).collect();
        return Ok(TridiagonalSymmetric::with_transform(
            diag,
            offdiag,
            RealMatrix::identity(n),
        ));
    }

    let mut v = a.clone();
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];
    tred2(&mut v, &mut d, &mut e);

    // tred2's e[i] couples (i-1, i); shift to offdiag[i] coupling (i, i+1).
    let offdiag: Vec<f64> = (1..n).map(|i| e[i]).collect();
    Ok(TridiagonalSymmetric::with_transform(d, offdiag, v))
}

fn tred2(v: &mut RealMatrix, d: &mut [f64], e: &mut [f64]) {
    let n = v.size();
    for j in 0..n {
        d[j] = v.get(n - 1, j);
    }

    for i in (1..n).rev() {
        // Scale to avoid under/overflow.
        let mut scale = 0.0f64;
        let mut h = 0.0f64;
        for d_k in d.iter().take(i) {
            scale += d_k.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v.get(i - 1, j);
                v.set(i, j, 0.0);
                v.set(j, i, 0.0);
            }
        } else {
            // Generate Householder vector.
            for d_k in d.iter_mut().take(i) {
                *d_k /= scale;
                h += *d_k * *d_k;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for e_j in e.iter_mut().take(i) {
                *e_j = 0.0;
            }

            // Apply similarity transformation to remaining columns.
            for j in 0..i {
                f = d[j];
                v.set(j, i, f);
                g = e[j] + v.get(j, j) * f;
                for k in (j + 1)..i {
                    g += v.get(k, j) * d[k];
                    e[k] += v.get(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    let val = v.get(k, j) - (f * e[k] + g * d[k]);
                    v.set(k, j, val);
                }
                d[j] = v.get(i - 1, j);
                v.set(i, j, 0.0);
            }
        }
        d[i] = h;
    }

    // Accumulate transformations.
    for i in 0..(n - 1) {
        v.set(n - 1, i, v.get(i, i));
        v.set(i, i, 1.0);
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v.get(k, i + 1) / h;
            }
            for j in 0..=i {
                let mut g = 0.0f64;
                for k in 0..=i {
                    g += v.get(k, i + 1) * v.get(k, j);
                }
                for k in 0..=i {
                    let val = v.get(k, j) - g * d[k];
                    v.set(k, j, val);
                }
            }
        }
        for k in 0..=i {
            v.set(k, i + 1, 0.0);
        }
    }
    for j in 0..n {
        d[j] = v.get(n - 1, j);
        v.set(n - 1, j, 0.0);
    }
    v.set(n - 1, n - 1, 1.0);
    e[0] = 0.0;
}
