//! Implicit-shift QL iteration for symmetric tridiagonal matrices, following
//! the Algol `tql2` procedure (EISPACK lineage). Eigenvalues come back in
//! ascending order with orthonormal eigenvectors.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::RealMatrix;

use super::{Spectrum, TridiagonalSymmetric};

/// Hard cap on QL sweeps, scaled by matrix size.
pub const MAX_SWEEPS_PER_ROW: usize = 50;

/// Diagonalize a symmetric tridiagonal matrix.
///
/// Eigenvalues are returned in ascending order. Eigenvector columns align
/// with the eigenvalue order; when the input carries an accumulated
/// transform Q (from the Householder reduction), the vectors are mapped back
/// so they are eigenvectors of the original dense matrix.
///
/// Iteration is capped at `MAX_SWEEPS_PER_ROW * n` total sweeps. On hitting
/// the cap, the error carries the eigenvalues that had already locked in.
pub fn tridiag_eigen(t: &TridiagonalSymmetric) -> Result<Spectrum> {
    let n = t.diag().len();
    if n == 0 {
        return Err(Error::Parameter("empty tridiagonal matrix".into()));
    }
    if t.offdiag().len() + 1 != n {
        return Err(Error::Contract(format!(
            "offdiag length {} does not match diagonal length {}",
            t.offdiag().len(),
            n
        )));
    }

    let mut d = t.diag().to_vec();
    // tql2 convention: e[i] couples (i-1, i), e[0] unused.
    let mut e = vec![0.0f64];
    e.extend_from_slice(t.offdiag());

    let mut z = RealMatrix::identity(n);
    tql2(&mut d, &mut e, &mut z, MAX_SWEEPS_PER_ROW * n)?;

    // Ascending sort with the vector columns carried along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values: Vec<Complex64> = order.iter().map(|&k| Complex64::new(d[k], 0.0)).collect();
    let sorted = RealMatrix::from_fn(n, |i, j| z.get(i, order[j]));

    // Residual in tridiagonal coordinates; an orthogonal transform leaves
    // both the 2-norms and the Frobenius norm unchanged.
    let fro = t.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut worst = 0.0f64;
    for j in 0..n {
        let x: Vec<f64> = (0..n).map(|i| sorted.get(i, j)).collect();
        let tx = t.apply(&x);
        let mut diff = 0.0f64;
        for i in 0..n {
            let r = tx[i] - d[order[j]] * x[i];
            diff += r * r;
        }
        worst = worst.max(diff.sqrt());
    }
    let residual = worst / fro;

    let vectors = match t.transform() {
        Some(q) => q.mul_mat(&sorted),
        None => sorted,
    };

    Ok(Spectrum::from_real_parts(values, vectors, residual))
}

fn tql2(d: &mut [f64], e: &mut [f64], z: &mut RealMatrix, max_sweeps: usize) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    let eps = f64::EPSILON;
    let mut sweeps = 0usize;

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        loop {
            // Find a negligible subdiagonal element.
            let mut m = l;
            while m < n - 1 {
                if e[m].abs() <= eps * tst1 {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }

            sweeps += 1;
            if sweeps > max_sweeps {
                // Rows 0..l have converged; report those and give up.
                let partial: Vec<Complex64> = d[..l]
                    .iter()
                    .map(|&x| Complex64::new(x + f, 0.0))
                    .collect();
                return Err(Error::NonConvergence {
                    sweeps,
                    converged: l,
                    size: n,
                    partial,
                });
            }

            // Compute implicit shift.
            let g = d[l];
            let mut p = (d[l + 1] - g) / (2.0 * e[l]);
            let mut r = p.hypot(1.0);
            if p < 0.0 {
                r = -r;
            }
            d[l] = e[l] / (p + r);
            d[l + 1] = e[l] * (p + r);
            let dl1 = d[l + 1];
            let mut h = g - d[l];
            for d_i in d.iter_mut().take(n).skip(l + 2) {
                *d_i -= h;
            }
            f += h;

            // Implicit QL sweep.
            p = d[m];
            let mut c = 1.0f64;
            let mut c2 = c;
            let mut c3 = c;
            let el1 = e[l + 1];
            let mut s = 0.0f64;
            let mut s2 = 0.0f64;
            for i in (l..m).rev() {
                c3 = c2;
                c2 = c;
                s2 = s;
                let g = c * e[i];
                h = c * p;
                r = p.hypot(e[i]);
                e[i + 1] = s * r;
                s = e[i] / r;
                c = p / r;
                p = c * d[i] - s * g;
                d[i + 1] = h + s * (c * g + s * d[i]);

                for k in 0..n {
                    h = z.get(k, i + 1);
                    z.set(k, i + 1, s * z.get(k, i) + c * h);
                    z.set(k, i, c * z.get(k, i) - s * h);
                }
            }
            p = -s * s2 * c3 * el1 * e[l] / dl1;
            e[l] = s * p;
            d[l] = c * p;

            if e[l].abs() <= eps * tst1 {
                break;
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn plain(diag: Vec<f64>, offdiag: Vec<f64>) -> TridiagonalSymmetric {
        TridiagonalSymmetric::new(diag, offdiag)
    }

    #[test]
    fn single_entry() {
        let s = tridiag_eigen(&plain(vec![4.25], vec![])).unwrap();
        assert_eq!(s.values(), &[Complex64::new(4.25, 0.0)]);
    }

    #[test]
    fn two_by_two_closed_form() {
        // diag {2, 2}, offdiag {1}: eigenvalues 1 and 3,
        // eigenvectors (1, ∓1)/√2
        let s = tridiag_eigen(&plain(vec![2.0, 2.0], vec![1.0])).unwrap();
        assert_relative_eq!(s.values()[0].re, 1.0, max_relative = 1e-14);
        assert_relative_eq!(s.values()[1].re, 3.0, max_relative = 1e-14);
        let v = s.vectors().expect("vectors");
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert_relative_eq!(v.get(0, 0).re.abs(), inv_sqrt2, max_relative = 1e-14);
        assert_relative_eq!(v.get(1, 0).re.abs(), inv_sqrt2, max_relative = 1e-14);
        // opposite signs in the low column, matching signs in the high one
        assert!(v.get(0, 0).re * v.get(1, 0).re < 0.0);
        assert!(v.get(0, 1).re * v.get(1, 1).re > 0.0);
    }

    #[test]
    fn toeplitz_has_known_spectrum() {
        // diag 2, offdiag -1, size n: eigenvalues 2 - 2 cos(kπ/(n+1))
        let n = 9;
        let s = tridiag_eigen(&plain(vec![2.0; n], vec![-1.0; n - 1])).unwrap();
        for (k, val) in s.values().iter().enumerate() {
            let expected =
                2.0 - 2.0 * (std::f64::consts::PI * (k + 1) as f64 / (n as f64 + 1.0)).cos();
            assert_relative_eq!(val.re, expected, max_relative = 1e-12, epsilon = 1e-13);
            assert_eq!(val.im, 0.0);
        }
    }

    #[test]
    fn eigenvectors_are_orthonormal_and_satisfy_residual() {
        let n = 12;
        let diag: Vec<f64> = (0..n).map(|i| (2 * i) as f64 + 1.5).collect();
        let off: Vec<f64> = (0..n - 1)
            .map(|i| (((i + 1) * (2 * i + 3)) as f64 / 4.0).sqrt())
            .collect();
        let t = plain(diag.clone(), off.clone());
        let s = tridiag_eigen(&t).unwrap();
        let v = s.vectors().expect("vectors");

        for a in 0..n {
            for b in 0..n {
                let mut dot = 0.0;
                for i in 0..n {
                    dot += v.get(i, a).re * v.get(i, b).re;
                }
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((dot - expected).abs() < 1e-12, "gram defect at ({a},{b})");
            }
        }

        assert!(s.residual() < 1e-13);
        for w in s.values().windows(2) {
            assert!(w[0].re <= w[1].re);
        }
    }
}
