//! Cyclic Jacobi eigensolver for real symmetric matrices, and inertia.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Sweep cap for [`jacobi_eigenvalues`].
pub const MAX_SWEEPS: usize = 100;

/// Default relative off-diagonal tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    /// Eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    /// Frobenius norm of the off-diagonal part at exit.
    pub off_diag_norm: f64,
    pub sweeps: usize,
}

impl SpectrumResult {
    /// Largest eigenvalue.
    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }
}

/// Counts of positive, zero and negative eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct InertiaTriple {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

impl InertiaTriple {
    pub fn new(n_plus: usize, n_zero: usize, n_minus: usize) -> Self {
        InertiaTriple {
            n_plus,
            n_zero,
            n_minus,
        }
    }

    pub fn order(&self) -> usize {
        self.n_plus + self.n_zero + self.n_minus
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.n_plus, self.n_zero, self.n_minus]
    }
}

/// Dense real symmetric working copy.
fn real_symmetric<T: Scalar>(m: &Matrix<T>) -> Result<(usize, Vec<f64>)> {
    let n = m.order()?;
    let scale = m.max_modulus().max(1.0);
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let z = m.get(i, j).to_complex();
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "non-finite entry at ({i},{j})"
                )));
            }
            if z.im.abs() > SYMMETRY_TOL * scale {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
            a[i * n + j] = z.re;
        }
    }
    for i in 0..n {
        for j in 0..i {
            if (a[i * n + j] - a[j * n + i]).abs() > SYMMETRY_TOL * scale {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }
    Ok((n, a))
}

fn off_norm(n: usize, a: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
///
/// Iterates until the off-diagonal Frobenius norm is at most
/// `tol · max(‖M‖_F, 1)`, giving up after [`MAX_SWEEPS`] sweeps.
pub fn jacobi_eigenvalues<T: Scalar>(m: &Matrix<T>, tol: f64) -> Result<SpectrumResult> {
    jacobi_with_cap(m, tol, MAX_SWEEPS)
}

fn jacobi_with_cap<T: Scalar>(
    m: &Matrix<T>,
    tol: f64,
    max_sweeps: usize,
) -> Result<SpectrumResult> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let (n, mut a) = real_symmetric(m)?;
    let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = tol * frob.max(1.0);

    let mut sweeps = 0;
    let mut off = off_norm(n, &a);
    while off > threshold {
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(n, &mut a, p, q);
            }
        }
        off = off_norm(n, &a);
    }

    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigenvalues.sort_by(|x, y| y.total_cmp(x));
    Ok(SpectrumResult {
        eigenvalues,
        off_diag_norm: off,
        sweeps,
    })
}

/// Applies the rotation that annihilates `a[p][q]`.
fn rotate(n: usize, a: &mut [f64], p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        a[k * n + p] = new_kp;
        a[p * n + k] = new_kp;
        a[k * n + q] = new_kq;
        a[q * n + k] = new_kq;
    }
    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
}

/// Default zero threshold: `1e-7 · order · max|entry|`.
pub fn default_zero_tol<T: Scalar>(m: &Matrix<T>) -> f64 {
    1e-7 * m.rows() as f64 * m.max_modulus()
}

/// Inertia with eigenvalues `|λ| ≤ zero_tol` counted as zero.
pub fn inertia<T: Scalar>(m: &Matrix<T>, zero_tol: f64) -> Result<InertiaTriple> {
    let spectrum = jacobi_eigenvalues(m, DEFAULT_TOL)?;
    Ok(inertia_of(&spectrum.eigenvalues, zero_tol))
}

pub fn inertia_of(eigenvalues: &[f64], zero_tol: f64) -> InertiaTriple {
    let mut t = InertiaTriple::new(0, 0, 0);
    for &l in eigenvalues {
        if l.abs() <= zero_tol {
            t.n_zero += 1;
        } else if l > 0.0 {
            t.n_plus += 1;
        } else {
            t.n_minus += 1;
        }
    }
    t
}

/// [`inertia`] with [`default_zero_tol`].
pub fn inertia_default<T: Scalar>(m: &Matrix<T>) -> Result<InertiaTriple> {
    inertia(m, default_zero_tol(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{ApproxMatrix, ExactMatrix};
    use crate::scalar::Gaussian;
    use num_complex::Complex64;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn diagonal_needs_no_sweeps() {
        let d = ExactMatrix::from_i64_rows(&[[3, 0, 0], [0, -1, 0], [0, 0, 7]]).unwrap();
        let r = jacobi_eigenvalues(&d, DEFAULT_TOL).unwrap();
        assert_eq!(r.sweeps, 0);
        assert_eq!(r.eigenvalues, vec![7.0, 3.0, -1.0]);
    }

    #[test]
    fn swap_matrix() {
        let m = ExactMatrix::from_i64_rows(&[[0, 1], [1, 0]]).unwrap();
        let r = jacobi_eigenvalues(&m, DEFAULT_TOL).unwrap();
        assert!(close(&r.eigenvalues, &[1.0, -1.0], 1e-12));
    }

    #[test]
    fn distance_matrix_of_c4() {
        let m =
            ExactMatrix::from_i64_rows(&[[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]])
                .unwrap();
        let r = jacobi_eigenvalues(&m, DEFAULT_TOL).unwrap();
        assert!(close(&r.eigenvalues, &[4.0, 0.0, -2.0, -2.0], 1e-10));
        assert!(r.off_diag_norm <= DEFAULT_TOL * 6.0_f64.sqrt() * 4.0);
        assert_eq!(inertia_default(&m).unwrap(), InertiaTriple::new(1, 1, 2));
    }

    #[test]
    fn zero_matrix_inertia() {
        let z = ExactMatrix::zeros(3, 3).unwrap();
        assert_eq!(inertia_default(&z).unwrap(), InertiaTriple::new(0, 3, 0));
    }

    #[test]
    fn rejects_non_symmetric_and_complex() {
        let m = ExactMatrix::from_i64_rows(&[[0, 1], [2, 0]]).unwrap();
        assert!(matches!(
            jacobi_eigenvalues(&m, DEFAULT_TOL),
            Err(Error::NotSymmetric { .. })
        ));
        let h = ExactMatrix::from_rows(&[
            [Gaussian::real(1), Gaussian::I],
            [Gaussian::new(0, -1), Gaussian::real(1)],
        ])
        .unwrap();
        assert!(matches!(
            jacobi_eigenvalues(&h, DEFAULT_TOL),
            Err(Error::NotSymmetric { .. })
        ));
        assert!(jacobi_eigenvalues(&ExactMatrix::zeros(2, 3).unwrap(), DEFAULT_TOL).is_err());
    }

    #[test]
    fn approx_input() {
        let m = ApproxMatrix::from_rows(&[
            [Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
        ])
        .unwrap();
        let r = jacobi_eigenvalues(&m, 1e-14).unwrap();
        assert!(close(&r.eigenvalues, &[3.0, 1.0], 1e-12));
    }

    #[test]
    fn sweep_cap_reports_non_convergence() {
        let m = ExactMatrix::from_i64_rows(&[[1, 2, 3], [2, 5, 7], [3, 7, 11]]).unwrap();
        let err = jacobi_with_cap(&m, 1e-14, 1).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { sweeps: 1, .. }));
        assert!(jacobi_with_cap(&m, 1e-14, MAX_SWEEPS).unwrap().sweeps > 1);
    }

    #[test]
    fn rejects_bad_tolerance() {
        let m = ExactMatrix::identity(2).unwrap();
        for tol in [0.0, -1.0, f64::NAN] {
            assert!(matches!(
                jacobi_eigenvalues(&m, tol),
                Err(Error::InvalidArgument(_))
            ));
        }
    }
}
