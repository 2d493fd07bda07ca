//! Dense row-major matrices and the Kronecker, Hadamard and Cartesian
//! products.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{dim_err, Error, Result};
use crate::scalar::{Gaussian, Scalar};

/// Default cap on the number of entries any operation may produce (2^24).
pub const DEFAULT_CAPACITY: usize = 1 << 24;

static CAPACITY: AtomicUsize = AtomicUsize::new(DEFAULT_CAPACITY);

/// Current process-wide entry-count cap.
pub fn capacity() -> usize {
    CAPACITY.load(Ordering::Relaxed)
}

/// Replaces the process-wide entry-count cap, returning the previous value.
pub fn set_capacity(cap: usize) -> usize {
    CAPACITY.swap(cap, Ordering::Relaxed)
}

fn check_capacity(rows: usize, cols: usize) -> Result<()> {
    let requested = rows as u128 * cols as u128;
    let cap = capacity();
    if requested > cap as u128 {
        return Err(Error::Capacity { requested, cap });
    }
    Ok(())
}

/// Orders `(m, n)` of the left and right factors of a product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dims {
    pub m: usize,
    pub n: usize,
}

impl Dims {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return dim_err(format!("factor orders must be positive, got ({m},{n})"));
        }
        Ok(Dims { m, n })
    }
}

/// A dense `rows × cols` matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Matrix over Gaussian integers.
pub type ExactMatrix = Matrix<Gaussian>;
/// Matrix over double-precision complex numbers.
pub type ApproxMatrix = Matrix<num_complex::Complex64>;

impl<T: Scalar> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return dim_err(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            ));
        }
        if data.len() != rows * cols {
            return dim_err(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            ));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return dim_err("ragged rows");
        }
        let data = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().copied())
            .collect();
        Self::from_vec(rows.len(), cols, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return dim_err(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            ));
        }
        check_capacity(rows, cols)?;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Like [`Matrix::from_fn`] for fallible entry builders.
    pub fn try_from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<T>,
    ) -> Result<Self> {
        check_capacity(rows, cols)?;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j)?);
            }
        }
        Self::from_vec(rows, cols, data)
    }

    /// Converts integer rows into a matrix of this mode.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let converted: Vec<Vec<T>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| T::from_i64(v)).collect())
            .collect();
        Self::from_rows(&converted)
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Result<Self> {
        Self::from_fn(rows, cols, |_, _| value)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::filled(rows, cols, T::zero())
    }

    /// The all-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        Self::filled(rows, cols, T::one())
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Order of a square matrix.
    pub fn order(&self) -> Result<usize> {
        if !self.is_square() {
            return dim_err(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            ));
        }
        Ok(self.rows)
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return dim_err(format!(
                "{op}: shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, op: &str, f: impl Fn(T, T) -> Result<T>) -> Result<Self> {
        self.same_shape(other, op)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    fn map(&self, f: impl Fn(T) -> Result<T>) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|&a| f(a))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", T::checked_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", T::checked_sub)
    }

    pub fn neg(&self) -> Result<Self> {
        self.map(T::checked_neg)
    }

    pub fn scale(&self, c: T) -> Result<Self> {
        self.map(|a| c.checked_mul(a))
    }

    /// `self + c·J`.
    pub fn shift(&self, c: T) -> Result<Self> {
        self.map(|a| a.checked_add(c))
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "hadamard", T::checked_mul)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return dim_err(format!(
                "matmul: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        Self::try_from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).try_fold(T::zero(), |acc, k| {
                acc.checked_add(self.get(i, k).checked_mul(other.get(k, j))?)
            })
        })
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn conj_transpose(&self) -> Result<Self> {
        self.transpose().map(T::checked_conj)
    }

    /// Kronecker product: block `(i,j)` is `a_{ij}·B`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        let (p, q) = (other.rows, other.cols);
        Self::try_from_fn(self.rows * p, self.cols * q, |r, c| {
            self.get(r / p, c / q).checked_mul(other.get(r % p, c % q))
        })
    }

    /// Cartesian product `A⊘B = A⊗J + J⊗B`: entry `(p,q)` of block `(i,j)`
    /// is `a_{ij} + b_{pq}`.
    pub fn cartesian(&self, other: &Self) -> Result<Self> {
        let m = self.order()?;
        let n = other.order()?;
        Self::try_from_fn(m * n, m * n, |r, c| {
            self.get(r / n, c / n).checked_add(other.get(r % n, c % n))
        })
    }

    /// `A⊘A⊘⋯⊘A` with `k` factors.
    pub fn cartesian_power(&self, k: usize) -> Result<Self> {
        let n = self.order()?;
        if k == 0 {
            return dim_err("cartesian power needs k >= 1");
        }
        let total = u32::try_from(k)
            .ok()
            .and_then(|k| (n as u128).checked_pow(k))
            .unwrap_or(u128::MAX);
        if total.saturating_mul(total) > capacity() as u128 {
            return Err(Error::Capacity {
                requested: total.saturating_mul(total),
                cap: capacity(),
            });
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.cartesian(self)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<T> {
        let n = self.order()?;
        (0..n).try_fold(T::zero(), |acc, i| acc.checked_add(self.get(i, i)))
    }

    /// Sum of all entries, `S_A`.
    pub fn entry_sum(&self) -> Result<T> {
        self.data
            .iter()
            .try_fold(T::zero(), |acc, &a| acc.checked_add(a))
    }

    /// Row sums `A_i`.
    pub fn row_sums(&self) -> Result<Vec<T>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .try_fold(T::zero(), |acc, &a| acc.checked_add(a))
            })
            .collect()
    }

    pub fn max_modulus(&self) -> f64 {
        self.data.iter().map(|a| a.modulus()).fold(0.0, f64::max)
    }

    /// True when every entry is zero (within `tol` in approximate mode).
    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|&a| a.close_to(T::zero(), tol))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(&a, &b)| a.close_to(b, tol))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j).close_to(self.get(j, i), tol)))
    }

    pub fn is_skew_symmetric(&self, tol: f64) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..=i).all(|j| match self.get(j, i).checked_neg() {
                    Ok(neg) => self.get(i, j).close_to(neg, tol),
                    Err(_) => false,
                })
            })
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).close_to(T::zero(), tol)))
    }

    /// If every entry equals the same value, returns it.
    pub fn constant_value(&self, tol: f64) -> Option<T> {
        let first = self.data[0];
        self.data
            .iter()
            .all(|&a| a.close_to(first, tol))
            .then_some(first)
    }

    /// Maps entries into another carrier.
    pub fn convert<U: Scalar>(&self, f: impl Fn(T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f(a)).collect(),
        }
    }
}

/// Left fold of [`Matrix::cartesian`] over a non-empty chain.
pub fn cartesian_chain<T: Scalar>(factors: &[Matrix<T>]) -> Result<Matrix<T>> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::Dimension("empty chain".into()))?;
    rest.iter()
        .try_fold(first.clone(), |acc, f| acc.cartesian(f))
}

/// Left fold of [`Matrix::kron`] over a non-empty chain.
pub fn kron_chain<T: Scalar>(factors: &[Matrix<T>]) -> Result<Matrix<T>> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::Dimension("empty chain".into()))?;
    rest.iter().try_fold(first.clone(), |acc, f| acc.kron(f))
}

/// The `mn × mn` commutation matrix `P` with `Pᵀ(A⊗B)P = B⊗A` for
/// `A ∈ 𝕄_m`, `B ∈ 𝕄_n`.
///
/// Basis index `i·n + p` is sent to `p·m + i` (0-based).
pub fn commutation_matrix<T: Scalar>(dims: Dims) -> Result<Matrix<T>> {
    let Dims { m, n } = Dims::new(dims.m, dims.n)?;
    let size = m.checked_mul(n).ok_or(Error::Overflow)?;
    let mut p = Matrix::zeros(size, size)?;
    for i in 0..m {
        for q in 0..n {
            p.set(i * n + q, q * m + i, T::one());
        }
    }
    Ok(p)
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn ex(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn ones_examples() {
        assert_eq!(ExactMatrix::ones(1, 1).unwrap(), ex(&[&[1]]));
        assert_eq!(ExactMatrix::ones(2, 2).unwrap(), ex(&[&[1, 1], &[1, 1]]));
        let j = ExactMatrix::ones(2, 3).unwrap();
        assert_eq!((j.rows(), j.cols()), (2, 3));
        assert!(j.as_slice().iter().all(|&v| v == Gaussian::one()));
        assert!(matches!(ExactMatrix::ones(0, 2), Err(Error::Dimension(_))));
    }

    #[test]
    fn kron_examples() {
        assert_eq!(ex(&[&[2]]).kron(&ex(&[&[3]])).unwrap(), ex(&[&[6]]));
        let a = ex(&[&[1, 2], &[3, 4]]);
        let b = ex(&[&[0, 5], &[6, 7]]);
        let expected = ex(&[
            &[0, 5, 0, 10],
            &[6, 7, 12, 14],
            &[0, 15, 0, 20],
            &[18, 21, 24, 28],
        ]);
        assert_eq!(a.kron(&b).unwrap(), expected);
        assert_eq!(a.kron(&ExactMatrix::ones(1, 1).unwrap()).unwrap(), a);
    }

    #[test]
    fn kron_rectangular_shape() {
        let a = ex(&[&[1, 2, 3]]);
        let b = ex(&[&[1], &[2]]);
        let k = a.kron(&b).unwrap();
        assert_eq!((k.rows(), k.cols()), (2, 3));
        assert_eq!(k, ex(&[&[1, 2, 3], &[2, 4, 6]]));
    }

    #[test]
    fn kron_overflow_and_capacity() {
        let big = ex(&[&[i64::MAX]]);
        assert_eq!(big.kron(&ex(&[&[2]])), Err(Error::Overflow));
        let col = ExactMatrix::zeros(4097, 1).unwrap();
        let err = col.kron(&col.transpose());
        assert!(matches!(err, Err(Error::Capacity { requested, .. }) if requested == 4097 * 4097));
    }

    #[test]
    fn hadamard_examples() {
        let a = ex(&[&[1, 2], &[3, 4]]);
        assert_eq!(
            a.hadamard(&ex(&[&[0, 1], &[1, 0]])).unwrap(),
            ex(&[&[0, 2], &[3, 0]])
        );
        assert_eq!(a.hadamard(&ExactMatrix::ones(2, 2).unwrap()).unwrap(), a);
        assert_eq!(
            a.hadamard(&ExactMatrix::zeros(2, 2).unwrap()).unwrap(),
            ExactMatrix::zeros(2, 2).unwrap()
        );
        assert!(matches!(
            a.hadamard(&ExactMatrix::ones(2, 3).unwrap()),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn cartesian_examples() {
        let a = ex(&[&[1, 2], &[3, 4]]);
        let b = ex(&[&[5, 6], &[7, 8]]);
        let expected = ex(&[
            &[6, 7, 7, 8],
            &[8, 9, 9, 10],
            &[8, 9, 9, 10],
            &[10, 11, 11, 12],
        ]);
        assert_eq!(a.cartesian(&b).unwrap(), expected);

        let k = Gaussian::real(4);
        let lhs = ex(&[&[4]]).cartesian(&b).unwrap();
        assert_eq!(lhs, b.shift(k).unwrap());

        let zero = ExactMatrix::filled(2, 2, Gaussian::real(3))
            .unwrap()
            .cartesian(&ExactMatrix::filled(3, 3, Gaussian::real(-3)).unwrap())
            .unwrap();
        assert_eq!(zero, ExactMatrix::zeros(6, 6).unwrap());

        assert!(matches!(
            a.cartesian(&ex(&[&[1, 2]])),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn cartesian_power_examples() {
        let a = ex(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.cartesian_power(1).unwrap(), a);
        assert_eq!(ex(&[&[1]]).cartesian_power(3).unwrap(), ex(&[&[3]]));
        let i2 = ExactMatrix::identity(2).unwrap();
        assert_eq!(
            i2.cartesian_power(2).unwrap().trace().unwrap(),
            Gaussian::real(8)
        );
        assert!(matches!(
            ExactMatrix::ones(2, 2).unwrap().cartesian_power(25),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn matmul_examples() {
        let a = ex(&[&[1, 2], &[3, 4]]);
        let b = ex(&[&[5, 6], &[7, 8]]);
        assert_eq!(ExactMatrix::identity(2).unwrap().matmul(&a).unwrap(), a);
        assert_eq!(a.matmul(&b).unwrap(), ex(&[&[19, 22], &[43, 50]]));
        let j = ExactMatrix::ones(2, 2).unwrap();
        assert_eq!(j.matmul(&j).unwrap(), j.scale(Gaussian::real(2)).unwrap());
        assert!(matches!(
            a.matmul(&ex(&[&[1, 2, 3]])),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn add_and_scale() {
        let a = ex(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.add(&ExactMatrix::zeros(2, 2).unwrap()).unwrap(), a);
        assert_eq!(a.scale(Gaussian::real(2)).unwrap(), ex(&[&[2, 4], &[6, 8]]));
        assert!(matches!(
            a.add(&ExactMatrix::zeros(1, 2).unwrap()),
            Err(Error::Dimension(_))
        ));
        assert_eq!(ex(&[&[i64::MAX]]).add(&ex(&[&[1]])), Err(Error::Overflow));
    }

    #[test]
    fn transpose_and_conjugate() {
        let a = ex(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.transpose(), ex(&[&[1, 3], &[2, 4]]));
        assert_eq!(a.conj_transpose().unwrap(), a.transpose());
        let i = ExactMatrix::from_rows(&[[Gaussian::I]]).unwrap();
        assert_eq!(
            i.conj_transpose().unwrap(),
            ExactMatrix::from_rows(&[[Gaussian::new(0, -1)]]).unwrap()
        );
        let c = ApproxMatrix::from_rows(&[[Complex64::new(1.0, 2.0), Complex64::new(0.0, -1.0)]])
            .unwrap();
        let ct = c.conj_transpose().unwrap();
        assert_eq!((ct.rows(), ct.cols()), (2, 1));
        assert_eq!(ct.get(0, 0), Complex64::new(1.0, -2.0));
        assert_eq!(ct.get(1, 0), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn sums() {
        let a = ex(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.trace().unwrap(), Gaussian::real(5));
        assert_eq!(a.entry_sum().unwrap(), Gaussian::real(10));
        assert_eq!(
            a.row_sums().unwrap(),
            vec![Gaussian::real(3), Gaussian::real(7)]
        );
        assert!(matches!(ex(&[&[1, 2]]).trace(), Err(Error::Dimension(_))));
    }

    #[test]
    fn commutation_examples() {
        let p1: ExactMatrix = commutation_matrix(Dims::new(1, 1).unwrap()).unwrap();
        assert_eq!(p1, ex(&[&[1]]));
        let p: ExactMatrix = commutation_matrix(Dims::new(2, 2).unwrap()).unwrap();
        assert_eq!(
            p,
            ex(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]])
        );
        assert!(Dims::new(0, 2).is_err());
    }

    /// Exhaustive check over the 2×2 matrix-unit basis: `Pᵀ(E⊗F)P = F⊗E`.
    #[test]
    fn commutation_on_basis() {
        for (m, n) in [(2, 2), (2, 3), (3, 2), (1, 3)] {
            let p: ExactMatrix = commutation_matrix(Dims::new(m, n).unwrap()).unwrap();
            let pt = p.transpose();
            assert_eq!(
                pt.matmul(&p).unwrap(),
                ExactMatrix::identity(m * n).unwrap()
            );
            for e_idx in 0..m * m {
                for f_idx in 0..n * n {
                    let e = ExactMatrix::from_fn(m, m, |i, j| {
                        Gaussian::real((i * m + j == e_idx) as i64)
                    })
                    .unwrap();
                    let f = ExactMatrix::from_fn(n, n, |i, j| {
                        Gaussian::real((i * n + j == f_idx) as i64)
                    })
                    .unwrap();
                    let lhs = pt.matmul(&e.kron(&f).unwrap()).unwrap().matmul(&p).unwrap();
                    assert_eq!(lhs, f.kron(&e).unwrap());
                }
            }
        }
    }

    #[test]
    fn structure_predicates() {
        let s = ex(&[&[1, 2], &[2, 5]]);
        assert!(s.is_symmetric(0.0));
        assert!(!ex(&[&[0, 1], &[2, 0]]).is_symmetric(0.0));
        assert!(ex(&[&[0, 1], &[-1, 0]]).is_skew_symmetric(0.0));
        assert!(!ex(&[&[1, 1], &[-1, 0]]).is_skew_symmetric(0.0));
        assert!(ExactMatrix::identity(3).unwrap().is_diagonal(0.0));
        assert!(!s.is_diagonal(0.0));
    }

    #[test]
    fn approx_tolerance() {
        let a = ApproxMatrix::from_i64_rows(&[[1, 2], [3, 4]]).unwrap();
        let b = a.shift(Complex64::new(1e-13, 0.0)).unwrap();
        assert!(a.approx_eq(&b, 1e-12));
        assert!(!a.approx_eq(&b, 1e-14));
    }
}
