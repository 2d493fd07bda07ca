//! Closed-form trace formulas, residual checkers and constructive inverses
//! for Cartesian products of square matrices.
//!
//! Every closed form with `1/n_i` denominators is evaluated after clearing
//! denominators, so exact mode stays in the Gaussian integers. Residual
//! checkers return `LHS − RHS`; each identity holds when the residual is the
//! zero matrix.

use crate::error::{dim_err, Error, Result};
use crate::matrix::{cartesian_chain, Dims, Matrix};
use crate::scalar::Scalar;

/// A factor `k·A` of a weighted Cartesian chain.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedFactor<T: Scalar> {
    pub k: T,
    pub matrix: Matrix<T>,
}

impl<T: Scalar> WeightedFactor<T> {
    pub fn new(k: T, matrix: Matrix<T>) -> Result<Self> {
        matrix.order()?;
        Ok(WeightedFactor { k, matrix })
    }

    pub fn unit(matrix: Matrix<T>) -> Result<Self> {
        Self::new(T::one(), matrix)
    }
}

/// A partition of square factors into consecutive, non-empty groups.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorGrouping<T: Scalar> {
    groups: Vec<Vec<Matrix<T>>>,
}

impl<T: Scalar> FactorGrouping<T> {
    pub fn new(groups: Vec<Vec<Matrix<T>>>) -> Result<Self> {
        if groups.is_empty() || groups.iter().any(Vec::is_empty) {
            return dim_err("grouping needs at least one non-empty group");
        }
        for m in groups.iter().flatten() {
            m.order()?;
        }
        Ok(FactorGrouping { groups })
    }

    pub fn groups(&self) -> &[Vec<Matrix<T>>] {
        &self.groups
    }
}

/// Shift constant `k` relating two factorizations of the same product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftWitness<T> {
    pub k: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureKind {
    Symmetric,
    Skew,
}

fn usize_product<T: Scalar>(orders: impl IntoIterator<Item = usize>) -> Result<T> {
    orders
        .into_iter()
        .try_fold(T::one(), |acc, n| acc.checked_mul(T::from_usize(n)?))
}

fn sum<T: Scalar>(terms: impl IntoIterator<Item = Result<T>>) -> Result<T> {
    terms
        .into_iter()
        .try_fold(T::zero(), |acc, t| acc.checked_add(t?))
}

/// `Σ_i c_i·Π_{j≠i} n_j`, i.e. `(Π n_j)·Σ_i c_i/n_i` without division.
fn cleared_sum<T: Scalar>(coeffs: &[T], orders: &[usize]) -> Result<T> {
    sum(coeffs.iter().enumerate().map(|(i, &c)| {
        let others = orders
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &n)| n);
        c.checked_mul(usize_product(others)?)
    }))
}

/// `tr(k_1A_1⊘⋯⊘k_tA_t) = (Π n_i)·Σ k_i·tr(A_i)/n_i`.
pub fn trace_cartesian_closed_form<T: Scalar>(factors: &[WeightedFactor<T>]) -> Result<T> {
    if factors.is_empty() {
        return dim_err("need at least one factor");
    }
    let orders = factors
        .iter()
        .map(|f| f.matrix.order())
        .collect::<Result<Vec<_>>>()?;
    let coeffs = factors
        .iter()
        .map(|f| f.k.checked_mul(f.matrix.trace()?))
        .collect::<Result<Vec<_>>>()?;
    cleared_sum(&coeffs, &orders)
}

/// `tr(A⊘B) = n·tr(A) + m·tr(B)`.
pub fn trace_pair_closed_form<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<T> {
    let (m, n) = (a.order()?, b.order()?);
    T::from_usize(n)?
        .checked_mul(a.trace()?)?
        .checked_add(T::from_usize(m)?.checked_mul(b.trace()?)?)
}

/// `tr(A^[k]) = k·n^{k−1}·tr(A)`.
pub fn trace_power_closed_form<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<T> {
    let n = a.order()?;
    if k == 0 {
        return dim_err("cartesian power needs k >= 1");
    }
    let pow = usize_product::<T>(std::iter::repeat_n(n, k - 1))?;
    T::from_usize(k)?.checked_mul(pow)?.checked_mul(a.trace()?)
}

/// `tr((A+B)⊘(A−B)) = 2n·tr(A)` for `A, B ∈ 𝕄_n`.
pub fn trace_plus_minus_closed_form<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<T> {
    let n = a.order()?;
    if b.order()? != n {
        return dim_err("A and B must have the same order");
    }
    T::from_usize(2 * n)?.checked_mul(a.trace()?)
}

/// `tr(A⊗(B_1⊘⋯⊘B_k)) = n^{k−1}·tr(A)·Σ tr(B_i)`, all `B_i ∈ 𝕄_n`.
pub fn trace_kron_with_cartesian_closed_form<T: Scalar>(
    a: &Matrix<T>,
    bs: &[Matrix<T>],
) -> Result<T> {
    a.order()?;
    let (first, _) = bs
        .split_first()
        .ok_or_else(|| Error::Dimension("need at least one B".into()))?;
    let n = first.order()?;
    for b in bs {
        if b.order()? != n {
            return dim_err("all B_i must share one order");
        }
    }
    let pow = usize_product::<T>(std::iter::repeat_n(n, bs.len() - 1))?;
    let traces = sum(bs.iter().map(Matrix::trace))?;
    pow.checked_mul(a.trace()?)?.checked_mul(traces)
}

/// `tr[(A_1⊘⋯⊘A_ℓ)⊗(A_{ℓ+1}⊘⋯)⊗⋯] = Π_groups [(Π_{g} n_p)·Σ_{i∈g} tr(A_i)/n_i]`.
pub fn trace_kron_of_cartesian_groups<T: Scalar>(grouping: &FactorGrouping<T>) -> Result<T> {
    grouping.groups().iter().try_fold(T::one(), |acc, group| {
        let orders = group
            .iter()
            .map(Matrix::order)
            .collect::<Result<Vec<_>>>()?;
        let traces = group
            .iter()
            .map(Matrix::trace)
            .collect::<Result<Vec<_>>>()?;
        acc.checked_mul(cleared_sum(&traces, &orders)?)
    })
}

/// `tr[(A_1⊗⋯⊗A_ℓ)⊘(A_{ℓ+1}⊗⋯)⊘⋯] = Σ_groups [Π_{i∈g} tr(A_i)·Π_{p∉g} n_p]`.
pub fn trace_cartesian_of_kron_groups<T: Scalar>(grouping: &FactorGrouping<T>) -> Result<T> {
    let groups = grouping.groups();
    let group_orders = groups
        .iter()
        .map(|g| usize_product_usize(g.iter().map(|m| m.rows())))
        .collect::<Result<Vec<_>>>()?;
    let group_traces = groups
        .iter()
        .map(|g| {
            g.iter()
                .try_fold(T::one(), |acc, m| acc.checked_mul(m.trace()?))
        })
        .collect::<Result<Vec<_>>>()?;
    cleared_sum(&group_traces, &group_orders)
}

fn usize_product_usize(orders: impl IntoIterator<Item = usize>) -> Result<usize> {
    orders
        .into_iter()
        .try_fold(1usize, |acc, n| acc.checked_mul(n).ok_or(Error::Overflow))
}

/// `S_{A⊘B} = n²·S_A + m²·S_B`.
pub fn entry_sum_cartesian_closed_form<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<T> {
    let (m, n) = (a.order()?, b.order()?);
    let n2 = T::from_usize(n.checked_mul(n).ok_or(Error::Overflow)?)?;
    let m2 = T::from_usize(m.checked_mul(m).ok_or(Error::Overflow)?)?;
    n2.checked_mul(a.entry_sum()?)?
        .checked_add(m2.checked_mul(b.entry_sum()?)?)
}

/// `S_{A⊗B} = S_A·S_B`.
pub fn entry_sum_kron_closed_form<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<T> {
    a.entry_sum()?.checked_mul(b.entry_sum()?)
}

fn same_order<T: Scalar>(ms: &[&Matrix<T>]) -> Result<usize> {
    let n = ms[0].order()?;
    for m in ms {
        if m.order()? != n {
            return dim_err("all matrices must share one order");
        }
    }
    Ok(n)
}

/// Residual of `(A⊘B)(C⊘D) = n·(AC⊘BD) + AJ⊗JD + JC⊗BJ` for `A,B,C,D ∈ 𝕄_n`.
pub fn product_identity_residual<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    c: &Matrix<T>,
    d: &Matrix<T>,
) -> Result<Matrix<T>> {
    let n = same_order(&[a, b, c, d])?;
    let j = Matrix::<T>::ones(n, n)?;
    let lhs = a.cartesian(b)?.matmul(&c.cartesian(d)?)?;
    let main = a
        .matmul(c)?
        .cartesian(&b.matmul(d)?)?
        .scale(T::from_usize(n)?)?;
    let left = a.matmul(&j)?.kron(&j.matmul(d)?)?;
    let right = j.matmul(c)?.kron(&b.matmul(&j)?)?;
    lhs.sub(&main.add(&left)?.add(&right)?)
}

/// Residual of `(A⊘B)∘(C⊘D) = (A∘C)⊘(B∘D) + A⊗D + C⊗B` for `A,B,C,D ∈ 𝕄_n`.
pub fn hadamard_identity_residual<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    c: &Matrix<T>,
    d: &Matrix<T>,
) -> Result<Matrix<T>> {
    same_order(&[a, b, c, d])?;
    let lhs = a.cartesian(b)?.hadamard(&c.cartesian(d)?)?;
    let rhs = a
        .hadamard(c)?
        .cartesian(&b.hadamard(d)?)?
        .add(&a.kron(d)?)?
        .add(&c.kron(b)?)?;
    lhs.sub(&rhs)
}

/// Doubled residuals of the two distributivity identities, for `A, B` of
/// order `m` and `C` of order `n`:
///
/// * `2·((A+B)⊘C) − [A⊘C + B⊘C + (A+B)⊗J_n]`
/// * `2·(C⊘(A+B)) − [C⊘A + C⊘B + J_n⊗(A+B)]`
pub fn distributivity_residuals<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    c: &Matrix<T>,
) -> Result<(Matrix<T>, Matrix<T>)> {
    same_order(&[a, b])?;
    let n = c.order()?;
    let two = T::from_i64(2);
    let a_plus_b = a.add(b)?;

    let lhs = a_plus_b.cartesian(c)?.scale(two)?;
    let rhs = a
        .cartesian(c)?
        .add(&b.cartesian(c)?)?
        .add(&a_plus_b.kron(&Matrix::ones(n, n)?)?)?;
    let first = lhs.sub(&rhs)?;

    let lhs = c.cartesian(&a_plus_b)?.scale(two)?;
    let rhs = c
        .cartesian(a)?
        .add(&c.cartesian(b)?)?
        .add(&Matrix::ones(n, n)?.kron(&a_plus_b)?)?;
    let second = lhs.sub(&rhs)?;
    Ok((first, second))
}

/// Residual of `(Σ_i A_i)⊘(Σ_i B_i)⊘⋯⊘(Σ_i C_i) = Σ_i (A_i⊘B_i⊘⋯⊘C_i)`.
///
/// Each term is one tuple `(A_i, B_i, …, C_i)`; all terms must have the same
/// number of slots and matching orders slot by slot.
pub fn sum_cartesian_residual<T: Scalar>(terms: &[Vec<Matrix<T>>]) -> Result<Matrix<T>> {
    let (first, rest) = terms
        .split_first()
        .ok_or_else(|| Error::Dimension("need at least one term".into()))?;
    if first.is_empty() {
        return dim_err("terms need at least one slot");
    }
    for term in rest {
        if term.len() != first.len() {
            return dim_err("all terms need the same number of slots");
        }
        for (x, y) in term.iter().zip(first) {
            if x.order()? != y.order()? {
                return dim_err("slot orders differ between terms");
            }
        }
    }
    let slot_sums = (0..first.len())
        .map(|s| {
            rest.iter()
                .try_fold(first[s].clone(), |acc, t| acc.add(&t[s]))
        })
        .collect::<Result<Vec<_>>>()?;
    let lhs = cartesian_chain(&slot_sums)?;
    let rhs = rest.iter().try_fold(cartesian_chain(first)?, |acc, t| {
        acc.add(&cartesian_chain(t)?)
    })?;
    lhs.sub(&rhs)
}

/// Recovers the canonical factorization `M = A⊘B` with `b_{11} = 0`.
///
/// Returns `None` when `M` is not a Cartesian product of an `m × m` and an
/// `n × n` matrix. Approximate inputs are compared entrywise within
/// `1e-12·max(max|m_ij|, 1)`.
pub fn cartesian_factorize<T: Scalar>(
    m: &Matrix<T>,
    dims: Dims,
) -> Result<Option<(Matrix<T>, Matrix<T>)>> {
    let Dims { m: left, n: right } = Dims::new(dims.m, dims.n)?;
    let order = m.order()?;
    if left.checked_mul(right) != Some(order) {
        return dim_err(format!(
            "matrix of order {order} cannot split as {left}x{right}"
        ));
    }
    let a = Matrix::from_fn(left, left, |i, j| m.get(i * right, j * right))?;
    let a11 = a.get(0, 0);
    let b = Matrix::try_from_fn(right, right, |p, q| m.get(p, q).checked_sub(a11))?;
    match a.cartesian(&b) {
        Ok(rebuilt) if rebuilt.approx_eq(m, 1e-12 * m.max_modulus().max(1.0)) => Ok(Some((a, b))),
        Ok(_) | Err(Error::Overflow) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Finds `k` with `C = A − kJ_m` and `D = B + kJ_n`, which holds exactly
/// when `A⊘B = C⊘D`.
pub fn equality_shift<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    c: &Matrix<T>,
    d: &Matrix<T>,
) -> Result<Option<ShiftWitness<T>>> {
    let (m, n) = (a.order()?, b.order()?);
    if c.order()? != m || d.order()? != n {
        return dim_err("A, C and B, D must have matching orders");
    }
    let k = a.get(0, 0).checked_sub(c.get(0, 0))?;
    let holds = shifted_eq(c, a, k.checked_neg()?) && shifted_eq(d, b, k);
    Ok(holds.then_some(ShiftWitness { k }))
}

/// `target == base + k·J`, treating overflow as inequality.
fn shifted_eq<T: Scalar>(target: &Matrix<T>, base: &Matrix<T>, k: T) -> bool {
    base.shift(k).is_ok_and(|s| s == *target)
}

/// Finds `k = (S_B − S_A)/n²` with `B = A + kJ_n`, which holds exactly when
/// `A⊘B = B⊘A`.
pub fn commutation_shift<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
) -> Result<Option<ShiftWitness<T>>> {
    let n = same_order(&[a, b])?;
    let diff = b.entry_sum()?.checked_sub(a.entry_sum()?)?;
    let Some(k) = diff.div_exact(T::from_usize(n * n)?) else {
        return Ok(None);
    };
    Ok(shifted_eq(b, a, k).then_some(ShiftWitness { k }))
}

/// Finds `k` with `A = kJ_m` and `B = −kJ_n`; in that case `A⊘B = 0`.
///
/// When both orders are at least 2 this is the only way for `A⊘B` to be
/// diagonal. With an order-1 factor the product is `B + a·J` (or `A + b·J`),
/// which can be diagonal without the factors being constant.
pub fn diagonal_witness<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
) -> Result<Option<ShiftWitness<T>>> {
    a.order()?;
    b.order()?;
    let k = a.get(0, 0);
    let neg_k = k.checked_neg()?;
    let holds = a.constant_value(0.0) == Some(k) && b.constant_value(0.0) == Some(neg_k);
    Ok(holds.then_some(ShiftWitness { k }))
}

fn structure_tol<T: Scalar>(ms: &[&Matrix<T>]) -> f64 {
    1e-12 * ms.iter().map(|m| m.max_modulus()).fold(0.0, f64::max)
}

/// `(pred(A), pred(B), pred(A⊘B))`, each evaluated directly.
///
/// For symmetry the third component is always the AND of the first two.
/// For skew-symmetry the forward direction holds, but the converse only
/// holds up to a shift: `J⊘(−J) = 0` is skew while `J` is not. See
/// [`skew_shift_witness`].
pub fn structure_check<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    kind: StructureKind,
) -> Result<(bool, bool, bool)> {
    let product = a.cartesian(b)?;
    let tol = structure_tol(&[a, b]);
    let pred = |m: &Matrix<T>| match kind {
        StructureKind::Symmetric => m.is_symmetric(tol),
        StructureKind::Skew => m.is_skew_symmetric(tol),
    };
    Ok((pred(a), pred(b), pred(&product)))
}

/// Finds `k` such that `A − kJ` and `B + kJ` are both skew-symmetric.
///
/// `A⊘B` is skew-symmetric exactly when such a `k` exists, since
/// `A⊘B = (A − kJ)⊘(B + kJ)`.
pub fn skew_shift_witness<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
) -> Result<Option<ShiftWitness<T>>> {
    a.order()?;
    b.order()?;
    let k = a.get(0, 0);
    let tol = structure_tol(&[a, b]);
    let a_shift = a.shift(k.checked_neg()?)?;
    let b_shift = b.shift(k)?;
    let holds = a_shift.is_skew_symmetric(tol) && b_shift.is_skew_symmetric(tol);
    Ok(holds.then_some(ShiftWitness { k }))
}

/// Constant row sums of `A`, `B` and `A⊘B`, each `None` when rows differ.
pub fn constant_row_sum_check<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
) -> Result<(Option<T>, Option<T>, Option<T>)> {
    let tol = structure_tol(&[a, b]);
    let constant = |sums: Vec<T>| -> Option<T> {
        let first = sums[0];
        sums.iter()
            .all(|&s| s.close_to(first, tol))
            .then_some(first)
    };
    let product = a.cartesian(b)?;
    Ok((
        constant(a.row_sums()?),
        constant(b.row_sums()?),
        constant(product.row_sums()?),
    ))
}

/// Row sums of `A⊘B` from those of the factors: row `i·n + j` sums to
/// `n·A_i + m·B_j`.
pub fn cartesian_row_sums_closed_form<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Vec<T>> {
    let (m, n) = (a.order()?, b.order()?);
    let (ra, rb) = (a.row_sums()?, b.row_sums()?);
    let (tn, tm) = (T::from_usize(n)?, T::from_usize(m)?);
    let mut out = Vec::with_capacity(m * n);
    for &ai in &ra {
        for &bj in &rb {
            out.push(tn.checked_mul(ai)?.checked_add(tm.checked_mul(bj)?)?);
        }
    }
    Ok(out)
}

/// Whether the all-ones vector is an eigenvector of `A`, `B` and `A⊘B`.
pub fn all_ones_eigenvector_check<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
) -> Result<(bool, bool, bool)> {
    let tol = structure_tol(&[a, b]);
    let is_eigen = |m: &Matrix<T>| -> Result<bool> {
        let image = m.matmul(&Matrix::ones(m.cols(), 1)?)?;
        Ok(image.constant_value(tol).is_some())
    };
    Ok((is_eigen(a)?, is_eigen(b)?, is_eigen(&a.cartesian(b)?)?))
}
