//! Seeded randomized campaigns over every identity and structure theorem.
//!
//! Each trial draws exact Gaussian-integer matrices with components uniform
//! in `[-9, 9]` and orders uniform in `1..=max_order`. Trial `i` is
//! structured when `i % 4 == 0` (special shapes that land on the "true"
//! side of the iff theorems) and perturbed when `i % 4 == 1` (a structured
//! draw with one entry bumped, landing on the "false" side).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::identities::*;
use crate::io::MatrixDoc;
use crate::matrix::{cartesian_chain, commutation_matrix, kron_chain, Dims, ExactMatrix};
use crate::scalar::{Gaussian, Scalar};

pub const MAX_COUNTEREXAMPLES: usize = 5;
pub const ENTRY_BOUND: i64 = 9;
pub const MAX_ORDER_LIMIT: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialKind {
    Uniform,
    Structured,
    Perturbed,
}

impl TrialKind {
    pub fn of(index: usize) -> Self {
        match index % 4 {
            0 => TrialKind::Structured,
            1 => TrialKind::Perturbed,
            _ => TrialKind::Uniform,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub kind: TrialKind,
    pub detail: String,
    pub inputs: Vec<MatrixDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub trials: usize,
    pub failures: usize,
    pub seed: u64,
    pub max_order: usize,
    pub structured: usize,
    pub perturbed: usize,
    pub counterexamples: Vec<Counterexample>,
}

/// Per-trial generator state and the inputs drawn so far.
pub struct Trial {
    rng: ChaCha8Rng,
    kind: TrialKind,
    max_order: usize,
    inputs: Vec<ExactMatrix>,
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

fn g(v: i64) -> Gaussian {
    Gaussian::real(v)
}

impl Trial {
    pub fn new(seed: u64, suite: &str, index: usize, max_order: usize) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        key[8..16].copy_from_slice(&fnv1a(suite).to_le_bytes());
        key[16..24].copy_from_slice(&(index as u64).to_le_bytes());
        Trial {
            rng: ChaCha8Rng::from_seed(key),
            kind: TrialKind::of(index),
            max_order,
            inputs: Vec::new(),
        }
    }

    fn structured(&self) -> bool {
        self.kind != TrialKind::Uniform
    }

    fn perturbed(&self) -> bool {
        self.kind == TrialKind::Perturbed
    }

    fn count(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    fn order(&mut self) -> usize {
        self.count(1, self.max_order)
    }

    fn component(&mut self) -> i64 {
        self.rng.random_range(-ENTRY_BOUND..=ENTRY_BOUND)
    }

    fn entry(&mut self) -> Gaussian {
        Gaussian::new(self.component(), self.component())
    }

    fn keep(&mut self, m: ExactMatrix) -> ExactMatrix {
        self.inputs.push(m.clone());
        m
    }

    /// Draws a scalar and records it as a 1×1 input.
    fn scalar(&mut self) -> Result<Gaussian> {
        let k = self.entry();
        self.keep(ExactMatrix::filled(1, 1, k)?);
        Ok(k)
    }

    fn uniform(&mut self, n: usize) -> Result<ExactMatrix> {
        ExactMatrix::from_fn(n, n, |_, _| self.entry())
    }

    fn symmetric(&mut self, n: usize) -> Result<ExactMatrix> {
        let mut m = self.uniform(n)?;
        for i in 0..n {
            for j in 0..i {
                m.set(i, j, m.get(j, i));
            }
        }
        Ok(m)
    }

    fn skew(&mut self, n: usize) -> Result<ExactMatrix> {
        let mut m = self.uniform(n)?;
        for i in 0..n {
            m.set(i, i, Gaussian::default());
            for j in 0..i {
                m.set(i, j, m.get(j, i).checked_neg()?);
            }
        }
        Ok(m)
    }

    /// Every row sums to the same random value.
    fn constant_row_sums(&mut self, n: usize) -> Result<ExactMatrix> {
        let target = self.entry();
        let mut m = self.uniform(n)?;
        for i in 0..n {
            let partial = m.row(i)[..n - 1]
                .iter()
                .try_fold(Gaussian::default(), |acc, &x| acc.checked_add(x))?;
            m.set(i, n - 1, target.checked_sub(partial)?);
        }
        Ok(m)
    }

    /// A uniform draw, or for non-uniform trials one of the special shapes
    /// (symmetric, skew, `kJ`, constant row sums), bumped once if perturbed.
    fn matrix(&mut self, n: usize) -> Result<ExactMatrix> {
        let m = if self.structured() {
            let m = match self.count(0, 3) {
                0 => self.symmetric(n)?,
                1 => self.skew(n)?,
                2 => {
                    let k = self.entry();
                    ExactMatrix::filled(n, n, k)?
                }
                _ => self.constant_row_sums(n)?,
            };
            if self.perturbed() {
                bump(&m, 0, n - 1)?
            } else {
                m
            }
        } else {
            self.uniform(n)?
        };
        Ok(self.keep(m))
    }
}

/// `m` with 1 added to entry `(i, j)`.
fn bump(m: &ExactMatrix, i: usize, j: usize) -> Result<ExactMatrix> {
    let mut out = m.clone();
    out.set(i, j, m.get(i, j).checked_add(g(1))?);
    Ok(out)
}

fn jm(n: usize) -> Result<ExactMatrix> {
    ExactMatrix::ones(n, n)
}

type Outcome = Result<Option<String>>;
type SuiteFn = fn(&mut Trial) -> Outcome;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Ok(Some(format!($($fmt)+)));
        }
    };
}

fn trace_cartesian(t: &mut Trial) -> Outcome {
    let count = t.count(1, 3);
    let mut factors = Vec::new();
    let mut scaled = Vec::new();
    for _ in 0..count {
        let n = t.order();
        let a = t.matrix(n)?;
        let k = t.scalar()?;
        scaled.push(a.scale(k)?);
        factors.push(WeightedFactor::new(k, a)?);
    }
    let direct = cartesian_chain(&scaled)?.trace()?;
    let formula = trace_cartesian_closed_form(&factors)?;
    ensure!(
        direct == formula,
        "direct trace {direct}, closed form {formula}"
    );
    Ok(None)
}

fn trace_pair(t: &mut Trial) -> Outcome {
    let (m, n) = (t.order(), t.order());
    let (a, b) = (t.matrix(m)?, t.matrix(n)?);
    let direct = a.cartesian(&b)?.trace()?;
    let formula = trace_pair_closed_form(&a, &b)?;
    ensure!(
        direct == formula,
        "direct trace {direct}, closed form {formula}"
    );
    Ok(None)
}

fn trace_power(t: &mut Trial) -> Outcome {
    let n = t.order();
    let a = t.matrix(n)?;
    let k = t.count(1, 3);
    let direct = a.cartesian_power(k)?.trace()?;
    let formula = trace_power_closed_form(&a, k)?;
    ensure!(
        direct == formula,
        "k = {k}: direct trace {direct}, closed form {formula}"
    );
    Ok(None)
}

fn trace_plus_minus(t: &mut Trial) -> Outcome {
    let n = t.order();
    let (a, b) = (t.matrix(n)?, t.matrix(n)?);
    let direct = a.add(&b)?.cartesian(&a.sub(&b)?)?.trace()?;
    let formula = trace_plus_minus_closed_form(&a, &b)?;
    ensure!(
        direct == formula,
        "direct trace {direct}, closed form {formula}"
    );
    Ok(None)
}

fn trace_kron_cartesian(t: &mut Trial) -> Outcome {
    let m = t.order();
    let a = t.matrix(m)?;
    let n = t.order();
    let count = t.count(1, 3);
    let bs = (0..count)
        .map(|_| t.matrix(n))
        .collect::<Result<Vec<_>>>()?;
    let direct = a.kron(&cartesian_chain(&bs)?)?.trace()?;
    let formula = trace_kron_with_cartesian_closed_form(&a, &bs)?;
    ensure!(
        direct == formula,
        "direct trace {direct}, closed form {formula}"
    );
    Ok(None)
}

/// One to three factors split into consecutive non-empty groups.
fn grouping(t: &mut Trial) -> Result<Vec<Vec<ExactMatrix>>> {
    let count = t.count(1, 3);
    let mut groups: Vec<Vec<ExactMatrix>> = vec![Vec::new()];
    for i in 0..count {
        if i > 0 && t.rng.random_bool(0.5) {
            groups.push(Vec::new());
        }
        let n = t.order();
        let a = t.matrix(n)?;
        groups.last_mut().expect("non-empty").push(a);
    }
    Ok(groups)
}

fn trace_kron_of_cartesian(t: &mut Trial) -> Outcome {
    let groups = grouping(t)?;
    let inner = groups
        .iter()
        .map(|g| cartesian_chain(g))
        .collect::<Result<Vec<_>>>()?;
    let direct = kron_chain(&inner)?.trace()?;
    let formula = trace_kron_of_cartesian_groups(&FactorGrouping::new(groups)?)?;
    ensure!(
        direct == formula,
        "direct trace {direct}, closed form {formula}"
    );
    Ok(None)
}

fn trace_cartesian_of_kron(t: &mut Trial) -> Outcome {
    let groups = grouping(t)?;
    let inner = groups
        .iter()
        .map(|g| kron_chain(g))
        .collect::<Result<Vec<_>>>()?;
    let direct = cartesian_chain(&inner)?.trace()?;
    let formula = trace_cartesian_of_kron_groups(&FactorGrouping::new(groups)?)?;
    ensure!(
        direct == formula,
        "direct trace {direct}, closed form {formula}"
    );
    Ok(None)
}

fn entry_sum(t: &mut Trial) -> Outcome {
    let (m, n) = (t.order(), t.order());
    let (a, b) = (t.matrix(m)?, t.matrix(n)?);
    let direct = a.cartesian(&b)?.entry_sum()?;
    let formula = entry_sum_cartesian_closed_form(&a, &b)?;
    ensure!(
        direct == formula,
        "cartesian: direct sum {direct}, closed form {formula}"
    );
    let direct = a.kron(&b)?.entry_sum()?;
    let formula = entry_sum_kron_closed_form(&a, &b)?;
    ensure!(
        direct == formula,
        "kronecker: direct sum {direct}, closed form {formula}"
    );
    Ok(None)
}

fn four_of_one_order(t: &mut Trial) -> Result<[ExactMatrix; 4]> {
    let n = t.order();
    Ok([t.matrix(n)?, t.matrix(n)?, t.matrix(n)?, t.matrix(n)?])
}

fn product_identity(t: &mut Trial) -> Outcome {
    let [a, b, c, d] = four_of_one_order(t)?;
    ensure!(
        product_identity_residual(&a, &b, &c, &d)?.is_zero(0.0),
        "non-zero residual"
    );
    Ok(None)
}

fn hadamard_identity(t: &mut Trial) -> Outcome {
    let [a, b, c, d] = four_of_one_order(t)?;
    ensure!(
        hadamard_identity_residual(&a, &b, &c, &d)?.is_zero(0.0),
        "non-zero residual"
    );
    Ok(None)
}

fn distributivity(t: &mut Trial) -> Outcome {
    let (m, n) = (t.order(), t.order());
    let (a, b, c) = (t.matrix(m)?, t.matrix(m)?, t.matrix(n)?);
    let (left, right) = distributivity_residuals(&a, &b, &c)?;
    ensure!(left.is_zero(0.0), "non-zero residual for (A+B)⊘C");
    ensure!(right.is_zero(0.0), "non-zero residual for C⊘(A+B)");
    Ok(None)
}

fn sum_cartesian(t: &mut Trial) -> Outcome {
    let slots = t.count(1, 3);
    let orders: Vec<usize> = (0..slots).map(|_| t.order()).collect();
    let terms = t.count(1, 3);
    let tuples = (0..terms)
        .map(|_| {
            orders
                .iter()
                .map(|&n| t.matrix(n))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    ensure!(
        sum_cartesian_residual(&tuples)?.is_zero(0.0),
        "non-zero residual"
    );
    Ok(None)
}

fn transpose_conjugate(t: &mut Trial) -> Outcome {
    let count = t.count(1, 3);
    let factors = (0..count).map(|_| {
        let n = t.order();
        t.matrix(n)
    });
    let factors = factors.collect::<Result<Vec<_>>>()?;
    let chain = cartesian_chain(&factors)?;
    let transposed = factors
        .iter()
        .map(ExactMatrix::transpose)
        .collect::<Vec<_>>();
    ensure!(
        chain.transpose() == cartesian_chain(&transposed)?,
        "transpose does not distribute"
    );
    let conjugated = factors
        .iter()
        .map(ExactMatrix::conj_transpose)
        .collect::<Result<Vec<_>>>()?;
    ensure!(
        chain.conj_transpose()? == cartesian_chain(&conjugated)?,
        "conjugate transpose does not distribute"
    );
    Ok(None)
}

fn permutation_similarity(t: &mut Trial) -> Outcome {
    let (m, n) = (t.order(), t.order());
    let (a, b) = (t.matrix(m)?, t.matrix(n)?);
    let p = commutation_matrix::<Gaussian>(Dims::new(m, n)?)?;
    let pt = p.transpose();
    ensure!(
        pt.matmul(&p)? == ExactMatrix::identity(m * n)?,
        "commutation matrix is not orthogonal"
    );
    ensure!(
        pt.matmul(&a.cartesian(&b)?)?.matmul(&p)? == b.cartesian(&a)?,
        "Pᵀ(A⊘B)P differs from B⊘A"
    );
    ensure!(
        pt.matmul(&a.kron(&b)?)?.matmul(&p)? == b.kron(&a)?,
        "Pᵀ(A⊗B)P differs from B⊗A"
    );
    Ok(None)
}

fn scalar_remarks(t: &mut Trial) -> Outcome {
    let (m, n) = (t.order(), t.order());
    let (a, b) = (t.matrix(m)?, t.matrix(n)?);
    let k = t.scalar()?;
    ensure!(
        a.scale(k)?.cartesian(&b.scale(k)?)? == a.cartesian(&b)?.scale(k)?,
        "kA⊘kB differs from k(A⊘B)"
    );
    let kk = ExactMatrix::filled(1, 1, k)?;
    let shifted = a.shift(k)?;
    ensure!(kk.cartesian(&a)? == shifted, "[k]⊘A differs from A + kJ");
    ensure!(a.cartesian(&kk)? == shifted, "A⊘[k] differs from A + kJ");
    Ok(None)
}

fn kron_lemmas(t: &mut Trial) -> Outcome {
    let (m, n, p) = (t.order(), t.order(), t.order());
    let (a, b, c) = (t.matrix(m)?, t.matrix(n)?, t.matrix(p)?);
    let (a2, b2) = (t.matrix(m)?, t.matrix(n)?);
    ensure!(
        a.cartesian(&b)? == a.kron(&jm(n)?)?.add(&jm(m)?.kron(&b)?)?,
        "A⊘B differs from A⊗J + J⊗B"
    );
    ensure!(
        a.kron(&b)?.trace()? == a.trace()?.checked_mul(b.trace()?)?,
        "tr(A⊗B) differs from tr(A)·tr(B)"
    );
    ensure!(
        a.kron(&b)?.matmul(&a2.kron(&b2)?)? == a.matmul(&a2)?.kron(&b.matmul(&b2)?)?,
        "mixed product rule fails"
    );
    ensure!(
        a.kron(&b)?.kron(&c)? == a.kron(&b.kron(&c)?)?,
        "kronecker product is not associative"
    );
    ensure!(
        a.cartesian(&b)?.cartesian(&c)? == a.cartesian(&b.cartesian(&c)?)?,
        "cartesian product is not associative"
    );
    Ok(None)
}

/// Draws factors of orders `(m, n)`: for structured symmetric trials both
/// are symmetric, and a perturbed trial breaks the first factor of order at
/// least 2.
fn symmetric(t: &mut Trial) -> Outcome {
    let (m, n) = (t.order(), t.order());
    let (mut a, mut b) = if t.structured() {
        (t.symmetric(m)?, t.symmetric(n)?)
    } else {
        (t.uniform(m)?, t.uniform(n)?)
    };
    let mut broken = false;
    if t.perturbed() {
        if m >= 2 {
            a = bump(&a, 0, 1)?;
            broken = true;
        } else if n >= 2 {
            b = bump(&b, 0, 1)?;
            broken = true;
        }
    }
    let (a, b) = (t.keep(a), t.keep(b));
    let (sa, sb, sp) = structure_check(&a, &b, StructureKind::Symmetric)?;
    ensure!(
        sp == (sa && sb),
        "symmetry of A⊘B is {sp}, factors are ({sa}, {sb})"
    );
    if t.kind == TrialKind::Structured {
        ensure!(sp, "symmetric factors gave a non-symmetric product");
    }
    if broken {
        ensure!(!sp, "perturbed factor still gave a symmetric product");
    }
    Ok(None)
}

/// Structured trials are skew pairs, half of them shifted to `(A + kJ,
/// B − kJ)`; perturbed trials bump a diagonal entry.
fn skew_symmetric(t: &mut Trial) -> Outcome {
    let (m, n) = (t.order(), t.order());
    let (mut a, mut b) = if t.structured() {
        (t.skew(m)?, t.skew(n)?)
    } else {
        (t.uniform(m)?, t.uniform(n)?)
    };
    if t.structured() && t.rng.random_bool(0.5) {
        let k = t.entry();
        a = a.shift(k)?;
        b = b.shift(k.checked_neg()?)?;
    }
    if t.perturbed() {
        a = bump(&a, 0, 0)?;
    }
    let (a, b) = (t.keep(a), t.keep(b));
    let (sa, sb, sp) = structure_check(&a, &b, StructureKind::Skew)?;
    let witness = skew_shift_witness(&a, &b)?;
    ensure!(!(sa && sb) || sp, "skew factors gave a non-skew product");
    ensure!(
        sp == witness.is_some(),
        "product skew is {sp}, shift witness {witness:?}"
    );
    if let Some(w) = witness {
        let a_shift = a.shift(w.k.checked_neg()?)?;
        let b_shift = b.shift(w.k)?;
        ensure!(
            a_shift.is_skew_symmetric(0.0) && b_shift.is_skew_symmetric(0.0),
            "witness k = {} is wrong",
            w.k
        );
    }
    if t.kind == TrialKind::Structured {
        ensure!(sp, "shifted skew factors gave a non-skew product");
    }
    if t.perturbed() {
        ensure!(!sp, "perturbed factors still gave a skew product");
    }
    Ok(None)
}

/// Structured trials are `(kJ_m, −kJ_n)`; perturbed ones bump `a_{11}`.
fn diagonal(t: &mut Trial) -> Outcome {
    let (m, n) = (t.order(), t.order());
    let (mut a, b) = if t.structured() {
        let k = t.entry();
        (
            ExactMatrix::filled(m, m, k)?,
            ExactMatrix::filled(n, n, k.checked_neg()?)?,
        )
    } else {
        (t.uniform(m)?, t.uniform(n)?)
    };
    if t.perturbed() {
        a = bump(&a, 0, 0)?;
    }
    let (a, b) = (t.keep(a), t.keep(b));
    let product = a.cartesian(&b)?;
    let diag = product.is_diagonal(0.0);
    let witness = diagonal_witness(&a, &b)?;
    if let Some(w) = witness {
        ensure!(
            product.is_zero(0.0),
            "witness k = {} but A⊘B is not zero",
            w.k
        );
    }
    if m >= 2 && n >= 2 {
        ensure!(
            diag == witness.is_some(),
            "A⊘B diagonal is {diag}, witness {witness:?}"
        );
    }
    if t.kind == TrialKind::Structured {
        ensure!(witness.is_some() && diag, "(kJ, −kJ) gave no witness");
    }
    if t.perturbed() && n >= 2 {
        ensure!(witness.is_none() && !diag, "perturbed pair still diagonal");
    }
    Ok(None)
}

/// Structured trials are `(A, B, A − kJ, B + kJ)`; perturbed ones bump `d_{11}`.
fn equality_shift_suite(t: &mut Trial) -> Outcome {
    let (m, n) = (t.order(), t.order());
    let (a, b) = (t.matrix(m)?, t.matrix(n)?);
    let (c, mut d) = if t.structured() {
        let k = t.entry();
        (a.shift(k.checked_neg()?)?, b.shift(k)?)
    } else {
        (t.uniform(m)?, t.uniform(n)?)
    };
    if t.perturbed() {
        d = bump(&d, 0, 0)?;
    }
    let (c, d) = (t.keep(c), t.keep(d));
    let equal = a.cartesian(&b)? == c.cartesian(&d)?;
    let witness = equality_shift(&a, &b, &c, &d)?;
    ensure!(
        equal == witness.is_some(),
        "A⊘B = C⊘D is {equal}, witness {witness:?}"
    );
    if let Some(w) = witness {
        ensure!(
            c == a.shift(w.k.checked_neg()?)? && d == b.shift(w.k)?,
            "witness k = {} is wrong",
            w.k
        );
    }
    if t.kind == TrialKind::Structured {
        ensure!(witness.is_some(), "shifted quadruple gave no witness");
    }
    if t.perturbed() {
        ensure!(witness.is_none(), "perturbed quadruple still has a witness");
    }
    Ok(None)
}

/// Structured trials are `(A, A + kJ)`; perturbed ones bump `b_{11}`.
fn commutation_shift_suite(t: &mut Trial) -> Outcome {
    let n = t.order();
    let a = t.matrix(n)?;
    let mut b = if t.structured() {
        let k = t.entry();
        a.shift(k)?
    } else {
        t.uniform(n)?
    };
    if t.perturbed() {
        b = bump(&b, 0, 0)?;
    }
    let b = t.keep(b);
    let commute = a.cartesian(&b)? == b.cartesian(&a)?;
    let witness = commutation_shift(&a, &b)?;
    ensure!(
        commute == witness.is_some(),
        "A⊘B = B⊘A is {commute}, witness {witness:?}"
    );
    if let Some(w) = witness {
        ensure!(b == a.shift(w.k)?, "witness k = {} is wrong", w.k);
    }
    if t.kind == TrialKind::Structured {
        ensure!(witness.is_some(), "B = A + kJ gave no witness");
    }
    if t.perturbed() && n >= 2 {
        ensure!(witness.is_none(), "perturbed pair still commutes");
    }
    Ok(None)
}

/// Shared draw for the row-sum theorems: structured trials have constant
/// row sums; perturbed ones bump an entry of the first factor of order at
/// least 2. Returns whether a factor was broken.
fn row_sum_pair(t: &mut Trial) -> Result<(ExactMatrix, ExactMatrix, bool)> {
    let (m, n) = (t.order(), t.order());
    let (mut a, mut b) = if t.structured() {
        (t.constant_row_sums(m)?, t.constant_row_sums(n)?)
    } else {
        (t.uniform(m)?, t.uniform(n)?)
    };
    let mut broken = false;
    if t.perturbed() {
        if m >= 2 {
            a = bump(&a, 0, 0)?;
            broken = true;
        } else if n >= 2 {
            b = bump(&b, 0, 0)?;
            broken = true;
        }
    }
    Ok((t.keep(a), t.keep(b), broken))
}

fn constant_row_sum(t: &mut Trial) -> Outcome {
    let (a, b, broken) = row_sum_pair(t)?;
    let (m, n) = (a.rows(), b.rows());
    let (ra, rb, rp) = constant_row_sum_check(&a, &b)?;
    ensure!(
        rp.is_some() == (ra.is_some() && rb.is_some()),
        "row sums constant: A {ra:?}, B {rb:?}, A⊘B {rp:?}"
    );
    if let (Some(x), Some(y), Some(z)) = (ra, rb, rp) {
        let expected = Gaussian::from_usize(n)?
            .checked_mul(x)?
            .checked_add(Gaussian::from_usize(m)?.checked_mul(y)?)?;
        ensure!(
            z == expected,
            "row sum {z}, expected n·{x} + m·{y} = {expected}"
        );
    }
    let closed = cartesian_row_sums_closed_form(&a, &b)?;
    ensure!(
        closed == a.cartesian(&b)?.row_sums()?,
        "row sums differ from n·A_i + m·B_j"
    );
    if t.kind == TrialKind::Structured {
        ensure!(
            rp.is_some(),
            "constant-row-sum factors gave varying row sums"
        );
    }
    if broken {
        ensure!(
            rp.is_none(),
            "perturbed factor still gave constant row sums"
        );
    }
    Ok(None)
}

fn all_ones_eigenvector(t: &mut Trial) -> Outcome {
    let (a, b, broken) = row_sum_pair(t)?;
    let (ea, eb, ep) = all_ones_eigenvector_check(&a, &b)?;
    ensure!(
        ep == (ea && eb),
        "all-ones eigenvector: A {ea}, B {eb}, A⊘B {ep}"
    );
    if t.kind == TrialKind::Structured {
        ensure!(ep, "constant-row-sum factors lost the all-ones eigenvector");
    }
    if broken {
        ensure!(!ep, "perturbed factor kept the all-ones eigenvector");
    }
    Ok(None)
}

/// Uniform and perturbed trials factor `A⊘B`; perturbed ones bump one
/// entry, which is only factorizable when an order is 1. Structured trials
/// try `I_{mn}`, which is a product only when `m = 1` or `n = 1`.
fn factorize(t: &mut Trial) -> Outcome {
    let (m, n) = (t.order(), t.order());
    let dims = Dims::new(m, n)?;
    if t.kind == TrialKind::Structured {
        let id = t.keep(ExactMatrix::identity(m * n)?);
        let found = cartesian_factorize(&id, dims)?;
        ensure!(
            found.is_some() == (m == 1 || n == 1),
            "I of order {} with split ({m},{n}): {found:?}",
            m * n
        );
        return Ok(None);
    }
    let (a, b) = (t.matrix(m)?, t.matrix(n)?);
    let mut product = a.cartesian(&b)?;
    if t.perturbed() {
        product = bump(&product, 0, m * n - 1)?;
        let found = cartesian_factorize(&product, dims)?;
        ensure!(
            found.is_some() == (m == 1 || n == 1),
            "perturbed product with split ({m},{n}): {found:?}"
        );
        if let Some((x, y)) = found {
            ensure!(x.cartesian(&y)? == product, "factors do not recompose");
        }
        return Ok(None);
    }
    let Some((x, y)) = cartesian_factorize(&product, dims)? else {
        return Ok(Some("product was not factorized".into()));
    };
    let b11 = b.get(0, 0);
    ensure!(x.cartesian(&y)? == product, "factors do not recompose");
    ensure!(
        y.get(0, 0) == Gaussian::default(),
        "b11 is not normalized to 0"
    );
    ensure!(
        x == a.shift(b11)? && y == b.shift(b11.checked_neg()?)?,
        "not the canonical (A + b11·J, B − b11·J)"
    );
    Ok(None)
}

const SUITES: &[(&str, SuiteFn)] = &[
    ("trace_cartesian", trace_cartesian),
    ("trace_pair", trace_pair),
    ("trace_power", trace_power),
    ("trace_plus_minus", trace_plus_minus),
    ("trace_kron_cartesian", trace_kron_cartesian),
    ("trace_kron_of_cartesian_groups", trace_kron_of_cartesian),
    ("trace_cartesian_of_kron_groups", trace_cartesian_of_kron),
    ("entry_sum", entry_sum),
    ("product_identity", product_identity),
    ("hadamard_identity", hadamard_identity),
    ("distributivity", distributivity),
    ("sum_cartesian", sum_cartesian),
    ("transpose_conjugate", transpose_conjugate),
    ("permutation_similarity", permutation_similarity),
    ("scalar_remarks", scalar_remarks),
    ("kron_lemmas", kron_lemmas),
    ("symmetric", symmetric),
    ("skew_symmetric", skew_symmetric),
    ("diagonal", diagonal),
    ("equality_shift", equality_shift_suite),
    ("commutation_shift", commutation_shift_suite),
    ("constant_row_sum", constant_row_sum),
    ("all_ones_eigenvector", all_ones_eigenvector),
    ("factorize", factorize),
];

/// Names of the structure-theorem suites whose both directions are checked.
pub const IFF_SUITES: &[&str] = &[
    "symmetric",
    "skew_symmetric",
    "diagonal",
    "equality_shift",
    "commutation_shift",
    "constant_row_sum",
    "all_ones_eigenvector",
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|&(name, _)| name)
}

fn check_args(trials: usize, max_order: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if !(1..=MAX_ORDER_LIMIT).contains(&max_order) {
        return Err(Error::InvalidArgument(format!(
            "max order must be in 1..={MAX_ORDER_LIMIT}, got {max_order}"
        )));
    }
    Ok(())
}

fn run_one(
    name: &str,
    suite: SuiteFn,
    trials: usize,
    seed: u64,
    max_order: usize,
    exec: Execution,
) -> VerifyReport {
    let outcomes = exec.map(trials, |index| {
        let mut trial = Trial::new(seed, name, index, max_order);
        let detail = match suite(&mut trial) {
            Ok(None) => return None,
            Ok(Some(detail)) => detail,
            Err(e) => format!("error: {e}"),
        };
        let inputs = trial
            .inputs
            .iter()
            .filter_map(|m| m.to_doc().ok())
            .collect();
        Some(Counterexample {
            trial: index,
            kind: trial.kind,
            detail,
            inputs,
        })
    });
    let failed: Vec<Counterexample> = outcomes.into_iter().flatten().collect();
    VerifyReport {
        suite: name.to_string(),
        trials,
        failures: failed.len(),
        seed,
        max_order,
        structured: (0..trials)
            .filter(|&i| TrialKind::of(i) == TrialKind::Structured)
            .count(),
        perturbed: (0..trials)
            .filter(|&i| TrialKind::of(i) == TrialKind::Perturbed)
            .count(),
        counterexamples: failed.into_iter().take(MAX_COUNTEREXAMPLES).collect(),
    }
}

/// Runs one suite by name, or every suite for `"all"`.
pub fn run_verify(
    suite: &str,
    trials: usize,
    seed: u64,
    max_order: usize,
    exec: Execution,
) -> Result<Vec<VerifyReport>> {
    check_args(trials, max_order)?;
    let selected: Vec<(&str, SuiteFn)> = if suite == "all" {
        SUITES.to_vec()
    } else {
        let found = SUITES.iter().find(|&&(name, _)| name == suite);
        vec![*found.ok_or_else(|| Error::InvalidArgument(format!("unknown suite {suite:?}")))?]
    };
    Ok(selected
        .into_iter()
        .map(|(name, f)| run_one(name, f, trials, seed, max_order, exec))
        .collect())
}
