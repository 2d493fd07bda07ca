//! Scalar rings carried by [`Matrix`](crate::Matrix).
//!
//! Two carriers exist: [`Gaussian`] integers for exact, overflow-checked
//! arithmetic, and [`Complex64`] for double-precision work. Both implement
//! [`Scalar`], so every matrix operation and identity is generic over the
//! mode.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arithmetic mode of a matrix or scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Approx,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Approx => "approx",
        })
    }
}

/// Ring operations shared by the exact and approximate carriers.
///
/// Fallible operations return [`Error::Overflow`] in exact mode; the
/// approximate carrier never fails.
pub trait Scalar: Copy + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Builds a scalar from real and imaginary components.
    ///
    /// Exact mode rejects non-integral or out-of-range components.
    fn from_parts(re: f64, im: f64) -> Result<Self>;

    fn checked_add(self, rhs: Self) -> Result<Self>;
    fn checked_sub(self, rhs: Self) -> Result<Self>;
    fn checked_mul(self, rhs: Self) -> Result<Self>;
    fn checked_neg(self) -> Result<Self>;
    fn checked_conj(self) -> Result<Self>;

    /// Division that is only defined when the quotient lies in the ring.
    ///
    /// Gaussian integers return `None` unless `rhs` divides `self`; the
    /// approximate carrier returns `None` only for a zero divisor.
    fn div_exact(self, rhs: Self) -> Option<Self>;

    fn to_complex(self) -> Complex64;

    /// `[re, im]` as JSON numbers: integers in exact mode, floats otherwise.
    /// Non-finite approximate components have no JSON form.
    fn json_components(self) -> Option<[serde_json::Number; 2]>;

    fn modulus(self) -> f64 {
        self.to_complex().norm()
    }

    fn is_zero(self) -> bool {
        self == Self::zero()
    }

    /// Equality up to an absolute tolerance; exact mode ignores `tol`.
    fn close_to(self, other: Self, tol: f64) -> bool;

    fn from_usize(v: usize) -> Result<Self> {
        i64::try_from(v)
            .map(Self::from_i64)
            .map_err(|_| Error::Overflow)
    }
}

/// A Gaussian integer `re + im·i` with checked `i64` components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Gaussian {
    pub re: i64,
    pub im: i64,
}

impl Gaussian {
    pub const I: Gaussian = Gaussian { re: 0, im: 1 };

    pub const fn new(re: i64, im: i64) -> Self {
        Gaussian { re, im }
    }

    pub const fn real(re: i64) -> Self {
        Gaussian { re, im: 0 }
    }
}

impl From<i64> for Gaussian {
    fn from(v: i64) -> Self {
        Gaussian::real(v)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, im) => write!(f, "{im}i"),
            (re, im) if im < 0 => write!(f, "{re}{im}i"),
            (re, im) => write!(f, "{re}+{im}i"),
        }
    }
}

fn ck(v: Option<i64>) -> Result<i64> {
    v.ok_or(Error::Overflow)
}

fn integral_component(v: f64) -> Result<i64> {
    if !v.is_finite() || v.fract() != 0.0 {
        return Err(Error::Parse(format!(
            "exact entry component {v} is not integral"
        )));
    }
    let limit = -(i64::MIN as f64);
    if !(-limit..limit).contains(&v) {
        return Err(Error::Overflow);
    }
    Ok(v as i64)
}

impl Scalar for Gaussian {
    const MODE: Mode = Mode::Exact;

    fn zero() -> Self {
        Gaussian::new(0, 0)
    }

    fn one() -> Self {
        Gaussian::new(1, 0)
    }

    fn from_i64(v: i64) -> Self {
        Gaussian::real(v)
    }

    fn from_parts(re: f64, im: f64) -> Result<Self> {
        Ok(Gaussian::new(
            integral_component(re)?,
            integral_component(im)?,
        ))
    }

    fn checked_add(self, rhs: Self) -> Result<Self> {
        Ok(Gaussian::new(
            ck(self.re.checked_add(rhs.re))?,
            ck(self.im.checked_add(rhs.im))?,
        ))
    }

    fn checked_sub(self, rhs: Self) -> Result<Self> {
        Ok(Gaussian::new(
            ck(self.re.checked_sub(rhs.re))?,
            ck(self.im.checked_sub(rhs.im))?,
        ))
    }

    fn checked_mul(self, rhs: Self) -> Result<Self> {
        let (a, b, c, d) = (self.re, self.im, rhs.re, rhs.im);
        let re = ck(ck(a.checked_mul(c))?.checked_sub(ck(b.checked_mul(d))?))?;
        let im = ck(ck(a.checked_mul(d))?.checked_add(ck(b.checked_mul(c))?))?;
        Ok(Gaussian::new(re, im))
    }

    fn checked_neg(self) -> Result<Self> {
        Ok(Gaussian::new(
            ck(self.re.checked_neg())?,
            ck(self.im.checked_neg())?,
        ))
    }

    fn checked_conj(self) -> Result<Self> {
        Ok(Gaussian::new(self.re, ck(self.im.checked_neg())?))
    }

    fn div_exact(self, rhs: Self) -> Option<Self> {
        // (a+bi)/(c+di) = (a+bi)(c-di) / (c²+d²)
        let (a, b, c, d) = (
            i128::from(self.re),
            i128::from(self.im),
            i128::from(rhs.re),
            i128::from(rhs.im),
        );
        let norm = c * c + d * d;
        if norm == 0 {
            return None;
        }
        let re = a * c + b * d;
        let im = b * c - a * d;
        if re % norm != 0 || im % norm != 0 {
            return None;
        }
        Some(Gaussian::new(
            i64::try_from(re / norm).ok()?,
            i64::try_from(im / norm).ok()?,
        ))
    }

    fn to_complex(self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }

    fn json_components(self) -> Option<[serde_json::Number; 2]> {
        Some([self.re.into(), self.im.into()])
    }

    fn close_to(self, other: Self, _tol: f64) -> bool {
        self == other
    }
}

impl Scalar for Complex64 {
    const MODE: Mode = Mode::Approx;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn from_parts(re: f64, im: f64) -> Result<Self> {
        Ok(Complex64::new(re, im))
    }

    fn checked_add(self, rhs: Self) -> Result<Self> {
        Ok(self + rhs)
    }

    fn checked_sub(self, rhs: Self) -> Result<Self> {
        Ok(self - rhs)
    }

    fn checked_mul(self, rhs: Self) -> Result<Self> {
        Ok(self * rhs)
    }

    fn checked_neg(self) -> Result<Self> {
        Ok(-self)
    }

    fn checked_conj(self) -> Result<Self> {
        Ok(self.conj())
    }

    fn div_exact(self, rhs: Self) -> Option<Self> {
        (rhs != Complex64::new(0.0, 0.0)).then(|| self / rhs)
    }

    fn to_complex(self) -> Complex64 {
        self
    }

    fn json_components(self) -> Option<[serde_json::Number; 2]> {
        Some([
            serde_json::Number::from_f64(self.re)?,
            serde_json::Number::from_f64(self.im)?,
        ])
    }

    fn close_to(self, other: Self, tol: f64) -> bool {
        (self - other).norm() <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_mul_and_conj() {
        let z = Gaussian::new(2, 3);
        let w = Gaussian::new(-1, 4);
        assert_eq!(z.checked_mul(w).unwrap(), Gaussian::new(-14, 5));
        assert_eq!(Gaussian::I.checked_conj().unwrap(), Gaussian::new(0, -1));
        assert_eq!(
            Gaussian::I.checked_mul(Gaussian::I).unwrap(),
            Gaussian::real(-1)
        );
    }

    #[test]
    fn overflow_is_an_error() {
        let big = Gaussian::real(i64::MAX);
        assert_eq!(big.checked_add(Gaussian::one()), Err(Error::Overflow));
        assert_eq!(big.checked_mul(Gaussian::real(2)), Err(Error::Overflow));
        assert_eq!(Gaussian::real(i64::MIN).checked_neg(), Err(Error::Overflow));
    }

    #[test]
    fn exact_division() {
        let z = Gaussian::new(-14, 5);
        assert_eq!(z.div_exact(Gaussian::new(2, 3)), Some(Gaussian::new(-1, 4)));
        assert_eq!(
            Gaussian::real(12).div_exact(Gaussian::real(4)),
            Some(Gaussian::real(3))
        );
        assert_eq!(Gaussian::real(5).div_exact(Gaussian::real(4)), None);
        assert_eq!(Gaussian::real(5).div_exact(Gaussian::zero()), None);
    }

    #[test]
    fn exact_parts_must_be_integral() {
        assert_eq!(
            Gaussian::from_parts(3.0, -2.0).unwrap(),
            Gaussian::new(3, -2)
        );
        assert!(matches!(
            Gaussian::from_parts(0.5, 0.0),
            Err(Error::Parse(_))
        ));
        assert!(Gaussian::from_parts(1e300, 0.0).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Gaussian::new(3, 0).to_string(), "3");
        assert_eq!(Gaussian::new(0, -1).to_string(), "-1i");
        assert_eq!(Gaussian::new(2, -5).to_string(), "2-5i");
        assert_eq!(Gaussian::new(2, 5).to_string(), "2+5i");
    }
}
