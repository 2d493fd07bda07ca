//! Matrix JSON documents.
//!
//! ```json
//! {"rows": 2, "cols": 2, "mode": "exact", "entries": [[1,0],[2,0],[3,0],[4,-1]]}
//! ```
//!
//! Entries are `[re, im]` pairs in row-major order. Exact entries must be
//! integral.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::error::{Error, Result};
use crate::matrix::{ApproxMatrix, ExactMatrix, Matrix};
use crate::scalar::{Gaussian, Mode, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub mode: Mode,
    pub entries: Vec<[Number; 2]>,
}

/// A matrix of either mode, as read from a document.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Exact(ExactMatrix),
    Approx(ApproxMatrix),
}

impl<T: Scalar> Matrix<T> {
    /// Document form; fails only for non-finite approximate entries.
    pub fn to_doc(&self) -> Result<MatrixDoc> {
        let entries = self
            .as_slice()
            .iter()
            .map(|&a| {
                a.json_components()
                    .ok_or_else(|| Error::Parse(format!("non-finite entry {a}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MatrixDoc {
            rows: self.rows(),
            cols: self.cols(),
            mode: T::MODE,
            entries,
        })
    }
}

fn component(n: &Number, mode: Mode) -> Result<f64> {
    if mode == Mode::Exact && !(n.is_i64() || n.is_u64()) {
        let v = n.as_f64().unwrap_or(f64::NAN);
        if v.fract() != 0.0 || !v.is_finite() {
            return Err(Error::Parse(format!(
                "exact entry component {n} is not integral"
            )));
        }
    }
    n.as_f64()
        .ok_or_else(|| Error::Parse(format!("bad number {n}")))
}

fn exact_component(n: &Number) -> Result<i64> {
    if let Some(v) = n.as_i64() {
        return Ok(v);
    }
    if n.is_u64() {
        return Err(Error::Overflow);
    }
    let v = component(n, Mode::Exact)?;
    Gaussian::from_parts(v, 0.0).map(|g| g.re)
}

impl MatrixDoc {
    fn check_shape(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::Parse("rows and cols must be positive".into()));
        }
        if self.entries.len() != self.rows * self.cols {
            return Err(Error::Parse(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                self.rows * self.cols,
                self.rows,
                self.cols,
                self.entries.len()
            )));
        }
        Ok(())
    }

    pub fn to_any(&self) -> Result<AnyMatrix> {
        self.check_shape()?;
        match self.mode {
            Mode::Exact => {
                let data = self
                    .entries
                    .iter()
                    .map(|[re, im]| Ok(Gaussian::new(exact_component(re)?, exact_component(im)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnyMatrix::Exact(Matrix::from_vec(
                    self.rows, self.cols, data,
                )?))
            }
            Mode::Approx => {
                let data = self
                    .entries
                    .iter()
                    .map(|[re, im]| {
                        Ok(Complex64::new(
                            component(re, Mode::Approx)?,
                            component(im, Mode::Approx)?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(AnyMatrix::Approx(Matrix::from_vec(
                    self.rows, self.cols, data,
                )?))
            }
        }
    }
}

impl AnyMatrix {
    pub fn mode(&self) -> Mode {
        match self {
            AnyMatrix::Exact(_) => Mode::Exact,
            AnyMatrix::Approx(_) => Mode::Approx,
        }
    }

    pub fn rows(&self) -> usize {
        match self {
            AnyMatrix::Exact(m) => m.rows(),
            AnyMatrix::Approx(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            AnyMatrix::Exact(m) => m.cols(),
            AnyMatrix::Approx(m) => m.cols(),
        }
    }

    pub fn to_doc(&self) -> Result<MatrixDoc> {
        match self {
            AnyMatrix::Exact(m) => m.to_doc(),
            AnyMatrix::Approx(m) => m.to_doc(),
        }
    }
}

pub fn parse_matrix_json(text: &str) -> Result<AnyMatrix> {
    let doc: MatrixDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_any()
}

pub fn to_matrix_json<T: Scalar>(m: &Matrix<T>) -> Result<String> {
    serde_json::to_string(&m.to_doc()?).map_err(|e| Error::Parse(e.to_string()))
}
