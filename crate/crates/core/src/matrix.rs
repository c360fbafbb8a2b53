//! Dense matrices over a [`Field`] with exact Gauss–Jordan elimination.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Reduced row echelon form together with its rank and pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: MatrixFq,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Wire form: `{rows, cols, entries}` with canonical integer element codes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u64>>,
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl MatrixFq {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|x| x.index() >= field.order()) {
            return Err(Error::ElementOutOfRange(bad.index() as u64, field.order()));
        }
        Ok(Self {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    /// Builds from row vectors; all rows must share a length. `cols` is
    /// needed to shape a matrix with no rows.
    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<FieldElement>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::new(field, rows.len(), cols, data)
    }

    /// Builds from canonical integer codes. Rows must be rectangular.
    pub fn from_ints(field: &Field, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.element(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(field, cols, &parsed)
    }

    pub fn to_ints(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.index() as u64).collect())
            .collect()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.to_ints(),
        }
    }

    pub fn from_json(field: &Field, json: &MatrixJson) -> Result<Self> {
        if json.entries.len() != json.rows || json.entries.iter().any(|r| r.len() != json.cols) {
            return Err(Error::Parse(format!(
                "entries do not match declared shape {}x{}",
                json.rows, json.cols
            )));
        }
        let data = json
            .entries
            .iter()
            .flatten()
            .map(|&x| field.element(x))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, json.rows, json.cols, data)
    }

    pub fn field(&self) -> &Field {
        &self.field
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: FieldElement) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn check_field(&self, other: &MatrixFq) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn transpose(&self) -> MatrixFq {
        let mut t = MatrixFq::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &MatrixFq) -> Result<MatrixFq> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = MatrixFq::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let cur = out.get(r, c);
                    out.set(r, c, f.add(cur, f.mul(a, other.get(k, c))));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &MatrixFq) -> Result<MatrixFq> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} plus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(MatrixFq {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, s: FieldElement) -> MatrixFq {
        let f = &self.field;
        MatrixFq {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(s, a)).collect(),
        }
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} times {}x{}",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(r, c)));
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Gauss–Jordan elimination; the pivot in each column is the first
    /// nonzero entry at or below the current row.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(row, c);
                m.set(row, c, f.mul(inv, v));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn det(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "determinant of {}x{}",
                self.rows, self.cols
            )));
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = FieldElement::ONE;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(FieldElement::ZERO);
            };
            if p != col {
                m.swap_rows(col, p);
                det = f.neg(det);
            }
            let pivot = m.get(col, col);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot)?;
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), inv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<MatrixFq> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "inverse of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = MatrixFq::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, FieldElement::ONE);
        }
        let red = aug.rref();
        if red.pivots.iter().copied().take(n).ne(0..n) || red.rank < n {
            return Err(Error::Singular);
        }
        let mut inv = MatrixFq::zeros(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.matrix.get(r, n + c));
            }
        }
        Ok(inv)
    }

    /// Basis of `{y : A yᵀ = 0}`, returned in reduced row echelon form.
    pub fn nullspace_right(&self) -> Vec<Vec<FieldElement>> {
        let f = &self.field;
        let red = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !red.pivots.contains(c)).collect();
        let raw: Vec<Vec<FieldElement>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![FieldElement::ZERO; self.cols];
                v[fc] = FieldElement::ONE;
                for (i, &pc) in red.pivots.iter().enumerate() {
                    v[pc] = f.neg(red.matrix.get(i, fc));
                }
                v
            })
            .collect();
        echelon_basis(f, self.cols, &raw)
    }

    /// Basis of `{c : c A = 0}`, returned in reduced row echelon form.
    pub fn nullspace_left(&self) -> Vec<Vec<FieldElement>> {
        self.transpose().nullspace_right()
    }
}

/// Nonzero rows of the RREF of the given vectors: a canonical basis of their span.
pub fn echelon_basis(
    field: &Field,
    len: usize,
    vectors: &[Vec<FieldElement>],
) -> Vec<Vec<FieldElement>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = MatrixFq::from_rows(field, len, vectors).expect("vectors share a length");
    let red = m.rref();
    (0..red.rank).map(|r| red.matrix.row(r).to_vec()).collect()
}
