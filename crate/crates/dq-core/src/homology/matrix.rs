use num::Zero;
use serde::{Deserialize, Serialize};

use super::hpoly::HPoly;
use crate::error::{DqError, Result};
use crate::symbolic::Rat;

/// Dense matrix over Q[h], row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HbarMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<HPoly>,
}

impl HbarMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        HbarMatrix { rows, cols, entries: vec![HPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = HbarMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, HPoly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<HPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        for row in &rows {
            if row.len() != c {
                return Err(DqError::Precondition("ragged matrix rows".into()));
            }
        }
        Ok(HbarMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> HPoly) -> Self {
        let mut m = HbarMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &HPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: HPoly) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(HPoly::is_zero)
    }

    pub fn mul(&self, other: &HbarMatrix) -> Result<HbarMatrix> {
        if self.cols != other.rows {
            return Err(DqError::Precondition(format!(
                "matrix dimensions do not compose: {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = HbarMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Columns `from..` gathered into a new matrix.
    pub fn columns_from(&self, from: usize) -> HbarMatrix {
        let cols = self.cols - from;
        HbarMatrix::from_fn(self.rows, cols, |i, j| self.at(i, j + from).clone())
    }

    /// Entrywise evaluation at h = 0.
    pub fn eval_zero(&self) -> QMatrix {
        QMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).eval_zero())
    }

    // Elementary operations; each is unimodular over Q[h].
    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += f * row[b]
    pub fn add_row_multiple(&mut self, a: usize, b: usize, f: &HPoly) {
        for j in 0..self.cols {
            let v = self.at(a, j).add(&f.mul(self.at(b, j)));
            self.set(a, j, v);
        }
    }

    /// col[a] += f * col[b]
    pub fn add_col_multiple(&mut self, a: usize, b: usize, f: &HPoly) {
        for i in 0..self.rows {
            let v = self.at(i, a).add(&f.mul(self.at(i, b)));
            self.set(i, a, v);
        }
    }

    /// row[a] *= c (c a nonzero rational)
    pub fn scale_row(&mut self, a: usize, c: &Rat) {
        for j in 0..self.cols {
            let v = self.at(a, j).scale(c);
            self.set(a, j, v);
        }
    }

    /// Applies `(row_i, row_j) <- (x row_i + y row_j, z row_i + w row_j)`.
    /// Unimodular when `xw - yz` is a nonzero constant.
    pub fn two_row_transform(
        &mut self,
        i: usize,
        j: usize,
        x: &HPoly,
        y: &HPoly,
        z: &HPoly,
        w: &HPoly,
    ) {
        for c in 0..self.cols {
            let a = self.at(i, c).clone();
            let b = self.at(j, c).clone();
            self.set(i, c, x.mul(&a).add(&y.mul(&b)));
            self.set(j, c, z.mul(&a).add(&w.mul(&b)));
        }
    }

    pub fn two_col_transform(
        &mut self,
        i: usize,
        j: usize,
        x: &HPoly,
        y: &HPoly,
        z: &HPoly,
        w: &HPoly,
    ) {
        for r in 0..self.rows {
            let a = self.at(r, i).clone();
            let b = self.at(r, j).clone();
            self.set(r, i, x.mul(&a).add(&y.mul(&b)));
            self.set(r, j, z.mul(&a).add(&w.mul(&b)));
        }
    }

    /// Determinant by fraction-free expansion; exponential in size, meant for
    /// small matrices and tests.
    pub fn det_small(&self) -> Result<HPoly> {
        if self.rows != self.cols {
            return Err(DqError::Precondition("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(HPoly::one());
        }
        if n == 1 {
            return Ok(self.at(0, 0).clone());
        }
        let mut det = HPoly::zero();
        for j in 0..n {
            let a = self.at(0, j);
            if a.is_zero() {
                continue;
            }
            let minor = HbarMatrix::from_fn(n - 1, n - 1, |r, c| {
                self.at(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let m = a.mul(&minor.det_small()?);
            det = if j % 2 == 0 { det.add(&m) } else { det.sub(&m) };
        }
        Ok(det)
    }
}

/// JSON shape for matrix files: entries rendered in the `h` grammar.
#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl HbarMatrix {
    pub fn to_file(&self) -> MatrixFile {
        MatrixFile {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.at(i, j).render()).collect())
                .collect(),
        }
    }

    pub fn from_file(file: &MatrixFile) -> Result<Self> {
        if file.entries.len() != file.rows {
            return Err(DqError::Precondition(format!(
                "matrix file declares {} rows but has {}",
                file.rows,
                file.entries.len()
            )));
        }
        let mut rows = Vec::with_capacity(file.rows);
        for r in &file.entries {
            if r.len() != file.cols {
                return Err(DqError::Precondition(format!(
                    "matrix file declares {} cols but a row has {}",
                    file.cols,
                    r.len()
                )));
            }
            rows.push(r.iter().map(|s| HPoly::parse(s)).collect::<Result<Vec<_>>>()?);
        }
        HbarMatrix::from_rows(rows)
    }
}

/// Dense rational matrix with exact Gaussian elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, entries: vec![Rat::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = QMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.entries[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(DqError::Precondition("matrix dimensions do not compose".into()));
        }
        let mut out = QMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + self.at(i, k) * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            // find a pivot in this column at or below `row`
            let pivot = (row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for j in 0..m.cols {
                    m.entries.swap(row * m.cols + j, p * m.cols + j);
                }
            }
            let inv = Rat::from_integer(1.into()) / m.at(row, col).clone();
            for j in col..m.cols {
                let v = m.at(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let f = m.at(r, col).clone();
                    for j in col..m.cols {
                        let v = m.at(r, j) - &f * m.at(row, j);
                        m.set(r, j, v);
                    }
                }
            }
            rank += 1;
            row += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }
}
