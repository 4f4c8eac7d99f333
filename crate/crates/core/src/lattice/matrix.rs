use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::Int;

/// Dense integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Int>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::MatrixShape(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(IntegerMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Int::one();
        }
        m
    }

    /// Builds a matrix from small integer rows. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let entries = rows.iter().flat_map(|r| r.iter().map(|&v| Int::from(v))).collect();
        IntegerMatrix { rows: rows.len(), cols, entries }
    }

    /// Builds a matrix from rows; `cols` is needed when there are no rows.
    pub fn from_rows(rows: Vec<Vec<Int>>, cols: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::MatrixShape(format!("row of length {} in a {}-column matrix", r.len(), cols)));
            }
            entries.extend(r);
        }
        Ok(IntegerMatrix { rows: n, cols, entries })
    }

    /// Builds a matrix from columns; `rows` is needed when there are no columns.
    pub fn from_cols(cols: &[Vec<Int>], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::MatrixShape(format!("column of length {} in a {}-row matrix", c.len(), rows)));
            }
            for (i, v) in c.iter().enumerate() {
                m.entries[i * m.cols + j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Int] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Int {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Int> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::MatrixShape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Int]) -> Result<Vec<Int>> {
        if v.len() != self.cols {
            return Err(Error::MatrixShape(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Int::zero();
                for (c, x) in v.iter().enumerate() {
                    acc += self.get(r, c) * x;
                }
                acc
            })
            .collect())
    }

    /// `[self other]`.
    pub fn hstack(&self, other: &IntegerMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::MatrixShape(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        let mut cols = self.col_vecs();
        cols.extend(other.col_vecs());
        Self::from_cols(&cols, self.rows)
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &IntegerMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::MatrixShape(format!("vstack of {} and {} columns", self.cols, other.cols)));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(IntegerMatrix { rows: self.rows + other.rows, cols: self.cols, entries })
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let cols: Vec<Vec<Int>> = idx.iter().map(|&c| self.col(c)).collect();
        Self::from_cols(&cols, self.rows).expect("columns share the row count")
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let rows: Vec<Vec<Int>> = idx.iter().map(|&r| self.row(r)).collect();
        Self::from_rows(rows, self.cols).expect("rows share the column count")
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[target] += k * row[source]
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let delta = k * &self.entries[source * self.cols + c];
            self.entries[target * self.cols + c] += delta;
        }
    }

    /// col[target] += k * col[source]
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let delta = k * &self.entries[r * self.cols + source];
            self.entries[r * self.cols + target] += delta;
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -core::mem::take(&mut self.entries[r * self.cols + c]);
            self.entries[r * self.cols + c] = v;
        }
    }

    pub(crate) fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -core::mem::take(&mut self.entries[r * self.cols + c]);
            self.entries[r * self.cols + c] = v;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Int> {
        if !self.is_square() {
            return Err(Error::MatrixShape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Ok(Int::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }

    /// Row-style Hermite normal form: returns `(h, t)` with `h = t * self`,
    /// `t` unimodular, `h` in row echelon form with positive pivots and the
    /// entries above each pivot reduced into `[0, pivot)`.
    pub fn hermite_rows(&self) -> (IntegerMatrix, IntegerMatrix) {
        let mut h = self.clone();
        let mut t = IntegerMatrix::identity(self.rows);
        let mut pivot_row = 0;
        for c in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            // Euclid down the column until a single nonzero entry remains.
            loop {
                let nonzero: Vec<usize> = (pivot_row..self.rows).filter(|&r| !h.get(r, c).is_zero()).collect();
                if nonzero.is_empty() {
                    break;
                }
                let best = *nonzero
                    .iter()
                    .min_by(|&&a, &&b| h.get(a, c).abs().cmp(&h.get(b, c).abs()))
                    .expect("nonempty");
                h.swap_rows(pivot_row, best);
                t.swap_rows(pivot_row, best);
                let mut done = true;
                for r in pivot_row + 1..self.rows {
                    if h.get(r, c).is_zero() {
                        continue;
                    }
                    let q = h.get(r, c).div_floor(h.get(pivot_row, c));
                    let neg = -q;
                    h.add_row_multiple(r, pivot_row, &neg);
                    t.add_row_multiple(r, pivot_row, &neg);
                    if !h.get(r, c).is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if pivot_row < self.rows && !h.get(pivot_row, c).is_zero() {
                if h.get(pivot_row, c).is_negative() {
                    h.negate_row(pivot_row);
                    t.negate_row(pivot_row);
                }
                let p = h.get(pivot_row, c).clone();
                for r in 0..pivot_row {
                    let q = h.get(r, c).div_floor(&p);
                    let neg = -q;
                    h.add_row_multiple(r, pivot_row, &neg);
                    t.add_row_multiple(r, pivot_row, &neg);
                }
                pivot_row += 1;
            }
        }
        (h, t)
    }

    /// Nonzero rows of the row Hermite form: a canonical basis of the row lattice.
    pub fn row_lattice_basis(&self) -> IntegerMatrix {
        let (h, _) = self.hermite_rows();
        let keep: Vec<usize> = (0..h.rows).filter(|&r| h.row(r).iter().any(|x| !x.is_zero())).collect();
        h.select_rows(&keep)
    }

    /// Canonical basis of the lattice spanned by the columns (as rows of the result).
    pub fn col_lattice_basis(&self) -> IntegerMatrix {
        self.transpose().row_lattice_basis()
    }
}

/// Reduces `v` modulo the lattice spanned by the rows of a row Hermite form.
/// Produces the unique representative whose entries in pivot columns lie in `[0, pivot)`.
pub fn reduce_mod_hermite(v: &[Int], hermite: &IntegerMatrix) -> Vec<Int> {
    let mut out = v.to_vec();
    for r in 0..hermite.rows() {
        let Some(pc) = (0..hermite.cols()).find(|&c| !hermite.get(r, c).is_zero()) else {
            continue;
        };
        let q = out[pc].div_floor(hermite.get(r, pc));
        if q.is_zero() {
            continue;
        }
        for (c, x) in out.iter_mut().enumerate() {
            *x -= &q * hermite.get(r, c);
        }
    }
    out
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `[6 4]` for a single row, `[1 1; 0 2]` otherwise.
impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}
