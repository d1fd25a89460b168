use std::collections::HashSet;
use std::fmt;

use super::PrimeField;
use crate::error::{Error, Result};

/// A dense matrix over GF(p) whose rows and columns carry string labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: PrimeField,
    rows: Vec<String>,
    cols: Vec<String>,
    data: Vec<u8>,
}

/// Output of [`Mat::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Mat,
    pub rank: usize,
    /// Column indices of the pivots, one per nonzero row.
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn pivot_labels(&self) -> Vec<String> {
        self.pivots.iter().map(|&j| self.matrix.cols[j].clone()).collect()
    }
}

fn check_unique(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

pub fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl Mat {
    pub fn new(field: PrimeField, rows: Vec<String>, cols: Vec<String>, data: Vec<u8>) -> Result<Self> {
        if data.len() != rows.len() * cols.len() {
            return Err(Error::Dimension(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows.len(),
                cols.len()
            )));
        }
        if let Some(&v) = data.iter().find(|&&v| v >= field.p()) {
            return Err(Error::EntryOutOfRange { p: field.p(), value: v as i64 });
        }
        check_unique(&rows)?;
        check_unique(&cols)?;
        Ok(Self { field, rows, cols, data })
    }

    /// Builds a matrix from row-major integer rows, reducing entries mod p.
    pub fn from_rows(field: PrimeField, rows: Vec<String>, cols: Vec<String>, entries: &[Vec<i64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        if entries.len() != rows.len() {
            return Err(Error::Dimension(format!("{} rows given, {} labels", entries.len(), rows.len())));
        }
        for r in entries {
            if r.len() != cols.len() {
                return Err(Error::Dimension(format!("row of length {} for {} columns", r.len(), cols.len())));
            }
            data.extend(r.iter().map(|&v| field.reduce(v)));
        }
        Self::new(field, rows, cols, data)
    }

    /// Unlabelled convenience constructor: rows `r1..`, columns `1..`.
    pub fn from_ints(field: PrimeField, entries: &[Vec<i64>]) -> Self {
        let ncols = entries.first().map_or(0, |r| r.len());
        Self::from_rows(field, numbered("r", entries.len()), numbered("", ncols), entries)
            .expect("rectangular integer matrix")
    }

    /// Builds a matrix from labelled column vectors.
    pub fn from_columns(field: PrimeField, rows: Vec<String>, columns: Vec<(String, Vec<u8>)>) -> Result<Self> {
        let m = rows.len();
        let mut out = Self::zeros(field, rows, columns.iter().map(|(l, _)| l.clone()).collect());
        check_unique(&out.cols)?;
        for (j, (_, v)) in columns.iter().enumerate() {
            if v.len() != m {
                return Err(Error::Dimension(format!("column of length {} for {m} rows", v.len())));
            }
            for (i, &x) in v.iter().enumerate() {
                out.set(i, j, x % field.p());
            }
        }
        Ok(out)
    }

    pub fn zeros(field: PrimeField, rows: Vec<String>, cols: Vec<String>) -> Self {
        let data = vec![0; rows.len() * cols.len()];
        Self { field, rows, cols, data }
    }

    pub fn identity(field: PrimeField, labels: Vec<String>) -> Self {
        let mut m = Self::zeros(field, labels.clone(), labels);
        for i in 0..m.nrows() {
            m.set(i, i, 1);
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }
    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }
    pub fn row_labels(&self) -> &[String] {
        &self.rows
    }
    pub fn col_labels(&self) -> &[String] {
        &self.cols
    }
    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols.len() + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        let n = self.cols.len();
        self.data[i * n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        let n = self.cols.len();
        &self.data[i * n..(i + 1) * n]
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.nrows()).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u8>> {
        (0..self.ncols()).map(|j| self.column(j)).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<u8>> {
        (0..self.nrows()).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_index(&self, label: &str) -> Result<usize> {
        self.cols.iter().position(|c| c == label).ok_or_else(|| Error::UnknownLabel(label.into()))
    }

    pub fn row_index(&self, label: &str) -> Result<usize> {
        self.rows.iter().position(|c| c == label).ok_or_else(|| Error::UnknownLabel(label.into()))
    }

    pub fn col_indices<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.col_index(l.as_ref())).collect()
    }

    pub fn row_indices<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        labels.iter().map(|l| self.row_index(l.as_ref())).collect()
    }

    pub fn entry(&self, row: &str, col: &str) -> Result<u8> {
        Ok(self.get(self.row_index(row)?, self.col_index(col)?))
    }

    pub fn set_entry(&mut self, row: &str, col: &str, v: u8) -> Result<()> {
        let (i, j) = (self.row_index(row)?, self.col_index(col)?);
        self.set(i, j, v % self.field.p());
        Ok(())
    }

    pub fn submatrix_idx(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j));
            }
        }
        Mat {
            field: self.field,
            rows: rows.iter().map(|&i| self.rows[i].clone()).collect(),
            cols: cols.iter().map(|&j| self.cols[j].clone()).collect(),
            data,
        }
    }

    /// `P[A', B']` by labels.
    pub fn submatrix<S: AsRef<str>, T: AsRef<str>>(&self, rows: &[S], cols: &[T]) -> Result<Mat> {
        Ok(self.submatrix_idx(&self.row_indices(rows)?, &self.col_indices(cols)?))
    }

    pub fn select_cols<S: AsRef<str>>(&self, cols: &[S]) -> Result<Mat> {
        let rows: Vec<usize> = (0..self.nrows()).collect();
        Ok(self.submatrix_idx(&rows, &self.col_indices(cols)?))
    }

    pub fn select_rows<S: AsRef<str>>(&self, rows: &[S]) -> Result<Mat> {
        let cols: Vec<usize> = (0..self.ncols()).collect();
        Ok(self.submatrix_idx(&self.row_indices(rows)?, &cols))
    }

    pub fn select_cols_idx(&self, cols: &[usize]) -> Mat {
        let rows: Vec<usize> = (0..self.nrows()).collect();
        self.submatrix_idx(&rows, cols)
    }

    pub fn select_rows_idx(&self, rows: &[usize]) -> Mat {
        let cols: Vec<usize> = (0..self.ncols()).collect();
        self.submatrix_idx(rows, &cols)
    }

    pub fn with_row_labels(mut self, rows: Vec<String>) -> Result<Mat> {
        if rows.len() != self.nrows() {
            return Err(Error::Dimension("row relabel length".into()));
        }
        check_unique(&rows)?;
        self.rows = rows;
        Ok(self)
    }

    pub fn with_col_labels(mut self, cols: Vec<String>) -> Result<Mat> {
        if cols.len() != self.ncols() {
            return Err(Error::Dimension("column relabel length".into()));
        }
        check_unique(&cols)?;
        self.cols = cols;
        Ok(self)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols.clone(), self.rows.clone());
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Matrix product; inner labels are not compared, only dimensions.
    pub fn mul(&self, rhs: &Mat) -> Result<Mat> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field.p(), rhs.field.p()));
        }
        if self.ncols() != rhs.nrows() {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.nrows(),
                self.ncols(),
                rhs.nrows(),
                rhs.ncols()
            )));
        }
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows.clone(), rhs.cols.clone());
        for i in 0..self.nrows() {
            for k in 0..self.ncols() {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.ncols() {
                    let v = f.add(out.get(i, j), f.mul(a, rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[u8]) -> Vec<u8> {
        let f = self.field;
        let mut out = vec![0u8; self.ncols()];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(c, self.get(i, j)));
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        let f = self.field;
        (0..self.nrows())
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    pub fn hstack(&self, rhs: &Mat) -> Result<Mat> {
        if self.nrows() != rhs.nrows() {
            return Err(Error::Dimension("hstack row count".into()));
        }
        let mut cols = self.cols.clone();
        cols.extend(rhs.cols.iter().cloned());
        check_unique(&cols)?;
        let mut data = Vec::with_capacity(self.nrows() * cols.len());
        for i in 0..self.nrows() {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(rhs.row(i));
        }
        Ok(Mat { field: self.field, rows: self.rows.clone(), cols, data })
    }

    pub fn vstack(&self, rhs: &Mat) -> Result<Mat> {
        if self.ncols() != rhs.ncols() {
            return Err(Error::Dimension("vstack column count".into()));
        }
        let mut rows = self.rows.clone();
        rows.extend(rhs.rows.iter().cloned());
        check_unique(&rows)?;
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Ok(Mat { field: self.field, rows, cols: self.cols.clone(), data })
    }

    pub fn scale_col(&mut self, j: usize, s: u8) {
        for i in 0..self.nrows() {
            let v = self.field.mul(self.get(i, j), s);
            self.set(i, j, v);
        }
    }

    pub fn scale_row(&mut self, i: usize, s: u8) {
        for j in 0..self.ncols() {
            let v = self.field.mul(self.get(i, j), s);
            self.set(i, j, v);
        }
    }

    /// `row[dst] += s * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, s: u8) {
        if s == 0 {
            return;
        }
        let f = self.field;
        let n = self.ncols();
        for j in 0..n {
            let v = f.add(self.data[dst * n + j], f.mul(s, self.data[src * n + j]));
            self.data[dst * n + j] = v;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.ncols();
        for j in 0..n {
            self.data.swap(a * n + j, b * n + j);
        }
        self.rows.swap(a, b);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Reduced row-echelon form. Pivots are taken left to right in column order; row labels of
    /// the result are those of the original rows in their final positions.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..m.ncols() {
            if r == m.nrows() {
                break;
            }
            let Some(piv) = (r..m.nrows()).find(|&i| m.get(i, j) != 0) else { continue };
            m.swap_rows(r, piv);
            let s = f.inv(m.get(r, j));
            m.scale_row(r, s);
            for i in 0..m.nrows() {
                if i != r {
                    let c = m.get(i, j);
                    if c != 0 {
                        m.add_row_multiple(i, r, f.neg(c));
                    }
                }
            }
            pivots.push(j);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        if self.field.p() == 2 {
            return binary_rank(self);
        }
        self.rref().rank
    }

    /// The RREF with zero rows removed.
    pub fn row_basis(&self) -> Mat {
        let rr = self.rref();
        let keep: Vec<usize> = (0..rr.rank).collect();
        rr.matrix.select_rows_idx(&keep)
    }

    /// A basis (as rows) of the right kernel `{x : self * x = 0}`, labelled by the columns.
    pub fn kernel(&self) -> Mat {
        let f = self.field;
        let rr = self.rref();
        let free: Vec<usize> = (0..self.ncols()).filter(|j| !rr.pivots.contains(j)).collect();
        let mut k = Mat::zeros(f, numbered("k", free.len()), self.cols.clone());
        for (t, &fj) in free.iter().enumerate() {
            k.set(t, fj, 1);
            for (i, &pj) in rr.pivots.iter().enumerate() {
                k.set(t, pj, f.neg(rr.matrix.get(i, fj)));
            }
        }
        k
    }

    /// Inverse of a square nonsingular matrix; row labels of the inverse are the column labels
    /// of `self` and vice versa.
    pub fn inverse(&self) -> Result<Mat> {
        let n = self.nrows();
        if n != self.ncols() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let f = self.field;
        let aug_cols: Vec<String> = (0..2 * n).map(|j| format!("#{j}")).collect();
        let mut aug = Mat::zeros(f, numbered("r", n), aug_cols);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let rr = aug.rref();
        if rr.pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) || rr.rank < n {
            return Err(Error::Singular);
        }
        let mut inv = Mat::zeros(f, self.cols.clone(), self.rows.clone());
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, rr.matrix.get(i, n + j));
            }
        }
        Ok(inv)
    }

    pub fn is_nonsingular(&self) -> bool {
        self.nrows() == self.ncols() && self.rank() == self.nrows()
    }

    /// Coefficients `c` with `c * self = v`, if `v` lies in the row space.
    pub fn solve_left(&self, v: &[u8]) -> Option<Vec<u8>> {
        let f = self.field;
        // Solve self^T c = v by reducing [self^T | v].
        let m = self.nrows();
        let n = self.ncols();
        let mut aug = Mat::zeros(f, numbered("r", n), numbered("c", m + 1));
        for j in 0..n {
            for i in 0..m {
                aug.set(j, i, self.get(i, j));
            }
            aug.set(j, m, v[j]);
        }
        let rr = aug.rref();
        if rr.pivots.contains(&m) {
            return None;
        }
        let mut c = vec![0u8; m];
        for (i, &pj) in rr.pivots.iter().enumerate() {
            c[pj] = rr.matrix.get(i, m);
        }
        Some(c)
    }
}

fn binary_rank(m: &Mat) -> usize {
    let words = m.ncols().div_ceil(64);
    let mut rows: Vec<Vec<u64>> = (0..m.nrows())
        .map(|i| {
            let mut w = vec![0u64; words];
            for (j, &v) in m.row(i).iter().enumerate() {
                if v != 0 {
                    w[j / 64] |= 1 << (j % 64);
                }
            }
            w
        })
        .collect();
    let mut rank = 0;
    for j in 0..m.ncols() {
        let (wi, bit) = (j / 64, 1u64 << (j % 64));
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][wi] & bit != 0) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[wi] & bit != 0 {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat over {:?} cols {:?}", self.field, self.cols)?;
        for i in 0..self.nrows() {
            writeln!(f, "  {:>6} {:?}", self.rows[i], self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rank_of_equal_rows_is_one() {
        let m = Mat::from_ints(gf(2), &[vec![1, 1], vec![1, 1]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.rref().rank, 1);
    }

    #[test]
    fn identity_has_full_rank_and_all_pivots() {
        let m = Mat::identity(gf(5), numbered("e", 3));
        let rr = m.rref();
        assert_eq!(rr.rank, 3);
        assert_eq!(rr.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn inverse_and_kernel() {
        let f = gf(7);
        let m = Mat::from_ints(f, &[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv).unwrap();
        assert_eq!(prod.data(), &[1, 0, 0, 1]);
        let s = Mat::from_ints(f, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
        let k = s.kernel();
        assert_eq!(k.nrows(), 1);
        assert!(s.apply(k.row(0)).iter().all(|&v| v == 0));
    }

    #[test]
    fn solve_left_finds_coefficients() {
        let f = gf(3);
        let m = Mat::from_ints(f, &[vec![1, 1, 0], vec![0, 1, 1]]);
        let c = m.solve_left(&[1, 0, 2]).unwrap();
        assert_eq!(m.left_apply(&c), vec![1, 0, 2]);
        assert!(m.solve_left(&[1, 0, 0]).is_none());
    }

    #[test]
    fn duplicate_labels_rejected() {
        let f = gf(2);
        let r = Mat::new(f, vec!["a".into()], vec!["x".into(), "x".into()], vec![0, 1]);
        assert_eq!(r, Err(Error::DuplicateLabel("x".into())));
    }
}
