//! Matrices whose rows and columns carry wire labels.

use std::collections::{HashMap, HashSet};

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Wire label.
pub type Label = u32;

/// A scalar grid with a label on every row and column.
///
/// Rows are outgoing wires and columns incoming wires. Labels are distinct
/// within the row list and within the column list; the two lists may share
/// labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledMatrix<S> {
    rows: Vec<Label>,
    cols: Vec<Label>,
    data: Vec<S>,
}

pub(crate) fn check_distinct(labels: &[Label], place: &str) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for &l in labels {
        if !seen.insert(l) {
            return Err(Error::DuplicateLabel { label: l, place: place.to_string() });
        }
    }
    Ok(())
}

fn same_set(a: &[Label], b: &[Label]) -> bool {
    a.len() == b.len() && {
        let s: HashSet<_> = a.iter().collect();
        b.iter().all(|l| s.contains(l))
    }
}

impl<S: Scalar> LabeledMatrix<S> {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: Vec<Label>, cols: Vec<Label>, data: Vec<S>) -> Result<Self> {
        check_distinct(&rows, "row labels")?;
        check_distinct(&cols, "column labels")?;
        let expected = rows.len() * cols.len();
        if data.len() != expected {
            return Err(Error::ShapeMismatch { expected, found: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows.
    pub fn from_rows(rows: Vec<Label>, cols: Vec<Label>, grid: Vec<Vec<S>>) -> Result<Self> {
        if let Some(bad) = grid.iter().find(|r| r.len() != cols.len()) {
            return Err(Error::ShapeMismatch { expected: cols.len(), found: bad.len() });
        }
        Self::new(rows, cols, grid.into_iter().flatten().collect())
    }

    pub fn zeros(rows: Vec<Label>, cols: Vec<Label>) -> Result<Self> {
        let n = rows.len() * cols.len();
        Self::new(rows, cols, vec![S::zero(); n])
    }

    /// Identity on the given labels.
    pub fn identity(labels: Vec<Label>) -> Result<Self> {
        let n = labels.len();
        let mut m = Self::zeros(labels.clone(), labels)?;
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        Ok(m)
    }

    pub fn rows(&self) -> &[Label] {
        &self.rows
    }

    pub fn cols(&self) -> &[Label] {
        &self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    /// Row-major entries.
    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols.len() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        let c = self.cols.len();
        self.data[i * c + j] = v;
    }

    pub fn row_position(&self, label: Label) -> Option<usize> {
        self.rows.iter().position(|&l| l == label)
    }

    pub fn col_position(&self, label: Label) -> Option<usize> {
        self.cols.iter().position(|&l| l == label)
    }

    /// Same matrix with new label lists of equal lengths.
    pub fn relabel(&self, rows: Vec<Label>, cols: Vec<Label>) -> Result<Self> {
        if rows.len() != self.rows.len() || cols.len() != self.cols.len() {
            return Err(Error::ShapeMismatch {
                expected: self.data.len(),
                found: rows.len() * cols.len(),
            });
        }
        Self::new(rows, cols, self.data.clone())
    }

    /// Submatrix on the given row and column positions, in the order given.
    pub fn submatrix(&self, row_pos: &[usize], col_pos: &[usize]) -> Self {
        let mut data = Vec::with_capacity(row_pos.len() * col_pos.len());
        for &i in row_pos {
            for &j in col_pos {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: row_pos.iter().map(|&i| self.rows[i]).collect(),
            cols: col_pos.iter().map(|&j| self.cols[j]).collect(),
            data,
        }
    }

    /// Reorders the rows to follow `order`, which must be a permutation of the row labels.
    pub fn with_row_order(&self, order: &[Label]) -> Result<Self> {
        if !same_set(order, &self.rows) {
            return Err(Error::LabelMismatch("row order is not a permutation of the rows".into()));
        }
        let pos: Vec<usize> = order.iter().map(|&l| self.row_position(l).unwrap()).collect();
        let all: Vec<usize> = (0..self.ncols()).collect();
        Ok(self.submatrix(&pos, &all))
    }

    /// Reorders the columns to follow `order`, which must be a permutation of the column labels.
    pub fn with_col_order(&self, order: &[Label]) -> Result<Self> {
        if !same_set(order, &self.cols) {
            return Err(Error::LabelMismatch("column order is not a permutation of the columns".into()));
        }
        let pos: Vec<usize> = order.iter().map(|&l| self.col_position(l).unwrap()).collect();
        let all: Vec<usize> = (0..self.nrows()).collect();
        Ok(self.submatrix(&all, &pos))
    }

    /// Entry-wise sum of matrices with identical label lists.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::LabelMismatch("addends carry different labels".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Self { rows: self.rows.clone(), cols: self.cols.clone(), data })
    }

    /// Entry-wise equality up to the scalar tolerance, labels compared exactly.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b))
    }
}

/// Matrix product `n * m`.
///
/// The rows of `m` are reordered to follow the column order of `n`. The
/// result has the rows of `n` and the columns of `m`.
pub fn compose<S: Scalar>(n: &LabeledMatrix<S>, m: &LabeledMatrix<S>) -> Result<LabeledMatrix<S>> {
    if !same_set(&n.cols, &m.rows) {
        return Err(Error::LabelMismatch(format!(
            "left columns {:?} vs right rows {:?}",
            n.cols, m.rows
        )));
    }
    let m = if n.cols == m.rows { m.clone() } else { m.with_row_order(&n.cols)? };
    let (r, k, c) = (n.nrows(), n.ncols(), m.ncols());
    let mut data = vec![S::zero(); r * c];
    for i in 0..r {
        for t in 0..k {
            let a = n.get(i, t);
            if a.is_zero() {
                continue;
            }
            for j in 0..c {
                let v = a.clone() * m.get(t, j).clone();
                data[i * c + j] = data[i * c + j].clone() + v;
            }
        }
    }
    Ok(LabeledMatrix { rows: n.rows.clone(), cols: m.cols.clone(), data })
}

/// Block-diagonal sum with concatenated labels.
pub fn direct_sum<S: Scalar>(a: &LabeledMatrix<S>, b: &LabeledMatrix<S>) -> Result<LabeledMatrix<S>> {
    for (x, y) in [(&a.rows, &b.rows), (&a.cols, &b.cols)] {
        let s: HashSet<_> = x.iter().collect();
        if let Some(&l) = y.iter().find(|l| s.contains(l)) {
            return Err(Error::LabelCollision(l));
        }
    }
    let rows: Vec<Label> = a.rows.iter().chain(&b.rows).copied().collect();
    let cols: Vec<Label> = a.cols.iter().chain(&b.cols).copied().collect();
    let mut out = LabeledMatrix::zeros(rows, cols)?;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            out.set(i, j, a.get(i, j).clone());
        }
    }
    for i in 0..b.nrows() {
        for j in 0..b.ncols() {
            out.set(a.nrows() + i, a.ncols() + j, b.get(i, j).clone());
        }
    }
    Ok(out)
}

/// Direct sum of a whole list; the empty list gives the 0x0 matrix.
pub fn direct_sum_all<'a, S: Scalar>(
    parts: impl IntoIterator<Item = &'a LabeledMatrix<S>>,
) -> Result<LabeledMatrix<S>> {
    let mut acc = LabeledMatrix::zeros(vec![], vec![])?;
    for p in parts {
        acc = direct_sum(&acc, p)?;
    }
    Ok(acc)
}

/// Transpose with the label lists swapped.
pub fn dagger<S: Scalar>(m: &LabeledMatrix<S>) -> LabeledMatrix<S> {
    let (r, c) = (m.nrows(), m.ncols());
    let mut data = Vec::with_capacity(r * c);
    for j in 0..c {
        for i in 0..r {
            data.push(m.get(i, j).clone());
        }
    }
    LabeledMatrix { rows: m.cols.clone(), cols: m.rows.clone(), data }
}

/// Permutation exchanging two disjoint bundles: rows `b ++ a`, columns `a ++ b`.
pub fn braiding<S: Scalar>(a: &[Label], b: &[Label]) -> Result<LabeledMatrix<S>> {
    let s: HashSet<_> = a.iter().collect();
    if let Some(&l) = b.iter().find(|l| s.contains(l)) {
        return Err(Error::LabelCollision(l));
    }
    let rows: Vec<Label> = b.iter().chain(a).copied().collect();
    let cols: Vec<Label> = a.iter().chain(b).copied().collect();
    permutation(rows, cols, |l| l)
}

/// 0/1 matrix sending column label `l` to row label `map(l)`.
pub fn permutation<S: Scalar>(
    rows: Vec<Label>,
    cols: Vec<Label>,
    map: impl Fn(Label) -> Label,
) -> Result<LabeledMatrix<S>> {
    let mut m = LabeledMatrix::zeros(rows, cols)?;
    let row_pos: HashMap<Label, usize> = m.rows.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    for j in 0..m.ncols() {
        let target = map(m.cols[j]);
        let i = *row_pos
            .get(&target)
            .ok_or_else(|| Error::LabelMismatch(format!("no row labelled {target}")))?;
        m.set(i, j, S::one());
    }
    Ok(m)
}

/// Determinant of a square matrix, in listed order; 0x0 gives 1.
pub fn determinant<S: Scalar>(m: &LabeledMatrix<S>) -> Result<S> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    Ok(S::det_kernel(m.data.clone(), m.nrows()))
}

/// `det(I + m)`, the sum of all principal minors.
///
/// Columns are first aligned to the row order so that the identity pairs
/// equal labels.
pub fn principal_minor_sum<S: Scalar>(m: &LabeledMatrix<S>) -> Result<S> {
    if !same_set(&m.rows, &m.cols) {
        return Err(Error::NotEndomorphism);
    }
    let aligned = if m.rows == m.cols { m.clone() } else { m.with_col_order(&m.rows)? };
    let n = aligned.nrows();
    let mut data = aligned.data;
    for i in 0..n {
        data[i * n + i] = data[i * n + i].clone() + S::one();
    }
    Ok(S::det_kernel(data, n))
}
