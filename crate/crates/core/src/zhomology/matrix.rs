use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Column-major sparse integer matrix with small entries.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: (0..n).map(|i| vec![(i as u32, 1)]).collect() }
    }

    /// Builds from columns; entries in a column may be unsorted or repeated.
    pub fn from_columns(rows: usize, cols: Vec<Vec<(u32, i64)>>) -> Self {
        let cols = cols.into_iter().map(normalize).collect();
        SparseMatrix { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &[(u32, i64)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<(u32, i64)>] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.cols[j].binary_search_by_key(&(i as u32), |e| e.0).map(|p| self.cols[j][p].1).unwrap_or(0)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Applies the matrix to a sparse vector.
    pub fn apply(&self, v: &[(u32, i64)]) -> Vec<(u32, i64)> {
        let mut out = Vec::new();
        for &(j, c) in v {
            for &(i, a) in &self.cols[j as usize] {
                out.push((i, a * c));
            }
        }
        normalize(out)
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "dimension mismatch in product");
        SparseMatrix { rows: self.rows, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = vec![Vec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, a) in col {
                t[i as usize].push((j as u32, a));
            }
        }
        SparseMatrix { rows: self.cols.len(), cols: t }
    }

    /// Operator norm for the ℓ¹ norm: the largest column sum of absolute values.
    pub fn operator_norm(&self) -> u64 {
        self.cols.iter().map(|c| c.iter().map(|e| e.1.unsigned_abs()).sum()).max().unwrap_or(0)
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols());
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, a) in col {
                m.set(i as usize, j, BigInt::from(a));
            }
        }
        m
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix {}x{} ", self.rows, self.cols())?;
        f.debug_list().entries(self.cols.iter()).finish()
    }
}

/// Sorts by index, merges repeated indices and drops zeros.
pub(crate) fn normalize(mut v: Vec<(u32, i64)>) -> Vec<(u32, i64)> {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(v.len());
    for (i, a) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += a,
            _ => out.push((i, a)),
        }
        if out.last().is_some_and(|l| l.1 == 0) {
            out.pop();
        }
    }
    out
}

/// Dense matrix of arbitrary precision integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix { rows: rows.len(), cols, data: rows.iter().flatten().map(|&a| BigInt::from(a)).collect() }
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries as `i64` when they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Rows `from..` only.
    pub fn rows_from(&self, from: usize) -> IntMatrix {
        IntMatrix { rows: self.rows - from, cols: self.cols, data: self.data[from * self.cols..].to_vec() }
    }

    /// Columns `from..` only.
    pub fn cols_from(&self, from: usize) -> IntMatrix {
        let cols = self.cols - from;
        let data = (0..self.rows).flat_map(|i| self.row(i)[from..].to_vec()).collect();
        IntMatrix { rows: self.rows, cols, data }
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    /// Largest column ℓ¹ norm.
    pub fn operator_norm(&self) -> BigInt {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self.get(i, j).abs()).sum::<BigInt>()).max().unwrap_or_default()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += c · row[src]`.
    pub(crate) fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let delta = s * c;
                self.data[dst * self.cols + j] += delta;
            }
        }
    }

    /// `col[dst] += c · col[src]`.
    pub(crate) fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let delta = s * c;
                self.data[i * self.cols + dst] += delta;
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -v;
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_merges_and_drops() {
        assert_eq!(normalize(vec![(2, 1), (0, 3), (2, -1), (0, 1)]), vec![(0, 4)]);
    }

    #[test]
    fn sparse_product_and_norm() {
        let a = SparseMatrix::from_columns(2, vec![vec![(0, 1), (1, -1)], vec![(1, 2)]]);
        let id = SparseMatrix::identity(2);
        assert_eq!(a.mul(&id), a);
        assert_eq!(a.operator_norm(), 2);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.to_dense(), IntMatrix::from_rows(&[vec![1, 0], vec![-1, 2]]));
    }

    #[test]
    fn dense_ops() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = a.mul(&IntMatrix::identity(2));
        assert_eq!(a, b);
        assert_eq!(a.trace(), BigInt::from(5));
        assert_eq!(a.operator_norm(), BigInt::from(6));
        assert_eq!(a.transpose().get(0, 1), &BigInt::from(3));
    }
}
