use alloc::vec;
use alloc::vec::Vec;

/// Real matrix with dense semantics and row-compressed storage.
///
/// Entries that are exactly zero are not stored. Products and
/// matrix-vector evaluations visit the stored entries of a row in
/// increasing column order, which reproduces the summation order of a
/// dense row-major loop for finite data.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, row_ptr: vec![0; rows + 1], col_idx: Vec::new(), values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Matrix {
            rows: n,
            cols: n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    /// Builds from a row-major dense array of length `rows * cols`.
    pub fn from_dense(rows: usize, cols: usize, data: &[f64]) -> Self {
        assert_eq!(data.len(), rows * cols, "dense data has wrong length");
        let mut b = RowBuilder::new(cols);
        for i in 0..rows {
            for j in 0..cols {
                b.push(j, data[i * cols + j]);
            }
            b.finish_row();
        }
        b.build()
    }

    /// Builds from per-row `(column, value)` lists. Columns within a row
    /// must be strictly increasing.
    pub fn from_rows(cols: usize, rows: &[Vec<(usize, f64)>]) -> Self {
        let mut b = RowBuilder::new(cols);
        for row in rows {
            for &(j, v) in row {
                b.push(j, v);
            }
            b.finish_row();
        }
        b.build()
    }

    /// Builds from `(row, column, value)` triplets sorted by row, then column.
    pub fn from_triplets(rows: usize, cols: usize, entries: &[(usize, usize, f64)]) -> Option<Self> {
        let mut b = RowBuilder::new(cols);
        let mut current = 0usize;
        let mut last_col: Option<usize> = None;
        for &(i, j, v) in entries {
            if i >= rows || j >= cols || i < current {
                return None;
            }
            while current < i {
                b.finish_row();
                current += 1;
                last_col = None;
            }
            if let Some(lc) = last_col {
                if j <= lc {
                    return None;
                }
            }
            last_col = Some(j);
            b.push(j, v);
        }
        while current < rows {
            b.finish_row();
            current += 1;
        }
        Some(b.build())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (idx, val) = self.row(i);
        match idx.binary_search(&j) {
            Ok(k) => val[k],
            Err(_) => 0.0,
        }
    }

    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        (&self.col_idx[a..b], &self.values[a..b])
    }

    /// Iterates `(row, column, value)` over stored entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.rows).flat_map(move |i| {
            let (idx, val) = self.row(i);
            idx.iter().zip(val).map(move |(&j, &v)| (i, j, v))
        })
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.rows * self.cols];
        for (i, j, v) in self.triplets() {
            out[i * self.cols + j] = v;
        }
        out
    }

    /// `out = self * x` (no bias).
    pub fn mul_vec_into(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.cols);
        for (i, o) in out.iter_mut().enumerate().take(self.rows) {
            let (idx, val) = self.row(i);
            let mut acc = 0.0;
            for (&j, &v) in idx.iter().zip(val) {
                acc += v * x[j];
            }
            *o = acc;
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.rows];
        self.mul_vec_into(x, &mut out);
        out
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut acc = vec![0.0f64; rhs.cols];
        let mut touched = vec![false; rhs.cols];
        let mut cols_in_row: Vec<usize> = Vec::new();
        let mut b = RowBuilder::new(rhs.cols);
        for i in 0..self.rows {
            let (aidx, aval) = self.row(i);
            for (&k, &a) in aidx.iter().zip(aval) {
                let (bidx, bval) = rhs.row(k);
                for (&j, &v) in bidx.iter().zip(bval) {
                    if !touched[j] {
                        touched[j] = true;
                        cols_in_row.push(j);
                    }
                    acc[j] += a * v;
                }
            }
            cols_in_row.sort_unstable();
            for &j in &cols_in_row {
                b.push(j, acc[j]);
                acc[j] = 0.0;
                touched[j] = false;
            }
            cols_in_row.clear();
            b.finish_row();
        }
        b.build()
    }

    pub fn scaled(&self, c: f64) -> Matrix {
        let mut b = RowBuilder::new(self.cols);
        for i in 0..self.rows {
            let (idx, val) = self.row(i);
            for (&j, &v) in idx.iter().zip(val) {
                b.push(j, c * v);
            }
            b.finish_row();
        }
        b.build()
    }

    /// Entrywise sum; shapes must agree.
    pub fn add(&self, other: &Matrix) -> Matrix {
        assert!(self.rows == other.rows && self.cols == other.cols, "add shape mismatch");
        let mut b = RowBuilder::new(self.cols);
        for i in 0..self.rows {
            let (ai, av) = self.row(i);
            let (bi, bv) = other.row(i);
            let (mut p, mut q) = (0, 0);
            while p < ai.len() || q < bi.len() {
                if q == bi.len() || (p < ai.len() && ai[p] < bi[q]) {
                    b.push(ai[p], av[p]);
                    p += 1;
                } else if p == ai.len() || bi[q] < ai[p] {
                    b.push(bi[q], bv[q]);
                    q += 1;
                } else {
                    b.push(ai[p], av[p] + bv[q]);
                    p += 1;
                    q += 1;
                }
            }
            b.finish_row();
        }
        b.build()
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.first().map_or(0, |m| m.cols);
        let mut b = RowBuilder::new(cols);
        for m in blocks {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            for i in 0..m.rows {
                let (idx, val) = m.row(i);
                for (&j, &v) in idx.iter().zip(val) {
                    b.push(j, v);
                }
                b.finish_row();
            }
        }
        b.build()
    }

    /// Places matrices with equal row counts side by side.
    pub fn hstack(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.first().map_or(0, |m| m.rows);
        let cols: usize = blocks.iter().map(|m| m.cols).sum();
        let mut b = RowBuilder::new(cols);
        for i in 0..rows {
            let mut offset = 0;
            for m in blocks {
                assert_eq!(m.rows, rows, "hstack row mismatch");
                let (idx, val) = m.row(i);
                for (&j, &v) in idx.iter().zip(val) {
                    b.push(offset + j, v);
                }
                offset += m.cols;
            }
            b.finish_row();
        }
        b.build()
    }

    /// Block-diagonal matrix with the given blocks in order.
    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let cols: usize = blocks.iter().map(|m| m.cols).sum();
        let mut b = RowBuilder::new(cols);
        let mut offset = 0;
        for m in blocks {
            for i in 0..m.rows {
                let (idx, val) = m.row(i);
                for (&j, &v) in idx.iter().zip(val) {
                    b.push(offset + j, v);
                }
                b.finish_row();
            }
            offset += m.cols;
        }
        b.build()
    }

    /// Matrix picking coordinates `picks` out of a vector of length `cols`.
    pub fn selector(cols: usize, picks: &[usize]) -> Matrix {
        let rows: Vec<Vec<(usize, f64)>> = picks.iter().map(|&j| vec![(j, 1.0)]).collect();
        Matrix::from_rows(cols, &rows)
    }
}

struct RowBuilder {
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl RowBuilder {
    fn new(cols: usize) -> Self {
        RowBuilder { cols, row_ptr: vec![0], col_idx: Vec::new(), values: Vec::new() }
    }

    fn push(&mut self, j: usize, v: f64) {
        assert!(j < self.cols, "column index out of range");
        if v != 0.0 {
            self.col_idx.push(j);
            self.values.push(v);
        }
    }

    fn finish_row(&mut self) {
        self.row_ptr.push(self.col_idx.len());
    }

    fn build(self) -> Matrix {
        Matrix {
            rows: self.row_ptr.len() - 1,
            cols: self.cols,
            row_ptr: self.row_ptr,
            col_idx: self.col_idx,
            values: self.values,
        }
    }
}
