//! Compressed sparse row matrices and the sparse-dense products used by
//! every graph filter.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

/// CSR matrix with sorted, unique column indices in every row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsrMatrix {
    n_rows: usize,
    n_cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Builds from `(row, col, value)` triplets. Duplicates are summed in
    /// input order; explicit zeros are kept.
    pub fn from_triplets(
        n_rows: usize,
        n_cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n_rows];
        for (i, j, v) in triplets {
            if i >= n_rows || j >= n_cols {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({i}, {j}) outside {n_rows}x{n_cols}"
                )));
            }
            rows[i].push((j, v));
        }
        let mut indptr = Vec::with_capacity(n_rows + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for mut row in rows {
            row.sort_by_key(|&(j, _)| j);
            let mut iter = row.into_iter().peekable();
            while let Some((j, mut v)) = iter.next() {
                while let Some(&(j2, v2)) = iter.peek() {
                    if j2 != j {
                        break;
                    }
                    v += v2;
                    iter.next();
                }
                indices.push(j);
                values.push(v);
            }
            indptr.push(indices.len());
        }
        Ok(CsrMatrix { n_rows, n_cols, indptr, indices, values })
    }

    /// Raw constructor; caller guarantees sorted unique indices per row.
    pub(crate) fn from_parts(
        n_rows: usize,
        n_cols: usize,
        indptr: Vec<usize>,
        indices: Vec<usize>,
        values: Vec<f64>,
    ) -> Self {
        debug_assert_eq!(indptr.len(), n_rows + 1);
        debug_assert_eq!(indices.len(), values.len());
        CsrMatrix { n_rows, n_cols, indptr, indices, values }
    }

    pub fn identity(n: usize) -> Self {
        CsrMatrix {
            n_rows: n,
            n_cols: n,
            indptr: (0..=n).collect(),
            indices: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    pub fn from_dense(m: &DenseMatrix) -> Self {
        let mut indptr = vec![0];
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for i in 0..m.rows() {
            for (j, &v) in m.row(i).iter().enumerate() {
                if v != 0.0 {
                    indices.push(j);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        CsrMatrix { n_rows: m.rows(), n_cols: m.cols(), indptr, indices, values }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn indptr(&self) -> &[usize] {
        &self.indptr
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Column indices and values of row `i`.
    #[inline]
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let (s, e) = (self.indptr[i], self.indptr[i + 1]);
        (&self.indices[s..e], &self.values[s..e])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (cols, vals) = self.row(i);
        match cols.binary_search(&j) {
            Ok(k) => vals[k],
            Err(_) => 0.0,
        }
    }

    /// Same sparsity pattern, values mapped by `f(row, col, value)`.
    pub fn map_values(&self, mut f: impl FnMut(usize, usize, f64) -> f64) -> CsrMatrix {
        let mut values = Vec::with_capacity(self.values.len());
        for i in 0..self.n_rows {
            let (cols, vals) = self.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                values.push(f(i, j, v));
            }
        }
        CsrMatrix { values, ..self.clone() }
    }

    /// `self · x`
    pub fn spmm(&self, x: &DenseMatrix) -> Result<DenseMatrix> {
        if self.n_cols != x.rows() {
            return Err(Error::DimensionMismatch(format!(
                "spmm {}x{} by {:?}",
                self.n_rows,
                self.n_cols,
                x.shape()
            )));
        }
        let f = x.cols();
        let mut out = DenseMatrix::zeros(self.n_rows, f);
        for i in 0..self.n_rows {
            let (cols, vals) = self.row(i);
            let out_row = out.row_mut(i);
            for (&j, &v) in cols.iter().zip(vals) {
                for (o, &xv) in out_row.iter_mut().zip(x.row(j)) {
                    *o += v * xv;
                }
            }
        }
        Ok(out)
    }

    /// `selfᵀ · g`, computed by scattering rows so no transpose is materialized.
    pub fn spmm_transpose(&self, g: &DenseMatrix) -> Result<DenseMatrix> {
        if self.n_rows != g.rows() {
            return Err(Error::DimensionMismatch(format!(
                "spmmᵀ {}x{} by {:?}",
                self.n_rows,
                self.n_cols,
                g.shape()
            )));
        }
        let f = g.cols();
        let mut out = DenseMatrix::zeros(self.n_cols, f);
        for i in 0..self.n_rows {
            let (cols, vals) = self.row(i);
            let g_row = g.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                for (o, &gv) in out.row_mut(j).iter_mut().zip(g_row) {
                    *o += v * gv;
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> CsrMatrix {
        let triplets = (0..self.n_rows).flat_map(|i| {
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals).map(move |(&j, &v)| (j, i, v))
        });
        CsrMatrix::from_triplets(self.n_cols, self.n_rows, triplets).expect("in range")
    }

    /// Entry-wise sum; the pattern is the union of both patterns.
    pub fn add(&self, other: &CsrMatrix) -> Result<CsrMatrix> {
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols) {
            return Err(Error::DimensionMismatch("sparse add".into()));
        }
        let triplets = [self, other].into_iter().flat_map(|m| {
            (0..m.n_rows).flat_map(move |i| {
                let (cols, vals) = m.row(i);
                cols.iter().zip(vals).map(move |(&j, &v)| (i, j, v))
            })
        });
        CsrMatrix::from_triplets(self.n_rows, self.n_cols, triplets)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.n_rows, self.n_cols);
        for i in 0..self.n_rows {
            let (cols, vals) = self.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                d[(i, j)] = v;
            }
        }
        d
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n_rows).map(|i| self.row(i).1.iter().sum()).collect()
    }

    /// Exact entry-wise symmetry check.
    pub fn is_symmetric(&self) -> bool {
        if self.n_rows != self.n_cols {
            return false;
        }
        (0..self.n_rows).all(|i| {
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals).all(|(&j, &v)| self.get(j, i) == v)
        })
    }

    /// MatrixMarket coordinate format, 1-based, `real general`.
    pub fn to_matrix_market(&self) -> String {
        let mut s = String::with_capacity(32 * self.nnz() + 64);
        s.push_str("%%MatrixMarket matrix coordinate real general\n");
        let _ = writeln!(s, "{} {} {}", self.n_rows, self.n_cols, self.nnz());
        for i in 0..self.n_rows {
            let (cols, vals) = self.row(i);
            for (&j, &v) in cols.iter().zip(vals) {
                let _ = writeln!(s, "{} {} {:e}", i + 1, j + 1, v);
            }
        }
        s
    }
}
