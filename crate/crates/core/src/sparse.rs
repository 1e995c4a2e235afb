//! Sparse integer matrices for section boundaries and Laplacians.
//!
//! Storage is sorted triplets; sizes stay desk-scale, so the heavy
//! operations (Laplacian assembly, modular elimination) densify on
//! demand.

use nalgebra::DMatrix;

/// A sparse integer matrix with sorted, deduplicated triplets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    pub nrows: usize,
    pub ncols: usize,
    entries: Vec<(u32, u32, i64)>,
}

impl SparseIntMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseIntMatrix {
            nrows,
            ncols,
            entries: Vec::new(),
        }
    }

    pub fn from_triplets(nrows: usize, ncols: usize, mut triplets: Vec<(u32, u32, i64)>) -> Self {
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<(u32, u32, i64)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            debug_assert!((r as usize) < nrows && (c as usize) < ncols);
            if v == 0 {
                continue;
            }
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => {
                    last.2 += v;
                    if last.2 == 0 {
                        entries.pop();
                    }
                }
                _ => entries.push((r, c, v)),
            }
        }
        SparseIntMatrix {
            nrows,
            ncols,
            entries,
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn triplets(&self) -> &[(u32, u32, i64)] {
        &self.entries
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        SparseIntMatrix::from_triplets(
            self.ncols,
            self.nrows,
            self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect(),
        )
    }

    /// Exact sparse product self * other.
    pub fn mul(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.ncols, other.nrows, "sparse product shape mismatch");
        // Row-bucket the right factor once.
        let mut rows_of_other: Vec<Vec<(u32, i64)>> = vec![Vec::new(); other.nrows];
        for &(r, c, v) in &other.entries {
            rows_of_other[r as usize].push((c, v));
        }
        let mut triplets = Vec::new();
        let mut acc: std::collections::BTreeMap<(u32, u32), i64> =
            std::collections::BTreeMap::new();
        for &(r, k, v) in &self.entries {
            for &(c, w) in &rows_of_other[k as usize] {
                *acc.entry((r, c)).or_insert(0) += v * w;
            }
        }
        for ((r, c), v) in acc {
            if v != 0 {
                triplets.push((r, c, v));
            }
        }
        SparseIntMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            entries: triplets,
        }
    }

    /// y += A x in f64.
    pub fn matvec_add(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.ncols);
        debug_assert_eq!(y.len(), self.nrows);
        for &(r, c, v) in &self.entries {
            y[r as usize] += v as f64 * x[c as usize];
        }
    }

    /// Maximum absolute row sum (operator ∞-norm).
    pub fn norm_inf(&self) -> f64 {
        let mut sums = vec![0f64; self.nrows];
        for &(r, _, v) in &self.entries {
            sums[r as usize] += v.unsigned_abs() as f64;
        }
        sums.into_iter().fold(0.0, f64::max)
    }

    pub fn to_dense_f64(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.nrows, self.ncols);
        for &(r, c, v) in &self.entries {
            m[(r as usize, c as usize)] = v as f64;
        }
        m
    }

    pub fn to_dense_i64(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.ncols]; self.nrows];
        for &(r, c, v) in &self.entries {
            m[r as usize][c as usize] = v;
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }
}
