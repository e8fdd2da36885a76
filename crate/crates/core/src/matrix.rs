use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// How stored entries relate to the matrix they represent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// Stored value `a` stands for the entry `i·a`.
    IFactored,
    /// Stored values are the entries themselves.
    Plain,
}

/// Dense square real matrix, row-major, with a storage [`Convention`].
///
/// Accessors take 1-based indices.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedMatrix {
    order: usize,
    entries: Vec<f64>,
    convention: Convention,
}

impl TruncatedMatrix {
    pub fn zeros(order: usize, convention: Convention) -> Result<Self> {
        let len = order.checked_mul(order).ok_or(Error::Resource { order })?;
        let mut entries = Vec::new();
        entries
            .try_reserve_exact(len)
            .map_err(|_| Error::Resource { order })?;
        entries.resize(len, 0.0);
        Ok(Self {
            order,
            entries,
            convention,
        })
    }

    pub fn from_row_major(order: usize, entries: Vec<f64>, convention: Convention) -> Result<Self> {
        if entries.len() != order * order {
            return Err(Error::domain(format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                entries.len()
            )));
        }
        Ok(Self {
            order,
            entries,
            convention,
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Entry `(m, n)`, 1-based.
    #[inline]
    pub fn get(&self, m: usize, n: usize) -> f64 {
        debug_assert!(m >= 1 && n >= 1 && m <= self.order && n <= self.order);
        self.entries[(m - 1) * self.order + (n - 1)]
    }

    #[inline]
    pub fn set(&mut self, m: usize, n: usize, value: f64) {
        debug_assert!(m >= 1 && n >= 1 && m <= self.order && n <= self.order);
        self.entries[(m - 1) * self.order + (n - 1)] = value;
    }

    /// Row `m` (1-based) as a slice of length `order`.
    #[inline]
    pub fn row(&self, m: usize) -> &[f64] {
        let start = (m - 1) * self.order;
        &self.entries[start..start + self.order]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Largest `|M_mn - M_nm|`.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for m in 1..=self.order {
            for n in (m + 1)..=self.order {
                worst = worst.max((self.get(m, n) - self.get(n, m)).abs());
            }
        }
        worst
    }

    /// Largest `|M_mn + M_nm|` (zero exactly when antisymmetric).
    pub fn max_antisymmetry_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for m in 1..=self.order {
            for n in m..=self.order {
                worst = worst.max((self.get(m, n) + self.get(n, m)).abs());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    /// Principal submatrix on the given 1-based indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> TruncatedMatrix {
        let k = indices.len();
        let mut entries = Vec::with_capacity(k * k);
        for &m in indices {
            let row = self.row(m);
            entries.extend(indices.iter().map(|&n| row[n - 1]));
        }
        TruncatedMatrix {
            order: k,
            entries,
            convention: self.convention,
        }
    }

    /// Keeps the leading `order` rows and columns.
    pub fn leading(&self, order: usize) -> TruncatedMatrix {
        let order = order.min(self.order);
        let indices: Vec<usize> = (1..=order).collect();
        self.select(&indices)
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.order, self.order, &self.entries)
    }
}
