use std::fmt;
use std::num::NonZeroUsize;

use crate::error::{Error, Result};

/// 1-based label `m` of the sine basis function `u_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex(NonZeroUsize);

impl BasisIndex {
    pub fn new(value: usize) -> Result<Self> {
        NonZeroUsize::new(value)
            .map(BasisIndex)
            .ok_or_else(|| Error::domain("basis indices start at 1"))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0.get()
    }

    #[inline]
    pub fn is_odd(self) -> bool {
        self.get() % 2 == 1
    }
}

impl TryFrom<usize> for BasisIndex {
    type Error = Error;

    fn try_from(value: usize) -> Result<Self> {
        BasisIndex::new(value)
    }
}

impl From<BasisIndex> for usize {
    fn from(index: BasisIndex) -> usize {
        index.get()
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
