//! Supporting protocols: multiplication, truncation, bit decomposition,
//! prefix multiplication, comparison and division.
//!
//! Every function here is executed by all three parties with the same
//! arguments shape-wise. P0 and P1 pass their shares; the helper passes
//! placeholder matrices of the right shape (see [`SharedMatrix::placeholder`])
//! and only deals correlated randomness.

mod bitdecomp;
mod compare;
mod division;
pub mod local;
mod matmul;
mod premult;
pub mod rounds;
mod trunc;

pub use bitdecomp::{bit_decomp, SharedBits};
pub use compare::compare_ge;
pub use division::division;
pub use matmul::{mat_mul, mul};
pub use premult::pre_mult;
pub use trunc::trunc_floor;

use crate::error::{Error, Result};

/// One party's shares of a `rows x cols` matrix, row-major.
///
/// `fixed` marks values scaled by `2^f`; products of two fixed-point
/// operands are truncated back to scale `2^f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedMatrix {
    pub rows: usize,
    pub cols: usize,
    pub fixed: bool,
    pub data: Vec<u128>,
}

impl SharedMatrix {
    pub fn new(rows: usize, cols: usize, fixed: bool, data: Vec<u128>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::Usage(format!(
                "{rows}x{cols} matrix needs {} elements, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(SharedMatrix {
            rows,
            cols,
            fixed,
            data,
        })
    }

    /// Row vector.
    pub fn from_vec(data: Vec<u128>, fixed: bool) -> Self {
        SharedMatrix {
            rows: 1,
            cols: data.len(),
            fixed,
            data,
        }
    }

    /// What the helper passes in place of shares it does not have.
    pub fn placeholder(rows: usize, cols: usize, fixed: bool) -> Self {
        SharedMatrix {
            rows,
            cols,
            fixed,
            data: vec![0; rows * cols],
        }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn same_shape(&self, other: &SharedMatrix) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }

    pub(crate) fn with_data(&self, data: Vec<u128>, fixed: bool) -> SharedMatrix {
        debug_assert_eq!(data.len(), self.len());
        SharedMatrix {
            rows: self.rows,
            cols: self.cols,
            fixed,
            data,
        }
    }
}

pub(crate) fn check_same_shape(op: &str, a: &SharedMatrix, b: &SharedMatrix) -> Result<()> {
    if !a.same_shape(b) {
        return Err(Error::Usage(format!(
            "{op}: shapes differ ({}x{} vs {}x{})",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(())
}
