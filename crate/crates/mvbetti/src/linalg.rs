//! Dense exact linear algebra over the rationals.
//!
//! Every dimension computed anywhere in this crate — a rank, a kernel, a
//! cohomology group — bottoms out in the routines of this module, so they are
//! deliberately plain: row-major dense matrices of [`Rational`]s and textbook
//! Gaussian elimination. Arbitrary-precision arithmetic keeps the results
//! exact; there is no pivoting heuristic to tune and no tolerance anywhere.
//!
//! Matrices act on **column** vectors: an `r × c` matrix is a linear map from
//! a `c`-dimensional space to an `r`-dimensional one, and `a.mul(&b)` is the
//! composite *a ∘ b* (apply `b` first). This orientation is used consistently
//! by every differential and restriction map in the crate.
//!
//! # Example
//!
//! ```
//! use mvbetti::linalg::QMatrix;
//!
//! let m = QMatrix::from_int_rows(&[&[1, 1], &[1, 1]]);
//! assert_eq!(m.rank(), 1);
//! // Kernel is spanned by (1, -1).
//! let k = m.kernel_basis();
//! assert_eq!((k.rows(), k.cols()), (2, 1));
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

/// Exact scalar type: arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the [`Rational`] `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Errors from shape-checked matrix operations.
#[derive(Debug, Error)]
pub enum LinalgError {
    /// Rows passed to a constructor do not all have the same length.
    #[error("ragged matrix: row 0 has {expected} entries but row {row} has {found}")]
    RaggedRows {
        /// Index of the offending row.
        row: usize,
        /// Length of row 0.
        expected: usize,
        /// Length of the offending row.
        found: usize,
    },
    /// Two matrices have incompatible shapes for the requested operation.
    #[error("shape mismatch in {op}: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    ShapeMismatch {
        /// Operation that failed.
        op: &'static str,
        /// Rows of the left operand.
        left_rows: usize,
        /// Columns of the left operand.
        left_cols: usize,
        /// Rows of the right operand.
        right_rows: usize,
        /// Columns of the right operand.
        right_cols: usize,
    },
}

/// A dense matrix over ℚ, stored row-major.
///
/// An `r × c` matrix represents a linear map ℚ^c → ℚ^r acting on column
/// vectors. Zero-dimensional shapes (`0 × c`, `r × 0`) are first-class: they
/// are the maps in and out of the zero space and arise constantly as
/// differentials at the ends of complexes.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    /// The `rows × cols` zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    /// The `n × n` identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows of rationals. All rows must have equal
    /// length; an empty row list yields the `0 × 0` matrix.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(LinalgError::RaggedRows {
                    row: i,
                    expected: ncols,
                    found: row.len(),
                });
            }
        }
        Ok(QMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from integer rows. Panics on ragged input; intended
    /// for literals in tests and docs.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| rat(n)).collect())
                .collect(),
        )
        .expect("integer rows must be rectangular")
    }

    /// Number of rows (dimension of the codomain).
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns (dimension of the domain).
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// The entry at `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.data[row * self.cols + col]
    }

    /// Overwrites the entry at `(row, col)`.
    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        self.data[row * self.cols + col] = value;
    }

    /// Adds `value` to the entry at `(row, col)`.
    pub fn add_to(&mut self, row: usize, col: usize, value: &Rational) {
        let slot = &mut self.data[row * self.cols + col];
        *slot = &*slot + value;
    }

    /// True if every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Copies `block`, scaled by `scale`, into this matrix with its top-left
    /// corner at `(row0, col0)`, adding to what is already there. Panics if
    /// the block sticks out.
    pub fn add_block_scaled(&mut self, row0: usize, col0: usize, block: &QMatrix, scale: &Rational) {
        assert!(
            row0 + block.rows <= self.rows && col0 + block.cols <= self.cols,
            "block of shape {}x{} does not fit at ({row0}, {col0}) in a {}x{} matrix",
            block.rows,
            block.cols,
            self.rows,
            self.cols
        );
        if scale.is_zero() {
            return;
        }
        for i in 0..block.rows {
            for j in 0..block.cols {
                let v = block.get(i, j);
                if !v.is_zero() {
                    self.add_to(row0 + i, col0 + j, &(v * scale));
                }
            }
        }
    }

    /// Copies `block` into this matrix at `(row0, col0)`, adding to what is
    /// already there.
    pub fn add_block(&mut self, row0: usize, col0: usize, block: &QMatrix) {
        self.add_block_scaled(row0, col0, block, &Rational::one());
    }

    /// Matrix product `self ∘ rhs` (apply `rhs` first).
    pub fn mul(&self, rhs: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::ShapeMismatch {
                op: "mul",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise difference `self - rhs`.
    pub fn sub(&self, rhs: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(LinalgError::ShapeMismatch {
                op: "sub",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = out.get(i, j) - rhs.get(i, j);
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// Every entry multiplied by `scale`.
    pub fn scaled(&self, scale: &Rational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * scale).collect(),
        }
    }

    /// Horizontal concatenation `[self | rhs]`. Both must have the same
    /// number of rows.
    pub fn hstack(&self, rhs: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.rows != rhs.rows {
            return Err(LinalgError::ShapeMismatch {
                op: "hstack",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: rhs.rows,
                right_cols: rhs.cols,
            });
        }
        let mut out = QMatrix::zeros(self.rows, self.cols + rhs.cols);
        out.add_block(0, 0, self);
        out.add_block(0, self.cols, rhs);
        Ok(out)
    }

    /// Rank over ℚ, by fraction-based Gaussian elimination.
    pub fn rank(&self) -> usize {
        let (_, pivots) = self.reduced_row_echelon();
        pivots.len()
    }

    /// A basis of the kernel `{v : self · v = 0}` as the **columns** of the
    /// returned matrix, which has shape `cols × nullity`. The basis is the
    /// standard one read off the reduced row echelon form: one vector per
    /// free column, with a 1 in that column's coordinate.
    pub fn kernel_basis(&self) -> QMatrix {
        let (rref, pivots) = self.reduced_row_echelon();
        let is_pivot = {
            let mut flags = vec![false; self.cols];
            for &c in &pivots {
                flags[c] = true;
            }
            flags
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = QMatrix::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, Rational::one());
            // Pivot row i constrains x[pivots[i]] = -Σ_free rref[i][fc]·x[fc].
            for (i, &pc) in pivots.iter().enumerate() {
                let coeff = rref.get(i, fc);
                if !coeff.is_zero() {
                    basis.set(pc, k, -coeff.clone());
                }
            }
        }
        basis
    }

    /// Reduced row echelon form together with the pivot column indices, in
    /// increasing order.
    fn reduced_row_echelon(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = m.get(row, col).recip();
            m.scale_row(row, &inv);
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.sub_scaled_row(r, row, &factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Rational) {
        for j in 0..self.cols {
            if !self.get(r, j).is_zero() {
                let v = self.get(r, j) * factor;
                self.set(r, j, v);
            }
        }
    }

    /// `row[r] -= factor · row[src]`. Zero entries of the source row are
    /// skipped; the matrices here are typically very sparse.
    fn sub_scaled_row(&mut self, r: usize, src: usize, factor: &Rational) {
        for j in 0..self.cols {
            if self.get(src, j).is_zero() {
                continue;
            }
            let v = self.get(r, j) - self.get(src, j) * factor;
            self.set(r, j, v);
        }
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix {}x{} {}", self.rows, self.cols, self)
    }
}

/// Rows rendered as `[a b c]`, one per line; integral entries print without
/// a denominator. A matrix with zero rows or columns prints as `[]x{shape}`.
impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[]x{}x{}", self.rows, self.cols);
        }
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                let v = self.get(i, j);
                if v.is_integer() {
                    write!(f, "{}", v.numer())?;
                } else {
                    write!(f, "{}/{}", v.numer(), v.denom())?;
                }
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// True iff the composite `a ∘ b` is the zero map; `b` is applied first, so
/// `a.cols() == b.rows()` is required.
pub fn composition_is_zero(a: &QMatrix, b: &QMatrix) -> Result<bool, LinalgError> {
    Ok(a.mul(b)?.is_zero())
}

/// Block-diagonal direct sum of the given matrices, in order. The result has
/// `Σ rows × Σ cols`; an empty list yields the `0 × 0` matrix.
pub fn block_direct_sum(blocks: &[&QMatrix]) -> QMatrix {
    let rows = blocks.iter().map(|b| b.rows()).sum();
    let cols = blocks.iter().map(|b| b.cols()).sum();
    let mut out = QMatrix::zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        out.add_block(r0, c0, b);
        r0 += b.rows();
        c0 += b.cols();
    }
    out
}

/// Sign of the permutation sorting `values` ascending, or `None` if two
/// entries are equal. Used when reindexing alternating tuples: the sorted
/// tuple picks up the sign, and a repeated entry kills the term.
pub fn sort_sign<T: Ord + Clone>(values: &[T]) -> Option<(Vec<T>, Rational)> {
    let mut sorted = values.to_vec();
    let mut sign = 1i64;
    // Insertion sort, counting transpositions exactly.
    for i in 1..sorted.len() {
        let mut j = i;
        while j > 0 && sorted[j - 1] > sorted[j] {
            sorted.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((sorted, rat(sign)))
}
