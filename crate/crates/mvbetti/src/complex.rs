//! Graded cochain complexes of finite-dimensional ℚ-vector spaces, and the
//! chain maps between them.
//!
//! A [`GradedComplex`] is a finite window of dimensions `dims[0..n]` starting
//! at some (possibly negative) degree `min_degree`, together with
//! differentials δ^p going **up** one degree, satisfying δ ∘ δ = 0. Outside
//! the window every space is zero, and helper accessors hand back correctly
//! shaped zero matrices so callers never special-case the boundary.
//!
//! Cohomology is computed degreewise from two ranks:
//!
//! ```text
//! dim H^p  =  dim C^p  −  rank δ^p  −  rank δ^{p−1}
//! ```
//!
//! A [`ComplexMap`] is a degreewise matrix family commuting with the
//! differentials (checked at construction). Whether it is a
//! quasi-isomorphism is decided exactly, by comparing the dimensions of
//! source and target cohomology with the rank of the induced map — the
//! latter read off as `rank [f·Z | B] − rank B`, where `Z` spans the source
//! cocycles and `B` the target coboundaries.
//!
//! # Example
//!
//! ```
//! use mvbetti::complex::GradedComplex;
//! use mvbetti::linalg::QMatrix;
//!
//! // 0 → ℚ² → ℚ² → 0 with the rank-one all-ones differential.
//! let c = GradedComplex::new(
//!     0,
//!     vec![2, 2],
//!     vec![QMatrix::from_int_rows(&[&[1, 1], &[1, 1]])],
//! )
//! .unwrap();
//! assert_eq!(c.cohomology_dims(), vec![1, 1]);
//! ```

use crate::linalg::{block_direct_sum, composition_is_zero, QMatrix};
use thiserror::Error;

/// Errors from complex and chain-map constructors.
#[derive(Debug, Error)]
pub enum ComplexError {
    /// `dims` and `diffs` lengths are inconsistent.
    #[error("a complex with {dims} graded pieces needs {expected} differentials, got {found}")]
    DifferentialCount {
        /// Number of graded pieces.
        dims: usize,
        /// Required number of differentials.
        expected: usize,
        /// Provided number of differentials.
        found: usize,
    },
    /// A differential has the wrong shape for its position.
    #[error("differential at degree {degree} should be {expected_rows}x{expected_cols}, got {found_rows}x{found_cols}")]
    DifferentialShape {
        /// Degree the differential leaves from.
        degree: i64,
        /// Expected row count.
        expected_rows: usize,
        /// Expected column count.
        expected_cols: usize,
        /// Actual row count.
        found_rows: usize,
        /// Actual column count.
        found_cols: usize,
    },
    /// δ ∘ δ ≠ 0 at some degree.
    #[error("differentials do not compose to zero out of degree {degree}")]
    SquareNotZero {
        /// Degree the failing composite starts from.
        degree: i64,
    },
    /// A chain-map matrix has the wrong shape at some degree.
    #[error("chain map at degree {degree} should be {expected_rows}x{expected_cols}, got {found_rows}x{found_cols}")]
    MapShape {
        /// Degree of the offending matrix.
        degree: i64,
        /// Expected row count.
        expected_rows: usize,
        /// Expected column count.
        expected_cols: usize,
        /// Actual row count.
        found_rows: usize,
        /// Actual column count.
        found_cols: usize,
    },
    /// A chain map fails to commute with the differentials.
    #[error("chain map does not commute with differentials at degree {degree}")]
    MapNotChain {
        /// Degree where commutation fails.
        degree: i64,
    },
    /// The provided matrix window misses a degree where both source and
    /// target are nonzero, so the implicit zero map would be ambiguous.
    #[error("chain map window misses degree {degree} where source and target are both nonzero")]
    MapWindowMisses {
        /// Uncovered degree.
        degree: i64,
    },
}

/// A bounded cochain complex over ℚ.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    min_degree: i64,
    dims: Vec<usize>,
    /// `diffs[i]` maps degree `min_degree + i` to `min_degree + i + 1`;
    /// there are `dims.len() - 1` of them (none for an empty or one-term
    /// complex).
    diffs: Vec<QMatrix>,
}

impl GradedComplex {
    /// Builds a complex after validating shapes and δ ∘ δ = 0.
    ///
    /// `diffs.len()` must be `dims.len() - 1` (or 0 if `dims` is empty), and
    /// `diffs[i]` must have shape `dims[i+1] × dims[i]`.
    pub fn new(
        min_degree: i64,
        dims: Vec<usize>,
        diffs: Vec<QMatrix>,
    ) -> Result<Self, ComplexError> {
        let expected = dims.len().saturating_sub(1);
        if diffs.len() != expected {
            return Err(ComplexError::DifferentialCount {
                dims: dims.len(),
                expected,
                found: diffs.len(),
            });
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != dims[i + 1] || d.cols() != dims[i] {
                return Err(ComplexError::DifferentialShape {
                    degree: min_degree + i as i64,
                    expected_rows: dims[i + 1],
                    expected_cols: dims[i],
                    found_rows: d.rows(),
                    found_cols: d.cols(),
                });
            }
        }
        for i in 0..diffs.len().saturating_sub(1) {
            if !composition_is_zero(&diffs[i + 1], &diffs[i]).expect("shapes already validated") {
                return Err(ComplexError::SquareNotZero {
                    degree: min_degree + i as i64,
                });
            }
        }
        Ok(GradedComplex {
            min_degree,
            dims,
            diffs,
        })
    }

    /// The empty complex (zero in every degree).
    pub fn zero() -> Self {
        GradedComplex {
            min_degree: 0,
            dims: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// A complex concentrated in one degree with no differentials.
    pub fn concentrated(degree: i64, dim: usize) -> Self {
        GradedComplex {
            min_degree: degree,
            dims: vec![dim],
            diffs: Vec::new(),
        }
    }

    /// True if the complex has no graded pieces at all.
    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// First degree of the stored window.
    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    /// Last degree of the stored window, or `None` for the empty complex.
    pub fn max_degree(&self) -> Option<i64> {
        if self.dims.is_empty() {
            None
        } else {
            Some(self.min_degree + self.dims.len() as i64 - 1)
        }
    }

    /// The dimension window starting at [`Self::min_degree`].
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension at an arbitrary degree (zero outside the window).
    pub fn dim_at(&self, degree: i64) -> usize {
        let i = degree - self.min_degree;
        if i < 0 || i as usize >= self.dims.len() {
            0
        } else {
            self.dims[i as usize]
        }
    }

    /// The differential out of `degree`, with shape
    /// `dim_at(degree+1) × dim_at(degree)`; a zero matrix outside the window.
    pub fn diff_at(&self, degree: i64) -> QMatrix {
        let i = degree - self.min_degree;
        if i >= 0 && (i as usize) < self.diffs.len() {
            self.diffs[i as usize].clone()
        } else {
            QMatrix::zeros(self.dim_at(degree + 1), self.dim_at(degree))
        }
    }

    /// Cohomology dimensions over the same window as [`Self::dims`].
    pub fn cohomology_dims(&self) -> Vec<usize> {
        (0..self.dims.len())
            .map(|i| self.cohomology_at(self.min_degree + i as i64))
            .collect()
    }

    /// `dim H^degree` (zero outside the window).
    pub fn cohomology_at(&self, degree: i64) -> usize {
        let d = self.dim_at(degree);
        if d == 0 {
            return 0;
        }
        d - self.diff_at(degree).rank() - self.diff_at(degree - 1).rank()
    }

    /// Alternating sum `Σ (−1)^p dim C^p`, which equals the same sum over
    /// cohomology.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let p = self.min_degree + i as i64;
                if p.rem_euclid(2) == 0 {
                    d as i64
                } else {
                    -(d as i64)
                }
            })
            .sum()
    }

    /// The brutal truncation keeping degrees ≤ `t`: pieces above `t` become
    /// zero and the differential out of `t` is dropped. Cohomology below
    /// degree `t` is unchanged; at `t` it can only grow (the cocycle
    /// condition disappears).
    pub fn truncate(&self, t: i64) -> GradedComplex {
        if self.dims.is_empty() || t < self.min_degree {
            return GradedComplex::zero();
        }
        let keep = ((t - self.min_degree) as usize + 1).min(self.dims.len());
        GradedComplex {
            min_degree: self.min_degree,
            dims: self.dims[..keep].to_vec(),
            diffs: self.diffs[..keep - 1].to_vec(),
        }
    }

    /// Degreewise direct sum; the window is the union of the two windows.
    pub fn direct_sum(&self, other: &GradedComplex) -> GradedComplex {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        let min = self.min_degree.min(other.min_degree);
        let max = self.max_degree().unwrap().max(other.max_degree().unwrap());
        let n = (max - min + 1) as usize;
        let dims: Vec<usize> = (0..n)
            .map(|i| self.dim_at(min + i as i64) + other.dim_at(min + i as i64))
            .collect();
        let diffs: Vec<QMatrix> = (0..n.saturating_sub(1))
            .map(|i| {
                let p = min + i as i64;
                block_direct_sum(&[&self.diff_at(p), &other.diff_at(p)])
            })
            .collect();
        GradedComplex {
            min_degree: min,
            dims,
            diffs,
        }
    }
}

/// A degreewise linear map between two complexes, commuting with their
/// differentials. The source and target complexes are stored inside the map,
/// so a `ComplexMap` is self-contained and always validated.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    source: GradedComplex,
    target: GradedComplex,
    mats_from: i64,
    mats: Vec<QMatrix>,
}

impl ComplexMap {
    /// Builds a chain map from matrices `mats[i] : source^{mats_from+i} →
    /// target^{mats_from+i}` (shape `target dim × source dim`).
    ///
    /// Degrees not covered by `mats` get the zero map, which is only
    /// accepted where source or target is zero-dimensional — otherwise an
    /// intended zero block must be passed explicitly. Commutation
    /// `δ_target ∘ f^p = f^{p+1} ∘ δ_source` is checked at every degree.
    pub fn new(
        source: GradedComplex,
        target: GradedComplex,
        mats_from: i64,
        mats: Vec<QMatrix>,
    ) -> Result<Self, ComplexError> {
        let map = ComplexMap {
            source,
            target,
            mats_from,
            mats,
        };
        // Shape check over the provided window.
        for (i, m) in map.mats.iter().enumerate() {
            let p = map.mats_from + i as i64;
            let (er, ec) = (map.target.dim_at(p), map.source.dim_at(p));
            if m.rows() != er || m.cols() != ec {
                return Err(ComplexError::MapShape {
                    degree: p,
                    expected_rows: er,
                    expected_cols: ec,
                    found_rows: m.rows(),
                    found_cols: m.cols(),
                });
            }
        }
        // Uncovered degrees must have a zero side.
        for p in map.degree_window() {
            let covered =
                p >= map.mats_from && p < map.mats_from + map.mats.len() as i64;
            if !covered && map.source.dim_at(p) > 0 && map.target.dim_at(p) > 0 {
                return Err(ComplexError::MapWindowMisses { degree: p });
            }
        }
        // Commutation at every degree of the union window.
        for p in map.degree_window() {
            let lhs = map
                .target
                .diff_at(p)
                .mul(&map.map_at(p))
                .expect("shapes validated");
            let rhs = map
                .map_at(p + 1)
                .mul(&map.source.diff_at(p))
                .expect("shapes validated");
            if lhs != rhs {
                return Err(ComplexError::MapNotChain { degree: p });
            }
        }
        Ok(map)
    }

    /// The zero chain map (valid between any two complexes).
    pub fn zero_map(source: GradedComplex, target: GradedComplex) -> Self {
        ComplexMap {
            source,
            target,
            mats_from: 0,
            mats: Vec::new(),
        }
    }

    /// The source complex.
    pub fn source(&self) -> &GradedComplex {
        &self.source
    }

    /// The target complex.
    pub fn target(&self) -> &GradedComplex {
        &self.target
    }

    /// The matrix at `degree`, with shape
    /// `target.dim_at(degree) × source.dim_at(degree)`.
    pub fn map_at(&self, degree: i64) -> QMatrix {
        let i = degree - self.mats_from;
        if i >= 0 && (i as usize) < self.mats.len() {
            self.mats[i as usize].clone()
        } else {
            QMatrix::zeros(self.target.dim_at(degree), self.source.dim_at(degree))
        }
    }

    /// All degrees where source or target can be nonzero.
    fn degree_window(&self) -> std::ops::RangeInclusive<i64> {
        let mins = [
            (!self.source.is_empty()).then(|| self.source.min_degree()),
            (!self.target.is_empty()).then(|| self.target.min_degree()),
        ];
        let maxs = [self.source.max_degree(), self.target.max_degree()];
        let lo = mins.iter().flatten().min().copied().unwrap_or(0);
        let hi = maxs.iter().flatten().max().copied().unwrap_or(-1);
        lo..=hi
    }

    /// Rank of the induced map `H^degree(source) → H^degree(target)`.
    ///
    /// With `Z` a basis of source cocycles and `B` the target coboundary
    /// matrix, this is `rank [f·Z | B] − rank B`: adjoining the image
    /// cocycles to the coboundaries counts how many survive in cohomology.
    /// The map is an isomorphism at `degree` iff this rank equals both
    /// cohomology dimensions.
    pub fn induced_rank_at(&self, degree: i64) -> usize {
        let z = self.source.diff_at(degree).kernel_basis();
        let fz = self.map_at(degree).mul(&z).expect("shapes validated");
        let b = self.target.diff_at(degree - 1);
        let stacked = fz.hstack(&b).expect("row counts equal");
        stacked.rank() - b.rank()
    }

    /// True iff the map induces isomorphisms on cohomology in every degree:
    /// at each `p`, source and target cohomology dimensions agree and equal
    /// the induced rank.
    pub fn is_quasi_isomorphism(&self) -> bool {
        self.degree_window().all(|p| {
            let hs = self.source.cohomology_at(p);
            let ht = self.target.cohomology_at(p);
            hs == ht && hs == self.induced_rank_at(p)
        })
    }
}
