//! First-quadrant double complexes with commuting stored differentials.
//!
//! A [`DoubleComplex`] places a finite-dimensional ℚ-vector space at
//! integer spots `(p, q)` with `p, q ≥ 0`, a horizontal differential
//! `δ^{p,q} : (p,q) → (p+1,q)` and a vertical one `d^{p,q} : (p,q) → (p,q+1)`.
//! Rows and columns are complexes (δδ = 0, dd = 0) and each square must
//! either commute or anticommute, as declared by the stored
//! [`SignConvention`].
//!
//! **Totalization.** `Tot^n = ⊕_{p+q=n} C^{p,q}` becomes a [`GradedComplex`]
//! under `D = δ + (−1)^p d`. The twist is applied *during* totalization when
//! squares are stored commuting (the natural state for the Mayer–Vietoris
//! complexes in this crate); complexes stored anticommuting are totalized
//! as-is. Either way the resulting `D` squares to zero, and the constructor
//! of the total complex re-verifies that.
//!
//! **Truncation.** [`DoubleComplex::truncate_antidiagonal`] keeps the spots
//! with `p + q ≤ t`; this bounds the total complex while preserving its
//! cohomology strictly below degree `t`.
//!
//! **Spectral pages.** [`DoubleComplex::e_page_dims`] reports the dimensions
//! of the first or second page of either filtration: taking vertical
//! cohomology first ([`Filtration::RowFirst`], columns first collapse, the
//! `q = 0` row of page one is nerve-like) or horizontal first
//! ([`Filtration::ColumnFirst`]). Page two is computed from ranks of the
//! induced maps on page one.

use crate::complex::{ComplexError, ComplexMap, GradedComplex};
use crate::linalg::{rat, QMatrix, Rational};
use num_traits::One;
use std::collections::BTreeMap;
use thiserror::Error;

/// Whether the stored squares commute (`d δ = δ d`) or anticommute
/// (`d δ + δ d = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignConvention {
    /// Squares commute; totalization twists the vertical maps by `(−1)^p`.
    Commuting,
    /// Squares anticommute; totalization uses the maps as stored.
    Anticommuting,
}

/// Which differential is taken first when computing spectral pages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filtration {
    /// Page one is vertical cohomology of each column; page two applies the
    /// induced horizontal maps.
    RowFirst,
    /// Page one is horizontal cohomology of each row; page two applies the
    /// induced vertical maps.
    ColumnFirst,
}

/// Errors from double-complex and double-chain-map constructors.
#[derive(Debug, Error)]
pub enum DoubleComplexError {
    /// A differential has the wrong shape for its spot.
    #[error("{dir} differential at ({p},{q}) should be {expected_rows}x{expected_cols}, got {found_rows}x{found_cols}")]
    DifferentialShape {
        /// `"horizontal"` or `"vertical"`.
        dir: &'static str,
        /// Column of the spot the differential leaves.
        p: usize,
        /// Row of the spot the differential leaves.
        q: usize,
        /// Expected row count.
        expected_rows: usize,
        /// Expected column count.
        expected_cols: usize,
        /// Actual row count.
        found_rows: usize,
        /// Actual column count.
        found_cols: usize,
    },
    /// Two consecutive differentials in a row or column do not compose to
    /// zero.
    #[error("{dir} differentials do not square to zero out of ({p},{q})")]
    SquareNotZero {
        /// `"horizontal"` or `"vertical"`.
        dir: &'static str,
        /// Column of the starting spot.
        p: usize,
        /// Row of the starting spot.
        q: usize,
    },
    /// A square fails the declared sign convention.
    #[error("square at ({p},{q}) violates the {convention:?} convention")]
    SquareConvention {
        /// Column of the square's lower-left corner.
        p: usize,
        /// Row of the square's lower-left corner.
        q: usize,
        /// The declared convention.
        convention: SignConvention,
    },
    /// A map matrix has the wrong shape at some spot.
    #[error("double-complex map at ({p},{q}) should be {expected_rows}x{expected_cols}, got {found_rows}x{found_cols}")]
    MapShape {
        /// Column of the spot.
        p: usize,
        /// Row of the spot.
        q: usize,
        /// Expected row count.
        expected_rows: usize,
        /// Expected column count.
        expected_cols: usize,
        /// Actual row count.
        found_rows: usize,
        /// Actual column count.
        found_cols: usize,
    },
    /// A map fails to commute with one of the differentials.
    #[error("double-complex map does not commute with the {dir} differential at ({p},{q})")]
    MapNotChain {
        /// `"horizontal"` or `"vertical"`.
        dir: &'static str,
        /// Column of the failing spot.
        p: usize,
        /// Row of the failing spot.
        q: usize,
    },
    /// Source and target of a map use different sign conventions.
    #[error("double-complex map between complexes with different sign conventions ({from:?} vs {to:?})")]
    SignMismatch {
        /// Convention of the source.
        from: SignConvention,
        /// Convention of the target.
        to: SignConvention,
    },
    /// Only pages one and two are implemented.
    #[error("spectral page {page} not supported (only pages 1 and 2)")]
    UnsupportedPage {
        /// Requested page.
        page: u8,
    },
    /// A totalization produced an invalid complex (indicates an internal
    /// inconsistency; should be unreachable for validated inputs).
    #[error("totalization failed: {0}")]
    Totalization(#[from] ComplexError),
}

/// A validated first-quadrant double complex.
#[derive(Clone, Debug)]
pub struct DoubleComplex {
    sign: SignConvention,
    /// Nonzero dimensions only.
    dims: BTreeMap<(usize, usize), usize>,
    horiz: BTreeMap<(usize, usize), QMatrix>,
    vert: BTreeMap<(usize, usize), QMatrix>,
}

impl DoubleComplex {
    /// Builds and fully validates a double complex. `dims` lists the spot
    /// dimensions (zeros are dropped); missing differentials are zero.
    /// Validation covers shapes, δδ = 0 along rows, dd = 0 along columns,
    /// and the declared sign convention on every square.
    pub fn new(
        sign: SignConvention,
        dims: BTreeMap<(usize, usize), usize>,
        horiz: BTreeMap<(usize, usize), QMatrix>,
        vert: BTreeMap<(usize, usize), QMatrix>,
    ) -> Result<Self, DoubleComplexError> {
        let dims: BTreeMap<_, _> = dims.into_iter().filter(|&(_, d)| d > 0).collect();
        let dc = DoubleComplex {
            sign,
            dims,
            horiz,
            vert,
        };
        for (&(p, q), m) in &dc.horiz {
            let (er, ec) = (dc.dim(p + 1, q), dc.dim(p, q));
            if m.rows() != er || m.cols() != ec {
                return Err(DoubleComplexError::DifferentialShape {
                    dir: "horizontal",
                    p,
                    q,
                    expected_rows: er,
                    expected_cols: ec,
                    found_rows: m.rows(),
                    found_cols: m.cols(),
                });
            }
        }
        for (&(p, q), m) in &dc.vert {
            let (er, ec) = (dc.dim(p, q + 1), dc.dim(p, q));
            if m.rows() != er || m.cols() != ec {
                return Err(DoubleComplexError::DifferentialShape {
                    dir: "vertical",
                    p,
                    q,
                    expected_rows: er,
                    expected_cols: ec,
                    found_rows: m.rows(),
                    found_cols: m.cols(),
                });
            }
        }
        for &(p, q) in dc.dims.keys() {
            let h2 = dc
                .horizontal(p + 1, q)
                .mul(&dc.horizontal(p, q))
                .expect("shapes validated");
            if !h2.is_zero() {
                return Err(DoubleComplexError::SquareNotZero {
                    dir: "horizontal",
                    p,
                    q,
                });
            }
            let v2 = dc
                .vertical(p, q + 1)
                .mul(&dc.vertical(p, q))
                .expect("shapes validated");
            if !v2.is_zero() {
                return Err(DoubleComplexError::SquareNotZero {
                    dir: "vertical",
                    p,
                    q,
                });
            }
            let vh = dc
                .vertical(p + 1, q)
                .mul(&dc.horizontal(p, q))
                .expect("shapes validated");
            let hv = dc
                .horizontal(p, q + 1)
                .mul(&dc.vertical(p, q))
                .expect("shapes validated");
            let ok = match sign {
                SignConvention::Commuting => vh == hv,
                SignConvention::Anticommuting => vh.sub(&hv.scaled(&rat(-1))).expect("same shape").is_zero(),
            };
            if !ok {
                return Err(DoubleComplexError::SquareConvention {
                    p,
                    q,
                    convention: sign,
                });
            }
        }
        Ok(dc)
    }

    /// The declared sign convention of the stored squares.
    pub fn sign_convention(&self) -> SignConvention {
        self.sign
    }

    /// Dimension at `(p, q)` (zero off the stored support).
    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Spots with nonzero dimension, in lexicographic `(p, q)` order.
    pub fn spots(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.dims.iter().map(|(&k, &d)| (k, d))
    }

    /// The horizontal differential `(p,q) → (p+1,q)`; a correctly shaped
    /// zero matrix where none is stored.
    pub fn horizontal(&self, p: usize, q: usize) -> QMatrix {
        self.horiz
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| QMatrix::zeros(self.dim(p + 1, q), self.dim(p, q)))
    }

    /// The vertical differential `(p,q) → (p,q+1)`; a correctly shaped zero
    /// matrix where none is stored.
    pub fn vertical(&self, p: usize, q: usize) -> QMatrix {
        self.vert
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| QMatrix::zeros(self.dim(p, q + 1), self.dim(p, q)))
    }

    /// Largest total degree `p + q` carrying a nonzero spot, or `None` for
    /// the empty complex.
    pub fn max_total_degree(&self) -> Option<usize> {
        self.dims.keys().map(|&(p, q)| p + q).max()
    }

    /// Spots on the anti-diagonal `p + q = n` with nonzero dimension, in
    /// increasing `p`. This fixes the block order inside `Tot^n`.
    pub fn antidiagonal(&self, n: usize) -> Vec<((usize, usize), usize)> {
        (0..=n)
            .filter_map(|p| {
                let d = self.dim(p, n - p);
                (d > 0).then_some(((p, n - p), d))
            })
            .collect()
    }

    /// Offset of the `(p, q)` block inside `Tot^{p+q}`, together with the
    /// total dimension of that degree. The spot itself may be zero.
    pub fn block_offset(&self, p: usize, q: usize) -> (usize, usize) {
        let n = p + q;
        let mut offset = 0;
        let mut total = 0;
        for pp in 0..=n {
            let d = self.dim(pp, n - pp);
            if pp < p {
                offset += d;
            }
            total += d;
        }
        (offset, total)
    }

    /// The total complex `(Tot, D)` with `Tot^n = ⊕_{p+q=n} C^{p,q}` (blocks
    /// in increasing `p`) and `D = δ + (−1)^p d` — the twist applied here if
    /// squares are stored commuting, or already baked in if anticommuting.
    pub fn total_complex(&self) -> Result<GradedComplex, DoubleComplexError> {
        let Some(max) = self.max_total_degree() else {
            return Ok(GradedComplex::zero());
        };
        let dims: Vec<usize> = (0..=max)
            .map(|n| self.antidiagonal(n).iter().map(|&(_, d)| d).sum())
            .collect();
        let mut diffs = Vec::new();
        for n in 0..max {
            let mut big = QMatrix::zeros(dims[n + 1], dims[n]);
            for ((p, q), _) in self.antidiagonal(n) {
                let (src_off, _) = self.block_offset(p, q);
                // Horizontal block into (p+1, q).
                let h = self.horizontal(p, q);
                if h.rows() > 0 {
                    let (dst_off, _) = self.block_offset(p + 1, q);
                    big.add_block(dst_off, src_off, &h);
                }
                // Vertical block into (p, q+1), twisted if stored commuting.
                let v = self.vertical(p, q);
                if v.rows() > 0 {
                    let (dst_off, _) = self.block_offset(p, q + 1);
                    let scale = match self.sign {
                        SignConvention::Commuting if p % 2 == 1 => rat(-1),
                        _ => Rational::one(),
                    };
                    big.add_block_scaled(dst_off, src_off, &v, &scale);
                }
            }
            diffs.push(big);
        }
        Ok(GradedComplex::new(0, dims, diffs)?)
    }

    /// Keeps the spots with `p + q ≤ t` and every differential staying
    /// inside that band. Negative `t` empties the complex. Total-complex
    /// cohomology strictly below degree `t` is unchanged.
    pub fn truncate_antidiagonal(&self, t: i64) -> DoubleComplex {
        let keep = |p: usize, q: usize| (p + q) as i64 <= t;
        DoubleComplex {
            sign: self.sign,
            dims: self
                .dims
                .iter()
                .filter(|&(&(p, q), _)| keep(p, q))
                .map(|(&k, &d)| (k, d))
                .collect(),
            horiz: self
                .horiz
                .iter()
                .filter(|&(&(p, q), _)| keep(p + 1, q))
                .map(|(&k, m)| (k, m.clone()))
                .collect(),
            vert: self
                .vert
                .iter()
                .filter(|&(&(p, q), _)| keep(p, q + 1))
                .map(|(&k, m)| (k, m.clone()))
                .collect(),
        }
    }

    /// Dimensions of spectral page 1 or 2 for the chosen filtration, as a
    /// map from `(p, q)` to nonzero dimensions.
    ///
    /// Page one takes cohomology along the first differential (vertical for
    /// [`Filtration::RowFirst`], horizontal for [`Filtration::ColumnFirst`]).
    /// Page two then takes cohomology along the induced second differential;
    /// its entry at `(p, q)` is computed from the induced-map ranks
    /// `rank [f·Z | B] − rank B` exactly as for chain maps.
    pub fn e_page_dims(
        &self,
        filtration: Filtration,
        page: u8,
    ) -> Result<BTreeMap<(usize, usize), usize>, DoubleComplexError> {
        if page != 1 && page != 2 {
            return Err(DoubleComplexError::UnsupportedPage { page });
        }
        // Orient so that "a" is the differential taken first and "b" the one
        // inducing the page-two maps. For ColumnFirst we transpose roles by
        // swapping the coordinates.
        let first = |p: usize, q: usize| match filtration {
            Filtration::RowFirst => self.vertical(p, q),
            Filtration::ColumnFirst => self.horizontal(p, q),
        };
        let second = |p: usize, q: usize| match filtration {
            Filtration::RowFirst => self.horizontal(p, q),
            Filtration::ColumnFirst => self.vertical(p, q),
        };
        // Step along the first differential: RowFirst moves in q, ColumnFirst
        // in p.
        let step_first = |p: usize, q: usize, back: bool| -> Option<(usize, usize)> {
            let (dp, dq) = match filtration {
                Filtration::RowFirst => (0i64, 1i64),
                Filtration::ColumnFirst => (1, 0),
            };
            let sgn = if back { -1 } else { 1 };
            let np = p as i64 + sgn * dp;
            let nq = q as i64 + sgn * dq;
            (np >= 0 && nq >= 0).then_some((np as usize, nq as usize))
        };
        let step_second = |p: usize, q: usize, back: bool| -> Option<(usize, usize)> {
            let (dp, dq) = match filtration {
                Filtration::RowFirst => (1i64, 0i64),
                Filtration::ColumnFirst => (0, 1),
            };
            let sgn = if back { -1 } else { 1 };
            let np = p as i64 + sgn * dp;
            let nq = q as i64 + sgn * dq;
            (np >= 0 && nq >= 0).then_some((np as usize, nq as usize))
        };

        let page_one_at = |p: usize, q: usize| -> usize {
            let d = self.dim(p, q);
            if d == 0 {
                return 0;
            }
            let out = first(p, q).rank();
            let inc = step_first(p, q, true)
                .map(|(bp, bq)| first(bp, bq).rank())
                .unwrap_or(0);
            d - out - inc
        };
        let mut out = BTreeMap::new();
        if page == 1 {
            for &(p, q) in self.dims.keys() {
                let d = page_one_at(p, q);
                if d > 0 {
                    out.insert((p, q), d);
                }
            }
            return Ok(out);
        }
        // Page two. Induced rank of the second differential leaving (p, q):
        // Z spans first-cohomology cocycle representatives at (p, q), B the
        // first-direction coboundaries at the target spot.
        let induced_rank = |p: usize, q: usize| -> usize {
            let Some((tp, tq)) = step_second(p, q, false) else {
                return 0;
            };
            if self.dim(p, q) == 0 || self.dim(tp, tq) == 0 {
                return 0;
            }
            let z = first(p, q).kernel_basis();
            let fz = second(p, q).mul(&z).expect("shapes validated");
            let b = step_first(tp, tq, true)
                .map(|(bp, bq)| first(bp, bq))
                .unwrap_or_else(|| QMatrix::zeros(self.dim(tp, tq), 0));
            let stacked = fz.hstack(&b).expect("row counts equal");
            stacked.rank() - b.rank()
        };
        for &(p, q) in self.dims.keys() {
            let e1 = page_one_at(p, q);
            if e1 == 0 {
                continue;
            }
            let out_rank = induced_rank(p, q);
            let in_rank = step_second(p, q, true)
                .map(|(bp, bq)| induced_rank(bp, bq))
                .unwrap_or(0);
            let d = e1 - out_rank - in_rank;
            if d > 0 {
                out.insert((p, q), d);
            }
        }
        Ok(out)
    }
}

/// A spotwise linear map between two double complexes of the same sign
/// convention, commuting with both differentials. Missing spots are the
/// zero map.
#[derive(Clone, Debug)]
pub struct DoubleComplexMap {
    source: DoubleComplex,
    target: DoubleComplex,
    mats: BTreeMap<(usize, usize), QMatrix>,
}

impl DoubleComplexMap {
    /// Builds and validates a map of double complexes: shapes at every
    /// provided spot, and commutation with the horizontal and vertical
    /// differentials at every spot where either side is nonzero.
    pub fn new(
        source: DoubleComplex,
        target: DoubleComplex,
        mats: BTreeMap<(usize, usize), QMatrix>,
    ) -> Result<Self, DoubleComplexError> {
        if source.sign != target.sign {
            return Err(DoubleComplexError::SignMismatch {
                from: source.sign,
                to: target.sign,
            });
        }
        let map = DoubleComplexMap {
            source,
            target,
            mats,
        };
        for (&(p, q), m) in &map.mats {
            let (er, ec) = (map.target.dim(p, q), map.source.dim(p, q));
            if m.rows() != er || m.cols() != ec {
                return Err(DoubleComplexError::MapShape {
                    p,
                    q,
                    expected_rows: er,
                    expected_cols: ec,
                    found_rows: m.rows(),
                    found_cols: m.cols(),
                });
            }
        }
        let spots: std::collections::BTreeSet<(usize, usize)> = map
            .source
            .dims
            .keys()
            .chain(map.target.dims.keys())
            .copied()
            .collect();
        for &(p, q) in &spots {
            let h_then_f = map
                .map_at(p + 1, q)
                .mul(&map.source.horizontal(p, q))
                .expect("shapes validated");
            let f_then_h = map
                .target
                .horizontal(p, q)
                .mul(&map.map_at(p, q))
                .expect("shapes validated");
            if h_then_f != f_then_h {
                return Err(DoubleComplexError::MapNotChain {
                    dir: "horizontal",
                    p,
                    q,
                });
            }
            let v_then_f = map
                .map_at(p, q + 1)
                .mul(&map.source.vertical(p, q))
                .expect("shapes validated");
            let f_then_v = map
                .target
                .vertical(p, q)
                .mul(&map.map_at(p, q))
                .expect("shapes validated");
            if v_then_f != f_then_v {
                return Err(DoubleComplexError::MapNotChain {
                    dir: "vertical",
                    p,
                    q,
                });
            }
        }
        Ok(map)
    }

    /// The source double complex.
    pub fn source(&self) -> &DoubleComplex {
        &self.source
    }

    /// The target double complex.
    pub fn target(&self) -> &DoubleComplex {
        &self.target
    }

    /// The matrix at `(p, q)`; a correctly shaped zero matrix where none is
    /// stored.
    pub fn map_at(&self, p: usize, q: usize) -> QMatrix {
        self.mats
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| QMatrix::zeros(self.target.dim(p, q), self.source.dim(p, q)))
    }

    /// The induced chain map between the total complexes, assembled
    /// blockwise per anti-diagonal. The `(−1)^p` twist affects source and
    /// target alike, so the blocks are copied untouched.
    pub fn total_map(&self) -> Result<ComplexMap, DoubleComplexError> {
        let src_tot = self.source.total_complex()?;
        let tgt_tot = self.target.total_complex()?;
        let max = src_tot
            .max_degree()
            .max(tgt_tot.max_degree())
            .unwrap_or(-1);
        let mut mats = Vec::new();
        for n in 0..=max.max(0) as usize {
            if max < 0 {
                break;
            }
            let mut big = QMatrix::zeros(tgt_tot.dim_at(n as i64), src_tot.dim_at(n as i64));
            for p in 0..=n {
                let q = n - p;
                let block = self.map_at(p, q);
                if block.rows() == 0 || block.cols() == 0 {
                    continue;
                }
                let (src_off, _) = self.source.block_offset(p, q);
                let (dst_off, _) = self.target.block_offset(p, q);
                big.add_block(dst_off, src_off, &block);
            }
            mats.push(big);
        }
        Ok(ComplexMap::new(src_tot, tgt_tot, 0, mats)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The Mayer–Vietoris double complex of a path a–b–c covered by its two
    /// edges A = ab, B = bc, with A ∩ B = {b}:
    ///
    /// ```text
    ///  q=1 |  C¹(A)⊕C¹(B)        0
    ///  q=0 |  C⁰(A)⊕C⁰(B) --->  C⁰(b)
    ///      +------------------------
    ///           p=0              p=1
    /// ```
    fn path_cover() -> DoubleComplex {
        let mut dims = BTreeMap::new();
        dims.insert((0, 0), 4);
        dims.insert((0, 1), 2);
        dims.insert((1, 0), 1);
        let mut horiz = BTreeMap::new();
        // Value at b seen from B minus seen from A (columns a, b | b, c).
        horiz.insert((0, 0), QMatrix::from_int_rows(&[&[0, -1, 1, 0]]));
        let mut vert = BTreeMap::new();
        vert.insert(
            (0, 0),
            QMatrix::from_int_rows(&[&[-1, 1, 0, 0], &[0, 0, -1, 1]]),
        );
        DoubleComplex::new(SignConvention::Commuting, dims, horiz, vert).unwrap()
    }

    #[test]
    fn path_cover_total_cohomology_is_contractible() {
        let tot = path_cover().total_complex().unwrap();
        assert_eq!(tot.dims(), &[4, 3]);
        assert_eq!(tot.cohomology_dims(), vec![1, 0]);
    }

    #[test]
    fn spectral_pages_of_path_cover() {
        let dc = path_cover();
        // Vertical first: columns are the cochain complexes of A ⊔ B and of
        // the point b; their H⁰s survive to page one.
        let e1 = dc.e_page_dims(Filtration::RowFirst, 1).unwrap();
        assert_eq!(e1, BTreeMap::from([((0, 0), 2), ((1, 0), 1)]));
        // Page two is the nerve-like cohomology: one component, nothing else.
        let e2 = dc.e_page_dims(Filtration::RowFirst, 2).unwrap();
        assert_eq!(e2, BTreeMap::from([((0, 0), 1)]));
        // Horizontal first, then vertical: same limit.
        let e1c = dc.e_page_dims(Filtration::ColumnFirst, 1).unwrap();
        assert_eq!(e1c, BTreeMap::from([((0, 0), 3), ((0, 1), 2)]));
        let e2c = dc.e_page_dims(Filtration::ColumnFirst, 2).unwrap();
        assert_eq!(e2c, BTreeMap::from([((0, 0), 1)]));
        // Sanity: page-two Euler characteristic equals that of the total
        // complex in both filtrations.
        let chi = |m: &BTreeMap<(usize, usize), usize>| -> i64 {
            m.iter()
                .map(|(&(p, q), &d)| if (p + q) % 2 == 0 { d as i64 } else { -(d as i64) })
                .sum()
        };
        assert_eq!(chi(&e2), dc.total_complex().unwrap().euler_characteristic());
        assert_eq!(chi(&e2c), dc.total_complex().unwrap().euler_characteristic());
        assert!(matches!(
            dc.e_page_dims(Filtration::RowFirst, 3),
            Err(DoubleComplexError::UnsupportedPage { page: 3 })
        ));
    }

    #[test]
    fn truncation_keeps_low_band() {
        let dc = path_cover();
        let t0 = dc.truncate_antidiagonal(0);
        assert_eq!(t0.spots().collect::<Vec<_>>(), vec![((0, 0), 4)]);
        let tot = t0.total_complex().unwrap();
        // No differentials survive, so degree 0 is all kernel.
        assert_eq!(tot.cohomology_dims(), vec![4]);
        assert!(dc
            .truncate_antidiagonal(-1)
            .total_complex()
            .unwrap()
            .is_empty());
        // Truncating at the full band changes nothing.
        let t2 = dc.truncate_antidiagonal(2);
        assert_eq!(
            t2.total_complex().unwrap().cohomology_dims(),
            dc.total_complex().unwrap().cohomology_dims()
        );
    }

    /// One commuting square of all-ones maps, and its anticommuting twin
    /// with the twist baked into the stored vertical map.
    fn unit_square(sign: SignConvention) -> DoubleComplex {
        let dims = BTreeMap::from([((0, 0), 1), ((0, 1), 1), ((1, 0), 1), ((1, 1), 1)]);
        let one = QMatrix::identity(1);
        let horiz = BTreeMap::from([((0, 0), one.clone()), ((0, 1), one.clone())]);
        let v11 = match sign {
            SignConvention::Commuting => one.clone(),
            SignConvention::Anticommuting => one.scaled(&rat(-1)),
        };
        let vert = BTreeMap::from([((0, 0), one.clone()), ((1, 0), v11)]);
        DoubleComplex::new(sign, dims, horiz, vert).unwrap()
    }

    #[test]
    fn both_sign_conventions_totalize_identically() {
        let c = unit_square(SignConvention::Commuting).total_complex().unwrap();
        let a = unit_square(SignConvention::Anticommuting)
            .total_complex()
            .unwrap();
        assert_eq!(c.dims(), a.dims());
        for n in 0..2 {
            assert_eq!(c.diff_at(n), a.diff_at(n));
        }
        assert_eq!(c.cohomology_dims(), vec![0, 0, 0]);
    }

    #[test]
    fn constructor_rejects_violations() {
        // Break the square: flip one horizontal map's sign under the
        // commuting convention.
        let dims = BTreeMap::from([((0, 0), 1), ((0, 1), 1), ((1, 0), 1), ((1, 1), 1)]);
        let one = QMatrix::identity(1);
        let horiz = BTreeMap::from([((0, 0), one.clone()), ((0, 1), one.scaled(&rat(-1)))]);
        let vert = BTreeMap::from([((0, 0), one.clone()), ((1, 0), one.clone())]);
        assert!(matches!(
            DoubleComplex::new(SignConvention::Commuting, dims.clone(), horiz, vert),
            Err(DoubleComplexError::SquareConvention { p: 0, q: 0, .. })
        ));
        // Shape error.
        let bad_shape = BTreeMap::from([((0, 0), QMatrix::zeros(2, 1))]);
        assert!(matches!(
            DoubleComplex::new(
                SignConvention::Commuting,
                dims.clone(),
                bad_shape,
                BTreeMap::new()
            ),
            Err(DoubleComplexError::DifferentialShape { .. })
        ));
        // Row that does not square to zero.
        let dims_row = BTreeMap::from([((0, 0), 1), ((1, 0), 1), ((2, 0), 1)]);
        let horiz_row = BTreeMap::from([((0, 0), QMatrix::identity(1)), ((1, 0), QMatrix::identity(1))]);
        assert!(matches!(
            DoubleComplex::new(
                SignConvention::Commuting,
                dims_row,
                horiz_row,
                BTreeMap::new()
            ),
            Err(DoubleComplexError::SquareNotZero {
                dir: "horizontal",
                ..
            })
        ));
    }

    #[test]
    fn identity_double_map_totalizes_to_identity() {
        let dc = path_cover();
        let mats = dc
            .spots()
            .map(|((p, q), d)| ((p, q), QMatrix::identity(d)))
            .collect();
        let m = DoubleComplexMap::new(dc.clone(), dc.clone(), mats).unwrap();
        let tot = m.total_map().unwrap();
        assert!(tot.is_quasi_isomorphism());
        for n in 0..=1 {
            assert_eq!(tot.map_at(n), QMatrix::identity(tot.source().dim_at(n)));
        }
    }

    #[test]
    fn double_map_validation_catches_non_commuting() {
        let dc = path_cover();
        // Scale only the (0,0) spot: breaks commutation with both
        // differentials.
        let mats = BTreeMap::from([((0, 0), QMatrix::identity(4).scaled(&rat(2)))]);
        assert!(matches!(
            DoubleComplexMap::new(dc.clone(), dc, mats),
            Err(DoubleComplexError::MapNotChain { .. })
        ));
    }
}
