//! Nerves of covers with `H⁰` coefficients, and the cheap `(b₀, b₁)`
//! computation they enable.
//!
//! For an ordered cover `X = ∪ X_i` the nerve complex has
//!
//! ```text
//! L^p  =  ⊕_{i₀<…<i_p}  H⁰(X_{i₀} ∩ … ∩ X_{i_p})
//! ```
//!
//! with the alternating sum of component-level restrictions as its
//! differential. Only connected-component data of the intersections enters —
//! no cochains above degree zero — which is what makes nerves cheap.
//!
//! What the nerve knows about the space depends on hypotheses:
//!
//! - `H⁰(L•)` always counts the connected components of the union, with no
//!   hypothesis at all.
//! - If every nonempty tuple intersection is contractible (a *good* cover),
//!   the nerve computes all Betti numbers ([`betti_via_nerve`]). The
//!   implementation verifies the observable part of that hypothesis — no
//!   intersection may be disconnected — and refuses otherwise.
//! - If merely each single cover element is contractible, the truncation
//!   `L•₂` (tuples up to triples) still computes `b₀` and `b₁`
//!   ([`betti_zero_one`]) — but provably nothing higher: for the
//!   two-hemisphere cover of a 2-sphere the nerve has `H² = 0` while the
//!   sphere has `H² = 1`. That negative control is pinned in the tests.
//!
//! # Example
//!
//! ```
//! use mvbetti::nerve::{betti_zero_one, NerveData};
//! use mvbetti::simplicial::{star_cover, SimplicialComplex};
//!
//! let circle = SimplicialComplex::from_maximal(
//!     vec!["a", "b", "c"],
//!     vec![vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]],
//! )
//! .unwrap()
//! .into_shared();
//! let nd = NerveData::populate(star_cover(&circle.as_whole()), 3).unwrap();
//! assert_eq!(betti_zero_one(&nd).unwrap(), (1, 1));
//! ```

use crate::complex::GradedComplex;
use crate::linalg::{rat, QMatrix};
use crate::simplicial::{
    connected_components, h0_restriction, intersect, ascending_tuples,
    ComponentDecomposition, SimplicialError, SubcomplexRef,
};
use std::collections::BTreeMap;
use thiserror::Error;

/// Errors from nerve construction and evaluation.
#[derive(Debug, Error)]
pub enum NerveError {
    /// The nerve was not populated deep enough for the request.
    #[error("nerve populated to tuples of size {populated}, but size {needed} is required")]
    IncompleteNerve {
        /// Largest tuple size available.
        populated: usize,
        /// Tuple size the operation needs.
        needed: usize,
    },
    /// An intersection that the asserted hypothesis requires to be
    /// contractible is visibly not (it is disconnected).
    #[error("cover hypothesis violated: intersection {tuple} has {components} components")]
    PropertyViolation {
        /// Dot-joined labels of the offending tuple.
        tuple: String,
        /// Its number of connected components.
        components: usize,
    },
    /// Underlying simplicial failure (ambient mismatch and the like).
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

struct TupleEntry {
    intersection: SubcomplexRef,
    components: ComponentDecomposition,
}

/// Connected-component data of a cover's tuple intersections, populated up
/// to a tuple-size bound.
///
/// Tuples are strictly ascending index lists into the ordered part list;
/// the order of parts is the order given at construction and fixes every
/// basis downstream.
pub struct NerveData {
    parts: Vec<(String, SubcomplexRef)>,
    depth: usize,
    tuples: BTreeMap<Vec<usize>, TupleEntry>,
}

impl NerveData {
    /// Intersects all tuples of the given parts up to size `depth`
    /// (inclusive) and records their component decompositions. Larger
    /// tuples are intersections of smaller ones, so the work is shared.
    pub fn populate(
        parts: Vec<(String, SubcomplexRef)>,
        depth: usize,
    ) -> Result<Self, NerveError> {
        let mut tuples: BTreeMap<Vec<usize>, TupleEntry> = BTreeMap::new();
        let n = parts.len();
        for size in 1..=depth.min(n) {
            for t in ascending_tuples(n, size) {
                let intersection = if size == 1 {
                    parts[t[0]].1.clone()
                } else {
                    let prefix = &tuples[&t[..size - 1].to_vec()].intersection;
                    intersect(&[prefix, &parts[t[size - 1]].1])?
                };
                let components = connected_components(&intersection);
                tuples.insert(t, TupleEntry {
                    intersection,
                    components,
                });
            }
        }
        Ok(NerveData {
            parts,
            depth,
            tuples,
        })
    }

    /// The ordered cover labels.
    pub fn labels(&self) -> Vec<&str> {
        self.parts.iter().map(|(l, _)| l.as_str()).collect()
    }

    /// Largest tuple size populated.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Number of cover parts.
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// Dot-joined labels of a tuple, for error messages.
    fn tuple_name(&self, t: &[usize]) -> String {
        t.iter()
            .map(|&i| self.parts[i].0.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    fn entry(&self, t: &[usize]) -> &TupleEntry {
        &self.tuples[t]
    }
}

/// Assembles the nerve complex using tuples up to size `depth`: terms
/// `L^0 … L^{depth−1}`, blocks ordered lexicographically by tuple.
///
/// The differential out of `L^p` is, per target tuple, the alternating sum
/// `Σ (−1)^i` of the `H⁰` restrictions from the tuples omitting the `i`-th
/// index. `δδ = 0` is re-verified by the complex constructor.
pub fn nerve_complex(nd: &NerveData, depth: usize) -> Result<GradedComplex, NerveError> {
    if depth > nd.depth {
        return Err(NerveError::IncompleteNerve {
            populated: nd.depth,
            needed: depth,
        });
    }
    let n = nd.parts.len();
    let used = depth.min(n);
    if used == 0 {
        return Ok(GradedComplex::zero());
    }
    let mut dims = Vec::new();
    let mut layouts: Vec<Vec<Vec<usize>>> = Vec::new();
    for size in 1..=used {
        let tuples = ascending_tuples(n, size);
        dims.push(
            tuples
                .iter()
                .map(|t| nd.entry(t).components.count)
                .sum(),
        );
        layouts.push(tuples);
    }
    let mut diffs = Vec::new();
    for p in 0..used - 1 {
        let sources = &layouts[p];
        let targets = &layouts[p + 1];
        let col_offset: BTreeMap<&Vec<usize>, usize> = {
            let mut off = 0;
            sources
                .iter()
                .map(|t| {
                    let o = off;
                    off += nd.entry(t).components.count;
                    (t, o)
                })
                .collect()
        };
        let mut d = QMatrix::zeros(dims[p + 1], dims[p]);
        let mut r0 = 0;
        for t in targets {
            let target = nd.entry(t);
            for omit in 0..t.len() {
                let mut sub = t.clone();
                sub.remove(omit);
                let source = nd.entry(&sub);
                let r = h0_restriction(&source.intersection, &target.intersection)?;
                let sign = if omit % 2 == 0 { rat(1) } else { rat(-1) };
                d.add_block_scaled(r0, col_offset[&sub], &r, &sign);
            }
            r0 += target.components.count;
        }
        diffs.push(d);
    }
    Ok(GradedComplex::new(0, dims, diffs).expect("nerve differential squares to zero"))
}

/// Betti numbers `b₀ … b_ell` from the nerve of a good cover.
///
/// The caller asserts that every nonempty tuple intersection is
/// contractible. The observable half of that hypothesis is enforced: any
/// populated intersection with more than one component is rejected. The
/// nerve must be populated to tuples of size `ell + 2` so that `H^ell` is
/// cut off correctly.
pub fn betti_via_nerve(nd: &NerveData, ell: usize) -> Result<Vec<usize>, NerveError> {
    let needed = (ell + 2).min(nd.part_count().max(1));
    if nd.depth < needed {
        return Err(NerveError::IncompleteNerve {
            populated: nd.depth,
            needed,
        });
    }
    for (t, e) in &nd.tuples {
        if e.components.count > 1 {
            return Err(NerveError::PropertyViolation {
                tuple: nd.tuple_name(t),
                components: e.components.count,
            });
        }
    }
    let l = nerve_complex(nd, needed)?;
    Ok((0..=ell as i64).map(|p| l.cohomology_at(p)).collect())
}

/// `(b₀, b₁)` from the truncated nerve `L•₂` (tuples up to triples),
/// assuming only that each *single* cover element is contractible.
///
/// Single elements are checked to be connected and nonempty; pairwise and
/// triple intersections may be arbitrary. Degrees above one are not
/// computed — they are not determined by this truncation.
pub fn betti_zero_one(nd: &NerveData) -> Result<(usize, usize), NerveError> {
    let needed = 3.min(nd.part_count().max(1));
    if nd.depth < needed {
        return Err(NerveError::IncompleteNerve {
            populated: nd.depth,
            needed,
        });
    }
    for (t, e) in &nd.tuples {
        if t.len() == 1 && e.components.count != 1 {
            return Err(NerveError::PropertyViolation {
                tuple: nd.tuple_name(t),
                components: e.components.count,
            });
        }
    }
    let l = nerve_complex(nd, needed)?;
    Ok((l.cohomology_at(0), l.cohomology_at(1)))
}
