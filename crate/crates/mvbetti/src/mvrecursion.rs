//! Recursive Mayer–Vietoris towers: Betti numbers from covers of covers.
//!
//! The classical Mayer–Vietoris idea computes the cohomology of a union
//! `X = X₀ ∪ … ∪ X_k` from the cohomology of the pieces and of their
//! intersections. When the pieces are chosen so that every piece and every
//! intersection is *simple* (here: we only ever need to know its connected
//! components), the generalized Mayer–Vietoris double complex
//!
//! ```text
//!   E₀^{p,q} = C^q(X_{i₀} ∩ … ∩ X_{i_p})   (ascending tuples i₀ < … < i_p)
//! ```
//!
//! computes `H*(X)` through its total complex. The expensive part of that
//! complex is the cochain spaces `C^q` in high degree. This module replaces
//! them *recursively*: the cohomology of each intersection is itself
//! computed by a Mayer–Vietoris tower over a cover of that intersection,
//! and only `H⁰` — connected components — is ever computed directly.
//!
//! Concretely, over an [`AdmissibleDag`](crate::admissible::AdmissibleDag)
//! with depth budget `ℓ`, every index `α` of the DAG gets a *sheet*: a
//! first-quadrant double complex `ℳ(α)` with
//!
//! * **deepest level (`level = ℓ`)**: only two spots,
//!   `ℳ^{0,0} = ⊕_{e ∈ 𝒞(α)} H⁰(X_e)` and
//!   `ℳ^{1,0} = ⊕_{e₀<e₁} H⁰(X_{e₀} ∩ X_{e₁})`, with the difference map
//!   `δ(φ)_{e₀,e₁} = (φ_{e₁} − φ_{e₀})|` between them;
//! * **inner levels**: the corner `ℳ^{0,0} = ⊕_e H⁰(X_e)` plus, for
//!   `0 < p` and `0 < p + q ≤ n_α` with `n_α = ℓ − level(α) + 1`, columns
//!
//!   ```text
//!     ℳ^{p,q}(α) = ⊕_{e₀<…<e_p} Tot^q( ℳ(child(e₀ ⋯ e_p)) )
//!   ```
//!
//!   whose vertical differentials are the child total differentials and
//!   whose horizontal differentials are alternating sums `Σ (−1)^i` of
//!   *restriction maps* between child sheets.
//!
//! The restriction map `r_{α,β} : ℳ(α) → ℳ(β)`, defined for same-level
//! pairs with `α` an ancestor of `β` in the DAG, routes each cover element
//! of `β` to its resolved slot in the cover of `α` and applies `H⁰`
//! restrictions (at the deepest level) or recursively built child
//! restriction totals (at inner levels), with the sign of the permutation
//! that sorts the routed tuple ascending. Every sheet is validated to have
//! commuting squares and every restriction map is validated to commute
//! with both differentials — the constructors of
//! [`DoubleComplex`] and [`DoubleComplexMap`] check the matrix identities
//! exactly, so an inconsistent sign or routing cannot build silently.
//!
//! The payoff is the main theorem of this construction: for every index
//! `α` and every `0 ≤ i ≤ ℓ − level(α)`,
//!
//! ```text
//!   dim H^i( Tot(ℳ(α)) ) = dim H^i(X_α),
//! ```
//!
//! so the first `ℓ + 1` Betti numbers of the input space are read off the
//! root sheet. The [`betti`] driver does exactly that: build the DAG,
//! build all sheets bottom-up (deepest level first), then return the
//! cohomology of the root total complex in degrees `0 ..= ℓ`. Only
//! connected-component computations ever touch the simplices themselves;
//! everything above is exact rational linear algebra.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::admissible::{
    build_dag, unique_ancestor, AdmissibleDag, AdmissibleError, CoverSupplier, ElemRef,
};
use crate::complex::{ComplexError, ComplexMap, GradedComplex};
use crate::doublecomplex::{
    DoubleComplex, DoubleComplexError, DoubleComplexMap, SignConvention,
};
use crate::linalg::{block_direct_sum, rat, sort_sign, QMatrix};
use crate::simplicial::{
    ascending_tuples, connected_components, h0_restriction, intersect, SimplicialError,
    SubcomplexRef,
};

/// Errors from building sheets, restriction maps, or the Betti driver.
#[derive(Debug, Error)]
pub enum MvError {
    /// A sheet was requested before the build order produced it.
    #[error("sheet for `{path}` requested before it was built")]
    MissingSheet {
        /// Path of the index whose sheet is absent.
        path: String,
    },
    /// A restriction map was requested before the build order produced it.
    #[error("restriction `{from}` → `{to}` requested before it was built")]
    MissingRestriction {
        /// Path of the source index.
        from: String,
        /// Path of the target index.
        to: String,
    },
    /// A cover tuple has no product index in the DAG.
    #[error("no product index for tuple `{keys}` under `{parent}`")]
    MissingChild {
        /// Path of the parent index.
        parent: String,
        /// Dot-joined cover keys of the offending tuple.
        keys: String,
    },
    /// Internal bookkeeping disagreed with the DAG; indicates a bug.
    #[error("sheet layout mismatch: {detail}")]
    Layout {
        /// Human-readable description of the mismatch.
        detail: String,
    },
    /// An error from the index DAG.
    #[error(transparent)]
    Admissible(#[from] AdmissibleError),
    /// An error from subcomplex manipulation.
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    /// An error from graded-complex construction.
    #[error(transparent)]
    Complex(#[from] ComplexError),
    /// An error from double-complex construction or validation.
    #[error(transparent)]
    DoubleComplex(#[from] DoubleComplexError),
}

/// One direct summand of a sheet column.
#[derive(Debug, Clone)]
enum TupleSummand {
    /// Deepest level: `H⁰` of a pairwise intersection, with its set kept
    /// for assembling restriction maps later.
    PairH0 {
        set: SubcomplexRef,
        dim: usize,
    },
    /// Inner levels: the total complex of the child index with this id.
    Child(usize),
}

/// One column `p ≥ 1` of a sheet: ascending `(p+1)`-tuples of cover
/// positions and the summand each tuple contributes.
#[derive(Debug, Clone)]
struct SheetColumn {
    /// The tuples, in lexicographic order.
    tuples: Vec<Vec<usize>>,
    /// Tuple → position in `tuples`.
    pos: BTreeMap<Vec<usize>, usize>,
    /// Per-tuple summand, parallel to `tuples`.
    entries: Vec<TupleSummand>,
}

/// A built sheet: the validated double complex of one DAG index together
/// with its total complex and the block layout needed to assemble maps
/// into and out of it.
#[derive(Debug, Clone)]
pub struct Sheet {
    /// The DAG index this sheet belongs to.
    pub id: usize,
    /// The validated double complex.
    pub dc: DoubleComplex,
    /// Its total complex (degree 0 upward).
    pub tot: GradedComplex,
    /// `H⁰` dimension of each cover element, in cover order; the `(0,0)`
    /// corner is their direct sum in this order.
    corner_dims: Vec<usize>,
    /// Columns `p = 1, 2, …` (index `p − 1`).
    cols: Vec<SheetColumn>,
}

impl Sheet {
    /// Offset of cover element `e`'s `H⁰` block inside the `(0,0)` corner.
    fn corner_offset(&self, e: usize) -> usize {
        self.corner_dims[..e].iter().sum()
    }

    /// The column for `p ≥ 1`, if the sheet has one.
    fn column(&self, p: usize) -> Option<&SheetColumn> {
        self.cols.get(p - 1)
    }
}

/// A restriction map between two same-level sheets, kept in both forms:
/// the spotwise map of double complexes and its induced map of totals.
#[derive(Debug, Clone)]
pub struct StoredRestriction {
    /// The validated spotwise map.
    pub map: DoubleComplexMap,
    /// The induced chain map of total complexes.
    pub total: ComplexMap,
}

/// All sheets and restriction maps of one build, keyed by DAG index id.
#[derive(Debug, Default)]
pub struct MComplexStore {
    sheets: BTreeMap<usize, Sheet>,
    restrictions: BTreeMap<(usize, usize), StoredRestriction>,
}

impl MComplexStore {
    /// An empty store.
    pub fn new() -> Self {
        Self::default()
    }

    /// The sheet for index `id`, if built.
    pub fn sheet(&self, id: usize) -> Option<&Sheet> {
        self.sheets.get(&id)
    }

    /// The restriction map from index `a` to its same-level descendant
    /// `b`, if built.
    pub fn restriction(&self, a: usize, b: usize) -> Option<&StoredRestriction> {
        self.restrictions.get(&(a, b))
    }

    /// All built sheets in index order.
    pub fn sheets(&self) -> impl Iterator<Item = &Sheet> {
        self.sheets.values()
    }

    /// All built restriction maps with their `(source, target)` ids.
    pub fn restriction_pairs(
        &self,
    ) -> impl Iterator<Item = (&(usize, usize), &StoredRestriction)> {
        self.restrictions.iter()
    }

    fn need_sheet(&self, dag: &AdmissibleDag, id: usize) -> Result<&Sheet, MvError> {
        self.sheets.get(&id).ok_or_else(|| MvError::MissingSheet {
            path: dag.index(id).path.clone(),
        })
    }

    fn need_restriction(
        &self,
        dag: &AdmissibleDag,
        a: usize,
        b: usize,
    ) -> Result<&StoredRestriction, MvError> {
        self.restrictions
            .get(&(a, b))
            .ok_or_else(|| MvError::MissingRestriction {
                from: dag.index(a).path.clone(),
                to: dag.index(b).path.clone(),
            })
    }
}

/// The `H⁰` dimensions of the cover elements of `alpha`, in cover order.
fn cover_h0_dims(dag: &AdmissibleDag, alpha: usize) -> Vec<usize> {
    dag.cover(alpha)
        .iter()
        .map(|part| connected_components(&part.set).count)
        .collect()
}

/// Builds the deepest-level sheet of `alpha`: spots `(0,0)` and `(1,0)`
/// only, the former the direct sum of cover-element `H⁰`s, the latter the
/// direct sum of pairwise-intersection `H⁰`s, connected by the difference
/// of the two component restrictions.
pub fn build_base(alpha: usize, dag: &AdmissibleDag) -> Result<Sheet, MvError> {
    let cover = dag.cover(alpha);
    let corner_dims = cover_h0_dims(dag, alpha);
    let corner_total: usize = corner_dims.iter().sum();

    let tuples = ascending_tuples(cover.len(), 2);
    let mut entries = Vec::with_capacity(tuples.len());
    let mut pair_dims = Vec::with_capacity(tuples.len());
    for t in &tuples {
        let set = intersect(&[&cover[t[0]].set, &cover[t[1]].set])?;
        let dim = connected_components(&set).count;
        pair_dims.push(dim);
        entries.push(TupleSummand::PairH0 { set, dim });
    }
    let pair_total: usize = pair_dims.iter().sum();

    let mut dims = BTreeMap::new();
    dims.insert((0, 0), corner_total);
    dims.insert((1, 0), pair_total);

    let mut horiz = BTreeMap::new();
    if corner_total > 0 && pair_total > 0 {
        let mut delta = QMatrix::zeros(pair_total, corner_total);
        let mut row = 0;
        for (t, entry) in tuples.iter().zip(&entries) {
            let TupleSummand::PairH0 { set, dim } = entry else {
                unreachable!("deepest-level columns hold pair summands only");
            };
            if *dim > 0 {
                let corner_off =
                    |e: usize| corner_dims[..e].iter().sum::<usize>();
                let plus = h0_restriction(&cover[t[1]].set, set)?;
                delta.add_block(row, corner_off(t[1]), &plus);
                let minus = h0_restriction(&cover[t[0]].set, set)?;
                delta.add_block_scaled(row, corner_off(t[0]), &minus, &rat(-1));
            }
            row += dim;
        }
        horiz.insert((0, 0), delta);
    }

    let dc = DoubleComplex::new(SignConvention::Commuting, dims, horiz, BTreeMap::new())?;
    let tot = dc.total_complex()?;
    let pos = tuples
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, t)| (t, i))
        .collect();
    Ok(Sheet {
        id: alpha,
        dc,
        tot,
        corner_dims,
        cols: vec![SheetColumn {
            tuples,
            pos,
            entries,
        }],
    })
}

/// Builds an inner-level sheet of `alpha` from the already-built sheets
/// and restriction maps of the level below.
///
/// Column `p ≥ 1` at height `q` is the direct sum, over ascending
/// `(p+1)`-tuples of cover elements, of degree-`q` pieces of the child
/// total complexes; spots vanish outside `0 < p + q ≤ n_α`. Vertical
/// differentials are the child total differentials; horizontal ones are
/// alternating sums of child restriction totals; the corner maps into
/// column 1 by `H⁰` restriction into each child's own corner.
pub fn build_inductive(
    alpha: usize,
    dag: &AdmissibleDag,
    store: &MComplexStore,
) -> Result<Sheet, MvError> {
    let level = dag.index(alpha).level;
    let n_alpha = dag.ell() - level + 1;
    let cover = dag.cover(alpha);
    let corner_dims = cover_h0_dims(dag, alpha);
    let corner_total: usize = corner_dims.iter().sum();
    let corner_off = |e: usize| corner_dims[..e].iter().sum::<usize>();

    // Lay out the columns: tuples and their child sheets.
    let mut cols = Vec::new();
    for p in 1..=n_alpha {
        let tuples = ascending_tuples(cover.len(), p + 1);
        let mut entries = Vec::with_capacity(tuples.len());
        for t in &tuples {
            let child = dag.product(alpha, t).ok_or_else(|| MvError::MissingChild {
                parent: dag.index(alpha).path.clone(),
                keys: t
                    .iter()
                    .map(|&i| cover[i].key.clone())
                    .collect::<Vec<_>>()
                    .join("."),
            })?;
            store.need_sheet(dag, child)?;
            entries.push(TupleSummand::Child(child));
        }
        let pos = tuples
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        cols.push(SheetColumn {
            tuples,
            pos,
            entries,
        });
    }

    // Spot dimensions.
    let mut dims = BTreeMap::new();
    dims.insert((0, 0), corner_total);
    for (ci, col) in cols.iter().enumerate() {
        let p = ci + 1;
        for q in 0..=(n_alpha - p) {
            let mut d = 0;
            for entry in &col.entries {
                let TupleSummand::Child(id) = entry else {
                    unreachable!("inner-level columns hold child summands only");
                };
                d += store.need_sheet(dag, *id)?.tot.dim_at(q as i64);
            }
            dims.insert((p, q), d);
        }
    }

    let spot_dim = |p: usize, q: usize| -> usize { dims.get(&(p, q)).copied().unwrap_or(0) };

    // Offset of tuple `t_idx` inside spot `(p, q)`.
    let tuple_offset = |col: &SheetColumn, t_idx: usize, q: usize| -> Result<usize, MvError> {
        let mut off = 0;
        for entry in &col.entries[..t_idx] {
            let TupleSummand::Child(id) = entry else {
                unreachable!("inner-level columns hold child summands only");
            };
            off += store.need_sheet(dag, *id)?.tot.dim_at(q as i64);
        }
        Ok(off)
    };

    let mut horiz = BTreeMap::new();

    // Corner difference map into column 1 (pairs), landing in each child's
    // own `(0,0)` corner blockwise by component restriction.
    if corner_total > 0 && spot_dim(1, 0) > 0 {
        let col1 = &cols[0];
        let mut delta = QMatrix::zeros(spot_dim(1, 0), corner_total);
        for (t_idx, t) in col1.tuples.iter().enumerate() {
            let TupleSummand::Child(child) = &col1.entries[t_idx] else {
                unreachable!("inner-level columns hold child summands only");
            };
            let child_sheet = store.need_sheet(dag, *child)?;
            let row0 = tuple_offset(col1, t_idx, 0)?;
            // Degree 0 of the child total is exactly its `(0,0)` corner.
            for (f, fpart) in dag.cover(*child).iter().enumerate() {
                let frow = row0 + child_sheet.corner_offset(f);
                let plus = h0_restriction(&cover[t[1]].set, &fpart.set)?;
                delta.add_block(frow, corner_off(t[1]), &plus);
                let minus = h0_restriction(&cover[t[0]].set, &fpart.set)?;
                delta.add_block_scaled(frow, corner_off(t[0]), &minus, &rat(-1));
            }
        }
        horiz.insert((0, 0), delta);
    }

    // Horizontal maps between columns: alternating sums of child
    // restriction totals, one term per omitted tuple position.
    for p in 1..n_alpha {
        let (src_col, dst_col) = (&cols[p - 1], &cols[p]);
        for q in 0..=(n_alpha - p - 1) {
            let (rows, cls) = (spot_dim(p + 1, q), spot_dim(p, q));
            if rows == 0 || cls == 0 {
                continue;
            }
            let mut delta = QMatrix::zeros(rows, cls);
            for (t_idx, t) in dst_col.tuples.iter().enumerate() {
                let TupleSummand::Child(dst_child) = &dst_col.entries[t_idx] else {
                    unreachable!("inner-level columns hold child summands only");
                };
                let row0 = tuple_offset(dst_col, t_idx, q)?;
                for omit in 0..t.len() {
                    let mut s = t.clone();
                    s.remove(omit);
                    let s_idx =
                        *src_col.pos.get(&s).ok_or_else(|| MvError::Layout {
                            detail: format!(
                                "face tuple {s:?} missing from column {p} of `{}`",
                                dag.index(alpha).path
                            ),
                        })?;
                    let TupleSummand::Child(src_child) = &src_col.entries[s_idx] else {
                        unreachable!("inner-level columns hold child summands only");
                    };
                    let r = store.need_restriction(dag, *src_child, *dst_child)?;
                    let block = r.total.map_at(q as i64);
                    if block.rows() == 0 || block.cols() == 0 {
                        continue;
                    }
                    let col0 = tuple_offset(src_col, s_idx, q)?;
                    let sign = if omit % 2 == 0 { rat(1) } else { rat(-1) };
                    delta.add_block_scaled(row0, col0, &block, &sign);
                }
            }
            horiz.insert((p, q), delta);
        }
    }

    // Vertical maps: block-diagonal child total differentials.
    let mut vert = BTreeMap::new();
    for (ci, col) in cols.iter().enumerate() {
        let p = ci + 1;
        for q in 0..n_alpha.saturating_sub(p) {
            if spot_dim(p, q) == 0 || spot_dim(p, q + 1) == 0 {
                continue;
            }
            let mut blocks = Vec::with_capacity(col.entries.len());
            for entry in &col.entries {
                let TupleSummand::Child(id) = entry else {
                    unreachable!("inner-level columns hold child summands only");
                };
                blocks.push(store.need_sheet(dag, *id)?.tot.diff_at(q as i64));
            }
            let refs: Vec<&QMatrix> = blocks.iter().collect();
            vert.insert((p, q), block_direct_sum(&refs));
        }
    }

    let dc = DoubleComplex::new(SignConvention::Commuting, dims, horiz, vert)?;
    let tot = dc.total_complex()?;
    Ok(Sheet {
        id: alpha,
        dc,
        tot,
        corner_dims,
        cols,
    })
}

/// Builds the restriction map `ℳ(alpha) → ℳ(beta)` for `alpha` a
/// same-level ancestor of `beta` (or `alpha = beta`, giving the identity).
///
/// Each cover element of `beta` routes to its resolved slot in the cover
/// of `alpha`; a tuple whose routed image repeats a slot contributes zero,
/// otherwise the image is sorted ascending and the block — an `H⁰`
/// restriction at the deepest level, a child restriction total at inner
/// levels — is multiplied by the sign of the sorting permutation. The
/// returned map is validated to commute with both differentials.
pub fn build_restriction(
    alpha: usize,
    beta: usize,
    dag: &AdmissibleDag,
    store: &MComplexStore,
) -> Result<DoubleComplexMap, MvError> {
    let sheet_b = store.need_sheet(dag, beta)?;
    if alpha == beta {
        let mats = sheet_b
            .dc
            .spots()
            .map(|((p, q), d)| ((p, q), QMatrix::identity(d)))
            .collect();
        return Ok(DoubleComplexMap::new(
            sheet_b.dc.clone(),
            sheet_b.dc.clone(),
            mats,
        )?);
    }
    let sheet_a = store.need_sheet(dag, alpha)?;
    let cover_a = dag.cover(alpha);
    let cover_b = dag.cover(beta);

    // Route each cover element of `beta` to its slot in `alpha`'s cover.
    let mut route = Vec::with_capacity(cover_b.len());
    for b in 0..cover_b.len() {
        route.push(unique_ancestor(dag, ElemRef { owner: beta, pos: b }, alpha)?.pos);
    }

    let mut mats = BTreeMap::new();

    // Corner block: componentwise restriction along the routing.
    let (bc, ac) = (sheet_b.dc.dim(0, 0), sheet_a.dc.dim(0, 0));
    if bc > 0 && ac > 0 {
        let mut m = QMatrix::zeros(bc, ac);
        for (b0, slot) in route.iter().enumerate() {
            let block = h0_restriction(&cover_a[*slot].set, &cover_b[b0].set)?;
            m.add_block(sheet_b.corner_offset(b0), sheet_a.corner_offset(*slot), &block);
        }
        mats.insert((0, 0), m);
    }

    // Column blocks: route the tuple, drop repeats, sort with sign.
    for (ci, col_b) in sheet_b.cols.iter().enumerate() {
        let p = ci + 1;
        let Some(col_a) = sheet_a.column(p) else {
            continue;
        };
        let qs: Vec<usize> = sheet_b
            .dc
            .spots()
            .filter(|&((sp, _), _)| sp == p)
            .map(|((_, q), _)| q)
            .collect();
        for q in qs {
            let (rows, cls) = (sheet_b.dc.dim(p, q), sheet_a.dc.dim(p, q));
            if rows == 0 || cls == 0 {
                continue;
            }
            let mut m = QMatrix::zeros(rows, cls);
            let mut row0 = 0;
            for (t_idx, t) in col_b.tuples.iter().enumerate() {
                let dst_dim = summand_dim(dag, store, &col_b.entries[t_idx], q)?;
                if dst_dim == 0 {
                    row0 += dst_dim;
                    continue;
                }
                let image: Vec<usize> = t.iter().map(|&b| route[b]).collect();
                if let Some((sorted, sign)) = sort_sign(&image) {
                    let s_idx = *col_a.pos.get(&sorted).ok_or_else(|| MvError::Layout {
                        detail: format!(
                            "routed tuple {sorted:?} missing from column {p} of `{}`",
                            dag.index(alpha).path
                        ),
                    })?;
                    let block = restriction_block(
                        dag,
                        store,
                        &col_a.entries[s_idx],
                        &col_b.entries[t_idx],
                        q,
                    )?;
                    let mut col0 = 0;
                    for entry in &col_a.entries[..s_idx] {
                        col0 += summand_dim(dag, store, entry, q)?;
                    }
                    m.add_block_scaled(row0, col0, &block, &sign);
                }
                row0 += dst_dim;
            }
            mats.insert((p, q), m);
        }
    }

    Ok(DoubleComplexMap::new(
        sheet_a.dc.clone(),
        sheet_b.dc.clone(),
        mats,
    )?)
}

/// Height-`q` dimension of one column summand.
fn summand_dim(
    dag: &AdmissibleDag,
    store: &MComplexStore,
    entry: &TupleSummand,
    q: usize,
) -> Result<usize, MvError> {
    Ok(match entry {
        TupleSummand::PairH0 { dim, .. } => {
            if q == 0 {
                *dim
            } else {
                0
            }
        }
        TupleSummand::Child(id) => store.need_sheet(dag, *id)?.tot.dim_at(q as i64),
    })
}

/// The matrix carrying a source summand onto a routed target summand: an
/// `H⁰` restriction between pairwise intersections at the deepest level, a
/// child restriction total at inner levels.
fn restriction_block(
    dag: &AdmissibleDag,
    store: &MComplexStore,
    src: &TupleSummand,
    dst: &TupleSummand,
    q: usize,
) -> Result<QMatrix, MvError> {
    match (src, dst) {
        (TupleSummand::PairH0 { set: from, .. }, TupleSummand::PairH0 { set: to, .. }) => {
            Ok(h0_restriction(from, to)?)
        }
        (TupleSummand::Child(a), TupleSummand::Child(b)) => {
            Ok(store.need_restriction(dag, *a, *b)?.total.map_at(q as i64))
        }
        _ => Err(MvError::Layout {
            detail: "mixed deepest-level and inner-level summands".to_string(),
        }),
    }
}

/// Builds every sheet and every same-level restriction map of the DAG,
/// deepest level first.
pub fn build_store(dag: &AdmissibleDag) -> Result<MComplexStore, MvError> {
    let mut store = MComplexStore::new();
    for level in (0..=dag.ell()).rev() {
        for &id in dag.level_indices(level) {
            let sheet = if level == dag.ell() {
                build_base(id, dag)?
            } else {
                build_inductive(id, dag, &store)?
            };
            store.sheets.insert(id, sheet);
        }
        for &b in dag.level_indices(level) {
            for a in dag.same_level_ancestors(b) {
                let map = build_restriction(a, b, dag, &store)?;
                let total = map.total_map()?;
                store
                    .restrictions
                    .insert((a, b), StoredRestriction { map, total });
            }
        }
    }
    Ok(store)
}

/// The first `ℓ + 1` Betti numbers read off an already-built store: the
/// cohomology of the root total complex in degrees `0 ..= ℓ`.
pub fn betti_from_store(dag: &AdmissibleDag, store: &MComplexStore) -> Result<Vec<usize>, MvError> {
    let root = store.need_sheet(dag, 0)?;
    Ok((0..=dag.ell() as i64)
        .map(|i| root.tot.cohomology_at(i))
        .collect())
}

/// Computes `b₀(S), …, b_ℓ(S)`: builds the index DAG for `s` with covers
/// from `supplier`, builds all sheets and restriction maps bottom-up, and
/// returns the cohomology dimensions of the root total complex in degrees
/// `0 ..= ell`.
pub fn betti<C: CoverSupplier>(
    s: SubcomplexRef,
    ell: usize,
    supplier: &C,
) -> Result<Vec<usize>, MvError> {
    let dag = build_dag(s, ell, supplier)?;
    let store = build_store(&dag)?;
    betti_from_store(&dag, &store)
}

/// The matrix embedding `H⁰(X_α)` into degree 0 of `Tot(ℳ(α))`: the stack
/// of component restrictions into each cover element. Restriction maps act
/// on these embeddings exactly as the component restriction between the
/// two index sets acts on `H⁰`, which pins down their degree-0 behavior.
pub fn h0_embedding(
    dag: &AdmissibleDag,
    store: &MComplexStore,
    id: usize,
) -> Result<QMatrix, MvError> {
    let sheet = store.need_sheet(dag, id)?;
    let comps = connected_components(&dag.index(id).set);
    let mut m = QMatrix::zeros(sheet.tot.dim_at(0), comps.count);
    for (e, part) in dag.cover(id).iter().enumerate() {
        let block = h0_restriction(&dag.index(id).set, &part.set)?;
        m.add_block(sheet.corner_offset(e), 0, &block);
    }
    Ok(m)
}
