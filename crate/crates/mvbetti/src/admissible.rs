//! The admissible-index DAG: the recursion skeleton for the sheeted
//! Mayer-Vietoris construction.
//!
//! Starting from a space `S` and a depth budget `ℓ`, the DAG materializes
//! formal intersections of cover elements, level by level:
//!
//! - level 0 holds the root index with `X₀ = S` and a cover of `S`;
//! - an index `α` at level `i < ℓ` begets one level-`(i+1)` index per
//!   nonempty ascending tuple of at most `ℓ − i + 2` elements of its cover
//!   `𝒞(α)`, with underlying set the intersection of the tuple;
//! - indices at level `ℓ` still carry covers (their pairwise intersections
//!   feed the base case of the recursion) but beget no further indices.
//!
//! Between indices lives the *ancestor* relation — strict, antisymmetric,
//! transitively closed, and contravariant on sets (`β` an ancestor of `α`
//! forces `X_α ⊆ X_β`). It is generated by four rules: the parent of a
//! tuple, sub-tuples of a tuple, the resolved slot of each cover element
//! inside every ancestor's cover, and a factorwise rule relating tuples
//! over different covers (guarded by set containment). Downstream, the
//! sheet recursion builds one restriction map per same-level ancestor
//! pair, so this relation is exactly the data telling it which maps exist.
//!
//! Cover elements are identified by `(owner index, position)`; elements
//! with equal underlying sets under different owners stay distinct, which
//! realizes the disjoint-union semantics of iterated covers.
//!
//! # Example
//!
//! ```
//! use mvbetti::admissible::{build_dag, dag_stats, StarCovers};
//! use mvbetti::simplicial::SimplicialComplex;
//!
//! let segment = SimplicialComplex::from_maximal(vec!["a", "b"], vec![vec!["a", "b"]])
//!     .unwrap()
//!     .into_shared();
//! let dag = build_dag(segment.as_whole(), 0, &StarCovers).unwrap();
//! // Depth budget 0: just the root and its cover.
//! assert_eq!(dag_stats(&dag).per_level, vec![1]);
//! assert_eq!(dag.cover(0).len(), 2);
//! ```

use crate::simplicial::{ascending_tuples, intersect, star_cover, SimplicialError, SubcomplexRef};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Errors from DAG construction and ancestor queries.
#[derive(Debug, Error)]
pub enum AdmissibleError {
    /// A supplied family does not union to the set it is meant to cover.
    #[error("parts supplied for index {path} do not cover its set")]
    NotACover {
        /// Path of the offending index.
        path: String,
    },
    /// Two parts of one cover share a key.
    #[error("cover for index {path} repeats the key {key}")]
    DuplicateKey {
        /// Path of the offending index.
        path: String,
        /// The repeated key.
        key: String,
    },
    /// A cover key is empty or contains a path separator.
    #[error("cover key {key:?} for index {path} is not path-safe ('/', '.' and empty keys are reserved)")]
    BadKey {
        /// Path of the offending index.
        path: String,
        /// The rejected key.
        key: String,
    },
    /// The queried index pair is not in the ancestor relation.
    #[error("index {descendant} does not have {claimed} as an ancestor")]
    NotAnAncestor {
        /// Path of the descendant index.
        descendant: String,
        /// Path of the index wrongly claimed as its ancestor.
        claimed: String,
    },
    /// No element of the ancestor's cover contains the queried element —
    /// a construction bug, fatal by contract.
    #[error("no element of the cover of {ancestor} contains element {element} — construction bug")]
    MissingSlot {
        /// Path of the ancestor whose cover lacks a slot.
        ancestor: String,
        /// Description of the uncovered element.
        element: String,
    },
    /// A structural invariant failed during construction.
    #[error("DAG construction invariant violated: {detail}")]
    InvariantViolated {
        /// What failed.
        detail: String,
    },
    /// Underlying simplicial error.
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

/// One labeled part of a cover.
#[derive(Clone, Debug)]
pub struct CoverPart {
    /// Path-safe label, unique within its cover.
    pub key: String,
    /// The part's underlying subcomplex.
    pub set: SubcomplexRef,
}

/// A source of covers: given an index path and its underlying set, return
/// an ordered list of labeled parts whose union is the set and each of
/// which the supplier asserts contractible. Union and key validity are
/// checked by the DAG builder; contractibility is the supplier's promise.
pub trait CoverSupplier {
    /// Produce the cover for the index at `path` with underlying `set`.
    fn cover(&self, path: &str, set: &SubcomplexRef) -> Result<Vec<CoverPart>, AdmissibleError>;
}

/// Default supplier: the closed vertex stars of the set. Every star is a
/// cone, hence contractible, and the stars always cover.
pub struct StarCovers;

impl CoverSupplier for StarCovers {
    fn cover(&self, _path: &str, set: &SubcomplexRef) -> Result<Vec<CoverPart>, AdmissibleError> {
        Ok(star_cover(set)
            .into_iter()
            .map(|(key, set)| CoverPart { key, set })
            .collect())
    }
}

/// User-chosen covers for specific index paths, with the star cover as
/// fallback everywhere else.
pub struct ExplicitCovers {
    by_path: BTreeMap<String, Vec<CoverPart>>,
}

impl ExplicitCovers {
    /// Wrap a path-keyed table of covers.
    pub fn new(by_path: BTreeMap<String, Vec<CoverPart>>) -> Self {
        ExplicitCovers { by_path }
    }

    /// The paths this supplier has explicit covers for.
    pub fn paths(&self) -> impl Iterator<Item = &str> {
        self.by_path.keys().map(|s| s.as_str())
    }
}

impl CoverSupplier for ExplicitCovers {
    fn cover(&self, path: &str, set: &SubcomplexRef) -> Result<Vec<CoverPart>, AdmissibleError> {
        match self.by_path.get(path) {
            Some(parts) => Ok(parts.clone()),
            None => StarCovers.cover(path, set),
        }
    }
}

/// One node of the DAG: a formal intersection of cover elements.
pub struct AdmissibleIndex {
    /// Dense identifier (also the position in [`AdmissibleDag::index`]).
    pub id: usize,
    /// Human-readable path: `"0"` for the root, then
    /// `parent-path + "/" + dot-joined element keys`.
    pub path: String,
    /// Distance from the root in cover generations.
    pub level: usize,
    /// The index whose cover the factors are drawn from (`None` at root).
    pub parent: Option<usize>,
    /// Ascending positions of the factors in the parent's cover.
    pub factors: Vec<usize>,
    /// The underlying set: the intersection of the factor sets.
    pub set: SubcomplexRef,
}

/// A cover element addressed by owner index and position.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ElemRef {
    /// Index whose cover the element belongs to.
    pub owner: usize,
    /// Position in that cover.
    pub pos: usize,
}

/// The finished DAG: immutable after construction.
pub struct AdmissibleDag {
    ell: usize,
    indices: Vec<AdmissibleIndex>,
    levels: Vec<Vec<usize>>,
    covers: Vec<Vec<CoverPart>>,
    /// Per index: ascending factor tuple → child index id. Populated for
    /// levels below `ell` only.
    products: Vec<BTreeMap<Vec<usize>, usize>>,
    ancestors: Vec<BTreeSet<usize>>,
    by_path: BTreeMap<String, usize>,
}

impl AdmissibleDag {
    /// Depth budget the DAG was built for.
    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Number of indices.
    pub fn index_count(&self) -> usize {
        self.indices.len()
    }

    /// The index with the given id. ("Index" is the domain noun here — an
    /// admissible index — not the `std::ops::Index` operation.)
    #[allow(clippy::should_implement_trait)]
    pub fn index(&self, id: usize) -> &AdmissibleIndex {
        &self.indices[id]
    }

    /// Ids at one level, in creation (deterministic) order.
    pub fn level_indices(&self, level: usize) -> &[usize] {
        &self.levels[level]
    }

    /// The cover `𝒞(α)`.
    pub fn cover(&self, id: usize) -> &[CoverPart] {
        &self.covers[id]
    }

    /// The child index for an ascending factor tuple of `id`'s cover, if
    /// `id` is below the last level.
    pub fn product(&self, id: usize, factors: &[usize]) -> Option<usize> {
        self.products[id].get(factors).copied()
    }

    /// Strict ancestor set (transitively closed).
    pub fn ancestors(&self, id: usize) -> &BTreeSet<usize> {
        &self.ancestors[id]
    }

    /// Ancestors at the same level as `id`, ascending.
    pub fn same_level_ancestors(&self, id: usize) -> Vec<usize> {
        let level = self.indices[id].level;
        self.ancestors[id]
            .iter()
            .copied()
            .filter(|&a| self.indices[a].level == level)
            .collect()
    }

    /// Look an index up by path.
    pub fn by_path(&self, path: &str) -> Option<usize> {
        self.by_path.get(path).copied()
    }

    /// All positions in `𝒞(ancestor)` whose set contains the element's
    /// set. The resolved slot is unique exactly when this has length one.
    pub fn containing_slots(
        &self,
        elem: ElemRef,
        ancestor: usize,
    ) -> Result<Vec<usize>, AdmissibleError> {
        let e = &self.covers[elem.owner][elem.pos];
        let mut out = Vec::new();
        for (pos, c) in self.covers[ancestor].iter().enumerate() {
            if e.set.is_subset_of(&c.set)? {
                out.push(pos);
            }
        }
        Ok(out)
    }
}

fn validate_cover(
    path: &str,
    set: &SubcomplexRef,
    parts: &[CoverPart],
) -> Result<(), AdmissibleError> {
    let mut keys = BTreeSet::new();
    for p in parts {
        if p.key.is_empty() || p.key.contains('/') || p.key.contains('.') {
            return Err(AdmissibleError::BadKey {
                path: path.to_string(),
                key: p.key.clone(),
            });
        }
        if !keys.insert(p.key.as_str()) {
            return Err(AdmissibleError::DuplicateKey {
                path: path.to_string(),
                key: p.key.clone(),
            });
        }
    }
    let refs: Vec<&SubcomplexRef> = parts.iter().map(|p| &p.set).collect();
    let union = crate::simplicial::union_of(set.ambient(), &refs)?;
    if &union != set {
        return Err(AdmissibleError::NotACover {
            path: path.to_string(),
        });
    }
    Ok(())
}

/// Resolve the slot of a cover element inside another cover: a key match
/// with containment wins, otherwise the first containing part.
fn resolve_slot(elem: &CoverPart, cover: &[CoverPart]) -> Result<Option<usize>, SimplicialError> {
    for (pos, c) in cover.iter().enumerate() {
        if c.key == elem.key && elem.set.is_subset_of(&c.set)? {
            return Ok(Some(pos));
        }
    }
    for (pos, c) in cover.iter().enumerate() {
        if elem.set.is_subset_of(&c.set)? {
            return Ok(Some(pos));
        }
    }
    Ok(None)
}

/// Build the admissible DAG for a set and depth budget.
///
/// Levels `0 ..= ell` are materialized; every index receives a validated
/// cover from the supplier at creation. The ancestor relation is installed
/// level round by level round (parent, sub-tuple, slot, and factorwise
/// rules) and driven to a transitively closed fixpoint each round, then
/// checked for strictness, antisymmetry and set containment.
pub fn build_dag<C: CoverSupplier>(
    s: SubcomplexRef,
    ell: usize,
    supplier: &C,
) -> Result<AdmissibleDag, AdmissibleError> {
    let mut dag = AdmissibleDag {
        ell,
        indices: Vec::new(),
        levels: vec![Vec::new(); ell + 1],
        covers: Vec::new(),
        products: Vec::new(),
        ancestors: Vec::new(),
        by_path: BTreeMap::new(),
    };
    create_index(&mut dag, supplier, "0".to_string(), 0, None, Vec::new(), s)?;

    for level in 0..ell {
        // Create all level+1 indices before installing any edges, so that
        // same-round siblings are addressable.
        let parents: Vec<usize> = dag.levels[level].clone();
        let max_factors = ell - level + 2;
        for &alpha in &parents {
            let n = dag.covers[alpha].len();
            for size in 1..=max_factors.min(n) {
                for t in ascending_tuples(n, size) {
                    let keys: Vec<&str> =
                        t.iter().map(|&p| dag.covers[alpha][p].key.as_str()).collect();
                    let path = format!("{}/{}", dag.indices[alpha].path, keys.join("."));
                    let sets: Vec<&SubcomplexRef> =
                        t.iter().map(|&p| &dag.covers[alpha][p].set).collect();
                    let set = intersect(&sets)?;
                    let id = create_index(
                        &mut dag,
                        supplier,
                        path,
                        level + 1,
                        Some(alpha),
                        t.clone(),
                        set,
                    )?;
                    dag.products[alpha].insert(t, id);
                }
            }
        }
        install_edges_for_round(&mut dag, level)?;
    }
    check_invariants(&dag)?;
    Ok(dag)
}

#[allow(clippy::too_many_arguments)]
fn create_index<C: CoverSupplier>(
    dag: &mut AdmissibleDag,
    supplier: &C,
    path: String,
    level: usize,
    parent: Option<usize>,
    factors: Vec<usize>,
    set: SubcomplexRef,
) -> Result<usize, AdmissibleError> {
    let id = dag.indices.len();
    let parts = supplier.cover(&path, &set)?;
    validate_cover(&path, &set, &parts)?;
    dag.by_path.insert(path.clone(), id);
    dag.levels[level].push(id);
    dag.covers.push(parts);
    dag.products.push(BTreeMap::new());
    dag.ancestors.push(BTreeSet::new());
    dag.indices.push(AdmissibleIndex {
        id,
        path,
        level,
        parent,
        factors,
        set,
    });
    Ok(id)
}

/// Install ancestor edges generated by covering the indices at `level`
/// (whose ancestor sets are final), then close the relation.
fn install_edges_for_round(dag: &mut AdmissibleDag, level: usize) -> Result<(), AdmissibleError> {
    let parents: Vec<usize> = dag.levels[level].clone();
    for &alpha in &parents {
        let children: Vec<(Vec<usize>, usize)> = dag.products[alpha]
            .iter()
            .map(|(t, &id)| (t.clone(), id))
            .collect();
        for (t, id) in &children {
            // Parent rule.
            dag.ancestors[*id].insert(alpha);
            // Sub-tuple rule: every nonempty proper sub-tuple is an
            // ancestor.
            for mask in 1u32..(1 << t.len()) - 1 {
                let sub: Vec<usize> = t
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                let sub_id = dag.products[alpha][&sub];
                dag.ancestors[*id].insert(sub_id);
            }
        }
        // Slot rule: each cover element's resolved slot in every ancestor's
        // cover is an ancestor of the element (as singleton indices).
        let alpha_ancestors: Vec<usize> = dag.ancestors[alpha].iter().copied().collect();
        for pos in 0..dag.covers[alpha].len() {
            let singleton = dag.products[alpha][&vec![pos]];
            for &beta in &alpha_ancestors {
                let slot = resolve_slot(&dag.covers[alpha][pos], &dag.covers[beta])?
                    .ok_or_else(|| AdmissibleError::MissingSlot {
                        ancestor: dag.indices[beta].path.clone(),
                        element: format!(
                            "{}[{}]",
                            dag.indices[alpha].path, dag.covers[alpha][pos].key
                        ),
                    })?;
                if let Some(&slot_singleton) = dag.products[beta].get(&vec![slot]) {
                    if slot_singleton != singleton {
                        dag.ancestors[singleton].insert(slot_singleton);
                    }
                }
            }
        }
    }
    // Fixpoint of transitive closure + the factorwise rule over everything
    // created so far.
    loop {
        transitive_close(dag);
        if !factorwise_pass(dag)? {
            break;
        }
    }
    Ok(())
}

fn transitive_close(dag: &mut AdmissibleDag) {
    loop {
        let mut grew = false;
        for id in 0..dag.indices.len() {
            let mut add = BTreeSet::new();
            for &a in &dag.ancestors[id] {
                for &b in &dag.ancestors[a] {
                    if b != id && !dag.ancestors[id].contains(&b) {
                        add.insert(b);
                    }
                }
            }
            if !add.is_empty() {
                grew = true;
                dag.ancestors[id].extend(add);
            }
        }
        if !grew {
            return;
        }
    }
}

/// One pass of the factorwise rule: a tuple index `A` becomes an ancestor
/// of a tuple index `B` when every factor of `B` lies strictly below some
/// factor of `A` (as singleton indices) and `X_B ⊆ X_A`. Strictness
/// matters: sub-tuples with equal underlying sets would otherwise become
/// ancestors in both directions. Returns whether any edge was added.
fn factorwise_pass(dag: &mut AdmissibleDag) -> Result<bool, AdmissibleError> {
    let n = dag.indices.len();
    // Factor tuples as singleton index ids; the root has none and does not
    // participate.
    let singles: Vec<Option<Vec<usize>>> = (0..n)
        .map(|id| {
            let idx = &dag.indices[id];
            idx.parent.map(|parent| {
                idx.factors
                    .iter()
                    .map(|&p| dag.products[parent][&vec![p]])
                    .collect()
            })
        })
        .collect();
    let mut added = false;
    for a in 0..n {
        let Some(fa) = &singles[a] else {
            continue;
        };
        'b: for (b, fb) in singles.iter().enumerate() {
            if a == b || dag.ancestors[b].contains(&a) {
                continue;
            }
            let Some(fb) = fb else {
                continue;
            };
            for &bf in fb {
                if !fa.iter().any(|&af| dag.ancestors[bf].contains(&af)) {
                    continue 'b;
                }
            }
            if !dag.indices[b].set.is_subset_of(&dag.indices[a].set)? {
                continue;
            }
            dag.ancestors[b].insert(a);
            added = true;
        }
    }
    Ok(added)
}

fn check_invariants(dag: &AdmissibleDag) -> Result<(), AdmissibleError> {
    for id in 0..dag.indices.len() {
        if dag.ancestors[id].contains(&id) {
            return Err(AdmissibleError::InvariantViolated {
                detail: format!("{} is its own ancestor", dag.indices[id].path),
            });
        }
        for &a in &dag.ancestors[id] {
            if dag.ancestors[a].contains(&id) {
                return Err(AdmissibleError::InvariantViolated {
                    detail: format!(
                        "ancestor cycle between {} and {}",
                        dag.indices[id].path, dag.indices[a].path
                    ),
                });
            }
            if !dag.indices[id].set.is_subset_of(&dag.indices[a].set)? {
                return Err(AdmissibleError::InvariantViolated {
                    detail: format!(
                        "{} is an ancestor of {} without containing its set",
                        dag.indices[a].path, dag.indices[id].path
                    ),
                });
            }
            for &b in &dag.ancestors[a] {
                if b != id && !dag.ancestors[id].contains(&b) {
                    return Err(AdmissibleError::InvariantViolated {
                        detail: format!(
                            "ancestors of {} are not transitively closed",
                            dag.indices[id].path
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}

/// The unique-ancestor map: the slot of a cover element of `α` inside the
/// cover of an ancestor `β` (identity when `β = α`). Resolution is
/// deterministic — a key match with containment wins, then the first
/// containing part — mirroring how iterated covers keep provenance.
pub fn unique_ancestor(
    dag: &AdmissibleDag,
    elem: ElemRef,
    beta: usize,
) -> Result<ElemRef, AdmissibleError> {
    let alpha = elem.owner;
    if beta == alpha {
        return Ok(elem);
    }
    if !dag.ancestors[alpha].contains(&beta) {
        return Err(AdmissibleError::NotAnAncestor {
            descendant: dag.indices[alpha].path.clone(),
            claimed: dag.indices[beta].path.clone(),
        });
    }
    match resolve_slot(&dag.covers[alpha][elem.pos], &dag.covers[beta])? {
        Some(pos) => Ok(ElemRef { owner: beta, pos }),
        None => Err(AdmissibleError::MissingSlot {
            ancestor: dag.indices[beta].path.clone(),
            element: format!(
                "{}[{}]",
                dag.indices[alpha].path, dag.covers[alpha][elem.pos].key
            ),
        }),
    }
}

/// Size report of a DAG.
pub struct DagStats {
    /// Index counts per level.
    pub per_level: Vec<usize>,
    /// Largest cover size.
    pub max_cover: usize,
    /// Total index count.
    pub total: usize,
}

/// Count indices per level, the largest cover, and the total.
pub fn dag_stats(dag: &AdmissibleDag) -> DagStats {
    DagStats {
        per_level: dag.levels.iter().map(|l| l.len()).collect(),
        max_cover: dag.covers.iter().map(|c| c.len()).max().unwrap_or(0),
        total: dag.indices.len(),
    }
}
