//! Simplicial complexes, subcomplexes, and their cochain-level invariants.
//!
//! This module is the geometric ground floor of the crate, and it contains
//! the *oracle*: [`simplicial_cohomology`] computes Betti numbers directly
//! from the simplicial cochain complex, with no covers, nerves, or
//! recursion involved. Every other pipeline in the crate is measured
//! against it.
//!
//! # Core concepts
//!
//! - A [`SimplicialComplex`] is an ambient complex: an ordered list of
//!   vertex labels plus a face-closed set of simplices, each stored as the
//!   ascending list of its vertex indices. The declared vertex order is the
//!   order of everything downstream — simplex bases, component numbering,
//!   block layouts.
//! - A [`SubcomplexRef`] is a face-closed subset of one ambient complex's
//!   simplices. Covers, their iterated intersections, and stars are all
//!   subcomplex refs sharing the same ambient, which makes intersection a
//!   set operation and inclusion testable for free.
//! - [`cochain_complex`] produces the simplicial cochain complex with the
//!   standard alternating-sign coboundary: the coefficient of a `q`-simplex
//!   `σ` in `δf(τ)` is `(−1)^i` when `σ` is `τ` with its `i`-th vertex
//!   omitted.
//! - [`mv_double_complex`] lays out the Mayer–Vietoris (generalized Čech)
//!   double complex of a cover: columns indexed by ascending tuples of
//!   cover parts, carrying the cochains of their intersections; horizontal
//!   maps are alternating sums of restrictions, vertical maps are
//!   coboundaries. [`restriction_to_total_map`] is the comparison map from
//!   the cochains of the whole space into its total complex, a
//!   quasi-isomorphism once the truncation degree exceeds the dimension.
//!
//! # Example
//!
//! ```
//! use mvbetti::simplicial::{simplicial_cohomology, star_cover, SimplicialComplex};
//!
//! let circle = SimplicialComplex::from_maximal(
//!     vec!["a", "b", "c"],
//!     vec![vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]],
//! )
//! .unwrap()
//! .into_shared();
//! let whole = circle.as_whole();
//! assert_eq!(simplicial_cohomology(&whole), vec![1, 1]);
//! // Closed vertex stars cover the circle by three contractible arcs.
//! let stars = star_cover(&whole);
//! assert_eq!(stars.len(), 3);
//! for (_, star) in &stars {
//!     assert_eq!(simplicial_cohomology(star), vec![1, 0]);
//! }
//! ```

use crate::complex::{ComplexError, ComplexMap, GradedComplex};
use crate::doublecomplex::{DoubleComplex, DoubleComplexError, SignConvention};
use crate::linalg::{rat, QMatrix};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use thiserror::Error;

/// A simplex as the ascending list of its vertex indices in the ambient
/// complex's declared order.
pub type Simplex = Vec<usize>;

/// Errors from simplicial constructions.
#[derive(Debug, Error)]
pub enum SimplicialError {
    /// A vertex label appears twice in the declared vertex list.
    #[error("duplicate vertex label {label:?}")]
    DuplicateLabel {
        /// The repeated label.
        label: String,
    },
    /// A simplex refers to a label that was never declared.
    #[error("unknown vertex label {label:?}")]
    UnknownLabel {
        /// The unknown label.
        label: String,
    },
    /// A simplex lists the same vertex twice.
    #[error("simplex {simplex:?} repeats a vertex")]
    RepeatedVertex {
        /// The offending simplex, as labels.
        simplex: String,
    },
    /// A subcomplex member is not a simplex of the ambient complex.
    #[error("simplex {simplex:?} is not in the ambient complex")]
    NotInAmbient {
        /// The offending simplex, as labels.
        simplex: String,
    },
    /// A member set is not closed under taking faces.
    #[error("subcomplex is not face-closed: {simplex:?} is a member but its face {face:?} is not")]
    NotFaceClosed {
        /// A member whose face is missing.
        simplex: String,
        /// The missing face.
        face: String,
    },
    /// Two subcomplexes from different ambient complexes were combined.
    #[error("subcomplexes belong to different ambient complexes")]
    AmbientMismatch,
    /// A restriction was requested to a set that is not contained in the
    /// source.
    #[error("restriction target is not a subset of the source")]
    NotSubset,
    /// An intersection of zero subcomplexes was requested.
    #[error("cannot intersect an empty list of subcomplexes")]
    EmptyIntersectionList,
    /// The declared parts do not cover the space.
    #[error("cover union mismatch: parts cover {covered} of the {expected} simplices")]
    NotACover {
        /// Simplices covered by the union of the parts.
        covered: usize,
        /// Simplices of the space being covered.
        expected: usize,
    },
    /// An invariant of a derived complex failed (propagated).
    #[error(transparent)]
    Complex(#[from] ComplexError),
    /// An invariant of a derived double complex failed (propagated).
    #[error(transparent)]
    DoubleComplex(#[from] DoubleComplexError),
}

/// An ambient simplicial complex: ordered vertex labels and a face-closed
/// set of simplices. Every declared vertex is a 0-simplex of the complex.
#[derive(Debug)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    label_index: BTreeMap<String, usize>,
    simplices: BTreeSet<Simplex>,
}

impl SimplicialComplex {
    /// Builds a complex from declared vertex labels and a list of maximal
    /// simplices (given as label lists, in any order). All faces are added,
    /// and every declared vertex becomes a 0-simplex.
    pub fn from_maximal<L, S>(
        labels: Vec<L>,
        maximal: Vec<Vec<S>>,
    ) -> Result<Self, SimplicialError>
    where
        L: Into<String>,
        S: AsRef<str>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut label_index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if label_index.insert(l.clone(), i).is_some() {
                return Err(SimplicialError::DuplicateLabel { label: l.clone() });
            }
        }
        let mut simplices: BTreeSet<Simplex> = (0..labels.len()).map(|v| vec![v]).collect();
        for m in maximal {
            let mut s = Simplex::new();
            for l in m {
                let l = l.as_ref();
                let &i = label_index
                    .get(l)
                    .ok_or_else(|| SimplicialError::UnknownLabel {
                        label: l.to_string(),
                    })?;
                s.push(i);
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(SimplicialError::RepeatedVertex {
                    simplex: s
                        .iter()
                        .map(|&v| labels[v].as_str())
                        .collect::<Vec<_>>()
                        .join("."),
                });
            }
            for face in faces_closure(&s) {
                simplices.insert(face);
            }
        }
        Ok(SimplicialComplex {
            labels,
            label_index,
            simplices,
        })
    }

    /// Wraps the complex for shared ownership by subcomplexes.
    pub fn into_shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    /// The whole complex as a subcomplex of itself.
    pub fn as_whole(self: &Arc<Self>) -> SubcomplexRef {
        SubcomplexRef {
            ambient: Arc::clone(self),
            members: self.simplices.clone(),
        }
    }

    /// Number of declared vertices.
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// The declared vertex labels, in order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The label of vertex `v`.
    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// The index of a label, if declared.
    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    /// All simplices, ascending in the lexicographic order on vertex
    /// indices (shorter prefixes first within a dimension mix).
    pub fn simplices(&self) -> &BTreeSet<Simplex> {
        &self.simplices
    }

    /// Renders a simplex as dot-joined vertex labels.
    pub fn simplex_name(&self, s: &[usize]) -> String {
        s.iter()
            .map(|&v| self.labels[v].as_str())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// All nonempty faces of `s` (including `s` itself).
fn faces_closure(s: &Simplex) -> Vec<Simplex> {
    let mut out = Vec::new();
    let n = s.len();
    for mask in 1u32..(1 << n) {
        let face: Simplex = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| s[i]).collect();
        out.push(face);
    }
    out
}

/// A face-closed subset of one ambient complex's simplices.
///
/// Equality requires the *same* ambient complex (pointer identity) and
/// equal member sets.
#[derive(Clone, Debug)]
pub struct SubcomplexRef {
    ambient: Arc<SimplicialComplex>,
    members: BTreeSet<Simplex>,
}

impl PartialEq for SubcomplexRef {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient) && self.members == other.members
    }
}

impl Eq for SubcomplexRef {}

impl SubcomplexRef {
    /// Builds a subcomplex from an explicit member set, validating ambient
    /// membership and face-closure.
    pub fn new(
        ambient: &Arc<SimplicialComplex>,
        members: BTreeSet<Simplex>,
    ) -> Result<Self, SimplicialError> {
        for s in &members {
            if !ambient.simplices.contains(s) {
                return Err(SimplicialError::NotInAmbient {
                    simplex: ambient.simplex_name(s),
                });
            }
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    if !members.contains(&face) {
                        return Err(SimplicialError::NotFaceClosed {
                            simplex: ambient.simplex_name(s),
                            face: ambient.simplex_name(&face),
                        });
                    }
                }
            }
        }
        Ok(SubcomplexRef {
            ambient: Arc::clone(ambient),
            members,
        })
    }

    /// Builds the face-closure of the given simplices (as label lists)
    /// inside the ambient complex.
    pub fn closure_of<S: AsRef<str>>(
        ambient: &Arc<SimplicialComplex>,
        generators: &[Vec<S>],
    ) -> Result<Self, SimplicialError> {
        let mut members = BTreeSet::new();
        for g in generators {
            let mut s = Simplex::new();
            for l in g {
                let l = l.as_ref();
                let v = ambient
                    .vertex_index(l)
                    .ok_or_else(|| SimplicialError::UnknownLabel {
                        label: l.to_string(),
                    })?;
                s.push(v);
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(SimplicialError::RepeatedVertex {
                    simplex: ambient.simplex_name(&s),
                });
            }
            if !ambient.simplices.contains(&s) {
                return Err(SimplicialError::NotInAmbient {
                    simplex: ambient.simplex_name(&s),
                });
            }
            for face in faces_closure(&s) {
                members.insert(face);
            }
        }
        Ok(SubcomplexRef {
            ambient: Arc::clone(ambient),
            members,
        })
    }

    /// The empty subcomplex of an ambient complex.
    pub fn empty(ambient: &Arc<SimplicialComplex>) -> Self {
        SubcomplexRef {
            ambient: Arc::clone(ambient),
            members: BTreeSet::new(),
        }
    }

    /// The shared ambient complex.
    pub fn ambient(&self) -> &Arc<SimplicialComplex> {
        &self.ambient
    }

    /// The member simplices.
    pub fn members(&self) -> &BTreeSet<Simplex> {
        &self.members
    }

    /// True if there are no member simplices.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Dimension: the largest member cardinality minus one, or `None` when
    /// empty.
    pub fn dim(&self) -> Option<usize> {
        self.members.iter().map(|s| s.len() - 1).max()
    }

    /// Member `q`-simplices in lexicographic order.
    pub fn q_simplices(&self, q: usize) -> Vec<&Simplex> {
        self.members.iter().filter(|s| s.len() == q + 1).collect()
    }

    /// The member vertices, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        self.members
            .iter()
            .filter(|s| s.len() == 1)
            .map(|s| s[0])
            .collect()
    }

    /// True if every member of `self` is a member of `other`. Errors when
    /// the ambients differ.
    pub fn is_subset_of(&self, other: &SubcomplexRef) -> Result<bool, SimplicialError> {
        if !Arc::ptr_eq(&self.ambient, &other.ambient) {
            return Err(SimplicialError::AmbientMismatch);
        }
        Ok(self.members.is_subset(&other.members))
    }

    /// A short human-readable description (member count and dimension).
    pub fn describe(&self) -> String {
        match self.dim() {
            None => "empty".to_string(),
            Some(d) => format!("{} simplices, dim {}", self.members.len(), d),
        }
    }
}

/// Intersection of one or more subcomplexes of the same ambient complex.
pub fn intersect(parts: &[&SubcomplexRef]) -> Result<SubcomplexRef, SimplicialError> {
    let Some(first) = parts.first() else {
        return Err(SimplicialError::EmptyIntersectionList);
    };
    let mut members = first.members.clone();
    for p in &parts[1..] {
        if !Arc::ptr_eq(&first.ambient, &p.ambient) {
            return Err(SimplicialError::AmbientMismatch);
        }
        members = members.intersection(&p.members).cloned().collect();
    }
    // An intersection of face-closed sets is face-closed.
    Ok(SubcomplexRef {
        ambient: Arc::clone(&first.ambient),
        members,
    })
}

/// Union of subcomplexes of the same ambient complex (the empty union of a
/// given ambient is allowed via `SubcomplexRef::empty`).
pub fn union_of(
    ambient: &Arc<SimplicialComplex>,
    parts: &[&SubcomplexRef],
) -> Result<SubcomplexRef, SimplicialError> {
    let mut members = BTreeSet::new();
    for p in parts {
        if !Arc::ptr_eq(ambient, &p.ambient) {
            return Err(SimplicialError::AmbientMismatch);
        }
        members.extend(p.members.iter().cloned());
    }
    Ok(SubcomplexRef {
        ambient: Arc::clone(ambient),
        members,
    })
}

/// The simplicial cochain complex of a subcomplex, starting in degree 0,
/// with the alternating-sign coboundary. The empty subcomplex yields the
/// empty complex.
pub fn cochain_complex(x: &SubcomplexRef) -> GradedComplex {
    let Some(dim) = x.dim() else {
        return GradedComplex::zero();
    };
    let per_degree: Vec<Vec<&Simplex>> = (0..=dim).map(|q| x.q_simplices(q)).collect();
    let dims: Vec<usize> = per_degree.iter().map(Vec::len).collect();
    let mut diffs = Vec::new();
    for q in 0..dim {
        let cols: BTreeMap<&Simplex, usize> = per_degree[q]
            .iter()
            .enumerate()
            .map(|(i, &s)| (s, i))
            .collect();
        let mut d = QMatrix::zeros(dims[q + 1], dims[q]);
        for (row, tau) in per_degree[q + 1].iter().enumerate() {
            for i in 0..tau.len() {
                let mut face = (*tau).clone();
                face.remove(i);
                let col = cols[&face];
                d.set(row, col, rat(if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        diffs.push(d);
    }
    GradedComplex::new(0, dims, diffs).expect("simplicial coboundary squares to zero")
}

/// **The oracle.** Betti numbers of a subcomplex straight from its cochain
/// complex: one rank computation per degree, nothing else. The returned
/// vector covers degrees `0..=dim`; it is empty for the empty subcomplex.
pub fn simplicial_cohomology(x: &SubcomplexRef) -> Vec<usize> {
    cochain_complex(x).cohomology_dims()
}

/// The decomposition of a subcomplex into connected components.
///
/// Components are numbered `0..count` in increasing order of their minimal
/// vertex; that numbering is the basis order of `H⁰` everywhere in this
/// crate (component `k` ↦ the characteristic cochain of component `k`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDecomposition {
    /// Number of connected components.
    pub count: usize,
    /// Component number of each member vertex.
    pub component_of_vertex: BTreeMap<usize, usize>,
    /// Minimal vertex of each component, ascending (doubles as the
    /// component order).
    pub representatives: Vec<usize>,
}

/// Connected components of a subcomplex via union-find on its vertices and
/// edges.
pub fn connected_components(x: &SubcomplexRef) -> ComponentDecomposition {
    let vertices = x.vertices();
    let mut parent: BTreeMap<usize, usize> = vertices.iter().map(|&v| (v, v)).collect();
    fn find(parent: &mut BTreeMap<usize, usize>, v: usize) -> usize {
        let p = parent[&v];
        if p == v {
            v
        } else {
            let root = find(parent, p);
            parent.insert(v, root);
            root
        }
    }
    for s in x.members.iter().filter(|s| s.len() == 2) {
        let (a, b) = (find(&mut parent, s[0]), find(&mut parent, s[1]));
        if a != b {
            // Smaller root wins, so roots are the minimal vertices.
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent.insert(hi, lo);
        }
    }
    let mut reps: Vec<usize> = Vec::new();
    let mut component_of_vertex = BTreeMap::new();
    for &v in &vertices {
        let root = find(&mut parent, v);
        let k = match reps.binary_search(&root) {
            Ok(k) => k,
            Err(k) => {
                reps.insert(k, root);
                // Renumber later entries is unnecessary: roots are minimal
                // vertices and vertices are visited ascending, so each new
                // root is larger than all previous ones.
                k
            }
        };
        component_of_vertex.insert(v, k);
    }
    ComponentDecomposition {
        count: reps.len(),
        component_of_vertex,
        representatives: reps,
    }
}

/// The restriction map `H⁰(from) → H⁰(to)` for `to ⊆ from`, in the
/// component bases. Each row has exactly one entry 1: the component of
/// `from` containing that component of `to`.
pub fn h0_restriction(
    from: &SubcomplexRef,
    to: &SubcomplexRef,
) -> Result<QMatrix, SimplicialError> {
    if !to.is_subset_of(from)? {
        return Err(SimplicialError::NotSubset);
    }
    let big = connected_components(from);
    let small = connected_components(to);
    let mut m = QMatrix::zeros(small.count, big.count);
    for (row, &rep) in small.representatives.iter().enumerate() {
        let col = big.component_of_vertex[&rep];
        m.set(row, col, rat(1));
    }
    Ok(m)
}

/// The restriction of `q`-cochains `C^q(from) → C^q(to)` for `to ⊆ from`:
/// the 0/1 matrix selecting the shared `q`-simplices.
pub fn cochain_restriction(
    from: &SubcomplexRef,
    to: &SubcomplexRef,
    q: usize,
) -> Result<QMatrix, SimplicialError> {
    if !to.is_subset_of(from)? {
        return Err(SimplicialError::NotSubset);
    }
    let src = from.q_simplices(q);
    let dst = to.q_simplices(q);
    let src_index: BTreeMap<&Simplex, usize> =
        src.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut m = QMatrix::zeros(dst.len(), src.len());
    for (row, s) in dst.iter().enumerate() {
        m.set(row, src_index[s], rat(1));
    }
    Ok(m)
}

/// The Mayer–Vietoris double complex of a cover of `whole` by `parts`.
///
/// Spot `(p, q)` is `⊕ C^q(X_T)` over ascending `(p+1)`-tuples `T` of part
/// indices (lexicographic block order); the horizontal differential is the
/// alternating sum of restrictions to one-larger tuples, the vertical one
/// the direct sum of coboundaries. Squares commute as stored
/// ([`SignConvention::Commuting`]); totalization applies the sign twist.
///
/// The parts must belong to the same ambient complex as `whole` and their
/// union must be exactly `whole`.
pub fn mv_double_complex(
    whole: &SubcomplexRef,
    parts: &[SubcomplexRef],
) -> Result<DoubleComplex, SimplicialError> {
    let u = union_of(&whole.ambient, &parts.iter().collect::<Vec<_>>())?;
    if u.members != whole.members {
        return Err(SimplicialError::NotACover {
            covered: u.members.intersection(&whole.members).count(),
            expected: whole.members.len(),
        });
    }
    let n = parts.len();
    // Cache the intersections per tuple.
    let mut inters: BTreeMap<Vec<usize>, SubcomplexRef> = BTreeMap::new();
    for size in 1..=n {
        for t in ascending_tuples(n, size) {
            let members = if size == 1 {
                parts[t[0]].clone()
            } else {
                let shorter = &inters[&t[..size - 1].to_vec()];
                intersect(&[shorter, &parts[t[size - 1]]])?
            };
            inters.insert(t, members);
        }
    }
    let max_q = whole.dim().map_or(0, |d| d);
    let mut dims = BTreeMap::new();
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    for p in 0..n {
        let tuples = ascending_tuples(n, p + 1);
        for q in 0..=max_q {
            let blocks: Vec<usize> = tuples
                .iter()
                .map(|t| inters[t].q_simplices(q).len())
                .collect();
            let dim: usize = blocks.iter().sum();
            if dim > 0 {
                dims.insert((p, q), dim);
            }
        }
        // Vertical differentials: blockwise coboundaries.
        for q in 0..max_q {
            let rows: usize = tuples
                .iter()
                .map(|t| inters[t].q_simplices(q + 1).len())
                .sum();
            let cols: usize = tuples.iter().map(|t| inters[t].q_simplices(q).len()).sum();
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut d = QMatrix::zeros(rows, cols);
            let (mut r0, mut c0) = (0, 0);
            for t in &tuples {
                let cc = cochain_complex(&inters[t]);
                let block = cc.diff_at(q as i64);
                d.add_block(r0, c0, &block);
                r0 += inters[t].q_simplices(q + 1).len();
                c0 += inters[t].q_simplices(q).len();
            }
            vert.insert((p, q), d);
        }
        // Horizontal differentials into column p+1.
        if p + 1 < n {
            let next = ascending_tuples(n, p + 2);
            for q in 0..=max_q {
                let rows: usize = next.iter().map(|t| inters[t].q_simplices(q).len()).sum();
                let cols: usize = tuples
                    .iter()
                    .map(|t| inters[t].q_simplices(q).len())
                    .sum();
                if rows == 0 || cols == 0 {
                    continue;
                }
                let col_offset: BTreeMap<&Vec<usize>, usize> = {
                    let mut off = 0;
                    tuples
                        .iter()
                        .map(|t| {
                            let o = off;
                            off += inters[t].q_simplices(q).len();
                            (t, o)
                        })
                        .collect()
                };
                let mut d = QMatrix::zeros(rows, cols);
                let mut r0 = 0;
                for t in &next {
                    let target = &inters[t];
                    for omit in 0..t.len() {
                        let mut sub = t.clone();
                        sub.remove(omit);
                        let source = &inters[&sub];
                        let r = cochain_restriction(source, target, q)?;
                        let sign = if omit % 2 == 0 { rat(1) } else { rat(-1) };
                        d.add_block_scaled(r0, col_offset[&sub], &r, &sign);
                    }
                    r0 += target.q_simplices(q).len();
                }
                horiz.insert((p, q), d);
            }
        }
    }
    Ok(DoubleComplex::new(
        SignConvention::Commuting,
        dims,
        horiz,
        vert,
    )?)
}

/// All ascending `size`-tuples from `0..n`, lexicographically.
pub fn ascending_tuples(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(n: usize, size: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        let remaining = size - current.len();
        for v in start..=n.saturating_sub(remaining) {
            current.push(v);
            rec(n, size, v + 1, current, out);
            current.pop();
        }
    }
    if size == 0 || size > n {
        return out;
    }
    rec(n, size, 0, &mut current, &mut out);
    out
}

/// The comparison chain map from the (truncated) cochains of the whole
/// space into the (truncated) total complex of its Mayer–Vietoris double
/// complex: in degree `n`, restriction into the single-part blocks of spot
/// `(0, n)` and zero elsewhere.
///
/// The map induces isomorphisms on cohomology in every degree strictly
/// below `t`. At degree `t` itself, brutal truncation can create spurious
/// cohomology on the target side, so the map is a quasi-isomorphism in the
/// strict all-degrees sense exactly when `t` is at least the largest total
/// degree of the double complex (then the truncation is inert and the
/// untruncated comparison theorem applies).
pub fn restriction_to_total_map(
    whole: &SubcomplexRef,
    parts: &[SubcomplexRef],
    t: i64,
) -> Result<ComplexMap, SimplicialError> {
    let source = cochain_complex(whole).truncate(t);
    let dc = mv_double_complex(whole, parts)?.truncate_antidiagonal(t);
    let target = dc.total_complex()?;
    let hi = source.max_degree().unwrap_or(-1);
    let mut mats = Vec::new();
    for deg in 0..=hi.max(-1) {
        if hi < 0 {
            break;
        }
        let n = deg as usize;
        let mut m = QMatrix::zeros(target.dim_at(deg), source.dim_at(deg));
        if dc.dim(0, n) > 0 {
            let (off, _) = dc.block_offset(0, n);
            let mut c0_off = off;
            for part in parts {
                let r = cochain_restriction(whole, part, n)?;
                m.add_block(c0_off, 0, &r);
                c0_off += r.rows();
            }
        }
        mats.push(m);
    }
    Ok(ComplexMap::new(source, target, 0, mats)?)
}

/// The closed-star cover of a subcomplex: for each vertex `v` of `x`, the
/// simplices `τ ∈ x` with `τ ∪ {v} ∈ x`. Each star is a cone with apex
/// `v`, hence contractible; their union is `x`. Parts are labeled by their
/// vertex label, in ascending vertex order.
pub fn star_cover(x: &SubcomplexRef) -> Vec<(String, SubcomplexRef)> {
    x.vertices()
        .into_iter()
        .map(|v| {
            let members: BTreeSet<Simplex> = x
                .members
                .iter()
                .filter(|s| {
                    if s.contains(&v) {
                        return true;
                    }
                    let mut with_v: Simplex = s.iter().copied().chain([v]).collect();
                    with_v.sort_unstable();
                    x.members.contains(&with_v)
                })
                .cloned()
                .collect();
            (
                x.ambient.label(v).to_string(),
                SubcomplexRef {
                    ambient: Arc::clone(&x.ambient),
                    members,
                },
            )
        })
        .collect()
}
