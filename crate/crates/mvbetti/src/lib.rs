//! Betti numbers of simplicially presented spaces, computed two independent ways:
//! directly from simplicial cochains, and through recursive Mayer–Vietoris double
//! complexes driven by a DAG of admissible cover indices.
//!
//! Everything is exact: the scalar field is ℚ with arbitrary-precision integers,
//! so ranks, kernels and cohomology dimensions carry no floating-point error.
//!
//! # Layered architecture
//!
//! Each layer only depends on the ones before it:
//!
//! 1. [`linalg`] — dense matrices over ℚ: rank, kernel bases, block sums.
//! 2. [`complex`] — graded cochain complexes and chain maps; cohomology
//!    dimensions, truncation, quasi-isomorphism testing.
//! 3. [`doublecomplex`] — first-quadrant double complexes with commuting
//!    stored differentials; totalization, anti-diagonal truncation, the first
//!    two pages of both spectral-sequence filtrations.
//! 4. [`simplicial`] — simplicial complexes and subcomplexes; the brute-force
//!    cohomology oracle; Mayer–Vietoris double complexes of covers.
//! 5. [`nerve`] — nerves of covers with H⁰ coefficients; the cheap `(b₀, b₁)`
//!    computation that needs no connectivity hypotheses beyond the cover
//!    elements themselves.
//! 6. [`admissible`] — the DAG of admissible indices: iterated intersections
//!    of cover elements, ancestor closure rules, unique-ancestor slots.
//! 7. [`mvrecursion`] — the recursive construction ℳ(α) attaching a double
//!    complex to every DAG index, whose root total complex carries the first
//!    few Betti numbers of the input space.
//! 8. [`cli`] — the input file format and the command-line pipelines.
//!
//! # Quick taste
//!
//! ```
//! use mvbetti::simplicial::SimplicialComplex;
//!
//! // Hollow triangle: a circle.
//! let circle = SimplicialComplex::from_maximal(
//!     vec!["a", "b", "c"],
//!     vec![vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]],
//! )
//! .unwrap()
//! .into_shared();
//! let betti = mvbetti::simplicial::simplicial_cohomology(&circle.as_whole());
//! assert_eq!(betti, vec![1, 1]);
//! ```

pub mod admissible;
pub mod cli;
pub mod complex;
pub mod doublecomplex;
pub mod linalg;
pub mod mvrecursion;
pub mod nerve;
pub mod simplicial;

pub mod book;

pub use linalg::{QMatrix, Rational};
