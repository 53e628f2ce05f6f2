//! The user guide, inlined chapter by chapter.
//!
//! The guide is an mdbook living in `book/`; render it with `mdbook build
//! book` from the crate root if you have mdbook installed. Each chapter is
//! *also* the documentation of one module below, so every fenced Rust block
//! in the book compiles and runs under `cargo test --doc`. The book cannot
//! drift from the library without a test failing, and the rendered rustdoc
//! carries the full guide.
//!
//! One module per chapter keeps doctest failures attributable: a broken
//! snippet reports the chapter it lives in.

#[doc = include_str!("../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../book/src/exact-rational-matrices.md")]
pub mod exact_rational_matrices {}

#[doc = include_str!("../book/src/cochain-complexes.md")]
pub mod cochain_complexes {}

#[doc = include_str!("../book/src/double-complexes.md")]
pub mod double_complexes {}

#[doc = include_str!("../book/src/simplicial-complexes.md")]
pub mod simplicial_complexes {}

#[doc = include_str!("../book/src/covers-and-nerves.md")]
pub mod covers_and_nerves {}

#[doc = include_str!("../book/src/mayer-vietoris.md")]
pub mod mayer_vietoris {}

#[doc = include_str!("../book/src/admissible-indices.md")]
pub mod admissible_indices {}

#[doc = include_str!("../book/src/recursion.md")]
pub mod recursion {}

#[doc = include_str!("../book/src/command-line.md")]
pub mod command_line {}
