//! Generalised Renner monoids and their generic Hecke algebras.
//!
//! The crate builds a finite Coxeter group from its graph, constructs a
//! generalised Renner monoid from presentation data (graph, cross-section
//! lattice and the two type maps), computes normal forms and the length
//! function, and realises the generic Hecke algebra of the monoid over
//! `Z[q]` with exact polynomial structure constants.
//!
//! The [`oracle`] module provides the independent ground truth: it
//! enumerates the full matrix monoid `M_n(F_p)`, decomposes it into Borel
//! double cosets, and computes the Iwahori-Hecke convolution algebra with
//! exact rational arithmetic, so that the generic construction can be
//! checked entry by entry against the specialisation at `q = p`.

pub mod catalog;
pub mod coxeter;
pub mod format;
pub mod hecke;
pub mod lattice;
pub mod oracle;
pub mod poly;
pub mod renner;
pub mod rewrite;

pub use coxeter::{CoxeterGraph, CoxeterGroup, ElemId, GenId, GenSet, Side};
pub use lattice::{CrossSectionLattice, LatId};
pub use poly::IntPoly;
pub use renner::{ElementTable, Letter, RennerData, RennerElement, RennerMonoid};
