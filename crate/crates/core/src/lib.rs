//! Exact cell combinatorics for low-rank affine Weyl groups.
//!
//! The crate builds root data for the irreducible types A1-A3, B2, B3, C3
//! and G2, enumerates balls in the associated affine Weyl group W ⋉ Q
//! (translations by the root lattice, hyperplanes cut out by coroots),
//! computes Kazhdan-Lusztig polynomials and canonical-basis products with
//! exact integer arithmetic, partitions windows into cells, and checks the
//! resulting combinatorics against nilpotent-orbit tables and a block model
//! of reduced enveloping algebras.
//!
//! Everything is deterministic and exact: weights are rational vectors in
//! the simple-root basis, polynomials are integer Laurent polynomials, and
//! no floating point is used anywhere.

pub mod affine;
pub mod cells;
pub mod conjecture;
pub mod error;
pub mod hecke;
pub mod orbits;
pub mod poly;
pub mod repmodel;
pub mod rootdata;

pub use affine::{Alcove, AffineElt, Ball, SpecialPoint};
pub use error::Error;
pub use hecke::{KlTable, StructureConstant};
pub use orbits::{BijectionMatch, OrbitRecord};
pub use poly::LaurentPoly;
pub use repmodel::BlockModel;
pub use rootdata::{build_root_datum, parse_type, Rat, RootDatum, Series, WeylElt};
