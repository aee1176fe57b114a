//! Exact computations with Borel-Schur algebras `S(B⁺, n, r)`.
//!
//! The crate builds the algebra from its orbit basis, constructs simple,
//! projective and injective modules, minimal presentations of the simples,
//! Auslander-Reiten sequences ending in simples, socle data, quivers with
//! relations, and representation-type verdicts. All arithmetic is exact:
//! rationals in characteristic 0 and residues in characteristic `p`.

pub mod algebra;
pub mod error;
pub mod linalg;
pub mod modules;
pub mod quiver;
pub mod resolutions;
pub mod scalars;
pub mod weights;

pub use error::{Error, Result};
