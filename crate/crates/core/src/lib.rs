//! Exact definite unimodular lattices, index-two coset enumeration, the
//! `eta`-based invariants `m`, `f2`, `f4`, `e0`, `e_p`, and the `zeta`
//! polynomial checks.

#![allow(clippy::needless_range_loop)]

pub mod census;
pub mod code;
pub mod constructions;
pub mod coset;
pub mod discriminant;
pub mod enumerate;
pub mod error;
pub mod eta;
pub mod invariants;
pub mod lattice;
pub mod lll;
pub mod matrix;
pub mod spec;
pub mod zeta;

pub use code::BinaryCode;
pub use constructions::{named, GlueSpec, RootComponent, RootDecomposition};
pub use coset::{CosetClass, MinimaResult};
pub use discriminant::DiscriminantGroup;
pub use enumerate::Budget;
pub use error::{LatticeError, Result};
pub use eta::{Factor, FactorBasis, SymMonomial};
pub use invariants::{Invariant, InvariantReport, Mode, Witness};
pub use lattice::{Ambient, Lattice, LatticeVector};
pub use zeta::{CertifiedRelation, ZetaPolynomial};
