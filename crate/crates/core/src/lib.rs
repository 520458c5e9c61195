//! q-matroids on F_q^n: the subspace lattice, rank functions and every
//! derived family, representable q-matroids from matrices over GF(q^m),
//! decision procedures for each axiom system, and converters between them.

pub mod axioms;
pub mod crypto;
pub mod error;
pub mod family;
pub mod fixtures;
pub mod gf;
pub mod io;
pub mod lattice;
pub mod matroid;
pub mod report;
pub mod representable;
pub mod subspace;

pub use error::{Error, Result};
pub use family::SubspaceFamily;
pub use gf::{ExtElem, ExtField, PrimeField};
pub use lattice::{enumerate_subspaces, gaussian_binomial, Interval, Lattice};
pub use matroid::{ClosureMap, FamilyKind, Provenance, QMatroid, RankTable};
pub use subspace::Subspace;
