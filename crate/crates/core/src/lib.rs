//! q-matroids over small finite fields: subspace lattices, cyclic flats,
//! free products and their factorization, and matrix representations.

pub mod budget;
pub mod constructions;
pub mod error;
pub mod factorization;
pub mod gf;
pub mod io;
pub mod qmatroid;
pub mod representation;
pub mod subspace;

pub use budget::Budget;
pub use constructions::{direct_sum, free_product, WeakOrderVerdict, WeakRelation};
pub use error::{Error, Result};
pub use factorization::{
    primary_factorization, DmLattice, FactorKind, FactorizationReport, Irreducibility,
};
pub use gf::{BaseField, ExtField, Field, Matrix};
pub use qmatroid::{Axiom, AxiomFailure, CyclicFlatLattice, IsoVerdict, QMatroid};
pub use representation::{LinearSetProfile, QSystem};
pub use subspace::{DirectSumContext, QuotientMap, Side, Subspace, SubspaceLattice};

#[cfg(test)]
pub(crate) mod testutil;
