//! Decision procedures and constructions for finite categories: local right
//! adjoints and their units, orthogonality and factorization systems, bounded
//! free product completions, multi-(co)limits, local objects for cones, and
//! left/right object classification.

pub mod cones;
pub mod connectivity;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod family;
pub mod fincat;
pub mod gamma;
pub mod lr;
pub mod multiadjoint;
pub mod multilimits;
pub mod orthogonality;

pub use error::{CatError, Result};
pub use fincat::{FinCategory, FinFunctor, Limits, Mor, Obj};

/// Outcome of a yes/no decision procedure, carrying a counterexample on
/// failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision<W> {
    Holds,
    Fails(W),
}

impl<W> Decision<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Decision::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Decision::Holds => None,
            Decision::Fails(w) => Some(w),
        }
    }
}
