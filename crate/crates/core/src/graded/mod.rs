//! Decreasing filtrations, the associated graded functor on subspaces and
//! maps, induced filtrations on `gl(W)` and on a graded nilpotent algebra,
//! and a checker for the three statements about `gr` of a filtered map.

mod filtration;
mod lemma;
mod symbol;

pub use filtration::{gl_filtration, gr_endomorphisms, gr_map, gr_subspace, FilteredMap, FiltrationSpec, GradedSpace};
pub use lemma::{lemma_abc_check, LemmaReport};
pub use symbol::{bigraded_gr, induced_symbol_filtration, BigradedGr};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error("filtration steps must have increasing indices and decrease by inclusion")]
    NotDecreasing,
    #[error("map does not preserve the filtrations")]
    NotFiltered,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("weighted vectors do not form a basis")]
    NotABasis,
}
