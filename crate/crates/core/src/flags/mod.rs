//! Flag symbols: commutative spaces of degree `-1` endomorphisms of a
//! graded space `gr W`, their prolongations `u^F(δ)` inside `gr g0`, the
//! parameterized variant with a centralizer in degree zero, and the
//! symplectic-flag criterion for compatibility with `(c)sp`.
//!
//! Symbols are compared only by exact equality of subspaces; equivalence
//! under the action of the positive part of the structure group is not
//! tested.

mod endo;
mod prolong;

pub use endo::{direct_sum, make_delta_rp, make_tau_m, EndoDatum};
pub use prolong::{
    flag_prolong, flag_prolong_param, symplectic_flag_check, AmbientKind, Compatibility, FlagProlongation,
    FlagStatus, FlagSymbol, SymplecticCheck,
};

use thiserror::Error;

use crate::graded::GradedError;
use crate::prolong::ProlongError;
use crate::symbols::SymbolError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlagError {
    #[error("direct sum mixes parts with and without a symplectic form")]
    MixedStructure,
    #[error("direct sum of no parts")]
    Empty,
    #[error("need r <= p < 0, got r = {r}, p = {p}")]
    BadRange { r: i32, p: i32 },
    #[error("m must be at least 1")]
    BadIndex,
    #[error("delta is not commutative")]
    NotCommutative,
    #[error("delta does not lie in the degree -1 part of gr of the ambient algebra")]
    DeltaNotInAmbient,
    #[error("a parameterized symbol needs exactly one fixed element")]
    NotParameterized,
    #[error("the datum carries no symplectic form")]
    NoForm,
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Prolong(#[from] ProlongError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
}
