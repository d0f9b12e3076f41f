//! Degree-zero derivation algebras, the universal Tanaka prolongation
//! `u(m, g0)`, and the graded Spencer operators whose kernels reproduce the
//! prolongation degree by degree.
//!
//! Every element of degree `k >= 0` is stored by its action on the basis of
//! `m`: for a basis vector `e_b` of degree `d`, the block `f(e_b)` holds
//! coordinates in the component of degree `d + k` (a component of `m` when
//! `d + k < 0`, a previously computed `g^{d+k}` otherwise). The flattened
//! action vector of a degree-`k` element therefore lives in
//! `⊕_{i<0} Hom(g^i, g^{i+k})`, laid out block by block in basis order.

mod derivations;
mod spencer;
mod tanaka;

pub use derivations::{derivations0, restrict_to, G0Family, Subalgebra0};
pub use spencer::{normalization_complement, spencer_gr, SpencerMap, Summand};
pub use tanaka::{tanaka_prolong, ProlongComponent, ProlongedAlgebra, Status, StructureChecks};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::Rat;
use crate::symbols::NilpotentSymbol;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProlongError {
    #[error("matrix {0} on g^-1 does not extend to a graded derivation")]
    NotADerivation(usize),
    #[error("the given elements do not span a subalgebra (commutator leaves the span)")]
    NotASubalgebra,
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    BadShape { expected: usize, rows: usize, cols: usize },
    #[error("degree {0} has not been computed")]
    MissingComponent(usize),
    #[error("bracket of degrees {0} and {1} leaves the computed component")]
    NotClosed(usize, usize),
    #[error("the symbol fails validation")]
    InvalidSymbol,
}

/// Block layout of `⊕_{i<0} Hom(g^i, g^{i+k})`: one block per basis vector
/// of `m`, of size equal to the dimension of the target component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout {
    pub degree: usize,
    pub block_sizes: Vec<usize>,
    pub offsets: Vec<usize>,
    pub len: usize,
}

impl Layout {
    pub(crate) fn new(m: &NilpotentSymbol, degree: usize, cdim: impl Fn(i32) -> usize) -> Self {
        let block_sizes: Vec<usize> =
            (0..m.total_dim()).map(|b| cdim(m.degree_of(b) + degree as i32)).collect();
        let mut offsets = Vec::with_capacity(block_sizes.len());
        let mut acc = 0;
        for s in &block_sizes {
            offsets.push(acc);
            acc += s;
        }
        Layout { degree, block_sizes, offsets, len: acc }
    }

    pub fn block<'a>(&self, v: &'a [Rat], b: usize) -> &'a [Rat] {
        &v[self.offsets[b]..self.offsets[b] + self.block_sizes[b]]
    }

    pub(crate) fn range(&self, b: usize) -> std::ops::Range<usize> {
        self.offsets[b]..self.offsets[b] + self.block_sizes[b]
    }
}
