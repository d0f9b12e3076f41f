//! Exact-arithmetic Tanaka prolongation of graded nilpotent Lie algebras.
//!
//! - [`exactla`]: rational matrices, subspaces in reduced echelon form, kernels and complements.
//! - [`symbols`]: graded nilpotent algebras (commutative, Heisenberg, free truncated, custom).
//! - [`prolong`]: degree-zero subalgebras, the prolongation tower and graded Spencer operators.
//! - [`graded`]: filtrations, associated graded maps and the kernel/complement/preimage checks.
//! - [`flags`]: flag symbols, their prolongations `u^F`, and parameterized variants.
//! - [`distributions`]: polynomial vector fields and the symbol of a distribution at a point.
//! - [`cli`]: JSON jobs and reports behind the `tanaka` binary.
//!
//! All arithmetic is over `Q`; no floating point enters any rank or kernel computation.

pub mod exactla;
pub mod symbols;
pub mod prolong;
pub mod graded;
pub mod flags;
pub mod distributions;
pub mod cli;
