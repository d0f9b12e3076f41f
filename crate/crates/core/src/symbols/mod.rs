//! Graded nilpotent Lie algebras `m = g^{-μ} ⊕ ... ⊕ g^{-1}` given by
//! structure constants, with validation and builders for the standard
//! families (commutative, Heisenberg, free nilpotent).

mod builders;
mod free;
mod json;

pub use builders::{build_commutative, build_heisenberg, build_heisenberg_with_form};
pub use free::{build_free_nilpotent, lyndon_words};
pub use json::{BracketEntry, RatJson, SymbolJson};

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{axpy, is_zero_vec, zero_vec, Mat, Rat, Subspace};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymbolError {
    #[error("Heisenberg algebra needs odd total dimension >= 3, got {0}")]
    EvenDim(usize),
    #[error("invalid dimensions: {0}")]
    InvalidDims(String),
    #[error("basis index out of range: degree {degree}, index {index}")]
    BadIndex { degree: i32, index: usize },
    #[error("bracket value lands outside the algebra: {0}")]
    BadValue(String),
    #[error("symplectic form must be antisymmetric and nondegenerate")]
    BadForm,
    #[error("structure constants fail validation: {0}")]
    Invalid(ValidationReport),
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
}

/// Result of checking the defining properties of a Tanaka symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub antisymmetric: bool,
    pub jacobi: bool,
    pub graded: bool,
    pub fundamental: bool,
}

impl ValidationReport {
    pub fn all(&self) -> bool {
        self.antisymmetric && self.jacobi && self.graded && self.fundamental
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "antisymmetric={} jacobi={} graded={} fundamental={}",
            self.antisymmetric, self.jacobi, self.graded, self.fundamental
        )
    }
}

/// A negatively graded nilpotent Lie algebra.
///
/// The global basis lists `g^{-1}` first, then `g^{-2}`, and so on, so the
/// basis vectors of degree `-1` occupy indices `0..dim(-1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct NilpotentSymbol {
    dims: Vec<usize>,
    labels: Vec<String>,
    /// Dense table: entry `p * n + q` holds `[e_p, e_q]` in global coordinates.
    table: Vec<Vec<Rat>>,
}

impl NilpotentSymbol {
    /// Builds a symbol from per-degree dimensions (`dims[0]` is `dim g^{-1}`)
    /// and ordered bracket entries. No validation is performed; entries not
    /// listed are zero, and an entry for `(p, q)` without one for `(q, p)`
    /// implies the antisymmetric counterpart.
    pub fn from_entries<I>(
        dims: Vec<usize>,
        labels: Option<Vec<String>>,
        entries: I,
    ) -> Result<Self, SymbolError>
    where
        I: IntoIterator<Item = ((usize, usize), Vec<Rat>)>,
    {
        if dims.is_empty() || dims.contains(&0) {
            return Err(SymbolError::InvalidDims(format!("{dims:?}")));
        }
        let n: usize = dims.iter().sum();
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => {
                return Err(SymbolError::InvalidDims(format!("{} labels for dimension {n}", l.len())))
            }
            None => default_labels(&dims),
        };
        let mut table: Vec<Option<Vec<Rat>>> = vec![None; n * n];
        for ((p, q), v) in entries {
            if p >= n || q >= n {
                return Err(SymbolError::BadIndex { degree: 0, index: p.max(q) });
            }
            if v.len() != n {
                return Err(SymbolError::BadValue(format!("length {} != {n}", v.len())));
            }
            table[p * n + q] = Some(v);
        }
        let mut dense = vec![zero_vec(n); n * n];
        for p in 0..n {
            for q in 0..n {
                if let Some(v) = &table[p * n + q] {
                    dense[p * n + q] = v.clone();
                } else if let Some(v) = &table[q * n + p] {
                    dense[p * n + q] = v.iter().map(|x| -x).collect();
                }
            }
        }
        Ok(NilpotentSymbol { dims, labels, table: dense })
    }

    /// Like [`from_entries`](Self::from_entries) but rejects anything that
    /// fails [`validate`](Self::validate).
    pub fn new_validated<I>(
        dims: Vec<usize>,
        labels: Option<Vec<String>>,
        entries: I,
    ) -> Result<Self, SymbolError>
    where
        I: IntoIterator<Item = ((usize, usize), Vec<Rat>)>,
    {
        let s = Self::from_entries(dims, labels, entries)?;
        let report = s.validate();
        if report.all() {
            Ok(s)
        } else {
            Err(SymbolError::Invalid(report))
        }
    }

    /// The depth `μ`.
    pub fn depth(&self) -> usize {
        self.dims.len()
    }

    /// Dimension of `g^deg` for `deg` in `-μ..=-1`, zero otherwise.
    pub fn dim(&self, deg: i32) -> usize {
        if deg >= 0 || (-deg) as usize > self.dims.len() {
            0
        } else {
            self.dims[(-deg - 1) as usize]
        }
    }

    /// Per-degree dimensions, `dims()[0]` being `dim g^{-1}`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// First global index of degree `deg`.
    pub fn offset(&self, deg: i32) -> usize {
        assert!(deg < 0 && (-deg) as usize <= self.dims.len(), "degree {deg} out of range");
        self.dims[..(-deg - 1) as usize].iter().sum()
    }

    pub fn range(&self, deg: i32) -> std::ops::Range<usize> {
        let o = self.offset(deg);
        o..o + self.dim(deg)
    }

    pub fn degree_of(&self, idx: usize) -> i32 {
        let mut acc = 0;
        for (k, d) in self.dims.iter().enumerate() {
            acc += d;
            if idx < acc {
                return -(k as i32) - 1;
            }
        }
        panic!("basis index {idx} out of range");
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `[e_p, e_q]` in global coordinates.
    pub fn bracket_basis(&self, p: usize, q: usize) -> &[Rat] {
        &self.table[p * self.total_dim() + q]
    }

    pub fn bracket(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let n = self.total_dim();
        let mut out = zero_vec(n);
        for (p, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (q, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                axpy(&mut out, &(a * b), self.bracket_basis(p, q));
            }
        }
        out
    }

    /// Component of a global vector in degree `deg`.
    pub fn project(&self, v: &[Rat], deg: i32) -> Vec<Rat> {
        v[self.range(deg)].to_vec()
    }

    /// Embeds component coordinates of degree `deg` into global coordinates.
    pub fn embed(&self, v: &[Rat], deg: i32) -> Vec<Rat> {
        let mut out = zero_vec(self.total_dim());
        for (i, x) in self.range(deg).zip(v) {
            out[i] = x.clone();
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.total_dim();
        let mut antisymmetric = true;
        let mut graded = true;
        for p in 0..n {
            for q in 0..n {
                let v = self.bracket_basis(p, q);
                let w = self.bracket_basis(q, p);
                if v.iter().zip(w).any(|(a, b)| a != &-b) {
                    antisymmetric = false;
                }
                let target = self.degree_of(p) + self.degree_of(q);
                if v.iter().enumerate().any(|(r, x)| !x.is_zero() && self.degree_of(r) != target) {
                    graded = false;
                }
            }
        }
        let mut jacobi = true;
        'outer: for a in 0..n {
            for b in 0..n {
                let ab = self.bracket_basis(a, b).to_vec();
                for c in 0..n {
                    let ea = crate::exactla::unit_vec(n, a);
                    let eb = crate::exactla::unit_vec(n, b);
                    let ec = crate::exactla::unit_vec(n, c);
                    // [a,[b,c]] = [[a,b],c] + [b,[a,c]]
                    let lhs = self.bracket(&ea, self.bracket_basis(b, c));
                    let mut rhs = self.bracket(&ab, &ec);
                    let ac = self.bracket_basis(a, c).to_vec();
                    let t = self.bracket(&eb, &ac);
                    axpy(&mut rhs, &crate::exactla::one(), &t);
                    if lhs != rhs {
                        jacobi = false;
                        break 'outer;
                    }
                }
            }
        }
        ValidationReport { antisymmetric, jacobi, graded, fundamental: self.generated_dims() == self.dims }
    }

    /// Dimensions of the pieces generated by `g^{-1}`: `[g^{-1}, ..., g^{-1}]`
    /// with `k` entries, projected to degree `-k`.
    pub fn generated_dims(&self) -> Vec<usize> {
        let n = self.total_dim();
        let mut out = vec![self.dim(-1)];
        let mut current: Vec<Vec<Rat>> =
            self.range(-1).map(|i| crate::exactla::unit_vec(n, i)).collect();
        for k in 2..=self.depth() as i32 {
            let mut next = Vec::new();
            for g in self.range(-1) {
                for c in &current {
                    let b = self.bracket(&crate::exactla::unit_vec(n, g), c);
                    if !is_zero_vec(&b) {
                        next.push(b);
                    }
                }
            }
            let sp = Subspace::span(n, next.into_iter().map(|v| self.embed(&self.project(&v, -k), -k)));
            out.push(sp.dim());
            current = sp.basis_vecs();
        }
        out
    }

    /// Cumulative dimensions from degree `-1` downward.
    pub fn growth_vector(&self) -> Vec<usize> {
        self.dims
            .iter()
            .scan(0, |acc, d| {
                *acc += d;
                Some(*acc)
            })
            .collect()
    }

    /// For a two-step algebra with one-dimensional `g^{-2}`, the form `ω` on
    /// `g^{-1}` with `[e_i, e_j] = ω_ij z`.
    pub fn symplectic_form(&self) -> Option<Mat> {
        if self.depth() != 2 || self.dim(-2) != 1 {
            return None;
        }
        let k = self.dim(-1);
        let z = self.offset(-2);
        let mut m = Mat::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m[(i, j)] = self.bracket_basis(i, j)[z].clone();
            }
        }
        Some(m)
    }

    /// Equality of dimensions and structure constants, ignoring labels.
    pub fn same_structure(&self, other: &NilpotentSymbol) -> bool {
        self.dims == other.dims && self.table == other.table
    }

    /// Whether all brackets vanish.
    pub fn is_commutative(&self) -> bool {
        self.table.iter().all(|v| is_zero_vec(v))
    }

    /// Nonzero structure constants as `(p, q, value)` with `p < q`.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vec<Rat>)> {
        let n = self.total_dim();
        let mut out = Vec::new();
        for p in 0..n {
            for q in p + 1..n {
                let v = self.bracket_basis(p, q);
                if !is_zero_vec(v) {
                    out.push((p, q, v.to_vec()));
                }
            }
        }
        out
    }
}

fn default_labels(dims: &[usize]) -> Vec<String> {
    let mut out = Vec::new();
    for (k, &d) in dims.iter().enumerate() {
        for a in 0..d {
            out.push(format!("g{}_{}", -(k as i32) - 1, a));
        }
    }
    out
}

impl std::fmt::Debug for NilpotentSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "NilpotentSymbol dims {:?}", self.dims)?;
        for (p, q, v) in self.nonzero_brackets() {
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(r, x)| format!("{x}*{}", self.labels[r]))
                .collect();
            writeln!(f, "  [{}, {}] = {}", self.labels[p], self.labels[q], terms.join(" + "))?;
        }
        Ok(())
    }
}
