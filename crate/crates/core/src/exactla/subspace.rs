use num_traits::Zero;
use thiserror::Error;

use super::{Mat, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A linear subspace of `Q^n`, stored as the nonzero rows of its reduced
/// row-echelon basis. Two subspaces are equal iff their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Mat::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Mat::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the given vectors.
    pub fn span<I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Rat>>,
    {
        let rows: Vec<Vec<Rat>> = vectors.into_iter().collect();
        Self::from_mat(&Mat::from_rows(ambient, rows))
    }

    /// Row space of `m`.
    pub fn from_mat(m: &Mat) -> Self {
        let (r, pivots) = m.rref();
        let rank = pivots.len();
        let rows = (0..rank).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient: m.cols(), basis: Mat::from_rows(m.cols(), rows), pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical (RREF) basis as rows.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vecs(&self) -> Vec<Vec<Rat>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.ambient);
        // In RREF the coordinates are the pivot entries of v.
        let coords: Vec<Rat> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (i, c) in coords.iter().enumerate() {
            super::axpy(&mut rest, &-c, self.basis.row(i));
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::from_mat(&self.basis.vstack(&other.basis))
    }

    /// Annihilator in the dual, identified with `Q^n` via the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Image of the subspace under the linear map `m` (acting on columns).
    pub fn image(&self, m: &Mat) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        Subspace::span(m.rows(), self.basis_vecs().iter().map(|v| m.mul_vec(v)))
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in Q^{}) ", self.dim(), self.ambient)?;
        f.debug_list().entries(self.basis_vecs().iter().map(|r| {
            r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        })).finish()
    }
}

/// Right null space of `m`.
pub fn kernel(m: &Mat) -> Subspace {
    let n = m.cols();
    let (r, pivots) = m.rref();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vecs = Vec::new();
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = super::unit_vec(n, f);
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r[(row, f)].clone();
        }
        vecs.push(v);
    }
    Subspace::span(n, vecs)
}

/// Complement of `sub` inside `ambient`, by the pivot rule: write `sub` in
/// the canonical coordinates of `ambient`, take the non-pivot indices of
/// that coordinate matrix, and return the span of the matching basis vectors
/// of `ambient`.
pub fn complement_in(sub: &Subspace, ambient: &Subspace) -> Result<Subspace, LinAlgError> {
    if sub.ambient != ambient.ambient {
        return Err(LinAlgError::DimensionMismatch { expected: ambient.ambient, got: sub.ambient });
    }
    let mut coords = Vec::with_capacity(sub.dim());
    for v in sub.basis_vecs() {
        coords.push(ambient.coordinates(&v).ok_or(LinAlgError::NotContained)?);
    }
    let m = ambient.dim();
    let pivots = Mat::from_rows(m, coords).rref().1;
    let picked = (0..m).filter(|t| !pivots.contains(t)).map(|t| ambient.basis.row(t).to_vec());
    Ok(Subspace::span(ambient.ambient, picked))
}

/// Solves `a x = b`. Returns the particular solution with every free
/// variable set to zero (if the system is consistent) and the kernel of `a`.
pub fn solve_affine(a: &Mat, b: &[Rat]) -> (Option<Vec<Rat>>, Subspace) {
    assert_eq!(a.rows(), b.len());
    let n = a.cols();
    let mut aug = Mat::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let pivots = aug.rref_in_place();
    let ker = kernel(a);
    if pivots.last() == Some(&n) {
        return (None, ker);
    }
    let mut x = super::zero_vec(n);
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = aug[(row, n)].clone();
    }
    (Some(x), ker)
}
