use std::collections::BTreeMap;

use num_traits::Zero;

use super::GradedError;
use crate::exactla::{complement_in, unit_vec, Mat, Rat, Subspace};

/// A decreasing filtration `F_j ⊇ F_{j+1}` of `Q^n`, together with an
/// adapted basis: basis vector `a` has weight `w_a` and
/// `F_j = span{b_a : w_a >= j}`. Below the lowest weight the filtration is
/// the whole space, above the highest it is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationSpec {
    ambient_dim: usize,
    /// Columns are the adapted basis vectors.
    adapted: Mat,
    adapted_inv: Mat,
    weights: Vec<i32>,
}

impl FiltrationSpec {
    /// From explicit steps `(j, F_j)` with increasing `j`. Steps between
    /// listed indices repeat the previous step; the adapted basis is chosen
    /// with the pivot complement rule.
    pub fn new(ambient_dim: usize, steps: Vec<(i32, Subspace)>) -> Result<Self, GradedError> {
        for (_, s) in &steps {
            if s.ambient_dim() != ambient_dim {
                return Err(GradedError::DimensionMismatch { expected: ambient_dim, got: s.ambient_dim() });
            }
        }
        for w in steps.windows(2) {
            if w[1].0 <= w[0].0 || !w[1].1.is_subspace_of(&w[0].1) {
                return Err(GradedError::NotDecreasing);
            }
        }
        let Some(lowest) = steps.first().map(|s| s.0) else {
            return Ok(Self::from_weights(&vec![0; ambient_dim]));
        };
        // Below the lowest listed step the filtration is everything.
        let mut chain: Vec<(i32, Subspace)> = vec![(lowest - 1, Subspace::full(ambient_dim))];
        chain.extend(steps);
        chain.push((chain.last().unwrap().0 + 1, Subspace::zero(ambient_dim)));
        let mut pieces: Vec<(i32, Vec<Rat>)> = Vec::new();
        for w in chain.windows(2) {
            let (big, small) = (&w[0].1, &w[1].1);
            // The jump happens at the last index where the larger step applies.
            let weight = w[1].0 - 1;
            let comp = complement_in(small, big).map_err(|_| GradedError::NotDecreasing)?;
            pieces.extend(comp.basis_vecs().into_iter().map(|v| (weight, v)));
        }
        pieces.sort_by_key(|(_, v)| v.iter().position(|x| !x.is_zero()));
        let (weights, vecs): (Vec<i32>, Vec<Vec<Rat>>) = pieces.into_iter().unzip();
        Self::from_weighted_basis(vecs, weights)
    }

    /// Coordinate filtration: `F_j = span{e_a : weights[a] >= j}`.
    pub fn from_weights(weights: &[i32]) -> Self {
        let n = weights.len();
        FiltrationSpec {
            ambient_dim: n,
            adapted: Mat::identity(n),
            adapted_inv: Mat::identity(n),
            weights: weights.to_vec(),
        }
    }

    /// Filtration with the given adapted basis (vectors) and weights.
    pub fn from_weighted_basis(vectors: Vec<Vec<Rat>>, weights: Vec<i32>) -> Result<Self, GradedError> {
        let n = vectors.len();
        if weights.len() != n {
            return Err(GradedError::DimensionMismatch { expected: n, got: weights.len() });
        }
        if vectors.iter().any(|v| v.len() != n) {
            return Err(GradedError::NotABasis);
        }
        let adapted = Mat::from_cols(n, vectors);
        let adapted_inv = adapted.inverse().ok_or(GradedError::NotABasis)?;
        Ok(FiltrationSpec { ambient_dim: n, adapted, adapted_inv, weights })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Adapted basis as matrix columns.
    pub fn adapted(&self) -> &Mat {
        &self.adapted
    }

    pub fn adapted_inverse(&self) -> &Mat {
        &self.adapted_inv
    }

    pub fn weights(&self) -> &[i32] {
        &self.weights
    }

    pub fn min_weight(&self) -> i32 {
        self.weights.iter().copied().min().unwrap_or(0)
    }

    pub fn max_weight(&self) -> i32 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    /// `F_j`.
    pub fn at(&self, j: i32) -> Subspace {
        Subspace::span(
            self.ambient_dim,
            (0..self.ambient_dim).filter(|&a| self.weights[a] >= j).map(|a| self.adapted.col(a)),
        )
    }

    /// Steps `(j, F_j)` from the lowest weight to one past the highest.
    pub fn steps(&self) -> Vec<(i32, Subspace)> {
        (self.min_weight()..=self.max_weight() + 1).map(|j| (j, self.at(j))).collect()
    }

    /// Dimension of `F_j / F_{j+1}`.
    pub fn graded_dim(&self, j: i32) -> usize {
        self.weights.iter().filter(|&&w| w == j).count()
    }

    /// Coordinates in the adapted basis.
    pub fn to_adapted(&self, v: &[Rat]) -> Vec<Rat> {
        self.adapted_inv.mul_vec(v)
    }

    pub fn from_adapted(&self, v: &[Rat]) -> Vec<Rat> {
        self.adapted.mul_vec(v)
    }
}

/// A graded space realized inside adapted coordinates: component `i` is a
/// subspace supported on the coordinates of weight `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSpace {
    pub components: BTreeMap<i32, Subspace>,
}

impl GradedSpace {
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.components.iter().filter(|(_, s)| !s.is_zero()).map(|(&i, s)| (i, s.dim())).collect()
    }

    pub fn dim(&self, i: i32) -> usize {
        self.components.get(&i).map_or(0, Subspace::dim)
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(Subspace::dim).sum()
    }

    /// The direct sum of all components as one subspace.
    pub fn total(&self, ambient: usize) -> Subspace {
        self.components.values().fold(Subspace::zero(ambient), |acc, s| acc.sum(s))
    }

    pub fn labels(&self) -> BTreeMap<i32, Vec<String>> {
        self.components
            .iter()
            .map(|(&i, s)| (i, (0..s.dim()).map(|a| format!("d{i}_{a}")).collect()))
            .collect()
    }
}

/// `gr` of a subspace: per weight `i`, the leading parts of
/// `(S ∩ F_i + F_{i+1}) / F_{i+1}` in adapted coordinates.
pub fn gr_subspace(flag: &FiltrationSpec, sub: &Subspace) -> GradedSpace {
    let n = flag.ambient_dim;
    let s = Subspace::span(n, sub.basis_vecs().iter().map(|v| flag.to_adapted(v)));
    let mut components = BTreeMap::new();
    for i in flag.min_weight()..=flag.max_weight() {
        let fi = Subspace::span(n, (0..n).filter(|&a| flag.weights[a] >= i).map(|a| unit_vec(n, a)));
        let cut = s.intersection(&fi);
        let lead = cut.basis_vecs().into_iter().map(|mut v| {
            for (x, w) in v.iter_mut().zip(&flag.weights) {
                if *w != i {
                    *x = Rat::zero();
                }
            }
            v
        });
        let comp = Subspace::span(n, lead);
        if !comp.is_zero() {
            components.insert(i, comp);
        }
    }
    GradedSpace { components }
}

/// The filtration `(gl W)_i = {A : A F_j ⊆ F_{j+i}}` on row-major
/// flattened `n × n` matrices. Its adapted basis is `J E_ab J^{-1}` with
/// weight `w_a - w_b`, so adapted coordinates of `A` are the entries of
/// `J^{-1} A J`: this realizes `gr gl(W) = gl(gr W)`.
pub fn gl_filtration(flag: &FiltrationSpec) -> FiltrationSpec {
    let n = flag.ambient_dim;
    let mut vecs = Vec::with_capacity(n * n);
    let mut weights = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let ja = flag.adapted.col(a);
            let jb = flag.adapted_inv.row(b);
            let mut m = Mat::zeros(n, n);
            for r in 0..n {
                for c in 0..n {
                    m[(r, c)] = &ja[r] * &jb[c];
                }
            }
            vecs.push(m.as_slice().to_vec());
            weights.push(flag.weights[a] - flag.weights[b]);
        }
    }
    FiltrationSpec::from_weighted_basis(vecs, weights).expect("elementary matrices form a basis")
}

/// `gr` of a subspace of `gl(W)` (row-major flattened), in `gl(gr W)`
/// coordinates.
pub fn gr_endomorphisms(flag: &FiltrationSpec, sub: &Subspace) -> GradedSpace {
    gr_subspace(&gl_filtration(flag), sub)
}

/// A linear map between filtered spaces preserving the filtrations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredMap {
    pub domain: FiltrationSpec,
    pub codomain: FiltrationSpec,
    pub matrix: Mat,
}

impl FilteredMap {
    pub fn new(domain: FiltrationSpec, codomain: FiltrationSpec, matrix: Mat) -> Result<Self, GradedError> {
        if matrix.cols() != domain.ambient_dim || matrix.rows() != codomain.ambient_dim {
            return Err(GradedError::DimensionMismatch { expected: domain.ambient_dim, got: matrix.cols() });
        }
        let f = FilteredMap { domain, codomain, matrix };
        f.adapted_matrix()?;
        Ok(f)
    }

    /// The matrix in adapted coordinates, checked to be filtered.
    pub fn adapted_matrix(&self) -> Result<Mat, GradedError> {
        let m = &(&self.codomain.adapted_inv * &self.matrix) * &self.domain.adapted;
        for a in 0..m.rows() {
            for b in 0..m.cols() {
                if self.codomain.weights[a] < self.domain.weights[b] && !m[(a, b)].is_zero() {
                    return Err(GradedError::NotFiltered);
                }
            }
        }
        Ok(m)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FilteredMap) -> Result<FilteredMap, GradedError> {
        FilteredMap::new(other.domain.clone(), self.codomain.clone(), &self.matrix * &other.matrix)
    }
}

/// The induced degree-preserving map `gr f`, in adapted coordinates: the
/// entries of the adapted matrix between equal weights.
pub fn gr_map(f: &FilteredMap) -> Result<Mat, GradedError> {
    let mut m = f.adapted_matrix()?;
    for a in 0..m.rows() {
        for b in 0..m.cols() {
            if f.codomain.weights[a] != f.domain.weights[b] {
                m[(a, b)] = Rat::zero();
            }
        }
    }
    Ok(m)
}
