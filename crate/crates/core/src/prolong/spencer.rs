use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::tanaka::{leibniz_block, Tower};
use super::{ProlongError, ProlongedAlgebra};
use crate::exactla::{complement_in, kernel, Mat, Rat, Subspace};

/// A named direct summand of a domain or target space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub label: String,
    pub dim: usize,
}

/// The graded Spencer operator `gr∂_k`.
///
/// Domain: `⊕_{i<0} Hom(g^i, g^{i+k+1}) ⊕ ⊕_{i=0}^{k-1} Hom(g^i, g^k)`, the
/// negative part laid out exactly like the unknowns of `g^{k+1}`.
/// Target: `⊕_{i=-μ}^{-2} Hom(g^{-1}⊗g^i, g^{i+k}) ⊕ Hom(Λ²g^{-1}, g^{k-1})
/// ⊕ ⊕_{i=0}^{k-1} Hom(g^{-1}⊗g^i, g^{k-1})`.
///
/// The operator is block diagonal: the negative summands map to the first
/// two target groups through `negative`, and each `Hom(g^i, g^k)` maps to
/// `Hom(g^{-1}⊗g^i, g^{k-1})` through `1 ⊗ evaluation`, where `evaluation`
/// sends `X ∈ g^k` to `(v ↦ [v, X])` on `g^{-1}`. Large cases are kept in
/// this factored form; [`SpencerMap::matrix`] materializes the dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpencerMap {
    pub degree: usize,
    pub domain: Vec<Summand>,
    pub target: Vec<Summand>,
    pub negative: Mat,
    pub evaluation: Mat,
    /// `dim g^i` for `i = 0..k`.
    pub multiplicities: Vec<usize>,
}

impl SpencerMap {
    /// Length of the negative part of the domain.
    pub fn negative_len(&self) -> usize {
        self.negative.cols()
    }

    fn nonneg_cols(&self) -> usize {
        self.multiplicities.iter().sum::<usize>() * self.evaluation.cols()
    }

    fn nonneg_rows(&self) -> usize {
        self.multiplicities.iter().sum::<usize>() * self.evaluation.rows()
    }

    pub fn domain_dim(&self) -> usize {
        self.negative.cols() + self.nonneg_cols()
    }

    pub fn target_dim(&self) -> usize {
        self.negative.rows() + self.nonneg_rows()
    }

    pub fn rank(&self) -> usize {
        let copies: usize = self.multiplicities.iter().sum();
        self.negative.rank() + copies * self.evaluation.rank()
    }

    /// Dense matrix of the whole operator.
    pub fn matrix(&self) -> Mat {
        let (r0, c0) = (self.negative.rows(), self.negative.cols());
        let (er, ec) = (self.evaluation.rows(), self.evaluation.cols());
        let mut out = Mat::zeros(self.target_dim(), self.domain_dim());
        for i in 0..r0 {
            for j in 0..c0 {
                out[(i, j)] = self.negative[(i, j)].clone();
            }
        }
        let copies: usize = self.multiplicities.iter().sum();
        for c in 0..copies {
            for i in 0..er {
                for j in 0..ec {
                    out[(r0 + c * er + i, c0 + c * ec + j)] = self.evaluation[(i, j)].clone();
                }
            }
        }
        out
    }

    /// Full kernel, assembled blockwise.
    pub fn kernel(&self) -> Subspace {
        let n = self.domain_dim();
        let c0 = self.negative.cols();
        let ec = self.evaluation.cols();
        let mut vecs: Vec<Vec<Rat>> = kernel(&self.negative)
            .basis_vecs()
            .into_iter()
            .map(|mut v| {
                v.resize(n, crate::exactla::zero());
                v
            })
            .collect();
        let kb = kernel(&self.evaluation);
        let copies: usize = self.multiplicities.iter().sum();
        for c in 0..copies {
            for v in kb.basis_vecs() {
                let mut w = crate::exactla::zero_vec(n);
                w[c0 + c * ec..c0 + (c + 1) * ec].clone_from_slice(&v);
                vecs.push(w);
            }
        }
        Subspace::span(n, vecs)
    }

    /// Whether every kernel vector vanishes on the summands `Hom(g^i, g^k)`,
    /// `i >= 0`.
    pub fn kernel_in_negative_part(&self) -> bool {
        self.nonneg_cols() == 0 || kernel(&self.evaluation).is_zero()
    }

    /// The kernel restricted to the negative summands.
    pub fn kernel_negative(&self) -> Subspace {
        kernel(&self.negative)
    }

    /// Image in the target, assembled blockwise.
    pub fn image(&self) -> Subspace {
        let n = self.target_dim();
        let r0 = self.negative.rows();
        let er = self.evaluation.rows();
        let mut vecs: Vec<Vec<Rat>> = Subspace::from_mat(&self.negative.transpose())
            .basis_vecs()
            .into_iter()
            .map(|mut v| {
                v.resize(n, crate::exactla::zero());
                v
            })
            .collect();
        let ib = Subspace::from_mat(&self.evaluation.transpose());
        let copies: usize = self.multiplicities.iter().sum();
        for c in 0..copies {
            for v in ib.basis_vecs() {
                let mut w = crate::exactla::zero_vec(n);
                w[r0 + c * er..r0 + (c + 1) * er].clone_from_slice(&v);
                vecs.push(w);
            }
        }
        Subspace::span(n, vecs)
    }
}

/// Builds `gr∂_k` from the brackets of the prolongation computed so far.
/// Requires `g^0, ..., g^k`.
pub fn spencer_gr(alg: &ProlongedAlgebra, k: usize) -> Result<SpencerMap, ProlongError> {
    if k > alg.top_degree() {
        return Err(ProlongError::MissingComponent(k));
    }
    let comps = &alg.components()[..=k];
    let m = alg.negative();
    let tower = Tower { m, comps };
    let neg = tower.layout(k + 1);
    let mu = m.depth() as i32;
    let ki = k as i32;

    let mut domain: Vec<Summand> = (1..=mu)
        .map(|i| Summand {
            label: format!("Hom(g^{}, g^{})", -i, -i + ki + 1),
            dim: m.dim(-i) * tower.cdim(-i + ki + 1),
        })
        .collect();
    let multiplicities: Vec<usize> = (0..k).map(|i| tower.cdim(i as i32)).collect();
    for (i, mult) in multiplicities.iter().enumerate() {
        domain.push(Summand { label: format!("Hom(g^{i}, g^{k})"), dim: mult * tower.cdim(ki) });
    }

    let mut cache = HashMap::new();
    let mut target = Vec::new();
    let mut negative = Mat::zeros(0, neg.len);
    for i in (2..=mu).rev() {
        let before = negative.rows();
        for p in m.range(-1) {
            for q in m.range(-i) {
                let blk = leibniz_block(&tower, &neg, p, q, &mut cache);
                negative = negative.vstack(&blk.scale(&-crate::exactla::one()));
            }
        }
        target.push(Summand {
            label: format!("Hom(g^-1 ⊗ g^{}, g^{})", -i, -i + ki),
            dim: negative.rows() - before,
        });
    }
    let before = negative.rows();
    for p in m.range(-1) {
        for q in m.range(-1).filter(|&q| q > p) {
            let blk = leibniz_block(&tower, &neg, p, q, &mut cache);
            negative = negative.vstack(&blk.scale(&-crate::exactla::one()));
        }
    }
    target.push(Summand { label: format!("Hom(Λ²g^-1, g^{})", ki - 1), dim: negative.rows() - before });

    // [v1, f(v2)] = -f(v2)(v1) for v2 in g^i, i >= 0.
    let mut evaluation = Mat::zeros(0, tower.cdim(ki));
    if k > 0 {
        for p in m.range(-1) {
            evaluation = evaluation.vstack(&tower.apply_matrix(ki, p).scale(&-crate::exactla::one()));
        }
    }
    for (i, mult) in multiplicities.iter().enumerate() {
        target.push(Summand {
            label: format!("Hom(g^-1 ⊗ g^{i}, g^{})", ki - 1),
            dim: mult * evaluation.rows(),
        });
    }
    Ok(SpencerMap { degree: k, domain, target, negative, evaluation, multiplicities })
}

/// The pivot-rule complement of `im gr∂_k` in its target.
pub fn normalization_complement(s: &SpencerMap) -> Subspace {
    complement_in(&s.image(), &Subspace::full(s.target_dim())).expect("image lies in the target")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prolong::{derivations0, tanaka_prolong};
    use crate::symbols::{build_commutative, build_free_nilpotent, build_heisenberg};

    fn coherent(alg: &ProlongedAlgebra) {
        for k in 0..=alg.top_degree() {
            let s = spencer_gr(alg, k).unwrap();
            assert!(s.kernel_in_negative_part(), "k = {k}");
            let expected = alg
                .component(k + 1)
                .map(|c| c.space.clone())
                .unwrap_or_else(|| Subspace::zero(s.negative_len()));
            if alg.component(k + 1).is_some() || matches!(alg.status(), crate::prolong::Status::Terminated(_)) {
                assert_eq!(s.kernel_negative(), expected, "k = {k}");
            }
            let n = normalization_complement(&s);
            assert_eq!(n.dim() + s.rank(), s.target_dim());
            if s.domain_dim() * s.target_dim() < 20_000 {
                let dense = s.matrix();
                assert_eq!(dense.rank(), s.rank());
                assert_eq!(kernel(&dense), s.kernel());
                assert_eq!(Subspace::from_mat(&dense.transpose()), s.image());
            }
        }
    }

    #[test]
    fn gl2_first_kernel_is_six() {
        let m = build_commutative(2);
        let alg = tanaka_prolong(&m, &derivations0(&m), 3).unwrap();
        let s = spencer_gr(&alg, 0).unwrap();
        assert_eq!(s.kernel().dim(), 6);
        coherent(&alg);
    }

    #[test]
    fn kernels_match_prolongation() {
        for (m, cap) in [(build_free_nilpotent(2, 3), 6), (build_heisenberg(5).unwrap(), 3), (build_free_nilpotent(3, 2), 4)] {
            let alg = tanaka_prolong(&m, &derivations0(&m), cap).unwrap();
            coherent(&alg);
        }
    }

    #[test]
    fn zero_map_complement_is_everything() {
        let mk = |negative: Mat| SpencerMap {
            degree: 0,
            domain: vec![],
            target: vec![],
            negative,
            evaluation: Mat::zeros(0, 0),
            multiplicities: vec![],
        };
        assert_eq!(normalization_complement(&mk(Mat::zeros(3, 2))), Subspace::full(3));
        assert!(normalization_complement(&mk(Mat::identity(3))).is_zero());
    }
}
