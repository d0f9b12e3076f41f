use num_traits::Zero;

use super::FlagError;
use crate::exactla::{one, Mat};
use crate::graded::FiltrationSpec;

/// A degree `-1` endomorphism of a graded space, in a basis of weight
/// vectors, with an optional symplectic form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoDatum {
    /// Weight of each basis vector.
    pub weights: Vec<i32>,
    /// Columns are images of basis vectors.
    pub delta: Mat,
    /// `ω(u, v) = uᵀ ω v`.
    pub omega: Option<Mat>,
}

impl EndoDatum {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// The coordinate flag `Λ_j = span{e_a : w_a >= j}`.
    pub fn flag(&self) -> FiltrationSpec {
        FiltrationSpec::from_weights(&self.weights)
    }

    /// Whether `delta` lowers weights by exactly one.
    pub fn is_degree_minus_one(&self) -> bool {
        let n = self.dim();
        (0..n).all(|a| (0..n).all(|b| self.delta[(a, b)].is_zero() || self.weights[a] == self.weights[b] - 1))
    }

    /// Dimensions of the weight spaces, keyed by weight.
    pub fn graded_dims(&self) -> std::collections::BTreeMap<i32, usize> {
        let mut out = std::collections::BTreeMap::new();
        for &w in &self.weights {
            *out.entry(w).or_insert(0) += 1;
        }
        out
    }

    /// `-δ` with the same form.
    pub fn negated(&self) -> Self {
        EndoDatum { weights: self.weights.clone(), delta: self.delta.scale(&-one()), omega: self.omega.clone() }
    }
}

/// `δ_{rp}` on `E_r ⊕ ... ⊕ E_p` (one line per weight): `E_i ↦ E_{i-1}`
/// and `E_r ↦ 0`.
pub fn make_delta_rp(r: i32, p: i32) -> Result<EndoDatum, FlagError> {
    if r > p || p >= 0 {
        return Err(FlagError::BadRange { r, p });
    }
    let n = (p - r + 1) as usize;
    let mut delta = Mat::zeros(n, n);
    for a in 1..n {
        delta[(a - 1, a)] = one();
    }
    Ok(EndoDatum { weights: (r..=p).collect(), delta, omega: None })
}

/// `±τ_m` on `L_m = ⊕_{i=-m-1}^{m-2} E_i` with `τ E_i = E_{i-1}`,
/// `τ E_{-m-1} = 0` and `ω(e_i, e_{-3-i}) = (-1)^i`, all other pairings zero.
pub fn make_tau_m(m: usize, sign: i32) -> Result<EndoDatum, FlagError> {
    if m == 0 {
        return Err(FlagError::BadIndex);
    }
    let lo = -(m as i32) - 1;
    let hi = m as i32 - 2;
    let n = 2 * m;
    let idx = |i: i32| (i - lo) as usize;
    let mut delta = Mat::zeros(n, n);
    let mut omega = Mat::zeros(n, n);
    for i in lo..=hi {
        if i > lo {
            delta[(idx(i - 1), idx(i))] = if sign < 0 { -one() } else { one() };
        }
        let j = -3 - i;
        if (lo..=hi).contains(&j) {
            omega[(idx(i), idx(j))] = if i.rem_euclid(2) == 0 { one() } else { -one() };
        }
    }
    Ok(EndoDatum { weights: (lo..=hi).collect(), delta, omega: Some(omega) })
}

/// Block sum of the parts on the direct sum of their graded spaces.
pub fn direct_sum(parts: &[EndoDatum]) -> Result<EndoDatum, FlagError> {
    if parts.is_empty() {
        return Err(FlagError::Empty);
    }
    let with_form = parts.iter().filter(|p| p.omega.is_some()).count();
    if with_form != 0 && with_form != parts.len() {
        return Err(FlagError::MixedStructure);
    }
    let delta = Mat::block_diag(&parts.iter().map(|p| p.delta.clone()).collect::<Vec<_>>());
    let omega = (with_form > 0)
        .then(|| Mat::block_diag(&parts.iter().map(|p| p.omega.clone().unwrap()).collect::<Vec<_>>()));
    let weights = parts.iter().flat_map(|p| p.weights.iter().copied()).collect();
    Ok(EndoDatum { weights, delta, omega })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn delta_rp_shapes() {
        let d = make_delta_rp(-1, -1).unwrap();
        assert!(d.delta.is_zero() && d.dim() == 1);
        let d = make_delta_rp(-3, -1).unwrap();
        assert_eq!(d.delta.rank(), 2);
        assert!(d.is_degree_minus_one());
        for n in 1..=8 {
            let d = make_delta_rp(-n, -1).unwrap();
            assert_eq!(d.delta.rank(), n as usize - 1);
        }
        assert!(make_delta_rp(-1, -2).is_err());
        assert!(make_delta_rp(-1, 0).is_err());
    }

    #[test]
    fn tau_is_symplectic() {
        for m in 1..=5 {
            let t = make_tau_m(m, 1).unwrap();
            let w = t.omega.clone().unwrap();
            assert_eq!(w.rank(), 2 * m);
            assert_eq!(w.transpose(), w.scale(&-one()));
            assert!(t.is_degree_minus_one());
            // ω(τv, w) is symmetric, i.e. τ ∈ sp(ω).
            let s = &t.delta.transpose() * &w;
            assert_eq!(s.transpose(), s);
        }
        // ω(τ e_{-1}, e_{-1}) = ω(e_{-2}, e_{-1}) = 1.
        let t = make_tau_m(2, 1).unwrap();
        let w = t.omega.unwrap();
        assert_eq!(w[(1, 2)], one());
    }

    #[test]
    fn direct_sums() {
        let s = direct_sum(&[make_delta_rp(-3, -1).unwrap(), make_delta_rp(-2, -1).unwrap()]).unwrap();
        assert_eq!(s.graded_dims(), BTreeMap::from([(-3, 1), (-2, 2), (-1, 2)]));
        let t = direct_sum(&[make_tau_m(2, 1).unwrap(), make_tau_m(2, 1).unwrap()]).unwrap();
        assert_eq!(t.dim(), 8);
        assert_eq!(t.omega.unwrap().rank(), 8);
        let one_part = make_tau_m(1, -1).unwrap();
        assert_eq!(direct_sum(std::slice::from_ref(&one_part)).unwrap(), one_part);
        assert_eq!(
            direct_sum(&[make_tau_m(1, 1).unwrap(), make_delta_rp(-2, -1).unwrap()]),
            Err(FlagError::MixedStructure)
        );
    }
}
