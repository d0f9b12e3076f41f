use std::collections::BTreeMap;

use num_traits::Zero;

use super::{FiltrationSpec, GradedError};
use crate::exactla::{zero_vec, Mat, Rat, Subspace};
use crate::symbols::NilpotentSymbol;

/// Weighted basis of each `g^{-i}`: representatives of iterated brackets of
/// adapted vectors of `g^{-1}`, pruned to a basis, together with the
/// resulting filtrations.
fn induced_levels(
    m: &NilpotentSymbol,
    flag: &FiltrationSpec,
) -> Result<Vec<FiltrationSpec>, GradedError> {
    let n1 = m.dim(-1);
    if flag.ambient_dim() != n1 {
        return Err(GradedError::DimensionMismatch { expected: n1, got: flag.ambient_dim() });
    }
    let first: Vec<(i32, Vec<Rat>)> =
        (0..n1).map(|a| (flag.weights()[a], flag.adapted().col(a))).collect();
    let mut levels = vec![flag.clone()];
    let mut prev = first.clone();
    for i in 2..=m.depth() as i32 {
        let mut by_weight: BTreeMap<i32, Vec<Vec<Rat>>> = BTreeMap::new();
        for (wa, a) in &first {
            for (wx, x) in &prev {
                let b = m.bracket(&m.embed(a, -1), &m.embed(x, -(i - 1)));
                let v = m.project(&b, -i);
                if v.iter().any(|c| !c.is_zero()) {
                    by_weight.entry(wa + wx).or_default().push(v);
                }
            }
        }
        let dim = m.dim(-i);
        let mut span = Subspace::zero(dim);
        let mut kept = Vec::new();
        for (w, vs) in by_weight.into_iter().rev() {
            for v in vs {
                if !span.contains(&v) {
                    span = span.sum(&Subspace::span(dim, [v.clone()]));
                    kept.push((w, v));
                }
            }
        }
        if kept.len() != dim {
            return Err(GradedError::NotABasis);
        }
        let (weights, vecs): (Vec<i32>, Vec<Vec<Rat>>) = kept.iter().cloned().unzip();
        levels.push(FiltrationSpec::from_weighted_basis(vecs, weights)?);
        prev = kept;
    }
    Ok(levels)
}

/// The filtrations `g^{-i}_j` spanned by iterated brackets of elements of
/// `g^{-1}_{j_k}` with `Σ j_k >= j`. Entry `i - 1` filters `g^{-i}`.
pub fn induced_symbol_filtration(
    m: &NilpotentSymbol,
    flag: &FiltrationSpec,
) -> Result<Vec<FiltrationSpec>, GradedError> {
    induced_levels(m, flag)
}

/// `gr m` with its bigrading and the candidate isomorphism `m → gr m`.
#[derive(Debug, Clone)]
pub struct BigradedGr {
    /// Graded by the first degree; basis ordered per degree as the adapted
    /// representatives.
    pub symbol: NilpotentSymbol,
    /// `(i, j)` for each basis vector of `symbol`.
    pub bidegrees: Vec<(i32, i32)>,
    pub filtrations: Vec<FiltrationSpec>,
    /// Columns: images of the basis of `m`.
    pub witness: Mat,
    pub witness_is_homomorphism: bool,
}

impl BigradedGr {
    /// Dimension of each nonzero bidegree.
    pub fn bidegree_dims(&self) -> BTreeMap<(i32, i32), usize> {
        let mut out = BTreeMap::new();
        for b in &self.bidegrees {
            *out.entry(*b).or_insert(0) += 1;
        }
        out
    }
}

/// Builds `gr m` with `[v1, v2]_gr = [ṽ1, ṽ2] mod g^{i1+i2}_{j1+j2+1}` and
/// the extension of `J^{-1}` on `g^{-1}` by iterated brackets, then checks
/// the homomorphism property on all basis pairs.
pub fn bigraded_gr(m: &NilpotentSymbol, flag: &FiltrationSpec) -> Result<BigradedGr, GradedError> {
    let levels = induced_levels(m, flag)?;
    let n = m.total_dim();
    let mut bidegrees = Vec::with_capacity(n);
    for (k, f) in levels.iter().enumerate() {
        bidegrees.extend(f.weights().iter().map(|&w| (-(k as i32) - 1, w)));
    }
    // Witness: adapted coordinates per degree. The representatives of
    // g^{-i} are brackets of adapted vectors, so extending J^{-1} along
    // iterated brackets sends each representative to its own class.
    let blocks: Vec<Mat> = levels.iter().map(|f| f.adapted_inverse().clone()).collect();
    let witness = Mat::block_diag(&blocks);
    let inverse = Mat::block_diag(&levels.iter().map(|f| f.adapted().clone()).collect::<Vec<_>>());

    let mut entries = Vec::new();
    for p in 0..n {
        for q in 0..n {
            let (ip, jp) = bidegrees[p];
            let (iq, jq) = bidegrees[q];
            let target = ip + iq;
            if (-target) as usize > m.depth() {
                continue;
            }
            let b = m.bracket(&inverse.col(p), &inverse.col(q));
            let coords = witness.mul_vec(&b);
            let mut v = zero_vec(n);
            let mut any = false;
            for r in m.range(target) {
                if bidegrees[r].1 == jp + jq && !coords[r].is_zero() {
                    v[r] = coords[r].clone();
                    any = true;
                }
            }
            if any {
                entries.push(((p, q), v));
            }
        }
    }
    let labels: Vec<String> = bidegrees
        .iter()
        .enumerate()
        .map(|(a, (i, j))| format!("{}@({i},{j})", m.labels()[inverse_label(m, &inverse, a)]))
        .collect();
    let symbol = NilpotentSymbol::from_entries(m.dims().to_vec(), Some(labels), entries)
        .expect("graded pieces have the dimensions of m");

    let mut hom = true;
    for p in 0..n {
        for q in 0..n {
            let lhs = witness.mul_vec(m.bracket_basis(p, q));
            let rhs = symbol.bracket(&witness.col(p), &witness.col(q));
            hom &= lhs == rhs;
        }
    }
    Ok(BigradedGr { symbol, bidegrees, filtrations: levels, witness, witness_is_homomorphism: hom })
}

/// Index of the first basis vector of `m` supporting representative `a`,
/// used only to make labels readable.
fn inverse_label(m: &NilpotentSymbol, inverse: &Mat, a: usize) -> usize {
    (0..m.total_dim()).find(|&r| !inverse[(r, a)].is_zero()).unwrap_or(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{build_commutative, build_free_nilpotent, build_heisenberg};

    #[test]
    fn heisenberg_three_with_two_step_flag() {
        let m = build_heisenberg(3).unwrap();
        // X = x1 has weight -1, Y = y1 weight -2.
        let flag = FiltrationSpec::from_weights(&[-1, -2]);
        let levels = induced_symbol_filtration(&m, &flag).unwrap();
        let g2 = &levels[1];
        assert_eq!(g2.at(-3), Subspace::full(1));
        assert!(g2.at(-2).is_zero());
        let gr = bigraded_gr(&m, &flag).unwrap();
        assert_eq!(gr.bidegree_dims(), BTreeMap::from([((-2, -3), 1), ((-1, -2), 1), ((-1, -1), 1)]));
        assert!(gr.witness_is_homomorphism);
        assert!(gr.symbol.validate().all());
    }

    #[test]
    fn commutative_has_nothing_beyond_degree_one() {
        let m = build_commutative(3);
        let flag = FiltrationSpec::from_weights(&[-1, -2, -2]);
        let levels = induced_symbol_filtration(&m, &flag).unwrap();
        assert_eq!(levels.len(), 1);
        let gr = bigraded_gr(&m, &flag).unwrap();
        assert!(gr.symbol.is_commutative() && gr.witness_is_homomorphism);
    }

    #[test]
    fn free_two_three_complete_flag() {
        let m = build_free_nilpotent(2, 3);
        let flag = FiltrationSpec::from_weights(&[-1, -2]);
        let levels = induced_symbol_filtration(&m, &flag).unwrap();
        assert_eq!(levels[1].weights(), &[-3]);
        let mut w3 = levels[2].weights().to_vec();
        w3.sort();
        assert_eq!(w3, vec![-5, -4]);
        let gr = bigraded_gr(&m, &flag).unwrap();
        assert!(gr.witness_is_homomorphism && gr.symbol.validate().all());
    }

    #[test]
    fn heisenberg_five_symplectic_flag() {
        // x1, x2 weight -1 (a Lagrangian), y1, y2 weight -2.
        let m = build_heisenberg(5).unwrap();
        let flag = FiltrationSpec::from_weights(&[-1, -1, -2, -2]);
        let gr = bigraded_gr(&m, &flag).unwrap();
        assert!(gr.witness_is_homomorphism);
        assert_eq!(gr.symbol.symplectic_form().unwrap().rank(), 4);
    }
}
