use num_traits::Zero;

use super::{NilpotentSymbol, SymbolError};
use crate::exactla::{one, zero_vec, Mat, Rat};

/// The commutative algebra `Q^n` concentrated in degree `-1`.
pub fn build_commutative(n: usize) -> NilpotentSymbol {
    assert!(n >= 1, "commutative symbol needs n >= 1");
    let labels = (1..=n).map(|i| format!("e{i}")).collect();
    NilpotentSymbol::from_entries(vec![n], Some(labels), std::iter::empty())
        .expect("commutative symbol is well formed")
}

/// `heis(2k+1)` with basis `x1..xk, y1..yk, z` and `[x_a, y_a] = z`.
pub fn build_heisenberg(total_dim: usize) -> Result<NilpotentSymbol, SymbolError> {
    if total_dim < 3 || total_dim.is_multiple_of(2) {
        return Err(SymbolError::EvenDim(total_dim));
    }
    let k = (total_dim - 1) / 2;
    let mut omega = Mat::zeros(2 * k, 2 * k);
    for a in 0..k {
        omega[(a, k + a)] = one();
        omega[(k + a, a)] = -one();
    }
    let mut labels: Vec<String> = (1..=k).map(|a| format!("x{a}")).collect();
    labels.extend((1..=k).map(|a| format!("y{a}")));
    labels.push("z".into());
    heisenberg_from(&omega, labels)
}

/// Heisenberg algebra `g^{-1} ⊕ Q z` with `[e_i, e_j] = ω_ij z` for a
/// nondegenerate antisymmetric `ω`.
pub fn build_heisenberg_with_form(omega: &Mat) -> Result<NilpotentSymbol, SymbolError> {
    let n = omega.rows();
    let mut labels: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    labels.push("z".into());
    heisenberg_from(omega, labels)
}

fn heisenberg_from(omega: &Mat, labels: Vec<String>) -> Result<NilpotentSymbol, SymbolError> {
    let n = omega.rows();
    if n == 0 || omega.cols() != n || omega.transpose() != omega.scale(&-one()) || omega.rank() != n {
        return Err(SymbolError::BadForm);
    }
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c: &Rat = &omega[(i, j)];
            if !c.is_zero() {
                let mut v = zero_vec(n + 1);
                v[n] = c.clone();
                entries.push(((i, j), v));
            }
        }
    }
    NilpotentSymbol::from_entries(vec![n, 1], Some(labels), entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{dot, unit_vec};

    #[test]
    fn heisenberg_bracket_is_the_form() {
        for d in [3, 5, 7, 9] {
            let h = build_heisenberg(d).unwrap();
            assert!(h.validate().all());
            let omega = h.symplectic_form().unwrap();
            assert_eq!(omega.rank(), d - 1);
            let z = h.offset(-2);
            for i in 0..d - 1 {
                for j in 0..d - 1 {
                    let b = h.bracket_basis(i, j);
                    let expected = omega.mul_vec(&unit_vec(d - 1, j));
                    assert_eq!(b[z], dot(&unit_vec(d - 1, i), &expected));
                    assert!(b[..z].iter().all(Zero::is_zero));
                }
            }
        }
    }

    #[test]
    fn heisenberg_center() {
        let h = build_heisenberg(3).unwrap();
        assert_eq!(h.dims(), &[2, 1]);
        for p in 0..3 {
            assert!(crate::exactla::is_zero_vec(h.bracket_basis(p, 2)));
        }
    }

    #[test]
    fn even_dimension_is_rejected() {
        assert_eq!(build_heisenberg(4), Err(SymbolError::EvenDim(4)));
        assert_eq!(build_heisenberg(1), Err(SymbolError::EvenDim(1)));
    }

    #[test]
    fn commutative_is_valid() {
        for n in 1..=8 {
            let c = build_commutative(n);
            assert_eq!(c.dims(), &[n]);
            assert!(c.validate().all());
        }
    }
}
