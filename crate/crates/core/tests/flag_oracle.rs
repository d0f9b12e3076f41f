//! Flag prolongation of a mixed-order symbol checked against a direct solve
//! over the elementary matrices of each degree.

use std::collections::BTreeMap;

use tanaka::exactla::{kernel, zero_vec, Mat, Rat, Subspace};
use tanaka::flags::{direct_sum, flag_prolong, make_delta_rp, AmbientKind, EndoDatum, FlagSymbol};

/// `u_k` spanned inside `{E_ab : w_a - w_b = k}` by solving
/// `[X, δ] ∈ u_{k-1}` degree by degree, until the degrees run out.
fn oracle(d: &EndoDatum) -> BTreeMap<i32, Subspace> {
    let n = d.dim();
    let w = &d.weights;
    let flat = |m: &Mat| m.as_slice().to_vec();
    let mut out = BTreeMap::from([(-1, Subspace::span(n * n, [flat(&d.delta)]))]);
    let top = w.iter().max().unwrap() - w.iter().min().unwrap();
    for k in 0..=top {
        let basis: Vec<Mat> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| w[a] - w[b] == k)
            .map(|(a, b)| {
                let mut e = Mat::zeros(n, n);
                e[(a, b)] = Rat::from_integer(1.into());
                e
            })
            .collect();
        let prev = &out[&(k - 1)];
        let ann = prev.annihilator();
        // Columns: ann · vec([E, δ]) for each basis element E.
        let cols: Vec<Vec<Rat>> = basis
            .iter()
            .map(|e| {
                let c = flat(&(e * &d.delta).sub(&(&d.delta * e)));
                (0..ann.dim()).map(|r| ann.basis().row(r).iter().zip(&c).map(|(x, y)| x * y).sum()).collect()
            })
            .collect();
        let sol = if ann.dim() == 0 { Subspace::full(basis.len()) } else { kernel(&Mat::from_cols(ann.dim(), cols)) };
        let vecs = sol.basis_vecs().into_iter().map(|x| {
            let mut v = zero_vec(n * n);
            for (c, e) in x.iter().zip(&basis) {
                for (t, y) in v.iter_mut().zip(e.as_slice()) {
                    *t += c * y;
                }
            }
            v
        });
        out.insert(k, Subspace::span(n * n, vecs));
    }
    out
}

#[test]
fn mixed_order_symbol_matches_oracle() {
    let d = direct_sum(&[make_delta_rp(-3, -1).unwrap(), make_delta_rp(-2, -1).unwrap()]).unwrap();
    assert_eq!(d.graded_dims(), BTreeMap::from([(-3, 1), (-2, 2), (-1, 2)]));
    let sym = FlagSymbol::from_datum(&d, AmbientKind::Gl, false).unwrap();
    let u = flag_prolong(&sym, 20);
    let expected = oracle(&d);
    for (k, s) in &expected {
        let got = u.components.get(k).cloned().unwrap_or_else(|| Subspace::zero(25));
        assert_eq!(&got, s, "degree {k}");
    }
    assert!(u.components.keys().all(|k| expected.contains_key(k)));
    assert!(u.is_closed());
    let dims: Vec<usize> = u.dims().values().copied().collect();
    eprintln!("mixed order (2,3) flag prolongation dims from degree -1: {dims:?}");
}

#[test]
fn single_blocks_match_oracle() {
    for n in 2..=6 {
        let d = make_delta_rp(-n, -1).unwrap();
        let sym = FlagSymbol::from_datum(&d, AmbientKind::Gl, false).unwrap();
        let u = flag_prolong(&sym, 20);
        for (k, s) in oracle(&d) {
            assert_eq!(u.components.get(&k).map_or(0, Subspace::dim), s.dim(), "n = {n}, degree {k}");
        }
    }
}
