use std::collections::BTreeMap;

use num_traits::Zero;

use super::NilpotentSymbol;
use crate::exactla::{one, zero_vec, Rat, Subspace};

/// Lyndon words of length `1..=max_len` over the alphabet `0..letters`,
/// grouped by length, each group in lexicographic order (Duval's algorithm).
pub fn lyndon_words(letters: usize, max_len: usize) -> Vec<Vec<Vec<usize>>> {
    let mut by_len = vec![Vec::new(); max_len];
    if letters == 0 || max_len == 0 {
        return by_len;
    }
    let mut w: Vec<usize> = vec![0];
    loop {
        by_len[w.len() - 1].push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == letters - 1 {
                w.pop();
            } else {
                break;
            }
        }
        let Some(last) = w.last_mut() else { break };
        *last += 1;
    }
    by_len
}

/// Noncommutative polynomial: word -> coefficient.
type Poly = BTreeMap<Vec<usize>, Rat>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (u, x) in a {
        for (v, y) in b {
            let mut w = u.clone();
            w.extend(v);
            let e = out.entry(w).or_insert_with(Rat::zero);
            *e += x * y;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_commutator(a: &Poly, b: &Poly) -> Poly {
    let mut out = poly_mul(a, b);
    for (w, c) in poly_mul(b, a) {
        let e = out.entry(w).or_insert_with(Rat::zero);
        *e -= c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Standard bracketing of a Lyndon word: split at the longest proper
/// Lyndon suffix.
fn standard_poly(word: &[usize], is_lyndon: &dyn Fn(&[usize]) -> bool) -> Poly {
    if word.len() == 1 {
        return Poly::from([(word.to_vec(), one())]);
    }
    let split = (1..word.len()).find(|&i| is_lyndon(&word[i..])).expect("Lyndon word has a Lyndon suffix");
    poly_commutator(&standard_poly(&word[..split], is_lyndon), &standard_poly(&word[split..], is_lyndon))
}

/// Free nilpotent Lie algebra on `l` generators of step `mu`, graded by
/// bracket length, with basis labelled by Lyndon words (letters `a`, `b`, ...).
pub fn build_free_nilpotent(l: usize, mu: usize) -> NilpotentSymbol {
    assert!(l >= 1 && mu >= 1, "free nilpotent algebra needs l >= 1 and mu >= 1");
    let words = lyndon_words(l, mu);
    let all: Vec<Vec<usize>> = words.iter().flatten().cloned().collect();
    let lookup: std::collections::BTreeSet<Vec<usize>> = all.iter().cloned().collect();
    let is_lyndon = |w: &[usize]| lookup.contains(w);
    let polys: Vec<Poly> = all.iter().map(|w| standard_poly(w, &is_lyndon)).collect();
    let dims: Vec<usize> = words.iter().map(Vec::len).collect();
    let n = all.len();
    let offsets: Vec<usize> = dims.iter().scan(0, |a, d| {
        let o = *a;
        *a += d;
        Some(o)
    }).collect();

    // Coordinates of degree-d polynomials in the monomial basis, one
    // coordinate system per degree.
    let monomials: Vec<Vec<Vec<usize>>> = (0..mu)
        .map(|d| {
            let mut set = std::collections::BTreeSet::new();
            for p in &polys[offsets[d]..offsets[d] + dims[d]] {
                set.extend(p.keys().cloned());
            }
            set.into_iter().collect()
        })
        .collect();
    let coords = |p: &Poly, d: usize| -> Option<Vec<Rat>> {
        let mut v = zero_vec(monomials[d].len());
        for (w, c) in p {
            let i = monomials[d].binary_search(w).ok()?;
            v[i] = c.clone();
        }
        Some(v)
    };
    let bases: Vec<Subspace> = (0..mu)
        .map(|d| {
            let rows = polys[offsets[d]..offsets[d] + dims[d]].iter().map(|p| coords(p, d).unwrap());
            let s = Subspace::span(monomials[d].len(), rows);
            assert_eq!(s.dim(), dims[d], "standard bracketings are independent");
            s
        })
        .collect();

    let mut entries = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            let d = all[p].len() + all[q].len();
            if d > mu {
                continue;
            }
            let c = poly_commutator(&polys[p], &polys[q]);
            if c.is_empty() {
                continue;
            }
            let v = coords(&c, d - 1).expect("bracket lies in the span of basis monomials");
            // Solve for the coefficients on the Lyndon basis of degree d.
            let basis: Vec<Vec<Rat>> = polys[offsets[d - 1]..offsets[d - 1] + dims[d - 1]]
                .iter()
                .map(|b| coords(b, d - 1).unwrap())
                .collect();
            let a = crate::exactla::Mat::from_cols(v.len(), basis);
            let (sol, _) = crate::exactla::solve_affine(&a, &v);
            let sol = sol.expect("bracket lies in the free Lie algebra");
            debug_assert!(bases[d - 1].contains(&v));
            let mut global = zero_vec(n);
            for (i, x) in sol.into_iter().enumerate() {
                global[offsets[d - 1] + i] = x;
            }
            entries.push(((p, q), global));
        }
    }
    let letters = |w: &Vec<usize>| w.iter().map(|&c| (b'a' + c as u8) as char).collect::<String>();
    let labels = all.iter().map(letters).collect();
    NilpotentSymbol::from_entries(dims, Some(labels), entries).expect("free nilpotent symbol is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mobius(n: usize) -> i64 {
        let (mut n, mut k, mut res) = (n, 2, 1);
        while k * k <= n {
            if n % k == 0 {
                n /= k;
                if n % k == 0 {
                    return 0;
                }
                res = -res;
            }
            k += 1;
        }
        if n > 1 {
            res = -res;
        }
        res
    }

    fn witt(l: usize, n: usize) -> usize {
        let s: i64 = (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| mobius(d) * (l as i64).pow((n / d) as u32)).sum();
        (s / n as i64) as usize
    }

    #[test]
    fn lyndon_counts_match_witt() {
        for l in 2..=4 {
            for (k, ws) in lyndon_words(l, 6).iter().enumerate() {
                assert_eq!(ws.len(), witt(l, k + 1), "l={l} len={}", k + 1);
            }
        }
    }

    #[test]
    fn free_dims_and_validity() {
        assert_eq!(build_free_nilpotent(2, 2).dims(), &[2, 1]);
        assert_eq!(build_free_nilpotent(2, 3).dims(), &[2, 1, 2]);
        assert_eq!(build_free_nilpotent(3, 2).dims(), &[3, 3]);
        for (l, mu) in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (2, 5)] {
            let f = build_free_nilpotent(l, mu);
            let expected: Vec<usize> = (1..=mu).map(|k| witt(l, k)).collect();
            assert_eq!(f.dims(), expected.as_slice());
            assert!(f.validate().all(), "free({l},{mu})");
        }
    }

    #[test]
    fn free_labels_are_lyndon_words() {
        let f = build_free_nilpotent(2, 3);
        assert_eq!(f.labels(), &["a", "b", "ab", "aab", "abb"]);
    }
}
