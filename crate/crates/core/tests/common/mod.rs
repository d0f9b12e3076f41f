//! Shared generators for integration tests.
#![allow(dead_code)]

use rand::Rng;
use tanaka::exactla::{complement_in, int, zero_vec, Mat, Rat, Subspace};
use tanaka::graded::{gr_map, FilteredMap, FiltrationSpec};

fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Mat {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| int(rng.gen_range(-2..=2))).collect()).collect();
        let m = Mat::from_rows(n, rows);
        if m.rank() == n {
            return m;
        }
    }
}

/// A filtration of `Q^n` with random weights in `-2..=1` and a random
/// adapted basis.
pub fn random_filtration<R: Rng>(rng: &mut R, n: usize) -> FiltrationSpec {
    let weights: Vec<i32> = (0..n).map(|_| rng.gen_range(-2..=1)).collect();
    let j = random_invertible(rng, n);
    FiltrationSpec::from_weighted_basis((0..n).map(|c| j.col(c)).collect(), weights).unwrap()
}

/// A random filtered map between random filtrations of dimension at most
/// `max_dim`: the adapted matrix is random where the codomain weight is at
/// least the domain weight and zero elsewhere, with some sparsity so that
/// `gr` has kernels.
pub fn random_filtered_map<R: Rng>(rng: &mut R, max_dim: usize) -> FilteredMap {
    let na = rng.gen_range(1..=max_dim);
    let nb = rng.gen_range(1..=max_dim);
    let dom = random_filtration(rng, na);
    let cod = random_filtration(rng, nb);
    let mut a = Mat::zeros(nb, na);
    for r in 0..nb {
        for c in 0..na {
            if cod.weights()[r] >= dom.weights()[c] && rng.gen_bool(0.6) {
                a[(r, c)] = int(rng.gen_range(-3..=3));
            }
        }
    }
    let m = &(cod.adapted() * &a) * dom.adapted_inverse();
    FilteredMap::new(dom, cod, m).unwrap()
}

/// A subspace `C` of the codomain with `gr C ⊕ im gr f = gr B`: per weight,
/// the pivot complement of the image of `gr f`, lifted with random terms of
/// higher weight (which do not change the associated graded).
pub fn complement_for<R: Rng>(rng: &mut R, f: &FilteredMap) -> Subspace {
    let g = gr_map(f).unwrap();
    let cod = &f.codomain;
    let nb = cod.ambient_dim();
    let w = cod.weights();
    let mut vecs = Vec::new();
    for j in cod.min_weight()..=cod.max_weight() {
        let coords = Subspace::span(nb, (0..nb).filter(|&r| w[r] == j).map(|r| tanaka::exactla::unit_vec(nb, r)));
        let image = Subspace::span(nb, (0..g.cols()).map(|c| g.col(c)).map(|v| {
            (0..nb).map(|r| if w[r] == j { v[r].clone() } else { Rat::from_integer(0.into()) }).collect()
        }));
        for v in complement_in(&image, &coords).unwrap().basis_vecs() {
            let mut lifted = v.clone();
            for r in 0..nb {
                if w[r] > j {
                    lifted[r] += int(rng.gen_range(-2..=2));
                }
            }
            vecs.push(cod.from_adapted(&lifted));
        }
    }
    Subspace::span(nb, vecs.into_iter().chain(std::iter::once(zero_vec(nb))))
}
