mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tanaka::cli::{run, AlgebraDesc, Command, G0Desc, JobSpec, RunOptions};
use tanaka::distributions::{bracket, Poly, PolyVectorField};
use tanaka::exactla::{complement_in, int, kernel, solve_affine, Mat, Rat, Subspace};
use tanaka::flags::{direct_sum, flag_prolong, flag_prolong_param, make_tau_m, AmbientKind, FlagSymbol};
use tanaka::graded::{gl_filtration, gr_map, gr_subspace, lemma_abc_check, FilteredMap};
use tanaka::symbols::{build_free_nilpotent, SymbolJson};

fn small_mat(max: usize) -> impl Strategy<Value = Mat> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| Mat::from_flat(r, c, v.into_iter().map(int).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in small_mat(6)) {
        let k = kernel(&m);
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        for v in k.basis_vecs() {
            prop_assert!(m.mul_vec(&v).iter().all(|x| *x == int(0)));
        }
        let (r, _) = m.rref();
        prop_assert_eq!(r.rref().0, r);
    }

    #[test]
    fn sum_and_intersection(a in small_mat(5), b in small_mat(5)) {
        let n = a.cols();
        prop_assume!(b.cols() == n);
        let (sa, sb) = (Subspace::from_mat(&a), Subspace::from_mat(&b));
        prop_assert_eq!(sa.sum(&sb).dim() + sa.intersection(&sb).dim(), sa.dim() + sb.dim());
        prop_assert!(sa.intersection(&sb).is_subspace_of(&sa));
    }

    #[test]
    fn complement_is_direct(a in small_mat(5)) {
        let s = Subspace::from_mat(&a);
        let full = Subspace::full(a.cols());
        let c = complement_in(&s, &full).unwrap();
        prop_assert_eq!(c.dim() + s.dim(), a.cols());
        prop_assert_eq!(c.sum(&s), full);
    }

    #[test]
    fn affine_solutions_solve(a in small_mat(5), x in proptest::collection::vec(-3i64..=3, 5)) {
        let x: Vec<Rat> = x.into_iter().take(a.cols()).map(int).collect();
        prop_assume!(x.len() == a.cols());
        let b = a.mul_vec(&x);
        let (sol, ker) = solve_affine(&a, &b);
        let sol = sol.expect("consistent by construction");
        prop_assert_eq!(a.mul_vec(&sol), b);
        prop_assert_eq!(ker, kernel(&a));
    }

    #[test]
    fn lemma_statements_hold(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = common::random_filtered_map(&mut rng, 5);
        let c = common::complement_for(&mut rng, &f);
        let r = lemma_abc_check(&f, &c).unwrap();
        prop_assert!(r.hypothesis && r.all(), "{:?}", r);
    }

    #[test]
    fn gr_is_functorial(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = common::random_filtered_map(&mut rng, 4);
        // A second map out of f's codomain.
        let mut g = common::random_filtered_map(&mut rng, 4);
        let mut tries = 0;
        while g.domain.ambient_dim() != f.codomain.ambient_dim() && tries < 50 {
            g = common::random_filtered_map(&mut rng, 4);
            tries += 1;
        }
        prop_assume!(g.domain.ambient_dim() == f.codomain.ambient_dim());
        // Re-express g on f's codomain filtration by an adapted change of basis.
        let a = g.adapted_matrix().unwrap();
        let mut a = a;
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                if g.codomain.weights()[r] < f.codomain.weights()[c] {
                    a[(r, c)] = int(0);
                }
            }
        }
        let m = &(g.codomain.adapted() * &a) * f.codomain.adapted_inverse();
        let g = FilteredMap::new(f.codomain.clone(), g.codomain.clone(), m).unwrap();
        let gf = g.compose(&f).unwrap();
        prop_assert_eq!(gr_map(&gf).unwrap(), &gr_map(&g).unwrap() * &gr_map(&f).unwrap());
    }

    #[test]
    fn gr_preserves_dimension(seed in any::<u64>(), a in small_mat(4)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let flag = common::random_filtration(&mut rng, a.cols());
        let s = Subspace::from_mat(&a);
        prop_assert_eq!(gr_subspace(&flag, &s).total_dim(), s.dim());
        let gl = gl_filtration(&flag);
        prop_assert_eq!(gl.ambient_dim(), a.cols() * a.cols());
    }
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    // Coefficients of 1, x1, x2, x3, x1^2, x1 x2, x2 x3, x3^2.
    proptest::collection::vec(-2i64..=2, 8).prop_map(|c| {
        let monos = ["1", "x1", "x2", "x3", "x1^2", "x1*x2", "x2*x3", "x3^2"];
        let text: Vec<String> = c.iter().zip(monos).map(|(k, m)| format!("({k})*{m}")).collect();
        Poly::parse(&text.join(" + "), 3).unwrap()
    })
}

fn field_strategy() -> impl Strategy<Value = PolyVectorField> {
    proptest::collection::vec(poly_strategy(), 3).prop_map(|c| PolyVectorField::new(c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn vector_field_bracket_is_lie(x in field_strategy(), y in field_strategy(), z in field_strategy()) {
        let xy = bracket(&x, &y).unwrap();
        let yx = bracket(&y, &x).unwrap();
        prop_assert!(xy.add(&yx).is_zero());
        let j = bracket(&x, &bracket(&y, &z).unwrap())
            .unwrap()
            .add(&bracket(&y, &bracket(&z, &x).unwrap()).unwrap())
            .add(&bracket(&z, &bracket(&x, &y).unwrap()).unwrap());
        prop_assert!(j.is_zero());
    }

    #[test]
    fn poly_display_parses_back(p in poly_strategy()) {
        prop_assert_eq!(Poly::parse(&p.to_string(), 3).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// For `τ` blocks with multiplicities `N+`, `N-` the centralizer in degree
    /// zero is `so(N+, N-)` per block size and positive degrees vanish; the
    /// parameterized components sit inside the unparameterized ones.
    #[test]
    fn parameterized_tau_sums(parts in proptest::collection::vec((1usize..=2, prop::bool::ANY), 1..=3)) {
        let total: usize = parts.iter().map(|(m, _)| 2 * m).sum();
        prop_assume!(total <= 8);
        let data: Vec<_> = parts.iter().map(|&(m, pos)| make_tau_m(m, if pos { 1 } else { -1 }).unwrap()).collect();
        let d = direct_sum(&data).unwrap();
        let sym = FlagSymbol::from_datum(&d, AmbientKind::Sp, true).unwrap();
        let u = flag_prolong_param(&sym, 20).unwrap();
        let expected: usize = [1usize, 2]
            .iter()
            .map(|&m| parts.iter().filter(|(k, _)| *k == m).count())
            .map(|n| n * n.saturating_sub(1) / 2)
            .sum();
        prop_assert_eq!(u.dim(0), expected);
        prop_assert!(u.components.iter().filter(|(&k, _)| k > 0).all(|(_, s)| s.is_zero()));
        let line = FlagSymbol::from_datum(&d, AmbientKind::Sp, false).unwrap();
        let full = flag_prolong(&line, 20);
        for (k, s) in &u.components {
            prop_assert!(s.is_subspace_of(&full.components[k]));
        }
        prop_assert!(full.is_closed());
    }

    #[test]
    fn symbol_json_round_trip(l in 2usize..=3, mu in 1usize..=3) {
        prop_assume!(l + mu <= 5);
        let s = build_free_nilpotent(l, mu);
        let text = serde_json::to_string(&SymbolJson::from_symbol(&s)).unwrap();
        let back: SymbolJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_symbol().unwrap(), s);
    }

    #[test]
    fn reports_are_deterministic(which in 0usize..3, cap in 2usize..=4) {
        let (algebra, g0) = match which {
            0 => (AlgebraDesc::Heisenberg(3), G0Desc::Csp),
            1 => (AlgebraDesc::Commutative(2), G0Desc::Full),
            _ => (AlgebraDesc::Free([2, 3]), G0Desc::Full),
        };
        let job = JobSpec {
            command: Command::Prolong,
            algebra: Some(algebra),
            g0: Some(g0),
            symbol: None,
            ambient: None,
            max_degree: cap,
            degree: None,
            point: None,
            sample_points: vec![],
            require_finite: false,
        };
        let opts = RunOptions { emit_bases: true, emit_brackets: true, require_finite: false };
        let a = run(&job, &opts).unwrap();
        let b = run(&job, &opts).unwrap();
        prop_assert_eq!(a.to_json_without_timing(), b.to_json_without_timing());
        // Reloading the echoed algebra reproduces the dimensions.
        let again = JobSpec { algebra: Some(AlgebraDesc::Custom(a.algebra.clone().unwrap())), ..job };
        prop_assert_eq!(run(&again, &opts).unwrap().dims, a.dims);
    }
}
