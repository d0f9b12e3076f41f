//! Parameterized symbols: sums of tau_m and -tau_m. The degree-zero part is
//! the centralizer of the fixed element, an orthogonal algebra so(N+, N-) per
//! block size, and nothing survives in positive degrees.
//!
//! cargo run --example parameterized_symbols

use tanaka::flags::{direct_sum, flag_prolong_param, make_tau_m, AmbientKind, FlagSymbol};

fn main() {
    let tau = |m, s| make_tau_m(m, s).unwrap();
    let cases = [
        ("tau_1", vec![tau(1, 1)]),
        ("tau_1 + tau_1", vec![tau(1, 1), tau(1, 1)]),
        ("tau_1 - tau_1", vec![tau(1, 1), tau(1, -1)]),
        ("tau_1 + tau_1 - tau_1", vec![tau(1, 1), tau(1, 1), tau(1, -1)]),
        ("tau_1 + tau_2 + tau_2", vec![tau(1, 1), tau(2, 1), tau(2, 1)]),
    ];
    for (name, parts) in cases {
        let d = direct_sum(&parts).unwrap();
        let sym = FlagSymbol::from_datum(&d, AmbientKind::Sp, true).unwrap();
        let u = flag_prolong_param(&sym, 20).unwrap();
        println!("{name}: u_0 dim {}, all dims {:?}", u.dim(0), u.dims());
    }
}
