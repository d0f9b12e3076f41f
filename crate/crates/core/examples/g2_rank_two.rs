//! Two routes to a 14-dimensional algebra: the flag symbol tau_2 inside
//! csp(4) prolonged on heis(5), and all degree-zero derivations of the free
//! 3-step nilpotent algebra on two generators.
//!
//! cargo run --example g2_rank_two

use tanaka::flags::{flag_prolong, make_tau_m, AmbientKind, FlagSymbol};
use tanaka::prolong::{derivations0, tanaka_prolong};
use tanaka::symbols::build_free_nilpotent;

fn main() {
    let sym = FlagSymbol::from_datum(&make_tau_m(2, 1).unwrap(), AmbientKind::Csp, false).unwrap();
    let g0 = flag_prolong(&sym, 20).to_subalgebra0(&sym).unwrap();
    let via_flags = tanaka_prolong(sym.ambient().parent(), &g0, 20).unwrap();
    println!("heis(5) with u^F(tau_2): {:?} total {}", via_flags.graded_dims(), via_flags.total_dim());

    let m = build_free_nilpotent(2, 3);
    let via_free = tanaka_prolong(&m, &derivations0(&m), 20).unwrap();
    println!("free(2,3) with all derivations: {:?} total {}", via_free.graded_dims(), via_free.total_dim());
    println!("structure checks pass: {}", via_free.check_structure().all() && via_flags.check_structure().all());

    // Larger rank-two symbols: the first prolongation vanishes.
    for m in 3..=5 {
        let sym = FlagSymbol::from_datum(&make_tau_m(m, 1).unwrap(), AmbientKind::Csp, false).unwrap();
        let g0 = flag_prolong(&sym, 20).to_subalgebra0(&sym).unwrap();
        let alg = tanaka_prolong(sym.ambient().parent(), &g0, 20).unwrap();
        println!("heis({}) with u^F(tau_{m}): total {} ({})", 2 * m + 1, alg.total_dim(), alg.status());
    }
}
