//! Prolongation of the flag symbol of a scalar ODE of order n: the Jordan
//! block line in gl(n), prolonged on the commutative algebra Q^n.
//!
//! cargo run --example ode_tower

use tanaka::flags::{flag_prolong, make_delta_rp, AmbientKind, FlagSymbol};
use tanaka::prolong::tanaka_prolong;

fn main() {
    for n in 3..=8 {
        let datum = make_delta_rp(-n, -1).expect("valid range");
        let sym = FlagSymbol::from_datum(&datum, AmbientKind::Gl, false).expect("valid symbol");
        let u = flag_prolong(&sym, 20);
        let g0 = u.to_subalgebra0(&sym).expect("subalgebra of gl(n)");
        let alg = tanaka_prolong(sym.ambient().parent(), &g0, 20).expect("prolongation");
        println!(
            "n = {n}: dim u^F = {}, graded dims {:?}, total {}, {}",
            u.total_dim(),
            alg.graded_dims(),
            alg.total_dim(),
            alg.status()
        );
    }
}
