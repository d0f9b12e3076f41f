//! Degree-zero derivation algebras of standard symbols, and restrictions to
//! sp and csp of the Heisenberg form.
//!
//! cargo run --example derivations

use tanaka::prolong::{derivations0, restrict_to, G0Family};
use tanaka::symbols::{build_commutative, build_free_nilpotent, build_heisenberg};

fn main() {
    for n in 2..=5 {
        println!("commutative({n}): {}", derivations0(&build_commutative(n)).dim());
    }
    for total in [3, 5, 7] {
        let h = build_heisenberg(total).unwrap();
        let w = h.symplectic_form().unwrap();
        let sp = restrict_to(&h, &G0Family::Sp(w.clone())).unwrap();
        let csp = restrict_to(&h, &G0Family::Csp(w)).unwrap();
        println!("heis({total}): derivations {}, sp {}, csp {}", derivations0(&h).dim(), sp.dim(), csp.dim());
    }
    for (l, mu) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
        let m = build_free_nilpotent(l, mu);
        println!("free({l},{mu}) dims {:?}: derivations {}", m.dims(), derivations0(&m).dim());
    }
}
