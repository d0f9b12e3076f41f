//! The prolongation of (Q^2, gl(2)) never stops: dim g^k = 2(k+2). The
//! run is reported as capped, not declared infinite.
//!
//! cargo run --example infinite_gl2 -- 8

use tanaka::prolong::{derivations0, tanaka_prolong};
use tanaka::symbols::build_commutative;

fn main() {
    let cap: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let m = build_commutative(2);
    let alg = tanaka_prolong(&m, &derivations0(&m), cap).unwrap();
    for (k, d) in alg.graded_dims() {
        println!("degree {k}: dim {d}");
    }
    println!("status: {}", alg.status());
}
