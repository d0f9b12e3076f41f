//! The graded Spencer operators of a prolongation: ranks, kernels that
//! reproduce the next component, and the size of a normalization condition.
//!
//! cargo run --example spencer_operators

use tanaka::prolong::{derivations0, normalization_complement, spencer_gr, tanaka_prolong};
use tanaka::symbols::build_free_nilpotent;

fn main() {
    let m = build_free_nilpotent(2, 3);
    let alg = tanaka_prolong(&m, &derivations0(&m), 20).unwrap();
    println!("free(2,3): {:?}, {}", alg.graded_dims(), alg.status());
    for k in 0..=alg.top_degree() {
        let s = spencer_gr(&alg, k).unwrap();
        let kernel = s.kernel_negative();
        let next = alg.component(k + 1).map_or(0, |c| c.dim());
        println!(
            "k = {k}: domain {}, target {}, rank {}, kernel {} (g^{} has dim {next}), normalization {}",
            s.domain_dim(),
            s.target_dim(),
            s.rank(),
            kernel.dim(),
            k + 1,
            normalization_complement(&s).dim()
        );
        for t in &s.target {
            print!("  [{} : {}]", t.label, t.dim);
        }
        println!();
    }
}
