//! Flag symbols and their prolongations u^F: Jordan blocks in gl(n), a
//! mixed-order sum, and tau_m inside csp with the symplectic flag check.
//!
//! cargo run --example flag_symbols

use tanaka::flags::{
    direct_sum, flag_prolong, make_delta_rp, make_tau_m, symplectic_flag_check, AmbientKind, FlagSymbol,
};

fn main() {
    let mixed = direct_sum(&[make_delta_rp(-3, -1).unwrap(), make_delta_rp(-2, -1).unwrap()]).unwrap();
    let cases = [
        ("delta_{-4,-1} in gl", make_delta_rp(-4, -1).unwrap(), AmbientKind::Gl),
        ("delta_{-4,-1} in sl", make_delta_rp(-4, -1).unwrap(), AmbientKind::Sl),
        ("delta_{-3,-1} + delta_{-2,-1} in gl", mixed, AmbientKind::Gl),
        ("tau_2 in csp", make_tau_m(2, 1).unwrap(), AmbientKind::Csp),
        ("tau_3 in sp", make_tau_m(3, 1).unwrap(), AmbientKind::Sp),
    ];
    for (name, datum, kind) in cases {
        let sym = FlagSymbol::from_datum(&datum, kind, false).unwrap();
        let u = flag_prolong(&sym, 20);
        println!(
            "{name}: dims {:?}, total {}, closed {}, {:?}",
            u.dims(),
            u.total_dim(),
            u.is_closed(),
            sym.compatibility()
        );
    }
    let t = make_tau_m(3, 1).unwrap();
    let check = symplectic_flag_check(&t.flag(), t.omega.as_ref().unwrap());
    println!("flag of tau_3: {check:?}");
}
