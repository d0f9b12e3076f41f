//! Tanaka symbols of polynomial distributions at a point, from a JSON
//! description of the spanning vector fields.
//!
//! cargo run --example distribution_symbol

use tanaka::distributions::{DistError, DistributionJson};
use tanaka::exactla::{int, rat};
use tanaka::symbols::SymbolJson;

fn main() -> Result<(), DistError> {
    let text = r#"{"n": 5, "fields": [
        {"dx1": "1"},
        {"dx2": "1", "dx3": "x1", "dx4": "x1^2/2", "dx5": "x1*x2"}
    ]}"#;
    let d = serde_json::from_str::<DistributionJson>(text).expect("valid JSON").to_spec()?;
    let origin = vec![int(0); 5];
    let samples = vec![vec![int(1), rat(-1, 2), int(0), int(3), int(2)]];
    let flag = d.weak_derived_flag(&origin, 5)?;
    println!("weak derived flag dims: {:?}", flag.iter().map(|s| s.dim()).collect::<Vec<_>>());
    let sym = d.symbol_at(&origin, &samples)?;
    println!("growth vector {:?}, valid {}", sym.growth_vector(), sym.validate().all());
    println!("{}", serde_json::to_string_pretty(&SymbolJson::from_symbol(&sym)).unwrap());

    // The Martinet distribution changes type on {x1 = 0}.
    let martinet: DistributionJson =
        serde_json::from_str(r#"{"n": 3, "fields": [{"dx1": "1"}, {"dx2": "1", "dx3": "x1^2"}]}"#).unwrap();
    match martinet.to_spec()?.symbol_at(&[int(1), int(0), int(0)], &[vec![int(0); 3]]) {
        Err(e) => println!("martinet: {e}"),
        Ok(s) => println!("martinet: unexpected constant type {:?}", s.dims()),
    }
    Ok(())
}
