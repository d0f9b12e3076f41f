//! Drives the JSON job runner from code, as the binary does, and renders
//! both output formats.
//!
//! cargo run --example job_runner

use tanaka::cli::{check_finite, parse_job, render_table, run, RunOptions};

fn main() {
    let jobs = [
        r#"{"command": "prolong", "algebra": {"commutative": 3}, "g0": {"flag_prolongation": {"delta_rp": [-3, -1]}}}"#,
        r#"{"command": "check", "algebra": {"heisenberg": 5}}"#,
        r#"{"command": "prolong", "algebra": {"commutative": 2}, "g0": "full", "max_degree": 6, "require_finite": true}"#,
        r#"{"command": "flag-prolong", "symbol": {"tau_m": 2}}"#,
    ];
    let opts = RunOptions::default();
    for text in jobs {
        println!("job: {text}");
        let job = parse_job(text).expect("valid job");
        match run(&job, &opts) {
            Ok(report) => {
                print!("{}", render_table(&report));
                if let Err(e) = check_finite(&job, &opts, &report) {
                    println!("exit {}: {e}", e.exit_code());
                }
            }
            Err(e) => println!("exit {}: {}", e.exit_code(), e.to_json()),
        }
        println!();
    }
    let job = parse_job(r#"{"command": "derivations", "algebra": {"free": [2, 2]}}"#).unwrap();
    println!("{}", run(&job, &RunOptions { emit_bases: true, ..opts }).unwrap().to_json_without_timing());
}
