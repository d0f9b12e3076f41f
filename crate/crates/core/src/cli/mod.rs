//! JSON job runner behind the `tanaka` binary.
//!
//! A job names a command, an algebra and (where needed) a `g0` or a flag
//! symbol; the runner returns a [`Report`]. Exit codes: 0 on success, 2 for
//! malformed input, 3 when a mathematical precondition fails, 4 when
//! `require_finite` is set and a prolongation hit its cap.

mod job;
mod report;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

pub use job::{AlgebraDesc, Command, CustomEndo, FlagDesc, G0Desc, JobSpec, MatJson, TauDesc};
pub use report::{render_table, DegreeDim, Report, SparseBracket};

use job::{default_ambient, mat_of, math, schema};
use crate::exactla::{unit_vec, Rat};
use crate::flags::{flag_prolong, flag_prolong_param, FlagProlongation, FlagStatus, FlagSymbol};
use crate::prolong::{
    derivations0, restrict_to, spencer_gr, normalization_complement, tanaka_prolong, G0Family, ProlongedAlgebra,
    Status, Subalgebra0,
};
use crate::symbols::{NilpotentSymbol, RatJson, SymbolJson};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("invalid job: {0}")]
    Schema(String),
    #[error("precondition failed: {0}")]
    Math(String),
    #[error("prolongation did not terminate: {0}")]
    NotFinite(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Math(_) => 3,
            CliError::NotFinite(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Schema(_) => "schema",
            CliError::Math(_) => "precondition",
            CliError::NotFinite(_) => "not_finite",
        }
    }

    /// The structured form written to stderr.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct ErrorJson<'a> {
            error: &'a str,
            message: String,
            exit_code: i32,
        }
        serde_json::to_string(&ErrorJson { error: self.kind(), message: self.to_string(), exit_code: self.exit_code() })
            .expect("serializable")
    }
}

/// Output switches; reports carry dimensions only by default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub emit_bases: bool,
    pub emit_brackets: bool,
    pub require_finite: bool,
}

/// Parses a job from JSON text.
pub fn parse_job(text: &str) -> Result<JobSpec, CliError> {
    serde_json::from_str(text).map_err(schema)
}

/// Runs a job. A capped prolongation is still a successful run here; see
/// [`check_finite`] for the `require_finite` policy.
pub fn run(job: &JobSpec, opts: &RunOptions) -> Result<Report, CliError> {
    if job.max_degree < 1 {
        return Err(schema("max_degree must be at least 1"));
    }
    let start = Instant::now();
    let mut report = match job.command {
        Command::Check | Command::Symbol => run_check(job)?,
        Command::Growth => run_growth(job)?,
        Command::Derivations => run_derivations(job, opts)?,
        Command::Prolong => run_prolong(job, opts)?,
        Command::Spencer => run_spencer(job)?,
        Command::FlagProlong | Command::FlagProlongParam => run_flag(job, opts)?,
    };
    report.command = job.command;
    report.timing_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Exit-code policy for capped runs: `Err(NotFinite)` when finiteness was
/// required (by the job or the options) and the report is capped.
pub fn check_finite(job: &JobSpec, opts: &RunOptions, report: &Report) -> Result<(), CliError> {
    if (job.require_finite || opts.require_finite) && report.finite == Some(false) {
        return Err(CliError::NotFinite(report.status.clone().unwrap_or_default()));
    }
    Ok(())
}

fn symbol_dims(m: &NilpotentSymbol) -> Vec<DegreeDim> {
    (1..=m.depth() as i32).rev().map(|k| DegreeDim { degree: -k, dim: m.dim(-k) }).collect()
}

fn rats(v: &[Rat]) -> Vec<RatJson> {
    v.iter().map(RatJson::from_rat).collect()
}

fn run_check(job: &JobSpec) -> Result<Report, CliError> {
    let m = job.resolve_algebra()?;
    let v = m.validate();
    let checks = BTreeMap::from([
        ("antisymmetric".to_string(), v.antisymmetric),
        ("jacobi".to_string(), v.jacobi),
        ("graded".to_string(), v.graded),
        ("fundamental".to_string(), v.fundamental),
    ]);
    Ok(Report {
        dims: symbol_dims(&m),
        total_dim: m.total_dim(),
        growth: Some(m.growth_vector()),
        checks,
        algebra: Some(SymbolJson::from_symbol(&m)),
        ..Report::default()
    })
}

fn run_growth(job: &JobSpec) -> Result<Report, CliError> {
    if let AlgebraDesc::Distribution(d) = job.algebra()? {
        // Dimensions of the weak derived flag, without building the symbol.
        let spec = d.to_spec().map_err(schema)?;
        let p = job.base_point(spec.n_coords())?;
        let flag = spec.flag_dims(&p).map_err(math)?;
        for s in job.samples()? {
            let got = spec.flag_dims(&s).map_err(math)?;
            if got != flag {
                return Err(math(format!("flag dimensions {got:?} at a sample point differ from {flag:?}")));
            }
        }
        let mut dims = Vec::new();
        let mut prev = 0;
        for (j, &d) in flag.iter().enumerate() {
            dims.push(DegreeDim { degree: -(j as i32) - 1, dim: d - prev });
            prev = d;
        }
        dims.reverse();
        return Ok(Report { total_dim: prev, dims, growth: Some(flag), ..Report::default() });
    }
    let m = job.resolve_algebra()?;
    Ok(Report { dims: symbol_dims(&m), total_dim: m.total_dim(), growth: Some(m.growth_vector()), ..Report::default() })
}

/// Resolves the algebra and `g0`. A flag-prolongation `g0` brings its own
/// realization of `m`; a given algebra must then agree with it in
/// dimensions.
fn resolve_pair(job: &JobSpec) -> Result<(NilpotentSymbol, Subalgebra0), CliError> {
    let g0 = job.g0.clone().unwrap_or(G0Desc::Full);
    if let G0Desc::FlagProlongation(desc) = &g0 {
        let datum = desc.resolve()?;
        let kind = default_ambient(&datum, job.ambient);
        let sym = FlagSymbol::from_datum(&datum, kind, false).map_err(math)?;
        let u = flag_prolong(&sym, job.max_degree);
        let sub = u.to_subalgebra0(&sym).map_err(math)?;
        let m = sym.ambient().parent().clone();
        if job.algebra.is_some() {
            let given = job.resolve_algebra()?;
            if given.dims() != m.dims() {
                return Err(math(format!(
                    "algebra has graded dimensions {:?} but the flag symbol lives on {:?}",
                    given.dims(),
                    m.dims()
                )));
            }
        }
        return Ok((m, sub));
    }
    let m = job.resolve_algebra()?;
    let form = || m.symplectic_form().ok_or_else(|| math("sp/csp need a Heisenberg-type algebra or an explicit form"));
    let sub = match g0 {
        G0Desc::Full => derivations0(&m),
        G0Desc::Csp => restrict_to(&m, &G0Family::Csp(form()?)).map_err(math)?,
        G0Desc::Sp => restrict_to(&m, &G0Family::Sp(form()?)).map_err(math)?,
        G0Desc::CspForm(w) => restrict_to(&m, &G0Family::Csp(mat_of(&w)?)).map_err(math)?,
        G0Desc::SpForm(w) => restrict_to(&m, &G0Family::Sp(mat_of(&w)?)).map_err(math)?,
        G0Desc::Custom(mats) => {
            let mats = mats.iter().map(mat_of).collect::<Result<Vec<_>, _>>()?;
            restrict_to(&m, &G0Family::Custom(mats)).map_err(math)?
        }
        G0Desc::FlagProlongation(_) => unreachable!("handled above"),
    };
    Ok((m, sub))
}

fn run_derivations(job: &JobSpec, opts: &RunOptions) -> Result<Report, CliError> {
    let (m, g0) = resolve_pair(job)?;
    let mut dims = symbol_dims(&m);
    dims.push(DegreeDim { degree: 0, dim: g0.dim() });
    let checks = BTreeMap::from([
        ("closed".to_string(), g0.is_closed()),
        ("derivations".to_string(), g0.are_derivations()),
        ("restriction_injective".to_string(), g0.restriction_injective()),
    ]);
    let bases = opts.emit_bases.then(|| {
        BTreeMap::from([("0".to_string(), g0.space().basis_vecs().iter().map(|v| rats(v)).collect())])
    });
    Ok(Report {
        total_dim: m.total_dim() + g0.dim(),
        dims,
        checks,
        bases,
        algebra: Some(SymbolJson::from_symbol(&m)),
        ..Report::default()
    })
}

fn status_fields(s: Status) -> (Option<String>, Option<bool>) {
    (Some(s.to_string()), Some(matches!(s, Status::Terminated(_))))
}

fn prolong_bases(alg: &ProlongedAlgebra) -> BTreeMap<String, Vec<Vec<RatJson>>> {
    let m = alg.negative();
    let mut out = BTreeMap::new();
    for k in 1..=m.depth() as i32 {
        let n = m.dim(-k);
        out.insert((-k).to_string(), (0..n).map(|i| rats(&unit_vec(n, i))).collect());
    }
    for c in alg.components() {
        out.insert(c.degree.to_string(), c.basis_vecs().iter().map(|v| rats(v)).collect());
    }
    out
}

fn prolong_brackets(alg: &ProlongedAlgebra) -> Vec<SparseBracket> {
    let n = alg.global_dim();
    let mut out = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            if let Some(v) = alg.bracket(p, q) {
                if !v.is_empty() {
                    out.push(SparseBracket { x: p, y: q, value: v.iter().map(|(i, c)| (*i, RatJson::from_rat(c))).collect() });
                }
            }
        }
    }
    out
}

fn run_prolong(job: &JobSpec, opts: &RunOptions) -> Result<Report, CliError> {
    let (m, g0) = resolve_pair(job)?;
    let alg = tanaka_prolong(&m, &g0, job.max_degree).map_err(math)?;
    let s = alg.check_structure();
    let mut checks = BTreeMap::from([
        ("antisymmetric".to_string(), s.antisymmetric),
        ("jacobi".to_string(), s.jacobi),
        ("no_annihilator".to_string(), s.no_annihilator),
        ("determinacy".to_string(), s.determinacy),
    ]);
    if let Some(b) = s.beyond_top_vanish {
        checks.insert("beyond_top_vanish".into(), b);
    }
    if let Some(b) = s.termination_sound {
        checks.insert("termination_sound".into(), b);
    }
    let (status, finite) = status_fields(alg.status());
    Ok(Report {
        dims: alg.graded_dims().into_iter().map(|(degree, dim)| DegreeDim { degree, dim }).collect(),
        total_dim: alg.total_dim(),
        status,
        finite,
        checks,
        bases: opts.emit_bases.then(|| prolong_bases(&alg)),
        labels: opts.emit_brackets.then(|| alg.global_labels()),
        brackets: opts.emit_brackets.then(|| prolong_brackets(&alg)),
        algebra: Some(SymbolJson::from_symbol(&m)),
        ..Report::default()
    })
}

fn run_spencer(job: &JobSpec) -> Result<Report, CliError> {
    let (m, g0) = resolve_pair(job)?;
    let k = job.degree.ok_or_else(|| schema("spencer needs \"degree\""))?;
    // One extra degree so that g^{k+1} is available for comparison.
    let alg = tanaka_prolong(&m, &g0, job.max_degree.max(k + 2)).map_err(math)?;
    let map = spencer_gr(&alg, k).map_err(math)?;
    let kernel = map.kernel_negative();
    let next = alg.component(k + 1).map_or(0, |c| c.dim());
    let same = match alg.component(k + 1) {
        Some(c) => kernel == c.space,
        None => kernel.is_zero(),
    };
    let quantities = BTreeMap::from([
        ("domain_dim".to_string(), map.domain_dim()),
        ("target_dim".to_string(), map.target_dim()),
        ("rank".to_string(), map.rank()),
        ("kernel_dim".to_string(), map.domain_dim() - map.rank()),
        ("normalization_dim".to_string(), normalization_complement(&map).dim()),
        ("next_component_dim".to_string(), next),
    ]);
    let checks = BTreeMap::from([
        ("kernel_in_negative_part".to_string(), map.kernel_in_negative_part()),
        ("kernel_matches_next_component".to_string(), same),
    ]);
    let (status, finite) = status_fields(alg.status());
    Ok(Report {
        dims: alg.graded_dims().into_iter().map(|(degree, dim)| DegreeDim { degree, dim }).collect(),
        total_dim: alg.total_dim(),
        status,
        finite,
        quantities,
        checks,
        algebra: Some(SymbolJson::from_symbol(&m)),
        ..Report::default()
    })
}

fn flag_brackets(u: &FlagProlongation) -> Vec<SparseBracket> {
    let els = u.elements();
    // Global index of the first basis element of each degree.
    let mut offsets = BTreeMap::new();
    let mut acc = 0;
    for (k, s) in &u.components {
        offsets.insert(*k, acc);
        acc += s.dim();
    }
    let mut out = Vec::new();
    for (p, (j, a)) in els.iter().enumerate() {
        for (q, (k, b)) in els.iter().enumerate().skip(p + 1) {
            let c = a.commutator(b);
            if c.is_zero() {
                continue;
            }
            let target = &u.components[&(j + k)];
            let coords = target.coordinates(c.as_slice()).expect("closed under brackets");
            let off = offsets[&(j + k)];
            let value = coords
                .iter()
                .enumerate()
                .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
                .map(|(i, x)| (off + i, RatJson::from_rat(x)))
                .collect();
            out.push(SparseBracket { x: p, y: q, value });
        }
    }
    out
}

fn run_flag(job: &JobSpec, opts: &RunOptions) -> Result<Report, CliError> {
    let desc = job.symbol.as_ref().ok_or_else(|| schema("flag commands need a \"symbol\""))?;
    let datum = desc.resolve()?;
    let kind = default_ambient(&datum, job.ambient);
    let param = job.command == Command::FlagProlongParam;
    let sym = FlagSymbol::from_datum(&datum, kind, param).map_err(math)?;
    let u = if param { flag_prolong_param(&sym, job.max_degree).map_err(math)? } else { flag_prolong(&sym, job.max_degree) };
    let closed = u.is_closed();
    let (status, finite) = match u.status {
        FlagStatus::Terminated(t) => (format!("Terminated {t}"), true),
        FlagStatus::Capped(n) => (format!("Capped {n}"), false),
    };
    let checks = BTreeMap::from([
        ("closed".to_string(), closed),
        ("gr_matches_ambient".to_string(), sym.gr_matches_ambient()),
    ]);
    let quantities = BTreeMap::from([("ambient_dim".to_string(), sym.ambient().dim())]);
    let mut report = Report {
        dims: u.dims().into_iter().map(|(degree, dim)| DegreeDim { degree, dim }).collect(),
        total_dim: u.total_dim(),
        status: Some(status),
        finite: Some(finite),
        checks,
        quantities,
        compatibility: Some(sym.compatibility()),
        ..Report::default()
    };
    if opts.emit_bases {
        report.bases = Some(
            u.components.iter().map(|(k, s)| (k.to_string(), s.basis_vecs().iter().map(|v| rats(v)).collect())).collect(),
        );
    }
    if opts.emit_brackets && closed {
        report.brackets = Some(flag_brackets(&u));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(text: &str) -> JobSpec {
        parse_job(text).unwrap()
    }

    #[test]
    fn ode_tower_job() {
        let j = job(r#"{"command": "prolong", "algebra": {"commutative": 3}, "g0": {"flag_prolongation": {"delta_rp": [-3, -1]}}}"#);
        let r = run(&j, &RunOptions::default()).unwrap();
        assert_eq!(r.total_dim, 10);
        assert!(r.checks.values().all(|&b| b));
    }

    #[test]
    fn check_job() {
        let r = run(&job(r#"{"command": "check", "algebra": {"heisenberg": 5}}"#), &RunOptions::default()).unwrap();
        assert_eq!(r.checks.len(), 4);
        assert!(r.checks.values().all(|&b| b));
    }

    #[test]
    fn capped_job_exit_four() {
        let j = job(r#"{"command": "prolong", "algebra": {"commutative": 2}, "g0": "full", "max_degree": 6, "require_finite": true}"#);
        let opts = RunOptions::default();
        let r = run(&j, &opts).unwrap();
        let dims: Vec<usize> = r.dims.iter().map(|d| d.dim).collect();
        assert_eq!(dims, vec![2, 4, 6, 8, 10, 12, 14]);
        assert_eq!(r.dims.first().unwrap().degree, -1);
        assert_eq!(check_finite(&j, &opts, &r).unwrap_err().exit_code(), 4);
    }

    #[test]
    fn error_codes() {
        assert_eq!(parse_job(r#"{"command": "nope"}"#).unwrap_err().exit_code(), 2);
        assert_eq!(parse_job(r#"{"command": "check", "extra": 1}"#).unwrap_err().exit_code(), 2);
        let e = run(&job(r#"{"command": "check"}"#), &RunOptions::default()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run(&job(r#"{"command": "prolong", "algebra": {"commutative": 2}, "g0": "csp"}"#), &RunOptions::default())
            .unwrap_err();
        assert_eq!(e.exit_code(), 3);
        let martinet = r#"{"command": "symbol", "algebra": {"distribution": {"n": 3, "fields": [{"dx1": "1"}, {"dx2": "1", "dx3": "x1^2"}]}},
            "point": [1, 0, 0], "sample_points": [[0, 0, 0]]}"#;
        let e = run(&job(martinet), &RunOptions::default()).unwrap_err();
        assert_eq!(e.exit_code(), 3);
        let parsed: serde_json::Value = serde_json::from_str(&e.to_json()).unwrap();
        assert_eq!(parsed["exit_code"], 3);
    }

    #[test]
    fn report_round_trip_and_determinism() {
        let j = job(r#"{"command": "prolong", "algebra": {"free": [2, 3]}, "g0": "full", "max_degree": 6}"#);
        let opts = RunOptions { emit_bases: true, emit_brackets: true, require_finite: false };
        let a = run(&j, &opts).unwrap();
        let b = run(&j, &opts).unwrap();
        assert_eq!(a.to_json_without_timing(), b.to_json_without_timing());
        let again = JobSpec { algebra: Some(AlgebraDesc::Custom(a.algebra.clone().unwrap())), ..j };
        let c = run(&again, &opts).unwrap();
        assert_eq!(c.dims, a.dims);
        // Emitted bases agree with the reported dimensions.
        let bases = a.bases.unwrap();
        for d in &a.dims {
            assert_eq!(bases[&d.degree.to_string()].len(), d.dim);
        }
    }

    #[test]
    fn flag_jobs() {
        let r = run(&job(r#"{"command": "flag-prolong", "symbol": {"tau_m": 2}}"#), &RunOptions::default()).unwrap();
        assert_eq!(r.total_dim, 4);
        let r = run(
            &job(r#"{"command": "flag-prolong-param", "symbol": {"sum": [{"tau_m": 1}, {"tau_m": [1, -1]}]}, "ambient": "sp"}"#),
            &RunOptions { emit_brackets: true, ..RunOptions::default() },
        )
        .unwrap();
        assert_eq!(r.dims.iter().find(|d| d.degree == 0).unwrap().dim, 1);
        assert!(r.brackets.is_some());
    }

    #[test]
    fn table_output() {
        let r = run(&job(r#"{"command": "prolong", "algebra": {"free": [2, 3]}}"#), &RunOptions::default()).unwrap();
        let t = render_table(&r);
        assert!(t.lines().any(|l| l == "degree 3: dim 2"));
        assert_eq!(t.lines().filter(|l| l.starts_with("degree ")).count(), 7);
        assert!(t.lines().any(|l| l == "status: Terminated 3"));
    }
}
