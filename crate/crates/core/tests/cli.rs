//! Golden job/report pairs and exit codes of the binary.

use std::path::{Path, PathBuf};
use std::process::Command as Process;

use tanaka::cli::{check_finite, parse_job, run, RunOptions};

fn jobs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("jobs")
}

fn job_files() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(jobs_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json") && !p.to_string_lossy().ends_with(".expected.json"))
        .collect();
    out.sort();
    out
}

/// Report (timing zeroed) or structured error for a job file.
fn outcome(path: &Path) -> String {
    let text = std::fs::read_to_string(path).unwrap();
    let result = parse_job(&text).and_then(|job| run(&job, &RunOptions::default()));
    match result {
        Ok(r) => r.to_json_without_timing(),
        Err(e) => e.to_json(),
    }
}

/// Set `UPDATE_GOLDEN=1` to rewrite the expected files.
#[test]
fn golden_reports() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let files = job_files();
    assert!(files.len() >= 10);
    for job in files {
        let expected_path = job.with_extension("expected.json");
        let got = outcome(&job) + "\n";
        if update {
            std::fs::write(&expected_path, &got).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&expected_path)
            .unwrap_or_else(|_| panic!("missing {}", expected_path.display()));
        assert_eq!(got, expected, "{}", job.display());
    }
}

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_tanaka")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn job_path(name: &str) -> String {
    jobs_dir().join(name).to_string_lossy().into_owned()
}

#[test]
fn exit_codes() {
    let (code, stdout, _) = bin(&[&job_path("ode_tower.json")]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(report["total_dim"], 10);

    let (code, stdout, stderr) = bin(&[&job_path("gl2_capped.json")]);
    assert_eq!(code, 4);
    assert!(stdout.contains("\"total_dim\""), "report still printed");
    let err: serde_json::Value = serde_json::from_str(stderr.trim()).unwrap();
    assert_eq!(err["error"], "not_finite");

    let (code, _, stderr) = bin(&[&job_path("martinet_nonconstant.json")]);
    assert_eq!(code, 3);
    assert!(stderr.contains("\"exit_code\":3"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"command": "prolong", "algebra": {"commutative": 2}, "max_degree": "six"}"#).unwrap();
    let (code, _, _) = bin(&[bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    let (code, _, _) = bin(&[dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn require_finite_flag_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.txt");
    let (code, stdout, _) = bin(&[
        &job_path("free23_derivations.json"),
        "--require-finite",
        "--format",
        "table",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let table = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "degree -3: dim 2");
    assert_eq!(lines[7], "status: Terminated 3");

    let job = parse_job(r#"{"command": "prolong", "algebra": {"commutative": 2}, "max_degree": 3}"#).unwrap();
    let opts = RunOptions { require_finite: true, ..RunOptions::default() };
    let r = run(&job, &opts).unwrap();
    assert_eq!(check_finite(&job, &opts, &r).unwrap_err().exit_code(), 4);
    assert!(check_finite(&job, &RunOptions::default(), &r).is_ok());
}

#[test]
fn emitted_bases_match_dims() {
    let (code, stdout, _) = bin(&[&job_path("g2_flag.json"), "--emit-bases", "--emit-brackets"]);
    assert_eq!(code, 0);
    let r: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    for d in r["dims"].as_array().unwrap() {
        let key = d["degree"].to_string();
        assert_eq!(r["bases"][&key].as_array().unwrap().len() as u64, d["dim"].as_u64().unwrap());
    }
    assert_eq!(r["labels"].as_array().unwrap().len(), 14);
    assert!(!r["brackets"].as_array().unwrap().is_empty());
}

#[test]
fn schemas_cover_the_interface() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas");
    let job: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("job.schema.json")).unwrap()).unwrap();
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("report.schema.json")).unwrap()).unwrap();
    let commands: Vec<&str> =
        job["properties"]["command"]["enum"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    for c in ["check", "derivations", "prolong", "flag-prolong", "flag-prolong-param", "spencer", "symbol", "growth"] {
        assert!(commands.contains(&c), "{c}");
        let parsed = parse_job(&format!(r#"{{"command": "{c}"}}"#)).unwrap();
        assert_eq!(serde_json::to_value(parsed.command).unwrap(), c);
    }
    // Every key a report can carry is described.
    let props = report["properties"].as_object().unwrap();
    for key in ["command", "algebra", "dims", "total_dim", "status", "finite", "growth", "compatibility", "quantities",
        "checks", "bases", "labels", "brackets", "timing_ms"]
    {
        assert!(props.contains_key(key), "{key}");
    }
}
