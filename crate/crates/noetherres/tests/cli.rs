use std::path::PathBuf;
use std::process::{Command as Proc, Output};

use noetherres::{run, Command, InputSource, Job, Report};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn cli(args: &[&str]) -> Output {
    Proc::new(env!("CARGO_BIN_EXE_noetherres")).args(args).output().unwrap()
}

fn path(name: &str) -> String {
    data(name).display().to_string()
}

const COMMANDS: [Command; 8] = [
    Command::Toric,
    Command::ShortRes,
    Command::Schreyer3,
    Command::Prune3,
    Command::Apery,
    Command::Hilbert,
    Command::Reg,
    Command::Check,
];

#[test]
fn json_round_trip_for_every_command() {
    for c in COMMANDS {
        let mut job = Job::new(c, InputSource::Path(data("simplicial_9_deg4.mat")));
        job.keep_nonminimal = true;
        let report = run(&job).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report, "{}", c.name());
        if let Some(b) = &report.betti {
            assert_eq!(crate::table_text(&b.minimal), b.minimal.to_table().render());
        }
    }
}

fn table_text(b: &noetherres::report::BettiJson) -> String {
    noetherres::report::BettiJson::from_table(&b.to_table(), &b.grading).to_table().render()
}

#[test]
fn output_is_deterministic() {
    let p = path("simplicial_6_deg12.mat");
    for cmd in ["short-res", "apery", "check"] {
        let a = cli(&[cmd, "--format", "json", &p]);
        let b = cli(&[cmd, "--format", "json", &p]);
        assert!(a.status.success(), "{cmd}");
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn exit_codes() {
    // validation failures
    let out = cli(&["schreyer3", &path("curve_cap_artinian.gens")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotDimension3"));
    let out = cli(&["reg", "--standard-graded", &path("simplicial_7.mat")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotEquigenerated"));
    let out = cli(&["short-res", "--ideal", "x1^2 - x2, x3", "--weights", "1,1,1", "--dim", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotHomogeneous"));

    // input problems
    let out = cli(&["short-res", "/nonexistent/input.mat"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Io"));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.mat");
    std::fs::write(&bad, "2 3\n1 0 x\n0 1 1\n").unwrap();
    let out = cli(&["short-res", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Parse"));
    let out = cli(&["short-res", "--char", "4", &path("simplicial_7.mat")]);
    assert_eq!(out.status.code(), Some(1));
    let out = cli(&["short-res", "--matrix", "1 1 0; 0 1 1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotSimplicialNormalForm"));
}

#[test]
fn inline_inputs() {
    let out = cli(&["toric", "--matrix", "1 1 0; 1 0 1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("x1 - x2*x3") || text.contains("x2*x3 - x1"), "{text}");

    let out = cli(&["short-res", "--format", "json", "--ideal", "x1^2 - x2*x3", "--dim", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.input.n, 3);
    assert_eq!(r.resolution.unwrap().minimal_ranks, vec![2]);
}

#[test]
fn file_characteristic_and_override() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("char2.json");
    let rows: Vec<Vec<u32>> = std::fs::read_to_string(data("char_dependent_6x16.mat"))
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect();
    std::fs::write(&f, serde_json::json!({"char": 2, "matrix": rows}).to_string()).unwrap();
    let run_char = |extra: &[&str]| {
        let mut args = vec!["short-res", "--format", "json"];
        args.extend_from_slice(extra);
        let p = f.display().to_string();
        args.push(&p);
        let out = cli(&args);
        let r: Report = serde_json::from_slice(&out.stdout).unwrap();
        (r.field.characteristic, r.resolution.unwrap().minimal_ranks)
    };
    assert_eq!(run_char(&[]), (2, vec![11, 15, 7, 1]));
    assert_eq!(run_char(&["--char", "0"]), (0, vec![11, 15, 6]));
}

#[test]
fn standard_grading_and_regularity() {
    let mut job = Job::new(Command::Reg, InputSource::Path(data("simplicial_6_deg12.mat")));
    job.standard_graded = true;
    let r = run(&job).unwrap().regularity.unwrap();
    assert_eq!((r.from_resolution, r.surface), (Some(13), Some(13)));

    let job = Job::new(Command::Reg, InputSource::Path(data("simplicial_7.mat")));
    let r = run(&job).unwrap().regularity.unwrap();
    assert_eq!(r.from_resolution, None);
    assert!(!r.notes.is_empty());

    let mut job = Job::new(Command::ShortRes, InputSource::Path(data("simplicial_9_deg4.mat")));
    job.standard_graded = true;
    let b = run(&job).unwrap().betti.unwrap().minimal;
    assert_eq!(b.grading, "standard");
    assert_eq!(b.totals, vec![28, 18, 6]);
}

#[test]
fn hilbert_report() {
    let job = Job::new(Command::Hilbert, InputSource::Path(data("simplicial_7.mat")));
    let s = run(&job).unwrap().series.unwrap();
    assert_eq!(s.numerator_minimal, s.numerator_schreyer);
    assert_eq!(s.multiplicity, 2);
    assert_eq!(s.denominator, vec![2, 2, 2]);
    let m = s.multigraded.unwrap();
    assert_eq!(m.iter().map(|t| t.coefficient).sum::<i64>(), 2);
}

#[test]
fn checks_record_seed() {
    let out = cli(&["check", "--seed", "42", &path("simplicial_7.mat")]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("seed 42"));
    assert!(text.contains("0 failed"));
}
