use std::path::Path;
use std::process::{Command, Output};

use semi_hilbert::CMat;
use semi_hilbert_harness::{FuzzConfig, Instance, Report};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_semi-hilbert"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn repro_succeeds() {
    let o = run(&["repro"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 6);
    assert!(s.contains("2.4375") && s.contains("3.0625"));
    assert!(!s.contains("MISMATCH"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&[])), 2);
    assert_eq!(code(&run(&["fuzz", "--rank-policy", "sometimes"])), 2);
    assert_eq!(code(&run(&["fuzz", "--trials", "1", "--n-min", "5", "--n-max", "2"])), 2);
    assert_eq!(code(&run(&["fuzz", "--trials", "1", "--check-id", "no_such_check"])), 2);
    assert_eq!(code(&run(&["check", "--instance", "/nonexistent/instance.json"])), 2);
}

fn write_instance(dir: &Path, name: &str, inst: &Instance) -> String {
    let p = dir.join(name);
    std::fs::write(&p, inst.to_json().unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn check_instance_file() {
    let dir = tempfile::tempdir().unwrap();
    let t = semi_hilbert_harness::generate_trial(&FuzzConfig::default(), 4).unwrap();
    let path = write_instance(dir.path(), "ok.json", &t.instance);
    let out = dir.path().join("report.json");
    let o = run(&["check", "--instance", &path, "--json", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.rows.len(), semi_hilbert::catalog::registry().len());
    assert_eq!(report.violations(), 0);

    let o = run(&["check", "--instance", &path, "--check-id", "cor_kittaneh_A", "--tol", "1e-10"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 1);
    assert_eq!(code(&run(&["check", "--instance", &path, "--check-id", "bogus"])), 2);
}

#[test]
fn invalid_instances_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let mut inst = Instance {
        dim: 2,
        a: CMat::diag_real(&[0.0, 1.0]),
        operators: [("T".to_string(), CMat::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap())].into(),
        seed: 0,
        note: "no adjoint".into(),
    };
    let p = write_instance(dir.path(), "bad.json", &inst);
    let o = run(&["check", "--instance", &p]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("admits no A-adjoint"));

    inst.a = CMat::diag_real(&[-1.0, 1.0]);
    let p = write_instance(dir.path(), "neg.json", &inst);
    assert_eq!(code(&run(&["check", "--instance", &p])), 2);

    let p = dir.path().join("garbage.json");
    std::fs::write(&p, "{\"dim\": 2}").unwrap();
    assert_eq!(code(&run(&["check", "--instance", p.to_str().unwrap()])), 2);
}

#[test]
fn violated_inequality_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let inst = Instance {
        dim: 2,
        a: CMat::identity(2),
        operators: [("T".to_string(), CMat::from_real_rows(&[[0.0, 2.0], [0.0, 0.0]]).unwrap())].into(),
        seed: 0,
        note: String::new(),
    };
    let p = write_instance(dir.path(), "nil.json", &inst);
    // w(T) = 1 equals the lower Kittaneh bound; a negative tolerance turns equality into a failure.
    let o = run(&["check", "--instance", &p, "--check-id", "cor_kittaneh_A", "--tol=-1e-3"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn fuzz_outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let files: Vec<_> = (0..2)
        .map(|k| {
            let json = dir.path().join(format!("r{k}.json"));
            let csv = dir.path().join(format!("r{k}.csv"));
            let o = run(&[
                "fuzz",
                "--trials",
                "6",
                "--n-max",
                "4",
                "--seed",
                "11",
                "--json",
                json.to_str().unwrap(),
                "--csv",
                csv.to_str().unwrap(),
            ]);
            assert_eq!(code(&o), 0, "{}", stdout(&o));
            (std::fs::read(json).unwrap(), std::fs::read_to_string(csv).unwrap())
        })
        .collect();
    assert_eq!(files[0], files[1]);
    let report: Report = serde_json::from_slice(&files[0].0).unwrap();
    assert_eq!(report.master_seed, 11);
    assert_eq!(report.trials, 6);
    assert_eq!(files[0].1.lines().count(), 1 + report.rows.len());
    assert!(files[0].1.starts_with("trial,check_id,lhs,rhs,slack,pass,skipped\n"));
}

#[test]
fn scan_sharpness_dumps_top_instances() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("cases");
    let o = run(&[
        "scan-sharpness",
        "--check-id",
        "cor_kittaneh_A",
        "--trials",
        "30",
        "--bias",
        "nilpotent",
        "--top",
        "3",
        "--dump-dir",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let files: Vec<_> = std::fs::read_dir(&dump).unwrap().collect();
    assert_eq!(files.len(), 3);
    let first = stdout(&o).lines().next().unwrap().to_string();
    let rel: f64 = first.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(rel.abs() <= 1e-9, "{first}");
    for f in files {
        Instance::load(&f.unwrap().path()).unwrap().validate().unwrap();
    }
}
