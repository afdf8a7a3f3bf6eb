use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const PROCESS_RULE_OUT: &str = "BeamScanningDeflectionSystemInducedDefect,BuildChamberEnvironmentalControlInducedDefect,\
PowderHandlingDepositionSystemInducedDefect,ByproductMaterialEjectionInducedDefect,FeedstockMaterialInducedDefect";

fn assets() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/assets")
}

fn root() -> String {
    assets().join("defectont.dlo").display().to_string()
}

fn golden(name: &str) -> String {
    fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_defectont")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_module(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(format!("{name}.dlo"));
    fs::write(&path, body).unwrap();
    path.display().to_string()
}

#[test]
fn check_assets() {
    let o = run(&["check", &root()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "consistent\n");
}

#[test]
fn check_inconsistent() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_module(dir.path(), "bad", "ontology bad\nclass A\nindividual x\ninstance x A\nsubclass A bot\n");
    let o = run(&["check", &p]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o), "error: inconsistent\n");
}

#[test]
fn ask_porosity() {
    let o = run(&["ask", &root(), "instance? d PorosityDefect"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "true\n"));
    let o = run(&["ask", &root(), "fillers? pl hosts"]);
    assert_eq!(stdout(&o), "s1\ns2\n");
    let o = run(&["ask", &root(), "value? d hasLength m"]);
    assert_eq!(stdout(&o), "1.5 m\n");
}

#[test]
fn ask_errors() {
    let o = run(&["ask", &root(), "instance? d Nope"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr(&o), "error: query: 1:13: declaration error: undeclared class `Nope`\n");
    let o = run(&["ask", &root(), "value? pl hasLength m"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["ask", &root(), "value? d hasLength degC"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn classify_text_and_dot() {
    let o = run(&["classify", &root()]);
    assert_eq!(stdout(&o), golden("classify.txt"));
    let o = run(&["classify", "--dot", &root()]);
    assert_eq!(stdout(&o), golden("classify.dot"));
}

#[test]
fn realize_balling_sample() {
    let o = run(&["realize", &root(), "b1"]);
    assert_eq!(stdout(&o), "BuildChamberEnvironmentalControlInducedDefect\nSurfaceBallingDefect\n");
    let o = run(&["realize", &root(), "nobody"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn diagnose_process_induced() {
    let o = run(&["diagnose", &root(), "d", "PorosityDefect", "--rule-out", PROCESS_RULE_OUT]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), golden("diagnose_process.txt"));
    let o = run(&["diagnose", &root(), "d", "PorosityDefect", "--rule-out", PROCESS_RULE_OUT, "--json"]);
    assert_eq!(stdout(&o), golden("diagnose_process.json"));
}

#[test]
fn diagnose_preconditions() {
    let o = run(&["diagnose", &root(), "d", "BallingDefect"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not entailed"), "{}", stderr(&o));
    let o = run(&["diagnose", &root(), "d", "Defect"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["classify", "--dot", &root()]);
    let b = run(&["classify", "--dot", &root()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn parse_error_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_module(dir.path(), "t", "ontology t\nclass A\nsubclass A (and A)\n");
    let o = run(&["check", &p]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.starts_with("error: parse: module `t`: 3:"), "{err}");
}

#[test]
fn missing_import() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_module(dir.path(), "t", "ontology t\nimport gone\nclass A\n");
    let o = run(&["check", &p]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr(&o), "error: link: missing module `gone` (imported by `t`)\n");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["check"]).status.code(), Some(1));
    assert_eq!(run(&["check", "/nonexistent/x.dlo"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn merge_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let sig = dir.path().join("sig.txt");
    fs::write(&sig, "Temperature\n").unwrap();
    let map = dir.path().join("map.tsv");
    fs::write(&map, "CelsiusTemperature\tCelsius\n").unwrap();
    let pairs = dir.path().join("pairs.tsv");
    fs::write(&pairs, "Length\tArea\n").unwrap();
    let out = dir.path().join("small.dlo");
    let o = run(&[
        "merge",
        &root(),
        "--prune-to",
        sig.to_str().unwrap(),
        "--rename",
        map.to_str().unwrap(),
        "--bridge",
        pairs.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("ontology small\n"), "{text}");
    assert!(text.contains("subclass Celsius Temperature"), "{text}");
    assert!(text.contains("equiv Length Area"), "{text}");
    assert!(!text.contains("Defect"));
    let o = run(&["ask", out.to_str().unwrap(), "instance? nobody Length"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["check", out.to_str().unwrap()]);
    assert_eq!(stdout(&o), "consistent\n");
}

#[test]
fn export_interchange_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("defectont.ofn");
    let o = run(&["export", &root(), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("Declaration(Class(:PorosityDefect))"));
    assert!(text.trim_end().ends_with(')'));
}
