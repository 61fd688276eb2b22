use std::fs;
use std::path::Path;
use std::process::Command;

use knotdist::knotfile;
use knotdist_cli::{run, EXIT_INPUT, EXIT_INTERNAL, EXIT_OK};
use tempfile::TempDir;

const SQUARE: &str = "latticeknot v1\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n";
const RECT_1X4: &str = "latticeknot v1\nmoves: XXXXYxxxxy\n";

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("knotdist").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn compute_unit_square() {
    let dir = TempDir::new().unwrap();
    let sq = write(&dir, "sq.knot", SQUARE);
    let (code, out, _) = call(&["compute", &sq]);
    assert_eq!(code, EXIT_OK);
    let doc = json(&out);
    assert_eq!(doc["schema"], "knotdist.report/v1");
    assert_eq!(doc["n_edges"], 4);
    assert_eq!(doc["delta"]["num"], 1);
    assert_eq!(doc["delta"]["den"], 1);
    assert_eq!(doc["witnesses"].as_array().unwrap().len(), 6);
    assert_eq!(doc["gromov1"]["num"], 2);
    assert_eq!(doc["certificate"]["verdict"], "unknot_certified");
}

#[test]
fn pruning_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let knot = knotdist::generators::random_polygon(36, 7).unwrap();
    let path = write(&dir, "r.knot", &knotfile::write_vertices(&knot));
    let (_, pruned, _) = call(&["compute", &path]);
    let (_, full, _) = call(&["compute", "--no-prune", &path]);
    assert_eq!(pruned, full);
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let knot = knotdist::generators::torus_knot(2, 3, 4).unwrap();
    let path = write(&dir, "t.knot", &knotfile::write_moves(&knot));
    let (c1, one, _) = call(&["--threads", "1", "compute", "--heatmap", &path]);
    let (c4, four, _) = call(&["--threads", "4", "compute", "--heatmap", &path]);
    assert_eq!((c1, c4), (EXIT_OK, EXIT_OK));
    assert_eq!(one, four);
    let (code, _, _) = call(&["--threads", "0", "compute", &path]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn certify_long_rectangle_is_inconclusive() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "r.knot", RECT_1X4);
    let (code, out, _) = call(&["certify", &path]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("inconclusive delta=5/1"), "{out}");
    let sq = write(&dir, "sq.knot", SQUARE);
    let (_, out, _) = call(&["certify", &sq]);
    assert!(out.starts_with("unknot_certified delta=1/1"), "{out}");
}

#[test]
fn odd_moves_are_rejected() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "bad.knot", "latticeknot v1\nmoves: XYX\n");
    let (code, _, _) = call(&["compute", &path]);
    assert_eq!(code, EXIT_INPUT);
    let (code, out, _) = call(&["validate", &path]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.starts_with("invalid"), "{out}");
}

#[test]
fn validate_accepts_square() {
    let dir = TempDir::new().unwrap();
    let sq = write(&dir, "sq.knot", SQUARE);
    let (code, out, _) = call(&["validate", &sq]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "ok: 4 edges");
}

#[test]
fn scale_writes_knot_file() {
    let dir = TempDir::new().unwrap();
    let sq = write(&dir, "sq.knot", SQUARE);
    let target = dir.path().join("sq3.knot");
    let (code, _, _) =
        call(&["scale", "--factor", "3", "--moves", "-o", target.to_str().unwrap(), &sq]);
    assert_eq!(code, EXIT_OK);
    let scaled = knotfile::parse_knot(&fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(scaled.len(), 12);
    assert_eq!(scaled, knotfile::parse_knot(SQUARE).unwrap().scale(3).unwrap());
}

#[test]
fn generate_is_deterministic() {
    let (code, a, _) = call(&["generate", "--kind", "random", "--length", "24", "--seed", "5"]);
    assert_eq!(code, EXIT_OK);
    let (_, b, _) = call(&["generate", "--kind", "random", "--length", "24", "--seed", "5"]);
    assert_eq!(a, b);
    assert_eq!(knotfile::parse_knot(&a).unwrap().len(), 24);
    let (code, _, _) = call(&["generate", "--kind", "torus", "--p", "2", "--q", "4"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn heatmap_max_matches_delta() {
    let dir = TempDir::new().unwrap();
    let knot = knotdist::generators::random_polygon(30, 11).unwrap();
    let path = write(&dir, "r.knot", &knotfile::write_vertices(&knot));
    let csv = dir.path().join("h.csv");
    let (code, _, _) = call(&["heatmap", "--csv", csv.to_str().unwrap(), &path]);
    assert_eq!(code, EXIT_OK);
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "index,x,y,z,value_num,value_den,value_decimal");
    let values: Vec<knotdist::Ratio> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            knotdist::Ratio::new(f[4].parse().unwrap(), f[5].parse().unwrap())
        })
        .collect();
    assert_eq!(values.len(), 30);
    let max = values.into_iter().max().unwrap();
    assert_eq!(max, knotdist::vertex_distortion(&knot).delta);
}

#[test]
fn enumerate_distortion_one() {
    let (code, out, _) = call(&["enumerate", "--max-len", "6", "--distortion-one"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn overflow_is_internal_failure() {
    let dir = TempDir::new().unwrap();
    let big = "latticeknot v1\n\
        1152921504606846976 0 0\n1152921504606846977 0 0\n\
        1152921504606846977 1 0\n1152921504606846976 1 0\n";
    let path = write(&dir, "big.knot", big);
    let (code, _, err) = call(&["scale", "--factor", "8", &path]);
    assert_eq!(code, EXIT_INTERNAL);
    assert!(!err.is_empty());
}

#[test]
fn missing_file_and_bad_arguments() {
    let (code, _, _) = call(&["compute", "/nonexistent/knot"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = call(&["frobnicate"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn binary_reads_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_knotdist"))
        .args(["certify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(SQUARE.as_bytes()).unwrap();
    let output = child.wait_with_output().unwrap();
    assert_eq!(output.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&output.stdout).starts_with("unknot_certified"));
    assert!(Path::new(env!("CARGO_BIN_EXE_knotdist")).exists());
}
