use std::fs;
use std::path::Path;
use std::process::Command as Process;

use clap::Parser;
use flagvol::instance::parse_instance;
use flagvol_cli::{run, Cli, EXIT_FAILED, EXIT_INPUT, EXIT_OK};
use tempfile::TempDir;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let cli = Cli::try_parse_from(std::iter::once("flagvol").chain(args.iter().copied())).expect("arguments parse");
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(cli, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

fn hirz_doc(dir: &TempDir, l: i64, a: i64, b: i64) -> String {
    let p = dir.path().join(format!("h_{l}_{a}_{b}.json"));
    let path = p.to_str().unwrap();
    let (code, _, _) = invoke(&[
        "hirzebruch",
        "--l",
        &l.to_string(),
        "--a",
        &a.to_string(),
        "--b",
        &b.to_string(),
        "--emit",
        path,
    ]);
    assert_eq!(code, EXIT_OK);
    path.to_owned()
}

#[test]
fn check_reports_ampleness() {
    let dir = TempDir::new().unwrap();
    let good = hirz_doc(&dir, 1, 1, 2);
    let (code, out, _) = invoke(&["check", &good]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("ample: true"));

    let bad = hirz_doc(&dir, 1, 1, 1);
    let (code, out, _) = invoke(&["check", &bad]);
    assert_eq!(code, EXIT_FAILED);
    assert!(out.contains("ample: false (margin 0)"), "{out}");

    let malformed = write(&dir, "m.json", "{\"rays\": [[1,0]],\n\"divisor\": [1,]}");
    let (code, _, err) = invoke(&["check", &malformed]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line 2"), "{err}");

    let (code, _, _) = invoke(&["check", "/nonexistent/instance.json"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn report_formats() {
    let dir = TempDir::new().unwrap();
    let doc = hirz_doc(&dir, 1, 1, 2);
    let (code, out, _) = invoke(&["report", &doc, "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for key in [
        "area_polytope",
        "half_self_intersection",
        "simplex_sum",
        "symbol_sum_half",
        "lhs_trivialization_area",
    ] {
        assert_eq!(v[key], "3/2", "{key}");
    }
    assert_eq!(v["self_intersection"], "3");
    assert_eq!(v["contributing_flags"].as_array().unwrap().len(), 2);
    assert_eq!(v["agree"], true);

    let (_, a, _) = invoke(&["report", &doc, "--format", "json", "--flag", "1,0"]);
    let (_, b, _) = invoke(&["report", &doc, "--format", "json", "--flag", "2,1"]);
    let (a, b): (serde_json::Value, serde_json::Value) =
        (serde_json::from_str(&a).unwrap(), serde_json::from_str(&b).unwrap());
    assert_eq!(a["lhs_trivialization_area"], b["lhs_trivialization_area"]);
    assert_eq!(a["simplex_sum"], b["simplex_sum"]);

    let (code, out, _) = invoke(&["report", &doc, "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("record,ray,cone,"));
    assert!(out.contains("\nagree,,,,,,,,,,true\n"));

    let (code, out, _) = invoke(&["report", &doc]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("agree: true"));

    let p2 = write(&dir, "p2.json", r#"{"rays":[[1,0],[0,1],[-1,-1]],"divisor":[1,0,0]}"#);
    let (code, out, _) = invoke(&["report", &p2, "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["simplex_sum"], "1/2");
}

#[test]
fn report_rejects_bad_input() {
    let dir = TempDir::new().unwrap();
    let bad = hirz_doc(&dir, 2, 1, 2);
    let (code, _, err) = invoke(&["report", &bad]);
    assert_eq!(code, EXIT_FAILED);
    assert!(err.contains("not ample"), "{err}");

    let doc = hirz_doc(&dir, 1, 1, 2);
    assert_eq!(invoke(&["report", &doc, "--flag", "0,2"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["report", &doc, "--flag", "zero"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["--decomposition", "bogus", "report", &doc]).0, EXIT_INPUT);
    assert_eq!(
        invoke(&["--decomposition", "generic-at=9", "report", &doc]).0,
        EXIT_INPUT
    );
}

#[test]
fn decomposition_variants_agree() {
    let dir = TempDir::new().unwrap();
    let doc = hirz_doc(&dir, 3, 2, 9);
    let mut sums = Vec::new();
    for tag in [
        "default",
        "successor",
        "generic-at=1",
        "generic-at=3",
        "successor,generic-at=2",
    ] {
        let (code, out, _) = invoke(&["--decomposition", tag, "report", &doc, "--format", "json"]);
        assert_eq!(code, EXIT_OK, "{tag}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["decomposition"], tag);
        sums.push(v["simplex_sum"].clone());
    }
    assert!(sums.iter().all(|s| *s == sums[0]));
    assert_eq!(sums[0], "12");
}

#[test]
fn hirzebruch_documents() {
    let (code, out, err) = invoke(&["hirzebruch", "--l", "1", "--a", "1", "--b", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "{\"rays\":[[1,0],[0,1],[-1,1],[0,-1]],\"divisor\":[0,1,2,0]}\n");
    assert_eq!(err.trim(), "ample: true");
    let (_, _, err) = invoke(&["hirzebruch", "--l", "3", "--a", "2", "--b", "7"]);
    assert_eq!(err.trim(), "ample: true");
    let (_, _, err) = invoke(&["hirzebruch", "--l", "2", "--a", "1", "--b", "2"]);
    assert_eq!(err.trim(), "ample: false");
    assert_eq!(
        invoke(&["hirzebruch", "--l", "0", "--a", "1", "--b", "2"]).0,
        EXIT_INPUT
    );
}

#[test]
fn emitted_documents_round_trip() {
    let dir = TempDir::new().unwrap();
    let path = hirz_doc(&dir, 4, 3, 17);
    let text = fs::read_to_string(&path).unwrap();
    let doc = parse_instance(&text).unwrap();
    assert_eq!(doc.to_json() + "\n", text);
    assert_eq!(doc.resolve().unwrap().to_document().unwrap(), doc);
}

#[test]
fn sweep_table() {
    let (code, out, _) = invoke(&["sweep", "--l", "1", "--a", "1", "--b-extra", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "l,a,b,area,dsq,simplex_sum,symbol_sum,agree\n1,1,2,3/2,3,3/2,3/2,true\n"
    );

    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("grid.csv");
    let (code, _, _) = invoke(&[
        "sweep",
        "--l",
        "1..2",
        "--a",
        "1..2",
        "--b-extra",
        "1..2",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let text = fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 8);
    let mut keys = Vec::new();
    for row in &rows {
        let f: Vec<&str> = row.split(',').collect();
        let (l, a, b): (i64, i64, i64) = (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap());
        let twice = 2 * a * b - l * a * a;
        let area = if twice % 2 == 0 {
            (twice / 2).to_string()
        } else {
            format!("{twice}/2")
        };
        assert_eq!(f[3], area);
        assert_eq!(f[4], twice.to_string());
        assert_eq!(f[7], "true");
        keys.push((l, a, b));
    }
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);

    let (again, _, _) = invoke(&[
        "sweep",
        "--l",
        "1..2",
        "--a",
        "1..2",
        "--b-extra",
        "1..2",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(again, EXIT_OK);
    assert_eq!(fs::read_to_string(&csv).unwrap(), text);
}

#[test]
fn sweep_rejects_empty_ranges() {
    assert_eq!(
        invoke(&["sweep", "--l", "2..1", "--a", "1", "--b-extra", "1"]).0,
        EXIT_INPUT
    );
    assert_eq!(
        invoke(&["sweep", "--l", "1", "--a", "0..1", "--b-extra", "1"]).0,
        EXIT_INPUT
    );
    assert_eq!(
        invoke(&["sweep", "--l", "1", "--a", "1", "--b-extra", "x"]).0,
        EXIT_INPUT
    );
}

#[test]
fn polytope_svg() {
    let dir = TempDir::new().unwrap();
    let doc = hirz_doc(&dir, 1, 1, 2);
    let svg = dir.path().join("p.svg");
    let (code, out, _) = invoke(&["polytope", &doc, "--svg", svg.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("vertices: (0, -1) (1, -1) (2, 0) (0, 0)"), "{out}");
    let body = fs::read_to_string(&svg).unwrap();
    assert!(body.starts_with("<svg"));
    assert!(body.contains("<polygon"));

    let (code, out, _) = invoke(&["polytope", &doc, "--svg", svg.to_str().unwrap(), "--flag", "2,1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("image area: 3/2"));
    assert!(fs::read_to_string(&svg)
        .unwrap()
        .contains("image at flag (ray 2, cone 1) area 3/2"));

    let zero = write(
        &dir,
        "zero.json",
        r#"{"rays":[[1,0],[0,1],[-1,1],[0,-1]],"divisor":[0,0,0,0]}"#,
    );
    let (code, out, _) = invoke(&["polytope", &zero, "--svg", svg.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("area: 0"));
    assert!(fs::read_to_string(&svg)
        .unwrap()
        .contains("<circle cx=\"0\" cy=\"0\" r=\"0.08\""));

    let neg = write(
        &dir,
        "neg.json",
        r#"{"rays":[[1,0],[0,1],[-1,1],[0,-1]],"divisor":[0,1,0,-1]}"#,
    );
    assert_eq!(
        invoke(&["polytope", &neg, "--svg", svg.to_str().unwrap()]).0,
        EXIT_FAILED
    );
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_flagvol");
    let dir = TempDir::new().unwrap();
    let good = hirz_doc(&dir, 2, 1, 3);
    let status = |args: &[&str]| Process::new(exe).args(args).output().unwrap();
    let out = status(&["report", &good, "--format", "json"]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"simplex_sum\":\"2\""));
    let bad = hirz_doc(&dir, 2, 1, 2);
    assert_eq!(status(&["report", &bad]).status.code(), Some(EXIT_FAILED));
    assert_eq!(
        status(&["sweep", "--l", "3..1", "--a", "1", "--b-extra", "1"])
            .status
            .code(),
        Some(EXIT_INPUT)
    );
    assert_eq!(status(&["nonsense"]).status.code(), Some(EXIT_INPUT));
    assert!(Path::new(exe).exists());
}
