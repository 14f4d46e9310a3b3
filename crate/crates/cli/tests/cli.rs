use std::f64::consts::PI;
use std::process::{Command, Output};

use hypcyc::{
    angles, defect, embed::from_json, embed_cyclic, jacobian, radius, Model, SideLengths,
};
use serde_json::Value;

fn hypcyc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypcyc"))
        .args(args)
        .env_remove("HYPCYC_TOL")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = hypcyc(&full);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn sides(v: &[f64]) -> SideLengths {
    SideLengths::from_slice(v).unwrap()
}

fn significant_digits(s: &str) -> usize {
    let mant = s.split('e').next().unwrap();
    mant.chars()
        .filter(|c| c.is_ascii_digit())
        .collect::<String>()
        .trim_start_matches('0')
        .len()
}

#[test]
fn equilateral_radius_to_fifteen_digits() {
    let o = hypcyc(&["radius", "--sides", "1,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let got: f64 = text.trim().parse().unwrap();
    let want = (0.5f64.sinh() / (PI / 3.0).sin()).asinh();
    assert!(
        (got - want).abs() <= 5e-16 * want.max(1.0) * 10.0,
        "{got} {want}"
    );
    assert_eq!(significant_digits(text.trim()), 15);
    assert_eq!(text.trim(), hypcyc_cli::fmt_sig(want, 15));
}

#[test]
fn long_triple_is_not_realizable() {
    let o = hypcyc(&["classify", "--sides", "10,1,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o).trim(), "not-realizable");
}

#[test]
fn square_defect_at_zero_radius() {
    let o = hypcyc(&["defect", "--sides", "1,1,1,1", "--R", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let got: f64 = stdout(&o).trim().parse().unwrap();
    let want = 2.0 * PI - 8.0 * ((PI / 4.0).cos() / 0.5f64.cosh()).asin();
    assert!((got - want).abs() <= 1e-14, "{got} {want}");
}

#[test]
fn json_output_parses_back_to_library_values() {
    let v = [0.7, 1.3, 0.9, 1.1];
    let d = sides(&v);
    let args = "0.7,1.3,0.9,1.1";

    let r = json(&["radius", "--sides", args]);
    assert_eq!(
        r["J"].as_f64().unwrap().to_bits(),
        radius(&d).unwrap().j.to_bits()
    );

    let a = json(&["angles", "--sides", args]);
    let lib = angles(&d).unwrap();
    for (key, want) in [("alpha", &lib.alpha), ("beta", &lib.beta), ("nu", &lib.nu)] {
        let got: Vec<f64> = a[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_f64().unwrap())
            .collect();
        assert_eq!(&got, want, "{key}");
    }

    let dd = json(&["defect", "--sides", args, "--R", "0.4"]);
    assert_eq!(dd["defect"].as_f64().unwrap(), defect(&d, 0.4).unwrap());

    let jac = json(&["jacobian", "--sides", args, "--R", "0.4"]);
    let lib = jacobian(&d, 0.4).unwrap();
    let got: Vec<f64> = jac["dDefect"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(got, lib.d_defect);
}

#[test]
fn embedding_json_round_trips() {
    for model in ["disk", "uhp"] {
        let o = hypcyc(&[
            "embed",
            "--sides",
            "1,1.9,1.2",
            "--model",
            model,
            "--format",
            "json",
        ]);
        assert_eq!(o.status.code(), Some(0));
        let e = from_json(&stdout(&o)).unwrap();
        let m = if model == "disk" {
            Model::Disk
        } else {
            Model::Uhp
        };
        assert_eq!(e, embed_cyclic(&sides(&[1.0, 1.9, 1.2]), m).unwrap());
    }
}

#[test]
fn svg_output() {
    let o = hypcyc(&["embed", "--sides", "1,1,1,1", "--format", "svg"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
    assert!(s.contains(r#"width="800""#));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["radius", "--sides", "1,2"],
        vec!["radius", "--sides", "1,-1,1"],
        vec!["radius", "--sides", "1,a,1"],
        vec!["radius"],
        vec!["frobnicate"],
        vec!["defect", "--sides", "1,1,1", "--R", "-1"],
        vec!["radius", "--sides", "1,1,1,1,1", "--method", "closed"],
        vec!["--tol", "1e-3", "classify", "--sides", "1,1,1"],
    ] {
        let o = hypcyc(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn tolerance_from_environment() {
    let bin = env!("CARGO_BIN_EXE_hypcyc");
    let run = |tol: &str| {
        Command::new(bin)
            .args(["classify", "--sides", "1,1,1"])
            .env("HYPCYC_TOL", tol)
            .output()
            .unwrap()
    };
    assert_eq!(run("1e-10").status.code(), Some(0));
    assert_eq!(run("1e-16").status.code(), Some(1));
    assert_eq!(run("abc").status.code(), Some(1));
}

#[test]
fn closed_and_iterative_methods_agree() {
    for s in ["1,1.5,1.2", "0.5,0.6,0.7,1.6"] {
        let a: f64 = stdout(&hypcyc(&["radius", "--sides", s, "--method", "closed"]))
            .trim()
            .parse()
            .unwrap();
        let b: f64 = stdout(&hypcyc(&["radius", "--sides", s, "--method", "bisect"]))
            .trim()
            .parse()
            .unwrap();
        assert!((a - b).abs() <= 1e-13 * a, "{a} {b}");
    }
}

#[test]
fn radius_of_unrealizable_or_horocyclic_exits_two() {
    assert_eq!(
        hypcyc(&["radius", "--sides", "10,1,1"]).status.code(),
        Some(2)
    );
    let h = hypcyc::h0(&[1.0, 1.0]).unwrap();
    let s = format!("{h:?},1,1");
    assert_eq!(hypcyc(&["radius", "--sides", &s]).status.code(), Some(2));
    assert_eq!(
        stdout(&hypcyc(&["classify", "--sides", &s])).trim(),
        "horocyclic(0)"
    );
}

#[test]
fn sweep_table() {
    let o = hypcyc(&[
        "sweep",
        "--template",
        "1,1,1",
        "--vary",
        "0",
        "--from",
        "0.5",
        "--to",
        "3",
        "--steps",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines.len(), 7);
    assert!(lines[0].starts_with("d0\tclass"));
    assert!(lines[1].contains("centered") && lines[6].contains("not-realizable"));
}

#[test]
fn batch_file() {
    let dir = std::env::temp_dir().join(format!("hypcyc-batch-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tuples.txt");
    std::fs::write(&path, "# tuples\n1,1,1\n10,1,1\n\n0.5,0.6,0.7,1.6\n").unwrap();
    let o = hypcyc(&["--json", "batch", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1]["class"]["tag"], "not-realizable");
    assert_eq!(rows[2]["line"], 5);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(hypcyc(&["--help"]).status.code(), Some(0));
    assert_eq!(hypcyc(&["--version"]).status.code(), Some(0));
}
