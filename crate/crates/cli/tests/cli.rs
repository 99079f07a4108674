use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qmk(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmk"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn qmk")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "status {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn column(v: &Value, key: &str) -> Vec<String> {
    v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[key].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn moments_of_a_linear_profile() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&qmk(
        &["moments", "--coeffs", "1", "--kmax", "2"],
        dir.path(),
    ));
    assert_eq!(v["agree"], true);
    assert_eq!(column(&v, "m_derivative"), ["1", "3/2", "10/3"]);
    assert_eq!(column(&v, "d_contour"), ["1", "2", "6"]);
    assert_eq!(column(&v, "d_relation"), ["1", "2", "6"]);
}

#[test]
fn zero_profile_has_unit_d_moments() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&qmk(
        &["moments", "--coeffs", "", "--kmax", "6"],
        dir.path(),
    ));
    assert!(column(&v, "d_derivative").iter().all(|d| d == "1"));
}

#[test]
fn truncated_profile_needs_enough_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let out = qmk(
        &["moments", "--coeffs", "1", "--truncated", "--kmax", "4"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn finite_moments_of_a_signature() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&qmk(
        &["finite", "--lambda", "0,0", "--kmax", "1"],
        dir.path(),
    ));
    assert_eq!(column(&v, "m"), ["1", "1/4"]);
    assert_eq!(column(&v, "d"), ["1", "1/2"]);
    let v = json(&qmk(
        &["finite", "--tensor", "1,0;1,0", "--kmax", "2"],
        dir.path(),
    ));
    assert_eq!(column(&v, "d")[0], "1");
}

#[test]
fn conflicting_sources_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = qmk(
        &["finite", "--lambda", "1,0", "--tensor", "1,0;1,0"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exact_families_converge() {
    let dir = tempfile::tempdir().unwrap();
    for (family, sizes) in [("trivial", "8,16"), ("tensor", "4,8")] {
        let v = json(&qmk(
            &[
                "converge",
                "--family",
                family,
                "--sizes",
                sizes,
                "--samples",
                "50",
                "--kmax",
                "2",
            ],
            dir.path(),
        ));
        assert_eq!(v["levels"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn too_few_samples_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = qmk(
        &[
            "converge",
            "--family",
            "block",
            "--sizes",
            "8",
            "--samples",
            "5",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "converge",
        "--family",
        "block",
        "--sizes",
        "8",
        "--samples",
        "200",
        "--kmax",
        "2",
        "--seed",
        "5",
    ];
    let a = qmk(&args, dir.path());
    let b = qmk(&args, dir.path());
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let mut other = args;
    other[10] = "6";
    assert_ne!(qmk(&other, dir.path()).stdout, a.stdout);
}

#[test]
fn csv_output_has_a_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = qmk(
        &["--format", "csv", "moments", "--coeffs", "1", "--kmax", "2"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("k,m_derivative,m_contour,d_derivative,d_contour,d_relation")
    );
    assert_eq!(lines.nth(1), Some("1,3/2,3/2,2,2,2"));
}

#[test]
fn gallery_pair_round_trips_through_transform() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let out = qmk(
        &[
            "gallery",
            "plancherel",
            "--gamma",
            "1",
            "--grid",
            "1000",
            "--out",
            "pl.json",
        ],
        p,
    );
    assert!(out.status.success());
    let v: Value =
        serde_json::from_str(&std::fs::read_to_string(p.join("pl.json")).unwrap()).unwrap();
    let item = &v["items"][0];
    assert!(item["r_defect"].as_f64().unwrap() < 1e-3);
    std::fs::write(p.join("psi.json"), item["density"].to_string()).unwrap();
    std::fs::write(p.join("w.json"), item["diagram"].to_string()).unwrap();

    for (dir, input) in [
        ("psi2w", "psi.json"),
        ("quantize", "psi.json"),
        ("w2psi", "w.json"),
        ("w2mu", "w.json"),
    ] {
        let v = json(&qmk(
            &["transform", "--direction", dir, "--input", input],
            p,
        ));
        let d = v["probe_defect"].as_f64().unwrap();
        assert!(d < 1e-3, "{dir}: {d}");
    }

    let w = json(&qmk(
        &["transform", "--direction", "psi2w", "--input", "psi.json"],
        p,
    ));
    let (ours, theirs) = (&w["result"]["values"], &item["diagram"]["values"]);
    let (ours, theirs) = (ours.as_array().unwrap(), theirs.as_array().unwrap());
    assert_eq!(ours.len(), theirs.len());
    let worst = ours
        .iter()
        .zip(theirs)
        .map(|(a, b)| (a.as_f64().unwrap() - b.as_f64().unwrap()).abs())
        .fold(0.0, f64::max);
    assert!(worst < 1e-2, "{worst}");
}

#[test]
fn dequantize_rejects_a_non_quantized_density() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(qmk(
        &[
            "gallery",
            "plancherel",
            "--part",
            "density",
            "--out",
            "pl.json"
        ],
        p
    )
    .status
    .success());
    let v: Value =
        serde_json::from_str(&std::fs::read_to_string(p.join("pl.json")).unwrap()).unwrap();
    std::fs::write(p.join("psi.json"), v["items"][0]["density"].to_string()).unwrap();
    let out = qmk(
        &[
            "transform",
            "--direction",
            "dequantize",
            "--input",
            "psi.json",
        ],
        p,
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_direction_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = qmk(&["transform", "--direction", "sideways"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = qmk(&["selftest"], dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
