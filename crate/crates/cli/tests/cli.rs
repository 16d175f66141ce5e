//! End-to-end checks of the binary: exit codes, JSON stability across
//! runs and worker counts, and the documented subcommand surfaces.

use std::io::Write;
use std::process::{Command, Output};

fn cartan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cartan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("cartan-cli-{}-{name}", std::process::id()));
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

#[test]
fn classify_reports_almost_affine() {
    let path = write_temp("h3_93.json", r#"{"rows":[[2,-2,-2],[-2,2,-2],[-2,-2,2]]}"#);
    let out = cartan(&["classify", "--input", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"almost_affine\""), "got: {text}");
}

#[test]
fn classify_handles_super_input() {
    let path = write_temp(
        "s3_4.json",
        r#"{"parity":"eoe","rows":[[2,-1,-2],[-1,1,-1],[-2,-1,2]]}"#,
    );
    let out = cartan(&["classify", "--input", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("\"almost_affine\""));
}

#[test]
fn malformed_input_exits_2() {
    let path = write_temp("bad.json", "not json at all");
    let out = cartan(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn invalid_matrix_exits_2() {
    let path = write_temp("asym.json", r#"{"rows":[[2,-1],[0,2]]}"#);
    let out = cartan(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_exits_2() {
    let out = cartan(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_catalog_passes_on_bundled_tables() {
    let out = cartan(&["verify-catalog"]);
    assert!(
        out.status.success(),
        "verify-catalog failed: {}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("97/97 entries pass"));
    assert!(text.contains("36/36 entries pass"));
}

#[test]
fn verify_catalog_fails_on_tampered_entry() {
    // identity in place of the listed witness breaks the pair check
    let doc = r#"{"section":"sym","entries":[{
        "s_name":"S3_4","s":{"rows":[[2,-1,-2],[-1,1,-1],[-2,-1,2]]},
        "h_name":"H3_4","h":{"rows":[[2,-2,-1],[-2,2,-1],[-2,-2,2]]},
        "perm":[1,2,3],"multi":false}]}"#;
    let path = write_temp("tampered.json", doc);
    let out = cartan(&["verify-catalog", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("FAIL"));
}

#[test]
fn enumerate_json_is_stable_across_worker_counts() {
    let one = cartan(&[
        "enumerate",
        "--rank",
        "3",
        "--jobs",
        "1",
        "--format",
        "json",
    ]);
    let four = cartan(&[
        "enumerate",
        "--rank",
        "3",
        "--jobs",
        "4",
        "--format",
        "json",
    ]);
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
    let again = cartan(&[
        "enumerate",
        "--rank",
        "3",
        "--jobs",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(one.stdout, again.stdout);
}

#[test]
fn enumerate_super_rank_3_counts() {
    let out = cartan(&[
        "enumerate",
        "--rank",
        "3",
        "--super",
        "--sym",
        "sym",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // header plus the 48 symmetrizable rank-3 super classes
    assert_eq!(text.lines().count(), 49, "got: {}", text.lines().count());
}

#[test]
fn desuperize_round_trip() {
    let s = write_temp("s3_46.json", r#"{"rows":[[1,-1,-1],[-1,1,-1],[-1,-1,1]]}"#);
    let out = cartan(&[
        "desuperize",
        "--input",
        s.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        json["rows"],
        serde_json::json!([[2, -2, -2], [-2, 2, -2], [-2, -2, 2]])
    );
    assert_eq!(json["parity"], "eee");
}

#[test]
fn superize_multiplicity_of_h3_113() {
    let h = write_temp("h3_113.json", r#"{"rows":[[2,-2,0],[-2,2,-2],[0,-2,2]]}"#);
    let out = cartan(&[
        "superize",
        "--input",
        h.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["multiplicity"], 5);
}

#[test]
fn geometry_emits_fraction_strings() {
    let a2 = write_temp("a2.json", r#"{"rows":[[2,-1],[-1,2]]}"#);
    let out = cartan(&[
        "geometry",
        "--input",
        a2.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["cos2"][0][1], "-1/4");
    assert_eq!(json["signature"], serde_json::json!([2, 0, 0]));
}

#[test]
fn geometry_rejects_non_symmetrizable_input() {
    let ns = write_temp("ns3_1.json", r#"{"rows":[[2,-1,-1],[-1,1,-1],[-2,-1,2]]}"#);
    let out = cartan(&["geometry", "--input", ns.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn equivalent_emits_witness() {
    let a = write_temp("eq_a.json", r#"{"rows":[[2,-1],[-2,2]]}"#);
    let b = write_temp("eq_b.json", r#"{"rows":[[2,-2],[-1,2]]}"#);
    let out = cartan(&["equivalent", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["equivalent"], true);
    assert_eq!(json["permutation"], serde_json::json!([2, 1]));
}

#[test]
fn catalog_dir_override_is_honored() {
    let dir = std::env::temp_dir().join(format!("cartan-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("catalog_sym.json"),
        r#"{"section":"sym","entries":[]}"#,
    )
    .unwrap();
    std::fs::write(
        dir.join("catalog_nonsym.json"),
        r#"{"section":"nonsym","entries":[]}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_cartan"))
        .args(["verify-catalog"])
        .env("CARTAN_CATALOG_DIR", &dir)
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0/0 entries pass"));
}

#[test]
fn help_mentions_the_json_schema() {
    for sub in ["classify", "superize", "geometry"] {
        let out = cartan(&[sub, "--help"]);
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(
            text.contains("Matrix JSON object"),
            "{sub} --help lacks schema"
        );
    }
}
