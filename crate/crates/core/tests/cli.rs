//! End-to-end tests of the `ih` binary: exit codes, output determinism,
//! file round trips, and the documented examples.

use std::process::{Command, Output};

fn ih(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ih"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn compute_marked_sphere_superperversity() {
    let out = ih(&[
        "compute",
        "--builtin",
        "sphere2",
        "--mark",
        "0",
        "--perversity",
        "gm-super",
        "--coefficients",
        "Z",
        "--mode",
        "g0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("IH_0 = 0"), "{text}");
    assert!(text.contains("IH_2 = Z"), "{text}");
    assert!(text.contains("[super]"), "{text}");
}

#[test]
fn compute_full_mode_ordinary_sphere() {
    let out = ih(&[
        "compute",
        "--builtin",
        "sphere2",
        "--perversity",
        "zero",
        "--mode",
        "full",
        "--coefficients",
        "Z",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("IH_0 = Z"), "{text}");
    assert!(text.contains("IH_1 = 0"), "{text}");
    assert!(text.contains("IH_2 = Z"), "{text}");
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args = [
        "compute",
        "--builtin",
        "torus",
        "--cone",
        "--perversity",
        "lower-middle",
        "--coefficients",
        "Z",
        "--output",
        "json",
    ];
    let a = ih(&args);
    let b = ih(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(parsed["provenance"]["perversity_kind"], "traditional");
}

#[test]
fn exit_codes() {
    // parse error: unknown flag
    let out = ih(&["compute", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    // parse error: unknown builtin
    let out = ih(&["compute", "--builtin", "nope", "--perversity", "zero"]);
    assert_eq!(out.status.code(), Some(2));
    // validation error: vertex not in the complex
    let out = ih(&[
        "compute",
        "--builtin",
        "sphere2",
        "--mark",
        "99",
        "--perversity",
        "zero",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // validation error: perversity too short for the dimension
    let out = ih(&["compute", "--builtin", "susp-torus", "--perversity", "0,0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn validate_reports_and_exit_code() {
    let ok = ih(&["validate", "--builtin", "susp-torus"]);
    assert!(ok.status.success());
    assert!(stdout(&ok).contains("link recursion: not checked"));

    // the closed cone has one-sided base facets, so the report fails (c)
    let cone = ih(&["validate", "--builtin", "sphere2", "--cone"]);
    assert_eq!(cone.status.code(), Some(3));
}

#[test]
fn transform_round_trip_through_file() {
    let dir = std::env::temp_dir().join("ih-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("marked.json");
    let out = ih(&[
        "transform",
        "--builtin",
        "sphere2",
        "--mark",
        "0,1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let direct = ih(&[
        "compute",
        "--builtin",
        "s2-marked-2",
        "--perversity",
        "gm-super",
        "--output",
        "json",
    ]);
    let from_file = ih(&[
        "compute",
        "--file",
        path.to_str().unwrap(),
        "--perversity",
        "gm-super",
        "--output",
        "json",
    ]);
    let a: serde_json::Value = serde_json::from_str(&stdout(&direct)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    assert_eq!(a["degrees"], b["degrees"]);
}

#[test]
fn oracle_cone_table_matches() {
    let out = ih(&[
        "oracle",
        "cone",
        "--link",
        "torus",
        "--perversity",
        "lower-middle",
        "--n",
        "3",
        "--output",
        "json",
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for row in parsed["rows"].as_array().unwrap() {
        assert_eq!(row["compact_match"], true, "{row}");
        assert_eq!(row["closed_match"], true, "{row}");
    }
}

#[test]
fn oracle_attaching_table() {
    let out = ih(&[
        "oracle",
        "attaching",
        "--link",
        "sphere1",
        "--perversity",
        "zero",
        "--n",
        "2",
        "--codim",
        "2",
        "--output",
        "json",
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for row in parsed["rows"].as_array().unwrap() {
        let degree = row["degree"].as_u64().unwrap();
        assert_eq!(row["iso_expected"], degree >= 2, "{row}");
        if degree >= 2 {
            assert_eq!(row["agrees"], true, "{row}");
        }
    }
}

#[test]
fn examples_lists_builtins_and_emits_json() {
    let out = ih(&["examples"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in ih_core::builtins::NAMES {
        assert!(text.contains(name), "missing {name}");
    }
    let emitted = ih(&["examples", "--emit", "torus"]);
    assert!(emitted.status.success());
    let x = ih_core::json::ComplexJson::parse(&stdout(&emitted)).unwrap();
    assert_eq!(x, ih_core::builtins::builtin("torus").unwrap());
}

#[test]
fn compute_with_relative_subcomplex_and_les() {
    // relative homology of the sphere against the closed star of vertex 3,
    // given inline as generators; with the LES check attached
    let out = ih(&[
        "compute",
        "--builtin",
        "sphere2",
        "--perversity",
        "zero",
        "--relative",
        "[[0,1,3],[0,2,3],[1,2,3]]",
        "--les",
        "--output",
        "json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["provenance"]["relative"], true);
    assert_eq!(parsed["les"]["all_exact"], true);
    // H_*(S^2, disk) = (0, 0, Z)
    assert_eq!(parsed["degrees"][2]["betti"], 1);
    assert_eq!(parsed["degrees"][0]["betti"], 0);
}

#[test]
fn dump_chains_writes_audit_json() {
    let dir = std::env::temp_dir().join("ih-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dump.json");
    let out = ih(&[
        "compute",
        "--builtin",
        "s2-marked-1",
        "--perversity",
        "gm-super",
        "--dump-chains",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let degrees = parsed.as_array().unwrap();
    assert_eq!(degrees.len(), 3);
    // degree 0: three allowable regular vertices
    assert_eq!(degrees[0]["allowable"].as_array().unwrap().len(), 3);
}

#[test]
fn coefficient_spec_file() {
    let dir = std::env::temp_dir().join("ih-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("coeffs.json");
    std::fs::write(&path, r#"{"ring": "Fp:2", "mode": "full", "rank": 1}"#).unwrap();
    let out = ih(&[
        "compute",
        "--builtin",
        "rp2",
        "--perversity",
        "zero",
        "--coefficients",
        path.to_str().unwrap(),
        "--output",
        "json",
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["provenance"]["ring"], "Fp:2");
    // F2 Betti numbers of the projective plane
    assert_eq!(parsed["degrees"][0]["betti"], 1);
    assert_eq!(parsed["degrees"][1]["betti"], 1);
    assert_eq!(parsed["degrees"][2]["betti"], 1);
}

#[test]
fn rank_flag_scales_the_theory() {
    let out = ih(&[
        "compute", "--builtin", "sphere2", "--perversity", "zero", "--mode", "full",
        "--rank", "3", "--output", "json",
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["provenance"]["rank"], 3);
    assert_eq!(parsed["degrees"][0]["betti"], 3);
    assert_eq!(parsed["degrees"][2]["betti"], 3);
}

#[test]
fn oracle_accepts_link_from_file() {
    let dir = std::env::temp_dir().join("ih-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("link.json");
    let emitted = ih(&["examples", "--emit", "sphere1"]);
    std::fs::write(&path, stdout(&emitted)).unwrap();
    let out = ih(&[
        "oracle", "cone", "--link", path.to_str().unwrap(), "--perversity", "zero",
        "--output", "json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["n"], 2);
    for row in parsed["rows"].as_array().unwrap() {
        assert_eq!(row["compact_match"], true);
        assert_eq!(row["closed_match"], true);
    }
}
