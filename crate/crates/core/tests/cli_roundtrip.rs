use std::process::Command;

use serde_json::Value;

fn symspec(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_symspec"))
        .args(args)
        .env_remove("SYMSPEC_BUDGET")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn colorings_written_by_color_verify() {
    let dir = tempfile::tempdir().unwrap();
    for scheme in ["dist", "middle", "frugal"] {
        for (k, n) in [(2, 1), (2, 4), (3, 3), (4, 2)] {
            let path = dir.path().join(format!("{scheme}-{k}-{n}.json"));
            let path = path.to_str().unwrap();
            let (code, _) = symspec(&[
                "color",
                "--k",
                &k.to_string(),
                "--n",
                &n.to_string(),
                "--scheme",
                scheme,
                "--out",
                path,
            ]);
            assert_eq!(code, 0);
            let (code, out) = symspec(&["verify", "--coloring", path]);
            assert_eq!(code, 0);
            let v: Value = serde_json::from_str(&out).unwrap();
            assert_eq!(v["distinguishing"], Value::Bool(true), "{scheme} {k} {n}");
        }
    }
}

#[test]
fn verify_with_separate_tree_file() {
    let dir = tempfile::tempdir().unwrap();
    let tree_path = dir.path().join("tree.json");
    let coloring_path = dir.path().join("coloring.json");
    let (_, tree) = symspec(&["tree", "--arms", "2,2,2"]);
    std::fs::write(&tree_path, tree).unwrap();
    std::fs::write(
        &coloring_path,
        r#"{"palette_size": 2, "colors": [0, 1, 0, 0, 0, 0, 0]}"#,
    )
    .unwrap();
    let (code, out) = symspec(&[
        "verify",
        "--tree",
        tree_path.to_str().unwrap(),
        "--coloring",
        coloring_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["distinguishing"], Value::Bool(false));
    assert_eq!(v["automorphisms"], serde_json::json!(2));
}

#[test]
fn big_spectra_print_exactly() {
    let (code, out) = symspec(&["spectrum", "--k", "10", "--n", "25"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["fix"].to_string(), format!("9{}", "0".repeat(24)));
    let (code, out) = symspec(&["spectrum", "--k", "3", "--n", "2", "--summary"]);
    assert_eq!(code, 0);
    assert!(out.contains("(3; 8, 6, 6, 6, 6)"), "{out}");
}

#[test]
fn oracle_spectrum_matches_closed_form() {
    let (_, closed) = symspec(&["spectrum", "--k", "2", "--n", "2"]);
    let (code, oracle) = symspec(&[
        "spectrum", "--k", "2", "--n", "2", "--oracle", "--jobs", "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(closed, oracle);
}

#[test]
fn budget_env_and_exit_codes() {
    let out = Command::new(env!("CARGO_BIN_EXE_symspec"))
        .args([
            "oracle",
            "paint-cost",
            "--k",
            "2",
            "--n",
            "3",
            "--colors",
            "3",
        ])
        .env("SYMSPEC_BUDGET", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));

    assert_eq!(symspec(&["tree", "--k", "6", "--n", "9"]).0, 2);
    assert_eq!(symspec(&["tree", "--k", "2"]).0, 1);
    assert_eq!(symspec(&["--version"]).0, 0);
}
