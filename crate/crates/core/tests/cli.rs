use std::process::Command;

use serde_json::Value;

fn gdalg(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gdalg")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, stdout, _) = gdalg(args);
    (code, serde_json::from_str(&stdout).unwrap())
}

#[test]
fn check_reports_holds() {
    let (code, r) = report(&["check", "--name", "gd1", "--map", "gd"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["verdict"], "holds");
    assert_eq!(r["status"], "ok");
    assert_eq!(r["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn check_exit_code_follows_expectation() {
    let (code, r) = report(&["check", "--name", "pgd1-printed", "--expect", "holds"]);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["verdict"], "fails");
    let (code, _) = report(&[
        "check",
        "--poly",
        "(circ x1 x2) - (circ x2 x1)",
        "--map",
        "gd",
        "--expect",
        "fails",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn dim_compares_formula_and_enumeration() {
    let (code, r) = report(&["dim", "--operad", "sgd", "--n", "4", "--method", "both"]);
    assert_eq!(code, 0);
    let row = &r["result"]["rows"][0];
    assert_eq!(row["formula"], "130");
    assert_eq!(row["enumeration"], "130");
    assert_eq!(row["match"], true);
}

#[test]
fn member_emits_certificate() {
    let (code, r) = report(&[
        "member",
        "--candidate",
        "s-ident",
        "--presentation",
        "gd",
        "--degree",
        "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["verdict"], "non-member");
    assert_eq!(r["result"]["certificate"]["kind"], "separating-functional");
    assert_eq!(r["result"]["certificate-verified"], true);
    let (code, _) = report(&[
        "member",
        "--candidate",
        "s-ident",
        "--presentation",
        "gd",
        "--expect",
        "member",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = [
        "koszul-dual",
        "--presentation",
        "gd",
        "--compare",
        "gd-dual",
        "--matrices",
    ];
    let (c1, a, _) = gdalg(&args);
    let (c2, b, _) = gdalg(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
}

#[test]
fn json_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("gdalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("basis.json");
    let (code, stdout, _) = gdalg(&["basis", "--operad", "sgd", "--n", "3", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 17);
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["result"]["count"], 17);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_with_two() {
    let (code, _, stderr) = gdalg(&["frobnicate"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("Usage"));
    let (code, _, stderr) = gdalg(&["member", "--candidate", "no-such", "--presentation", "gd"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("no-such"));
    let (code, _, _) = gdalg(&["dim", "--operad", "gd", "--n", "5"]);
    assert_eq!(code, 2);
}

#[test]
fn list_enumerates_builtins() {
    let (code, r) = report(&["--list"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = r["result"]["presentations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"gd") && names.contains(&"gd-3nilp"));
}

#[test]
fn white_and_preimage_commands() {
    let (code, r) = report(&["white", "--left", "as", "--right", "nov", "--compare", "l-alg,lod-der"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["compare"]["span-equal"], true);
    let (code, r) = report(&["preimage", "--monomial", "(pm x1 (lie (d x2) x3))"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["round-trip"], true);
    let (code, r) = report(&["special", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["complete"], true);
}

#[test]
fn check_reads_identity_files() {
    let dir = std::env::temp_dir().join(format!("gdalg_ids_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    std::fs::write(&good, "# comment\ngd1\n(circ (circ x1 x2) x3) - (circ (circ x1 x3) x2)\n\ns-ident  # trailing\n").unwrap();
    let (code, r) = report(&["check", "--file", good.to_str().unwrap(), "--map", "gd"]);
    assert_eq!(code, 0);
    let lines: Vec<u64> = r["result"]["identities"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["line"].as_u64().unwrap())
        .collect();
    assert_eq!(lines, [2, 3, 5]);

    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "gd1\n(circ (circ x1 x2) x3) - (circ x1 (circ x2 x3))\n").unwrap();
    let (code, r) = report(&["check", "--file", bad.to_str().unwrap(), "--map", "gd"]);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["identities"][1]["ok"], false);

    std::fs::write(&bad, "(circ x1\n").unwrap();
    let (code, _, stderr) = gdalg(&["check", "--file", bad.to_str().unwrap(), "--map", "gd"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 1"));
    let _ = std::fs::remove_dir_all(&dir);
}
