use std::process::{Command, Output};

use serde_json::Value;

fn steinberg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steinberg")).args(args).env_remove("STEINBERG_SEED").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn socle_label_gl3_2_mod7() {
    let out = steinberg(&["socle-label", "--n", "3", "--q", "2", "--ell", "7"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["e"], 3);
    assert_eq!(v["mu0"], "(2,1)");
}

#[test]
fn comp_length_unitary() {
    let out = steinberg(&["comp-length", "--type", "gu", "--n", "4", "--q", "2", "--ell", "5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!((v["etilde"].clone(), v["linear"].clone(), v["length"].clone()), (2.into(), true.into(), 2.into()));
}

#[test]
fn comp_length_non_linear_prime_is_an_error() {
    // q = 2, ℓ = 3: q^1 ≡ -1
    let out = steinberg(&["comp-length", "--type", "gu", "--n", "4", "--q", "2", "--ell", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "non_linear_prime");
}

#[test]
fn table_2f4() {
    let v = json(&steinberg(&["table", "--type", "2F4", "--e", "2"]));
    assert_eq!(v["mu0"], "sigma_2");
    let v = json(&steinberg(&["table", "--type", "2F4", "--e", "4"]));
    assert_eq!(v["mu0"], "eps_1");
    assert_eq!(v["lambda0_a"], 12);
    let out = steinberg(&["table", "--type", "B2", "--e", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_rejects_defining_characteristic() {
    let out = steinberg(&["verify", "--n", "2", "--q", "2", "--ell", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "same_characteristic");
}

#[test]
fn verify_irreducible_branch() {
    let out = steinberg(&["verify", "--n", "2", "--q", "2", "--ell", "5"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["factors"], serde_json::json!([{"dim": 2, "mult": 1}]));
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"] == true));
    let crit = checks.iter().find(|c| c["name"] == "irreducibility_criterion").unwrap();
    assert!(crit["details"].as_str().unwrap().contains("irreducible = true"));
}

#[test]
fn verify_is_reproducible() {
    let args = ["verify", "--n", "3", "--q", "2", "--ell", "7", "--seed", "5"];
    let a = steinberg(&args);
    let b = steinberg(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 5);
    assert_eq!(v["factors"], serde_json::json!([{"dim": 3, "mult": 1}, {"dim": 5, "mult": 1}]));
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_steinberg"))
        .args(["verify", "--n", "2", "--q", "3", "--ell", "2"])
        .env("STEINBERG_SEED", "77")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json(&out)["seed"], 77);
}

#[test]
fn cap_is_a_usage_error() {
    let out = steinberg(&["verify", "--n", "3", "--q", "3", "--ell", "2", "--max-index", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "cap_exceeded");
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(steinberg(&["verify", "--n", "x"]).status.code(), Some(2));
    assert_eq!(steinberg(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn hecke_check_and_group_report() {
    let v = json(&steinberg(&["hecke-check", "--n", "2", "--q", "2", "--ell", "3"]));
    assert_eq!(v["relations_ok"], true);
    assert_eq!(v["lemma22_ok"], true);
    assert_eq!(v["eigenspace_dim"], 2);
    let v = json(&steinberg(&["group-report", "--n", "2", "--q", "3"]));
    assert_eq!(v["orders"]["G"], "48");
    assert_eq!(v["index"], "4");
    assert_eq!(v["length_distribution"], serde_json::json!([1, 1]));
    assert_eq!(v["bruhat_selftest"], "pass");
}

#[test]
fn text_format() {
    let out = steinberg(&["--format", "text", "verify", "--n", "2", "--q", "2", "--ell", "3"]);
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("24/24 checks passed"));
    assert!(s.contains(" ms "));
}
