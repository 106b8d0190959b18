use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chromatic-hopf"))
        .args(args)
        .env_remove("CHROMATIC_HOPF_SEED")
        .stderr(Stdio::piped())
        .output()
        .unwrap()
}

fn reports(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn every_check_passes_symbolically() {
    for which in ["ybe", "coassoc", "counit", "antipode", "rtt"] {
        let out = run(&["check", which]);
        assert_eq!(out.status.code(), Some(0), "{which}");
        let r = reports(&out);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0]["passed"], true);
    }
}

#[test]
fn unit_colour_ybe() {
    let out = run(&["check", "ybe", "--colours", "1,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(reports(&out)[0]["context"]["lambda"], "1");
}

#[test]
fn random_sweep_is_seeded() {
    let a = run(&["check", "antipode", "--random", "4", "--seed", "9"]);
    let b = run(&["check", "antipode", "--random", "4", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(reports(&a).len(), 4);
}

#[test]
fn seed_falls_back_to_environment() {
    let via_flag = run(&["check", "ybe", "--random", "2", "--seed", "31"]);
    let via_env = Command::new(env!("CARGO_BIN_EXE_chromatic-hopf"))
        .args(["check", "ybe", "--random", "2"])
        .env("CHROMATIC_HOPF_SEED", "31")
        .stderr(Stdio::null())
        .output()
        .unwrap();
    assert_eq!(via_flag.stdout, via_env.stdout);
}

#[test]
fn pairing_commands() {
    let gram = run(&["pair", "gram", "--degree", "2", "--q", "3/2"]);
    assert_eq!(gram.status.code(), Some(0));
    let g = &reports(&gram)[0];
    assert_eq!(g["rank"], 14);
    assert_eq!(g["rows"].as_array().unwrap().len(), 21);
    assert_eq!(g["cols"].as_array().unwrap().len(), 14);

    let d = run(&["pair", "check-duality", "--colour", "n", "--degree", "2"]);
    assert_eq!(d.status.code(), Some(0));

    let t = run(&["pair", "t-check", "--degree", "2", "--q", "3/2"]);
    let r = &reports(&t)[0];
    assert_eq!(r["details"]["kernel_dim"], 7);
    assert_eq!(r["details"]["rtt_in_kernel"], true);
}

#[test]
fn usage_and_config_errors_exit_two() {
    assert_eq!(
        run(&["--model", "nope", "check", "ybe"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["check", "nope"]).status.code(), Some(2));
    assert_eq!(
        run(&["check", "ybe", "--colours", "l,0,n"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["check", "ybe", "--colours", "l,m"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["pair", "gram", "--degree", "1", "--q", "-1"])
            .status
            .code(),
        Some(2)
    );
    let e = run(&["--model", "nope", "check", "ybe"]);
    assert!(String::from_utf8_lossy(&e.stderr).contains("nope"));
}

#[test]
fn corrupted_selftest_exits_one() {
    let out = run(&["selftest", "--seed", "3", "--random", "2", "--corrupt-r"]);
    assert_eq!(out.status.code(), Some(1));
    let failed: Vec<String> = reports(&out)
        .iter()
        .filter(|r| r["passed"] == false)
        .map(|r| r["name"].as_str().unwrap().to_string())
        .collect();
    assert!(failed.contains(&"ybe.unit".to_string()), "{failed:?}");
}
