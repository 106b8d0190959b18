mod common;

use std::fs;
use std::process::{Command, Stdio};

use common::{golden_dir, golden_name, oracle_text};

const SETS: [[&str; 3]; 3] = [["1", "1", "1"], ["l", "m", "n"], ["2", "5", "7"]];

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chromatic-hopf"))
}

#[test]
fn oracle_matches_committed_golden_files() {
    for set in SETS {
        let path = golden_dir().join(golden_name(&set));
        let text = oracle_text(&set);
        if std::env::var_os("CHROMATIC_HOPF_UPDATE_GOLDEN").is_some() {
            fs::write(&path, &text).unwrap();
        }
        let committed =
            fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(committed, text, "oracle drifted from {}", path.display());
    }
}

#[test]
fn derive_rtt_output_equals_golden_files() {
    let dir = tempfile::tempdir().unwrap();
    for set in SETS {
        let out = dir.path().join("rel.json");
        let status = bin()
            .args(["derive", "rtt", "--colours", &set.join(","), "--out"])
            .arg(&out)
            .stderr(Stdio::null())
            .status()
            .unwrap();
        assert!(status.success());
        let got = fs::read_to_string(&out).unwrap();
        let want = fs::read_to_string(golden_dir().join(golden_name(&set))).unwrap();
        assert_eq!(got, want, "colours {set:?}");
    }
}
