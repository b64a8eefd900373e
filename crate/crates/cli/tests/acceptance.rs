//! CLI acceptance: JSON reports are byte-identical across thread counts
//! and across consecutive runs.

use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run_json(args: &[&str], threads: Option<usize>) -> (String, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_moment-angle"));
    cmd.args(args).arg("--output").arg("json");
    if let Some(t) = threads {
        cmd.arg("--threads").arg(t.to_string());
    }
    let out = cmd.output().expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf-8 output"),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn criterion_09_json_determinism() {
    let cases: Vec<(&str, PathBuf, Vec<&str>)> = vec![
        ("tightness", fixture("rp2_6.facets"), vec!["-p", "2"]),
        ("hochster", fixture("torus7.facets"), vec!["-p", "2"]),
        ("double", fixture("c4.facets"), vec!["-p", "2"]),
        ("duality", fixture("c3.facets"), vec!["-p", "2"]),
        ("tightness", fixture("torus9.facets"), vec!["-p", "2"]),
        ("betti", fixture("rp2_6.facets"), vec!["-p", "3"]),
    ];
    let max = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(4);
    for (sub, file, extra) in &cases {
        let file = file.to_str().unwrap();
        let mut args = vec![*sub, file];
        args.extend(extra.iter().copied());
        let (baseline, code) = run_json(&args, Some(1));
        assert_eq!(code, 0, "{sub} on {file} must succeed");
        assert!(!baseline.is_empty());
        for threads in [Some(4), Some(max), None] {
            let (other, code) = run_json(&args, threads);
            assert_eq!(code, 0);
            assert_eq!(
                other, baseline,
                "{sub} on {file} differs between 1 and {threads:?} threads"
            );
        }
        // two consecutive identical invocations
        let (again, _) = run_json(&args, Some(1));
        assert_eq!(again, baseline, "{sub} on {file} differs across consecutive runs");
    }
    println!(
        "[PASS] criterion 9: {} subcommand/fixture pairs produce byte-identical JSON over threads {{1, 4, {max}, default}} and across consecutive runs",
        cases.len()
    );
}
