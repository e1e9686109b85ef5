//! Binary-level determinism acceptance: repeated runs of every report-emitting
//! subcommand must produce byte-identical output.

use std::process::Command;
use std::time::Instant;

fn run_once(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_braidform"))
        .args(args)
        .env_remove("BRAIDFORM_TOLERANCE")
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

#[test]
fn criterion_9_byte_identical_reports() {
    let started = Instant::now();
    let commands: Vec<Vec<&str>> = vec![
        vec!["catalog", "--json"],
        vec![
            "check-braid-eq",
            "--matrix",
            "ex1:theta=0.8,eps=-1",
            "--json",
        ],
        vec!["check-ybe", "--matrix", "ex4:theta=pi/5", "--json"],
        vec![
            "invariant-dim",
            "--matrix",
            "ex3:theta=pi/3",
            "--n",
            "2..8",
            "--json",
        ],
        vec![
            "invariant-dim",
            "--matrix",
            "ex2:theta=1.1",
            "--n",
            "2..6",
            "--method",
            "dense",
            "--json",
        ],
        vec![
            "invariant-basis",
            "--matrix",
            "ex2:theta=0.9",
            "--n",
            "5",
            "--json",
        ],
        vec![
            "verify-projection",
            "--matrix",
            "ex3:theta=pi/3",
            "--h0",
            "2",
            "--n",
            "3",
            "--json",
        ],
        vec![
            "betti",
            "--beta",
            "1,2,1",
            "--n",
            "4",
            "--matrix",
            "ex3:theta=pi/3",
            "--json",
        ],
        vec![
            "supertrace",
            "--chi",
            "-2",
            "--matrix",
            "ex2:theta=pi/4",
            "--nmax",
            "30",
            "--json",
        ],
        vec![
            "sweep",
            "--tags",
            "all",
            "--theta-grid",
            "0.5,1.3,2.1",
            "--n",
            "2..6",
            "--format",
            "csv",
        ],
    ];
    for args in &commands {
        let first = run_once(args);
        let second = run_once(args);
        assert_eq!(first, second, "non-deterministic output for {args:?}");
        assert!(!first.is_empty(), "no output for {args:?}");
    }
    println!(
        "criterion 9 (byte-identical CLI reports): PASS in {:.2}s",
        started.elapsed().as_secs_f64()
    );
}
