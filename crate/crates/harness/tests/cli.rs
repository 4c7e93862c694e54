//! End-to-end checks of the command-line binary: flag handling, output
//! formats, exit codes, reproducibility.

use std::process::Command;

fn harness() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lrpc-harness"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let output = harness().args(args).output().expect("binary runs");
    (
        String::from_utf8(output.stdout).unwrap(),
        String::from_utf8(output.stderr).unwrap(),
        output.status.code().unwrap_or(-1),
    )
}

#[test]
fn csv_output_has_the_documented_columns() {
    let (stdout, _, code) = run(&[
        "--m",
        "20",
        "--r",
        "3",
        "--d",
        "3",
        "--c",
        "1",
        "--t",
        "2",
        "--trials",
        "25",
        "--seed",
        "5",
        "--max-rounds",
        "256",
        "--output",
        "csv",
    ]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "q,m,n,k,r,d,c,t,algorithm,trials,successes,degenerate,success_rate,mean_rounds,seed,wall_ms"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), 16);
    assert_eq!(&row[..7], &["2", "20", "9", "1", "3", "3", "1"]);
    assert_eq!(row[8], "intersect");
    assert_eq!(row[9], "25");
}

#[test]
fn json_output_is_well_formed() {
    let (stdout, _, code) = run(&[
        "--m",
        "20",
        "--r",
        "3",
        "--d",
        "3",
        "--c",
        "1",
        "--t",
        "2",
        "--trials",
        "10",
        "--seed",
        "5",
        "--max-rounds",
        "256",
        "--verbose",
    ]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["schema"], "lrpc-experiment/1");
    assert_eq!(value["trials"], 10);
    assert_eq!(value["trial_reports"].as_array().unwrap().len(), 10);
    assert!(value["estimates"]["syndrome_fill"]["log_q_failure"].is_i64());
}

#[test]
fn sweep_emits_one_row_per_value() {
    let (stdout, _, code) = run(&[
        "--m",
        "20",
        "--r",
        "3",
        "--d",
        "3",
        "--c",
        "1",
        "--t",
        "2",
        "--trials",
        "10",
        "--seed",
        "5",
        "--max-rounds",
        "256",
        "--output",
        "csv",
        "--sweep",
        "trials",
        "--values",
        "5,10,15",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 4);
    for (line, trials) in lines[1..].iter().zip(["5", "10", "15"]) {
        assert_eq!(line.split(',').nth(9), Some(trials));
    }
}

#[test]
fn config_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &[
            "--q", "4", "--m", "10", "--r", "2", "--d", "2", "--c", "1", "--t", "2",
        ],
        &["--m", "10", "--r", "3", "--d", "5", "--c", "1", "--t", "2"], // rd > m
        &["--m", "20", "--r", "3", "--d", "3"],                         // neither n nor c
        &["--m", "20", "--r", "3", "--d", "3", "--n", "9", "--c", "2"], // inconsistent
    ];
    for args in cases {
        let (_, stderr, code) = run(args);
        assert_eq!(code, 2, "args {args:?} should exit 2: {stderr}");
        assert!(
            stderr.contains("error"),
            "missing error message for {args:?}"
        );
    }
}

#[test]
fn resource_bounds_exit_3() {
    // The thresholding decoder's multiset at these parameters exceeds the
    // default candidate cap.
    let (_, stderr, code) = run(&[
        "--m",
        "41",
        "--r",
        "5",
        "--d",
        "5",
        "--c",
        "1",
        "--algorithm",
        "multiset",
        "--trials",
        "1",
    ]);
    assert_eq!(code, 3, "stderr: {stderr}");
}

#[test]
fn identical_seeds_reproduce_identical_tables() {
    let args = [
        "--m",
        "20",
        "--r",
        "3",
        "--d",
        "3",
        "--c",
        "1",
        "--t",
        "2",
        "--trials",
        "30",
        "--seed",
        "9",
        "--max-rounds",
        "256",
        "--output",
        "csv",
    ];
    let (a, _, _) = run(&args);
    let mut with_parallelism = args.to_vec();
    with_parallelism.extend(["--parallelism", "1"]);
    let (b, _, _) = run(&with_parallelism);
    let strip = |table: &str| {
        table
            .lines()
            .map(|line| {
                line.rsplit_once(',')
                    .map(|(head, _)| head.to_string())
                    .unwrap()
            })
            .collect::<Vec<_>>()
    };
    // Identical up to the trailing wall-clock column.
    assert_eq!(strip(&a), strip(&b));
}
