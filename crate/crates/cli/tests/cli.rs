use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_satisficing"))
}

fn run(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or_default()).unwrap();
    drop(input);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn constructed_travelers_solve_to_the_diagonal_and_corner() {
    let game = run(&["construct", "travelers", "--max-claim", "100"], None);
    assert!(game.status.success());
    let out = run(&["solve", "--k", "2,2"], Some(&game.stdout));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let profiles: Vec<(usize, usize)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let p = l.split(',').nth(1).unwrap();
            let (a, b) = p.split_once(' ').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    // Action index 0 is the claim 2.
    let mut want: Vec<(usize, usize)> = (0..99).map(|i| (i, i)).collect();
    want.extend([(0, 1), (1, 0), (0, 2), (2, 0)]);
    want.sort();
    assert_eq!(profiles, want);
}

#[test]
fn large_thresholds_select_everything() {
    let game = run(&["construct", "counterexample", "--n", "3", "--m", "3"], None);
    let out = run(&["solve", "--k", "5", "--format", "json"], Some(&game.stdout));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 27);
    let none = run(&["solve", "--k", "2"], Some(&game.stdout));
    assert_eq!(stdout(&none), "index,profile\n");
}

#[test]
fn outputs_do_not_depend_on_workers() {
    let cases: [&[&str]; 4] = [
        &[
            "prevalence",
            "--n",
            "8",
            "--m",
            "2",
            "--spec",
            "d=0,z=1",
            "--spec",
            "d=1,k=2",
            "--samples",
            "3000",
        ],
        &[
            "sample-gamma",
            "--m",
            "3x2x2",
            "--spec",
            "d=1,k=2,S=0",
            "--samples",
            "3000",
            "--format",
            "json",
        ],
        &[
            "dynamics", "--n", "6", "--m", "3", "--games", "30", "--runs", "2", "--format", "json",
        ],
        &["check-axioms", "--max-agents", "2", "--actions", "3", "--k", "2"],
    ];
    for args in cases {
        let outs: Vec<Vec<u8>> = ["1", "2", "8"]
            .iter()
            .map(|w| {
                let mut a = args.to_vec();
                a.extend(["--workers", w, "--seed", "77"]);
                let o = run(&a, None);
                assert_eq!(
                    o.status.code(),
                    Some(0),
                    "{args:?}: {}",
                    String::from_utf8_lossy(&o.stderr)
                );
                o.stdout
            })
            .collect();
        assert!(outs.windows(2).all(|w| w[0] == w[1]), "{args:?}");
    }
}

#[test]
fn randomized_output_starts_with_the_seed() {
    let out = run(&["sample-gamma", "--n", "3", "--m", "2", "--samples", "100"], None);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# seed=20240601"));
    assert_eq!(
        lines.next(),
        Some("n,m,d,|S|,k,z,samples,estimate,ci_low,ci_high,poisson_ref,chen_stein_bound,seed")
    );
    let seeded = run(
        &[
            "sample-gamma",
            "--n",
            "3",
            "--m",
            "2",
            "--samples",
            "100",
            "--seed",
            "5",
        ],
        None,
    );
    assert!(stdout(&seeded).starts_with("# seed=5\n"));
}

#[test]
fn prevalence_reproduces_the_nash_row() {
    let out = run(
        &[
            "prevalence",
            "--n",
            "12",
            "--m",
            "2",
            "--spec",
            "d=0,z=1",
            "--samples",
            "10000",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row = text.lines().nth(2).unwrap();
    assert!(row.ends_with(",pass"), "{row}");
}

#[test]
fn malformed_input_exits_with_two() {
    let out = run(&["solve"], Some(b"{\"version\":1,\n\"n\":2,"));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");

    let bad_rank = br#"{"version":1,"n":1,"m":[2],"strict":true,"ranks":[[1,3]]}"#;
    let out = run(&["solve"], Some(bad_rank));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("ranks[0][1]"));

    let out = run(&["sample-gamma", "--m", "2", "--n", "3", "--spec", "d=2,S=0"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["solve", "--game", "/nonexistent/game.json"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["frobnicate"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verification_failures_exit_with_one() {
    let out = run(
        &[
            "check-axioms",
            "--solution",
            "drop-first",
            "--k",
            "1",
            "--max-agents",
            "2",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("consistency"));

    let game = run(&["construct", "eleven-twenty"], None);
    let out = run(&["check-potential", "--k", "1"], Some(&game.stdout));
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("no_witness"));
}

#[test]
fn witnesses_round_trip_through_files() {
    let dir = std::env::temp_dir().join(format!("satisficing-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let game = dir.join("game.json");
    let witness = dir.join("witness.json");
    let g = game.to_str().unwrap();
    let w = witness.to_str().unwrap();
    let out = run(&["construct", "travelers", "--max-claim", "6", "--out", g], None);
    assert!(out.status.success());
    let out = run(&["check-potential", "--game", g, "--k", "2", "--save-witness", w], None);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("found"));
    let out = run(
        &[
            "check-potential",
            "--game",
            g,
            "--k",
            "2",
            "--witness",
            w,
            "--format",
            "json",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verified"], true);
    let out = run(&["check-potential", "--game", g, "--k", "2", "--witness", w], None);
    assert_eq!(stdout(&out), "agent,profile,rank,potential_rank\n");
    let out = run(&["dynamics", "--game", g, "--k", "2", "--start", "4,4"], None);
    assert_eq!(out.status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn mixed_finds_the_symmetric_equilibrium() {
    let b = run(&["construct", "eleven-twenty", "--payoffs"], None);
    let out = run(&["mixed", "--format", "json"], Some(&b.stdout));
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let sym = "0 0 0 0 1/4 1/4 1/5 3/20 1/10 1/20";
    assert!(rows.iter().any(|r| r["row"] == sym && r["col"] == sym));
    assert!(rows.iter().all(|r| r["verified"] == true));
}
