use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_belief-ess"))
        .args(args)
        .env_remove("BELIEF_ESS_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

const HD: [&str; 2] = ["--hawk-dove", "V=2,C=4"];

fn with_hd<'a>(cmd: &'a str, rest: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd, HD[0], HD[1]];
    v.extend_from_slice(rest);
    v
}

#[test]
fn solve_hawk_dove_belief_family() {
    let o = run(&with_hd("solve", &["--delta", "0.2"]));
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("mixed ESS: p = 0.5"), "{out}");
    assert!(out.contains("belief ESS: a = 0.3, b = 0.3"), "{out}");
    assert!(out.contains("verified: yes"), "{out}");
    assert!(out.contains("E[J,H] > E[H,H]: -0.5 vs -1"), "{out}");
    assert!(out.contains("E[J,D] > E[D,D]: 1.5 vs 1"), "{out}");
}

#[test]
fn solve_pure_hawk() {
    let o = run(&["solve", "--hawk-dove", "V=4,C=2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("H: strict"), "{out}");
    assert!(out.contains("pure ESS: H"), "{out}");
}

#[test]
fn solve_without_ess_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("flat.toml");
    fs::write(&path, "payoffs = [[1, 1], [1, 1]]\n").unwrap();
    let o = run(&["solve", "--game", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
    assert!(stdout(&o).contains("degenerate"));
}

#[test]
fn solve_json_is_structured() {
    let o = run(&with_hd("solve", &["--delta", "0.2", "--json"]));
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["mixed_ess"]["p"], 0.5);
    let inst = &v["report"]["belief_ess"]["instance"];
    assert_eq!(inst["strategy"]["a"], 0.3);
    assert_eq!(inst["verification"]["stable"], true);
}

#[test]
fn missing_game_file_exits_1() {
    let o = run(&["solve", "--game", "missing.toml"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("missing.toml"), "{}", stderr(&o));
}

#[test]
fn game_file_diagnostics_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    fs::write(&path, "labels = [\"H\", \"D\"]\npayoffs = [[1, 2], [3]]\n").unwrap();
    let o = run(&["solve", "--game", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(code(&run(&["solve"])), 1);
    assert_eq!(code(&run(&with_hd("solve", &["--bogus"]))), 1);
    assert_eq!(code(&run(&with_hd("solve", &["--tol", "0"]))), 1);
    assert_eq!(
        code(&run(&with_hd(
            "payoff",
            &["--row", "pure=H", "--col", "pure=D", "--mc", "0"]
        ))),
        1
    );
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn payoff_closed_form() {
    let o = run(&with_hd(
        "payoff",
        &["--row", "pure=H", "--col", "belief=0.3,0.3"],
    ));
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("closed_form  0.5 "), "{}", stdout(&o));

    // a=0.3, b=0.2 puts the midpoint at 0.55.
    let o = run(&with_hd(
        "payoff",
        &["--row", "pure=H", "--col", "belief=0.3,0.2", "--json"],
    ));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["closed_form"]["value"], 0.35);
}

#[test]
fn payoff_monte_carlo_within_three_sigma() {
    let o = run(&with_hd(
        "payoff",
        &[
            "--row",
            "pure=H",
            "--col",
            "belief=0.3,0.3",
            "--mc",
            "1000000",
            "--seed",
            "42",
            "--json",
        ],
    ));
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mc = v["monte_carlo"]["value"].as_f64().unwrap();
    let se = v["monte_carlo"]["stderr"].as_f64().unwrap();
    assert_eq!(v["monte_carlo"]["seed"], 42);
    assert!((mc - 0.5).abs() <= 3.0 * se, "{mc} ± {se}");
}

#[test]
fn seed_flag_overrides_environment() {
    let args = with_hd(
        "payoff",
        &[
            "--row",
            "pure=H",
            "--col",
            "belief=0.3,0.3",
            "--mc",
            "1000",
            "--json",
        ],
    );
    let bin = env!("CARGO_BIN_EXE_belief-ess");
    let from_env = Command::new(bin)
        .args(&args)
        .env("BELIEF_ESS_SEED", "7")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&from_env)).unwrap();
    assert_eq!(v["monte_carlo"]["seed"], 7);

    let mut with_flag = args.clone();
    with_flag.extend(["--seed", "9"]);
    let flagged = Command::new(bin)
        .args(&with_flag)
        .env("BELIEF_ESS_SEED", "7")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&flagged)).unwrap();
    assert_eq!(v["monte_carlo"]["seed"], 9);
}

#[test]
fn unknown_label_exits_1() {
    let o = run(&with_hd("payoff", &["--row", "pure=X", "--col", "pure=H"]));
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains('X'), "{}", stderr(&o));
}

#[test]
fn output_is_deterministic() {
    for args in [
        with_hd("solve", &["--delta", "0.2", "--sweep"]),
        with_hd(
            "payoff",
            &[
                "--row",
                "belief=0.1,0.6",
                "--col",
                "mixed=0.3",
                "--mc",
                "50000",
                "--seed",
                "3",
                "--workers",
                "3",
            ],
        ),
        with_hd(
            "simulate",
            &[
                "--resident",
                "pure=D",
                "--mutant",
                "pure=H",
                "--sampled",
                "2000",
                "--seed",
                "5",
            ],
        ),
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(code(&a), 0, "{}", stderr(&a));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn verify_exit_codes() {
    let o = run(&with_hd(
        "verify",
        &["--strategy", "belief=0.3,0.3", "--sweep"],
    ));
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: stable"));

    let o = run(&with_hd("verify", &["--strategy", "pure=D"]));
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("verdict: not stable"));

    let o = run(&with_hd(
        "verify",
        &[
            "--strategy",
            "belief=0.3,0.3",
            "--invader",
            "mixed=0.9",
            "--invader",
            "pure=H",
        ],
    ));
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("invader mixed p=0.9"), "{}", stdout(&o));
}

#[test]
fn strategy_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("j.toml");
    fs::write(&path, "belief = { a = 0.3, b = 0.3 }\n").unwrap();
    let arg = format!("@{}", path.display());
    let o = run(&with_hd("verify", &["--strategy", &arg]));
    assert_eq!(code(&o), 0, "{}", stderr(&o));

    let o = run(&with_hd("verify", &["--strategy", "@nowhere.toml"]));
    assert_eq!(code(&o), 1);
}

#[test]
fn simulate_verdicts() {
    let o = run(&with_hd(
        "simulate",
        &[
            "--resident",
            "belief=0.3,0.3",
            "--mutant",
            "pure=H",
            "--epsilon",
            "0.01",
        ],
    ));
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("step,share_0,share_1\n"), "{out}");
    assert!(out.ends_with("verdict,invader_extinct\n"), "{out}");

    let o = run(&with_hd(
        "simulate",
        &[
            "--resident",
            "pure=D",
            "--mutant",
            "pure=H",
            "--epsilon",
            "0.01",
        ],
    ));
    assert!(!stdout(&o).contains("invader_extinct"));
}

#[test]
fn simulate_writes_trajectory_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let o = run(&with_hd(
        "simulate",
        &[
            "--resident",
            "belief=0.3,0.3",
            "--mutant",
            "pure=D",
            "--output",
            path.to_str().unwrap(),
        ],
    ));
    assert_eq!(code(&o), 0);
    assert!(
        stdout(&o).starts_with("verdict: invader_extinct"),
        "{}",
        stdout(&o)
    );
    let csv = fs::read_to_string(&path).unwrap();
    assert!(csv.lines().nth(1).unwrap().starts_with("0,"));
    assert_eq!(csv.lines().last(), Some("verdict,invader_extinct"));
}

#[test]
fn epsilon_out_of_range_exits_1() {
    let o = run(&with_hd(
        "simulate",
        &[
            "--resident",
            "pure=D",
            "--mutant",
            "pure=H",
            "--epsilon",
            "0.7",
        ],
    ));
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("0.7"), "{}", stderr(&o));
}
