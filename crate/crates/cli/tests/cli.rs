use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qutrit-mub")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn verify_one_qutrit_ledger() {
    let o = run(&["verify", "all", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("one-qutrit factor groups: 4/4 pass"));
    assert!(text.contains("bases pairwise unbiased (overlap 1/3): pass"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_ledger_as_json() {
    let o = run(&["verify", "all", "--n", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = json(&o);
    assert_eq!(doc["schema"], "qutrit-mub/1");
    assert_eq!(doc["kind"], "ledger");
    assert!(doc["lines"].as_array().unwrap().iter().all(|l| l["passed"] == true));
}

#[test]
fn two_qutrit_partitions() {
    let o = run(&["partition", "enumerate", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("36 partitions, all with structure 4S+6B\n"), "{text}");
    assert!(text.contains("24 distinct separable quartets: 12 with 1 completion(s), 12 with 2 completion(s)"));
    assert_eq!(text.lines().count(), 2 + 36);

    let doc = json(&run(&["partition", "enumerate", "--n", "2", "--json"]));
    assert_eq!(doc["count"], 36);
    assert_eq!(doc["partitions"][0]["structure"], serde_json::json!({"S": 4, "B": 6, "SB": 0, "G": 0}));
}

#[test]
fn mcs_census_by_class() {
    let o = run(&["mcs", "list", "--n", "3", "--class", "G"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("1120 MCS's for 3 qutrit(s): 64 S, 288 SB, 768 G\n768 of class G:\n"));
    assert_eq!(text.lines().count(), 2 + 768);

    let doc = json(&run(&["mcs", "list", "--n", "2", "--json"]));
    assert_eq!(doc["total"], 40);
    let first = &doc["mcs"][0];
    for key in ["n", "generators", "members", "class", "profile"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn witness_search() {
    let o = run(&["partition", "find", "--n", "3", "--separable", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("found 2S+6SB+20G"));

    let o = run(&["partition", "find", "--n", "3", "--separable", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no 5 pairwise disjoint separable MCS's exist"));

    let doc = json(&run(&["partition", "find", "--n", "3", "--separable", "0", "--json"]));
    assert_eq!(doc["status"], "found");
    assert_eq!(doc["partition"]["structure"]["SB"], 12);
    assert_eq!(doc["coexistence"]["violations"], serde_json::json!([]));
}

#[test]
fn basis_export_is_exact() {
    let o = run(&["basis", "build", "--generators", "ZX,VZ", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains('.'), "floating point in export");
    let doc = json(&o);
    assert_eq!(doc["kind"], "basis");
    let states = doc["states"].as_array().unwrap();
    assert_eq!(states.len(), 9);
    let amp = &states[0]["amplitudes"][0];
    for key in ["num", "den", "a", "b"] {
        assert!(amp.get(key).is_some());
    }
}

#[test]
fn named_states() {
    let text = stdout(&run(&["state", "ghz", "0", "0", "0"]));
    assert!(text.contains("3 terms: (1) [|000> + |111> + |222>]"), "{text}");
    assert!(text.contains("reduced states: I/3, I/3, I/3"));

    let text = stdout(&run(&["state", "ghz", "0", "0", "0", "--basis", "XXX"]));
    assert!(text.contains("9 terms"), "{text}");

    let text = stdout(&run(&["state", "sb", "1", "0", "1", "2"]));
    assert!(text.contains("reduced states: pure, I/3, I/3"));

    let doc = json(&run(&["state", "aharonov", "--json"]));
    assert_eq!(doc["norm_sqr"], "6/1");
    assert_eq!(doc["terms"].as_array().unwrap().len(), 6);

    let o = run(&["state", "bell", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tomography_round_trip_with_csv() {
    let dir = std::env::temp_dir().join(format!("qutrit-mub-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let o = run(&["tomography", "roundtrip", "--n", "2", "--seed", "3", "--mixtures", "12", "--csv", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("12/12 random mixtures"));
    let csv = std::fs::read_to_string(&path).unwrap();
    assert_eq!(csv.lines().count(), 11);
    assert!(csv.starts_with("basis,00,01,02"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn deterministic_across_thread_counts() {
    let a = run(&["--threads", "1", "partition", "find", "--n", "3", "--separable", "3"]);
    let b = run(&["--threads", "4", "partition", "find", "--n", "3", "--separable", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &["mcs", "list", "--n", "4"],
        &["partition", "enumerate", "--n", "3"],
        &["basis", "build", "--generators", "ZI,XI"],
        &["state", "nonsense"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn undecided_search_exits_1() {
    let o = run(&["partition", "find", "--n", "3", "--separable", "1", "--budget", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("undecided"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("verification failed"));
}
