use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mawlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", stdout(o)))
}

fn words(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|w| w.as_str().unwrap().to_string()).collect()
}

#[test]
fn maw_examples() {
    let o = run(&["--format", "text", "maw", "cbaaaa", "--alphabet", "abcd"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "d,ab,ac,bb,bc,ca,cc,aaaaa");

    let o = run(&["maw", "abaab", "--alphabet", "abc", "--no-timestamps"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["tool"], "mawlab");
    assert_eq!(v["alphabet"], "abc");
    assert_eq!(v["payload"]["kind"], "maw_set");
    assert_eq!(words(&v["payload"]["data"]["words"]), ["c", "bb", "aaa", "bab", "aaba"]);
    assert!(v.get("timestamps").is_none());

    let o = run(&["--format", "text", "maw", "", "--alphabet", "ab"]);
    assert_eq!(stdout(&o).trim(), "a,b");
}

#[test]
fn maw_json_and_csv_agree() {
    let j = json(&run(&["maw", "abracadabra", "--engine", "oracle"]));
    let c = run(&["--format", "csv", "maw", "abracadabra"]);
    let lines: Vec<String> = stdout(&c).lines().skip(1).map(|l| l.split(',').nth(1).unwrap().to_string()).collect();
    assert_eq!(words(&j["payload"]["data"]["words"]), lines);
    // the default alphabet is the input's symbols in first-occurrence order
    assert_eq!(j["alphabet"], "abrcd");
}

#[test]
fn input_errors_exit_2() {
    let o = run(&["maw", "abx", "--alphabet", "ab"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not in the alphabet"));
    assert_eq!(run(&["maw", "--file", "/nonexistent/input.txt"]).status.code(), Some(2));
    assert_eq!(run(&["slide", "aaaa", "--window", "4"]).status.code(), Some(2));
    assert_eq!(run(&["slide", "aaaa", "--window", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["gen-family", "--family", "ZGeneral", "--d", "6"]).status.code(), Some(2));
    assert_eq!(run(&["gen-family", "--family", "BinaryExtremal", "--d", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--preset", "nope"]).status.code(), Some(2));
}

#[test]
fn maw_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.txt");
    std::fs::write(&path, "cbaaaa\n").unwrap();
    let o = run(&["--format", "text", "maw", "--file", path.to_str().unwrap(), "--alphabet", "abcd"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "d,ab,ac,bb,bc,ca,cc,aaaaa");
}

#[test]
fn slide_examples() {
    let v = json(&run(&["slide", "abababab", "--window", "4", "--per-step"]));
    let data = &v["payload"]["data"];
    assert_eq!(v["payload"]["kind"], "slide");
    assert!(data["summary"]["per_step"].as_array().unwrap().iter().all(|x| x == 2));
    assert_eq!(data["steps"].as_array().unwrap().len(), 4);

    let v = json(&run(&["slide", "abcabcabc", "--window", "2", "--per-step"]));
    assert!(v["payload"]["data"]["summary"]["per_step"].as_array().unwrap().iter().all(|x| x == 6));
    let step = &v["payload"]["data"]["steps"][0]["append"];
    assert_eq!(words(&step["by_type"]["type2"]).len(), 2);
    assert!(step["bound_verdicts"].as_array().unwrap().iter().any(|b| b["bound_id"] == "GeneralAppend"));

    let v = json(&run(&["slide", "aaaa", "--window", "2"]));
    assert_eq!(v["payload"]["data"]["summary"]["total"], 0);
}

#[test]
fn slide_csv_matches_json() {
    let args = ["slide", "abcabcab", "--window", "3", "--per-step"];
    let v = json(&run(&args));
    let mut csv_args = vec!["--format", "csv"];
    csv_args.extend(args);
    let text = stdout(&run(&csv_args));
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&header[..9], ["step_index", "d", "sigma_window", "sigma_ext", "deleted", "m1", "m2", "m3", "delta"]);
    assert_eq!(header.last(), Some(&"delete_delta"));
    let delta_col = header.iter().position(|h| *h == "delta").unwrap();
    let per_step: Vec<String> = v["payload"]["data"]["summary"]["per_step"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect();
    let from_csv: Vec<String> = lines.map(|l| l.split(',').nth(delta_col).unwrap().to_string()).collect();
    assert_eq!(from_csv, per_step);
}

#[test]
fn injected_offset_exits_3() {
    let o = run(&["slide", "0011100111", "--window", "5", "--per-step", "--inject-bound-offset", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["verify", "--config", "/dev/null"]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, r#"{"mode":"exhaustive","sigmas":[2],"min_len":3,"max_len":6}"#).unwrap();
    let o = run(&["verify", "--config", path.to_str().unwrap(), "--no-timestamps"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["verify", "--config", path.to_str().unwrap(), "--inject-bound-offset", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("witness"));
}

#[test]
fn verify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    std::fs::write(&path, r#"{"mode":"random","sigmas":[2,4,26],"min_len":1,"max_len":30,"samples":200,"engine":"both"}"#)
        .unwrap();
    let args = ["verify", "--config", path.to_str().unwrap(), "--seed", "7", "--no-timestamps"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["payload"]["data"]["config"]["seed"], 7);
    assert_eq!(v["payload"]["data"]["falsification_count"], 0);
}

#[test]
fn verify_tightness_preset() {
    let v = json(&run(&["verify", "--preset", "tightness"]));
    let rows = v["payload"]["data"]["tightness"].as_array().unwrap();
    for row in rows.iter().filter(|r| r["sigma_ext"] == 2) {
        let d = row["d"].as_u64().unwrap();
        assert_eq!(row["max_delta"].as_u64().unwrap(), d.max(3));
    }
    assert!(v["timestamps"]["wall_clock_seconds"].is_number());
}

#[test]
fn gen_family_examples() {
    let o = run(&["gen-family", "--family", "ZGeneral", "--d", "6", "--sigma-w", "4", "--sigma", "5", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let data = &v["payload"]["data"];
    assert_eq!(data["instance"]["text"], "abcddd");
    assert_eq!(data["instance"]["step"]["symbol"], "e");
    assert_eq!(data["check"]["measured"][0], 11);

    let v = json(&run(&["gen-family", "--family", "BinaryExtremal", "--d", "5", "--check"]));
    assert_eq!(v["payload"]["data"]["check"]["measured"][0], 5);

    let o = run(&["gen-family", "--family", "TotalDistinct", "--n", "30", "--d", "3", "--sigma", "4", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["payload"]["data"]["check"]["measured"].as_array().unwrap().iter().all(|x| x == 10));

    // a unary Z window misses the claimed value
    let o = run(&["gen-family", "--family", "ZGeneral", "--d", "4", "--sigma-w", "1", "--sigma", "3", "--check"]);
    assert_eq!(o.status.code(), Some(3));

    let o = run(&["--format", "csv", "gen-family", "--family", "UnaryV", "--d", "4"]);
    assert_eq!(stdout(&o).lines().nth(1).unwrap(), "UnaryV,1111,0,3,exact,,");
}
