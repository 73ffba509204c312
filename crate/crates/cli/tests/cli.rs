use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const W1: &str = "[0]\na,[0]->[0]\n[0]\n";
const W1_HOA: &str = include_str!("../../core/tests/golden/w1.hoa");
const SD3: &str = "[p]\na,[p]->[p]\na,[p]->[q]\na,[q]->[r]\na,[r]->[q]\nb,[r]->[r]\n[q]\n";

fn nondet_other() -> String {
    let mut s = String::from("[0]\n");
    for p in 0..2 {
        for a in ["a", "b"] {
            for q in 0..2 {
                s.push_str(&format!("{a},[{p}]->[{q}]\n"));
            }
        }
    }
    s.push_str("[1]\n");
    s
}

fn bacomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bacomp"))
        .args(args)
        .env_remove("BACOMP_BUDGET")
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn complement_w1_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "w1.hoa", W1_HOA);
    let c = dir.path().join("c.hoa");
    let o = bacomp(&["complement", "--check", &a, "-o", c.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("class=IW"));
    let text = fs::read_to_string(&c).unwrap();
    assert!(text.starts_with("HOA: v1"));
    assert!(text.contains("States: 2"));

    let o = bacomp(&[
        "check",
        &a,
        c.to_str().unwrap(),
        "--max-u",
        "3",
        "--max-v",
        "3",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn complement_to_ba_round_trips_through_check() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "sd3.ba", SD3);
    let o = bacomp(&["complement", "--format", "ba", "--preprocess=red", &a]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("class=SDBA"));
    let c = write(dir.path(), "c.ba", &stdout(&o));
    let o = bacomp(&["check", &a, &c]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn check_reports_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "w1.hoa", W1_HOA);
    let o = bacomp(&["check", &a, &a]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("FAIL: both accept ε (a)^ω"));

    let empty = write(dir.path(), "empty.ba", "[0]\na,[0]->[0]\n");
    let o = bacomp(&["check", &a, &empty]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).contains("neither accepts"));
}

#[test]
fn classify_prints_key_values() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "sd3.ba", SD3);
    let o = bacomp(&["classify", &a]);
    assert!(o.status.success());
    let out = stdout(&o);
    let keys: Vec<&str> = out.lines().map(|l| l.split('=').next().unwrap()).collect();
    assert_eq!(
        keys,
        [
            "inherently_weak",
            "weak",
            "semi_deterministic",
            "elevator",
            "deterministic",
            "class"
        ]
    );
    assert!(out.contains("semi_deterministic=true"));
    assert!(out.ends_with("class=SDBA\n"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let other = write(dir.path(), "other.ba", &nondet_other());
    let o = bacomp(&["complement", &other]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o)
        .contains("no specialized construction applies (rank-based backend not implemented)"));

    let bad = write(dir.path(), "bad.hoa", "HOA: v1\nStates: 1\n");
    assert_eq!(bacomp(&["complement", &bad]).status.code(), Some(2));
    assert_eq!(
        bacomp(&["classify", "/no/such/file"]).status.code(),
        Some(2)
    );

    let w1 = write(dir.path(), "w1.ba", W1);
    let o = bacomp(&["complement", "--ncsb-lazy", &w1]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unsupported in this implementation"));
    let o = bacomp(&["complement", "--preprocess=copyheur", &w1]);
    assert!(stderr(&o).contains("unsupported in this implementation"));
    assert_eq!(
        bacomp(&["complement", "--best", "--light", &w1])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn pipeline_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "sd3.ba", SD3);
    let args = [
        "complement",
        "--preprocess=accsat",
        "--postprocess=red",
        "--theta=prune",
        &a,
    ];
    assert_eq!(bacomp(&args).stdout, bacomp(&args).stdout);
}

#[test]
fn bench_directory() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "a_w1.hoa", W1_HOA);
    write(dir.path(), "b_broken.hoa", "HOA: v1\nStates: 1\n");
    write(dir.path(), "c_other.ba", &nondet_other());
    write(dir.path(), "d_sd3.ba", SD3);
    let csv = dir.path().join("out.csv");
    let o = bacomp(&[
        "bench",
        dir.path().to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "file,class,in_states,out_states_raw,out_states_post,time_ms,status"
    );
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("a_w1.hoa,IW,1,"));
    assert!(lines[1].ends_with(",ok"));
    let w1: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(w1[4], "2");
    assert!(lines[2].starts_with("b_broken.hoa,"));
    assert!(lines[2].ends_with(",error"));
    assert!(lines[3].ends_with(",unsupported"));
    assert!(lines[4].starts_with("d_sd3.ba,SDBA,"));
    let summary = stderr(&o);
    assert!(summary.contains("IW: n=1"));
    assert!(summary.contains("IW raw mean: theta=id"));
}

#[test]
fn bench_empty_directory_and_budget() {
    let dir = tempfile::tempdir().unwrap();
    let o = bacomp(&["bench", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "file,class,in_states,out_states_raw,out_states_post,time_ms,status\n"
    );

    write(dir.path(), "sd3.ba", SD3);
    let o = Command::new(env!("CARGO_BIN_EXE_bacomp"))
        .args(["bench", dir.path().to_str().unwrap()])
        .env("BACOMP_BUDGET", "1")
        .output()
        .unwrap();
    assert!(stdout(&o).lines().nth(1).unwrap().ends_with(",timeout"));
}

#[test]
fn bench_generated() {
    let o = bacomp(&["bench", "--generate", "5", "--kind", "sdba", "--seed", "7"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 6);
    assert!(out.lines().nth(1).unwrap().starts_with("sdba-7,"));
    assert_eq!(
        out.lines()
            .map(|l| l.split(',').next().unwrap())
            .next_back(),
        Some("sdba-11")
    );
}
