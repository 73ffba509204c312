use bacomp_wasm::{accepts, classify, complement, random_example};
use serde_json::Value;

const W1: &str = include_str!("../../core/tests/golden/w1.hoa");
const SD3: &str = "[p]\na,[p]->[p]\na,[p]->[q]\na,[q]->[r]\na,[r]->[q]\nb,[r]->[r]\n[q]\n";

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn classify_returns_flags_and_graph() {
    let v = parse(classify(SD3));
    assert_eq!(v["flags"]["class"], "SDBA");
    assert_eq!(v["flags"]["semi_deterministic"], "true");
    assert_eq!(v["lines"][5], "class=SDBA");
    assert_eq!(v["graph"]["states"].as_array().unwrap().len(), 3);
    assert_eq!(v["graph"]["states"][0]["name"], "p");
    assert_eq!(v["graph"]["states"][0]["initial"], true);
}

#[test]
fn complement_w1() {
    let v = parse(complement(W1, "", "", "hoa"));
    assert_eq!(v["class"], "IW");
    assert_eq!(v["out_states"], 2);
    assert!(v["text"].as_str().unwrap().starts_with("HOA: v1"));
    let edges = v["graph"]["edges"].as_array().unwrap();
    assert!(edges.iter().any(|e| e["label"] == "a,b"));
}

#[test]
fn complement_options_and_errors() {
    let v = parse(complement(SD3, "red, accsat", "prune", "ba"));
    assert_eq!(v["class"], "SDBA");
    assert!(v["text"].as_str().unwrap().contains("->"));
    assert!(parse(complement(SD3, "copyheur", "", "hoa"))["error"]
        .as_str()
        .unwrap()
        .contains("unsupported"));
    assert!(parse(complement("HOA: v1", "", "", "hoa"))["error"].is_string());
}

#[test]
fn membership() {
    let v = parse(accepts(W1, "", "a"));
    assert_eq!(v["accepted"], true);
    assert_eq!(v["word"], "ε (a)^ω");
    assert_eq!(parse(accepts(W1, "a", "b"))["accepted"], false);
    let c = parse(complement(W1, "", "", "hoa"));
    let c_text = c["text"].as_str().unwrap();
    assert_eq!(parse(accepts(c_text, "a", "b"))["accepted"], true);
    assert!(parse(accepts(W1, "", "z"))["error"].is_string());
}

#[test]
fn random_examples_parse() {
    for kind in ["ba", "iw", "sdba"] {
        let text = random_example(kind, 3, 5);
        assert!(classify(&text).contains("\"flags\""), "{text}");
        assert_eq!(random_example(kind, 3, 5), text);
    }
    assert!(parse(classify(&random_example("iw", 9, 6)))["flags"]["inherently_weak"] == "true");
}
