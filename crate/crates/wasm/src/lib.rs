//! Browser bindings. Every export takes automaton text (HOA or ba) and
//! returns a JSON string, with `{"error": ...}` on failure.

use bacomp::analysis::classify as classify_automaton;
use bacomp::format::{parse_automaton, serialize, Format};
use bacomp::lasso::accepts_lasso;
use bacomp::oracle::{gen_random_ba, gen_random_iw, gen_random_sdba, RandomParams};
use bacomp::pipeline::{complement as run_complement, PipelineConfig, PreprocessStep};
use bacomp::{BuchiAutomaton, Lasso};
use serde::Serialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

#[derive(Serialize)]
pub struct StateView {
    pub name: String,
    pub initial: bool,
    pub accepting: bool,
}

#[derive(Serialize)]
pub struct EdgeView {
    pub from: usize,
    pub to: usize,
    pub label: String,
    pub accepting: bool,
}

/// Drawable view of an automaton; parallel edges are merged into one label.
#[derive(Serialize)]
pub struct GraphView {
    pub states: Vec<StateView>,
    pub edges: Vec<EdgeView>,
}

impl GraphView {
    pub fn of(a: &BuchiAutomaton) -> Self {
        let states = a
            .states()
            .map(|q| StateView {
                name: a.state_name(q),
                initial: a.initial().contains(q),
                accepting: a.is_accepting(q),
            })
            .collect();
        let mut edges: Vec<EdgeView> = Vec::new();
        for (p, sym, q) in a.transitions() {
            let accepting = a.is_accepting_transition(p, sym, q);
            let name = a.alphabet().name(sym);
            match edges
                .iter_mut()
                .find(|e| e.from == p && e.to == q && e.accepting == accepting)
            {
                Some(e) => {
                    e.label.push(',');
                    e.label.push_str(name);
                }
                None => edges.push(EdgeView {
                    from: p,
                    to: q,
                    label: name.to_string(),
                    accepting,
                }),
            }
        }
        GraphView { states, edges }
    }
}

fn error(e: impl ToString) -> Value {
    json!({ "error": e.to_string() })
}

pub fn classify_value(text: &str) -> Value {
    let a = match parse_automaton(text) {
        Ok(a) => a,
        Err(e) => return error(e),
    };
    let pairs = classify_automaton(&a).to_key_values();
    let lines: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let flags: serde_json::Map<String, Value> = pairs
        .into_iter()
        .map(|(k, v)| (k.to_string(), Value::String(v)))
        .collect();
    json!({ "flags": flags, "lines": lines, "graph": GraphView::of(&a) })
}

/// `preprocess` is a comma-separated list of steps; `theta` is empty for the
/// default.
pub fn complement_value(text: &str, preprocess: &str, theta: &str, format: &str) -> Value {
    let run = || -> bacomp::Result<Value> {
        let a = parse_automaton(text)?;
        let cfg = PipelineConfig {
            preprocess: preprocess
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::parse::<PreprocessStep>)
                .collect::<bacomp::Result<_>>()?,
            theta: match theta {
                "" => None,
                t => Some(t.parse()?),
            },
            output: if format == "ba" {
                Format::Ba
            } else {
                Format::Hoa
            },
            ..PipelineConfig::default()
        };
        let (c, report) = run_complement(&a, &cfg)?;
        Ok(json!({
            "class": report.class().as_str(),
            "in_states": report.in_states,
            "out_states_raw": report.out_states_raw,
            "out_states": report.out_states_post,
            "text": serialize(&c, cfg.output)?,
            "graph": GraphView::of(&c),
        }))
    };
    run().unwrap_or_else(error)
}

/// Membership of `prefix · period^ω`, with words written as letter strings.
pub fn accepts_value(text: &str, prefix: &str, period: &str) -> Value {
    let run = || -> bacomp::Result<Value> {
        let a = parse_automaton(text)?;
        let w = Lasso::parse(a.alphabet(), prefix, period)?;
        Ok(json!({
            "accepted": accepts_lasso(&a, &w)?,
            "word": w.display(a.alphabet()).to_string(),
        }))
    };
    run().unwrap_or_else(error)
}

pub fn random_text(kind: &str, seed: u64, states: usize) -> Result<String, String> {
    let params = RandomParams::new(states, 2, 1.5f64.min(states as f64), 0.5);
    let a = match kind {
        "iw" => gen_random_iw(seed, params),
        "sdba" => gen_random_sdba(seed, params),
        _ => gen_random_ba(seed, params),
    }
    .map_err(|e| e.to_string())?;
    serialize(&a, Format::Hoa).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn classify(text: &str) -> String {
    classify_value(text).to_string()
}

#[wasm_bindgen]
pub fn complement(text: &str, preprocess: &str, theta: &str, format: &str) -> String {
    complement_value(text, preprocess, theta, format).to_string()
}

#[wasm_bindgen]
pub fn accepts(text: &str, prefix: &str, period: &str) -> String {
    accepts_value(text, prefix, period).to_string()
}

#[wasm_bindgen]
pub fn random_example(kind: &str, seed: u32, states: u32) -> String {
    random_text(kind, seed as u64, states.clamp(1, 12) as usize).unwrap_or_else(|e| e)
}
