//! End-to-end complementation: preprocess, classify and dispatch, complement,
//! postprocess. Also the bounded language check and benchmark records.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::analysis::{classify, Classification, DispatchClass};
use crate::automaton::BuchiAutomaton;
use crate::complement::iw::IwPipeline;
use crate::complement::{
    complement_iw_with_budget, complement_sdba_with_budget, Budget, Mode, Theta,
};
use crate::error::{Error, Result};
use crate::format::{parse_automaton, serialize, Format};
use crate::graph;
use crate::lasso::{period_winners, post_word, Lasso};
use crate::oracle::words;
use crate::preprocess::{
    deelevate, reduce_direct_sim, saturate_acceptance, to_transition_based_if_specialized,
    DeelevationStrategy,
};
use crate::product::{intersection_empty, Intersection};
use crate::set::StateSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PreprocessStep {
    Red,
    CopyAll,
    CopyIwa,
    AccSat,
}

impl PreprocessStep {
    pub fn apply(&self, a: &BuchiAutomaton) -> BuchiAutomaton {
        match self {
            PreprocessStep::Red => to_transition_based_if_specialized(&reduce_direct_sim(a)),
            PreprocessStep::CopyAll => deelevate(a, DeelevationStrategy::CopyAll),
            PreprocessStep::CopyIwa => deelevate(a, DeelevationStrategy::CopyIwa),
            PreprocessStep::AccSat => saturate_acceptance(a),
        }
    }
}

impl FromStr for PreprocessStep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "red" => Ok(PreprocessStep::Red),
            "copyall" => Ok(PreprocessStep::CopyAll),
            "copyiwa" => Ok(PreprocessStep::CopyIwa),
            "accsat" => Ok(PreprocessStep::AccSat),
            "copyheur" => Err(Error::Unsupported("--preprocess=copyheur".into())),
            other => Err(Error::InvalidParameters(format!(
                "unknown preprocessing `{other}`"
            ))),
        }
    }
}

impl FromStr for Theta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "id" => Ok(Theta::Identity),
            "prune" => Ok(Theta::Prune),
            "sat" => Ok(Theta::Saturate),
            other => Err(Error::InvalidParameters(format!("unknown theta `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Postprocess {
    #[default]
    None,
    Red,
}

/// Bounds of the lasso grid used by [`check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LassoBounds {
    pub max_u: usize,
    pub max_v: usize,
}

impl LassoBounds {
    pub fn new(max_u: usize, max_v: usize) -> Result<Self> {
        if max_u == 0 || max_v == 0 {
            return Err(Error::InvalidParameters(
                "lasso bounds must be at least 1".into(),
            ));
        }
        Ok(LassoBounds { max_u, max_v })
    }
}

impl Default for LassoBounds {
    fn default() -> Self {
        LassoBounds { max_u: 4, max_v: 4 }
    }
}

#[derive(Clone, Debug, Default)]
pub struct PipelineConfig {
    pub preprocess: Vec<PreprocessStep>,
    pub mode: Mode,
    pub postprocess: Postprocess,
    pub theta: Option<Theta>,
    pub output: Format,
    pub check: bool,
    pub bounds: LassoBounds,
    pub budget: Budget,
}

/// Sizes and class observed by one pipeline run.
#[derive(Clone, Debug)]
pub struct Report {
    pub classification: Classification,
    pub in_states: usize,
    pub preprocessed_states: usize,
    pub out_states_raw: usize,
    pub out_states_post: usize,
}

impl Report {
    pub fn class(&self) -> DispatchClass {
        self.classification.dispatch
    }
}

/// Keeps the states that are reachable from `I` and can reach a cycle
/// carrying acceptance.
pub fn remove_useless(a: &BuchiAutomaton) -> BuchiAutomaton {
    let reachable = a.reachable_from(a.initial());
    let adj: Vec<Vec<usize>> = a
        .states()
        .map(|p| {
            if reachable.contains(p) {
                a.successors(p).filter(|&q| reachable.contains(q)).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    let sccs = graph::tarjan(&adj);
    let mut live = StateSet::empty(a.num_states());
    for (c, comp) in sccs.components.iter().enumerate() {
        if !reachable.contains(comp[0]) || !sccs.is_nontrivial(c, &adj) {
            continue;
        }
        let accepting = comp.iter().any(|&p| {
            a.is_accepting(p)
                || a.alphabet().symbols().any(|sym| {
                    a.succ(p, sym)
                        .iter()
                        .any(|&q| sccs.component_of[q] == c && a.is_accepting_transition(p, sym, q))
                })
        });
        if accepting {
            for &p in comp {
                live.insert(p);
            }
        }
    }
    // Components come in reverse topological order, so one forward sweep
    // propagates liveness backwards along edges.
    for comp in &sccs.components {
        if comp
            .iter()
            .any(|&p| adj[p].iter().any(|&q| live.contains(q)))
        {
            for &p in comp {
                live.insert(p);
            }
        }
    }
    if live.len() == a.num_states() {
        return a.clone();
    }
    a.restrict(&live).0
}

/// Runs the whole pipeline. The report is returned even when the class is
/// unsupported or the budget runs out.
pub fn run(a: &BuchiAutomaton, cfg: &PipelineConfig) -> (Report, Result<BuchiAutomaton>) {
    let mut pre = a.clone();
    for step in &cfg.preprocess {
        pre = step.apply(&pre);
    }
    let mut report = Report {
        classification: classify(&pre),
        in_states: a.num_states(),
        preprocessed_states: pre.num_states(),
        out_states_raw: 0,
        out_states_post: 0,
    };
    let raw = match report.class() {
        DispatchClass::InherentlyWeak => {
            complement_iw_with_budget(&pre, cfg.mode, cfg.theta, cfg.budget)
        }
        DispatchClass::SemiDeterministic => complement_sdba_with_budget(&pre, cfg.mode, cfg.budget),
        DispatchClass::Other => Err(Error::UnsupportedClass),
    };
    let raw = match raw {
        Ok(raw) => raw,
        Err(e) => return (report, Err(e)),
    };
    report.out_states_raw = raw.num_states();
    let mut out = remove_useless(&raw);
    if cfg.postprocess == Postprocess::Red {
        out = reduce_direct_sim(&out);
    }
    report.out_states_post = out.num_states();
    (report, Ok(out))
}

pub fn complement(a: &BuchiAutomaton, cfg: &PipelineConfig) -> Result<(BuchiAutomaton, Report)> {
    let (report, out) = run(a, cfg);
    out.map(|c| (c, report))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckFailure {
    /// Accepted by both automata.
    BothAccept(Lasso),
    /// Accepted by neither automaton.
    NeitherAccepts(Lasso),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass { lassos: usize },
    Fail(CheckFailure),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }
}

/// `c` is a complement of `a` if their intersection is empty and every
/// lasso within `bounds` is accepted by exactly one of them.
pub fn check(a: &BuchiAutomaton, c: &BuchiAutomaton, bounds: LassoBounds) -> Result<Verdict> {
    if let Intersection::NonEmpty(w) = intersection_empty(a, c)? {
        return Ok(Verdict::Fail(CheckFailure::BothAccept(w)));
    }
    let k = a.num_symbols();
    let prefixes = words(k, 0, bounds.max_u);
    let after_a: Vec<StateSet> = prefixes
        .iter()
        .map(|u| post_word(a, a.initial(), u))
        .collect();
    let after_c: Vec<StateSet> = prefixes
        .iter()
        .map(|u| post_word(c, c.initial(), u))
        .collect();
    let periods = words(k, 1, bounds.max_v);
    let mut first_failure: Option<Lasso> = None;
    for v in &periods {
        let win_a = period_winners(a, v);
        let win_c = period_winners(c, v);
        for (i, u) in prefixes.iter().enumerate() {
            let in_a = after_a[i].intersects(&win_a);
            let in_c = after_c[i].intersects(&win_c);
            if in_a == in_c {
                let w = Lasso {
                    prefix: u.clone(),
                    period: v.clone(),
                };
                if first_failure
                    .as_ref()
                    .is_none_or(|f| grid_order(&w) < grid_order(f))
                {
                    first_failure = Some(w);
                }
                break;
            }
        }
    }
    Ok(match first_failure {
        Some(w) => Verdict::Fail(CheckFailure::NeitherAccepts(w)),
        None => Verdict::Pass {
            lassos: prefixes.len() * periods.len(),
        },
    })
}

fn grid_order(w: &Lasso) -> (usize, &[usize], usize, &[usize]) {
    (w.prefix.len(), &w.prefix, w.period.len(), &w.period)
}

/// Outcome of one benchmark input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchStatus {
    Ok,
    Timeout,
    Unsupported,
    Error,
}

impl BenchStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            BenchStatus::Ok => "ok",
            BenchStatus::Timeout => "timeout",
            BenchStatus::Unsupported => "unsupported",
            BenchStatus::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub file: String,
    pub class: Option<DispatchClass>,
    pub in_states: usize,
    pub out_states_raw: usize,
    pub out_states_post: usize,
    pub time_ms: f64,
    pub status: BenchStatus,
    /// Raw sizes of the identity and pruning variants for IW inputs.
    pub iw_sizes: Option<(usize, usize)>,
}

pub const CSV_HEADER: &str = "file,class,in_states,out_states_raw,out_states_post,time_ms,status";

impl BenchRecord {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{:.3},{}",
            self.file,
            self.class.map_or("-", |c| c.as_str()),
            self.in_states,
            self.out_states_raw,
            self.out_states_post,
            self.time_ms,
            self.status.as_str()
        )
    }
}

/// Runs the pipeline on one input text and records the outcome.
pub fn bench_text(file: &str, text: &str, cfg: &PipelineConfig) -> BenchRecord {
    let start = Instant::now();
    let mut record = BenchRecord {
        file: file.to_string(),
        class: None,
        in_states: 0,
        out_states_raw: 0,
        out_states_post: 0,
        time_ms: 0.0,
        status: BenchStatus::Error,
        iw_sizes: None,
    };
    let a = match parse_automaton(text) {
        Ok(a) => a,
        Err(_) => {
            record.time_ms = start.elapsed().as_secs_f64() * 1e3;
            return record;
        }
    };
    bench_automaton(record, &a, cfg, start)
}

pub fn bench_one(file: &str, a: &BuchiAutomaton, cfg: &PipelineConfig) -> BenchRecord {
    let record = BenchRecord {
        file: file.to_string(),
        class: None,
        in_states: 0,
        out_states_raw: 0,
        out_states_post: 0,
        time_ms: 0.0,
        status: BenchStatus::Error,
        iw_sizes: None,
    };
    bench_automaton(record, a, cfg, Instant::now())
}

fn bench_automaton(
    mut record: BenchRecord,
    a: &BuchiAutomaton,
    cfg: &PipelineConfig,
    start: Instant,
) -> BenchRecord {
    let (report, out) = run(a, cfg);
    record.class = Some(report.class());
    record.in_states = report.in_states;
    record.out_states_raw = report.out_states_raw;
    record.out_states_post = report.out_states_post;
    record.status = match out {
        Ok(_) => BenchStatus::Ok,
        Err(Error::BudgetExceeded(_)) => BenchStatus::Timeout,
        Err(Error::UnsupportedClass) => BenchStatus::Unsupported,
        Err(_) => BenchStatus::Error,
    };
    record.time_ms = start.elapsed().as_secs_f64() * 1e3;
    if record.status == BenchStatus::Ok && report.class() == DispatchClass::InherentlyWeak {
        let mut pre = a.clone();
        for step in &cfg.preprocess {
            pre = step.apply(&pre);
        }
        record.iw_sizes = IwPipeline::new(&pre).ok().and_then(|p| {
            let id = p.run(Theta::Identity, cfg.budget).ok()?;
            let pr = p.run(Theta::Prune, cfg.budget).ok()?;
            Some((id.automaton.num_states(), pr.automaton.num_states()))
        });
    }
    record
}

pub fn write_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

/// Mean and median output size per class, over successful runs.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassSummary {
    pub class: DispatchClass,
    pub count: usize,
    pub mean_post: f64,
    pub median_post: f64,
    pub mean_raw: f64,
    pub median_raw: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchSummary {
    pub classes: Vec<ClassSummary>,
    pub unsupported: usize,
    pub timeouts: usize,
    pub errors: usize,
    /// Mean raw sizes of the identity and pruning variants over IW inputs.
    pub iw_means: Option<(f64, f64)>,
}

pub fn mean(xs: &[usize]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.iter().sum::<usize>() as f64 / xs.len() as f64
}

pub fn median(xs: &[usize]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    let mut v = xs.to_vec();
    v.sort_unstable();
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m] as f64
    } else {
        (v[m - 1] + v[m]) as f64 / 2.0
    }
}

impl BenchSummary {
    pub fn from_records(records: &[BenchRecord]) -> Self {
        let mut classes = Vec::new();
        for class in [
            DispatchClass::InherentlyWeak,
            DispatchClass::SemiDeterministic,
        ] {
            let ok: Vec<&BenchRecord> = records
                .iter()
                .filter(|r| r.class == Some(class) && r.status == BenchStatus::Ok)
                .collect();
            if ok.is_empty() {
                continue;
            }
            let post: Vec<usize> = ok.iter().map(|r| r.out_states_post).collect();
            let raw: Vec<usize> = ok.iter().map(|r| r.out_states_raw).collect();
            classes.push(ClassSummary {
                class,
                count: ok.len(),
                mean_post: mean(&post),
                median_post: median(&post),
                mean_raw: mean(&raw),
                median_raw: median(&raw),
            });
        }
        let count = |s: BenchStatus| records.iter().filter(|r| r.status == s).count();
        let iw: Vec<(usize, usize)> = records.iter().filter_map(|r| r.iw_sizes).collect();
        let iw_means = (!iw.is_empty()).then(|| {
            let ids: Vec<usize> = iw.iter().map(|p| p.0).collect();
            let prs: Vec<usize> = iw.iter().map(|p| p.1).collect();
            (mean(&ids), mean(&prs))
        });
        BenchSummary {
            classes,
            unsupported: count(BenchStatus::Unsupported),
            timeouts: count(BenchStatus::Timeout),
            errors: count(BenchStatus::Error),
            iw_means,
        }
    }
}

impl fmt::Display for BenchSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.classes {
            writeln!(
                f,
                "{}: n={} mean={:.2} median={:.1} (raw mean={:.2} median={:.1})",
                c.class.as_str(),
                c.count,
                c.mean_post,
                c.median_post,
                c.mean_raw,
                c.median_raw
            )?;
        }
        if let Some((id, pr)) = self.iw_means {
            writeln!(f, "IW raw mean: theta=id {id:.2}, theta=prune {pr:.2}")?;
        }
        write!(
            f,
            "unsupported={} timeouts={} errors={}",
            self.unsupported, self.timeouts, self.errors
        )
    }
}

/// Serializes the pipeline output in the configured format.
pub fn complement_text(a: &BuchiAutomaton, cfg: &PipelineConfig) -> Result<(String, Report)> {
    let (c, report) = complement(a, cfg)?;
    Ok((serialize(&c, cfg.output)?, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Alphabet;
    use crate::complement::iw::mihay_complement;
    use crate::complement::Adjustment;
    use crate::fixtures::*;
    use crate::preprocess::{iw_to_weak, weak_to_coba};

    #[test]
    fn remove_useless_examples() {
        let mut a = w1();
        let q = a.add_state();
        a.set_accepting(q, true);
        a.add_transition(q, 0, q);
        assert_eq!(remove_useless(&a), w1());

        let mut b = BuchiAutomaton::new(Alphabet::of_size(2), 2);
        b.add_transition(0, 0, 0);
        b.add_transition(0, 1, 1);
        b.set_initial(0);
        b.set_accepting(1, true);
        assert_eq!(remove_useless(&b).num_states(), 0);

        let coba = weak_to_coba(&iw_to_weak(&w1()).unwrap()).unwrap();
        let c = mihay_complement(&coba, &Adjustment::Identity).automaton;
        assert_eq!(remove_useless(&c), c);
    }

    #[test]
    fn dispatch() {
        let (c, report) = complement(&w1(), &PipelineConfig::default()).unwrap();
        assert_eq!(report.class(), DispatchClass::InherentlyWeak);
        assert_eq!(c.num_states(), 2);

        let (c, report) = complement(&sd3(), &PipelineConfig::default()).unwrap();
        assert_eq!(report.class(), DispatchClass::SemiDeterministic);
        assert!(check(&sd3(), &c, LassoBounds::new(4, 4).unwrap())
            .unwrap()
            .is_pass());

        let err = complement(&nondet_other(), &PipelineConfig::default()).unwrap_err();
        assert_eq!(
            err.to_string(),
            "no specialized construction applies (rank-based backend not implemented)"
        );
    }

    #[test]
    fn check_examples() {
        let b = LassoBounds::new(3, 3).unwrap();
        let (c, _) = complement(&w1(), &PipelineConfig::default()).unwrap();
        assert!(check(&w1(), &c, b).unwrap().is_pass());
        assert_eq!(
            check(&w1(), &w1(), b).unwrap(),
            Verdict::Fail(CheckFailure::BothAccept(Lasso {
                prefix: vec![],
                period: vec![0]
            }))
        );
        assert_eq!(
            check(&w1(), &empty(), b).unwrap(),
            Verdict::Fail(CheckFailure::NeitherAccepts(Lasso {
                prefix: vec![],
                period: vec![1]
            }))
        );
        let other = BuchiAutomaton::new(Alphabet::of_size(3), 0);
        assert!(check(&w1(), &other, b).is_err());
    }

    #[test]
    fn bench_records() {
        let text = crate::format::serialize_hoa(&w1());
        let cfg = PipelineConfig::default();
        let r = bench_text("W1.hoa", &text, &cfg);
        assert_eq!(r.class, Some(DispatchClass::InherentlyWeak));
        assert_eq!(r.out_states_post, 2);
        assert_eq!(r.status, BenchStatus::Ok);
        assert_eq!(
            bench_text("bad.hoa", "HOA: v1\nStates: x", &cfg).status,
            BenchStatus::Error
        );
        assert_eq!(write_csv(&[]), format!("{CSV_HEADER}\n"));
        let u = bench_one("o", &nondet_other(), &cfg);
        assert_eq!(u.status, BenchStatus::Unsupported);
        let s = BenchSummary::from_records(&[r, u]);
        assert_eq!(s.unsupported, 1);
        assert_eq!(s.classes.len(), 1);
        assert!(s.iw_means.is_some());
    }

    #[test]
    fn budget_timeout() {
        let cfg = PipelineConfig {
            budget: Budget::steps(1),
            ..Default::default()
        };
        assert_eq!(bench_one("sd3", &sd3(), &cfg).status, BenchStatus::Timeout);
    }

    #[test]
    fn parse_flags() {
        assert_eq!(
            "copyiwa".parse::<PreprocessStep>().unwrap(),
            PreprocessStep::CopyIwa
        );
        assert!("copyheur".parse::<PreprocessStep>().is_err());
        assert_eq!("sat".parse::<Theta>().unwrap(), Theta::Saturate);
        assert!(LassoBounds::new(0, 1).is_err());
    }
}
