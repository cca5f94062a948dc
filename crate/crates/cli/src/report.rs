use std::fmt::Write;

use lqmatch::optimality::Report as Checks;
use lqmatch::{Instance, Matching, ParamProfile};
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Serialize, Default)]
pub struct Stats {
    pub assignments_enumerated: u64,
    pub elapsed_ms: u64,
}

#[derive(Serialize)]
pub struct Params {
    pub q: usize,
    pub ell_lq: usize,
    pub d: usize,
    pub n_d: usize,
    pub a_bar: usize,
    pub t: usize,
    pub s: usize,
}

impl From<ParamProfile> for Params {
    fn from(p: ParamProfile) -> Self {
        Params {
            q: p.q,
            ell_lq: p.ell_lq,
            d: p.d,
            n_d: p.n_d,
            a_bar: p.a_bar,
            t: p.t,
            s: p.s,
        }
    }
}

#[derive(Serialize)]
pub struct Violations {
    pub blocking_pairs: Vec<[String; 2]>,
    pub envy_pairs: Vec<[String; 2]>,
    pub deficient: Vec<String>,
}

impl Violations {
    pub fn new(inst: &Instance, checks: &Checks) -> Self {
        Violations {
            blocking_pairs: checks
                .blocking_pairs
                .iter()
                .map(|&(a, b)| [inst.agent_id(a).to_owned(), inst.resource_id(b).to_owned()])
                .collect(),
            envy_pairs: checks
                .envy_pairs
                .iter()
                .map(|&(a, x)| [inst.agent_id(a).to_owned(), inst.agent_id(x).to_owned()])
                .collect(),
            deficient: checks.deficient.iter().map(|&b| inst.resource_id(b).to_owned()).collect(),
        }
    }
}

/// Result of one command: rendered as a single JSON object or as text.
#[derive(Serialize)]
pub struct Report {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<Params>,
    pub verdict: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<[String; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violations: Option<Violations>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
    pub stats: Stats,
    /// Text written verbatim to stdout in text mode (instances, matchings).
    #[serde(skip)]
    pub body: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, verdict: impl Into<Value>) -> Self {
        Report {
            command,
            params: None,
            verdict: verdict.into(),
            size: None,
            matching: None,
            violations: None,
            extra: Map::new(),
            stats: Stats::default(),
            body: None,
        }
    }

    pub fn with_matching(mut self, inst: &Instance, m: &Matching) -> Self {
        self.size = Some(m.len());
        self.matching = Some(
            m.id_pairs(inst)
                .into_iter()
                .map(|(a, b)| [a.to_owned(), b.to_owned()])
                .collect(),
        );
        self
    }

    pub fn extra(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.extra.insert(key.to_owned(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        if let Some(body) = &self.body {
            return body.clone();
        }
        let mut out = String::new();
        match &self.verdict {
            Value::String(s) => writeln!(out, "verdict {s}").unwrap(),
            Value::Object(map) => {
                for (k, v) in map {
                    writeln!(out, "{k} {v}").unwrap();
                }
            }
            other => writeln!(out, "verdict {other}").unwrap(),
        }
        if let Some(p) = &self.params {
            writeln!(
                out,
                "q {}\nell_lq {}\nd {}\nn_d {}\na_bar {}\nt {}\ns {}",
                p.q, p.ell_lq, p.d, p.n_d, p.a_bar, p.t, p.s
            )
            .unwrap();
        }
        for (k, v) in &self.extra {
            match v {
                Value::String(s) => writeln!(out, "{k} {s}").unwrap(),
                v => writeln!(out, "{k} {v}").unwrap(),
            }
        }
        if let Some(v) = &self.violations {
            for [a, b] in &v.blocking_pairs {
                writeln!(out, "blocking {a} {b}").unwrap();
            }
            for [a, x] in &v.envy_pairs {
                writeln!(out, "envy {a} {x}").unwrap();
            }
            for b in &v.deficient {
                writeln!(out, "deficient {b}").unwrap();
            }
        }
        if let Some(size) = self.size {
            writeln!(out, "size {size}").unwrap();
        }
        if let Some(m) = &self.matching {
            for [a, b] in m {
                writeln!(out, "match {a} {b}").unwrap();
            }
        }
        if self.command.starts_with("solve") {
            writeln!(out, "assignments_enumerated {}", self.stats.assignments_enumerated).unwrap();
        }
        out
    }
}
