use std::time::Instant;

use obslab::io::graph_to_json;
use obslab::Graph;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::Status;

pub const SCHEMA: &str = "obslab.run/1";

/// One checked instance of a suite.
pub struct Instance {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
    pub counterexample: Option<Graph>,
}

impl Instance {
    pub fn new(name: impl Into<String>, pass: bool, detail: Value) -> Self {
        Self { name: name.into(), pass, detail, counterexample: None }
    }

    /// Attaches `g` as the counterexample when the instance failed.
    pub fn against(mut self, g: &Graph) -> Self {
        if !self.pass {
            self.counterexample = Some(g.clone());
        }
        self
    }

    pub fn error(name: impl Into<String>, e: impl std::fmt::Display) -> Self {
        Self::new(name, false, serde_json::json!({ "error": e.to_string() }))
    }
}

#[derive(Serialize)]
struct InstanceLine<'a> {
    schema: &'static str,
    kind: &'static str,
    suite: &'a str,
    index: usize,
    instance: &'a str,
    pass: bool,
    detail: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<Value>,
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    schema: &'static str,
    kind: &'static str,
    suite: &'a str,
    command: &'a [String],
    seed: u64,
    instances: usize,
    passed: usize,
    failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    extra: Option<Value>,
    elapsed_ms: u128,
}

/// Worker pool capped by `OBSLAB_THREADS` when set.
fn pool() -> rayon::ThreadPool {
    let threads = std::env::var("OBSLAB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0);
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    b.build().expect("thread pool starts")
}

/// `f` over `items` on the pool; results stay in item order.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    pool().install(|| items.par_iter().map(f).collect())
}

pub struct Report<'a> {
    pub suite: &'a str,
    pub command: &'a [String],
    pub seed: u64,
    pub started: Instant,
    pub extra: Option<Value>,
}

impl Report<'_> {
    /// Prints one line per instance and a closing summary; a failed
    /// instance makes the run a violation.
    pub fn print(self, instances: &[Instance]) -> Status {
        for (index, inst) in instances.iter().enumerate() {
            let line = InstanceLine {
                schema: SCHEMA,
                kind: "instance",
                suite: self.suite,
                index,
                instance: &inst.name,
                pass: inst.pass,
                detail: &inst.detail,
                counterexample: inst.counterexample.as_ref().map(|g| serde_json::from_str(&graph_to_json(g)).expect("graph JSON parses")),
            };
            println!("{}", serde_json::to_string(&line).expect("report serializes"));
        }
        let passed = instances.iter().filter(|i| i.pass).count();
        let summary = SummaryLine {
            schema: SCHEMA,
            kind: "summary",
            suite: self.suite,
            command: self.command,
            seed: self.seed,
            instances: instances.len(),
            passed,
            failed: instances.len() - passed,
            extra: self.extra,
            elapsed_ms: self.started.elapsed().as_millis(),
        };
        println!("{}", serde_json::to_string(&summary).expect("report serializes"));
        if passed == instances.len() {
            Status::Ok
        } else {
            Status::Violation
        }
    }
}
