//! Constructive proofs run as programs. Every extractor walks the case
//! analysis step by step, records each choice in a trace, and returns either
//! a certified structure or a report naming the step that ran dry.
//!
//! A recorded trace can be fed back in: choices are then taken from the
//! trace instead of the smallest-index default, after a legality check.

mod brute;
mod clear;
mod cone_tree;
mod crystallized;
mod phantom_crystal;
mod two_tree;

pub use brute::brute_force_crystal;
pub use clear::clear_crystal;
pub use cone_tree::{phantom_to_cone_tree, validate_cone_tree, ConeTree, ConeTreeNode, ConeTreeRequest};
pub use crystallized::find_crystallized_vertex;
pub use phantom_crystal::{phantom_to_crystal, validate_clique_family};
pub use two_tree::{embed_2_tree, grow_2_tree, GrowParams};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::detectors::Witness;
use crate::error::{Error, Result};
use crate::structures::Crystal;

/// Deepest recursion any extractor will enter.
pub const MAX_RECURSION: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: String,
    pub chosen: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ViolationCause {
    /// A selection needed `needed` candidates and found `available`.
    Shortfall { needed: usize, available: usize },
    /// The host is outside the class the proof assumes.
    NotInClass { witness: Witness },
    /// The assembled structure failed its final check.
    Rejected { detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisViolation {
    pub step: String,
    #[serde(flatten)]
    pub cause: ViolationCause,
}

impl HypothesisViolation {
    pub(crate) fn shortfall(step: impl Into<String>, needed: usize, available: usize) -> Self {
        Self { step: step.into(), cause: ViolationCause::Shortfall { needed, available } }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "variant", content = "payload", rename_all = "kebab-case")]
pub enum Outcome {
    Crystal(Crystal),
    CliqueFamily(Vec<Vec<usize>>),
    ConeTree(ConeTree),
    /// `map[v]` is the host vertex playing pattern vertex `v`.
    Embedding(Vec<usize>),
    HypothesisViolation(HypothesisViolation),
}

impl Outcome {
    pub fn variant(&self) -> &'static str {
        match self {
            Outcome::Crystal(_) => "crystal",
            Outcome::CliqueFamily(_) => "clique-family",
            Outcome::ConeTree(_) => "cone-tree",
            Outcome::Embedding(_) => "embedding",
            Outcome::HypothesisViolation(_) => "hypothesis-violation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extraction {
    #[serde(flatten)]
    pub outcome: Outcome,
    pub trace: Vec<TraceStep>,
}

/// Records choices, or replays them from an earlier trace.
pub(crate) struct Tracer {
    replay: Option<VecDeque<TraceStep>>,
    steps: Vec<TraceStep>,
}

impl Tracer {
    pub(crate) fn new(replay: Option<&[TraceStep]>) -> Self {
        Self { replay: replay.map(|r| r.iter().cloned().collect()), steps: Vec::new() }
    }

    fn next_recorded(&mut self, step: &str) -> Result<Option<TraceStep>> {
        let Some(queue) = self.replay.as_mut() else { return Ok(None) };
        match queue.pop_front() {
            Some(rec) if rec.step == step => Ok(Some(rec)),
            Some(rec) => Err(Error::InvalidInput(format!("trace diverged: expected step {step:?}, found {:?}", rec.step))),
            None => Err(Error::InvalidInput(format!("trace ended before step {step:?}"))),
        }
    }

    /// A branch fixed by earlier choices; a replayed trace must agree.
    pub(crate) fn note(&mut self, step: impl Into<String>, chosen: Vec<usize>) -> Result<()> {
        let step = step.into();
        if let Some(rec) = self.next_recorded(&step)? {
            if rec.chosen != chosen {
                return Err(Error::InvalidInput(format!("trace diverged at {step:?}")));
            }
        }
        self.steps.push(TraceStep { step, chosen });
        Ok(())
    }

    /// A free choice. `None` from the default means nothing qualifies; the
    /// step is then left unrecorded.
    pub(crate) fn choose(
        &mut self,
        step: impl Into<String>,
        default: Option<Vec<usize>>,
        legal: impl Fn(&[usize]) -> bool,
    ) -> Result<Option<Vec<usize>>> {
        let step = step.into();
        if default.is_none() && self.replay.as_ref().is_none_or(|q| q.front().is_none_or(|r| r.step != step)) {
            return Ok(None);
        }
        let chosen = match self.next_recorded(&step)? {
            Some(rec) => {
                if !legal(&rec.chosen) {
                    return Err(Error::InvalidInput(format!("replayed choice at {step:?} is not legal")));
                }
                rec.chosen
            }
            None => default.expect("checked above"),
        };
        self.steps.push(TraceStep { step, chosen: chosen.clone() });
        Ok(Some(chosen))
    }

    pub(crate) fn finish(self) -> Result<Vec<TraceStep>> {
        match self.replay {
            Some(rest) if !rest.is_empty() => Err(Error::InvalidInput(format!("{} trace steps left unused", rest.len()))),
            _ => Ok(self.steps),
        }
    }
}

/// Distinct entries, all drawn from `pool`.
pub(crate) fn distinct_within(chosen: &[usize], pool: &[usize]) -> bool {
    chosen.iter().all(|v| pool.contains(v)) && chosen.iter().enumerate().all(|(i, v)| !chosen[..i].contains(v))
}
