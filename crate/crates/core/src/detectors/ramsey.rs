use serde::Serialize;

use super::clique::{find_clique, find_stable_set};
use super::SearchLimits;
use crate::error::{invalid, Error, Result};
use crate::graph::{is_anticomplete, Digraph, Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "vertices", rename_all = "lowercase")]
pub enum RamseyOutcome {
    Clique(Vec<usize>),
    Stable(Vec<usize>),
    Neither,
}

/// `c^e`, saturating.
fn pow_sat(c: usize, e: usize) -> usize {
    (0..e).fold(1usize, |acc, _| acc.saturating_mul(c))
}

/// A `c`-clique, else a stable `s`-set. On `|V| ≥ c^s` a miss is an
/// internal error.
pub fn find_clique_or_stable(g: &Graph, c: usize, s: usize, limits: &SearchLimits) -> Result<RamseyOutcome> {
    if let Some(w) = find_clique(g, c, limits)? {
        return Ok(RamseyOutcome::Clique(w.vertices));
    }
    if let Some(w) = find_stable_set(g, s, limits)? {
        return Ok(RamseyOutcome::Stable(w.vertices));
    }
    if g.n() >= pow_sat(c, s) {
        return Err(Error::Internal(format!(
            "no {c}-clique and no stable {s}-set on {} >= {c}^{s} vertices",
            g.n()
        )));
    }
    Ok(RamseyOutcome::Neither)
}

/// Indices of `q` pairwise anticomplete sets, the lexicographically least
/// choice: a stable `q`-set in the conflict graph on the sets.
pub fn anticomplete_family(g: &Graph, sets: &[VertexSet], q: usize) -> Result<Option<Vec<usize>>> {
    for (i, a) in sets.iter().enumerate() {
        if a.max().is_some_and(|v| v >= g.n()) {
            return invalid(format!("set {i} leaves the graph"));
        }
        if sets[i + 1..].iter().any(|b| !a.is_disjoint(b)) {
            return invalid(format!("set {i} overlaps a later set"));
        }
    }
    let k = sets.len();
    let mut conflict = Graph::empty(k);
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            if !is_anticomplete(g, &sets[i], &sets[j]) {
                pairs.push((i, j));
            }
        }
    }
    conflict = conflict.with_edges_added(pairs)?;
    let limits = SearchLimits::new(usize::MAX);
    Ok(find_stable_set(&conflict, q, &limits)?.map(|w| w.vertices))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "vertices", rename_all = "lowercase")]
pub enum TournamentOutcome {
    /// Vertices in topological order: every earlier one has an arc to
    /// every later one.
    Tournament(Vec<usize>),
    Stable(Vec<usize>),
    Neither,
}

/// `c` vertices ordered so that each has an arc to all later ones, else
/// `s` vertices with no arcs among them. On `|V| ≥ c^(c^s)` a miss is an
/// internal error.
pub fn acyclic_tournament_or_stable(d: &Digraph, c: usize, s: usize, limits: &SearchLimits) -> Result<TournamentOutcome> {
    limits.check("tournament search", d.n())?;
    let mut seq = Vec::with_capacity(c);
    if chain(d, c, &mut seq) {
        return Ok(TournamentOutcome::Tournament(seq));
    }
    if let Some(w) = find_stable_set(&d.underlying(), s, limits)? {
        return Ok(TournamentOutcome::Stable(w.vertices));
    }
    if d.n() >= pow_sat(c, pow_sat(c, s)) {
        return Err(Error::Internal(format!(
            "no acyclic {c}-tournament and no stable {s}-set on {} vertices",
            d.n()
        )));
    }
    Ok(TournamentOutcome::Neither)
}

fn chain(d: &Digraph, c: usize, seq: &mut Vec<usize>) -> bool {
    if seq.len() == c {
        return true;
    }
    for v in 0..d.n() {
        if seq.contains(&v) || !seq.iter().all(|&u| d.has_arc(u, v)) {
            continue;
        }
        seq.push(v);
        if chain(d, c, seq) {
            return true;
        }
        seq.pop();
    }
    false
}
