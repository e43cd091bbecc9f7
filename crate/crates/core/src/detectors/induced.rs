use std::collections::BTreeMap;

use super::witness::{Witness, WitnessKind};
use super::SearchLimits;
use crate::error::{invalid, Result};
use crate::graph::Graph;

/// Whether `map[i]` for each vertex `i` of `h` is an injective map onto an
/// induced copy of `h` in `g`.
pub fn is_induced_embedding(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    if map.len() != h.n() || map.iter().any(|&v| v >= g.n()) {
        return false;
    }
    for i in 0..map.len() {
        for j in (i + 1)..map.len() {
            if map[i] == map[j] || g.has_edge(map[i], map[j]) != h.has_edge(i, j) {
                return false;
            }
        }
    }
    true
}

/// Backtracking search for an induced copy of `h`; pattern vertices are
/// placed most-constrained first, host candidates in index order.
pub fn contains_induced(g: &Graph, h: &Graph, limits: &SearchLimits) -> Result<Option<Witness>> {
    limits.check("induced subgraph search", g.n())?;
    if h.n() > g.n() {
        return invalid(format!("pattern has {} vertices, host only {}", h.n(), g.n()));
    }
    let order = placement_order(h);
    let mut map = vec![usize::MAX; h.n()];
    let mut used = vec![false; g.n()];
    if place(g, h, &order, 0, &mut map, &mut used) {
        let roles: BTreeMap<usize, String> = map.iter().enumerate().map(|(i, &v)| (v, format!("h{i}"))).collect();
        return Ok(Some(Witness::new(WitnessKind::InducedCopy, vec![map], roles)));
    }
    Ok(None)
}

fn placement_order(h: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(h.n());
    let mut placed = vec![false; h.n()];
    for _ in 0..h.n() {
        let v = (0..h.n())
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = order.iter().filter(|&&u| h.has_edge(u, v)).count();
                (links, h.degree(v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex");
        placed[v] = true;
        order.push(v);
    }
    order
}

fn place(g: &Graph, h: &Graph, order: &[usize], k: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if k == order.len() {
        return true;
    }
    let hv = order[k];
    for gv in 0..g.n() {
        if used[gv] || g.degree(gv) < h.degree(hv) {
            continue;
        }
        let consistent = order[..k].iter().all(|&hu| g.has_edge(map[hu], gv) == h.has_edge(hu, hv));
        if !consistent {
            continue;
        }
        map[hv] = gv;
        used[gv] = true;
        if place(g, h, order, k + 1, map, used) {
            return true;
        }
        used[gv] = false;
    }
    map[hv] = usize::MAX;
    false
}
