//! Exact treewidth on small graphs, heuristic bounds beyond, and a
//! literal checker for tree decompositions.

use serde::{Deserialize, Serialize};

use crate::detectors::max_clique;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::structures::Validity;

pub const DEFAULT_EXACT_GUARD: usize = 22;
/// The DP table has `2^n` bytes; no guard may exceed this.
pub const EXACT_HARD_CAP: usize = 26;

/// Bags indexed by tree node; `edges` are tree edges between node indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum DecompositionViolation {
    /// The node graph is not a tree, or a bag names a vertex outside `G`.
    Shape { detail: String },
    VertexUncovered { vertex: usize },
    EdgeUncovered { u: usize, v: usize },
    /// The nodes holding `vertex` do not induce a subtree.
    Disconnected { vertex: usize },
}

pub fn verify_decomposition(g: &Graph, td: &TreeDecomposition) -> Validity<DecompositionViolation> {
    use DecompositionViolation::*;
    let k = td.bags.len();
    let shape = |detail: String| Validity::Invalid(Shape { detail });
    if k == 0 {
        return shape("no bags".into());
    }
    if let Some(v) = td.bags.iter().flatten().find(|&&v| v >= g.n()) {
        return shape(format!("bag vertex {v} out of range"));
    }
    if td.edges.len() != k - 1 {
        return shape(format!("{} tree edges for {k} nodes", td.edges.len()));
    }
    let mut tree = Graph::empty(k);
    for &(a, b) in &td.edges {
        if a >= k || b >= k || a == b || tree.has_edge(a, b) {
            return shape(format!("bad tree edge {a}-{b}"));
        }
        tree.link(a, b);
    }
    if !tree.is_connected() {
        return shape("tree is disconnected".into());
    }
    let holders: Vec<VertexSet> = (0..g.n())
        .map(|v| (0..k).filter(|&i| td.bags[i].contains(&v)).collect())
        .collect();
    if let Some(v) = (0..g.n()).find(|&v| holders[v].is_empty()) {
        return Validity::Invalid(VertexUncovered { vertex: v });
    }
    for (u, v) in g.edges() {
        if holders[u].is_disjoint(&holders[v]) {
            return Validity::Invalid(EdgeUncovered { u, v });
        }
    }
    for (v, h) in holders.iter().enumerate() {
        let start = h.iter().next().expect("non-empty");
        if tree.component_of(start, h).len() != h.len() {
            return Validity::Invalid(Disconnected { vertex: v });
        }
    }
    Validity::Valid
}

/// Decomposition from an elimination order: one bag per vertex holding it
/// and its later neighbours in the fill graph; each bag hangs off the bag
/// of its earliest later neighbour.
pub fn decomposition_from_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition { bags: vec![Vec::new()], edges: Vec::new() };
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut fill: Vec<VertexSet> = (0..n).map(|v| g.neighborhood(v)).collect();
    let mut bags = vec![Vec::new(); n];
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for &v in order {
        let later: Vec<usize> = fill[v].iter().filter(|&u| pos[u] > pos[v]).collect();
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                fill[a].insert(b);
                fill[b].insert(a);
            }
        }
        let mut bag = later.clone();
        bag.push(v);
        bag.sort_unstable();
        bags[pos[v]] = bag;
        match later.iter().min_by_key(|&&u| pos[u]) {
            Some(&p) => edges.push((pos[v], pos[p])),
            None => roots.push(pos[v]),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition { bags, edges }
}

fn elimination_width(g: &Graph, order: &[usize]) -> usize {
    decomposition_from_order(g, order).width()
}

/// Greedy elimination choosing by `score` (lowest wins, then lowest index).
fn greedy_order(g: &Graph, score: impl Fn(&[VertexSet], &VertexSet, usize) -> usize) -> Vec<usize> {
    let n = g.n();
    let mut fill: Vec<VertexSet> = (0..n).map(|v| g.neighborhood(v)).collect();
    let mut alive = g.vertex_set();
    let mut order = Vec::with_capacity(n);
    while !alive.is_empty() {
        let v = alive
            .iter()
            .min_by_key(|&v| (score(&fill, &alive, v), v))
            .expect("non-empty");
        let nb: Vec<usize> = fill[v].intersection(&alive).iter().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                fill[a].insert(b);
                fill[b].insert(a);
            }
        }
        alive.remove(v);
        order.push(v);
    }
    order
}

fn min_degree_score(fill: &[VertexSet], alive: &VertexSet, v: usize) -> usize {
    fill[v].intersection(alive).len()
}

fn min_fill_score(fill: &[VertexSet], alive: &VertexSet, v: usize) -> usize {
    let nb: Vec<usize> = fill[v].intersection(alive).iter().collect();
    let mut missing = 0;
    for (i, &a) in nb.iter().enumerate() {
        missing += nb[i + 1..].iter().filter(|&&b| !fill[a].contains(b)).count();
    }
    missing
}

/// Best of min-fill and min-degree elimination.
pub fn tw_upper(g: &Graph) -> (usize, TreeDecomposition) {
    let a = greedy_order(g, min_fill_score);
    let b = greedy_order(g, min_degree_score);
    let order = if elimination_width(g, &b) < elimination_width(g, &a) { b } else { a };
    let td = decomposition_from_order(g, &order);
    (td.width(), td)
}

/// `max(ω - 1, contraction degeneracy bound)`.
pub fn tw_lower(g: &Graph) -> usize {
    let omega = max_clique(g).len();
    omega.saturating_sub(1).max(minor_min_width(g))
}

/// Repeatedly contract a minimum-degree vertex into its minimum-degree
/// neighbour, tracking the largest minimum degree seen.
fn minor_min_width(g: &Graph) -> usize {
    let n = g.n();
    let mut adj: Vec<VertexSet> = (0..n).map(|v| g.neighborhood(v)).collect();
    let mut alive = g.vertex_set();
    let mut best = 0;
    while alive.len() > 1 {
        let v = alive.iter().min_by_key(|&v| (adj[v].len(), v)).expect("non-empty");
        best = best.max(adj[v].len());
        if let Some(u) = adj[v].iter().min_by_key(|&u| (adj[u].len(), u)) {
            for w in adj[v].to_vec() {
                adj[w].remove(v);
                if w != u {
                    adj[w].insert(u);
                    adj[u].insert(w);
                }
            }
        }
        adj[v] = VertexSet::new();
        alive.remove(v);
    }
    best
}

pub fn treewidth_exact(g: &Graph) -> Result<(usize, TreeDecomposition)> {
    treewidth_exact_with_guard(g, DEFAULT_EXACT_GUARD)
}

/// Exact treewidth by dynamic programming over eliminated sets:
/// `TW(S ∪ {v}) = min max(TW(S), Q(S, v))`, where `Q(S, v)` counts the
/// vertices outside `S ∪ {v}` reachable from `v` through `S`.
pub fn treewidth_exact_with_guard(g: &Graph, guard: usize) -> Result<(usize, TreeDecomposition)> {
    let n = g.n();
    let limit = guard.min(EXACT_HARD_CAP);
    if n > limit {
        return Err(Error::ScaleLimit {
            what: "exact treewidth vertices",
            limit,
            actual: n,
        });
    }
    if n == 0 {
        return Ok((0, decomposition_from_order(g, &[])));
    }
    let (ub, upper_td) = tw_upper(g);
    if tw_lower(g) == ub {
        return Ok((ub, upper_td));
    }
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v).fold(0u64, |m, u| m | 1 << u)).collect();
    let full: u64 = (1u64 << n) - 1;
    let mut table = vec![u8::MAX; 1usize << n];
    table[0] = 0;
    let mut comps: Vec<(u64, u64)> = Vec::with_capacity(n);
    for s in 0..=full {
        let cur = table[s as usize];
        if cur as usize >= ub || s == full {
            continue;
        }
        components(&adj, s, &mut comps);
        let mut rest = full & !s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let q = q_value(&adj, s, v, &comps);
            let val = cur.max(q as u8);
            let t = (s | 1 << v) as usize;
            if (val as usize) < ub && val < table[t] {
                table[t] = val;
            }
        }
    }
    let best = table[full as usize];
    if best as usize >= ub {
        return Ok((ub, upper_td));
    }
    let mut order_rev = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let target = table[s as usize];
        let mut chosen = None;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let t = s & !(1 << v);
            if table[t as usize] == u8::MAX {
                continue;
            }
            components(&adj, t, &mut comps);
            if table[t as usize].max(q_value(&adj, t, v, &comps) as u8) == target {
                chosen = Some(v);
                break;
            }
        }
        let v = chosen.ok_or_else(|| Error::Internal("treewidth table has no witness".into()))?;
        order_rev.push(v);
        s &= !(1 << v);
    }
    order_rev.reverse();
    let td = decomposition_from_order(g, &order_rev);
    debug_assert_eq!(td.width(), best as usize);
    Ok((best as usize, td))
}

/// Components of `G[s]` with their outer neighbourhoods.
fn components(adj: &[u64], s: u64, out: &mut Vec<(u64, u64)>) {
    out.clear();
    let mut rest = s;
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        let mut frontier = comp;
        let mut reach = 0u64;
        while frontier != 0 {
            let mut nb = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                nb |= adj[v];
            }
            reach |= nb;
            frontier = nb & s & !comp;
            comp |= frontier;
        }
        out.push((comp, reach & !s));
        rest &= !comp;
    }
}

fn q_value(adj: &[u64], s: u64, v: usize, comps: &[(u64, u64)]) -> u32 {
    let mut reach = adj[v];
    for &(c, outside) in comps {
        if adj[v] & c != 0 {
            reach |= outside;
        }
    }
    (reach & !s & !(1u64 << v)).count_ones()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, cycle, path, random_graph, wall, WallSpec};

    #[test]
    fn known_values() {
        assert_eq!(treewidth_exact(&complete(5)).unwrap().0, 4);
        assert_eq!(treewidth_exact(&path(7)).unwrap().0, 1);
        assert_eq!(treewidth_exact(&complete_bipartite(3, 3)).unwrap().0, 3);
        assert_eq!(treewidth_exact(&cycle(9)).unwrap().0, 2);
        assert_eq!(treewidth_exact(&Graph::empty(3)).unwrap().0, 0);
    }

    #[test]
    fn bounds_sandwich() {
        let k6 = complete(6);
        assert_eq!((tw_upper(&k6).0, tw_lower(&k6)), (5, 5));
        let c9 = cycle(9);
        assert_eq!((tw_upper(&c9).0, tw_lower(&c9)), (2, 2));
        let w5 = wall(WallSpec { t: 5 }).unwrap();
        assert!(tw_lower(&w5) >= 2);
        assert!(tw_upper(&w5).0 >= 5);
    }

    #[test]
    fn exact_outputs_verify() {
        for seed in 0..20 {
            let g = random_graph(11, 0.35, seed);
            let (w, td) = treewidth_exact(&g).unwrap();
            assert!(verify_decomposition(&g, &td).is_valid());
            assert_eq!(td.width(), w);
            assert!(tw_lower(&g) <= w && w <= tw_upper(&g).0);
        }
    }

    #[test]
    fn uncovered_edge_reported() {
        let k3 = complete(3);
        let ok = TreeDecomposition { bags: vec![vec![0, 1, 2]], edges: vec![] };
        assert!(verify_decomposition(&k3, &ok).is_valid());
        let bad = TreeDecomposition { bags: vec![vec![0, 1], vec![1, 2]], edges: vec![(0, 1)] };
        assert_eq!(
            verify_decomposition(&k3, &bad),
            Validity::Invalid(DecompositionViolation::EdgeUncovered { u: 0, v: 2 })
        );
    }

    #[test]
    fn guard_is_enforced() {
        assert!(matches!(treewidth_exact(&path(23)), Err(Error::ScaleLimit { .. })));
    }
}
