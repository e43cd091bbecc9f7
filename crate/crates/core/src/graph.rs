//! Graph substrate: dense-index simple graphs stored as bit rows, vertex
//! sets, digraphs and induced paths.
//!
//! Every other module works on [`Graph`]. Vertices are the integers
//! `0..n`; structures built on top of a graph only ever store indices.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{invalid, Result};

/// A set of vertex indices.
#[derive(Clone, Default)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn from_bits(bits: FixedBitSet) -> Self {
        Self { bits }
    }

    pub fn insert(&mut self, v: usize) {
        self.bits.grow(v + 1);
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.bits.len() {
            self.bits.set(v, false);
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn max(&self) -> Option<usize> {
        self.bits.maximum()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.grow(other.bits.len());
        bits.union_with(&other.bits);
        Self { bits }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Self { bits }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self { bits }
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.bits.ones().eq(other.bits.ones())
    }
}

impl Eq for VertexSet {}

impl std::hash::Hash for VertexSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for v in self.bits.ones() {
            v.hash(state);
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Finite simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<FixedBitSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: (0..n).map(|_| FixedBitSet::with_capacity(n)).collect(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u},{v}) out of range for n={n}"));
            }
            if u == v {
                return invalid(format!("self-loop at {u}"));
            }
            g.link(u, v);
        }
        Ok(g)
    }

    /// Copy of `self` with extra edges. Existing edges are ignored.
    pub fn with_edges_added<I>(&self, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = self.clone();
        for (u, v) in edges {
            if u >= self.n || v >= self.n || u == v {
                return invalid(format!("cannot add edge ({u},{v}) to a graph on {}", self.n));
            }
            g.link(u, v);
        }
        Ok(g)
    }

    /// Copy of `self` without the given edges. Non-edges are ignored.
    pub fn with_edges_removed<I>(&self, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = self.clone();
        for (u, v) in edges {
            if u < self.n && v < self.n {
                g.adj[u].set(v, false);
                g.adj[v].set(u, false);
            }
        }
        g
    }

    pub(crate) fn link(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    /// Appends an isolated vertex and returns its index.
    pub(crate) fn push_vertex(&mut self) -> usize {
        let v = self.n;
        self.n += 1;
        for row in &mut self.adj {
            row.grow(self.n);
        }
        self.adj.push(FixedBitSet::with_capacity(self.n));
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    /// Open neighborhood as a bit row of length `n`.
    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn neighborhood(&self, v: usize) -> VertexSet {
        VertexSet::from_bits(self.adj[v].clone())
    }

    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = self.neighborhood(v);
        s.insert(v);
        s
    }

    /// Vertices outside `x` with a neighbor in `x`.
    pub fn set_neighborhood(&self, x: &VertexSet) -> VertexSet {
        let mut bits = FixedBitSet::with_capacity(self.n);
        for v in x.iter() {
            bits.union_with(&self.adj[v]);
        }
        bits.difference_with(x.bits());
        VertexSet::from_bits(bits)
    }

    /// Number of neighbors of `v` inside `x`.
    pub fn degree_into(&self, v: usize, x: &VertexSet) -> usize {
        self.adj[v].intersection_count(x.bits())
    }

    pub fn neighbors_in(&self, v: usize, x: &VertexSet) -> VertexSet {
        let mut bits = self.adj[v].clone();
        bits.intersect_with(x.bits());
        VertexSet::from_bits(bits)
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n {
            for v in self.adj[u].ones() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertex_set(&self) -> VertexSet {
        (0..self.n).collect()
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.link(u, v);
                }
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let all = self.vertex_set();
        self.component_of(0, &all).len() == self.n
    }

    /// The component of `start` in `G[within]`.
    pub fn component_of(&self, start: usize, within: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::with_capacity(self.n);
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for w in self.adj[u].ones() {
                if within.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Shortest path from `s` to `t` whose interior lies in `allowed`.
    ///
    /// Ties are broken towards smaller indices, so the result is
    /// reproducible. A shortest path is always induced.
    pub fn shortest_path_within(&self, s: usize, t: usize, allowed: &VertexSet) -> Option<Vec<usize>> {
        if s == t {
            return Some(vec![s]);
        }
        let mut parent = vec![usize::MAX; self.n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in self.adj[u].ones() {
                if parent[w] != usize::MAX {
                    continue;
                }
                if w == t {
                    parent[w] = u;
                    let mut path = vec![t];
                    let mut cur = u;
                    while cur != s {
                        path.push(cur);
                        cur = parent[cur];
                    }
                    path.push(s);
                    path.reverse();
                    return Some(path);
                }
                if allowed.contains(w) {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    fn check_set(&self, x: &VertexSet) -> Result<()> {
        match x.max() {
            Some(v) if v >= self.n => invalid(format!("vertex {v} out of range for n={}", self.n)),
            _ => Ok(()),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Result of [`induced_subgraph`]: the subgraph plus both index maps.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub old_to_new: BTreeMap<usize, usize>,
    pub new_to_old: Vec<usize>,
}

/// `G[X]`, with vertices renumbered in increasing order of their old index.
pub fn induced_subgraph(g: &Graph, x: &VertexSet) -> Result<InducedSubgraph> {
    g.check_set(x)?;
    let new_to_old = x.to_vec();
    let old_to_new: BTreeMap<usize, usize> = new_to_old.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut h = Graph::empty(new_to_old.len());
    for (i, &u) in new_to_old.iter().enumerate() {
        for w in g.neighbors(u) {
            if let Some(&j) = old_to_new.get(&w) {
                if i < j {
                    h.link(i, j);
                }
            }
        }
    }
    Ok(InducedSubgraph {
        graph: h,
        old_to_new,
        new_to_old,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetRelation {
    Complete,
    Anticomplete,
    Mixed,
}

/// How two disjoint sets see each other. Empty sides count as anticomplete.
pub fn set_relation(g: &Graph, x: &VertexSet, y: &VertexSet) -> Result<SetRelation> {
    g.check_set(x)?;
    g.check_set(y)?;
    if !x.is_disjoint(y) {
        return invalid("set_relation needs disjoint sets");
    }
    let pairs = x.len() * y.len();
    let cross: usize = x.iter().map(|v| g.degree_into(v, y)).sum();
    Ok(if cross == 0 {
        SetRelation::Anticomplete
    } else if cross == pairs {
        SetRelation::Complete
    } else {
        SetRelation::Mixed
    })
}

pub fn is_anticomplete(g: &Graph, x: &VertexSet, y: &VertexSet) -> bool {
    x.iter().all(|v| g.degree_into(v, y) == 0)
}

pub fn is_complete_to(g: &Graph, x: &VertexSet, y: &VertexSet) -> bool {
    let ylen = y.len();
    x.iter().all(|v| g.degree_into(v, y) == ylen)
}

pub fn is_stable_set(g: &Graph, x: &VertexSet) -> bool {
    x.iter().all(|v| g.degree_into(v, x) == 0)
}

pub fn is_clique(g: &Graph, x: &VertexSet) -> bool {
    let k = x.len();
    x.iter().all(|v| g.degree_into(v, x) + 1 == k)
}

/// Line graph plus the edge behind each of its vertices.
pub fn line_graph(g: &Graph) -> (Graph, Vec<(usize, usize)>) {
    let edges = g.edges();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut l = Graph::empty(edges.len());
    for list in &incident {
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                l.link(i, j);
            }
        }
    }
    (l, edges)
}

/// Replaces each edge `e` by a path with `times[e]` new interior vertices.
///
/// Keys are normalized to `(min, max)`; missing keys mean zero. New vertices
/// are appended in edge order.
pub fn subdivide(g: &Graph, times: &BTreeMap<(usize, usize), usize>) -> Result<Graph> {
    for &(u, v) in times.keys() {
        if !g.has_edge(u, v) {
            return invalid(format!("({u},{v}) is not an edge"));
        }
    }
    let count = |u: usize, v: usize| -> usize {
        times
            .get(&(u.min(v), u.max(v)))
            .or_else(|| times.get(&(u.max(v), u.min(v))))
            .copied()
            .unwrap_or(0)
    };
    let mut h = Graph::empty(g.n());
    for (u, v) in g.edges() {
        let k = count(u, v);
        let mut prev = u;
        for _ in 0..k {
            let w = h.push_vertex();
            h.link(prev, w);
            prev = w;
        }
        h.link(prev, v);
    }
    Ok(h)
}

/// Simple digraph; antiparallel arcs may coexist.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out: Vec<FixedBitSet>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            out: (0..n).map(|_| FixedBitSet::with_capacity(n)).collect(),
        }
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut d = Self::empty(n);
        for (u, v) in arcs {
            if u >= n || v >= n || u == v {
                return invalid(format!("bad arc ({u},{v}) for n={n}"));
            }
            d.out[u].insert(v);
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn out_row(&self, v: usize) -> &FixedBitSet {
        &self.out[v]
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|u| self.out[u].ones().map(move |v| (u, v))).collect()
    }

    /// Underlying undirected graph.
    pub fn underlying(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.arcs() {
            g.link(u, v);
        }
        g
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs={:?})", self.n, self.arcs())
    }
}

/// A path in the induced sense: consecutive vertices adjacent, all other
/// pairs non-adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InducedPath {
    vertices: Vec<usize>,
}

impl InducedPath {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return invalid("a path needs at least one vertex");
        }
        let set: VertexSet = vertices.iter().collect();
        if set.len() != vertices.len() {
            return invalid("path repeats a vertex");
        }
        g.check_set(&set)?;
        for i in 0..vertices.len() {
            for j in (i + 1)..vertices.len() {
                let adjacent = g.has_edge(vertices[i], vertices[j]);
                if adjacent != (j == i + 1) {
                    return invalid(format!(
                        "sequence is not an induced path at ({}, {})",
                        vertices[i], vertices[j]
                    ));
                }
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn ends(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    /// `P*`: everything but the ends.
    pub fn interior(&self) -> &[usize] {
        if self.vertices.len() <= 2 {
            &[]
        } else {
            &self.vertices[1..self.vertices.len() - 1]
        }
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path};

    #[test]
    fn induced_subgraph_identity_and_cycle_slice() {
        let k4 = complete(4);
        let all = k4.vertex_set();
        assert_eq!(induced_subgraph(&k4, &all).unwrap().graph, k4);

        let c5 = cycle(5);
        let sub = induced_subgraph(&c5, &[1, 2, 3].iter().collect()).unwrap();
        assert_eq!(sub.graph, path(3));
        assert_eq!(sub.new_to_old, vec![1, 2, 3]);
    }

    #[test]
    fn induced_subgraph_rejects_out_of_range() {
        let g = path(3);
        let x: VertexSet = [0, 7].iter().collect();
        assert!(induced_subgraph(&g, &x).is_err());
    }

    #[test]
    fn set_relation_cases() {
        let k4 = complete(4);
        let a: VertexSet = [0, 1].iter().collect();
        let b: VertexSet = [2, 3].iter().collect();
        assert_eq!(set_relation(&k4, &a, &b).unwrap(), SetRelation::Complete);

        let e = Graph::empty(2);
        let s0: VertexSet = [0].iter().collect();
        let s1: VertexSet = [1].iter().collect();
        assert_eq!(set_relation(&e, &s0, &s1).unwrap(), SetRelation::Anticomplete);

        let p4 = path(4);
        let y: VertexSet = [1, 3].iter().collect();
        assert_eq!(set_relation(&p4, &s0, &y).unwrap(), SetRelation::Mixed);

        assert!(set_relation(&p4, &y, &y).is_err());
    }

    #[test]
    fn stable_sets() {
        assert!(is_stable_set(&cycle(4), &[0, 2].iter().collect()));
        assert!(!is_stable_set(&complete(3), &[0, 1].iter().collect()));
    }

    #[test]
    fn line_graphs() {
        assert_eq!(line_graph(&path(3)).0, complete(2));
        assert_eq!(line_graph(&complete(3)).0, complete(3));
    }

    #[test]
    fn subdivision_basics() {
        let k3 = complete(3);
        let all_one: BTreeMap<_, _> = k3.edges().into_iter().map(|e| (e, 1)).collect();
        let c6 = subdivide(&k3, &all_one).unwrap();
        assert_eq!(c6.n(), 6);
        assert!((0..6).all(|v| c6.degree(v) == 2));
        assert!(c6.is_connected());
        assert_eq!(subdivide(&k3, &BTreeMap::new()).unwrap(), k3);

        let bad: BTreeMap<_, _> = [((0, 3), 1)].into_iter().collect();
        assert!(subdivide(&path(4), &bad).is_err());
    }

    #[test]
    fn induced_path_validation() {
        let c5 = cycle(5);
        let p = InducedPath::new(&c5, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(p.ends(), (0, 3));
        assert_eq!(p.interior(), &[1, 2]);
        assert_eq!(p.len(), 3);
        // 0-1-2-3-4 closes back to 0 in C5.
        assert!(InducedPath::new(&c5, vec![0, 1, 2, 3, 4]).is_err());
        assert!(InducedPath::new(&c5, vec![0, 2]).is_err());
    }

    #[test]
    fn shortest_path_respects_allowed() {
        let c6 = cycle(6);
        let allowed: VertexSet = [4, 5].iter().collect();
        assert_eq!(c6.shortest_path_within(0, 3, &allowed), Some(vec![0, 5, 4, 3]));
        let none = VertexSet::new();
        assert_eq!(c6.shortest_path_within(0, 3, &none), None);
    }
}
