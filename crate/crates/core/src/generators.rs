//! Named graph families and planted-structure fixtures.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::error::{invalid, Result};
use crate::graph::{line_graph, subdivide, Graph, VertexSet};
use crate::structures::{Crystal, CrystalArm, Phantom};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            g.link(u, v);
        }
    }
    g
}

/// `K_{s,t}` with sides `0..s` and `s..s+t`.
pub fn complete_bipartite(s: usize, t: usize) -> Graph {
    let mut g = Graph::empty(s + t);
    for u in 0..s {
        for v in s..(s + t) {
            g.link(u, v);
        }
    }
    g
}

/// Path on `n` vertices `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.link(v - 1, v);
    }
    g
}

/// Cycle on `n ≥ 3` vertices; smaller `n` gives a path.
pub fn cycle(n: usize) -> Graph {
    let mut g = path(n);
    if n >= 3 {
        g.link(n - 1, 0);
    }
    g
}

/// `G(n, p)` from a seeded stream; pairs visited in lexicographic order.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if r.gen_bool(p.clamp(0.0, 1.0)) {
                g.link(u, v);
            }
        }
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallSpec {
    pub t: usize,
}

/// The `t`-by-`t` wall.
///
/// Built on `t` rows of `2t` vertices; `(i, j) - (i+1, j)` is an edge when
/// `i + j` is even; pendant vertices are trimmed until none remain. `t = 1`
/// is the single edge.
pub fn wall(spec: WallSpec) -> Result<Graph> {
    let t = spec.t;
    if t == 0 {
        return invalid("wall needs t >= 1");
    }
    if t == 1 {
        return Ok(complete(2));
    }
    let (rows, cols) = (t, 2 * t);
    let id = |i: usize, j: usize| i * cols + j;
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if j + 1 < cols {
                edges.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < rows && (i + j) % 2 == 0 {
                edges.push((id(i, j), id(i + 1, j)));
            }
        }
    }
    let grid = Graph::from_edges(rows * cols, edges)?;
    let mut alive = grid.vertex_set();
    loop {
        let leaf = alive.iter().find(|&v| grid.degree_into(v, &alive) <= 1);
        match leaf {
            Some(v) => alive.remove(v),
            None => break,
        }
    }
    Ok(crate::graph::induced_subgraph(&grid, &alive)?.graph)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObstructionKind {
    Complete,
    Biclique,
    Wall,
    LineOfWall,
}

/// Per-edge subdivision counts in `{1, 2}`, drawn in edge order.
pub fn subdivision_counts(g: &Graph, seed: u64) -> BTreeMap<(usize, usize), usize> {
    let mut r = rng(seed);
    g.edges().into_iter().map(|e| (e, r.gen_range(1..=2))).collect()
}

/// A `t`-basic obstruction. The seed only matters for the wall kinds.
pub fn basic_obstruction(t: usize, kind: ObstructionKind, seed: u64) -> Result<Graph> {
    if t == 0 {
        return invalid("obstructions need t >= 1");
    }
    Ok(match kind {
        ObstructionKind::Complete => complete(t + 1),
        ObstructionKind::Biclique => complete_bipartite(t, t),
        ObstructionKind::Wall | ObstructionKind::LineOfWall => {
            let w = wall(WallSpec { t })?;
            let s = subdivide(&w, &subdivision_counts(&w, seed))?;
            if kind == ObstructionKind::Wall {
                s
            } else {
                line_graph(&s).0
            }
        }
    })
}

/// `F` plus a universal vertex, appended last.
pub fn cone(f: &Graph) -> Graph {
    let mut g = f.clone();
    let apex = g.push_vertex();
    for v in 0..apex {
        g.link(v, apex);
    }
    g
}

/// Rooted tree with parent pointers; the root is vertex 0 and vertices
/// are numbered in breadth-first order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    pub graph: Graph,
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<usize>,
}

/// `T_{d,r}`.
pub fn tree_t(d: usize, r: usize) -> Result<RootedTree> {
    if d == 0 {
        return invalid("T_{d,r} needs d >= 1");
    }
    let mut parent = vec![None];
    let mut depth = vec![0];
    let mut frontier = vec![0];
    for level in 1..=r {
        let mut next = Vec::new();
        for &p in &frontier {
            for _ in 0..d {
                parent.push(Some(p));
                depth.push(level);
                next.push(parent.len() - 1);
            }
        }
        frontier = next;
    }
    let edges = parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (p, v)));
    let graph = Graph::from_edges(parent.len(), edges)?;
    Ok(RootedTree { graph, parent, depth })
}

/// Double star with centres 0 and 1, `a` leaves on 0 then `b` leaves on 1.
/// The middle edge is `(0, 1)`.
pub fn double_star(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return invalid("double star needs a, b >= 1");
    }
    let mut edges = vec![(0, 1)];
    edges.extend((0..a).map(|i| (0, 2 + i)));
    edges.extend((0..b).map(|i| (1, 2 + a + i)));
    Graph::from_edges(2 + a + b, edges)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalSpec {
    /// Leaf counts `(a_i, b_i)` of each double star.
    pub arms: Vec<(usize, usize)>,
}

/// Coned double stars glued along their middle edges.
///
/// Vertices 0 and 1 are the shared middle edge; then, per arm, the apex,
/// its `a_i` leaves on 0, and its `b_i` leaves on 1.
pub fn crystal_graph(spec: &CrystalSpec) -> Result<Graph> {
    if spec.arms.is_empty() {
        return invalid("a crystal needs at least one double star");
    }
    if spec.arms.iter().any(|&(a, b)| a == 0 || b == 0) {
        return invalid("leaf counts must be positive");
    }
    let mut edges = vec![(0, 1)];
    let mut next = 2;
    for &(a, b) in &spec.arms {
        let apex = next;
        next += 1;
        edges.push((apex, 0));
        edges.push((apex, 1));
        for (anchor, count) in [(0, a), (1, b)] {
            for _ in 0..count {
                edges.push((next, anchor));
                edges.push((next, apex));
                next += 1;
            }
        }
    }
    Graph::from_edges(next, edges)
}

/// Random `k`-tree on `n` vertices: `K_k` on `0..k`, then each new vertex
/// joins a uniformly chosen existing `k`-clique.
pub fn k_tree_random(k: usize, n: usize, seed: u64) -> Result<Graph> {
    if k == 0 || n < k {
        return invalid(format!("k-tree needs n >= k >= 1, got k={k}, n={n}"));
    }
    let mut r = rng(seed);
    let mut g = complete(k);
    let mut cliques: Vec<Vec<usize>> = vec![(0..k).collect()];
    for _ in k..n {
        let c = cliques.choose(&mut r).expect("at least one clique").clone();
        attach(&mut g, &mut cliques, &c);
    }
    Ok(g)
}

fn attach(g: &mut Graph, cliques: &mut Vec<Vec<usize>>, c: &[usize]) {
    let v = g.push_vertex();
    for &u in c {
        g.link(u, v);
    }
    for i in 0..c.len() {
        let mut fresh: Vec<usize> = c.to_vec();
        fresh[i] = v;
        fresh.sort_unstable();
        cliques.push(fresh);
    }
}

/// Every `k`-tree on `n` vertices; isomorphism-free when `n ≤ 12`,
/// otherwise one graph per attachment sequence.
pub fn k_tree_enumerate(k: usize, n: usize) -> Result<Vec<Graph>> {
    if k == 0 || n < k {
        return invalid(format!("k-tree needs n >= k >= 1, got k={k}, n={n}"));
    }
    let dedupe = n <= 12;
    let start = complete(k);
    let mut level: Vec<(Graph, Vec<Vec<usize>>)> = vec![(start, vec![(0..k).collect()])];
    for _ in k..n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for (g, cliques) in &level {
            for c in cliques {
                let mut h = g.clone();
                let mut cs = cliques.clone();
                attach(&mut h, &mut cs, c);
                if !dedupe || seen.insert(canonical_form(&h).certificate) {
                    next.push((h, cs));
                }
            }
        }
        level = next;
    }
    Ok(level.into_iter().map(|(g, _)| g).collect())
}

/// Extra edges for a planted phantom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Density {
    /// Each vertex of `Γ_i(e)` sees exactly the ends of `e`.
    Minimal,
    /// On the lowest layer whose domain has an edge `{z_a, w}` with `w`
    /// outside the anchors `{0, 1}`, a seeded non-empty set of such edges
    /// gets the opposite anchor made complete to `Γ(e)`.
    Coned { seed: u64 },
    /// Listed cones: `apex` becomes complete to `Γ_layer(edge)`.
    Explicit(Vec<ConeSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeSpec {
    pub layer: usize,
    pub edge: (usize, usize),
    pub apex: usize,
}

/// Grows a `(Z_0, d, r)`-phantom on top of `base`, whose vertices form `Z_0`.
///
/// Layer `i` appends `d` fresh vertices per edge of `G[Z_{i-1}]`, edges in
/// sorted order.
pub fn plant_phantom(base: &Graph, d: usize, r: usize, density: Density) -> Result<(Graph, Phantom)> {
    if d == 0 {
        return invalid("phantom needs d >= 1");
    }
    let explicit = match &density {
        Density::Explicit(c) => c.clone(),
        _ => Vec::new(),
    };
    if let Some(c) = explicit.iter().find(|c| c.layer == 0 || c.layer > r) {
        return invalid(format!("cone layer {} outside 1..={r}", c.layer));
    }
    let mut g = base.clone();
    let mut p = Phantom { d, layers: vec![base.vertex_set()], gamma: Vec::with_capacity(r) };
    let mut coned = false;
    for layer in 1..=r {
        let prev = p.layers.last().unwrap().clone();
        let domain: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .filter(|&(u, v)| prev.contains(u) && prev.contains(v))
            .collect();
        let mut map = BTreeMap::new();
        let mut next = prev.clone();
        for (u, v) in domain {
            let mut image = Vec::with_capacity(d);
            for _ in 0..d {
                let w = g.push_vertex();
                g.link(u, w);
                g.link(v, w);
                next.insert(w);
                image.push(w);
            }
            map.insert((u, v), image);
        }
        p.layers.push(next);
        p.gamma.push(map);
        let cones = match &density {
            Density::Minimal => Vec::new(),
            Density::Explicit(_) => explicit.iter().filter(|c| c.layer == layer).cloned().collect(),
            Density::Coned { seed } if !coned => default_cones(&p, layer, *seed),
            Density::Coned { .. } => Vec::new(),
        };
        coned |= !cones.is_empty();
        for c in cones {
            let image = p
                .gamma(c.layer, c.edge.0, c.edge.1)
                .ok_or_else(|| crate::error::Error::InvalidInput(format!("no Γ_{}{:?}", c.layer, c.edge)))?;
            if c.apex >= g.n() || image.contains(&c.apex) {
                return invalid(format!("bad cone apex {}", c.apex));
            }
            for &w in image {
                g.link(c.apex, w);
            }
        }
    }
    Ok((g, p))
}

/// Cones over a seeded non-empty subset of `Γ_layer(a w)` for anchors
/// `a ∈ {0, 1}`, apex the other anchor.
fn default_cones(p: &Phantom, layer: usize, seed: u64) -> Vec<ConeSpec> {
    let z0 = p.layer(0);
    if !(z0.contains(0) && z0.contains(1)) {
        return Vec::new();
    }
    let anchors: VertexSet = [0, 1].iter().collect();
    let candidates: Vec<((usize, usize), usize)> = p.gamma[layer - 1]
        .keys()
        .filter_map(|&(u, v)| {
            let (a, w) = if anchors.contains(u) { (u, v) } else { (v, u) };
            (anchors.contains(a) && !anchors.contains(w)).then_some(((u, v), 1 - a))
        })
        .collect();
    if candidates.is_empty() {
        return Vec::new();
    }
    let mut r = rng(seed);
    let mut picked: Vec<bool> = candidates.iter().map(|_| r.gen_bool(0.5)).collect();
    if !picked.iter().any(|&b| b) {
        let i = r.gen_range(0..candidates.len());
        picked[i] = true;
    }
    candidates
        .into_iter()
        .zip(picked)
        .filter(|(_, keep)| *keep)
        .map(|((edge, apex), _)| ConeSpec { layer, edge, apex })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalNoise {
    pub seed: u64,
    pub edges: usize,
}

/// A `(0, 1, f, g)`-crystal, laid out as `crystal_graph` with `g` leaves
/// per side. Noise edges go inside `S` or between side vertices, so a
/// noisy crystal stays valid but is never clear.
pub fn plant_crystal(f: usize, g: usize, noise: Option<CrystalNoise>) -> Result<(Graph, Crystal)> {
    if f == 0 || g == 0 {
        return invalid("plant_crystal needs f, g >= 1");
    }
    let spec = CrystalSpec { arms: vec![(g, g); f] };
    let mut h = crystal_graph(&spec)?;
    let mut arms = Vec::with_capacity(f);
    let mut next = 2;
    for _ in 0..f {
        let center = next;
        let side1: Vec<usize> = (center + 1..center + 1 + g).collect();
        let side2: Vec<usize> = (center + 1 + g..center + 1 + 2 * g).collect();
        next = center + 1 + 2 * g;
        arms.push(CrystalArm { center, side1, side2 });
    }
    let c = Crystal { z1: 0, z2: 1, arms };
    if let Some(noise) = noise.filter(|n| n.edges > 0) {
        let centers: Vec<usize> = c.arms.iter().map(|a| a.center).collect();
        let sides: Vec<usize> = c.sides().flatten().copied().collect();
        let mut pool: Vec<(usize, usize)> = Vec::new();
        for (i, &u) in centers.iter().enumerate() {
            pool.extend(centers[i + 1..].iter().map(|&v| (u, v)));
        }
        for (i, &u) in sides.iter().enumerate() {
            pool.extend(sides[i + 1..].iter().map(|&v| (u, v)));
        }
        if pool.is_empty() {
            return invalid("no room for noise: need f >= 2 or 2fg >= 2");
        }
        let mut r = rng(noise.seed);
        pool.shuffle(&mut r);
        pool.truncate(noise.edges);
        h = h.with_edges_added(pool)?;
    }
    Ok((h, c))
}
