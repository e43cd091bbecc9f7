//! Reference checks written straight from the definitions, sharing nothing
//! with the library beyond the `Graph` accessors.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use obslab::extractors::ConeTree;
use obslab::structures::Crystal;
use obslab::treewidth::TreeDecomposition;
use obslab::Graph;

pub fn masks(g: &Graph) -> Vec<u64> {
    assert!(g.n() <= 64);
    (0..g.n()).map(|v| g.neighbors(v).fold(0u64, |m, u| m | 1 << u)).collect()
}

fn induced_edges(g: &Graph, vs: &[usize]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if g.has_edge(u, v) {
                out.insert((u.min(v), u.max(v)));
            }
        }
    }
    out
}

fn path_edges(p: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1])))
}

fn distinct(vs: &[usize]) -> bool {
    vs.iter().collect::<BTreeSet<_>>().len() == vs.len()
}

/// The subgraph induced on `cycle` is exactly that cycle, of length ≥ 4.
pub fn is_hole(g: &Graph, cycle: &[usize]) -> bool {
    if cycle.len() < 4 || !distinct(cycle) {
        return false;
    }
    let mut want: BTreeSet<_> = path_edges(cycle).collect();
    let (a, b) = (cycle[0], cycle[cycle.len() - 1]);
    want.insert((a.min(b), a.max(b)));
    induced_edges(g, cycle) == want
}

/// Some vertex subset induces a cycle of even length ≥ 4.
pub fn has_even_hole(g: &Graph) -> bool {
    let adj = masks(g);
    let n = g.n();
    (0u64..1 << n).any(|s| {
        let k = s.count_ones();
        if k < 4 || k % 2 == 1 {
            return false;
        }
        if (0..n).any(|v| s >> v & 1 == 1 && (adj[v] & s).count_ones() != 2) {
            return false;
        }
        let start = s.trailing_zeros() as usize;
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in 0..n {
                if frontier >> v & 1 == 1 {
                    next |= adj[v] & s;
                }
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == s
    })
}

pub fn is_clique(g: &Graph, vs: &[usize]) -> bool {
    distinct(vs) && induced_edges(g, vs).len() == vs.len() * vs.len().saturating_sub(1) / 2
}

pub fn is_stable(g: &Graph, vs: &[usize]) -> bool {
    distinct(vs) && induced_edges(g, vs).is_empty()
}

fn anticomplete(g: &Graph, a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|&u| b.iter().all(|&v| !g.has_edge(u, v)))
}

/// Three paths with common ends whose union induces exactly a theta.
pub fn is_theta(g: &Graph, paths: &[Vec<usize>]) -> bool {
    if paths.len() != 3 || paths.iter().any(|p| p.len() < 3) {
        return false;
    }
    let (a, b) = (paths[0][0], paths[0][paths[0].len() - 1]);
    if paths.iter().any(|p| p[0] != a || p[p.len() - 1] != b) {
        return false;
    }
    let mut vs = vec![a, b];
    let mut want = BTreeSet::new();
    for p in paths {
        vs.extend(&p[1..p.len() - 1]);
        want.extend(path_edges(p));
    }
    distinct(&vs) && induced_edges(g, &vs) == want
}

/// Three paths from one triangle to another whose union induces exactly a
/// prism.
pub fn is_prism(g: &Graph, paths: &[Vec<usize>]) -> bool {
    if paths.len() != 3 || paths.iter().any(|p| p.len() < 2) {
        return false;
    }
    let mut vs = Vec::new();
    let mut want = BTreeSet::new();
    for p in paths {
        vs.extend(p);
        want.extend(path_edges(p));
    }
    for side in [0, 1] {
        let tri: Vec<usize> = paths.iter().map(|p| if side == 0 { p[0] } else { p[p.len() - 1] }).collect();
        for i in 0..3 {
            for j in i + 1..3 {
                want.insert((tri[i].min(tri[j]), tri[i].max(tri[j])));
            }
        }
    }
    distinct(&vs) && induced_edges(g, &vs) == want
}

/// Treewidth by the subset recursion over elimination prefixes: the cost of
/// eliminating `v` after `S` is the number of vertices outside `S ∪ {v}`
/// reachable from `v` through `S`.
pub fn treewidth(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 20, "reference treewidth is for tiny graphs");
    if n == 0 {
        return 0;
    }
    let adj = masks(g);
    let reach_out = |s: u64, v: usize| -> u32 {
        let mut seen = 1u64 << v;
        let mut stack = vec![v];
        let mut out = 0u64;
        while let Some(x) = stack.pop() {
            let mut nb = adj[x] & !seen;
            seen |= nb;
            out |= nb & !s;
            nb &= s;
            while nb != 0 {
                let y = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                stack.push(y);
            }
        }
        out.count_ones()
    };
    let full = (1u64 << n) - 1;
    let mut dp = vec![u32::MAX; 1 << n];
    dp[0] = 0;
    for s in 1..=full {
        let mut best = u32::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            best = best.min(dp[prev as usize].max(reach_out(prev, v)));
        }
        dp[s as usize] = best;
    }
    dp[full as usize] as usize
}

/// Vertex cover, edge cover, and connected occurrence of every vertex, on
/// a tree.
pub fn is_tree_decomposition(g: &Graph, td: &TreeDecomposition) -> bool {
    let k = td.bags.len();
    if k == 0 {
        return g.n() == 0;
    }
    if td.edges.len() != k - 1 || td.edges.iter().any(|&(a, b)| a >= k || b >= k) {
        return false;
    }
    let mut tree = vec![Vec::new(); k];
    for &(a, b) in &td.edges {
        tree[a].push(b);
        tree[b].push(a);
    }
    let connected = |keep: &dyn Fn(usize) -> bool| -> bool {
        let nodes: Vec<usize> = (0..k).filter(|&i| keep(i)).collect();
        let Some(&first) = nodes.first() else { return false };
        let mut seen = BTreeSet::from([first]);
        let mut stack = vec![first];
        while let Some(x) = stack.pop() {
            for &y in &tree[x] {
                if keep(y) && seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.len() == nodes.len()
    };
    if !connected(&|_| true) {
        return false;
    }
    let has = |i: usize, v: usize| td.bags[i].contains(&v);
    (0..g.n()).all(|v| connected(&|i| has(i, v)))
        && g.edges().into_iter().all(|(u, v)| (0..k).any(|i| has(i, u) && has(i, v)))
}

/// (CR1)-(CR3) for the tuple, read directly.
pub fn is_crystal(g: &Graph, c: &Crystal) -> bool {
    let (z1, z2) = (c.z1, c.z2);
    if z1 == z2 || !g.has_edge(z1, z2) || c.arms.is_empty() {
        return false;
    }
    let gs = c.arms[0].side1.len();
    if gs == 0 {
        return false;
    }
    let mut all = vec![z1, z2];
    for arm in &c.arms {
        all.push(arm.center);
        all.extend(&arm.side1);
        all.extend(&arm.side2);
        if arm.side1.len() != gs || arm.side2.len() != gs {
            return false;
        }
        let z = arm.center;
        let trace_ok = |x: usize, zi: usize, other: usize| g.has_edge(x, zi) && g.has_edge(x, z) && !g.has_edge(x, other);
        if !arm.side1.iter().all(|&x| trace_ok(x, z1, z2)) || !arm.side2.iter().all(|&x| trace_ok(x, z2, z1)) {
            return false;
        }
    }
    all.iter().all(|&v| v < g.n()) && distinct(&all)
}

/// Centres stable, and all `2f` sides stable and pairwise anticomplete.
pub fn is_clear(g: &Graph, c: &Crystal) -> bool {
    let centres: Vec<usize> = c.arms.iter().map(|a| a.center).collect();
    let sides: Vec<&Vec<usize>> = c.arms.iter().flat_map(|a| [&a.side1, &a.side2]).collect();
    is_crystal(g, c)
        && is_stable(g, &centres)
        && sides.iter().all(|s| is_stable(g, s))
        && sides.iter().enumerate().all(|(i, a)| sides[i + 1..].iter().all(|b| anticomplete(g, a, b)))
}

/// `U` is a copy of `T_{d,r}` rooted at `z` in `G`, with `z1, z2` outside
/// it and complete to it.
pub fn is_coned_tree(g: &Graph, u: &ConeTree, z1: usize, z2: usize, d: usize, r: usize) -> bool {
    let vs: Vec<usize> = u.nodes.iter().map(|n| n.vertex).collect();
    let expected: usize = (0..=r as u32).map(|i| d.pow(i)).sum();
    if vs.len() != expected || !distinct(&vs) || vs.contains(&z1) || vs.contains(&z2) {
        return false;
    }
    if !vs.iter().all(|&v| g.has_edge(v, z1) && g.has_edge(v, z2)) {
        return false;
    }
    let mut kids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut depth: BTreeMap<usize, usize> = BTreeMap::new();
    for n in &u.nodes {
        match n.parent {
            None => {
                if n.vertex != u.root {
                    return false;
                }
                depth.insert(n.vertex, 0);
            }
            Some(p) => {
                let Some(&dp) = depth.get(&p) else { return false };
                if !g.has_edge(p, n.vertex) {
                    return false;
                }
                depth.insert(n.vertex, dp + 1);
                *kids.entry(p).or_default() += 1;
            }
        }
    }
    depth.iter().all(|(v, &dv)| kids.get(v).copied().unwrap_or(0) == if dv < r { d } else { 0 })
}

/// (C1)-(C2) at `z` for some 2-clique in `N(z)`.
pub fn is_crystallized(h: &Graph, z: usize) -> bool {
    let nz: Vec<usize> = h.neighbors(z).collect();
    nz.iter().any(|&z1| {
        nz.iter().any(|&z2| {
            if z1 >= z2 || !h.has_edge(z1, z2) {
                return false;
            }
            let rest: Vec<usize> = nz.iter().copied().filter(|&x| x != z1 && x != z2).collect();
            !rest.is_empty()
                && is_stable(h, &rest)
                && rest.iter().all(|&x| {
                    let nx: BTreeSet<usize> = h.neighbors(x).collect();
                    nx == BTreeSet::from([z1, z]) || nx == BTreeSet::from([z2, z])
                })
        })
    })
}

/// Edge list of the `z1 z2`-contraption with old vertices kept in order and
/// the merged vertex last.
pub fn contraption_edges(g: &Graph, z1: usize, z2: usize) -> BTreeSet<(usize, usize)> {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| v != z1 && v != z2).collect();
    let idx: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let merged = keep.len();
    let mut out = BTreeSet::new();
    for (u, v) in g.edges() {
        if let (Some(&a), Some(&b)) = (idx.get(&u), idx.get(&v)) {
            out.insert((a.min(b), a.max(b)));
        }
    }
    for &v in &keep {
        if g.has_edge(v, z1) && g.has_edge(v, z2) {
            out.insert((idx[&v], merged));
        }
    }
    out
}
