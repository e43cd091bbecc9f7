use std::collections::{BTreeMap, VecDeque};
use std::ops::ControlFlow;

use super::witness::{Witness, WitnessKind};
use super::SearchLimits;
use crate::error::Result;
use crate::graph::{Graph, VertexSet};

/// Maximum cardinality search; returns a perfect elimination order when
/// `g` is chordal.
pub fn perfect_elimination_order(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("vertices remain");
        done[v] = true;
        visit.push(v);
        for u in g.neighbors(v) {
            if !done[u] {
                weight[u] += 1;
            }
        }
    }
    visit.reverse();
    let mut pos = vec![0; n];
    for (i, &v) in visit.iter().enumerate() {
        pos[v] = i;
    }
    for &v in &visit {
        let later: Vec<usize> = g.neighbors(v).filter(|&u| pos[u] > pos[v]).collect();
        if let Some(&p) = later.iter().min_by_key(|&&u| pos[u]) {
            if later.iter().any(|&u| u != p && !g.has_edge(u, p)) {
                return None;
            }
        }
    }
    Some(visit)
}

pub fn is_chordal(g: &Graph) -> bool {
    perfect_elimination_order(g).is_some()
}

/// Some hole, or `None` when `g` is chordal. Polynomial: for each `v` and
/// non-adjacent `a, b ∈ N(v)`, a shortest `a`-`b` path avoiding the rest
/// of `N[v]` closes a hole.
pub fn find_hole(g: &Graph) -> Option<Witness> {
    for v in 0..g.n() {
        let nb: Vec<usize> = g.neighbors(v).collect();
        let closed = g.closed_neighborhood(v);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                let mut allowed = g.vertex_set().difference(&closed);
                allowed.insert(a);
                allowed.insert(b);
                if let Some(p) = g.shortest_path_within(a, b, &allowed) {
                    let mut cycle = vec![v];
                    cycle.extend(p);
                    return Some(Witness::hole(WitnessKind::Hole, cycle));
                }
            }
        }
    }
    None
}

/// Visits every hole of length in `lengths`, shortest first; within a
/// length, by smallest vertex, then lexicographically. Each hole is seen
/// once, starting at its smallest vertex with the smaller neighbour second.
pub fn for_each_hole<T>(
    g: &Graph,
    lengths: impl IntoIterator<Item = usize>,
    mut f: impl FnMut(&[usize]) -> ControlFlow<T>,
) -> Option<T> {
    let n = g.n();
    let mut dist_cache: Vec<Option<Vec<usize>>> = vec![None; n];
    for len in lengths {
        if len < 4 || len > n {
            continue;
        }
        for s in 0..n {
            let dist = dist_cache[s].get_or_insert_with(|| distances_above(g, s));
            let mut path = vec![s];
            if let ControlFlow::Break(t) = extend(g, len, dist, &mut path, &mut f) {
                return Some(t);
            }
        }
    }
    None
}

/// BFS distances from `s` inside the vertices `≥ s`.
fn distances_above(g: &Graph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for u in g.neighbors(v) {
            if u > s && dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

fn extend<T>(
    g: &Graph,
    len: usize,
    dist: &[usize],
    path: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]) -> ControlFlow<T>,
) -> ControlFlow<T> {
    let k = path.len();
    let s = path[0];
    let last = path[k - 1];
    let closing = k == len - 1;
    for v in g.neighbors(last) {
        if v <= s || dist[v] > len - k {
            continue;
        }
        if closing && (v < path[1] || !g.has_edge(v, s)) {
            continue;
        }
        if !closing && k >= 2 && g.has_edge(v, s) {
            continue;
        }
        let inner = if k >= 2 { &path[1..k - 1] } else { &[][..] };
        if inner.iter().any(|&p| p == v || g.has_edge(p, v)) {
            continue;
        }
        path.push(v);
        let flow = if closing { f(path) } else { extend(g, len, dist, path, f) };
        path.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

pub fn find_even_hole(g: &Graph, limits: &SearchLimits) -> Result<Option<Witness>> {
    limits.check("even hole search", g.n())?;
    Ok(for_each_hole(g, (4..=g.n()).step_by(2), |c| {
        ControlFlow::Break(Witness::hole(WitnessKind::EvenHole, c.to_vec()))
    }))
}

/// Theta: a hole through non-adjacent `a, b` plus a third `a`-`b` path
/// whose interior avoids the hole and its other vertices' neighbourhoods.
pub fn find_theta(g: &Graph, limits: &SearchLimits) -> Result<Option<Witness>> {
    limits.check("theta search", g.n())?;
    let all = g.vertex_set();
    Ok(for_each_hole(g, 4..=g.n(), |c| {
        let len = c.len();
        let on_c: VertexSet = c.iter().collect();
        for i in 0..len {
            for j in (i + 2)..len {
                if i == 0 && j == len - 1 {
                    continue;
                }
                let (a, b) = (c[i], c[j]);
                let rest: VertexSet = c.iter().copied().filter(|&v| v != a && v != b).collect();
                let mut allowed = all.difference(&on_c).difference(&g.set_neighborhood(&rest));
                allowed.insert(a);
                allowed.insert(b);
                if let Some(p3) = g.shortest_path_within(a, b, &allowed) {
                    let p1 = c[i..=j].to_vec();
                    let mut p2: Vec<usize> = c[j..].to_vec();
                    p2.extend(&c[..=i]);
                    p2.reverse();
                    let mut paths = vec![p1, p2, p3];
                    paths.sort();
                    let mut roles = BTreeMap::new();
                    for (k, p) in paths.iter().enumerate() {
                        for &v in &p[1..p.len() - 1] {
                            roles.insert(v, format!("path-{}", k + 1));
                        }
                    }
                    roles.insert(a, "end".into());
                    roles.insert(b, "end".into());
                    return ControlFlow::Break(Witness::new(WitnessKind::Theta, paths, roles));
                }
            }
        }
        ControlFlow::Continue(())
    }))
}

/// Prism: a hole `C`, a vertex seeing exactly an edge `a1 a2` of `C`, a
/// vertex seeing exactly a disjoint edge `b1 b2`, and a path between them
/// anticomplete to `C`.
pub fn find_prism(g: &Graph, limits: &SearchLimits) -> Result<Option<Witness>> {
    limits.check("prism search", g.n())?;
    let all = g.vertex_set();
    Ok(for_each_hole(g, 4..=g.n(), |c| {
        let len = c.len();
        let on_c: VertexSet = c.iter().collect();
        let outside = all.difference(&on_c);
        let free = outside.difference(&g.set_neighborhood(&on_c));
        // Vertices outside C whose trace on C is exactly {c[i], c[i+1]}.
        let mut tips: Vec<Vec<usize>> = vec![Vec::new(); len];
        for v in outside.iter() {
            let trace = g.neighbors_in(v, &on_c);
            if trace.len() == 2 {
                for i in 0..len {
                    if trace.contains(c[i]) && trace.contains(c[(i + 1) % len]) {
                        tips[i].push(v);
                    }
                }
            }
        }
        for i in 0..len {
            for j in 0..len {
                // The edges at i and j must be disjoint.
                let gap = (j + len - i) % len;
                if gap < 2 || gap > len - 2 {
                    continue;
                }
                for &a3 in &tips[i] {
                    for &b3 in &tips[j] {
                        if a3 == b3 {
                            continue;
                        }
                        let mut allowed = free.clone();
                        allowed.insert(a3);
                        allowed.insert(b3);
                        let Some(p3) = g.shortest_path_within(a3, b3, &allowed) else {
                            continue;
                        };
                        let (a1, a2) = (c[i], c[(i + 1) % len]);
                        let (b1, b2) = (c[j], c[(j + 1) % len]);
                        // a2 -> b1 forward along C; a1 -> b2 backward.
                        let mut p1 = Vec::new();
                        let mut k = (i + 1) % len;
                        loop {
                            p1.push(c[k]);
                            if c[k] == b1 {
                                break;
                            }
                            k = (k + 1) % len;
                        }
                        let mut p2 = Vec::new();
                        let mut k = i;
                        loop {
                            p2.push(c[k]);
                            if c[k] == b2 {
                                break;
                            }
                            k = (k + len - 1) % len;
                        }
                        debug_assert_eq!((p1[0], p2[0]), (a2, a1));
                        let paths = vec![p2, p1, p3];
                        let mut roles = BTreeMap::new();
                        for (k, p) in paths.iter().enumerate() {
                            for &v in p {
                                roles.insert(v, format!("path-{}", k + 1));
                            }
                        }
                        for p in &paths {
                            roles.insert(p[0], "triangle-a".into());
                            roles.insert(p[p.len() - 1], "triangle-b".into());
                        }
                        return ControlFlow::Break(Witness::new(WitnessKind::Prism, paths, roles));
                    }
                }
            }
        }
        ControlFlow::Continue(())
    }))
}

/// Hole plus a hub with an even number, at least four, of rim neighbours.
pub fn find_even_wheel(g: &Graph, limits: &SearchLimits) -> Result<Option<Witness>> {
    limits.check("even wheel search", g.n())?;
    Ok(for_each_hole(g, 4..=g.n(), |c| {
        let on_c: VertexSet = c.iter().collect();
        for h in 0..g.n() {
            if on_c.contains(h) {
                continue;
            }
            let k = g.degree_into(h, &on_c);
            if k >= 4 && k.is_multiple_of(2) {
                let mut w = Witness::hole(WitnessKind::EvenWheel, c.to_vec());
                w.roles.insert(h, "hub".into());
                w.vertices.push(h);
                w.vertices.sort_unstable();
                w.hub = Some(h);
                return ControlFlow::Break(w);
            }
        }
        ControlFlow::Continue(())
    }))
}
