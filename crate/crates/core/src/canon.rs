//! Canonical labeling by colour refinement plus individualization, and
//! isomorphism-free enumeration of small graphs built on it.

use std::collections::HashSet;

use crate::graph::Graph;

/// Canonical labeling of a graph. `labeling[v]` is the new index of `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub certificate: Vec<u64>,
    pub labeling: Vec<usize>,
}

impl CanonicalForm {
    pub fn graph(&self, g: &Graph) -> Graph {
        let edges = g.edges().into_iter().map(|(u, v)| (self.labeling[u], self.labeling[v]));
        Graph::from_edges(g.n(), edges).expect("relabeling keeps edges valid")
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.n();
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    refine(g, &mut colors);
    let mut best: Option<CanonicalForm> = None;
    search(g, colors, &mut best);
    best.unwrap_or(CanonicalForm {
        certificate: Vec::new(),
        labeling: Vec::new(),
    })
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.m() == b.m() && canonical_form(a).certificate == canonical_form(b).certificate
}

/// Equitable refinement. Colours are renumbered `0..k` in an order that
/// depends only on the isomorphism type of the coloured graph.
fn refine(g: &Graph, colors: &mut [usize]) {
    let n = g.n();
    let mut cells = count_distinct(colors);
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sigs.sort();
        let mut next = 0;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                next += 1;
            }
            colors[sigs[i].2] = next;
        }
        let now = if n == 0 { 0 } else { next + 1 };
        if now == cells {
            return;
        }
        cells = now;
    }
}

fn count_distinct(colors: &[usize]) -> usize {
    colors.iter().collect::<HashSet<_>>().len()
}

fn search(g: &Graph, colors: Vec<usize>, best: &mut Option<CanonicalForm>) {
    let n = g.n();
    let mut cell_size = vec![0usize; n];
    for &c in &colors {
        cell_size[c] += 1;
    }
    // First non-singleton cell in colour order.
    let target = (0..n).find(|&c| cell_size[c] > 1);
    let Some(target) = target else {
        let cert = certificate(g, &colors);
        if best.as_ref().is_none_or(|b| cert < b.certificate) {
            *best = Some(CanonicalForm {
                certificate: cert,
                labeling: colors,
            });
        }
        return;
    };
    let members: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &members {
        // Swapping twins is an automorphism fixing everything individualized
        // so far, so one representative per twin class suffices.
        if tried.iter().any(|&u| are_twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        let mut c = colors.clone();
        // Move every other member of the cell one step up; v keeps `target`.
        for x in c.iter_mut() {
            if *x > target {
                *x += 1;
            }
        }
        for &u in &members {
            if u != v {
                c[u] = target + 1;
            }
        }
        refine(g, &mut c);
        search(g, c, best);
    }
}

fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    let mut a = g.row(u).clone();
    let mut b = g.row(v).clone();
    a.set(v, false);
    b.set(u, false);
    a == b
}

fn certificate(g: &Graph, labeling: &[usize]) -> Vec<u64> {
    let n = g.n();
    let mut inv = vec![0; n];
    for (v, &l) in labeling.iter().enumerate() {
        inv[l] = v;
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = vec![0u64; bits.div_ceil(64)];
    let mut k = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if g.has_edge(inv[i], inv[j]) {
                out[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    out
}

/// One representative per isomorphism class of graphs on exactly `n`
/// vertices, in a deterministic order.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let mut reps = vec![Graph::empty(0)];
    for size in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in extend_by_one_vertex(&reps, size - 1) {
            let cf = canonical_form(&g);
            if seen.insert(cf.certificate.clone()) {
                next.push(cf.graph(&g));
            }
        }
        reps = next;
    }
    reps
}

/// Every graph on `n` vertices up to isomorphism appears at least once,
/// usually many times. Cheaper than [`graphs_up_to_iso`] for property checks
/// that do not mind repeats.
pub fn graphs_covering(n: usize) -> impl Iterator<Item = Graph> {
    let base = if n == 0 { Vec::new() } else { graphs_up_to_iso(n - 1) };
    let zero = if n == 0 { vec![Graph::empty(0)] } else { Vec::new() };
    let size = n.saturating_sub(1);
    zero.into_iter().chain(base.into_iter().flat_map(move |g| (0u64..(1u64 << size)).map(move |mask| attach(&g, size, mask))))
}

fn attach(g: &Graph, size: usize, mask: u64) -> Graph {
    let mut h = g.clone();
    let v = h.push_vertex();
    for u in 0..size {
        if mask >> u & 1 == 1 {
            h.link(u, v);
        }
    }
    h
}

fn extend_by_one_vertex(reps: &[Graph], size: usize) -> impl Iterator<Item = Graph> + '_ {
    reps.iter().flat_map(move |g| {
        (0u64..(1u64 << size)).map(move |mask| attach(g, size, mask))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path};

    #[test]
    fn counts_match_known_sequence() {
        let counts: Vec<usize> = (0..=6).map(|n| graphs_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn relabeled_graphs_share_a_certificate() {
        let c5 = cycle(5);
        let shuffled = Graph::from_edges(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]).unwrap();
        assert!(are_isomorphic(&c5, &shuffled));
        assert!(!are_isomorphic(&c5, &path(5)));
        assert!(are_isomorphic(&complete(6), &complete(6)));
    }

    #[test]
    fn covering_hits_every_class() {
        let reps: HashSet<Vec<u64>> = graphs_up_to_iso(5).iter().map(|g| canonical_form(g).certificate).collect();
        let covered: HashSet<Vec<u64>> = graphs_covering(5).map(|g| canonical_form(&g).certificate).collect();
        assert_eq!(reps, covered);
    }
}
