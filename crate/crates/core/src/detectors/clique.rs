use std::collections::BTreeMap;

use super::witness::{Witness, WitnessKind};
use super::SearchLimits;
use crate::error::Result;
use crate::graph::{Graph, VertexSet};

/// A maximum clique; among those, the lexicographically least.
pub fn max_clique(g: &Graph) -> Vec<usize> {
    let mut best = Vec::new();
    let mut cur = Vec::new();
    grow_max(g, &mut cur, g.vertex_set(), &mut best);
    best
}

fn grow_max(g: &Graph, cur: &mut Vec<usize>, cand: VertexSet, best: &mut Vec<usize>) {
    if cur.len() > best.len() {
        *best = cur.clone();
    }
    if cur.len() + cand.len() <= best.len() {
        return;
    }
    let mut cand = cand;
    loop {
        let Some(v) = cand.iter().next() else { return };
        if cur.len() + cand.len() <= best.len() {
            return;
        }
        cand.remove(v);
        cur.push(v);
        grow_max(g, cur, cand.intersection(&g.neighborhood(v)), best);
        cur.pop();
    }
}

/// First `c`-clique in lexicographic order.
fn first_clique(g: &Graph, c: usize) -> Option<Vec<usize>> {
    fn go(g: &Graph, c: usize, cur: &mut Vec<usize>, cand: &VertexSet) -> bool {
        if cur.len() == c {
            return true;
        }
        if cur.len() + cand.len() < c {
            return false;
        }
        let list = cand.to_vec();
        for (i, &v) in list.iter().enumerate() {
            if cur.len() + (list.len() - i) < c {
                return false;
            }
            cur.push(v);
            let next: VertexSet = list[i + 1..].iter().copied().filter(|&u| g.has_edge(u, v)).collect();
            if go(g, c, cur, &next) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::with_capacity(c);
    go(g, c, &mut cur, &g.vertex_set()).then_some(cur)
}

pub fn find_clique(g: &Graph, c: usize, limits: &SearchLimits) -> Result<Option<Witness>> {
    limits.check("clique search", g.n())?;
    Ok(first_clique(g, c).map(|k| Witness::members(WitnessKind::Clique, k)))
}

pub fn find_stable_set(g: &Graph, s: usize, limits: &SearchLimits) -> Result<Option<Witness>> {
    limits.check("stable set search", g.n())?;
    Ok(first_clique(&g.complement(), s).map(|k| Witness::members(WitnessKind::Stable, k)))
}

/// Induced `K_{s,t}`: stable `A` of size `s`, stable `B` of size `t`,
/// complete to each other.
pub fn find_induced_biclique(g: &Graph, s: usize, t: usize, limits: &SearchLimits) -> Result<Option<Witness>> {
    limits.check("biclique search", g.n())?;
    let comp = g.complement();
    let n = g.n();
    fn stable_sets(comp: &Graph, pool: &VertexSet, size: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == size {
            return f(cur);
        }
        let list = pool.to_vec();
        for (i, &v) in list.iter().enumerate() {
            if cur.len() + (list.len() - i) < size {
                break;
            }
            cur.push(v);
            let next: VertexSet = list[i + 1..].iter().copied().filter(|&u| comp.has_edge(u, v)).collect();
            if stable_sets(comp, &next, size, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut found = None;
    let mut a = Vec::new();
    stable_sets(&comp, &(0..n).collect(), s, &mut a, &mut |side_a| {
        let mut common = g.vertex_set();
        for &v in side_a {
            common = common.intersection(&g.neighborhood(v));
        }
        let mut b = Vec::new();
        let mut hit = None;
        stable_sets(&comp, &common, t, &mut b, &mut |side_b| {
            hit = Some(side_b.to_vec());
            true
        });
        if let Some(side_b) = hit {
            found = Some((side_a.to_vec(), side_b));
            true
        } else {
            false
        }
    });
    Ok(found.map(|(a, b)| {
        let mut roles = BTreeMap::new();
        a.iter().for_each(|&v| {
            roles.insert(v, "side-1".to_string());
        });
        b.iter().for_each(|&v| {
            roles.insert(v, "side-2".to_string());
        });
        Witness::new(WitnessKind::Biclique, vec![a, b], roles)
    }))
}
