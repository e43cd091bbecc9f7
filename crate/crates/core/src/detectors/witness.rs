use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::{is_clique, is_complete_to, is_stable_set, Graph, InducedPath, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    Hole,
    EvenHole,
    Theta,
    Prism,
    EvenWheel,
    Clique,
    Stable,
    Biclique,
    InducedCopy,
}

/// A found structure.
///
/// `paths` carries the shape: the cycle of a hole or wheel rim, the three
/// paths of a theta (end to end) or prism (first triangle to second), the
/// two sides of a biclique, the members of a clique or stable set, or the
/// image of each pattern vertex for an induced copy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub vertices: Vec<usize>,
    pub roles: BTreeMap<usize, String>,
    pub paths: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hub: Option<usize>,
}

impl Witness {
    pub(crate) fn new(kind: WitnessKind, paths: Vec<Vec<usize>>, roles: BTreeMap<usize, String>) -> Self {
        let set: VertexSet = paths.iter().flatten().collect();
        let mut vertices = set.to_vec();
        vertices.extend(roles.keys().filter(|v| !set.contains(**v)));
        vertices.sort_unstable();
        vertices.dedup();
        Self {
            kind,
            vertices,
            roles,
            paths,
            hub: None,
        }
    }

    pub(crate) fn hole(kind: WitnessKind, cycle: Vec<usize>) -> Self {
        let roles = cycle.iter().map(|&v| (v, "rim".to_string())).collect();
        Self::new(kind, vec![cycle], roles)
    }

    pub(crate) fn members(kind: WitnessKind, members: Vec<usize>) -> Self {
        let label = if kind == WitnessKind::Stable { "stable" } else { "member" };
        let roles = members.iter().map(|&v| (v, label.to_string())).collect();
        Self::new(kind, vec![members], roles)
    }

    /// Re-checks the witness against its definition. `pattern` is needed
    /// only for induced copies.
    pub fn revalidate(&self, g: &Graph, pattern: Option<&Graph>) -> bool {
        if self.vertices.iter().any(|&v| v >= g.n()) || self.paths.iter().flatten().any(|&v| v >= g.n()) {
            return false;
        }
        match self.kind {
            WitnessKind::Hole => self.paths.len() == 1 && is_hole(g, &self.paths[0]),
            WitnessKind::EvenHole => self.paths.len() == 1 && is_hole(g, &self.paths[0]) && self.paths[0].len().is_multiple_of(2),
            WitnessKind::Theta => self.paths.len() == 3 && is_theta(g, &self.paths),
            WitnessKind::Prism => self.paths.len() == 3 && is_prism(g, &self.paths),
            WitnessKind::EvenWheel => match (self.hub, self.paths.first()) {
                (Some(h), Some(rim)) if self.paths.len() == 1 => {
                    let rim_set: VertexSet = rim.iter().collect();
                    let k = g.degree_into(h, &rim_set);
                    is_hole(g, rim) && !rim_set.contains(h) && k >= 4 && k.is_multiple_of(2)
                }
                _ => false,
            },
            WitnessKind::Clique => self.paths.len() == 1 && is_clique(g, &self.paths[0].iter().collect()),
            WitnessKind::Stable => self.paths.len() == 1 && is_stable_set(g, &self.paths[0].iter().collect()),
            WitnessKind::Biclique => {
                if self.paths.len() != 2 {
                    return false;
                }
                let a: VertexSet = self.paths[0].iter().collect();
                let b: VertexSet = self.paths[1].iter().collect();
                a.len() == self.paths[0].len()
                    && b.len() == self.paths[1].len()
                    && a.is_disjoint(&b)
                    && is_stable_set(g, &a)
                    && is_stable_set(g, &b)
                    && is_complete_to(g, &a, &b)
            }
            WitnessKind::InducedCopy => match (pattern, self.paths.first()) {
                (Some(h), Some(map)) => super::is_induced_embedding(g, h, map),
                _ => false,
            },
        }
    }
}

/// `{found, kind, vertices, roles, paths}` for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<WitnessKind>,
    pub vertices: Vec<usize>,
    pub roles: BTreeMap<usize, String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub paths: Vec<Vec<usize>>,
}

impl From<Option<&Witness>> for WitnessReport {
    fn from(w: Option<&Witness>) -> Self {
        match w {
            None => Self {
                found: false,
                kind: None,
                vertices: Vec::new(),
                roles: BTreeMap::new(),
                paths: Vec::new(),
            },
            Some(w) => Self {
                found: true,
                kind: Some(w.kind),
                vertices: w.vertices.clone(),
                roles: w.roles.clone(),
                paths: w.paths.clone(),
            },
        }
    }
}

/// Induced cycle on at least four vertices, in cyclic order.
pub(crate) fn is_hole(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 || cycle.iter().collect::<VertexSet>().len() != k {
        return false;
    }
    for i in 0..k {
        for j in (i + 1)..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.has_edge(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

fn is_theta(g: &Graph, paths: &[Vec<usize>]) -> bool {
    let (a, b) = match paths[0].as_slice() {
        [a, .., b] => (*a, *b),
        _ => return false,
    };
    if a == b || g.has_edge(a, b) {
        return false;
    }
    let mut interiors = Vec::new();
    for p in paths {
        if p.len() < 3 || p[0] != a || p[p.len() - 1] != b {
            return false;
        }
        match InducedPath::new(g, p.clone()) {
            Ok(ip) => interiors.push(ip.interior().iter().collect::<VertexSet>()),
            Err(_) => return false,
        }
    }
    pairwise_disjoint_anticomplete(g, &interiors)
}

fn pairwise_disjoint_anticomplete(g: &Graph, sets: &[VertexSet]) -> bool {
    for i in 0..sets.len() {
        for j in (i + 1)..sets.len() {
            if !sets[i].is_disjoint(&sets[j]) || !crate::graph::is_anticomplete(g, &sets[i], &sets[j]) {
                return false;
            }
        }
    }
    true
}

fn is_prism(g: &Graph, paths: &[Vec<usize>]) -> bool {
    if paths.iter().any(|p| p.len() < 2) {
        return false;
    }
    let a: Vec<usize> = paths.iter().map(|p| p[0]).collect();
    let b: Vec<usize> = paths.iter().map(|p| p[p.len() - 1]).collect();
    if !is_clique(g, &a.iter().collect()) || !is_clique(g, &b.iter().collect()) {
        return false;
    }
    let sets: Vec<VertexSet> = paths.iter().map(|p| p.iter().collect()).collect();
    for (p, s) in paths.iter().zip(&sets) {
        if s.len() != p.len() || InducedPath::new(g, p.clone()).is_err() {
            return false;
        }
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            if !sets[i].is_disjoint(&sets[j]) {
                return false;
            }
            for &u in &paths[i] {
                for &v in &paths[j] {
                    let allowed = (u == a[i] && v == a[j]) || (u == b[i] && v == b[j]);
                    if g.has_edge(u, v) != allowed {
                        return false;
                    }
                }
            }
        }
    }
    true
}
