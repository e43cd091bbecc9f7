use serde::{Deserialize, Serialize};

use super::Validity;
use crate::graph::{Graph, InducedPath, VertexSet};

/// A `w`-kaleidoscope `(a, x, y, W)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kaleidoscope {
    pub a: usize,
    pub x: usize,
    pub y: usize,
    /// Each path runs from `x` to `y`.
    pub paths: Vec<Vec<usize>>,
}

impl Kaleidoscope {
    pub fn w(&self) -> usize {
        self.paths.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum KaleidoscopeViolation {
    /// `x - a - y` is not an induced path.
    K1(String),
    /// A member of `W` is not an `x`-`y` path of `G ∖ {a}`, or two members
    /// share an interior vertex.
    K2 { path: usize, detail: String },
    /// `a` sees the interior of a path.
    K3 { path: usize, vertex: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MirrorViolation {
    /// The kaleidoscope itself is broken.
    Kaleidoscope(KaleidoscopeViolation),
    /// `Z` meets a path or `a`.
    M1 { vertex: usize },
    /// `a` has two or more neighbours in `Z`.
    M2 { neighbors: Vec<usize> },
    /// A member of `Z` sees `N_W[x] ∪ N_W[y]`, or has fewer than `d`
    /// neighbours on `W`.
    M3 { vertex: usize, path: usize, detail: String },
}

pub fn validate_kaleidoscope(g: &Graph, k: &Kaleidoscope) -> Validity<KaleidoscopeViolation> {
    let n = g.n();
    if k.a >= n || k.x >= n || k.y >= n {
        return Validity::Invalid(KaleidoscopeViolation::K1("vertex out of range".into()));
    }
    if InducedPath::new(g, vec![k.x, k.a, k.y]).is_err() {
        return Validity::Invalid(KaleidoscopeViolation::K1(format!(
            "{} - {} - {} is not a path",
            k.x, k.a, k.y
        )));
    }
    let mut interiors = VertexSet::new();
    for (i, w) in k.paths.iter().enumerate() {
        let path = match InducedPath::new(g, w.clone()) {
            Ok(p) => p,
            Err(e) => {
                return Validity::Invalid(KaleidoscopeViolation::K2 {
                    path: i,
                    detail: e.to_string(),
                })
            }
        };
        if path.ends() != (k.x, k.y) {
            return Validity::Invalid(KaleidoscopeViolation::K2 {
                path: i,
                detail: "does not run from x to y".into(),
            });
        }
        if w.contains(&k.a) {
            return Validity::Invalid(KaleidoscopeViolation::K2 {
                path: i,
                detail: "passes through a".into(),
            });
        }
        let inner: VertexSet = path.interior().iter().collect();
        if !inner.is_disjoint(&interiors) {
            return Validity::Invalid(KaleidoscopeViolation::K2 {
                path: i,
                detail: "shares an interior vertex with an earlier path".into(),
            });
        }
        interiors = interiors.union(&inner);
        if let Some(&v) = path.interior().iter().find(|&&v| g.has_edge(k.a, v)) {
            return Validity::Invalid(KaleidoscopeViolation::K3 { path: i, vertex: v });
        }
    }
    Validity::Valid
}

/// Whether `z_set` is `d`-mirrored by `k`.
pub fn is_mirrored(g: &Graph, k: &Kaleidoscope, z_set: &VertexSet, d: usize) -> Validity<MirrorViolation> {
    if let Validity::Invalid(v) = validate_kaleidoscope(g, k) {
        return Validity::Invalid(MirrorViolation::Kaleidoscope(v));
    }
    if let Some(v) = z_set.max().filter(|&v| v >= g.n()) {
        return Validity::Invalid(MirrorViolation::M1 { vertex: v });
    }
    let mut covered: VertexSet = k.paths.iter().flatten().collect();
    covered.insert(k.a);
    if let Some(v) = z_set.iter().find(|&v| covered.contains(v)) {
        return Validity::Invalid(MirrorViolation::M1 { vertex: v });
    }
    let a_nbrs = g.neighbors_in(k.a, z_set);
    if a_nbrs.len() > 1 {
        return Validity::Invalid(MirrorViolation::M2 {
            neighbors: a_nbrs.to_vec(),
        });
    }
    for (i, w) in k.paths.iter().enumerate() {
        let on_path: VertexSet = w.iter().collect();
        // N_W[x] ∪ N_W[y]: the ends and their neighbours along the path.
        let mut guard: VertexSet = [k.x, k.y].iter().collect();
        if w.len() > 1 {
            guard.insert(w[1]);
            guard.insert(w[w.len() - 2]);
        }
        for z in z_set.iter() {
            if let Some(v) = guard.iter().find(|&v| g.has_edge(z, v)) {
                return Validity::Invalid(MirrorViolation::M3 {
                    vertex: z,
                    path: i,
                    detail: format!("adjacent to {v} near an end"),
                });
            }
            let seen = g.degree_into(z, &on_path);
            if seen < d {
                return Validity::Invalid(MirrorViolation::M3 {
                    vertex: z,
                    path: i,
                    detail: format!("{seen} neighbours on the path, need {d}"),
                });
            }
        }
    }
    Validity::Valid
}
