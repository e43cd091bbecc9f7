use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{edge_key, Validity};
use crate::error::{invalid, Result};
use crate::graph::{induced_subgraph, Graph, VertexSet};

/// A `(Z_0, d, r)`-phantom: nested layers `Z_0 ⊆ … ⊆ Z_r` and, for each
/// `i ∈ 1..=r`, a map giving every edge of `G[Z_{i-1}]` its own `d` common
/// neighbours in `Z_i ∖ Z_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phantom {
    pub d: usize,
    pub layers: Vec<VertexSet>,
    /// `gamma[i - 1]` is the map for layer `i`; keys are `(min, max)`.
    pub gamma: Vec<BTreeMap<(usize, usize), Vec<usize>>>,
}

impl Phantom {
    /// Depth-zero phantom on `z0`.
    pub fn trivial(z0: VertexSet, d: usize) -> Self {
        Self {
            d,
            layers: vec![z0],
            gamma: Vec::new(),
        }
    }

    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn z0(&self) -> &VertexSet {
        &self.layers[0]
    }

    pub fn layer(&self, i: usize) -> &VertexSet {
        &self.layers[i]
    }

    pub fn top(&self) -> &VertexSet {
        self.layers.last().expect("a phantom has at least one layer")
    }

    /// `Γ_i(uv)`, if `uv` is in the domain of `Γ_i`.
    pub fn gamma(&self, i: usize, u: usize, v: usize) -> Option<&[usize]> {
        if i == 0 || i > self.gamma.len() {
            return None;
        }
        self.gamma[i - 1].get(&edge_key(u, v)).map(Vec::as_slice)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhantomClause {
    /// Shape problems: empty layer list, `d = 0`, map count mismatch, bad indices.
    Shape,
    /// Layers are not nested.
    P1,
    /// `Γ_i` has the wrong domain.
    P2Domain,
    /// `Γ_i(e)` leaves `Z_i ∖ Z_{i-1}`.
    P2Placement,
    /// `|Γ_i(e)| ≠ d`.
    P2Size,
    /// An end of `e` misses a vertex of `Γ_i(e)`.
    P2Complete,
    /// Two maps overlap.
    P2Disjoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhantomViolation {
    pub clause: PhantomClause,
    pub layer: usize,
    pub edge: Option<(usize, usize)>,
    pub detail: String,
}

impl fmt::Display for PhantomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at layer {}", self.clause, self.layer)?;
        if let Some((u, v)) = self.edge {
            write!(f, ", edge {u}-{v}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

fn violation(clause: PhantomClause, layer: usize, edge: Option<(usize, usize)>, detail: impl Into<String>) -> Validity<PhantomViolation> {
    Validity::Invalid(PhantomViolation {
        clause,
        layer,
        edge,
        detail: detail.into(),
    })
}

pub fn validate_phantom(g: &Graph, p: &Phantom) -> Validity<PhantomViolation> {
    use PhantomClause::*;
    if p.layers.is_empty() {
        return violation(Shape, 0, None, "no layers");
    }
    if p.d == 0 {
        return violation(Shape, 0, None, "d must be positive");
    }
    if p.gamma.len() != p.depth() {
        return violation(Shape, 0, None, format!("{} maps for depth {}", p.gamma.len(), p.depth()));
    }
    for (i, z) in p.layers.iter().enumerate() {
        if let Some(v) = z.max().filter(|&v| v >= g.n()) {
            return violation(Shape, i, None, format!("vertex {v} out of range"));
        }
    }
    for i in 1..p.layers.len() {
        if !p.layers[i - 1].is_subset(&p.layers[i]) {
            return violation(P1, i, None, "previous layer not contained in this one");
        }
    }
    for i in 1..=p.depth() {
        let prev = &p.layers[i - 1];
        let fresh = p.layers[i].difference(prev);
        let map = &p.gamma[i - 1];
        let sub = induced_subgraph(g, prev).expect("layers checked in range");
        let domain: Vec<(usize, usize)> = sub
            .graph
            .edges()
            .into_iter()
            .map(|(a, b)| edge_key(sub.new_to_old[a], sub.new_to_old[b]))
            .collect();
        if domain.len() != map.len() || domain.iter().any(|e| !map.contains_key(e)) {
            let missing = domain.iter().find(|e| !map.contains_key(e)).copied();
            let extra = map.keys().find(|e| !domain.contains(e)).copied();
            return violation(P2Domain, i, missing.or(extra), "map domain differs from the edge set of the previous layer");
        }
        let mut used = VertexSet::new();
        for (&(u, v), image) in map {
            let set: VertexSet = image.iter().collect();
            if set.len() != image.len() || image.len() != p.d {
                return violation(P2Size, i, Some((u, v)), format!("{} distinct vertices, expected {}", set.len(), p.d));
            }
            if !set.is_subset(&fresh) {
                return violation(P2Placement, i, Some((u, v)), "image not inside the new part of the layer");
            }
            if let Some(w) = image.iter().find(|&&w| !g.has_edge(u, w) || !g.has_edge(v, w)) {
                return violation(P2Complete, i, Some((u, v)), format!("{w} misses an end"));
            }
            if !used.is_disjoint(&set) {
                return violation(P2Disjoint, i, Some((u, v)), "image shared with another edge");
            }
            used = used.union(&set);
        }
    }
    Validity::Valid
}

/// The sub-phantom `p[X_0; i, r']` rooted at `x0 ⊆ Z_i`.
pub fn sub_phantom(g: &Graph, p: &Phantom, x0: &VertexSet, i: usize, depth: usize) -> Result<Phantom> {
    if i + depth > p.depth() {
        return invalid(format!("sub-phantom at {i} of depth {depth} exceeds depth {}", p.depth()));
    }
    if !x0.is_subset(p.layer(i)) {
        return invalid(format!("root set is not inside layer {i}"));
    }
    let mut layers = vec![x0.clone()];
    let mut gamma = Vec::with_capacity(depth);
    for j in 1..=depth {
        let prev = layers.last().unwrap().clone();
        let mut next = prev.clone();
        let mut map = BTreeMap::new();
        let sub = induced_subgraph(g, &prev)?;
        for (a, b) in sub.graph.edges() {
            let e = edge_key(sub.new_to_old[a], sub.new_to_old[b]);
            let image = p.gamma(i + j, e.0, e.1).ok_or_else(|| {
                crate::error::Error::Internal(format!("edge {e:?} missing from layer {} map", i + j))
            })?;
            for &w in image {
                next.insert(w);
            }
            map.insert(e, image.to_vec());
        }
        layers.push(next);
        gamma.push(map);
    }
    Ok(Phantom { d: p.d, layers, gamma })
}
