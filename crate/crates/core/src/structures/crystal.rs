use std::fmt;

use serde::{Deserialize, Serialize};

use super::Validity;
use crate::error::{invalid, Result};
use crate::generators::CrystalSpec;
use crate::graph::{is_anticomplete, is_stable_set, Graph, VertexSet};

/// One centre `z ∈ S` of a crystal together with its two sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrystalArm {
    pub center: usize,
    /// `S_{1,z}`: each member sees `z1` and `z` but not `z2`.
    pub side1: Vec<usize>,
    /// `S_{2,z}`: each member sees `z2` and `z` but not `z1`.
    pub side2: Vec<usize>,
}

/// A `(z1, z2, f, g)`-crystal anchored at the edge `z1 z2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crystal {
    pub z1: usize,
    pub z2: usize,
    pub arms: Vec<CrystalArm>,
}

impl Crystal {
    pub fn f(&self) -> usize {
        self.arms.len()
    }

    pub fn g(&self) -> usize {
        self.arms.first().map_or(0, |a| a.side1.len())
    }

    pub fn centers(&self) -> VertexSet {
        self.arms.iter().map(|a| a.center).collect()
    }

    /// `V(c)`: centres and all sides.
    pub fn vertex_set(&self) -> VertexSet {
        let mut s = VertexSet::new();
        for arm in &self.arms {
            s.insert(arm.center);
            arm.side1.iter().chain(&arm.side2).for_each(|&v| s.insert(v));
        }
        s
    }

    pub fn sides(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.arms.iter().flat_map(|a| [&a.side1, &a.side2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CrystalClause {
    Shape,
    Cr1,
    Cr2,
    Cr3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrystalViolation {
    pub clause: CrystalClause,
    pub vertex: Option<usize>,
    pub detail: String,
}

impl fmt::Display for CrystalViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.clause)?;
        if let Some(v) = self.vertex {
            write!(f, " at {v}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

fn violation(clause: CrystalClause, vertex: Option<usize>, detail: impl Into<String>) -> Validity<CrystalViolation> {
    Validity::Invalid(CrystalViolation {
        clause,
        vertex,
        detail: detail.into(),
    })
}

/// Checks (CR1)-(CR3). Non-adjacent anchors are an input error.
pub fn validate_crystal(g: &Graph, c: &Crystal) -> Result<Validity<CrystalViolation>> {
    use CrystalClause::*;
    if c.z1 >= g.n() || c.z2 >= g.n() || !g.has_edge(c.z1, c.z2) {
        return invalid(format!("anchors {} and {} are not adjacent", c.z1, c.z2));
    }
    if c.arms.is_empty() {
        return Ok(violation(Shape, None, "f must be positive"));
    }
    let gsize = c.g();
    if gsize == 0 {
        return Ok(violation(Shape, None, "g must be positive"));
    }
    if let Some(v) = c.vertex_set().max().filter(|&v| v >= g.n()) {
        return Ok(violation(Shape, Some(v), "vertex out of range"));
    }
    let anchors: VertexSet = [c.z1, c.z2].iter().collect();
    let centers = c.centers();
    if centers.len() != c.arms.len() {
        return Ok(violation(Cr1, None, "repeated centre"));
    }
    if let Some(z) = centers.iter().find(|&z| anchors.contains(z)) {
        return Ok(violation(Cr1, Some(z), "centre is an anchor"));
    }
    let forbidden = centers.union(&anchors);
    let mut used = VertexSet::new();
    for side in c.sides() {
        let set: VertexSet = side.iter().collect();
        if side.len() != gsize || set.len() != gsize {
            return Ok(violation(Cr2, side.first().copied(), format!("side of size {} but g = {gsize}", set.len())));
        }
        if let Some(v) = set.iter().find(|&v| forbidden.contains(v)) {
            return Ok(violation(Cr2, Some(v), "side meets a centre or an anchor"));
        }
        if let Some(v) = set.iter().find(|&v| used.contains(v)) {
            return Ok(violation(Cr2, Some(v), "sides overlap"));
        }
        used = used.union(&set);
    }
    for arm in &c.arms {
        let z = arm.center;
        for (i, side) in [(1, &arm.side1), (2, &arm.side2)] {
            let (own, other) = if i == 1 { (c.z1, c.z2) } else { (c.z2, c.z1) };
            for &x in side {
                if !g.has_edge(x, own) || !g.has_edge(x, z) || g.has_edge(x, other) {
                    return Ok(violation(
                        Cr3,
                        Some(x),
                        format!("neighbours of {x} among the anchors and centre {z} are not {{z{i}, z}}"),
                    ));
                }
            }
        }
    }
    Ok(Validity::Valid)
}

/// Clear: `S` stable and the `2f` sides pairwise anticomplete stable sets.
pub fn is_clear_crystal(g: &Graph, c: &Crystal) -> Result<bool> {
    if !validate_crystal(g, c)?.is_valid() {
        return Ok(false);
    }
    if !is_stable_set(g, &c.centers()) {
        return Ok(false);
    }
    let sides: Vec<VertexSet> = c.sides().map(|s| s.iter().collect()).collect();
    for (i, a) in sides.iter().enumerate() {
        if !is_stable_set(g, a) {
            return Ok(false);
        }
        if sides[i + 1..].iter().any(|b| !is_anticomplete(g, a, b)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For a crystal whose anchors and vertex set induce a crystal graph, the
/// spec of that graph.
///
/// Clearness alone does not force this: a centre may miss an anchor or see
/// another centre's side. The natural map onto `crystal_graph(spec)` is
/// checked edge by edge, so `None` means the induced subgraph is not the
/// crystal graph under the tuple's own labeling.
pub fn crystal_realizes_graph(g: &Graph, c: &Crystal) -> Result<Option<CrystalSpec>> {
    if !is_clear_crystal(g, c)? {
        return Ok(None);
    }
    let spec = CrystalSpec {
        arms: c.arms.iter().map(|a| (a.side1.len(), a.side2.len())).collect(),
    };
    // Layout of crystal_graph: 0, 1 anchors; then per arm the apex, the
    // side-1 leaves and the side-2 leaves.
    let mut image = vec![c.z1, c.z2];
    for arm in &c.arms {
        image.push(arm.center);
        image.extend(&arm.side1);
        image.extend(&arm.side2);
    }
    let h = crate::generators::crystal_graph(&spec)?;
    for i in 0..image.len() {
        for j in (i + 1)..image.len() {
            if h.has_edge(i, j) != g.has_edge(image[i], image[j]) {
                return Ok(None);
            }
        }
    }
    Ok(Some(spec))
}
