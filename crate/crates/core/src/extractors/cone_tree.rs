use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{distinct_within, Extraction, HypothesisViolation, Outcome, Tracer, TraceStep, ViolationCause, MAX_RECURSION};
use crate::detectors::{Witness, WitnessKind};
use crate::error::{invalid, Error, Result};
use crate::graph::{is_clique, Graph, VertexSet};
use crate::structures::{sub_phantom, validate_phantom, Crystal, CrystalArm, Phantom, Validity};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeTreeNode {
    pub vertex: usize,
    pub parent: Option<usize>,
    pub level: usize,
}

/// A rooted subgraph of the host; nodes are listed root first, every node
/// after its parent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeTree {
    pub root: usize,
    pub nodes: Vec<ConeTreeNode>,
}

impl ConeTree {
    pub fn vertex_set(&self) -> VertexSet {
        self.nodes.iter().map(|n| n.vertex).collect()
    }
}

/// Inputs besides the host and the phantom: the set `Z`, the triangle
/// `{z1, z2, z}` the phantom grows from, and the proof's parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeTreeRequest {
    pub z_set: VertexSet,
    pub z1: usize,
    pub z2: usize,
    pub z: usize,
    pub d: usize,
    pub g: usize,
    pub h: usize,
    pub t: usize,
}

impl ConeTreeRequest {
    fn k_bound(&self) -> usize {
        1usize.checked_shl(self.h as u32).unwrap_or(usize::MAX).saturating_mul(self.t)
    }
}

pub(super) enum Found {
    Crystal(Crystal),
    Tree(ConeTree),
    Stop(HypothesisViolation),
}

/// From a phantom on the triangle `{z1, z2, z}`: a `(z1, z2, 1, g)`-crystal
/// anticomplete to `Z ∖ Z_0`, or a copy of `T_{d,r}` rooted at `z` whose
/// levels climb the phantom.
///
/// Per-edge phantom sizes are not checked up front; a selection that runs
/// out of vertices is reported as a shortfall.
pub fn phantom_to_cone_tree(g: &Graph, p: &Phantom, req: &ConeTreeRequest, replay: Option<&[TraceStep]>) -> Result<Extraction> {
    check_request(g, p, req)?;
    let mut t = Tracer::new(replay);
    let outcome = match descend(g, p, req, &req.z_set, req.z, &mut t)? {
        Found::Crystal(c) => Outcome::Crystal(c),
        Found::Tree(u) => Outcome::ConeTree(u),
        Found::Stop(v) => Outcome::HypothesisViolation(v),
    };
    Ok(Extraction { outcome, trace: t.finish()? })
}

pub(super) fn check_request(g: &Graph, p: &Phantom, req: &ConeTreeRequest) -> Result<()> {
    let ConeTreeRequest { z1, z2, z, d, g: gs, h, t, .. } = *req;
    if d == 0 || gs == 0 || h == 0 || t == 0 {
        return invalid("d, g, h and t must be positive");
    }
    let z0: VertexSet = [z1, z2, z].iter().collect();
    if z0.len() != 3 || z0.max().is_some_and(|v| v >= g.n()) || !is_clique(g, &z0) {
        return invalid("z1, z2, z must form a triangle");
    }
    if p.z0() != &z0 {
        return invalid("phantom is not rooted at {z1, z2, z}");
    }
    if !z0.is_subset(&req.z_set) || req.z_set.len() > h {
        return invalid(format!("need Z_0 inside Z and |Z| <= h = {h}"));
    }
    let expect: VertexSet = [z1, z2].iter().collect();
    if g.neighbors_in(z, &req.z_set) != expect {
        return invalid("z must see exactly z1 and z2 inside Z");
    }
    if p.top().intersection(&req.z_set) != z0 {
        return invalid("top layer meets Z outside Z_0");
    }
    if let Validity::Invalid(v) = validate_phantom(g, p) {
        return invalid(format!("phantom is not valid: {v}"));
    }
    if p.depth() > MAX_RECURSION {
        return Err(Error::ScaleLimit { what: "phantom recursion", limit: MAX_RECURSION, actual: p.depth() });
    }
    Ok(())
}

pub(super) fn descend(g: &Graph, p: &Phantom, req: &ConeTreeRequest, z_set: &VertexSet, z: usize, t: &mut Tracer) -> Result<Found> {
    let r = p.depth();
    if r == 0 {
        return Ok(Found::Tree(ConeTree { root: z, nodes: vec![ConeTreeNode { vertex: z, parent: None, level: 0 }] }));
    }
    let (z1, z2) = (req.z1, req.z2);
    let anchors = [z1, z2];
    let z0: VertexSet = [z1, z2, z].iter().collect();
    let outside = z_set.difference(&z0);
    let gamma = |zi: usize| -> Result<Vec<usize>> {
        p.gamma(1, zi, z).map(<[usize]>::to_vec).ok_or_else(|| Error::Internal(format!("edge {zi}-{z} missing from the first map")))
    };
    // `Γ_1(z_i z)` for i = 1, 2 and the members touching `Z ∖ Z_0`.
    let around = [gamma(z1)?, gamma(z2)?];
    let touching: Vec<Vec<usize>> =
        around.iter().map(|s| s.iter().copied().filter(|&x| !g.neighbors_in(x, &outside).is_empty()).collect()).collect();
    for i in 0..2 {
        if touching[i].len() >= req.k_bound() {
            let witness = class_witness(g, &touching[i], &outside, z, req.t)?;
            return Ok(Found::Stop(HypothesisViolation {
                step: format!("depth {r}: K{} bound", i + 1),
                cause: ViolationCause::NotInClass { witness },
            }));
        }
    }
    // L_1 ⊆ Γ_1(z2 z), L_2 ⊆ Γ_1(z1 z), both clear of Z ∖ Z_0.
    let need = req.d + req.g;
    let mut ls = Vec::with_capacity(2);
    for (i, pool_of) in [(1, 1), (2, 0)] {
        let pool: Vec<usize> = around[pool_of].iter().copied().filter(|x| !touching[pool_of].contains(x)).collect();
        let step = format!("depth {r}: L{i}");
        let default = (pool.len() >= need).then(|| pool[..need].to_vec());
        match t.choose(step.clone(), default, |c| c.len() == need && distinct_within(c, &pool))? {
            Some(l) => ls.push(l),
            None => return Ok(Found::Stop(HypothesisViolation::shortfall(step, need, pool.len()))),
        }
    }
    let misses: Vec<Vec<usize>> = (0..2).map(|i| ls[i].iter().copied().filter(|&x| !g.has_edge(anchors[i], x)).collect()).collect();
    if misses.iter().all(|m| m.len() >= req.g) {
        let mut ms = Vec::with_capacity(2);
        for i in 0..2 {
            let m = t
                .choose(format!("depth {r}: M{}", i + 1), Some(misses[i][..req.g].to_vec()), |c| {
                    c.len() == req.g && distinct_within(c, &misses[i])
                })?
                .expect("default supplied");
            ms.push(m);
        }
        let mut side1 = ms[1].clone();
        let mut side2 = ms[0].clone();
        side1.sort_unstable();
        side2.sort_unstable();
        return Ok(Found::Crystal(Crystal { z1, z2, arms: vec![CrystalArm { center: z, side1, side2 }] }));
    }
    let j = if misses[0].len() < req.g { 0 } else { 1 };
    let hits: Vec<usize> = ls[j].iter().copied().filter(|&x| g.has_edge(anchors[j], x)).collect();
    if hits.len() < req.d {
        return Err(Error::Internal(format!("depth {r}: neither case applies")));
    }
    let step = format!("depth {r}: N{}", j + 1);
    let n_j = t
        .choose(step, Some(hits[..req.d].to_vec()), |c| c.len() == req.d && distinct_within(c, &hits))?
        .expect("default supplied");
    let mut subtrees = Vec::with_capacity(n_j.len());
    for &zp in &n_j {
        let mut z_next = z_set.clone();
        z_next.remove(z);
        z_next.insert(zp);
        let root: VertexSet = [z1, z2, zp].iter().collect();
        let sub = sub_phantom(g, p, &root, 1, r - 1)?;
        match descend(g, &sub, req, &z_next, zp, t)? {
            Found::Tree(u) => subtrees.push(u),
            other => return Ok(other),
        }
    }
    let mut seen = VertexSet::new();
    let mut nodes = vec![ConeTreeNode { vertex: z, parent: None, level: 0 }];
    for u in subtrees {
        let vs = u.vertex_set();
        if !seen.is_disjoint(&vs) {
            return Err(Error::Internal(format!("depth {r}: grafted subtrees overlap")));
        }
        seen = seen.union(&vs);
        nodes.extend(u.nodes.into_iter().map(|n| ConeTreeNode {
            vertex: n.vertex,
            parent: Some(n.parent.unwrap_or(z)),
            level: n.level + 1,
        }));
    }
    Ok(Found::Tree(ConeTree { root: z, nodes }))
}

/// `K_t` or induced `C_4` inside the oversized set `k`: `t` of its members
/// share their neighbourhood on `outside`.
fn class_witness(g: &Graph, k: &[usize], outside: &VertexSet, z: usize, t: usize) -> Result<Witness> {
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for &x in k {
        groups.entry(g.neighbors_in(x, outside).to_vec()).or_default().push(x);
    }
    let (ys, s) = groups
        .into_iter()
        .find(|(_, s)| s.len() >= t)
        .ok_or_else(|| Error::Internal("no large group of equal traces".into()))?;
    let s = &s[..t];
    for (a, &x) in s.iter().enumerate() {
        if let Some(&x2) = s[a + 1..].iter().find(|&&x2| !g.has_edge(x, x2)) {
            let y = ys[0];
            let roles = [(x, "side-1"), (x2, "side-1"), (y.min(z), "side-2"), (y.max(z), "side-2")]
                .into_iter()
                .map(|(v, r)| (v, r.to_string()))
                .collect();
            return Ok(Witness::new(WitnessKind::Biclique, vec![vec![x, x2], vec![y.min(z), y.max(z)]], roles));
        }
    }
    Ok(Witness::members(WitnessKind::Clique, s.to_vec()))
}

/// Checks that `u` is a copy of `T_{d,r}` rooted at `z`, that `{z1, z2}`
/// is disjoint from and complete to it, that each node at level `i` lies in
/// `Γ_i(u⁻z1) ∪ Γ_i(u⁻z2)`, and that it meets `Z` only in `z`.
pub fn validate_cone_tree(g: &Graph, p: &Phantom, req: &ConeTreeRequest, u: &ConeTree) -> Validity<String> {
    let bad = |s: String| Validity::Invalid(s);
    let r = p.depth();
    let Some(first) = u.nodes.first() else { return bad("empty tree".into()) };
    if first.vertex != req.z || u.root != req.z || first.parent.is_some() || first.level != 0 {
        return bad("root must be z at level 0".into());
    }
    let mut level_of = BTreeMap::new();
    let mut children: BTreeMap<usize, usize> = BTreeMap::new();
    for n in &u.nodes {
        if n.vertex >= g.n() || level_of.insert(n.vertex, n.level).is_some() {
            return bad(format!("vertex {} repeated or out of range", n.vertex));
        }
        if n.vertex == req.z1 || n.vertex == req.z2 || !g.has_edge(n.vertex, req.z1) || !g.has_edge(n.vertex, req.z2) {
            return bad(format!("{} is not a common neighbour of the anchors", n.vertex));
        }
        if n.level > r {
            return bad(format!("{} sits below level {r}", n.vertex));
        }
        if let Some(par) = n.parent {
            if n.level == 0 || level_of.get(&par) != Some(&(n.level - 1)) {
                return bad(format!("{} does not sit one level below its parent", n.vertex));
            }
            if !g.has_edge(par, n.vertex) {
                return bad(format!("edge {par}-{} missing", n.vertex));
            }
            let in_gamma = [req.z1, req.z2].iter().any(|&a| p.gamma(n.level, par, a).is_some_and(|s| s.contains(&n.vertex)));
            if !in_gamma {
                return bad(format!("{} is not in Γ_{}({par} z1) ∪ Γ_{}({par} z2)", n.vertex, n.level, n.level));
            }
            *children.entry(par).or_default() += 1;
        } else if n.vertex != req.z {
            return bad(format!("{} has no parent", n.vertex));
        }
    }
    for n in &u.nodes {
        let c = children.get(&n.vertex).copied().unwrap_or(0);
        let want = if n.level < r { req.d } else { 0 };
        if c != want {
            return bad(format!("{} has {c} children, expected {want}", n.vertex));
        }
    }
    let expect: VertexSet = [req.z].iter().collect();
    if u.vertex_set().intersection(&req.z_set) != expect {
        return bad("tree meets Z outside z".into());
    }
    Validity::Valid
}
