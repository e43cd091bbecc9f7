use std::collections::BTreeMap;

use super::cone_tree::{check_request, descend, Found};
use super::{find_crystallized_vertex, ConeTreeRequest, Extraction, HypothesisViolation, Outcome, Tracer, TraceStep, ViolationCause};
use crate::detectors::{is_induced_embedding, is_k_tree};
use crate::error::{invalid, Error, Result};
use crate::graph::{induced_subgraph, is_clique, is_stable_set, Graph, VertexSet};
use crate::structures::{sub_phantom, CrystallizedCertificate, Phantom};

/// Parameters of one growth round: `f` phantom levels are spent per round,
/// and the cone-tree step runs with `(d, g, h, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowParams {
    pub f: usize,
    pub d: usize,
    pub g: usize,
    pub h: usize,
    pub t: usize,
}

type Grown = std::result::Result<(BTreeMap<usize, usize>, Phantom), Outcome>;

/// Extends an embedding of `nabla` minus the side sets of its crystallized
/// vertex to all of `nabla`, using the phantom rooted at the current image.
pub fn grow_2_tree(
    g: &Graph,
    nabla: &Graph,
    embedding: &BTreeMap<usize, usize>,
    p: &Phantom,
    params: GrowParams,
    replay: Option<&[TraceStep]>,
) -> Result<Extraction> {
    if nabla.n() < 4 || !is_k_tree(nabla, 2) {
        return invalid("need a 2-tree on at least four vertices");
    }
    let cert = find_crystallized_vertex(nabla)?;
    let keep = nabla.vertex_set().difference(&cert.side_vertices().collect());
    if embedding.keys().copied().collect::<VertexSet>() != keep {
        return invalid("embedding must cover exactly the vertices left after removing the side sets");
    }
    check_embedding(g, nabla, embedding)?;
    let mut t = Tracer::new(replay);
    let outcome = match grow(g, nabla, &cert, embedding, p, params, &mut t)? {
        Ok((map, _)) => Outcome::Embedding(map.into_values().collect()),
        Err(stop) => stop,
    };
    Ok(Extraction { outcome, trace: t.finish()? })
}

/// Embeds the 2-tree `nabla` by growing from the triangle the phantom is
/// rooted at, one crystallized vertex at a time.
pub fn embed_2_tree(g: &Graph, nabla: &Graph, p: &Phantom, params: GrowParams, replay: Option<&[TraceStep]>) -> Result<Extraction> {
    if nabla.n() < 3 || !is_k_tree(nabla, 2) {
        return invalid("need a 2-tree on at least three vertices");
    }
    if p.z0().len() != 3 || !is_clique(g, p.z0()) {
        return invalid("phantom must be rooted at a triangle");
    }
    let mut t = Tracer::new(replay);
    let outcome = match embed(g, nabla, p, params, &mut t)? {
        Ok((map, _)) => Outcome::Embedding(map.into_values().collect()),
        Err(stop) => stop,
    };
    Ok(Extraction { outcome, trace: t.finish()? })
}

fn check_embedding(g: &Graph, nabla: &Graph, embedding: &BTreeMap<usize, usize>) -> Result<()> {
    let keys: VertexSet = embedding.keys().collect();
    let sub = induced_subgraph(nabla, &keys)?;
    let map: Vec<usize> = sub.new_to_old.iter().map(|v| embedding[v]).collect();
    if !is_induced_embedding(g, &sub.graph, &map) {
        return invalid("embedding is not an induced copy");
    }
    Ok(())
}

fn embed(g: &Graph, nabla: &Graph, p: &Phantom, params: GrowParams, t: &mut Tracer) -> Result<Grown> {
    if nabla.n() == 3 {
        let map = (0..3).zip(p.z0().iter()).collect();
        return Ok(Ok((map, p.clone())));
    }
    let cert = find_crystallized_vertex(nabla)?;
    let keep = nabla.vertex_set().difference(&cert.side_vertices().collect());
    let sub = induced_subgraph(nabla, &keep)?;
    let (inner, q) = match embed(g, &sub.graph, p, params, t)? {
        Ok(found) => found,
        Err(stop) => return Ok(Err(stop)),
    };
    let lifted = inner.into_iter().map(|(v, x)| (sub.new_to_old[v], x)).collect();
    grow(g, nabla, &cert, &lifted, &q, params, t)
}

fn grow(
    g: &Graph,
    nabla: &Graph,
    cert: &CrystallizedCertificate,
    map: &BTreeMap<usize, usize>,
    p: &Phantom,
    params: GrowParams,
    t: &mut Tracer,
) -> Result<Grown> {
    let image: VertexSet = map.values().collect();
    if p.z0() != &image {
        return invalid("phantom must be rooted at the current image");
    }
    if p.depth() < params.f {
        return Ok(Err(Outcome::HypothesisViolation(HypothesisViolation::shortfall("phantom depth", params.f, p.depth()))));
    }
    let (z1, z2, z) = (map[&cert.z1], map[&cert.z2], map[&cert.z]);
    let root: VertexSet = [z1, z2, z].iter().collect();
    let local = sub_phantom(g, p, &root, 0, params.f)?;
    let req = ConeTreeRequest { z_set: image, z1, z2, z, d: params.d, g: params.g, h: params.h, t: params.t };
    check_request(g, &local, &req)?;
    let c = match descend(g, &local, &req, &req.z_set, z, t)? {
        Found::Crystal(c) => c,
        Found::Tree(u) => return Ok(Err(Outcome::ConeTree(u))),
        Found::Stop(v) => return Ok(Err(Outcome::HypothesisViolation(v))),
    };
    let arm = &c.arms[0];
    let (n1, n2) = (cert.s1.len(), cert.s2.len());
    let default = pick_stable(g, &arm.side1, n1, &arm.side2, n2);
    let legal = |pick: &[usize]| {
        pick.len() == n1 + n2
            && pick[..n1].iter().all(|v| arm.side1.contains(v))
            && pick[n1..].iter().all(|v| arm.side2.contains(v))
            && is_stable_set(g, &pick.iter().collect())
            && pick.iter().collect::<VertexSet>().len() == n1 + n2
    };
    let Some(pick) = t.choose(format!("graft at {}", cert.z), default, legal)? else {
        let available = arm.side1.len().min(arm.side2.len());
        return Ok(Err(Outcome::HypothesisViolation(HypothesisViolation::shortfall(
            format!("graft at {}", cert.z),
            n1.max(n2),
            available,
        ))));
    };
    let mut next = map.clone();
    next.insert(cert.z, arm.center);
    for (&v, &x) in cert.s1.iter().chain(&cert.s2).zip(&pick) {
        next.insert(v, x);
    }
    let as_vec: Vec<usize> = (0..nabla.n()).map(|v| next[&v]).collect();
    if !is_induced_embedding(g, nabla, &as_vec) {
        return Ok(Err(Outcome::HypothesisViolation(HypothesisViolation {
            step: format!("graft at {}", cert.z),
            cause: ViolationCause::Rejected { detail: "grown image is not an induced copy".into() },
        })));
    }
    let new_image: VertexSet = next.values().collect();
    let rest = p.depth() - params.f;
    let q = sub_phantom(g, p, &new_image, params.f, rest)
        .map_err(|e| Error::Internal(format!("grown image outside layer {}: {e}", params.f)))?;
    Ok(Ok((next, q)))
}

/// First `a` vertices of `s1` and `b` of `s2`, in lexicographic order, that
/// together form a stable set.
fn pick_stable(g: &Graph, s1: &[usize], a: usize, s2: &[usize], b: usize) -> Option<Vec<usize>> {
    fn go(g: &Graph, pools: [&[usize]; 2], want: [usize; 2], side: usize, from: usize, cur: &mut Vec<usize>) -> bool {
        if cur.len() == want[0] + want[1] {
            return true;
        }
        if side == 0 && cur.len() == want[0] {
            return go(g, pools, want, 1, 0, cur);
        }
        for (i, &v) in pools[side].iter().enumerate().skip(from) {
            if cur.iter().any(|&u| u == v || g.has_edge(u, v)) {
                continue;
            }
            cur.push(v);
            if go(g, pools, want, side, i + 1, cur) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::with_capacity(a + b);
    go(g, [s1, s2], [a, b], 0, 0, &mut cur).then_some(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detectors::{contains_induced, SearchLimits};
    use crate::generators::{complete, cone, path, plant_phantom, Density};

    const PARAMS: GrowParams = GrowParams { f: 1, d: 1, g: 1, h: 5, t: 4 };

    #[test]
    fn diamond_from_triangle() {
        let (g, p) = plant_phantom(&complete(3), 2, 1, Density::Minimal).unwrap();
        let diamond = cone(&path(3));
        let cert = find_crystallized_vertex(&diamond).unwrap();
        let keep: Vec<usize> = (0..4).filter(|v| !cert.side_vertices().any(|s| s == *v)).collect();
        let embedding: BTreeMap<usize, usize> = keep.iter().copied().zip(0..3).collect();
        let ex = grow_2_tree(&g, &diamond, &embedding, &p, PARAMS, None).unwrap();
        let Outcome::Embedding(map) = &ex.outcome else { panic!("{:?}", ex.outcome) };
        assert!(is_induced_embedding(&g, &diamond, map));
    }

    #[test]
    fn triangle_is_rejected() {
        let (g, p) = plant_phantom(&complete(3), 2, 1, Density::Minimal).unwrap();
        let embedding: BTreeMap<usize, usize> = (0..3).map(|v| (v, v)).collect();
        assert!(grow_2_tree(&g, &complete(3), &embedding, &p, PARAMS, None).is_err());
    }

    #[test]
    fn gem_in_two_rounds() {
        let (g, p) = plant_phantom(&complete(3), 2, 3, Density::Minimal).unwrap();
        let gem = cone(&path(4));
        let ex = embed_2_tree(&g, &gem, &p, PARAMS, None).unwrap();
        let Outcome::Embedding(map) = &ex.outcome else { panic!("{:?}", ex.outcome) };
        assert!(is_induced_embedding(&g, &gem, map));
        assert_eq!(ex.trace.iter().filter(|s| s.step.starts_with("graft")).count(), 2);
        let sub = induced_subgraph(&g, &map.iter().collect()).unwrap().graph;
        assert!(contains_induced(&sub, &gem, &SearchLimits::default()).unwrap().is_some());
        assert_eq!(embed_2_tree(&g, &gem, &p, PARAMS, Some(&ex.trace)).unwrap(), ex);
    }

    #[test]
    fn shallow_phantom_runs_out() {
        let (g, p) = plant_phantom(&complete(3), 2, 1, Density::Minimal).unwrap();
        let gem = cone(&path(4));
        let ex = embed_2_tree(&g, &gem, &p, PARAMS, None).unwrap();
        assert!(matches!(ex.outcome, Outcome::HypothesisViolation(_)));
    }
}
