use crate::detectors::is_k_tree;
use crate::error::{invalid, Error, Result};
use crate::graph::{induced_subgraph, is_clique, Graph, VertexSet};
use crate::structures::{is_crystallized, CrystallizedCertificate};

/// A crystallized vertex of the 2-tree `nabla`, found by peeling simplicial
/// vertices down to a diamond and patching the certificate on the way back.
pub fn find_crystallized_vertex(nabla: &Graph) -> Result<CrystallizedCertificate> {
    if nabla.n() < 4 || !is_k_tree(nabla, 2) {
        return invalid("need a 2-tree on at least four vertices");
    }
    let mut alive = nabla.vertex_set();
    let mut peeled = Vec::new();
    while alive.len() > 4 {
        let v = alive
            .iter()
            .find(|&v| {
                let nb = nabla.neighbors_in(v, &alive);
                nb.len() == 2 && is_clique(nabla, &nb)
            })
            .ok_or_else(|| Error::Internal("2-tree without a simplicial vertex".into()))?;
        alive.remove(v);
        peeled.push(v);
    }
    let mut cert = diamond_certificate(nabla, &alive)?;
    while let Some(v) = peeled.pop() {
        alive.insert(v);
        let nv = nabla.neighbors_in(v, &alive).to_vec();
        cert = patch(&cert, v, &nv).ok_or_else(|| Error::Internal(format!("no patch for vertex {v}")))?;
    }
    if !cert.holds_in(nabla) || is_crystallized(nabla, cert.z).is_none() {
        return Err(Error::Internal(format!("certificate at {} does not hold", cert.z)));
    }
    Ok(cert)
}

fn diamond_certificate(nabla: &Graph, four: &VertexSet) -> Result<CrystallizedCertificate> {
    let sub = induced_subgraph(nabla, four)?;
    let z = (0..4)
        .find(|&v| sub.graph.degree(v) == 3)
        .ok_or_else(|| Error::Internal("base is not a diamond".into()))?;
    let c = is_crystallized(&sub.graph, z).ok_or_else(|| Error::Internal("diamond vertex not crystallized".into()))?;
    let back = |v: usize| sub.new_to_old[v];
    Ok(CrystallizedCertificate {
        z: back(c.z),
        z1: back(c.z1),
        z2: back(c.z2),
        s1: c.s1.into_iter().map(back).collect(),
        s2: c.s2.into_iter().map(back).collect(),
    })
}

/// Re-establishes the certificate after `v` returns with neighbours `nv`.
fn patch(c: &CrystallizedCertificate, v: usize, nv: &[usize]) -> Option<CrystallizedCertificate> {
    let has = |x: usize| nv.contains(&x);
    let touches_side = c.side_vertices().any(has);
    if !has(c.z) && !touches_side {
        return Some(c.clone());
    }
    for (side, zi) in [(&c.s1, c.z1), (&c.s2, c.z2)] {
        if let Some(&x) = side.iter().find(|&&x| has(x)) {
            let (s1, s2) = if has(zi) { (vec![v], vec![]) } else if has(c.z) { (vec![], vec![v]) } else { return None };
            return Some(CrystallizedCertificate { z: x, z1: zi, z2: c.z, s1, s2 });
        }
    }
    let mut next = c.clone();
    if has(c.z1) && has(c.z) {
        next.s1.push(v);
    } else if has(c.z2) && has(c.z) {
        next.s2.push(v);
    } else {
        return None;
    }
    Some(next)
}
