use crate::error::{invalid, Result};
use crate::graph::Graph;

/// The `z1 z2`-contraption: contract the edge into a new vertex, then keep
/// only the edges from it to common neighbours.
#[derive(Debug, Clone)]
pub struct Contraption {
    pub graph: Graph,
    /// Index of the merged vertex; always the last one.
    pub merged: usize,
    /// New index of every old vertex other than `z1`, `z2`.
    pub old_to_new: Vec<Option<usize>>,
}

pub fn contraption(g: &Graph, z1: usize, z2: usize) -> Result<Contraption> {
    if !g.has_edge(z1, z2) {
        return invalid(format!("{z1}-{z2} is not an edge"));
    }
    let n = g.n();
    let mut old_to_new = vec![None; n];
    let mut next = 0;
    for (v, slot) in old_to_new.iter_mut().enumerate() {
        if v != z1 && v != z2 {
            *slot = Some(next);
            next += 1;
        }
    }
    let merged = next;
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        if let (Some(a), Some(b)) = (old_to_new[u], old_to_new[v]) {
            edges.push((a, b));
        }
    }
    for w in g.neighbors(z1) {
        if w != z2 && g.has_edge(z2, w) {
            edges.push((old_to_new[w].expect("w is neither anchor"), merged));
        }
    }
    Ok(Contraption {
        graph: Graph::from_edges(n - 1, edges)?,
        merged,
        old_to_new,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cone, path};

    #[test]
    fn triangle_collapses_to_an_edge() {
        let c = contraption(&complete(3), 0, 1).unwrap();
        assert_eq!(c.graph, complete(2));
        assert_eq!(c.merged, 1);
    }

    #[test]
    fn diamond_on_its_spine_gives_p3() {
        // cone(P3): path 0-1-2 plus apex 3; the degree-three pair is {1, 3}.
        let diamond = cone(&path(3));
        let c = contraption(&diamond, 1, 3).unwrap();
        // 0 and 2 stay non-adjacent, both joined to the merged vertex.
        assert_eq!(c.graph.edges(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn path_edge_leaves_the_far_end_isolated() {
        let c = contraption(&path(3), 0, 1).unwrap();
        assert_eq!(c.graph.n(), 2);
        assert_eq!(c.graph.m(), 0);
    }

    #[test]
    fn non_edge_is_rejected() {
        assert!(contraption(&path(3), 0, 2).is_err());
    }
}
