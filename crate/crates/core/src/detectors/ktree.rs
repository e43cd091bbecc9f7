use super::holes::is_chordal;
use crate::graph::{is_clique, Graph};

/// Greedy reverse construction: peel vertices whose remaining
/// neighbourhood is a `k`-clique until `k` vertices are left.
pub fn is_k_tree(h: &Graph, k: usize) -> bool {
    if k == 0 || h.n() < k {
        return false;
    }
    let mut alive = h.vertex_set();
    while alive.len() > k {
        let peel = alive.iter().find(|&v| {
            let nb = h.neighbors_in(v, &alive);
            nb.len() == k && is_clique(h, &nb)
        });
        match peel {
            Some(v) => alive.remove(v),
            None => return false,
        }
    }
    is_clique(h, &alive)
}

/// Chordal and `K_{k+2}`-free.
pub fn is_k_forest(h: &Graph, k: usize) -> bool {
    is_chordal(h) && super::max_clique(h).len() < k + 2
}
