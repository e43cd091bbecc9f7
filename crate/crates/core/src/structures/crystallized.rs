use serde::{Deserialize, Serialize};

use crate::graph::{is_stable_set, Graph, VertexSet};

/// Witness that `z` is crystallized: the 2-clique `{z1, z2}` inside `N(z)`
/// and the partition `(S1, S2)` of the rest of `N(z)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystallizedCertificate {
    pub z: usize,
    pub z1: usize,
    pub z2: usize,
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
}

impl CrystallizedCertificate {
    /// Re-checks (C1) and (C2) against `h`.
    pub fn holds_in(&self, h: &Graph) -> bool {
        let z = self.z;
        let n = h.n();
        if z >= n || self.z1 >= n || self.z2 >= n || self.side_vertices().any(|x| x >= n) {
            return false;
        }
        if !(h.has_edge(self.z1, self.z2) && h.has_edge(z, self.z1) && h.has_edge(z, self.z2)) {
            return false;
        }
        let rest: VertexSet = self.side_vertices().collect();
        let mut expected = h.neighborhood(z);
        expected.remove(self.z1);
        expected.remove(self.z2);
        if rest != expected || rest.len() != self.s1.len() + self.s2.len() {
            return false;
        }
        if rest.is_empty() || !is_stable_set(h, &rest) {
            return false;
        }
        let hangs = |x: usize, zi: usize| h.degree(x) == 2 && h.has_edge(x, zi) && h.has_edge(x, z);
        self.s1.iter().all(|&x| hangs(x, self.z1)) && self.s2.iter().all(|&x| hangs(x, self.z2))
    }

    pub fn side_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.s1.iter().chain(&self.s2).copied()
    }
}

/// Exhaustive check of (C1)-(C2) at `z`; returns the certificate with the
/// least `(z1, z2)`.
///
/// A side may be empty as long as the union is not.
pub fn is_crystallized(h: &Graph, z: usize) -> Option<CrystallizedCertificate> {
    if z >= h.n() {
        return None;
    }
    let nbrs: Vec<usize> = h.neighbors(z).collect();
    for (i, &z1) in nbrs.iter().enumerate() {
        for &z2 in &nbrs[i + 1..] {
            if !h.has_edge(z1, z2) {
                continue;
            }
            let rest: Vec<usize> = nbrs.iter().copied().filter(|&v| v != z1 && v != z2).collect();
            if rest.is_empty() || !is_stable_set(h, &rest.iter().collect()) {
                continue;
            }
            let mut s1 = Vec::new();
            let mut s2 = Vec::new();
            let mut ok = true;
            for &x in &rest {
                if h.degree(x) != 2 {
                    ok = false;
                    break;
                }
                if h.has_edge(x, z1) {
                    s1.push(x);
                } else if h.has_edge(x, z2) {
                    s2.push(x);
                } else {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Some(CrystallizedCertificate { z, z1, z2, s1, s2 });
            }
        }
    }
    None
}
