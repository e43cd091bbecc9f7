use crate::detectors::SearchLimits;
use crate::error::Result;
use crate::graph::Graph;
use crate::structures::{Crystal, CrystalArm};

/// Any `(f, g)`-crystal, by exhaustive search over anchor edges, centres and
/// side sets. The first hit in index order is returned.
pub fn brute_force_crystal(g: &Graph, f: usize, gs: usize, limits: &SearchLimits) -> Result<Option<Crystal>> {
    limits.check("crystal search", g.n())?;
    if f == 0 || gs == 0 {
        return Ok(None);
    }
    for (z1, z2) in g.edges() {
        let mut used = vec![false; g.n()];
        used[z1] = true;
        used[z2] = true;
        let mut arms = Vec::with_capacity(f);
        if centres(g, (z1, z2), (f, gs), 0, &mut used, &mut arms) {
            return Ok(Some(Crystal { z1, z2, arms }));
        }
    }
    Ok(None)
}

/// Unclaimed vertices that could sit in `S_{i,z}`: seeing `zi` and `z`,
/// missing the other anchor.
fn pool(g: &Graph, zi: usize, other: usize, z: usize, used: &[bool]) -> Vec<usize> {
    (0..g.n())
        .filter(|&x| !used[x] && x != z && g.has_edge(x, zi) && g.has_edge(x, z) && !g.has_edge(x, other))
        .collect()
}

fn combos(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(pool: &[usize], k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..pool.len() {
            if pool.len() - i < k - cur.len() {
                break;
            }
            cur.push(pool[i]);
            go(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

fn centres(g: &Graph, (z1, z2): (usize, usize), (f, gs): (usize, usize), from: usize, used: &mut [bool], arms: &mut Vec<CrystalArm>) -> bool {
    if arms.len() == f {
        return true;
    }
    for z in from..g.n() {
        if used[z] {
            continue;
        }
        used[z] = true;
        for side1 in combos(&pool(g, z1, z2, z, used), gs) {
            side1.iter().for_each(|&x| used[x] = true);
            for side2 in combos(&pool(g, z2, z1, z, used), gs) {
                side2.iter().for_each(|&x| used[x] = true);
                arms.push(CrystalArm { center: z, side1: side1.clone(), side2: side2.clone() });
                if centres(g, (z1, z2), (f, gs), z + 1, used, arms) {
                    return true;
                }
                arms.pop();
                side2.iter().for_each(|&x| used[x] = false);
            }
            side1.iter().for_each(|&x| used[x] = false);
        }
        used[z] = false;
    }
    false
}
