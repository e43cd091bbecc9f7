use std::collections::BTreeMap;

use super::{distinct_within, Extraction, Outcome, Tracer, TraceStep, MAX_RECURSION};
use crate::error::{invalid, Error, Result};
use crate::graph::{is_clique, Graph, VertexSet};
use crate::structures::{sub_phantom, validate_crystal, validate_phantom, Crystal, CrystalArm, Phantom, Validity};

enum Found {
    Crystal(Crystal),
    Cliques(Vec<Vec<usize>>),
}

/// From a `(Z_0, f+g, r)`-phantom on an edge: an `(f, g)`-crystal inside
/// `G[Z_r]`, or `g` disjoint `r`-cliques in `Z_r ∖ Z_0` complete to `Z_0`.
pub fn phantom_to_crystal(g: &Graph, p: &Phantom, f: usize, gs: usize, replay: Option<&[TraceStep]>) -> Result<Extraction> {
    if f == 0 || gs == 0 {
        return invalid("f and g must be positive");
    }
    if p.d != f + gs {
        return invalid(format!("phantom has d = {}, expected f + g = {}", p.d, f + gs));
    }
    if p.z0().len() != 2 || !is_clique(g, p.z0()) {
        return invalid("Z_0 must be a 2-clique");
    }
    if let Validity::Invalid(v) = validate_phantom(g, p) {
        return invalid(format!("phantom is not valid: {v}"));
    }
    if p.depth() > MAX_RECURSION {
        return Err(Error::ScaleLimit { what: "phantom recursion", limit: MAX_RECURSION, actual: p.depth() });
    }
    let mut t = Tracer::new(replay);
    let outcome = match descend(g, p, f, gs, &mut t)? {
        Found::Crystal(c) => Outcome::Crystal(c),
        Found::Cliques(k) => Outcome::CliqueFamily(k),
    };
    Ok(Extraction { outcome, trace: t.finish()? })
}

fn descend(g: &Graph, p: &Phantom, f: usize, gs: usize, t: &mut Tracer) -> Result<Found> {
    let r = p.depth();
    if r == 0 {
        return Ok(Found::Cliques(vec![Vec::new(); gs]));
    }
    let z = p.z0().to_vec();
    let (z1, z2) = (z[0], z[1]);
    let gamma1 = p.gamma(1, z1, z2).ok_or_else(|| Error::Internal("Z_0 edge missing from the first map".into()))?.to_vec();
    // cliques[&(j, x)][k] is K^j_{k,x}
    let mut cliques: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
    for &x in &gamma1 {
        for (j, keep) in [(1, z2), (2, z1)] {
            let root: VertexSet = [keep, x].iter().collect();
            let sub = sub_phantom(g, p, &root, 1, r - 1)?;
            match descend(g, &sub, f, gs, t)? {
                Found::Crystal(c) => {
                    t.note(format!("depth {r}: crystal below {x} side {j}"), Vec::new())?;
                    return Ok(Found::Crystal(c));
                }
                Found::Cliques(k) => {
                    cliques.insert((j, x), k);
                }
            }
        }
    }
    let anchors = [z1, z2];
    let complete_to = |j: usize, k: &[usize]| k.iter().all(|&u| g.has_edge(anchors[j - 1], u));
    let good = |x: usize| (1..=2).all(|j| cliques[&(j, x)].iter().all(|k| !complete_to(j, k)));
    let good_list: Vec<usize> = gamma1.iter().copied().filter(|&x| good(x)).collect();
    if good_list.len() >= f {
        let x_set = t
            .choose(format!("depth {r}: good centres"), Some(good_list[..f].to_vec()), |c| {
                c.len() == f && distinct_within(c, &good_list)
            })?
            .expect("default supplied");
        let mut arms = Vec::with_capacity(f);
        for &x in &x_set {
            let mut default = Vec::with_capacity(2 * gs);
            for j in 1..=2 {
                for k in &cliques[&(j, x)] {
                    let u = k.iter().copied().find(|&u| !g.has_edge(anchors[j - 1], u)).expect("good centre");
                    default.push(u);
                }
            }
            let legal = |c: &[usize]| {
                c.len() == 2 * gs
                    && c.iter().enumerate().all(|(pos, &u)| {
                        let (j, k) = (1 + pos / gs, pos % gs);
                        cliques[&(j, x)][k].contains(&u) && !g.has_edge(anchors[j - 1], u)
                    })
            };
            let u = t.choose(format!("depth {r}: non-neighbours at {x}"), Some(default), legal)?.expect("default supplied");
            // u^1 sees z2, u^2 sees z1.
            let mut side1 = u[gs..].to_vec();
            let mut side2 = u[..gs].to_vec();
            side1.sort_unstable();
            side2.sort_unstable();
            arms.push(CrystalArm { center: x, side1, side2 });
        }
        let c = Crystal { z1, z2, arms };
        if let Some(v) = validate_crystal(g, &c)?.violation() {
            return Err(Error::Internal(format!("assembled crystal fails: {v}")));
        }
        return Ok(Found::Crystal(c));
    }
    let bad: Vec<usize> = gamma1.iter().copied().filter(|&x| !good(x)).collect();
    if bad.len() < gs {
        return Err(Error::Internal(format!("depth {r}: neither case applies")));
    }
    let ys = t
        .choose(format!("depth {r}: clique tips"), Some(bad[..gs].to_vec()), |c| c.len() == gs && distinct_within(c, &bad))?
        .expect("default supplied");
    let mut family = Vec::with_capacity(gs);
    for &y in &ys {
        let options: Vec<(usize, usize)> = (1..=2)
            .flat_map(|j| (0..gs).map(move |k| (j, k)))
            .filter(|&(j, k)| complete_to(j, &cliques[&(j, y)][k]))
            .collect();
        let (j, k) = options[0];
        let pick = t
            .choose(format!("depth {r}: clique under {y}"), Some(vec![j, k]), |c| c.len() == 2 && options.contains(&(c[0], c[1])))?
            .expect("default supplied");
        let mut clique = cliques[&(pick[0], y)][pick[1]].clone();
        clique.push(y);
        clique.sort_unstable();
        family.push(clique);
    }
    Ok(Found::Cliques(family))
}

/// `count` pairwise disjoint `r`-cliques inside `Z_r ∖ Z_0`, with `Z_0`
/// complete to all of them.
pub fn validate_clique_family(g: &Graph, p: &Phantom, count: usize, family: &[Vec<usize>]) -> Validity<String> {
    let bad = |s: String| Validity::Invalid(s);
    if family.len() != count {
        return bad(format!("{} cliques, expected {count}", family.len()));
    }
    let r = p.depth();
    let outside = p.top().difference(p.z0());
    let mut seen = VertexSet::new();
    for (i, k) in family.iter().enumerate() {
        let set: VertexSet = k.iter().collect();
        if k.len() != r || set.len() != r {
            return bad(format!("clique {i} has {} distinct vertices, expected {r}", set.len()));
        }
        if !set.is_subset(&outside) {
            return bad(format!("clique {i} leaves Z_r minus Z_0"));
        }
        if !is_clique(g, &set) {
            return bad(format!("clique {i} is not a clique"));
        }
        if !seen.is_disjoint(&set) {
            return bad(format!("clique {i} overlaps an earlier one"));
        }
        if let Some(&u) = k.iter().find(|&&u| p.z0().iter().any(|a| !g.has_edge(a, u))) {
            return bad(format!("{u} misses an anchor"));
        }
        seen = seen.union(&set);
    }
    Validity::Valid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, plant_phantom, Density};

    #[test]
    fn depth_one_gives_singleton_cliques() {
        let (g, p) = plant_phantom(&complete(2), 2, 1, Density::Minimal).unwrap();
        let ex = phantom_to_crystal(&g, &p, 1, 1, None).unwrap();
        assert_eq!(ex.outcome, Outcome::CliqueFamily(vec![vec![2]]));
        assert!(validate_clique_family(&g, &p, 1, &[vec![2]]).is_valid());
    }

    #[test]
    fn depth_two_gives_a_crystal() {
        let (g, p) = plant_phantom(&complete(2), 2, 2, Density::Minimal).unwrap();
        let ex = phantom_to_crystal(&g, &p, 1, 1, None).unwrap();
        let Outcome::Crystal(c) = &ex.outcome else { panic!("{:?}", ex.outcome) };
        assert_eq!((c.z1, c.z2), (0, 1));
        let x = c.arms[0].center;
        assert!(p.gamma(1, 0, 1).unwrap().contains(&x));
        assert!(p.gamma(2, 0, x).unwrap().contains(&c.arms[0].side1[0]));
        assert!(p.gamma(2, 1, x).unwrap().contains(&c.arms[0].side2[0]));
        assert_eq!(phantom_to_crystal(&g, &p, 1, 1, Some(&ex.trace)).unwrap(), ex);
    }

    #[test]
    fn depth_zero_and_bad_parameters() {
        let (g, p) = plant_phantom(&complete(2), 3, 0, Density::Minimal).unwrap();
        assert_eq!(phantom_to_crystal(&g, &p, 1, 2, None).unwrap().outcome, Outcome::CliqueFamily(vec![vec![], vec![]]));
        assert!(phantom_to_crystal(&g, &p, 1, 1, None).is_err());
        let (g, p) = plant_phantom(&complete(3), 2, 1, Density::Minimal).unwrap();
        assert!(phantom_to_crystal(&g, &p, 1, 1, None).is_err());
    }
}
