use super::{distinct_within, Extraction, HypothesisViolation, Outcome, Tracer, TraceStep};
use crate::detectors::anticomplete_family;
use crate::error::{invalid, Result};
use crate::graph::{is_anticomplete, Graph, VertexSet};
use crate::structures::{is_clear_crystal, validate_crystal, Crystal, CrystalArm};

/// Largest `q ≤ cap` for which the sets carry `q` pairwise anticomplete
/// members.
fn best_family(g: &Graph, sets: &[VertexSet], cap: usize) -> Result<usize> {
    for q in (1..=cap).rev() {
        if anticomplete_family(g, sets, q)?.is_some() {
            return Ok(q);
        }
    }
    Ok(0)
}

fn pairwise_anticomplete(g: &Graph, sets: &[VertexSet], idx: &[usize]) -> bool {
    idx.iter().enumerate().all(|(a, &i)| idx[a + 1..].iter().all(|&j| is_anticomplete(g, &sets[i], &sets[j])))
}

/// Shrinks a crystal to a clear `(z1, z2, f, g)`-crystal: first `2g`
/// anticomplete pairs per centre, then `f` anticomplete arms.
pub fn clear_crystal(g: &Graph, c: &Crystal, f: usize, gs: usize, replay: Option<&[TraceStep]>) -> Result<Extraction> {
    if f == 0 || gs == 0 {
        return invalid("f and g must be positive");
    }
    if let Some(v) = validate_crystal(g, c)?.violation() {
        return invalid(format!("input crystal is not valid: {v}"));
    }
    let mut t = Tracer::new(replay);
    let outcome = run(g, c, f, gs, &mut t)?;
    Ok(Extraction { outcome, trace: t.finish()? })
}

fn run(g: &Graph, c: &Crystal, f: usize, gs: usize, t: &mut Tracer) -> Result<Outcome> {
    let mut arms = Vec::with_capacity(c.arms.len());
    for arm in &c.arms {
        let mut l1 = arm.side1.clone();
        let mut l2 = arm.side2.clone();
        l1.sort_unstable();
        l2.sort_unstable();
        let pairs: Vec<VertexSet> = l1.iter().zip(&l2).map(|(&x, &y)| [x, y].iter().collect()).collect();
        let step = format!("pairs at {}", arm.center);
        let default = anticomplete_family(g, &pairs, 2 * gs)?;
        let legal = |idx: &[usize]| {
            idx.len() == 2 * gs && idx.iter().all(|&i| i < pairs.len()) && distinct_within(idx, &(0..pairs.len()).collect::<Vec<_>>())
                && pairwise_anticomplete(g, &pairs, idx)
        };
        let Some(idx) = t.choose(step.clone(), default, legal)? else {
            let available = best_family(g, &pairs, 2 * gs)?;
            return Ok(Outcome::HypothesisViolation(HypothesisViolation::shortfall(step, 2 * gs, available)));
        };
        let mut side1: Vec<usize> = idx[..gs].iter().map(|&i| l1[i]).collect();
        let mut side2: Vec<usize> = idx[gs..].iter().map(|&i| l2[i]).collect();
        side1.sort_unstable();
        side2.sort_unstable();
        arms.push(CrystalArm { center: arm.center, side1, side2 });
    }
    let blocks: Vec<VertexSet> = arms
        .iter()
        .map(|a| a.side1.iter().chain(&a.side2).copied().chain([a.center]).collect())
        .collect();
    let step = "arms";
    let default = anticomplete_family(g, &blocks, f)?;
    let legal = |idx: &[usize]| {
        idx.len() == f && distinct_within(idx, &(0..blocks.len()).collect::<Vec<_>>()) && pairwise_anticomplete(g, &blocks, idx)
    };
    let Some(mut idx) = t.choose(step, default, legal)? else {
        let available = best_family(g, &blocks, f)?;
        return Ok(Outcome::HypothesisViolation(HypothesisViolation::shortfall(step, f, available)));
    };
    idx.sort_unstable();
    let out = Crystal { z1: c.z1, z2: c.z2, arms: idx.iter().map(|&i| arms[i].clone()).collect() };
    if !is_clear_crystal(g, &out)? {
        return Err(crate::error::Error::Internal("cleared crystal is not clear".into()));
    }
    Ok(Outcome::Crystal(out))
}
