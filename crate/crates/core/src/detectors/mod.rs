//! Exhaustive recognizers for the induced structures of the even-hole-free
//! world. Every search visits vertices in increasing index order, so the
//! witness returned for a given graph is always the same.

mod clique;
mod holes;
mod induced;
mod ktree;
mod ramsey;
mod witness;

pub use clique::{find_clique, find_induced_biclique, find_stable_set, max_clique};
pub use holes::{
    find_even_hole, find_even_wheel, find_hole, find_prism, find_theta, for_each_hole, is_chordal,
    perfect_elimination_order,
};
pub use induced::{contains_induced, is_induced_embedding};
pub use ktree::{is_k_forest, is_k_tree};
pub use ramsey::{
    acyclic_tournament_or_stable, anticomplete_family, find_clique_or_stable, RamseyOutcome, TournamentOutcome,
};
pub use witness::{Witness, WitnessKind, WitnessReport};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertex bound above which exponential searches refuse to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_vertices: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self { max_vertices: 64 }
    }
}

impl SearchLimits {
    pub fn new(max_vertices: usize) -> Self {
        Self { max_vertices }
    }

    pub(crate) fn check(&self, what: &'static str, n: usize) -> Result<()> {
        if n > self.max_vertices {
            return Err(Error::ScaleLimit {
                what,
                limit: self.max_vertices,
                actual: n,
            });
        }
        Ok(())
    }
}

/// Outcome of a class-membership test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "lowercase")]
pub enum Membership {
    Member,
    Witness(Witness),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }
}

/// Membership in `ℰ_t`: `K_{2,2}`, theta, prism, even wheel, then `K_t`.
/// `t = None` tests `ℰ`.
pub fn membership_e_t(g: &Graph, t: Option<usize>, limits: &SearchLimits) -> Result<Membership> {
    if let Some(w) = find_induced_biclique(g, 2, 2, limits)? {
        return Ok(Membership::Witness(w));
    }
    if let Some(w) = find_theta(g, limits)? {
        return Ok(Membership::Witness(w));
    }
    if let Some(w) = find_prism(g, limits)? {
        return Ok(Membership::Witness(w));
    }
    if let Some(w) = find_even_wheel(g, limits)? {
        return Ok(Membership::Witness(w));
    }
    if let Some(t) = t {
        if let Some(w) = find_clique(g, t, limits)? {
            return Ok(Membership::Witness(w));
        }
    }
    Ok(Membership::Member)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle};

    #[test]
    fn membership_examples() {
        let lim = SearchLimits::default();
        assert!(membership_e_t(&cycle(7), Some(3), &lim).unwrap().is_member());
        match membership_e_t(&complete(4), Some(4), &lim).unwrap() {
            Membership::Witness(w) => assert_eq!(w.kind, WitnessKind::Clique),
            Membership::Member => panic!("K4 is not K4-free"),
        }
        assert!(!membership_e_t(&cycle(4), None, &lim).unwrap().is_member());
    }

    #[test]
    fn guard_trips() {
        let lim = SearchLimits::new(5);
        assert!(matches!(find_even_hole(&cycle(6), &lim), Err(Error::ScaleLimit { .. })));
    }
}
