use std::path::PathBuf;
use std::time::Instant;

use anyhow::Result;
use clap::Args;
use obslab::canon::graphs_up_to_iso;
use obslab::detectors::{contains_induced, find_clique, find_even_hole, is_k_forest, SearchLimits};
use obslab::generators::{random_graph, rng};
use obslab::io::{graph_to_json, read_graph};
use obslab::treewidth::{treewidth_exact_with_guard, DEFAULT_EXACT_GUARD};
use obslab::{Error, Graph};
use rand::Rng;
use serde_json::json;

use crate::input::read_text;
use crate::report::{par_map, Instance, Report};
use crate::Status;

#[derive(Args)]
pub struct ScanArgs {
    /// The forbidden 2-forest H.
    #[arg(long)]
    h: PathBuf,
    /// Forbidden clique size.
    #[arg(long)]
    t: usize,
    #[arg(long)]
    n_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random graphs per vertex count above the exhaustive range.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Vertex counts up to this are enumerated up to isomorphism.
    #[arg(long, default_value_t = 7)]
    exhaustive_up_to: usize,
    #[arg(long, default_value_t = DEFAULT_EXACT_GUARD)]
    exact_guard: usize,
}

pub fn run(a: ScanArgs, command: Vec<String>) -> Result<Status> {
    let started = Instant::now();
    let h = read_graph(&read_text(Some(&a.h))?)?;
    if !is_k_forest(&h, 2) {
        return Err(Error::InvalidInput("H must be a 2-forest".into()).into());
    }
    let lim = SearchLimits::new(usize::MAX);
    let free = |g: &Graph| -> obslab::Result<bool> {
        Ok(find_even_hole(g, &lim)?.is_none() && find_clique(g, a.t, &lim)?.is_none() && (g.n() < h.n() || contains_induced(g, &h, &lim)?.is_none()))
    };
    let mut instances = Vec::new();
    let mut best = 0;
    for n in 1..=a.n_max {
        let exhaustive = n <= a.exhaustive_up_to;
        let graphs: Vec<Graph> = if exhaustive {
            graphs_up_to_iso(n)
        } else {
            (0..a.samples as u64)
                .map(|i| {
                    let seed = a.seed.wrapping_add(1000 * n as u64 + i);
                    let p = rng(seed).gen_range(0.1..0.6);
                    random_graph(n, p, seed)
                })
                .collect()
        };
        let widths = par_map(&graphs, |g| -> obslab::Result<Option<usize>> {
            if !free(g)? {
                return Ok(None);
            }
            Ok(Some(treewidth_exact_with_guard(g, a.exact_guard)?.0))
        });
        let name = format!("n={n}");
        let mut top: Option<(usize, &Graph)> = None;
        let mut kept = 0;
        let mut error = None;
        for (g, w) in graphs.iter().zip(widths) {
            match w {
                Ok(Some(w)) => {
                    kept += 1;
                    if top.is_none_or(|(b, _)| w > b) {
                        top = Some((w, g));
                    }
                }
                Ok(None) => {}
                Err(e) => error = Some(e),
            }
        }
        if let Some(e) = error {
            instances.push(Instance::error(name, e));
            continue;
        }
        let width = top.map(|(w, _)| w);
        best = best.max(width.unwrap_or(0));
        let example = top.map(|(_, g)| serde_json::from_str::<serde_json::Value>(&graph_to_json(g)).expect("graph JSON parses"));
        let detail = json!({
            "mode": if exhaustive { "exhaustive" } else { "sampled" },
            "examined": graphs.len(),
            "qualifying": kept,
            "max_treewidth": width,
            "example": example,
        });
        instances.push(Instance::new(name, true, detail));
    }
    let extra = json!({ "max_treewidth_observed": best, "conclusive": false });
    Ok(Report { suite: "scan-conjecture", command: &command, seed: a.seed, started, extra: Some(extra) }.print(&instances))
}
