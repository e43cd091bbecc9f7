use std::time::Instant;

use anyhow::Result;
use clap::{Args, ValueEnum};
use obslab::canon::{graphs_covering, graphs_up_to_iso};
use obslab::detectors::{
    acyclic_tournament_or_stable, find_clique_or_stable, find_even_hole, find_prism, find_theta, membership_e_t, RamseyOutcome,
    SearchLimits, TournamentOutcome,
};
use obslab::extractors::{
    brute_force_crystal, find_crystallized_vertex, phantom_to_cone_tree, phantom_to_crystal, validate_clique_family,
    validate_cone_tree, ConeTreeRequest, Extraction, Outcome, ViolationCause,
};
use obslab::generators::{
    basic_obstruction, complete, complete_bipartite, k_tree_random, plant_phantom, random_graph, rng, wall, Density,
    ObstructionKind, WallSpec,
};
use obslab::graph::{is_clique, is_stable_set};
use obslab::structures::{contraption, is_crystallized, validate_crystal, Crystal};
use obslab::treewidth::{treewidth_exact_with_guard, tw_lower, tw_upper, DEFAULT_EXACT_GUARD};
use obslab::{Digraph, Graph};
use rand::Rng;
use serde_json::json;

use crate::report::{par_map, Instance, Report};
use crate::Status;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Obstructions,
    ClassContainment,
    Contraption,
    Crystallized,
    Extractors,
    Ramsey,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest vertex count (suite-specific default).
    #[arg(long)]
    n: Option<usize>,
    /// Number of sampled instances (suite-specific default).
    #[arg(long)]
    samples: Option<usize>,
    /// Obstruction order.
    #[arg(long, default_value_t = 3)]
    t: usize,
    /// Clique size for the Ramsey suite.
    #[arg(long, default_value_t = 3)]
    c: usize,
    /// Stable-set size for the Ramsey suite.
    #[arg(long, default_value_t = 2)]
    s: usize,
    #[arg(long, default_value_t = DEFAULT_EXACT_GUARD)]
    exact_guard: usize,
}

pub fn run(a: VerifyArgs, command: Vec<String>) -> Result<Status> {
    let started = Instant::now();
    let (name, instances, extra) = match a.suite {
        Suite::Obstructions => ("obstructions", obstructions(&a), None),
        Suite::ClassContainment => ("class-containment", class_containment(a.n.unwrap_or(6)), None),
        Suite::Contraption => ("contraption", contraption_suite(&a), None),
        Suite::Crystallized => ("crystallized", crystallized(&a)?, None),
        Suite::Extractors => ("extractors", extractors(&a), None),
        Suite::Ramsey => {
            let (inst, n) = ramsey(&a);
            ("ramsey", inst, Some(json!({ "n": n })))
        }
    };
    Ok(Report { suite: name, command: &command, seed: a.seed, started, extra }.print(&instances))
}

fn obstructions(a: &VerifyArgs) -> Vec<Instance> {
    enum Job {
        Width(String, Graph, usize),
        Holes(String, Graph, bool),
    }
    let mut jobs = Vec::new();
    for t in 1..=a.t {
        jobs.push(Job::Width(format!("K{}", t + 1), complete(t + 1), t));
        jobs.push(Job::Width(format!("K{t},{t}"), complete_bipartite(t, t), t));
        if let Ok(w) = wall(WallSpec { t }) {
            jobs.push(Job::Width(format!("wall {t}"), w, t));
        }
    }
    if a.t >= 3 {
        jobs.push(Job::Holes(format!("K{0},{0}", a.t), complete_bipartite(a.t, a.t), false));
        for i in 0..a.samples.unwrap_or(5) as u64 {
            let seed = a.seed.wrapping_add(i);
            for (kind, line) in [(ObstructionKind::Wall, false), (ObstructionKind::LineOfWall, true)] {
                if let Ok(g) = basic_obstruction(a.t, kind, seed) {
                    let what = if line { "line of subdivided wall" } else { "subdivided wall" };
                    jobs.push(Job::Holes(format!("{what} {} seed {seed}", a.t), g, line));
                }
            }
        }
    }
    let guard = a.exact_guard;
    par_map(&jobs, |job| match job {
        Job::Width(name, g, t) => {
            if g.n() <= guard {
                match treewidth_exact_with_guard(g, guard) {
                    Ok((w, _)) => Instance::new(name, w == *t, json!({ "expected": t, "width": w, "method": "exact" })).against(g),
                    Err(e) => Instance::error(name, e),
                }
            } else {
                let (lo, hi) = (tw_lower(g), tw_upper(g).0);
                let ok = lo <= *t && *t <= hi;
                Instance::new(name, ok, json!({ "expected": t, "lower": lo, "upper": hi, "method": "bounds" })).against(g)
            }
        }
        Job::Holes(name, g, line) => {
            let lim = SearchLimits::new(usize::MAX);
            let hole = find_even_hole(g, &lim).map(|w| w.map(|w| w.paths[0].len()));
            let other = if *line { find_prism(g, &lim) } else { find_theta(g, &lim) };
            match (hole, other) {
                (Ok(h), Ok(o)) => {
                    let which = if *line { "prism" } else { "theta" };
                    Instance::new(name, h.is_some() && o.is_some(), json!({ "even_hole_length": h, which: o.is_some() })).against(g)
                }
                (Err(e), _) | (_, Err(e)) => Instance::error(name, e),
            }
        }
    })
}

fn class_containment(n: usize) -> Vec<Instance> {
    let graphs: Vec<Graph> = (0..=n).flat_map(graphs_up_to_iso).collect();
    let lim = SearchLimits::default();
    par_map(&graphs, |g| {
        let name = format!("n={} m={} {:?}", g.n(), g.m(), g.edges());
        let run = || -> obslab::Result<Instance> {
            let free = find_even_hole(g, &lim)?.is_none();
            let member = membership_e_t(g, None, &lim)?;
            let ok = !free || member.is_member();
            Ok(Instance::new(&name, ok, json!({ "even_hole_free": free, "in_class": member.is_member() })).against(g))
        };
        run().unwrap_or_else(|e| Instance::error(&name, e))
    })
}

/// Edges whose common neighbourhood is a stable set of vertices of degree
/// at most three.
fn qualifying_edges(g: &Graph) -> Vec<(usize, usize)> {
    g.edges()
        .into_iter()
        .filter(|&(a, b)| {
            let common = g.neighborhood(a).intersection(&g.neighborhood(b));
            is_stable_set(g, &common) && common.iter().all(|w| g.degree(w) <= 3)
        })
        .collect()
}

fn contraption_suite(a: &VerifyArgs) -> Vec<Instance> {
    let (n_max, want) = (a.n.unwrap_or(9).max(3), a.samples.unwrap_or(200));
    let lim = SearchLimits::default();
    let mut picked: Vec<(u64, Graph)> = Vec::new();
    let mut next = 0u64;
    while picked.len() < want {
        let batch: Vec<u64> = (next..next + 64).collect();
        next += 64;
        let found = par_map(&batch, |&i| {
            let seed = a.seed.wrapping_mul(1_000_003).wrapping_add(i);
            let mut r = rng(seed);
            let g = random_graph(r.gen_range(3..=n_max), r.gen_range(0.2..0.5), seed);
            let interesting = qualifying_edges(&g).iter().any(|&(x, y)| !g.neighborhood(x).is_disjoint(&g.neighborhood(y)));
            (interesting && membership_e_t(&g, None, &lim).is_ok_and(|m| m.is_member())).then_some((seed, g))
        });
        picked.extend(found.into_iter().flatten().take(want - picked.len()));
    }
    par_map(&picked, |(seed, g)| {
        let name = format!("seed {seed}");
        let mut checked = Vec::new();
        for (x, y) in qualifying_edges(g) {
            let verdict = contraption(g, x, y).and_then(|c| membership_e_t(&c.graph, None, &lim));
            match verdict {
                Ok(m) if m.is_member() => checked.push((x, y)),
                Ok(m) => return Instance::new(&name, false, json!({ "edge": [x, y], "witness": m })).against(g),
                Err(e) => return Instance::error(&name, e),
            }
        }
        Instance::new(&name, true, json!({ "n": g.n(), "edges_contracted": checked }))
    })
}

fn crystallized(a: &VerifyArgs) -> Result<Vec<Instance>> {
    let n_max = a.n.unwrap_or(12).max(4);
    let seeds: Vec<u64> = (0..a.samples.unwrap_or(200) as u64).map(|i| a.seed.wrapping_add(i)).collect();
    Ok(par_map(&seeds, |&seed| {
        let n = 4 + (seed as usize) % (n_max - 3);
        let name = format!("2-tree n={n} seed {seed}");
        let h = match k_tree_random(2, n, seed) {
            Ok(h) => h,
            Err(e) => return Instance::error(&name, e),
        };
        match find_crystallized_vertex(&h) {
            Ok(cert) => {
                let scan: Vec<usize> = (0..n).filter(|&z| is_crystallized(&h, z).is_some()).collect();
                let ok = cert.holds_in(&h) && scan.contains(&cert.z);
                Instance::new(&name, ok, json!({ "certificate": cert, "crystallized": scan })).against(&h)
            }
            Err(e) => Instance::error(&name, e).against(&h),
        }
    }))
}

fn crystal_ok(g: &Graph, c: &Crystal, f: usize, gs: usize) -> bool {
    let valid = validate_crystal(g, c).is_ok_and(|v| v.is_valid()) && c.f() == f && c.g() == gs;
    let lim = SearchLimits::new(usize::MAX);
    valid && (g.n() > 24 || brute_force_crystal(g, f, gs, &lim).is_ok_and(|b| b.is_some()))
}

fn extractors(a: &VerifyArgs) -> Vec<Instance> {
    #[derive(Clone)]
    struct Job {
        f: usize,
        g: usize,
        r: usize,
        density: Density,
        tree: bool,
        short: usize,
    }
    let mut jobs = Vec::new();
    for (f, g) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        for r in 1..=a.n.unwrap_or(3) {
            let seed = a.seed.wrapping_add((100 * r + 10 * f + g) as u64);
            for density in [Density::Minimal, Density::Coned { seed }] {
                jobs.push(Job { f, g, r, density: density.clone(), tree: false, short: 0 });
                jobs.push(Job { f, g, r, density: density.clone(), tree: true, short: 0 });
                jobs.push(Job { f, g, r, density, tree: true, short: 1 });
            }
        }
    }
    if let Some(k) = a.samples {
        jobs.truncate(k);
    }
    par_map(&jobs, |j| {
        let kind = if j.tree { "cone-tree" } else { "crystal" };
        let density = match j.density {
            Density::Coned { .. } => "coned",
            _ => "minimal",
        };
        let name = format!("{kind} f={} g={} r={} {density} d-{}", j.f, j.g, j.r, j.short);
        let base = complete(if j.tree { 3 } else { 2 });
        let (g, p) = match plant_phantom(&base, j.f + j.g - j.short, j.r, j.density.clone()) {
            Ok(x) => x,
            Err(e) => return Instance::error(&name, e),
        };
        let req = ConeTreeRequest { z_set: (0..3).collect(), z1: 0, z2: 1, z: 2, d: j.f, g: j.g, h: 3, t: 4 };
        let go = |replay: Option<&[obslab::extractors::TraceStep]>| -> obslab::Result<Extraction> {
            if j.tree {
                phantom_to_cone_tree(&g, &p, &req, replay)
            } else {
                phantom_to_crystal(&g, &p, j.f, j.g, replay)
            }
        };
        let ex = match go(None) {
            Ok(ex) => ex,
            Err(e) => return Instance::error(&name, e),
        };
        let replays = go(Some(&ex.trace)).is_ok_and(|again| again == ex);
        let sound = match &ex.outcome {
            Outcome::Crystal(c) => crystal_ok(&g, c, if j.tree { 1 } else { j.f }, j.g),
            Outcome::CliqueFamily(k) => validate_clique_family(&g, &p, j.g, k).is_valid(),
            Outcome::ConeTree(u) => validate_cone_tree(&g, &p, &req, u).is_valid(),
            Outcome::HypothesisViolation(v) => match v.cause {
                ViolationCause::Shortfall { needed, available } => available < needed && j.short > 0,
                _ => false,
            },
            Outcome::Embedding(_) => false,
        };
        Instance::new(&name, sound && replays, json!({ "n": g.n(), "outcome": ex.outcome.variant(), "replays": replays }))
            .against(&g)
    })
}

fn ramsey(a: &VerifyArgs) -> (Vec<Instance>, usize) {
    let (c, s) = (a.c, a.s);
    let threshold = (0..s).fold(1usize, |acc, _| acc.saturating_mul(c));
    let n = a.n.unwrap_or(threshold);
    let lim = SearchLimits::new(usize::MAX);
    let check = move |g: &Graph| -> Result<(), String> {
        match find_clique_or_stable(g, c, s, &lim).map_err(|e| e.to_string())? {
            RamseyOutcome::Clique(v) if v.len() == c && is_clique(g, &v.iter().collect()) => Ok(()),
            RamseyOutcome::Stable(v) if v.len() == s && is_stable_set(g, &v.iter().collect()) => Ok(()),
            RamseyOutcome::Neither if g.n() < threshold => Ok(()),
            other => Err(format!("{other:?}")),
        }
    };
    let mut out = Vec::new();
    if n <= 9 {
        // Exhaustive, one report line per chunk.
        let mut all = graphs_covering(n).peekable();
        while all.peek().is_some() {
            let chunk: Vec<Graph> = all.by_ref().take(1 << 16).collect();
            let verdicts = par_map(&chunk, |g| check(g).err());
            let name = format!("exhaustive n={n} graphs {}..{}", out.len() << 16, (out.len() << 16) + chunk.len());
            let inst = match verdicts.into_iter().enumerate().find_map(|(i, e)| e.map(|e| (i, e))) {
                None => Instance::new(name, true, json!({ "graphs": chunk.len() })),
                Some((i, e)) => Instance::new(name, false, json!({ "outcome": e })).against(&chunk[i]),
            };
            out.push(inst);
        }
    } else {
        let seeds: Vec<u64> = (0..a.samples.unwrap_or(200) as u64).map(|i| a.seed.wrapping_add(i)).collect();
        out.extend(par_map(&seeds, |&seed| {
            let p = (seed % 19 + 1) as f64 / 20.0;
            let g = random_graph(n, p, seed);
            let name = format!("random n={n} p={p} seed {seed}");
            match check(&g) {
                Ok(()) => Instance::new(name, true, json!({})),
                Err(e) => Instance::new(name, false, json!({ "outcome": e })).against(&g),
            }
        }));
    }
    let dn = (0..threshold).fold(1usize, |acc, _| acc.saturating_mul(c));
    if dn <= 64 {
        let seeds: Vec<u64> = (0..a.samples.unwrap_or(200) as u64).map(|i| a.seed.wrapping_add(i)).collect();
        out.extend(par_map(&seeds, |&seed| {
            let mut r = rng(seed);
            let p = r.gen_range(0.0..0.3);
            let arcs: Vec<(usize, usize)> =
                (0..dn).flat_map(|u| (0..dn).map(move |v| (u, v))).filter(|&(u, v)| u != v).collect();
            let arcs: Vec<(usize, usize)> = arcs.into_iter().filter(|_| r.gen_bool(p)).collect();
            let name = format!("digraph n={dn} seed {seed}");
            let d = match Digraph::from_arcs(dn, arcs) {
                Ok(d) => d,
                Err(e) => return Instance::error(name, e),
            };
            let ok = match acyclic_tournament_or_stable(&d, c, s, &lim) {
                Ok(TournamentOutcome::Tournament(v)) => {
                    v.len() == c && v.iter().enumerate().all(|(i, &x)| v[i + 1..].iter().all(|&y| d.has_arc(x, y)))
                }
                Ok(TournamentOutcome::Stable(v)) => {
                    v.len() == s && v.iter().all(|&x| v.iter().all(|&y| x == y || !d.has_arc(x, y)))
                }
                _ => false,
            };
            Instance::new(name, ok, json!({ "arcs": d.arcs().len() }))
        }));
    }
    (out, n)
}
