use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Subcommand};
use obslab::detectors::{
    contains_induced, find_clique, find_even_hole, find_even_wheel, find_hole, find_induced_biclique, find_prism,
    find_stable_set, find_theta, is_chordal, is_k_forest, is_k_tree, membership_e_t, Membership, SearchLimits, Witness,
    WitnessReport,
};
use obslab::extractors::{
    brute_force_crystal, clear_crystal, embed_2_tree, find_crystallized_vertex, phantom_to_cone_tree, phantom_to_crystal,
    validate_clique_family, validate_cone_tree, ConeTree, ConeTreeRequest, Extraction, GrowParams, Outcome, TraceStep,
};
use obslab::io::{read_graph, td_from_pace, td_to_pace};
use obslab::structures::{is_mirrored, validate_crystal, validate_kaleidoscope, validate_phantom, Kaleidoscope};
use obslab::treewidth::{treewidth_exact_with_guard, tw_lower, tw_upper, verify_decomposition, DEFAULT_EXACT_GUARD};
use obslab::{Error, VertexSet};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{parse_list, read_text, read_trace, Bundle};
use crate::Status;

fn emit(v: &impl Serialize) {
    println!("{}", serde_json::to_string(v).expect("report serializes"));
}

fn bad(msg: impl Into<String>) -> anyhow::Error {
    Error::InvalidInput(msg.into()).into()
}

#[derive(Args)]
pub struct DetectArgs {
    #[command(subcommand)]
    query: Query,
    /// Graph file (JSON or edge list); stdin when omitted.
    #[arg(long, short, global = true)]
    input: Option<PathBuf>,
    /// Refuse exponential searches above this many vertices.
    #[arg(long, global = true, default_value_t = 64)]
    max_vertices: usize,
}

#[derive(Subcommand)]
enum Query {
    Hole,
    EvenHole,
    Theta,
    Prism,
    EvenWheel,
    Clique {
        #[arg(long)]
        c: usize,
    },
    Stable {
        #[arg(long)]
        s: usize,
    },
    /// Induced K_{s,t}.
    Biclique {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
    /// Membership in E, or in E_t with `--t`; a witness when outside.
    Class {
        #[arg(long)]
        t: Option<usize>,
    },
    /// Induced copy of the pattern graph.
    Induced {
        #[arg(long)]
        pattern: PathBuf,
    },
    KTree {
        #[arg(long)]
        k: usize,
    },
    KForest {
        #[arg(long)]
        k: usize,
    },
    Chordal,
    /// Any (f, g)-crystal, by exhaustive search.
    Crystal {
        #[arg(long)]
        f: usize,
        #[arg(long)]
        g: usize,
    },
}

pub fn detect(a: DetectArgs) -> Result<Status> {
    let g = read_graph(&read_text(a.input.as_deref())?)?;
    let lim = SearchLimits::new(a.max_vertices);
    let found = |name: &str, w: Option<Witness>| json!({ "query": name, "result": WitnessReport::from(w.as_ref()) });
    let flag = |name: &str, holds: bool| json!({ "query": name, "holds": holds });
    let out = match a.query {
        Query::Hole => found("hole", find_hole(&g)),
        Query::EvenHole => found("even-hole", find_even_hole(&g, &lim)?),
        Query::Theta => found("theta", find_theta(&g, &lim)?),
        Query::Prism => found("prism", find_prism(&g, &lim)?),
        Query::EvenWheel => found("even-wheel", find_even_wheel(&g, &lim)?),
        Query::Clique { c } => found("clique", find_clique(&g, c, &lim)?),
        Query::Stable { s } => found("stable", find_stable_set(&g, s, &lim)?),
        Query::Biclique { s, t } => found("biclique", find_induced_biclique(&g, s, t, &lim)?),
        Query::Class { t } => {
            let w = match membership_e_t(&g, t, &lim)? {
                Membership::Member => None,
                Membership::Witness(w) => Some(w),
            };
            json!({ "query": "class", "t": t, "member": w.is_none(), "result": WitnessReport::from(w.as_ref()) })
        }
        Query::Induced { pattern } => {
            let h = read_graph(&read_text(Some(&pattern))?)?;
            found("induced", contains_induced(&g, &h, &lim)?)
        }
        Query::KTree { k } => flag("k-tree", is_k_tree(&g, k)),
        Query::KForest { k } => flag("k-forest", is_k_forest(&g, k)),
        Query::Chordal => flag("chordal", is_chordal(&g)),
        Query::Crystal { f, g: gs } => {
            let c = brute_force_crystal(&g, f, gs, &lim)?;
            json!({ "query": "crystal", "found": c.is_some(), "crystal": c })
        }
    };
    emit(&out);
    Ok(Status::Ok)
}

#[derive(Args)]
pub struct TwArgs {
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Exact width by subset dynamic programming.
    #[arg(long)]
    exact: bool,
    /// Largest vertex count the exact solver accepts.
    #[arg(long, default_value_t = DEFAULT_EXACT_GUARD)]
    exact_guard: usize,
    /// Print the decomposition in PACE `.td` format instead of JSON.
    #[arg(long)]
    pace: bool,
}

pub fn tw(a: TwArgs) -> Result<Status> {
    let g = read_graph(&read_text(a.input.as_deref())?)?;
    let lower = tw_lower(&g);
    let (width, td) = if a.exact { treewidth_exact_with_guard(&g, a.exact_guard)? } else { tw_upper(&g) };
    if a.pace {
        print!("{}", td_to_pace(&td, g.n()));
    } else {
        let lower = if a.exact { width } else { lower };
        emit(&json!({ "width": width, "exact": a.exact, "lower": lower, "upper": width, "decomposition": td }));
    }
    Ok(Status::Ok)
}

#[derive(Args)]
pub struct ValidateArgs {
    #[command(subcommand)]
    what: Structure,
    /// Graph or `{graph, ...}` bundle; stdin when omitted.
    #[arg(long, short, global = true)]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Structure {
    Phantom {
        #[arg(long)]
        phantom: Option<PathBuf>,
    },
    /// (CR1)-(CR3); `--clear` also checks clearness.
    Crystal {
        #[arg(long)]
        crystal: Option<PathBuf>,
        #[arg(long)]
        clear: bool,
    },
    /// A PACE tree decomposition of the graph.
    Decomposition {
        #[arg(long)]
        td: PathBuf,
    },
    /// (K1)-(K3); with `--z` and `--d`, also (M1)-(M3).
    Kaleidoscope {
        #[arg(long)]
        kaleidoscope: Option<PathBuf>,
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        d: Option<usize>,
    },
    /// `count` disjoint cliques of the phantom's depth, complete to Z_0.
    CliqueFamily {
        #[arg(long)]
        phantom: Option<PathBuf>,
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        count: usize,
    },
    /// A cone tree against the phantom and request it came from.
    ConeTree {
        #[arg(long)]
        phantom: Option<PathBuf>,
        #[arg(long)]
        tree: PathBuf,
        #[command(flatten)]
        req: RequestArgs,
    },
}

fn verdict<V: Serialize>(what: &str, v: &obslab::structures::Validity<V>) -> Status {
    emit(&json!({ "structure": what, "valid": v.is_valid(), "report": v }));
    if v.is_valid() {
        Status::Ok
    } else {
        Status::Violation
    }
}

pub fn validate(a: ValidateArgs) -> Result<Status> {
    let b = Bundle::read(a.input.as_deref())?;
    let g = &b.graph;
    Ok(match a.what {
        Structure::Phantom { phantom } => verdict("phantom", &validate_phantom(g, &b.phantom(phantom.as_ref())?)),
        Structure::Crystal { crystal, clear } => {
            let c = b.crystal(crystal.as_ref())?;
            let v = validate_crystal(g, &c)?;
            if clear && v.is_valid() {
                let ok = obslab::structures::is_clear_crystal(g, &c)?;
                let v: obslab::structures::Validity<&str> =
                    if ok { obslab::structures::Validity::Valid } else { obslab::structures::Validity::Invalid("not clear") };
                verdict("clear-crystal", &v)
            } else {
                verdict("crystal", &v)
            }
        }
        Structure::Decomposition { td } => {
            let (td, n) = td_from_pace(&read_text(Some(&td))?)?;
            if n != g.n() {
                return Err(bad(format!("decomposition is for {n} vertices, graph has {}", g.n())));
            }
            verdict("decomposition", &verify_decomposition(g, &td))
        }
        Structure::Kaleidoscope { kaleidoscope, z, d } => {
            let k: Kaleidoscope = b.structure("kaleidoscope", kaleidoscope.as_ref())?;
            let v = validate_kaleidoscope(g, &k);
            match (z, d) {
                (Some(z), Some(d)) => {
                    if !v.is_valid() {
                        return Ok(verdict("kaleidoscope", &v));
                    }
                    let z: VertexSet = parse_list(&z)?.into_iter().collect();
                    verdict("mirrored-kaleidoscope", &is_mirrored(g, &k, &z, d))
                }
                (None, None) => verdict("kaleidoscope", &v),
                _ => return Err(bad("--z and --d go together")),
            }
        }
        Structure::CliqueFamily { phantom, family, count } => {
            let p = b.phantom(phantom.as_ref())?;
            let fam: Vec<Vec<usize>> = serde_json::from_str(&read_text(Some(&family))?).map_err(|e| bad(format!("family JSON: {e}")))?;
            verdict("clique-family", &validate_clique_family(g, &p, count, &fam))
        }
        Structure::ConeTree { phantom, tree, req } => {
            let p = b.phantom(phantom.as_ref())?;
            let u: ConeTree = serde_json::from_str(&read_text(Some(&tree))?).map_err(|e| bad(format!("tree JSON: {e}")))?;
            verdict("cone-tree", &validate_cone_tree(g, &p, &req.request()?, &u))
        }
    })
}

#[derive(Args)]
pub struct RequestArgs {
    #[arg(long)]
    z1: usize,
    #[arg(long)]
    z2: usize,
    #[arg(long)]
    z: usize,
    /// The set Z as a comma list; defaults to {z1, z2, z}.
    #[arg(long)]
    z_set: Option<String>,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    g: usize,
    #[arg(long)]
    h: usize,
    #[arg(long)]
    t: usize,
}

impl RequestArgs {
    fn request(&self) -> Result<ConeTreeRequest> {
        let z_set = match &self.z_set {
            Some(s) => parse_list(s)?.into_iter().collect(),
            None => [self.z1, self.z2, self.z].into_iter().collect(),
        };
        Ok(ConeTreeRequest { z_set, z1: self.z1, z2: self.z2, z: self.z, d: self.d, g: self.g, h: self.h, t: self.t })
    }
}

#[derive(Args)]
pub struct ExtractArgs {
    #[command(subcommand)]
    theorem: Theorem,
    /// Graph or `{graph, ...}` bundle; stdin when omitted.
    #[arg(long, short, global = true)]
    input: Option<PathBuf>,
    /// Replay the choices recorded in this trace.
    #[arg(long, global = true)]
    trace: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Theorem {
    /// Shrink a crystal to a clear (f, g)-crystal.
    ClearCrystal {
        #[arg(long)]
        crystal: Option<PathBuf>,
        #[arg(long)]
        f: usize,
        #[arg(long)]
        g: usize,
    },
    /// An (f, g)-crystal or g cliques from a phantom on an edge.
    PhantomToCrystal {
        #[arg(long)]
        phantom: Option<PathBuf>,
        #[arg(long)]
        f: usize,
        #[arg(long)]
        g: usize,
    },
    /// A crystal or a cone tree from a phantom on a triangle.
    PhantomToConeTree {
        #[arg(long)]
        phantom: Option<PathBuf>,
        #[command(flatten)]
        req: RequestArgs,
    },
    /// A crystallized vertex of the input 2-tree.
    CrystallizedVertex,
    /// Embed a 2-tree into the host, growing from the phantom's triangle.
    Embed2Tree {
        #[arg(long)]
        phantom: Option<PathBuf>,
        /// The 2-tree to embed.
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, default_value_t = 1)]
        f: usize,
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        g: usize,
        #[arg(long, default_value_t = 5)]
        h: usize,
        #[arg(long, default_value_t = 4)]
        t: usize,
    },
}

fn extraction(ex: Extraction) -> Status {
    let violated = matches!(ex.outcome, Outcome::HypothesisViolation(_));
    emit(&ex);
    if violated {
        Status::Violation
    } else {
        Status::Ok
    }
}

pub fn extract(a: ExtractArgs) -> Result<Status> {
    let b = Bundle::read(a.input.as_deref())?;
    let g = &b.graph;
    let trace: Option<Vec<TraceStep>> = a.trace.as_deref().map(read_trace).transpose()?;
    let replay = trace.as_deref();
    Ok(match a.theorem {
        Theorem::ClearCrystal { crystal, f, g: gs } => extraction(clear_crystal(g, &b.crystal(crystal.as_ref())?, f, gs, replay)?),
        Theorem::PhantomToCrystal { phantom, f, g: gs } => {
            extraction(phantom_to_crystal(g, &b.phantom(phantom.as_ref())?, f, gs, replay)?)
        }
        Theorem::PhantomToConeTree { phantom, req } => {
            extraction(phantom_to_cone_tree(g, &b.phantom(phantom.as_ref())?, &req.request()?, replay)?)
        }
        Theorem::CrystallizedVertex => {
            let cert = find_crystallized_vertex(g)?;
            emit(&json!({ "variant": "crystallized-vertex", "payload": cert, "trace": Value::Array(Vec::new()) }));
            Status::Ok
        }
        Theorem::Embed2Tree { phantom, pattern, f, d, g: gs, h, t } => {
            let nabla = read_graph(&read_text(Some(&pattern))?)?;
            let p = b.phantom(phantom.as_ref())?;
            let ex = embed_2_tree(g, &nabla, &p, GrowParams { f, d, g: gs, h, t }, replay)?;
            extraction(ex)
        }
    })
}
