use anyhow::Result;
use clap::{Args, Subcommand, ValueEnum};
use obslab::generators::{
    basic_obstruction, complete, complete_bipartite, cone, crystal_graph, cycle, double_star, k_tree_random, path, plant_crystal,
    plant_phantom, random_graph, tree_t, wall, CrystalNoise, CrystalSpec, Density, ObstructionKind, WallSpec,
};
use obslab::io::{graph_to_edgelist, graph_to_json, phantom_to_json};
use obslab::{Error, Graph};
use serde_json::json;

use crate::input::parse_list;
use crate::{Format, Status};

#[derive(Args)]
pub struct GenArgs {
    #[command(subcommand)]
    family: Family,
    /// Seed; required by the randomized families.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format for plain graphs; bundles are always JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Complete,
    Biclique,
    Wall,
    LineOfWall,
}

#[derive(Clone, Copy, ValueEnum)]
enum DensityKind {
    Minimal,
    Coned,
}

#[derive(Subcommand)]
enum Family {
    /// K_n.
    Complete { n: usize },
    /// K_{s,t}.
    Biclique { s: usize, t: usize },
    /// Path on `n` vertices.
    Path { n: usize },
    /// Cycle on `n` vertices.
    Cycle { n: usize },
    /// The t-by-t wall.
    Wall { t: usize },
    /// A universal vertex over a path with `k` edges; `cone-path 2` is the diamond.
    ConePath { k: usize },
    /// A t-basic obstruction; wall kinds are subdivided by the seed.
    Obstruction {
        t: usize,
        #[arg(value_enum)]
        kind: Kind,
    },
    /// Random k-tree on `n` vertices.
    KTree { k: usize, n: usize },
    /// G(n, p).
    Random { n: usize, p: f64 },
    /// Double star with `a` and `b` leaves.
    DoubleStar { a: usize, b: usize },
    /// Crystal graph from leaf counts, e.g. `2:1,1:3`.
    Crystal { arms: String },
    /// T_{d,r}.
    Tree { d: usize, r: usize },
    /// Planted phantom on K_base; prints `{graph, phantom}`.
    Phantom {
        base: usize,
        d: usize,
        r: usize,
        #[arg(long, value_enum, default_value_t = DensityKind::Minimal)]
        density: DensityKind,
    },
    /// Planted (f, g)-crystal with optional noise edges; prints `{graph, crystal}`.
    PlantCrystal {
        f: usize,
        g: usize,
        #[arg(long, default_value_t = 0)]
        noise: usize,
    },
}

fn print_graph(g: &Graph, format: Format) {
    match format {
        Format::Json => println!("{}", graph_to_json(g)),
        Format::Edgelist => print!("{}", graph_to_edgelist(g)),
    }
}

fn graph_value(g: &Graph) -> serde_json::Value {
    serde_json::from_str(&graph_to_json(g)).expect("graph JSON parses")
}

fn crystal_spec(text: &str) -> Result<CrystalSpec> {
    let arms = text
        .split(',')
        .map(|arm| {
            let (a, b) = arm.split_once(':').unwrap_or((arm, arm));
            let v = parse_list(&format!("{a},{b}"))?;
            Ok((v[0], v[1]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CrystalSpec { arms })
}

impl Family {
    fn randomized(&self) -> bool {
        match self {
            Family::Obstruction { kind, .. } => matches!(kind, Kind::Wall | Kind::LineOfWall),
            Family::KTree { .. } | Family::Random { .. } => true,
            Family::Phantom { density, .. } => matches!(density, DensityKind::Coned),
            Family::PlantCrystal { noise, .. } => *noise > 0,
            _ => false,
        }
    }
}

pub fn run(a: GenArgs) -> Result<Status> {
    let seed = match a.seed {
        Some(s) => s,
        None if a.family.randomized() => return Err(Error::InvalidInput("this family is randomized; pass --seed".into()).into()),
        None => 0,
    };
    let g = match a.family {
        Family::Complete { n } => complete(n),
        Family::Biclique { s, t } => complete_bipartite(s, t),
        Family::Path { n } => path(n),
        Family::Cycle { n } => cycle(n),
        Family::Wall { t } => wall(WallSpec { t })?,
        Family::ConePath { k } => cone(&path(k + 1)),
        Family::Obstruction { t, kind } => {
            let kind = match kind {
                Kind::Complete => ObstructionKind::Complete,
                Kind::Biclique => ObstructionKind::Biclique,
                Kind::Wall => ObstructionKind::Wall,
                Kind::LineOfWall => ObstructionKind::LineOfWall,
            };
            basic_obstruction(t, kind, seed)?
        }
        Family::KTree { k, n } => k_tree_random(k, n, seed)?,
        Family::Random { n, p } => random_graph(n, p, seed),
        Family::DoubleStar { a, b } => double_star(a, b)?,
        Family::Crystal { arms } => crystal_graph(&crystal_spec(&arms)?)?,
        Family::Tree { d, r } => tree_t(d, r)?.graph,
        Family::Phantom { base, d, r, density } => {
            let density = match density {
                DensityKind::Minimal => Density::Minimal,
                DensityKind::Coned => Density::Coned { seed },
            };
            let (g, p) = plant_phantom(&complete(base), d, r, density)?;
            println!("{}", json!({ "graph": graph_value(&g), "phantom": phantom_to_json(&p) }));
            return Ok(Status::Ok);
        }
        Family::PlantCrystal { f, g, noise } => {
            let noise = (noise > 0).then_some(CrystalNoise { seed, edges: noise });
            let (h, c) = plant_crystal(f, g, noise)?;
            println!("{}", json!({ "graph": graph_value(&h), "crystal": c }));
            return Ok(Status::Ok);
        }
    };
    print_graph(&g, a.format);
    Ok(Status::Ok)
}
