//! Text formats: graph JSON, edge lists, PACE tree decompositions and the
//! JSON form of phantoms.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::structures::Phantom;
use crate::treewidth::TreeDecomposition;

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// `{"n":<n>,"edges":[[u,v],...]}` with `u < v`, sorted.
pub fn graph_to_json(g: &Graph) -> String {
    let doc = GraphJson {
        n: g.n(),
        edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
    };
    serde_json::to_string(&doc).expect("graph JSON is always serializable")
}

pub fn graph_from_json(text: &str) -> Result<Graph> {
    let doc: GraphJson = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("graph JSON: {e}")))?;
    Graph::from_edges(doc.n, doc.edges.into_iter().map(|[u, v]| (u, v)))
}

/// `n m` header, then one `u v` line per edge.
pub fn graph_to_edgelist(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn parse_usize(tok: Option<&str>, what: &str) -> Result<usize> {
    tok.ok_or_else(|| Error::InvalidInput(format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad {what}")))
}

pub fn graph_from_edgelist(text: &str) -> Result<Graph> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::InvalidInput("empty edge list".into()))?;
    let mut toks = header.split_whitespace();
    let n = parse_usize(toks.next(), "vertex count")?;
    let m = parse_usize(toks.next(), "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let mut t = line.split_whitespace();
        edges.push((parse_usize(t.next(), "edge end")?, parse_usize(t.next(), "edge end")?));
    }
    if edges.len() != m {
        return invalid(format!("header says {m} edges, found {}", edges.len()));
    }
    Graph::from_edges(n, edges)
}

/// Accepts either format, sniffing for a leading `{`.
pub fn read_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        graph_from_json(text)
    } else {
        graph_from_edgelist(text)
    }
}

/// PACE `.td`: `s td <bags> <width+1> <n>`, `b <id> <v...>` with 1-based
/// ids and vertices, then tree edges.
pub fn td_to_pace(td: &TreeDecomposition, n: usize) -> String {
    let mut out = format!("s td {} {} {}\n", td.bags.len(), td.width() + 1, n);
    for (i, bag) in td.bags.iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for &(a, b) in &td.edges {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}

/// Parses PACE `.td`; returns the decomposition and the declared `n`.
pub fn td_from_pace(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut header = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut t = line.split_whitespace();
        match t.next() {
            Some("s") => {
                if t.next() != Some("td") {
                    return invalid("expected `s td` header");
                }
                let count = parse_usize(t.next(), "bag count")?;
                let _width = parse_usize(t.next(), "bag size")?;
                let n = parse_usize(t.next(), "vertex count")?;
                bags = vec![None; count];
                header = Some(n);
            }
            Some("b") => {
                let id = parse_usize(t.next(), "bag id")?;
                if id == 0 || id > bags.len() {
                    return invalid(format!("bag id {id} out of range"));
                }
                let mut bag = Vec::new();
                for tok in t {
                    let v: usize = tok.parse().map_err(|_| Error::InvalidInput("bad bag vertex".into()))?;
                    if v == 0 {
                        return invalid("vertices are 1-based");
                    }
                    bag.push(v - 1);
                }
                bags[id - 1] = Some(bag);
            }
            Some(a) => {
                let a: usize = a.parse().map_err(|_| Error::InvalidInput(format!("bad line `{line}`")))?;
                let b = parse_usize(t.next(), "tree edge end")?;
                if a == 0 || b == 0 || a > bags.len() || b > bags.len() {
                    return invalid(format!("tree edge {a} {b} out of range"));
                }
                edges.push((a - 1, b - 1));
            }
            None => {}
        }
    }
    let n = header.ok_or_else(|| Error::InvalidInput("missing `s td` header".into()))?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::InvalidInput(format!("bag {} missing", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok((TreeDecomposition { bags, edges }, n))
}

#[derive(Serialize, Deserialize)]
struct PhantomJson {
    d: usize,
    layers: Vec<Vec<usize>>,
    gamma: Vec<BTreeMap<String, Vec<usize>>>,
}

/// Layer lists plus per-layer maps keyed `"u-v"`.
pub fn phantom_to_json(p: &Phantom) -> serde_json::Value {
    let doc = PhantomJson {
        d: p.d,
        layers: p.layers.iter().map(VertexSet::to_vec).collect(),
        gamma: p
            .gamma
            .iter()
            .map(|m| m.iter().map(|(&(u, v), img)| (format!("{u}-{v}"), img.clone())).collect())
            .collect(),
    };
    serde_json::to_value(doc).expect("phantom JSON is always serializable")
}

pub fn phantom_from_json(value: serde_json::Value) -> Result<Phantom> {
    let doc: PhantomJson = serde_json::from_value(value).map_err(|e| Error::InvalidInput(format!("phantom JSON: {e}")))?;
    let mut gamma = Vec::with_capacity(doc.gamma.len());
    for m in doc.gamma {
        let mut map = BTreeMap::new();
        for (key, img) in m {
            let (u, v) = key
                .split_once('-')
                .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                .ok_or_else(|| Error::InvalidInput(format!("bad edge key `{key}`")))?;
            map.insert((u.min(v), u.max(v)), img);
        }
        gamma.push(map);
    }
    Ok(Phantom {
        d: doc.d,
        layers: doc.layers.into_iter().map(|l| l.into_iter().collect()).collect(),
        gamma,
    })
}
