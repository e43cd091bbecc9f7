use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use obslab::extractors::TraceStep;
use obslab::io::{phantom_from_json, read_graph};
use obslab::structures::{Crystal, Phantom};
use obslab::{Error, Graph};
use serde::de::DeserializeOwned;
use serde_json::Value;

/// Reads a path, or stdin for `-` or no path.
pub fn read_text(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
    }
}

fn bad(msg: impl Into<String>) -> anyhow::Error {
    Error::InvalidInput(msg.into()).into()
}

/// A graph on its own, or a bundle `{"graph": .., "phantom" | "crystal": ..}`
/// as printed by `gen phantom` and `gen plant-crystal`.
pub struct Bundle {
    pub graph: Graph,
    pub doc: Option<Value>,
}

impl Bundle {
    pub fn read(path: Option<&Path>) -> Result<Self> {
        let text = read_text(path)?;
        if text.trim_start().starts_with('{') {
            let doc: Value = serde_json::from_str(&text).map_err(|e| bad(format!("JSON: {e}")))?;
            if let Some(g) = doc.get("graph") {
                let graph = read_graph(&g.to_string())?;
                return Ok(Self { graph, doc: Some(doc) });
            }
        }
        Ok(Self { graph: read_graph(&text)?, doc: None })
    }

    /// The named part: from `file` if given, else from the bundle.
    fn part(&self, key: &str, file: Option<&PathBuf>) -> Result<Value> {
        if let Some(f) = file {
            return serde_json::from_str(&read_text(Some(f))?).map_err(|e| bad(format!("{key} JSON: {e}")));
        }
        self.doc
            .as_ref()
            .and_then(|d| d.get(key))
            .cloned()
            .ok_or_else(|| bad(format!("no {key} given: pass --{key} or a bundle with a \"{key}\" field")))
    }

    pub fn phantom(&self, file: Option<&PathBuf>) -> Result<Phantom> {
        Ok(phantom_from_json(self.part("phantom", file)?)?)
    }

    pub fn structure<T: DeserializeOwned>(&self, key: &str, file: Option<&PathBuf>) -> Result<T> {
        serde_json::from_value(self.part(key, file)?).map_err(|e| bad(format!("{key} JSON: {e}")))
    }

    pub fn crystal(&self, file: Option<&PathBuf>) -> Result<Crystal> {
        self.structure("crystal", file)
    }
}

/// A trace as printed by `extract`, or a bare list of steps.
pub fn read_trace(path: &Path) -> Result<Vec<TraceStep>> {
    let doc: Value = serde_json::from_str(&read_text(Some(path))?).map_err(|e| bad(format!("trace JSON: {e}")))?;
    let steps = match doc {
        Value::Object(mut m) => m.remove("trace").ok_or_else(|| bad("trace object has no \"trace\" field"))?,
        other => other,
    };
    serde_json::from_value(steps).map_err(|e| bad(format!("trace JSON: {e}")))
}

pub fn parse_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<usize>().map_err(|_| bad(format!("bad vertex `{s}`"))))
        .collect()
}
