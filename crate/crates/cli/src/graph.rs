//! Graph files for `graphprod`:
//!
//! ```text
//! # vertices: name and automaton file, relative to the graph file
//! v1: z_a.json
//! v2: z_b.json
//! v1 -- v2
//! ```

use std::collections::HashMap;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use geostar::geodesics::{namespace, Graph};
use geostar::Dfa;

pub struct GraphFile {
    pub names: Vec<String>,
    pub graph: Graph,
    pub vertices: Vec<Dfa>,
    /// Whether symbols were renamed `s@vertex` to make alphabets disjoint.
    pub namespaced: bool,
}

fn located(path: &Path, line: usize, message: impl std::fmt::Display) -> anyhow::Error {
    anyhow!(geostar::Error::Parse {
        line,
        message: format!("{}: {message}", path.display()),
    })
}

pub fn load(path: &Path) -> Result<GraphFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut names: Vec<String> = Vec::new();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut pending_edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some((x, y)) = line.split_once("--") {
            pending_edges.push((i + 1, x.trim().to_string(), y.trim().to_string()));
        } else if let Some((name, file)) = line.split_once(':') {
            let name = name.trim().to_string();
            if name.is_empty() || index.contains_key(&name) {
                return Err(located(path, i + 1, format!("bad or repeated vertex name `{name}`")));
            }
            let dfa_path = dir.join(file.trim());
            let json = std::fs::read_to_string(&dfa_path)
                .map_err(|e| located(path, i + 1, format!("{}: {e}", dfa_path.display())))?;
            let dfa = Dfa::from_json(&json).map_err(|e| located(path, i + 1, format!("{}: {e}", dfa_path.display())))?;
            index.insert(name.clone(), names.len());
            names.push(name);
            vertices.push(dfa);
        } else {
            return Err(located(path, i + 1, format!("expected `name: file` or `x -- y`, got `{line}`")));
        }
    }
    for (line, x, y) in pending_edges {
        let lookup = |v: &str| index.get(v).copied().ok_or_else(|| located(path, line, format!("unknown vertex `{v}`")));
        edges.push((lookup(&x)?, lookup(&y)?));
    }
    let graph = Graph::new(names.len(), &edges)?;

    let mut seen = std::collections::HashSet::new();
    let overlap = vertices
        .iter()
        .flat_map(|d| d.alphabet().symbols().iter())
        .any(|s| !seen.insert(s.clone()));
    if overlap {
        vertices = vertices
            .iter()
            .zip(&names)
            .map(|(d, n)| namespace(d, n))
            .collect::<geostar::Result<_>>()?;
    }
    Ok(GraphFile {
        names,
        graph,
        vertices,
        namespaced: overlap,
    })
}
