//! Immutable undirected interaction graph in compressed sparse row form.
//!
//! Node ids are dense `usize` indices assigned at ingestion; gene names only
//! appear at the I/O boundary.

use std::collections::{HashMap, VecDeque};
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
}

impl Graph {
    /// Builds a graph from name pairs. Duplicate edges (in either direction)
    /// and self-loops are dropped; ids are assigned in first-seen order.
    pub fn from_edges<S: AsRef<str>>(edges: &[(S, S)]) -> Result<Graph> {
        if edges.is_empty() {
            return Err(Error::NoEdges);
        }
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut intern = |name: &str| -> usize {
            if let Some(&id) = index.get(name) {
                return id;
            }
            let id = names.len();
            names.push(name.to_string());
            index.insert(name.to_string(), id);
            id
        };
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let u = intern(a.as_ref());
            let v = intern(b.as_ref());
            if u != v {
                pairs.push((u.min(v), u.max(v)));
            }
        }
        let n = names.len();
        Ok(Graph::from_id_pairs(names, pairs, n))
    }

    /// Builds from already-interned id pairs; `pairs` may contain duplicates.
    fn from_id_pairs(names: Vec<String>, mut pairs: Vec<(usize, usize)>, n: usize) -> Graph {
        pairs.sort_unstable();
        pairs.dedup();
        let mut degree = vec![0usize; n];
        for &(u, v) in &pairs {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + degree[i];
        }
        let mut cursor = offsets[..n].to_vec();
        let mut neighbors = vec![0usize; offsets[n]];
        for &(u, v) in &pairs {
            neighbors[cursor[u]] = v;
            cursor[u] += 1;
            neighbors[cursor[v]] = u;
            cursor[v] += 1;
        }
        for i in 0..n {
            neighbors[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        let index = names
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), i))
            .collect();
        Graph {
            names,
            index,
            offsets,
            neighbors,
        }
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn degree(&self, node: usize) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.node_count())
            .map(|i| self.degree(i))
            .max()
            .unwrap_or(0)
    }

    /// Sorted neighbor ids of `node`.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.neighbors[self.offsets[node]..self.offsets[node + 1]]
    }

    pub fn name(&self, node: usize) -> &str {
        &self.names[node]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in id order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Component id per node (ids numbered in order of their smallest node)
    /// and the size of each component.
    pub fn components(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut sizes = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let c = sizes.len();
            comp[start] = c;
            queue.push_back(start);
            let mut size = 0;
            while let Some(u) = queue.pop_front() {
                size += 1;
                for &v in self.neighbors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = c;
                        queue.push_back(v);
                    }
                }
            }
            sizes.push(size);
        }
        (comp, sizes)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1.len() <= 1
    }

    /// Induced subgraph on the largest connected component. Ties between
    /// equally large components go to the one holding the smallest node id.
    /// Surviving nodes keep their relative id order.
    pub fn largest_connected_component(&self) -> Graph {
        let (comp, sizes) = self.components();
        if sizes.len() <= 1 {
            return self.clone();
        }
        // components are numbered by smallest member, so the first maximum wins ties
        let mut best = 0;
        for (c, &size) in sizes.iter().enumerate() {
            if size > sizes[best] {
                best = c;
            }
        }
        self.induced(|i| comp[i] == best)
    }

    fn induced(&self, keep: impl Fn(usize) -> bool) -> Graph {
        let n = self.node_count();
        let mut remap = vec![usize::MAX; n];
        let mut names = Vec::new();
        for i in 0..n {
            if keep(i) {
                remap[i] = names.len();
                names.push(self.names[i].clone());
            }
        }
        let pairs = self
            .edges()
            .filter(|&(u, v)| remap[u] != usize::MAX && remap[v] != usize::MAX)
            .map(|(u, v)| (remap[u], remap[v]))
            .collect();
        let m = names.len();
        Graph::from_id_pairs(names, pairs, m)
    }

    /// Reads a two-column tab-separated edge list; `#` lines and blank lines
    /// are skipped, extra columns ignored.
    pub fn read_edge_tsv(path: &Path) -> Result<Graph> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split('\t');
            match (cols.next(), cols.next()) {
                (Some(a), Some(b)) if !a.is_empty() && !b.is_empty() => {
                    edges.push((a.to_string(), b.to_string()))
                }
                _ => {
                    return Err(Error::Parse {
                        path: path.to_path_buf(),
                        line: lineno + 1,
                        message: "expected two tab-separated node names".into(),
                    })
                }
            }
        }
        Graph::from_edges(&edges)
    }

    /// Reads a BioGRID TAB3 export, keeping only interactions where both
    /// partners belong to `organism` (9606 for human) and using the official
    /// gene symbols as node names.
    pub fn read_biogrid_tab3(path: &Path, organism: &str) -> Result<Graph> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
        // default TAB3 column layout, overridden by the header when present
        let mut cols = [7usize, 8, 15, 16];
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.starts_with('#') {
                let header: Vec<&str> = line.trim_start_matches('#').split('\t').collect();
                let find = |name: &str| header.iter().position(|h| h.trim() == name);
                if let (Some(a), Some(b), Some(oa), Some(ob)) = (
                    find("Official Symbol Interactor A"),
                    find("Official Symbol Interactor B"),
                    find("Organism ID Interactor A"),
                    find("Organism ID Interactor B"),
                ) {
                    cols = [a, b, oa, ob];
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let max_col = *cols.iter().max().unwrap();
            if fields.len() <= max_col {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: lineno + 1,
                    message: format!(
                        "expected at least {} columns, found {}",
                        max_col + 1,
                        fields.len()
                    ),
                });
            }
            if fields[cols[2]] == organism && fields[cols[3]] == organism {
                edges.push((fields[cols[0]].to_string(), fields[cols[1]].to_string()));
            }
        }
        Graph::from_edges(&edges)
    }

    /// Writes the edge list as `name<TAB>name` lines in id order.
    pub fn write_edge_tsv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{}\t{}", self.names[u], self.names[v])?;
        }
        Ok(())
    }
}
