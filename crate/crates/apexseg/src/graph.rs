//! Simple labeled graphs, the text format, and the apex gadget construction.
//!
//! The gadget construction replaces every edge of the input by a path with
//! k+1 edges (the full k-subdivision) and adds a fresh apex vertex adjacent
//! to every original vertex. The result is bipartite, has girth at least
//! k + 3, and loses its apex to a planar remainder.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::{Error, Result};

/// Unordered vertex pair in canonical (lexicographic) order.
pub type Edge = (String, String);

/// Canonical form of the edge between `u` and `v`.
pub fn edge_key(u: &str, v: &str) -> Edge {
    if u <= v {
        (u.to_string(), v.to_string())
    } else {
        (v.to_string(), u.to_string())
    }
}

/// A simple undirected graph over opaque string labels.
///
/// No self-loops, no parallel edges; every edge endpoint is a declared
/// vertex. Values are immutable once built and freely shareable.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<String>,
    edges: BTreeSet<Edge>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from edge pairs, declaring endpoints implicitly.
    pub fn from_edges<I, S>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut g = Graph::new();
        for (u, v) in edges {
            g.add_edge(u.as_ref(), v.as_ref())?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: &str) {
        self.vertices.insert(v.to_string());
    }

    /// Adds an edge, declaring both endpoints. Self-loops are rejected;
    /// re-adding an existing edge is a no-op (the edge set is a set).
    pub fn add_edge(&mut self, u: &str, v: &str) -> Result<()> {
        if u == v {
            return Err(Error::InvalidInput(format!("self-loop at {u:?}")));
        }
        self.vertices.insert(u.to_string());
        self.vertices.insert(v.to_string());
        self.edges.insert(edge_key(u, v));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.vertices.iter().map(|s| s.as_str())
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    pub fn contains_vertex(&self, v: &str) -> bool {
        self.vertices.contains(v)
    }

    pub fn contains_edge(&self, u: &str, v: &str) -> bool {
        self.edges.contains(&edge_key(u, v))
    }

    pub fn neighbors<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a str> {
        self.edges.iter().filter_map(move |(a, b)| {
            if a == v {
                Some(b.as_str())
            } else if b == v {
                Some(a.as_str())
            } else {
                None
            }
        })
    }

    pub fn degree(&self, v: &str) -> usize {
        self.neighbors(v).count()
    }

    /// The graph with `v` and all incident edges removed.
    pub fn without_vertex(&self, v: &str) -> Graph {
        Graph {
            vertices: self.vertices.iter().filter(|x| *x != v).cloned().collect(),
            edges: self.edges.iter().filter(|(a, b)| a != v && b != v).cloned().collect(),
        }
    }

    /// Union with the consecutive-pair edges of `ordering`.
    pub fn with_path(&self, ordering: &[String]) -> Result<Graph> {
        let mut g = self.clone();
        for w in ordering.windows(2) {
            g.add_edge(&w[0], &w[1])?;
        }
        Ok(g)
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edges.is_subset(&other.edges)
    }

    /// Adjacency as index lists over the sorted vertex order.
    pub(crate) fn adjacency(&self) -> (Vec<&str>, Vec<Vec<usize>>) {
        let verts: Vec<&str> = self.vertices.iter().map(|s| s.as_str()).collect();
        let index: BTreeMap<&str, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut adj = vec![Vec::new(); verts.len()];
        for (u, v) in &self.edges {
            let (i, j) = (index[u.as_str()], index[v.as_str()]);
            adj[i].push(j);
            adj[j].push(i);
        }
        (verts, adj)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.len() <= 1 {
            return true;
        }
        let (_, adj) = self.adjacency();
        let mut seen = vec![false; adj.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == adj.len()
    }

    /// Parses the graph text format: one edge per line as two
    /// whitespace-separated vertex tokens; a line `v <token>` declares an
    /// isolated vertex. Blank lines are ignored.
    ///
    /// An edge incident to a vertex literally named `v` is written with the
    /// other endpoint first, so the format round-trips losslessly.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut g = Graph::new();
        for (i, line) in text.lines().enumerate() {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                [] => {}
                ["v", w] => g.add_vertex(w),
                [u, w] => g.add_edge(u, w).map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: e.to_string(),
                })?,
                _ => {
                    return Err(Error::Parse {
                        line: i + 1,
                        msg: format!("expected 2 tokens, found {}", tokens.len()),
                    })
                }
            }
        }
        Ok(g)
    }

    /// Serializes to the text format; `parse(to_text(g)) == g`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut isolated: BTreeSet<&str> = self.vertices.iter().map(|s| s.as_str()).collect();
        for (u, v) in &self.edges {
            isolated.remove(u.as_str());
            isolated.remove(v.as_str());
            // "v x" would read back as an isolated-vertex declaration.
            if u == "v" {
                let _ = writeln!(out, "{v} {u}");
            } else {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        for w in isolated {
            let _ = writeln!(out, "v {w}");
        }
        out
    }
}

/// The reduction output: gadget graph, apex vertex, original vertices, and
/// the per-edge subdivision chains.
#[derive(Debug, Clone)]
pub struct ApexGadget {
    pub gadget: Graph,
    pub apex: String,
    /// Original vertices in sorted order.
    pub originals: Vec<String>,
    /// For each original edge (x, y) in canonical order, the chain
    /// `[u¹, …, u^k]` such that the gadget contains the path x, u¹, …, u^k, y.
    pub chains: BTreeMap<Edge, Vec<String>>,
    pub k: u32,
    /// The girth bound the gadget was built for.
    pub girth_bound: u32,
}

/// Name of the t-th subdivision vertex on the chain of edge (x, y).
///
/// Generated names use '@', which [`build_apex_gadget`] rejects in input
/// vertices, so they can never collide.
pub fn subdivision_vertex_id(x: &str, y: &str, t: u32) -> String {
    format!("@{x}@u{t}@{y}")
}

/// Name of the generated apex vertex.
pub const APEX_ID: &str = "@apex";

fn reject_reserved(g: &Graph) -> Result<()> {
    for v in g.vertices() {
        if v.contains('@') {
            return Err(Error::InvalidInput(format!(
                "vertex {v:?} contains '@', which is reserved for generated vertex names"
            )));
        }
    }
    Ok(())
}

/// Replaces each edge of `g` by a path with k+1 edges.
///
/// Returns the subdivided graph and the chain map. Chains run from the
/// lexicographically smaller endpoint, so outputs are reproducible.
pub fn full_subdivision(g: &Graph, k: u32) -> Result<(Graph, BTreeMap<Edge, Vec<String>>)> {
    if k < 3 || k % 2 == 0 {
        return Err(Error::InvalidParameter(format!("k must be odd and >= 3, got {k}")));
    }
    reject_reserved(g)?;
    let mut sub = Graph::new();
    for v in g.vertices() {
        sub.add_vertex(v);
    }
    let mut chains = BTreeMap::new();
    for (x, y) in g.edges() {
        let chain: Vec<String> = (1..=k).map(|t| subdivision_vertex_id(x, y, t)).collect();
        let mut prev: &str = x;
        for u in &chain {
            sub.add_edge(prev, u)?;
            prev = u;
        }
        sub.add_edge(prev, y)?;
        chains.insert((x.clone(), y.clone()), chain);
    }
    Ok((sub, chains))
}

/// Smallest odd k ≥ max(3, girth_bound − 3).
pub fn subdivision_order(girth_bound: u32) -> u32 {
    let lo = girth_bound.saturating_sub(3).max(3);
    if lo % 2 == 0 {
        lo + 1
    } else {
        lo
    }
}

/// Builds the apex gadget for `g`: the full k-subdivision plus a fresh apex
/// adjacent to every original vertex, with k chosen from `girth_bound`.
pub fn build_apex_gadget(g: &Graph, girth_bound: u32) -> Result<ApexGadget> {
    if girth_bound == 0 {
        return Err(Error::InvalidParameter("girth bound must be >= 1".into()));
    }
    build_apex_gadget_with_k(g, subdivision_order(girth_bound), girth_bound)
}

/// As [`build_apex_gadget`] but with k fixed by the caller.
pub fn build_apex_gadget_with_k(g: &Graph, k: u32, girth_bound: u32) -> Result<ApexGadget> {
    let (mut gadget, chains) = full_subdivision(g, k)?;
    let originals: Vec<String> = g.vertices().map(str::to_string).collect();
    for v in &originals {
        gadget.add_edge(APEX_ID, v)?;
    }
    if originals.is_empty() {
        gadget.add_vertex(APEX_ID);
    }
    Ok(ApexGadget { gadget, apex: APEX_ID.to_string(), originals, chains, k, girth_bound })
}

/// Length of a shortest cycle, or `None` for forests.
///
/// Per-vertex BFS shortest-cycle search, O(V·E). Adequate at desk scale.
pub fn girth(g: &Graph) -> Option<usize> {
    let (_, adj) = g.adjacency();
    let n = adj.len();
    let mut best: Option<usize> = None;
    for root in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w && parent[w] != u {
                    // Non-tree edge: closes a cycle through the root of
                    // length at most dist[u] + dist[w] + 1.
                    let len = dist[u] + dist[w] + 1;
                    if best.map_or(true, |b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
    }
    best
}

/// BFS 2-coloring. Returns the two parts, or `None` when an odd cycle
/// exists. Single-vertex components land in the first part.
pub fn is_bipartite(g: &Graph) -> Option<(BTreeSet<String>, BTreeSet<String>)> {
    let (verts, adj) = g.adjacency();
    let n = adj.len();
    let mut color = vec![u8::MAX; n];
    for start in 0..n {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    queue.push_back(w);
                } else if color[w] == color[u] {
                    return None;
                }
            }
        }
    }
    let mut parts = (BTreeSet::new(), BTreeSet::new());
    for (i, v) in verts.iter().enumerate() {
        if color[i] == 0 {
            parts.0.insert(v.to_string());
        } else {
            parts.1.insert(v.to_string());
        }
    }
    Some(parts)
}
