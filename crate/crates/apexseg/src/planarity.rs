//! Exact planarity testing and the desk-scale decision procedure for
//! planar Hamiltonian path completion.
//!
//! A graph is a yes-instance when it is a subgraph of a planar graph with a
//! Hamiltonian path. Any witnessing supergraph H contains g ∪ path(π) for
//! its own Hamiltonian order π, and g ∪ path(π) is itself a witness, so
//! searching vertex orderings is a complete decision procedure.

use rayon::prelude::*;
use rustworkx_core::petgraph::graph::{NodeIndex, UnGraph};

use crate::graph::Graph;
use crate::{Error, Result};

/// A witnessing Hamiltonian order: g ∪ the consecutive-pair edges of
/// `ordering` is planar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhpcCertificate {
    pub ordering: Vec<String>,
}

/// Exact planarity via the left-right criterion.
pub fn is_planar(g: &Graph) -> bool {
    let (_, adj) = g.adjacency();
    let mut pg: UnGraph<(), ()> = UnGraph::with_capacity(adj.len(), 0);
    let nodes: Vec<NodeIndex> = (0..adj.len()).map(|_| pg.add_node(())).collect();
    for (i, ns) in adj.iter().enumerate() {
        for &j in ns {
            if i < j {
                pg.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    rustworkx_core::planar::is_planar(&pg)
}

/// Lexicographic rank-`idx` permutation of `items` (factorial number system).
fn permutation_by_index<T: Clone>(items: &[T], mut idx: usize) -> Vec<T> {
    let mut pool: Vec<T> = items.to_vec();
    let mut out = Vec::with_capacity(pool.len());
    let mut base: usize = (1..pool.len()).product();
    while !pool.is_empty() {
        if base == 0 {
            base = 1;
        }
        out.push(pool.remove(idx / base));
        idx %= base;
        if pool.len() > 1 {
            base /= pool.len();
        } else {
            base = 1;
        }
    }
    out
}

fn factorial_checked(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, i| acc.checked_mul(i))
}

/// Scans vertex orderings of `g` in lexicographic order and returns the
/// first `π` (with `π[0] < π[n−1]`, halving the space by path-reversal
/// symmetry) for which `test(π)` holds.
pub(crate) fn first_ordering<F>(g: &Graph, test: F) -> Result<Option<Vec<String>>>
where
    F: Fn(&[String]) -> bool + Sync,
{
    let verts: Vec<String> = g.vertices().map(str::to_string).collect();
    let n = verts.len();
    if n <= 1 {
        return Ok(if test(&verts) { Some(verts) } else { None });
    }
    let total = factorial_checked(n).ok_or_else(|| {
        Error::InvalidParameter(format!("permutation search over {n} vertices is not desk scale"))
    })?;
    let hit = (0..total).into_par_iter().find_first(|&idx| {
        let perm = permutation_by_index(&verts, idx);
        perm[0] < perm[n - 1] && test(&perm)
    });
    Ok(hit.map(|idx| permutation_by_index(&verts, idx)))
}

/// Decides planar Hamiltonian path completion for a planar graph.
///
/// Returns the first witnessing ordering in lexicographic permutation
/// order, or `None` for a no-instance. Non-planar input is an error, not a
/// "no" answer.
pub fn phpc_decide(g: &Graph) -> Result<Option<PhpcCertificate>> {
    if !is_planar(g) {
        return Err(Error::InvalidInput("PHPC input must be a planar graph".into()));
    }
    let hit = first_ordering(g, |perm| {
        g.with_path(perm).map(|h| is_planar(&h)).unwrap_or(false)
    })?;
    Ok(hit.map(|ordering| PhpcCertificate { ordering }))
}

/// Some vertex whose removal leaves a planar graph, if one exists.
/// Vertices are tried in sorted order, so the answer is deterministic.
pub fn is_apex(g: &Graph) -> Option<String> {
    g.vertices()
        .find(|v| is_planar(&g.without_vertex(v)))
        .map(str::to_string)
}
