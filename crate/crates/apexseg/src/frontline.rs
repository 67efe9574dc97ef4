//! Front line drawings: synthesis, validity, the edge-area partial order,
//! and ranks.
//!
//! A drawing places all vertices on a vertical segment and assigns every
//! edge one of four routes: an arc on the left, an arc on the right, or a
//! crossover looping past the top (Above) or bottom (Below) of the segment.
//! Crossover edges attach to one endpoint from the left of the segment and
//! to the other from the right.
//!
//! The pairwise crossing rules and the containment table are a
//! combinatorial model of the geometry; they are double-checked by the
//! polyline realizer oracle in the test suite and by the end-to-end
//! intersection-graph equality in the verifier.

use std::collections::BTreeMap;

use crate::graph::{edge_key, Edge, Graph};
use crate::planarity::{first_ordering, is_planar};
use crate::{Error, Result};

/// How an edge is routed relative to the front line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SideAssignment {
    Left,
    Right,
    /// Crossover past the top; attaches `left_attach` from the left of the
    /// line and `right_attach` from the right.
    Above { left_attach: String, right_attach: String },
    /// Crossover past the bottom.
    Below { left_attach: String, right_attach: String },
}

impl SideAssignment {
    pub fn is_crossover(&self) -> bool {
        matches!(self, SideAssignment::Above { .. } | SideAssignment::Below { .. })
    }
}

/// A front line drawing: bottom-to-top vertex order plus one route per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontLineDrawing {
    /// Vertices from bottom to top; `ordering[i]` sits at position `i + 1`.
    pub ordering: Vec<String>,
    pub edges: BTreeMap<Edge, SideAssignment>,
}

/// Outcome of comparing two edges in the area containment order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// area(e1) ⊆ area(e2), e1 ≠ e2
    Less,
    /// area(e2) ⊆ area(e1), e1 ≠ e2
    Greater,
    Equal,
    Incomparable,
}

/// The edge-area poset of a valid drawing, with longest-chain ranks.
#[derive(Debug, Clone)]
pub struct EdgePoset {
    pub relation: BTreeMap<(Edge, Edge), Relation>,
    pub ranks: BTreeMap<Edge, u32>,
}

impl EdgePoset {
    pub fn rank(&self, u: &str, v: &str) -> Option<u32> {
        self.ranks.get(&edge_key(u, v)).copied()
    }

    pub fn relation(&self, e1: &Edge, e2: &Edge) -> Relation {
        if e1 == e2 {
            return Relation::Equal;
        }
        self.relation.get(&(e1.clone(), e2.clone())).copied().unwrap_or(Relation::Incomparable)
    }
}

/// An edge reduced to line positions: arcs carry their sorted position
/// interval, crossovers their (left attach, right attach) positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Placed {
    Left { lo: usize, hi: usize },
    Right { lo: usize, hi: usize },
    Above { l: usize, r: usize },
    Below { l: usize, r: usize },
}

fn strict_interleave(a: usize, b: usize, c: usize, d: usize) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

fn sign(a: usize, b: usize) -> i8 {
    match a.cmp(&b) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

/// The pairwise crossing predicate. Symmetric in its arguments; shared
/// attach positions never cross (all comparisons are strict).
fn edges_cross(p: Placed, q: Placed) -> bool {
    use Placed::*;
    match (p, q) {
        // (1) Same-side arcs cross iff their intervals strictly interleave.
        (Left { lo: a, hi: b }, Left { lo: c, hi: d })
        | (Right { lo: a, hi: b }, Right { lo: c, hi: d }) => strict_interleave(a, b, c, d),
        // (2) Opposite half-planes never meet.
        (Left { .. }, Right { .. }) | (Right { .. }, Left { .. }) => false,
        // (3) A left arc traps a crossover's left attach point.
        (Left { lo, hi }, Above { l, .. })
        | (Left { lo, hi }, Below { l, .. })
        | (Above { l, .. }, Left { lo, hi })
        | (Below { l, .. }, Left { lo, hi }) => lo < l && l < hi,
        // (4) A right arc traps a crossover's right attach point.
        (Right { lo, hi }, Above { r, .. })
        | (Right { lo, hi }, Below { r, .. })
        | (Above { r, .. }, Right { lo, hi })
        | (Below { r, .. }, Right { lo, hi }) => lo < r && r < hi,
        // (5) Same-end crossovers cross iff their attach pairs interleave.
        (Above { l: i, r: j }, Above { l: i2, r: j2 })
        | (Below { l: i, r: j }, Below { l: i2, r: j2 }) => sign(i, i2) * sign(j, j2) == -1,
        // (6) Opposite-end crossovers: the below edge is forced through the
        // above edge on any side where it attaches strictly higher.
        (Above { l: i, r: j }, Below { l: i2, r: j2 })
        | (Below { l: i2, r: j2 }, Above { l: i, r: j }) => i < i2 || j < j2,
    }
}

/// Area containment for two distinct placed edges of a valid drawing.
fn containment_of(p: Placed, q: Placed) -> Relation {
    use Placed::*;
    // [a,b] ⊆ [c,d]
    let nested = |a: usize, b: usize, c: usize, d: usize| c <= a && b <= d;
    match (p, q) {
        (Left { lo: a, hi: b }, Left { lo: c, hi: d })
        | (Right { lo: a, hi: b }, Right { lo: c, hi: d }) => {
            if nested(a, b, c, d) {
                Relation::Less
            } else if nested(c, d, a, b) {
                Relation::Greater
            } else {
                Relation::Incomparable
            }
        }
        (Left { lo: a, .. }, Above { l, .. }) if l <= a => Relation::Less,
        (Above { l, .. }, Left { lo: a, .. }) if l <= a => Relation::Greater,
        (Left { hi: b, .. }, Below { l, .. }) if b <= l => Relation::Less,
        (Below { l, .. }, Left { hi: b, .. }) if b <= l => Relation::Greater,
        (Right { lo: c, .. }, Above { r, .. }) if r <= c => Relation::Less,
        (Above { r, .. }, Right { lo: c, .. }) if r <= c => Relation::Greater,
        (Right { hi: d, .. }, Below { r, .. }) if d <= r => Relation::Less,
        (Below { r, .. }, Right { hi: d, .. }) if d <= r => Relation::Greater,
        (Above { l: i, r: j }, Above { l: i2, r: j2 }) => {
            if i2 <= i && j2 <= j {
                Relation::Less
            } else if i <= i2 && j <= j2 {
                Relation::Greater
            } else {
                Relation::Incomparable
            }
        }
        (Below { l: i, r: j }, Below { l: i2, r: j2 }) => {
            if i <= i2 && j <= j2 {
                Relation::Less
            } else if i2 <= i && j2 <= j {
                Relation::Greater
            } else {
                Relation::Incomparable
            }
        }
        _ => Relation::Incomparable,
    }
}

impl FrontLineDrawing {
    /// 1-based bottom-to-top position of each vertex.
    pub fn positions(&self) -> BTreeMap<&str, usize> {
        self.ordering.iter().enumerate().map(|(i, v)| (v.as_str(), i + 1)).collect()
    }

    fn place(
        &self,
        e: &Edge,
        assign: &SideAssignment,
        pos: &BTreeMap<&str, usize>,
    ) -> Result<Placed> {
        let p = |v: &str| -> Result<usize> {
            pos.get(v)
                .copied()
                .ok_or_else(|| Error::InvalidInput(format!("vertex {v:?} missing from ordering")))
        };
        let (u, v) = (e.0.as_str(), e.1.as_str());
        Ok(match assign {
            SideAssignment::Left => {
                let (a, b) = (p(u)?, p(v)?);
                Placed::Left { lo: a.min(b), hi: a.max(b) }
            }
            SideAssignment::Right => {
                let (a, b) = (p(u)?, p(v)?);
                Placed::Right { lo: a.min(b), hi: a.max(b) }
            }
            SideAssignment::Above { left_attach, right_attach } => {
                check_attaches(e, left_attach, right_attach)?;
                Placed::Above { l: p(left_attach)?, r: p(right_attach)? }
            }
            SideAssignment::Below { left_attach, right_attach } => {
                check_attaches(e, left_attach, right_attach)?;
                Placed::Below { l: p(left_attach)?, r: p(right_attach)? }
            }
        })
    }

    fn placed_edges(&self, g: &Graph) -> Result<Vec<(Edge, Placed)>> {
        let pos = self.positions();
        if self.ordering.len() != g.vertex_count() || !g.vertices().all(|v| pos.contains_key(v)) {
            return Err(Error::InvalidInput(
                "ordering is not a bijection on the graph's vertices".into(),
            ));
        }
        if self.edges.len() != g.edge_count() {
            return Err(Error::InvalidInput(
                "assignment does not cover exactly the graph's edges".into(),
            ));
        }
        let mut placed = Vec::with_capacity(g.edge_count());
        for e in g.edges() {
            let assign = self
                .edges
                .get(e)
                .ok_or_else(|| Error::InvalidInput(format!("edge {e:?} has no assignment")))?;
            placed.push((e.clone(), self.place(e, assign, &pos)?));
        }
        Ok(placed)
    }
}

fn check_attaches(e: &Edge, left: &str, right: &str) -> Result<()> {
    let ok = (left == e.0 && right == e.1) || (left == e.1 && right == e.0);
    if !ok {
        return Err(Error::InvalidInput(format!(
            "crossover attaches ({left:?}, {right:?}) are not the endpoints of {e:?}"
        )));
    }
    Ok(())
}

/// True iff no pair of assigned edges crosses. Structural incompleteness
/// (missing assignments, attach mismatches, bad ordering) is an error.
pub fn validate(d: &FrontLineDrawing, g: &Graph) -> Result<bool> {
    Ok(crossing_pairs(d, g)?.is_empty())
}

/// The crossing edge pairs of a structurally complete drawing.
pub fn crossing_pairs(d: &FrontLineDrawing, g: &Graph) -> Result<Vec<(Edge, Edge)>> {
    let placed = d.placed_edges(g)?;
    let mut out = Vec::new();
    for (i, (e1, p)) in placed.iter().enumerate() {
        for (e2, q) in &placed[i + 1..] {
            if edges_cross(*p, *q) {
                out.push((e1.clone(), e2.clone()));
            }
        }
    }
    Ok(out)
}

/// Compares two edges of a valid drawing in the area containment order.
pub fn containment(e1: &Edge, e2: &Edge, d: &FrontLineDrawing, g: &Graph) -> Result<Relation> {
    if !validate(d, g)? {
        return Err(Error::InvalidInput("drawing has crossing edges".into()));
    }
    if e1 == e2 {
        return Ok(Relation::Equal);
    }
    let pos = d.positions();
    let a1 = d.edges.get(e1).ok_or_else(|| Error::InvalidInput(format!("unknown edge {e1:?}")))?;
    let a2 = d.edges.get(e2).ok_or_else(|| Error::InvalidInput(format!("unknown edge {e2:?}")))?;
    Ok(containment_of(d.place(e1, a1, &pos)?, d.place(e2, a2, &pos)?))
}

/// Longest-chain ranks over the containment DAG: minimal edges get 1;
/// every other edge gets one more than the largest rank strictly below it.
pub fn ranks(d: &FrontLineDrawing, g: &Graph) -> Result<EdgePoset> {
    if !validate(d, g)? {
        return Err(Error::InvalidInput("drawing has crossing edges".into()));
    }
    let placed = d.placed_edges(g)?;

    let mut relation = BTreeMap::new();
    for (e1, p) in &placed {
        for (e2, q) in &placed {
            let rel = if e1 == e2 { Relation::Equal } else { containment_of(*p, *q) };
            relation.insert((e1.clone(), e2.clone()), rel);
        }
    }

    let mut ranks: BTreeMap<Edge, u32> = BTreeMap::new();
    let mut in_progress: Vec<Edge> = Vec::new();
    for (e, _) in &placed {
        descend(e, &placed, &relation, &mut ranks, &mut in_progress)?;
    }
    Ok(EdgePoset { relation, ranks })
}

fn descend(
    e: &Edge,
    placed: &[(Edge, Placed)],
    relation: &BTreeMap<(Edge, Edge), Relation>,
    ranks: &mut BTreeMap<Edge, u32>,
    in_progress: &mut Vec<Edge>,
) -> Result<u32> {
    if let Some(r) = ranks.get(e) {
        return Ok(*r);
    }
    if in_progress.contains(e) {
        return Err(Error::Inconsistency(format!("containment relation has a cycle through {e:?}")));
    }
    in_progress.push(e.clone());
    let mut below = 0;
    for (e2, _) in placed {
        if relation[&(e2.clone(), e.clone())] == Relation::Less {
            below = below.max(descend(e2, placed, relation, ranks, in_progress)?);
        }
    }
    in_progress.pop();
    ranks.insert(e.clone(), below + 1);
    Ok(below + 1)
}

/// Searches for a front line drawing of `g`.
///
/// Orderings are scanned in lexicographic permutation order, keeping only
/// those whose path completion stays planar; per-edge routes are then
/// backtracked in the fixed order Left, Right, Above, Below with crossover
/// orientations in endpoint-lexicographic order. The first valid drawing
/// wins. Absence means `g` is a PHPC no-instance.
pub fn synthesize(g: &Graph) -> Result<Option<(FrontLineDrawing, EdgePoset)>> {
    if !is_planar(g) {
        return Err(Error::InvalidInput("synthesis input must be a planar graph".into()));
    }
    let hit = first_ordering(g, |perm| {
        let compatible = g.with_path(perm).map(|h| is_planar(&h)).unwrap_or(false);
        compatible && assign_edges(g, perm).is_some()
    })?;
    let Some(ordering) = hit else {
        return Ok(None);
    };
    let edges = assign_edges(g, &ordering)
        .ok_or_else(|| Error::Inconsistency("winning ordering lost its assignment".into()))?;
    let drawing = FrontLineDrawing { ordering, edges };
    let poset = ranks(&drawing, g)?;
    Ok(Some((drawing, poset)))
}

struct Candidate {
    placed: Placed,
    assign: SideAssignment,
}

/// Backtracking route assignment for a fixed ordering.
fn assign_edges(g: &Graph, ordering: &[String]) -> Option<BTreeMap<Edge, SideAssignment>> {
    let pos: BTreeMap<&str, usize> =
        ordering.iter().enumerate().map(|(i, v)| (v.as_str(), i + 1)).collect();

    // Deterministic branch order: long spans first prune earlier; the
    // canonical key breaks ties.
    let mut edges: Vec<(Edge, usize, usize)> = g
        .edges()
        .map(|e| {
            let (p0, p1) = (pos[e.0.as_str()], pos[e.1.as_str()]);
            (e.clone(), p0, p1)
        })
        .collect();
    edges.sort_by(|(e1, p0a, p1a), (e2, p0b, p1b)| {
        let span_a = p0a.max(p1a) - p0a.min(p1a);
        let span_b = p0b.max(p1b) - p0b.min(p1b);
        span_b.cmp(&span_a).then_with(|| e1.cmp(e2))
    });

    let mut chosen: Vec<(Edge, Placed, SideAssignment)> = Vec::with_capacity(edges.len());
    if backtrack(&edges, 0, &mut chosen) {
        Some(chosen.into_iter().map(|(e, _, a)| (e, a)).collect())
    } else {
        None
    }
}

fn backtrack(
    edges: &[(Edge, usize, usize)],
    depth: usize,
    chosen: &mut Vec<(Edge, Placed, SideAssignment)>,
) -> bool {
    let Some((e, p0, p1)) = edges.get(depth) else {
        return true;
    };
    // Order-consecutive endpoints: Left can never conflict, so don't branch.
    let unit = p0.abs_diff(*p1) == 1;
    for cand in candidate_routes(e, *p0, *p1) {
        if chosen.iter().all(|(_, q, _)| !edges_cross(cand.placed, *q)) {
            chosen.push((e.clone(), cand.placed, cand.assign));
            if backtrack(edges, depth + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        if unit {
            break;
        }
    }
    false
}

/// Candidate routes for one edge in the fixed exploration order: Left,
/// Right, then Above and Below each with the lexicographically smaller
/// left attach first. `p0`, `p1` are the positions of `e.0`, `e.1`.
fn candidate_routes(e: &Edge, p0: usize, p1: usize) -> Vec<Candidate> {
    let (lo, hi) = (p0.min(p1), p0.max(p1));
    let mut out = vec![
        Candidate { placed: Placed::Left { lo, hi }, assign: SideAssignment::Left },
        Candidate { placed: Placed::Right { lo, hi }, assign: SideAssignment::Right },
    ];
    // e is canonical (e.0 < e.1), so e.0-as-left-attach comes first.
    let orientations = [(&e.0, &e.1, p0, p1), (&e.1, &e.0, p1, p0)];
    for (l, r, lp, rp) in orientations {
        out.push(Candidate {
            placed: Placed::Above { l: lp, r: rp },
            assign: SideAssignment::Above { left_attach: l.clone(), right_attach: r.clone() },
        });
    }
    for (l, r, lp, rp) in orientations {
        out.push(Candidate {
            placed: Placed::Below { l: lp, r: rp },
            assign: SideAssignment::Below { left_attach: l.clone(), right_attach: r.clone() },
        });
    }
    out
}

/// Textual key of an edge, used in JSON maps: `"u v"` in canonical order.
pub fn edge_text_key(e: &Edge) -> String {
    format!("{} {}", e.0, e.1)
}

/// Serialized form of a drawing plus its ranks.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct DrawingDoc {
    pub ordering: Vec<String>,
    pub edges: Vec<EdgeAssignDoc>,
    pub ranks: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct EdgeAssignDoc {
    pub u: String,
    pub v: String,
    /// "L", "R", "A" or "B".
    pub side: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_attach: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_attach: Option<String>,
}

impl DrawingDoc {
    pub fn new(d: &FrontLineDrawing, poset: &EdgePoset) -> Self {
        let edges = d
            .edges
            .iter()
            .map(|(e, assign)| {
                let (side, left_attach, right_attach) = match assign {
                    SideAssignment::Left => ("L", None, None),
                    SideAssignment::Right => ("R", None, None),
                    SideAssignment::Above { left_attach, right_attach } => {
                        ("A", Some(left_attach.clone()), Some(right_attach.clone()))
                    }
                    SideAssignment::Below { left_attach, right_attach } => {
                        ("B", Some(left_attach.clone()), Some(right_attach.clone()))
                    }
                };
                EdgeAssignDoc { u: e.0.clone(), v: e.1.clone(), side: side.into(), left_attach, right_attach }
            })
            .collect();
        let ranks = poset.ranks.iter().map(|(e, r)| (edge_text_key(e), *r)).collect();
        DrawingDoc { ordering: d.ordering.clone(), edges, ranks }
    }

    /// Reconstructs the drawing. Side tags and attach fields are validated;
    /// ranks are carried as-is since they are derived data.
    pub fn to_drawing(&self) -> Result<FrontLineDrawing> {
        let mut edges = BTreeMap::new();
        for doc in &self.edges {
            if doc.u == doc.v {
                return Err(Error::InvalidInput(format!("self-loop at {:?}", doc.u)));
            }
            let e = edge_key(&doc.u, &doc.v);
            let attach = || -> Result<(String, String)> {
                match (&doc.left_attach, &doc.right_attach) {
                    (Some(l), Some(r)) => {
                        check_attaches(&e, l, r)?;
                        Ok((l.clone(), r.clone()))
                    }
                    _ => Err(Error::InvalidInput(format!(
                        "crossover edge {e:?} is missing attach fields"
                    ))),
                }
            };
            let assign = match doc.side.as_str() {
                "L" => SideAssignment::Left,
                "R" => SideAssignment::Right,
                "A" => {
                    let (l, r) = attach()?;
                    SideAssignment::Above { left_attach: l, right_attach: r }
                }
                "B" => {
                    let (l, r) = attach()?;
                    SideAssignment::Below { left_attach: l, right_attach: r }
                }
                other => {
                    return Err(Error::InvalidInput(format!("unknown side tag {other:?}")))
                }
            };
            if edges.insert(e.clone(), assign).is_some() {
                return Err(Error::InvalidInput(format!("duplicate edge {e:?}")));
            }
        }
        let drawing = FrontLineDrawing { ordering: self.ordering.clone(), edges };
        let pos = drawing.positions();
        if pos.len() != drawing.ordering.len() {
            return Err(Error::InvalidInput("ordering repeats a vertex".into()));
        }
        Ok(drawing)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn placed_cross(p: Placed, q: Placed) -> bool {
        edges_cross(p, q)
    }

    #[test]
    fn crossover_nesting_and_interleaving() {
        use Placed::*;
        // Expected values frozen from the polyline realizer oracle.
        assert!(!placed_cross(Above { l: 3, r: 5 }, Above { l: 2, r: 4 }));
        assert!(placed_cross(Above { l: 2, r: 5 }, Above { l: 3, r: 4 }));
        assert!(!placed_cross(Left { lo: 1, hi: 3 }, Left { lo: 3, hi: 5 }));
        assert!(placed_cross(Left { lo: 1, hi: 3 }, Left { lo: 2, hi: 4 }));
        assert!(!placed_cross(Left { lo: 1, hi: 3 }, Right { lo: 2, hi: 4 }));
    }

    #[test]
    fn crossing_rules_are_symmetric() {
        use Placed::*;
        let shapes = [
            Left { lo: 1, hi: 3 },
            Left { lo: 2, hi: 4 },
            Right { lo: 1, hi: 4 },
            Right { lo: 2, hi: 3 },
            Above { l: 1, r: 4 },
            Above { l: 2, r: 3 },
            Below { l: 3, r: 1 },
            Below { l: 4, r: 2 },
        ];
        for p in shapes {
            for q in shapes {
                assert_eq!(edges_cross(p, q), edges_cross(q, p), "{p:?} vs {q:?}");
            }
        }
    }

    #[test]
    fn above_below_rule_examples() {
        use Placed::*;
        // Below attaches strictly higher on the right: forced through.
        assert!(placed_cross(Above { l: 2, r: 5 }, Below { l: 2, r: 7 }));
        // Below attaches lower or equal on both sides: can avoid.
        assert!(!placed_cross(Above { l: 2, r: 5 }, Below { l: 2, r: 5 }));
        assert!(!placed_cross(Above { l: 4, r: 6 }, Below { l: 3, r: 2 }));
        // Shared vertex on opposite sides still forces a crossing.
        assert!(placed_cross(Above { l: 2, r: 5 }, Below { l: 5, r: 7 }));
    }

    fn p4() -> Graph {
        Graph::from_edges([("a", "b"), ("b", "c"), ("c", "d")]).unwrap()
    }

    #[test]
    fn p4_identity_all_left() {
        let (d, poset) = synthesize(&p4()).unwrap().expect("P4 draws");
        assert_eq!(d.ordering, vec!["a", "b", "c", "d"]);
        for assign in d.edges.values() {
            assert_eq!(*assign, SideAssignment::Left);
        }
        assert!(poset.ranks.values().all(|&r| r == 1));
        assert!(validate(&d, &p4()).unwrap());
    }

    #[test]
    fn synthesize_rejects_nonplanar() {
        let mut k5 = Graph::new();
        for i in 0..5 {
            for j in i + 1..5 {
                k5.add_edge(&format!("v{i}"), &format!("v{j}")).unwrap();
            }
        }
        assert!(matches!(synthesize(&k5), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn validate_flags_incomplete_assignment() {
        let g = p4();
        let d = FrontLineDrawing {
            ordering: vec!["a".into(), "b".into(), "c".into(), "d".into()],
            edges: BTreeMap::new(),
        };
        assert!(matches!(validate(&d, &g), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn validate_flags_bad_attaches() {
        let g = Graph::from_edges([("a", "b")]).unwrap();
        let mut edges = BTreeMap::new();
        edges.insert(
            edge_key("a", "b"),
            SideAssignment::Above { left_attach: "a".into(), right_attach: "a".into() },
        );
        let d = FrontLineDrawing { ordering: vec!["a".into(), "b".into()], edges };
        assert!(matches!(validate(&d, &g), Err(Error::InvalidInput(_))));
    }

    /// The worked drawing from the paper's running figure: eight vertices in
    /// identity order, five left arcs, three right arcs, two below
    /// crossovers.
    pub(crate) fn figure_drawing() -> (Graph, FrontLineDrawing) {
        let mut g = Graph::new();
        let mut edges = BTreeMap::new();
        for (u, v) in [("v1", "v2"), ("v1", "v3"), ("v2", "v3"), ("v5", "v8"), ("v6", "v8")] {
            g.add_edge(u, v).unwrap();
            edges.insert(edge_key(u, v), SideAssignment::Left);
        }
        for (u, v) in [("v2", "v5"), ("v2", "v6"), ("v2", "v7")] {
            g.add_edge(u, v).unwrap();
            edges.insert(edge_key(u, v), SideAssignment::Right);
        }
        g.add_edge("v2", "v4").unwrap();
        edges.insert(
            edge_key("v2", "v4"),
            SideAssignment::Below { left_attach: "v4".into(), right_attach: "v2".into() },
        );
        g.add_edge("v5", "v7").unwrap();
        edges.insert(
            edge_key("v5", "v7"),
            SideAssignment::Below { left_attach: "v5".into(), right_attach: "v7".into() },
        );
        let ordering = (1..=8).map(|i| format!("v{i}")).collect();
        (g, FrontLineDrawing { ordering, edges })
    }

    #[test]
    fn figure_drawing_is_valid() {
        let (g, d) = figure_drawing();
        assert!(validate(&d, &g).unwrap());
    }

    #[test]
    fn figure_drawing_chain_and_ranks() {
        let (g, d) = figure_drawing();
        let poset = ranks(&d, &g).unwrap();

        // v2v5 ≤ v2v6 ≤ v2v7 is the longest downward chain from v2v7.
        let e25 = edge_key("v2", "v5");
        let e26 = edge_key("v2", "v6");
        let e27 = edge_key("v2", "v7");
        assert_eq!(poset.relation(&e25, &e26), Relation::Less);
        assert_eq!(poset.relation(&e26, &e27), Relation::Less);
        assert_eq!(poset.rank("v2", "v7"), Some(3));

        // Nested below crossovers: v4v2 ≤ v5v7.
        let e42 = edge_key("v4", "v2");
        let e57 = edge_key("v5", "v7");
        assert_eq!(poset.relation(&e42, &e57), Relation::Less);

        // Minimal elements have rank 1.
        for (e, r) in &poset.ranks {
            let minimal = poset
                .ranks
                .keys()
                .all(|e2| poset.relation(&(e2.clone()), e) != Relation::Less);
            if minimal {
                assert_eq!(*r, 1, "minimal edge {e:?}");
            }
        }
        assert_eq!(poset.rank("v1", "v2"), Some(1));
        assert_eq!(poset.rank("v2", "v3"), Some(1));
        assert_eq!(poset.rank("v2", "v5"), Some(1));
    }

    #[test]
    fn containment_opposite_sides_incomparable() {
        let g = Graph::from_edges([("a", "b"), ("c", "d")]).unwrap();
        let mut edges = BTreeMap::new();
        edges.insert(edge_key("a", "b"), SideAssignment::Left);
        edges.insert(edge_key("c", "d"), SideAssignment::Right);
        let d = FrontLineDrawing {
            ordering: vec!["a".into(), "b".into(), "c".into(), "d".into()],
            edges,
        };
        let rel = containment(&edge_key("a", "b"), &edge_key("c", "d"), &d, &g).unwrap();
        assert_eq!(rel, Relation::Incomparable);
    }

    #[test]
    fn antichain_of_disjoint_arcs_all_rank_one() {
        let g = Graph::from_edges([("a", "b"), ("c", "d"), ("e", "f")]).unwrap();
        let mut edges = BTreeMap::new();
        for e in g.edges() {
            edges.insert(e.clone(), SideAssignment::Left);
        }
        let d = FrontLineDrawing {
            ordering: ["a", "b", "c", "d", "e", "f"].iter().map(|s| s.to_string()).collect(),
            edges,
        };
        let poset = ranks(&d, &g).unwrap();
        assert!(poset.ranks.values().all(|&r| r == 1));
    }

    #[test]
    fn poset_axioms_on_figure_drawing() {
        let (g, d) = figure_drawing();
        let poset = ranks(&d, &g).unwrap();
        let edges: Vec<Edge> = g.edges().cloned().collect();
        for e1 in &edges {
            assert_eq!(poset.relation(e1, e1), Relation::Equal);
            for e2 in &edges {
                let r12 = poset.relation(e1, e2);
                let r21 = poset.relation(e2, e1);
                // Antisymmetry.
                match r12 {
                    Relation::Less => assert_eq!(r21, Relation::Greater),
                    Relation::Greater => assert_eq!(r21, Relation::Less),
                    Relation::Equal => assert_eq!(e1, e2),
                    Relation::Incomparable => assert_eq!(r21, Relation::Incomparable),
                }
                // Transitivity.
                for e3 in &edges {
                    if r12 == Relation::Less && poset.relation(e2, e3) == Relation::Less {
                        assert_eq!(poset.relation(e1, e3), Relation::Less, "{e1:?} {e2:?} {e3:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn drawing_doc_round_trip() {
        let (g, d) = figure_drawing();
        let poset = ranks(&d, &g).unwrap();
        let doc = DrawingDoc::new(&d, &poset);
        let json = serde_json::to_string_pretty(&doc).unwrap();
        let back: DrawingDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_drawing().unwrap(), d);
        assert_eq!(back.ranks[&edge_text_key(&edge_key("v2", "v7"))], 3);
    }

    #[test]
    fn drawing_doc_rejects_malformed() {
        let doc: DrawingDoc = serde_json::from_str(
            r#"{"ordering":["a","b"],"edges":[{"u":"a","v":"b","side":"A"}],"ranks":{}}"#,
        )
        .unwrap();
        assert!(doc.to_drawing().is_err());
        let doc: DrawingDoc = serde_json::from_str(
            r#"{"ordering":["a","b"],"edges":[{"u":"a","v":"b","side":"X"}],"ranks":{}}"#,
        )
        .unwrap();
        assert!(doc.to_drawing().is_err());
    }

    #[test]
    fn above_edges_form_a_chain_when_valid() {
        // Any two non-crossing Above edges must be comparable.
        use Placed::*;
        for l1 in 1..=5 {
            for r1 in 1..=5 {
                for l2 in 1..=5 {
                    for r2 in 1..=5 {
                        let p = Above { l: l1, r: r1 };
                        let q = Above { l: l2, r: r2 };
                        if (l1, r1) != (l2, r2) && !edges_cross(p, q) {
                            assert_ne!(containment_of(p, q), Relation::Incomparable);
                        }
                    }
                }
            }
        }
    }
}
