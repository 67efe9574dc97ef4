//! Exact axis-parallel segment arrangements realizing the apex gadget.
//!
//! The base construction (k = 3) places the apex on the y-axis, each
//! original vertex on its own horizontal line, and replaces every edge of
//! the drawing by a three-piece rectilinear curve whose vertical pieces sit
//! at a distance of essentially the edge's rank from the apex. Injectively
//! perturbing those distances by ζ(e)/n⁴ keeps distinct edges' pieces
//! apart. The induction step splits the last chain piece in two and joins
//! the halves with an ε-length bridge, giving arrangements for every odd k.
//!
//! All coordinates are exact rationals; no floating point enters geometry.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::frontline::{validate, EdgePoset, FrontLineDrawing, SideAssignment};
use crate::graph::{subdivision_vertex_id, ApexGadget, Edge, Graph};
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// An axis-parallel segment owned by one gadget vertex. `Horizontal` fixes
/// y and spans x; `Vertical` fixes x and spans y. `span.0 <= span.1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub owner: String,
    pub orientation: Orientation,
    pub fixed: Rational,
    pub span: (Rational, Rational),
}

impl Segment {
    pub fn horizontal(owner: impl Into<String>, y: Rational, x1: Rational, x2: Rational) -> Self {
        let (lo, hi) = if x1 <= x2 { (x1, x2) } else { (x2, x1) };
        Segment {
            owner: owner.into(),
            orientation: Orientation::Horizontal,
            fixed: y,
            span: (lo, hi),
        }
    }

    pub fn vertical(owner: impl Into<String>, x: Rational, y1: Rational, y2: Rational) -> Self {
        let (lo, hi) = if y1 <= y2 { (y1, y2) } else { (y2, y1) };
        Segment { owner: owner.into(), orientation: Orientation::Vertical, fixed: x, span: (lo, hi) }
    }
}

/// Construction record for one edge's rectilinear curve: the polyline
/// points from the α end to the δ end, plus what the induction step needs
/// to know about it.
#[derive(Debug, Clone)]
pub struct EdgeTrace {
    pub rank: u32,
    pub zeta: u64,
    /// Bend points of the curve, α end first.
    pub points: Vec<(Rational, Rational)>,
    /// Whether the chain head u¹ owns the α-end piece. The chain runs from
    /// the canonically smaller endpoint, which the drawing may place at
    /// either end of the curve.
    pub head_at_alpha: bool,
}

impl EdgeTrace {
    /// Chain piece owners in α→δ order for chain length `k`.
    fn owners(&self, e: &Edge, k: u32) -> Vec<String> {
        (0..k)
            .map(|s| {
                let t = if self.head_at_alpha { s + 1 } else { k - s };
                subdivision_vertex_id(&e.0, &e.1, t)
            })
            .collect()
    }
}

/// A set of axis-parallel segments realizing an apex gadget.
#[derive(Debug, Clone)]
pub struct Arrangement {
    pub n: usize,
    pub k: u32,
    /// Canonical order: apex, originals by position, then edges by
    /// (rank, ζ) with chain pieces in α→δ order.
    pub segments: Vec<Segment>,
    /// Per-edge construction traces. Empty on arrangements deserialized
    /// from JSON, which therefore cannot be extended.
    pub traces: BTreeMap<Edge, EdgeTrace>,
}

/// ε_k = 1/(k²n⁵).
pub fn epsilon(k: u32, n: usize) -> Result<Rational> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidParameter("epsilon needs k, n >= 1".into()));
    }
    let den = BigInt::from(k) * BigInt::from(k) * BigInt::from(n).pow(5);
    Rational::big_ratio(BigInt::from(1), den)
}

/// ζ(e) = n·i + j over sorted endpoint positions i < j.
fn zeta(n: usize, i: usize, j: usize) -> u64 {
    debug_assert!(i < j);
    (n as u64) * (i as u64) + (j as u64)
}

/// xpos(e) = rank(e) + ζ(e)/n⁴.
fn xpos(rank: u32, zeta: u64, n: usize) -> Result<Rational> {
    let frac = Rational::big_ratio(BigInt::from(zeta), BigInt::from(n).pow(4))?;
    Ok(Rational::from_int(rank as i64) + frac)
}

fn rat(v: usize) -> Rational {
    Rational::from_int(v as i64)
}

/// Builds the k = 3 arrangement for a valid drawing of the gadget's source
/// graph. Requires at least four original vertices.
pub fn synthesize_k3(
    d: &FrontLineDrawing,
    p: &EdgePoset,
    gadget: &ApexGadget,
) -> Result<Arrangement> {
    if gadget.k != 3 {
        return Err(Error::InvalidParameter(format!(
            "base construction needs a k=3 gadget, got k={}",
            gadget.k
        )));
    }
    let n = gadget.originals.len();
    if n < 4 {
        return Err(Error::InvalidInput(format!(
            "the construction assumes n >= 4 original vertices, got {n}"
        )));
    }

    // Recover the source graph from the gadget and check the drawing.
    let mut g = Graph::new();
    for v in &gadget.originals {
        g.add_vertex(v);
    }
    for (x, y) in gadget.chains.keys() {
        g.add_edge(x, y)?;
    }
    if !validate(d, &g)? {
        return Err(Error::InvalidInput("drawing has crossing edges".into()));
    }

    let pos = d.positions();
    let eps = epsilon(3, n)?;
    let tenth = Rational::ratio(1, 10)?;
    let half = Rational::ratio(1, 2)?;

    let mut traces: BTreeMap<Edge, EdgeTrace> = BTreeMap::new();
    for (e, assign) in &d.edges {
        let rank = *p
            .ranks
            .get(e)
            .ok_or_else(|| Error::InvalidInput(format!("poset does not rank edge {e:?}")))?;
        let (p0, p1) = (pos[e.0.as_str()], pos[e.1.as_str()]);
        let (i_sorted, j_sorted) = (p0.min(p1), p0.max(p1));
        let z = zeta(n, i_sorted, j_sorted);
        let x = xpos(rank, z, n)?;

        // (i, j) per the construction: sorted positions for arcs,
        // (left attach, right attach) positions for crossovers.
        let (points, alpha_end_pos) = match assign {
            SideAssignment::Left => {
                let (i, j) = (i_sorted, j_sorted);
                let mid = rat(i).mid(&rat(j));
                let xa = -&x;
                let xb = &xa - &eps;
                (
                    vec![(xa.clone(), rat(i)), (xa, mid.clone()), (xb.clone(), mid), (xb, rat(j))],
                    i,
                )
            }
            SideAssignment::Right => {
                let (i, j) = (i_sorted, j_sorted);
                let mid = rat(i).mid(&rat(j));
                let xb = &x + &eps;
                (
                    vec![(x.clone(), rat(i)), (x, mid.clone()), (xb.clone(), mid), (xb, rat(j))],
                    i,
                )
            }
            SideAssignment::Above { left_attach, right_attach } => {
                let (i, j) = (pos[left_attach.as_str()], pos[right_attach.as_str()]);
                let top = rat(n) + Rational::from_int(rank as i64);
                let xa = -&x;
                (
                    vec![(xa.clone(), rat(i)), (xa, top.clone()), (x.clone(), top), (x, rat(j))],
                    i,
                )
            }
            SideAssignment::Below { left_attach, right_attach } => {
                let (i, j) = (pos[left_attach.as_str()], pos[right_attach.as_str()]);
                let bottom = Rational::from_int(-(rank as i64));
                let xa = -&x;
                (
                    vec![
                        (xa.clone(), rat(i)),
                        (xa, bottom.clone()),
                        (x.clone(), bottom),
                        (x, rat(j)),
                    ],
                    i,
                )
            }
        };

        // The chain head u¹ must own the piece touching the chain's first
        // original, wherever the drawing put it.
        let head_at_alpha = pos[e.0.as_str()] == alpha_end_pos;
        traces.insert(e.clone(), EdgeTrace { rank, zeta: z, points, head_at_alpha });
    }

    // Reach of each original's horizontal segment: the max rank over its
    // left- and right-connecting incident edges, 0 if none.
    let mut left_reach: BTreeMap<usize, u32> = BTreeMap::new();
    let mut right_reach: BTreeMap<usize, u32> = BTreeMap::new();
    for (e, assign) in &d.edges {
        let rank = p.ranks[e];
        let mut bump = |v: &str, side: &mut BTreeMap<usize, u32>| {
            let entry = side.entry(pos[v]).or_insert(0);
            *entry = (*entry).max(rank);
        };
        match assign {
            SideAssignment::Left => {
                bump(&e.0, &mut left_reach);
                bump(&e.1, &mut left_reach);
            }
            SideAssignment::Right => {
                bump(&e.0, &mut right_reach);
                bump(&e.1, &mut right_reach);
            }
            SideAssignment::Above { left_attach, right_attach }
            | SideAssignment::Below { left_attach, right_attach } => {
                bump(left_attach, &mut left_reach);
                bump(right_attach, &mut right_reach);
            }
        }
    }

    let mut segments = Vec::with_capacity(1 + n + 3 * d.edges.len());
    segments.push(Segment::vertical(
        crate::graph::APEX_ID,
        Rational::zero(),
        half.clone(),
        rat(n) + half,
    ));
    for (idx, v) in d.ordering.iter().enumerate() {
        let t = idx + 1;
        let a = left_reach.get(&t).copied().unwrap_or(0);
        let b = right_reach.get(&t).copied().unwrap_or(0);
        segments.push(Segment::horizontal(
            v.clone(),
            rat(t),
            -Rational::from_int(a as i64) - &tenth,
            Rational::from_int(b as i64) + &tenth,
        ));
    }
    append_chain_segments(&mut segments, &traces, 3)?;

    Ok(Arrangement { n, k: 3, segments, traces })
}

/// Emits chain piece segments for every edge in (rank, ζ) order.
fn append_chain_segments(
    segments: &mut Vec<Segment>,
    traces: &BTreeMap<Edge, EdgeTrace>,
    k: u32,
) -> Result<()> {
    let mut order: Vec<&Edge> = traces.keys().collect();
    order.sort_by_key(|e| (traces[*e].rank, traces[*e].zeta));
    for e in order {
        let trace = &traces[e];
        let owners = trace.owners(e, k);
        if trace.points.len() != owners.len() + 1 {
            return Err(Error::Inconsistency(format!(
                "edge {e:?} has {} points for {} pieces",
                trace.points.len(),
                owners.len()
            )));
        }
        for (s, owner) in owners.into_iter().enumerate() {
            let (a, b) = (&trace.points[s], &trace.points[s + 1]);
            let piece = if a.0 == b.0 && a.1 != b.1 {
                Segment::vertical(owner, a.0.clone(), a.1.clone(), b.1.clone())
            } else if a.1 == b.1 && a.0 != b.0 {
                Segment::horizontal(owner, a.1.clone(), a.0.clone(), b.0.clone())
            } else {
                return Err(Error::Inconsistency(format!(
                    "degenerate piece {a:?} -> {b:?} on edge {e:?}"
                )));
            };
            segments.push(piece);
        }
    }
    Ok(())
}

/// Extends an arrangement from its current odd k to `target_k` by repeated
/// k → k+2 steps, splitting each edge's last chain piece around an
/// ε-length bridge pointing away from the apex.
pub fn extend_to_k(arr: &Arrangement, target_k: u32) -> Result<Arrangement> {
    if target_k % 2 == 0 || target_k < arr.k {
        return Err(Error::InvalidParameter(format!(
            "target k must be odd and >= {}, got {target_k}",
            arr.k
        )));
    }
    if target_k == arr.k {
        return Ok(arr.clone());
    }
    if arr.traces.is_empty() && arr.segments.len() > 1 + arr.n {
        return Err(Error::InvalidInput(
            "arrangement carries no construction traces (deserialized?); cannot extend".into(),
        ));
    }

    let n = arr.n;
    let mut traces = arr.traces.clone();
    let mut k = arr.k;
    while k < target_k {
        let eps = epsilon(k + 2, n)?;
        for (e, trace) in traces.iter_mut() {
            split_tail(e, trace, &eps)?;
        }
        k += 2;
    }

    // Apex and original segments are untouched; chain pieces regenerate.
    let mut segments: Vec<Segment> = arr.segments[..1 + n].to_vec();
    append_chain_segments(&mut segments, &traces, k)?;
    Ok(Arrangement { n, k, segments, traces })
}

/// Replaces the tail piece (λ, μ)–(λ, π) by its inner half at x = λ, an ε
/// bridge at the midpoint, and the outer half at x = λ + σε, where σ points
/// away from the apex and π is the end touching the terminal original.
fn split_tail(e: &Edge, trace: &mut EdgeTrace, eps: &Rational) -> Result<()> {
    let len = trace.points.len();
    let (inner_idx, outer_idx) = if trace.head_at_alpha { (len - 2, len - 1) } else { (1, 0) };
    let (inner, outer) = (trace.points[inner_idx].clone(), trace.points[outer_idx].clone());
    if inner.0 != outer.0 {
        return Err(Error::Inconsistency(format!("last chain piece of {e:?} is not vertical")));
    }
    let lambda = inner.0.clone();
    let sigma_eps = if lambda.is_negative() {
        -eps
    } else if lambda.is_positive() {
        eps.clone()
    } else {
        return Err(Error::Inconsistency(format!(
            "last chain piece of {e:?} sits on the apex axis"
        )));
    };
    let mid = inner.1.mid(&outer.1);
    let shifted = &lambda + &sigma_eps;
    let replacement =
        [(lambda.clone(), mid.clone()), (shifted.clone(), mid), (shifted, outer.1.clone())];
    if trace.head_at_alpha {
        trace.points.truncate(len - 1);
        trace.points.extend(replacement);
    } else {
        trace.points.splice(0..1, replacement.into_iter().rev());
    }
    Ok(())
}

/// Serialized arrangement: `{n, k, segments: [{owner, orientation, fixed,
/// span}]}` with rationals as exact `"p/q"` strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrangementDoc {
    pub n: usize,
    pub k: u32,
    pub segments: Vec<SegmentDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SegmentDoc {
    pub owner: String,
    /// "H" or "V".
    pub orientation: String,
    pub fixed: Rational,
    pub span: (Rational, Rational),
}

impl ArrangementDoc {
    pub fn new(arr: &Arrangement) -> Self {
        let segments = arr
            .segments
            .iter()
            .map(|s| SegmentDoc {
                owner: s.owner.clone(),
                orientation: match s.orientation {
                    Orientation::Horizontal => "H".into(),
                    Orientation::Vertical => "V".into(),
                },
                fixed: s.fixed.clone(),
                span: s.span.clone(),
            })
            .collect();
        ArrangementDoc { n: arr.n, k: arr.k, segments }
    }

    /// Validates and converts to an [`Arrangement`] without traces.
    pub fn to_arrangement(&self) -> Result<Arrangement> {
        let mut segments = Vec::with_capacity(self.segments.len());
        for s in &self.segments {
            if s.span.0 > s.span.1 {
                return Err(Error::InvalidInput(format!(
                    "segment owned by {:?} has span lo > hi",
                    s.owner
                )));
            }
            let orientation = match s.orientation.as_str() {
                "H" => Orientation::Horizontal,
                "V" => Orientation::Vertical,
                other => {
                    return Err(Error::InvalidInput(format!("unknown orientation tag {other:?}")))
                }
            };
            segments.push(Segment {
                owner: s.owner.clone(),
                orientation,
                fixed: s.fixed.clone(),
                span: s.span.clone(),
            });
        }
        Ok(Arrangement { n: self.n, k: self.k, segments, traces: BTreeMap::new() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontline::{ranks, synthesize};
    use crate::graph::{build_apex_gadget, edge_key};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    /// Four vertices, identity order, single left edge v1v2 — the worked
    /// example instance, built directly so coordinates are hand-checkable.
    fn worked_example() -> (Graph, FrontLineDrawing) {
        let mut g = Graph::from_edges([("v1", "v2")]).unwrap();
        g.add_vertex("v3");
        g.add_vertex("v4");
        let mut edges = BTreeMap::new();
        edges.insert(edge_key("v1", "v2"), SideAssignment::Left);
        let d = FrontLineDrawing {
            ordering: vec!["v1".into(), "v2".into(), "v3".into(), "v4".into()],
            edges,
        };
        (g, d)
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon(3, 4).unwrap(), r("1/9216"));
        assert_eq!(epsilon(5, 4).unwrap(), r("1/25600"));
        assert_eq!(epsilon(3, 5).unwrap(), r("1/28125"));
    }

    #[test]
    fn worked_example_coordinates() {
        // n=4, e=v1v2 ∈ E_l, rank 1: ζ = 4·1+2 = 6, xpos = 1 + 6/256 =
        // 131/128, ε₃ = 1/(9·4⁵) = 1/9216.
        let (g, d) = worked_example();
        let poset = ranks(&d, &g).unwrap();
        let gadget = build_apex_gadget(&g, 6).unwrap();
        let arr = synthesize_k3(&d, &poset, &gadget).unwrap();

        let e = edge_key("v1", "v2");
        let trace = &arr.traces[&e];
        assert_eq!(trace.zeta, 6);
        assert_eq!(trace.rank, 1);
        let x = r("-131/128");
        let xe = &x - &r("1/9216");
        assert_eq!(
            trace.points,
            vec![(x.clone(), r("1/1")), (x, r("3/2")), (xe.clone(), r("3/2")), (xe, r("2/1"))]
        );

        // Apex: x = 0, y ∈ [1/2, 9/2].
        let apex = &arr.segments[0];
        assert_eq!(apex.owner, crate::graph::APEX_ID);
        assert_eq!(apex.orientation, Orientation::Vertical);
        assert_eq!(apex.fixed, Rational::zero());
        assert_eq!(apex.span, (r("1/2"), r("9/2")));

        // v1 and v2 reach a = 1 to the left, 0 to the right; the isolated
        // v3, v4 span [-1/10, 1/10].
        let v1 = &arr.segments[1];
        assert_eq!(v1.span, (r("-11/10"), r("1/10")));
        let v3 = &arr.segments[3];
        assert_eq!(v3.span, (r("-1/10"), r("1/10")));
        assert_eq!(v3.fixed, r("3/1"));

        assert_eq!(arr.segments.len(), 1 + 4 + 3);
    }

    #[test]
    fn apex_span_scales_with_n() {
        let g = Graph::from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")]).unwrap();
        let (d, p) = synthesize(&g).unwrap().unwrap();
        let gadget = build_apex_gadget(&g, 6).unwrap();
        let arr = synthesize_k3(&d, &p, &gadget).unwrap();
        assert_eq!(arr.segments[0].span, (r("1/2"), r("11/2")));
    }

    #[test]
    fn rejects_small_n() {
        let g = Graph::from_edges([("a", "b"), ("b", "c")]).unwrap();
        let (d, p) = synthesize(&g).unwrap().unwrap();
        let gadget = build_apex_gadget(&g, 6).unwrap();
        assert!(matches!(synthesize_k3(&d, &p, &gadget), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn rejects_wrong_k_gadget() {
        let (g, d) = worked_example();
        let poset = ranks(&d, &g).unwrap();
        let gadget = build_apex_gadget(&g, 8).unwrap();
        assert!(matches!(synthesize_k3(&d, &poset, &gadget), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn extension_splits_at_midpoint() {
        // k=3 → 5 on the worked example: the u³ span [3/2, 2] splits at
        // 7/4; the bridge has length 1/(25·1024) = 1/25600 and points away
        // from the apex (σ = −1 since λ < 0).
        let (g, d) = worked_example();
        let poset = ranks(&d, &g).unwrap();
        let gadget = build_apex_gadget(&g, 6).unwrap();
        let arr = synthesize_k3(&d, &poset, &gadget).unwrap();
        let arr5 = extend_to_k(&arr, 5).unwrap();

        assert_eq!(arr5.k, 5);
        assert_eq!(arr5.segments.len(), 1 + 4 + 5);
        let e = edge_key("v1", "v2");
        let lambda = &r("-131/128") - &r("1/9216");
        let shifted = &lambda - &r("1/25600");
        assert_eq!(
            arr5.traces[&e].points,
            vec![
                (r("-131/128"), r("1/1")),
                (r("-131/128"), r("3/2")),
                (lambda.clone(), r("3/2")),
                (lambda, r("7/4")),
                (shifted.clone(), r("7/4")),
                (shifted, r("2/1")),
            ]
        );

        // Identity extension.
        let same = extend_to_k(&arr, 3).unwrap();
        assert_eq!(same.segments, arr.segments);

        // Parameter validation.
        assert!(extend_to_k(&arr, 4).is_err());
        assert!(extend_to_k(&arr5, 3).is_err());
    }

    #[test]
    fn extension_keeps_tail_vertical_and_census() {
        let (g, d) = worked_example();
        let poset = ranks(&d, &g).unwrap();
        let gadget = build_apex_gadget(&g, 6).unwrap();
        let mut arr = synthesize_k3(&d, &poset, &gadget).unwrap();
        for target in [5u32, 7, 9] {
            arr = extend_to_k(&arr, target).unwrap();
            assert_eq!(arr.segments.len(), 1 + arr.n + target as usize);
            for (e, trace) in &arr.traces {
                let owners = trace.owners(e, target);
                let tail = subdivision_vertex_id(&e.0, &e.1, target);
                let idx = owners.iter().position(|o| *o == tail).unwrap();
                let (a, b) = (&trace.points[idx], &trace.points[idx + 1]);
                assert_eq!(a.0, b.0, "tail piece of {e:?} must be vertical");
            }
        }
    }

    #[test]
    fn cumulative_drift_stays_under_bound() {
        // For k up to 9 the drift is Σ ε_i over i ∈ {5, 7, 9}, which must
        // stay below 1/n⁵.
        let n = 4usize;
        let drift = epsilon(5, n).unwrap() + epsilon(7, n).unwrap() + epsilon(9, n).unwrap();
        let bound = Rational::big_ratio(1.into(), BigInt::from(n).pow(5)).unwrap();
        assert!(drift < bound);
    }

    #[test]
    fn doc_round_trip() {
        let (g, d) = worked_example();
        let poset = ranks(&d, &g).unwrap();
        let gadget = build_apex_gadget(&g, 6).unwrap();
        let arr = synthesize_k3(&d, &poset, &gadget).unwrap();
        let doc = ArrangementDoc::new(&arr);
        let json = serde_json::to_string(&doc).unwrap();
        let back: ArrangementDoc = serde_json::from_str(&json).unwrap();
        let arr2 = back.to_arrangement().unwrap();
        assert_eq!(arr2.segments, arr.segments);
        assert!(arr2.traces.is_empty());
        assert!(matches!(extend_to_k(&arr2, 5), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn doc_rejects_malformed() {
        let bad: ArrangementDoc = serde_json::from_str(
            r#"{"n":4,"k":3,"segments":[{"owner":"a","orientation":"V","fixed":"0/1","span":["2/1","1/1"]}]}"#,
        )
        .unwrap();
        assert!(bad.to_arrangement().is_err());
        let bad: ArrangementDoc = serde_json::from_str(
            r#"{"n":4,"k":3,"segments":[{"owner":"a","orientation":"X","fixed":"0/1","span":["1/1","2/1"]}]}"#,
        )
        .unwrap();
        assert!(bad.to_arrangement().is_err());
    }
}
