use std::collections::HashSet;

use super::ribbon::{HalfEdgeId, RibbonGraph, VertexId};
use super::SurfaceError;

/// A named closed edge cycle carried by a ribbon graph.
///
/// The walk is a cyclic sequence of darts: dart `d_{i+1}` leaves the vertex
/// where `d_i` arrives. No edge is used twice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveOnSurface {
    name: String,
    walk: Vec<HalfEdgeId>,
}

impl CurveOnSurface {
    pub fn new(graph: &RibbonGraph, name: impl Into<String>, walk: Vec<HalfEdgeId>) -> Result<Self, SurfaceError> {
        let name = name.into();
        check_closed_walk(graph, &walk).map_err(|why| SurfaceError::BadCurve {
            name: name.clone(),
            why,
        })?;
        let mut used = HashSet::new();
        for &d in &walk {
            if !used.insert(graph.edge_of(d)) {
                return Err(SurfaceError::BadCurve {
                    name,
                    why: format!("edge {} is used twice", graph.edge_of(d)),
                });
            }
        }
        Ok(CurveOnSurface { name, walk })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn walk(&self) -> &[HalfEdgeId] {
        &self.walk
    }

    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        CurveOnSurface {
            name: name.into(),
            walk: self.walk.clone(),
        }
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self, graph: &RibbonGraph) -> Self {
        CurveOnSurface {
            name: self.name.clone(),
            walk: reverse_walk(graph, &self.walk),
        }
    }

    /// Does this curve traverse exactly the cyclic dart sequence `other`
    /// (up to choice of starting dart)?
    pub fn same_cycle(&self, other: &[HalfEdgeId]) -> bool {
        same_cyclic_sequence(&self.walk, other)
    }

    /// Same cycle, possibly traversed in the opposite direction.
    pub fn same_unoriented_cycle(&self, graph: &RibbonGraph, other: &[HalfEdgeId]) -> bool {
        self.same_cycle(other) || same_cyclic_sequence(&reverse_walk(graph, &self.walk), other)
    }

    /// Passages through vertices, one per consecutive dart pair.
    pub fn passages(&self, graph: &RibbonGraph) -> Vec<Passage> {
        closed_walk_passages(graph, &self.walk)
    }
}

/// Darts of `walk` reversed.
pub fn reverse_walk(graph: &RibbonGraph, walk: &[HalfEdgeId]) -> Vec<HalfEdgeId> {
    walk.iter().rev().map(|&d| graph.mate(d)).collect()
}

/// Equality of cyclic sequences up to rotation.
pub fn same_cyclic_sequence(a: &[HalfEdgeId], b: &[HalfEdgeId]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..b.len())
        .filter(|&k| b[k] == a[0])
        .any(|k| a.iter().enumerate().all(|(i, d)| b[(k + i) % b.len()] == *d))
}

fn check_closed_walk(graph: &RibbonGraph, walk: &[HalfEdgeId]) -> Result<(), String> {
    if walk.is_empty() {
        return Err("empty walk".into());
    }
    if let Some(d) = walk.iter().find(|d| d.0 >= graph.num_half_edges()) {
        return Err(format!("dart {d} is not on the host graph"));
    }
    for i in 0..walk.len() {
        let (d, next) = (walk[i], walk[(i + 1) % walk.len()]);
        if graph.head(d) != graph.vertex_of(next) {
            return Err(format!(
                "dart {d} ends at {} but the next dart {next} starts at {}",
                graph.head(d),
                graph.vertex_of(next)
            ));
        }
    }
    Ok(())
}

/// A place on the boundary of a vertex disk: either where a half-edge's band
/// attaches, or the boundary corner counterclockwise-after a half-edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Port {
    Half(HalfEdgeId),
    /// Corner between `h` and `next_ccw(h)`.
    Corner(HalfEdgeId),
}

impl Port {
    pub fn vertex(self, graph: &RibbonGraph) -> VertexId {
        match self {
            Port::Half(h) | Port::Corner(h) => graph.vertex_of(h),
        }
    }

    /// Position on the vertex circle, in quarter steps: half-edge `k` sits at
    /// `4k`, the corner after it at `4k + 2`.
    fn quarter(self, graph: &RibbonGraph) -> usize {
        match self {
            Port::Half(h) => 4 * graph.position(h),
            Port::Corner(h) => 4 * graph.position(h) + 2,
        }
    }
}

/// One traversal of a vertex disk: in through `entry`, out through `exit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Passage {
    pub vertex: VertexId,
    pub entry: Port,
    pub exit: Port,
}

/// Passages of a closed dart walk. Passage `i` sits between darts `i` and
/// `i + 1` (cyclically).
pub fn closed_walk_passages(graph: &RibbonGraph, walk: &[HalfEdgeId]) -> Vec<Passage> {
    (0..walk.len())
        .map(|i| {
            let next = walk[(i + 1) % walk.len()];
            Passage {
                vertex: graph.vertex_of(next),
                entry: Port::Half(graph.mate(walk[i])),
                exit: Port::Half(next),
            }
        })
        .collect()
}

/// An arc in the thickened surface with both endpoints on the boundary.
///
/// It starts at a boundary corner, runs along `darts`, and ends at a
/// boundary corner. With no darts it is a chord inside a single vertex disk.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CombPath {
    start: HalfEdgeId,
    darts: Vec<HalfEdgeId>,
    end: HalfEdgeId,
}

impl CombPath {
    /// `start` and `end` name corners (`Port::Corner`).
    pub fn new(
        graph: &RibbonGraph,
        start: HalfEdgeId,
        darts: Vec<HalfEdgeId>,
        end: HalfEdgeId,
    ) -> Result<Self, SurfaceError> {
        let bad = |why: String| SurfaceError::BadPath(why);
        let n = graph.num_half_edges();
        if start.0 >= n || end.0 >= n || darts.iter().any(|d| d.0 >= n) {
            return Err(bad("path references a half-edge outside the host".into()));
        }
        let mut at = graph.vertex_of(start);
        for &d in &darts {
            if graph.vertex_of(d) != at {
                return Err(bad(format!("dart {d} does not leave {at}")));
            }
            at = graph.head(d);
        }
        if graph.vertex_of(end) != at {
            return Err(bad(format!("path ends at {at} but its end corner is elsewhere")));
        }
        Ok(CombPath { start, darts, end })
    }

    pub fn start_corner(&self) -> HalfEdgeId {
        self.start
    }

    pub fn end_corner(&self) -> HalfEdgeId {
        self.end
    }

    pub fn darts(&self) -> &[HalfEdgeId] {
        &self.darts
    }

    /// Passage `i` precedes dart `i`; the last passage ends at the end corner.
    pub fn passages(&self, graph: &RibbonGraph) -> Vec<Passage> {
        let mut out = Vec::with_capacity(self.darts.len() + 1);
        let mut entry = Port::Corner(self.start);
        for &d in &self.darts {
            out.push(Passage {
                vertex: graph.vertex_of(d),
                entry,
                exit: Port::Half(d),
            });
            entry = Port::Half(graph.mate(d));
        }
        out.push(Passage {
            vertex: graph.vertex_of(self.end),
            entry,
            exit: Port::Corner(self.end),
        });
        out
    }

    pub(crate) fn with_darts(&self, darts: Vec<HalfEdgeId>) -> Self {
        CombPath {
            start: self.start,
            darts,
            end: self.end,
        }
    }
}

/// A crossing of some passage with the left push-off of a curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Crossing {
    /// Index of the crossing passage of the path.
    pub passage: usize,
    /// Index of the curve's passage (between curve darts `curve_passage` and
    /// `curve_passage + 1`).
    pub curve_passage: usize,
    /// `+1` if the path crosses from the curve's left to its right.
    pub sign: i64,
    /// Position along the path's chord, used to order crossings inside one disk.
    pub(crate) along: f64,
}

/// Is port `x` strictly inside the region to the left of the curve passage
/// `r → s` (counterclockwise from `s` round to `r`)?
fn left_of(graph: &RibbonGraph, curve: &Passage, x: Port) -> bool {
    let (Port::Half(r), Port::Half(s)) = (curve.entry, curve.exit) else {
        unreachable!("curve passages run between half-edges")
    };
    let quarter = 4 * graph.degree(curve.vertex);
    let a = 4 * graph.position(s);
    let b = 4 * graph.position(r);
    let span = match (b + quarter - a) % quarter {
        0 => quarter,
        w => w,
    };
    let off = (x.quarter(graph) + quarter - a) % quarter;
    off > 0 && off < span
}

fn quarter_point(q: f64, quarter: usize) -> (f64, f64) {
    let t = std::f64::consts::TAU * q / quarter as f64;
    (t.cos(), t.sin())
}

/// Parameter along the straight chord `p → q` where it meets chord `u → v`.
fn chord_parameter(p: (f64, f64), q: (f64, f64), u: (f64, f64), v: (f64, f64)) -> f64 {
    let (dx, dy) = (q.0 - p.0, q.1 - p.1);
    let (ex, ey) = (v.0 - u.0, v.1 - u.1);
    let den = dx * ey - dy * ex;
    if den.abs() < 1e-12 {
        return 0.5;
    }
    ((u.0 - p.0) * ey - (u.1 - p.1) * ex) / den
}

/// All crossings of `passages` with the left push-off of the closed curve
/// `curve`.
///
/// The push-off runs parallel to the curve, on its left, so a path may share
/// edges with the curve: crossings happen only inside vertex disks, where a
/// passage crosses the push-off exactly when one of its ports lies in the
/// curve's left region and the other does not.
pub fn crossings_with(graph: &RibbonGraph, passages: &[Passage], curve: &[HalfEdgeId]) -> Vec<Crossing> {
    let curve_passages = closed_walk_passages(graph, curve);
    let mut out = Vec::new();
    for (i, p) in passages.iter().enumerate() {
        for (j, c) in curve_passages.iter().enumerate() {
            if c.vertex != p.vertex {
                continue;
            }
            let into = left_of(graph, c, p.entry);
            let outof = left_of(graph, c, p.exit);
            if into == outof {
                continue;
            }
            let quarter = 4 * graph.degree(p.vertex);
            let (Port::Half(r), Port::Half(s)) = (c.entry, c.exit) else {
                unreachable!()
            };
            let along = chord_parameter(
                quarter_point(p.entry.quarter(graph) as f64, quarter),
                quarter_point(p.exit.quarter(graph) as f64, quarter),
                quarter_point(4.0 * graph.position(s) as f64 + 1.0, quarter),
                quarter_point(4.0 * graph.position(r) as f64 - 1.0, quarter),
            );
            out.push(Crossing {
                passage: i,
                curve_passage: j,
                sign: if into { 1 } else { -1 },
                along,
            });
        }
    }
    out.sort_by(|a, b| a.passage.cmp(&b.passage).then(a.along.total_cmp(&b.along)));
    out
}

/// Algebraic intersection `⟨x, y⟩` of two closed walks, computed from the
/// crossings of `x` with the left push-off of `y`.
pub fn walk_pairing(graph: &RibbonGraph, x: &[HalfEdgeId], y: &[HalfEdgeId]) -> i64 {
    crossings_with(graph, &closed_walk_passages(graph, x), y)
        .iter()
        .map(|c| c.sign)
        .sum()
}

/// Local sign of a single transverse crossing of two passages at one vertex:
/// `+1` when `b` crosses `a` from `a`'s right to its left, `-1` for the
/// opposite direction, `None` when the two strands only touch.
pub fn local_crossing_sign(graph: &RibbonGraph, a: &Passage, b: &Passage) -> Option<i64> {
    if a.vertex != b.vertex {
        return None;
    }
    match (left_of(graph, a, b.entry), left_of(graph, a, b.exit)) {
        (false, true) => Some(1),
        (true, false) => Some(-1),
        _ => None,
    }
}
