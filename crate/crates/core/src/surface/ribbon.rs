use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::SurfaceError;

/// Index of a vertex of a ribbon graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub usize);

/// Index of a half-edge. A half-edge doubles as a *dart*: the directed
/// traversal of its edge that starts at the half-edge's own vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdgeId(pub usize);

/// Index of an edge (0-based internally; documents use 1-based ids so that
/// walks can carry a sign).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for HalfEdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0 + 1)
    }
}

/// One edge: its two half-edges and whether the band is half-twisted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub halves: [HalfEdgeId; 2],
    pub twisted: bool,
}

impl Edge {
    pub fn new(a: usize, b: usize, twisted: bool) -> Self {
        Edge {
            halves: [HalfEdgeId(a), HalfEdgeId(b)],
            twisted,
        }
    }
}

/// A ribbon graph (fat graph): vertices with a counterclockwise cyclic
/// order of half-edges, a fixed-point-free pairing of half-edges into
/// edges, and a twist bit per edge. The surface is its thickening.
///
/// Half-edge ids are dense: `0..2·E`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RibbonGraph {
    rotation: Vec<Vec<HalfEdgeId>>,
    edges: Vec<Edge>,
    vertex_of: Vec<VertexId>,
    position: Vec<usize>,
    edge_of: Vec<EdgeId>,
}

/// Result of [`RibbonGraph::contract_edges`]: the smaller graph plus the
/// renumbering of surviving half-edges.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: RibbonGraph,
    pub half_edge_map: Vec<Option<HalfEdgeId>>,
}

impl Contraction {
    /// Image of a dart sequence: contracted darts vanish, the rest are renumbered.
    pub fn map_darts(&self, darts: &[HalfEdgeId]) -> Vec<HalfEdgeId> {
        darts.iter().filter_map(|d| self.half_edge_map[d.0]).collect()
    }
}

impl RibbonGraph {
    /// Build and validate a ribbon graph.
    ///
    /// `rotation[v]` lists the half-edges at `v` in counterclockwise order.
    pub fn new(rotation: Vec<Vec<HalfEdgeId>>, edges: Vec<Edge>) -> Result<Self, SurfaceError> {
        let n_half = 2 * edges.len();
        let mut vertex_of = vec![None; n_half];
        let mut position = vec![0; n_half];
        for (v, hs) in rotation.iter().enumerate() {
            for (k, h) in hs.iter().enumerate() {
                if h.0 >= n_half {
                    return Err(SurfaceError::Structure(format!(
                        "half-edge {h} at vertex {} out of range (expected < {n_half})",
                        VertexId(v)
                    )));
                }
                if vertex_of[h.0].is_some() {
                    return Err(SurfaceError::Structure(format!(
                        "half-edge {h} appears twice in the rotation system"
                    )));
                }
                vertex_of[h.0] = Some(VertexId(v));
                position[h.0] = k;
            }
        }
        let mut edge_of = vec![None; n_half];
        for (e, edge) in edges.iter().enumerate() {
            let [a, b] = edge.halves;
            if a == b {
                return Err(SurfaceError::Structure(format!(
                    "edge {} pairs half-edge {a} with itself",
                    EdgeId(e)
                )));
            }
            for h in [a, b] {
                if h.0 >= n_half {
                    return Err(SurfaceError::Structure(format!(
                        "edge {} uses out-of-range half-edge {h}",
                        EdgeId(e)
                    )));
                }
                if edge_of[h.0].is_some() {
                    return Err(SurfaceError::Structure(format!("half-edge {h} belongs to two edges")));
                }
                edge_of[h.0] = Some(EdgeId(e));
            }
        }
        let vertex_of = vertex_of
            .into_iter()
            .enumerate()
            .map(|(h, v)| {
                v.ok_or_else(|| SurfaceError::Structure(format!("half-edge {} is in no rotation", HalfEdgeId(h))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        // Every half-edge id < n_half appears in exactly one edge because the
        // edge list supplies exactly n_half distinct in-range ids.
        let edge_of = edge_of.into_iter().map(Option::unwrap).collect();
        Ok(RibbonGraph {
            rotation,
            edges,
            vertex_of,
            position,
            edge_of,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.rotation.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_half_edges(&self) -> usize {
        self.vertex_of.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64
    }

    pub fn rotation(&self, v: VertexId) -> &[HalfEdgeId] {
        &self.rotation[v.0]
    }

    pub fn rotations(&self) -> &[Vec<HalfEdgeId>] {
        &self.rotation
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v.0].len()
    }

    pub fn vertex_of(&self, h: HalfEdgeId) -> VertexId {
        self.vertex_of[h.0]
    }

    pub fn position(&self, h: HalfEdgeId) -> usize {
        self.position[h.0]
    }

    pub fn edge_of(&self, h: HalfEdgeId) -> EdgeId {
        self.edge_of[h.0]
    }

    pub fn is_twisted(&self, e: EdgeId) -> bool {
        self.edges[e.0].twisted
    }

    pub fn has_twists(&self) -> bool {
        self.edges.iter().any(|e| e.twisted)
    }

    pub fn mate(&self, h: HalfEdgeId) -> HalfEdgeId {
        let edge = &self.edges[self.edge_of[h.0].0];
        if edge.halves[0] == h {
            edge.halves[1]
        } else {
            edge.halves[0]
        }
    }

    /// Vertex at the far end of dart `h`.
    pub fn head(&self, h: HalfEdgeId) -> VertexId {
        self.vertex_of(self.mate(h))
    }

    /// `+1` when dart `h` runs along its edge's reference direction
    /// (`halves[0] → halves[1]`), `-1` otherwise.
    pub fn dart_sign(&self, h: HalfEdgeId) -> i64 {
        if self.edges[self.edge_of[h.0].0].halves[0] == h {
            1
        } else {
            -1
        }
    }

    /// The half-edge `steps` places counterclockwise from `h` at its vertex.
    pub fn rotate(&self, h: HalfEdgeId, steps: isize) -> HalfEdgeId {
        let hs = &self.rotation[self.vertex_of[h.0].0];
        let d = hs.len() as isize;
        hs[(self.position[h.0] as isize + steps).rem_euclid(d) as usize]
    }

    pub fn next_ccw(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.rotate(h, 1)
    }

    pub fn prev_ccw(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.rotate(h, -1)
    }

    /// Number of boundary components of the thickened surface.
    ///
    /// Face tracing runs over states (half-edge, direction); crossing a
    /// twisted band flips the direction. Every boundary component is traced
    /// once in each direction.
    pub fn boundary_count(&self) -> usize {
        let n = self.num_half_edges();
        let mut seen = vec![[false; 2]; n];
        let mut orbits = 0;
        for start in 0..n {
            for dir in 0..2 {
                if seen[start][dir] {
                    continue;
                }
                orbits += 1;
                let (mut h, mut d) = (HalfEdgeId(start), dir);
                while !seen[h.0][d] {
                    seen[h.0][d] = true;
                    let m = self.mate(h);
                    if self.is_twisted(self.edge_of(h)) {
                        d ^= 1;
                    }
                    h = self.rotate(m, if d == 0 { 1 } else { -1 });
                }
            }
        }
        let isolated = self.rotation.iter().filter(|r| r.is_empty()).count();
        orbits / 2 + isolated
    }

    /// Boundary cycles of an untwisted graph: orbits of `h ↦ next_ccw(mate(h))`.
    /// Each cycle lists darts in boundary order; the cycles partition the darts.
    pub fn boundary_cycles(&self) -> Result<Vec<Vec<HalfEdgeId>>, SurfaceError> {
        if self.has_twists() {
            return Err(SurfaceError::Twisted);
        }
        let n = self.num_half_edges();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = HalfEdgeId(start);
            while !seen[h.0] {
                seen[h.0] = true;
                cycle.push(h);
                h = self.next_ccw(self.mate(h));
            }
            cycles.push(cycle);
        }
        Ok(cycles)
    }

    /// Connected components as sorted vertex lists, in order of least vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.num_vertices()];
        let mut out = Vec::new();
        for root in 0..self.num_vertices() {
            if comp[root] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![VertexId(root)];
            comp[root] = id;
            let mut queue = VecDeque::from([VertexId(root)]);
            while let Some(v) = queue.pop_front() {
                for &h in &self.rotation[v.0] {
                    let w = self.head(h);
                    if comp[w.0] == usize::MAX {
                        comp[w.0] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.num_vertices() > 0 && self.components().len() == 1
    }

    /// Local orientation signs: the least vertex of every component gets `+1`
    /// and signs propagate by `sign(w) = sign(v)·(−1)^twist`. `None` when the
    /// propagation is inconsistent, i.e. the surface is non-orientable.
    pub fn orientation_signs(&self) -> Option<Vec<i8>> {
        let mut sign = vec![0i8; self.num_vertices()];
        for root in 0..self.num_vertices() {
            if sign[root] != 0 {
                continue;
            }
            sign[root] = 1;
            let mut queue = VecDeque::from([VertexId(root)]);
            while let Some(v) = queue.pop_front() {
                for &h in &self.rotation[v.0] {
                    let w = self.head(h);
                    let want = if self.is_twisted(self.edge_of(h)) {
                        -sign[v.0]
                    } else {
                        sign[v.0]
                    };
                    if sign[w.0] == 0 {
                        sign[w.0] = want;
                        queue.push_back(w);
                    } else if sign[w.0] != want {
                        return None;
                    }
                }
            }
        }
        Some(sign)
    }

    pub fn is_orientable(&self) -> bool {
        self.orientation_signs().is_some()
    }

    /// The same surface with every twist bit cleared: rotations at vertices of
    /// negative local sign are reversed (keeping the first half-edge in place).
    /// The global orientation is the one in which the least vertex of each
    /// component keeps its stored rotation. Ids are unchanged.
    pub fn oriented(&self) -> Result<RibbonGraph, SurfaceError> {
        let signs = self.orientation_signs().ok_or(SurfaceError::NonOrientable)?;
        let rotation = self
            .rotation
            .iter()
            .zip(&signs)
            .map(|(hs, &s)| {
                if s > 0 || hs.is_empty() {
                    hs.clone()
                } else {
                    std::iter::once(hs[0]).chain(hs[1..].iter().rev().copied()).collect()
                }
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                halves: e.halves,
                twisted: false,
            })
            .collect();
        RibbonGraph::new(rotation, edges)
    }

    /// Mirror image: every rotation reversed.
    pub fn mirrored(&self) -> RibbonGraph {
        let rotation = self
            .rotation
            .iter()
            .map(|hs| {
                if hs.is_empty() {
                    Vec::new()
                } else {
                    std::iter::once(hs[0]).chain(hs[1..].iter().rev().copied()).collect()
                }
            })
            .collect();
        RibbonGraph::new(rotation, self.edges.clone()).expect("mirror preserves validity")
    }

    /// Contract a set of untwisted, non-loop edges (in the given order).
    ///
    /// Contracting edge `a–b` (`a` at `u`, `b` at `w`) splices the rotations
    /// into `ru[a+1..] ++ ru[..a] ++ rw[b+1..] ++ rw[..b]` at `u`, which is the
    /// thickened surface with the band collapsed into a single disk.
    /// Surviving vertices, edges and half-edges are renumbered in increasing
    /// order of their old ids.
    pub fn contract_edges(&self, to_contract: &[EdgeId]) -> Result<Contraction, SurfaceError> {
        let mut rotation: Vec<Option<Vec<HalfEdgeId>>> = self.rotation.iter().cloned().map(Some).collect();
        let mut vertex_of = self.vertex_of.clone();
        let mut gone = vec![false; self.num_edges()];
        for &e in to_contract {
            let edge = self
                .edges
                .get(e.0)
                .ok_or_else(|| SurfaceError::Structure(format!("edge {e} does not exist")))?;
            if edge.twisted {
                return Err(SurfaceError::Structure(format!("cannot contract twisted edge {e}")));
            }
            if gone[e.0] {
                return Err(SurfaceError::Structure(format!("edge {e} contracted twice")));
            }
            let [a, b] = edge.halves;
            let (u, w) = (vertex_of[a.0], vertex_of[b.0]);
            if u == w {
                return Err(SurfaceError::Structure(format!(
                    "cannot contract edge {e}: it is a loop"
                )));
            }
            let ru = rotation[u.0].take().expect("live vertex");
            let rw = rotation[w.0].take().expect("live vertex");
            let i = ru.iter().position(|&h| h == a).expect("a at u");
            let j = rw.iter().position(|&h| h == b).expect("b at w");
            let merged: Vec<HalfEdgeId> = ru[i + 1..]
                .iter()
                .chain(&ru[..i])
                .chain(&rw[j + 1..])
                .chain(&rw[..j])
                .copied()
                .collect();
            for &h in &merged {
                vertex_of[h.0] = u;
            }
            rotation[u.0] = Some(merged);
            gone[e.0] = true;
        }
        let mut half_edge_map = vec![None; self.num_half_edges()];
        let mut next = 0;
        for h in 0..self.num_half_edges() {
            if !gone[self.edge_of[h].0] {
                half_edge_map[h] = Some(HalfEdgeId(next));
                next += 1;
            }
        }
        let new_rotation = rotation
            .into_iter()
            .flatten()
            .map(|hs| hs.iter().map(|h| half_edge_map[h.0].unwrap()).collect())
            .collect();
        let new_edges = self
            .edges
            .iter()
            .zip(&gone)
            .filter(|(_, &g)| !g)
            .map(|(e, _)| Edge {
                halves: e.halves.map(|h| half_edge_map[h.0].unwrap()),
                twisted: e.twisted,
            })
            .collect();
        Ok(Contraction {
            graph: RibbonGraph::new(new_rotation, new_edges)?,
            half_edge_map,
        })
    }
}
