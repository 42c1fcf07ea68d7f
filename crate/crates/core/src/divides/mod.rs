//! Divides on closed orientable surfaces, stored as 4-valent rotation
//! systems: admissibility, checkerboard colorings, Morse data and the
//! standard necklace divide of each genus.

mod text;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surface::{Edge, EdgeId, HalfEdgeId, RibbonGraph, SurfaceError, VertexId};

pub use text::{parse_divide_text, to_divide_text};

pub const DIVIDE_SCHEMA: &str = "lf-forge/divide/v1";

#[derive(Debug, Error)]
pub enum DivideError {
    #[error("invalid divide: {0}")]
    Structure(String),
    #[error("divide is not admissible: {0}")]
    NotAdmissible(String),
    #[error("no checkerboard coloring: faces {faces:?} form an odd cycle")]
    OddFaceCycle { faces: Vec<usize> },
    #[error("cannot parse divide text, line {line}: {why}")]
    Parse { line: usize, why: String },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// A divide: a 4-valent graph with a counterclockwise rotation at each
/// double point. The strands through a double point join opposite
/// half-edges (rotation positions 0–2 and 1–3). The ambient surface is
/// implicit: it is the closed surface obtained by capping faces with disks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divide {
    ambient_genus: u32,
    graph: RibbonGraph,
}

impl Divide {
    pub fn new(ambient_genus: u32, graph: RibbonGraph) -> Result<Self, DivideError> {
        if graph.has_twists() {
            return Err(DivideError::Structure("divide edges cannot be twisted".into()));
        }
        if graph.num_vertices() == 0 {
            return Err(DivideError::Structure("a divide needs a double point".into()));
        }
        if let Some(v) = (0..graph.num_vertices()).find(|&v| graph.degree(VertexId(v)) != 4) {
            return Err(DivideError::Structure(format!(
                "double point {} has {} half-edges, expected 4",
                VertexId(v),
                graph.degree(VertexId(v))
            )));
        }
        Ok(Divide { ambient_genus, graph })
    }

    pub fn ambient_genus(&self) -> u32 {
        self.ambient_genus
    }

    pub fn graph(&self) -> &RibbonGraph {
        &self.graph
    }

    pub fn num_double_points(&self) -> usize {
        self.graph.num_vertices()
    }

    /// The half-edge across the double point from `h` (same strand).
    pub fn opposite(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.graph.rotate(h, 2)
    }

    /// Strand pairs at a double point: `[[h0, h2], [h1, h3]]`.
    pub fn strands(&self, v: VertexId) -> [[HalfEdgeId; 2]; 2] {
        let r = self.graph.rotation(v);
        [[r[0], r[2]], [r[1], r[3]]]
    }

    /// Immersed circles as edge lists, in order of least edge.
    pub fn components(&self) -> Vec<Vec<EdgeId>> {
        let g = &self.graph;
        let mut seen = vec![false; g.num_edges()];
        let mut out = Vec::new();
        for e0 in 0..g.num_edges() {
            if seen[e0] {
                continue;
            }
            let mut circle = Vec::new();
            let mut d = g.edge(EdgeId(e0)).halves[0];
            while !seen[g.edge_of(d).0] {
                seen[g.edge_of(d).0] = true;
                circle.push(g.edge_of(d));
                d = self.opposite(g.mate(d));
            }
            circle.sort();
            out.push(circle);
        }
        out
    }

    /// Faces of the divide (complementary regions), each as its boundary
    /// dart cycle under `h ↦ next_ccw(mate(h))`; face 0 contains half-edge 0.
    pub fn faces(&self) -> Vec<Vec<HalfEdgeId>> {
        self.graph.boundary_cycles().expect("divides are untwisted")
    }

    /// Disjoint union of two divides; the ambient genus is the sum, as for
    /// a connected sum of ambient surfaces away from the curves.
    pub fn disjoint_union(&self, other: &Divide) -> Result<Divide, DivideError> {
        let shift_h = self.graph.num_half_edges();
        let mut rotation = self.graph.rotations().to_vec();
        rotation.extend(
            other
                .graph
                .rotations()
                .iter()
                .map(|hs| hs.iter().map(|h| HalfEdgeId(h.0 + shift_h)).collect()),
        );
        let mut edges = self.graph.edges().to_vec();
        edges.extend(other.graph.edges().iter().map(|e| Edge {
            halves: e.halves.map(|h| HalfEdgeId(h.0 + shift_h)),
            twisted: false,
        }));
        Divide::new(
            self.ambient_genus + other.ambient_genus,
            RibbonGraph::new(rotation, edges)?,
        )
    }
}

/// Outcome of the admissibility checks, each reported separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub connected: bool,
    /// `V − E + F = 2 − 2g`: every face is a disk on the genus-g surface.
    pub faces_are_disks: bool,
    pub checkerboard: bool,
    pub admissible: bool,
}

pub fn check_admissible(d: &Divide) -> AdmissibilityReport {
    let g = d.graph();
    let faces = d.faces().len();
    let connected = g.is_connected();
    let euler = g.num_vertices() as i64 - g.num_edges() as i64 + faces as i64;
    let faces_are_disks = euler == 2 - 2 * d.ambient_genus() as i64;
    let checkerboard = face_two_coloring(d).is_ok();
    AdmissibilityReport {
        vertices: g.num_vertices(),
        edges: g.num_edges(),
        faces,
        connected,
        faces_are_disks,
        checkerboard,
        admissible: connected && faces_are_disks && checkerboard,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

/// A checkerboard coloring of the faces of a divide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    faces: Vec<Vec<HalfEdgeId>>,
    face_of: Vec<usize>,
    colors: Vec<Color>,
}

impl Coloring {
    pub fn faces(&self) -> &[Vec<HalfEdgeId>] {
        &self.faces
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Face whose boundary contains dart `h`.
    pub fn face_of(&self, h: HalfEdgeId) -> usize {
        self.face_of[h.0]
    }

    pub fn color_of_face(&self, f: usize) -> Color {
        self.colors[f]
    }

    pub fn faces_of_color(&self, c: Color) -> Vec<usize> {
        (0..self.faces.len()).filter(|&f| self.colors[f] == c).collect()
    }

    pub fn count(&self, c: Color) -> usize {
        self.colors.iter().filter(|&&x| x == c).count()
    }
}

fn face_two_coloring(d: &Divide) -> Result<Coloring, DivideError> {
    let g = d.graph();
    let faces = d.faces();
    let mut face_of = vec![0; g.num_half_edges()];
    for (i, f) in faces.iter().enumerate() {
        for &h in f {
            face_of[h.0] = i;
        }
    }
    let mut color: Vec<Option<Color>> = vec![None; faces.len()];
    let mut parent: Vec<Option<usize>> = vec![None; faces.len()];
    for root in 0..faces.len() {
        if color[root].is_some() {
            continue;
        }
        // Face 0 (containing half-edge 0) is white.
        color[root] = Some(Color::White);
        let mut queue = VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            for &h in &faces[f] {
                let other = face_of[g.mate(h).0];
                let want = match color[f] {
                    Some(Color::White) => Color::Black,
                    _ => Color::White,
                };
                match color[other] {
                    None => {
                        color[other] = Some(want);
                        parent[other] = Some(f);
                        queue.push_back(other);
                    }
                    Some(c) if c != want => {
                        return Err(DivideError::OddFaceCycle {
                            faces: odd_cycle(&parent, f, other),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(Coloring {
        faces,
        face_of,
        colors: color.into_iter().map(Option::unwrap).collect(),
    })
}

/// Closed face walk through the BFS tree plus the offending adjacency.
fn odd_cycle(parent: &[Option<usize>], a: usize, b: usize) -> Vec<usize> {
    let up = |mut x: usize| {
        let mut path = vec![x];
        while let Some(p) = parent[x] {
            path.push(p);
            x = p;
        }
        path
    };
    let (pa, pb) = (up(a), up(b));
    let lca = *pa.iter().find(|x| pb.contains(x)).expect("same BFS tree");
    let mut cycle: Vec<usize> = pa.iter().copied().take_while(|&x| x != lca).collect();
    cycle.push(lca);
    let tail: Vec<usize> = pb.iter().copied().take_while(|&x| x != lca).collect();
    cycle.extend(tail.into_iter().rev());
    cycle
}

/// Checkerboard coloring with the face containing half-edge 0 white. For
/// the standard divide that is the front face of the necklace.
pub fn checkerboard_coloring(d: &Divide) -> Result<Coloring, DivideError> {
    face_two_coloring(d)
}

/// Critical point counts of the Morse function attached to a divide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorseData {
    pub index0: usize,
    pub index1: usize,
    pub index2: usize,
}

impl MorseData {
    pub fn euler(&self) -> i64 {
        self.index0 as i64 - self.index1 as i64 + self.index2 as i64
    }
}

/// Minima at white faces, saddles at double points, maxima at black faces.
pub fn morse_data(d: &Divide, col: &Coloring) -> MorseData {
    MorseData {
        index0: col.count(Color::White),
        index1: d.num_double_points(),
        index2: col.count(Color::Black),
    }
}

/// The necklace divide on the genus-`g` surface: `n = 2g+2` embedded
/// circles, circle `i` meeting circle `i+1` (cyclically) at double point
/// `v_i`.
///
/// Circle `i` consists of edges `x_i` (half-edges `4i`, `4i+1`) and `y_i`
/// (`4i+2`, `4i+3`), both running from `v_{i−1}` to `v_i`. The rotation at
/// `v_i` is `[x_i⁺, x_{i+1}⁻, y_i⁺, y_{i+1}⁻]`, so the two strands alternate
/// and the complement has exactly four faces for every `n`.
pub fn standard_divide(g: u32) -> Divide {
    let n = 2 * g as usize + 2;
    let xm = |i: usize| HalfEdgeId(4 * i);
    let xp = |i: usize| HalfEdgeId(4 * i + 1);
    let ym = |i: usize| HalfEdgeId(4 * i + 2);
    let yp = |i: usize| HalfEdgeId(4 * i + 3);
    let rotation = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            vec![xp(i), xm(j), yp(i), ym(j)]
        })
        .collect();
    let edges = (0..2 * n).map(|e| Edge::new(2 * e, 2 * e + 1, false)).collect();
    let graph = RibbonGraph::new(rotation, edges).expect("necklace is well formed");
    Divide::new(g, graph).expect("necklace is 4-valent")
}

/// JSON form of a divide. Edge ids are 1-based, as in ribbon graph documents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivideDoc {
    pub schema: String,
    pub ambient_genus: u32,
    pub vertices: Vec<DivideVertexDoc>,
    pub edges: Vec<DivideEdgeDoc>,
    pub components: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivideVertexDoc {
    pub id: usize,
    pub rotation: [usize; 4],
    pub strands: [[usize; 2]; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivideEdgeDoc {
    pub id: usize,
    pub half_edges: [usize; 2],
}

impl DivideDoc {
    pub fn from_divide(d: &Divide) -> Self {
        let g = d.graph();
        DivideDoc {
            schema: DIVIDE_SCHEMA.to_string(),
            ambient_genus: d.ambient_genus(),
            vertices: (0..g.num_vertices())
                .map(|v| {
                    let r = g.rotation(VertexId(v));
                    DivideVertexDoc {
                        id: v,
                        rotation: [r[0].0, r[1].0, r[2].0, r[3].0],
                        strands: d.strands(VertexId(v)).map(|s| s.map(|h| h.0)),
                    }
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| DivideEdgeDoc {
                    id: i + 1,
                    half_edges: e.halves.map(|h| h.0),
                })
                .collect(),
            components: d
                .components()
                .iter()
                .map(|c| c.iter().map(|e| e.0 + 1).collect())
                .collect(),
        }
    }

    pub fn to_divide(&self) -> Result<Divide, DivideError> {
        if self.schema != DIVIDE_SCHEMA {
            return Err(DivideError::Structure(format!("unsupported schema {:?}", self.schema)));
        }
        let mut rotation = vec![None; self.vertices.len()];
        for v in &self.vertices {
            let slot = rotation
                .get_mut(v.id)
                .ok_or_else(|| DivideError::Structure(format!("vertex id {} out of range", v.id)))?;
            if slot.is_some() {
                return Err(DivideError::Structure(format!("vertex id {} repeated", v.id)));
            }
            let r = v.rotation;
            if v.strands != [[r[0], r[2]], [r[1], r[3]]] {
                return Err(DivideError::Structure(format!(
                    "strands at vertex {} must pair opposite half-edges",
                    v.id
                )));
            }
            *slot = Some(r.iter().map(|&h| HalfEdgeId(h)).collect());
        }
        let mut edges = vec![None; self.edges.len()];
        for e in &self.edges {
            if e.id == 0 || e.id > edges.len() || edges[e.id - 1].is_some() {
                return Err(DivideError::Structure(format!("edge id {} invalid or repeated", e.id)));
            }
            edges[e.id - 1] = Some(Edge::new(e.half_edges[0], e.half_edges[1], false));
        }
        let graph = RibbonGraph::new(
            rotation.into_iter().map(Option::unwrap).collect(),
            edges.into_iter().map(Option::unwrap).collect(),
        )?;
        let d = Divide::new(self.ambient_genus, graph)?;
        let comps: Vec<Vec<usize>> = d
            .components()
            .iter()
            .map(|c| c.iter().map(|e| e.0 + 1).collect())
            .collect();
        let mut given: Vec<Vec<usize>> = self
            .components
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect();
        given.sort();
        let mut want = comps;
        want.sort();
        if given != want {
            return Err(DivideError::Structure(
                "components do not match the strands of the rotation system".into(),
            ));
        }
        Ok(d)
    }
}
