use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::curve::CurveOnSurface;
use super::ribbon::{Edge, EdgeId, HalfEdgeId, RibbonGraph};
use super::SurfaceError;

pub const RIBBON_GRAPH_SCHEMA: &str = "lf-forge/ribbon-graph/v1";

/// JSON form of a ribbon graph with curves.
///
/// Edge ids are 1-based so that a walk can be written as signed edge ids:
/// `+e` runs from `half_edges[0]` to `half_edges[1]`, `-e` the other way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonGraphDoc {
    pub schema: String,
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeDoc>,
    pub rotation: BTreeMap<usize, Vec<usize>>,
    #[serde(default)]
    pub curves: Vec<CurveDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: usize,
    pub half_edges: [usize; 2],
    pub twist: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDoc {
    pub name: String,
    pub walk: Vec<i64>,
}

impl CurveDoc {
    pub fn from_curve(graph: &RibbonGraph, c: &CurveOnSurface) -> Self {
        CurveDoc {
            name: c.name().to_string(),
            walk: c
                .walk()
                .iter()
                .map(|&d| graph.dart_sign(d) * (graph.edge_of(d).0 as i64 + 1))
                .collect(),
        }
    }

    pub fn to_curve(&self, graph: &RibbonGraph) -> Result<CurveOnSurface, SurfaceError> {
        let walk = self
            .walk
            .iter()
            .map(|&s| {
                let e = s.unsigned_abs() as usize;
                if s == 0 || e > graph.num_edges() {
                    return Err(SurfaceError::Document(format!(
                        "curve {:?} uses unknown edge id {s}",
                        self.name
                    )));
                }
                let halves = graph.edge(EdgeId(e - 1)).halves;
                Ok(if s > 0 { halves[0] } else { halves[1] })
            })
            .collect::<Result<Vec<_>, _>>()?;
        CurveOnSurface::new(graph, self.name.clone(), walk)
    }
}

impl RibbonGraphDoc {
    pub fn from_graph(graph: &RibbonGraph, curves: &[CurveOnSurface]) -> Self {
        RibbonGraphDoc {
            schema: RIBBON_GRAPH_SCHEMA.to_string(),
            vertices: (0..graph.num_vertices()).collect(),
            edges: graph
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| EdgeDoc {
                    id: i + 1,
                    half_edges: e.halves.map(|h| h.0),
                    twist: e.twisted,
                })
                .collect(),
            rotation: graph
                .rotations()
                .iter()
                .enumerate()
                .map(|(v, hs)| (v, hs.iter().map(|h| h.0).collect()))
                .collect(),
            curves: curves.iter().map(|c| CurveDoc::from_curve(graph, c)).collect(),
        }
    }

    /// Rebuild and validate the graph and its curves. Vertex ids must be
    /// `0..V` and edge ids `1..=E`, each listed once.
    pub fn to_graph(&self) -> Result<(RibbonGraph, Vec<CurveOnSurface>), SurfaceError> {
        let bad = |s: String| SurfaceError::Document(s);
        if self.schema != RIBBON_GRAPH_SCHEMA {
            return Err(bad(format!("unsupported schema {:?}", self.schema)));
        }
        let nv = self.vertices.len();
        let mut vs = self.vertices.clone();
        vs.sort_unstable();
        if vs != (0..nv).collect::<Vec<_>>() {
            return Err(bad("vertex ids must be 0..V without gaps".into()));
        }
        if self.rotation.keys().any(|&v| v >= nv) {
            return Err(bad("rotation names an unknown vertex".into()));
        }
        let mut edges = vec![None; self.edges.len()];
        for e in &self.edges {
            if e.id == 0 || e.id > edges.len() || edges[e.id - 1].is_some() {
                return Err(bad(format!("edge id {} is invalid or repeated", e.id)));
            }
            edges[e.id - 1] = Some(Edge::new(e.half_edges[0], e.half_edges[1], e.twist));
        }
        let edges = edges.into_iter().map(Option::unwrap).collect();
        let rotation = (0..nv)
            .map(|v| {
                self.rotation
                    .get(&v)
                    .map(|hs| hs.iter().map(|&h| HalfEdgeId(h)).collect())
                    .unwrap_or_default()
            })
            .collect();
        let graph = RibbonGraph::new(rotation, edges)?;
        let curves = self
            .curves
            .iter()
            .map(|c| c.to_curve(&graph))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((graph, curves))
    }
}

/// Graphviz rendering: one node per vertex labeled with its rotation, one
/// edge per band labeled with its id (and `~` when half-twisted); curves
/// are listed in a comment block.
pub fn to_dot(graph: &RibbonGraph, curves: &[CurveOnSurface], title: &str) -> String {
    let mut s = String::new();
    writeln!(s, "graph \"{}\" {{", title.replace('"', "'")).unwrap();
    writeln!(s, "  node [shape=circle];").unwrap();
    for (v, hs) in graph.rotations().iter().enumerate() {
        let rot = hs.iter().map(|h| h.0.to_string()).collect::<Vec<_>>().join(" ");
        writeln!(s, "  v{v} [label=\"{v}\\n({rot})\"];").unwrap();
    }
    for (i, e) in graph.edges().iter().enumerate() {
        let [a, b] = e.halves;
        let style = if e.twisted { ", style=dashed" } else { "" };
        writeln!(
            s,
            "  v{} -- v{} [label=\"{}{}\"{}];",
            graph.vertex_of(a).0,
            graph.vertex_of(b).0,
            i + 1,
            if e.twisted { "~" } else { "" },
            style
        )
        .unwrap();
    }
    for c in curves {
        let doc = CurveDoc::from_curve(graph, c);
        let walk = doc.walk.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        writeln!(s, "  // curve {}: {}", c.name(), walk).unwrap();
    }
    s.push_str("}\n");
    s
}
