use std::collections::HashSet;

use super::surgery::simultaneous_surgery;
use super::FibrationError;
use crate::divides::{check_admissible, checkerboard_coloring, Color, Coloring, Divide};
use crate::surface::{local_crossing_sign, CurveOnSurface, Edge, HalfEdgeId, OrientedSurface, RibbonGraph};

/// The fiber built from a divide: a roundabout (a 4-cycle of bands) at
/// every double point and a half-twisted band along every divide edge.
///
/// Roundabout vertex `r(v, k)`, `k = 0..3`, sits at rotation position `k`
/// of double point `v` and has half-edges `[out, in, band]` in that cyclic
/// order. Roundabout edge `4v + k` joins `out(v, k)` to `in(v, k+1)`; band
/// edge `4V + e` joins the band sites of the two ends of divide edge `e`.
/// Every edge is half-twisted.
#[derive(Clone, Debug)]
pub struct AcampoFiber {
    pub graph: RibbonGraph,
    /// Roundabout cores, one per double point in vertex order.
    pub beta: Vec<CurveOnSurface>,
}

fn site(v: usize, k: usize) -> usize {
    4 * v + k
}

fn out_dart(v: usize, k: usize) -> HalfEdgeId {
    HalfEdgeId(3 * site(v, k))
}

fn in_half(v: usize, k: usize) -> HalfEdgeId {
    HalfEdgeId(3 * site(v, k) + 1)
}

fn band_dart(v: usize, k: usize) -> HalfEdgeId {
    HalfEdgeId(3 * site(v, k) + 2)
}

pub fn acampo_fiber(d: &Divide) -> Result<AcampoFiber, FibrationError> {
    let report = check_admissible(d);
    if !report.admissible {
        return Err(FibrationError::Divide(crate::divides::DivideError::NotAdmissible(
            format!(
                "connected={}, faces are disks={}, checkerboard={}",
                report.connected, report.faces_are_disks, report.checkerboard
            ),
        )));
    }
    let dg = d.graph();
    let nv = dg.num_vertices();
    let rotation = (0..nv)
        .flat_map(|v| (0..4).map(move |k| vec![out_dart(v, k), in_half(v, k), band_dart(v, k)]))
        .collect();
    let mut edges: Vec<Edge> = (0..nv)
        .flat_map(|v| (0..4).map(move |k| Edge::new(out_dart(v, k).0, in_half(v, (k + 1) % 4).0, true)))
        .collect();
    for e in dg.edges() {
        let [a, b] = e.halves;
        edges.push(Edge::new(
            band_dart(dg.vertex_of(a).0, dg.position(a)).0,
            band_dart(dg.vertex_of(b).0, dg.position(b)).0,
            true,
        ));
    }
    let graph = RibbonGraph::new(rotation, edges)?;
    if !graph.is_orientable() {
        return Err(FibrationError::BuilderDefect("A'Campo fiber is not orientable".into()));
    }
    let beta = (0..nv)
        .map(|v| {
            CurveOnSurface::new(
                &graph,
                format!("beta{}", v + 1),
                (0..4).map(|k| out_dart(v, k)).collect(),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AcampoFiber { graph, beta })
}

/// The α, β, γ vanishing cycles of a divide's fiber.
#[derive(Clone, Debug)]
pub struct DivideCycles {
    pub alpha: Vec<CurveOnSurface>,
    pub beta: Vec<CurveOnSurface>,
    pub gamma: Vec<CurveOnSurface>,
}

/// α per white face and γ per black face (in face order), each following
/// the face boundary: across the band of each boundary edge, then along the
/// roundabout arc that turns the face's corner. β are the roundabout cores.
pub fn divide_vanishing_cycles(
    d: &Divide,
    col: &Coloring,
    fiber: &AcampoFiber,
) -> Result<DivideCycles, FibrationError> {
    let dg = d.graph();
    if fiber.beta.len() != dg.num_vertices() || col.faces().len() != d.faces().len() {
        return Err(FibrationError::BuilderDefect(
            "fiber and coloring do not belong to this divide".into(),
        ));
    }
    let face_cycle = |f: usize, name: String| {
        let mut walk = Vec::new();
        for &h in &col.faces()[f] {
            let m = dg.mate(h);
            walk.push(band_dart(dg.vertex_of(h).0, dg.position(h)));
            walk.push(out_dart(dg.vertex_of(m).0, dg.position(m)));
        }
        CurveOnSurface::new(&fiber.graph, name, walk)
            .map_err(|e| FibrationError::BuilderDefect(format!("face cycle: {e}")))
    };
    let named = |color: Color, stem: &str| {
        col.faces_of_color(color)
            .into_iter()
            .enumerate()
            .map(|(i, f)| face_cycle(f, format!("{stem}{}", i + 1)))
            .collect::<Result<Vec<_>, _>>()
    };
    Ok(DivideCycles {
        alpha: named(Color::White, "alpha")?,
        beta: fiber.beta.clone(),
        gamma: named(Color::Black, "gamma")?,
    })
}

/// Ishikawa's fibration data for a divide, on the fiber obtained by
/// orienting the A'Campo surface and collapsing the roundabout arcs that α
/// and β share (after which α and β meet only in transverse crossings).
#[derive(Clone, Debug)]
pub struct DivideFibration {
    pub fiber: RibbonGraph,
    pub alpha: Vec<CurveOnSurface>,
    pub beta: Vec<CurveOnSurface>,
    /// γ face cycles, each oriented to agree with the surgery output it equals.
    pub gamma: Vec<CurveOnSurface>,
    /// Raw outputs of the left-turn surgery of α and β.
    pub surgery: Vec<CurveOnSurface>,
}

fn first_crossing_sign(graph: &RibbonGraph, a: &CurveOnSurface, b: &CurveOnSurface) -> Option<i64> {
    let pb = b.passages(graph);
    a.passages(graph).iter().find_map(|pa| {
        pb.iter()
            .find(|q| q.vertex == pa.vertex)
            .and_then(|q| local_crossing_sign(graph, pa, q))
    })
}

pub fn divide_fibration(d: &Divide) -> Result<DivideFibration, FibrationError> {
    let fiber = acampo_fiber(d)?;
    let col = checkerboard_coloring(d)?;
    let cycles = divide_vanishing_cycles(d, &col, &fiber)?;
    let oriented = fiber.graph.oriented()?;

    let used = |cs: &[CurveOnSurface]| -> HashSet<_> {
        cs.iter().flat_map(|c| c.walk()).map(|&h| oriented.edge_of(h)).collect()
    };
    let (ua, ub) = (used(&cycles.alpha), used(&cycles.beta));
    let mut shared: Vec<_> = ua.intersection(&ub).copied().collect();
    shared.sort();
    let contraction = oriented.contract_edges(&shared)?;
    let graph = contraction.graph.clone();
    let carry = |cs: &[CurveOnSurface]| {
        cs.iter()
            .map(|c| CurveOnSurface::new(&graph, c.name(), contraction.map_darts(c.walk())))
            .collect::<Result<Vec<_>, _>>()
    };
    let mut alpha = carry(&cycles.alpha)?;
    let mut beta = carry(&cycles.beta)?;
    let faces_gamma = carry(&cycles.gamma)?;

    // Orient each β to cross the first α it meets from right to left, then
    // orient the remaining α to agree with the first β they meet.
    for b in beta.iter_mut() {
        if let Some(s) = alpha.iter().find_map(|a| first_crossing_sign(&graph, a, b)) {
            if s < 0 {
                *b = b.reversed(&graph);
            }
        }
    }
    for a in alpha.iter_mut().skip(1) {
        if let Some(s) = beta.iter().find_map(|b| first_crossing_sign(&graph, a, b)) {
            if s < 0 {
                *a = a.reversed(&graph);
            }
        }
    }

    let surface = OrientedSurface::new(&graph)?;
    let surgery = simultaneous_surgery(&surface, &alpha, &beta)?;
    let mut gamma = Vec::new();
    for face in &faces_gamma {
        let partner = surgery
            .iter()
            .find(|s| s.same_unoriented_cycle(&graph, face.walk()))
            .ok_or_else(|| {
                FibrationError::BuilderDefect(format!("{} is not an output of the α/β surgery", face.name()))
            })?;
        gamma.push(partner.renamed(face.name()));
    }
    if surgery.len() != gamma.len() {
        return Err(FibrationError::BuilderDefect(format!(
            "surgery produced {} curves but the divide has {} black faces",
            surgery.len(),
            gamma.len()
        )));
    }
    Ok(DivideFibration {
        fiber: graph,
        alpha,
        beta,
        gamma,
        surgery,
    })
}
