use super::curve::{crossings_with, CombPath, CurveOnSurface, Passage};
use super::homology::OrientedSurface;
use super::ribbon::HalfEdgeId;
use super::SurfaceError;

/// Either kind of object a twist can act on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Route {
    Arc(CombPath),
    Loop(CurveOnSurface),
}

/// Detours to insert, grouped per passage of the twisted object.
///
/// At each crossing the object leaves its course and runs once around `c`,
/// starting from the curve dart that follows the crossed curve passage:
/// forwards when it crossed from `c`'s left to its right, backwards
/// otherwise. This is the positive (left-turning) Dehn twist, whose
/// homological effect is `x ↦ x + ⟨x, c⟩ c`.
fn detours(surface: &OrientedSurface, c: &CurveOnSurface, passages: &[Passage]) -> Vec<Vec<HalfEdgeId>> {
    let graph = surface.graph();
    let walk = c.walk();
    let n = walk.len();
    let mut out = vec![Vec::new(); passages.len()];
    for x in crossings_with(graph, passages, walk) {
        let k = (x.curve_passage + 1) % n;
        let lap = (0..n).map(|t| walk[(k + t) % n]);
        let slot = &mut out[x.passage];
        if x.sign > 0 {
            slot.extend(lap);
        } else {
            let forward: Vec<HalfEdgeId> = lap.collect();
            slot.extend(forward.iter().rev().map(|&d| graph.mate(d)));
        }
    }
    out
}

fn check_curve(surface: &OrientedSurface, c: &CurveOnSurface) -> Result<(), SurfaceError> {
    CurveOnSurface::new(surface.graph(), c.name(), c.walk().to_vec()).map(|_| ())
}

/// Image of an arc under the positive Dehn twist along `c`; endpoints stay fixed.
pub fn twist_arc(surface: &OrientedSurface, c: &CurveOnSurface, p: &CombPath) -> Result<CombPath, SurfaceError> {
    check_curve(surface, c)?;
    let graph = surface.graph();
    let p = CombPath::new(graph, p.start_corner(), p.darts().to_vec(), p.end_corner())?;
    let extra = detours(surface, c, &p.passages(graph));
    let mut darts = Vec::new();
    for (i, lap) in extra.into_iter().enumerate() {
        darts.extend(lap);
        if let Some(&d) = p.darts().get(i) {
            darts.push(d);
        }
    }
    Ok(p.with_darts(darts))
}

/// Image of a closed walk under the positive Dehn twist along `c`, as a dart
/// sequence. The result may reuse edges, so it is returned as raw darts.
pub fn twist_walk(
    surface: &OrientedSurface,
    c: &CurveOnSurface,
    walk: &[HalfEdgeId],
) -> Result<Vec<HalfEdgeId>, SurfaceError> {
    check_curve(surface, c)?;
    let graph = surface.graph();
    let passages = super::curve::closed_walk_passages(graph, walk);
    let extra = detours(surface, c, &passages);
    let mut darts = Vec::new();
    for (i, lap) in extra.into_iter().enumerate() {
        darts.push(walk[i]);
        darts.extend(lap);
    }
    Ok(darts)
}

/// Positive Dehn twist applied to an arc or a closed curve. The closed image
/// of an edge-simple curve generally reuses edges, so loops come back as the
/// raw dart walk wrapped in [`TwistedRoute::Walk`].
pub fn dehn_twist_on_path(
    surface: &OrientedSurface,
    c: &CurveOnSurface,
    p: &Route,
) -> Result<TwistedRoute, SurfaceError> {
    match p {
        Route::Arc(a) => twist_arc(surface, c, a).map(TwistedRoute::Arc),
        Route::Loop(l) => {
            surface.curve_class(l)?;
            twist_walk(surface, c, l.walk()).map(TwistedRoute::Walk)
        }
    }
}

/// Output of [`dehn_twist_on_path`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistedRoute {
    Arc(CombPath),
    Walk(Vec<HalfEdgeId>),
}

impl TwistedRoute {
    pub fn darts(&self) -> &[HalfEdgeId] {
        match self {
            TwistedRoute::Arc(a) => a.darts(),
            TwistedRoute::Walk(w) => w,
        }
    }
}

/// One arc per co-tree edge: the chord inside the edge's initial vertex disk
/// running from the corner just clockwise of the edge to the corner just
/// counterclockwise of it. It crosses that edge's band once and nothing
/// else, so cutting along all of them leaves the thickened spanning tree: a
/// disk.
pub fn cutting_arc_system(surface: &OrientedSurface) -> Vec<CombPath> {
    let graph = surface.graph();
    surface
        .basis()
        .cotree_edges()
        .iter()
        .map(|&e| {
            let h = graph.edge(e).halves[0];
            CombPath::new(graph, graph.prev_ccw(h), Vec::new(), h).expect("corner chord is valid")
        })
        .collect()
}
