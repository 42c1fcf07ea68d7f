use std::collections::{HashMap, HashSet};

use super::FibrationError;
use crate::surface::{local_crossing_sign, CurveOnSurface, HalfEdgeId, OrientedSurface, Passage, Port, VertexId};

fn passage_ends(p: &Passage) -> (HalfEdgeId, HalfEdgeId) {
    match (p.entry, p.exit) {
        (Port::Half(r), Port::Half(s)) => (r, s),
        _ => unreachable!("closed curves pass between half-edges"),
    }
}

/// Resolve every crossing of the multicurve `first` with the multicurve
/// `second` by letting the `first` strand turn left onto the `second` strand.
///
/// Requirements: the curves are pairwise edge-disjoint, each multicurve is
/// vertex-disjoint within itself, and wherever a `first` curve meets a
/// `second` curve they cross transversally with `second` running from the
/// right of `first` to its left. Under that orientation rule the smoothing
/// is orientation-consistent, so the outputs are oriented closed curves and
/// `Σ[out] = Σ[first] + Σ[second]`.
///
/// Outputs are named `c1, c2, …`; `c1` passes through the first dart of the
/// first `first` curve, and later components start at the earliest unused
/// dart in input order.
pub fn simultaneous_surgery(
    surface: &OrientedSurface,
    first: &[CurveOnSurface],
    second: &[CurveOnSurface],
) -> Result<Vec<CurveOnSurface>, FibrationError> {
    let graph = surface.graph();
    let mut edge_owner = HashMap::new();
    for c in first.iter().chain(second) {
        surface.curve_class(c)?;
        for &d in c.walk() {
            if let Some(prev) = edge_owner.insert(graph.edge_of(d), c.name()) {
                return Err(FibrationError::Surgery(format!(
                    "curves {prev} and {} share edge {}",
                    c.name(),
                    graph.edge_of(d)
                )));
            }
        }
    }
    let family = |curves: &[CurveOnSurface]| -> Result<HashMap<VertexId, Passage>, FibrationError> {
        let mut at = HashMap::new();
        for c in curves {
            for p in c.passages(graph) {
                if at.insert(p.vertex, p).is_some() {
                    return Err(FibrationError::Surgery(format!(
                        "multicurve passes {} twice (at curve {})",
                        p.vertex,
                        c.name()
                    )));
                }
            }
        }
        Ok(at)
    };
    let pa = family(first)?;
    let pb = family(second)?;

    // successor: incoming half-edge ↦ outgoing dart.
    let mut next: HashMap<HalfEdgeId, HalfEdgeId> = HashMap::new();
    for (v, a) in &pa {
        let (p, q) = passage_ends(a);
        match pb.get(v) {
            None => {
                next.insert(p, q);
            }
            Some(b) => {
                let (r, s) = passage_ends(b);
                match local_crossing_sign(graph, a, b) {
                    Some(1) => {
                        next.insert(p, s);
                        next.insert(r, q);
                    }
                    Some(_) => {
                        return Err(FibrationError::Surgery(format!(
                            "at {v} the second curve crosses from left to right; \
                             reverse it to make the smoothing orientation-consistent"
                        )))
                    }
                    None => return Err(FibrationError::Surgery(format!("curves touch without crossing at {v}"))),
                }
            }
        }
    }
    for (v, b) in &pb {
        if !pa.contains_key(v) {
            let (r, s) = passage_ends(b);
            next.insert(r, s);
        }
    }

    let mut used = HashSet::new();
    let mut out = Vec::new();
    for &start in first.iter().chain(second).flat_map(|c| c.walk()) {
        if used.contains(&start) {
            continue;
        }
        let mut walk = Vec::new();
        let mut d = start;
        while used.insert(d) {
            walk.push(d);
            d = next[&graph.mate(d)];
        }
        if d != start {
            return Err(FibrationError::BuilderDefect(
                "surgery successor is not a permutation".into(),
            ));
        }
        out.push(CurveOnSurface::new(graph, format!("c{}", out.len() + 1), walk)?);
    }
    Ok(out)
}
