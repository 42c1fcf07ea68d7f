use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::extract_plumbing_pattern;
use crate::fibration::{simultaneous_surgery, Construction, LefschetzFibration};
use crate::invariants::{Check, FiberSummary};
use crate::surface::{surface_invariants, CurveOnSurface, EdgeId, HalfEdgeId, OrientedSurface, RibbonGraph, VertexId};

pub const ISO_SCHEMA: &str = "lf-forge/isomorphism/v1";

/// How far a candidate map got before failing; later stages are "closer".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoStage {
    FiberInvariants,
    RibbonMap,
    CycleCorrespondence,
    SurgeryCompatibility,
    MonodromyIntertwining,
}

impl IsoStage {
    fn check_name(self) -> &'static str {
        match self {
            IsoStage::FiberInvariants => "fiber_invariants",
            IsoStage::RibbonMap => "ribbon_isomorphism",
            IsoStage::CycleCorrespondence => "cycle_correspondence",
            IsoStage::SurgeryCompatibility => "surgery_compatible",
            IsoStage::MonodromyIntertwining => "monodromy_intertwined",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclePairing {
    pub source: String,
    pub target: String,
    /// The image runs against the target's orientation.
    pub reversed: bool,
}

/// A ribbon-graph isomorphism between two fibers (as a map on half-edges)
/// carrying the cycles of one fibration onto those of the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationIso {
    pub dart_map: Vec<HalfEdgeId>,
    pub orientation_preserving: bool,
    pub cycle_map: Vec<CyclePairing>,
}

impl FibrationIso {
    pub fn inverse_darts(&self) -> Vec<HalfEdgeId> {
        let mut inv = vec![HalfEdgeId(0); self.dart_map.len()];
        for (h, &t) in self.dart_map.iter().enumerate() {
            inv[t.0] = HalfEdgeId(h);
        }
        inv
    }

    pub fn image_walk(&self, walk: &[HalfEdgeId]) -> Vec<HalfEdgeId> {
        walk.iter().map(|h| self.dart_map[h.0]).collect()
    }

    /// Induced map on vertices of the source fiber.
    pub fn vertex_map(&self, g1: &RibbonGraph, g2: &RibbonGraph) -> Vec<VertexId> {
        (0..g1.num_vertices())
            .map(|v| g2.vertex_of(self.dart_map[g1.rotation(VertexId(v))[0].0]))
            .collect()
    }

    /// Induced map on edges of the source fiber.
    pub fn edge_map(&self, g1: &RibbonGraph, g2: &RibbonGraph) -> Vec<EdgeId> {
        g1.edges()
            .iter()
            .map(|e| g2.edge_of(self.dart_map[e.halves[0].0]))
            .collect()
    }
}

/// Check that `dart_map` is a ribbon-graph isomorphism `g1 → g2`
/// (orientation-preserving or -reversing as flagged).
fn check_ribbon_map(g1: &RibbonGraph, g2: &RibbonGraph, map: &[HalfEdgeId], preserving: bool) -> Result<(), String> {
    let n = g1.num_half_edges();
    if map.len() != n || g2.num_half_edges() != n {
        return Err("half-edge counts differ".into());
    }
    let mut hit = vec![false; n];
    for (h, &t) in map.iter().enumerate() {
        if t.0 >= n || std::mem::replace(&mut hit[t.0], true) {
            return Err("dart map is not a bijection".into());
        }
        let h = HalfEdgeId(h);
        if map[g1.mate(h).0] != g2.mate(t) {
            return Err(format!("edge structure not preserved at {h:?}"));
        }
        let turn = if preserving { g2.next_ccw(t) } else { g2.prev_ccw(t) };
        if map[g1.next_ccw(h).0] != turn {
            return Err(format!("rotation not preserved at {h:?}"));
        }
    }
    Ok(())
}

/// Propagate `seed ↦ target` through mates and rotations. `None` when the
/// forced assignments conflict or do not cover the fiber.
fn propagate(
    g1: &RibbonGraph,
    g2: &RibbonGraph,
    seed: HalfEdgeId,
    target: HalfEdgeId,
    preserving: bool,
) -> Option<Vec<HalfEdgeId>> {
    let n = g1.num_half_edges();
    let mut map: Vec<Option<HalfEdgeId>> = vec![None; n];
    let mut inv: Vec<Option<HalfEdgeId>> = vec![None; n];
    let mut stack = vec![(seed, target)];
    while let Some((h, t)) = stack.pop() {
        match (map[h.0], inv[t.0]) {
            (Some(x), _) if x == t => continue,
            (None, None) => {}
            _ => return None,
        }
        map[h.0] = Some(t);
        inv[t.0] = Some(h);
        stack.push((g1.mate(h), g2.mate(t)));
        let turn = if preserving { g2.next_ccw(t) } else { g2.prev_ccw(t) };
        stack.push((g1.next_ccw(h), turn));
    }
    map.into_iter().collect()
}

/// Family ranges used to constrain the cycle correspondence: shared family
/// structure when both fibrations have it, otherwise position-by-position.
fn family_blocks(lf1: &LefschetzFibration, lf2: &LefschetzFibration) -> Vec<(std::ops::Range<usize>, bool)> {
    match (lf1.families(), lf2.families()) {
        (Some(f1), Some(f2)) if f1 == f2 => {
            let [a, b, c] = f1;
            // The first family is matched index-by-index, the others as sets.
            a.map(|i| (i..i + 1, false)).chain([(b, true), (c, true)]).collect()
        }
        _ => (0..lf1.cycles().len()).map(|i| (i..i + 1, false)).collect(),
    }
}

fn match_cycles(lf1: &LefschetzFibration, lf2: &LefschetzFibration, map: &[HalfEdgeId]) -> Result<Vec<usize>, String> {
    let g2 = lf2.fiber();
    let mut target = vec![usize::MAX; lf1.cycles().len()];
    for (block, free) in family_blocks(lf1, lf2) {
        let mut used = vec![false; lf2.cycles().len()];
        for i in block.clone() {
            let image: Vec<HalfEdgeId> = lf1.cycles()[i].walk().iter().map(|h| map[h.0]).collect();
            let candidates: Vec<usize> = if free { block.clone().collect() } else { vec![i] };
            let found = candidates
                .into_iter()
                .find(|&j| !used[j] && lf2.cycles()[j].same_unoriented_cycle(g2, &image))
                .ok_or_else(|| format!("image of {} is not a cycle of the target", lf1.cycles()[i].name()))?;
            used[found] = true;
            target[i] = found;
        }
    }
    Ok(target)
}

fn image_curves(
    lf1: &LefschetzFibration,
    lf2: &LefschetzFibration,
    map: &[HalfEdgeId],
    range: std::ops::Range<usize>,
) -> Result<Vec<CurveOnSurface>, String> {
    lf1.cycles()[range]
        .iter()
        .map(|c| {
            let walk = c.walk().iter().map(|h| map[h.0]).collect();
            CurveOnSurface::new(lf2.fiber(), c.name(), walk).map_err(|e| e.to_string())
        })
        .collect()
}

/// Resolving the images of the first two families (turning left in the
/// target when the map preserves orientation, right otherwise) must give the
/// images of the third family.
fn check_surgery(
    lf1: &LefschetzFibration,
    lf2: &LefschetzFibration,
    map: &[HalfEdgeId],
    preserving: bool,
) -> Result<(), String> {
    let Some([a, b, c]) = lf1.families() else { return Ok(()) };
    let surface = lf2.surface();
    let (fa, fb, fc) = (
        image_curves(lf1, lf2, map, a)?,
        image_curves(lf1, lf2, map, b)?,
        image_curves(lf1, lf2, map, c)?,
    );
    let out = if preserving {
        simultaneous_surgery(&surface, &fa, &fb)
    } else {
        simultaneous_surgery(&surface, &fb, &fa)
    }
    .map_err(|e| e.to_string())?;
    let g2 = lf2.fiber();
    if out.len() == fc.len()
        && fc
            .iter()
            .all(|x| out.iter().any(|o| o.same_unoriented_cycle(g2, x.walk())))
    {
        Ok(())
    } else {
        Err("resolution of the image cores differs from the image of the third family".into())
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

fn inverse_twist(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    // T = I + N with N² = 0 (N = c·⟨-,c⟩ and ⟨c,c⟩ = 0), so T⁻¹ = 2I − T.
    m.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &x)| if i == j { 2 - x } else { -x })
                .collect()
        })
        .collect()
}

/// `φ_* ∘ T_c = T_{φc}^{±1} ∘ φ_*` on first homology for every cycle, the
/// exponent being −1 when `φ` reverses orientation.
fn check_intertwining(
    lf1: &LefschetzFibration,
    lf2: &LefschetzFibration,
    map: &[HalfEdgeId],
    target: &[usize],
    preserving: bool,
) -> Result<(), String> {
    let (s1, s2): (OrientedSurface, OrientedSurface) = (lf1.surface(), lf2.surface());
    let (n1, n2) = (s1.rank(), s2.rank());
    if n1 != n2 {
        return Err("first homology ranks differ".into());
    }
    // Column j: image of basis cycle j.
    let mut phi = vec![vec![0i64; n1]; n2];
    for j in 0..n1 {
        let cyc = s1.basis().fundamental_cycle(s1.graph(), j);
        let img: Vec<HalfEdgeId> = cyc.iter().map(|h| map[h.0]).collect();
        for (i, &x) in s2.class_of_darts(&img).coeffs().iter().enumerate() {
            phi[i][j] = x;
        }
    }
    for (i, c) in lf1.cycles().iter().enumerate() {
        let t1 = s1.twist_matrix(c).map_err(|e| e.to_string())?;
        let mut t2 = s2.twist_matrix(&lf2.cycles()[target[i]]).map_err(|e| e.to_string())?;
        if !preserving {
            t2 = inverse_twist(&t2);
        }
        if mat_mul(&phi, &t1) != mat_mul(&t2, &phi) {
            return Err(format!("twist along {} is not intertwined", c.name()));
        }
    }
    Ok(())
}

fn fiber_summary(lf: &LefschetzFibration) -> FiberSummary {
    let inv = surface_invariants(lf.fiber());
    FiberSummary {
        chi: inv.chi,
        b: inv.boundary,
        h: inv.genus,
    }
}

/// Run every check on a proposed half-edge map `lf1 → lf2`.
pub fn verify_isomorphism(
    lf1: &LefschetzFibration,
    lf2: &LefschetzFibration,
    dart_map: &[HalfEdgeId],
    preserving: bool,
) -> Result<FibrationIso, (IsoStage, String)> {
    check_ribbon_map(lf1.fiber(), lf2.fiber(), dart_map, preserving).map_err(|e| (IsoStage::RibbonMap, e))?;
    if lf1.cycles().len() != lf2.cycles().len() {
        return Err((IsoStage::CycleCorrespondence, "cycle counts differ".into()));
    }
    let target = match_cycles(lf1, lf2, dart_map).map_err(|e| (IsoStage::CycleCorrespondence, e))?;
    check_surgery(lf1, lf2, dart_map, preserving).map_err(|e| (IsoStage::SurgeryCompatibility, e))?;
    check_intertwining(lf1, lf2, dart_map, &target, preserving).map_err(|e| (IsoStage::MonodromyIntertwining, e))?;
    let g2 = lf2.fiber();
    let cycle_map = lf1
        .cycles()
        .iter()
        .zip(&target)
        .map(|(c, &j)| {
            let t = &lf2.cycles()[j];
            let image: Vec<HalfEdgeId> = c.walk().iter().map(|h| dart_map[h.0]).collect();
            CyclePairing {
                source: c.name().to_string(),
                target: t.name().to_string(),
                reversed: !t.same_cycle(&image) && t.same_unoriented_cycle(g2, &image),
            }
        })
        .collect();
    Ok(FibrationIso {
        dart_map: dart_map.to_vec(),
        orientation_preserving: preserving,
        cycle_map,
    })
}

/// Search for an isomorphism `lf1 → lf2`. Orientation-preserving candidates
/// are tried before reversing ones; the first success in that fixed order
/// is returned, so the answer is deterministic despite the parallel search.
pub fn find_isomorphism(
    lf1: &LefschetzFibration,
    lf2: &LefschetzFibration,
) -> Result<FibrationIso, (IsoStage, String)> {
    let (s1, s2) = (fiber_summary(lf1), fiber_summary(lf2));
    let (g1, g2) = (lf1.fiber(), lf2.fiber());
    if s1 != s2 || lf1.cycles().len() != lf2.cycles().len() || g1.num_half_edges() != g2.num_half_edges() {
        return Err((
            IsoStage::FiberInvariants,
            format!(
                "(chi, b, h, cycles) = ({}, {}, {:?}, {}) vs ({}, {}, {:?}, {})",
                s1.chi,
                s1.b,
                s1.h,
                lf1.cycles().len(),
                s2.chi,
                s2.b,
                s2.h,
                lf2.cycles().len()
            ),
        ));
    }
    if g1.num_half_edges() == 0 {
        return verify_isomorphism(lf1, lf2, &[], true);
    }
    // The first cycle must go to the first cycle, so its first dart can only
    // land on a dart of the target's first cycle (in either direction).
    let (seed, targets): (HalfEdgeId, Vec<HalfEdgeId>) = match (lf1.cycles().first(), lf2.cycles().first()) {
        (Some(c1), Some(c2)) => (c1.walk()[0], c2.walk().iter().flat_map(|&h| [h, g2.mate(h)]).collect()),
        _ => (HalfEdgeId(0), (0..g2.num_half_edges()).map(HalfEdgeId).collect()),
    };
    let candidates: Vec<(bool, HalfEdgeId)> = [true, false]
        .into_iter()
        .flat_map(|p| targets.iter().map(move |&t| (p, t)))
        .collect();
    // Cheap stages for every candidate in parallel; the expensive checks then
    // run in candidate order on the survivors.
    let screened: Vec<Result<Vec<HalfEdgeId>, (IsoStage, String)>> = candidates
        .par_iter()
        .map(|&(preserving, t)| {
            let map = propagate(g1, g2, seed, t, preserving).ok_or_else(|| {
                (
                    IsoStage::RibbonMap,
                    "no ribbon-graph isomorphism extends the seed".to_string(),
                )
            })?;
            match_cycles(lf1, lf2, &map).map_err(|e| (IsoStage::CycleCorrespondence, e))?;
            Ok(map)
        })
        .collect();
    let mut best: Option<(IsoStage, String)> = None;
    for (r, &(preserving, _)) in screened.into_iter().zip(&candidates) {
        let e = match r.and_then(|map| verify_isomorphism(lf1, lf2, &map, preserving)) {
            Ok(iso) => return Ok(iso),
            Err(e) => e,
        };
        if best.as_ref().is_none_or(|b| e.0 > b.0) {
            best = Some(e);
        }
    }
    Err(best.expect("at least one candidate"))
}

/// Which fibration was compared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Side {
    pub construction: Construction,
    pub genus: Option<u32>,
}

impl Side {
    fn of(lf: &LefschetzFibration) -> Self {
        Side {
            construction: lf.construction(),
            genus: lf.genus(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsoCertificate {
    pub schema: String,
    /// Genus parameter of the left-hand fibration.
    pub genus: Option<u32>,
    pub left: Side,
    pub right: Side,
    pub found: bool,
    pub orientation_preserving: Option<bool>,
    /// `[source, target]` cycle names in source word order.
    pub cycle_map: Vec<[String; 2]>,
    pub checks: Vec<Check>,
    pub reason: Option<String>,
}

impl IsoCertificate {
    pub fn all_pass(&self) -> bool {
        self.found && self.checks.iter().all(|c| c.pass)
    }
}

/// Search for an isomorphism and package the outcome with named checks.
pub fn compare(lf1: &LefschetzFibration, lf2: &LefschetzFibration) -> (Option<FibrationIso>, IsoCertificate) {
    let mut checks = vec![Check::new(
        "fiber_invariants",
        serde_json::to_value(fiber_summary(lf2)).expect("serializable"),
        serde_json::to_value(fiber_summary(lf1)).expect("serializable"),
    )];
    if let (Ok(p1), Ok(p2)) = (extract_plumbing_pattern(lf1), extract_plumbing_pattern(lf2)) {
        checks.push(Check::new(
            "pattern_relabeling",
            json!(true),
            json!(p1.relabeling_to(&p2).is_some()),
        ));
    }
    let outcome = find_isomorphism(lf1, lf2);
    let stages = [
        IsoStage::RibbonMap,
        IsoStage::CycleCorrespondence,
        IsoStage::SurgeryCompatibility,
        IsoStage::MonodromyIntertwining,
    ];
    let (iso, reason) = match outcome {
        Ok(iso) => {
            for s in stages {
                checks.push(Check::new(s.check_name(), json!(true), json!(true)));
            }
            (Some(iso), None)
        }
        Err((stage, why)) => {
            for s in stages.into_iter().filter(|&s| s <= stage) {
                checks.push(Check::new(s.check_name(), json!(true), json!(s < stage)));
            }
            (None, Some(format!("{}: {why}", stage.check_name())))
        }
    };
    let cert = IsoCertificate {
        schema: ISO_SCHEMA.to_string(),
        genus: lf1.genus(),
        left: Side::of(lf1),
        right: Side::of(lf2),
        found: iso.is_some(),
        orientation_preserving: iso.as_ref().map(|i| i.orientation_preserving),
        cycle_map: iso
            .as_ref()
            .map(|i| {
                i.cycle_map
                    .iter()
                    .map(|p| [p.source.clone(), p.target.clone()])
                    .collect()
            })
            .unwrap_or_default(),
        checks,
        reason,
    };
    (iso, cert)
}
