//! Random connected ribbon graphs and closed curves for property tests.
#![allow(dead_code)]

use lf_forge::surface::{CurveOnSurface, Edge, HalfEdgeId, HomologyBasis, RibbonGraph, VertexId};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

pub fn hs(ids: &[usize]) -> Vec<HalfEdgeId> {
    ids.iter().copied().map(HalfEdgeId).collect()
}

/// A connected, untwisted ribbon graph with at least one cycle: a random
/// spanning tree on `1..=max_vertices` vertices plus `1..=max_extra` extra
/// edges (loops and multi-edges allowed), with shuffled rotations. Edge `k`
/// has half-edges `2k` and `2k+1`.
pub fn random_ribbon_graph(rng: &mut impl Rng, max_vertices: usize, max_extra: usize) -> RibbonGraph {
    let nv = rng.random_range(1..=max_vertices);
    let mut ends: Vec<(usize, usize)> = (1..nv).map(|v| (rng.random_range(0..v), v)).collect();
    for _ in 0..rng.random_range(1..=max_extra) {
        ends.push((rng.random_range(0..nv), rng.random_range(0..nv)));
    }
    let mut rotation = vec![Vec::new(); nv];
    for (k, &(u, w)) in ends.iter().enumerate() {
        rotation[u].push(HalfEdgeId(2 * k));
        rotation[w].push(HalfEdgeId(2 * k + 1));
    }
    for r in &mut rotation {
        r.shuffle(rng);
    }
    let edges = (0..ends.len()).map(|k| Edge::new(2 * k, 2 * k + 1, false)).collect();
    RibbonGraph::new(rotation, edges).expect("valid random ribbon graph")
}

/// A random edge-simple closed walk, found by a self-avoiding (in edges)
/// random walk that may stop whenever it is back at its start vertex.
pub fn random_closed_walk(rng: &mut impl Rng, g: &RibbonGraph) -> Vec<HalfEdgeId> {
    for _ in 0..64 {
        let d0 = HalfEdgeId(rng.random_range(0..g.num_half_edges()));
        let start: VertexId = g.vertex_of(d0);
        let mut walk = vec![d0];
        let mut used = vec![false; g.num_edges()];
        used[g.edge_of(d0).0] = true;
        loop {
            let v = g.head(*walk.last().unwrap());
            if v == start && rng.random_bool(0.5) {
                return walk;
            }
            let options: Vec<HalfEdgeId> = g
                .rotation(v)
                .iter()
                .copied()
                .filter(|h| !used[g.edge_of(*h).0])
                .collect();
            match options.choose(rng) {
                Some(&h) => {
                    used[g.edge_of(h).0] = true;
                    walk.push(h);
                }
                None if v == start => return walk,
                None => break,
            }
        }
    }
    let basis = HomologyBasis::new(g).expect("connected");
    basis.fundamental_cycle(g, rng.random_range(0..basis.rank()))
}

pub fn random_curve(rng: &mut impl Rng, g: &RibbonGraph, name: &str) -> CurveOnSurface {
    let walk = random_closed_walk(rng, g);
    CurveOnSurface::new(g, name, walk).expect("edge-simple closed walk")
}

/// One vertex, two edges interleaved: the once-punctured torus.
pub fn punctured_torus() -> RibbonGraph {
    RibbonGraph::new(
        vec![hs(&[0, 2, 1, 3])],
        vec![Edge::new(0, 1, false), Edge::new(2, 3, false)],
    )
    .unwrap()
}

pub fn annulus() -> RibbonGraph {
    RibbonGraph::new(vec![hs(&[0, 1])], vec![Edge::new(0, 1, false)]).unwrap()
}
