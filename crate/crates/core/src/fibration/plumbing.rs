use serde::{Deserialize, Serialize};

use super::FibrationError;
use crate::surface::{CurveOnSurface, Edge, HalfEdgeId, RibbonGraph};

/// One plumbing square: where a horizontal annulus crosses a vertical one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Square {
    pub horizontal: usize,
    pub vertical: usize,
    /// `+1` when the vertical core crosses the horizontal core from its
    /// right to its left in the fiber orientation.
    pub sign: i8,
}

/// Annuli plumbed along squares: the horizontal annuli `A_i`, vertical
/// annuli `B_j`, and the cyclic order of squares along each core.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlumbingPattern {
    pub horizontal: Vec<String>,
    pub vertical: Vec<String>,
    pub squares: Vec<Square>,
    pub horizontal_order: Vec<Vec<usize>>,
    pub vertical_order: Vec<Vec<usize>>,
}

impl PlumbingPattern {
    /// Structural validity: every square appears exactly once on its own
    /// horizontal and once on its own vertical annulus, signs are ±1, and
    /// no annulus is empty.
    pub fn validate(&self) -> Result<(), FibrationError> {
        let bad = |s: String| Err(FibrationError::Pattern(s));
        if self.horizontal_order.len() != self.horizontal.len() || self.vertical_order.len() != self.vertical.len() {
            return bad("one square order per annulus is required".into());
        }
        let mut seen_h = vec![false; self.squares.len()];
        let mut seen_v = vec![false; self.squares.len()];
        for (side, orders, seen) in [
            (0, &self.horizontal_order, &mut seen_h),
            (1, &self.vertical_order, &mut seen_v),
        ] {
            for (k, order) in orders.iter().enumerate() {
                if order.is_empty() {
                    return bad(format!("annulus {k} carries no square"));
                }
                for &s in order {
                    let Some(sq) = self.squares.get(s) else {
                        return bad(format!("unknown square {s}"));
                    };
                    let owner = if side == 0 { sq.horizontal } else { sq.vertical };
                    if owner != k || seen[s] {
                        return bad(format!("square {s} misplaced on annulus {k}"));
                    }
                    seen[s] = true;
                }
            }
        }
        if seen_h.iter().chain(&seen_v).any(|&x| !x) {
            return bad("every square needs one horizontal and one vertical annulus".into());
        }
        if self.squares.iter().any(|s| s.sign != 1 && s.sign != -1) {
            return bad("plumbing signs must be ±1".into());
        }
        Ok(())
    }

    /// Does the pattern have the shape of the Johns plumbing: two horizontal
    /// annuli, each vertical annulus crossing each horizontal one exactly once?
    pub fn is_johns_shaped(&self) -> bool {
        self.horizontal.len() == 2
            && self.vertical_order.iter().all(|o| {
                let mut hs: Vec<usize> = o.iter().map(|&s| self.squares[s].horizontal).collect();
                hs.sort_unstable();
                hs == [0, 1]
            })
    }
}

/// The plumbing of `2g+2` vertical annuli onto two horizontal ones. Square
/// `i·n + j` is where `A_{i+1}` meets `B_{j+1}`; each `A_i` meets
/// `B_1, …, B_n` in order and each `B_j` meets `A_1` then `A_2`. All squares
/// carry the same sign.
pub fn johns_pattern(g: u32) -> PlumbingPattern {
    let n = 2 * g as usize + 2;
    PlumbingPattern {
        horizontal: vec!["A1".into(), "A2".into()],
        vertical: (1..=n).map(|j| format!("B{j}")).collect(),
        squares: (0..2)
            .flat_map(|i| {
                (0..n).map(move |j| Square {
                    horizontal: i,
                    vertical: j,
                    sign: 1,
                })
            })
            .collect(),
        horizontal_order: (0..2).map(|i| (0..n).map(|j| i * n + j).collect()).collect(),
        vertical_order: (0..n).map(|j| vec![j, n + j]).collect(),
    }
}

/// Realized plumbing: the fiber with the horizontal and vertical cores.
#[derive(Clone, Debug)]
pub struct PlumbedSurface {
    pub graph: RibbonGraph,
    pub horizontal: Vec<CurveOnSurface>,
    pub vertical: Vec<CurveOnSurface>,
}

/// One 4-valent vertex per square with half-edges east `4s`, north
/// `4s+1`, west `4s+2`, south `4s+3`, ordered `[E, N, W, S]` for sign `+1`
/// and `[E, S, W, N]` for sign `−1`. Horizontal edges join the east side of
/// a square to the west side of the next square along its annulus; vertical
/// edges join north to south. The cores run east and north.
pub fn realize_plumbing(p: &PlumbingPattern) -> Result<PlumbedSurface, FibrationError> {
    p.validate()?;
    let east = |s: usize| HalfEdgeId(4 * s);
    let north = |s: usize| HalfEdgeId(4 * s + 1);
    let west = |s: usize| HalfEdgeId(4 * s + 2);
    let south = |s: usize| HalfEdgeId(4 * s + 3);
    let rotation = p
        .squares
        .iter()
        .enumerate()
        .map(|(s, sq)| {
            if sq.sign > 0 {
                vec![east(s), north(s), west(s), south(s)]
            } else {
                vec![east(s), south(s), west(s), north(s)]
            }
        })
        .collect();
    let mut edges = Vec::new();
    for order in &p.horizontal_order {
        for (t, &s) in order.iter().enumerate() {
            let next = order[(t + 1) % order.len()];
            edges.push(Edge::new(east(s).0, west(next).0, false));
        }
    }
    for order in &p.vertical_order {
        for (t, &s) in order.iter().enumerate() {
            let next = order[(t + 1) % order.len()];
            edges.push(Edge::new(north(s).0, south(next).0, false));
        }
    }
    let graph = RibbonGraph::new(rotation, edges)?;
    let cores = |orders: &[Vec<usize>], names: &[String], dart: &dyn Fn(usize) -> HalfEdgeId| {
        orders
            .iter()
            .zip(names)
            .map(|(o, name)| CurveOnSurface::new(&graph, name.clone(), o.iter().map(|&s| dart(s)).collect()))
            .collect::<Result<Vec<_>, _>>()
    };
    let horizontal = cores(&p.horizontal_order, &p.horizontal, &east)?;
    let vertical = cores(&p.vertical_order, &p.vertical, &north)?;
    if !graph.is_orientable() {
        return Err(FibrationError::BuilderDefect("plumbing is not orientable".into()));
    }
    Ok(PlumbedSurface {
        graph,
        horizontal,
        vertical,
    })
}
