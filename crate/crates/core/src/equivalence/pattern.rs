use std::collections::HashMap;

use itertools::Itertools;

use super::EquivalenceError;
use crate::fibration::{LefschetzFibration, PlumbingPattern, Square};
use crate::surface::{local_crossing_sign, CurveOnSurface, Passage, RibbonGraph, VertexId};

/// Passages of a curve keyed by vertex, in walk order starting at the vertex
/// where the walk starts. Fails if the curve passes a vertex twice.
fn passages_by_vertex(graph: &RibbonGraph, c: &CurveOnSurface) -> Result<Vec<(VertexId, Passage)>, EquivalenceError> {
    let ps = c.passages(graph);
    let n = ps.len();
    // Passage i precedes dart i+1; start from the one preceding dart 0.
    let ordered: Vec<(VertexId, Passage)> = (0..n).map(|k| ps[(k + n - 1) % n]).map(|p| (p.vertex, p)).collect();
    if !ordered.iter().map(|(v, _)| v).all_unique() {
        return Err(EquivalenceError::NotPlumbed(format!(
            "{} passes through a vertex twice",
            c.name()
        )));
    }
    Ok(ordered)
}

/// The annulus-plumbing pattern formed by regular neighborhoods of the first
/// two cycle families: one square per crossing of a first-family cycle
/// (horizontal) with a second-family cycle (vertical), signed by the local
/// crossing sign, with square orders read along each core.
pub fn extract_plumbing_pattern(lf: &LefschetzFibration) -> Result<PlumbingPattern, EquivalenceError> {
    let [first, second, _] = lf
        .families()
        .ok_or_else(|| EquivalenceError::NotPlumbed("fibration has no family structure".into()))?;
    let graph = lf.fiber();
    let cycles = lf.cycles();
    let collect = |range: std::ops::Range<usize>| -> Result<Vec<Vec<(VertexId, Passage)>>, EquivalenceError> {
        let family: Vec<_> = cycles[range]
            .iter()
            .map(|c| passages_by_vertex(graph, c))
            .try_collect()?;
        if !family.iter().flatten().map(|(v, _)| v).all_unique() {
            return Err(EquivalenceError::NotPlumbed("cycles of one family meet".into()));
        }
        Ok(family)
    };
    let horizontal = collect(first)?;
    let vertical = collect(second)?;
    let mut vertical_at: HashMap<VertexId, (usize, Passage)> = HashMap::new();
    for (j, ps) in vertical.iter().enumerate() {
        for &(v, p) in ps {
            vertical_at.insert(v, (j, p));
        }
    }
    let mut squares = Vec::new();
    let mut square_at: HashMap<VertexId, usize> = HashMap::new();
    let mut horizontal_order = Vec::new();
    for (i, ps) in horizontal.iter().enumerate() {
        let mut order = Vec::new();
        for &(v, p) in ps {
            let Some(&(j, q)) = vertical_at.get(&v) else { continue };
            let sign = local_crossing_sign(graph, &p, &q)
                .ok_or_else(|| EquivalenceError::NotPlumbed(format!("cycles touch without crossing at {v}")))?;
            square_at.insert(v, squares.len());
            order.push(squares.len());
            squares.push(Square {
                horizontal: i,
                vertical: j,
                sign: sign as i8,
            });
        }
        horizontal_order.push(order);
    }
    let vertical_order = vertical
        .iter()
        .map(|ps| ps.iter().filter_map(|(v, _)| square_at.get(v).copied()).collect())
        .collect();
    let pattern = PlumbingPattern {
        horizontal: (1..=horizontal.len()).map(|i| format!("A{i}")).collect(),
        vertical: (1..=vertical.len()).map(|j| format!("B{j}")).collect(),
        squares,
        horizontal_order,
        vertical_order,
    };
    pattern
        .validate()
        .map_err(|e| EquivalenceError::NotPlumbed(e.to_string()))?;
    Ok(pattern)
}

/// A relabeling carrying one plumbing pattern onto another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternMatch {
    pub horizontal: Vec<usize>,
    pub vertical: Vec<usize>,
    pub squares: Vec<usize>,
    /// Signs are all negated (the identification reverses orientation).
    pub mirror: bool,
}

/// Ways to lay cyclic sequence `src` onto `dst`: `(offset, reflected)` with
/// `src[k] ↦ dst[offset ± k]`.
fn alignments(len: usize) -> impl Iterator<Item = (usize, bool)> {
    (0..len).flat_map(|r| [(r, false), (r, true)])
}

fn aligned(dst: &[usize], offset: usize, reflected: bool, k: usize) -> usize {
    let m = dst.len();
    if reflected {
        dst[(offset + m - k % m) % m]
    } else {
        dst[(offset + k) % m]
    }
}

impl PlumbingPattern {
    /// Find annulus and square relabelings (each core may be re-based and
    /// reversed; signs follow the core orientations, possibly all mirrored)
    /// carrying `self` onto `other`.
    pub fn relabeling_to(&self, other: &PlumbingPattern) -> Option<PatternMatch> {
        if self.horizontal.len() != other.horizontal.len()
            || self.vertical.len() != other.vertical.len()
            || self.squares.len() != other.squares.len()
        {
            return None;
        }
        (0..self.horizontal.len())
            .permutations(self.horizontal.len())
            .find_map(|perm| {
                let mut state = Search {
                    src: self,
                    dst: other,
                    square: vec![None; self.squares.len()],
                    vertical: vec![None; self.vertical.len()],
                    horizontal_flip: vec![false; self.horizontal.len()],
                };
                if state.assign(&perm, 0) {
                    state.finish(&perm)
                } else {
                    None
                }
            })
    }
}

struct Search<'a> {
    src: &'a PlumbingPattern,
    dst: &'a PlumbingPattern,
    square: Vec<Option<usize>>,
    vertical: Vec<Option<usize>>,
    horizontal_flip: Vec<bool>,
}

impl Search<'_> {
    fn assign(&mut self, perm: &[usize], h: usize) -> bool {
        if h == perm.len() {
            return true;
        }
        let src = &self.src.horizontal_order[h];
        let dst = &self.dst.horizontal_order[perm[h]];
        if src.len() != dst.len() {
            return false;
        }
        for (offset, reflected) in alignments(src.len()) {
            let saved = (self.square.clone(), self.vertical.clone());
            let ok = src.iter().enumerate().all(|(k, &s)| {
                let t = aligned(dst, offset, reflected, k);
                let (vs, vt) = (self.src.squares[s].vertical, self.dst.squares[t].vertical);
                match self.vertical[vs] {
                    Some(x) if x != vt => false,
                    _ => {
                        self.vertical[vs] = Some(vt);
                        self.square[s] = Some(t);
                        true
                    }
                }
            });
            if ok && self.vertical_is_injective() {
                self.horizontal_flip[h] = reflected;
                if self.assign(perm, h + 1) {
                    return true;
                }
            }
            (self.square, self.vertical) = saved;
        }
        false
    }

    fn vertical_is_injective(&self) -> bool {
        self.vertical.iter().flatten().all_unique()
    }

    fn finish(&self, perm: &[usize]) -> Option<PatternMatch> {
        let square: Vec<usize> = self.square.iter().copied().collect::<Option<_>>()?;
        let vertical: Vec<usize> = self.vertical.iter().copied().collect::<Option<_>>()?;
        if !square.iter().all_unique() {
            return None;
        }
        'mirror: for mirror in [false, true] {
            for (v, src) in self.src.vertical_order.iter().enumerate() {
                let dst = &self.dst.vertical_order[vertical[v]];
                let image: Vec<usize> = src.iter().map(|&s| square[s]).collect();
                let fits = |reflected: bool| {
                    alignments(dst.len()).any(|(o, r)| {
                        r == reflected && image.iter().enumerate().all(|(k, &t)| aligned(dst, o, r, k) == t)
                    }) && src.iter().all(|&s| {
                        let flips = self.horizontal_flip[self.src.squares[s].horizontal] ^ reflected ^ mirror;
                        let want = if flips {
                            -self.src.squares[s].sign
                        } else {
                            self.src.squares[s].sign
                        };
                        self.dst.squares[square[s]].sign == want
                    })
                };
                if !(fits(false) || fits(true)) {
                    continue 'mirror;
                }
            }
            return Some(PatternMatch {
                horizontal: perm.to_vec(),
                vertical,
                squares: square,
                mirror,
            });
        }
        None
    }
}
