//! Plain-text divide format.
//!
//! ```text
//! # comments start with '#'
//! genus 1
//! 0: 1 4 3 6
//! 1: 5 8 7 10
//! ```
//!
//! One line per double point, `id: h0 h1 h2 h3` listing its half-edges
//! counterclockwise; ids must be `0, 1, 2, …` in order. Half-edges `2k` and
//! `2k+1` are the two ends of edge `k`, so no separate edge list is needed.

use std::fmt::Write as _;

use super::{Divide, DivideError};
use crate::surface::{Edge, HalfEdgeId, RibbonGraph, VertexId};

pub fn parse_divide_text(src: &str) -> Result<Divide, DivideError> {
    let mut genus = None;
    let mut rotation: Vec<Vec<HalfEdgeId>> = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line_no = i + 1;
        let err = |why: String| DivideError::Parse { line: line_no, why };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("genus") {
            if genus.is_some() {
                return Err(err("genus given twice".into()));
            }
            genus = Some(rest.trim().parse::<u32>().map_err(|e| err(format!("bad genus: {e}")))?);
            continue;
        }
        let (id, hs) = line
            .split_once(':')
            .ok_or_else(|| err("expected `id: h0 h1 h2 h3`".into()))?;
        let id: usize = id.trim().parse().map_err(|e| err(format!("bad vertex id: {e}")))?;
        if id != rotation.len() {
            return Err(err(format!("expected vertex id {}, found {id}", rotation.len())));
        }
        let hs = hs
            .split_whitespace()
            .map(|t| t.parse::<usize>().map(HalfEdgeId))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| err(format!("bad half-edge id: {e}")))?;
        if hs.len() != 4 {
            return Err(err(format!("expected 4 half-edges, found {}", hs.len())));
        }
        rotation.push(hs);
    }
    let genus = genus.ok_or(DivideError::Parse {
        line: 0,
        why: "missing `genus` line".into(),
    })?;
    let n_half = 4 * rotation.len();
    let edges = (0..n_half / 2).map(|k| Edge::new(2 * k, 2 * k + 1, false)).collect();
    Divide::new(genus, RibbonGraph::new(rotation, edges)?)
}

/// Inverse of [`parse_divide_text`] for divides whose edge `k` is made of
/// half-edges `2k`, `2k+1` (true for every divide produced by the parser or
/// by [`super::standard_divide`]).
pub fn to_divide_text(d: &Divide) -> Result<String, DivideError> {
    let g = d.graph();
    if g.edges()
        .iter()
        .enumerate()
        .any(|(k, e)| e.halves != [HalfEdgeId(2 * k), HalfEdgeId(2 * k + 1)])
    {
        return Err(DivideError::Structure(
            "text format needs edge k = half-edges (2k, 2k+1)".into(),
        ));
    }
    let mut s = format!("genus {}\n", d.ambient_genus());
    for v in 0..g.num_vertices() {
        let r: Vec<String> = g.rotation(VertexId(v)).iter().map(|h| h.0.to_string()).collect();
        writeln!(s, "{v}: {}", r.join(" ")).unwrap();
    }
    Ok(s)
}
