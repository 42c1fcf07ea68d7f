use std::collections::hash_map::DefaultHasher;
use std::collections::VecDeque;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};

use super::curve::{walk_pairing, CurveOnSurface};
use super::ribbon::{EdgeId, HalfEdgeId, RibbonGraph, VertexId};
use super::SurfaceError;

/// Co-tree basis of `H₁` of a connected ribbon graph.
///
/// The spanning tree is grown breadth-first from vertex 0, scanning each
/// vertex's incident edges in increasing id order; co-tree edges in
/// increasing id order form the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyBasis {
    cotree: Vec<EdgeId>,
    coordinate: Vec<Option<usize>>,
    /// Dart from each non-root vertex to its tree parent.
    parent_dart: Vec<Option<HalfEdgeId>>,
    depth: Vec<usize>,
    fingerprint: u64,
}

impl HomologyBasis {
    pub fn new(graph: &RibbonGraph) -> Result<Self, SurfaceError> {
        if !graph.is_connected() {
            return Err(SurfaceError::Disconnected);
        }
        let nv = graph.num_vertices();
        let mut in_tree = vec![false; graph.num_edges()];
        let mut parent_dart = vec![None; nv];
        let mut depth = vec![usize::MAX; nv];
        depth[0] = 0;
        let mut queue = VecDeque::from([VertexId(0)]);
        while let Some(v) = queue.pop_front() {
            let mut incident: Vec<HalfEdgeId> = graph.rotation(v).to_vec();
            incident.sort_by_key(|&h| (graph.edge_of(h), h));
            for h in incident {
                let w = graph.head(h);
                if depth[w.0] == usize::MAX {
                    depth[w.0] = depth[v.0] + 1;
                    parent_dart[w.0] = Some(graph.mate(h));
                    in_tree[graph.edge_of(h).0] = true;
                    queue.push_back(w);
                }
            }
        }
        let cotree: Vec<EdgeId> = (0..graph.num_edges()).filter(|&e| !in_tree[e]).map(EdgeId).collect();
        let mut coordinate = vec![None; graph.num_edges()];
        for (i, e) in cotree.iter().enumerate() {
            coordinate[e.0] = Some(i);
        }
        let mut hasher = DefaultHasher::new();
        graph.hash(&mut hasher);
        Ok(HomologyBasis {
            cotree,
            coordinate,
            parent_dart,
            depth,
            fingerprint: hasher.finish(),
        })
    }

    pub fn rank(&self) -> usize {
        self.cotree.len()
    }

    pub fn cotree_edges(&self) -> &[EdgeId] {
        &self.cotree
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn zero(&self) -> HomologyClass {
        HomologyClass {
            coeffs: vec![0; self.rank()],
            basis: self.fingerprint,
        }
    }

    pub fn class_from_coeffs(&self, coeffs: Vec<i64>) -> Result<HomologyClass, SurfaceError> {
        if coeffs.len() != self.rank() {
            return Err(SurfaceError::HostMismatch);
        }
        Ok(HomologyClass {
            coeffs,
            basis: self.fingerprint,
        })
    }

    /// Signed co-tree edge count of a dart sequence.
    pub fn class_of_darts(&self, graph: &RibbonGraph, darts: &[HalfEdgeId]) -> HomologyClass {
        let mut class = self.zero();
        for &d in darts {
            if let Some(i) = self.coordinate[graph.edge_of(d).0] {
                class.coeffs[i] += graph.dart_sign(d);
            }
        }
        class
    }

    /// Tree path (as darts) from `from` to `to`.
    pub fn tree_path(&self, graph: &RibbonGraph, from: VertexId, to: VertexId) -> Vec<HalfEdgeId> {
        let (mut a, mut b) = (from, to);
        let mut up = Vec::new();
        let mut down = Vec::new();
        while a != b {
            if self.depth[a.0] >= self.depth[b.0] {
                let d = self.parent_dart[a.0].expect("non-root vertex has a parent");
                up.push(d);
                a = graph.head(d);
            } else {
                let d = self.parent_dart[b.0].expect("non-root vertex has a parent");
                down.push(graph.mate(d));
                b = graph.head(d);
            }
        }
        up.extend(down.into_iter().rev());
        up
    }

    /// The simple cycle formed by co-tree edge `cotree_edges()[i]` and the tree.
    pub fn fundamental_cycle(&self, graph: &RibbonGraph, i: usize) -> Vec<HalfEdgeId> {
        let d = graph.edge(self.cotree[i]).halves[0];
        let mut walk = vec![d];
        walk.extend(self.tree_path(graph, graph.head(d), graph.vertex_of(d)));
        walk
    }
}

/// An integral first-homology class in co-tree coordinates, tagged with the
/// basis it was computed in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    coeffs: Vec<i64>,
    basis: u64,
}

impl HomologyClass {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn basis_fingerprint(&self) -> u64 {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i64) -> HomologyClass {
        HomologyClass {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
            basis: self.basis,
        }
    }

    fn check_same(&self, other: &HomologyClass) {
        assert_eq!(self.basis, other.basis, "homology classes from different bases");
    }
}

impl Add for &HomologyClass {
    type Output = HomologyClass;
    fn add(self, rhs: &HomologyClass) -> HomologyClass {
        self.check_same(rhs);
        HomologyClass {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
            basis: self.basis,
        }
    }
}

impl Sub for &HomologyClass {
    type Output = HomologyClass;
    fn sub(self, rhs: &HomologyClass) -> HomologyClass {
        self + &(-rhs)
    }
}

impl Neg for &HomologyClass {
    type Output = HomologyClass;
    fn neg(self) -> HomologyClass {
        self.scaled(-1)
    }
}

/// A connected orientable surface with its global orientation fixed, its
/// co-tree basis and the intersection form on that basis.
///
/// The stored graph is twist-free (see [`RibbonGraph::oriented`]); dart ids
/// agree with the graph it was built from, so curves carry over unchanged.
#[derive(Clone, Debug)]
pub struct OrientedSurface {
    graph: RibbonGraph,
    basis: HomologyBasis,
    form: Vec<Vec<i64>>,
}

impl OrientedSurface {
    pub fn new(graph: &RibbonGraph) -> Result<Self, SurfaceError> {
        let graph = graph.oriented()?;
        let basis = HomologyBasis::new(&graph)?;
        let cycles: Vec<Vec<HalfEdgeId>> = (0..basis.rank()).map(|i| basis.fundamental_cycle(&graph, i)).collect();
        let form = cycles
            .iter()
            .map(|x| cycles.iter().map(|y| walk_pairing(&graph, x, y)).collect())
            .collect();
        Ok(OrientedSurface { graph, basis, form })
    }

    pub fn graph(&self) -> &RibbonGraph {
        &self.graph
    }

    pub fn basis(&self) -> &HomologyBasis {
        &self.basis
    }

    /// Intersection matrix `Q[i][j] = ⟨z_i, z_j⟩` of the fundamental cycles.
    pub fn intersection_matrix(&self) -> &[Vec<i64>] {
        &self.form
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn class_of_darts(&self, darts: &[HalfEdgeId]) -> HomologyClass {
        self.basis.class_of_darts(&self.graph, darts)
    }

    /// Class of a curve; the curve must live on this surface.
    pub fn curve_class(&self, c: &CurveOnSurface) -> Result<HomologyClass, SurfaceError> {
        // Revalidate against this host: ids might come from another graph.
        CurveOnSurface::new(&self.graph, c.name(), c.walk().to_vec())?;
        Ok(self.class_of_darts(c.walk()))
    }

    fn check(&self, x: &HomologyClass) -> Result<(), SurfaceError> {
        if x.basis != self.basis.fingerprint || x.coeffs.len() != self.rank() {
            return Err(SurfaceError::HostMismatch);
        }
        Ok(())
    }

    /// `⟨x, y⟩`, bilinear and antisymmetric.
    pub fn intersection(&self, x: &HomologyClass, y: &HomologyClass) -> Result<i64, SurfaceError> {
        self.check(x)?;
        self.check(y)?;
        let mut total = 0;
        for (i, &xi) in x.coeffs.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.coeffs.iter().enumerate() {
                total += xi * self.form[i][j] * yj;
            }
        }
        Ok(total)
    }

    /// Action of the positive Dehn twist along `c`: `x ↦ x + ⟨x, c⟩ c`.
    pub fn twist_class(&self, c: &CurveOnSurface, x: &HomologyClass) -> Result<HomologyClass, SurfaceError> {
        let cc = self.curve_class(c)?;
        let k = self.intersection(x, &cc)?;
        Ok(x + &cc.scaled(k))
    }

    /// Matrix of the twist action in the co-tree basis (column `j` is the
    /// image of basis vector `j`).
    pub fn twist_matrix(&self, c: &CurveOnSurface) -> Result<Vec<Vec<i64>>, SurfaceError> {
        let n = self.rank();
        let cc = self.curve_class(c)?;
        let mut m = vec![vec![0i64; n]; n];
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let ej = self.basis.class_from_coeffs(e)?;
            let k = self.intersection(&ej, &cc)?;
            for i in 0..n {
                m[i][j] = ej.coeffs[i] + k * cc.coeffs[i];
            }
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::super::ribbon::Edge;
    use super::*;

    fn hs(ids: &[usize]) -> Vec<HalfEdgeId> {
        ids.iter().map(|&i| HalfEdgeId(i)).collect()
    }

    fn torus() -> RibbonGraph {
        RibbonGraph::new(
            vec![hs(&[0, 2, 1, 3])],
            vec![Edge::new(0, 1, false), Edge::new(2, 3, false)],
        )
        .unwrap()
    }

    #[test]
    fn annulus_basis_and_core_class() {
        let g = RibbonGraph::new(vec![hs(&[0, 1])], vec![Edge::new(0, 1, false)]).unwrap();
        let s = OrientedSurface::new(&g).unwrap();
        assert_eq!(s.rank(), 1);
        let core = CurveOnSurface::new(&g, "core", hs(&[0])).unwrap();
        assert_eq!(s.curve_class(&core).unwrap().coeffs(), &[1]);
    }

    #[test]
    fn tree_walks_are_null() {
        // Path graph v0 - v1 with a loop at v1.
        let g = RibbonGraph::new(
            vec![hs(&[0]), hs(&[1, 2, 3])],
            vec![Edge::new(0, 1, false), Edge::new(2, 3, false)],
        )
        .unwrap();
        let b = HomologyBasis::new(&g).unwrap();
        assert_eq!(b.cotree_edges(), &[EdgeId(1)]);
        assert!(b.class_of_darts(&g, &hs(&[0, 1])).is_zero());
    }

    #[test]
    fn torus_form_is_symplectic() {
        let s = OrientedSurface::new(&torus()).unwrap();
        let q = s.intersection_matrix();
        assert_eq!(q[0][0], 0);
        assert_eq!(q[0][1].abs(), 1);
        assert_eq!(q[0][1], -q[1][0]);
    }

    #[test]
    fn twist_on_torus() {
        let g = torus();
        let s = OrientedSurface::new(&g).unwrap();
        let a = CurveOnSurface::new(&g, "a", hs(&[0])).unwrap();
        let b = CurveOnSurface::new(&g, "b", hs(&[2])).unwrap();
        let (ca, cb) = (s.curve_class(&a).unwrap(), s.curve_class(&b).unwrap());
        let tb = s.twist_class(&a, &cb).unwrap();
        let diff = &tb - &cb;
        assert!(diff == ca || diff == -&ca);
        assert_eq!(s.twist_class(&a, &ca).unwrap(), ca);
    }

    #[test]
    fn mirror_negates_form() {
        let g = torus();
        let s = OrientedSurface::new(&g).unwrap();
        let m = OrientedSurface::new(&g.mirrored()).unwrap();
        assert_eq!(s.intersection_matrix()[0][1], -m.intersection_matrix()[0][1]);
    }

    #[test]
    fn host_mismatch_is_reported() {
        let s = OrientedSurface::new(&torus()).unwrap();
        let g = RibbonGraph::new(vec![hs(&[0, 1])], vec![Edge::new(0, 1, false)]).unwrap();
        let other = OrientedSurface::new(&g).unwrap();
        let x = other.basis().zero();
        assert!(matches!(
            s.intersection(&x, &s.basis().zero()),
            Err(SurfaceError::HostMismatch)
        ));
    }

    #[test]
    fn disconnected_rejected() {
        let g = RibbonGraph::new(
            vec![hs(&[0, 1]), hs(&[2, 3])],
            vec![Edge::new(0, 1, false), Edge::new(2, 3, false)],
        )
        .unwrap();
        assert!(matches!(HomologyBasis::new(&g), Err(SurfaceError::Disconnected)));
    }
}
