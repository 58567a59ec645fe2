//! Lattice polytopes with exact hull, face, and lattice-point computations.
//!
//! A [`LatticePolytope`] is stored twice over: once in the caller's ambient
//! coordinates, and once in *intrinsic* coordinates — a full-dimensional copy
//! obtained by choosing a lattice basis of the affine span's saturated
//! direction lattice. Every geometric computation (facets, volume, smoothness,
//! fans) happens intrinsically, so polytopes of lower than full dimension are
//! handled uniformly and all invariants are automatically preserved by affine
//! unimodular maps of the ambient space.
//!
//! Determinism: vertices are sorted lexicographically by ambient coordinates,
//! facets by (normal, offset), and ties anywhere else are broken
//! lexicographically, so identical inputs always produce byte-identical
//! output downstream.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::zlinalg::{
    hermite_normal_form, hyperplane_normal, is_partial_lattice_basis, primitive_vector,
    solve_integer, AffineUnimodularMap, IntMat, IntVec,
};

/// A facet inequality `⟨normal, x⟩ + offset ≥ 0` in intrinsic coordinates,
/// with the inner normal primitive, together with the incident vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: IntVec,
    pub offset: BigInt,
    /// Indices into the vertex list, sorted.
    pub vertices: Vec<usize>,
}

/// A face of a polytope, described by its (sorted) incident vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
}

/// The lattice invariants consumed by the surface and threefold degree
/// formulas and reported by the CLI.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeStats {
    /// Intrinsic dimension n.
    pub dim: usize,
    /// Normalized volume d = n! · vol(P); the degree of the embedding.
    pub degree: BigInt,
    /// Total lattice point count ℓ(P).
    pub lattice_points: BigInt,
    /// Interior lattice points I.
    pub interior_points: BigInt,
    /// Boundary lattice points B.
    pub boundary_points: BigInt,
    /// Vertex count V.
    pub vertex_count: BigInt,
    /// Lattice points lying on edges, E.
    pub edge_points: BigInt,
    /// Sum of the lattice lengths of all edges ("perimeter").
    pub edge_length_sum: BigInt,
    /// Sum of the normalized volumes of all facets S.
    pub facet_volume_sum: BigInt,
}

/// Result of the Delzant smoothness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    /// A vertex (ambient coordinates) with more or fewer edges than dim P.
    NotSimple { vertex: IntVec },
    /// A simple vertex whose primitive edge directions are not a lattice basis.
    NotUnimodular { vertex: IntVec },
}

impl Smoothness {
    pub fn failing_vertex(&self) -> Option<&IntVec> {
        match self {
            Smoothness::Smooth => None,
            Smoothness::NotSimple { vertex } | Smoothness::NotUnimodular { vertex } => {
                Some(vertex)
            }
        }
    }
}

/// A finite set of lattice points, not assumed to be convexly independent.
/// Used for subconfigurations A ⊆ P ∩ Z^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfiguration {
    points: Vec<IntVec>,
    ambient_dim: usize,
}

impl PointConfiguration {
    pub fn new(points: Vec<IntVec>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::input("point configuration is empty"));
        }
        let ambient_dim = points[0].len();
        if points.iter().any(|p| p.len() != ambient_dim) {
            return Err(Error::input("points of mismatched dimension"));
        }
        let set: BTreeSet<IntVec> = points.into_iter().collect();
        Ok(PointConfiguration {
            points: set.into_iter().collect(),
            ambient_dim,
        })
    }

    pub fn points(&self) -> &[IntVec] {
        &self.points
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Convex hull of the configuration.
    pub fn hull(&self) -> Result<LatticePolytope> {
        LatticePolytope::from_vertices(self.points.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    /// Vertices in ambient coordinates, lexicographically sorted.
    verts_ambient: Vec<IntVec>,
    /// The same vertices in intrinsic (full-dimensional) coordinates.
    verts: Vec<IntVec>,
    dim: usize,
    ambient_dim: usize,
    /// x_ambient = embed_linear · x_intrinsic + embed_offset. The columns of
    /// embed_linear are a basis of the saturated direction lattice of the
    /// affine span, so this bijects Z^dim onto the lattice points of the span.
    embed_linear: IntMat,
    embed_offset: IntVec,
    /// Facets in intrinsic coordinates, sorted by (normal, offset).
    facets: Vec<Facet>,
    /// Edges as sorted index pairs, sorted.
    edges: Vec<(usize, usize)>,
}

/// Visit all k-subsets of {0, …, n-1} in lexicographic order.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// A basis (as matrix rows) of the integer kernel {x : m·x = 0} ⊆ Z^n.
/// The result is saturated: it spans the full kernel lattice.
fn kernel_basis(m: &IntMat) -> Vec<IntVec> {
    // Row-reduce the transpose: U · m^T = H. Rows of U matching zero rows of
    // H are exactly a basis of the kernel.
    let (h, u) = hermite_normal_form(&m.transpose());
    let mut basis = Vec::new();
    for r in 0..h.nrows() {
        if (0..h.ncols()).all(|c| h.at(r, c).is_zero()) {
            basis.push(u.row(r));
        }
    }
    basis
}

impl LatticePolytope {
    /// Convex hull of the given lattice points. Points that are not extreme
    /// are allowed and discarded. Lower-dimensional inputs are re-embedded
    /// into the lattice of their affine span.
    pub fn from_vertices(points: Vec<IntVec>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::input("no points given"));
        }
        let ambient_dim = points[0].len();
        if points.iter().any(|p| p.len() != ambient_dim) {
            return Err(Error::input("points of mismatched dimension"));
        }
        let point_set: BTreeSet<IntVec> = points.into_iter().collect();
        let pts: Vec<IntVec> = point_set.into_iter().collect();

        // Affine span: rank and a saturated basis of the direction lattice.
        let p0 = pts[0].clone();
        let diffs: Vec<IntVec> = pts[1..].iter().map(|p| p - &p0).collect();
        let dim = if diffs.is_empty() {
            0
        } else {
            let (h, _) = hermite_normal_form(&IntMat::from_rows(&diffs));
            (0..h.nrows())
                .filter(|&r| (0..h.ncols()).any(|c| !h.at(r, c).is_zero()))
                .count()
        };

        let (embed_linear, embed_offset, work_pts) = if dim == ambient_dim {
            (IntMat::identity(ambient_dim), IntVec::zeros(ambient_dim), pts.clone())
        } else if dim == 0 {
            (
                IntMat::zeros(ambient_dim, 0),
                p0.clone(),
                vec![IntVec::zeros(0); pts.len()],
            )
        } else {
            // Saturation of the direction span, as the kernel of the kernel:
            // W = ker(diffs as rows), saturation = ker(W as rows).
            let w = kernel_basis(&IntMat::from_rows(&diffs));
            let basis = kernel_basis(&IntMat::from_rows(&w));
            debug_assert_eq!(basis.len(), dim);
            let b = IntMat::from_rows(&basis); // dim × ambient
            let bt = b.transpose(); // ambient × dim
            let mut work = Vec::with_capacity(pts.len());
            for p in &pts {
                let rhs = p - &p0;
                let x = solve_integer(&bt, &rhs).ok_or_else(|| {
                    Error::internal("point not in the saturated span of the input")
                })?;
                work.push(x);
            }
            (bt, p0.clone(), work)
        };

        let (facets, vertex_mask) = hull_facets(&work_pts, dim)?;

        // Keep only the extreme points, preserving lexicographic ambient order.
        let mut verts_ambient = Vec::new();
        let mut verts = Vec::new();
        for (i, keep) in vertex_mask.iter().enumerate() {
            if *keep {
                verts_ambient.push(pts[i].clone());
                verts.push(work_pts[i].clone());
            }
        }

        // Re-index facet incidences to the surviving vertices.
        let mut facets: Vec<Facet> = facets
            .into_iter()
            .map(|(normal, offset)| {
                let vertices: Vec<usize> = verts
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| (normal.dot(v) + &offset).is_zero())
                    .map(|(i, _)| i)
                    .collect();
                Facet { normal, offset, vertices }
            })
            .collect();
        facets.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));

        // Consistency guards: these can only fail on a hull bug.
        if dim > 0 {
            if facets.len() < dim + 1 {
                return Err(Error::internal("hull produced too few facets"));
            }
            for f in &facets {
                if f.vertices.len() < dim {
                    return Err(Error::internal("facet with too few vertices"));
                }
            }
        }

        let edges = compute_edges(&verts, &facets, dim);
        Ok(LatticePolytope {
            verts_ambient,
            verts,
            dim,
            ambient_dim,
            embed_linear,
            embed_offset,
            facets,
            edges,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Vertices in the caller's coordinates, lexicographically sorted.
    pub fn vertices(&self) -> &[IntVec] {
        &self.verts_ambient
    }

    /// Vertices in intrinsic (full-dimensional) coordinates, aligned with
    /// [`Self::vertices`].
    pub fn vertices_intrinsic(&self) -> &[IntVec] {
        &self.verts
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Edges as pairs of vertex indices. For a one-dimensional polytope the
    /// segment itself counts as its single edge.
    pub fn edge_pairs(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn intrinsic_to_ambient(&self, x: &IntVec) -> IntVec {
        &self.embed_linear.mul_vec(x) + &self.embed_offset
    }

    /// Inverse of [`Self::intrinsic_to_ambient`]; `None` when the point does
    /// not lie on the lattice of the affine span.
    pub fn ambient_to_intrinsic(&self, p: &IntVec) -> Option<IntVec> {
        let rhs = p - &self.embed_offset;
        let x = solve_integer(&self.embed_linear, &rhs)?;
        Some(x)
    }

    /// A copy of this polytope living in its intrinsic coordinates (the
    /// identity embedding). Vertices are re-sorted lexicographically.
    pub fn as_intrinsic(&self) -> LatticePolytope {
        if self.ambient_dim == self.dim
            && self.embed_linear.is_identity()
            && self.embed_offset.is_zero()
        {
            return self.clone();
        }
        let mut p = LatticePolytope {
            verts_ambient: self.verts.clone(),
            verts: self.verts.clone(),
            dim: self.dim,
            ambient_dim: self.dim,
            embed_linear: IntMat::identity(self.dim),
            embed_offset: IntVec::zeros(self.dim),
            facets: self.facets.clone(),
            edges: self.edges.clone(),
        };
        p.resort_vertices();
        p
    }

    /// Image of this polytope under an affine unimodular map of the ambient
    /// space. All intrinsic data is reused; nothing is re-hulled.
    pub fn apply_map(&self, map: &AffineUnimodularMap) -> Result<LatticePolytope> {
        if map.dim() != self.ambient_dim {
            return Err(Error::input("map dimension does not match ambient space"));
        }
        let mut p = self.clone();
        p.verts_ambient = self.verts_ambient.iter().map(|v| map.apply(v)).collect();
        p.embed_linear = map.linear().mul(&self.embed_linear);
        p.embed_offset = map.apply(&self.embed_offset);
        p.resort_vertices();
        Ok(p)
    }

    /// Restore the sorted-vertex invariant after vertices changed, remapping
    /// facet incidences and edges.
    fn resort_vertices(&mut self) {
        let n = self.verts_ambient.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.verts_ambient[a].cmp(&self.verts_ambient[b]));
        let mut inv = vec![0usize; n];
        for (new_i, &old_i) in order.iter().enumerate() {
            inv[old_i] = new_i;
        }
        self.verts_ambient = order.iter().map(|&i| self.verts_ambient[i].clone()).collect();
        self.verts = order.iter().map(|&i| self.verts[i].clone()).collect();
        for f in &mut self.facets {
            for v in &mut f.vertices {
                *v = inv[*v];
            }
            f.vertices.sort_unstable();
        }
        for e in &mut self.edges {
            let (a, b) = (inv[e.0], inv[e.1]);
            *e = (a.min(b), a.max(b));
        }
        self.edges.sort_unstable();
    }

    /// Does the polytope contain this ambient lattice point?
    pub fn contains(&self, p: &IntVec) -> bool {
        match self.ambient_to_intrinsic(p) {
            Some(x) => self.contains_intrinsic(&x),
            None => false,
        }
    }

    fn contains_intrinsic(&self, x: &IntVec) -> bool {
        if self.dim == 0 {
            return true; // the unique intrinsic point
        }
        self.facets
            .iter()
            .all(|f| !(f.normal.dot(x) + &f.offset).is_negative())
    }

    /// All lattice points, in ambient coordinates, lexicographically sorted.
    pub fn lattice_points(&self) -> Result<Vec<IntVec>> {
        Ok(self
            .lattice_points_intrinsic()?
            .iter()
            .map(|x| self.intrinsic_to_ambient(x))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect())
    }

    /// All lattice points in intrinsic coordinates, lexicographically sorted.
    pub fn lattice_points_intrinsic(&self) -> Result<Vec<IntVec>> {
        if self.dim == 0 {
            return Ok(vec![IntVec::zeros(0)]);
        }
        // Bounding box scan with exact facet membership tests.
        let d = self.dim;
        let mut lo = self.verts[0].to_vec();
        let mut hi = self.verts[0].to_vec();
        for v in &self.verts {
            for i in 0..d {
                if v[i] < lo[i] {
                    lo[i] = v[i].clone();
                }
                if v[i] > hi[i] {
                    hi[i] = v[i].clone();
                }
            }
        }
        let mut count = BigInt::one();
        for i in 0..d {
            count *= &hi[i] - &lo[i] + 1;
        }
        if count > BigInt::from(20_000_000u64) {
            return Err(Error::input(
                "bounding box too large for lattice point enumeration",
            ));
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        'scan: loop {
            let x = IntVec::new(cur.clone());
            if self.contains_intrinsic(&x) {
                out.push(x);
            }
            // Odometer increment.
            let mut i = d;
            loop {
                if i == 0 {
                    break 'scan;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] <= hi[i] {
                    continue 'scan;
                }
                cur[i] = lo[i].clone();
            }
        }
        out.sort();
        Ok(out)
    }

    /// All proper nonempty faces, computed by closing the facet set under
    /// intersections. Sorted by (dim, vertex indices).
    pub fn faces(&self) -> Vec<Face> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue: Vec<Vec<usize>> = Vec::new();
        for f in &self.facets {
            if seen.insert(f.vertices.clone()) {
                queue.push(f.vertices.clone());
            }
        }
        while let Some(face) = queue.pop() {
            for f in &self.facets {
                let inter: Vec<usize> = face
                    .iter()
                    .copied()
                    .filter(|v| f.vertices.binary_search(v).is_ok())
                    .collect();
                if !inter.is_empty() && inter != face && seen.insert(inter.clone()) {
                    queue.push(inter);
                }
            }
        }
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|vertices| {
                let dim = self.affine_rank_of(&vertices);
                Face { vertices, dim }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
        faces
    }

    fn affine_rank_of(&self, vertex_indices: &[usize]) -> usize {
        if vertex_indices.len() <= 1 {
            return 0;
        }
        let base = &self.verts[vertex_indices[0]];
        let diffs: Vec<IntVec> = vertex_indices[1..]
            .iter()
            .map(|&i| &self.verts[i] - base)
            .collect();
        let (h, _) = hermite_normal_form(&IntMat::from_rows(&diffs));
        (0..h.nrows())
            .filter(|&r| (0..h.ncols()).any(|c| !h.at(r, c).is_zero()))
            .count()
    }

    /// The edges as [`Face`] values. For a segment, the segment itself.
    pub fn edges(&self) -> Vec<Face> {
        self.edges
            .iter()
            .map(|&(a, b)| Face { vertices: vec![a, b], dim: 1 })
            .collect()
    }

    /// Lattice length of an edge: one less than the number of lattice points
    /// on it, i.e. the content of the difference of its endpoints.
    pub fn edge_length(&self, edge: &Face) -> Result<BigInt> {
        if edge.dim != 1 || edge.vertices.len() != 2 {
            return Err(Error::input("edge_length requires a 1-dimensional face"));
        }
        let (a, b) = (edge.vertices[0], edge.vertices[1]);
        if a >= self.verts.len() || b >= self.verts.len() {
            return Err(Error::input("edge refers to nonexistent vertices"));
        }
        Ok((&self.verts[b] - &self.verts[a]).content())
    }

    /// Normalized volume (n! times Euclidean volume in the intrinsic lattice):
    /// the degree of the associated embedding. A point has volume 1.
    ///
    /// Computed by a stellar decomposition at the lexicographically smallest
    /// vertex: vol(P) = Σ_F dist(v0, F) · vol(F) over facets not containing
    /// v0, with simplices evaluated as determinants.
    pub fn normalized_volume(&self) -> Result<BigInt> {
        if self.dim == 0 {
            return Ok(BigInt::one());
        }
        if self.verts.len() == self.dim + 1 {
            let base = &self.verts[0];
            let diffs: Vec<IntVec> =
                self.verts[1..].iter().map(|v| v - base).collect();
            return Ok(IntMat::from_rows(&diffs).det().abs());
        }
        let v0_idx = (0..self.verts.len())
            .min_by(|&a, &b| self.verts[a].cmp(&self.verts[b]))
            .expect("nonempty");
        let v0 = &self.verts[v0_idx];
        let mut total = BigInt::zero();
        for f in &self.facets {
            let dist = f.normal.dot(v0) + &f.offset;
            if dist.is_zero() {
                continue;
            }
            let sub = self.facet_polytope(f)?;
            total += dist * sub.normalized_volume()?;
        }
        Ok(total)
    }

    /// The facet as a polytope of its own (in intrinsic coordinates of `self`,
    /// then reduced again internally).
    pub fn facet_polytope(&self, facet: &Facet) -> Result<LatticePolytope> {
        let pts: Vec<IntVec> = facet.vertices.iter().map(|&i| self.verts[i].clone()).collect();
        LatticePolytope::from_vertices(pts)
    }

    /// Indices of the edges at a vertex.
    fn edges_at(&self, vi: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == vi || b == vi)
            .map(|(i, _)| i)
            .collect()
    }

    /// Primitive edge directions at a vertex, in intrinsic coordinates,
    /// lexicographically sorted.
    pub fn edge_directions_at(&self, vi: usize) -> Vec<IntVec> {
        let mut dirs: Vec<IntVec> = self
            .edges_at(vi)
            .into_iter()
            .map(|ei| {
                let (a, b) = self.edges[ei];
                let other = if a == vi { b } else { a };
                let d = &self.verts[other] - &self.verts[vi];
                primitive_vector(&d).expect("distinct vertices")
            })
            .collect();
        dirs.sort();
        dirs
    }

    /// The nearest lattice points along the edges at a vertex (ambient
    /// coordinates): v + u for each primitive edge direction u.
    pub fn vertex_neighbors(&self, vi: usize) -> Vec<IntVec> {
        self.edge_directions_at(vi)
            .iter()
            .map(|d| {
                let x = &self.verts[vi] + d;
                self.intrinsic_to_ambient(&x)
            })
            .collect()
    }

    /// Delzant smoothness test: every vertex must have exactly dim edges
    /// whose primitive directions form a lattice basis.
    pub fn smoothness(&self) -> Smoothness {
        for vi in 0..self.verts.len() {
            let dirs = self.edge_directions_at(vi);
            if dirs.len() != self.dim {
                return Smoothness::NotSimple {
                    vertex: self.verts_ambient[vi].clone(),
                };
            }
            let ok = is_partial_lattice_basis(&dirs)
                .expect("at most dim directions in dimension dim");
            if !ok {
                return Smoothness::NotUnimodular {
                    vertex: self.verts_ambient[vi].clone(),
                };
            }
        }
        Smoothness::Smooth
    }

    pub fn is_smooth(&self) -> bool {
        matches!(self.smoothness(), Smoothness::Smooth)
    }

    /// Error with the failing vertex unless the polytope is smooth.
    pub fn require_smooth(&self) -> Result<()> {
        match self.smoothness() {
            Smoothness::Smooth => Ok(()),
            s => Err(Error::NotSmooth {
                vertex: s.failing_vertex().expect("non-smooth carries vertex").to_vec(),
            }),
        }
    }

    /// Map the polytope so that the given vertex (intrinsic coordinates) goes
    /// to the origin and its nearest edge neighbors to the standard basis.
    /// Requires the vertex to be smooth. Returns the repositioned polytope
    /// (full-dimensional, in its own coordinates) and the map used, acting on
    /// intrinsic coordinates.
    pub fn standard_position(
        &self,
        vertex: &IntVec,
    ) -> Result<(LatticePolytope, AffineUnimodularMap)> {
        let vi = self
            .verts
            .iter()
            .position(|v| v == vertex)
            .ok_or_else(|| Error::input(format!("{vertex} is not a vertex")))?;
        let dirs = self.edge_directions_at(vi);
        if dirs.len() != self.dim {
            return Err(Error::NotSmooth {
                vertex: self.verts_ambient[vi].to_vec(),
            });
        }
        // Columns = primitive edge directions; unimodularity is exactly
        // smoothness at this vertex.
        let m = IntMat::from_rows(&dirs).transpose();
        let linear = m.inverse_unimodular().map_err(|_| Error::NotSmooth {
            vertex: self.verts_ambient[vi].to_vec(),
        })?;
        let translation = linear.mul_vec(&self.verts[vi]).neg();
        let map = AffineUnimodularMap::new(linear, translation)
            .expect("inverse of unimodular matrix is unimodular");
        let q = self.as_intrinsic_aligned().apply_map(&map)?;
        Ok((q, map))
    }

    /// Like [`Self::as_intrinsic`], but callable when ambient coordinates are
    /// already intrinsic; avoids re-sorting twice.
    fn as_intrinsic_aligned(&self) -> LatticePolytope {
        self.as_intrinsic()
    }

    /// The inner normal fan in intrinsic coordinates: one ray per facet, one
    /// maximal cone per vertex.
    pub fn normal_fan(&self) -> Result<Fan> {
        if self.dim == 0 {
            return Err(Error::input("a point has no normal fan"));
        }
        let rays: Vec<IntVec> = self.facets.iter().map(|f| f.normal.clone()).collect();
        let mut max_cones = Vec::with_capacity(self.verts.len());
        for vi in 0..self.verts.len() {
            let cone: Vec<usize> = self
                .facets
                .iter()
                .enumerate()
                .filter(|(_, f)| f.vertices.binary_search(&vi).is_ok())
                .map(|(i, _)| i)
                .collect();
            max_cones.push(cone);
        }
        Fan::new(self.dim, rays, max_cones)
    }

    /// All lattice invariants in one sweep.
    pub fn stats(&self) -> Result<PolytopeStats> {
        let points = self.lattice_points_intrinsic()?;
        let mut boundary = BigInt::zero();
        for x in &points {
            let on_facet = self
                .facets
                .iter()
                .any(|f| (f.normal.dot(x) + &f.offset).is_zero());
            if on_facet {
                boundary += 1;
            }
        }
        let total = BigInt::from(points.len());
        let interior = &total - &boundary;

        let mut edge_pts: BTreeSet<IntVec> = BTreeSet::new();
        let mut perim = BigInt::zero();
        for &(a, b) in &self.edges {
            let diff = &self.verts[b] - &self.verts[a];
            let len = diff.content();
            let dir = primitive_vector(&diff).expect("distinct vertices");
            let mut t = BigInt::zero();
            while t <= len {
                edge_pts.insert(&self.verts[a] + &dir.scaled(&t));
                t += 1;
            }
            perim += len;
        }

        let mut facet_vol = BigInt::zero();
        for f in &self.facets {
            facet_vol += self.facet_polytope(f)?.normalized_volume()?;
        }

        Ok(PolytopeStats {
            dim: self.dim,
            degree: self.normalized_volume()?,
            lattice_points: total,
            interior_points: interior,
            boundary_points: boundary,
            vertex_count: BigInt::from(self.verts.len()),
            edge_points: BigInt::from(edge_pts.len()),
            edge_length_sum: perim,
            facet_volume_sum: facet_vol,
        })
    }
}

/// Brute-force exact facet enumeration of a full-dimensional point set in
/// dimension `dim`: every dim-subset spanning a hyperplane is tested for
/// being supporting. Returns the facet inequalities and a mask of which
/// points are vertices.
#[allow(clippy::type_complexity)]
fn hull_facets(
    pts: &[IntVec],
    dim: usize,
) -> Result<(Vec<(IntVec, BigInt)>, Vec<bool>)> {
    if dim == 0 {
        return Ok((Vec::new(), vec![true; pts.len()]));
    }
    let mut facets: BTreeSet<(IntVec, BigInt)> = BTreeSet::new();
    for_each_combination(pts.len(), dim, |subset| {
        let base = &pts[subset[0]];
        let diffs: Vec<IntVec> = subset[1..].iter().map(|&i| &pts[i] - base).collect();
        let Some(normal) = hyperplane_normal(&diffs) else {
            return;
        };
        let c = normal.dot(base);
        // Supporting test with early exit once points on both sides appear.
        let mut below = false;
        let mut above = false;
        for p in pts {
            let s = normal.dot(p);
            if s < c {
                below = true;
            } else if s > c {
                above = true;
            }
            if below && above {
                return;
            }
        }
        if !above {
            // All points on or below: inner normal is -normal.
            facets.insert((normal.neg(), c));
        } else {
            // All points on or above: inner normal is normal.
            facets.insert((normal, -c));
        }
    });
    if facets.is_empty() {
        return Err(Error::internal("no supporting hyperplanes found"));
    }

    // A point is a vertex iff its incident facet normals span the space.
    let facet_list: Vec<(IntVec, BigInt)> = facets.into_iter().collect();
    let mut vertex_mask = Vec::with_capacity(pts.len());
    for p in pts {
        let incident: Vec<IntVec> = facet_list
            .iter()
            .filter(|(a, b)| (a.dot(p) + b).is_zero())
            .map(|(a, _)| a.clone())
            .collect();
        let rank = if incident.len() < dim {
            0
        } else {
            let (h, _) = hermite_normal_form(&IntMat::from_rows(&incident));
            (0..h.nrows())
                .filter(|&r| (0..h.ncols()).any(|c| !h.at(r, c).is_zero()))
                .count()
        };
        vertex_mask.push(rank == dim);
        // Every input point must satisfy every inequality.
        for (a, b) in &facet_list {
            if (a.dot(p) + b).is_negative() {
                return Err(Error::internal("hull inequality violated by input point"));
            }
        }
    }
    Ok((facet_list, vertex_mask))
}

/// Edges via the face lattice: vertices i, j span an edge iff the set of
/// vertices lying on every facet common to i and j is exactly {i, j}.
fn compute_edges(
    verts: &[IntVec],
    facets: &[Facet],
    dim: usize,
) -> Vec<(usize, usize)> {
    if dim == 1 {
        // The segment itself is the unique edge.
        return vec![(0, 1)];
    }
    let nv = verts.len();
    let nf = facets.len();
    let mut incident = vec![vec![false; nf]; nv];
    for (fi, f) in facets.iter().enumerate() {
        for &vi in &f.vertices {
            incident[vi][fi] = true;
        }
    }
    let mut edges = Vec::new();
    for i in 0..nv {
        'pair: for j in i + 1..nv {
            let common: Vec<usize> = (0..nf)
                .filter(|&f| incident[i][f] && incident[j][f])
                .collect();
            if common.len() < dim.saturating_sub(1) {
                continue;
            }
            for k in 0..nv {
                if k == i || k == j {
                    continue;
                }
                if common.iter().all(|&f| incident[k][f]) {
                    continue 'pair;
                }
            }
            edges.push((i, j));
        }
    }
    edges.sort_unstable();
    edges
}
