//! Constructors for the named polytope families: dilated simplices `rΔn`,
//! the truncations `(2Δn)_k`, products of dilated simplices, rational normal
//! scroll polytopes `P_{d_1,…,d_n}`, the hexagon of degree 6, and unit cubes.
//!
//! Every constructor produces the family's canonical coordinates, so these
//! polytopes double as the normal forms that classification reduces to.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::polytope::{LatticePolytope, PointConfiguration};
use crate::zlinalg::IntVec;

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::input("dimension must be at least 1"));
    }
    Ok(())
}

/// The dilated simplex rΔn = conv(0, r·e_1, …, r·e_n).
pub fn simplex(n: usize, dilation: u64) -> Result<LatticePolytope> {
    check_dim(n)?;
    if dilation == 0 {
        return Err(Error::input("dilation must be at least 1"));
    }
    let mut verts = vec![IntVec::zeros(n)];
    for i in 0..n {
        verts.push(IntVec::unit(n, i).scaled(&BigInt::from(dilation)));
    }
    LatticePolytope::from_vertices(verts)
}

/// The truncated doubled simplex (2Δn)_k for −1 ≤ k ≤ n−1: the convex hull
/// of the lattice points of 2Δn after removing the k-face
/// conv(2e_1, …, 2e_{k+1}). Equivalently, 2Δn cut by Σ_{i≤k+1} x_i ≤ 1.
/// Extremes: (2Δn)_{−1} = 2Δn and (2Δn)_{n−1} = Δn.
pub fn truncated(n: usize, k: i64) -> Result<LatticePolytope> {
    check_dim(n)?;
    if k < -1 || k > n as i64 - 1 {
        return Err(Error::input(format!(
            "truncation parameter k = {k} outside −1 ≤ k ≤ n−1 for n = {n}"
        )));
    }
    let short = (k + 1) as usize;
    let mut pts = Vec::new();
    // Lattice points of 2Δn are 0, e_i, 2e_i, and e_i + e_j; keep those not
    // on the removed face, i.e. with Σ_{i ≤ k+1} x_i ≤ 1.
    for i in 0..=n {
        for j in i..=n {
            // the point e_i + e_j with index 0 standing for "nothing"
            let mut v = IntVec::zeros(n);
            if i > 0 {
                v[i - 1] += BigInt::from(1);
            }
            if j > 0 {
                v[j - 1] += BigInt::from(1);
            }
            let short_sum: BigInt = v.iter().take(short).sum();
            if short_sum <= BigInt::from(1) {
                pts.push(v);
            }
        }
    }
    LatticePolytope::from_vertices(pts)
}

/// The product d_1Δ_{n_1} × … × d_kΔ_{n_k} in Z^{n_1 + … + n_k}, one factor
/// per (dilation, dimension) pair.
pub fn product_of_dilated_simplices(factors: &[(u64, usize)]) -> Result<LatticePolytope> {
    if factors.is_empty() {
        return Err(Error::input("product needs at least one factor"));
    }
    let n: usize = factors.iter().map(|&(_, ni)| ni).sum();
    for &(d, ni) in factors {
        check_dim(ni)?;
        if d == 0 {
            return Err(Error::input("dilation must be at least 1"));
        }
    }
    let mut verts = vec![IntVec::zeros(n)];
    let mut offset = 0;
    for &(d, ni) in factors {
        let mut next = Vec::new();
        for v in &verts {
            next.push(v.clone()); // factor vertex 0
            for j in 0..ni {
                let mut w = v.clone();
                w[offset + j] = BigInt::from(d);
                next.push(w);
            }
        }
        verts = next;
        offset += ni;
    }
    LatticePolytope::from_vertices(verts)
}

/// The lattice points A_{d_1,…,d_n} of the scroll polytope: v_i + a·e_n for
/// 1 ≤ i ≤ n and 0 ≤ a ≤ d_i, where v_i = e_i for i < n and v_n = 0. These
/// embed the rational normal scroll S_{d_1,…,d_n}.
pub fn scroll_points(ds: &[u64]) -> Result<PointConfiguration> {
    let n = ds.len();
    check_dim(n)?;
    if ds.iter().any(|&d| d == 0) {
        return Err(Error::input("scroll parameters d_i must be at least 1"));
    }
    let mut pts = Vec::new();
    for (i, &d) in ds.iter().enumerate() {
        let base = if i + 1 < n {
            IntVec::unit(n, i)
        } else {
            IntVec::zeros(n)
        };
        for a in 0..=d {
            let mut v = base.clone();
            v[n - 1] += BigInt::from(a);
            pts.push(v);
        }
    }
    PointConfiguration::new(pts)
}

/// The scroll polytope P_{d_1,…,d_n} = conv(A_{d_1,…,d_n}).
pub fn scroll_polytope(ds: &[u64]) -> Result<LatticePolytope> {
    scroll_points(ds)?.hull()
}

/// The smooth hexagon conv((0,0),(1,0),(0,1),(2,1),(1,2),(2,2)): degree 6,
/// six vertices, and a single interior lattice point (1,1).
pub fn hexagon() -> LatticePolytope {
    LatticePolytope::from_vertices(
        [[0, 0], [1, 0], [0, 1], [2, 1], [1, 2], [2, 2]]
            .iter()
            .map(|c| IntVec::from_i64s(c))
            .collect(),
    )
    .expect("hexagon is a valid polytope")
}

/// The unit cube Δ1^n = [0,1]^n.
pub fn cube(n: usize) -> Result<LatticePolytope> {
    check_dim(n)?;
    if n > 20 {
        return Err(Error::input("cube dimension too large to enumerate"));
    }
    let verts = (0u64..1 << n)
        .map(|mask| {
            IntVec::new(
                (0..n)
                    .map(|i| BigInt::from((mask >> i) & 1))
                    .collect(),
            )
        })
        .collect();
    LatticePolytope::from_vertices(verts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn dilated_simplices() {
        let p = simplex(2, 3).unwrap();
        let s = p.stats().unwrap();
        assert_eq!(s.degree, BigInt::from(9));
        assert_eq!(s.boundary_points, BigInt::from(9));
        assert_eq!(s.interior_points, BigInt::one());
        assert_eq!(s.vertex_count, BigInt::from(3));
        assert!(simplex(0, 1).is_err());
        assert!(simplex(2, 0).is_err());
    }

    #[test]
    fn truncation_extremes_and_shape() {
        // k = −1 is the doubled simplex, k = n−1 the unit simplex.
        for n in 1..=4usize {
            let doubled = truncated(n, -1).unwrap();
            assert_eq!(doubled.vertices().len(), n + 1);
            assert_eq!(
                doubled.normalized_volume().unwrap(),
                BigInt::from(1u64 << n)
            );
            let unit = truncated(n, n as i64 - 1).unwrap();
            assert_eq!(unit.vertices().len(), n + 1);
            assert_eq!(unit.normalized_volume().unwrap(), BigInt::one());
        }
        // (2Δ4)_1: vertices 0, e_1, e_2, 2e_3, 2e_4, and e_i+e_j with i
        // short, j long.
        let p = truncated(4, 1).unwrap();
        assert_eq!(p.vertices().len(), 9);
        assert_eq!(p.facets().len(), 6);
        assert!(p.is_smooth());
        // Every truncation in range is smooth.
        for n in 1..=5usize {
            for k in -1..=(n as i64 - 1) {
                assert!(truncated(n, k).unwrap().is_smooth(), "n={n} k={k}");
            }
        }
        assert!(truncated(3, 3).is_err());
        assert!(truncated(3, -2).is_err());
    }

    #[test]
    fn products_multiply_volumes() {
        let prism = product_of_dilated_simplices(&[(1, 1), (1, 2)]).unwrap();
        assert_eq!(prism.vertices().len(), 6);
        assert_eq!(prism.dim(), 3);
        // normalized volume of a product is multinomial(n1,n2)·v1·v2.
        assert_eq!(prism.normalized_volume().unwrap(), BigInt::from(3));
        let rect = product_of_dilated_simplices(&[(2, 1), (3, 1)]).unwrap();
        assert_eq!(rect.normalized_volume().unwrap(), BigInt::from(12));
        let p22 = product_of_dilated_simplices(&[(1, 2), (1, 2)]).unwrap();
        assert_eq!(p22.dim(), 4);
        assert_eq!(p22.vertices().len(), 9);
        assert_eq!(p22.normalized_volume().unwrap(), BigInt::from(6));
        assert!(product_of_dilated_simplices(&[]).is_err());
        assert!(product_of_dilated_simplices(&[(0, 1)]).is_err());
    }

    #[test]
    fn scroll_polytopes_match_their_cayley_description() {
        let a = scroll_points(&[1, 2, 2]).unwrap();
        assert_eq!(a.points().len(), 8);
        let p = scroll_polytope(&[1, 2, 2]).unwrap();
        assert_eq!(p.lattice_points().unwrap().len(), 8);
        assert!(p.is_smooth());
        // degree of a scroll is Σ d_i
        assert_eq!(p.normalized_volume().unwrap(), BigInt::from(5));
        // exactly two edges of lattice length 2 (the d_i = 2 fibers)
        let long: Vec<_> = p
            .edges()
            .iter()
            .filter(|e| p.edge_length(e).unwrap() == BigInt::from(2))
            .cloned()
            .collect();
        assert_eq!(long.len(), 2);
        // scroll over a point is the segment [0, d]
        let seg = scroll_polytope(&[4]).unwrap();
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.normalized_volume().unwrap(), BigInt::from(4));
        assert!(scroll_polytope(&[]).is_err());
        assert!(scroll_polytope(&[2, 0]).is_err());
    }

    #[test]
    fn hexagon_shape() {
        let h = hexagon();
        assert_eq!(h.vertices().len(), 6);
        assert_eq!(h.facets().len(), 6);
        assert_eq!(h.lattice_points().unwrap().len(), 7);
        assert_eq!(h.normalized_volume().unwrap(), BigInt::from(6));
        assert!(h.is_smooth());
    }

    #[test]
    fn cubes() {
        let c = cube(3).unwrap();
        assert_eq!(c.vertices().len(), 8);
        assert_eq!(c.normalized_volume().unwrap(), BigInt::from(6));
        assert_eq!(cube(4).unwrap().normalized_volume().unwrap(), BigInt::from(24));
        assert!(cube(0).is_err());
    }
}
