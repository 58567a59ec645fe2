//! Classification of smooth polytopes up to affine unimodular equivalence
//! among the subpolytopes of twice a unimodular simplex.
//!
//! The complete list of full-dimensional smooth subpolytopes of 2Δn is: Δn,
//! 2Δn, the truncations (2Δn)_k for 0 ≤ k ≤ n−2, and the products
//! Δℓ × Δ_{n−ℓ}. The algorithm picks a vertex with the maximum number of
//! incident edges of lattice length 2, moves it to the origin in standard
//! position, tests containment in 2Δn there, and identifies the family from
//! the lattice points along the coordinate axes. A vertex not attaining the
//! maximum can produce a false negative (the polytope leaves 2Δn in that
//! chart), which is why the distinguished vertex matters.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::families;
use crate::polytope::LatticePolytope;
use crate::zlinalg::{AffineUnimodularMap, IntMat, IntVec};

/// Which family of subpolytopes of 2Δn the polytope belongs to, with the
/// defining parameters; `General` means not equivalent to any subpolytope
/// of 2Δn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Δn
    Simplex { n: usize },
    /// 2Δn
    DoubledSimplex { n: usize },
    /// (2Δn)_k with 0 ≤ k ≤ n−2
    TruncatedDoubledSimplex { n: usize, k: usize },
    /// Δℓ × Δm with ℓ ≤ m, ℓ + m = n
    ProductOfSimplices { l: usize, m: usize },
    /// everything else
    General,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Simplex { n } => write!(f, "simplex(n={n})"),
            Family::DoubledSimplex { n } => write!(f, "doubled_simplex(n={n})"),
            Family::TruncatedDoubledSimplex { n, k } => {
                write!(f, "truncated(n={n},k={k})")
            }
            Family::ProductOfSimplices { l, m } => write!(f, "product({l},{m})"),
            Family::General => write!(f, "general"),
        }
    }
}

/// Classification result: the family plus, for the non-general families, an
/// affine unimodular witness sending the polytope's intrinsic lattice points
/// exactly onto the canonical model's.
#[derive(Debug, Clone)]
pub struct FamilyLabel {
    pub family: Family,
    pub witness: Option<AffineUnimodularMap>,
}

/// The vertex with the maximum number of incident lattice-length-2 edges,
/// and that count. Ties broken by lexicographic vertex order (vertices are
/// stored sorted, so the first maximum wins).
pub fn max_length2_vertex(p: &LatticePolytope) -> Result<(IntVec, usize)> {
    p.require_smooth()?;
    let edges = p.edge_pairs();
    let mut counts = vec![0usize; p.vertices().len()];
    for &(a, b) in edges {
        let diff = &p.vertices_intrinsic()[a] - &p.vertices_intrinsic()[b];
        if diff.content() == BigInt::from(2) {
            counts[a] += 1;
            counts[b] += 1;
        }
    }
    let (best, &count) = counts
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| a.cmp(b).then(j.cmp(i)))
        .ok_or_else(|| Error::internal("polytope with no vertices"))?;
    Ok((p.vertices()[best].clone(), count))
}

/// Classify a smooth polytope. Lower-dimensional input is classified in the
/// lattice of its affine span; the witness then acts on intrinsic
/// coordinates.
pub fn classify(p: &LatticePolytope) -> Result<FamilyLabel> {
    let q0 = p.as_intrinsic();
    q0.require_smooth()?;
    if q0.dim() == 0 {
        return Err(Error::input("classification requires dimension ≥ 1"));
    }
    let (v, _) = max_length2_vertex(&q0)?;
    classify_from_vertex(&q0, &v)
}

/// `classify(P) ≠ General`: whether the polytope is equivalent to a
/// subpolytope of 2Δn.
pub fn is_subpolytope_of_doubled_simplex(p: &LatticePolytope) -> Result<bool> {
    Ok(classify(p)?.family != Family::General)
}

/// Debug cross-check: run the classification from *every* vertex attaining
/// the maximal length-2 edge count and verify all agree. Returns the runs in
/// vertex order. Errors if two distinguished vertices disagree, which would
/// contradict the transitivity of the model's automorphisms.
pub fn classify_all_vertices(p: &LatticePolytope) -> Result<Vec<(IntVec, FamilyLabel)>> {
    let q0 = p.as_intrinsic();
    q0.require_smooth()?;
    if q0.dim() == 0 {
        return Err(Error::input("classification requires dimension ≥ 1"));
    }
    let (_, best) = max_length2_vertex(&q0)?;
    let edges = q0.edge_pairs();
    let mut counts = vec![0usize; q0.vertices().len()];
    for &(a, b) in edges {
        let diff = &q0.vertices_intrinsic()[a] - &q0.vertices_intrinsic()[b];
        if diff.content() == BigInt::from(2) {
            counts[a] += 1;
            counts[b] += 1;
        }
    }
    let mut runs = Vec::new();
    for (i, &c) in counts.iter().enumerate() {
        if c == best {
            let v = q0.vertices()[i].clone();
            let label = classify_from_vertex(&q0, &v)?;
            runs.push((v, label));
        }
    }
    let first = &runs[0].1.family;
    for (v, label) in &runs[1..] {
        if label.family != *first {
            return Err(Error::internal(format!(
                "distinguished vertices disagree: {first} vs {} at ({v})",
                label.family
            )));
        }
    }
    Ok(runs)
}

/// The classification pipeline from one distinguished vertex of a
/// full-dimensional smooth polytope.
fn classify_from_vertex(q0: &LatticePolytope, v: &IntVec) -> Result<FamilyLabel> {
    let n = q0.dim();
    let (q, to_std) = q0.standard_position(v)?;

    // Standard position puts the polytope inside the positive orthant.
    let two = BigInt::from(2);
    for w in q.vertices() {
        if w.iter().any(|c| c < &BigInt::zero()) {
            return Err(Error::internal(
                "standard position left the positive orthant",
            ));
        }
        // Containment in 2Δn only needs checking on vertices.
        if w.iter().sum::<BigInt>() > two {
            return Ok(FamilyLabel {
                family: Family::General,
                witness: None,
            });
        }
    }

    // Inside 2Δn. Read the family off the axes: direction i is "long" when
    // the edge from the origin reaches 2e_i.
    let points: BTreeSet<IntVec> = q.lattice_points()?.into_iter().collect();
    let mut long = Vec::new();
    let mut short = Vec::new();
    for i in 0..n {
        if points.contains(&IntVec::unit(n, i).scaled(&two)) {
            long.push(i);
        } else {
            short.push(i);
        }
    }

    let (family, order) = if short.is_empty() {
        (Family::DoubledSimplex { n }, (0..n).collect::<Vec<_>>())
    } else if short.len() < n {
        let mut order = short.clone();
        order.extend(&long);
        (
            Family::TruncatedDoubledSimplex {
                n,
                k: short.len() - 1,
            },
            order,
        )
    } else {
        // All edges at the origin are short: Δn or a product of two unit
        // simplices, told apart by which e_i + e_j are present.
        let joined = |i: usize, j: usize| {
            let mut w = IntVec::zeros(n);
            w[i] = BigInt::from(1);
            w[j] = BigInt::from(1);
            points.contains(&w)
        };
        if (0..n).all(|i| (i + 1..n).all(|j| !joined(i, j))) {
            (Family::Simplex { n }, (0..n).collect())
        } else {
            // Components of the complement graph (i ~ j when e_i + e_j is
            // absent) are the factors.
            let mut comp = vec![usize::MAX; n];
            let mut ncomp = 0;
            for start in 0..n {
                if comp[start] != usize::MAX {
                    continue;
                }
                let mut stack = vec![start];
                comp[start] = ncomp;
                while let Some(i) = stack.pop() {
                    for j in 0..n {
                        if comp[j] == usize::MAX && !joined(i, j) && i != j {
                            comp[j] = ncomp;
                            stack.push(j);
                        }
                    }
                }
                ncomp += 1;
            }
            if ncomp != 2 {
                return Err(Error::internal("classification exhausted"));
            }
            let mut blocks = vec![Vec::new(), Vec::new()];
            for (i, &c) in comp.iter().enumerate() {
                blocks[c].push(i);
            }
            blocks.sort_by_key(|b| (b.len(), b[0]));
            let (l, m) = (blocks[0].len(), blocks[1].len());
            let mut order = blocks[0].clone();
            order.extend(&blocks[1]);
            (Family::ProductOfSimplices { l, m }, order)
        }
    };

    // Renumber coordinates per `order` and compare lattice points with the
    // canonical model of the identified family.
    let mut perm_rows = Vec::with_capacity(n);
    for &src in &order {
        perm_rows.push(IntVec::unit(n, src));
    }
    let perm = AffineUnimodularMap::new(IntMat::from_rows(&perm_rows), IntVec::zeros(n))?;
    let model = match &family {
        Family::Simplex { n } => families::simplex(*n, 1)?,
        Family::DoubledSimplex { n } => families::simplex(*n, 2)?,
        Family::TruncatedDoubledSimplex { n, k } => families::truncated(*n, *k as i64)?,
        Family::ProductOfSimplices { l, m } => {
            families::product_of_dilated_simplices(&[(1, *l), (1, *m)])?
        }
        Family::General => unreachable!(),
    };
    let mapped: BTreeSet<IntVec> = points.iter().map(|x| perm.apply(x)).collect();
    let model_points: BTreeSet<IntVec> = model.lattice_points()?.into_iter().collect();
    if mapped != model_points {
        return Err(Error::internal("classification exhausted"));
    }
    Ok(FamilyLabel {
        family,
        witness: Some(perm.compose(&to_std)),
    })
}
