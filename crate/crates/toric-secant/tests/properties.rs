//! Cross-module invariance laws. Everything the pipeline reports is a
//! lattice invariant, so it must be unchanged when a polytope is rebuilt
//! from scratch out of the image of its vertices under a random affine
//! unimodular map — and the independent ways of computing each quantity
//! must keep agreeing across the whole catalog.

mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use toric_secant::chow;
use toric_secant::classify::{classify, Family};
use toric_secant::families;
use toric_secant::json;
use toric_secant::polytope::{LatticePolytope, PointConfiguration};
use toric_secant::secant::{self, SecantLines};
use toric_secant::zlinalg::{AffineUnimodularMap, IntVec};

use common::{
    catalog, labeled_members, random_unimodular_map, random_unimodular_map_with, SplitMix64,
};

/// The image polytope, re-hulled from the mapped vertices rather than
/// carried along by `apply_map`, so every derived field is recomputed.
fn rebuilt_image(p: &LatticePolytope, map: &AffineUnimodularMap) -> LatticePolytope {
    let verts: Vec<IntVec> = p.vertices().iter().map(|v| map.apply(v)).collect();
    LatticePolytope::from_vertices(verts).unwrap()
}

#[test]
fn rebuilt_images_preserve_lattice_data() {
    let mut rng = SplitMix64(0xa11ce);
    for (name, p) in catalog(3) {
        let base_stats = p.stats().unwrap();
        let base_points = p.lattice_points().unwrap();
        for _ in 0..3 {
            let map = random_unimodular_map_with(&mut rng, p.ambient_dim(), 3);
            let q = rebuilt_image(&p, &map);
            assert!(q.is_smooth(), "{name}: smoothness is an invariant");
            assert_eq!(
                q.normalized_volume().unwrap(),
                base_stats.degree,
                "{name}: volume is an invariant"
            );
            let mapped: BTreeSet<IntVec> = base_points.iter().map(|x| map.apply(x)).collect();
            let found: BTreeSet<IntVec> = q.lattice_points().unwrap().into_iter().collect();
            assert_eq!(mapped, found, "{name}: lattice points are equivariant");
            assert_eq!(q.stats().unwrap(), base_stats, "{name}: stats are invariants");
        }
    }
}

/// The canonical polytope a non-general label refers to.
fn model_for(family: &Family) -> LatticePolytope {
    match family {
        Family::Simplex { n } => families::simplex(*n, 1).unwrap(),
        Family::DoubledSimplex { n } => families::simplex(*n, 2).unwrap(),
        Family::TruncatedDoubledSimplex { n, k } => families::truncated(*n, *k as i64).unwrap(),
        Family::ProductOfSimplices { l, m } => {
            families::product_of_dilated_simplices(&[(1, *l), (1, *m)]).unwrap()
        }
        Family::General => panic!("the general family has no model"),
    }
}

fn check_witness(name: &str, p: &LatticePolytope, family: &Family) {
    let label = classify(p).unwrap();
    assert_eq!(&label.family, family, "{name}: label");
    let witness = label.witness.expect("non-general labels carry a witness");
    let intrinsic = p.as_intrinsic();
    let mapped: BTreeSet<IntVec> = intrinsic
        .lattice_points()
        .unwrap()
        .iter()
        .map(|x| witness.apply(x))
        .collect();
    let model: BTreeSet<IntVec> = model_for(family)
        .lattice_points()
        .unwrap()
        .into_iter()
        .collect();
    assert_eq!(mapped, model, "{name}: witness must map onto the model");
}

#[test]
fn witnesses_map_onto_the_canonical_model() {
    let mut rng = SplitMix64(0x717e55);
    let mut members: Vec<(String, LatticePolytope, Family)> = labeled_members(4)
        .into_iter()
        .filter(|(_, _, family)| *family != Family::General)
        .collect();
    members.push((
        "(2Δ5)_2".into(),
        families::truncated(5, 2).unwrap(),
        Family::TruncatedDoubledSimplex { n: 5, k: 2 },
    ));
    for (name, p, family) in &members {
        check_witness(name, p, family);
        if p.dim() <= 3 {
            for _ in 0..2 {
                let map = random_unimodular_map_with(&mut rng, p.ambient_dim(), 3);
                let q = rebuilt_image(p, &map);
                check_witness(&format!("{name} image"), &q, family);
            }
        }
    }
}

#[test]
fn general_label_agrees_with_double_point_positivity() {
    for (name, p) in catalog(4) {
        let family = classify(&p).unwrap().family;
        let rhs = chow::secant_rhs(&p).unwrap();
        assert!(rhs.is_even(), "{name}: double-point value {rhs} must be even");
        if family == Family::General {
            assert!(
                rhs > BigInt::from(0),
                "{name}: general family needs a positive double-point value, got {rhs}"
            );
        } else {
            assert_eq!(
                rhs,
                BigInt::from(0),
                "{name}: deficient families must integrate to zero"
            );
        }
    }
}

#[test]
fn analyze_is_equivalence_invariant() {
    let mut rng = SplitMix64(0xd15c0);
    for (name, p) in catalog(3) {
        let base = secant::analyze(&p).unwrap();
        assert!(
            base.cross_checks.iter().all(|c| c.pass),
            "{name}: base cross-checks"
        );
        for _ in 0..2 {
            let map = random_unimodular_map_with(&mut rng, p.ambient_dim(), 3);
            let q = rebuilt_image(&p, &map);
            let rep = secant::analyze(&q).unwrap();
            assert_eq!(rep.n, base.n, "{name}: n");
            assert_eq!(rep.r, base.r, "{name}: r");
            assert_eq!(rep.family.family, base.family.family, "{name}: family");
            assert_eq!(rep.dim_sec, base.dim_sec, "{name}: dim_sec");
            assert_eq!(rep.expected_dim, base.expected_dim, "{name}: expected_dim");
            assert_eq!(
                rep.has_expected_dim, base.has_expected_dim,
                "{name}: has_expected_dim"
            );
            assert_eq!(rep.deg_sec, base.deg_sec, "{name}: deg_sec");
            assert_eq!(rep.deg_phi, base.deg_phi, "{name}: deg_phi");
            assert_eq!(rep.secant_lines, base.secant_lines, "{name}: secant_lines");
            assert!(
                rep.cross_checks.iter().all(|c| c.pass),
                "{name}: image cross-checks"
            );
        }
    }
}

#[test]
fn report_invariants_hold_across_the_catalog() {
    for (name, p) in catalog(4) {
        let rep = secant::analyze(&p).unwrap();
        assert!(rep.dim_sec <= rep.expected_dim, "{name}");
        assert!(rep.deg_sec >= BigInt::from(1), "{name}");
        if rep.dim_sec == rep.r {
            assert_eq!(rep.deg_sec, BigInt::from(1), "{name}: filling space");
        }
        let general = rep.family.family == Family::General;
        assert_eq!(general, rep.deg_phi == 2, "{name}: deg φ");
        assert_eq!(
            general,
            rep.secant_lines == SecantLines::Unique,
            "{name}: secant lines"
        );
        // The deficient rows are exactly 2Δn (n ≥ 2), (2Δn)_k with
        // k ≤ n−3, and Δℓ×Δm with ℓ, m ≥ 2.
        let deficient = match rep.family.family {
            Family::DoubledSimplex { n } => n >= 2,
            Family::TruncatedDoubledSimplex { n, k } => k + 3 <= n,
            Family::ProductOfSimplices { l, .. } => l >= 2,
            _ => false,
        };
        assert_eq!(rep.has_expected_dim, !deficient, "{name}: deficiency");
        assert!(rep.cross_checks.iter().all(|c| c.pass), "{name}");
    }
}

#[test]
fn stats_identities_across_the_catalog() {
    for (name, p) in catalog(4) {
        let stats = p.stats().unwrap();
        let points = p.lattice_points().unwrap();
        assert_eq!(
            BigInt::from(points.len()),
            &stats.boundary_points + &stats.interior_points,
            "{name}: ℓ = B + I"
        );
        if p.dim() == 3 {
            // Smooth 3-polytopes are simple, so the edge skeleton holds
            // perim − V/2 lattice points.
            assert_eq!(
                &stats.edge_points * 2,
                &stats.edge_length_sum * 2 - &stats.vertex_count,
                "{name}: E = perim − V/2"
            );
        }
    }
}

#[test]
fn vertex_neighbors_count_and_lie_in_the_polytope() {
    for (name, p) in catalog(4) {
        for vi in 0..p.vertices().len() {
            let neighbors = p.vertex_neighbors(vi);
            assert_eq!(neighbors.len(), p.dim(), "{name}: vertex {vi}");
            for q in &neighbors {
                assert!(p.contains(q), "{name}: neighbor ({q}) of vertex {vi}");
            }
        }
    }
}

#[test]
fn subset_reports_are_equivalence_invariant() {
    let mut rng = SplitMix64(0x5b5e7);
    let hexagon = families::hexagon();
    let outer = PointConfiguration::new(hexagon.vertices().to_vec()).unwrap();
    let triangle = families::simplex(2, 3).unwrap();
    let mut punctured = triangle.lattice_points().unwrap();
    punctured.retain(|q| q != &IntVec::from_i64s(&[1, 1]));
    let punctured = PointConfiguration::new(punctured).unwrap();
    // Dropping (1,0) — a neighbor of the corner (0,0) — keeps the hull but
    // breaks the hypothesis.
    let mut sparse = triangle.lattice_points().unwrap();
    sparse.retain(|q| q != &IntVec::from_i64s(&[1, 0]));
    let sparse = PointConfiguration::new(sparse).unwrap();

    for a in [outer, punctured, sparse] {
        let base = secant::analyze_points(&a).unwrap();
        for _ in 0..3 {
            let map = random_unimodular_map(&mut rng, a.ambient_dim());
            let mapped =
                PointConfiguration::new(a.points().iter().map(|x| map.apply(x)).collect())
                    .unwrap();
            let rep = secant::analyze_points(&mapped).unwrap();
            assert_eq!(rep.s, base.s);
            assert_eq!(rep.hypothesis_ok, base.hypothesis_ok);
            assert_eq!(rep.missing.len(), base.missing.len());
            assert_eq!(
                rep.family.as_ref().map(|l| l.family.clone()),
                base.family.as_ref().map(|l| l.family.clone())
            );
            assert_eq!(rep.dim_sec, base.dim_sec);
            assert_eq!(rep.deg_divides, base.deg_divides);
            assert_eq!(rep.deg_sec, base.deg_sec);
            assert_eq!(rep.expected_dim_ok, base.expected_dim_ok);
            assert_eq!(rep.exceptional, base.exceptional);
        }
    }
}

#[test]
fn json_round_trips_and_determinism() {
    // Polytope JSON survives a text round trip with the vertex set intact.
    for (name, p) in [
        ("hexagon", families::hexagon()),
        ("(2Δ3)_1", families::truncated(3, 1).unwrap()),
    ] {
        let text = serde_json::to_string(&json::polytope_to_value(&p)).unwrap();
        let back = json::polytope_from_json(&text).unwrap();
        assert_eq!(back.vertices(), p.vertices(), "{name}");
    }
    // Point configurations likewise.
    let a = PointConfiguration::new(families::hexagon().vertices().to_vec()).unwrap();
    let text = serde_json::to_string(&json::points_to_value(a.points())).unwrap();
    let back = json::points_from_json(&text).unwrap();
    assert_eq!(back.points(), a.points());
    // Two fresh analyses of the same polytope serialize byte-identically.
    let p = families::hexagon();
    let first =
        serde_json::to_string(&json::secant_report_to_value(&secant::analyze(&p).unwrap()))
            .unwrap();
    let second =
        serde_json::to_string(&json::secant_report_to_value(&secant::analyze(&p).unwrap()))
            .unwrap();
    assert_eq!(first, second);
    let first =
        serde_json::to_string(&json::subset_report_to_value(&secant::analyze_points(&a).unwrap()))
            .unwrap();
    let second =
        serde_json::to_string(&json::subset_report_to_value(&secant::analyze_points(&a).unwrap()))
            .unwrap();
    assert_eq!(first, second);
}

#[test]
fn volume_is_additive_over_subdivisions() {
    // The hexagon is the union of one unit triangle per edge, all sharing
    // the interior point.
    let hexagon = families::hexagon();
    let center = IntVec::from_i64s(&[1, 1]);
    let mut total = BigInt::from(0);
    for &(a, b) in hexagon.edge_pairs() {
        let piece = LatticePolytope::from_vertices(vec![
            center.clone(),
            hexagon.vertices()[a].clone(),
            hexagon.vertices()[b].clone(),
        ])
        .unwrap();
        total += piece.normalized_volume().unwrap();
    }
    assert_eq!(total, hexagon.normalized_volume().unwrap());

    // 2Δ2 is the union of its four unit triangles.
    let corners = [
        [[0, 0], [1, 0], [0, 1]],
        [[2, 0], [1, 0], [1, 1]],
        [[0, 2], [0, 1], [1, 1]],
        [[1, 0], [0, 1], [1, 1]],
    ];
    let mut total = BigInt::from(0);
    for t in corners {
        let piece = LatticePolytope::from_vertices(
            t.iter().map(|v| IntVec::from_i64s(v)).collect(),
        )
        .unwrap();
        total += piece.normalized_volume().unwrap();
    }
    assert_eq!(
        total,
        families::simplex(2, 2).unwrap().normalized_volume().unwrap()
    );
}
