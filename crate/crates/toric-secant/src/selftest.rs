//! Built-in worked-example suite.
//!
//! Every number here is a published value for a specific polytope — the
//! hexagonal del Pezzo surface, the cube, the dilated and truncated
//! simplices, the rational normal scrolls — re-derived by this crate from
//! scratch. The CLI exposes the suite as `selftest`; a failing case means a
//! bug in this crate, not bad input.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::chow;
use crate::classify::{classify, is_subpolytope_of_doubled_simplex};
use crate::error::{Error, Result};
use crate::families::{
    cube, hexagon, product_of_dilated_simplices, scroll_polytope, simplex, truncated,
};
use crate::json;
use crate::polytope::{LatticePolytope, PointConfiguration};
use crate::secant::{
    analyze, analyze_points, product_secant_degree, scroll_secant_rhs, surface_secant_degree,
    threefold_secant_degree, truncated_secant_degree, veronese_secant_degree, SecantLines,
};
use crate::zlinalg::IntVec;

/// One worked example: what was checked, whether it held, and the numbers
/// involved (or the error that interrupted it).
#[derive(Debug, Clone)]
pub struct SelfTestCase {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Run the whole suite. Always returns every case; inspect `pass` flags.
pub fn run() -> Vec<SelfTestCase> {
    let mut cases = Vec::new();
    let mut case = |name: &'static str, f: &mut dyn FnMut() -> Result<String>| {
        let entry = match f() {
            Ok(detail) => SelfTestCase {
                name,
                pass: true,
                detail,
            },
            Err(e) => SelfTestCase {
                name,
                pass: false,
                detail: e.to_string(),
            },
        };
        cases.push(entry);
    };

    // --- Lattice geometry of the worked examples -------------------------

    case("hexagon_hull_shape", &mut || {
        let hex = hexagon();
        let built = LatticePolytope::from_vertices(
            [[0, 0], [1, 0], [0, 1], [2, 1], [1, 2], [2, 2]]
                .iter()
                .map(|c| IntVec::from_i64s(c))
                .collect(),
        )?;
        expect("vertices", built.vertices().len(), hex.vertices().len())?;
        join([
            expect("vertex count", built.vertices().len(), 6)?,
            expect("facet count", built.facets().len(), 6)?,
        ])
    });

    case("hexagon_lattice_points", &mut || {
        let pts = hexagon().lattice_points()?;
        let has_center = pts.contains(&IntVec::from_i64s(&[1, 1]));
        join([
            expect("lattice point count", pts.len(), 7)?,
            expect("contains (1,1)", has_center, true)?,
        ])
    });

    case("hexagon_volume_is_6", &mut || {
        expect("normalized volume", hexagon().normalized_volume()?, BigInt::from(6))
    });

    case("cube_stats", &mut || {
        let s = cube(3)?.stats()?;
        join([
            expect("degree", s.degree.clone(), BigInt::from(6))?,
            expect("vertices", s.vertex_count.clone(), BigInt::from(8))?,
            expect("edge points", s.edge_points.clone(), BigInt::from(8))?,
            expect("interior points", s.interior_points.clone(), BigInt::from(0))?,
            expect("perimeter", s.edge_length_sum.clone(), BigInt::from(12))?,
        ])
    });

    case("hexagon_stats", &mut || {
        let s = hexagon().stats()?;
        join([
            expect("degree", s.degree.clone(), BigInt::from(6))?,
            expect("boundary points", s.boundary_points.clone(), BigInt::from(6))?,
            expect("vertices", s.vertex_count.clone(), BigInt::from(6))?,
            expect("lattice points", s.lattice_points.clone(), BigInt::from(7))?,
        ])
    });

    case("dilated_triangle_stats", &mut || {
        let s = simplex(2, 3)?.stats()?;
        join([
            expect("degree", s.degree.clone(), BigInt::from(9))?,
            expect("boundary points", s.boundary_points.clone(), BigInt::from(9))?,
            expect("vertices", s.vertex_count.clone(), BigInt::from(3))?,
            expect("interior points", s.interior_points.clone(), BigInt::from(1))?,
        ])
    });

    case("truncation_extremes", &mut || {
        let mut notes = Vec::new();
        for n in 2..=4usize {
            let full = truncated(n, -1)?;
            let double = simplex(n, 2)?;
            expect(
                &format!("truncated({n},-1) = 2-dilated simplex"),
                full.vertices() == double.vertices(),
                true,
            )?;
            let cut = truncated(n, n as i64 - 1)?;
            let unit = simplex(n, 1)?;
            notes.push(expect(
                &format!("truncated({n},{}) = unit simplex", n - 1),
                cut.vertices() == unit.vertices(),
                true,
            )?);
        }
        join(notes)
    });

    case("truncations_are_smooth_subpolytopes", &mut || {
        let mut notes = Vec::new();
        for n in 2..=5usize {
            for k in 0..=(n as i64 - 2) {
                let p = truncated(n, k)?;
                p.require_smooth()?;
                notes.push(expect(
                    &format!("truncated({n},{k}) in doubled simplex"),
                    is_subpolytope_of_doubled_simplex(&p)?,
                    true,
                )?);
            }
        }
        join(notes)
    });

    case("scroll_polytopes_are_smooth", &mut || {
        for ds in [vec![1u64, 3], vec![1, 2, 2], vec![2, 2, 1], vec![1, 1, 1, 2]] {
            scroll_polytope(&ds)?.require_smooth()?;
        }
        Ok("scrolls (1,3), (1,2,2), (2,2,1), (1,1,1,2) all smooth".into())
    });

    case("scroll_122_shape", &mut || {
        let p = scroll_polytope(&[1, 2, 2])?;
        let long_edge_lengths: Vec<BigInt> = p
            .edges()
            .iter()
            .map(|e| p.edge_length(e))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|l| *l == BigInt::from(2))
            .collect();
        join([
            expect("lattice points", p.lattice_points()?.len(), 8)?,
            expect("vertices", p.vertices().len(), 6)?,
            expect("normalized volume", p.normalized_volume()?, BigInt::from(5))?,
            expect("length-2 edges", long_edge_lengths.len(), 2)?,
        ])
    });

    case("truncated_fan_rays", &mut || {
        let mut notes = Vec::new();
        for (n, k) in [(3usize, 1i64), (4, 1)] {
            let fan = truncated(n, k)?.normal_fan()?;
            let mut cut = vec![0i64; n];
            for c in cut.iter_mut().take(k as usize + 1) {
                *c = -1;
            }
            let has_cut_ray = fan.rays().contains(&IntVec::from_i64s(&cut));
            expect(&format!("({n},{k}) ray count"), fan.rays().len(), n + 2)?;
            notes.push(expect(
                &format!("({n},{k}) has ray -e1-…-e{}", k + 1),
                has_cut_ray,
                true,
            )?);
        }
        join(notes)
    });

    // --- Intersection theory ---------------------------------------------

    case("cube_c1_cubed_is_48", &mut || {
        let (fan, _) = chow::fan_and_hyperplane(&cube(3)?)?;
        let c1 = chow::total_chern(&fan)?.graded_part(1);
        expect_rat("∫c1³ on the cube's fan", chow::integrate(&fan, &c1.pow(3))?, 48)
    });

    case("projective_plane_c2_is_3", &mut || {
        let fan = simplex(2, 1)?.normal_fan()?;
        let c2 = chow::total_chern(&fan)?.graded_part(2);
        expect_rat("∫c2 on the P² fan", chow::integrate(&fan, &c2)?, 3)
    });

    case("threefold_euler_counts_maximal_cones", &mut || {
        let mut notes = Vec::new();
        for p in [cube(3)?, scroll_polytope(&[1, 2, 2])?, simplex(3, 2)?] {
            let fan = p.normal_fan()?;
            let c3 = chow::total_chern(&fan)?.graded_part(3);
            let cones = fan.max_cones().len() as i64;
            notes.push(expect_rat(
                &format!("∫c3 vs {cones} maximal cones"),
                chow::integrate(&fan, &c3)?,
                cones,
            )?);
        }
        join(notes)
    });

    case("inverse_chern_series_terms", &mut || {
        let fan = scroll_polytope(&[1, 2, 2])?.normal_fan()?;
        let c = chow::total_chern(&fan)?;
        let s = chow::inverse_total_chern(&fan)?;
        let (c1, c2, c3) = (c.graded_part(1), c.graded_part(2), c.graded_part(3));
        let deg1_ok = s.graded_part(1).add(&c1).is_zero();
        let want3 = c1.mul(&c2).scale(&BigRational::from_integer(BigInt::from(2)))
            .sub(&c1.pow(3))
            .sub(&c3);
        let deg3_ok = s.graded_part(3).sub(&want3).is_zero();
        join([
            expect("degree-1 part = −c1", deg1_ok, true)?,
            expect("degree-3 part = 2c1c2 − c1³ − c3", deg3_ok, true)?,
        ])
    });

    case("noether_on_projective_plane", &mut || {
        let fan = simplex(2, 1)?.normal_fan()?;
        let c = chow::total_chern(&fan)?;
        let c1sq = chow::integrate(&fan, &c.graded_part(1).pow(2))?;
        let c2 = chow::integrate(&fan, &c.graded_part(2))?;
        let td = chow::integrate(&fan, &chow::todd(&fan)?.graded_part(2))?;
        join([
            expect_rat("∫c1²", c1sq.clone(), 9)?,
            expect_rat("∫c2", c2.clone(), 3)?,
            expect_rat("(∫c1²+∫c2)/12 = ∫td₂", (c1sq + c2) / BigRational::from_integer(BigInt::from(12)) - td, 0)?,
        ])
    });

    case("threefold_c1c2_is_24", &mut || {
        let mut notes = Vec::new();
        for p in [cube(3)?, scroll_polytope(&[1, 2, 2])?] {
            let fan = p.normal_fan()?;
            let c = chow::total_chern(&fan)?;
            let prod = c.graded_part(1).mul(&c.graded_part(2));
            notes.push(expect_rat("∫c1c2", chow::integrate(&fan, &prod)?, 24)?);
        }
        join(notes)
    });

    case("truncated_ample_coefficients", &mut || {
        let mut notes = Vec::new();
        for (n, k) in [(3usize, 1usize), (4, 1)] {
            let p = truncated(n, k as i64)?;
            let fan = p.normal_fan()?;
            let ample = chow::ample_from_polytope(&p)?;
            let mut all = vec![BigInt::from(0); n];
            all.push(BigInt::from(1));
            all.push(BigInt::from(2));
            let mut got: Vec<BigInt> = ample.coefficients().to_vec();
            got.sort();
            expect(
                &format!("({n},{k}) coefficient multiset 0…0,1,2"),
                got == all,
                true,
            )?;
            // The coefficient 2 sits on the ray normal to the doubling facet,
            // the 1 on the truncation facet's ray.
            let sum_ray = IntVec::from_i64s(&vec![-1; n]);
            let mut cut = vec![0i64; n];
            for c in cut.iter_mut().take(k + 1) {
                *c = -1;
            }
            let at = |ray: &IntVec| -> Result<BigInt> {
                let i = fan
                    .rays()
                    .iter()
                    .position(|r| r == ray)
                    .ok_or_else(|| Error::internal("expected ray missing"))?;
                Ok(ample.coefficients()[i].clone())
            };
            expect(&format!("({n},{k}) doubling facet"), at(&sum_ray)?, BigInt::from(2))?;
            notes.push(expect(
                &format!("({n},{k}) truncation facet"),
                at(&IntVec::from_i64s(&cut))?,
                BigInt::from(1),
            )?);
        }
        join(notes)
    });

    case("hexagon_hyperplane_squares_to_6", &mut || {
        let hex = hexagon();
        let (fan, h) = chow::fan_and_hyperplane(&hex)?;
        let ample = chow::ample_from_polytope(&hex)?;
        join([
            expect("ample coefficients", ample.coefficients().len(), 6)?,
            expect_rat("∫H²", chow::integrate(&fan, &h.pow(2))?, 6)?,
            expect("degree_of_embedding", chow::degree_of_embedding(&hex)?, BigInt::from(6))?,
        ])
    });

    case("hexagon_riemann_roch_count_is_7", &mut || {
        expect("∫ e^H · td", chow::riemann_roch_count(&hexagon())?, BigInt::from(7))
    });

    case("double_point_values", &mut || {
        join([
            expect("cube", chow::secant_rhs(&cube(3)?)?, BigInt::from(2))?,
            expect("hexagon", chow::secant_rhs(&hexagon())?, BigInt::from(6))?,
        ])
    });

    // --- Classification ----------------------------------------------------

    case("classification_of_named_examples", &mut || {
        let hex = classify(&hexagon())?.family;
        let cube3 = classify(&cube(3)?)?.family;
        let seg = classify(&product_of_dilated_simplices(&[(1, 1), (1, 2)])?)?.family;
        join([
            expect("hexagon", format!("{hex}"), "general".into())?,
            expect("cube", format!("{cube3}"), "general".into())?,
            expect("segment × triangle", format!("{seg}"), "product(1,2)".into())?,
        ])
    });

    case("subpolytope_membership", &mut || {
        let mut notes = Vec::new();
        notes.push(expect(
            "3-dilated triangle",
            is_subpolytope_of_doubled_simplex(&simplex(2, 3)?)?,
            false,
        )?);
        for d in [3u64, 4] {
            notes.push(expect(
                &format!("{d}-dilated segment"),
                is_subpolytope_of_doubled_simplex(&simplex(1, d)?)?,
                false,
            )?);
        }
        join(notes)
    });

    // --- Degree formulas ---------------------------------------------------

    case("veronese_degrees", &mut || {
        join([
            expect("n=2", veronese_secant_degree(2), BigInt::from(3))?,
            expect("n=3", veronese_secant_degree(3), BigInt::from(10))?,
        ])
    });

    case("truncated_degree_fills_at_boundary", &mut || {
        expect("n=3, k=1", truncated_secant_degree(3, 1)?, BigInt::from(1))
    });

    case("product_with_segment_factor_fills", &mut || {
        let mut notes = Vec::new();
        for n in 2..=5 {
            notes.push(expect(
                &format!("ℓ=1, n={n}"),
                product_secant_degree(1, n),
                BigInt::from(1),
            )?);
        }
        join(notes)
    });

    case("scroll_value_vanishes_for_minimal_degree", &mut || {
        join([
            expect("n=3, d=3", scroll_secant_rhs(3, 3), BigInt::from(0))?,
            expect("n=3, d=4", scroll_secant_rhs(3, 4), BigInt::from(0))?,
        ])
    });

    case("surface_degrees", &mut || {
        join([
            expect(
                "3-dilated triangle",
                surface_secant_degree(&simplex(2, 3)?.stats()?)?,
                BigInt::from(15),
            )?,
            expect("hexagon", surface_secant_degree(&hexagon().stats()?)?, BigInt::from(3))?,
        ])
    });

    case("threefold_degrees", &mut || {
        let ok = threefold_secant_degree(&cube(3)?.stats()?, &BigInt::from(48))?;
        let dd = simplex(3, 2)?;
        let (fan, _) = chow::fan_and_hyperplane(&dd)?;
        let c1 = chow::total_chern(&fan)?.graded_part(1);
        let c13 = chow::integrate(&fan, &c1.pow(3))?;
        let c13 = rat_to_int(&c13)?;
        let rejected = matches!(
            threefold_secant_degree(&dd.stats()?, &c13),
            Err(Error::Hypothesis(_))
        );
        join([
            expect("cube (c1³ = 48)", ok, BigInt::from(1))?,
            expect("2-dilated 3-simplex rejected (dim Sec = 6)", rejected, true)?,
        ])
    });

    // --- Full analyses -------------------------------------------------------

    case("analyze_hexagon", &mut || {
        let rep = analyze(&hexagon())?;
        join([
            expect("family", format!("{}", rep.family.family), "general".into())?,
            expect("dim_sec", rep.dim_sec, 5)?,
            expect("r", rep.r, 6)?,
            expect("deg_sec", rep.deg_sec.clone(), BigInt::from(3))?,
            expect("secant_lines", rep.secant_lines == SecantLines::Unique, true)?,
            expect("all cross-checks pass", rep.cross_checks.iter().all(|c| c.pass), true)?,
        ])
    });

    case("analyze_doubled_triangle", &mut || {
        let rep = analyze(&simplex(2, 2)?)?;
        join([
            expect("dim_sec", rep.dim_sec, 4)?,
            expect("deg_sec", rep.deg_sec.clone(), BigInt::from(3))?,
            expect(
                "secant_lines",
                rep.secant_lines == SecantLines::Infinite,
                true,
            )?,
        ])
    });

    case("analyze_triangle", &mut || {
        let rep = analyze(&simplex(2, 1)?)?;
        join([
            expect("dim_sec", rep.dim_sec, 2)?,
            expect("deg_sec", rep.deg_sec.clone(), BigInt::from(1))?,
        ])
    });

    case("analyze_cube", &mut || {
        let rep = analyze(&cube(3)?)?;
        join([
            expect("dim_sec", rep.dim_sec, 7)?,
            expect("dim_sec = r", rep.r, 7)?,
            expect("deg_sec", rep.deg_sec.clone(), BigInt::from(1))?,
            expect("rhs", chow::secant_rhs(&cube(3)?)?, BigInt::from(2))?,
            expect("all cross-checks pass", rep.cross_checks.iter().all(|c| c.pass), true)?,
        ])
    });

    case("analyze_punctured_triangle_points", &mut || {
        let pts: Vec<IntVec> = simplex(2, 3)?
            .lattice_points()?
            .into_iter()
            .filter(|p| *p != IntVec::from_i64s(&[1, 1]))
            .collect();
        let rep = analyze_points(&PointConfiguration::new(pts)?)?;
        join([
            expect("hypothesis", rep.hypothesis_ok, true)?,
            expect("dim_sec", rep.dim_sec.unwrap_or(0), 5)?,
            expect(
                "degree divides",
                rep.deg_divides.clone().unwrap_or_default(),
                BigInt::from(15),
            )?,
        ])
    });

    case("analyze_hexagon_outer_points", &mut || {
        let rep = analyze_points(&PointConfiguration::new(hexagon().vertices().to_vec())?)?;
        join([
            expect("s", rep.s, 5)?,
            expect("dim_sec", rep.dim_sec.unwrap_or(0), 5)?,
            expect("deg_sec", rep.deg_sec.clone().unwrap_or_default(), BigInt::from(1))?,
            expect(
                "degree divides",
                rep.deg_divides.clone().unwrap_or_default(),
                BigInt::from(3),
            )?,
        ])
    });

    // --- End-to-end through the JSON layer ----------------------------------

    case("json_analyze_round_trip", &mut || {
        let text = json::polytope_to_value(&hexagon()).to_string();
        let p = json::polytope_from_json(&text)?;
        let v = json::secant_report_to_value(&analyze(&p)?);
        expect(
            "deg_sec via JSON",
            v.pointer("/deg_sec").cloned().unwrap_or_default(),
            serde_json::Value::from(3),
        )
    });

    case("json_subset_round_trip", &mut || {
        let text = json::points_to_value(hexagon().vertices()).to_string();
        let a = json::points_from_json(&text)?;
        let v = json::subset_report_to_value(&analyze_points(&a)?);
        join([
            expect(
                "dim_sec",
                v.pointer("/dim_sec").cloned().unwrap_or_default(),
                serde_json::Value::from(5),
            )?,
            expect(
                "deg_constraint",
                v.pointer("/deg_constraint").cloned().unwrap_or_default(),
                serde_json::Value::from("divides 3"),
            )?,
            expect(
                "deg_sec",
                v.pointer("/deg_sec").cloned().unwrap_or_default(),
                serde_json::Value::from(1),
            )?,
        ])
    });

    cases
}

fn expect<T: fmt::Display + PartialEq>(what: &str, got: T, want: T) -> Result<String> {
    if got == want {
        Ok(format!("{what} = {got}"))
    } else {
        Err(Error::internal(format!("{what}: got {got}, want {want}")))
    }
}

fn expect_rat(what: &str, got: BigRational, want: i64) -> Result<String> {
    expect(what, got, BigRational::from_integer(BigInt::from(want)))
}

fn rat_to_int(x: &BigRational) -> Result<BigInt> {
    if !x.is_integer() {
        return Err(Error::internal(format!("expected an integer, got {x}")));
    }
    Ok(x.to_integer())
}

fn join(notes: impl IntoIterator<Item = String>) -> Result<String> {
    Ok(notes.into_iter().collect::<Vec<_>>().join("; "))
}
