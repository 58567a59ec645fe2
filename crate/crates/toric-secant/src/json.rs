//! Strict, versioned JSON encoding for polytopes, point configurations, and
//! analysis reports.
//!
//! Input files carry a `"schema": 1` marker and exactly one payload key
//! (`"vertices"` or `"points"`); unknown fields are rejected rather than
//! ignored so that a typo never silently changes the meaning of a file.
//! Coordinates may be given as JSON numbers or as decimal strings. On output,
//! integers whose magnitude exceeds 2^53 are rendered as decimal strings —
//! everything below that round-trips exactly through a double, everything
//! above must not be left to a consumer's float parser.
//!
//! serde_json's default map is ordered, so every serialized object has sorted
//! keys and byte-identical output across runs.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

use crate::classify::{Family, FamilyLabel};
use crate::error::{Error, Result};
use crate::polytope::{LatticePolytope, PointConfiguration, PolytopeStats};
use crate::secant::{SecantReport, SubsetReport};
use crate::zlinalg::{AffineUnimodularMap, IntVec};

/// Version tag required in every input file and stamped on every geometric
/// output file.
pub const SCHEMA_VERSION: u64 = 1;

/// Largest magnitude serialized as a JSON number; 2^53, the last integer a
/// double represents exactly.
const MAX_JSON_SAFE: i64 = 1 << 53;

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

/// An exact integer as a JSON value: a number when safe, a decimal string
/// beyond 2^53.
pub fn int_to_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if -MAX_JSON_SAFE <= v && v <= MAX_JSON_SAFE => Value::from(v),
        _ => Value::String(x.to_string()),
    }
}

/// Parse an exact integer from a JSON number or decimal string.
pub fn int_from_value(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(Error::input(format!(
                    "{what}: {n} is not an exactly-representable integer \
                     (write large integers as decimal strings)"
                )))
            }
        }
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| Error::input(format!("{what}: {s:?} is not a decimal integer"))),
        other => Err(Error::input(format!(
            "{what}: expected an integer, got {other}"
        ))),
    }
}

fn vec_to_value(v: &IntVec) -> Value {
    Value::Array(v.iter().map(int_to_value).collect())
}

fn vec_from_value(v: &Value, what: &str) -> Result<IntVec> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::input(format!("{what}: expected an array of integers")))?;
    let coords = arr
        .iter()
        .map(|c| int_from_value(c, what))
        .collect::<Result<Vec<BigInt>>>()?;
    Ok(IntVec::new(coords))
}

fn rows_from_value(v: &Value, what: &str) -> Result<Vec<IntVec>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::input(format!("\"{what}\" must be an array of points")))?;
    arr.iter()
        .enumerate()
        .map(|(i, row)| vec_from_value(row, &format!("{what}[{i}]")))
        .collect()
}

// ---------------------------------------------------------------------------
// Geometric files
// ---------------------------------------------------------------------------

/// Validate the envelope of an input file: a JSON object containing exactly
/// `"schema": 1` and the one expected payload key; returns the payload.
fn payload<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    let map = v
        .as_object()
        .ok_or_else(|| Error::input("top level must be a JSON object"))?;
    for k in map.keys() {
        if k != "schema" && k != key {
            return Err(Error::input(format!(
                "unknown field {k:?} (expected only \"schema\" and {key:?})"
            )));
        }
    }
    match map.get("schema") {
        Some(Value::Number(n)) if n.as_u64() == Some(SCHEMA_VERSION) => {}
        Some(other) => {
            return Err(Error::input(format!(
                "unsupported schema version {other} (this tool reads schema {SCHEMA_VERSION})"
            )))
        }
        None => return Err(Error::input("missing \"schema\" field")),
    }
    map.get(key)
        .ok_or_else(|| Error::input(format!("missing {key:?} field")))
}

/// Parse a polytope file `{"schema": 1, "vertices": [[…], …]}`. The listed
/// points need not be in convex position; the hull is taken.
pub fn polytope_from_json(text: &str) -> Result<LatticePolytope> {
    let v = parse(text)?;
    let rows = rows_from_value(payload(&v, "vertices")?, "vertices")?;
    LatticePolytope::from_vertices(rows)
}

/// Parse a point-configuration file `{"schema": 1, "points": [[…], …]}`.
pub fn points_from_json(text: &str) -> Result<PointConfiguration> {
    let v = parse(text)?;
    let rows = rows_from_value(payload(&v, "points")?, "points")?;
    PointConfiguration::new(rows)
}

fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::input(format!("not valid JSON: {e}")))
}

/// A polytope as a schema-1 vertices file (ambient coordinates, sorted).
pub fn polytope_to_value(p: &LatticePolytope) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), Value::from(SCHEMA_VERSION));
    map.insert(
        "vertices".into(),
        Value::Array(p.vertices().iter().map(vec_to_value).collect()),
    );
    Value::Object(map)
}

/// A point list as a schema-1 points file; accepts any lattice point set
/// (e.g. `lattice_points` output), so results can be fed back in.
pub fn points_to_value(points: &[IntVec]) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), Value::from(SCHEMA_VERSION));
    map.insert(
        "points".into(),
        Value::Array(points.iter().map(vec_to_value).collect()),
    );
    Value::Object(map)
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// Lattice statistics as a flat JSON object.
pub fn stats_to_value(s: &PolytopeStats) -> Value {
    let mut map = Map::new();
    map.insert("dim".into(), Value::from(s.dim as u64));
    map.insert("degree".into(), int_to_value(&s.degree));
    map.insert("lattice_points".into(), int_to_value(&s.lattice_points));
    map.insert("interior_points".into(), int_to_value(&s.interior_points));
    map.insert("boundary_points".into(), int_to_value(&s.boundary_points));
    map.insert("vertex_count".into(), int_to_value(&s.vertex_count));
    map.insert("edge_points".into(), int_to_value(&s.edge_points));
    map.insert("edge_length_sum".into(), int_to_value(&s.edge_length_sum));
    map.insert(
        "facet_volume_sum".into(),
        int_to_value(&s.facet_volume_sum),
    );
    Value::Object(map)
}

fn witness_to_value(w: &AffineUnimodularMap) -> Value {
    let m = w.linear();
    let rows: Vec<Value> = (0..m.nrows())
        .map(|r| vec_to_value(&m.row(r)))
        .collect();
    let mut map = Map::new();
    map.insert("linear".into(), Value::Array(rows));
    map.insert("translation".into(), vec_to_value(w.translation()));
    Value::Object(map)
}

/// A family label with its parameters and, when present, the witness map
/// onto the canonical model.
pub fn family_to_value(label: &FamilyLabel) -> Value {
    let mut map = Map::new();
    match &label.family {
        Family::Simplex { n } => {
            map.insert("family".into(), Value::from("simplex"));
            map.insert("n".into(), Value::from(*n as u64));
        }
        Family::DoubledSimplex { n } => {
            map.insert("family".into(), Value::from("doubled_simplex"));
            map.insert("n".into(), Value::from(*n as u64));
        }
        Family::TruncatedDoubledSimplex { n, k } => {
            map.insert("family".into(), Value::from("truncated"));
            map.insert("n".into(), Value::from(*n as u64));
            map.insert("k".into(), Value::from(*k as u64));
        }
        Family::ProductOfSimplices { l, m } => {
            map.insert("family".into(), Value::from("product"));
            map.insert("l".into(), Value::from(*l as u64));
            map.insert("m".into(), Value::from(*m as u64));
        }
        Family::General => {
            map.insert("family".into(), Value::from("general"));
        }
    }
    if let Some(w) = &label.witness {
        map.insert("witness".into(), witness_to_value(w));
    }
    Value::Object(map)
}

/// A full secant analysis as JSON.
pub fn secant_report_to_value(rep: &SecantReport) -> Value {
    let mut map = Map::new();
    map.insert("n".into(), Value::from(rep.n as u64));
    map.insert("r".into(), Value::from(rep.r as u64));
    map.insert("family".into(), family_to_value(&rep.family));
    map.insert("dim_sec".into(), Value::from(rep.dim_sec as u64));
    map.insert("expected_dim".into(), Value::from(rep.expected_dim as u64));
    map.insert(
        "has_expected_dim".into(),
        Value::Bool(rep.has_expected_dim),
    );
    map.insert("deg_sec".into(), int_to_value(&rep.deg_sec));
    map.insert("deg_phi".into(), Value::from(rep.deg_phi as u64));
    map.insert(
        "secant_lines".into(),
        Value::from(rep.secant_lines.to_string()),
    );
    let checks: Vec<Value> = rep
        .cross_checks
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("name".into(), Value::from(c.name.clone()));
            m.insert("pass".into(), Value::Bool(c.pass));
            m.insert("values".into(), Value::from(c.values.clone()));
            Value::Object(m)
        })
        .collect();
    map.insert("cross_checks".into(), Value::Array(checks));
    Value::Object(map)
}

/// A subset analysis as JSON. Claims licensed by the divisibility theorem
/// appear only when the hypothesis holds; the degree constraint is the
/// string `"divides D"`, and `deg_sec` appears only when the secant variety
/// fills the ambient space (where the degree is exactly 1).
pub fn subset_report_to_value(rep: &SubsetReport) -> Value {
    let mut map = Map::new();
    map.insert("s".into(), Value::from(rep.s as u64));
    map.insert("hypothesis_ok".into(), Value::Bool(rep.hypothesis_ok));
    if !rep.hypothesis_ok {
        map.insert(
            "missing".into(),
            Value::Array(rep.missing.iter().map(vec_to_value).collect()),
        );
        return Value::Object(map);
    }
    if let Some(family) = &rep.family {
        map.insert("family".into(), family_to_value(family));
    }
    if let Some(d) = rep.dim_sec {
        map.insert("dim_sec".into(), Value::from(d as u64));
    }
    if let Some(d) = &rep.deg_divides {
        map.insert("deg_constraint".into(), Value::from(format!("divides {d}")));
    }
    if let Some(d) = &rep.deg_sec {
        map.insert("deg_sec".into(), int_to_value(d));
    }
    if let Some(b) = rep.expected_dim_ok {
        map.insert("expected_dim_ok".into(), Value::Bool(b));
    }
    if let Some(b) = rep.exceptional {
        map.insert("exceptional".into(), Value::Bool(b));
    }
    Value::Object(map)
}
