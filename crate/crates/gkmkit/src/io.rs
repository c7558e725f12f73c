//! Canonical JSON schemas for graphs, tuples, fans, actions and embedding
//! data. Output goes through `serde_json::Value` whose object maps are
//! sorted, so serialization is deterministic and golden-file friendly;
//! coefficients are arbitrary-precision integers (the `arbitrary_precision`
//! feature of serde_json keeps them exact).

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::builders::embedding::{Branch, E2Element, EmbeddingDatum};
use crate::builders::toric::Fan;
use crate::builders::weyl::WeylGroup;
use crate::error::{Error, Result};
use crate::exp_ring::{ExponentVector, LaurentElement};
use crate::gkm_graph::{ActionGenerator, GkmGraph, GraphAction, ValidationReport, Vertex};
use crate::pe_ring::PeTuple;

fn schema_err(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

/// Render a value as canonical pretty JSON with a trailing newline.
pub fn canonical_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}

fn bigint_to_number(c: &BigInt) -> Number {
    Number::from_str(&c.to_string()).expect("integer literal parses")
}

fn number_to_bigint(n: &Number) -> Result<BigInt> {
    BigInt::from_str(&n.to_string())
        .map_err(|_| schema_err(format!("coefficient `{n}` is not an integer")))
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| schema_err(format!("{what} must be an integer")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    let n = as_i64(v, what)?;
    usize::try_from(n).map_err(|_| schema_err(format!("{what} must be nonnegative")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| schema_err(format!("{what} must be an array")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| schema_err(format!("{what} must be an object")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| schema_err(format!("{what} must be a string")))
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| schema_err(format!("missing field `{key}`")))
}

fn int_vec(v: &Value, what: &str) -> Result<Vec<i64>> {
    as_array(v, what)?
        .iter()
        .map(|c| as_i64(c, what))
        .collect()
}

fn int_matrix(v: &Value, what: &str) -> Result<Vec<Vec<i64>>> {
    as_array(v, what)?
        .iter()
        .map(|row| int_vec(row, what))
        .collect()
}

// ---------------------------------------------------------------- Laurent

pub fn laurent_to_value(f: &LaurentElement) -> Value {
    Value::Array(
        f.terms()
            .map(|(exp, coeff)| {
                json!({
                    "exponent": exp.0,
                    "coefficient": Value::Number(bigint_to_number(coeff)),
                })
            })
            .collect(),
    )
}

pub fn laurent_from_value(v: &Value, rank: usize) -> Result<LaurentElement> {
    let mut terms = Vec::new();
    for item in as_array(v, "laurent element")? {
        let obj = as_object(item, "laurent term")?;
        let exp = int_vec(get(obj, "exponent")?, "exponent")?;
        if exp.len() != rank {
            return Err(schema_err(format!(
                "exponent has length {}, expected {rank}",
                exp.len()
            )));
        }
        let coeff = match get(obj, "coefficient")? {
            Value::Number(n) => number_to_bigint(n)?,
            other => return Err(schema_err(format!("coefficient `{other}` is not a number"))),
        };
        terms.push((ExponentVector(exp), coeff));
    }
    LaurentElement::from_terms(rank, terms)
}

// ------------------------------------------------------------------ graph

pub fn graph_to_value(g: &GkmGraph) -> Value {
    json!({
        "lattice_rank": g.rank(),
        "vertices": g.vertices().iter().map(|v| {
            if v.metadata.is_empty() {
                json!({"id": v.id})
            } else {
                json!({"id": v.id, "metadata": v.metadata})
            }
        }).collect::<Vec<_>>(),
        "edges": g.edges().iter().map(|e| json!({
            "u": e.u,
            "v": e.v,
            "weight": e.weight.as_ref().map(|w| w.0.clone()),
        })).collect::<Vec<_>>(),
    })
}

pub fn graph_from_value(v: &Value) -> Result<GkmGraph> {
    let obj = as_object(v, "graph")?;
    let rank = as_usize(get(obj, "lattice_rank")?, "lattice_rank")?;
    let mut vertices = Vec::new();
    for vv in as_array(get(obj, "vertices")?, "vertices")? {
        let vo = as_object(vv, "vertex")?;
        let mut vertex = Vertex::new(as_str(get(vo, "id")?, "vertex id")?);
        if let Some(meta) = vo.get("metadata") {
            let mo = as_object(meta, "metadata")?;
            vertex.metadata = mo
                .iter()
                .map(|(k, v)| Ok((k.clone(), as_str(v, "metadata value")?.to_owned())))
                .collect::<Result<BTreeMap<_, _>>>()?;
        }
        vertices.push(vertex);
    }
    let mut edges = Vec::new();
    for ev in as_array(get(obj, "edges")?, "edges")? {
        let eo = as_object(ev, "edge")?;
        let u = as_str(get(eo, "u")?, "edge endpoint")?.to_owned();
        let v = as_str(get(eo, "v")?, "edge endpoint")?.to_owned();
        let weight = match get(eo, "weight")? {
            Value::Null => None,
            w => Some(ExponentVector(int_vec(w, "edge weight")?)),
        };
        edges.push((u, v, weight));
    }
    GkmGraph::new(rank, vertices, edges)
}

pub fn report_to_value(r: &ValidationReport) -> Value {
    json!({
        "vertex_count": r.vertex_count,
        "edge_count": r.edge_count,
        "loop_count": r.loop_count,
        "directions": r.directions.iter().map(|(dir, count)| json!({
            "direction": dir.0,
            "edges": count,
        })).collect::<Vec<_>>(),
    })
}

// ------------------------------------------------------------------ tuple

pub fn tuple_to_value(graph_ref: &str, t: &PeTuple) -> Value {
    json!({
        "graph_ref": graph_ref,
        "values": t.values().iter().map(|(v, f)| {
            (v.clone(), laurent_to_value(f))
        }).collect::<Map<String, Value>>(),
    })
}

pub fn tuple_from_value(v: &Value, rank: usize) -> Result<(String, PeTuple)> {
    let obj = as_object(v, "tuple")?;
    let graph_ref = as_str(get(obj, "graph_ref")?, "graph_ref")?.to_owned();
    let values_obj = as_object(get(obj, "values")?, "values")?;
    let mut values = BTreeMap::new();
    for (vertex, fv) in values_obj {
        values.insert(vertex.clone(), laurent_from_value(fv, rank)?);
    }
    Ok((graph_ref, PeTuple::new(rank, values)?))
}

pub fn basis_to_value(graph_ref: &str, basis: &[PeTuple]) -> Value {
    json!({
        "rank": basis.len(),
        "basis": basis.iter().map(|t| tuple_to_value(graph_ref, t)).collect::<Vec<_>>(),
    })
}

// -------------------------------------------------------------------- fan

pub fn fan_to_value(fan: &Fan) -> Value {
    json!({
        "rank": fan.rank,
        "rays": fan.rays.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
        "cones": fan.maximal_cones,
    })
}

pub fn fan_from_value(v: &Value) -> Result<Fan> {
    let obj = as_object(v, "fan")?;
    let rank = as_usize(get(obj, "rank")?, "rank")?;
    let rays = as_array(get(obj, "rays")?, "rays")?
        .iter()
        .map(|r| Ok(ExponentVector(int_vec(r, "ray")?)))
        .collect::<Result<Vec<_>>>()?;
    let cones = as_array(get(obj, "cones")?, "cones")?
        .iter()
        .map(|c| {
            as_array(c, "cone")?
                .iter()
                .map(|i| as_usize(i, "ray index"))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Fan::new(rank, rays, cones)
}

// ----------------------------------------------------------------- action

pub fn action_to_value(a: &GraphAction) -> Value {
    json!({
        "generators": a.generators.iter().map(|g| json!({
            "vertex_map": g.vertex_map,
            "lattice_map": g.lattice_map,
        })).collect::<Vec<_>>(),
    })
}

pub fn action_from_value(v: &Value) -> Result<GraphAction> {
    let obj = as_object(v, "action")?;
    let mut generators = Vec::new();
    for gv in as_array(get(obj, "generators")?, "generators")? {
        let go = as_object(gv, "generator")?;
        let vm = as_object(get(go, "vertex_map")?, "vertex_map")?
            .iter()
            .map(|(k, v)| Ok((k.clone(), as_str(v, "vertex image")?.to_owned())))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let lm = int_matrix(get(go, "lattice_map")?, "lattice_map")?;
        generators.push(ActionGenerator {
            vertex_map: vm,
            lattice_map: lm,
        });
    }
    Ok(GraphAction { generators })
}

// -------------------------------------------------------- embedding datum

pub fn datum_from_value(v: &Value) -> Result<EmbeddingDatum> {
    let obj = as_object(v, "embedding datum")?;
    let rank = as_usize(get(obj, "lattice_rank")?, "lattice_rank")?;
    let gens = as_array(get(obj, "weyl_generators")?, "weyl_generators")?
        .iter()
        .map(|m| int_matrix(m, "weyl generator"))
        .collect::<Result<Vec<_>>>()?;
    let weyl = WeylGroup::from_generators(rank, gens, crate::builders::weyl::DEFAULT_GROUP_CAP)?;

    let e1 = as_array(get(obj, "e1")?, "e1")?
        .iter()
        .map(|s| Ok(as_str(s, "e1 name")?.to_owned()))
        .collect::<Result<Vec<_>>>()?;
    let e1_orbit = as_array(get(obj, "e1_orbit")?, "e1_orbit")?
        .iter()
        .map(|i| as_usize(i, "e1_orbit entry"))
        .collect::<Result<Vec<_>>>()?;
    let lambda1 = as_array(get(obj, "lambda1")?, "lambda1")?
        .iter()
        .map(|i| as_usize(i, "lambda1 entry"))
        .collect::<Result<Vec<_>>>()?;
    let e1_action = as_array(get(obj, "e1_action")?, "e1_action")?
        .iter()
        .map(|row| {
            as_array(row, "e1_action row")?
                .iter()
                .map(|i| as_usize(i, "e1_action entry"))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut e2 = Vec::new();
    for ev in as_array(get(obj, "e2")?, "e2")? {
        let eo = as_object(ev, "e2 element")?;
        let branch_obj = as_object(get(eo, "branch")?, "branch")?;
        let branch = match as_str(get(branch_obj, "kind")?, "branch kind")? {
            "reflection" => Branch::Reflection {
                root: ExponentVector(int_vec(get(branch_obj, "root")?, "root")?),
                matrix: int_matrix(get(branch_obj, "matrix")?, "reflection matrix")?,
            },
            "character" => Branch::Character {
                chi: ExponentVector(int_vec(get(branch_obj, "chi")?, "chi")?),
            },
            other => return Err(schema_err(format!("unknown branch kind `{other}`"))),
        };
        e2.push(E2Element {
            name: as_str(get(eo, "name")?, "e2 name")?.to_owned(),
            f1: as_usize(get(eo, "f1")?, "f1")?,
            f2: as_usize(get(eo, "f2")?, "f2")?,
            branch,
        });
    }

    let closed_orbit_graphs = as_array(get(obj, "closed_orbit_graphs")?, "closed_orbit_graphs")?
        .iter()
        .map(graph_from_value)
        .collect::<Result<Vec<_>>>()?;

    let mut labeling = BTreeMap::new();
    for lv in as_array(get(obj, "labeling")?, "labeling")? {
        let lo = as_object(lv, "labeling entry")?;
        let f = as_usize(get(lo, "e1")?, "labeling e1 index")?;
        let word = as_array(get(lo, "word")?, "labeling word")?
            .iter()
            .map(|i| {
                let g = as_usize(i, "word letter")?;
                if g == 0 {
                    return Err(schema_err("word letters are 1-based"));
                }
                Ok(g - 1)
            })
            .collect::<Result<Vec<_>>>()?;
        let w = weyl.product_of(&word)?;
        let vertex = as_str(get(lo, "vertex")?, "labeling vertex")?.to_owned();
        labeling.insert((f, w), vertex);
    }

    Ok(EmbeddingDatum {
        weyl,
        e1,
        e1_orbit,
        lambda1,
        e1_action,
        e2,
        closed_orbit_graphs,
        labeling,
    })
}
