//! Named example graphs bundled with expected invariants.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::plumbing::{
    canonical_k2s, determinant, homology, isomorphic, minimal_cycle, pairing_with_vertices, star_shape, PlumbingGraph,
};
use crate::seifert::{
    brieskorn_mu, brieskorn_pg, brieskorn_seifert, laufer_check, pinkham_pg, seifert_to_graph, uac_brieskorn,
    BrieskornTriple,
};
use crate::splice::{semigroup_condition, splice_diagram};
use crate::superisolated::{build_graph, SisInput};

pub const FIXTURES_JSON: &str = include_str!("../data/fixtures.json");

#[derive(Clone, Debug, Deserialize)]
pub struct Expectation {
    pub check: String,
    pub value: Value,
    pub source: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    pub graph: PlumbingGraph,
    pub expected: Vec<Expectation>,
}

#[derive(Deserialize)]
struct FixtureFile {
    fixtures: Vec<Fixture>,
}

pub fn all() -> Result<Vec<Fixture>> {
    Ok(serde_json::from_str::<FixtureFile>(FIXTURES_JSON)?.fixtures)
}

pub fn get(name: &str) -> Result<Fixture> {
    all()?
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::Validation(format!("no fixture named {name:?}")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub fixture: String,
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// Every expectation of every fixture, in file order.
pub fn verify_all() -> Result<Vec<CheckOutcome>> {
    let fixtures = all()?;
    let per: Vec<Vec<CheckOutcome>> = fixtures.par_iter().map(verify).collect();
    Ok(per.into_iter().flatten().collect())
}

pub fn verify(f: &Fixture) -> Vec<CheckOutcome> {
    f.expected
        .iter()
        .map(|e| {
            let actual = evaluate(&f.graph, &e.check, &e.value);
            let (actual, pass) = match actual {
                Ok(v) => {
                    let pass = v == e.value;
                    (v.to_string(), pass)
                }
                Err(err) => (format!("error: {err}"), false),
            };
            CheckOutcome { fixture: f.name.clone(), check: e.check.clone(), expected: e.value.to_string(), actual, pass }
        })
        .collect()
}

fn int_list(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big_value).collect())
}

fn big_value(b: &BigInt) -> Value {
    serde_json::from_str(&b.to_string()).expect("integer literal")
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Serde(format!("expectation lacks {key:?}")))
}

fn triple(v: &Value) -> Result<BrieskornTriple> {
    let a: Vec<u64> = serde_json::from_value(v.clone())?;
    let [a1, a2, a3] = a[..] else {
        return Err(Error::Serde("Brieskorn triple needs three exponents".into()));
    };
    BrieskornTriple::new(a1, a2, a3)
}

/// Computes the quantity named by `check` on `g`. Checks that compare against
/// a constructed object take their parameters from `expected` and return it
/// unchanged on success.
fn evaluate(g: &PlumbingGraph, check: &str, expected: &Value) -> Result<Value> {
    Ok(match check {
        "homology" => int_list(&homology(g)?.factors),
        "determinant" => big_value(&determinant(g)),
        "k2s" => Value::String(canonical_k2s(g)?.1.to_string()),
        "pinkham_pg" => big_value(&pinkham_pg(&star_shape(g)?)?),
        "seifert" => {
            let s = star_shape(g)?;
            serde_json::json!({ "b": s.b, "legs": s.sorted_legs() })
        }
        "zmin_pairing" => int_list(&pairing_with_vertices(g, &minimal_cycle(g)?)?),
        "semigroup_passes" => Value::Bool(semigroup_condition(&splice_diagram(g)?).passes),
        "semigroup_witness" => {
            let node = field(expected, "node")?.as_u64().unwrap_or(u64::MAX);
            let verdict = semigroup_condition(&splice_diagram(g)?);
            match verdict.failures.iter().find(|f| u64::from(f.node) == node) {
                Some(f) => serde_json::json!({
                    "node": f.node,
                    "toward": f.toward,
                    "weight": big_value(&f.weight),
                    "generators": int_list(&f.generators),
                }),
                None => Value::Null,
            }
        }
        "isomorphic_to_sis" => {
            let d = field(expected, "d")?.as_u64().unwrap_or(0) as u32;
            let cusps = field(expected, "cusps")?.as_str().unwrap_or_default();
            let built = build_graph(&SisInput::parse(d, cusps)?);
            if isomorphic(g, &built) { expected.clone() } else { Value::String(format!("not isomorphic: {}", built.to_json())) }
        }
        "isomorphic_to_brieskorn" => {
            let built = seifert_to_graph(&brieskorn_seifert(triple(expected)?)?);
            if isomorphic(g, &built) { expected.clone() } else { Value::String(format!("not isomorphic: {}", built.to_json())) }
        }
        "isomorphic_to_uac" => {
            let d = field(expected, "d")?.as_u64().unwrap_or(0);
            let input = SisInput::parse(d as u32, field(expected, "cusps")?.as_str().unwrap_or_default())?;
            let t = uac_brieskorn(d, input.cusps())?;
            let built = seifert_to_graph(&brieskorn_seifert(t)?);
            if isomorphic(g, &built) { expected.clone() } else { Value::String(format!("not isomorphic to Sigma{t}")) }
        }
        "brieskorn_mu" | "brieskorn_pg" => {
            let t = brieskorn_triple_of(g)?;
            let n = if check == "brieskorn_mu" { brieskorn_mu(t) } else { brieskorn_pg(t) };
            Value::from(n)
        }
        "laufer" => {
            let mu: BigInt = field(expected, "mu")?.as_u64().unwrap_or(0).into();
            let pg: BigInt = field(expected, "pg")?.as_u64().unwrap_or(0).into();
            let k2s = canonical_k2s(g)?.1;
            if laufer_check(&mu, &pg, &k2s) { expected.clone() } else { Value::String(format!("12 p_g != mu - ({k2s})")) }
        }
        other => return Err(Error::Validation(format!("unknown check {other:?}"))),
    })
}

/// The Brieskorn triple whose graph is this one, searched among the triples
/// named by the fixture set.
fn brieskorn_triple_of(g: &PlumbingGraph) -> Result<BrieskornTriple> {
    for f in all()? {
        for e in f.expected.iter().filter(|e| e.check == "isomorphic_to_brieskorn") {
            let t = triple(&e.value)?;
            if isomorphic(g, &seifert_to_graph(&brieskorn_seifert(t)?)) {
                return Ok(t);
            }
        }
    }
    Err(Error::Validation("graph is not one of the bundled Brieskorn graphs".into()))
}

/// `(name, pretty JSON)` for every fixture graph.
pub fn dump() -> Result<Vec<(String, String)>> {
    Ok(all()?.into_iter().map(|f| (f.name, f.graph.to_json_pretty())).collect())
}

pub fn all_pass(outcomes: &[CheckOutcome]) -> bool {
    !outcomes.is_empty() && outcomes.iter().all(|o| o.pass)
}

/// Whether `g` is unimodular.
pub fn is_unimodular(g: &PlumbingGraph) -> bool {
    determinant(g).is_one()
}
