//! Superisolated surface singularities `f = f_d + l^{d+1}` whose tangent cone
//! `{f_d = 0}` is a rational cuspidal curve. Everything here is determined by
//! the degree `d` and the multiplicity sequences of the cusps.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::branch::{parse_cusp_list, MultiplicitySequence, PlaneBranch};
use crate::error::{Error, Result};
use crate::exactmath::{int, IntPolynomial, Rational};
use crate::plumbing::{canonical_k2s, homology, PlumbingGraph, Vertex};

/// Degree plus cusp list, validated against the genus formula
/// `Σ μᵢ = (d−1)(d−2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SisInput {
    d: u32,
    cusps: Vec<PlaneBranch>,
}

impl SisInput {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn cusps(&self) -> &[PlaneBranch] {
        &self.cusps
    }

    pub fn sequences(&self) -> Vec<MultiplicitySequence> {
        self.cusps.iter().map(|c| c.sequence().clone()).collect()
    }

    pub fn cusp_notation(&self) -> String {
        self.cusps.iter().map(|c| c.sequence().to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse(d: u32, cusps: &str) -> Result<Self> {
        validate(d, &parse_cusp_list(cusps)?)
    }

    /// δ of the whole curve, `Σ δᵢ`.
    pub fn total_delta(&self) -> u64 {
        self.cusps.iter().map(PlaneBranch::delta).sum()
    }
}

pub fn validate(d: u32, cusps: &[MultiplicitySequence]) -> Result<SisInput> {
    if d < 3 {
        return Err(Error::Validation(format!("degree {d} < 3")));
    }
    if cusps.is_empty() {
        return Err(Error::Validation("at least one cusp is required".into()));
    }
    let mut branches = Vec::with_capacity(cusps.len());
    for s in cusps {
        if s.multiplicity() > d - 1 {
            return Err(Error::Validation(format!("cusp {s} has multiplicity {} > d − 1 = {}", s.multiplicity(), d - 1)));
        }
        branches.push(PlaneBranch::new(s.clone()).map_err(|e| Error::Validation(e.to_string()))?);
    }
    let sum: u64 = branches.iter().map(PlaneBranch::milnor).sum();
    let want = u64::from(d - 1) * u64::from(d - 2);
    if sum != want {
        let parts: Vec<String> = branches.iter().map(|b| b.milnor().to_string()).collect();
        return Err(Error::Validation(format!(
            "Milnor numbers {} sum to {sum}, but a rational cuspidal curve of degree {d} needs (d−1)(d−2) = {want}",
            parts.join(" + ")
        )));
    }
    Ok(SisInput { d, cusps: branches })
}

/// Minimal good resolution graph: the cusps' embedded resolution graphs with
/// their (−1)-vertices joined to a central vertex of Euler number
/// `−d − Σ aᵢ`. The central vertex has id 0.
pub fn build_graph(input: &SisInput) -> PlumbingGraph {
    let mut vertices = vec![Vertex::new(0, 0)];
    let mut edges = Vec::new();
    let mut next = 1u32;
    let mut central = -i64::from(input.d);
    for cusp in &input.cusps {
        let res = cusp.resolution();
        let sub = res.to_plumbing(next);
        central -= res.arrow_multiplicity() as i64;
        edges.push([0, next + res.arrow as u32]);
        edges.extend_from_slice(sub.edges());
        vertices.extend_from_slice(sub.vertices());
        next += sub.len() as u32;
    }
    vertices[0].euler = central;
    PlumbingGraph::new(vertices, edges).expect("superisolated graph is a tree")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForms {
    pub k2s: BigInt,
    pub mu: BigInt,
    pub pg: BigInt,
    pub h_order: BigInt,
}

/// `K²+s = −d(d−2)²+1`, `μ = (d−1)³+(d−1)(d−2)`, `p_g = d(d−1)(d−2)/6`, `|H| = d`.
pub fn closed_forms(d: u32) -> ClosedForms {
    let d = BigInt::from(d);
    let one = BigInt::one();
    let dm1 = &d - &one;
    let dm2 = &d - 2;
    ClosedForms {
        k2s: &one - &d * &dm2 * &dm2,
        mu: &dm1 * &dm1 * &dm1 + &dm1 * &dm2,
        pg: &d * &dm1 * &dm2 / 6,
        h_order: d,
    }
}

/// `P = ∏ Δᵢ`
pub fn cusp_product(input: &SisInput) -> Result<IntPolynomial> {
    input.cusps.iter().try_fold(IntPolynomial::one(), |acc, c| Ok(&acc * &c.alexander()?))
}

/// `Δ_f(t) = (t^d − 1)/(t − 1) · ∏ Δᵢ(t^{d+1})`
pub fn char_poly(input: &SisInput) -> Result<IntPolynomial> {
    let d = input.d as usize;
    let mut p = IntPolynomial::from_coeffs(vec![1; d]);
    for c in &input.cusps {
        p = &p * &c.alexander()?.compose_power(d + 1);
    }
    Ok(p)
}

/// Second derivative at 1 of `t^{−δ} p(t)` where `deg p = 2δ`.
fn symmetrized_second_derivative(p: &IntPolynomial) -> Rational {
    let deg = p.degree().unwrap_or(0) as i64;
    let delta = Rational::new(deg.into(), 2.into());
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let s = int(k as i64) - &delta;
            Rational::from(c.clone()) * &s * (&s - int(1))
        })
        .sum()
}

/// Casson–Walker invariant `λ = −½ Δ̄''(1) + (d−1)(d−2)/24`.
pub fn casson_walker(input: &SisInput) -> Result<Rational> {
    let whole = symmetrized_second_derivative(&cusp_product(input)?);
    let mut parts = Rational::zero();
    for c in &input.cusps {
        parts += symmetrized_second_derivative(&c.alexander()?);
    }
    if parts != whole {
        return Err(Error::Consistency(format!("Δ̄''(1) = {whole} but Σ Δ̄ᵢ''(1) = {parts}")));
    }
    let d = i64::from(input.d);
    Ok(whole * rat_half_neg() + Rational::new(((d - 1) * (d - 2)).into(), 24.into()))
}

fn rat_half_neg() -> Rational {
    Rational::new((-1).into(), 2.into())
}

/// `Σ_{ξ^d = 1 ≠ ξ} 1/(ξ − 1) = −(d − 1)/2`
pub fn root_sum_s1(d: u32) -> Rational {
    Rational::new((-(i64::from(d) - 1)).into(), 2.into())
}

/// `Σ_{ξ^d = 1 ≠ ξ} 1/(ξ − 1)² = −(d − 1)(d − 5)/12`
pub fn root_sum_s2(d: u32) -> Rational {
    let d = i64::from(d);
    Rational::new((-(d - 1) * (d - 5)).into(), 12.into())
}

/// Reidemeister–Turaev torsion `T = (1/d) Σ_{ξ^d=1≠ξ} ∏Δᵢ(ξ)/(ξ−1)²`,
/// evaluated exactly: reduce `∏Δᵢ` mod `t^d − 1`, split off the Taylor part at
/// `t = 1`, and sum the remaining polynomial over all `d`-th roots of unity.
pub fn torsion(input: &SisInput) -> Result<Rational> {
    let d = input.d as usize;
    let reduced = cusp_product(input)?.reduce_mod_t_pow_minus_one(d);
    let (q, r) = reduced.div_rem_t_minus_one_pow(2);
    // r = a₁(t − 1) + a₀
    let a1 = r.coeff(1);
    let a0 = r.coeff(0) + &a1;
    if !a0.is_one() {
        return Err(Error::Consistency(format!("∏Δᵢ(1) = {a0}, expected 1")));
    }
    let periodic: BigInt = q.coeffs().iter().step_by(d).sum();
    let q_sum = Rational::from(BigInt::from(d) * periodic - q.at_one());
    let total = q_sum + Rational::from(a1) * root_sum_s1(input.d) + root_sum_s2(input.d);
    Ok(total / int(d as i64))
}

/// Everything computed for one superisolated singularity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub d: u32,
    pub cusps: String,
    pub graph: PlumbingGraph,
    pub h_order: BigInt,
    pub k2s: Rational,
    pub mu: BigInt,
    pub pg: BigInt,
    pub delta_f: IntPolynomial,
    pub lambda: Rational,
    pub torsion: Rational,
    pub sw: Rational,
    /// `sw − (K²+s)/8`
    pub swc_rhs: Rational,
    pub swc_holds: bool,
}

impl InvariantReport {
    pub fn swc_rhs_is_integer(&self) -> bool {
        self.swc_rhs.is_integer()
    }

    pub fn verdict(&self) -> Verdict {
        if self.swc_holds {
            Verdict::True
        } else {
            Verdict::False(self.swc_rhs.clone())
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "cusps": self.cusps,
            "graph": serde_json::to_value(&self.graph).expect("graph serializes"),
            "h_order": self.h_order.to_string(),
            "k2s": self.k2s.to_string(),
            "mu": self.mu.to_string(),
            "pg": self.pg.to_string(),
            "delta_f_degree": self.delta_f.degree(),
            "delta_f": self.delta_f.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "lambda": self.lambda.to_string(),
            "torsion": self.torsion.to_string(),
            "sw": self.sw.to_string(),
            "swc_rhs": self.swc_rhs.to_string(),
            "swc_rhs_is_integer": self.swc_rhs_is_integer(),
            "swc_holds": self.swc_holds,
        })
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d = {}, cusps {}", self.d, self.cusps)?;
        writeln!(f, "graph: {} vertices, central Euler number {}", self.graph.len(), self.graph.vertices()[0].euler)?;
        writeln!(f, "|H| = {}", self.h_order)?;
        writeln!(f, "K^2+s = {}", self.k2s)?;
        writeln!(f, "mu = {}", self.mu)?;
        writeln!(f, "p_g = {}", self.pg)?;
        writeln!(f, "deg Delta_f = {}", self.delta_f.degree().unwrap_or(0))?;
        writeln!(f, "lambda = {}", self.lambda)?;
        writeln!(f, "T = {}", self.torsion)?;
        writeln!(f, "sw = {}", self.sw)?;
        writeln!(f, "sw-(K^2+s)/8 = {}", self.swc_rhs)?;
        if !self.swc_rhs_is_integer() {
            writeln!(f, "warning: sw-(K^2+s)/8 is not an integer")?;
        }
        write!(f, "SWC: {}", if self.swc_holds { "TRUE" } else { "FALSE" })
    }
}

/// Assembles the full report, cross-checking the closed forms against the
/// graph-theoretic values.
pub fn sw_verdict(input: &SisInput) -> Result<InvariantReport> {
    let graph = build_graph(input);
    let closed = closed_forms(input.d);

    let (_, k2s) = canonical_k2s(&graph)?;
    if k2s != Rational::from(closed.k2s.clone()) {
        return Err(Error::Consistency(format!("graph K²+s = {k2s}, closed form {}", closed.k2s)));
    }
    let h = homology(&graph)?;
    if h.order() != closed.h_order || !h.is_cyclic() {
        return Err(Error::Consistency(format!("graph homology {h}, expected Z_{}", closed.h_order)));
    }
    let delta_f = char_poly(input)?;
    if delta_f.degree().map(BigInt::from) != Some(closed.mu.clone()) || delta_f.at_one() != closed.h_order {
        return Err(Error::Consistency(format!(
            "Δ_f has degree {:?} and value {} at 1; expected {} and {}",
            delta_f.degree(),
            delta_f.at_one(),
            closed.mu,
            closed.h_order
        )));
    }
    if closed.pg.clone() * 12 != &closed.mu - &closed.k2s {
        return Err(Error::Consistency("12 p_g ≠ μ − (K²+s)".into()));
    }

    let lambda = casson_walker(input)?;
    let torsion = torsion(input)?;
    let sw = -lambda.clone() / Rational::from(closed.h_order.clone()) + &torsion;
    let swc_rhs = &sw - &k2s / int(8);
    let swc_holds = swc_rhs == Rational::from(closed.pg.clone());
    Ok(InvariantReport {
        d: input.d,
        cusps: input.cusp_notation(),
        graph,
        h_order: closed.h_order,
        k2s,
        mu: closed.mu,
        pg: closed.pg,
        delta_f,
        lambda,
        torsion,
        sw,
        swc_rhs,
        swc_holds,
    })
}

/// A table verdict: `True`, or `False(v)` with `v = sw − (K²+s)/8`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False(Rational),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::True => write!(f, "True"),
            Verdict::False(v) => write!(f, "False({v})"),
        }
    }
}

impl FromStr for Verdict {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "True" {
            return Ok(Verdict::True);
        }
        let inner = s
            .strip_prefix("False(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Serde(format!("bad verdict {s:?}")))?;
        let v: Rational = inner.trim().parse().map_err(|_| Error::Serde(format!("bad verdict value {inner:?}")))?;
        Ok(Verdict::False(v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: String,
    pub input: SisInput,
    pub expected: Verdict,
}

#[derive(Deserialize)]
struct CatalogFile {
    catalogs: Vec<CatalogBlock>,
}

#[derive(Deserialize)]
struct CatalogBlock {
    d: u32,
    entries: Vec<RawEntry>,
}

#[derive(Deserialize)]
struct RawEntry {
    label: String,
    cusps: String,
    expected: String,
}

pub const CATALOG_JSON: &str = include_str!("../data/catalog.json");

/// Bundled classification of rational cuspidal curves of degree 4, 5, 6.
pub fn catalog(d: u32) -> Result<Vec<CatalogEntry>> {
    let file: CatalogFile = serde_json::from_str(CATALOG_JSON)?;
    let block = file
        .catalogs
        .into_iter()
        .find(|b| b.d == d)
        .ok_or_else(|| Error::Validation(format!("no bundled catalog for d = {d} (available: 4, 5, 6)")))?;
    block
        .entries
        .into_iter()
        .map(|e| {
            Ok(CatalogEntry { label: e.label, input: SisInput::parse(d, &e.cusps)?, expected: e.expected.parse()? })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub label: String,
    pub report: InvariantReport,
    pub expected: Verdict,
}

impl TableRow {
    pub fn verdict(&self) -> Verdict {
        self.report.verdict()
    }

    pub fn matches_expected(&self) -> bool {
        self.verdict() == self.expected
    }
}

/// One verdict per catalog entry, evaluated in parallel, in catalog order.
pub fn table(d: u32) -> Result<Vec<TableRow>> {
    catalog(d)?
        .into_par_iter()
        .map(|e| Ok(TableRow { report: sw_verdict(&e.input)?, label: e.label, expected: e.expected }))
        .collect()
}

pub fn format_table(rows: &[TableRow]) -> String {
    let width = rows.iter().map(|r| r.report.cusps.len()).max().unwrap_or(0).max(13);
    let mut out = format!("{:<5} {:<width$}  {:>3}  {}\n", "", "type of cusps", "N", "conj");
    for r in rows {
        let n = r.report.cusps.matches('[').count();
        out.push_str(&format!("{:<5} {:<width$}  {:>3}  {}\n", r.label, r.report.cusps, n, r.verdict()));
    }
    out
}

pub fn table_json(rows: &[TableRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                let v = r.verdict();
                json!({
                    "label": r.label,
                    "cusps": r.report.cusps,
                    "verdict": matches!(v, Verdict::True),
                    "discrepancy": match &v { Verdict::True => Value::Null, Verdict::False(x) => Value::String(x.to_string()) },
                    "expected": r.expected.to_string(),
                    "report": r.report.to_json(),
                })
            })
            .collect(),
    )
}

/// Integer value of a rational, if it has one.
pub fn as_integer(r: &Rational) -> Option<i64> {
    r.is_integer().then(|| r.to_integer().to_i64()).flatten()
}
