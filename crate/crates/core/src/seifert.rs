//! Star-shaped graphs: Seifert invariants, Pinkham's geometric genus,
//! Brieskorn spheres, and the Brieskorn model of the universal abelian cover
//! for one-cusp superisolated singularities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::branch::PlaneBranch;
use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::plumbing::{PlumbingGraph, Vertex};

/// Central vertex with Euler number `−b` and one leg per `(α, β)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertData {
    pub b: i64,
    pub legs: Vec<(u64, u64)>,
}

impl SeifertData {
    pub fn new(b: i64, legs: Vec<(u64, u64)>) -> Result<Self> {
        for &(a, beta) in &legs {
            if a < 2 || beta < 1 || beta >= a || a.gcd(&beta) != 1 {
                return Err(Error::Validation(format!("invalid Seifert pair ({a},{beta})")));
            }
        }
        Ok(SeifertData { b, legs })
    }

    /// Orbifold Euler number `−b + Σ βᵢ/αᵢ`.
    pub fn e(&self) -> Rational {
        self.legs.iter().fold(Rational::from_integer((-self.b).into()), |acc, &(a, beta)| {
            acc + Rational::new(beta.into(), a.into())
        })
    }

    pub fn sorted_legs(&self) -> Vec<(u64, u64)> {
        let mut l = self.legs.clone();
        l.sort_unstable();
        l
    }

    pub fn alpha_product(&self) -> BigInt {
        self.legs.iter().map(|&(a, _)| BigInt::from(a)).product()
    }
}

impl std::fmt::Display for SeifertData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let legs: Vec<String> = self.legs.iter().map(|(a, b)| format!("({a},{b})")).collect();
        write!(f, "({}; {})", self.b, legs.join(","))
    }
}

/// Geometric genus of the weighted homogeneous singularity with this
/// star-shaped graph: `Σ_{ℓ≥0} max(0, −1 − ℓb + Σᵢ ⌈ℓβᵢ/αᵢ⌉)`.
pub fn pinkham_pg(s: &SeifertData) -> Result<BigInt> {
    let e = s.e();
    if !e.is_negative() {
        return Err(Error::Validation(format!("Pinkham's formula needs e < 0, got e = {e}")));
    }
    // the ℓ-th term is at most #legs − 1 + ℓe
    let tail = Rational::from_integer(BigInt::from(s.legs.len().saturating_sub(1))) / -e;
    let last = tail.ceil().to_integer().to_u64().expect("summation bound fits in u64");
    let mut pg = BigInt::zero();
    for l in 0..=last {
        let mut term = BigInt::from(-1) - BigInt::from(l) * s.b;
        for &(a, beta) in &s.legs {
            term += (l * beta).div_ceil(a);
        }
        if term.is_positive() {
            pg += term;
        }
    }
    Ok(pg)
}

/// Hirzebruch–Jung expansion `α/β = b₁ − 1/(b₂ − …)`, every `bᵢ ≥ 2`.
pub fn hirzebruch_jung(alpha: u64, beta: u64) -> Vec<u64> {
    let (mut num, mut den) = (alpha, beta);
    let mut out = Vec::new();
    while den > 0 {
        let b = num.div_ceil(den);
        out.push(b);
        (num, den) = (den, b * den - num);
    }
    out
}

/// Star-shaped plumbing: centre id 0, legs numbered outwards.
pub fn seifert_to_graph(s: &SeifertData) -> PlumbingGraph {
    let mut vertices = vec![Vertex::new(0, -s.b)];
    let mut edges = Vec::new();
    let mut next = 1u32;
    for &(a, beta) in &s.legs {
        let mut prev = 0;
        for c in hirzebruch_jung(a, beta) {
            vertices.push(Vertex::new(next, -(c as i64)));
            edges.push([prev, next]);
            prev = next;
            next += 1;
        }
    }
    PlumbingGraph::new(vertices, edges).expect("star graph is a tree")
}

/// Exponents of `x^{a₁} + y^{a₂} + z^{a₃}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BrieskornTriple(pub u64, pub u64, pub u64);

impl BrieskornTriple {
    pub fn new(a1: u64, a2: u64, a3: u64) -> Result<Self> {
        if a1 < 2 || a2 < 2 || a3 < 2 {
            return Err(Error::Validation(format!("Brieskorn exponents must be at least 2: ({a1},{a2},{a3})")));
        }
        if a1.gcd(&a2).gcd(&a3) != 1 {
            return Err(Error::Validation(format!("exponents ({a1},{a2},{a3}) have a common factor")));
        }
        Ok(BrieskornTriple(a1, a2, a3))
    }

    pub fn as_array(&self) -> [u64; 3] {
        [self.0, self.1, self.2]
    }

    pub fn is_pairwise_coprime(&self) -> bool {
        self.0.gcd(&self.1) == 1 && self.0.gcd(&self.2) == 1 && self.1.gcd(&self.2) == 1
    }
}

impl std::fmt::Display for BrieskornTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.0, self.1, self.2)
    }
}

/// Seifert invariants of the link Σ(a₁,a₂,a₃).
pub fn brieskorn_seifert(t: BrieskornTriple) -> Result<SeifertData> {
    let a = t.as_array();
    let l = a[0].lcm(&a[1]).lcm(&a[2]);
    let prod = a[0] * a[1] * a[2];

    let genus2 = 2 + prod / l - (0..3).map(|i| a[(i + 1) % 3].gcd(&a[(i + 2) % 3])).sum::<u64>();
    if genus2 != 0 {
        return Err(Error::Unsupported(format!("triple {t}: positive base genus suspected")));
    }

    let mut legs = Vec::new();
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let alpha = l / a[j].lcm(&a[k]);
        if alpha == 1 {
            continue;
        }
        let copies = a[j].gcd(&a[k]);
        let c = a[i].gcd(&a[j]) * a[i].gcd(&a[k]);
        let step = (l / alpha) % alpha;
        let target = (alpha - c % alpha) % alpha;
        let beta = (1..alpha)
            .find(|&b| (step * b) % alpha == target && b.gcd(&alpha) == 1)
            .ok_or_else(|| Error::Unsupported(format!("triple {t}: no Seifert β for α = {alpha}")))?;
        legs.extend(std::iter::repeat_n((alpha, beta), copies as usize));
    }

    let e = Rational::new(-BigInt::from(prod), BigInt::from(l) * BigInt::from(l));
    let b = legs.iter().fold(-e.clone(), |acc, &(al, be)| acc + Rational::new(be.into(), al.into()));
    if !b.is_integer() || !b.is_positive() {
        return Err(Error::Unsupported(format!(
            "triple {t}: central weight {b} is not a positive integer (positive base genus suspected)"
        )));
    }
    let s = SeifertData::new(b.to_integer().to_i64().expect("small central weight"), legs)?;
    if s.e() != e {
        return Err(Error::Consistency(format!("triple {t}: e = {} but expected {e}", s.e())));
    }
    Ok(s)
}

/// Milnor number `(a₁−1)(a₂−1)(a₃−1)`.
pub fn brieskorn_mu(t: BrieskornTriple) -> u64 {
    (t.0 - 1) * (t.1 - 1) * (t.2 - 1)
}

/// Number of positive lattice points with `k₁/a₁ + k₂/a₂ + k₃/a₃ ≤ 1`.
pub fn brieskorn_pg(t: BrieskornTriple) -> u64 {
    let [a1, a2, a3] = t.as_array();
    let total = a1 * a2 * a3;
    let (w1, w2, w3) = (a2 * a3, a1 * a3, a1 * a2);
    let mut count = 0;
    for k1 in 1..a1 {
        for k2 in 1..a2 {
            let used = k1 * w1 + k2 * w2;
            if used + w3 > total {
                break;
            }
            count += (total - used) / w3;
        }
    }
    count
}

/// `12·p_g == μ − (K² + s)`
pub fn laufer_check(mu: &BigInt, pg: &BigInt, k2s: &Rational) -> bool {
    Rational::from_integer(pg * 12) == Rational::from_integer(mu.clone()) - k2s
}

/// For a superisolated singularity of degree `d` whose curve has a single
/// one-pair cusp `(p, q)`: the Brieskorn exponents `(p, q, pq + d)` of its
/// universal abelian cover model.
pub fn uac_brieskorn(d: u64, cusps: &[PlaneBranch]) -> Result<BrieskornTriple> {
    let [cusp] = cusps else {
        return Err(Error::Unsupported(format!(
            "{} cusps: general universal abelian cover construction out of scope",
            cusps.len()
        )));
    };
    let [(p, q)] = cusp.newton_pairs() else {
        return Err(Error::Unsupported(format!(
            "cusp {} has {} Newton pairs: general universal abelian cover construction out of scope",
            cusp.sequence(),
            cusp.newton_pairs().len()
        )));
    };
    BrieskornTriple::new(*p, *q, p * q + d)
}
