//! Plane curve branches given by their multiplicity sequences.
//!
//! A cusp is written in bracket notation: `[4_2,2_3]` stands for the
//! multiplicities `4,4,2,2,2` followed by as many trailing ones as the last
//! multiplicity greater than one, i.e. `[4,4,2,2,2,1,1]`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactmath::IntPolynomial;
use crate::plumbing::{PlumbingGraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiplicitySequence {
    compressed: Vec<(u32, u32)>,
    expanded: Vec<u32>,
}

impl MultiplicitySequence {
    /// Builds a sequence from `(value, repeat)` blocks. Adjacent blocks with
    /// equal values are merged.
    pub fn from_blocks(blocks: &[(u32, u32)]) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidSequence("empty sequence".into()));
        }
        let mut compressed: Vec<(u32, u32)> = Vec::new();
        for &(v, r) in blocks {
            if v < 2 {
                return Err(Error::InvalidSequence(format!("multiplicity {v} < 2")));
            }
            if r < 1 {
                return Err(Error::InvalidSequence(format!("repeat count {r} < 1")));
            }
            match compressed.last_mut() {
                Some((pv, _)) if *pv < v => {
                    return Err(Error::InvalidSequence(format!("increasing multiplicities {pv} < {v}")));
                }
                Some((pv, pr)) if *pv == v => *pr += r,
                _ => compressed.push((v, r)),
            }
        }
        let mut expanded: Vec<u32> =
            compressed.iter().flat_map(|&(v, r)| std::iter::repeat_n(v, r as usize)).collect();
        let last = compressed.last().unwrap().0;
        expanded.extend(std::iter::repeat_n(1, last as usize));
        Ok(MultiplicitySequence { compressed, expanded })
    }

    pub fn compressed(&self) -> &[(u32, u32)] {
        &self.compressed
    }

    /// Full sequence including the trailing ones.
    pub fn expanded(&self) -> &[u32] {
        &self.expanded
    }

    pub fn multiplicity(&self) -> u32 {
        self.expanded[0]
    }

    /// δ = Σ m(m−1)/2
    pub fn delta(&self) -> u64 {
        self.expanded.iter().map(|&m| u64::from(m) * u64::from(m - 1) / 2).sum()
    }

    pub fn milnor(&self) -> u64 {
        2 * self.delta()
    }
}

impl fmt::Display for MultiplicitySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .compressed
            .iter()
            .map(|&(v, r)| if r == 1 { v.to_string() } else { format!("{v}_{r}") })
            .collect();
        write!(f, "[{}]", items.join(","))
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        text.parse().map_err(|_| Error::Parse { pos: start, msg: format!("integer out of range: {text}") })
    }

    fn sequence(&mut self) -> Result<MultiplicitySequence> {
        let start = self.pos;
        self.expect(b'[')?;
        let mut blocks = Vec::new();
        loop {
            let item_pos = self.pos;
            let v = self.int()?;
            let r = if self.peek() == Some(b'_') {
                self.pos += 1;
                self.int()?
            } else {
                1
            };
            if v < 2 {
                return Err(Error::Parse { pos: item_pos, msg: format!("multiplicity {v} must be at least 2") });
            }
            if r < 1 {
                return Err(Error::Parse { pos: item_pos, msg: "repeat count must be positive".into() });
            }
            if let Some(&(pv, _)) = blocks.last() {
                if v > pv {
                    return Err(Error::Parse {
                        pos: item_pos,
                        msg: format!("multiplicities must be non-increasing ({pv} then {v})"),
                    });
                }
            }
            blocks.push((v, r));
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    break;
                }
                _ => return self.err("expected ',' or ']'"),
            }
        }
        MultiplicitySequence::from_blocks(&blocks)
            .map_err(|e| Error::Parse { pos: start, msg: e.to_string() })
    }
}

/// Parses a single cusp such as `[4_2,2_3]`.
pub fn parse_sequence(text: &str) -> Result<MultiplicitySequence> {
    let mut c = Cursor::new(text);
    let seq = c.sequence()?;
    if c.peek().is_some() {
        return c.err("trailing input");
    }
    Ok(seq)
}

/// Parses a comma-separated list of cusps such as `[3],[2_3]`.
pub fn parse_cusp_list(text: &str) -> Result<Vec<MultiplicitySequence>> {
    let mut c = Cursor::new(text);
    let mut out = vec![c.sequence()?];
    while c.peek() == Some(b',') {
        c.pos += 1;
        out.push(c.sequence()?);
    }
    if c.peek().is_some() {
        return c.err("trailing input");
    }
    Ok(out)
}

impl FromStr for MultiplicitySequence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_sequence(s)
    }
}

/// For each infinitely near point, the earlier points it is proximate to
/// (ascending).
pub fn proximity(seq: &MultiplicitySequence) -> Result<Vec<Vec<usize>>> {
    let m = seq.expanded();
    let n = m.len();
    let mut prox = vec![Vec::new(); n];
    for i in 0..n - 1 {
        let mut sum = 0;
        let mut j = i + 1;
        while sum < m[i] && j < n {
            sum += m[j];
            prox[j].push(i);
            j += 1;
        }
        if sum != m[i] {
            return Err(Error::InvalidSequence(format!(
                "{seq}: no run of points after position {i} sums to {}",
                m[i]
            )));
        }
    }
    for (j, p) in prox.iter().enumerate().skip(1) {
        if p.len() > 2 {
            return Err(Error::InvalidSequence(format!(
                "{seq}: point {j} would be proximate to {} earlier points",
                p.len()
            )));
        }
    }
    Ok(prox)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionVertex {
    pub euler: i64,
    /// Multiplicity of the pulled-back function along this divisor.
    pub multiplicity: u64,
}

/// Minimal embedded resolution graph of a branch; vertex `i` is the
/// exceptional curve of the `i`-th blow-up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedResolutionGraph {
    pub vertices: Vec<ResolutionVertex>,
    pub edges: Vec<(usize, usize)>,
    /// The unique (−1)-vertex meeting the strict transform.
    pub arrow: usize,
}

impl EmbeddedResolutionGraph {
    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn arrow_multiplicity(&self) -> u64 {
        self.vertices[self.arrow].multiplicity
    }

    /// Plumbing graph with vertex ids `first_id, first_id + 1, …`.
    pub fn to_plumbing(&self, first_id: u32) -> PlumbingGraph {
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| Vertex::new(first_id + i as u32, v.euler))
            .collect();
        let edges = self.edges.iter().map(|&(a, b)| [first_id + a as u32, first_id + b as u32]).collect();
        PlumbingGraph::new(vertices, edges).expect("embedded resolution graphs are trees")
    }
}

fn blow_up_sequence(prox: &[Vec<usize>], m: &[u32]) -> Result<EmbeddedResolutionGraph> {
    let n = m.len();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut euler = vec![-1i64; n];
    let mut mult = vec![0u64; n];
    for i in 0..n {
        mult[i] = u64::from(m[i]) + prox[i].iter().map(|&j| mult[j]).sum::<u64>();
        for &j in &prox[i] {
            euler[j] -= 1;
        }
        match prox[i].as_slice() {
            [] => {}
            [a] => edges.push((*a, i)),
            [a, b] => {
                let pos = edges
                    .iter()
                    .position(|&(x, y)| (x, y) == (*a, *b) || (x, y) == (*b, *a))
                    .ok_or_else(|| {
                        Error::InvalidSequence(format!(
                            "point {i} is proximate to {a} and {b} whose curves do not meet"
                        ))
                    })?;
                edges.swap_remove(pos);
                edges.push((*a, i));
                edges.push((*b, i));
            }
            _ => unreachable!("checked in proximity"),
        }
    }
    edges.sort_unstable();
    Ok(EmbeddedResolutionGraph {
        vertices: euler
            .into_iter()
            .zip(mult)
            .map(|(euler, multiplicity)| ResolutionVertex { euler, multiplicity })
            .collect(),
        edges,
        arrow: n - 1,
    })
}

/// An irreducible plane curve germ with everything derived from its
/// multiplicity sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneBranch {
    sequence: MultiplicitySequence,
    proximity: Vec<Vec<usize>>,
    resolution: EmbeddedResolutionGraph,
    newton_pairs: Vec<(u64, u64)>,
}

impl PlaneBranch {
    pub fn new(sequence: MultiplicitySequence) -> Result<Self> {
        let proximity = proximity(&sequence)?;
        let resolution = blow_up_sequence(&proximity, sequence.expanded())?;
        let newton_pairs = newton_pairs_of(&sequence)?;
        Ok(PlaneBranch { sequence, proximity, resolution, newton_pairs })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_sequence(text)?)
    }

    pub fn sequence(&self) -> &MultiplicitySequence {
        &self.sequence
    }

    pub fn proximity(&self) -> &[Vec<usize>] {
        &self.proximity
    }

    pub fn resolution(&self) -> &EmbeddedResolutionGraph {
        &self.resolution
    }

    pub fn delta(&self) -> u64 {
        self.sequence.delta()
    }

    pub fn milnor(&self) -> u64 {
        self.sequence.milnor()
    }

    pub fn newton_pairs(&self) -> &[(u64, u64)] {
        &self.newton_pairs
    }

    pub fn is_one_pair(&self) -> bool {
        self.newton_pairs.len() == 1
    }

    /// Alexander polynomial normalized by Δ(1) = 1, computed from the
    /// embedded resolution as `(1−t) · ∏ (1 − t^{M_v})^{valence(v) − 2}`
    /// where the arrow counts towards the valence of its vertex.
    pub fn alexander(&self) -> Result<IntPolynomial> {
        let g = &self.resolution;
        let one_minus = |k: u64| -> IntPolynomial { -&IntPolynomial::t_pow_minus_one(k as usize) };
        let mut num = IntPolynomial::from_coeffs(vec![1, -1]);
        let mut den = IntPolynomial::one();
        for (v, vert) in g.vertices.iter().enumerate() {
            let val = g.valence(v) + usize::from(v == g.arrow);
            let f = one_minus(vert.multiplicity);
            match val {
                1 => den = &den * &f,
                2 => {}
                k => num = &num * &f.pow((k - 2) as u32),
            }
        }
        let delta = num.div_exact(&den)?;
        let expect = 2 * self.delta() as usize;
        if delta.at_one() != 1.into() || delta.degree() != Some(expect) {
            return Err(Error::Consistency(format!(
                "Alexander polynomial of {} has degree {:?} and value {} at 1",
                self.sequence,
                delta.degree(),
                delta.at_one()
            )));
        }
        Ok(delta)
    }
}

/// Puiseux characteristic `(n; β₁, …, β_g)` read off the Euclidean run
/// structure of the sequence.
pub fn puiseux_characteristic(seq: &MultiplicitySequence) -> Result<(u64, Vec<u64>)> {
    // runs over the expanded sequence, including the trailing ones
    let mut runs: Vec<(u64, u64)> = seq.compressed().iter().map(|&(v, r)| (v.into(), r.into())).collect();
    runs.push((1, u64::from(seq.compressed().last().unwrap().0)));

    let bad = |msg: String| Error::InvalidSequence(format!("{seq}: {msg}"));
    let n = runs[0].0;
    let mut betas = vec![runs[0].1 * n + runs[1].0];
    // value the next run must take to continue the current Euclidean algorithm
    let mut expected_next: Option<u64> = Some(runs[1].0);
    for j in 1..runs.len() {
        let (u, (v, len)) = (runs[j - 1].0, runs[j]);
        if let Some(w) = expected_next {
            if w != v {
                return Err(bad(format!("run of {v}s where the Euclidean algorithm needs {w}")));
            }
        }
        let (q, r) = u.div_rem(&v);
        if r != 0 {
            if len != q {
                return Err(bad(format!("{len} copies of {v} after {u}; expected {q}")));
            }
            expected_next = Some(r);
        } else if v == 1 {
            if len != q || j + 1 != runs.len() {
                return Err(bad("trailing ones do not close the sequence".into()));
            }
        } else {
            if len < q {
                return Err(bad(format!("only {len} copies of {v} after {u}; need at least {q}")));
            }
            // a new characteristic exponent starts inside this run
            let next = runs.get(j + 1).map(|r| r.0).ok_or_else(|| bad("sequence ends early".into()))?;
            let last = *betas.last().unwrap();
            betas.push(last + (len - q) * v + next);
            expected_next = Some(next);
        }
    }
    Ok((n, betas))
}

fn newton_pairs_of(seq: &MultiplicitySequence) -> Result<Vec<(u64, u64)>> {
    let (n, betas) = puiseux_characteristic(seq)?;
    let mut pairs = Vec::with_capacity(betas.len());
    let mut e_prev = n;
    let mut beta_prev = 0;
    for &b in &betas {
        let e = e_prev.gcd(&b);
        pairs.push((e_prev / e, (b - beta_prev) / e));
        e_prev = e;
        beta_prev = b;
    }
    if e_prev != 1 {
        return Err(Error::InvalidSequence(format!("{seq}: characteristic does not reach gcd 1")));
    }
    Ok(pairs)
}

/// Forward expansion of Newton pairs `(p_k, q_k)` into the multiplicity
/// sequence (concatenated Euclidean runs).
pub fn sequence_from_newton_pairs(pairs: &[(u64, u64)]) -> Result<MultiplicitySequence> {
    if pairs.is_empty() {
        return Err(Error::InvalidSequence("no Newton pairs".into()));
    }
    for (k, &(p, q)) in pairs.iter().enumerate() {
        if p < 2 || q < 1 || p.gcd(&q) != 1 {
            return Err(Error::InvalidSequence(format!("bad Newton pair ({p},{q})")));
        }
        if k == 0 && q <= p {
            return Err(Error::InvalidSequence(format!("first Newton pair ({p},{q}) needs q > p")));
        }
    }
    let n: u64 = pairs.iter().map(|p| p.0).product();
    let mut out: Vec<u32> = Vec::new();
    let mut e = n;
    let mut beta_prev = 0;
    for &(p, q) in pairs {
        let e_next = e / p;
        let beta = beta_prev + q * e_next;
        let (mut a, mut b) = (beta - beta_prev, e);
        while b > 0 {
            let v = u32::try_from(b).map_err(|_| Error::InvalidSequence("multiplicity overflow".into()))?;
            out.extend(std::iter::repeat_n(v, (a / b) as usize));
            (a, b) = (b, a % b);
        }
        e = e_next;
        beta_prev = beta;
    }
    let mut blocks: Vec<(u32, u32)> = Vec::new();
    for v in out.into_iter().filter(|&v| v > 1) {
        match blocks.last_mut() {
            Some((pv, r)) if *pv == v => *r += 1,
            _ => blocks.push((v, 1)),
        }
    }
    MultiplicitySequence::from_blocks(&blocks)
}

/// `(t^{pq} − 1)(t − 1) / ((t^p − 1)(t^q − 1))`
pub fn torus_knot_alexander(p: u64, q: u64) -> IntPolynomial {
    let num = &IntPolynomial::t_pow_minus_one((p * q) as usize) * &IntPolynomial::t_pow_minus_one(1);
    let den = &IntPolynomial::t_pow_minus_one(p as usize) * &IntPolynomial::t_pow_minus_one(q as usize);
    num.div_exact(&den).expect("torus knot quotient is exact")
}
