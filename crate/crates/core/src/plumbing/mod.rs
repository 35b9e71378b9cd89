//! Plumbing trees and the invariants read off their intersection form.

mod io;
mod iso;
mod minimize;
mod star;

pub use iso::{canonical_form, isomorphic};
pub use minimize::{minimize, minimize_by};
pub use star::star_shape;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{det, smith_normal_form, solve_rational, IntMatrix, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: u32,
    pub euler: i64,
    #[serde(default)]
    pub genus: u32,
}

impl Vertex {
    pub fn new(id: u32, euler: i64) -> Self {
        Vertex { id, euler, genus: 0 }
    }
}

/// A connected plumbing tree. Vertex ids are arbitrary labels; positions in
/// [`PlumbingGraph::vertices`] index rows of the intersection matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "io::GraphData", into = "io::GraphData")]
pub struct PlumbingGraph {
    vertices: Vec<Vertex>,
    edges: Vec<[u32; 2]>,
    adj: Vec<Vec<usize>>,
    index: HashMap<u32, usize>,
}

impl PlumbingGraph {
    /// Validates ids and checks that the edges form a tree on the vertices.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<[u32; 2]>) -> Result<Self> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id, i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex id {}", v.id)));
            }
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        for &[a, b] in &edges {
            let (Some(&i), Some(&j)) = (index.get(&a), index.get(&b)) else {
                return Err(Error::InvalidGraph(format!("edge [{a},{b}] references an unknown vertex")));
            };
            if i == j {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            adj[i].push(j);
            adj[j].push(i);
        }
        if !vertices.is_empty() && edges.len() != vertices.len() - 1 {
            return Err(Error::InvalidGraph(format!(
                "{} vertices and {} edges cannot form a tree",
                vertices.len(),
                edges.len()
            )));
        }
        let g = PlumbingGraph { vertices, edges, adj, index };
        if !g.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(g)
    }

    pub fn empty() -> Self {
        PlumbingGraph { vertices: Vec::new(), edges: Vec::new(), adj: Vec::new(), index: HashMap::new() }
    }

    fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[u32; 2]] {
        &self.edges
    }

    pub fn index_of(&self, id: u32) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn vertex(&self, id: u32) -> Option<&Vertex> {
        self.index_of(id).map(|i| &self.vertices[i])
    }

    /// Neighbour positions of the vertex at position `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn valence(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    /// Positions of vertices with valence at least three.
    pub fn nodes(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.valence(i) >= 3).collect()
    }

    pub fn next_id(&self) -> u32 {
        self.vertices.iter().map(|v| v.id + 1).max().unwrap_or(0)
    }

    /// Positions of the component of `self − {removed}` that contains `start`.
    pub fn component_without(&self, start: usize, removed: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[removed] = true;
        seen[start] = true;
        let mut out = vec![start];
        let mut k = 0;
        while k < out.len() {
            let v = out[k];
            k += 1;
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    out.push(w);
                }
            }
        }
        out
    }

    /// Positions along the unique path from `from` to `to`, both included.
    pub fn path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.len()];
        parent[from] = from;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &w in &self.adj[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![to];
        let mut v = to;
        while v != from {
            v = parent[v];
            path.push(v);
        }
        path.reverse();
        path
    }

    /// New graph with the same shape and `f` applied to each vertex.
    pub fn map_vertices(&self, f: impl Fn(&Vertex) -> Vertex) -> Result<Self> {
        let mut remap = HashMap::new();
        let vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .map(|v| {
                let nv = f(v);
                remap.insert(v.id, nv.id);
                nv
            })
            .collect();
        let edges = self.edges.iter().map(|&[a, b]| [remap[&a], remap[&b]]).collect();
        Self::new(vertices, edges)
    }

    /// Blow-up of a point on the curve `id` away from the other curves.
    pub fn blow_up_vertex(&self, id: u32) -> Result<Self> {
        let i = self.index_of(id).ok_or_else(|| Error::InvalidGraph(format!("no vertex {id}")))?;
        let new = self.next_id();
        let mut vertices = self.vertices.clone();
        vertices[i].euler -= 1;
        vertices.push(Vertex::new(new, -1));
        let mut edges = self.edges.clone();
        edges.push([id, new]);
        Self::new(vertices, edges)
    }

    /// Blow-up of the intersection point of the curves `a` and `b`.
    pub fn blow_up_edge(&self, a: u32, b: u32) -> Result<Self> {
        let pos = self
            .edges
            .iter()
            .position(|&[x, y]| (x, y) == (a, b) || (x, y) == (b, a))
            .ok_or_else(|| Error::InvalidGraph(format!("no edge [{a},{b}]")))?;
        let new = self.next_id();
        let mut vertices = self.vertices.clone();
        for v in vertices.iter_mut().filter(|v| v.id == a || v.id == b) {
            v.euler -= 1;
        }
        vertices.push(Vertex::new(new, -1));
        let mut edges = self.edges.clone();
        edges.swap_remove(pos);
        edges.push([a, new]);
        edges.push([new, b]);
        Self::new(vertices, edges)
    }

    /// Induced subgraph on the given positions; it must itself be a tree.
    pub fn subgraph(&self, positions: &[usize]) -> Result<Self> {
        let keep: std::collections::HashSet<u32> = positions.iter().map(|&i| self.vertices[i].id).collect();
        let vertices = positions.iter().map(|&i| self.vertices[i].clone()).collect();
        let edges = self.edges.iter().copied().filter(|[a, b]| keep.contains(a) && keep.contains(b)).collect();
        Self::new(vertices, edges)
    }

    fn require_rational_tree(&self) -> Result<()> {
        match self.vertices.iter().find(|v| v.genus > 0) {
            Some(v) => Err(Error::Unsupported(format!(
                "vertex {} has genus {}; only genus-0 trees (rational homology spheres) are supported",
                v.id, v.genus
            ))),
            None => Ok(()),
        }
    }
}

/// Symmetric matrix with the Euler numbers on the diagonal and edge counts
/// off the diagonal.
pub fn intersection_matrix(g: &PlumbingGraph) -> IntMatrix {
    let n = g.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, v) in g.vertices.iter().enumerate() {
        m[(i, i)] = BigInt::from(v.euler);
        for &j in &g.adj[i] {
            m[(i, j)] += 1;
        }
    }
    m
}

/// det(−M); positive for negative definite graphs and 1 on the empty graph.
pub fn determinant(g: &PlumbingGraph) -> BigInt {
    det(&intersection_matrix(g).neg()).expect("intersection matrix is square")
}

pub fn is_negative_definite(g: &PlumbingGraph) -> bool {
    let neg = intersection_matrix(g).neg();
    (1..=g.len()).all(|k| {
        let idx: Vec<usize> = (0..k).collect();
        det(&neg.principal_submatrix(&idx)).expect("square").is_positive()
    })
}

/// Finite abelian group given by its invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupStructure {
    /// Nontrivial factors `d₁ | d₂ | …`; a zero stands for a free summand.
    pub factors: Vec<BigInt>,
}

impl AbelianGroupStructure {
    /// Product of the factors, or 0 for an infinite group.
    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut k = 0;
        while k < self.factors.len() {
            let d = &self.factors[k];
            let run = self.factors[k..].iter().take_while(|x| *x == d).count();
            let base = if d.is_zero() { "Z".to_string() } else { format!("Z_{d}") };
            parts.push(if run == 1 { base } else { format!("{base}^{run}") });
            k += run;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// First homology of the plumbed 3-manifold: the cokernel of the
/// intersection matrix.
pub fn homology(g: &PlumbingGraph) -> Result<AbelianGroupStructure> {
    g.require_rational_tree()?;
    let factors = smith_normal_form(&intersection_matrix(g)).into_iter().filter(|d| !d.is_one()).collect();
    Ok(AbelianGroupStructure { factors })
}

/// Integer or rational coefficients attached to vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle<T> {
    pub entries: Vec<(u32, T)>,
}

impl<T: Clone> Cycle<T> {
    pub fn coeff(&self, id: u32) -> Option<T> {
        self.entries.iter().find(|e| e.0 == id).map(|e| e.1.clone())
    }

    pub fn values(&self) -> Vec<T> {
        self.entries.iter().map(|e| e.1.clone()).collect()
    }
}

/// Canonical cycle `K` (from the adjunction relations
/// `K·E_v = 2g_v − 2 − E_v²`) together with `K² + s`.
pub fn canonical_k2s(g: &PlumbingGraph) -> Result<(Cycle<Rational>, Rational)> {
    let m = intersection_matrix(g);
    let rhs: Vec<Rational> = g
        .vertices
        .iter()
        .map(|v| Rational::from_integer(BigInt::from(2 * i64::from(v.genus) - 2 - v.euler)))
        .collect();
    let k = solve_rational(&m, &rhs)?;
    let k2: Rational = k.iter().zip(&rhs).map(|(a, b)| a * b).sum();
    let k2s = k2 + Rational::from_integer(BigInt::from(g.len()));
    let cycle = Cycle { entries: g.vertices.iter().map(|v| v.id).zip(k).collect() };
    Ok((cycle, k2s))
}

/// Artin's minimal cycle by Laufer's ascent from the all-ones cycle.
pub fn minimal_cycle(g: &PlumbingGraph) -> Result<Cycle<BigInt>> {
    if g.is_empty() {
        return Err(Error::InvalidGraph("empty graph has no minimal cycle".into()));
    }
    if !is_negative_definite(g) {
        return Err(Error::NotNegativeDefinite);
    }
    let m = intersection_matrix(g);
    let mut z = vec![BigInt::one(); g.len()];
    loop {
        let ze = m.mul_vec(&z)?;
        match ze.iter().position(|x| x.is_positive()) {
            Some(v) => z[v] += 1,
            None => break,
        }
    }
    Ok(Cycle { entries: g.vertices.iter().map(|v| v.id).zip(z).collect() })
}

/// `Z·E_v` for every vertex, in vertex order.
pub fn pairing_with_vertices(g: &PlumbingGraph, z: &Cycle<BigInt>) -> Result<Vec<BigInt>> {
    let coeffs: Vec<BigInt> = g
        .vertices
        .iter()
        .map(|v| z.coeff(v.id).ok_or_else(|| Error::InvalidGraph(format!("cycle misses vertex {}", v.id))))
        .collect::<Result<_>>()?;
    intersection_matrix(g).mul_vec(&coeffs)
}
