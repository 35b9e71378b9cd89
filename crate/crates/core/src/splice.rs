//! Splice diagrams of plumbing trees and the semigroup condition.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::plumbing::{determinant, is_negative_definite, PlumbingGraph};

/// The end of a splice edge at a node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeEnd {
    /// Plumbing id of the splice vertex at the other end of the edge.
    pub toward: u32,
    /// Plumbing id of the first vertex after the node along the edge.
    pub first: u32,
    /// `det(−M)` of the branch of `Γ − node` containing `first`.
    pub weight: BigInt,
}

/// Nodes and leaves of a plumbing tree; valence-2 vertices are suppressed.
/// Vertices are named by their plumbing ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpliceDiagram {
    pub nodes: BTreeMap<u32, Vec<NodeEnd>>,
    pub leaves: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupFailure {
    pub node: u32,
    pub toward: u32,
    pub weight: BigInt,
    /// Sorted, with repetitions.
    pub generators: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupVerdict {
    pub passes: bool,
    pub failures: Vec<SemigroupFailure>,
}

pub fn splice_diagram(g: &PlumbingGraph) -> Result<SpliceDiagram> {
    if let Some(v) = g.vertices().iter().find(|v| v.genus > 0) {
        return Err(Error::Unsupported(format!("vertex {} has positive genus", v.id)));
    }
    if !is_negative_definite(g) {
        return Err(Error::NotNegativeDefinite);
    }
    let id = |i: usize| g.vertices()[i].id;
    let mut nodes = BTreeMap::new();
    for v in g.nodes() {
        let mut ends = Vec::new();
        for &first in g.neighbors(v) {
            let (mut prev, mut cur) = (v, first);
            while g.valence(cur) == 2 {
                let next = g.neighbors(cur).iter().copied().find(|&w| w != prev).expect("valence 2");
                (prev, cur) = (cur, next);
            }
            let branch = g.subgraph(&g.component_without(first, v))?;
            ends.push(NodeEnd { toward: id(cur), first: id(first), weight: determinant(&branch) });
        }
        nodes.insert(id(v), ends);
    }
    let leaves = (0..g.len()).filter(|&i| g.valence(i) == 1).map(id).collect();
    Ok(SpliceDiagram { nodes, leaves })
}

impl SpliceDiagram {
    pub fn is_node(&self, id: u32) -> bool {
        self.nodes.contains_key(&id)
    }

    pub fn weights_at(&self, node: u32) -> Vec<BigInt> {
        self.nodes.get(&node).map(|e| e.iter().map(|x| x.weight.clone()).collect()).unwrap_or_default()
    }

    pub fn weight(&self, node: u32, toward: u32) -> Option<&BigInt> {
        self.nodes.get(&node)?.iter().find(|e| e.toward == toward).map(|e| &e.weight)
    }

    /// `ℓ'_{vw}` for every leaf `w` beyond the edge of `v` toward `toward`:
    /// the product, over nodes `u ≠ v` on the path, of the weights at `u` on
    /// edges leaving the path.
    pub fn leaf_products(&self, v: u32, toward: u32) -> Vec<BigInt> {
        let mut out = Vec::new();
        // (current vertex, previous vertex, accumulated product)
        let mut stack = vec![(toward, v, BigInt::one())];
        while let Some((cur, prev, acc)) = stack.pop() {
            let Some(ends) = self.nodes.get(&cur) else {
                out.push(acc);
                continue;
            };
            for e in ends.iter().filter(|e| e.toward != prev) {
                let off: BigInt =
                    ends.iter().filter(|o| o.toward != prev && o.toward != e.toward).map(|o| &o.weight).product();
                stack.push((e.toward, cur, &acc * off));
            }
        }
        out.sort();
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nodes": self.nodes.iter().map(|(id, ends)| json!({
                "id": id,
                "ends": ends.iter().map(|e| json!({
                    "toward": e.toward,
                    "first": e.first,
                    "weight": e.weight.to_string(),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "leaves": self.leaves,
        })
    }
}

/// Every node-to-node weight must lie in the numerical semigroup generated by
/// the leaf products beyond it. Leaf directions impose nothing.
pub fn semigroup_condition(sd: &SpliceDiagram) -> SemigroupVerdict {
    let mut failures = Vec::new();
    for (&v, ends) in &sd.nodes {
        for e in ends.iter().filter(|e| sd.is_node(e.toward)) {
            let generators = sd.leaf_products(v, e.toward);
            if !in_semigroup(&e.weight, &generators) {
                failures.push(SemigroupFailure { node: v, toward: e.toward, weight: e.weight.clone(), generators });
            }
        }
    }
    SemigroupVerdict { passes: failures.is_empty(), failures }
}

/// Membership of `n` in the monoid generated by `gens` (all positive).
///
/// With `m` the smallest generator, `n` is representable iff `n` is at least
/// the smallest representable element of its residue class mod `m`; those
/// minima come from a shortest-path pass over the residues.
pub fn in_semigroup(n: &BigInt, gens: &[BigInt]) -> bool {
    if n.is_zero() {
        return true;
    }
    if n.sign() == num_bigint::Sign::Minus {
        return false;
    }
    let usable: Vec<&BigInt> = gens.iter().filter(|g| *g <= n && !g.is_zero()).collect();
    let Some(&m) = usable.iter().min() else {
        return false;
    };
    let gcd = usable.iter().fold(BigInt::zero(), |acc, g| acc.gcd(g));
    if !(n % &gcd).is_zero() {
        return false;
    }
    let m = m.to_usize().expect("smallest generator fits in memory");
    let apery = apery_minima(m, &usable);
    let r = (n % m).to_usize().expect("residue");
    apery[r].as_ref().is_some_and(|min| min <= n)
}

fn apery_minima(m: usize, gens: &[&BigInt]) -> Vec<Option<BigInt>> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;
    let steps: Vec<(usize, &BigInt)> = gens.iter().map(|g| ((*g % m).to_usize().expect("residue"), *g)).collect();
    let mut best: Vec<Option<BigInt>> = vec![None; m];
    best[0] = Some(BigInt::zero());
    let mut heap = BinaryHeap::from([Reverse((BigInt::zero(), 0usize))]);
    while let Some(Reverse((dist, r))) = heap.pop() {
        if best[r].as_ref() != Some(&dist) {
            continue;
        }
        for &(step, g) in &steps {
            let s = (r + step) % m;
            let cand = &dist + g;
            if best[s].as_ref().is_none_or(|b| cand < *b) {
                best[s] = Some(cand.clone());
                heap.push(Reverse((cand, s)));
            }
        }
    }
    best
}

impl SemigroupVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "passes": self.passes,
            "failures": self.failures.iter().map(|f| json!({
                "node": f.node,
                "toward": f.toward,
                "weight": f.weight.to_string(),
                "generators": f.generators.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for SemigroupVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passes {
            return write!(f, "semigroup condition: satisfied");
        }
        write!(f, "semigroup condition: FAILS")?;
        for x in &self.failures {
            let gens: Vec<String> = x.generators.iter().map(ToString::to_string).collect();
            write!(f, "\n  node {} toward {}: weight {} not in <{}>", x.node, x.toward, x.weight, gens.join(", "))?;
        }
        Ok(())
    }
}

/// Outcome of the semigroup check on a superisolated resolution graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SisScan {
    pub cusps: usize,
    pub central_is_node: bool,
    /// Weights at the central node toward each cusp, when it is a node.
    pub central_weights: Vec<BigInt>,
    pub verdict: SemigroupVerdict,
}

impl SisScan {
    pub fn central_fails(&self) -> bool {
        self.verdict.failures.iter().any(|f| f.node == 0)
    }
}

/// Semigroup check for the graph built from `input`; the central vertex has id 0.
pub fn sis_semigroup_scan(input: &crate::superisolated::SisInput) -> Result<SisScan> {
    let g = crate::superisolated::build_graph(input);
    let sd = splice_diagram(&g)?;
    Ok(SisScan {
        cusps: input.cusps().len(),
        central_is_node: sd.is_node(0),
        central_weights: sd.weights_at(0),
        verdict: semigroup_condition(&sd),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plumbing::tests::{chain, e8};
    use crate::plumbing::{star_shape, Vertex};
    use crate::superisolated::{catalog, SisInput};

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Reachability table up to `n`.
    fn brute_member(n: u64, gens: &[u64]) -> bool {
        let mut ok = vec![false; n as usize + 1];
        ok[0] = true;
        for k in 1..=n as usize {
            ok[k] = gens.iter().any(|&g| g as usize <= k && ok[k - g as usize]);
        }
        ok[n as usize]
    }

    #[test]
    fn membership_matches_brute_force() {
        let sets: [&[u64]; 6] = [&[2, 3], &[5, 7], &[4, 6], &[6, 10, 15], &[3], &[9, 12, 20]];
        for gens in sets {
            let bg: Vec<BigInt> = gens.iter().map(|&g| BigInt::from(g)).collect();
            for n in 0..80u64 {
                assert_eq!(in_semigroup(&BigInt::from(n), &bg), brute_member(n, gens), "{n} in {gens:?}");
            }
        }
        assert!(!in_semigroup(&BigInt::from(1), &[]));
    }

    #[test]
    fn e8_single_node() {
        let sd = splice_diagram(&e8()).unwrap();
        assert_eq!(sd.nodes.len(), 1);
        let mut w = sd.weights_at(0);
        w.sort();
        assert_eq!(w, big(&[2, 3, 5]));
        assert!(semigroup_condition(&sd).passes);
    }

    #[test]
    fn star_weights_are_alphas() {
        let s = star_shape(&e8()).unwrap();
        let mut alphas: Vec<BigInt> = s.legs.iter().map(|&(a, _)| BigInt::from(a)).collect();
        alphas.sort();
        let mut w = splice_diagram(&e8()).unwrap().weights_at(0);
        w.sort();
        assert_eq!(w, alphas);
    }

    #[test]
    fn chains_have_no_nodes() {
        let sd = splice_diagram(&chain(&[-2, -3, -2])).unwrap();
        assert!(sd.nodes.is_empty());
        assert_eq!(sd.leaves, vec![0, 2]);
        assert!(semigroup_condition(&sd).passes);
        assert!(matches!(splice_diagram(&chain(&[-1, -1])), Err(Error::NotNegativeDefinite)));
    }

    /// Two E8-type nodes on a −2 chain with a −4; homology Z₄.
    fn suspension() -> PlumbingGraph {
        let e = [-2, -2, -2, -2, -2, -2, -2, -4, -2, -2, -2];
        let vertices = e.iter().enumerate().map(|(i, &x)| Vertex::new(i as u32, x)).collect();
        let mut edges: Vec<[u32; 2]> = (1..9).map(|i| [i - 1, i]).collect();
        edges.extend([[2, 9], [7, 10]]);
        PlumbingGraph::new(vertices, edges).unwrap()
    }

    #[test]
    fn e8_subgraph_witness() {
        let sd = splice_diagram(&suspension()).unwrap();
        assert_eq!(sd.weight(7, 2), Some(&BigInt::from(1)));
        assert_eq!(sd.leaf_products(7, 2), big(&[2, 3]));
        let v = semigroup_condition(&sd);
        assert!(!v.passes);
        let f = v.failures.iter().find(|f| f.node == 7).unwrap();
        assert_eq!((f.toward, f.weight.clone(), f.generators.clone()), (2, BigInt::from(1), big(&[2, 3])));
    }

    #[test]
    fn steiner_quartic_fails_at_center() {
        let scan = sis_semigroup_scan(&SisInput::parse(4, "[2],[2],[2]").unwrap()).unwrap();
        assert!(scan.central_is_node);
        assert_eq!(scan.central_weights, big(&[1, 1, 1]));
        assert!(scan.central_fails());
        let g = &scan.verdict.failures.iter().find(|f| f.node == 0).unwrap().generators;
        assert!(g.iter().all(|x| x > &BigInt::one()));
    }

    #[test]
    fn catalog_scan() {
        for d in [4, 5, 6] {
            for e in catalog(d).unwrap() {
                let scan = sis_semigroup_scan(&e.input).unwrap();
                assert_eq!(scan.central_is_node, scan.cusps >= 3, "{}", e.label);
                assert!(scan.central_weights.iter().all(One::is_one));
                if scan.cusps >= 3 {
                    assert!(!scan.verdict.passes && scan.central_fails(), "d={d} {}", e.label);
                }
            }
        }
    }

    #[test]
    fn blow_ups_preserve_weights() {
        let g = suspension();
        let before = splice_diagram(&g).unwrap();
        for h in [g.blow_up_edge(3, 4).unwrap(), g.blow_up_edge(2, 9).unwrap(), g.blow_up_vertex(0).unwrap()] {
            let after = splice_diagram(&h).unwrap();
            assert_eq!(after.nodes.keys().collect::<Vec<_>>(), before.nodes.keys().collect::<Vec<_>>());
            for &v in before.nodes.keys() {
                let mut a = before.weights_at(v);
                let mut b = after.weights_at(v);
                a.sort();
                b.sort();
                assert_eq!(a, b);
            }
        }
    }
}
