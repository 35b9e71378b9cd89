use super::{PlumbingGraph, Vertex};

/// Ids of rational (−1)-curves of valence at most two.
fn blow_down_candidates(g: &PlumbingGraph) -> Vec<u32> {
    (0..g.len())
        .filter(|&i| {
            let v = &g.vertices[i];
            v.euler == -1 && v.genus == 0 && g.valence(i) <= 2
        })
        .map(|i| g.vertices[i].id)
        .collect()
}

fn blow_down(g: &PlumbingGraph, id: u32) -> PlumbingGraph {
    let i = g.index_of(id).expect("candidate exists");
    let nbrs: Vec<u32> = g.neighbors(i).iter().map(|&j| g.vertices[j].id).collect();
    let vertices: Vec<Vertex> = g
        .vertices
        .iter()
        .filter(|v| v.id != id)
        .map(|v| {
            let mut v = v.clone();
            if nbrs.contains(&v.id) {
                v.euler += 1;
            }
            v
        })
        .collect();
    let mut edges: Vec<[u32; 2]> = g.edges.iter().copied().filter(|e| !e.contains(&id)).collect();
    if let [a, b] = nbrs[..] {
        edges.push([a, b]);
    }
    PlumbingGraph::new(vertices, edges).expect("blow-down of a tree is a tree")
}

/// Repeatedly blows down rational (−1)-curves of valence ≤ 2, choosing among
/// the current candidates with `choose` (which returns an index into the
/// candidate list).
pub fn minimize_by(g: &PlumbingGraph, mut choose: impl FnMut(&[u32]) -> usize) -> PlumbingGraph {
    let mut g = g.clone();
    loop {
        let cands = blow_down_candidates(&g);
        if cands.is_empty() {
            return g;
        }
        let k = choose(&cands).min(cands.len() - 1);
        g = blow_down(&g, cands[k]);
    }
}

pub fn minimize(g: &PlumbingGraph) -> PlumbingGraph {
    minimize_by(g, |_| 0)
}
