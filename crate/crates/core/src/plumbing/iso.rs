use super::PlumbingGraph;

/// Tree centres by repeated leaf removal (one or two positions).
fn centers(g: &PlumbingGraph) -> Vec<usize> {
    let n = g.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|i| g.valence(i)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&i| deg[i] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in g.neighbors(v) {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
}

fn encode(g: &PlumbingGraph, v: usize, parent: Option<usize>) -> String {
    let mut kids: Vec<String> =
        g.neighbors(v).iter().filter(|&&w| Some(w) != parent).map(|&w| encode(g, w, Some(v))).collect();
    kids.sort_unstable();
    let vert = &g.vertices[v];
    format!("({}:{}{})", vert.euler, vert.genus, kids.concat())
}

/// Canonical string for the tree up to relabeling of vertex ids.
pub fn canonical_form(g: &PlumbingGraph) -> String {
    centers(g).into_iter().map(|c| encode(g, c, None)).min().unwrap_or_default()
}

pub fn isomorphic(a: &PlumbingGraph, b: &PlumbingGraph) -> bool {
    a.len() == b.len() && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plumbing::tests::{chain, e8};
    use crate::plumbing::Vertex;

    #[test]
    fn relabelings_are_isomorphic() {
        assert!(isomorphic(&e8(), &e8()));
        assert!(isomorphic(&chain(&[-2, -3]), &chain(&[-3, -2])));
        let shuffled = e8().map_vertices(|v| Vertex { id: 100 - v.id, ..v.clone() }).unwrap();
        assert!(isomorphic(&e8(), &shuffled));
    }

    #[test]
    fn different_trees_are_not() {
        let e7 = {
            let vertices = (0..7).map(|i| Vertex::new(i, -2)).collect();
            PlumbingGraph::new(vertices, vec![[0, 1], [0, 2], [2, 3], [0, 4], [4, 5], [5, 6]]).unwrap()
        };
        assert!(!isomorphic(&e8(), &e7));
        assert!(!isomorphic(&chain(&[-2, -3, -2]), &chain(&[-3, -2, -2])));
        assert!(!isomorphic(&chain(&[-2, -2, -2, -2, -2, -2, -2, -2]), &e8()));
    }
}
