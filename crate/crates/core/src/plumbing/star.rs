use super::PlumbingGraph;
use crate::error::{Error, Result};
use crate::seifert::SeifertData;

/// Seifert invariants of a star-shaped graph. Each leg is read from the
/// vertex next to the centre outwards as the negative continued fraction
/// `α/β = b₁ − 1/(b₂ − …)` with `bᵢ = −eulerᵢ`.
///
/// A chain has no node; its first vertex is taken as the centre.
pub fn star_shape(g: &PlumbingGraph) -> Result<SeifertData> {
    if g.is_empty() {
        return Err(Error::NotStarShaped("empty graph".into()));
    }
    if let Some(v) = g.vertices().iter().find(|v| v.genus > 0) {
        return Err(Error::Unsupported(format!("vertex {} has positive genus", v.id)));
    }
    let nodes = g.nodes();
    if nodes.len() >= 2 {
        let ids: Vec<u32> = nodes.iter().map(|&i| g.vertices()[i].id).collect();
        return Err(Error::NotStarShaped(format!("vertices {ids:?} all have valence at least 3")));
    }
    let center = nodes.first().copied().unwrap_or(0);
    let mut legs = Vec::new();
    for &first in g.neighbors(center) {
        let mut entries = Vec::new();
        let (mut prev, mut cur) = (center, first);
        loop {
            let v = &g.vertices()[cur];
            if v.euler > -2 {
                return Err(Error::NotMinimal(format!("leg vertex {} has Euler number {}", v.id, v.euler)));
            }
            entries.push(v.euler.unsigned_abs());
            match g.neighbors(cur).iter().find(|&&w| w != prev) {
                Some(&next) => (prev, cur) = (cur, next),
                None => break,
            }
        }
        legs.push(continued_fraction_value(&entries));
    }
    SeifertData::new(-g.vertices()[center].euler, legs)
}

/// `[b₁, …, b_k] ↦ (α, β)` with `α/β = b₁ − 1/(b₂ − … − 1/b_k)`.
pub(crate) fn continued_fraction_value(entries: &[u64]) -> (u64, u64) {
    let (&last, rest) = entries.split_last().expect("nonempty leg");
    let (mut num, mut den) = (last, 1u64);
    for &b in rest.iter().rev() {
        (num, den) = (b * num - den, num);
    }
    (num, den)
}
