//! Recognizers for the few isomorphism classes the constructions produce.

use super::Graph;

/// `Some(n)` iff `g` is isomorphic to the cycle `C_n`: 2-regular, and a walk
/// from vertex 0 returns after visiting every vertex.
pub fn cycle_length(g: &Graph) -> Option<usize> {
    let n = g.order();
    if n < 3 || (0..n).any(|v| g.degree(v) != 2) {
        return None;
    }
    let (mut prev, mut cur) = (0, g.neighbors(0).next()?);
    let mut steps = 1;
    while cur != 0 {
        let next = g.neighbors(cur).find(|&w| w != prev)?;
        prev = cur;
        cur = next;
        steps += 1;
        if steps > n {
            return None;
        }
    }
    (steps == n).then_some(n)
}

/// `Some((leaves, isolated))` iff `g` is a star `K_{1,leaves}` plus isolated
/// vertices.
pub fn is_star_plus_isolated(g: &Graph) -> Option<(usize, usize)> {
    let n = g.order();
    let centers: Vec<usize> = (0..n).filter(|&v| g.degree(v) > 1).collect();
    let center = match centers[..] {
        [c] => c,
        // K_{1,1} has no vertex of degree > 1
        [] if g.size() == 1 => g.edges().next()?.0,
        _ => return None,
    };
    let leaves = g.degree(center);
    let ok = (0..n)
        .filter(|&v| v != center)
        .all(|v| match g.degree(v) {
            0 => true,
            1 => g.has_edge(v, center),
            _ => false,
        });
    ok.then_some((leaves, n - leaves - 1))
}
