use super::{Graph, GraphError};

pub const DEFAULT_CLIQUE_CAP: usize = 40;

/// Largest supported cap: adjacency is packed into `u128` masks.
const MASK_BITS: usize = 128;

pub fn clique_number(g: &Graph) -> Result<usize, GraphError> {
    clique_number_with_cap(g, DEFAULT_CLIQUE_CAP)
}

/// Exact clique number by branch and bound, pruning with a greedy coloring
/// of the candidate set.
pub fn clique_number_with_cap(g: &Graph, cap: usize) -> Result<usize, GraphError> {
    let n = g.order();
    let cap = cap.min(MASK_BITS);
    if n > cap {
        return Err(GraphError::TooLarge { vertices: n, cap });
    }
    let adj: Vec<u128> = (0..n)
        .map(|v| g.neighbors(v).fold(0u128, |m, w| m | (1 << w)))
        .collect();
    let all = if n == MASK_BITS { u128::MAX } else { (1u128 << n) - 1 };
    let mut best = 0;
    expand(&adj, all, 0, &mut best);
    Ok(best)
}

/// Greedy sequential coloring of `cand`; returns vertices in color order
/// together with their color numbers (1-based).
fn color_order(adj: &[u128], cand: u128) -> Vec<(usize, usize)> {
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut uncolored = cand;
    let mut color = 0;
    while uncolored != 0 {
        color += 1;
        let mut avail = uncolored;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= !(1 << v) & !adj[v];
            uncolored &= !(1 << v);
            order.push((v, color));
        }
    }
    order
}

fn expand(adj: &[u128], mut cand: u128, size: usize, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    let order = color_order(adj, cand);
    for &(v, color) in order.iter().rev() {
        if size + color <= *best {
            return;
        }
        expand(adj, cand & adj[v], size + 1, best);
        cand &= !(1 << v);
    }
}
