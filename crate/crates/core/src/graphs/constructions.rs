use std::collections::HashSet;

use super::{Graph, GraphError, VertexLabel};

/// The standard families, labelled `1..=size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedGraph {
    Complete(usize),
    Cycle(usize),
    Empty(usize),
    Path(usize),
}

pub fn named_graph(spec: NamedGraph) -> Result<Graph, GraphError> {
    let (n, edges): (usize, Vec<(usize, usize)>) = match spec {
        NamedGraph::Complete(m) if m >= 1 => (m, (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v))).collect()),
        NamedGraph::Cycle(n) if n >= 3 => (n, (0..n).map(|u| (u, (u + 1) % n)).collect()),
        NamedGraph::Empty(n) if n >= 1 => (n, Vec::new()),
        NamedGraph::Path(n) if n >= 1 => (n, (1..n).map(|u| (u - 1, u)).collect()),
        other => return Err(GraphError::BadParameter(format!("{other:?}"))),
    };
    let g = Graph::numbered(n);
    Graph::from_edges(g.labels().to_vec(), &edges)
}

/// The Petersen graph: outer 5-cycle 1..5, inner pentagram 6..10.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(Graph::numbered(10).labels().to_vec(), &edges).expect("valid edges")
}

/// The generalized Mycielskian `M_r(G)` on `V(G) × {0..r-1} ∪ {z}`.
///
/// Edges: `(u,0)(v,0)` and `(u,i)(v,j)` with `|i - j| = 1` for every edge
/// `uv` of `G`, plus `(v,r-1)z` for every vertex `v`. Vertices are ordered
/// level by level, then the apex.
pub fn generalized_mycielski(g: &Graph, r: usize) -> Result<Graph, GraphError> {
    if r == 0 {
        return Err(GraphError::BadParameter("Mycielski level count r must be at least 1".into()));
    }
    let n = g.order();
    let mut labels = Vec::with_capacity(r * n + 1);
    for k in 0..r {
        labels.extend(g.labels().iter().map(|l| VertexLabel::level(l.clone(), k)));
    }
    labels.push(VertexLabel::Apex);
    let mut out = Graph::new(labels)?;
    let at = |v: usize, k: usize| k * n + v;
    for (u, v) in g.edges() {
        out.add_edge(at(u, 0), at(v, 0))?;
        for k in 0..r - 1 {
            out.add_edge(at(u, k), at(v, k + 1))?;
            out.add_edge(at(v, k), at(u, k + 1))?;
        }
    }
    let z = r * n;
    for v in 0..n {
        out.add_edge(at(v, r - 1), z)?;
    }
    Ok(out)
}

/// Labels for a disjoint union: kept when the two label sets are disjoint,
/// otherwise replaced by `1..=|g|+|h|`.
fn union_labels(g: &Graph, h: &Graph) -> Vec<VertexLabel> {
    let left: HashSet<&VertexLabel> = g.labels().iter().collect();
    if h.labels().iter().any(|l| left.contains(l)) {
        Graph::numbered(g.order() + h.order()).labels().to_vec()
    } else {
        g.labels().iter().chain(h.labels()).cloned().collect()
    }
}

/// `g + h`: disjoint union with every cross pair joined. Vertices of `g` come
/// first.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let off = g.order();
    let mut out = Graph::new(union_labels(g, h)).expect("union labels are distinct");
    for (u, v) in g.edges() {
        out.add_edge(u, v).expect("in range");
    }
    for (u, v) in h.edges() {
        out.add_edge(off + u, off + v).expect("in range");
    }
    for u in 0..g.order() {
        for v in 0..h.order() {
            out.add_edge(u, off + v).expect("in range");
        }
    }
    out
}

/// OR-product `g · h`. The pair `(i, j)` becomes vertex `i * |h| + j`, labelled
/// `i * |h| + j + 1`.
pub fn or_product(g: &Graph, h: &Graph) -> Graph {
    let (n, m) = (g.order(), h.order());
    let mut out = Graph::numbered(n * m);
    for a in 0..n * m {
        for b in a + 1..n * m {
            let (i, j) = (a / m, a % m);
            let (k, l) = (b / m, b % m);
            if g.has_edge(i, k) || h.has_edge(j, l) {
                out.add_edge(a, b).expect("distinct in range");
            }
        }
    }
    out
}
