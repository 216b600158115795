//! Finite simple graphs with structured vertex labels.
//!
//! Constructions include the generalized Mycielskian and the OR-product.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use thiserror::Error;

mod clique;
mod constructions;
mod iso;
mod text;

pub use clique::{clique_number, clique_number_with_cap, DEFAULT_CLIQUE_CAP};
pub use constructions::{generalized_mycielski, join, named_graph, or_product, petersen, NamedGraph};
pub use iso::{cycle_length, is_star_plus_isolated};
pub use text::GraphSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("graph has {vertices} vertices, above the cap of {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

/// A vertex name. `Level(v, k)` is the copy of `v` on level `k` of a
/// generalized Mycielskian and `Apex` is its top vertex `z`; they nest, so
/// labels of iterated Mycielskians stay unique.
///
/// Text form: base names as written, `v@k` for levels, `z` for the apex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    Base(String),
    Level(Box<VertexLabel>, usize),
    Apex,
}

impl VertexLabel {
    pub fn base(name: impl Into<String>) -> Self {
        VertexLabel::Base(name.into())
    }

    pub fn level(inner: VertexLabel, k: usize) -> Self {
        VertexLabel::Level(Box::new(inner), k)
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Base(name) => f.write_str(name),
            VertexLabel::Level(inner, k) => write!(f, "{inner}@{k}"),
            VertexLabel::Apex => f.write_str("z"),
        }
    }
}

impl FromStr for VertexLabel {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some((inner, k)) = s.rsplit_once('@') {
            let k = k
                .parse()
                .map_err(|_| GraphError::Parse(format!("bad level in label `{s}`")))?;
            return Ok(VertexLabel::level(inner.parse()?, k));
        }
        if s == "z" {
            return Ok(VertexLabel::Apex);
        }
        if s.is_empty() || s.chars().any(char::is_whitespace) {
            return Err(GraphError::Parse(format!("bad vertex label `{s}`")));
        }
        Ok(VertexLabel::Base(s.to_string()))
    }
}

/// Simple undirected graph. Vertices are addressed by index `0..order()`;
/// every vertex also carries a unique [`VertexLabel`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<VertexLabel>,
    index: HashMap<VertexLabel, usize>,
    adj: Vec<FixedBitSet>,
}

impl Graph {
    pub fn new(labels: Vec<VertexLabel>) -> Result<Self, GraphError> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if let VertexLabel::Base(name) = l {
                if name.is_empty() || name == "z" || name.contains('@') || name.chars().any(char::is_whitespace) {
                    return Err(GraphError::BadParameter(format!("invalid base label `{name}`")));
                }
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::DuplicateLabel(l.to_string()));
            }
        }
        let n = labels.len();
        Ok(Self {
            labels,
            index,
            adj: vec![FixedBitSet::with_capacity(n); n],
        })
    }

    /// Graph on base labels `1..=n` with no edges.
    pub fn numbered(n: usize) -> Self {
        Self::new((1..=n).map(|i| VertexLabel::Base(i.to_string())).collect()).expect("distinct labels")
    }

    pub fn from_edges(labels: Vec<VertexLabel>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::new(labels)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.order();
        if u >= n || v >= n {
            return Err(GraphError::UnknownVertex(format!("#{}", u.max(v))));
        }
        if u == v {
            return Err(GraphError::SelfLoop(self.labels[u].to_string()));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|b| b.count_ones(..)).sum::<usize>() / 2
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &VertexLabel {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &VertexLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn neighbor_set(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    /// Edges as index pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| self.adj[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_independent(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Same vertex set, labels replaced positionally.
    pub fn relabeled(&self, labels: Vec<VertexLabel>) -> Result<Self, GraphError> {
        if labels.len() != self.order() {
            return Err(GraphError::BadParameter("label count differs from order".into()));
        }
        let mut g = Self::new(labels)?;
        g.adj = self.adj.clone();
        Ok(g)
    }
}
