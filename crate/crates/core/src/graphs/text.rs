use std::fmt;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::{generalized_mycielski, named_graph, petersen, Graph, GraphError, NamedGraph, VertexLabel};

impl Graph {
    /// `vertices N`, then `vertex <label>` lines when the labels are not the
    /// default `1..N`, then one `edge u v` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "vertices {}", self.order()).unwrap();
        let default = self
            .labels()
            .iter()
            .enumerate()
            .all(|(i, l)| *l == VertexLabel::Base((i + 1).to_string()));
        if !default {
            for l in self.labels() {
                writeln!(s, "vertex {l}").unwrap();
            }
        }
        for (u, v) in self.edges() {
            writeln!(s, "edge {} {}", self.label(u), self.label(v)).unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .peekable();
        let n = match lines.next().map(|l| l.split_whitespace().collect::<Vec<_>>()) {
            Some(t) if t.len() == 2 && t[0] == "vertices" => t[1]
                .parse::<usize>()
                .map_err(|_| GraphError::Parse(format!("bad vertex count `{}`", t[1])))?,
            _ => return Err(GraphError::Parse("expected `vertices N`".into())),
        };
        let mut labels = Vec::new();
        while let Some(l) = lines.peek() {
            let Some(rest) = l.strip_prefix("vertex ") else { break };
            labels.push(rest.trim().parse()?);
            lines.next();
        }
        let mut g = if labels.is_empty() {
            Graph::numbered(n)
        } else if labels.len() == n {
            Graph::new(labels)?
        } else {
            return Err(GraphError::Parse(format!("{} vertex lines for {n} vertices", labels.len())));
        };
        for l in lines {
            let t: Vec<&str> = l.split_whitespace().collect();
            let [ "edge", u, v ] = t[..] else {
                return Err(GraphError::Parse(format!("unexpected line `{l}`")));
            };
            let lookup = |s: &str| -> Result<usize, GraphError> {
                let label: VertexLabel = s.parse()?;
                g.index_of(&label).ok_or_else(|| GraphError::UnknownVertex(s.to_string()))
            };
            let (u, v) = (lookup(u)?, lookup(v)?);
            g.add_edge(u, v)?;
        }
        Ok(g)
    }
}

/// A graph reference: a built-in name, a Mycielskian of another reference, or
/// a graph file.
///
/// Built-ins: `k<m>`, `c<n>`, `e<n>` (edgeless), `p<n>` (path), `petersen`,
/// `groetzsch` (= `mycielski:c5:2`), and `mycielski:<base>:<r>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Named(NamedGraph),
    Petersen,
    Groetzsch,
    Mycielski(Box<GraphSpec>, usize),
    File(PathBuf),
}

impl GraphSpec {
    /// Builds the graph; relative file paths are resolved against `base_dir`.
    pub fn build(&self, base_dir: Option<&Path>) -> Result<Graph, GraphError> {
        match self {
            GraphSpec::Named(n) => named_graph(*n),
            GraphSpec::Petersen => Ok(petersen()),
            GraphSpec::Groetzsch => generalized_mycielski(&named_graph(NamedGraph::Cycle(5))?, 2),
            GraphSpec::Mycielski(base, r) => generalized_mycielski(&base.build(base_dir)?, *r),
            GraphSpec::File(path) => {
                let path = match base_dir {
                    Some(dir) if path.is_relative() => dir.join(path),
                    _ => path.clone(),
                };
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| GraphError::Io(format!("{}: {e}", path.display())))?;
                Graph::from_text(&text)
            }
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Named(NamedGraph::Complete(m)) => write!(f, "k{m}"),
            GraphSpec::Named(NamedGraph::Cycle(n)) => write!(f, "c{n}"),
            GraphSpec::Named(NamedGraph::Empty(n)) => write!(f, "e{n}"),
            GraphSpec::Named(NamedGraph::Path(n)) => write!(f, "p{n}"),
            GraphSpec::Petersen => f.write_str("petersen"),
            GraphSpec::Groetzsch => f.write_str("groetzsch"),
            GraphSpec::Mycielski(base, r) => write!(f, "mycielski:{base}:{r}"),
            GraphSpec::File(p) => write!(f, "{}", p.display()),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(GraphError::Parse("empty graph spec".into()));
        }
        if let Some(rest) = s.strip_prefix("mycielski:") {
            let (base, r) = rest
                .rsplit_once(':')
                .ok_or_else(|| GraphError::Parse(format!("expected mycielski:<base>:<r>, got `{s}`")))?;
            let r = r
                .parse()
                .map_err(|_| GraphError::Parse(format!("bad level count in `{s}`")))?;
            return Ok(GraphSpec::Mycielski(Box::new(base.parse()?), r));
        }
        match s {
            "petersen" => return Ok(GraphSpec::Petersen),
            "groetzsch" | "grotzsch" => return Ok(GraphSpec::Groetzsch),
            _ => {}
        }
        let (head, digits) = s.split_at(s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len()));
        if let (Ok(n), true) = (digits.parse::<usize>(), !digits.is_empty()) {
            let named = match head {
                "k" | "K" => Some(NamedGraph::Complete(n)),
                "c" | "C" => Some(NamedGraph::Cycle(n)),
                "e" | "empty" => Some(NamedGraph::Empty(n)),
                "p" | "path" => Some(NamedGraph::Path(n)),
                _ => None,
            };
            if let Some(named) = named {
                return Ok(GraphSpec::Named(named));
            }
        }
        Ok(GraphSpec::File(PathBuf::from(s)))
    }
}
