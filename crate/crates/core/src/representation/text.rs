//! Text format:
//!
//! ```text
//! graph <graph spec or file>
//! field <p|Q>
//! n <ambient>
//! d <local dimension>
//! vertex <label>
//! <basis row of n entries>
//! ...
//! ```
//!
//! Each vertex block lists the canonical basis of its subspace (d rows for a
//! valid representation). Blocks are written in graph vertex order.

use std::fmt::Write as _;
use std::path::Path;

use num_rational::BigRational;

use super::{DualRepresentation, RepError, VerificationReport};
use crate::graphs::{Graph, GraphSpec, VertexLabel};
use crate::linalg::{Field, FieldSpec, PrimeField, Rationals, Subspace};

impl<F: Field> DualRepresentation<F> {
    pub fn to_text(&self, graph_ref: &str) -> String {
        let mut s = String::new();
        writeln!(s, "graph {graph_ref}").unwrap();
        writeln!(s, "field {}", self.field().spec()).unwrap();
        writeln!(s, "n {}", self.ambient()).unwrap();
        writeln!(s, "d {}", self.local_dim()).unwrap();
        for (v, x) in self.spaces().iter().enumerate() {
            writeln!(s, "vertex {}", self.graph().label(v)).unwrap();
            for row in x.basis().row_iter() {
                let line: Vec<String> = row.iter().map(|e| self.field().format_elem(e)).collect();
                writeln!(s, "{}", line.join(" ")).unwrap();
            }
        }
        s
    }
}

struct Header<'a> {
    graph_ref: String,
    field: FieldSpec,
    ambient: usize,
    local_dim: usize,
    body: Vec<&'a str>,
}

fn parse_header(text: &str) -> Result<Header<'_>, RepError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let mut field_line = |key: &str| -> Result<String, RepError> {
        let line = lines
            .next()
            .ok_or_else(|| RepError::Parse(format!("missing `{key}` line")))?;
        match line.split_once(char::is_whitespace) {
            Some((k, v)) if k == key => Ok(v.trim().to_string()),
            _ => Err(RepError::Parse(format!("expected `{key} ...`, got `{line}`"))),
        }
    };
    let graph_ref = field_line("graph")?;
    let field = field_line("field")?.parse()?;
    let count = |s: String| s.parse::<usize>().map_err(|_| RepError::Parse(format!("bad count `{s}`")));
    let ambient = count(field_line("n")?)?;
    let local_dim = count(field_line("d")?)?;
    Ok(Header {
        graph_ref,
        field,
        ambient,
        local_dim,
        body: lines.collect(),
    })
}

fn parse_body<F: Field>(field: &F, header: &Header<'_>, graph: Graph) -> Result<DualRepresentation<F>, RepError> {
    let n = header.ambient;
    let mut rows: Vec<Option<Vec<Vec<F::Elem>>>> = vec![None; graph.order()];
    let mut current: Option<usize> = None;
    for line in &header.body {
        if let Some(label) = line.strip_prefix("vertex ") {
            let label: VertexLabel = label.trim().parse()?;
            let v = graph
                .index_of(&label)
                .ok_or_else(|| RepError::UnknownVertex(label.to_string()))?;
            if rows[v].is_some() {
                return Err(RepError::Parse(format!("vertex `{label}` listed twice")));
            }
            rows[v] = Some(Vec::new());
            current = Some(v);
            continue;
        }
        let v = current.ok_or_else(|| RepError::Parse(format!("row before any vertex: `{line}`")))?;
        let row = line
            .split_whitespace()
            .map(|t| field.parse_elem(t))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(RepError::Parse(format!("row of length {} in F^{n}", row.len())));
        }
        rows[v].as_mut().expect("block opened").push(row);
    }
    let mut spaces = Vec::with_capacity(graph.order());
    for (v, r) in rows.into_iter().enumerate() {
        let r = r.ok_or_else(|| RepError::Parse(format!("no block for vertex `{}`", graph.label(v))))?;
        spaces.push(Subspace::from_rows(field, n, r)?);
    }
    DualRepresentation::new(graph, field.clone(), n, header.local_dim, spaces)
}

/// A parsed representation over whichever field its header names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyRepresentation {
    Prime(DualRepresentation<PrimeField>),
    Rational(DualRepresentation<Rationals>),
}

impl AnyRepresentation {
    pub fn verify(&self) -> Result<VerificationReport, RepError> {
        match self {
            AnyRepresentation::Prime(r) => r.verify(),
            AnyRepresentation::Rational(r) => r.verify(),
        }
    }

    pub fn value(&self) -> BigRational {
        match self {
            AnyRepresentation::Prime(r) => r.value(),
            AnyRepresentation::Rational(r) => r.value(),
        }
    }

    pub fn graph(&self) -> &Graph {
        match self {
            AnyRepresentation::Prime(r) => r.graph(),
            AnyRepresentation::Rational(r) => r.graph(),
        }
    }

    pub fn field_spec(&self) -> FieldSpec {
        match self {
            AnyRepresentation::Prime(r) => r.field().spec(),
            AnyRepresentation::Rational(_) => FieldSpec::Rational,
        }
    }

    pub fn to_text(&self, graph_ref: &str) -> String {
        match self {
            AnyRepresentation::Prime(r) => r.to_text(graph_ref),
            AnyRepresentation::Rational(r) => r.to_text(graph_ref),
        }
    }
}

/// Parses a representation file. The `graph` line is resolved as a
/// [`GraphSpec`], with relative paths taken from `base_dir`. Returns the graph
/// reference as written, so the file can be re-emitted unchanged.
pub fn parse_representation(text: &str, base_dir: Option<&Path>) -> Result<(String, AnyRepresentation), RepError> {
    let header = parse_header(text)?;
    let graph = header.graph_ref.parse::<GraphSpec>()?.build(base_dir)?;
    let rep = match header.field {
        FieldSpec::Prime(p) => AnyRepresentation::Prime(parse_body(&PrimeField::new(p)?, &header, graph)?),
        FieldSpec::Rational => AnyRepresentation::Rational(parse_body(&Rationals, &header, graph)?),
    };
    Ok((header.graph_ref, rep))
}

impl<F: Field> DualRepresentation<F> {
    /// Parses a representation whose header must name `field`.
    pub fn from_text(field: &F, text: &str, base_dir: Option<&Path>) -> Result<(String, Self), RepError> {
        let header = parse_header(text)?;
        if header.field != field.spec() {
            return Err(RepError::FieldMismatch);
        }
        let graph = header.graph_ref.parse::<GraphSpec>()?.build(base_dir)?;
        let rep = parse_body(field, &header, graph)?;
        Ok((header.graph_ref, rep))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representation::standard_complete_rep;

    #[test]
    fn round_trip_is_bit_exact() {
        let f = PrimeField::new(3).unwrap();
        let rep = standard_complete_rep(3, &f).unwrap();
        let text = rep.to_text("k3");
        assert_eq!(text, "graph k3\nfield 3\nn 3\nd 1\nvertex 1\n1 0 0\nvertex 2\n0 1 0\nvertex 3\n0 0 1\n");
        let (g, back) = DualRepresentation::from_text(&f, &text, None).unwrap();
        assert_eq!(g, "k3");
        assert_eq!(back, rep);
        assert_eq!(back.to_text(&g), text);
        let (_, any) = parse_representation(&text, None).unwrap();
        assert_eq!(any, AnyRepresentation::Prime(rep));
    }

    #[test]
    fn non_canonical_rows_are_reduced() {
        let text = "graph k2\nfield Q\nn 2\nd 1\nvertex 2\n0 3\nvertex 1\n-2 0\n";
        let (_, any) = parse_representation(text, None).unwrap();
        assert!(any.verify().unwrap().valid);
        assert_eq!(any.to_text("k2"), "graph k2\nfield Q\nn 2\nd 1\nvertex 1\n1 0\nvertex 2\n0 1\n");
    }

    #[test]
    fn parse_errors() {
        let missing = "graph k2\nfield 2\nn 2\nd 1\nvertex 1\n1 0\n";
        assert!(parse_representation(missing, None).is_err());
        let short = "graph k2\nfield 2\nn 2\nd 1\nvertex 1\n1\nvertex 2\n0 1\n";
        assert!(parse_representation(short, None).is_err());
        let unknown = "graph k2\nfield 2\nn 2\nd 1\nvertex 7\n1 0\n";
        assert!(matches!(parse_representation(unknown, None), Err(RepError::UnknownVertex(_))));
        let bad_field = "graph k2\nfield 4\nn 2\nd 1\n";
        assert!(parse_representation(bad_field, None).is_err());
        let f = PrimeField::new(2).unwrap();
        let good = "graph k2\nfield Q\nn 2\nd 1\nvertex 1\n1 0\nvertex 2\n0 1\n";
        assert!(matches!(DualRepresentation::from_text(&f, good, None), Err(RepError::FieldMismatch)));
    }
}
