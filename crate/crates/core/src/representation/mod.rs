//! Dual `(n, d)`-representations: a `d`-dimensional subspace `X_v` of `F^n`
//! per vertex such that `X_v` meets the span of its neighbours' subspaces
//! only in zero.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::graphs::{Graph, GraphError, VertexLabel};
use crate::linalg::{Field, LinalgError, Subspace};

mod text;
mod transform;

pub use text::{parse_representation, AnyRepresentation};
pub use transform::{compress, join_reps, scale_d, standard_complete_rep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed representation: {0}")]
    Structure(String),
    #[error("representations live over different fields")]
    FieldMismatch,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualRepresentation<F: Field> {
    graph: Graph,
    field: F,
    ambient: usize,
    local_dim: usize,
    spaces: Vec<Subspace<F>>,
}

impl<F: Field> DualRepresentation<F> {
    /// `spaces[i]` is the subspace of vertex `i` of `graph`. Only structure is
    /// checked here; use [`verify`](Self::verify) for the representation
    /// conditions.
    pub fn new(
        graph: Graph,
        field: F,
        ambient: usize,
        local_dim: usize,
        spaces: Vec<Subspace<F>>,
    ) -> Result<Self, RepError> {
        if local_dim == 0 {
            return Err(RepError::Structure("local dimension d must be positive".into()));
        }
        if spaces.len() != graph.order() {
            return Err(RepError::Structure(format!(
                "{} subspaces for {} vertices",
                spaces.len(),
                graph.order()
            )));
        }
        for (i, s) in spaces.iter().enumerate() {
            if s.field() != &field {
                return Err(RepError::FieldMismatch);
            }
            if s.ambient() != ambient {
                return Err(RepError::Structure(format!(
                    "subspace of `{}` lives in F^{}, expected F^{ambient}",
                    graph.label(i),
                    s.ambient()
                )));
            }
        }
        Ok(Self {
            graph,
            field,
            ambient,
            local_dim,
            spaces,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// `n`
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// `d`
    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn spaces(&self) -> &[Subspace<F>] {
        &self.spaces
    }

    pub fn space(&self, v: usize) -> &Subspace<F> {
        &self.spaces[v]
    }

    pub fn space_of(&self, label: &VertexLabel) -> Result<&Subspace<F>, RepError> {
        self.graph
            .index_of(label)
            .map(|v| &self.spaces[v])
            .ok_or_else(|| RepError::UnknownVertex(label.to_string()))
    }

    /// The certified ratio `n / d`.
    pub fn value(&self) -> BigRational {
        BigRational::new(BigInt::from(self.ambient), BigInt::from(self.local_dim))
    }

    /// `Σ_{v ∈ vs} X_v`
    pub fn sum_of(&self, vs: &[usize]) -> Result<Subspace<F>, RepError> {
        Ok(Subspace::sum_all(
            &self.field,
            self.ambient,
            vs.iter().map(|&v| &self.spaces[v]),
        )?)
    }

    pub fn neighbor_sum(&self, v: usize) -> Result<Subspace<F>, RepError> {
        let nbrs: Vec<usize> = self.graph.neighbors(v).collect();
        self.sum_of(&nbrs)
    }

    pub fn total_span(&self) -> Result<Subspace<F>, RepError> {
        Ok(Subspace::sum_all(&self.field, self.ambient, &self.spaces)?)
    }

    /// Checks every vertex: `dim X_v = d` and `X_v ∩ Σ_{w ∈ N(v)} X_w = {0}`.
    /// Vertices are checked in parallel; the report is in vertex order.
    pub fn verify(&self) -> Result<VerificationReport, RepError> {
        let checks = (0..self.graph.order())
            .into_par_iter()
            .map(|v| {
                let x = &self.spaces[v];
                let meet = x.intersection_dim(&self.neighbor_sum(v)?)?;
                Ok(VertexCheck {
                    label: self.graph.label(v).clone(),
                    dim: x.dim(),
                    neighbor_meet_dim: meet,
                })
            })
            .collect::<Result<Vec<_>, RepError>>()?;
        let total_span = self.total_span()?.dim();
        let valid = checks
            .iter()
            .all(|c| c.dim == self.local_dim && c.neighbor_meet_dim == 0);
        Ok(VerificationReport {
            valid,
            ambient: self.ambient,
            local_dim: self.local_dim,
            checks,
            total_span,
        })
    }

    /// `dim ⋂_g (Σ_{v ∈ g} X_v)` over the given groups of vertex indices. A
    /// list of singletons gives `dim ⋂_v X_v`; no groups at all gives `n`.
    pub fn intersection_dim_of(&self, groups: &[Vec<usize>]) -> Result<usize, RepError> {
        let mut acc: Option<Subspace<F>> = None;
        for g in groups {
            if let Some(&bad) = g.iter().find(|&&v| v >= self.graph.order()) {
                return Err(RepError::UnknownVertex(format!("#{bad}")));
            }
            let s = self.sum_of(g)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s)?,
            });
            if acc.as_ref().is_some_and(Subspace::is_zero) {
                return Ok(0);
            }
        }
        Ok(acc.map_or(self.ambient, |a| a.dim()))
    }

    /// Label-addressed form of [`intersection_dim_of`](Self::intersection_dim_of).
    pub fn intersection_dim(&self, groups: &[Vec<VertexLabel>]) -> Result<usize, RepError> {
        let idx = groups
            .iter()
            .map(|g| {
                g.iter()
                    .map(|l| {
                        self.graph
                            .index_of(l)
                            .ok_or_else(|| RepError::UnknownVertex(l.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.intersection_dim_of(&idx)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCheck {
    pub label: VertexLabel,
    pub dim: usize,
    /// `dim(X_v ∩ Σ_{w ∈ N(v)} X_w)`
    pub neighbor_meet_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub valid: bool,
    pub ambient: usize,
    pub local_dim: usize,
    pub checks: Vec<VertexCheck>,
    /// `dim Σ_v X_v`
    pub total_span: usize,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &VertexCheck> {
        self.checks
            .iter()
            .filter(move |c| c.dim != self.local_dim || c.neighbor_meet_dim != 0)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n={} d={} span={} valid={}",
            self.ambient, self.local_dim, self.total_span, self.valid
        )?;
        for c in &self.checks {
            let ok = c.dim == self.local_dim && c.neighbor_meet_dim == 0;
            writeln!(
                f,
                "vertex {} dim={} meet={} {}",
                c.label,
                c.dim,
                c.neighbor_meet_dim,
                if ok { "ok" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{named_graph, NamedGraph};
    use crate::linalg::{Matrix, PrimeField, Rationals};

    fn gf2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn complete_reps_are_valid() {
        let r = standard_complete_rep(3, &gf2()).unwrap();
        let rep = r.verify().unwrap();
        assert!(rep.valid);
        assert_eq!(rep.total_span, 3);
        assert_eq!(r.value(), BigRational::from_integer(3.into()));
        let q = standard_complete_rep(4, &Rationals).unwrap();
        assert!(q.verify().unwrap().valid);
        assert_eq!(q.value(), BigRational::from_integer(4.into()));
        let one = standard_complete_rep(1, &gf2()).unwrap();
        assert!(one.verify().unwrap().valid);
        assert_eq!((one.ambient(), one.local_dim()), (1, 1));
    }

    #[test]
    fn shared_line_on_an_edge_is_invalid() {
        let f = gf2();
        let k2 = named_graph(NamedGraph::Complete(2)).unwrap();
        let line = Subspace::span(&Matrix::from_i64_rows(&f, 2, &[vec![1, 1]]).unwrap());
        let rep = DualRepresentation::new(k2, f, 2, 1, vec![line.clone(), line]).unwrap();
        let report = rep.verify().unwrap();
        assert!(!report.valid);
        assert_eq!(report.checks[0].neighbor_meet_dim, 1);
        assert_eq!(report.failures().count(), 2);
        assert!(report.to_string().contains("FAIL"));
    }

    #[test]
    fn wrong_dimension_is_invalid() {
        let f = gf2();
        let k2 = named_graph(NamedGraph::Complete(2)).unwrap();
        let rep = DualRepresentation::new(
            k2,
            f,
            3,
            2,
            vec![Subspace::gamma(&f, 3, 1, 2).unwrap(), Subspace::gamma(&f, 3, 3, 3).unwrap()],
        )
        .unwrap();
        assert!(!rep.verify().unwrap().valid);
    }

    #[test]
    fn structure_errors() {
        let f = gf2();
        let k2 = named_graph(NamedGraph::Complete(2)).unwrap();
        let e = Subspace::gamma(&f, 2, 1, 1).unwrap();
        assert!(DualRepresentation::new(k2.clone(), f, 2, 1, vec![e.clone()]).is_err());
        assert!(DualRepresentation::new(k2.clone(), f, 3, 1, vec![e.clone(), e.clone()]).is_err());
        assert!(DualRepresentation::new(k2, f, 2, 0, vec![e.clone(), e]).is_err());
    }

    #[test]
    fn intersection_queries() {
        let r = standard_complete_rep(3, &gf2()).unwrap();
        let l = |s: &str| VertexLabel::base(s);
        assert_eq!(r.intersection_dim(&[vec![l("1")]]).unwrap(), 1);
        assert_eq!(r.intersection_dim(&[vec![l("1")], vec![l("2")]]).unwrap(), 0);
        assert_eq!(r.intersection_dim(&[vec![l("1"), l("2")], vec![l("2"), l("3")]]).unwrap(), 1);
        assert_eq!(r.intersection_dim(&[]).unwrap(), 3);
        assert!(matches!(
            r.intersection_dim(&[vec![l("9")]]),
            Err(RepError::UnknownVertex(_))
        ));
    }
}
