#![allow(dead_code)]

pub mod checks;

use haemers_core::graphs::{Graph, VertexLabel};
use haemers_core::linalg::{Field, Matrix, PrimeField, Rationals, Subspace};
use haemers_core::representation::DualRepresentation;
use proptest::prelude::*;

pub const CASES: u32 = 1000;

pub fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// Small integer matrix, `rows x cols`, entries in -3..=3.
pub fn int_matrix(rows: std::ops::RangeInclusive<usize>, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

pub fn span<F: Field>(f: &F, cols: usize, rows: &[Vec<i64>]) -> Subspace<F> {
    Subspace::span(&Matrix::from_i64_rows(f, cols, rows).unwrap())
}

/// Runs `check` over GF(2), GF(3), GF(5) and Q.
#[macro_export]
macro_rules! each_field {
    (|$f:ident| $body:expr) => {{
        {
            let $f = &$crate::common::gf(2);
            $body
        }
        {
            let $f = &$crate::common::gf(3);
            $body
        }
        {
            let $f = &$crate::common::gf(5);
            $body
        }
        {
            let $f = &haemers_core::linalg::Rationals;
            $body
        }
    }};
}

/// Applies the column operations `x[j] += c * x[i]` to every basis vector.
/// The composite map is invertible.
pub fn transvect<F: Field>(rep: &DualRepresentation<F>, ops: &[(usize, usize, i64)]) -> DualRepresentation<F> {
    let f = rep.field();
    let n = rep.ambient();
    let spaces = rep
        .spaces()
        .iter()
        .map(|s| {
            let rows = s
                .basis()
                .row_iter()
                .map(|row| {
                    let mut v = row.to_vec();
                    for &(i, j, c) in ops {
                        let (i, j) = (i % n, j % n);
                        if i != j {
                            let add = f.mul(&f.from_i64(c), &v[i]);
                            v[j] = f.add(&v[j], &add);
                        }
                    }
                    v
                })
                .collect();
            Subspace::from_rows(f, n, rows).unwrap()
        })
        .collect();
    DualRepresentation::new(rep.graph().clone(), f.clone(), n, rep.local_dim(), spaces).unwrap()
}

pub fn transvections() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..64, 0usize..64, 1i64..=4), 0..12)
}

/// One basis vector per vertex: valid for every graph.
pub fn coordinate_rep<F: Field>(g: &Graph, f: &F) -> DualRepresentation<F> {
    let n = g.order();
    let spaces = (0..n).map(|v| Subspace::coordinate(f, n, [v])).collect();
    DualRepresentation::new(g.clone(), f.clone(), n, 1, spaces).unwrap()
}

/// Random simple graph on `2..=max` vertices.
pub fn graph(max: usize) -> impl Strategy<Value = Graph> {
    (2..=max)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, bits)| {
            let mut g = Graph::numbered(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
}

/// Largest clique by checking every vertex subset.
pub fn brute_clique_number(g: &Graph) -> usize {
    let n = g.order();
    assert!(n <= 20);
    (0u32..1 << n)
        .filter(|&mask| {
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            g.is_clique(&vs)
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn label(s: &str) -> VertexLabel {
    s.parse().unwrap()
}

pub fn rationals() -> Rationals {
    Rationals
}
