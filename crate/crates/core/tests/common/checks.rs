//! Property checks shared by the property suites and the acceptance run.

use haemers_core::graphs::Graph;
use haemers_core::linalg::{Field, Subspace};
use haemers_core::lift::lift;
use haemers_core::representation::{standard_complete_rep, DualRepresentation};
use proptest::prelude::*;

use super::{int_matrix, span, transvect};

pub fn grassmann<F: Field>(f: &F, n: usize, x: &[Vec<i64>], y: &[Vec<i64>]) {
    let (x, y) = (span(f, n, x), span(f, n, y));
    let (sum, meet) = x.sum_and_intersection(&y).unwrap();
    assert_eq!(sum.dim() + meet.dim(), x.dim() + y.dim());
    assert_eq!(sum, x.sum(&y).unwrap());
    assert_eq!(meet, x.intersect(&y).unwrap());
    assert!(meet.is_subspace_of(&x).unwrap() && meet.is_subspace_of(&y).unwrap());
    assert!(x.is_subspace_of(&sum).unwrap() && y.is_subspace_of(&sum).unwrap());
    assert_eq!(meet, y.intersect(&x).unwrap());
}

pub fn tensor_identities<F: Field>(f: &F, n: usize, u: &[Vec<i64>], v: &[Vec<i64>], w: &[Vec<i64>]) {
    let (u, v, w) = (span(f, n, u), span(f, n, v), span(f, n, w));
    let uv = u.tensor(&v).unwrap();
    assert_eq!(uv.dim(), u.dim() * v.dim());
    assert_eq!(uv.ambient(), n * n);

    let lhs = u.sum(&v).unwrap().tensor(&w).unwrap();
    let (uw, vw) = (u.tensor(&w).unwrap(), v.tensor(&w).unwrap());
    assert_eq!(lhs, uw.sum(&vw).unwrap());

    let meet = uw.intersect(&vw).unwrap();
    let base_meet = u.intersect(&v).unwrap();
    assert_eq!(meet.dim(), base_meet.dim() * w.dim());
    if base_meet.is_zero() {
        assert!(meet.is_zero());
    }
}

#[derive(Debug, Clone)]
pub struct IntervalCase {
    pub n: usize,
    pub big_m: usize,
    pub xs: Vec<(Vec<Vec<i64>>, usize, usize)>,
    pub ys: Vec<(Vec<Vec<i64>>, usize, usize)>,
    pub y: Vec<Vec<i64>>,
    pub c: usize,
    pub d: usize,
}

pub fn interval_case() -> impl Strategy<Value = IntervalCase> {
    (1usize..=3, 3usize..=6)
        .prop_flat_map(|(n, big_m)| {
            (1..=big_m).prop_flat_map(move |c| {
                (c..=big_m).prop_flat_map(move |d| {
                    let interval = (1..=big_m).prop_flat_map(move |a| (Just(a), a..=big_m));
                    // X intervals must avoid [c, d]; pick them from the complement.
                    let outside: Vec<usize> = (1..=big_m).filter(|s| *s < c || *s > d).collect();
                    let x_interval = if outside.is_empty() {
                        Just(None).boxed()
                    } else {
                        prop::sample::select(outside.clone())
                            .prop_flat_map(move |a| {
                                let hi = if a < c { c - 1 } else { big_m };
                                (a..=hi).prop_map(move |b| Some((a, b)))
                            })
                            .boxed()
                    };
                    (
                        Just(n),
                        Just(big_m),
                        prop::collection::vec((int_matrix(0..=2, n), x_interval), 1..=3),
                        prop::collection::vec((int_matrix(0..=2, n), interval), 0..=3),
                        int_matrix(1..=2, n),
                        Just(c),
                        Just(d),
                    )
                })
            })
        })
        .prop_map(|(n, big_m, xs, ys, y, c, d)| IntervalCase {
            n,
            big_m,
            xs: xs.into_iter().filter_map(|(m, iv)| iv.map(|(a, b)| (m, a, b))).collect(),
            ys: ys.into_iter().map(|(m, (a, b))| (m, a, b)).collect(),
            y,
            c,
            d,
        })
}

pub fn interval_lemma<F: Field>(f: &F, t: &IntervalCase) {
    let amb = t.n * t.big_m;
    let term = |rows: &Vec<Vec<i64>>, a: usize, b: usize| {
        span(f, t.n, rows).tensor(&Subspace::gamma(f, t.big_m, a, b).unwrap()).unwrap()
    };
    let mut left = Subspace::zero(f, amb);
    for (rows, a, b) in &t.xs {
        assert!(*b < t.c || *a > t.d);
        left = left.sum(&term(rows, *a, *b)).unwrap();
    }
    let mut right = Subspace::zero(f, amb);
    for (rows, a, b) in &t.ys {
        right = right.sum(&term(rows, *a, *b)).unwrap();
    }
    let with_tail = right.sum(&term(&t.y, t.c, t.d)).unwrap();
    assert_eq!(left.intersect(&with_tail).unwrap(), left.intersect(&right).unwrap());
}

/// Lifted cliques, plus the Groetzsch graph over the prime fields.
pub fn pool<F: Field>(f: &F, with_groetzsch: bool) -> Vec<DualRepresentation<F>> {
    let mut out = Vec::new();
    for (m, r) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)] {
        out.push(lift(&standard_complete_rep(m, f).unwrap(), r).unwrap());
    }
    if with_groetzsch {
        let c5 = out[0].clone();
        out.push(lift(&c5, 2).unwrap());
    }
    out
}

/// Picks a clique `B` and a set `A` joined to all of `B`, driven by `bits`.
pub fn pick_sets(rep_graph: &Graph, start: usize, bits: u64) -> (Vec<usize>, Vec<usize>) {
    let n = rep_graph.order();
    let mut b = Vec::new();
    for i in 0..n {
        let v = (start + i) % n;
        let take = b.is_empty() || bits >> (i % 32) & 1 == 1;
        if take && b.iter().all(|&u| rep_graph.has_edge(u, v)) {
            b.push(v);
        }
    }
    let a = (0..n)
        .filter(|v| !b.contains(v))
        .filter(|&v| b.iter().all(|&u| rep_graph.has_edge(u, v)))
        .filter(|&v| bits >> (32 + v % 32) & 1 == 1)
        .collect();
    (a, b)
}

pub fn clique_sum<F: Field>(rep: &DualRepresentation<F>, ops: &[(usize, usize, i64)], start: usize, bits: u64) {
    let rep = transvect(rep, ops);
    let (a, b) = pick_sets(rep.graph(), start, bits);
    let xa = rep.sum_of(&a).unwrap().dim();
    let mut ab = a.clone();
    ab.extend(&b);
    let xab = rep.sum_of(&ab).unwrap().dim();
    assert_eq!(xab, xa + b.len() * rep.local_dim(), "A={a:?} B={b:?}");
}
