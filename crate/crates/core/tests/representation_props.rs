//! Invariants of valid representations under transforms and lifting.

mod common;

use common::checks::{clique_sum, pool};
use common::{coordinate_rep, gf, graph, transvect, transvections, CASES};
use haemers_core::graphs::{generalized_mycielski, named_graph, NamedGraph};
use haemers_core::linalg::{Field, Rationals, Subspace};
use haemers_core::lift::{assert_lift_dimensions, lift_detailed};
use haemers_core::representation::{compress, standard_complete_rep, DualRepresentation};
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

#[test]
fn clique_sum_additivity() {
    let (p2, p3, p5, q) = (pool(&gf(2), true), pool(&gf(3), true), pool(&gf(5), true), pool(&Rationals, false));
    let mut runner = TestRunner::new(Config::with_cases(CASES));
    let strategy = (0usize..6, transvections(), 0usize..64, any::<u64>());
    runner
        .run(&strategy, |(i, ops, start, bits)| {
            clique_sum(&p2[i], &ops, start, bits);
            clique_sum(&p3[i], &ops, start, bits);
            clique_sum(&p5[i], &ops, start, bits);
            clique_sum(&q[i % q.len()], &ops, start, bits);
            Ok(())
        })
        .unwrap();
}

/// Pads with zero coordinates and mixes; compression must undo the padding.
fn compress_invariants<F: Field>(rep: &DualRepresentation<F>, pad: usize, ops: &[(usize, usize, i64)]) {
    let f = rep.field();
    let n = rep.ambient() + pad;
    let spaces = rep
        .spaces()
        .iter()
        .map(|s| {
            let rows = s
                .basis()
                .row_iter()
                .map(|row| {
                    let mut v = row.to_vec();
                    v.resize(n, f.zero());
                    v
                })
                .collect();
            Subspace::from_rows(f, n, rows).unwrap()
        })
        .collect();
    let padded = DualRepresentation::new(rep.graph().clone(), f.clone(), n, rep.local_dim(), spaces).unwrap();
    let padded = transvect(&padded, ops);
    let span = rep.total_span().unwrap().dim();

    let small = compress(&padded).unwrap();
    assert_eq!(small.ambient(), span);
    assert_eq!(small.local_dim(), rep.local_dim());
    assert_eq!(small.total_span().unwrap().dim(), span);
    assert!(small.value() <= padded.value());
    let report = small.verify().unwrap();
    assert!(report.valid);
    for v in 0..rep.graph().order() {
        assert_eq!(small.space(v).dim(), padded.space(v).dim());
        assert_eq!(small.neighbor_sum(v).unwrap().dim(), padded.neighbor_sum(v).unwrap().dim());
    }
    assert_eq!(compress(&small).unwrap(), small);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn transforms_and_compression_keep_validity(g in graph(7), pad in 0usize..4, ops in transvections()) {
        each_field!(|f| {
            let rep = transvect(&coordinate_rep(&g, f), &ops);
            assert!(rep.verify().unwrap().valid);
            compress_invariants(&rep, pad, &ops);
        });
    }

    #[test]
    fn invalid_assignments_are_rejected(g in graph(6), ops in transvections()) {
        // Giving two adjacent vertices the same line always breaks the condition.
        prop_assume!(g.size() > 0);
        let (u, v) = g.edges().next().unwrap();
        each_field!(|f| {
            let base = coordinate_rep(&g, f);
            let mut spaces = base.spaces().to_vec();
            spaces[v] = spaces[u].clone();
            let bad = DualRepresentation::new(g.clone(), *f, g.order(), 1, spaces).unwrap();
            let report = transvect(&bad, &ops).verify().unwrap();
            assert!(!report.valid);
            assert!(report.failures().count() >= 2);
        });
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lifting_random_graph_representations(g in graph(5), r in 1usize..=3, ops in transvections()) {
        each_field!(|f| {
            let rep = transvect(&coordinate_rep(&g, f), &ops);
            let out = lift_detailed(&rep, r).unwrap();
            let lifted = &out.rep;
            let report = lifted.verify().unwrap();
            assert!(report.valid);
            if r >= 2 {
                assert_eq!(lifted.graph(), &generalized_mycielski(&g, r).unwrap());
            } else {
                assert_eq!(lifted.graph().order(), g.order() + 1);
            }
            if let Some(plan) = &out.plan {
                assert!(assert_lift_dimensions(lifted, plan).unwrap().ok);
                assert!(lifted.value() <= plan.ratio());
                assert_eq!(plan.ratio(), plan.closed_form_ratio());
            }
        });
    }
}

#[test]
fn lifted_cliques_have_tight_values() {
    for m in 2..=4usize {
        let rep = standard_complete_rep(m, &gf(2)).unwrap();
        assert_eq!(rep.value(), BigRational::from_integer(m.into()));
        let g = named_graph(NamedGraph::Complete(m)).unwrap();
        assert_eq!(rep.graph(), &g);
        for r in 2..=3 {
            let out = lift_detailed(&rep, r).unwrap();
            assert_eq!(out.rep.value(), out.plan.unwrap().ratio());
        }
    }
}
