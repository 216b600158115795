//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

mod common;

use std::time::Instant;

use common::checks::{clique_sum, grassmann, interval_case, interval_lemma, pool, tensor_identities};
use common::{brute_clique_number, gf, graph, int_matrix, transvections, CASES};
use haemers_core::bounds::{
    audit_against_table, clique_lower_bound, lemma2_residual, lemma3_identity_check, lift_upper_bound,
    recursion_table, tardif_chi, theta_mycielski2, Entry, LinearForm,
};
use haemers_core::chif::fractional_chromatic;
use haemers_core::graphs::{clique_number, generalized_mycielski, named_graph, or_product, petersen, Graph, NamedGraph};
use haemers_core::linalg::{Field, PrimeField, Rationals};
use haemers_core::lift::{assert_lift_dimensions, lift, lift_detailed};
use haemers_core::oracle::{exists_representation, min_ambient, MinAmbient, SearchConfig, Verdict};
use haemers_core::representation::{compress, standard_complete_rep, DualRepresentation};
use num_rational::BigRational;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Check = Result<String, String>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn k(m: usize) -> Graph {
    named_graph(NamedGraph::Complete(m)).unwrap()
}

/// `m + 1 / sum_{k<r} (m-1)^k`, computed directly.
fn tight_value(m: usize, r: usize) -> BigRational {
    let s: i64 = (0..r as u32).map(|e| (m as i64 - 1).pow(e)).sum();
    q(m as i64, 1) + q(1, s)
}

fn lift_cliques<F: Field>(f: &F, out: &mut Vec<(usize, usize, DualRepresentation<F>)>) -> Result<usize, String> {
    let mut widest = 0;
    for m in 2..=4 {
        for r in 2..=5 {
            let tag = format!("GF({}) m={m} r={r}", f.spec());
            let res = lift_detailed(&standard_complete_rep(m, f).unwrap(), r).map_err(|e| format!("{tag}: {e}"))?;
            let plan = res.plan.clone().ok_or(format!("{tag}: no plan"))?;
            widest = widest.max(res.built_ambient);
            let rep = compress(&res.rep).unwrap();
            ensure(rep.verify().unwrap().valid, || format!("{tag}: invalid"))?;
            let dims = assert_lift_dimensions(&rep, &plan).unwrap();
            ensure(dims.ok, || format!("{tag}: {dims}"))?;
            let target = tight_value(m, r);
            ensure(plan.ratio() == target && plan.closed_form_ratio() == target, || {
                format!("{tag}: plan {} vs {}", plan.ratio(), target)
            })?;
            ensure(rep.value() <= plan.ratio(), || format!("{tag}: value {} > N/D", rep.value()))?;
            out.push((m, r, rep));
        }
    }
    Ok(widest)
}

fn criterion1(p2: &mut Vec<(usize, usize, DualRepresentation<PrimeField>)>, p3: &mut Vec<(usize, usize, DualRepresentation<PrimeField>)>) -> Check {
    let w2 = lift_cliques(&gf(2), p2)?;
    let w3 = lift_cliques(&gf(3), p3)?;
    let widest = w2.max(w3);
    ensure(widest <= 500, || format!("ambient {widest} > 500"))?;
    Ok(format!("24 lifts valid with value m+1/sum(m-1)^k, widest ambient {widest}"))
}

fn criterion2() -> Check {
    let c5 = lift(&standard_complete_rep(2, &gf(2)).unwrap(), 2).map_err(|e| e.to_string())?;
    ensure(c5.ambient() == 5 && c5.local_dim() == 2, || "C5 rep is not (5,2)".into())?;
    let out = lift_detailed(&c5, 2).map_err(|e| e.to_string())?;
    let plan = out.plan.ok_or("no plan")?;
    ensure(plan.big_n == 58 && plan.big_d == 20, || format!("plan {plan}"))?;
    let g = &out.rep;
    ensure(g.graph() == &generalized_mycielski(c5.graph(), 2).unwrap(), || "not M_2(C5)".into())?;
    ensure(g.graph().order() == 11 && g.graph().size() == 20, || "wrong graph size".into())?;
    ensure(g.verify().unwrap().valid, || "invalid".into())?;
    ensure(g.value() == q(29, 10), || format!("value {}", g.value()))?;
    Ok(format!("Groetzsch rep (n,d)=({},{}) value 29/10, plan {plan}", g.ambient(), g.local_dim()))
}

fn criterion3() -> Check {
    let c5 = named_graph(NamedGraph::Cycle(5)).unwrap();
    let found = exists_representation(&c5, &SearchConfig::new(2, 5, 2)).map_err(|e| e.to_string())?;
    let witness = found.verdict.witness().ok_or("no (5,2) representation found")?;
    ensure(witness.verify().unwrap().valid, || "witness invalid".into())?;
    let none = exists_representation(&c5, &SearchConfig::new(2, 4, 2)).map_err(|e| e.to_string())?;
    ensure(matches!(none.verdict, Verdict::NotFound), || format!("(4,2): {}", none))?;
    let min = min_ambient(&c5, 2, 1, 5, &SearchConfig::new(2, 1, 1)).map_err(|e| e.to_string())?;
    ensure(matches!(min, MinAmbient::Found(3, _)), || format!("min_ambient {min:?}"))?;
    Ok(format!("(5,2) found, (4,2) none after {} nodes, min_ambient(d=1)=3", none.nodes))
}

fn criterion4() -> Check {
    for m in 2..=6 {
        for r in 4..=10 {
            let t = recursion_table(m, r).map_err(|e| e.to_string())?;
            ensure(lemma2_residual(&t).iter().all(LinearForm::is_zero), || format!("residual m={m} r={r}"))?;
            ensure(lemma3_identity_check(m, r).map_err(|e| e.to_string())?, || format!("closing m={m} r={r}"))?;
        }
    }
    Ok("35 tables, residuals zero, closing identity holds".into())
}

fn audit_all<F: Field>(reps: &[(usize, usize, DualRepresentation<F>)]) -> Result<usize, String> {
    let mut lines = 0;
    for (m, r, rep) in reps {
        let t = recursion_table(*m, *r).unwrap();
        let mi = *m as i64;
        ensure(t.get(Entry::C(1)) == Some(&LinearForm::from_ints(mi + 1, -1)), || format!("c_1 m={m}"))?;
        if *r >= 3 {
            let b1 = LinearForm::from_ints(mi * mi - mi + 1, -(mi - 1));
            ensure(t.get(Entry::B(1)) == Some(&b1), || format!("b_1 m={m}"))?;
        }
        let report = audit_against_table(rep, &t).map_err(|e| e.to_string())?;
        ensure(report.ok(), || format!("m={m} r={r}\n{report}"))?;
        lines += report.lines.len();
    }
    Ok(lines)
}

fn criterion5(p2: &[(usize, usize, DualRepresentation<PrimeField>)], p3: &[(usize, usize, DualRepresentation<PrimeField>)]) -> Check {
    ensure(!p2.is_empty() && !p3.is_empty(), || "no lifts from criterion 1".into())?;
    let lines = audit_all(p2)? + audit_all(p3)?;
    Ok(format!("{lines} audited inequalities, 0 violated, closing form <= 0 on all"))
}

fn criterion6() -> Check {
    for m in 2..=6usize {
        for r in 4..=10 {
            let h = q(m as i64, 1);
            let lower = clique_lower_bound(m, r).map_err(|e| e.to_string())?;
            let upper = lift_upper_bound(&h, r).map_err(|e| e.to_string())?;
            let tardif = tardif_chi(&h, r).map_err(|e| e.to_string())?;
            ensure(lower == upper && upper == tardif && lower == tight_value(m, r), || {
                format!("m={m} r={r}: {lower} {upper} {tardif}")
            })?;
        }
    }
    let s = lift_upper_bound(&q(7, 1), 2).map_err(|e| e.to_string())?;
    ensure(s == q(50, 7), || format!("lift_upper_bound(7,2) = {s}"))?;
    Ok("lower = upper = tardif on 35 points, lift_upper_bound(7,2) = 50/7".into())
}

fn criterion7() -> Check {
    let c5 = fractional_chromatic(&named_graph(NamedGraph::Cycle(5)).unwrap()).map_err(|e| e.to_string())?.value;
    ensure(c5 == q(5, 2), || format!("chi_f(C5) = {c5}"))?;
    let g = generalized_mycielski(&named_graph(NamedGraph::Cycle(5)).unwrap(), 2).unwrap();
    let gr = fractional_chromatic(&g).map_err(|e| e.to_string())?.value;
    let lpu = &c5 + (q(1, 1) / &c5);
    ensure(gr == q(29, 10) && gr == lpu, || format!("chi_f(Groetzsch) = {gr}"))?;
    Ok("chi_f(C5) = 5/2, chi_f(Groetzsch) = 29/10 = 5/2 + 2/5".into())
}

fn criterion8() -> Check {
    let one = theta_mycielski2(1.0).map_err(|e| e.to_string())?;
    let two = theta_mycielski2(2.0).map_err(|e| e.to_string())?;
    ensure((one - 2.0).abs() < 1e-12, || format!("theta(1) -> {one}"))?;
    ensure((two - 5f64.sqrt()).abs() < 1e-9, || format!("theta(2) -> {two}"))?;
    Ok(format!("f(1) = {one}, |f(2) - sqrt 5| = {:.1e}", (two - 5f64.sqrt()).abs()))
}

fn runner() -> TestRunner {
    let config = Config {
        failure_persistence: None,
        ..Config::with_cases(CASES)
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn sweep<S: Strategy>(name: &str, s: S, body: impl Fn(S::Value)) -> Result<(), String> {
    runner()
        .run(&s, |v| {
            body(v);
            Ok(())
        })
        .map_err(|e| format!("{name}: {e}"))
}

fn criterion9() -> Check {
    let pair = (1usize..=5, int_matrix(0..=4, 5), int_matrix(0..=4, 5));
    sweep("grassmann", pair, |(n, x, y)| {
        let cut = |m: &Vec<Vec<i64>>| m.iter().map(|r| r[..n].to_vec()).collect::<Vec<_>>();
        each_field!(|f| grassmann(f, n, &cut(&x), &cut(&y)));
    })?;
    let triple = (1usize..=3, int_matrix(0..=3, 3), int_matrix(0..=3, 3), int_matrix(0..=3, 3));
    sweep("tensor", triple, |(n, u, v, w)| {
        let cut = |m: &Vec<Vec<i64>>| m.iter().map(|r| r[..n].to_vec()).collect::<Vec<_>>();
        each_field!(|f| tensor_identities(f, n, &cut(&u), &cut(&v), &cut(&w)));
    })?;
    sweep("interval", interval_case(), |c| each_field!(|f| interval_lemma(f, &c)))?;

    let (p2, p3, p5, rq) = (pool(&gf(2), true), pool(&gf(3), true), pool(&gf(5), true), pool(&Rationals, false));
    sweep("clique-sum", (0usize..6, transvections(), 0usize..64, proptest::num::u64::ANY), |(i, ops, start, bits)| {
        clique_sum(&p2[i], &ops, start, bits);
        clique_sum(&p3[i], &ops, start, bits);
        clique_sum(&p5[i], &ops, start, bits);
        clique_sum(&rq[i % rq.len()], &ops, start, bits);
    })?;

    let mut corpus: Vec<Graph> = (2..=5).map(k).collect();
    corpus.extend([5, 7].map(|n| named_graph(NamedGraph::Cycle(n)).unwrap()));
    corpus.push(petersen());
    for g in &corpus {
        let w = clique_number(g).unwrap();
        ensure(clique_number(&generalized_mycielski(g, 2).unwrap()).unwrap() == w, || "omega(M2(G))".into())?;
    }
    sweep("omega", graph(8), |g| {
        if g.size() > 0 {
            let m2 = generalized_mycielski(&g, 2).unwrap();
            assert_eq!(brute_clique_number(&m2), brute_clique_number(&g));
        }
    })?;
    let c5 = named_graph(NamedGraph::Cycle(5)).unwrap();
    let w = clique_number(&or_product(&c5, &c5)).unwrap();
    ensure(w == 5, || format!("omega(C5.C5) = {w}"))?;
    Ok(format!("{CASES} cases each: Grassmann, tensor 1-3, interval, clique-sum (GF2/3/5/Q); omega(M2) on corpus + {CASES} random; omega(C5.C5) = 5"))
}

fn main() {
    let mut p2 = Vec::new();
    let mut p3 = Vec::new();
    let mut failed = 0;
    let mut report = |id: usize, t: Instant, res: Check| {
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("criterion {id}: PASS ({secs:.2}s) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {id}: FAIL ({secs:.2}s) {msg}");
            }
        }
    };
    let t = Instant::now();
    let r = criterion1(&mut p2, &mut p3);
    report(1, t, r);
    let t = Instant::now();
    report(2, t, criterion2());
    let t = Instant::now();
    report(3, t, criterion3());
    let t = Instant::now();
    report(4, t, criterion4());
    let t = Instant::now();
    report(5, t, criterion5(&p2, &p3));
    let t = Instant::now();
    report(6, t, criterion6());
    let t = Instant::now();
    report(7, t, criterion7());
    let t = Instant::now();
    report(8, t, criterion8());
    let t = Instant::now();
    report(9, t, criterion9());
    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all 9 criteria passed");
}
