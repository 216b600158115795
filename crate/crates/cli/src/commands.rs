use std::fmt::Write as _;
use std::path::Path;

use num_rational::BigRational;

use haemers_core::bounds::{
    audit_against_table, clique_lower_bound, closing_identity_check, lemma2_residual, lemma3_identity_check,
    lift_upper_bound, recursion_table, tardif_chi, theta_mycielski2, BoundsError,
};
use haemers_core::chif::fractional_chromatic;
use haemers_core::graphs::{clique_number, Graph, GraphSpec};
use haemers_core::lift::{assert_lift_dimensions, lift_detailed, LiftError};
use haemers_core::linalg::{format_rational, parse_rational, Field, FieldSpec, PrimeField, Rationals, Subspace};
use haemers_core::oracle::{exists_representation, min_ambient, MinAmbient, SearchConfig, Verdict};
use haemers_core::representation::{parse_representation, AnyRepresentation, DualRepresentation};

use crate::{BoundsArgs, ChifArgs, Failure, FormulasArgs, GraphArgs, LiftArgs, SearchArgs, VerifyArgs, VERSION};

type Run = Result<u8, Failure>;

fn header(cmd: &str, params: &[(&str, String)]) {
    let mut s = format!("haemers {VERSION} {cmd}");
    for (k, v) in params {
        write!(s, " {k}={v}").unwrap();
    }
    println!("{s}");
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_out(path: &Path, text: &str) -> Result<(), Failure> {
    if path.as_os_str() == "-" {
        print!("{text}");
        return Ok(());
    }
    std::fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

/// Rewrites file references inside a spec as absolute paths, so the spec
/// resolves from any directory.
fn absolute_spec(spec: GraphSpec, base: Option<&Path>) -> GraphSpec {
    match spec {
        GraphSpec::File(p) => {
            let joined = match base {
                Some(dir) if p.is_relative() => dir.join(&p),
                _ => p,
            };
            GraphSpec::File(std::path::absolute(&joined).unwrap_or(joined))
        }
        GraphSpec::Mycielski(inner, r) => GraphSpec::Mycielski(Box::new(absolute_spec(*inner, base)), r),
        other => other,
    }
}

fn graph_from_spec(s: &str) -> Result<(GraphSpec, Graph), Failure> {
    let spec: GraphSpec = s.parse().map_err(Failure::input)?;
    let g = spec.build(None).map_err(Failure::input)?;
    Ok((absolute_spec(spec, None), g))
}

fn load_rep(path: &Path) -> Result<(String, AnyRepresentation), Failure> {
    let text = read(path)?;
    let base = path.parent();
    let (gref, rep) = parse_representation(&text, base).map_err(Failure::input)?;
    let spec: GraphSpec = gref.parse().map_err(Failure::input)?;
    Ok((absolute_spec(spec, base).to_string(), rep))
}

/// The `(|V|, 1)` representation of a complete graph, or `(1, 1)` of an
/// edgeless one.
fn standard_rep<F: Field>(g: &Graph, field: F) -> Result<DualRepresentation<F>, Failure> {
    let n = g.order();
    let all: Vec<usize> = (0..n).collect();
    let spaces: Vec<Subspace<F>> = if g.size() == 0 {
        (0..n).map(|_| Subspace::full(&field, 1)).collect()
    } else if g.is_clique(&all) {
        (0..n).map(|v| Subspace::coordinate(&field, n, [v])).collect()
    } else {
        return Err(Failure::input(
            "--graph needs a complete or edgeless graph; pass a representation with --rep",
        ));
    };
    let ambient = if g.size() == 0 { 1 } else { n };
    DualRepresentation::new(g.clone(), field, ambient, 1, spaces).map_err(Failure::input)
}

pub fn lift(a: &LiftArgs) -> Run {
    let (gref, input) = match (&a.rep, &a.graph) {
        (Some(path), _) => {
            header("lift", &[("rep", path.display().to_string()), ("r", a.r.to_string())]);
            load_rep(path)?
        }
        (None, Some(spec)) => {
            header(
                "lift",
                &[("graph", spec.clone()), ("field", a.field.clone()), ("r", a.r.to_string())],
            );
            let (spec, g) = graph_from_spec(spec)?;
            let rep = match a.field.parse::<FieldSpec>().map_err(Failure::input)? {
                FieldSpec::Prime(p) => AnyRepresentation::Prime(standard_rep(&g, PrimeField::new(p).map_err(Failure::input)?)?),
                FieldSpec::Rational => AnyRepresentation::Rational(standard_rep(&g, Rationals)?),
            };
            (spec.to_string(), rep)
        }
        (None, None) => return Err(Failure::input("one of --graph or --rep is required")),
    };
    match &input {
        AnyRepresentation::Prime(rep) => lift_with(rep, &gref, a),
        AnyRepresentation::Rational(rep) => lift_with(rep, &gref, a),
    }
}

fn lift_with<F: Field>(rep: &DualRepresentation<F>, gref: &str, a: &LiftArgs) -> Run {
    println!(
        "input field={} n={} d={} value={}",
        rep.field().spec(),
        rep.ambient(),
        rep.local_dim(),
        format_rational(&rep.value())
    );
    let out = match lift_detailed(rep, a.r) {
        Ok(out) => out,
        Err(LiftError::InvalidInput(k)) => {
            println!("input valid=false failing={k}");
            return Ok(1);
        }
        Err(e) => return Err(Failure::input(e)),
    };
    match &out.plan {
        Some(plan) => {
            println!("plan {plan}");
            let dims = assert_lift_dimensions(&out.rep, plan).map_err(Failure::input)?;
            println!(
                "built ambient={} dims_ok={} span={} span_bound={}",
                out.built_ambient, dims.ok, dims.total_span, dims.span_bound
            );
        }
        None => println!("plan none (special case)"),
    }
    let report = out.rep.verify().map_err(Failure::input)?;
    let lifted_ref = format!("mycielski:{gref}:{}", a.r);
    println!(
        "lifted vertices={} edges={} valid={}",
        out.rep.graph().order(),
        out.rep.graph().size(),
        report.valid
    );
    println!(
        "N={} D={} value={}",
        out.rep.ambient(),
        out.rep.local_dim(),
        format_rational(&out.rep.value())
    );
    if let Ok(bound) = lift_upper_bound(&rep.value(), a.r) {
        println!("bound={}", format_rational(&bound));
    }
    if let Some(path) = &a.out {
        write_out(path, &out.rep.to_text(&lifted_ref))?;
    }
    Ok(if report.valid { 0 } else { 1 })
}

pub fn verify(a: &VerifyArgs) -> Run {
    header("verify", &[("rep", a.rep.display().to_string())]);
    let (gref, rep) = load_rep(&a.rep)?;
    let report = rep.verify().map_err(Failure::input)?;
    println!("graph={gref} field={} value={}", rep.field_spec(), format_rational(&rep.value()));
    if a.quiet {
        println!("{}", report.to_string().lines().next().unwrap_or_default());
    } else {
        print!("{report}");
    }
    Ok(if report.valid { 0 } else { 1 })
}

pub fn search(a: &SearchArgs) -> Run {
    let mut params = vec![("graph", a.graph.clone()), ("p", a.p.to_string())];
    match (a.n, a.n_max) {
        (Some(n), _) => params.push(("n", n.to_string())),
        (None, Some(m)) => params.push(("n_max", m.to_string())),
        (None, None) => return Err(Failure::input("one of --n or --n-max is required")),
    }
    params.extend([
        ("d", a.d.to_string()),
        ("budget", a.budget.to_string()),
        ("symmetry", a.symmetry.to_string()),
    ]);
    header("search", &params);
    let (spec, g) = graph_from_spec(&a.graph)?;
    let cfg = SearchConfig {
        budget: a.budget,
        candidate_cap: a.cap,
        symmetry: a.symmetry,
        ..SearchConfig::new(a.p, a.n.unwrap_or(a.d), a.d)
    };
    let write_witness = |w: &DualRepresentation<PrimeField>| -> Result<(), Failure> {
        if let Some(path) = &a.out {
            write_out(path, &w.to_text(&spec.to_string()))?;
        }
        Ok(())
    };
    if let Some(n_max) = a.n_max {
        return match min_ambient(&g, a.p, a.d, n_max, &cfg).map_err(Failure::input)? {
            MinAmbient::Found(n, w) => {
                println!("min_ambient={n}");
                write_witness(&w)?;
                Ok(0)
            }
            MinAmbient::None => {
                println!("min_ambient=none");
                Ok(1)
            }
            MinAmbient::BudgetExhausted(n) => {
                println!("min_ambient=inconclusive at n={n}");
                Ok(3)
            }
        };
    }
    let outcome = exists_representation(&g, &cfg).map_err(Failure::input)?;
    println!("{outcome}");
    match &outcome.verdict {
        Verdict::Found(w) => {
            write_witness(w)?;
            Ok(0)
        }
        Verdict::NotFound => Ok(1),
        Verdict::BudgetExhausted => Ok(3),
    }
}

pub fn bounds(a: &BoundsArgs) -> Run {
    header("bounds", &[("m", a.m.to_string()), ("r", a.r.to_string())]);
    let (m, r) = (a.m, a.r);
    let lower = clique_lower_bound(m, r).map_err(Failure::input)?;
    let mut ok = true;
    if m >= 2 && r >= 2 {
        let table = recursion_table(m, r).map_err(Failure::input)?;
        println!("{table}");
        let bad = lemma2_residual(&table).iter().filter(|f| !f.is_zero()).count();
        println!("Lemma2 {}", if bad == 0 { "OK".to_string() } else { format!("FAIL ({bad} nonzero residuals)") });
        let lemma3 = if r >= 4 { lemma3_identity_check(m, r) } else { closing_identity_check(m, r) };
        let lemma3 = lemma3.map_err(Failure::input)?;
        println!("Lemma3 {}", if lemma3 { "OK" } else { "FAIL" });
        ok &= bad == 0 && lemma3;
        if let Some(path) = &a.audit {
            let (_, rep) = load_rep(path)?;
            let report = match &rep {
                AnyRepresentation::Prime(x) => audit_against_table(x, &table),
                AnyRepresentation::Rational(x) => audit_against_table(x, &table),
            };
            let report = match report {
                Err(e @ BoundsError::GraphMismatch(_)) => return Err(Failure::input(e)),
                other => other.map_err(Failure::input)?,
            };
            print!("{report}");
            ok &= report.ok();
        }
    }
    let h = BigRational::from_integer(m.into());
    println!("lower={}", format_rational(&lower));
    println!("upper={}", format_rational(&lift_upper_bound(&h, r).map_err(Failure::input)?));
    println!("tardif={}", format_rational(&tardif_chi(&h, r).map_err(Failure::input)?));
    Ok(if ok { 0 } else { 1 })
}

pub fn chif(a: &ChifArgs) -> Run {
    header("chif", &[("graph", a.graph.clone()), ("witness", a.witness.to_string())]);
    let (_, g) = graph_from_spec(&a.graph)?;
    let res = fractional_chromatic(&g).map_err(Failure::input)?;
    println!("vertices={} omega={}", g.order(), clique_number(&g).map_err(Failure::input)?);
    println!("chi_f={}", format_rational(&res.value));
    if a.witness {
        for (set, x) in &res.weights {
            let labels: Vec<String> = set.iter().map(|&v| g.label(v).to_string()).collect();
            println!("weight {} {{{}}}", format_rational(x), labels.join(" "));
        }
    }
    Ok(0)
}

pub fn formulas(a: &FormulasArgs) -> Run {
    let mut params = vec![("r", a.r.to_string())];
    if let Some(m) = a.m {
        params.push(("m", m.to_string()));
    }
    if let Some(h) = &a.h {
        params.push(("h", h.clone()));
    }
    if let Some(t) = a.theta {
        params.push(("theta", t.to_string()));
    }
    header("formulas", &params);
    if a.m.is_none() && a.h.is_none() && a.theta.is_none() {
        return Err(Failure::input("give at least one of --m, --h, --theta"));
    }
    if let Some(m) = a.m {
        let v = clique_lower_bound(m, a.r).map_err(Failure::input)?;
        println!("clique_lower_bound={}", format_rational(&v));
    }
    if let Some(h) = &a.h {
        let h = parse_rational(h).map_err(Failure::input)?;
        println!("lift_upper_bound={}", format_rational(&lift_upper_bound(&h, a.r).map_err(Failure::input)?));
        println!("tardif_chi={}", format_rational(&tardif_chi(&h, a.r).map_err(Failure::input)?));
    }
    if let Some(t) = a.theta {
        println!("theta_mycielski2={:.15}", theta_mycielski2(t).map_err(Failure::input)?);
    }
    Ok(0)
}

pub fn graph(a: &GraphArgs) -> Run {
    header("graph", &[("graph", a.graph.clone())]);
    let (_, g) = graph_from_spec(&a.graph)?;
    println!(
        "vertices={} edges={} omega={}",
        g.order(),
        g.size(),
        clique_number(&g).map_err(Failure::input)?
    );
    if let Some(path) = &a.out {
        write_out(path, &g.to_text())?;
    }
    Ok(0)
}
