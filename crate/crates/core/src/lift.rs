//! Lifting a dual `(n, d)`-representation of `G` to one of the generalized
//! Mycielskian `M_r(G)`.
//!
//! For `r >= 2` and a graph with at least one edge, the lifted subspaces live
//! in `F^n ⊗ F^M = F^(n*M)` and are built from the coordinate blocks
//! `Γ[a_{i-1}+1, a_i]` of `F^M`. The Kronecker convention is
//! `x ⊗ e_j = (0, .., 0, x, 0, .., 0)` with `x` in block `j`, so block `j`
//! occupies coordinates `(j-1)*n .. j*n`.
//!
//! The tail term `Γ[a_{r-1}+1, a_{r-1}+d^(2r-1)]` is a subspace of `F^M`,
//! not of `F^(n*M)`. It is realized as `span{e_1 ⊗ e_j : j in the tail}`:
//! the first coordinate of every tail block, a fixed coordinate subspace of
//! dimension `d^(2r-1)` that no other term touches.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::graphs::{generalized_mycielski, VertexLabel};
use crate::linalg::{Field, LinalgError, Subspace};
use crate::representation::{compress, join_reps, standard_complete_rep, DualRepresentation, RepError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("input is not a valid dual representation ({0} failing vertices)")]
    InvalidInput(usize),
    #[error("lifted assignment failed verification: {0}")]
    ConstructionFailed(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Index data of the lift for given `(n, d, r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftPlan {
    pub r: usize,
    pub n: u64,
    pub d: u64,
    /// `a_{-1} = 0, a_0, ..., a_{r-1}` with `a_i = Σ_{j<=i} d^(2r-2-j) (n-d)^j`.
    a: Vec<u64>,
    /// `M = a_{r-1} + d^(2r-1)`, the dimension of the interval space.
    pub m: u64,
    /// `N = n a_{r-1} + d^(2r-1)`
    pub big_n: u64,
    /// `D = Σ_{i<r} d^(2r-1-i) (n-d)^i = d a_{r-1}`
    pub big_d: u64,
}

fn overflow() -> LiftError {
    LiftError::BadParameter("plan arithmetic overflows u64".into())
}

fn checked_pow(base: u64, exp: usize) -> Result<u64, LiftError> {
    base.checked_pow(u32::try_from(exp).map_err(|_| overflow())?)
        .ok_or_else(overflow)
}

impl LiftPlan {
    /// `a_i` for `-1 <= i <= r-1`.
    pub fn a(&self, i: isize) -> u64 {
        self.a[(i + 1) as usize]
    }

    /// `a_0, ..., a_{r-1}`
    pub fn a_values(&self) -> &[u64] {
        &self.a[1..]
    }

    /// 1-based inclusive bounds of the tail interval in `F^M`.
    pub fn tail(&self) -> (u64, u64) {
        (self.a(self.r as isize - 1) + 1, self.m)
    }

    /// `N / D` as an exact rational.
    pub fn ratio(&self) -> BigRational {
        BigRational::new(BigInt::from(self.big_n), BigInt::from(self.big_d))
    }

    /// `n/d + 1 / Σ_{i<r} (n/d - 1)^i`, evaluated independently of `N` and `D`.
    pub fn closed_form_ratio(&self) -> BigRational {
        let h = BigRational::new(BigInt::from(self.n), BigInt::from(self.d));
        let step = &h - BigRational::one();
        let mut sum = BigRational::zero();
        let mut term = BigRational::one();
        for _ in 0..self.r {
            sum += &term;
            term *= &step;
        }
        h + sum.recip()
    }

    /// Ambient dimension of the uncompressed construction, `n * M`.
    pub fn built_ambient(&self) -> u64 {
        self.n * self.m
    }
}

impl fmt::Display for LiftPlan {
    /// `r n d M N D a_0..a_{r-1}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r={} n={} d={} M={} N={} D={} a={}",
            self.r,
            self.n,
            self.d,
            self.m,
            self.big_n,
            self.big_d,
            self.a_values()
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

pub fn lift_plan(n: u64, d: u64, r: usize) -> Result<LiftPlan, LiftError> {
    if r < 2 {
        return Err(LiftError::BadParameter(format!("plan needs r >= 2, got {r}")));
    }
    if d == 0 || n <= d {
        return Err(LiftError::BadParameter(format!("plan needs n > d >= 1, got n={n} d={d}")));
    }
    let mut a = Vec::with_capacity(r + 1);
    a.push(0u64);
    let mut acc = 0u64;
    for j in 0..r {
        let term = checked_pow(d, 2 * r - 2 - j)?
            .checked_mul(checked_pow(n - d, j)?)
            .ok_or_else(overflow)?;
        acc = acc.checked_add(term).ok_or_else(overflow)?;
        a.push(acc);
    }
    let top = acc;
    let tail = checked_pow(d, 2 * r - 1)?;
    let m = top.checked_add(tail).ok_or_else(overflow)?;
    let big_n = n
        .checked_mul(top)
        .and_then(|x| x.checked_add(tail))
        .ok_or_else(overflow)?;
    let big_d = d.checked_mul(top).ok_or_else(overflow)?;
    n.checked_mul(m).ok_or_else(overflow)?;
    let plan = LiftPlan {
        r,
        n,
        d,
        a,
        m,
        big_n,
        big_d,
    };
    if plan.ratio() != plan.closed_form_ratio() {
        return Err(LiftError::ConstructionFailed(format!("ratio identity fails for {plan}")));
    }
    Ok(plan)
}

/// Result of [`lift_detailed`].
#[derive(Debug, Clone)]
pub struct LiftOutput<F: Field> {
    /// The compressed lifted representation.
    pub rep: DualRepresentation<F>,
    /// `None` for the `r = 1` and edgeless special cases.
    pub plan: Option<LiftPlan>,
    /// Ambient dimension the construction was assembled in, before compression.
    pub built_ambient: usize,
}

/// Lifts a valid representation of `G` to `M_r(G)`; see [`lift_detailed`].
pub fn lift<F: Field>(rep: &DualRepresentation<F>, r: usize) -> Result<DualRepresentation<F>, LiftError> {
    Ok(lift_detailed(rep, r)?.rep)
}

/// Lifts a valid representation of `G` to `M_r(G)`.
///
/// * `r = 1`: `M_1(G) = G + K_1`, realized by joining with the standard `K_1`.
/// * `G` edgeless: `M_r(G)` is a star plus isolated vertices; returns its
///   `(2, 1)`-representation.
/// * otherwise the tensor construction with plan [`lift_plan`]`(n, d, r)`,
///   applied to the compressed input so that `Σ_v X_v = F^n`.
///
/// The assembled representation is verified and compressed before return.
pub fn lift_detailed<F: Field>(rep: &DualRepresentation<F>, r: usize) -> Result<LiftOutput<F>, LiftError> {
    if r == 0 {
        return Err(LiftError::BadParameter("r must be at least 1".into()));
    }
    let report = rep.verify()?;
    if !report.valid {
        return Err(LiftError::InvalidInput(report.failures().count()));
    }
    let graph = rep.graph();
    let lifted_graph = generalized_mycielski(graph, r).map_err(RepError::from)?;
    let field = rep.field();

    if r == 1 {
        let joined = join_reps(rep, &standard_complete_rep(1, field)?)?;
        let out = DualRepresentation::new(
            lifted_graph,
            field.clone(),
            joined.ambient(),
            joined.local_dim(),
            joined.spaces().to_vec(),
        )?;
        let built_ambient = out.ambient();
        return Ok(LiftOutput {
            rep: out,
            plan: None,
            built_ambient,
        });
    }

    if graph.size() == 0 {
        let out = star_representation(field, lifted_graph)?;
        let built_ambient = out.ambient();
        return Ok(LiftOutput {
            rep: out,
            plan: None,
            built_ambient,
        });
    }

    let base = compress(rep)?;
    let plan = lift_plan(base.ambient() as u64, base.local_dim() as u64, r)?;
    let spaces = assemble(&base, &plan)?;
    let built_ambient = plan.built_ambient() as usize;
    let built = DualRepresentation::new(lifted_graph, field.clone(), built_ambient, plan.big_d as usize, spaces)?;
    let check = built.verify()?;
    if !check.valid {
        let bad: Vec<String> = check.failures().map(|c| c.label.to_string()).collect();
        return Err(LiftError::ConstructionFailed(format!("{plan}: failing vertices {}", bad.join(" "))));
    }
    Ok(LiftOutput {
        rep: compress(&built)?,
        plan: Some(plan),
        built_ambient,
    })
}

/// `(2, 1)`-representation of a star (apex `z`) plus isolated vertices.
fn star_representation<F: Field>(
    field: &F,
    graph: crate::graphs::Graph,
) -> Result<DualRepresentation<F>, LiftError> {
    let n = if graph.order() == 1 { 1 } else { 2 };
    let z = graph.index_of(&VertexLabel::Apex).expect("Mycielskian has an apex");
    let spaces = (0..graph.order())
        .map(|v| {
            let leaf = v != z && graph.has_edge(v, z);
            Subspace::coordinate(field, n, [usize::from(leaf)])
        })
        .collect();
    Ok(DualRepresentation::new(graph, field.clone(), n, 1, spaces)?)
}

/// Builds `X̃_u` for every vertex of `M_r(G)`, in the vertex order of
/// [`generalized_mycielski`].
fn assemble<F: Field>(base: &DualRepresentation<F>, plan: &LiftPlan) -> Result<Vec<Subspace<F>>, LiftError> {
    let field = base.field();
    let n = base.ambient();
    let m = plan.m as usize;
    let ambient = n * m;
    let r = plan.r;
    let a = |i: isize| plan.a(i) as usize;
    let top = a(r as isize - 1);

    // X ⊗ Γ[lo, hi] with 1-based inclusive interval bounds in F^M
    let tensor_interval = |x: &Subspace<F>, lo: usize, hi: usize| -> Result<Subspace<F>, LiftError> {
        if lo > hi {
            return Ok(Subspace::zero(field, ambient));
        }
        Ok(x.tensor(&Subspace::gamma(field, m, lo, hi)?)?)
    };
    let tail = {
        let (lo, hi) = plan.tail();
        Subspace::coordinate(field, ambient, (lo as usize..=hi as usize).map(|j| (j - 1) * n))
    };
    let whole = base.total_span()?;
    // Σ_{i<ℓ} Γ[a_{2i}+1, a_{2i+1}] (odd = true) or Γ[a_{2i-1}+1, a_{2i}]
    let blocks = |count: usize, odd: bool| -> Result<Vec<Subspace<F>>, LiftError> {
        (0..count as isize)
            .map(|i| {
                let (lo, hi) = if odd {
                    (a(2 * i) + 1, a(2 * i + 1))
                } else {
                    (a(2 * i - 1) + 1, a(2 * i))
                };
                tensor_interval(&whole, lo, hi)
            })
            .collect()
    };

    let g_order = base.graph().order();
    let level_vertex = |idx: usize| -> Result<Subspace<F>, LiftError> {
        let (k, v) = (idx / g_order, idx % g_order);
        let own = tensor_interval(base.space(v), a(k as isize - 1) + 1, top)?;
        let mut parts = blocks(k / 2, k % 2 == 1)?;
        parts.push(own);
        if k % 2 == 1 {
            parts.push(tail.clone());
        }
        Ok(Subspace::sum_all(field, ambient, &parts)?)
    };
    let mut spaces = (0..r * g_order)
        .into_par_iter()
        .map(level_vertex)
        .collect::<Result<Vec<_>, _>>()?;

    let mut apex = blocks(r / 2, r % 2 == 1)?;
    if r % 2 == 1 {
        apex.push(tail);
    }
    spaces.push(Subspace::sum_all(field, ambient, &apex)?);
    Ok(spaces)
}

/// Which family of the construction a lifted vertex belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexClass {
    Level(usize),
    Apex,
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexClass::Level(k) if k % 2 == 0 => write!(f, "level {k} (even)"),
            VertexClass::Level(k) => write!(f, "level {k} (odd)"),
            VertexClass::Apex => f.write_str("apex"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDims {
    pub class: VertexClass,
    /// dimension of every vertex subspace in the class, in vertex order
    pub dims: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub expected_dim: usize,
    pub classes: Vec<ClassDims>,
    pub total_span: usize,
    pub span_bound: usize,
    pub ok: bool,
}

impl fmt::Display for DimensionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "D={} span={} N={} ok={}",
            self.expected_dim, self.total_span, self.span_bound, self.ok
        )?;
        for c in &self.classes {
            let same = c.dims.iter().all(|&x| x == self.expected_dim);
            writeln!(f, "{}: {} vertices, all dim D: {same}", c.class, c.dims.len())?;
        }
        Ok(())
    }
}

/// Checks that every lifted subspace has dimension `D` and that the total span
/// is at most `N`. Vertices are grouped by their outermost Mycielski label.
pub fn assert_lift_dimensions<F: Field>(
    lifted: &DualRepresentation<F>,
    plan: &LiftPlan,
) -> Result<DimensionReport, LiftError> {
    let mut classes: Vec<ClassDims> = Vec::new();
    for (v, x) in lifted.spaces().iter().enumerate() {
        let class = match lifted.graph().label(v) {
            VertexLabel::Level(_, k) => VertexClass::Level(*k),
            VertexLabel::Apex => VertexClass::Apex,
            VertexLabel::Base(name) => {
                return Err(LiftError::BadParameter(format!("vertex `{name}` is not a Mycielski vertex")))
            }
        };
        match classes.iter_mut().find(|c| c.class == class) {
            Some(c) => c.dims.push(x.dim()),
            None => classes.push(ClassDims {
                class,
                dims: vec![x.dim()],
            }),
        }
    }
    classes.sort_by_key(|c| c.class);
    let expected_dim = plan.big_d as usize;
    let total_span = lifted.total_span()?.dim();
    let span_bound = plan.big_n as usize;
    let ok = classes.iter().all(|c| c.dims.iter().all(|&x| x == expected_dim)) && total_span <= span_bound;
    Ok(DimensionReport {
        expected_dim,
        classes,
        total_span,
        span_bound,
        ok,
    })
}
