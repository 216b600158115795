//! Lower bounds for representations of `M_r(K_m)` as exact linear forms in
//! `(d, n)`, the closed-form bound evaluators, the θ̄ formula for `M_2`, and
//! audits of concrete representations against the recursion table.
//!
//! Table entries bound intersection dimensions at a vertex `i` of `K_m`:
//!
//! * `a_ℓ <= dim ⋂_{t=1..ℓ} X_(i,2t-1)`
//! * `b_ℓ <= dim ⋂_{t=0..ℓ} X_(i,2t)`
//! * `c_k <= dim ⋂_{t=0..k} X_(i,t)`

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graphs::{generalized_mycielski, named_graph, NamedGraph, VertexLabel};
use crate::linalg::{format_rational, Field};
use crate::representation::{DualRepresentation, RepError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("graph does not match M_r(K_m): {0}")]
    GraphMismatch(String),
    #[error("closed form and recursion disagree: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `coef_d * d + coef_n * n`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub coef_d: BigRational,
    pub coef_n: BigRational,
}

impl LinearForm {
    pub fn new(coef_d: BigRational, coef_n: BigRational) -> Self {
        Self { coef_d, coef_n }
    }

    pub fn from_ints(coef_d: i64, coef_n: i64) -> Self {
        Self::new(int(coef_d), int(coef_n))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    /// The form `d`.
    pub fn d() -> Self {
        Self::from_ints(1, 0)
    }

    /// The form `n`.
    pub fn n() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coef_d.is_zero() && self.coef_n.is_zero()
    }

    pub fn eval(&self, d: &BigRational, n: &BigRational) -> BigRational {
        &self.coef_d * d + &self.coef_n * n
    }

    pub fn eval_usize(&self, d: usize, n: usize) -> BigRational {
        self.eval(&int(d as i64), &int(n as i64))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.coef_d * k, &self.coef_n * k)
    }
}

impl Add for &LinearForm {
    type Output = LinearForm;
    fn add(self, o: &LinearForm) -> LinearForm {
        LinearForm::new(&self.coef_d + &o.coef_d, &self.coef_n + &o.coef_n)
    }
}

impl Sub for &LinearForm {
    type Output = LinearForm;
    fn sub(self, o: &LinearForm) -> LinearForm {
        LinearForm::new(&self.coef_d - &o.coef_d, &self.coef_n - &o.coef_n)
    }
}

impl Add for LinearForm {
    type Output = LinearForm;
    fn add(self, o: LinearForm) -> LinearForm {
        &self + &o
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;
    fn sub(self, o: LinearForm) -> LinearForm {
        &self - &o
    }
}

impl Neg for &LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        LinearForm::new(-&self.coef_d, -&self.coef_n)
    }
}

impl Mul<&LinearForm> for i64 {
    type Output = LinearForm;
    fn mul(self, f: &LinearForm) -> LinearForm {
        f.scale(&int(self))
    }
}

impl fmt::Display for LinearForm {
    /// `α*d + β*n`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.coef_n.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}*d {sign} {}*n",
            format_rational(&self.coef_d),
            format_rational(&self.coef_n.abs())
        )
    }
}

/// Which family a table entry belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Entry {
    A(usize),
    B(usize),
    C(usize),
}

impl Entry {
    /// Levels intersected by the quantity this entry bounds.
    pub fn levels(self) -> Vec<usize> {
        match self {
            Entry::A(l) => (1..=l).map(|t| 2 * t - 1).collect(),
            Entry::B(l) => (0..=l).map(|t| 2 * t).collect(),
            Entry::C(k) => (0..=k).collect(),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::A(l) => write!(f, "a_{l}"),
            Entry::B(l) => write!(f, "b_{l}"),
            Entry::C(k) => write!(f, "c_{k}"),
        }
    }
}

/// The recursion system for `M_r(K_m)`. Holds every entry whose bounded
/// quantity exists in `M_r(K_m)`: `c_0..c_{r-1}`, `a_ℓ` for `2ℓ-1 <= r-1`
/// and `b_ℓ` for `2ℓ <= r-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionTable {
    pub m: usize,
    pub r: usize,
    /// `a[0]` is unused; `a[ℓ]` is `a_ℓ` for `ℓ >= 1`.
    a: Vec<LinearForm>,
    pub b: Vec<LinearForm>,
    pub c: Vec<LinearForm>,
}

impl RecursionTable {
    /// `a_ℓ` for `ℓ >= 1`.
    pub fn a(&self, l: usize) -> Option<&LinearForm> {
        if l == 0 {
            None
        } else {
            self.a.get(l)
        }
    }

    /// `a_1, a_2, ...`
    pub fn a_values(&self) -> &[LinearForm] {
        &self.a[1..]
    }

    pub fn get(&self, e: Entry) -> Option<&LinearForm> {
        match e {
            Entry::A(l) => self.a(l),
            Entry::B(l) => self.b.get(l),
            Entry::C(k) => self.c.get(k),
        }
    }

    /// All entries in the order `c`, `a`, `b`.
    pub fn entries(&self) -> impl Iterator<Item = (Entry, &LinearForm)> {
        let c = self.c.iter().enumerate().map(|(k, f)| (Entry::C(k), f));
        let a = self.a.iter().enumerate().skip(1).map(|(l, f)| (Entry::A(l), f));
        let b = self.b.iter().enumerate().map(|(l, f)| (Entry::B(l), f));
        c.chain(a).chain(b)
    }

    /// The final inequality `closing <= 0` that every representation of
    /// `M_r(K_m)` satisfies:
    ///
    /// * `r = 2`: `(m-1) c_1 + 2d - n`
    /// * `r = 3`: `m b_1 + d - n`
    /// * `r >= 4`: `m(m-2) c_{r-2} + (m-1)^2 c_{r-4} + 4dm - 2nm`
    pub fn closing_form(&self) -> LinearForm {
        let m = self.m as i64;
        let (d, n) = (LinearForm::d(), LinearForm::n());
        match self.r {
            2 => (m - 1) * &self.c[1] + 2 * &d - n,
            3 => m * &self.b[1] + d - n,
            r => m * (m - 2) * &self.c[r - 2] + (m - 1) * (m - 1) * &self.c[r - 4] + 4 * m * &d - 2 * m * &n,
        }
    }
}

impl fmt::Display for RecursionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, form) in self.entries() {
            writeln!(f, "{e} = {form}")?;
        }
        write!(f, "closing = {} <= 0", self.closing_form())
    }
}

pub fn recursion_table(m: usize, r: usize) -> Result<RecursionTable, BoundsError> {
    if m < 2 || r < 2 {
        return Err(BoundsError::BadParameter(format!("table needs m >= 2 and r >= 2, got m={m} r={r}")));
    }
    let mi = m as i64;
    let (d, n) = (LinearForm::d(), LinearForm::n());
    let base = (mi - 1) * &d - n.clone();
    let step = |c: &LinearForm, prev: &LinearForm| (mi - 2) * c + prev.clone() + 2 * &d - n.clone();
    let mut a = vec![LinearForm::zero(), d.clone()];
    let mut b = vec![d.clone()];
    let mut c = vec![d.clone()];
    for k in 1..r {
        let l = k / 2;
        if k % 2 == 1 {
            // c_{2ℓ+1} = (m-1)d + a_{ℓ+1} + b_ℓ - n, then b_{ℓ+1}
            c.push(base.clone() + a[l + 1].clone() + b[l].clone());
            if k < r - 1 {
                b.push(step(&c[k], &b[l]));
            }
        } else {
            // c_{2ℓ} = (m-1)d + a_ℓ + b_ℓ - n, then a_{ℓ+1}
            c.push(base.clone() + a[l].clone() + b[l].clone());
            if k < r - 1 {
                a.push(step(&c[k], &a[l]));
            }
        }
    }
    Ok(RecursionTable { m, r, a, b, c })
}

/// `c_k - (m-2)c_{k-1} - (m-1)c_{k-2} - 4d + 2n` for `k = 2..` over the table.
pub fn lemma2_residual(table: &RecursionTable) -> Vec<LinearForm> {
    let m = table.m as i64;
    let shift = LinearForm::from_ints(4, -2);
    (2..table.c.len())
        .map(|k| {
            table.c[k].clone() - (m - 2) * &table.c[k - 1] - (m - 1) * &table.c[k - 2] - shift.clone()
        })
        .collect()
}

/// `Σ_{t<r} (m-1)^t` as a rational.
fn geometric(h: &BigRational, r: usize) -> BigRational {
    let step = h - BigRational::one();
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for _ in 0..r {
        sum += &term;
        term *= &step;
    }
    sum
}

/// Compares `m(m-2)c_{r-2} + (m-1)^2 c_{r-4} + 4dm - 2nm` with
/// `[mS + 1] d - S n`, `S = Σ_{t<r}(m-1)^t`.
pub fn lemma3_identity_check(m: usize, r: usize) -> Result<bool, BoundsError> {
    if r < 4 || m < 2 {
        return Err(BoundsError::BadParameter(format!("identity needs m >= 2 and r >= 4, got m={m} r={r}")));
    }
    closing_identity_check(m, r)
}

/// Same comparison for the closing form of any `r >= 2`.
pub fn closing_identity_check(m: usize, r: usize) -> Result<bool, BoundsError> {
    let table = recursion_table(m, r)?;
    let s = geometric(&int(m as i64), r);
    let expected = LinearForm::new(&s * int(m as i64) + BigRational::one(), -s);
    Ok(table.closing_form() == expected)
}

/// `m + 1 / Σ_{k<r} (m-1)^k`. For `m >= 2, r >= 2` the value is also
/// derived from the closing inequality of the recursion table and the two
/// must agree.
pub fn clique_lower_bound(m: usize, r: usize) -> Result<BigRational, BoundsError> {
    if m < 1 || r < 1 {
        return Err(BoundsError::BadParameter(format!("needs m >= 1 and r >= 1, got m={m} r={r}")));
    }
    let closed = int(m as i64) + geometric(&int(m as i64), r).recip();
    if m >= 2 && r >= 2 {
        let closing = recursion_table(m, r)?.closing_form();
        if !closing.coef_n.is_negative() {
            return Err(BoundsError::Inconsistent(format!("closing form {closing} has no n/d bound")));
        }
        let from_table = &closing.coef_d / -&closing.coef_n;
        if from_table != closed {
            return Err(BoundsError::Inconsistent(format!(
                "m={m} r={r}: table gives {}, closed form {}",
                format_rational(&from_table),
                format_rational(&closed)
            )));
        }
    }
    Ok(closed)
}

/// `h + 1 / Σ_{k<r} (h-1)^k`
pub fn lift_upper_bound(h: &BigRational, r: usize) -> Result<BigRational, BoundsError> {
    if r < 1 {
        return Err(BoundsError::BadParameter("r must be at least 1".into()));
    }
    if *h < BigRational::one() {
        return Err(BoundsError::BadParameter(format!("h must be at least 1, got {}", format_rational(h))));
    }
    let s = geometric(h, r);
    if s.is_zero() {
        return Err(BoundsError::Domain("geometric sum vanishes".into()));
    }
    Ok(h + s.recip())
}

/// `χ_f(M_r(G))` from `χ_f(G)`: the same expression as [`lift_upper_bound`].
pub fn tardif_chi(chi: &BigRational, r: usize) -> Result<BigRational, BoundsError> {
    lift_upper_bound(chi, r)
}

const THETA_PRECISION: usize = 192;

/// `θ̄(M_2(G))` from `θ = θ̄(G)`:
/// `(4/3) θ cos(acos(1 - 27/(4θ) + 27/(4θ²)) / 3) - θ/3 + 1`,
/// evaluated with a 192-bit mantissa and rounded to the nearest `f64`.
pub fn theta_mycielski2(theta: f64) -> Result<f64, BoundsError> {
    if !theta.is_finite() || theta <= 0.0 {
        return Err(BoundsError::Domain(format!("theta must be positive and finite, got {theta}")));
    }
    let p = THETA_PRECISION;
    let rm = RoundingMode::ToEven;
    let mut cc = Consts::new().map_err(|e| BoundsError::Domain(format!("{e:?}")))?;
    let num = |x: u64| BigFloat::from_u64(x, p);
    let t = BigFloat::from_f64(theta, p);
    let q = num(27).div(&num(4).mul(&t, p, rm), p, rm);
    let arg = num(1).sub(&q, p, rm).add(&q.div(&t, p, rm), p, rm);
    let minus_one = num(1).neg();
    if arg > num(1) || arg < minus_one {
        return Err(BoundsError::Domain(format!("acos argument leaves [-1, 1] at theta={theta}")));
    }
    let angle = arg.acos(p, rm, &mut cc).div(&num(3), p, rm);
    let value = num(4)
        .mul(&t, p, rm)
        .div(&num(3), p, rm)
        .mul(&angle.cos(p, rm, &mut cc), p, rm)
        .sub(&t.div(&num(3), p, rm), p, rm)
        .add(&num(1), p, rm);
    if value.is_nan() {
        return Err(BoundsError::Domain(format!("evaluation failed at theta={theta}")));
    }
    let text = value
        .format(Radix::Dec, rm, &mut cc)
        .map_err(|e| BoundsError::Domain(format!("{e:?}")))?;
    text.parse::<f64>()
        .map_err(|e| BoundsError::Domain(format!("cannot read back `{text}`: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditLine {
    pub entry: Entry,
    /// base vertex of `K_m`
    pub vertex: VertexLabel,
    pub bound: BigRational,
    pub measured: usize,
}

impl AuditLine {
    pub fn holds(&self) -> bool {
        self.bound <= int(self.measured as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub m: usize,
    pub r: usize,
    pub d: usize,
    pub n: usize,
    pub lines: Vec<AuditLine>,
    /// the closing form evaluated at `(d, n)`; must be `<= 0`
    pub closing: BigRational,
}

impl AuditReport {
    pub fn violations(&self) -> impl Iterator<Item = &AuditLine> {
        self.lines.iter().filter(|l| !l.holds())
    }

    pub fn closing_holds(&self) -> bool {
        !self.closing.is_positive()
    }

    pub fn ok(&self) -> bool {
        self.violations().next().is_none() && self.closing_holds()
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "audit m={} r={} n={} d={} checks={} violations={} closing={}",
            self.m,
            self.r,
            self.n,
            self.d,
            self.lines.len(),
            self.violations().count(),
            format_rational(&self.closing)
        )?;
        for l in &self.lines {
            writeln!(
                f,
                "{} at {}: bound={} measured={} {}",
                l.entry,
                l.vertex,
                format_rational(&l.bound),
                l.measured,
                if l.holds() { "ok" } else { "VIOLATED" }
            )?;
        }
        Ok(())
    }
}

/// Measures every table quantity at every base vertex of a representation of
/// `M_r(K_m)` and compares it with the table entry evaluated at
/// `(d, n) = (rep.local_dim(), rep.ambient())`.
pub fn audit_against_table<F: Field>(
    rep: &DualRepresentation<F>,
    table: &RecursionTable,
) -> Result<AuditReport, BoundsError> {
    let (m, r) = (table.m, table.r);
    let expected = generalized_mycielski(&named_graph(NamedGraph::Complete(m)).map_err(RepError::from)?, r)
        .map_err(RepError::from)?;
    let g = rep.graph();
    if g.order() != expected.order() {
        return Err(BoundsError::GraphMismatch(format!(
            "{} vertices, expected {}",
            g.order(),
            expected.order()
        )));
    }
    let map = expected
        .labels()
        .iter()
        .map(|l| {
            g.index_of(l)
                .ok_or_else(|| BoundsError::GraphMismatch(format!("missing vertex `{l}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    for u in 0..expected.order() {
        for v in u + 1..expected.order() {
            if expected.has_edge(u, v) != g.has_edge(map[u], map[v]) {
                return Err(BoundsError::GraphMismatch(format!(
                    "adjacency of `{}` and `{}` differs",
                    expected.label(u),
                    expected.label(v)
                )));
            }
        }
    }
    let (d, n) = (rep.local_dim(), rep.ambient());
    let mut lines = Vec::new();
    for (entry, form) in table.entries() {
        let bound = form.eval_usize(d, n);
        for i in 0..m {
            let groups: Vec<Vec<usize>> = entry.levels().iter().map(|&k| vec![map[k * m + i]]).collect();
            lines.push(AuditLine {
                entry,
                vertex: expected.label(i).clone(),
                bound: bound.clone(),
                measured: rep.intersection_dim_of(&groups)?,
            });
        }
    }
    Ok(AuditReport {
        m,
        r,
        d,
        n,
        lines,
        closing: table.closing_form().eval_usize(d, n),
    })
}
