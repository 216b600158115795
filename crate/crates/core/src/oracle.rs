//! Exhaustive existence search for dual `(n, d)`-representations over small
//! prime fields.
//!
//! Candidates are all `d`-subspaces of `GF(p)^n`, enumerated by pivot set in
//! reduced row-echelon form. Vertices are assigned in a fixed order and a
//! partial assignment is cut as soon as an assigned vertex meets the span of
//! its assigned neighbours. Branches of the first vertex run in parallel; the
//! reported witness is the first one in the sequential (lexicographic) order.

use std::fmt;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::graphs::Graph;
use crate::linalg::{is_prime, LinalgError, PrimeField, Subspace};
use crate::representation::{DualRepresentation, RepError};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;
pub const DEFAULT_CANDIDATE_CAP: usize = 100_000;
/// Largest ambient dimension the search handles.
pub const MAX_AMBIENT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("{count} candidate subspaces, above the cap of {cap}")]
    TooLarge { count: u128, cap: usize },
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub p: u32,
    pub n: usize,
    pub d: usize,
    pub budget: u64,
    pub candidate_cap: usize,
    /// Fix the first vertex to the first candidate. Sound for every graph.
    pub symmetry: bool,
}

impl SearchConfig {
    pub fn new(p: u32, n: usize, d: usize) -> Self {
        Self {
            p,
            n,
            d,
            budget: DEFAULT_NODE_BUDGET,
            candidate_cap: DEFAULT_CANDIDATE_CAP,
            symmetry: false,
        }
    }

    fn check(&self) -> Result<(), OracleError> {
        if !(2..256).contains(&self.p) || !is_prime(self.p) {
            return Err(OracleError::BadParameter(format!("p must be a prime below 256, got {}", self.p)));
        }
        if self.d == 0 || self.d > self.n {
            return Err(OracleError::BadParameter(format!(
                "need 1 <= d <= n, got n={} d={}",
                self.n, self.d
            )));
        }
        if self.n > MAX_AMBIENT {
            return Err(OracleError::BadParameter(format!("n above {MAX_AMBIENT}")));
        }
        Ok(())
    }
}

/// `[n choose d]_p`, the number of `d`-subspaces of `GF(p)^n`; `None` on overflow.
pub fn gaussian_binomial(p: u32, n: usize, d: usize) -> Option<u128> {
    if d > n {
        return Some(0);
    }
    let p = u128::from(p);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        num = num.checked_mul(p.checked_pow((n - i) as u32)? - 1)?;
        den = den.checked_mul(p.checked_pow((d - i) as u32)? - 1)?;
    }
    Some(num / den)
}

type Row = [u8; MAX_AMBIENT];

/// A candidate: `d` rows in reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Cand {
    rows: Vec<Row>,
}

fn enumerate_raw(p: u32, n: usize, d: usize) -> Vec<Cand> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(d);
    pivot_sets(n, d, 0, &mut pivots, &mut |piv| {
        // free slots: (row, col) with col > pivot of row and col not a pivot
        let free: Vec<(usize, usize)> = piv
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| (c + 1..n).filter(|j| !piv.contains(j)).map(move |j| (i, j)))
            .collect();
        let mut digits = vec![0u8; free.len()];
        loop {
            let mut rows = vec![[0u8; MAX_AMBIENT]; d];
            for (i, &c) in piv.iter().enumerate() {
                rows[i][c] = 1;
            }
            for (&(i, j), &x) in free.iter().zip(&digits) {
                rows[i][j] = x;
            }
            out.push(Cand { rows });
            // odometer, last slot fastest
            let mut k = free.len();
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                digits[k] += 1;
                if u32::from(digits[k]) < p {
                    break;
                }
                digits[k] = 0;
            }
        }
    });
    out
}

fn pivot_sets(n: usize, d: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == d {
        f(cur);
        return;
    }
    for c in start..=n - (d - cur.len()) {
        cur.push(c);
        pivot_sets(n, d, c + 1, cur, f);
        cur.pop();
    }
}

fn to_subspace(field: &PrimeField, n: usize, c: &Cand) -> Result<Subspace<PrimeField>, LinalgError> {
    Subspace::from_rows(
        field,
        n,
        c.rows.iter().map(|r| r[..n].iter().map(|&x| u32::from(x)).collect()).collect(),
    )
}

/// All `d`-dimensional subspaces of `GF(p)^n`, ordered by pivot set and then
/// by the free entries of the echelon form.
pub fn enumerate_subspaces(
    p: u32,
    n: usize,
    d: usize,
    cap: usize,
) -> Result<Vec<Subspace<PrimeField>>, OracleError> {
    let cfg = SearchConfig {
        candidate_cap: cap,
        ..SearchConfig::new(p, n, d)
    };
    cfg.check()?;
    let count = candidate_count(&cfg)?;
    let field = PrimeField::new(p)?;
    let out = enumerate_raw(p, n, d)
        .iter()
        .map(|c| to_subspace(&field, n, c))
        .collect::<Result<Vec<_>, _>>()?;
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

fn candidate_count(cfg: &SearchConfig) -> Result<u128, OracleError> {
    let count = gaussian_binomial(cfg.p, cfg.n, cfg.d).unwrap_or(u128::MAX);
    if count > cfg.candidate_cap as u128 {
        return Err(OracleError::TooLarge {
            count,
            cap: cfg.candidate_cap,
        });
    }
    Ok(count)
}

/// Incremental echelon basis over `GF(p)`, used to test independence.
struct Echelon<'a> {
    p: u16,
    n: usize,
    inv: &'a [u8; 256],
    /// row with leading 1 at column `c`, if any
    by_pivot: [Option<Row>; MAX_AMBIENT],
}

impl<'a> Echelon<'a> {
    fn new(p: u32, n: usize, inv: &'a [u8; 256]) -> Self {
        Self {
            p: p as u16,
            n,
            inv,
            by_pivot: [None; MAX_AMBIENT],
        }
    }

    /// Adds `v`; returns false if it was already in the span.
    fn insert(&mut self, mut v: Row) -> bool {
        let p = self.p;
        for c in 0..self.n {
            if v[c] == 0 {
                continue;
            }
            match &self.by_pivot[c] {
                Some(row) => {
                    let f = p - u16::from(v[c]);
                    for j in c..self.n {
                        v[j] = ((u16::from(v[j]) + f * u16::from(row[j])) % p) as u8;
                    }
                }
                None => {
                    let s = u16::from(self.inv[v[c] as usize]);
                    for x in v[c..self.n].iter_mut() {
                        *x = ((u16::from(*x) * s) % p) as u8;
                    }
                    self.by_pivot[c] = Some(v);
                    return true;
                }
            }
        }
        false
    }
}

struct Problem<'a> {
    graph: &'a Graph,
    p: u32,
    n: usize,
    inv: [u8; 256],
    cands: Vec<Cand>,
    order: Vec<usize>,
    /// for each position in `order`, the neighbours placed earlier
    earlier: Vec<Vec<usize>>,
    budget: u64,
}

/// Descending degree, then most neighbours already placed, then index.
fn vertex_order(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut links = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by(|&u, &v| {
                (links[u], g.degree(u))
                    .cmp(&(links[v], g.degree(v)))
                    .then(v.cmp(&u))
            })
            .expect("unplaced vertex");
        placed[v] = true;
        order.push(v);
        for w in g.neighbors(v) {
            links[w] += 1;
        }
    }
    order
}

impl Problem<'_> {
    /// Does the vertex at `pos` meet the span of its assigned neighbours?
    /// `assign[v]` is the candidate of `v` when assigned.
    fn vertex_ok(&self, v: usize, assign: &[Option<usize>]) -> bool {
        let mut e = Echelon::new(self.p, self.n, &self.inv);
        for w in self.graph.neighbors(v) {
            if let Some(c) = assign[w] {
                for row in &self.cands[c].rows {
                    e.insert(*row);
                }
            }
        }
        let own = assign[v].expect("assigned");
        self.cands[own].rows.iter().all(|row| e.insert(*row))
    }

    fn placement_ok(&self, pos: usize, assign: &[Option<usize>]) -> bool {
        let v = self.order[pos];
        self.vertex_ok(v, assign) && self.earlier[pos].iter().all(|&u| self.vertex_ok(u, assign))
    }
}

enum Branch {
    Found(Vec<usize>, u64),
    Exhausted(u64),
    Empty(u64),
    Abandoned,
}

struct Shared {
    spent: AtomicU64,
    best: AtomicUsize,
}

fn search_branch(prob: &Problem<'_>, first: usize, branch: usize, shared: &Shared) -> Branch {
    let nv = prob.order.len();
    let mut assign: Vec<Option<usize>> = vec![None; prob.graph.order()];
    assign[prob.order[0]] = Some(first);
    let flush = (prob.budget / 64).clamp(1, 4096);
    let mut nodes: u64 = 1;
    let mut pending: u64 = 1;
    if !prob.placement_ok(0, &assign) {
        return Branch::Empty(nodes);
    }
    // next[pos]: next candidate index to try at position pos
    let mut next = vec![0usize; nv];
    let mut pos = 1;
    while pos >= 1 {
        if pos == nv {
            let witness = prob.order.iter().map(|&v| assign[v].expect("complete")).collect();
            shared.spent.fetch_add(pending, Ordering::Relaxed);
            return Branch::Found(witness, nodes);
        }
        let v = prob.order[pos];
        if next[pos] == prob.cands.len() {
            assign[v] = None;
            next[pos] = 0;
            pos -= 1;
            continue;
        }
        let c = next[pos];
        next[pos] += 1;
        assign[v] = Some(c);
        nodes += 1;
        pending += 1;
        if pending >= flush {
            let total = shared.spent.fetch_add(pending, Ordering::Relaxed) + pending;
            pending = 0;
            if total > prob.budget {
                return Branch::Exhausted(nodes);
            }
            if shared.best.load(Ordering::Relaxed) < branch {
                return Branch::Abandoned;
            }
        }
        if prob.placement_ok(pos, &assign) {
            pos += 1;
        } else {
            assign[v] = None;
        }
    }
    shared.spent.fetch_add(pending, Ordering::Relaxed);
    Branch::Empty(nodes)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Found(DualRepresentation<PrimeField>),
    NotFound,
    BudgetExhausted,
}

impl Verdict {
    pub fn is_found(&self) -> bool {
        matches!(self, Verdict::Found(_))
    }

    pub fn witness(&self) -> Option<&DualRepresentation<PrimeField>> {
        match self {
            Verdict::Found(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    /// Search nodes of the branches up to the deciding one. With the budget
    /// exhausted, a witness may come from a branch other than the first.
    pub nodes: u64,
    pub candidates: usize,
}

impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.verdict {
            Verdict::Found(_) => "found",
            Verdict::NotFound => "none",
            Verdict::BudgetExhausted => "inconclusive (budget exhausted)",
        };
        write!(f, "result={v} candidates={} nodes={}", self.candidates, self.nodes)
    }
}

/// Decides whether `g` has a dual `(n, d)`-representation over `GF(p)`.
/// `NotFound` is only returned after the search space is exhausted.
pub fn exists_representation(g: &Graph, cfg: &SearchConfig) -> Result<SearchOutcome, OracleError> {
    cfg.check()?;
    candidate_count(cfg)?;
    let field = PrimeField::new(cfg.p)?;
    let cands = enumerate_raw(cfg.p, cfg.n, cfg.d);
    let ncand = cands.len();
    if g.order() == 0 {
        let rep = DualRepresentation::new(g.clone(), field, cfg.n, cfg.d, Vec::new())?;
        return Ok(SearchOutcome {
            verdict: Verdict::Found(rep),
            nodes: 0,
            candidates: ncand,
        });
    }
    let order = vertex_order(g);
    let mut rank = vec![0; g.order()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let earlier = order
        .iter()
        .enumerate()
        .map(|(i, &v)| g.neighbors(v).filter(|&w| rank[w] < i).collect())
        .collect();
    let mut inv = [0u8; 256];
    for a in 1..cfg.p {
        inv[a as usize] = (1..cfg.p).find(|b| a * b % cfg.p == 1).expect("prime field") as u8;
    }
    let prob = Problem {
        graph: g,
        p: cfg.p,
        n: cfg.n,
        inv,
        cands,
        order,
        earlier,
        budget: cfg.budget,
    };
    let firsts: Vec<usize> = if cfg.symmetry { vec![0] } else { (0..ncand).collect() };
    let shared = Shared {
        spent: AtomicU64::new(0),
        best: AtomicUsize::new(usize::MAX),
    };
    let results: Vec<Branch> = firsts
        .par_iter()
        .enumerate()
        .map(|(b, &c)| {
            if shared.best.load(Ordering::Relaxed) < b {
                return Branch::Abandoned;
            }
            let r = search_branch(&prob, c, b, &shared);
            if matches!(r, Branch::Found(..)) {
                shared.best.fetch_min(b, Ordering::Relaxed);
            }
            r
        })
        .collect();

    let mut nodes = 0;
    let mut exhausted = false;
    for r in results {
        match r {
            Branch::Found(w, k) => {
                nodes += k;
                let mut spaces = vec![None; g.order()];
                for (&v, &c) in prob.order.iter().zip(&w) {
                    spaces[v] = Some(to_subspace(&field, cfg.n, &prob.cands[c])?);
                }
                let spaces = spaces.into_iter().map(|s| s.expect("assigned")).collect();
                let rep = DualRepresentation::new(g.clone(), field, cfg.n, cfg.d, spaces)?;
                assert!(rep.verify()?.valid, "oracle witness failed verification");
                return Ok(SearchOutcome {
                    verdict: Verdict::Found(rep),
                    nodes,
                    candidates: ncand,
                });
            }
            Branch::Exhausted(k) => {
                nodes += k;
                exhausted = true;
            }
            Branch::Empty(k) => nodes += k,
            Branch::Abandoned => unreachable!("abandoned branch after the first witness"),
        }
    }
    Ok(SearchOutcome {
        verdict: if exhausted { Verdict::BudgetExhausted } else { Verdict::NotFound },
        nodes,
        candidates: ncand,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinAmbient {
    /// least `n` with a representation, and a witness
    Found(usize, DualRepresentation<PrimeField>),
    /// no representation with `n <= n_max`
    None,
    /// the search for this `n` ran out of budget
    BudgetExhausted(usize),
}

/// Least `n <= n_max` for which `g` has a dual `(n, d)`-representation over
/// `GF(p)`. `base` supplies the search limits; its `n` and
/// `d` are ignored.
pub fn min_ambient(g: &Graph, p: u32, d: usize, n_max: usize, base: &SearchConfig) -> Result<MinAmbient, OracleError> {
    for n in d..=n_max {
        let cfg = SearchConfig { p, n, d, ..base.clone() };
        match exists_representation(g, &cfg)?.verdict {
            Verdict::Found(w) => return Ok(MinAmbient::Found(n, w)),
            Verdict::NotFound => {}
            Verdict::BudgetExhausted => return Ok(MinAmbient::BudgetExhausted(n)),
        }
    }
    Ok(MinAmbient::None)
}
