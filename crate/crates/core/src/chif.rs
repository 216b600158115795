//! Exact fractional chromatic number of small graphs.
//!
//! `χ_f(G) = min Σ_I x_I` over maximal independent sets `I`, subject to
//! `Σ_{I ∋ v} x_I >= 1` and `x >= 0`. The dual packing problem
//! `max Σ_v y_v`, `Σ_{v ∈ I} y_v <= 1`, `y >= 0` has the slack basis as a
//! feasible start and is solved by a rational simplex with Bland's rule; the
//! covering weights are read off the final reduced costs of the slacks.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graphs::Graph;
use crate::linalg::format_rational;

pub const DEFAULT_CHIF_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChifError {
    #[error("graph has {vertices} vertices, above the cap of {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("column {0} is not an independent set of the graph")]
    BadColumn(usize),
    #[error("vertex {0} is covered by no column")]
    Uncovered(usize),
    #[error("solver certificate check failed: {0}")]
    Certificate(String),
}

/// All maximal independent sets, each sorted, in lexicographic order.
pub fn maximal_independent_sets(g: &Graph) -> Result<Vec<Vec<usize>>, ChifError> {
    maximal_independent_sets_with_cap(g, DEFAULT_CHIF_CAP)
}

pub fn maximal_independent_sets_with_cap(g: &Graph, cap: usize) -> Result<Vec<Vec<usize>>, ChifError> {
    let n = g.order();
    if n > cap.min(64) {
        return Err(ChifError::TooLarge { vertices: n, cap: cap.min(64) });
    }
    let all: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // non-neighbours in G are neighbours in the complement
    let free: Vec<u64> = (0..n)
        .map(|v| {
            let nb = g.neighbors(v).fold(0u64, |m, w| m | 1 << w);
            all & !nb & !(1u64 << v)
        })
        .collect();
    let mut out = Vec::new();
    bron_kerbosch(&free, 0, all, 0, &mut out);
    let mut sets: Vec<Vec<usize>> = out
        .into_iter()
        .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect();
    sets.sort();
    Ok(sets)
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 && x == 0 {
        if r != 0 || adj.is_empty() {
            out.push(r);
        }
        return;
    }
    let pivot = {
        let px = p | x;
        (0..adj.len())
            .filter(|&u| px >> u & 1 == 1)
            .max_by_key(|&u| (p & adj[u]).count_ones())
            .expect("p or x nonempty")
    };
    let mut cand = p & !adj[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out);
        p &= !(1u64 << v);
        x |= 1u64 << v;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalColoring {
    pub value: BigRational,
    /// covering weights `x_I > 0` on independent sets
    pub weights: Vec<(Vec<usize>, BigRational)>,
    /// optimal packing weights `y_v`, the dual certificate
    pub packing: Vec<BigRational>,
    pub pivots: usize,
}

impl fmt::Display for FractionalColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi_f={}", format_rational(&self.value))
    }
}

pub fn fractional_chromatic(g: &Graph) -> Result<FractionalColoring, ChifError> {
    let columns = maximal_independent_sets(g)?;
    solve_covering_lp(g, &columns)
}

/// Solves the covering LP over the given independent-set columns. The
/// optimum is checked by primal and dual feasibility with equal objectives.
pub fn solve_covering_lp(g: &Graph, columns: &[Vec<usize>]) -> Result<FractionalColoring, ChifError> {
    let n = g.order();
    for (i, c) in columns.iter().enumerate() {
        if c.iter().any(|&v| v >= n) || !g.is_independent(c) {
            return Err(ChifError::BadColumn(i));
        }
    }
    if let Some(v) = (0..n).find(|&v| !columns.iter().any(|c| c.contains(&v))) {
        return Err(ChifError::Uncovered(v));
    }
    let k = columns.len();
    let zero = BigRational::zero;
    let one = BigRational::one;

    // tableau rows: one per column I, variables y_0..y_{n-1} then slacks s_0..s_{k-1}
    let width = n + k;
    let mut t: Vec<Vec<BigRational>> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut row = vec![zero(); width + 1];
            for &v in c {
                row[v] = one();
            }
            row[n + i] = one();
            row[width] = one();
            row
        })
        .collect();
    // objective row holds z_j - c_j; maximizing Σ y
    let mut obj = vec![zero(); width + 1];
    for x in obj.iter_mut().take(n) {
        *x = -one();
    }
    let mut basis: Vec<usize> = (n..width).collect();
    let mut pivots = 0;
    while let Some(enter) = (0..width).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<usize> = None;
        for i in 0..k {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width] / &t[i][enter];
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let best = &t[l][width] / &t[l][enter];
                    if ratio < best || (ratio == best && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        let l = leave.ok_or_else(|| ChifError::Certificate("packing LP unbounded".into()))?;
        let piv = t[l][enter].clone();
        for x in t[l].iter_mut() {
            *x /= &piv;
        }
        let prow = t[l].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != l && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
            }
        }
        let f = obj[enter].clone();
        for (x, p) in obj.iter_mut().zip(&prow) {
            *x -= &f * p;
        }
        basis[l] = enter;
        pivots += 1;
    }

    let value = obj[width].clone();
    let mut packing = vec![zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            packing[b] = t[i][width].clone();
        }
    }
    let cover: Vec<BigRational> = (0..k).map(|i| obj[n + i].clone()).collect();

    // certificate: both feasible, equal objectives
    let packing_sum: BigRational = packing.iter().sum();
    let cover_sum: BigRational = cover.iter().sum();
    if packing_sum != value || cover_sum != value {
        return Err(ChifError::Certificate("objective values differ".into()));
    }
    if packing.iter().any(|y| y.is_negative()) || cover.iter().any(|x| x.is_negative()) {
        return Err(ChifError::Certificate("negative weight".into()));
    }
    for c in columns {
        if c.iter().map(|&v| &packing[v]).sum::<BigRational>() > one() {
            return Err(ChifError::Certificate("packing exceeds 1 on a column".into()));
        }
    }
    for v in 0..n {
        let covered: BigRational = columns.iter().zip(&cover).filter(|(c, _)| c.contains(&v)).map(|(_, x)| x).sum();
        if covered < one() {
            return Err(ChifError::Certificate(format!("vertex {v} under-covered")));
        }
    }
    let weights = columns
        .iter()
        .zip(cover)
        .filter(|(_, x)| x.is_positive())
        .map(|(c, x)| (c.clone(), x))
        .collect();
    Ok(FractionalColoring {
        value,
        weights,
        packing,
        pivots,
    })
}
