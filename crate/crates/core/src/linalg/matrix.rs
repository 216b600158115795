use std::fmt::Write as _;

use super::{check_cells, Field, FieldSpec, LinalgError};

/// Dense row-major matrix over an exact field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            data: vec![field.zero(); rows * cols],
            field: field.clone(),
            rows,
            cols,
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from explicit rows; every row must have `cols` entries.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self, LinalgError> {
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::Shape {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            field: field.clone(),
            rows: n_rows,
            cols,
            data,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64_rows(field: &F, cols: usize, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, rows)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[F::Elem]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn push_row(&mut self, row: &[F::Elem]) {
        assert_eq!(row.len(), self.cols, "row length");
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::Shape {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut out = self.clone();
        out.data.extend_from_slice(&other.data);
        out.rows += other.rows;
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * c);
        head[lo * c..(lo + 1) * c].swap_with_slice(&mut tail[..c]);
    }

    /// `row[target] -= factor * row[source]`
    fn eliminate(&mut self, target: usize, source: usize, factor: &F::Elem) {
        let c = self.cols;
        if target < source {
            let (head, tail) = self.data.split_at_mut(source * c);
            self.field
                .sub_scaled(&mut head[target * c..(target + 1) * c], factor, &tail[..c]);
        } else {
            let (head, tail) = self.data.split_at_mut(target * c);
            self.field
                .sub_scaled(&mut tail[..c], factor, &head[source * c..(source + 1) * c]);
        }
    }

    /// Gauss-Jordan elimination in place. Afterwards the first `rank` rows are
    /// the strict RREF of the row space and the rest are zero. Returns the pivot
    /// columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(found) =
                (rank..self.rows).find(|&r| !self.field.is_zero(&self.data[r * self.cols + col]))
            else {
                continue;
            };
            self.swap_rows(rank, found);
            let inv = self
                .field
                .inv(&self.data[rank * self.cols + col])
                .expect("pivot is nonzero");
            let field = self.field.clone();
            field.scale(&mut self.data[rank * self.cols..(rank + 1) * self.cols], &inv);
            for r in 0..self.rows {
                if r == rank {
                    continue;
                }
                let factor = self.data[r * self.cols + col].clone();
                if !field.is_zero(&factor) {
                    self.eliminate(r, rank, &factor);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        pivots
    }

    /// Returns the reduced row-echelon form with zero rows dropped, and the rank.
    pub fn rref(&self) -> (Self, usize) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        m.truncate_rows(pivots.len());
        let rank = pivots.len();
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    pub(crate) fn truncate_rows(&mut self, rows: usize) {
        self.data.truncate(rows * self.cols);
        self.rows = rows;
    }

    /// Keeps only the listed columns, in the listed order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            let row = self.row(r);
            data.extend(cols.iter().map(|&c| row[c].clone()));
        }
        Self {
            field: self.field.clone(),
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    /// Row-wise Kronecker product: every pair of rows (a, b) gives `a ⊗ b` with
    /// the convention `a ⊗ b = (b_1 a, ..., b_m a)`.
    pub fn kron_rows(&self, other: &Self) -> Result<Self, LinalgError> {
        let cols = self
            .cols
            .checked_mul(other.cols)
            .ok_or(LinalgError::TooLarge { cells: usize::MAX })?;
        let rows = self.rows * other.rows;
        check_cells(rows.saturating_mul(cols))?;
        let mut out = Self::zeros(&self.field, rows, cols);
        for (i, a) in self.row_iter().enumerate() {
            for (j, b) in other.row_iter().enumerate() {
                let r = i * other.rows + j;
                let dst = &mut out.data[r * cols..(r + 1) * cols];
                kron_into(&self.field, a, b, dst);
            }
        }
        Ok(out)
    }

    /// Serializes in the fixture format: `field p|Q`, `rows cols`, then rows.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "field {}", self.field.spec()).unwrap();
        writeln!(s, "{} {}", self.rows, self.cols).unwrap();
        for row in self.row_iter() {
            let line: Vec<String> = row.iter().map(|x| self.field.format_elem(x)).collect();
            writeln!(s, "{}", line.join(" ")).unwrap();
        }
        s
    }

    /// Parses the fixture format; the header's field must match `field`.
    pub fn from_text(field: &F, text: &str) -> Result<Self, LinalgError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let spec = read_field_header(lines.next())?;
        if spec != field.spec() {
            return Err(LinalgError::FieldMismatch);
        }
        let dims = lines
            .next()
            .ok_or_else(|| LinalgError::Parse("missing `rows cols` line".into()))?;
        let dims: Vec<usize> = dims
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| LinalgError::Parse(format!("bad dimension `{t}`"))))
            .collect::<Result<_, _>>()?;
        let [rows, cols] = dims[..] else {
            return Err(LinalgError::Parse("expected `rows cols`".into()));
        };
        check_cells(rows.saturating_mul(cols))?;
        let mut out = Vec::with_capacity(rows);
        for _ in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| LinalgError::Parse("too few matrix rows".into()))?;
            let row = line
                .split_whitespace()
                .map(|t| field.parse_elem(t))
                .collect::<Result<Vec<_>, _>>()?;
            out.push(row);
        }
        if lines.next().is_some() {
            return Err(LinalgError::Parse("trailing data after matrix".into()));
        }
        Self::from_rows(field, cols, out)
    }
}

pub(crate) fn kron_into<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem], dst: &mut [F::Elem]) {
    let n = a.len();
    for (j, bj) in b.iter().enumerate() {
        if field.is_zero(bj) {
            continue;
        }
        for (i, ai) in a.iter().enumerate() {
            if !field.is_zero(ai) {
                dst[j * n + i] = field.mul(ai, bj);
            }
        }
    }
}

/// Reads a `field p` / `field Q` header line.
pub fn read_field_header(line: Option<&str>) -> Result<FieldSpec, LinalgError> {
    let line = line.ok_or_else(|| LinalgError::Parse("missing `field` line".into()))?;
    match line.split_whitespace().collect::<Vec<_>>()[..] {
        ["field", f] => f.parse(),
        _ => Err(LinalgError::Parse(format!("expected `field p|Q`, got `{line}`"))),
    }
}
