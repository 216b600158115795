use super::{check_cells, Field, LinalgError, Matrix};

/// A subspace of `F^n`, stored as its strict reduced row-echelon basis.
///
/// Because the basis is canonical, two `Subspace` values are equal as sets
/// exactly when they compare equal with `==`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    /// Row space of `m`.
    pub fn span(m: &Matrix<F>) -> Self {
        let mut basis = m.clone();
        let pivots = basis.rref_in_place();
        basis.truncate_rows(pivots.len());
        Self { basis, pivots }
    }

    pub fn from_rows(field: &F, ambient: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self, LinalgError> {
        Ok(Self::span(&Matrix::from_rows(field, ambient, rows)?))
    }

    pub fn zero(field: &F, ambient: usize) -> Self {
        Self {
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Self {
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// The coordinate subspace `Γ[a, b] = span{e_a, ..., e_b}` of `F^m`, with
    /// 1-based inclusive indices.
    pub fn gamma(field: &F, m: usize, a: usize, b: usize) -> Result<Self, LinalgError> {
        if a < 1 || a > b || b > m {
            return Err(LinalgError::IndexOutOfRange { a, b, ambient: m });
        }
        Ok(Self::coordinate(field, m, (a - 1)..b))
    }

    /// Span of the standard basis vectors with the given 0-based indices.
    pub fn coordinate(field: &F, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        let mut basis = Matrix::zeros(field, idx.len(), ambient);
        for (r, &c) in idx.iter().enumerate() {
            basis.set(r, c, field.one());
        }
        Self { basis, pivots: idx }
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_compatible(&self, other: &Self) -> Result<(), LinalgError> {
        if self.field() != other.field() {
            return Err(LinalgError::FieldMismatch);
        }
        if self.ambient() != other.ambient() {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient(),
                right: other.ambient(),
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_compatible(other)?;
        Ok(Self::span(&self.basis.vstack(&other.basis)?))
    }

    /// Sum of any number of subspaces of `F^ambient` in a single elimination.
    pub fn sum_all<'a>(
        field: &F,
        ambient: usize,
        parts: impl IntoIterator<Item = &'a Self>,
    ) -> Result<Self, LinalgError>
    where
        F: 'a,
    {
        let mut stacked = Matrix::zeros(field, 0, ambient);
        for s in parts {
            if s.field() != field {
                return Err(LinalgError::FieldMismatch);
            }
            if s.ambient() != ambient {
                return Err(LinalgError::AmbientMismatch {
                    left: ambient,
                    right: s.ambient(),
                });
            }
            for row in s.basis.row_iter() {
                stacked.push_row(row);
            }
        }
        Ok(Self::span(&stacked))
    }

    /// Sum and intersection together, by Zassenhaus: eliminate
    /// `[[A, A], [B, 0]]`; rows with zero left half span `A ∩ B`.
    pub fn sum_and_intersection(&self, other: &Self) -> Result<(Self, Self), LinalgError> {
        self.check_compatible(other)?;
        let n = self.ambient();
        let field = self.field();
        let rows = self.dim() + other.dim();
        check_cells(rows.saturating_mul(2 * n))?;
        let mut m = Matrix::zeros(field, rows, 2 * n);
        for (r, row) in self.basis.row_iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if !field.is_zero(x) {
                    m.set(r, c, x.clone());
                    m.set(r, n + c, x.clone());
                }
            }
        }
        for (r, row) in other.basis.row_iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if !field.is_zero(x) {
                    m.set(self.dim() + r, c, x.clone());
                }
            }
        }
        let pivots = m.rref_in_place();
        let split = pivots.iter().take_while(|&&c| c < n).count();
        let left: Vec<usize> = (0..n).collect();
        let right: Vec<usize> = (n..2 * n).collect();
        let mut sum_rows = m.select_columns(&left);
        sum_rows.truncate_rows(split);
        let mut inter = m.select_columns(&right);
        // rows split..rank have zero left half and are already in RREF on the right
        let inter_rows: Vec<Vec<F::Elem>> = (split..pivots.len()).map(|r| inter.row(r).to_vec()).collect();
        inter = Matrix::from_rows(field, n, inter_rows)?;
        Ok((
            Self {
                basis: sum_rows,
                pivots: pivots[..split].to_vec(),
            },
            Self::span(&inter),
        ))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.is_zero() || other.is_zero() {
            self.check_compatible(other)?;
            return Ok(Self::zero(self.field(), self.ambient()));
        }
        Ok(self.sum_and_intersection(other)?.1)
    }

    /// `dim(A ∩ B)` via Grassmann, without materializing the intersection.
    pub fn intersection_dim(&self, other: &Self) -> Result<usize, LinalgError> {
        self.check_compatible(other)?;
        let sum = self.basis.vstack(&other.basis)?.rank();
        Ok(self.dim() + other.dim() - sum)
    }

    /// Tensor product: spanned by `u ⊗ w` over basis pairs, in `F^(n*m)`.
    pub fn tensor(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.field() != other.field() {
            return Err(LinalgError::FieldMismatch);
        }
        Ok(Self::span(&self.basis.kron_rows(&other.basis)?))
    }

    pub fn equal(&self, other: &Self) -> Result<bool, LinalgError> {
        self.check_compatible(other)?;
        Ok(self == other)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of `v` with respect to the canonical basis, if `v` lies in
    /// the subspace. With an RREF basis these are the entries of `v` at the
    /// pivot columns.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(v.len(), self.ambient(), "vector length");
        let field = self.field();
        let coords: Vec<F::Elem> = self.pivots.iter().map(|&c| v[c].clone()).collect();
        let mut residual = v.to_vec();
        for (row, c) in self.basis.row_iter().zip(&coords) {
            field.sub_scaled(&mut residual, c, row);
        }
        residual.iter().all(|x| field.is_zero(x)).then_some(coords)
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, LinalgError> {
        self.check_compatible(other)?;
        Ok(self.basis.row_iter().all(|r| other.contains(r)))
    }

    /// Re-expresses this subspace in coordinates relative to `frame`, which
    /// must contain it. The result lives in `F^(dim frame)`.
    pub fn in_coordinates_of(&self, frame: &Self) -> Result<Self, LinalgError> {
        self.check_compatible(frame)?;
        let mut rows = Vec::with_capacity(self.dim());
        for r in self.basis.row_iter() {
            rows.push(frame.coordinates(r).ok_or(LinalgError::NotContained)?);
        }
        Self::from_rows(self.field(), frame.dim(), rows)
    }

    /// Inverse of [`in_coordinates_of`](Self::in_coordinates_of).
    pub fn embed_into(&self, frame: &Self) -> Result<Self, LinalgError> {
        if self.ambient() != frame.dim() {
            return Err(LinalgError::AmbientMismatch {
                left: frame.dim(),
                right: self.ambient(),
            });
        }
        let field = self.field();
        let mut out = Matrix::zeros(field, 0, frame.ambient());
        for coords in self.basis.row_iter() {
            let mut v = vec![field.zero(); frame.ambient()];
            for (c, row) in coords.iter().zip(frame.basis.row_iter()) {
                if !field.is_zero(c) {
                    field.sub_scaled(&mut v, &field.neg(c), row);
                }
            }
            out.push_row(&v);
        }
        Ok(Self::span(&out))
    }
}
