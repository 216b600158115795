use num_integer::Integer;

use super::{DualRepresentation, RepError};
use crate::graphs::{join, named_graph, NamedGraph};
use crate::linalg::{Field, Matrix, Subspace};

/// `K_m` with `X_i = span(e_i)` in `F^m`: an `(m, 1)`-representation.
pub fn standard_complete_rep<F: Field>(m: usize, field: &F) -> Result<DualRepresentation<F>, RepError> {
    let graph = named_graph(NamedGraph::Complete(m))?;
    let spaces = (0..m).map(|i| Subspace::coordinate(field, m, [i])).collect();
    DualRepresentation::new(graph, field.clone(), m, 1, spaces)
}

/// Replaces every `X_v` by `X_v ⊗ F^t`, giving an `(nt, dt)`-representation
/// with the same ratio.
pub fn scale_d<F: Field>(rep: &DualRepresentation<F>, t: usize) -> Result<DualRepresentation<F>, RepError> {
    if t == 0 {
        return Err(RepError::BadParameter("scale factor t must be positive".into()));
    }
    if t == 1 {
        return Ok(rep.clone());
    }
    let full = Subspace::full(rep.field(), t);
    let spaces = rep
        .spaces()
        .iter()
        .map(|x| x.tensor(&full))
        .collect::<Result<Vec<_>, _>>()?;
    DualRepresentation::new(
        rep.graph().clone(),
        rep.field().clone(),
        rep.ambient() * t,
        rep.local_dim() * t,
        spaces,
    )
}

/// Pads a subspace of `F^n` into `F^total`, placing its coordinates at
/// `offset..offset + n`.
fn shift<F: Field>(x: &Subspace<F>, offset: usize, total: usize) -> Subspace<F> {
    let field = x.field();
    let mut m = Matrix::zeros(field, x.dim(), total);
    for (r, row) in x.basis().row_iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            if !field.is_zero(e) {
                m.set(r, offset + c, e.clone());
            }
        }
    }
    // shifting preserves reduced row-echelon form
    Subspace::span(&m)
}

/// Representation of the join `G_a + G_b`. Both sides are first scaled to the
/// common local dimension `lcm(d_a, d_b)`, then placed on disjoint coordinate
/// blocks, so the value is `value(a) + value(b)`.
pub fn join_reps<F: Field>(
    a: &DualRepresentation<F>,
    b: &DualRepresentation<F>,
) -> Result<DualRepresentation<F>, RepError> {
    if a.field() != b.field() {
        return Err(RepError::FieldMismatch);
    }
    let d = a.local_dim().lcm(&b.local_dim());
    let a = scale_d(a, d / a.local_dim())?;
    let b = scale_d(b, d / b.local_dim())?;
    let total = a.ambient() + b.ambient();
    let spaces = a
        .spaces()
        .iter()
        .map(|x| shift(x, 0, total))
        .chain(b.spaces().iter().map(|x| shift(x, a.ambient(), total)))
        .collect();
    DualRepresentation::new(join(a.graph(), b.graph()), a.field().clone(), total, d, spaces)
}

/// Restricts the representation to the span `S` of all its subspaces,
/// expressed in coordinates of the canonical basis of `S`. The new ambient
/// dimension is `dim S`; intersections and sums keep their dimensions.
pub fn compress<F: Field>(rep: &DualRepresentation<F>) -> Result<DualRepresentation<F>, RepError> {
    let frame = rep.total_span()?;
    if frame.dim() == rep.ambient() {
        return Ok(rep.clone());
    }
    let spaces = rep
        .spaces()
        .iter()
        .map(|x| x.in_coordinates_of(&frame))
        .collect::<Result<Vec<_>, _>>()?;
    DualRepresentation::new(
        rep.graph().clone(),
        rep.field().clone(),
        frame.dim(),
        rep.local_dim(),
        spaces,
    )
}
