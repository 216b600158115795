//! Exact dual subspace representations of graphs over GF(p) and the
//! rationals, with the generalized Mycielski lift and its clique bounds.

pub mod linalg;
pub mod graphs;
pub mod representation;
pub mod lift;
pub mod bounds;
pub mod oracle;
pub mod chif;
