//! Exact linear algebra: ranks, integer echelon forms, rational simplex.

pub mod echelon;
pub mod rank;
pub mod simplex;

pub use echelon::ColumnEchelon;
pub use rank::{dense_rank, sparse_rank, SparseRow};
pub use simplex::{feasible, maximize, LpOutcome, Rational};
