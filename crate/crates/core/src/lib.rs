//! Interpolation projectors on `[-1, 1]` seen through the simplex spanned by
//! the nodes on the moment curve `x ↦ (x, x², …, x^k)`.
//!
//! For a node set of degree `k` the crate computes the projector norm
//! (Lebesgue constant), the absorption coefficient of the moment curve by the
//! node simplex, 1-point certificates for the upper bound relating the two,
//! and searches for node sets minimizing either quantity.

pub mod analysis;
pub mod basis;
pub mod error;
pub mod nodes;
pub mod optimize;
pub mod poly;
pub mod scalar;

pub use analysis::{
    absorption_coefficient, analyze, find_one_point, inequality_report, lebesgue_piece_maxima,
    negative_lobe_depths, norm_via_barycentric, projector_norm, quadratic_closed_form,
    AnalysisReport, InequalityReport, NormResult, OnePointCertificate, XiResult,
};
pub use basis::{vandermonde_det, LagrangeBasis};
pub use error::{Error, Result};
pub use nodes::{chebyshev_nodes, regular_nodes, NodeSet};
pub use optimize::{
    minimize, objective_value, reproduce_row, reproduce_table, reproduce_table_with, Objective,
    OptimizationResult, OptimizerConfig, TableArtifact, TableKind, TableOptions, TableRow,
};
pub use poly::{
    bracketed_root, critical_points, max_on_interval, roots_in_interval, IntervalMaximizer,
    Polynomial, RootFinder, RootList,
};
pub use scalar::{Precision, Scalar};
