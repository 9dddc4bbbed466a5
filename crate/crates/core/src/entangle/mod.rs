//! Covariance entanglement of bipartite states: local operators, the
//! local-unitary manifold, the maximizer, Kraus channels and parameter
//! sweeps.

pub mod channel;
pub mod measure;
pub mod operators;
pub mod optimizer;
pub mod sweep;
pub mod unitary;

pub use channel::{apply_channel, lgm_channel, separable_mixture_altcov_audit, KrausChannel, ProjectorTerm};
pub use measure::{
    covariance_entanglement, max_cov_over_pure_states, max_cov_unequal_dims, min_local_variance, LocalPairEvaluator,
    Measure, OptimizationRecord, OptimizationResult,
};
pub use operators::{equal_weight_operator, pair_discrimination_operator, LocalOperator, OperatorFamily};
pub use optimizer::OptimizerConfig;
pub use sweep::{bell_mixture_scan, bell_rotation_scan, pure_family_scan, ScanTable};
pub use unitary::LocalUnitary;
