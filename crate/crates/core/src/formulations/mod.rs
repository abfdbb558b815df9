//! Mathematical programs over the unified model: the linear F2 program and the
//! quadratic matching model.

pub mod f2;
pub mod gmm;
pub mod lp;

pub use f2::{
    build_f2, check_f2_feasible, reconstruct_full_solution, ConstraintFamily, FullSolution, IlpModelF2,
    LinearConstraint, ModelCounts, Var, ZVar,
};
pub use gmm::{build_gmm_prime, QuadraticModelGmm};
pub use lp::export_lp;
