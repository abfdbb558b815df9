//! Graph edit distance and graph matching through a single quadratic model.
//!
//! Edit costs are turned into matching similarities
//! `s'(a -> b) = -(c(a -> b) - c(a -> eps) - c(eps -> b))`. For every vertex
//! assignment the matching score then equals `gamma` minus the cost of the
//! induced edit path, where `gamma` is the cost of deleting all of G1 and
//! inserting all of G2. Any matching solver therefore solves the edit
//! distance problem, and the crate ships both kinds:
//!
//! * exact: exhaustive [`solvers::solve_oracle`], [`solvers::solve_bnb`];
//! * heuristic: [`solvers::solve_bipartite_ub`], [`solvers::solve_ipfp`].
//!
//! [`formulations`] materializes the linear F2 program (with LP export) and
//! the quadratic matching model; [`experiment`] runs the pairwise
//! exact-versus-matching comparison.

pub mod assignment;
pub mod cost;
pub mod edit;
pub mod error;
pub mod experiment;
pub mod formulations;
pub mod generate;
pub mod graph;
pub mod par;
pub mod similarity;
pub mod solvers;

pub use assignment::{check_assignment, enumerate_assignments, Assignment};
pub use cost::{compute_gamma, edit_path_cost, operation_cost, CostModel, CostTables, SubstitutionCost};
pub use edit::{induce_edit_path, EditOperation, EditPath, OperationKind};
pub use error::{Error, Result, ValidationError};
pub use graph::{parse_graph, AttributedGraph, Edge, Vertex};
pub use similarity::{build_similarity, ged_value_from_score, gm_score, Orientation, SimilarityModel};
pub use solvers::{SolveResult, SolveStatus, SolverConfig, SolverKind};
