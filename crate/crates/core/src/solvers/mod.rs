//! Exact and heuristic solvers over the unified model.
//!
//! Edit-side solvers (`oracle`, `bnb`, `bipartite`) minimize the cost of the
//! induced edit path. Matching-side solvers (`ipfp`, the matching oracle)
//! maximize the quadratic score over transformed similarities and report
//! `gamma - score` as the edit distance. Each call is single-threaded; the
//! batch helpers in [`crate::par`] run many calls at once.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::assignment::{Assignment, DEFAULT_ORACLE_LIMIT};
use crate::cost::{edit_path_cost, CostModel, CostTables};
use crate::edit::{induce_edit_path, EditPath};
use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::similarity::{build_similarity, SimilarityModel};

pub mod bipartite;
pub mod bnb;
pub mod ipfp;
pub mod lsap;
pub mod oracle;

pub use bipartite::solve_bipartite_ub;
pub use bnb::solve_bnb;
pub use ipfp::{ipfp_maximize, solve_ipfp, solve_ipfp_from, IpfpOutcome};
pub use lsap::solve_lsap;
pub use oracle::{gm_oracle_maximize, solve_gm_oracle, solve_oracle, solve_oracle_with};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Optimal,
    Heuristic,
    SizeLimit,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Heuristic => "heuristic",
            SolveStatus::SizeLimit => "size-limit",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SolveStats {
    /// Search nodes for tree search, assignments scanned for the oracles.
    pub nodes: u64,
    pub iterations: u64,
    pub wall_time_secs: f64,
    /// Relaxed objective after each fixed-point iteration (first entry is the
    /// starting point).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relaxed_scores: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub assignment: Assignment,
    pub edit_path: EditPath,
    pub ged_value: f64,
    pub gm_score: f64,
    pub gamma: f64,
    pub status: SolveStatus,
    pub stats: SolveStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub oracle_limit: usize,
    pub bnb_time_limit: Duration,
    pub ipfp_max_iters: usize,
    pub ipfp_tolerance: f64,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            oracle_limit: DEFAULT_ORACLE_LIMIT,
            bnb_time_limit: Duration::from_secs(60),
            ipfp_max_iters: 100,
            ipfp_tolerance: 1e-9,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.oracle_limit > 0
            && !self.bnb_time_limit.is_zero()
            && self.ipfp_max_iters > 0
            && self.ipfp_tolerance.is_finite()
            && self.ipfp_tolerance > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::Parse(format!("solver limits must be positive: {self:?}")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverKind {
    Oracle,
    Bnb,
    Bipartite,
    Ipfp,
}

impl SolverKind {
    pub const ALL: [SolverKind; 4] = [SolverKind::Oracle, SolverKind::Bnb, SolverKind::Bipartite, SolverKind::Ipfp];

    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Oracle => "oracle",
            SolverKind::Bnb => "bnb",
            SolverKind::Bipartite => "bipartite",
            SolverKind::Ipfp => "ipfp",
        }
    }

    pub fn solve(
        self,
        m: &CostModel,
        g1: &AttributedGraph,
        g2: &AttributedGraph,
        cfg: &SolverConfig,
    ) -> Result<SolveResult> {
        match self {
            SolverKind::Oracle => solve_oracle(m, g1, g2, cfg),
            SolverKind::Bnb => solve_bnb(m, g1, g2, cfg),
            SolverKind::Bipartite => solve_bipartite_ub(m, g1, g2, cfg),
            SolverKind::Ipfp => solve_ipfp(m, g1, g2, cfg),
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SolverKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownSolver {
                name: s.to_string(),
                valid: SolverKind::ALL.map(SolverKind::name).join(", "),
            })
    }
}

/// A graph pair with its cost tables and transformed similarities.
#[derive(Debug, Clone)]
pub struct Instance<'a> {
    pub g1: &'a AttributedGraph,
    pub g2: &'a AttributedGraph,
    pub model: CostModel,
    pub tables: CostTables<'a>,
    pub sim: SimilarityModel,
}

/// Which objective a solver optimized, and therefore how its reported edit
/// distance is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Route {
    /// `ged_value` is the induced edit-path cost.
    Edit,
    /// `ged_value` is `gamma - score`.
    Matching,
}

impl<'a> Instance<'a> {
    pub fn new(m: &CostModel, g1: &'a AttributedGraph, g2: &'a AttributedGraph) -> Result<Self> {
        m.validate()?;
        let sim = build_similarity(m, g1, g2)?;
        Ok(Instance {
            g1,
            g2,
            model: *m,
            tables: CostTables::new(m, g1, g2),
            sim,
        })
    }

    pub fn n1(&self) -> usize {
        self.g1.vertex_count()
    }

    pub fn n2(&self) -> usize {
        self.g2.vertex_count()
    }

    pub(crate) fn finish(
        &self,
        mapping: &[Option<usize>],
        status: SolveStatus,
        stats: SolveStats,
        route: Route,
    ) -> Result<SolveResult> {
        let assignment = Assignment::from_mapping(mapping);
        let mut edit_path = induce_edit_path(&assignment, self.g1, self.g2)?;
        edit_path_cost(&self.model, &mut edit_path, self.g1, self.g2)?;
        let gm_score = self.sim.score_mapping(mapping);
        let gamma = self.sim.gamma();
        let ged_value = match route {
            Route::Edit => self.tables.induced_cost(mapping),
            Route::Matching => gamma - gm_score,
        };
        Ok(SolveResult {
            assignment,
            edit_path,
            ged_value,
            gm_score,
            gamma,
            status,
            stats,
        })
    }
}
