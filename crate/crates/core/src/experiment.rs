//! Pairwise equivalence experiment: exact edit distance against
//! `gamma - max score` of the quadratic matching model, with the heuristic
//! solvers logged alongside for the upper-bound check.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use crate::cost::CostModel;
use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::par::{self, Execution};
use crate::solvers::{solve_bipartite_ub, solve_bnb, solve_gm_oracle, solve_ipfp, SolveStatus, SolverConfig};

/// Heuristic values may undercut the exact optimum by at most this much
/// (floating-point noise between the two objective routes).
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub pair_id: usize,
    pub g1: String,
    pub g2: String,
    pub n1: usize,
    pub n2: usize,
    pub gamma: f64,
    /// Status of the exact branch-and-bound run; the row is excluded unless
    /// this is optimal and `gm_derived` is present.
    pub exact_status: SolveStatus,
    pub exact_ged: f64,
    /// `gamma - max score`; `None` when the instance exceeds the oracle limit.
    pub gm_derived: Option<f64>,
    pub bipartite: f64,
    pub ipfp: f64,
    pub ipfp_monotone: bool,
    pub exact_secs: f64,
    pub gm_secs: f64,
    pub bipartite_secs: f64,
    pub ipfp_secs: f64,
}

impl ExperimentRow {
    pub fn included(&self) -> bool {
        self.exact_status == SolveStatus::Optimal && self.gm_derived.is_some()
    }

    /// `exact - gm_derived`.
    pub fn difference(&self) -> Option<f64> {
        self.gm_derived.map(|d| self.exact_ged - d)
    }

    /// Heuristic values at or above the exact optimum (only meaningful for
    /// included rows).
    pub fn sandwich_ok(&self) -> bool {
        !self.included() || (self.bipartite >= self.exact_ged - TOLERANCE && self.ipfp >= self.exact_ged - TOLERANCE)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aggregate {
    pub rows: usize,
    pub included: usize,
    pub mean_abs_difference: f64,
    pub max_abs_difference: f64,
    pub sandwich_violations: usize,
    pub ipfp_non_monotone: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentReport {
    /// Reproducibility metadata (generator parameters, cost model, limits).
    pub header: BTreeMap<String, String>,
    pub rows: Vec<ExperimentRow>,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64())
}

fn run_pair(
    pair_id: usize,
    (name1, g1): &(String, AttributedGraph),
    (name2, g2): &(String, AttributedGraph),
    m: &CostModel,
    cfg: &SolverConfig,
) -> Result<ExperimentRow> {
    let (exact, exact_secs) = timed(|| solve_bnb(m, g1, g2, cfg));
    let exact = exact?;
    let (gm, gm_secs) = timed(|| solve_gm_oracle(m, g1, g2, cfg));
    let gm_derived = match gm {
        Ok(r) => Some(r.ged_value),
        Err(Error::SizeLimit { .. }) => None,
        Err(e) => return Err(e),
    };
    let (bip, bipartite_secs) = timed(|| solve_bipartite_ub(m, g1, g2, cfg));
    let (ipfp, ipfp_secs) = timed(|| solve_ipfp(m, g1, g2, cfg));
    let ipfp = ipfp?;
    Ok(ExperimentRow {
        pair_id,
        g1: name1.clone(),
        g2: name2.clone(),
        n1: g1.vertex_count(),
        n2: g2.vertex_count(),
        gamma: exact.gamma,
        exact_status: exact.status,
        exact_ged: exact.ged_value,
        gm_derived,
        bipartite: bip?.ged_value,
        ipfp: ipfp.ged_value,
        ipfp_monotone: ipfp.stats.relaxed_scores.windows(2).all(|w| w[1] >= w[0]),
        exact_secs,
        gm_secs,
        bipartite_secs,
        ipfp_secs,
    })
}

/// Run every ordered pair (self-pairs included) of `graphs`. Rows are ordered
/// by pair id `i * len + j` whatever the execution mode.
pub fn run_equivalence(
    graphs: &[(String, AttributedGraph)],
    m: &CostModel,
    cfg: &SolverConfig,
    exec: Execution,
) -> Result<ExperimentReport> {
    if graphs.is_empty() {
        return Err(Error::EmptyDataset);
    }
    m.validate()?;
    let n = graphs.len();
    let rows = par::map_range(n * n, exec, |id| run_pair(id, &graphs[id / n], &graphs[id % n], m, cfg))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    if rows.iter().all(|r| !r.included()) {
        return Err(Error::AllPairsExcluded);
    }
    let mut header = BTreeMap::new();
    header.insert("cost".to_string(), serde_json::to_string(m).expect("cost model serializes"));
    header.insert("oracle_limit".to_string(), cfg.oracle_limit.to_string());
    header.insert("bnb_time_limit_secs".to_string(), cfg.bnb_time_limit.as_secs_f64().to_string());
    header.insert("ipfp_max_iters".to_string(), cfg.ipfp_max_iters.to_string());
    header.insert("ipfp_tolerance".to_string(), cfg.ipfp_tolerance.to_string());
    header.insert("graphs".to_string(), n.to_string());
    Ok(ExperimentReport { header, rows })
}

/// All `*.json` graph files in a directory, sorted by file name.
pub fn load_dataset(dir: impl AsRef<Path>) -> Result<Vec<(String, AttributedGraph)>> {
    let dir = dir.as_ref();
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            AttributedGraph::read(&p).map(|g| (name, g))
        })
        .collect()
}

const COLUMNS: [&str; 17] = [
    "pair_id",
    "g1",
    "g2",
    "n1",
    "n2",
    "gamma",
    "exact_status",
    "exact_ged",
    "gm_derived_ged",
    "difference",
    "bipartite_ged",
    "ipfp_ged",
    "ipfp_monotone",
    "exact_secs",
    "gm_secs",
    "bipartite_secs",
    "ipfp_secs",
];

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn parse_status(s: &str) -> Result<SolveStatus> {
    match s {
        "optimal" => Ok(SolveStatus::Optimal),
        "heuristic" => Ok(SolveStatus::Heuristic),
        "size-limit" => Ok(SolveStatus::SizeLimit),
        other => Err(Error::Parse(format!("unknown status `{other}`"))),
    }
}

impl ExperimentReport {
    pub fn aggregate(&self) -> Aggregate {
        let diffs: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| r.included())
            .filter_map(|r| r.difference().map(f64::abs))
            .collect();
        let included = diffs.len();
        Aggregate {
            rows: self.rows.len(),
            included,
            mean_abs_difference: if included == 0 { 0.0 } else { diffs.iter().sum::<f64>() / included as f64 },
            max_abs_difference: diffs.iter().copied().fold(0.0, f64::max),
            sandwich_violations: self.rows.iter().filter(|r| !r.sandwich_ok()).count(),
            ipfp_non_monotone: self.rows.iter().filter(|r| !r.ipfp_monotone).count(),
        }
    }

    /// Columnar text: `# key: value` header lines, then CSV. Numbers use the
    /// shortest representation that parses back to the same `f64`. The
    /// difference column is recomputed from the exact and derived values.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.header {
            let _ = writeln!(out, "# {k}: {v}");
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(COLUMNS).expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.pair_id.to_string(),
                r.g1.clone(),
                r.g2.clone(),
                r.n1.to_string(),
                r.n2.to_string(),
                r.gamma.to_string(),
                r.exact_status.to_string(),
                r.exact_ged.to_string(),
                opt(r.gm_derived),
                opt(r.difference()),
                r.bipartite.to_string(),
                r.ipfp.to_string(),
                r.ipfp_monotone.to_string(),
                r.exact_secs.to_string(),
                r.gm_secs.to_string(),
                r.bipartite_secs.to_string(),
                r.ipfp_secs.to_string(),
            ])
            .expect("in-memory write");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv"));
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut header = BTreeMap::new();
        for line in text.lines().take_while(|l| l.starts_with('#')) {
            if let Some((k, v)) = line[1..].trim_start().split_once(": ") {
                header.insert(k.to_string(), v.to_string());
            }
        }
        let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
        let perr = |e: &dyn std::fmt::Display| Error::Parse(e.to_string());
        let columns = reader.headers().map_err(|e| perr(&e))?.clone();
        if columns.iter().ne(COLUMNS) {
            return Err(Error::Parse(format!("unexpected report columns: {columns:?}")));
        }
        let mut rows = Vec::new();
        for record in reader.records() {
            let rec = record.map_err(|e| perr(&e))?;
            let f = |i: usize| -> Result<f64> { rec[i].parse::<f64>().map_err(|e| perr(&e)) };
            let u = |i: usize| -> Result<usize> { rec[i].parse::<usize>().map_err(|e| perr(&e)) };
            rows.push(ExperimentRow {
                pair_id: u(0)?,
                g1: rec[1].to_string(),
                g2: rec[2].to_string(),
                n1: u(3)?,
                n2: u(4)?,
                gamma: f(5)?,
                exact_status: parse_status(&rec[6])?,
                exact_ged: f(7)?,
                gm_derived: if rec[8].is_empty() { None } else { Some(f(8)?) },
                bipartite: f(10)?,
                ipfp: f(11)?,
                ipfp_monotone: rec[12].parse::<bool>().map_err(|e| perr(&e))?,
                exact_secs: f(13)?,
                gm_secs: f(14)?,
                bipartite_secs: f(15)?,
                ipfp_secs: f(16)?,
            });
        }
        Ok(ExperimentReport { header, rows })
    }

    /// Human-readable table with a summary footer.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>5}  {:<10} {:<10} {:>3} {:>3}  {:>10}  {:>12}  {:>12}  {:>10}  {:>12}  {:>12}  {:<10}",
            "pair", "g1", "g2", "n1", "n2", "gamma", "exact", "gamma-S''", "diff", "bipartite", "ipfp", "status"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>5}  {:<10} {:<10} {:>3} {:>3}  {:>10.4}  {:>12.6}  {:>12}  {:>10}  {:>12.6}  {:>12.6}  {:<10}",
                r.pair_id,
                r.g1,
                r.g2,
                r.n1,
                r.n2,
                r.gamma,
                r.exact_ged,
                r.gm_derived.map_or("-".to_string(), |v| format!("{v:.6}")),
                r.difference().map_or("-".to_string(), |v| format!("{v:.2e}")),
                r.bipartite,
                r.ipfp,
                if r.included() { r.exact_status.to_string() } else { "excluded".to_string() },
            );
        }
        let a = self.aggregate();
        let _ = writeln!(out, "pairs: {} (included {})", a.rows, a.included);
        let _ = writeln!(out, "mean |exact - (gamma - max S'')|: {:e}", a.mean_abs_difference);
        let _ = writeln!(out, "max  |exact - (gamma - max S'')|: {:e}", a.max_abs_difference);
        let _ = writeln!(out, "heuristic below exact: {}", a.sandwich_violations);
        let _ = writeln!(out, "ipfp non-monotone runs: {}", a.ipfp_non_monotone);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GeneratorSpec};

    #[test]
    fn single_self_pair() {
        let graphs = generate(&GeneratorSpec {
            count: 1,
            ..GeneratorSpec::default()
        });
        let report = run_equivalence(&graphs, &CostModel::default(), &SolverConfig::default(), Execution::Sequential).unwrap();
        assert_eq!(report.rows.len(), 1);
        let row = &report.rows[0];
        assert_eq!(row.exact_ged, 0.0);
        assert_eq!(row.difference().unwrap().abs(), 0.0);
        assert!(row.gm_derived.unwrap().abs() <= TOLERANCE);
    }

    #[test]
    fn empty_dataset_is_an_error() {
        let err = run_equivalence(&[], &CostModel::default(), &SolverConfig::default(), Execution::Sequential);
        assert!(matches!(err, Err(Error::EmptyDataset)));
    }

    #[test]
    fn oversized_pairs_are_excluded() {
        let graphs = generate(&GeneratorSpec {
            count: 1,
            min_vertices: 4,
            max_vertices: 4,
            ..GeneratorSpec::default()
        });
        let cfg = SolverConfig {
            oracle_limit: 3,
            ..SolverConfig::default()
        };
        let err = run_equivalence(&graphs, &CostModel::default(), &cfg, Execution::Sequential);
        assert!(matches!(err, Err(Error::AllPairsExcluded)));
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let graphs = generate(&GeneratorSpec {
            count: 3,
            ..GeneratorSpec::default()
        });
        let mut report = run_equivalence(&graphs, &CostModel::default(), &SolverConfig::default(), Execution::Parallel).unwrap();
        report.rows[1].gm_derived = None;
        let text = report.to_csv();
        let back = ExperimentReport::from_csv(&text).unwrap();
        assert_eq!(back, report);
        for (a, b) in back.rows.iter().zip(&report.rows) {
            assert_eq!(a.exact_ged.to_bits(), b.exact_ged.to_bits());
        }
        assert!(report.to_table().contains("mean |exact"));
    }

    #[test]
    fn parallel_and_sequential_rows_match() {
        let graphs = generate(&GeneratorSpec {
            count: 3,
            ..GeneratorSpec::default()
        });
        let m = CostModel::default();
        let cfg = SolverConfig::default();
        let a = run_equivalence(&graphs, &m, &cfg, Execution::Sequential).unwrap();
        let b = run_equivalence(&graphs, &m, &cfg, Execution::Parallel).unwrap();
        let key = |r: &ExperimentRow| (r.pair_id, r.exact_ged.to_bits(), r.gm_derived.map(f64::to_bits), r.ipfp.to_bits());
        assert_eq!(a.rows.iter().map(key).collect::<Vec<_>>(), b.rows.iter().map(key).collect::<Vec<_>>());
    }
}
