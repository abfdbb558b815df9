//! Linear sum assignment (Hungarian algorithm, shortest augmenting paths with
//! potentials, O(n^3)).

use crate::error::{Error, Result};

/// Minimum-cost perfect assignment of a square matrix.
///
/// Returns `perm` with `perm[row] = column` and the total cost summed in row
/// order. Entries must be finite.
pub fn solve_lsap(costs: &[Vec<f64>]) -> Result<(Vec<usize>, f64)> {
    let n = costs.len();
    for (r, row) in costs.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Lsap(format!("row {r} has {} entries, expected {n}", row.len())));
        }
        if let Some(c) = row.iter().position(|v| !v.is_finite()) {
            return Err(Error::Lsap(format!("entry ({r}, {c}) is not finite")));
        }
    }
    let flat: Vec<f64> = costs.iter().flatten().copied().collect();
    let perm = lsap_min(&flat, n);
    let total = perm.iter().enumerate().map(|(r, &c)| costs[r][c]).sum();
    Ok((perm, total))
}

/// Hungarian algorithm on a row-major `n x n` matrix. `f64::INFINITY` marks a
/// forbidden cell; at least one finite perfect assignment must exist.
pub(crate) fn lsap_min(costs: &[f64], n: usize) -> Vec<usize> {
    debug_assert_eq!(costs.len(), n * n);
    if n == 0 {
        return Vec::new();
    }
    let inf = f64::INFINITY;
    // 1-based potentials; index 0 is the virtual root column.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut minv = vec![inf; n + 1];
    let mut used = vec![false; n + 1];

    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        minv.fill(inf);
        used.fill(false);
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            let row = &costs[(i0 - 1) * n..i0 * n];
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = row[j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta || j1 == 0 {
                    delta = minv[j];
                    j1 = j;
                }
            }
            assert!(delta.is_finite(), "no finite perfect assignment");
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut perm = vec![0usize; n];
    for j in 1..=n {
        perm[p[j] - 1] = j - 1;
    }
    perm
}

/// Maximum-gain assignment, via costs `max - gain`.
pub(crate) fn lsap_max(gains: &[f64], n: usize) -> Vec<usize> {
    let top = gains.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let costs: Vec<f64> = gains.iter().map(|&g| top - g).collect();
    lsap_min(&costs, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_friendly() {
        let m: Vec<Vec<f64>> = (0..3)
            .map(|r| (0..3).map(|c| if r == c { 0.0 } else { 1.0 }).collect())
            .collect();
        assert_eq!(solve_lsap(&m).unwrap(), (vec![0, 1, 2], 0.0));
    }

    #[test]
    fn two_by_two() {
        let (perm, cost) = solve_lsap(&[vec![4.0, 1.0], vec![2.0, 3.0]]).unwrap();
        assert_eq!(perm, vec![1, 0]);
        assert_eq!(cost, 3.0);
    }

    #[test]
    fn all_equal_is_deterministic() {
        let m = vec![vec![2.5; 4]; 4];
        let (perm, cost) = solve_lsap(&m).unwrap();
        assert_eq!(cost, 10.0);
        assert_eq!(solve_lsap(&m).unwrap().0, perm);
        let mut seen = perm.clone();
        seen.sort();
        assert_eq!(seen, vec![0, 1, 2, 3]);
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(solve_lsap(&[]).unwrap(), (vec![], 0.0));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(solve_lsap(&[vec![1.0, 2.0]]).is_err());
        assert!(solve_lsap(&[vec![f64::NAN]]).is_err());
        assert!(solve_lsap(&[vec![f64::INFINITY]]).is_err());
    }

    #[test]
    fn forbidden_cells_are_avoided() {
        let inf = f64::INFINITY;
        let m = [0.0, inf, inf, 5.0, 1.0, inf, inf, 2.0, 7.0];
        assert_eq!(lsap_min(&m, 3), vec![0, 1, 2]);
    }

    #[test]
    fn maximization() {
        assert_eq!(lsap_max(&[4.0, 1.0, 2.0, 3.0], 2), vec![0, 1]);
    }
}
