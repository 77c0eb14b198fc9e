//! Maximum-weight one-to-one assignment on a rectangular weight matrix.
//!
//! Weights are quantized to integers (1e-9 resolution) so that totals compare
//! exactly. Among all optimal pairings the lexicographically smallest list of
//! (row, column) pairs is returned. Cells with zero or missing weight are never
//! paired.

const SCALE: f64 = 1e9;

/// Integer weight used for comparisons; values below half a quantum become 0.
pub fn quantize(w: f64) -> i64 {
    (w * SCALE).round() as i64
}

/// Optimal pairing for a dense matrix of non-negative weights.
pub fn max_weight_assignment(weights: &[Vec<f64>]) -> Vec<(usize, usize)> {
    let q: Vec<Vec<i64>> = weights
        .iter()
        .map(|row| row.iter().map(|&w| quantize(w.max(0.0))).collect())
        .collect();
    assign_quantized(&q)
}

/// Like [`max_weight_assignment`], with `None` marking cells that may not be paired.
pub fn max_weight_assignment_masked(weights: &[Vec<Option<f64>>]) -> Vec<(usize, usize)> {
    let q: Vec<Vec<i64>> = weights
        .iter()
        .map(|row| {
            row.iter()
                .map(|w| w.map_or(0, |w| quantize(w.max(0.0))))
                .collect()
        })
        .collect();
    assign_quantized(&q)
}

fn assign_quantized(q: &[Vec<i64>]) -> Vec<(usize, usize)> {
    let n = q.len();
    let m = q.first().map_or(0, Vec::len);
    if n == 0 || m == 0 {
        return Vec::new();
    }
    debug_assert!(q.iter().all(|row| row.len() == m));

    let all_rows: Vec<usize> = (0..n).collect();
    let all_cols: Vec<usize> = (0..m).collect();
    let (best, first) = solve_subset(q, &all_rows, &all_cols);

    // witness[r] is the column row r takes in some optimal pairing that
    // contains every pair fixed so far
    let mut witness: Vec<Option<usize>> = vec![None; n];
    for (r, c) in first {
        witness[r] = Some(c);
    }
    let mut fixed_value = 0i64;
    let mut col_used = vec![false; m];
    let mut result = Vec::new();

    for r in 0..n {
        let mut chosen = None;
        for c in 0..m {
            if col_used[c] || q[r][c] <= 0 {
                continue;
            }
            if witness[r] == Some(c) {
                chosen = Some(c);
                break;
            }
            let rows: Vec<usize> = (r + 1..n).collect();
            let cols: Vec<usize> = (0..m).filter(|&j| !col_used[j] && j != c).collect();
            let (rest, pairs) = solve_subset(q, &rows, &cols);
            if fixed_value + q[r][c] + rest == best {
                for w in witness.iter_mut().skip(r) {
                    *w = None;
                }
                witness[r] = Some(c);
                for (rr, cc) in pairs {
                    witness[rr] = Some(cc);
                }
                chosen = Some(c);
                break;
            }
        }
        if let Some(c) = chosen {
            col_used[c] = true;
            fixed_value += q[r][c];
            result.push((r, c));
        }
    }
    debug_assert_eq!(fixed_value, best);
    result
}

/// Best total over the given rows and columns, with the positive-weight pairs
/// of one optimal pairing (in original indices).
fn solve_subset(q: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> (i64, Vec<(usize, usize)>) {
    if rows.is_empty() || cols.is_empty() {
        return (0, Vec::new());
    }
    let k = rows.len().max(cols.len());
    let mut cost = vec![vec![0i64; k]; k];
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            cost[i][j] = -q[r][c].max(0);
        }
    }
    let assignment = hungarian_min(&cost);
    let mut total = 0;
    let mut pairs = Vec::new();
    for (i, &j) in assignment.iter().enumerate() {
        if i < rows.len() && j < cols.len() {
            let w = q[rows[i]][cols[j]];
            if w > 0 {
                total += w;
                pairs.push((rows[i], cols[j]));
            }
        }
    }
    (total, pairs)
}

/// Minimum-cost perfect assignment on a square matrix (potentials method,
/// O(k^3)). Returns the column assigned to each row.
fn hungarian_min(cost: &[Vec<i64>]) -> Vec<usize> {
    let k = cost.len();
    let inf = i64::MAX / 4;
    let mut u = vec![0i64; k + 1];
    let mut v = vec![0i64; k + 1];
    let mut p = vec![0usize; k + 1];
    let mut way = vec![0usize; k + 1];

    for i in 1..=k {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![inf; k + 1];
        let mut used = vec![false; k + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=k {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=k {
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

    let mut assignment = vec![0usize; k];
    for j in 1..=k {
        if p[j] > 0 {
            assignment[p[j] - 1] = j - 1;
        }
    }
    assignment
}
