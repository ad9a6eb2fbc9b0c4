//! Min-cost perfect assignment by successive shortest paths with potentials
//! (the Hungarian method), integer costs.

/// `cost[i][j]` is `Some(c)` for an allowed pair. Returns `assign[i] = j`
/// for a minimum-cost perfect assignment, or `None` if the allowed pairs
/// admit no perfect assignment.
pub(crate) fn min_cost_assignment(cost: &[Vec<Option<i64>>]) -> Option<Vec<usize>> {
    let n = cost.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let max_abs = cost
        .iter()
        .flatten()
        .flatten()
        .map(|c| c.abs())
        .max()
        .unwrap_or(0);
    // Forbidden pairs cost more than any assignment of allowed pairs.
    let forbidden = (max_abs + 1) * (2 * n as i64 + 2);
    let inf = i64::MAX / 4;
    let a = |i: usize, j: usize| cost[i - 1][j - 1].unwrap_or(forbidden);

    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if !used[j] {
                    let cur = a(i0, j) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
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
    let mut assign = vec![0usize; n];
    for j in 1..=n {
        assign[p[j] - 1] = j - 1;
    }
    assign
        .iter()
        .enumerate()
        .all(|(i, &j)| cost[i][j].is_some())
        .then_some(assign)
}
