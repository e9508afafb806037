//! Smith and Hermite normal forms of small integer matrices, with the
//! unimodular transforms that produce them.

/// Dense integer matrix stored row-major.
pub type IMat = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn det(a: &IMat) -> i64 {
    // Bareiss fraction-free elimination; exact for integer input.
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else { return 0 };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    (sign * m[n - 1][n - 1]) as i64
}

/// Result of a Smith normal form computation: `u · a · v = d` with `u`, `v`
/// unimodular and `d` diagonal with `d_1 | d_2 | … | d_rank`, all positive.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IMat,
    pub v: IMat,
    pub diag: Vec<i64>,
    pub rank: usize,
}

fn swap_cols(m: &mut IMat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn add_row(m: &mut IMat, dst: usize, src: usize, k: i64) {
    if k == 0 {
        return;
    }
    let s = m[src].clone();
    for (x, y) in m[dst].iter_mut().zip(s) {
        *x += k * y;
    }
}

fn add_col(m: &mut IMat, dst: usize, src: usize, k: i64) {
    if k == 0 {
        return;
    }
    for row in m.iter_mut() {
        row[dst] += k * row[src];
    }
}

pub fn smith(a: &IMat, cols: usize) -> Snf {
    let rows = a.len();
    let mut w = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the remaining block goes to the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if w[i][j] != 0 && best.is_none_or(|(bi, bj)| w[i][j].abs() < w[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.swap(t, bi);
        u.swap(t, bi);
        swap_cols(&mut w, t, bj);
        swap_cols(&mut v, t, bj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = w[i][t].div_euclid(w[t][t]);
                add_row(&mut w, i, t, -q);
                add_row(&mut u, i, t, -q);
                if w[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = w[t][j].div_euclid(w[t][t]);
                add_col(&mut w, j, t, -q);
                add_col(&mut v, j, t, -q);
                if w[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // Enforce divisibility of the remaining block by the pivot.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| w[i][j] % w[t][t] != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        add_row(&mut w, t, i, 1);
                        add_row(&mut u, t, i, 1);
                        continue;
                    }
                }
            }
            // Move the smallest nonzero entry of the pivot row/column to the pivot.
            let mut best = (t, t);
            for i in t..rows {
                if w[i][t] != 0 && w[i][t].abs() < w[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if w[t][j] != 0 && w[t][j].abs() < w[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                w.swap(t, best.0);
                u.swap(t, best.0);
            }
            if best.1 != t {
                swap_cols(&mut w, t, best.1);
                swap_cols(&mut v, t, best.1);
            }
        }
        if w[t][t] < 0 {
            for x in w[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }
    let diag: Vec<i64> = (0..rows.min(cols)).map(|i| w[i][i]).take_while(|&d| d != 0).collect();
    let rank = diag.len();
    Snf { u, v, diag, rank }
}

/// Row-style Hermite normal form: returns `(h, u)` with `u · a = h`, `u`
/// unimodular and `h` in upper row-echelon form with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`.
pub fn hermite(a: &IMat, cols: usize) -> (IMat, IMat) {
    let rows = a.len();
    let mut h = a.clone();
    let mut u = identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..rows).filter(|&i| h[i][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| h[i][c].abs()).unwrap();
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                let q = h[i][c].div_euclid(h[r][c]);
                add_row(&mut h, i, r, -q);
                add_row(&mut u, i, r, -q);
                if h[i][c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[r][c] == 0 {
            continue;
        }
        if h[r][c] < 0 {
            for x in h[r].iter_mut() {
                *x = -*x;
            }
            for x in u[r].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r {
            let q = h[i][c].div_euclid(h[r][c]);
            add_row(&mut h, i, r, -q);
            add_row(&mut u, i, r, -q);
        }
        r += 1;
    }
    (h, u)
}

/// Invariant factors (> 1) of a diagonal matrix with the given entries.
pub fn invariant_factors(entries: &[u64]) -> Vec<u64> {
    let m: IMat = entries
        .iter()
        .enumerate()
        .map(|(i, &d)| (0..entries.len()).map(|j| if i == j { d as i64 } else { 0 }).collect())
        .collect();
    smith(&m, entries.len())
        .diag
        .into_iter()
        .map(|d| d as u64)
        .filter(|&d| d > 1)
        .collect()
}

/// Inverse of a unimodular matrix (exact, via adjugate-free elimination).
pub fn unimodular_inverse(a: &IMat) -> IMat {
    let n = a.len();
    let (h, u) = hermite(a, n);
    // For unimodular a, the Hermite form is the identity, so u = a^{-1}.
    debug_assert!(h == identity(n), "matrix is not unimodular");
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IMat, cols: usize) -> Snf {
        let s = smith(a, cols);
        let d = mat_mul(&mat_mul(&s.u, a), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if i == j && i < s.rank {
                    assert_eq!(x, s.diag[i]);
                } else {
                    assert_eq!(x, 0, "off-diagonal entry in {d:?}");
                }
            }
        }
        assert_eq!(det(&s.u).abs(), 1);
        assert_eq!(det(&s.v).abs(), 1);
        for w in s.diag.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        s
    }

    #[test]
    fn smith_examples() {
        assert_eq!(check(&vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3).diag, vec![2, 6, 12]);
        assert_eq!(check(&vec![vec![6, 4]], 2).diag, vec![2]);
        assert_eq!(check(&vec![vec![2, 0], vec![0, 3]], 2).diag, vec![1, 6]);
        assert_eq!(check(&vec![vec![0, 0]], 2).rank, 0);
        assert_eq!(check(&vec![vec![2, -3], vec![4, -6]], 2).diag, vec![1]);
    }

    #[test]
    fn hermite_is_echelon() {
        let a = vec![vec![4, 6], vec![2, 5], vec![8, 12]];
        let (h, u) = hermite(&a, 2);
        assert_eq!(mat_mul(&u, &a), h);
        assert_eq!(h[2], vec![0, 0]);
        assert_eq!(h[1][0], 0);
        assert_eq!(det(&u).abs(), 1);
    }

    #[test]
    fn invariant_factor_merge() {
        assert_eq!(invariant_factors(&[2, 3]), vec![6]);
        assert_eq!(invariant_factors(&[2, 2]), vec![2, 2]);
        assert_eq!(invariant_factors(&[4, 6]), vec![2, 12]);
        assert!(invariant_factors(&[1, 1]).is_empty());
    }

    #[test]
    fn inverse() {
        let a = vec![vec![2, 1], vec![1, 1]];
        assert_eq!(mat_mul(&a, &unimodular_inverse(&a)), identity(2));
    }
}
