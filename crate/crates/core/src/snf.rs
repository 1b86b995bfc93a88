//! Smith normal form over Z for the small relation matrices that arise in
//! ray class group construction. Tracks the column transform only.

/// S = U * A * V with S diagonal, diag[i] | diag[i+1], diag >= 0.
/// Only `diag` and `v` (the column transform) are retained: a row vector w
/// of generator exponents has invariant coordinates (w * v) mod diag.
pub struct Snf {
    pub diag: Vec<i128>,
    pub v: Vec<Vec<i128>>,
}

pub fn smith_normal_form(mut a: Vec<Vec<i128>>, cols: usize) -> Snf {
    let rows = a.len();
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let dim = rows.min(cols);

    'outer: loop {
        for t in 0..dim {
            reduce_pivot(t, rows, cols, &mut a, &mut v);
        }
        // repair divisibility violations along the diagonal: adding row j to
        // row i reintroduces an off-diagonal entry whose elimination leaves
        // gcd(d_i, d_j) at the pivot
        for i in 0..dim {
            for j in i + 1..dim {
                let (x, y) = (a[i][i], a[j][j]);
                if x == 0 && y != 0 {
                    a.swap(i, j);
                    continue 'outer;
                }
                if x != 0 && y % x != 0 {
                    let row_j = a[j].clone();
                    for (k, val) in row_j.into_iter().enumerate() {
                        a[i][k] += val;
                    }
                    continue 'outer;
                }
            }
        }
        break;
    }

    let mut diag: Vec<i128> = (0..cols)
        .map(|i| if i < rows { a[i][i] } else { 0 })
        .collect();
    for i in 0..cols.min(rows) {
        if diag[i] < 0 {
            diag[i] = -diag[i];
            for row in v.iter_mut() {
                row[i] = -row[i];
            }
        }
    }
    Snf { diag, v }
}

fn reduce_pivot(t: usize, rows: usize, cols: usize, a: &mut [Vec<i128>], v: &mut [Vec<i128>]) {
    loop {
        // minimal nonzero |entry| in the trailing submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && pivot.map_or(true, |(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { return };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut().take(rows) {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t].div_euclid(a[t][t]);
            if q != 0 {
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
            }
            if a[i][t] != 0 {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = a[t][j].div_euclid(a[t][t]);
            if q != 0 {
                for row in a.iter_mut().take(rows) {
                    row[j] -= q * row[t];
                }
                for row in v.iter_mut() {
                    let delta = q * row[t];
                    row[j] -= delta;
                }
            }
            if a[t][j] != 0 {
                clean = false;
            }
        }
        if clean {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords(w: &[i128], snf: &Snf) -> Vec<i128> {
        (0..snf.diag.len())
            .map(|j| {
                let mut acc = 0i128;
                for (i, &wi) in w.iter().enumerate() {
                    acc += wi * snf.v[i][j];
                }
                if snf.diag[j] > 0 {
                    acc.rem_euclid(snf.diag[j])
                } else {
                    acc
                }
            })
            .collect()
    }

    #[test]
    fn diagonal_matrix() {
        let snf = smith_normal_form(vec![vec![2, 0], vec![0, 4]], 2);
        assert_eq!(snf.diag, vec![2, 4]);
    }

    #[test]
    fn divisibility_fix() {
        let snf = smith_normal_form(vec![vec![4, 0], vec![0, 6]], 2);
        assert_eq!(snf.diag, vec![2, 12]);
    }

    #[test]
    fn relation_rows_map_to_zero() {
        let rels: Vec<Vec<i128>> = vec![vec![3, 1, -2], vec![0, 4, 1], vec![5, 0, 7]];
        let snf = smith_normal_form(rels.clone(), 3);
        for r in &rels {
            let c = coords(r, &snf);
            assert!(c.iter().all(|&x| x == 0), "row {r:?} -> {c:?}");
        }
        let order: i128 = snf.diag.iter().filter(|&&d| d != 0).product();
        assert!(order > 0);
        assert!(snf
            .diag
            .windows(2)
            .all(|w| w[0] == 0 || w[1] % w[0].max(1) == 0 || w[1] == 0));
    }

    #[test]
    fn single_generator() {
        let snf = smith_normal_form(vec![vec![6]], 1);
        assert_eq!(snf.diag, vec![6]);
        assert_eq!(snf.v, vec![vec![1]]);
        assert_eq!(coords(&[7], &snf), vec![1]);
    }

    #[test]
    fn random_lattices_have_consistent_quotients() {
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let rows = 2 + (next() % 3) as usize;
            let cols = 1 + (next() % 3) as usize;
            let a: Vec<Vec<i128>> = (0..rows)
                .map(|_| (0..cols).map(|_| (next() % 21) as i128 - 10).collect())
                .collect();
            let snf = smith_normal_form(a.clone(), cols);
            for r in &a {
                assert!(coords(r, &snf).iter().all(|&x| x == 0));
            }
        }
    }
}
