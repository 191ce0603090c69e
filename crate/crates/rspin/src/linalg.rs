//! Small exact dense linear algebra over Q(zeta_r): rank and linear solves
//! by fraction-free-enough Gaussian elimination with exact division. Used by
//! the semisimplicity test and the recurrence detector, and as an
//! independent oracle in tests.

use crate::cyclotomic::CycQ;

/// Exact rank by row reduction.
pub fn rank(mut rows: Vec<Vec<CycQ>>) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(src) = (pivot_row..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let inv = rows[pivot_row][col].inv().expect("pivot is nonzero");
        for c in col..ncols {
            rows[pivot_row][c] = rows[pivot_row][c].mul(&inv);
        }
        for i in 0..nrows {
            if i != pivot_row && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for c in col..ncols {
                    let t = rows[pivot_row][c].mul(&factor);
                    rows[i][c] = rows[i][c].sub(&t);
                }
            }
        }
        pivot_row += 1;
        rank += 1;
        if pivot_row == nrows {
            break;
        }
    }
    rank
}

/// Any exact solution of A x = rhs, or None if the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(a: &[Vec<CycQ>], rhs: &[CycQ]) -> Option<Vec<CycQ>> {
    let nrows = a.len();
    assert_eq!(nrows, rhs.len(), "matrix and right-hand side must agree");
    if nrows == 0 {
        return Some(Vec::new());
    }
    let ncols = a[0].len();
    let r = if ncols > 0 {
        a[0][0].conductor()
    } else {
        rhs.first().map(|v| v.conductor()).unwrap_or(1)
    };
    let mut rows: Vec<Vec<CycQ>> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut v = row.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(src) = (pivot_row..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let inv = rows[pivot_row][col].inv().expect("pivot is nonzero");
        for c in col..=ncols {
            rows[pivot_row][c] = rows[pivot_row][c].mul(&inv);
        }
        for i in 0..nrows {
            if i != pivot_row && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for c in col..=ncols {
                    let t = rows[pivot_row][c].mul(&factor);
                    rows[i][c] = rows[i][c].sub(&t);
                }
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
        if pivot_row == nrows {
            break;
        }
    }
    // inconsistent if a zero row has nonzero rhs
    for i in pivot_row..nrows {
        if !rows[i][ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![CycQ::zero(r); ncols];
    for (row, col) in pivots {
        x[col] = rows[row][ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycQ;

    fn m(r: u32, rows: &[&[i64]]) -> Vec<Vec<CycQ>> {
        rows.iter()
            .map(|row| row.iter().map(|&v| CycQ::from_int(r, v)).collect())
            .collect()
    }

    #[test]
    fn rank_of_singular_and_regular_matrices() {
        assert_eq!(rank(m(1, &[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(m(1, &[&[1, 2], &[3, 4]])), 2);
        assert_eq!(rank(m(1, &[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(m(5, &[&[1, 0, 2], &[0, 1, 1]])), 2);
    }

    #[test]
    fn rank_sees_cyclotomic_cancellation() {
        // second row is zeta times the first
        let z = CycQ::root_of_unity(3, 1);
        let one = CycQ::one(3);
        let rows = vec![
            vec![one.clone(), z.clone()],
            vec![z.clone(), z.mul(&z)],
        ];
        assert_eq!(rank(rows), 1);
    }

    #[test]
    fn solve_finds_exact_solutions() {
        let a = m(1, &[&[2, 1], &[1, -1]]);
        let rhs = vec![CycQ::from_int(1, 4), CycQ::from_int(1, -1)];
        let x = solve(&a, &rhs).unwrap();
        assert_eq!(x[0], CycQ::from_int(1, 1));
        assert_eq!(x[1], CycQ::from_int(1, 2));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = m(1, &[&[1, 1], &[2, 2]]);
        let rhs = vec![CycQ::from_int(1, 1), CycQ::from_int(1, 3)];
        assert!(solve(&a, &rhs).is_none());
    }

    #[test]
    fn solve_underdetermined_picks_some_solution() {
        let a = m(1, &[&[1, 1]]);
        let rhs = vec![CycQ::from_int(1, 5)];
        let x = solve(&a, &rhs).unwrap();
        assert_eq!(x[0].add(&x[1]), CycQ::from_int(1, 5));
    }
}
