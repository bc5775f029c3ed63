//! Exact Gaussian elimination on tiny rational systems.

use num_traits::{One, Zero};

use crate::rational::Q;

/// Solve `Σ_j x_j · columns[j] = target` exactly.
///
/// The columns must be linearly independent. Returns `None` when the target
/// is not in their span.
pub fn solve_in_span(columns: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let rows = target.len();
    let cols = columns.len();
    if cols == 0 {
        return target.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    // augmented matrix, row-major
    let mut m: Vec<Vec<Q>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Q> = columns.iter().map(|c| c[r]).collect();
            row.push(target[r]);
            row
        })
        .collect();
    let mut pivot_cols = Vec::with_capacity(cols);
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = Q::one() / m[r][c];
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..=cols {
                    let d = f * m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if pivot_cols.len() < cols {
        // dependent columns: the caller promised independence
        return None;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[i][cols];
    }
    Some(x)
}

/// Rank of an integer matrix given as rows.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = m[i][c] / m[r][c];
                for j in c..ncols {
                    let d = f * m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qvec;

    #[test]
    fn solves_overdetermined_consistent_system() {
        // simple roots of GL3 and the highest root
        let cols = vec![qvec(&[1, -1, 0]), qvec(&[0, 1, -1])];
        let x = solve_in_span(&cols, &qvec(&[1, 0, -1])).unwrap();
        assert_eq!(x, qvec(&[1, 1]));
        assert!(solve_in_span(&cols, &qvec(&[1, 0, 0])).is_none());
    }

    #[test]
    fn rank_of_embedding() {
        assert_eq!(rank(&[qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[1, 1])]), 2);
        assert_eq!(rank(&[qvec(&[1, 2]), qvec(&[2, 4])]), 1);
    }
}
