//! Exact Gaussian elimination over any field-like numeric type.
//!
//! Pivoting takes the first nonzero entry in the column, so results are
//! reproducible. Used with `BigRational` everywhere correctness matters and
//! with `Ratio<i64>` in the hot vertex-enumeration loop, where entries stay
//! tiny.

#![allow(clippy::needless_range_loop)]

use num_traits::Num;

pub type Matrix<T> = Vec<Vec<T>>;

/// Reduces `m` to row echelon form in place; returns the pivot columns.
fn echelon<T: Num + Clone>(m: &mut Matrix<T>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let pivot = m[row][col].clone();
        for r in row + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() / pivot.clone();
            for c in col..m[r].len() {
                let d = f.clone() * m[row][c].clone();
                m[r][c] = m[r][c].clone() - d;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<T: Num + Clone>(rows: &[Vec<T>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    echelon(&mut m, cols).len()
}

/// Determinant of a square matrix (`1` for the empty matrix).
pub fn determinant<T: Num + Clone>(rows: &[Vec<T>]) -> T {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let mut m = rows.to_vec();
    let mut det = T::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return T::zero();
        };
        if p != col {
            m.swap(p, col);
            det = T::zero() - det;
        }
        let pivot = m[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() / pivot.clone();
            for c in col..n {
                let d = f.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - d;
            }
        }
    }
    det
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution<T> {
    Unique(Vec<T>),
    Underdetermined,
    Inconsistent,
}

/// Solves `a · x = b` for a possibly non-square `a`.
pub fn solve<T: Num + Clone>(a: &[Vec<T>], b: &[T]) -> Solution<T> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Matrix<T> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut m, cols + 1);
    if pivots.last() == Some(&cols) {
        return Solution::Inconsistent;
    }
    if pivots.len() < cols {
        return Solution::Underdetermined;
    }
    let mut x = vec![T::zero(); cols];
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut acc = m[r][cols].clone();
        for k in c + 1..cols {
            acc = acc - m[r][k].clone() * x[k].clone();
        }
        x[c] = acc / m[r][c].clone();
    }
    Solution::Unique(x)
}

/// Inverse of a square matrix, or `None` if it is singular.
pub fn inverse<T: Num + Clone>(rows: &[Vec<T>]) -> Option<Matrix<T>> {
    let n = rows.len();
    let mut m: Matrix<T> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            assert_eq!(r.len(), n, "inverse of a non-square matrix");
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let pivot = m[col][col].clone();
        for c in 0..2 * n {
            m[col][c] = m[col][c].clone() / pivot.clone();
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..2 * n {
                let d = f.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - d;
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mul<T: Num + Clone>(a: &[Vec<T>], b: &[Vec<T>]) -> Matrix<T> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols).map(|c| (0..inner).fold(T::zero(), |acc, k| acc + row[k].clone() * b[k][c].clone())).collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Matrix<T> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|c| m.iter().map(|r| r[c].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, Rational};

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn rank_and_det() {
        let m = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&m), 1);
        assert_eq!(determinant(&m), int(0));
        let m = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&m), int(-1));
        let m = mat(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(determinant(&m), int(18));
        assert_eq!(rank::<Rational>(&[]), 0);
        assert_eq!(determinant::<Rational>(&[]), int(1));
    }

    #[test]
    fn solve_cases() {
        let a = mat(&[&[2, 0], &[0, 4]]);
        assert_eq!(solve(&a, &[int(1), int(1)]), Solution::Unique(vec![frac(1, 2), frac(1, 4)]));
        let a = mat(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&a, &[int(1), int(3)]), Solution::Inconsistent);
        assert_eq!(solve(&a, &[int(1), int(2)]), Solution::Underdetermined);
        // consistent overdetermined
        let a = mat(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(solve(&a, &[int(1), int(2), int(3)]), Solution::Unique(vec![int(1), int(2)]));
        assert_eq!(solve(&a, &[int(1), int(2), int(4)]), Solution::Inconsistent);
    }

    #[test]
    fn inverse_round_trip() {
        let m = mat(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(mul(&m, &inv), mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert!(inverse(&mat(&[&[1, 2], &[2, 4]])).is_none());
        assert_eq!(inverse::<Rational>(&[]), Some(vec![]));
    }

    #[test]
    fn small_ratio_type_agrees() {
        use num_rational::Ratio;
        let m: Matrix<Ratio<i64>> = vec![
            vec![Ratio::from(1), Ratio::from(1), Ratio::from(0)],
            vec![Ratio::from(1), Ratio::from(-1), Ratio::from(1)],
            vec![Ratio::from(0), Ratio::from(1), Ratio::from(1)],
        ];
        assert_eq!(determinant(&m), Ratio::from(-3));
        assert_eq!(rank(&m), 3);
    }
}
