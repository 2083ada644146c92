//! Exact dense linear algebra over [`Scalar`].

use crate::scalar::Scalar;

/// Determinant by Bareiss fraction-free elimination with row pivoting.
pub fn determinant(matrix: &[Vec<Scalar>]) -> Scalar {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return Scalar::one();
    }
    let mut a: Vec<Vec<Scalar>> = matrix.to_vec();
    let mut prev = Scalar::one();
    let mut negate = false;
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Scalar::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let inv_prev = prev.inv().expect("previous pivot is nonzero");
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = &num * &inv_prev;
            }
            a[i][k] = Scalar::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
fn row_reduce(a: &mut [Vec<Scalar>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].inv().expect("pivot is nonzero");
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let d = &f * &a[r][j];
                    a[i][j] -= &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of the given row vectors.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut a = rows.to_vec();
    row_reduce(&mut a).len()
}

/// Coefficients `x` with `Σ_k x_k · vectors[k] = target`, if any exist.
/// Vectors need not be independent; a particular solution is returned.
pub fn solve_in_span(vectors: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    let k = vectors.len();
    let dim = target.len();
    // augmented system: rows are coordinates, columns are the vectors then target
    let mut a: Vec<Vec<Scalar>> = (0..dim)
        .map(|row| {
            let mut r: Vec<Scalar> = vectors.iter().map(|v| v[row].clone()).collect();
            r.push(target[row].clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut a);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = vec![Scalar::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][k].clone();
    }
    Some(x)
}
