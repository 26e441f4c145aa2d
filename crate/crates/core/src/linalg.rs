//! Dense exact Gaussian elimination over `Rational`.

use crate::exact::Rational;

/// True iff every leading principal minor of the symmetric matrix is positive.
///
/// Elimination without row exchanges: the k-th pivot is the ratio of the k-th and
/// (k-1)-th leading minors, so all minors are positive iff all pivots are.
pub(crate) fn leading_minors_positive(mut a: Vec<Vec<Rational>>) -> bool {
    let n = a.len();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        let pivot_row = a[k].clone();
        for row in a.iter_mut().skip(k + 1) {
            if row[k].is_zero() {
                continue;
            }
            let factor = &row[k] / &pivot_row[k];
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(k) {
                *x = &*x - &(&factor * p);
            }
        }
    }
    true
}

/// Solves `a·x = b`; `None` if `a` is singular.
pub(crate) fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = a.len();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, pivot);
        b.swap(k, pivot);
        let pivot_row = a[k].clone();
        let pivot_rhs = b[k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot_row[k];
            for (x, p) in a[i].iter_mut().zip(&pivot_row).skip(k) {
                *x = &*x - &(&factor * p);
            }
            b[i] = &b[i] - &(&factor * &pivot_rhs);
        }
    }
    let mut x = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        let tail: Rational = (k + 1..n).map(|j| &a[k][j] * &x[j]).sum();
        x[k] = &(&b[k] - &tail) / &a[k][k];
    }
    Some(x)
}
