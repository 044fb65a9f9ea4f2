//! Dense exact Gaussian elimination.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Solves `A x = b` for a system with full column rank.
///
/// An inconsistent or underdetermined system yields [`Error::Internal`]:
/// callers only build systems known to be uniquely solvable.
pub(crate) fn solve_unique(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Result<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for col in 0..cols {
        let Some(found) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            return Err(Error::Internal(format!("singular system: no pivot in column {col}")));
        };
        a.swap(pivot_row, found);
        b.swap(pivot_row, found);
        let inv = a[pivot_row][col].recip();
        for c in col..cols {
            a[pivot_row][c] *= &inv;
        }
        b[pivot_row] *= &inv;
        for r in 0..rows {
            if r == pivot_row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..cols {
                let delta = &factor * &a[pivot_row][c];
                a[r][c] -= delta;
            }
            let delta = &factor * &b[pivot_row];
            b[r] -= delta;
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if b[pivot_row..].iter().any(|v| !v.is_zero()) {
        return Err(Error::Internal("inconsistent linear system".into()));
    }
    Ok(pivots.into_iter().map(|r| b[r].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn solves_overdetermined_consistent() {
        let a = vec![vec![int(1), int(1)], vec![int(1), int(-1)], vec![int(2), int(0)]];
        let b = vec![int(3), int(1), int(4)];
        assert_eq!(solve_unique(a, b).unwrap(), vec![int(2), int(1)]);
    }

    #[test]
    fn rational_solution() {
        let a = vec![vec![int(2), int(0)], vec![int(0), int(3)]];
        assert_eq!(solve_unique(a, vec![int(1), int(1)]).unwrap(), vec![ratio(1, 2), ratio(1, 3)]);
    }

    #[test]
    fn inconsistent_and_singular_are_errors() {
        let a = vec![vec![int(1)], vec![int(1)]];
        assert!(matches!(solve_unique(a, vec![int(1), int(2)]), Err(Error::Internal(_))));
        let a = vec![vec![int(1), int(1)], vec![int(2), int(2)]];
        assert!(matches!(solve_unique(a, vec![int(1), int(2)]), Err(Error::Internal(_))));
    }
}
