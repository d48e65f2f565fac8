//! Gaussian elimination over `Q(q,t)`.

use crate::error::{Error, Result};
use crate::scalars::QTScalar;

fn weight(s: &QTScalar) -> usize {
    s.numer().len() + s.denom().len()
}

/// Solves `A x = b` for a possibly rectangular `A` with full column rank.
///
/// Rows beyond the rank must reduce to `0 = 0`; anything else is reported as inconsistent.
pub fn solve(mut a: Vec<Vec<QTScalar>>, mut b: Vec<QTScalar>) -> Result<Vec<QTScalar>> {
    let rows = a.len();
    if b.len() != rows {
        return Err(Error::Shape {
            expected: rows,
            found: b.len(),
        });
    }
    let cols = a.first().map_or(0, Vec::len);
    let mut pivot_row = vec![usize::MAX; cols];
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| weight(&a[i][c]))
        else {
            return Err(Error::Degenerate(format!("column {c} has no pivot")));
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].inv();
        for x in a[r][c..].iter_mut() {
            *x = &*x * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            let pivot_row = a[r][c..cols].to_vec();
            for (x, p) in a[i][c..cols].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
            let d = &f * &b[r];
            b[i] -= &d;
        }
        pivot_row[c] = r;
        r += 1;
    }
    if let Some(i) = (r..rows).find(|&i| !b[i].is_zero()) {
        return Err(Error::Inconsistent(format!("equation {i} reduces to 0 = {}", b[i])));
    }
    Ok(pivot_row.iter().map(|&p| b[p].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> QTScalar {
        QTScalar::parse(x).unwrap()
    }

    #[test]
    fn solves_small_systems() {
        let a = vec![vec![s("1"), s("q")], vec![s("t"), s("1")], vec![s("1+t"), s("1+q")]];
        let x = vec![s("1/(1-q)"), s("t")];
        let b: Vec<QTScalar> = a.iter().map(|row| row.iter().zip(&x).map(|(u, v)| u * v).sum()).collect();
        assert_eq!(solve(a, b).unwrap(), x);
    }

    #[test]
    fn reports_inconsistency() {
        let a = vec![vec![s("1")], vec![s("1")]];
        assert!(matches!(solve(a, vec![s("1"), s("2")]), Err(Error::Inconsistent(_))));
        let a = vec![vec![s("1"), s("1")], vec![s("2"), s("2")]];
        assert!(matches!(solve(a, vec![s("1"), s("2")]), Err(Error::Degenerate(_))));
    }
}
