//! Exact Gaussian elimination over the rationals.

use num_rational::BigRational;
use num_traits::Zero;

/// One solution of `M x = b` (free variables set to zero) together with the
/// rank of `M`, or `None` if the system is inconsistent.
pub fn solve(mut rows: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Option<(Vec<BigRational>, usize)> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        rhs.swap(r, k);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        rhs[r] *= &inv;
        for k in 0..rows.len() {
            if k == r || rows[k][c].is_zero() {
                continue;
            }
            let f = rows[k][c].clone();
            for j in c..ncols {
                let delta = &f * &rows[r][j];
                rows[k][j] -= delta;
            }
            let delta = &f * &rhs[r];
            rhs[k] -= delta;
        }
        pivots.push((r, c));
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rhs[r..].iter().any(|b| !b.is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for &(r, c) in &pivots {
        x[c] = rhs[r].clone();
    }
    Some((x, pivots.len()))
}
