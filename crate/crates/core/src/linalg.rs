//! Sparse complex least squares.

use alloc::vec::Vec;

use faer::prelude::*;
use faer::sparse::{SparseColMat, Triplet};
use num_complex::Complex64;

/// A matrix given by its nonzero entries; repeated positions add up.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, Complex64)>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: Vec::new() }
    }

    pub fn push(&mut self, r: usize, c: usize, v: Complex64) {
        self.entries.push((r, c, v));
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = alloc::vec![Complex64::new(0.0, 0.0); self.rows];
        for &(r, c, v) in &self.entries {
            y[r] += v * x[c];
        }
        y
    }
}

/// Minimizes `‖A x − b‖₂` by sparse QR for `A` with at least as many rows
/// as columns. Returns `None` when `A` is numerically rank deficient.
pub fn least_squares(a: &SparseMatrix, b: &[Complex64]) -> Option<Vec<Complex64>> {
    assert!(a.rows >= a.cols && b.len() == a.rows);
    let mut entries = a.entries.clone();
    entries.sort_unstable_by_key(|&(r, c, _)| (c, r));
    let mut triplets: Vec<Triplet<usize, usize, Complex64>> = Vec::with_capacity(entries.len());
    for (r, c, v) in entries {
        match triplets.last_mut() {
            Some(t) if (t.row, t.col) == (r, c) => t.val += v,
            _ => triplets.push(Triplet::new(r, c, v)),
        }
    }
    let m = SparseColMat::<usize, Complex64>::try_new_from_triplets(a.rows, a.cols, &triplets).ok()?;
    let qr = m.sp_qr().ok()?;
    let rhs = Mat::<Complex64>::from_fn(a.rows, 1, |i, _| b[i]);
    let x = qr.solve_lstsq(&rhs);
    let x: Vec<Complex64> = (0..a.cols).map(|i| x[(i, 0)]).collect();
    let scale = b.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite() || z.norm() > 1e12 * scale) {
        return None;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_square_and_overdetermined() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let mut a = SparseMatrix::new(3, 2);
        a.push(0, 0, c(1.0, 1.0));
        a.push(1, 0, c(0.0, 2.0));
        a.push(2, 0, c(0.5, 0.0));
        a.push(2, 0, c(0.5, 0.0));
        a.push(0, 1, c(2.0, 0.0));
        a.push(1, 1, c(1.0, -1.0));
        let x_true = [c(0.5, -1.0), c(2.0, 0.25)];
        let b = a.mul_vec(&x_true);
        let x = least_squares(&a, &b).unwrap();
        for (u, v) in x.iter().zip(&x_true) {
            assert!((u - v).norm() < 1e-12);
        }
        let mut sing = SparseMatrix::new(2, 2);
        sing.push(0, 0, c(1.0, 0.0));
        sing.push(1, 0, c(1.0, 0.0));
        assert!(least_squares(&sing, &[c(1.0, 0.0), c(0.0, 0.0)]).is_none());
    }
}
