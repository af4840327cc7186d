//! Per-field link assembly, the volume/length fit and the word families.

use alloc::vec::Vec;

use crate::arithmetic::{field_summary, FieldSummary};
use crate::link::{build_link, AugmentedLink, TrefoilEmbedding};
use crate::template::ordered_shifts;
use crate::words::{class_word, Letter, XyWord};
use crate::{Error, Result};

/// The field data for `m` and the link of all its narrow-class geodesics.
pub fn field_link(m: i64, emb: TrefoilEmbedding) -> Result<(FieldSummary, Vec<XyWord>, AugmentedLink)> {
    let f = field_summary(m)?;
    let up = f.unit_plus()?;
    let words = f.reps.iter().map(|q| class_word(*q, up)).collect::<Result<Vec<_>>>()?;
    let link = build_link(&ordered_shifts(&words)?, emb)?;
    Ok((f, words, link))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

/// Ordinary least squares of `y` against `x`.
pub fn fit(points: &[(f64, f64)]) -> Result<FitResult> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewPoints(n));
    }
    let nf = n as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 {
        return Err(Error::ConstantAbscissa);
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(FitResult { slope, intercept: my - slope * mx, r_squared, n_points: n })
}

/// The one-word families of bounded and of converging volume.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `xⁿyᵐ`
    XnYm(usize, usize),
    /// `x(xy)ⁿ`
    XXyN(usize),
}

impl Family {
    pub fn word(&self) -> Result<XyWord> {
        let mut w = Vec::new();
        match *self {
            Family::XnYm(n, m) => {
                w.extend(core::iter::repeat_n(Letter::X, n));
                w.extend(core::iter::repeat_n(Letter::Y, m));
            }
            Family::XXyN(n) => {
                w.push(Letter::X);
                for _ in 0..n {
                    w.extend([Letter::X, Letter::Y]);
                }
            }
        }
        XyWord::new(w)
    }

    /// Letters on the template; for `xⁿyᵐ` this is the crossing proxy `n + m`.
    pub fn length(&self) -> usize {
        match *self {
            Family::XnYm(n, m) => n + m,
            Family::XXyN(n) => 2 * n + 1,
        }
    }

    pub fn link(&self, emb: TrefoilEmbedding) -> Result<AugmentedLink> {
        build_link(&ordered_shifts(&[self.word()?])?, emb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collinear_fit_is_exact() {
        let pts: Vec<_> = (0..10).map(|i| (i as f64 * 0.7, 3.0 * i as f64 * 0.7 + 1.0)).collect();
        let f = fit(&pts).unwrap();
        assert!((f.slope - 3.0).abs() < 1e-12);
        assert!((f.intercept - 1.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(f.n_points, 10);
        assert!(fit(&pts[..1]).is_err());
    }

    #[test]
    fn family_words() {
        assert_eq!(Family::XnYm(1, 1).word().unwrap(), "xy".parse().unwrap());
        assert_eq!(Family::XXyN(2).word().unwrap(), "xxyxy".parse().unwrap());
        assert!(Family::XnYm(3, 0).link(TrefoilEmbedding::default()).is_err());
        let l = Family::XnYm(3, 2).link(TrefoilEmbedding::default()).unwrap();
        assert_eq!(l.n_components(), 2);
        assert_eq!(l.diagram.n_crossings(), l.inversions + 2 * 5 + 3);
    }

    #[test]
    fn field_link_components() {
        let (f, words, l) = field_link(2, TrefoilEmbedding::default()).unwrap();
        assert_eq!((f.h, f.h_plus), (1, 1));
        assert_eq!(words.len(), 1);
        assert_eq!(l.n_components(), 2);
    }
}
