//! Newton's method on the logarithmic gluing equations.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dilog::bloch_wigner;
use crate::gluing::{Equation, GluingSystem};
use crate::linalg::{least_squares, SparseMatrix};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Convergence threshold on the largest equation residual.
    pub tol: f64,
    pub max_iter: usize,
    /// Random restarts after the initial regular-shape start.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { tol: 1e-10, max_iter: 100, restarts: 25, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeStatus {
    /// All shapes have positive imaginary part.
    Converged,
    /// A solution with some non-positive shapes.
    ConvergedNonGeometric,
    Failed,
    /// Every start degenerated or gave zero volume.
    NotHyperbolic,
}

impl ShapeStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ShapeStatus::Converged => "converged",
            ShapeStatus::ConvergedNonGeometric => "converged_nongeometric",
            ShapeStatus::Failed => "failed",
            ShapeStatus::NotHyperbolic => "not_hyperbolic",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Self::Converged, Self::ConvergedNonGeometric, Self::Failed, Self::NotHyperbolic]
            .into_iter()
            .find(|x| x.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeAssignment {
    pub shapes: Vec<Complex64>,
    pub status: ShapeStatus,
    /// Newton iterations summed over all starts tried.
    pub iterations: usize,
    pub residual: f64,
}

const DEGENERATE: f64 = 1e-8;
/// Shapes flatter than this count as non-geometric.
const GEOMETRIC: f64 = 1e-9;

pub fn is_degenerate(z: Complex64) -> bool {
    z.norm() < DEGENERATE || (z - 1.0).norm() < DEGENERATE || z.norm() > 1.0 / DEGENERATE
}

/// `log z, log z', log z''` and their derivatives in `w = log z`.
///
/// Logarithms follow the iteration continuously: `w` is never reduced,
/// `log(1 − z)` takes the branch nearest `arg1`, and the third is fixed by
/// `log z + log z' + log z'' = iπ`.
fn logs(w: Complex64, arg1: f64) -> ([Complex64; 3], [Complex64; 3]) {
    let z = w.exp();
    let one = Complex64::new(1.0, 0.0);
    let mut m = (one - z).ln();
    m.im += 2.0 * PI * libm::round((arg1 - m.im) / (2.0 * PI));
    let l1 = -m;
    let l2 = Complex64::new(0.0, PI) - w - l1;
    ([w, l1, l2], [one, z / (one - z), one / (z - one)])
}

struct Evaluation {
    residual: Vec<Complex64>,
    /// `arg(1 − z)` on the branches used, the reference for the next step.
    arg1: Vec<f64>,
    /// Every tetrahedron has all three angles in `(0, π)`.
    geometric: bool,
    max_abs: f64,
    norm2: f64,
}

fn evaluate(sys: &GluingSystem, w: &[Complex64], arg1: &[f64], jac: Option<&mut SparseMatrix>) -> Evaluation {
    let lg: Vec<_> = w.iter().zip(arg1).map(|(&x, &a)| logs(x, a)).collect();
    let n_edges = sys.edges.len();
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let mut residual = Vec::with_capacity(n_edges + sys.cusps.len());
    let row = |eq: &Equation| -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for (t, c) in &eq.terms {
            for k in 0..3 {
                if c[k] != 0 {
                    s += lg[*t].0[k] * c[k] as f64;
                }
            }
        }
        s
    };
    for eq in &sys.edges {
        residual.push(row(eq) - two_pi_i * eq.rhs as f64);
    }
    for eq in &sys.cusps {
        residual.push(row(eq));
    }
    if let Some(j) = jac {
        j.entries.clear();
        for (r, eq) in sys.edges.iter().chain(&sys.cusps).enumerate() {
            for (t, c) in &eq.terms {
                let d: Complex64 = (0..3).map(|k| lg[*t].1[k] * c[k] as f64).sum();
                j.push(r, *t, d);
            }
        }
    }
    let geometric = lg.iter().all(|(l, _)| l.iter().all(|x| x.im > GEOMETRIC && x.im < PI - GEOMETRIC));
    let max_abs = residual.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let norm2 = residual.iter().map(|z| z.norm_sqr()).sum();
    let arg1 = lg.iter().map(|(l, _)| -l[1].im).collect();
    Evaluation { residual, arg1, geometric, max_abs, norm2 }
}

/// Result of one Newton run.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    /// Shapes, largest residual, and whether every angle lies in `(0, π)`.
    Solved(Vec<Complex64>, f64, bool),
    Degenerate,
    Stalled,
}

/// Damped Gauss–Newton from log-shapes `w`, counting iterations in `iters`.
pub fn newton(sys: &GluingSystem, mut w: Vec<Complex64>, opts: &SolverOptions, iters: &mut usize) -> Outcome {
    let n = sys.n_tets;
    let m = sys.edges.len() + sys.cusps.len();
    let mut jac = SparseMatrix::new(m, n);
    let arg1: Vec<f64> = w.iter().map(|x| (1.0 - x.exp()).arg()).collect();
    let mut ev = evaluate(sys, &w, &arg1, Some(&mut jac));
    for _ in 0..opts.max_iter {
        if ev.max_abs < opts.tol {
            break;
        }
        *iters += 1;
        let rhs: Vec<Complex64> = ev.residual.iter().map(|r| -r).collect();
        let Some(step) = least_squares(&jac, &rhs) else {
            return Outcome::Stalled;
        };
        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..30 {
            let trial: Vec<Complex64> = w.iter().zip(&step).map(|(a, d)| a + d * lambda).collect();
            let e = evaluate(sys, &trial, &ev.arg1, None);
            if e.norm2.is_finite() && e.norm2 < ev.norm2 {
                accepted = Some((trial, e.arg1));
                break;
            }
            lambda *= 0.5;
        }
        let Some((next, arg1)) = accepted else {
            return Outcome::Stalled;
        };
        w = next;
        if w.iter().any(|&x| is_degenerate(x.exp())) {
            return Outcome::Degenerate;
        }
        ev = evaluate(sys, &w, &arg1, Some(&mut jac));
    }
    if ev.max_abs < opts.tol {
        Outcome::Solved(w.iter().map(|x| x.exp()).collect(), ev.max_abs, ev.geometric)
    } else if w.iter().any(|&x| is_degenerate(x.exp())) {
        Outcome::Degenerate
    } else {
        Outcome::Stalled
    }
}

/// Log-shapes of the regular ideal tetrahedron.
pub fn regular_start(n: usize) -> Vec<Complex64> {
    vec![Complex64::new(0.0, PI / 3.0); n]
}

/// Arguments uniform in `(0, π)`, log-moduli uniform in `[−1, 1]`.
pub fn random_start<R: Rng>(n: usize, rng: &mut R) -> Vec<Complex64> {
    (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(0.0..PI))).collect()
}

/// Bookkeeping across Newton runs: the first geometric solution wins,
/// otherwise the non-geometric solution of largest volume.
#[derive(Debug, Clone, Default)]
pub struct Search {
    pub iterations: usize,
    best: Option<(Vec<Complex64>, f64, f64)>,
    /// Tag of the run that produced `best`.
    best_tag: usize,
    stalled: bool,
}

impl Search {
    /// Records a run; returns the assignment when it is geometric.
    pub fn offer(&mut self, outcome: Outcome, tag: usize) -> Option<ShapeAssignment> {
        match outcome {
            Outcome::Solved(z, res, geometric) => {
                if z.iter().any(|&x| is_degenerate(x)) {
                    return None;
                }
                if geometric {
                    self.best_tag = tag;
                    return Some(ShapeAssignment {
                        shapes: z,
                        status: ShapeStatus::Converged,
                        iterations: self.iterations,
                        residual: res,
                    });
                }
                let vol: f64 = z.iter().map(|&x| bloch_wigner(x)).sum();
                if self.best.as_ref().is_none_or(|b| vol > b.2) {
                    self.best = Some((z, res, vol));
                    self.best_tag = tag;
                }
            }
            Outcome::Degenerate => {}
            Outcome::Stalled => self.stalled = true,
        }
        None
    }

    /// Tag of the run behind the last returned or best solution.
    pub fn best_tag(&self) -> usize {
        self.best_tag
    }

    /// Verdict once every run has been offered. Every run degenerating, or
    /// the best solution having no volume, means no hyperbolic structure
    /// was found on this triangulation.
    pub fn finish(self) -> ShapeAssignment {
        let iterations = self.iterations;
        match self.best {
            Some((z, res, vol)) if vol > 1e-6 => {
                ShapeAssignment { shapes: z, status: ShapeStatus::ConvergedNonGeometric, iterations, residual: res }
            }
            Some((z, res, _)) => ShapeAssignment { shapes: z, status: ShapeStatus::NotHyperbolic, iterations, residual: res },
            None => ShapeAssignment {
                shapes: Vec::new(),
                status: if self.stalled { ShapeStatus::Failed } else { ShapeStatus::NotHyperbolic },
                iterations,
                residual: f64::NAN,
            },
        }
    }
}

/// Solve for the complete hyperbolic structure on a fixed triangulation.
///
/// The first start puts every tetrahedron at the regular shape; further
/// starts come from [`random_start`].
pub fn solve_shapes(sys: &GluingSystem, opts: &SolverOptions) -> ShapeAssignment {
    let n = sys.n_tets;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut search = Search::default();
    for start in 0..=opts.restarts {
        let w0 = if start == 0 { regular_start(n) } else { random_start(n, &mut rng) };
        let outcome = newton(sys, w0, opts, &mut search.iterations);
        if let Some(found) = search.offer(outcome, start) {
            return found;
        }
    }
    search.finish()
}
