//! Hyperbolic volume of a link complement from a planar diagram.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dilog::bloch_wigner;
use crate::error::Result;
use crate::gluing::gluing_equations;
use crate::pd::PlanarDiagram;
use crate::solver::{newton, random_start, regular_start, Search, ShapeAssignment, ShapeStatus, SolverOptions};
use crate::triangulation::{triangulate, Triangulation};

#[derive(Debug, Clone, PartialEq)]
pub struct VolumeResult {
    /// `NaN` unless the status is a converged one.
    pub volume: f64,
    pub status: ShapeStatus,
    pub iterations: usize,
    pub residual: f64,
    pub n_tets: usize,
}

/// Sum of Bloch–Wigner values of the shapes.
pub fn volume_of_shapes(shapes: &[Complex64]) -> f64 {
    shapes.iter().map(|&z| bloch_wigner(z)).sum()
}

/// Shapes together with the triangulation they live on.
#[derive(Debug, Clone)]
pub struct Solution {
    pub triangulation: Triangulation,
    pub shapes: ShapeAssignment,
    pub result: VolumeResult,
}

/// Solves the gluing equations, retriangulating between attempts.
///
/// The first attempt uses `tri` from the regular shape. Each restart first
/// applies random 2-3 moves and simplifies, then starts from the regular
/// shape on odd attempts and from a random shape on even ones.
pub fn solve_complement(tri: &Triangulation, opts: &SolverOptions) -> Solution {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut search = Search::default();
    let mut current = tri.clone();
    let mut best_tri = tri.clone();
    let mut found = None;
    for attempt in 0..=opts.restarts {
        if attempt > 0 {
            let moves = current.len() / 2 + 4;
            current.randomize(&mut rng, moves);
        }
        let sys = gluing_equations(&current);
        let n = current.len();
        let w0 = if attempt % 2 == 0 && attempt > 0 { random_start(n, &mut rng) } else { regular_start(n) };
        let outcome = newton(&sys, w0, opts, &mut search.iterations);
        found = search.offer(outcome, attempt);
        if search.best_tag() == attempt {
            best_tri = current.clone();
        }
        if found.is_some() {
            break;
        }
    }
    let shapes = found.unwrap_or_else(|| search.finish());
    let volume = match shapes.status {
        ShapeStatus::Converged | ShapeStatus::ConvergedNonGeometric => volume_of_shapes(&shapes.shapes),
        _ => f64::NAN,
    };
    let result = VolumeResult {
        volume,
        status: shapes.status,
        iterations: shapes.iterations,
        residual: shapes.residual,
        n_tets: best_tri.len(),
    };
    Solution { triangulation: best_tri, shapes, result }
}

pub fn volume_of_triangulation(tri: &Triangulation, opts: &SolverOptions) -> VolumeResult {
    solve_complement(tri, opts).result
}

pub fn volume_of_diagram(d: &PlanarDiagram, opts: &SolverOptions) -> Result<VolumeResult> {
    let tri = triangulate(d)?;
    Ok(volume_of_triangulation(&tri, opts))
}

/// Shapes of a solution, for export.
pub fn shapes_as_pairs(sol: &ShapeAssignment) -> Vec<(f64, f64)> {
    sol.shapes.iter().map(|z| (z.re, z.im)).collect()
}
