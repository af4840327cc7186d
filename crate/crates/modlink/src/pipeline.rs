//! From `m` or a family parameter to a volume row.

use std::io::Write;
use std::ops::RangeInclusive;

use modlink_core::arithmetic::{field_summary, squarefree_up_to};
use modlink_core::dt::DtConvention;
use modlink_core::link::{AugmentedLink, TrefoilEmbedding};
use modlink_core::solver::{ShapeStatus, SolverOptions};
use modlink_core::survey::{field_link, fit, Family, FitResult};
use modlink_core::triangulation::triangulate;
use modlink_core::volume::{volume_of_triangulation, VolumeResult};
use rayon::prelude::*;

use crate::table::{sig12, SurveyRow};
use crate::{Error, Result};

/// Largest volume of an ideal tetrahedron.
pub const V_TET: f64 = 1.0149416064096536;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub solver: SolverOptions,
    pub convention: DtConvention,
    pub embedding: TrefoilEmbedding,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { solver: SolverOptions::default(), convention: DtConvention::Standard, embedding: TrefoilEmbedding::default() }
    }
}

pub fn link_volume(link: &AugmentedLink, solver: &SolverOptions) -> Result<VolumeResult> {
    Ok(volume_of_triangulation(&triangulate(&link.diagram)?, solver))
}

fn accepted_volume(r: &VolumeResult) -> Option<f64> {
    matches!(r.status, ShapeStatus::Converged | ShapeStatus::ConvergedNonGeometric).then_some(r.volume)
}

pub fn survey_row(m: i64, opts: &RunOptions) -> Result<SurveyRow> {
    let (f, _, link) = field_link(m, opts.embedding)?;
    let r = link_volume(&link, &opts.solver)?;
    let row = SurveyRow {
        n_components: link.n_components(),
        total_symbols: link.total_symbols,
        n_crossings: link.diagram.n_crossings(),
        dt_code: link.dt_code(opts.convention)?.to_string(),
        volume: accepted_volume(&r),
        status: r.status,
        iterations: r.iterations,
        residual: Some(r.residual),
        ..SurveyRow::from_field(m, &f)
    };
    Ok(row.rounded())
}

/// Field columns only, as printed by `classgroup`.
pub fn field_row(m: i64) -> Result<SurveyRow> {
    Ok(SurveyRow::from_field(m, &field_summary(m)?).rounded())
}

/// Runs `work` on a pool of `threads` workers, or the default pool size.
pub fn with_threads<T: Send>(threads: Option<usize>, work: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Threads(e.to_string()))?;
    Ok(pool.install(work))
}

/// One row per squarefree `m` in `[2, max_m]`, in increasing `m`.
pub fn survey(max_m: i64, opts: &RunOptions, threads: Option<usize>) -> Result<Vec<SurveyRow>> {
    let ms = squarefree_up_to(max_m);
    with_threads(threads, || ms.par_iter().map(|&m| survey_row(m, opts)).collect())?
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub fit: FitResult,
    pub total: usize,
    /// Rows per status, in the order of [`ShapeStatus`].
    pub counts: [(ShapeStatus, usize); 4],
}

impl FitReport {
    pub fn excluded(&self) -> usize {
        self.total - self.fit.n_points
    }
}

/// Volume against `2hR` over the rows with a volume.
pub fn fit_rows(rows: &[SurveyRow]) -> Result<FitReport> {
    let pts: Vec<(f64, f64)> = rows.iter().filter_map(|r| Some((r.total_length_paper, r.volume?))).collect();
    let fit = fit(&pts)?;
    let mut counts = [
        (ShapeStatus::Converged, 0),
        (ShapeStatus::ConvergedNonGeometric, 0),
        (ShapeStatus::Failed, 0),
        (ShapeStatus::NotHyperbolic, 0),
    ];
    for r in rows {
        if let Some(c) = counts.iter_mut().find(|c| c.0 == r.status) {
            c.1 += 1;
        }
    }
    Ok(FitReport { fit, total: rows.len(), counts })
}

pub fn write_fit<W: Write>(mut out: W, rep: &FitReport) -> std::io::Result<()> {
    writeln!(out, "slope {}", sig12(rep.fit.slope))?;
    writeln!(out, "intercept {}", sig12(rep.fit.intercept))?;
    writeln!(out, "r_squared {}", sig12(rep.fit.r_squared))?;
    writeln!(out, "n_points {}", rep.fit.n_points)?;
    for (s, n) in rep.counts {
        writeln!(out, "{} {n}", s.as_str())?;
    }
    let rate = if rep.total == 0 { 0.0 } else { rep.excluded() as f64 / rep.total as f64 };
    writeln!(out, "excluded {} of {} ({:.1}%)", rep.excluded(), rep.total, 100.0 * rate)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    /// `x(xy)ⁿ`
    XXyN,
    /// `xⁿyᵐ` for a fixed `m`
    XnYm(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyRow {
    pub n: usize,
    pub word: String,
    /// Template letters; `n + m` for `xⁿyᵐ`.
    pub length: usize,
    pub n_crossings: usize,
    pub dt_code: String,
    pub volume: Option<f64>,
    pub status: ShapeStatus,
    pub iterations: usize,
}

pub const FAMILY_COLUMNS: [&str; 8] = ["n", "word", "length", "n_crossings", "dt_code", "volume", "status", "iterations"];

pub fn family_row(pattern: Pattern, n: usize, opts: &RunOptions) -> Result<FamilyRow> {
    let fam = match pattern {
        Pattern::XXyN => Family::XXyN(n),
        Pattern::XnYm(m) => Family::XnYm(n, m),
    };
    let link = fam.link(opts.embedding)?;
    let r = link_volume(&link, &opts.solver)?;
    Ok(FamilyRow {
        n,
        word: fam.word()?.to_string(),
        length: fam.length(),
        n_crossings: link.diagram.n_crossings(),
        dt_code: link.dt_code(opts.convention)?.to_string(),
        volume: accepted_volume(&r).map(crate::table::round12),
        status: r.status,
        iterations: r.iterations,
    })
}

pub fn family(pattern: Pattern, ns: RangeInclusive<usize>, opts: &RunOptions, threads: Option<usize>) -> Result<Vec<FamilyRow>> {
    let ns: Vec<usize> = ns.collect();
    with_threads(threads, || ns.par_iter().map(|&n| family_row(pattern, n, opts)).collect())?
}

pub fn write_family<W: Write>(out: W, rows: &[FamilyRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(FAMILY_COLUMNS)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.word.clone(),
            r.length.to_string(),
            r.n_crossings.to_string(),
            r.dt_code.clone(),
            r.volume.map(sig12).unwrap_or_default(),
            r.status.as_str().to_string(),
            r.iterations.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
