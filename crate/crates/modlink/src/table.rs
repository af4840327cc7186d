//! Survey rows and their CSV form.

use std::io::{Read, Write};

use modlink_core::arithmetic::FieldSummary;
use modlink_core::solver::ShapeStatus;

use crate::{Error, Result};

pub const COLUMNS: [&str; 16] = [
    "m",
    "D",
    "h",
    "h_plus",
    "unit_norm",
    "regulator",
    "total_length_paper",
    "total_length_geom",
    "n_components",
    "total_symbols",
    "n_crossings",
    "dt_code",
    "volume",
    "status",
    "iterations",
    "residual",
];

/// The leading columns that depend only on the field.
pub const FIELD_COLUMNS: usize = 8;

/// `x` to 12 significant digits; scientific notation outside `[1e-4, 1e15)`.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..15).contains(&exp) {
        let s = format!("{x:.11e}");
        let (mant, e) = s.split_once('e').unwrap_or((&s, "0"));
        let mant = if mant.contains('.') { mant.trim_end_matches('0').trim_end_matches('.') } else { mant };
        return format!("{mant}e{e}");
    }
    let digits = (11 - exp).max(0) as usize;
    let s = format!("{x:.digits$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// The double that [`sig12`] output reads back as.
pub fn round12(x: f64) -> f64 {
    sig12(x).parse().unwrap_or(x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurveyRow {
    pub m: i64,
    pub d: i64,
    pub h: u32,
    pub h_plus: u32,
    pub unit_norm: i8,
    pub regulator: f64,
    pub total_length_paper: f64,
    pub total_length_geom: f64,
    pub n_components: usize,
    pub total_symbols: usize,
    pub n_crossings: usize,
    pub dt_code: String,
    /// Present exactly for the two converged statuses.
    pub volume: Option<f64>,
    pub status: ShapeStatus,
    pub iterations: usize,
    pub residual: Option<f64>,
}

impl SurveyRow {
    /// Field columns filled from `f`; link and volume columns empty.
    pub fn from_field(m: i64, f: &FieldSummary) -> Self {
        Self {
            m,
            d: f.disc.value(),
            h: f.h,
            h_plus: f.h_plus,
            unit_norm: f.unit.norm,
            regulator: f.unit.regulator,
            total_length_paper: f.total_length_paper,
            total_length_geom: f.total_length_geom,
            n_components: 0,
            total_symbols: 0,
            n_crossings: 0,
            dt_code: String::new(),
            volume: None,
            status: ShapeStatus::Failed,
            iterations: 0,
            residual: None,
        }
    }

    /// Rounds every float to what the CSV stores, so that reading back a
    /// written row gives the row itself.
    pub fn rounded(mut self) -> Self {
        self.regulator = round12(self.regulator);
        self.total_length_paper = round12(self.total_length_paper);
        self.total_length_geom = round12(self.total_length_geom);
        self.volume = self.volume.filter(|v| v.is_finite()).map(round12);
        self.residual = self.residual.filter(|v| v.is_finite()).map(round12);
        self
    }

    pub fn accepted(&self) -> bool {
        self.volume.is_some()
    }

    pub fn record(&self) -> Vec<String> {
        let opt = |x: Option<f64>| x.map(sig12).unwrap_or_default();
        vec![
            self.m.to_string(),
            self.d.to_string(),
            self.h.to_string(),
            self.h_plus.to_string(),
            self.unit_norm.to_string(),
            sig12(self.regulator),
            sig12(self.total_length_paper),
            sig12(self.total_length_geom),
            self.n_components.to_string(),
            self.total_symbols.to_string(),
            self.n_crossings.to_string(),
            self.dt_code.clone(),
            opt(self.volume),
            self.status.as_str().to_string(),
            self.iterations.to_string(),
            opt(self.residual),
        ]
    }

    pub fn from_record(r: &csv::StringRecord) -> Result<Self> {
        let line = r.position().map_or(0, |p| p.line());
        let get = |i: usize| r.get(i).unwrap_or("");
        fn parse<T: std::str::FromStr>(line: u64, r: &csv::StringRecord, i: usize) -> Result<T> {
            let v = r.get(i).unwrap_or("");
            v.parse().map_err(|_| Error::Value { line, column: COLUMNS[i], value: v.to_string() })
        }
        let opt = |i: usize| -> Result<Option<f64>> {
            if get(i).is_empty() { Ok(None) } else { parse(line, r, i).map(Some) }
        };
        if r.len() != COLUMNS.len() {
            return Err(Error::Value { line, column: "row", value: format!("{} fields", r.len()) });
        }
        Ok(Self {
            m: parse(line, r, 0)?,
            d: parse(line, r, 1)?,
            h: parse(line, r, 2)?,
            h_plus: parse(line, r, 3)?,
            unit_norm: parse(line, r, 4)?,
            regulator: parse(line, r, 5)?,
            total_length_paper: parse(line, r, 6)?,
            total_length_geom: parse(line, r, 7)?,
            n_components: parse(line, r, 8)?,
            total_symbols: parse(line, r, 9)?,
            n_crossings: parse(line, r, 10)?,
            dt_code: get(11).to_string(),
            volume: opt(12)?,
            status: ShapeStatus::parse(get(13))
                .ok_or_else(|| Error::Value { line, column: "status", value: get(13).to_string() })?,
            iterations: parse(line, r, 14)?,
            residual: opt(15)?,
        })
    }
}

pub fn write_rows<W: Write>(out: W, rows: &[SurveyRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COLUMNS)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows<R: Read>(input: R) -> Result<Vec<SurveyRow>> {
    let mut rd = csv::Reader::from_reader(input);
    if rd.headers()?.iter().ne(COLUMNS) {
        return Err(Error::Header);
    }
    rd.records().map(|r| SurveyRow::from_record(&r?)).collect()
}
