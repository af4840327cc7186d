use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use modlink::pipeline::{self, Pattern, RunOptions};
use modlink::table::{self, sig12, SurveyRow, COLUMNS, FIELD_COLUMNS};
use modlink_core::arithmetic::field_summary;
use modlink_core::dt::{decode, DtCode, DtConvention};
use modlink_core::link::build_link;
use modlink_core::solver::{ShapeStatus, SolverOptions};
use modlink_core::survey::field_link;
use modlink_core::template::ordered_shifts;
use modlink_core::triangulation::triangulate;
use modlink_core::volume::solve_complement;
use modlink_core::words::{automorph, class_word, XyWord};

/// Links of closed modular geodesics and the volumes of their complements.
#[derive(Parser)]
#[command(name = "modlink", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct SolverArgs {
    /// Largest equation residual accepted as a solution.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 100)]
    max_iter: usize,
    /// Retriangulated restarts after the first attempt.
    #[arg(long, default_value_t = 25)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SolverArgs {
    fn options(self) -> SolverOptions {
        SolverOptions { tol: self.tol, max_iter: self.max_iter, restarts: self.restarts, seed: self.seed }
    }
}

#[derive(ValueEnum, Clone, Copy)]
enum Convention {
    /// Negative even label when the even passage is an over-crossing.
    Standard,
    /// Negative even label when the even passage is an under-crossing.
    Paper,
}

impl From<Convention> for DtConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Standard => DtConvention::Standard,
            Convention::Paper => DtConvention::Paper,
        }
    }
}

#[derive(ValueEnum, Clone, Copy)]
enum LinkFormat {
    Dt,
    Csv,
}

#[derive(ValueEnum, Clone, Copy)]
enum PatternArg {
    #[value(name = "x_xy_n")]
    XXyN,
    #[value(name = "xn_ym")]
    XnYm,
}

#[derive(Subcommand)]
enum Cmd {
    /// Field data for Q(√m) as one row of the survey's leading columns.
    Classgroup {
        #[arg(long)]
        m: i64,
    },
    /// One line per narrow class: reduced form, trace, canonical word.
    Word {
        #[arg(long)]
        m: i64,
    },
    /// The trefoil-augmented link of all classes of Q(√m), or of given words.
    Link {
        #[arg(long, required_unless_present = "words")]
        m: Option<i64>,
        /// Comma-separated words over {x, y}, used instead of --m.
        #[arg(long, conflicts_with = "m", value_delimiter = ',')]
        words: Vec<String>,
        #[arg(long, value_enum, default_value = "dt")]
        format: LinkFormat,
        #[arg(long, value_enum, default_value = "standard")]
        dt_convention: Convention,
    },
    /// Hyperbolic volume of the complement of a DT-coded link.
    Volume {
        #[arg(long)]
        dt: String,
        #[arg(long, value_enum, default_value = "standard")]
        dt_convention: Convention,
        #[command(flatten)]
        solver: SolverArgs,
        /// Write the triangulation behind the reported shapes as a gluing table.
        #[arg(long)]
        triangulation: Option<PathBuf>,
    },
    /// Volumes for every squarefree m up to --max-m, as CSV.
    Survey {
        #[arg(long)]
        max_m: i64,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "MODLINK_THREADS")]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value = "standard")]
        dt_convention: Convention,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Least-squares line of volume against 2hR from a survey CSV.
    Fit { csv: PathBuf },
    /// Volumes along x(xy)^n or x^n y^m.
    Family {
        #[arg(long, value_enum)]
        pattern: PatternArg,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long)]
        max_n: usize,
        /// Exponent of y for xn_ym.
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "MODLINK_THREADS")]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value = "standard")]
        dt_convention: Convention,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

fn output(path: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn run_options(solver: SolverArgs, conv: Convention) -> RunOptions {
    RunOptions { solver: solver.options(), convention: conv.into(), ..RunOptions::default() }
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    match cli.cmd {
        Cmd::Classgroup { m } => {
            let row = pipeline::field_row(m)?;
            let mut w = csv::Writer::from_writer(stdout);
            w.write_record(&COLUMNS[..FIELD_COLUMNS])?;
            w.write_record(&row.record()[..FIELD_COLUMNS])?;
            w.flush()?;
        }
        Cmd::Word { m } => {
            let f = field_summary(m)?;
            let up = f.unit_plus()?;
            for q in &f.reps {
                let trace = automorph(*q, up)?.trace().abs();
                writeln!(stdout, "({},{},{}) {trace} {}", q.a, q.b, q.c, class_word(*q, up)?)?;
            }
        }
        Cmd::Link { m, words, format, dt_convention } => {
            let link = match m {
                Some(m) => field_link(m, Default::default())?.2,
                None => {
                    let ws = words.iter().map(|w| w.parse::<XyWord>()).collect::<Result<Vec<_>, _>>()?;
                    build_link(&ordered_shifts(&ws)?, Default::default())?
                }
            };
            let dt = link.dt_code(dt_convention.into())?;
            match format {
                LinkFormat::Dt => writeln!(stdout, "{dt}")?,
                LinkFormat::Csv => {
                    let mut w = csv::Writer::from_writer(stdout);
                    w.write_record(["m", "n_components", "total_symbols", "inversions", "n_crossings", "dt_code"])?;
                    w.write_record([
                        m.map(|m| m.to_string()).unwrap_or_default(),
                        link.n_components().to_string(),
                        link.total_symbols.to_string(),
                        link.inversions.to_string(),
                        link.diagram.n_crossings().to_string(),
                        dt.to_string(),
                    ])?;
                    w.flush()?;
                }
            }
        }
        Cmd::Volume { dt, dt_convention, solver, triangulation } => {
            let code: DtCode = dt.parse()?;
            let diagram = decode(&code, dt_convention.into())?;
            let sol = solve_complement(&triangulate(&diagram)?, &solver.options());
            let r = &sol.result;
            writeln!(stdout, "status {}", r.status.as_str())?;
            if matches!(r.status, ShapeStatus::Converged | ShapeStatus::ConvergedNonGeometric) {
                writeln!(stdout, "volume {}", sig12(r.volume))?;
            }
            if r.residual.is_finite() {
                writeln!(stdout, "residual {}", sig12(r.residual))?;
            }
            writeln!(stdout, "iterations {}", r.iterations)?;
            writeln!(stdout, "tetrahedra {}", r.n_tets)?;
            if let Some(p) = triangulation {
                std::fs::write(&p, sol.triangulation.to_text()).with_context(|| format!("writing {}", p.display()))?;
            }
        }
        Cmd::Survey { max_m, out, threads, dt_convention, solver } => {
            if max_m < 2 {
                bail!("--max-m must be at least 2");
            }
            let rows = pipeline::survey(max_m, &run_options(solver, dt_convention), threads)?;
            table::write_rows(output(&out)?, &rows)?;
            let failed = rows.iter().filter(|r| !r.accepted()).count();
            eprintln!("{} fields, {} without a volume", rows.len(), failed);
        }
        Cmd::Fit { csv } => {
            let rows: Vec<SurveyRow> =
                table::read_rows(File::open(&csv).with_context(|| format!("opening {}", csv.display()))?)?;
            pipeline::write_fit(stdout, &pipeline::fit_rows(&rows)?)?;
        }
        Cmd::Family { pattern, min_n, max_n, m, out, threads, dt_convention, solver } => {
            let pattern = match pattern {
                PatternArg::XXyN => Pattern::XXyN,
                PatternArg::XnYm => Pattern::XnYm(m),
            };
            let rows = pipeline::family(pattern, min_n..=max_n, &run_options(solver, dt_convention), threads)?;
            pipeline::write_family(output(&out)?, &rows)?;
        }
    }
    Ok(())
}
