//! One line per acceptance criterion; exits nonzero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use modlink::pipeline::{family, survey, Pattern, RunOptions};
use modlink_core::arithmetic::{field_summary, squarefree_up_to};
use modlink_core::dt::{decode, DtCode, DtConvention};
use modlink_core::gluing::gluing_equations;
use modlink_core::link::TrefoilEmbedding;
use modlink_core::solver::{solve_shapes, ShapeStatus, SolverOptions};
use modlink_core::survey::{field_link, fit, Family};
use modlink_core::template::{lorenz_inversions, ordered_shifts};
use modlink_core::triangulation::figure_eight_census;
use modlink_core::volume::{volume_of_diagram, volume_of_shapes};
use modlink_core::words::{automorph, class_word, word_to_matrix, Letter, XyWord};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn arithmetic_suite() -> Check {
    let mut checked = 0;
    for m in (2..=300).filter(|&m| common::squarefree(m)) {
        let s = field_summary(m).map_err(|e| format!("m={m}: {e}"))?;
        let (t, u, norm) = common::cf_unit(m);
        let (hp, h) = common::gauss_cycles(s.disc.value());
        let reg = ((t as f64 + u as f64 * (s.disc.value() as f64).sqrt()) / 2.0).ln();
        if (s.unit.t, s.unit.u, s.unit.norm) != (t, u, norm)
            || (s.h_plus as usize, s.h as usize) != (hp, h)
            || (s.unit.regulator - reg).abs() > 1e-9 * reg
        {
            return Err(format!("mismatch at m={m}"));
        }
        checked += 1;
    }
    if checked != squarefree_up_to(300).len() {
        return Err("squarefree enumeration differs from the oracle".into());
    }
    Ok(format!("{checked} fields, zero mismatches"))
}

fn narrow_law() -> Check {
    let ms = squarefree_up_to(1000);
    let mut split = [0, 0];
    for &m in &ms {
        let s = field_summary(m).map_err(|e| format!("m={m}: {e}"))?;
        let (_, _, norm) = common::cf_unit(m);
        let (hp, h) = common::gauss_cycles(s.disc.value());
        let expect = if norm == -1 { h } else { 2 * h };
        if hp != expect || (s.h_plus as usize, s.h as usize, s.unit.norm) != (hp, h, norm) {
            return Err(format!("m={m}: h+={hp} h={h} norm={norm}"));
        }
        split[usize::from(norm == 1)] += 1;
    }
    Ok(format!("{} fields, {} with norm -1, {} with norm +1", ms.len(), split[0], split[1]))
}

fn word_roundtrip() -> Check {
    let mut words = 0;
    for m in squarefree_up_to(300) {
        let s = field_summary(m).map_err(|e| e.to_string())?;
        let up = s.unit_plus().map_err(|e| e.to_string())?;
        for q in &s.reps {
            let w = class_word(*q, up).map_err(|e| format!("m={m} {q}: {e}"))?;
            let tr = automorph(*q, up).map_err(|e| e.to_string())?.trace().abs();
            let wt = word_to_matrix(&w).map_err(|e| e.to_string())?.trace().abs();
            if wt != tr || !w.is_primitive() || w.count(Letter::X) == 0 || w.count(Letter::Y) == 0 {
                return Err(format!("m={m} form {q}: word {w}"));
            }
            words += 1;
        }
    }
    Ok(format!("{words} narrow classes"))
}

/// Evens are `±{2, …, 2n}` each once.
fn dt_valid(code: &DtCode) -> bool {
    let mut seen: Vec<i64> = code.components.iter().flatten().map(|e| e.abs()).collect();
    seen.sort_unstable();
    seen.iter().enumerate().all(|(i, &e)| e == 2 * (i as i64 + 1))
}

fn diagram_combinatorics() -> Check {
    let mut cases: Vec<(String, Vec<XyWord>)> = Vec::new();
    for m in squarefree_up_to(300) {
        let (_, words, _) = field_link(m, TrefoilEmbedding::default()).map_err(|e| format!("m={m}: {e}"))?;
        cases.push((format!("m={m}"), words));
    }
    for n in 1..=8 {
        cases.push((format!("x(xy)^{n}"), vec![Family::XXyN(n).word().unwrap()]));
    }
    for n in 1..=10 {
        cases.push((format!("x^{n}y"), vec![Family::XnYm(n, 1).word().unwrap()]));
    }
    for (name, words) in &cases {
        let p = ordered_shifts(words).map_err(|e| format!("{name}: {e}"))?;
        let link = modlink_core::link::build_link(&p, TrefoilEmbedding::default()).map_err(|e| format!("{name}: {e}"))?;
        let l: usize = words.iter().map(XyWord::len).sum();
        let n = link.diagram.n_crossings();
        if n != lorenz_inversions(&p) + 2 * l + 3 || link.n_components() != words.len() + 1 {
            return Err(format!("{name}: {n} crossings"));
        }
        for conv in [DtConvention::Standard, DtConvention::Paper] {
            let code = link.dt_code(conv).map_err(|e| format!("{name}: {e}"))?;
            let parsed: DtCode = code.to_string().parse().map_err(|e| format!("{name}: {e}"))?;
            if parsed != code || !dt_valid(&code) || code.n_crossings() != n || code.components.len() != words.len() + 1 {
                return Err(format!("{name}: invalid DT {code}"));
            }
        }
    }
    Ok(format!("{} links", cases.len()))
}

fn volume_fixtures() -> Check {
    let opts = SolverOptions::default();
    let s = solve_shapes(&gluing_equations(&figure_eight_census()), &opts);
    let fig8 = volume_of_shapes(&s.shapes);
    if s.status != ShapeStatus::Converged || (fig8 - 2.029883212819).abs() > 1e-9 {
        return Err(format!("figure-eight {fig8} {:?}", s.status));
    }
    let dt = |s: &str| decode(&s.parse().unwrap(), DtConvention::Standard).unwrap();
    let wh = volume_of_diagram(&dt("DT:[(6,8),(2,10,4)]"), &opts).map_err(|e| e.to_string())?;
    if wh.status != ShapeStatus::Converged || (wh.volume - 3.663862376709).abs() > 1e-6 {
        return Err(format!("Whitehead {} {:?}", wh.volume, wh.status));
    }
    for code in ["DT:[(4,6,2)]", "DT:[(6,8),(2,4)]"] {
        let r = volume_of_diagram(&dt(code), &opts).map_err(|e| e.to_string())?;
        if r.status != ShapeStatus::NotHyperbolic || r.volume.is_finite() {
            return Err(format!("{code}: {:?} {}", r.status, r.volume));
        }
    }
    Ok(format!("figure-eight {fig8:.12}, Whitehead {:.12}, torus links not hyperbolic", wh.volume))
}

fn family_volumes(pattern: Pattern, ns: std::ops::RangeInclusive<usize>) -> Result<Vec<f64>, String> {
    let rows = family(pattern, ns, &RunOptions::default(), None).map_err(|e| e.to_string())?;
    rows.iter().map(|r| r.volume.ok_or_else(|| format!("{}: {}", r.word, r.status.as_str()))).collect()
}

fn xxy_limit() -> Check {
    let v = family_volumes(Pattern::XXyN, 2..=8)?;
    let shown: Vec<String> = v.iter().map(|x| format!("{x:.4}")).collect();
    if v.windows(2).any(|w| w[1] < w[0] - 1e-6) {
        return Err(format!("not monotone: {}", shown.join(" ")));
    }
    if !(14.0..=15.5).contains(&v[6]) {
        return Err(format!("n=8 volume {:.6}", v[6]));
    }
    Ok(format!("n=2..8: {}", shown.join(" ")))
}

fn xny_bounded() -> Check {
    let v = family_volumes(Pattern::XnYm(1), 1..=10)?;
    let tail = &v[4..];
    let spread = tail.iter().cloned().fold(f64::MIN, f64::max) - tail.iter().cloned().fold(f64::MAX, f64::min);
    let lengths: Vec<usize> = (1..=10).map(|n| Family::XnYm(n, 1).length()).collect();
    if spread >= 1.0 || lengths.windows(2).any(|w| w[1] != w[0] + 1) {
        return Err(format!("spread {spread:.6} over n=5..10"));
    }
    Ok(format!("spread {spread:.4} over n=5..10, volumes {:.4}..{:.4}", v[0], v[9]))
}

fn volume_length_fit() -> Check {
    let rows = survey(120, &RunOptions::default(), None).map_err(|e| e.to_string())?;
    let pts: Vec<(f64, f64)> = rows.iter().filter_map(|r| Some((r.total_length_paper, r.volume?))).collect();
    let rate = pts.len() as f64 / rows.len() as f64;
    let f = fit(&pts).map_err(|e| e.to_string())?;
    let line = format!(
        "{}/{} converged, slope {:.4}, intercept {:.4}, R² {:.4}",
        pts.len(),
        rows.len(),
        f.slope,
        f.intercept,
        f.r_squared
    );
    if rate >= 0.8 && (2.9..=3.6).contains(&f.slope) && f.r_squared >= 0.97 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn determinism() -> Check {
    let run = |args: &[&str], threads: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_modlink"))
            .args(args)
            .env("MODLINK_THREADS", threads)
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(String::from_utf8_lossy(&out.stderr).into_owned());
        }
        Ok(out.stdout)
    };
    let commands: [&[&str]; 5] = [
        &["survey", "--max-m", "60", "--seed", "7"],
        &["family", "--pattern", "x_xy_n", "--max-n", "5"],
        &["volume", "--dt", "DT:[(6,8),(2,10,4)]", "--seed", "3"],
        &["link", "--m", "79", "--format", "csv"],
        &["classgroup", "--m", "223"],
    ];
    for args in commands {
        if run(args, "1")? != run(args, "4")? {
            return Err(format!("{} output differs between runs", args.join(" ")));
        }
    }
    Ok(format!("{} commands byte-identical across runs and thread counts", commands.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("arithmetic suite", arithmetic_suite, Duration::from_secs(10)),
        ("narrow class law", narrow_law, Duration::from_secs(30)),
        ("word roundtrip", word_roundtrip, Duration::MAX),
        ("diagram combinatorics", diagram_combinatorics, Duration::MAX),
        ("volume fixtures", volume_fixtures, Duration::MAX),
        ("x(xy)^n limit", xxy_limit, Duration::from_secs(300)),
        ("x^n y bounded", xny_bounded, Duration::MAX),
        ("volume against length", volume_length_fit, Duration::from_secs(1800)),
        ("determinism", determinism, Duration::MAX),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let t = Instant::now();
        let mut result = check();
        let took = t.elapsed();
        if took > budget {
            result = Err(format!("{} (over the {:?} budget)", result.unwrap_or_else(|e| e), budget));
        }
        match result {
            Ok(detail) => println!("PASS {name}: {detail} [{:.1}s]", took.as_secs_f64()),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} [{:.1}s]", took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
