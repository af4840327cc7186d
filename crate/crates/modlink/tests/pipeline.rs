use modlink::pipeline::{self, family, fit_rows, survey, survey_row, Pattern, RunOptions, V_TET};
use modlink::table::{read_rows, round12, write_rows, SurveyRow};
use modlink_core::dt::{decode, encode, DtCode, DtConvention};
use modlink_core::pd::PlanarDiagram;
use modlink_core::solver::ShapeStatus;
use modlink_core::survey::field_link;
use modlink_core::volume::volume_of_diagram;
use proptest::prelude::*;

#[test]
fn small_survey() {
    let rows = survey(10, &RunOptions::default(), Some(2)).unwrap();
    assert_eq!(rows.iter().map(|r| r.m).collect::<Vec<_>>(), vec![2, 3, 5, 6, 7, 10]);
    let r2 = &rows[0];
    assert_eq!((r2.h, r2.h_plus, r2.n_components), (1, 1, 2));
    for r in &rows {
        assert_eq!(r.n_components as u32, r.h_plus + 1, "m={}", r.m);
        assert_eq!(r.status, ShapeStatus::Converged, "m={}", r.m);
        let v = r.volume.unwrap();
        assert!(v > 0.0 && v <= 4.0 * r.n_crossings as f64 * V_TET);
        assert!(r.residual.unwrap() < 1e-10);
        assert!(r.dt_code.parse::<DtCode>().unwrap().is_valid());
    }
    let mut buf = Vec::new();
    write_rows(&mut buf, &rows).unwrap();
    assert_eq!(read_rows(buf.as_slice()).unwrap(), rows);
}

#[test]
fn thread_count_does_not_change_rows() {
    let a = survey(30, &RunOptions::default(), Some(1)).unwrap();
    let b = survey(30, &RunOptions::default(), Some(3)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn dt_volume_matches_row() {
    for m in [2, 5, 13, 15] {
        let row = survey_row(m, &RunOptions::default()).unwrap();
        let d = decode(&row.dt_code.parse().unwrap(), DtConvention::Standard).unwrap();
        let v = volume_of_diagram(&d, &Default::default()).unwrap().volume;
        assert!((v - row.volume.unwrap()).abs() < 1e-6, "m={m}: {v} vs {:?}", row.volume);
    }
}

fn rotated(d: &PlanarDiagram, k: usize) -> PlanarDiagram {
    let comps = d
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut c = c.clone();
            let s = (k * (i + 1)) % c.len();
            c.rotate_left(s);
            c
        })
        .collect();
    PlanarDiagram::new(d.crossings.clone(), comps).unwrap()
}

#[test]
fn volume_ignores_dt_start_and_component_order() {
    for m in [2, 3, 10] {
        let (_, _, link) = field_link(m, Default::default()).unwrap();
        let base = volume_of_diagram(&link.diagram, &Default::default()).unwrap().volume;
        for k in [1, 3] {
            let d = rotated(&link.diagram, k);
            let mut order: Vec<usize> = (0..d.components.len()).collect();
            order.reverse();
            let code = encode(&d, &order, DtConvention::Standard).unwrap();
            let back = decode(&code, DtConvention::Standard).unwrap();
            let v = volume_of_diagram(&back, &Default::default()).unwrap().volume;
            assert!((v - base).abs() < 1e-6, "m={m} k={k}: {v} vs {base}");
        }
    }
}

#[test]
fn family_endpoints() {
    let opts = RunOptions::default();
    let xy = family(Pattern::XnYm(1), 1..=1, &opts, None).unwrap();
    assert_eq!(xy[0].word, "xy");
    assert_eq!(xy[0].length, 2);
    assert!((xy[0].volume.unwrap() - 6.138138789).abs() < 1e-6);
    let fam = family(Pattern::XXyN, 1..=3, &opts, None).unwrap();
    assert_eq!(fam.iter().map(|r| r.word.as_str()).collect::<Vec<_>>(), ["xxy", "xxyxy", "xxyxyxy"]);
    assert!((fam[0].volume.unwrap() - 7.45357325).abs() < 1e-6);
}

#[test]
fn fit_needs_two_accepted_rows() {
    let rows = survey(3, &RunOptions::default(), None).unwrap();
    let rep = fit_rows(&rows).unwrap();
    assert_eq!(rep.fit.n_points, 2);
    let mut one = rows.clone();
    one[1].volume = None;
    one[1].status = ShapeStatus::Failed;
    assert!(fit_rows(&one).is_err());
    let mut out = Vec::new();
    pipeline::write_fit(&mut out, &rep).unwrap();
    assert!(String::from_utf8(out).unwrap().contains("excluded 0 of 2"));
}

fn status() -> impl Strategy<Value = ShapeStatus> {
    prop_oneof![
        Just(ShapeStatus::Converged),
        Just(ShapeStatus::ConvergedNonGeometric),
        Just(ShapeStatus::Failed),
        Just(ShapeStatus::NotHyperbolic),
    ]
}

fn float() -> impl Strategy<Value = f64> {
    prop_oneof![1e-16..1e-4f64, 1e-4..1e3f64, 1e3..1e18f64]
}

prop_compose! {
    fn row()(m in 2i64..100_000, h in 1u32..50, norm in prop_oneof![Just(-1i8), Just(1)],
             reg in float(), geom in float(), n in 0usize..10_000, dt in "[-0-9,()DT:\\[\\]]{0,40}",
             vol in prop::option::of(float()), st in status(), it in 0usize..5000,
             res in prop::option::of(float())) -> SurveyRow {
        SurveyRow {
            m, d: 4 * m, h, h_plus: 2 * h, unit_norm: norm, regulator: reg,
            total_length_paper: 2.0 * h as f64 * reg, total_length_geom: geom,
            n_components: 2 * h as usize + 1, total_symbols: n, n_crossings: 3 * n + 3,
            dt_code: dt, volume: vol, status: st, iterations: it, residual: res,
        }.rounded()
    }
}

proptest! {
    #[test]
    fn csv_roundtrip(rows in prop::collection::vec(row(), 0..8)) {
        let mut buf = Vec::new();
        write_rows(&mut buf, &rows).unwrap();
        prop_assert_eq!(read_rows(buf.as_slice()).unwrap(), rows);
    }

    #[test]
    fn rounding_is_idempotent(x in float()) {
        prop_assert_eq!(round12(round12(x)), round12(x));
        prop_assert!((round12(x) - x).abs() <= 1e-11 * x.abs());
    }
}
