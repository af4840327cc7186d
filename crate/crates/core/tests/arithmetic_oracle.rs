//! Arithmetic checked against an independent implementation: continued
//! fractions for the unit and Gauss right-neighbour cycles for the classes.

mod common;

use common::{cf_unit, gauss_cycles, isqrt, squarefree};
use modlink_core::arithmetic::{self, QuadraticForm};
use proptest::prelude::*;

#[test]
fn units_and_classes_match_oracle_up_to_300() {
    for m in (2..=300).filter(|&m| squarefree(m)) {
        let s = arithmetic::field_summary(m).unwrap();
        let (t, u, norm) = cf_unit(m);
        assert_eq!((s.unit.t, s.unit.u, s.unit.norm), (t, u, norm), "unit m={m}");
        let (hp, h) = gauss_cycles(s.disc.value());
        assert_eq!((s.h_plus as usize, s.h as usize), (hp, h), "classes m={m}");
        let r = ((t as f64 + u as f64 * (s.disc.value() as f64).sqrt()) / 2.0).ln();
        assert!((s.unit.regulator - r).abs() < 1e-9, "regulator m={m}");
    }
}

#[test]
fn small_units_match_pell_search() {
    for m in (2..=300).filter(|&m| squarefree(m)) {
        let s = arithmetic::field_summary(m).unwrap();
        let d = s.disc.value() as i128;
        let found = (1..=20_000i128).find_map(|u| {
            [-4i128, 4].iter().find_map(|&n| {
                let t2 = d * u * u + n;
                let t = isqrt(t2);
                (t * t == t2).then_some((t, u, (n / 4) as i8))
            })
        });
        if let Some((t, u, n)) = found {
            assert_eq!((s.unit.t, s.unit.u, s.unit.norm), (t, u, n), "m={m}");
        } else {
            assert!(s.unit.u > 20_000, "m={m}");
        }
    }
}

#[test]
fn narrow_law_and_cycle_partition() {
    for m in (2..=1000).filter(|&m| squarefree(m)) {
        let s = arithmetic::field_summary(m).unwrap();
        if s.unit.norm == -1 {
            assert_eq!(s.h_plus, s.h, "m={m}");
        } else {
            assert_eq!(s.h_plus, 2 * s.h, "m={m}");
        }
        let d = s.disc.value();
        let all = arithmetic::reduced_forms(d);
        let cycles = arithmetic::cycles(d);
        let mut union: Vec<QuadraticForm> = cycles.iter().flatten().copied().collect();
        assert_eq!(union.len(), all.len());
        union.sort();
        assert_eq!(union, all);
        for c in &cycles {
            assert_eq!(c.len() % 2, 0, "odd cycle for D={d}");
        }
        for r in &s.reps {
            assert!(r.is_reduced());
        }
        assert_eq!(s.total_length_paper, 2.0 * s.h as f64 * s.unit.regulator);
        let (t, u) = (s.unit.t, s.unit.u);
        // exact modulo 2^128, which suffices since |t² − D u²| is tiny
        let n = t.wrapping_mul(t).wrapping_sub((d as i128).wrapping_mul(u).wrapping_mul(u));
        assert!(n == 4 || n == -4, "norm of unit for m={m}");
    }
}

proptest! {
    #[test]
    fn reduction_lands_in_the_cycle_set(a in -60i64..60, b in -60i64..60, c in -60i64..60) {
        let q = QuadraticForm::new(a, b, c);
        let d = q.discriminant();
        prop_assume!(a != 0 && c != 0 && d > 0 && isqrt(d as i128).pow(2) != d as i128);
        let r = arithmetic::reduce_form(q).unwrap();
        prop_assert!(r.is_reduced());
        prop_assert_eq!(r.discriminant(), d);
        prop_assert_eq!(arithmetic::reduce_form(r).unwrap(), r);
    }
}
