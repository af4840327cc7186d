//! Independent arithmetic: continued fractions for the fundamental unit and
//! Gauss right-neighbour cycles for the class numbers.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

pub fn isqrt(n: i128) -> i128 {
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn squarefree(m: i64) -> bool {
    (2..).take_while(|p| p * p <= m).all(|p| m % (p * p) != 0)
}

/// Least `(t, u)` with `t² − D u² = ±4`, from the continued fraction of
/// `√m` or `(1 + √m)/2`.
pub fn cf_unit(m: i64) -> (i128, i128, i8) {
    let d = if m % 4 == 1 { m } else { 4 * m } as i128;
    let (mut p, mut q, mut n) = if m % 4 == 1 { (1i128, 2i128, m as i128) } else { (0, 1, m as i128) };
    if (n - p * p) % q != 0 {
        n *= q * q;
        p *= q;
        q *= q;
    }
    let s = isqrt(n);
    let (mut h0, mut h1, mut k0, mut k1) = (0i128, 1i128, 1i128, 0i128);
    loop {
        let a = (p + s) / q;
        (h0, h1) = (h1, a * h1 + h0);
        (k0, k1) = (k1, a * k1 + k0);
        p = a * q - p;
        q = (n - p * p) / q;
        let (t, u) = if m % 4 == 1 { (2 * h1 - k1, k1) } else { (2 * h1, k1) };
        // exact modulo 2^128, and the true value is small
        let norm = t.wrapping_mul(t).wrapping_sub(d.wrapping_mul(u).wrapping_mul(u));
        if norm == 4 || norm == -4 {
            return (t, u, (norm / 4) as i8);
        }
    }
}

/// Narrow and wide class numbers: reduced primitive forms partitioned by
/// Gauss's right neighbour, then paired under `(a, b, c) ↦ (−a, b, −c)`.
pub fn gauss_cycles(d: i64) -> (usize, usize) {
    let sd = (d as f64).sqrt();
    let mut forms = BTreeSet::new();
    for b in 1..=(sd as i64) {
        if (b * b - d) % 4 != 0 || b * b >= d {
            continue;
        }
        let ac = (b * b - d) / 4;
        for a in (-(sd as i64) - 1)..=(sd as i64 + 1) {
            if a == 0 || ac % a != 0 {
                continue;
            }
            let c = ac / a;
            let aa = a.abs() as f64;
            let g = gcd(gcd(a, b), c);
            if g == 1 && sd - (b as f64) < 2.0 * aa && 2.0 * aa < sd + b as f64 {
                forms.insert((a, b, c));
            }
        }
    }
    let neighbour = |(_, b, c): (i64, i64, i64)| {
        let m = 2 * c.abs();
        let mut nb = (-b).rem_euclid(m);
        while (nb as f64) < sd - m as f64 {
            nb += m;
        }
        while nb as f64 > sd {
            nb -= m;
        }
        (c, nb, (nb * nb - d) / (4 * c))
    };
    let mut cycle_of = BTreeMap::new();
    let mut count = 0;
    for &f in &forms {
        if cycle_of.contains_key(&f) {
            continue;
        }
        let mut g = f;
        loop {
            cycle_of.insert(g, count);
            g = neighbour(g);
            assert!(forms.contains(&g), "neighbour of reduced form {g:?} not reduced");
            if g == f {
                break;
            }
        }
        count += 1;
    }
    let mut wide = BTreeSet::new();
    for (&(a, b, c), &i) in &cycle_of {
        let j = cycle_of[&(-a, b, -c)];
        wide.insert((i.min(j), i.max(j)));
    }
    (count, wide.len())
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}
