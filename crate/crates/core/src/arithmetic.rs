//! Real quadratic fields: fundamental discriminants, units, reduced
//! indefinite binary quadratic forms and their cycles, class numbers.
//!
//! Classes are counted as proper (`SL2(Z)`) equivalence classes of primitive
//! forms, i.e. the narrow class number `h⁺`. The wide class number `h` is
//! obtained by identifying each cycle with the cycle of its negative form
//! `(-a, b, -c)`.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Integer square root, floor.
pub fn isqrt(n: i128) -> i128 {
    if n < 2 {
        return n.max(0);
    }
    let mut x = libm::sqrt(n as f64) as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: i128) -> bool {
    n >= 0 && {
        let r = isqrt(n);
        r * r == n
    }
}

pub fn is_squarefree(m: i64) -> bool {
    if m < 1 {
        return false;
    }
    let mut n = m;
    let mut p = 2i64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A fundamental discriminant of a real quadratic field `Q(√m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Discriminant {
    m: i64,
    d: i64,
}

impl Discriminant {
    /// The squarefree radicand `m`.
    pub fn radicand(&self) -> i64 {
        self.m
    }

    /// The discriminant `D` (`m` or `4m`).
    pub fn value(&self) -> i64 {
        self.d
    }

    pub fn sqrt(&self) -> f64 {
        libm::sqrt(self.d as f64)
    }
}

/// `D = m` when `m ≡ 1 (mod 4)`, else `D = 4m`.
pub fn fundamental_discriminant(m: i64) -> Result<Discriminant> {
    if m <= 1 || !is_squarefree(m) {
        return Err(Error::InvalidRadicand(m));
    }
    let d = if m % 4 == 1 { m } else { 4 * m };
    Ok(Discriminant { m, d })
}

/// Indefinite binary quadratic form `a x² + b xy + c y²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadraticForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        gcd(gcd(self.a, self.b), self.c) == 1
    }

    /// `0 < b < √D` and `√D − b < 2|a| < √D + b`, checked in exact integers.
    pub fn is_reduced(&self) -> bool {
        let d = self.discriminant() as i128;
        let (a, b) = (self.a.unsigned_abs() as i128, self.b as i128);
        if self.a == 0 || b <= 0 || b * b >= d {
            return false;
        }
        let lower = d < (2 * a + b) * (2 * a + b);
        let upper = 2 * a - b <= 0 || (2 * a - b) * (2 * a - b) < d;
        lower && upper
    }

    /// The negative form `(-a, b, -c)`; its class is the image of this
    /// class under multiplication by an element of negative norm.
    pub fn negated(&self) -> Self {
        Self::new(-self.a, self.b, -self.c)
    }

    /// One reduction step `ρ(a, b, c) = (c, r(−b, c), (r² − D) / 4c)`.
    pub fn rho(&self) -> Self {
        let d = self.discriminant();
        let c = self.c;
        let b = normalize_b(-self.b, c, d);
        Self::new(c, b, (b * b - d) / (4 * c))
    }
}

impl core::fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Representative of `b mod 2|a|`: in `(−|a|, |a|]` when `|a| > √D`,
/// otherwise in `(√D − 2|a|, √D)`.
fn normalize_b(b: i64, a: i64, d: i64) -> i64 {
    let m = 2 * a.abs();
    let big = (a as i128) * (a as i128) > d as i128;
    // largest value allowed by the window, then step down into it
    let top = if big {
        a.abs()
    } else {
        // largest integer strictly below √D
        let s = isqrt(d as i128) as i64;
        if s * s == d {
            s - 1
        } else {
            s
        }
    };
    top - (top - b).rem_euclid(m)
}

fn check_discriminant(q: &QuadraticForm) -> Result<i64> {
    let d = q.discriminant();
    if d <= 0 || is_square(d as i128) {
        return Err(Error::InvalidDiscriminant(d));
    }
    Ok(d)
}

/// Reduce a form by iterating `ρ`; reduced input is returned unchanged.
pub fn reduce_form(q: QuadraticForm) -> Result<QuadraticForm> {
    check_discriminant(&q)?;
    let mut f = q;
    // ρ reaches a reduced form after O(log|a| + log|c|) + O(1) steps
    for _ in 0..10_000 {
        if f.is_reduced() {
            return Ok(f);
        }
        f = f.rho();
    }
    Err(Error::Overflow("reduce_form"))
}

/// The full `ρ`-cycle through a reduced form, starting at `q`.
pub fn reduction_cycle(q: QuadraticForm) -> Result<Vec<QuadraticForm>> {
    check_discriminant(&q)?;
    if !q.is_reduced() {
        return Err(Error::NotReduced(q.a, q.b, q.c));
    }
    let mut cycle = alloc::vec![q];
    let mut f = q.rho();
    while f != q {
        cycle.push(f);
        f = f.rho();
    }
    Ok(cycle)
}

/// All primitive reduced forms of discriminant `d`, sorted.
pub fn reduced_forms(d: i64) -> Vec<QuadraticForm> {
    let mut out = Vec::new();
    let mut b = if d % 2 == 0 { 2 } else { 1 };
    while (b as i128) * (b as i128) < d as i128 {
        let ac = (b * b - d) / 4;
        let n = -ac;
        let mut a = 1;
        while a <= n {
            if n % a == 0 {
                for s in [a, -a] {
                    let f = QuadraticForm::new(s, b, ac / s);
                    if f.is_reduced() && f.is_primitive() {
                        out.push(f);
                    }
                }
            }
            a += 1;
        }
        b += 2;
    }
    out.sort();
    out
}

/// One representative per `ρ`-cycle of primitive reduced forms; the
/// representative is the least form of its cycle. Length is `h⁺`.
pub fn narrow_classes(disc: Discriminant) -> Vec<QuadraticForm> {
    cycles(disc.value()).into_iter().map(|c| c[0]).collect()
}

/// Partition of the reduced forms into cycles, each rotated to start at its
/// least element; cycles sorted by that element.
pub fn cycles(d: i64) -> Vec<Vec<QuadraticForm>> {
    let forms = reduced_forms(d);
    let mut seen = alloc::collections::BTreeSet::new();
    let mut out = Vec::new();
    for f in forms {
        if seen.contains(&f) {
            continue;
        }
        let mut cyc = reduction_cycle(f).expect("enumerated forms are reduced");
        for g in &cyc {
            seen.insert(*g);
        }
        let start = (0..cyc.len()).min_by_key(|&i| cyc[i]).unwrap_or(0);
        cyc.rotate_left(start);
        out.push(cyc);
    }
    out
}

/// A fundamental unit `ε = (t + u√D)/2 > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalUnit {
    pub t: i128,
    pub u: i128,
    /// `+1` or `−1`, the sign of `t² − D u²` divided by 4.
    pub norm: i8,
    /// `log ε` in nats.
    pub regulator: f64,
}

impl FundamentalUnit {
    /// `(t₊, u₊)` of the least unit of norm `+1`: `ε` itself, or `ε²` when
    /// the fundamental unit has norm `−1`.
    pub fn norm_plus(&self, disc: Discriminant) -> Result<(i128, i128)> {
        if self.norm == 1 {
            return Ok((self.t, self.u));
        }
        let d = disc.value() as i128;
        let t2 = self.t.checked_mul(self.t).ok_or(Error::Overflow("unit square"))?;
        let du2 = self
            .u
            .checked_mul(self.u)
            .and_then(|x| x.checked_mul(d))
            .ok_or(Error::Overflow("unit square"))?;
        let tu = self.t.checked_mul(self.u).ok_or(Error::Overflow("unit square"))?;
        Ok(((t2 + du2) / 2, tu))
    }
}

fn regulator_of(t: i128, u: i128, disc: Discriminant) -> f64 {
    libm::log((t as f64 + u as f64 * disc.sqrt()) / 2.0)
}

/// The fundamental unit, read off the automorph accumulated over one period
/// of the principal cycle.
///
/// The product of the `ρ`-step matrices around the principal cycle is the
/// fundamental proper automorph, which gives `ε₊`. A unit of norm `−1`
/// exists exactly when `ε₊ = ε²` for some `ε` with `t² − D u² = −4`, which is
/// tested directly from `u² = (t₊ + 2) / D`.
pub fn fundamental_unit(disc: Discriminant) -> Result<FundamentalUnit> {
    let d = disc.value();
    let principal = reduce_form(principal_form(d))?;
    let (t_plus, u_plus) = cycle_automorph(principal)?;
    let d128 = d as i128;
    let num = t_plus + 2;
    if num % d128 == 0 && is_square(num / d128) {
        let u = isqrt(num / d128);
        let t2 = d128 * u * u - 4;
        if is_square(t2) {
            let t = isqrt(t2);
            return Ok(FundamentalUnit { t, u, norm: -1, regulator: regulator_of(t, u, disc) });
        }
    }
    Ok(FundamentalUnit {
        t: t_plus,
        u: u_plus,
        norm: 1,
        regulator: regulator_of(t_plus, u_plus, disc),
    })
}

/// `x² + xy + (1−D)/4 y²` or `x² − (D/4) y²`.
pub fn principal_form(d: i64) -> QuadraticForm {
    if d % 4 == 1 {
        QuadraticForm::new(1, 1, (1 - d) / 4)
    } else {
        QuadraticForm::new(1, 0, -d / 4)
    }
}

/// `(t, u)` of the fundamental proper automorph of a reduced form, obtained
/// as the product of the `ρ` transformations `[[0, −1], [1, s]]` over one
/// period.
fn cycle_automorph(q: QuadraticForm) -> Result<(i128, i128)> {
    let ovf = || Error::Overflow("cycle automorph");
    let mut m = [[1i128, 0], [0, 1]];
    let mut f = q;
    loop {
        let g = f.rho();
        let s = ((g.b + f.b) / (2 * f.c)) as i128;
        // m ← m · [[0, −1], [1, s]]
        let n00 = m[0][1];
        let n01 = (-m[0][0]).checked_add(m[0][1].checked_mul(s).ok_or_else(ovf)?).ok_or_else(ovf)?;
        let n10 = m[1][1];
        let n11 = (-m[1][0]).checked_add(m[1][1].checked_mul(s).ok_or_else(ovf)?).ok_or_else(ovf)?;
        m = [[n00, n01], [n10, n11]];
        f = g;
        if f == q {
            break;
        }
    }
    // m = ±((t − bu)/2, −cu; au, (t + bu)/2)
    let sign = if m[0][0] + m[1][1] < 0 { -1 } else { 1 };
    let t = sign * (m[0][0] + m[1][1]);
    let u = sign * m[1][0] / q.a as i128;
    Ok((t, u))
}

/// Per-field record: discriminant, unit, class numbers, representatives and
/// the two total-length conventions.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSummary {
    pub disc: Discriminant,
    pub unit: FundamentalUnit,
    pub h: u32,
    pub h_plus: u32,
    /// One reduced representative per narrow class.
    pub reps: Vec<QuadraticForm>,
    /// `2 h R`.
    pub total_length_paper: f64,
    /// `Σ 2 arccosh(t₊ / 2)` over the narrow classes.
    pub total_length_geom: f64,
}

impl FieldSummary {
    pub fn unit_plus(&self) -> Result<(i128, i128)> {
        self.unit.norm_plus(self.disc)
    }
}

/// Wide class number: orbits of cycles under `(a, b, c) ↦ (−a, b, −c)`.
pub fn wide_class_number(d: i64) -> u32 {
    let cyc = cycles(d);
    let index_of = |f: &QuadraticForm| {
        cyc.iter()
            .position(|c| c.contains(f))
            .expect("negated reduced form is reduced")
    };
    let mut seen = alloc::vec![false; cyc.len()];
    let mut h = 0;
    for i in 0..cyc.len() {
        if seen[i] {
            continue;
        }
        h += 1;
        seen[i] = true;
        seen[index_of(&cyc[i][0].negated())] = true;
    }
    h
}

pub fn field_summary(m: i64) -> Result<FieldSummary> {
    let disc = fundamental_discriminant(m)?;
    let unit = fundamental_unit(disc)?;
    let reps = narrow_classes(disc);
    let h_plus = reps.len() as u32;
    let h = wide_class_number(disc.value());
    let (t_plus, _) = unit.norm_plus(disc)?;
    let total_length_paper = 2.0 * h as f64 * unit.regulator;
    let total_length_geom = h_plus as f64 * 2.0 * libm::acosh(t_plus as f64 / 2.0);
    Ok(FieldSummary { disc, unit, h, h_plus, reps, total_length_paper, total_length_geom })
}

/// Squarefree integers in `[2, max_m]`.
pub fn squarefree_up_to(max_m: i64) -> Vec<i64> {
    (2..=max_m).filter(|&m| is_squarefree(m)).collect()
}
