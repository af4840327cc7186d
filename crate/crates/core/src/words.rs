//! Words in the modular group `PSL2(Z) = <U, V | U², V³>`.
//!
//! Hyperbolic conjugacy classes correspond to cyclic positive words in
//! `X = UV` and `Y = UV²`. Matrices are reduced to `U`, `V` words by the
//! Euclidean algorithm on the first column, then cyclically reduced and
//! grouped into `X`, `Y` letters.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arithmetic::QuadraticForm;
use crate::error::{Error, Result};

/// Integer matrix of determinant 1 modulo `±1`, stored with the first
/// nonzero entry of the first column positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PslMatrix {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub d: i128,
}

impl PslMatrix {
    pub const IDENTITY: Self = Self::raw(1, 0, 0, 1);
    pub const U: Self = Self::raw(0, 1, -1, 0);
    pub const V: Self = Self::raw(0, -1, 1, 1);
    pub const X: Self = Self::raw(1, 1, 0, 1);
    pub const Y: Self = Self::raw(1, 0, 1, 1);

    const fn raw(a: i128, b: i128, c: i128, d: i128) -> Self {
        Self { a, b, c, d }
    }

    /// Sign-normalized matrix; fails unless `ad − bc = 1`.
    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Result<Self> {
        let (hi, lo) = wide_mul(b, c);
        let (lo, carry) = lo.overflowing_add(1);
        if wide_mul(a, d) != (hi + carry as i128, lo) {
            return Err(Error::Diagram(alloc::format!(
                "matrix ({a},{b};{c},{d}) does not have determinant 1"
            )));
        }
        Ok(Self::raw(a, b, c, d).normalized())
    }

    fn normalized(self) -> Self {
        if self.a < 0 || (self.a == 0 && self.c < 0) {
            Self::raw(-self.a, -self.b, -self.c, -self.d)
        } else {
            self
        }
    }

    /// Trace of the sign-normalized representative; compare absolute values.
    pub fn trace(&self) -> i128 {
        self.a + self.d
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.trace().abs() > 2
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let ovf = || Error::Overflow("matrix product");
        let dot = |x: i128, y: i128, z: i128, w: i128| -> Result<i128> {
            x.checked_mul(y)
                .zip(z.checked_mul(w))
                .and_then(|(p, q)| p.checked_add(q))
                .ok_or_else(ovf)
        };
        Ok(Self::raw(
            dot(self.a, o.a, self.b, o.c)?,
            dot(self.a, o.b, self.b, o.d)?,
            dot(self.c, o.a, self.d, o.c)?,
            dot(self.c, o.b, self.d, o.d)?,
        )
        .normalized())
    }
}

impl fmt::Display for PslMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.a, self.b, self.c, self.d)
    }
}

/// Exact product as `hi · 2¹²⁸ + lo`.
fn wide_mul(x: i128, y: i128) -> (i128, u128) {
    let (p, q) = (x.unsigned_abs(), y.unsigned_abs());
    let mask = u64::MAX as u128;
    let (p1, p0, q1, q0) = (p >> 64, p & mask, q >> 64, q & mask);
    let low = p0 * q0;
    let mid1 = p1 * q0;
    let mid2 = p0 * q1;
    let (mid, mid_carry) = mid1.overflowing_add(mid2);
    let (lo, lo_carry) = low.overflowing_add(mid << 64);
    let hi = p1 * q1 + (mid >> 64) + ((mid_carry as u128) << 64) + lo_carry as u128;
    if (x < 0) != (y < 0) && (hi != 0 || lo != 0) {
        let (nlo, c) = (!lo).overflowing_add(1);
        ((!hi).wrapping_add(c as u128) as i128, nlo)
    } else {
        (hi as i128, lo)
    }
}

/// `((t − bu)/2, −cu; au, (t + bu)/2)`, the automorph of `q` attached to the
/// norm `+1` unit `(t + u√D)/2`. It fixes both roots of `a z² + b z + c`.
pub fn automorph(q: QuadraticForm, unit_plus: (i128, i128)) -> Result<PslMatrix> {
    let (t, u) = unit_plus;
    let ovf = || Error::Overflow("automorph");
    let (a, b, c) = (q.a as i128, q.b as i128, q.c as i128);
    let bu = b.checked_mul(u).ok_or_else(ovf)?;
    if (t - bu).rem_euclid(2) != 0 {
        return Err(Error::AutomorphParity(q.a, q.b, q.c));
    }
    PslMatrix::new(
        (t - bu) / 2,
        -c.checked_mul(u).ok_or_else(ovf)?,
        a.checked_mul(u).ok_or_else(ovf)?,
        (t + bu) / 2,
    )
}

/// A syllable of a word in `U` and `V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UvSyllable {
    U,
    V,
    V2,
}

impl UvSyllable {
    fn v_power(self) -> u8 {
        match self {
            UvSyllable::U => 0,
            UvSyllable::V => 1,
            UvSyllable::V2 => 2,
        }
    }

    fn from_v_power(p: u8) -> Option<Self> {
        match p % 3 {
            1 => Some(UvSyllable::V),
            2 => Some(UvSyllable::V2),
            _ => None,
        }
    }

    pub fn matrix(self) -> PslMatrix {
        match self {
            UvSyllable::U => PslMatrix::U,
            UvSyllable::V => PslMatrix::V,
            UvSyllable::V2 => PslMatrix::raw(1, 1, -1, 0),
        }
    }
}

/// A freely reduced word in `U`, `V`: no `UU`, no adjacent `V` powers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UvWord(Vec<UvSyllable>);

impl UvWord {
    /// Reduce an arbitrary syllable sequence.
    pub fn from_syllables(it: impl IntoIterator<Item = UvSyllable>) -> Self {
        let mut out: Vec<UvSyllable> = Vec::new();
        for s in it {
            match (out.last().copied(), s) {
                (Some(UvSyllable::U), UvSyllable::U) => {
                    out.pop();
                }
                (Some(p), s) if p != UvSyllable::U && s != UvSyllable::U => {
                    out.pop();
                    if let Some(m) = UvSyllable::from_v_power(p.v_power() + s.v_power()) {
                        out.push(m);
                    }
                }
                _ => out.push(s),
            }
        }
        Self(out)
    }

    pub fn syllables(&self) -> &[UvSyllable] {
        &self.0
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| (w[0] == UvSyllable::U) != (w[1] == UvSyllable::U))
    }

    pub fn eval(&self) -> Result<PslMatrix> {
        self.0
            .iter()
            .try_fold(PslMatrix::IDENTITY, |m, s| m.checked_mul(&s.matrix()))
    }
}

impl fmt::Display for UvWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                UvSyllable::U => "U",
                UvSyllable::V => "V",
                UvSyllable::V2 => "VV",
            })?;
        }
        Ok(())
    }
}

impl FromStr for UvWord {
    type Err = Error;

    /// Letters `U`, `V` (case-insensitive); whitespace, `(`, `)` and `²` as
    /// a second `V` are accepted.
    fn from_str(s: &str) -> Result<Self> {
        let mut syl = Vec::new();
        for ch in s.chars() {
            match ch {
                'U' | 'u' => syl.push(UvSyllable::U),
                'V' | 'v' => syl.push(UvSyllable::V),
                '²' => syl.push(UvSyllable::V),
                c if c.is_whitespace() || c == '(' || c == ')' => {}
                _ => return Err(Error::InvalidWord(s.into())),
            }
        }
        Ok(Self::from_syllables(syl))
    }
}

/// Decompose a hyperbolic matrix into a reduced `U`, `V` word.
///
/// Left multiplication by `U` swaps the rows (up to sign) and by `X⁻ⁿ`
/// subtracts `n` times the second row from the first; alternating the two
/// runs the Euclidean algorithm on the first column until it reaches `±Xᵏ`.
pub fn matrix_to_uv_word(m: PslMatrix) -> Result<UvWord> {
    if !m.is_hyperbolic() {
        return Err(Error::NotHyperbolic(m.trace().abs()));
    }
    // ops[i] is Some(n) for X^{-n}, None for U; applied left to right
    let mut ops: Vec<Option<i128>> = Vec::new();
    let (mut a, mut b, mut c, mut d) = (m.a, m.b, m.c, m.d);
    while c != 0 {
        if a.abs() < c.abs() {
            (a, b, c, d) = (c, d, -a, -b);
            ops.push(None);
        } else {
            let n = a.div_euclid(c);
            a -= n * c;
            b -= n * d;
            ops.push(Some(n));
        }
    }
    // now ±(1, k; 0, 1)
    let k = if a > 0 { b } else { -b };
    let mut syl = Vec::new();
    let push_x = |n: i128, syl: &mut Vec<UvSyllable>| {
        for _ in 0..n.unsigned_abs() {
            if n > 0 {
                syl.extend([UvSyllable::U, UvSyllable::V]);
            } else {
                syl.extend([UvSyllable::V2, UvSyllable::U]);
            }
        }
    };
    for op in &ops {
        match op {
            None => syl.push(UvSyllable::U),
            Some(n) => push_x(*n, &mut syl),
        }
    }
    push_x(k, &mut syl);
    Ok(UvWord::from_syllables(syl))
}

/// A generator letter of the positive monoid; `X < Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn matrix(self) -> PslMatrix {
        match self {
            Letter::X => PslMatrix::X,
            Letter::Y => PslMatrix::Y,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }
}

/// A cyclic positive word in `X`, `Y`, stored as its least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XyWord(Vec<Letter>);

impl XyWord {
    /// Canonical cyclic word; fails on an empty sequence.
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(canonical_cyclic(&letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, l: Letter) -> usize {
        self.0.iter().filter(|&&c| c == l).count()
    }

    /// Both letters occur; words `Xᵏ`, `Yᵏ` are parabolic.
    pub fn is_hyperbolic(&self) -> bool {
        self.count(Letter::X) > 0 && self.count(Letter::Y) > 0
    }

    pub fn is_primitive(&self) -> bool {
        is_primitive(&self.0)
    }

    pub fn rotation(&self, k: usize) -> Vec<Letter> {
        let mut v = self.0.clone();
        let n = v.len();
        v.rotate_left(k % n);
        v
    }
}

impl fmt::Display for XyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for XyWord {
    type Err = Error;

    /// Letters `x`, `y` in either case, with optional `^n` exponents on
    /// single letters or parenthesized groups, e.g. `x(xy)^3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidWord(s.into());
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let letters = parse_group(&chars, &mut pos, 0).ok_or_else(bad)?;
        if pos != chars.len() {
            return Err(bad());
        }
        Self::new(letters)
    }
}

fn parse_group(s: &[char], pos: &mut usize, depth: usize) -> Option<Vec<Letter>> {
    let mut out = Vec::new();
    while *pos < s.len() {
        let unit = match s[*pos] {
            'x' | 'X' => {
                *pos += 1;
                alloc::vec![Letter::X]
            }
            'y' | 'Y' => {
                *pos += 1;
                alloc::vec![Letter::Y]
            }
            '(' => {
                *pos += 1;
                let g = parse_group(s, pos, depth + 1)?;
                if s.get(*pos) != Some(&')') {
                    return None;
                }
                *pos += 1;
                g
            }
            ')' if depth > 0 => return Some(out),
            _ => return None,
        };
        let mut rep = 1usize;
        if s.get(*pos) == Some(&'^') {
            *pos += 1;
            let start = *pos;
            while s.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                *pos += 1;
            }
            let digits: String = s[start..*pos].iter().collect();
            rep = digits.parse().ok()?;
        }
        for _ in 0..rep {
            out.extend_from_slice(&unit);
        }
    }
    (depth == 0).then_some(out)
}

/// Cyclically reduce and group into `X = UV`, `Y = UV²`.
pub fn uv_to_xy(w: &UvWord) -> Result<XyWord> {
    let mut s: Vec<UvSyllable> = w.syllables().to_vec();
    // cyclic reduction: combine the last syllable into the first
    while s.len() >= 2 {
        let (f, l) = (s[0], s[s.len() - 1]);
        match (f, l) {
            (UvSyllable::U, UvSyllable::U) => {
                s.pop();
                s.remove(0);
            }
            (p, q) if p != UvSyllable::U && q != UvSyllable::U => {
                s.pop();
                match UvSyllable::from_v_power(p.v_power() + q.v_power()) {
                    Some(m) => s[0] = m,
                    None => {
                        s.remove(0);
                    }
                }
            }
            _ => break,
        }
    }
    if s.len() <= 1 {
        return Err(Error::FiniteOrder);
    }
    if s[0] != UvSyllable::U {
        s.rotate_left(1);
    }
    let letters = s
        .chunks(2)
        .map(|p| match p {
            [UvSyllable::U, UvSyllable::V] => Ok(Letter::X),
            [UvSyllable::U, UvSyllable::V2] => Ok(Letter::Y),
            _ => Err(Error::InvalidWord(alloc::format!("{w}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    XyWord::new(letters)
}

/// Least rotation under `X < Y`.
pub fn canonical_cyclic(w: &[Letter]) -> XyWord {
    let n = w.len();
    let best = (0..n)
        .min_by(|&i, &j| {
            (0..n)
                .map(|k| w[(i + k) % n])
                .cmp((0..n).map(|k| w[(j + k) % n]))
        })
        .unwrap_or(0);
    let mut v = w.to_vec();
    v.rotate_left(best);
    XyWord(v)
}

/// No period that is a proper divisor of the length.
pub fn is_primitive(w: &[Letter]) -> bool {
    let n = w.len();
    (1..n)
        .filter(|p| n % p == 0)
        .all(|p| (0..n).any(|i| w[i] != w[(i + p) % n]))
}

/// Product of the letter matrices, in order.
pub fn eval_letters(w: &[Letter]) -> Result<PslMatrix> {
    w.iter()
        .try_fold(PslMatrix::IDENTITY, |m, l| m.checked_mul(&l.matrix()))
}

pub fn word_to_matrix(w: &XyWord) -> Result<PslMatrix> {
    eval_letters(w.letters())
}

/// Canonical word of the geodesic attached to a form and norm `+1` unit.
pub fn class_word(q: QuadraticForm, unit_plus: (i128, i128)) -> Result<XyWord> {
    let m = automorph(q, unit_plus)?;
    uv_to_xy(&matrix_to_uv_word(m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w(s: &str) -> XyWord {
        s.parse().unwrap()
    }

    #[test]
    fn wide_products() {
        let big = 1i128 << 100;
        assert_eq!(wide_mul(3, -4), (-1, (-12i128) as u128));
        assert_eq!(wide_mul(big, big), (1 << 72, 0));
        assert_eq!(wide_mul(-big, big), (-(1 << 72), 0));
        assert!(PslMatrix::new(big + 1, big, big, big - 1).is_err());
        assert!(PslMatrix::new(big + 1, big, 1, 1).is_ok());
    }

    #[test]
    fn generators() {
        assert_eq!(PslMatrix::U.checked_mul(&PslMatrix::V).unwrap(), PslMatrix::X);
        let v2 = PslMatrix::V.checked_mul(&PslMatrix::V).unwrap();
        assert_eq!(v2, UvSyllable::V2.matrix());
        assert_eq!(PslMatrix::U.checked_mul(&v2).unwrap(), PslMatrix::Y);
        assert_eq!(v2.checked_mul(&PslMatrix::V).unwrap(), PslMatrix::IDENTITY);
        assert_eq!(PslMatrix::U.checked_mul(&PslMatrix::U).unwrap(), PslMatrix::IDENTITY);
    }

    #[test]
    fn automorph_examples() {
        let m = automorph(QuadraticForm::new(1, 1, -1), (3, 1)).unwrap();
        assert_eq!(m, PslMatrix::new(1, 1, 1, 2).unwrap());
        let m = automorph(QuadraticForm::new(1, 2, -1), (6, 2)).unwrap();
        assert_eq!(m, PslMatrix::new(1, 2, 2, 5).unwrap());
        assert_eq!(m.trace(), 6);
        assert!(automorph(QuadraticForm::new(1, 1, -1), (4, 1)).is_err());
    }

    #[test]
    fn decompositions() {
        let x = matrix_to_uv_word(PslMatrix::new(2, 1, 1, 1).unwrap()).unwrap();
        assert_eq!(uv_to_xy(&x).unwrap(), w("xy"));
        let yx = matrix_to_uv_word(PslMatrix::new(1, 1, 1, 2).unwrap()).unwrap();
        assert_eq!(yx.eval().unwrap(), PslMatrix::new(1, 1, 1, 2).unwrap());
        assert_eq!(uv_to_xy(&yx).unwrap(), w("xy"));
        assert!(matrix_to_uv_word(PslMatrix::X).is_err());
    }

    #[test]
    fn uv_grouping() {
        assert_eq!(uv_to_xy(&"UV UVV".parse().unwrap()).unwrap(), w("xy"));
        assert_eq!(uv_to_xy(&"VV (UV)(UVV) V".parse().unwrap()).unwrap(), w("xy"));
        assert_eq!(uv_to_xy(&"U".parse().unwrap()), Err(Error::FiniteOrder));
        assert_eq!(uv_to_xy(&"VUU".parse().unwrap()), Err(Error::FiniteOrder));
    }

    #[test]
    fn canonical_and_primitive() {
        assert_eq!(w("yxx").to_string(), "xxy");
        assert_eq!(w("xyxy").to_string(), "xyxy");
        assert!(w("xy").is_primitive());
        assert!(!w("xyxy").is_primitive());
        assert!(w("xxyxy").is_primitive());
        assert_eq!(w("x(xy)^3").to_string(), "xxyxyxy");
        assert_eq!(w("x^3y^2").to_string(), "xxxyy");
        assert!("".parse::<XyWord>().is_err());
        assert!("xz".parse::<XyWord>().is_err());
        assert!("(xy".parse::<XyWord>().is_err());
    }

    #[test]
    fn word_matrices() {
        assert_eq!(word_to_matrix(&w("xy")).unwrap(), PslMatrix::new(2, 1, 1, 1).unwrap());
        assert_eq!(word_to_matrix(&w("x")).unwrap(), PslMatrix::X);
    }
}
