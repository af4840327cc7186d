//! Bloch–Wigner dilogarithm through the Clausen function.

use core::f64::consts::PI;
use num_complex::Complex64;

const TERMS: usize = 30;

/// `ζ(2n) / (n (2n+1) (2π)^{2n})` for `n = 1..=TERMS`.
fn coefficients() -> [f64; TERMS] {
    let mut c = [0.0; TERMS];
    let two_pi_sq = 4.0 * PI * PI;
    let mut pow = 1.0;
    for (i, slot) in c.iter_mut().enumerate() {
        let n = (i + 1) as f64;
        pow *= two_pi_sq;
        *slot = zeta_even(i + 1) / (n * (2.0 * n + 1.0) * pow);
    }
    c
}

fn zeta_even(n: usize) -> f64 {
    let p2 = PI * PI;
    match n {
        1 => p2 / 6.0,
        2 => p2 * p2 / 90.0,
        3 => p2 * p2 * p2 / 945.0,
        _ => {
            let s = -2.0 * n as f64;
            (1..=40).map(|k| libm::pow(k as f64, s)).sum()
        }
    }
}

/// Clausen function `Cl₂(θ) = −∫₀^θ log|2 sin(t/2)| dt`.
pub fn clausen(theta: f64) -> f64 {
    let mut t = libm::remainder(theta, 2.0 * PI);
    if t == -PI {
        t = PI;
    }
    if t == 0.0 {
        return 0.0;
    }
    let c = coefficients();
    let t2 = t * t;
    let mut pow = t * t2;
    let mut sum = t - t * libm::log(libm::fabs(t));
    for k in c {
        let term = k * pow;
        sum += term;
        if libm::fabs(term) < 1e-18 * libm::fabs(sum) {
            break;
        }
        pow *= t2;
    }
    sum
}

/// Lobachevsky function `Л(θ) = ½ Cl₂(2θ)`.
pub fn lobachevsky(theta: f64) -> f64 {
    0.5 * clausen(2.0 * theta)
}

/// Bloch–Wigner dilogarithm: the signed volume of the ideal tetrahedron
/// with shape `z`.
pub fn bloch_wigner(z: Complex64) -> f64 {
    if z.im == 0.0 {
        return 0.0;
    }
    let one = Complex64::new(1.0, 0.0);
    let a = z.arg();
    let b = (one / (one - z)).arg();
    let c = (one - one / z).arg();
    lobachevsky(a) + lobachevsky(b) + lobachevsky(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_ideal_tetrahedron() {
        let z = Complex64::from_polar(1.0, PI / 3.0);
        assert!((bloch_wigner(z) - 1.014_941_606_409_653_6).abs() < 1e-14);
        assert!((bloch_wigner(z.conj()) + 1.014_941_606_409_653_6).abs() < 1e-14);
    }

    #[test]
    fn clausen_values() {
        // Catalan's constant
        assert!((clausen(PI / 2.0) - 0.915_965_594_177_219).abs() < 1e-14);
        assert!(clausen(PI).abs() < 1e-15);
        assert!((clausen(-PI / 2.0) + 0.915_965_594_177_219).abs() < 1e-14);
        assert!((clausen(PI / 2.0 + 2.0 * PI) - clausen(PI / 2.0)).abs() < 1e-13);
    }

    #[test]
    fn five_term_symmetries() {
        let z = Complex64::new(0.3, 0.7);
        let one = Complex64::new(1.0, 0.0);
        let d = bloch_wigner(z);
        assert!((bloch_wigner(one / (one - z)) - d).abs() < 1e-13);
        assert!((bloch_wigner(one - one / z) - d).abs() < 1e-13);
        assert!((bloch_wigner(one / z) + d).abs() < 1e-13);
        assert!(bloch_wigner(Complex64::new(2.5, 0.0)) == 0.0);
    }
}
