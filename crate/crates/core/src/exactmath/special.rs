//! Factorial-family functions: falling/rising factorials, generalized binomials, Gamma.

use super::{int, Rational};
use crate::error::{domain, Result};
use num_traits::{One, Zero};

/// Falling factorial (k)_m = k(k−1)···(k−m+1); 1 for m = 0; Γ(k+1)/Γ(k−m+1) for m < 0,
/// i.e. 1/((k+1)(k+2)···(k−m)).
pub fn falling_factorial(k: i64, m: i64) -> Result<Rational> {
    if m >= 0 {
        return Ok((0..m).fold(Rational::one(), |acc, i| acc * int(k - i)));
    }
    let mut den = Rational::one();
    for i in 1..=(-m) {
        let f = k + i;
        if f == 0 {
            return domain(format!("falling factorial ({k})_{m} hits a Gamma pole"));
        }
        den *= int(f);
    }
    Ok(Rational::one() / den)
}

/// Rising factorial (x)_n = x(x+1)···(x+n−1).
pub fn rising_factorial(x: &Rational, n: usize) -> Rational {
    (0..n).fold(Rational::one(), |acc, i| acc * (x + int(i as i64)))
}

/// x(x−1)···(x−p+1)/p!
pub fn generalized_binomial(x: &Rational, p: usize) -> Rational {
    let mut num = Rational::one();
    let mut den = Rational::one();
    for i in 0..p {
        num *= x - int(i as i64);
        den *= int(i as i64 + 1);
    }
    num / den
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_gamma(x: f64) -> f64 {
    if x < 0.5 {
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * lanczos_gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let t = x + LANCZOS_G + 0.5;
        let mut a = LANCZOS[0];
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
    }
}

/// Γ(x): exact product at positive integers, Lanczos approximation elsewhere.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return domain(format!("Gamma of non-finite argument {x}"));
    }
    if x <= 0.0 && x == x.floor() {
        return domain(format!("Gamma pole at {x}"));
    }
    if x == x.floor() && x <= 171.0 {
        return Ok((1..x as u64).fold(1.0, |acc, i| acc * i as f64));
    }
    Ok(lanczos_gamma(x))
}

/// ln|Γ(x)| for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return domain(format!("ln Gamma requires a positive argument, got {x}"));
    }
    if x < 100.0 {
        return Ok(gamma(x)?.ln());
    }
    // Stirling series; relative error far below 1e-15 for x ≥ 100.
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
    Ok((x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series)
}

pub(crate) fn is_nonpositive_integer(x: &Rational) -> bool {
    x.is_integer() && (x.is_zero() || x < &Rational::zero())
}
