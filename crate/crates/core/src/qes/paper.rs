//! Printed closed forms for the τ table, the μ coefficients, the determinant recurrence
//! and the cubic accessory roots, kept next to their corrected counterparts.

use super::SpectralMatrix;
use crate::error::{domain, Error, Result};
use crate::exactmath::roots::{cardano, cubic_from_q_t};
use crate::exactmath::{int, rat, to_f64, Coeff, RatPoly, Rational};
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::ops::Div;

/// One row of the printed τ table; the diagonal is τ_{k,k} = −B.
#[derive(Clone, Debug, PartialEq)]
pub struct TauRow {
    /// τ_{k,k+1} = 4k(k−1) + (9/2)(2j−1)k + 7j(2j−1)
    pub up: Rational,
    /// τ_{k,k−1} = −(g2/4)k(4k−3)
    pub down: Rational,
    /// τ_{k,k−2} = −k(k−1)g3
    pub down2: Rational,
}

impl TauRow {
    pub fn diagonal(&self, b: &Rational) -> Rational {
        -b.clone()
    }
}

pub fn tau_paper(k: usize, j: &Rational, g2: &Rational, g3: &Rational) -> TauRow {
    let k = int(k as i64);
    let s = int(2) * j - int(1);
    TauRow {
        up: int(4) * &k * (&k - int(1)) + rat(9, 2) * &s * &k + int(7) * j * &s,
        down: -(g2 / int(4)) * &k * (int(4) * &k - int(3)),
        down2: -(&k * (&k - int(1))) * g3,
    }
}

/// Spectral matrix assembled from the printed τ table with j left free.
pub fn paper_tau_matrix(n: usize, j: &Rational, g2: &Rational, g3: &Rational) -> SpectralMatrix {
    SpectralMatrix::from_tau(n + 1, |k, l| tau_entry(k, l, j, g2, g3))
}

fn tau_entry(k: usize, l: usize, j: &Rational, g2: &Rational, g3: &Rational) -> Rational {
    let row = tau_paper(k, j, g2, g3);
    match l as i64 - k as i64 {
        1 => row.up,
        -1 => row.down,
        -2 => row.down2,
        _ => Rational::zero(),
    }
}

fn nonzero<T: Coeff>(x: T, what: &str) -> Result<T> {
    if x.is_zero() {
        domain(format!("vanishing denominator in {what}"))
    } else {
        Ok(x)
    }
}

/// μ^{(1)}, …, μ^{(m)} as printed: the displayed closed forms for orders 1 and 2, the
/// general quotient of τ sums from order 3 on.
pub fn mu_paper<T: Coeff + Div<Output = T>>(
    m: usize,
    j: &Rational,
    b: &T,
    g2: &Rational,
    g3: &Rational,
) -> Result<Vec<T>> {
    let c = |x: Rational| T::from_rational(&x);
    let s = int(2) * j - int(1);
    let seven = int(7) * j * &s;
    let mut mu: Vec<T> = Vec::with_capacity(m);
    if m >= 1 {
        let num = c(g2.clone()) + c(int(4)) * b.clone();
        let den = nonzero(c(int(4)) * (c(seven.clone()) - b.clone()), "first-order coefficient")?;
        mu.push(num / den);
    }
    if m >= 2 {
        let four_b = c(int(4)) * b.clone();
        let inner = c(int(28) * j * &s - int(10) * g2) - four_b.clone();
        let num = four_b.clone() + c(g2 + int(8) * g3) + inner * mu[0].clone();
        let den = nonzero(c((int(28) * j + int(18)) * &s) - four_b, "second-order coefficient")?;
        mu.push(-(num / den));
    }
    for order in 3..=m {
        let next = general_quotient(order, &mu, j, b, g2, g3)?;
        mu.push(next);
    }
    Ok(mu)
}

/// μ^{(m)} = Σ_{k≤m}[τ_{k,0} + τ_{k,1}μ^{(1)} + … + τ_{k,m−1}μ^{(m−1)}] / Σ_{k≤m} τ_{k,m}
/// applied from order 1.
pub fn mu_recurrence<T: Coeff + Div<Output = T>>(
    m: usize,
    j: &Rational,
    b: &T,
    g2: &Rational,
    g3: &Rational,
) -> Result<Vec<T>> {
    let mut mu = Vec::with_capacity(m);
    for order in 1..=m {
        let next = general_quotient(order, &mu, j, b, g2, g3)?;
        mu.push(next);
    }
    Ok(mu)
}

fn general_quotient<T: Coeff + Div<Output = T>>(
    order: usize,
    mu: &[T],
    j: &Rational,
    b: &T,
    g2: &Rational,
    g3: &Rational,
) -> Result<T> {
    let tau = |k: usize, l: usize| -> T {
        if k == l {
            -b.clone()
        } else {
            T::from_rational(&tau_entry(k, l, j, g2, g3))
        }
    };
    let weight = |l: usize| if l == 0 { T::one() } else { mu[l - 1].clone() };
    let mut num = T::zero();
    let mut den = T::zero();
    for k in 0..=order {
        for l in 0..order {
            num = num + tau(k, l) * weight(l);
        }
        den = den + tau(k, order);
    }
    Ok(num / nonzero(den, "general coefficient quotient")?)
}

/// D_{k+1} = (m_kk − B)D_k − τ_{k,k−1}τ_{k−1,k}D_{k−1}, D_{−1} = 0, D_0 = 1, as a
/// polynomial in B. Needs a vanishing sub-subdiagonal.
pub fn determinant_recurrence(sm: &SpectralMatrix) -> Result<RatPoly> {
    if sm.band_profile().sub_subdiagonal.iter().any(|t| !t.is_zero()) {
        return Err(Error::Structural(
            "three-term determinant recurrence needs tau_{k,k-2} = 0 (g3 = 0)".into(),
        ));
    }
    let minus_b = RatPoly::from_coeffs(vec![Rational::zero(), -Rational::one()]);
    let (mut prev, mut cur) = (RatPoly::zero(), RatPoly::constant(Rational::one()));
    for k in 0..sm.dim {
        let diag = &minus_b + &RatPoly::constant(sm.tau(k, k).clone());
        let coupling = if k == 0 { Rational::zero() } else { sm.tau(k, k - 1) * sm.tau(k - 1, k) };
        let next = &diag * &cur - prev.scale(&coupling);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// D_{n+1} = −½[λ−^{n+1} + λ+^{n+1}], λ± = (B ± √(B² − 4τ_{n,n−1}τ_{n−1,n}))/2, evaluated
/// as printed.
pub fn determinant_closed_form(sm: &SpectralMatrix, b: Complex64) -> Complex64 {
    let n = sm.dim - 1;
    let coupling = if n == 0 { 0.0 } else { to_f64(&(sm.tau(n, n - 1) * sm.tau(n - 1, n))) };
    let root = (b * b - 4.0 * coupling).sqrt();
    let (lp, lm) = ((b + root) / 2.0, (b - root) / 2.0);
    let e = (n + 1) as i32;
    -(lm.powi(e) + lp.powi(e)) / 2.0
}

/// Coefficients of B³ + b2 B² + b1 B + b0 for a 3×3 spectral matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicCoefficients {
    pub b2: Rational,
    pub b1: Rational,
    pub b0: Rational,
}

impl CubicCoefficients {
    /// b1 = −(τ01τ10 + τ02τ20 + τ12τ21), b0 = −(τ01τ12τ20 + τ02τ10τ21).
    pub fn derived(sm: &SpectralMatrix) -> Result<Self> {
        let t = check_cubic(sm)?;
        Ok(CubicCoefficients {
            b2: Rational::zero(),
            b1: -(t(0, 1) * t(1, 0) + t(0, 2) * t(2, 0) + t(1, 2) * t(2, 1)),
            b0: -(t(0, 1) * t(1, 2) * t(2, 0) + t(0, 2) * t(1, 0) * t(2, 1)),
        })
    }

    /// b1 = −(τ21τ12 + τ01τ10τ02τ20), b0 = τ01τ20τ12 + τ02τ10τ21, as printed.
    pub fn printed(sm: &SpectralMatrix) -> Result<Self> {
        let t = check_cubic(sm)?;
        Ok(CubicCoefficients {
            b2: Rational::zero(),
            b1: -(t(2, 1) * t(1, 2) + t(0, 1) * t(1, 0) * t(0, 2) * t(2, 0)),
            b0: t(0, 1) * t(2, 0) * t(1, 2) + t(0, 2) * t(1, 0) * t(2, 1),
        })
    }

    fn c64(&self) -> [Complex64; 3] {
        [&self.b2, &self.b1, &self.b0].map(|x| Complex64::new(to_f64(x), 0.0))
    }
}

fn check_cubic(sm: &SpectralMatrix) -> Result<impl Fn(usize, usize) -> Rational + '_> {
    if sm.dim != 3 {
        return Err(Error::Degree(format!("cubic accessory formula needs dimension 3, got {}", sm.dim)));
    }
    if (0..3).any(|k| !sm.tau(k, k).is_zero()) {
        return Err(Error::Structural("cubic accessory formula needs a zero diagonal".into()));
    }
    Ok(move |k: usize, l: usize| sm.tau(k, l).clone())
}

/// Roots of the derived cubic via the s± formulas.
pub fn cubic_accessory_roots(sm: &SpectralMatrix) -> Result<[Complex64; 3]> {
    let [b2, b1, b0] = CubicCoefficients::derived(sm)?.c64();
    Ok(cardano(b2, b1, b0))
}

/// Printed coefficients pushed through the printed t = (b1b2 − b0)/6 − b2³/27.
pub fn cubic_printed_roots(sm: &SpectralMatrix) -> Result<[Complex64; 3]> {
    let [b2, b1, b0] = CubicCoefficients::printed(sm)?.c64();
    let q = b1 / 3.0 - b2 * b2 / 9.0;
    let t = (b1 * b2 - b0) / 6.0 - b2 * b2 * b2 / 27.0;
    Ok(cubic_from_q_t(q, t, b2 / 3.0))
}
