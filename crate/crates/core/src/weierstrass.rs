//! Elliptic invariants (g2, g3), the roots e_s of 4r³ − g2 r − g3, and the change of
//! variable w(r) = ∫_r^∞ du / √(4u³ − g2 u − g3).

use crate::error::{domain, Result};
use crate::exactmath::{
    format_rational, rationalize, solve_cubic, to_f64, ComplexValue, QComplex, RatPoly, Rational,
};
use num_complex::Complex64;
use num_traits::Zero;
use std::collections::BinaryHeap;

#[derive(Clone, Debug, PartialEq)]
pub struct EllipticInvariants {
    pub g2: Rational,
    pub g3: Rational,
}

impl EllipticInvariants {
    pub fn new(g2: Rational, g3: Rational) -> Self {
        EllipticInvariants { g2, g3 }
    }

    /// g2³ − 27 g3²
    pub fn discriminant(&self) -> Rational {
        &self.g2 * &self.g2 * &self.g2 - Rational::from_integer(27.into()) * &self.g3 * &self.g3
    }

    pub fn all_real_roots(&self) -> bool {
        self.discriminant() >= Rational::zero()
    }

    /// 4r³ − g2 r − g3
    pub fn cubic(&self) -> RatPoly {
        RatPoly::from_coeffs(vec![
            -self.g3.clone(),
            -self.g2.clone(),
            Rational::zero(),
            Rational::from_integer(4.into()),
        ])
    }

    pub fn cubic_f64(&self, r: f64) -> f64 {
        4.0 * r * r * r - to_f64(&self.g2) * r - to_f64(&self.g3)
    }
}

impl std::fmt::Display for EllipticInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(g2={}, g3={})", format_rational(&self.g2), format_rational(&self.g3))
    }
}

/// Roots of the Weierstrass cubic in descending order of real part, ties broken by
/// descending imaginary part.
#[derive(Clone, Debug, PartialEq)]
pub struct RootTriple {
    pub e: [ComplexValue; 3],
}

impl RootTriple {
    fn from_unsorted(mut roots: Vec<ComplexValue>, inv: &EllipticInvariants) -> Self {
        roots.sort_by(|a, b| b.cmp_re_im(a));
        let triple = RootTriple { e: [roots[0].clone(), roots[1].clone(), roots[2].clone()] };
        triple.assert_expansion(inv);
        triple
    }

    /// Exact rational roots, when all three are rational.
    pub fn rational(&self) -> Option<[Rational; 3]> {
        let r: Vec<Rational> = self.e.iter().filter_map(|z| z.as_rational().cloned()).collect();
        (r.len() == 3).then(|| [r[0].clone(), r[1].clone(), r[2].clone()])
    }

    pub fn to_c64(&self) -> [Complex64; 3] {
        [self.e[0].to_c64(), self.e[1].to_c64(), self.e[2].to_c64()]
    }

    pub fn all_real(&self) -> bool {
        self.e.iter().all(|z| match z {
            ComplexValue::Exact(q) => q.is_real(),
            ComplexValue::Approx(c) => c.im == 0.0,
        })
    }

    pub fn max_real(&self) -> f64 {
        self.e.iter().map(|z| z.to_c64().re).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn distinct(&self) -> bool {
        let c = self.to_c64();
        let scale = 1.0 + c.iter().map(|z| z.norm()).fold(0.0, f64::max);
        (0..3).all(|a| ((a + 1)..3).all(|b| (c[a] - c[b]).norm() > 1e-12 * scale))
            && match self.rational() {
                Some(r) => r[0] != r[1] && r[1] != r[2] && r[0] != r[2],
                None => true,
            }
    }

    /// Relabels the roots: entry s of the result is e[perm[s]].
    pub fn permuted(&self, perm: [usize; 3]) -> [ComplexValue; 3] {
        [self.e[perm[0]].clone(), self.e[perm[1]].clone(), self.e[perm[2]].clone()]
    }

    fn assert_expansion(&self, inv: &EllipticInvariants) {
        if let Some(exact) = self.exact_complex() {
            let sum = exact[0].clone() + exact[1].clone() + exact[2].clone();
            assert!(sum.is_zero(), "root sum must vanish");
            let (g2, g3) = exact_invariants(&exact);
            assert!(
                g2 == QComplex::real(inv.g2.clone()) && g3 == QComplex::real(inv.g3.clone()),
                "4(r−e1)(r−e2)(r−e3) must expand to 4r³ − g2 r − g3"
            );
        } else {
            let c = self.to_c64();
            let scale = 1.0 + c.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let (g2, g3) = float_invariants(&c);
            assert!((c[0] + c[1] + c[2]).norm() <= 1e-9 * scale, "root sum must vanish");
            assert!((g2 - to_f64(&inv.g2)).norm() <= 1e-8 * scale.powi(2));
            assert!((g3 - to_f64(&inv.g3)).norm() <= 1e-8 * scale.powi(3));
        }
    }

    fn exact_complex(&self) -> Option<[QComplex; 3]> {
        let v: Vec<QComplex> = self.e.iter().filter_map(|z| z.as_exact().cloned()).collect();
        (v.len() == 3).then(|| [v[0].clone(), v[1].clone(), v[2].clone()])
    }
}

fn exact_invariants(e: &[QComplex; 3]) -> (QComplex, QComplex) {
    let four = QComplex::real(Rational::from_integer(4.into()));
    let pairs = e[0].clone() * e[1].clone() + e[1].clone() * e[2].clone() + e[0].clone() * e[2].clone();
    let g2 = -(four.clone() * pairs);
    let g3 = four * e[0].clone() * e[1].clone() * e[2].clone();
    (g2, g3)
}

fn float_invariants(e: &[Complex64; 3]) -> (Complex64, Complex64) {
    let g2 = -4.0 * (e[0] * e[1] + e[1] * e[2] + e[0] * e[2]);
    let g3 = 4.0 * e[0] * e[1] * e[2];
    (g2, g3)
}

pub fn roots_from_invariants(inv: &EllipticInvariants) -> RootTriple {
    let roots = solve_cubic(
        &Rational::from_integer(4.into()),
        &Rational::zero(),
        &-inv.g2.clone(),
        &-inv.g3.clone(),
    )
    .expect("leading coefficient 4 is nonzero");
    RootTriple::from_unsorted(roots.expanded(), inv)
}

fn snap(x: f64, scale: f64) -> Option<Rational> {
    rationalize(x)
        .into_iter()
        .find(|c| (to_f64(c) - x).abs() <= 1e-9 * scale)
}

/// g2 = −4(e1e2 + e2e3 + e1e3), g3 = 4e1e2e3. Inexact roots are snapped to the simplest
/// rational within 1e−9 of the computed invariant.
pub fn invariants_from_roots(e: &[ComplexValue; 3]) -> Result<EllipticInvariants> {
    let exact: Vec<QComplex> = e.iter().filter_map(|z| z.as_exact().cloned()).collect();
    if exact.len() == 3 {
        let e = [exact[0].clone(), exact[1].clone(), exact[2].clone()];
        let sum = e[0].clone() + e[1].clone() + e[2].clone();
        if !sum.is_zero() {
            return domain("roots of a Weierstrass cubic must sum to zero");
        }
        let (g2, g3) = exact_invariants(&e);
        if !g2.is_real() || !g3.is_real() {
            return domain("roots do not come from real invariants");
        }
        return Ok(EllipticInvariants::new(g2.re, g3.re));
    }
    let c = [e[0].to_c64(), e[1].to_c64(), e[2].to_c64()];
    let scale = 1.0 + c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if (c[0] + c[1] + c[2]).norm() > 1e-9 * scale {
        return domain("roots of a Weierstrass cubic must sum to zero");
    }
    let (g2, g3) = float_invariants(&c);
    if g2.im.abs() > 1e-9 * scale.powi(2) || g3.im.abs() > 1e-9 * scale.powi(3) {
        return domain("roots do not come from real invariants");
    }
    match (snap(g2.re, scale.powi(2)), snap(g3.re, scale.powi(3))) {
        (Some(g2), Some(g3)) => Ok(EllipticInvariants::new(g2, g3)),
        _ => domain("invariants are not representable as rationals"),
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// 15-point Kronrod estimate on [a, b] and its distance from the embedded 7-point Gauss rule.
fn gauss_kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        kronrod += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&o.err)
    }
}

/// Globally adaptive Gauss–Kronrod quadrature: the panel with the largest error estimate
/// is halved until the total estimate meets the relative tolerance.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    let (value, err) = gauss_kronrod(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, err });
    let (mut total, mut total_err) = (value, err);
    for _ in 0..5000 {
        if total_err <= rel_tol * total.abs() || total_err < 1e-300 {
            return Ok(total);
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let (lv, le) = gauss_kronrod(&f, worst.a, mid);
        let (rv, re) = gauss_kronrod(&f, mid, worst.b);
        total += lv + rv - worst.value;
        total_err += le + re - worst.err;
        heap.push(Panel { a: worst.a, b: mid, value: lv, err: le });
        heap.push(Panel { a: mid, b: worst.b, value: rv, err: re });
    }
    if !total.is_finite() {
        return domain("quadrature diverged");
    }
    // Re-sum to shed accumulated rounding in the running totals.
    let resummed: f64 = heap.iter().map(|p| p.value).sum();
    let err: f64 = heap.iter().map(|p| p.err).sum();
    if err <= 1e3 * rel_tol * resummed.abs() {
        Ok(resummed)
    } else {
        domain(format!("quadrature did not converge (estimate {resummed}, error {err})"))
    }
}

/// w(r) = ∫_r^∞ du/√(4u³ − g2u − g3) for r above the largest real root.
///
/// The half line is mapped onto (0, 1) by u = r + t/(1 − t); the substitution
/// t = 1 − (1 − v)² then removes the (1 − t)^{−1/2} endpoint behaviour.
pub fn r_to_w(r: f64, inv: &EllipticInvariants) -> Result<f64> {
    if !inv.all_real_roots() {
        return domain(format!("r_to_w needs real roots; {inv} has complex roots"));
    }
    let roots = roots_from_invariants(inv);
    let top = roots.max_real();
    if !(r > top) || !r.is_finite() {
        return domain(format!("r = {r} must exceed the largest root {top}"));
    }
    let g2 = to_f64(&inv.g2);
    let g3 = to_f64(&inv.g3);
    let integrand = |v: f64| {
        let one_minus_v = 1.0 - v;
        let one_minus_t = one_minus_v * one_minus_v;
        if one_minus_t == 0.0 {
            return 0.0;
        }
        let u = r + (1.0 - one_minus_t) / one_minus_t;
        let p = 4.0 * u * u * u - g2 * u - g3;
        // du = dt/(1−t)², dt = 2(1−v) dv
        2.0 * one_minus_v / (one_minus_t * one_minus_t * p.sqrt())
    };
    integrate(integrand, 0.0, 1.0, 1e-12)
}

/// dw/dr = −(4r³ − g2 r − g3)^{−1/2}
pub fn dw_dr(r: f64, inv: &EllipticInvariants) -> f64 {
    -1.0 / inv.cubic_f64(r).sqrt()
}
