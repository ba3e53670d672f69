//! Root finding for rational polynomials: square-free splitting, exact rational roots,
//! closed-form cubics and Aberth iteration for the rest.

use super::{ComplexValue, QComplex, RatPoly, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct RootWithMultiplicity {
    pub value: ComplexValue,
    pub multiplicity: usize,
}

/// Yun's algorithm: returns (f_i, i) with p = c·Π f_i^i, each f_i monic and square-free.
pub fn squarefree_decomposition(p: &RatPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    if p.degree() < 1 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).expect("gcd divides").0;
    let mut c = dp.div_rem(&a0).expect("gcd divides").0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree() >= 1 {
        let a = b.gcd(&d);
        if a.degree() >= 1 {
            out.push((a.monic(), i));
        }
        b = b.div_rem(&a).expect("gcd divides").0;
        c = d.div_rem(&a).expect("gcd divides").0;
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Continued-fraction convergents of x with denominators up to 10^12.
pub fn rationalize(x: f64) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1): (i128, i128) = (1, x.floor() as i128);
    let (mut k0, mut k1): (i128, i128) = (0, 1);
    let mut frac = x - x.floor();
    out.push(Rational::new(BigInt::from(h1), BigInt::from(k1)));
    for _ in 0..40 {
        if frac.abs() < 1e-18 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        if !a.is_finite() || a > 1e13 {
            break;
        }
        frac = inv - a;
        let a = a as i128;
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > 1_000_000_000_000 {
            break;
        }
        out.push(Rational::new(BigInt::from(h2), BigInt::from(k2)));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
    out
}

/// Integer-coefficient primitive multiple of p.
fn primitive_integer(p: &RatPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| if g.is_zero() { c } else { c / &g }).collect()
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Candidates p/q from the rational root theorem, when the integer coefficients are small.
fn rational_root_theorem_candidates(p: &RatPoly) -> Option<Vec<Rational>> {
    let ints = primitive_integer(p);
    let lead = ints.last()?.clone();
    let tail = ints.iter().find(|c| !c.is_zero())?.clone();
    let ps = small_divisors(&tail)?;
    let qs = small_divisors(&lead)?;
    if ps.len() * qs.len() > 20_000 {
        return None;
    }
    let mut out = Vec::new();
    for pn in &ps {
        for q in &qs {
            let c = Rational::new(pn.clone(), q.clone());
            out.push(c.clone());
            out.push(-c);
        }
    }
    Some(out)
}

fn numeric_candidates(p: &RatPoly, approx: &[Complex64]) -> Vec<Rational> {
    let ints = primitive_integer(p);
    let lead = ints.last().cloned().unwrap_or_else(BigInt::one);
    let lead_f = lead.to_f64().unwrap_or(f64::INFINITY);
    let mut out = Vec::new();
    for z in approx {
        if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
            continue;
        }
        out.extend(rationalize(z.re));
        if lead_f.is_finite() && (z.re * lead_f).abs() < 1e15 {
            let num = (z.re * lead_f).round();
            out.push(Rational::new(BigInt::from(num as i128), lead.abs()));
        }
    }
    out
}

fn to_c64_poly(p: &RatPoly) -> Vec<Complex64> {
    let m = p.monic();
    m.coeffs().iter().map(|c| Complex64::new(super::to_f64(c), 0.0)).collect()
}

fn horner(cs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut f = Complex64::zero();
    let mut df = Complex64::zero();
    for c in cs.iter().rev() {
        df = df * z + f;
        f = f * z + c;
    }
    (f, df)
}

fn polish(cs: &[Complex64], z: Complex64) -> Complex64 {
    let mut best = z;
    let mut best_f = horner(cs, z).0.norm();
    let mut cur = z;
    for _ in 0..4 {
        let (f, df) = horner(cs, cur);
        if df.norm() == 0.0 {
            break;
        }
        cur -= f / df;
        let nf = horner(cs, cur).0.norm();
        if nf < best_f {
            best = cur;
            best_f = nf;
        } else {
            break;
        }
    }
    best
}

/// Depressed-cubic s± formulas for z³ + b2 z² + b1 z + b0.
pub(crate) fn cardano(b2: Complex64, b1: Complex64, b0: Complex64) -> [Complex64; 3] {
    let q = b1 / 3.0 - b2 * b2 / 9.0;
    let t = (b1 * b2 - b0 * 3.0) / 6.0 - b2 * b2 * b2 / 27.0;
    cubic_from_q_t(q, t, b2 / 3.0)
}

/// z1 = s+ + s− − shift, z2,3 = −(s+ + s−)/2 − shift ± i(√3/2)(s+ − s−), with
/// s± = [t ± (q³ + t²)^{1/2}]^{1/3} and s− taken as −q/s+ so the pair is consistent.
pub(crate) fn cubic_from_q_t(q: Complex64, t: Complex64, shift: Complex64) -> [Complex64; 3] {
    let root = (q * q * q + t * t).sqrt();
    let (u_plus, u_minus) = (t + root, t - root);
    let u = if u_plus.norm() >= u_minus.norm() { u_plus } else { u_minus };
    let s_plus = u.powf(1.0 / 3.0);
    let s_minus = if s_plus.norm() > 0.0 {
        -q / s_plus
    } else {
        Complex64::zero()
    };
    let half_sqrt3 = Complex64::new(0.0, 3f64.sqrt() / 2.0);
    [
        s_plus + s_minus - shift,
        -(s_plus + s_minus) / 2.0 - shift + half_sqrt3 * (s_plus - s_minus),
        -(s_plus + s_minus) / 2.0 - shift - half_sqrt3 * (s_plus - s_minus),
    ]
}

fn aberth(cs: &[Complex64]) -> Vec<Complex64> {
    let n = cs.len() - 1;
    let radius = 1.0 + cs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius * 0.5 + 0.1, theta)
        })
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (f, df) = horner(cs, z[i]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / df;
            let sum: Complex64 = (0..n)
                .filter(|&k| k != i)
                .map(|k| Complex64::one() / (z[i] - z[k]))
                .sum();
            let w = ratio / (Complex64::one() - ratio * sum);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-17 {
            break;
        }
    }
    z
}

/// Approximate roots of a square-free rational polynomial.
fn numeric_roots(p: &RatPoly) -> Vec<Complex64> {
    let cs = to_c64_poly(p);
    let raw = match p.degree() {
        d if d < 1 => return Vec::new(),
        1 => vec![-cs[0]],
        2 => {
            let (b, c) = (cs[1], cs[0]);
            let disc = (b * b - c * 4.0).sqrt();
            let q = if (b.conj() * disc).re >= 0.0 {
                -(b + disc) / 2.0
            } else {
                -(b - disc) / 2.0
            };
            if q.norm() == 0.0 {
                vec![Complex64::zero(), Complex64::zero()]
            } else {
                vec![q, c / q]
            }
        }
        3 => cardano(cs[2], cs[1], cs[0]).to_vec(),
        _ => aberth(&cs),
    };
    raw.into_iter()
        .map(|z| {
            let z = polish(&cs, z);
            // Snap imaginary noise of real-coefficient roots.
            if z.im.abs() < 1e-14 * (1.0 + z.re.abs()) {
                Complex64::new(z.re, 0.0)
            } else {
                z
            }
        })
        .collect()
}

/// Splits off exact rational roots of a square-free polynomial; returns them and the cofactor.
fn extract_rational_roots(f: &RatPoly) -> (Vec<Rational>, RatPoly) {
    let mut found = Vec::new();
    let mut rest = f.clone();
    // Zero roots first.
    while rest.degree() >= 1 && rest.coeff(0).is_zero() {
        found.push(Rational::zero());
        rest = RatPoly::from_coeffs(rest.coeffs()[1..].to_vec());
    }
    if rest.degree() < 1 {
        return (found, rest);
    }
    let approx = numeric_roots(&rest);
    let near_real_root = |c: &Rational| {
        let x = super::to_f64(c);
        approx
            .iter()
            .any(|z| (z.re - x).abs() <= 1e-6 * (1.0 + x.abs()) && z.im.abs() <= 1e-6 * (1.0 + x.abs()))
    };
    let mut candidates = match rational_root_theorem_candidates(&rest) {
        Some(cs) => cs.into_iter().filter(|c| near_real_root(c)).collect(),
        None => numeric_candidates(&rest, &approx),
    };
    candidates.sort();
    candidates.dedup();
    for c in candidates {
        if rest.degree() < 1 {
            break;
        }
        if rest.eval(&c).is_zero() {
            let lin = RatPoly::from_coeffs(vec![-c.clone(), Rational::one()]);
            rest = rest.div_rem(&lin).expect("linear divisor").0;
            found.push(c);
        }
    }
    (found, rest)
}

/// All roots with multiplicity; rational roots exact, others in double precision.
/// Sorted by ascending real part, then ascending imaginary part.
pub fn exact_roots(p: &RatPoly) -> Vec<RootWithMultiplicity> {
    let mut out = Vec::new();
    for (f, mult) in squarefree_decomposition(p) {
        let (rational, rest) = extract_rational_roots(&f);
        for r in rational {
            out.push(RootWithMultiplicity {
                value: ComplexValue::Exact(QComplex::real(r)),
                multiplicity: mult,
            });
        }
        for z in numeric_roots(&rest) {
            out.push(RootWithMultiplicity { value: ComplexValue::Approx(z), multiplicity: mult });
        }
    }
    out.sort_by(|a, b| a.value.cmp_re_im(&b.value));
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct CubicRoots {
    /// Distinct roots, ascending by (real, imaginary).
    pub roots: Vec<ComplexValue>,
    pub multiplicities: Vec<usize>,
    pub all_real: bool,
}

impl CubicRoots {
    /// The three roots repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<ComplexValue> {
        self.roots
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(r, &m)| std::iter::repeat_n(r.clone(), m))
            .collect()
    }
}

/// Roots of a3 r³ + a2 r² + a1 r + a0.
pub fn solve_cubic(a3: &Rational, a2: &Rational, a1: &Rational, a0: &Rational) -> Result<CubicRoots> {
    if a3.is_zero() {
        return Err(Error::Degree("leading cubic coefficient is zero".into()));
    }
    let p = RatPoly::from_coeffs(vec![a0.clone(), a1.clone(), a2.clone(), a3.clone()]);
    let found = exact_roots(&p);
    let all_real = found.iter().all(|r| match &r.value {
        ComplexValue::Exact(q) => q.is_real(),
        ComplexValue::Approx(z) => z.im == 0.0,
    });
    Ok(CubicRoots {
        roots: found.iter().map(|r| r.value.clone()).collect(),
        multiplicities: found.iter().map(|r| r.multiplicity).collect(),
        all_real,
    })
}
