//! Elements a + b·√d of a real quadratic extension of the rationals.
//!
//! Two surds can be combined only when they live in the same extension (same reduced
//! radicand) or one of them is rational. Mixing extensions is a programming error and
//! panics; use [`Surd::compatible`] first when the inputs are not known to agree.

use super::{to_f64, Coeff, QComplex, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    pub a: Rational,
    pub b: Rational,
    /// Square-free integer radicand; 0 when the value is rational.
    pub d: BigInt,
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Splits n = s²·m with m free of square factors below the trial limit.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut m = n.clone();
    let mut s = BigInt::one();
    let mut p: u64 = 2;
    while p <= TRIAL_LIMIT {
        let pp = BigInt::from(p * p);
        if pp > m.abs() {
            break;
        }
        while (&m % &pp).is_zero() {
            m /= &pp;
            s *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m.is_positive() {
        let r = m.sqrt();
        if &r * &r == m {
            s *= &r;
            m = BigInt::one();
        }
    }
    (s, m)
}

impl Surd {
    pub fn rational(a: Rational) -> Self {
        Surd { a, b: Rational::zero(), d: BigInt::zero() }
    }

    /// √x as an exact surd; rational when x is a rational square.
    pub fn sqrt(x: &Rational) -> Self {
        if x.is_zero() {
            return Surd::rational(Rational::zero());
        }
        // √(p/q) = √(p·q)/q
        let n = x.numer() * x.denom();
        let (s, m) = split_square(&n);
        let coef = Rational::new(s, x.denom().clone());
        if m.is_one() {
            Surd::rational(coef)
        } else {
            Surd { a: Rational::zero(), b: coef, d: m }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn compatible(&self, other: &Surd) -> bool {
        self.is_rational() || other.is_rational() || self.d == other.d
    }

    fn merged_d(&self, other: &Surd) -> BigInt {
        assert!(
            self.compatible(other),
            "surds from different quadratic extensions: √{} and √{}",
            self.d,
            other.d
        );
        if self.is_rational() {
            other.d.clone()
        } else {
            self.d.clone()
        }
    }

    fn build(a: Rational, b: Rational, d: BigInt) -> Self {
        if b.is_zero() {
            Surd::rational(a)
        } else {
            Surd { a, b, d }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Surd::build(&self.a * c, &self.b * c, self.d.clone())
    }

    /// Real value; NaN when the radicand is negative and b ≠ 0.
    pub fn to_f64(&self) -> f64 {
        if self.is_rational() {
            return to_f64(&self.a);
        }
        let d = self.d.to_string().parse::<f64>().unwrap_or(f64::NAN);
        to_f64(&self.a) + to_f64(&self.b) * d.sqrt()
    }

    /// Value as a complex double (handles negative radicands).
    pub fn to_c64(&self) -> num_complex::Complex64 {
        if self.is_rational() {
            return num_complex::Complex64::new(to_f64(&self.a), 0.0);
        }
        let d = self.d.to_string().parse::<f64>().unwrap_or(f64::NAN);
        let root = num_complex::Complex64::new(d, 0.0).sqrt();
        num_complex::Complex64::new(to_f64(&self.a), 0.0) + root * to_f64(&self.b)
    }
}

impl Zero for Surd {
    fn zero() -> Self {
        Surd::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Surd {
    fn one() -> Self {
        Surd::rational(Rational::one())
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        let d = self.merged_d(&o);
        Surd::build(self.a + o.a, self.b + o.b, d)
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        let d = self.merged_d(&o);
        Surd::build(self.a - o.a, self.b - o.b, d)
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        let d = self.merged_d(&o);
        let dr = Rational::from_integer(d.clone());
        let a = &self.a * &o.a + &self.b * &o.b * dr;
        let b = &self.a * &o.b + &self.b * &o.a;
        Surd::build(a, b, d)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::build(-self.a, -self.b, self.d)
    }
}

impl Coeff for Surd {
    fn from_rational(x: &Rational) -> Self {
        Surd::rational(x.clone())
    }
}

/// Complex numbers whose real and imaginary parts are surds of a common extension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CSurd {
    pub re: Surd,
    pub im: Surd,
}

impl CSurd {
    pub fn new(re: Surd, im: Surd) -> Self {
        CSurd { re, im }
    }

    pub fn from_qcomplex(q: &QComplex) -> Self {
        CSurd::new(Surd::rational(q.re.clone()), Surd::rational(q.im.clone()))
    }

    pub fn real(x: Surd) -> Self {
        CSurd::new(x, Surd::zero())
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        self.re.to_c64() + num_complex::Complex64::i() * self.im.to_c64()
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }
}

impl Zero for CSurd {
    fn zero() -> Self {
        CSurd::new(Surd::zero(), Surd::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for CSurd {
    fn one() -> Self {
        CSurd::new(Surd::one(), Surd::zero())
    }
}

impl Add for CSurd {
    type Output = CSurd;
    fn add(self, o: CSurd) -> CSurd {
        CSurd::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for CSurd {
    type Output = CSurd;
    fn sub(self, o: CSurd) -> CSurd {
        CSurd::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for CSurd {
    type Output = CSurd;
    fn mul(self, o: CSurd) -> CSurd {
        let re = self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone();
        let im = self.re * o.im + self.im * o.re;
        CSurd::new(re, im)
    }
}

impl Neg for CSurd {
    type Output = CSurd;
    fn neg(self) -> CSurd {
        CSurd::new(-self.re, -self.im)
    }
}

impl Coeff for CSurd {
    fn from_rational(x: &Rational) -> Self {
        CSurd::real(Surd::rational(x.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    #[test]
    fn square_radicands_fold_to_rationals() {
        assert_eq!(Surd::sqrt(&rat(9, 4)), Surd::rational(rat(3, 2)));
        assert!(Surd::sqrt(&int(0)).is_zero());
    }

    #[test]
    fn radicands_are_reduced() {
        let s = Surd::sqrt(&int(8));
        assert_eq!(s.b, int(2));
        assert_eq!(s.d, BigInt::from(2));
        let t = Surd::sqrt(&rat(1, 2));
        assert_eq!(t.b, rat(1, 2));
        assert_eq!(t.d, BigInt::from(2));
    }

    #[test]
    fn square_of_root_is_radicand() {
        let s = Surd::sqrt(&rat(5, 3));
        assert_eq!(s.clone() * s, Surd::rational(rat(5, 3)));
    }

    #[test]
    fn conjugate_product_is_rational() {
        let r = Surd::sqrt(&int(7));
        let x = Surd::rational(int(2)) + r.clone();
        let y = Surd::rational(int(2)) - r;
        assert_eq!(x * y, Surd::rational(int(-3)));
    }

    #[test]
    fn float_value_matches() {
        let s = Surd::rational(rat(1, 2)) + Surd::sqrt(&int(2)).scale(&int(3));
        assert!((s.to_f64() - (0.5 + 3.0 * 2f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    #[should_panic]
    fn mixing_extensions_panics() {
        let _ = Surd::sqrt(&int(2)) + Surd::sqrt(&int(3));
    }
}
