//! Complex values that stay exact (pairs of rationals) as long as possible.

use super::{format_rational, to_f64, Rational};
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QComplex {
    pub re: Rational,
    pub im: Rational,
}

impl QComplex {
    pub fn new(re: Rational, im: Rational) -> Self {
        QComplex { re, im }
    }

    pub fn real(re: Rational) -> Self {
        QComplex { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        QComplex::new(Rational::zero(), Rational::one())
    }

    pub fn conj(&self) -> Self {
        QComplex::new(self.re.clone(), -self.im.clone())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }

    /// (−i)^k
    pub fn minus_i_pow(k: usize) -> Self {
        let one = Rational::one();
        let zero = Rational::zero();
        match k % 4 {
            0 => QComplex::new(one, zero),
            1 => QComplex::new(zero, -one),
            2 => QComplex::new(-one, zero),
            _ => QComplex::new(zero, one),
        }
    }
}

impl Zero for QComplex {
    fn zero() -> Self {
        QComplex::real(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for QComplex {
    fn one() -> Self {
        QComplex::real(Rational::one())
    }
}

impl Add for QComplex {
    type Output = QComplex;
    fn add(self, o: QComplex) -> QComplex {
        QComplex::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for QComplex {
    type Output = QComplex;
    fn sub(self, o: QComplex) -> QComplex {
        QComplex::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for QComplex {
    type Output = QComplex;
    fn mul(self, o: QComplex) -> QComplex {
        QComplex::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for QComplex {
    type Output = QComplex;
    fn neg(self) -> QComplex {
        QComplex::new(-self.re, -self.im)
    }
}

impl super::Coeff for QComplex {
    fn from_rational(x: &Rational) -> Self {
        QComplex::real(x.clone())
    }
}

/// A complex number carried exactly when known exactly, in double precision otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum ComplexValue {
    Exact(QComplex),
    Approx(Complex64),
}

impl ComplexValue {
    pub fn exact_real(x: Rational) -> Self {
        ComplexValue::Exact(QComplex::real(x))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ComplexValue::Exact(_))
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            ComplexValue::Exact(q) => q.to_c64(),
            ComplexValue::Approx(c) => *c,
        }
    }

    pub fn as_exact(&self) -> Option<&QComplex> {
        match self {
            ComplexValue::Exact(q) => Some(q),
            ComplexValue::Approx(_) => None,
        }
    }

    /// The exact rational value, when this is exact and real.
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            ComplexValue::Exact(q) if q.is_real() => Some(&q.re),
            _ => None,
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            ComplexValue::Exact(q) => ComplexValue::Exact(q.conj()),
            ComplexValue::Approx(c) => ComplexValue::Approx(c.conj()),
        }
    }

    /// Ordering key: ascending real part, then ascending imaginary part.
    pub fn cmp_re_im(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (ComplexValue::Exact(a), ComplexValue::Exact(b)) => {
                a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
            }
            _ => {
                let (a, b) = (self.to_c64(), other.to_c64());
                // Adding 0.0 folds −0.0 into +0.0 so signed zeros compare equal.
                (a.re + 0.0).total_cmp(&(b.re + 0.0)).then_with(|| (a.im + 0.0).total_cmp(&(b.im + 0.0)))
            }
        }
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexValue::Exact(q) if q.is_real() => write!(f, "{}", format_rational(&q.re)),
            ComplexValue::Exact(q) => {
                write!(f, "{}+{}i", format_rational(&q.re), format_rational(&q.im))
            }
            ComplexValue::Approx(c) if c.im == 0.0 => write!(f, "{:.15e}", c.re),
            ComplexValue::Approx(c) => write!(f, "{:.15e}{:+.15e}i", c.re, c.im),
        }
    }
}
