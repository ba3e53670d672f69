//! Exact arithmetic substrate: rationals, dense polynomials, complex values with an
//! exactness flag, quadratic surds, factorial-family functions and cubic solving.

mod complex;
mod poly;
pub(crate) mod roots;
pub(crate) mod special;
mod surd;

pub use complex::{ComplexValue, QComplex};
pub use poly::{Coeff, Polynomial};
pub use roots::{
    exact_roots, rationalize, solve_cubic, squarefree_decomposition, CubicRoots, RootWithMultiplicity,
};
pub use special::{falling_factorial, gamma, generalized_binomial, ln_gamma, rising_factorial};
pub use surd::{CSurd, Surd};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rational = BigRational;
pub type RatPoly = Polynomial<Rational>;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Fall back to a scaled division when numerator or denominator overflow f64.
        let shift = x.numer().bits().max(x.denom().bits()) as i64 - 900;
        let (n, d) = if shift > 0 {
            (x.numer() >> shift as usize, x.denom() >> shift as usize)
        } else {
            (x.numer().clone(), x.denom().clone())
        };
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    })
}

/// Parses "p/q", an integer, or a decimal with a finite expansion ("-0.125", "1e-3") exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{ip}{fp}").parse().map_err(|_| bad())?;
    let scale = exponent - fp.len() as i64;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(digits);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -value } else { value })
}

/// Renders as "p/q", or "p" for integers.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Renders a rational polynomial in ascending powers, e.g. "-1/4 + 7 r - 3/2 r^2".
pub fn format_poly(p: &RatPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = format_rational(&c.abs());
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let unit = c.abs() == int(1);
        match k {
            0 => out.push_str(&mag),
            _ => {
                if !unit {
                    out.push_str(&mag);
                    out.push(' ');
                }
                out.push_str(var);
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
    }
    out
}

pub(crate) fn abs_max<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Rational {
    xs.into_iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}
