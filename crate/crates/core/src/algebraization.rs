//! sl(2) generators acting on polynomials, second-order operators assembled from structure
//! constants, the radial operator constructors, the structure metric and the adjoint.
//!
//! Generators: J− = d/dr, J0 = r d/dr − j, J+ = r² d/dr − 2jr. An [`OperatorSpec`] encodes
//! −H = Σ c_ab J_a J_b + Σ c_a J_a + c_*, with c_ab symmetric.

use crate::discrepancy::{compare, Discrepancy};
use crate::error::{Error, Result};
use crate::exactmath::{format_poly, format_rational, int, rat, to_f64, Coeff, Polynomial, RatPoly, Rational};
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Plus,
    Zero,
    Minus,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::Plus, Generator::Zero, Generator::Minus];

    pub fn index(self) -> usize {
        match self {
            Generator::Plus => 0,
            Generator::Zero => 1,
            Generator::Minus => 2,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Generator::Plus => "+",
            Generator::Zero => "0",
            Generator::Minus => "-",
        }
    }
}

pub fn apply_generator<T: Coeff>(which: Generator, j: &Rational, p: &Polynomial<T>) -> Polynomial<T> {
    let dp = p.derivative();
    match which {
        Generator::Minus => dp,
        Generator::Zero => dp.shift(1) - p.scale(&T::from_rational(j)),
        Generator::Plus => dp.shift(2) - p.shift(1).scale(&T::from_rational(&(int(2) * j))),
    }
}

/// [A, B]p = A(Bp) − B(Ap)
pub fn commutator<T: Coeff>(a: Generator, b: Generator, j: &Rational, p: &Polynomial<T>) -> Polynomial<T> {
    let ab = apply_generator(a, j, &apply_generator(b, j, p));
    let ba = apply_generator(b, j, &apply_generator(a, j, p));
    ab - ba
}

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSpec {
    c_ab: [[Rational; 3]; 3],
    /// (c_+, c_0, c_−)
    pub c_a: [Rational; 3],
    pub c_star: Rational,
    pub j: Rational,
}

impl OperatorSpec {
    pub fn new(c_ab: [[Rational; 3]; 3], c_a: [Rational; 3], c_star: Rational, j: Rational) -> Result<Self> {
        for a in 0..3 {
            for b in 0..a {
                if c_ab[a][b] != c_ab[b][a] {
                    return Err(Error::Structural(format!(
                        "structure constants must be symmetric: c[{a}][{b}] = {} but c[{b}][{a}] = {}",
                        format_rational(&c_ab[a][b]),
                        format_rational(&c_ab[b][a])
                    )));
                }
            }
        }
        Ok(OperatorSpec { c_ab, c_a, c_star, j })
    }

    /// Builds the symmetric block from (c++, c+0, c+−, c00, c0−, c−−).
    pub fn from_upper(upper: [Rational; 6], c_a: [Rational; 3], c_star: Rational, j: Rational) -> Self {
        let [pp, p0, pm, zz, zm, mm] = upper;
        let c_ab = [
            [pp, p0.clone(), pm.clone()],
            [p0, zz, zm.clone()],
            [pm, zm, mm],
        ];
        OperatorSpec { c_ab, c_a, c_star, j }
    }

    pub fn zero(j: Rational) -> Self {
        let z = Rational::zero;
        OperatorSpec::from_upper([z(), z(), z(), z(), z(), z()], [z(), z(), z()], z(), j)
    }

    pub fn c(&self, a: Generator, b: Generator) -> &Rational {
        &self.c_ab[a.index()][b.index()]
    }

    pub fn c_lin(&self, a: Generator) -> &Rational {
        &self.c_a[a.index()]
    }

    pub fn quadratic(&self) -> &[[Rational; 3]; 3] {
        &self.c_ab
    }

    /// No positive-grading part: c++ = c+0 = c+− = c+ = 0.
    pub fn is_exactly_solvable(&self) -> bool {
        use Generator::*;
        self.c(Plus, Plus).is_zero()
            && self.c(Plus, Zero).is_zero()
            && self.c(Plus, Minus).is_zero()
            && self.c_lin(Plus).is_zero()
    }
}

impl std::fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use Generator::*;
        let q = |a, b| format_rational(self.c(a, b));
        write!(
            f,
            "c++={}, c+0={}, c+-={}, c00={}, c0-={}, c--={}, c+={}, c0={}, c-={}, c*={}",
            q(Plus, Plus),
            q(Plus, Zero),
            q(Plus, Minus),
            q(Zero, Zero),
            q(Zero, Minus),
            q(Minus, Minus),
            format_rational(self.c_lin(Plus)),
            format_rational(self.c_lin(Zero)),
            format_rational(self.c_lin(Minus)),
            format_rational(&self.c_star)
        )
    }
}

/// Evaluates −H p by literal composition of generators, each mixed pair symmetrized
/// as c_ab (J_a J_b + J_b J_a).
pub fn apply_spec_directly<T: Coeff>(spec: &OperatorSpec, p: &Polynomial<T>) -> Polynomial<T> {
    let j = &spec.j;
    let mut out = p.scale(&T::from_rational(&spec.c_star));
    for (ia, &a) in Generator::ALL.iter().enumerate() {
        out = out + apply_generator(a, j, p).scale(&T::from_rational(&spec.c_a[ia]));
        for (ib, &b) in Generator::ALL.iter().enumerate().skip(ia) {
            let c = &spec.c_ab[ia][ib];
            if c.is_zero() {
                continue;
            }
            let ab = apply_generator(a, j, &apply_generator(b, j, p));
            let term = if ia == ib { ab } else { ab + apply_generator(b, j, &apply_generator(a, j, p)) };
            out = out + term.scale(&T::from_rational(c));
        }
    }
    out
}

/// Second-order operator p2 D² + p1 D + p0.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferentialOperator<T: Coeff = Rational> {
    pub p2: Polynomial<T>,
    pub p1: Polynomial<T>,
    pub p0: Polynomial<T>,
}

impl<T: Coeff> DifferentialOperator<T> {
    pub fn new(p2: Polynomial<T>, p1: Polynomial<T>, p0: Polynomial<T>) -> Self {
        DifferentialOperator { p2, p1, p0 }
    }

    pub fn apply(&self, p: &Polynomial<T>) -> Polynomial<T> {
        &self.p2 * &p.differentiate(2) + &self.p1 * &p.derivative() + &self.p0 * p
    }
}

impl DifferentialOperator<Rational> {
    pub fn map<U: Coeff>(&self) -> DifferentialOperator<U> {
        let f = |p: &RatPoly| p.map(U::from_rational);
        DifferentialOperator::new(f(&self.p2), f(&self.p1), f(&self.p0))
    }

    /// Adds c to the order-zero coefficient.
    pub fn plus_constant(&self, c: &Rational) -> Self {
        DifferentialOperator::new(self.p2.clone(), self.p1.clone(), &self.p0 + &RatPoly::constant(c.clone()))
    }
}

impl std::fmt::Display for DifferentialOperator<Rational> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}) D^2 + ({}) D + ({})",
            format_poly(&self.p2, "r"),
            format_poly(&self.p1, "r"),
            format_poly(&self.p0, "r")
        )
    }
}

/// (P4, P2, P0) of the closed form:
/// P4 = c++r⁴ + 2c+0 r³ + (c00 + 2c+−)r² + 2c0− r + c−−, P2 = c+r² + c0 r + c−,
/// P0 = j(j+1)/3·(c00 − 4c+−) + c*.
pub fn closed_form_parts(spec: &OperatorSpec) -> (RatPoly, RatPoly, Rational) {
    use Generator::*;
    let two = int(2);
    let p4 = RatPoly::from_coeffs(vec![
        spec.c(Minus, Minus).clone(),
        &two * spec.c(Zero, Minus),
        spec.c(Zero, Zero) + &two * spec.c(Plus, Minus),
        &two * spec.c(Plus, Zero),
        spec.c(Plus, Plus).clone(),
    ]);
    let p2 = RatPoly::from_coeffs(vec![
        spec.c_lin(Minus).clone(),
        spec.c_lin(Zero).clone(),
        spec.c_lin(Plus).clone(),
    ]);
    let j = &spec.j;
    let p0 = j * (j + int(1)) / int(3) * (spec.c(Zero, Zero) - int(4) * spec.c(Plus, Minus)) + &spec.c_star;
    (p4, p2, p0)
}

/// −H = P4 D² + (P2 − ((2j−1)/2)P4′) D + (P0 − jP2′ + (j(2j−1)/6)P4″).
pub fn build_from_spec(spec: &OperatorSpec) -> DifferentialOperator {
    let (p4, p2, p0) = closed_form_parts(spec);
    let j = &spec.j;
    let two_j_minus_1 = int(2) * j - int(1);
    let p1 = &p2 - &p4.derivative().scale(&(&two_j_minus_1 / int(2)));
    let p0 = &RatPoly::constant(p0) - &p2.derivative().scale(j)
        + p4.differentiate(2).scale(&(j * &two_j_minus_1 / int(6)));
    DifferentialOperator::new(p4, p1, p0)
}

fn weierstrass_cubic(g2: &Rational, g3: &Rational) -> RatPoly {
    RatPoly::from_coeffs(vec![-g3.clone(), -g2.clone(), Rational::zero(), int(4)])
}

/// (4r³ − g2r − g3)D² − (n − 1/2)(6r² − g2/2)D + n(2n − 1)r − B
pub fn radial_operator(n: i64, g2: &Rational, g3: &Rational, b: &Rational) -> DifferentialOperator {
    let n = int(n);
    let half = rat(1, 2);
    let factor = -(&n - &half);
    let p1 = RatPoly::from_coeffs(vec![-(g2 * &half), Rational::zero(), int(6)]).scale(&factor);
    let p0 = RatPoly::from_coeffs(vec![-b.clone(), &n * (int(2) * &n - int(1))]);
    DifferentialOperator::new(weierstrass_cubic(g2, g3), p1, p0)
}

/// Structure constants of the algebraized radial operator: c+0 = 2, c0− = −g2/2,
/// c−− = −g3, c+ = 3(1/2 − j), c0 = 0, c− = −(j − 1/4)g2, c* = −B.
pub fn canonical_spec(j: &Rational, g2: &Rational, g3: &Rational, b: &Rational) -> OperatorSpec {
    let z = Rational::zero;
    OperatorSpec::from_upper(
        [z(), int(2), z(), z(), -(g2 / int(2)), -g3.clone()],
        [int(3) * (rat(1, 2) - j), z(), -((j - rat(1, 4)) * g2)],
        -b.clone(),
        j.clone(),
    )
}

/// Constants as written in the displayed generator form of the canonical operator,
/// where the J− coefficient carries the opposite sign.
pub fn displayed_canonical_spec(j: &Rational, g2: &Rational, g3: &Rational, b: &Rational) -> OperatorSpec {
    let mut spec = canonical_spec(j, g2, g3, b);
    spec.c_a[2] = -spec.c_a[2].clone();
    spec
}

/// The canonical QES operator, obtained from [`canonical_spec`]; preserves polynomials of
/// degree ≤ 2j.
pub fn canonical_operator(j: &Rational, g2: &Rational, g3: &Rational, b: &Rational) -> DifferentialOperator {
    build_from_spec(&canonical_spec(j, g2, g3, b))
}

/// (4r³ − g2r − g3)D² + ((9/2)(2j − 1)r² + g2/4)D + 7j(2j − 1)r − B, transcribed as printed.
pub fn printed_canonical_operator(j: &Rational, g2: &Rational, g3: &Rational, b: &Rational) -> DifferentialOperator {
    let s = int(2) * j - int(1);
    let p1 = RatPoly::from_coeffs(vec![g2 / int(4), Rational::zero(), rat(9, 2) * &s]);
    let p0 = RatPoly::from_coeffs(vec![-b.clone(), int(7) * j * &s]);
    DifferentialOperator::new(weierstrass_cubic(g2, g3), p1, p0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureMetric {
    pub matrix: [[Rational; 3]; 3],
    pub determinant: Rational,
    pub vector_modulus: f64,
}

pub fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Metric [c_ab] in the order (+, 0, −), its determinant and √(c+² + c−² + c0²).
pub fn structure_metric(spec: &OperatorSpec) -> StructureMetric {
    let matrix = spec.quadratic().clone();
    let determinant = det3(&matrix);
    let vector_modulus = spec.c_a.iter().map(|c| to_f64(c).powi(2)).sum::<f64>().sqrt();
    StructureMetric { matrix, determinant, vector_modulus }
}

/// c_ab ↦ −c_ab, c_a ↦ conj(c_a), c* ↦ conj(c*); conjugation is the identity on real constants.
pub fn adjoint(spec: &OperatorSpec) -> OperatorSpec {
    let mut out = spec.clone();
    for row in out.c_ab.iter_mut() {
        for c in row.iter_mut() {
            *c = -c.clone();
        }
    }
    out
}

/// Adjoint of the canonical spec as displayed: quadratic part kept, linear part and
/// constant negated.
pub fn displayed_canonical_adjoint(j: &Rational, g2: &Rational, g3: &Rational, b: &Rational) -> OperatorSpec {
    let mut spec = displayed_canonical_spec(j, g2, g3, b);
    for c in spec.c_a.iter_mut() {
        *c = -c.clone();
    }
    spec.c_star = -spec.c_star.clone();
    spec
}

/// Printed relations of this module compared against the construction at sample parameters.
pub fn discrepancies() -> Vec<Discrepancy> {
    use Generator::*;
    let mut out = Vec::new();
    let (one, zero) = (int(1), Rational::zero());

    let unit = RatPoly::constant(int(1));
    let lhs = commutator(Plus, Minus, &one, &unit);
    let printed = apply_generator(Zero, &one, &unit).scale(&int(2));
    compare(
        &mut out,
        "commutator [J+, J-] applied to 1 at j=1 (printed as +2 J0)",
        format_poly(&printed, "r"),
        format_poly(&lhs, "r"),
    );

    let mut spec = OperatorSpec::zero(one.clone());
    spec.c_ab[0][2] = int(1);
    spec.c_ab[2][0] = int(1);
    let proof_p0 = int(2) * &one * (int(2) * &one - int(1)) / int(3);
    let composed = apply_spec_directly(&spec, &unit).coeff(0);
    compare(
        &mut out,
        "constant term P0 in the derivation of the general closed form (j=1, c+-=1)",
        format_rational(&proof_p0),
        format_rational(&composed),
    );

    let (j, g2, g3, b) = (one.clone(), one.clone(), zero.clone(), zero.clone());
    let printed = printed_canonical_operator(&j, &g2, &g3, &b);
    let derived = canonical_operator(&j, &g2, &g3, &b);
    compare(
        &mut out,
        "first-order coefficient of the canonical operator (j=1, g2=1, g3=0)",
        format_poly(&printed.p1, "r"),
        format_poly(&derived.p1, "r"),
    );
    let r2j = RatPoly::monomial(int(1), 2);
    compare(
        &mut out,
        "coefficient of r^(2j+1) when the printed canonical operator acts on r^(2j) (j=1, g2=1, g3=0)",
        format_rational(&printed.apply(&r2j).coeff(3)),
        format_rational(&derived.apply(&r2j).coeff(3)),
    );
    compare(
        &mut out,
        "J- coefficient in the displayed generator form of the canonical operator (j=1, g2=1)",
        format_rational(displayed_canonical_spec(&j, &g2, &g3, &b).c_lin(Minus)),
        format_rational(canonical_spec(&j, &g2, &g3, &b).c_lin(Minus)),
    );
    compare(
        &mut out,
        "first-order coefficient: radial operator with n=2j versus its algebraized form (j=1, g2=1)",
        format_poly(&radial_operator(2, &g2, &g3, &b).p1, "r"),
        format_poly(&derived.p1, "r"),
    );
    compare(
        &mut out,
        "zeroth-order coefficient: radial operator with n=2j versus its algebraized form (j=1, g2=1, B=0)",
        format_poly(&radial_operator(2, &g2, &g3, &b).p0, "r"),
        format_poly(&derived.p0, "r"),
    );

    let (g3s, bs) = (int(1), int(1));
    compare(
        &mut out,
        "adjoint of the canonical spec (j=1, g2=1, g3=1, B=1)",
        displayed_canonical_adjoint(&j, &g2, &g3s, &bs).to_string(),
        adjoint(&canonical_spec(&j, &g2, &g3s, &bs)).to_string(),
    );

    let det = structure_metric(&canonical_spec(&j, &g2, &int(-1), &b)).determinant;
    compare(
        &mut out,
        "sign of the structure metric determinant 4 g3 (g3=-1), printed as nonnegative",
        ">= 0",
        if det.is_negative() { format!("{} < 0", format_rational(&det)) } else { ">= 0".into() },
    );
    out
}
