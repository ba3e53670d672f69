//! The exactly solvable branch j = 1/2: the operator (4r³ − g2r − g3)D² + (g2/4)D + B,
//! its gauge residues, the exponential change of variable w = exp(k r), terminating
//! hypergeometric and Jacobi polynomials, and assembled approximate wave functions.

use crate::algebraization::{build_from_spec, canonical_operator, canonical_spec, DifferentialOperator, OperatorSpec};
use crate::discrepancy::{compare, compare_f64, Discrepancy};
use crate::error::{domain, Error, Result};
use crate::exactmath::special::is_nonpositive_integer;
use crate::exactmath::{
    format_rational, gamma, int, rat, rising_factorial, to_f64, RatPoly, Rational, Surd,
};
use crate::weierstrass::{roots_from_invariants, EllipticInvariants};
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// (4r³ − g2r − g3)D² + (g2/4)D + B.
pub fn exact_operator(g2: &Rational, g3: &Rational, b: &Rational) -> DifferentialOperator {
    DifferentialOperator::new(
        RatPoly::from_coeffs(vec![-g3.clone(), -g2.clone(), Rational::zero(), int(4)]),
        RatPoly::constant(g2 / int(4)),
        RatPoly::constant(b.clone()),
    )
}

/// Generator form of the j = 1/2 operator as displayed: 2{J+,J0} − (g2/2){J0,J−} − g3J−² +
/// (g2/4)J− + B.
pub fn exact_spec(g2: &Rational, g3: &Rational, b: &Rational) -> OperatorSpec {
    let z = Rational::zero;
    OperatorSpec::from_upper(
        [z(), int(2), z(), z(), -(g2 / int(2)), -g3.clone()],
        [z(), z(), g2 / int(4)],
        b.clone(),
        rat(1, 2),
    )
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidueTriple {
    /// Weierstrass roots, descending.
    pub roots: [f64; 3],
    pub nu: [f64; 3],
    #[serde(skip)]
    pub exact: Option<[Rational; 3]>,
    #[serde(skip)]
    pub exact_roots: Option<[Rational; 3]>,
}

/// ν_s = g2/(32·Π_{t≠s}(e_s − e_t)), the residues of g2/(8(4r³ − g2r − g3)).
pub fn gauge_residues(inv: &EllipticInvariants) -> Result<ResidueTriple> {
    let triple = roots_from_invariants(inv);
    if !triple.all_real() {
        return domain(format!("gauge residues need real roots; {inv} has a complex pair"));
    }
    if !triple.distinct() {
        return domain(format!("repeated root of the cubic for {inv}: residue has a pole"));
    }
    let exact_roots = triple.rational();
    let exact = exact_roots.as_ref().map(|e| {
        std::array::from_fn(|s| {
            let den = (0..3).filter(|&t| t != s).fold(int(32), |acc, t| acc * (&e[s] - &e[t]));
            &inv.g2 / den
        })
    });
    let roots = triple.to_c64().map(|z| z.re);
    let g2 = to_f64(&inv.g2);
    let nu = match &exact {
        Some(e) => e.clone().map(|x| to_f64(&x)),
        None => std::array::from_fn(|s| {
            g2 / (0..3).filter(|&t| t != s).fold(32.0, |acc, t| acc * (roots[s] - roots[t]))
        }),
    };
    Ok(ResidueTriple { roots, nu, exact, exact_roots })
}

/// Roots of 2(g3 + 2)k² + g2k − 8B = 0.
#[derive(Clone, Debug, PartialEq)]
pub struct KPair {
    pub plus: Complex64,
    pub minus: Complex64,
    /// True when the discriminant g2² + 64B(g3 + 2) is negative.
    pub complex: bool,
    /// Exact values in Q(√d) when the discriminant is nonnegative.
    pub exact: Option<[Surd; 2]>,
}

/// k± = (−g2 ± √(g2² + 64B(g3 + 2)))/(4(g3 + 2)).
pub fn k_pm(b: &Rational, g2: &Rational, g3: &Rational) -> Result<KPair> {
    let a = g3 + int(2);
    if a.is_zero() {
        return Err(Error::Degree("g3 = -2 makes the k equation linear".into()));
    }
    let disc = g2 * g2 + int(64) * b * &a;
    let scale = Rational::one() / (int(4) * &a);
    if disc.is_negative() {
        let re = to_f64(&(-g2 * &scale));
        let im = to_f64(&disc).abs().sqrt() * to_f64(&scale);
        return Ok(KPair {
            plus: Complex64::new(re, im),
            minus: Complex64::new(re, -im),
            complex: true,
            exact: None,
        });
    }
    let root = Surd::sqrt(&disc);
    let plus = (Surd::rational(-g2.clone()) + root.clone()).scale(&scale);
    let minus = (Surd::rational(-g2.clone()) - root).scale(&scale);
    Ok(KPair { plus: plus.to_c64(), minus: minus.to_c64(), complex: false, exact: Some([plus, minus]) })
}

/// ₂F₁(−m, m + ν; γ | w) as a polynomial of degree m in w.
pub fn hypergeometric_2f1_terminating(m: usize, nu: &Rational, gamma_: &Rational) -> Result<RatPoly> {
    if is_nonpositive_integer(gamma_) && (-gamma_.clone()) < int(m as i64) {
        return domain(format!("(gamma)_k vanishes before termination for gamma = {gamma_}, m = {m}"));
    }
    let minus_m = -int(m as i64);
    let b = int(m as i64) + nu;
    let coeffs = (0..=m)
        .map(|k| {
            rising_factorial(&minus_m, k) * rising_factorial(&b, k)
                / (rising_factorial(gamma_, k) * rising_factorial(&int(1), k))
        })
        .collect();
    Ok(RatPoly::from_coeffs(coeffs))
}

/// w(w−1)F″ + [(ν+1)w − γ]F′ − m(m+ν)F.
pub fn hypergeometric_ode(f: &RatPoly, m: usize, nu: &Rational, gamma_: &Rational) -> RatPoly {
    let w = RatPoly::x();
    let w_w1 = &w * &RatPoly::from_coeffs(vec![-Rational::one(), Rational::one()]);
    let first = RatPoly::from_coeffs(vec![-gamma_.clone(), nu + int(1)]);
    let m = int(m as i64);
    &w_w1 * &f.differentiate(2) + &first * &f.derivative() - f.scale(&(&m * (&m + nu)))
}

fn reciprocal_gamma(x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.floor() {
        Ok(0.0)
    } else {
        Ok(1.0 / gamma(x)?)
    }
}

fn binomial(m: usize, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64)
}

fn rising(x: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (x + i as f64))
}

/// P_m^{(α,β)}(x) = Γ(α+m+1)/(m!Γ(α+β+m+1))·Σ_n C(m,n) Γ(α+β+n+m+1)/Γ(α+n+1)·((x−1)/2)^n,
/// with each Γ ratio taken as a finite rising product.
pub fn jacobi_p(m: usize, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    let y = (x - 1.0) / 2.0;
    let mut sum = 0.0;
    for n in 0..=m {
        sum += binomial(m, n) * rising(alpha + beta + m as f64 + 1.0, n) * rising(alpha + n as f64 + 1.0, m - n) * y.powi(n as i32);
    }
    Ok(sum / rising(1.0, m))
}

/// Jacobi polynomials by the three-term recurrence in the degree.
pub fn jacobi_recurrence(m: usize, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    let (a, b) = (alpha, beta);
    let mut prev = 1.0;
    if m == 0 {
        return Ok(prev);
    }
    let mut cur = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    for n in 2..=m {
        let n = n as f64;
        let s = 2.0 * n + a + b;
        let den = 2.0 * n * (n + a + b) * (s - 2.0);
        if den == 0.0 {
            return domain(format!("Jacobi recurrence degenerates at degree {n} for alpha={a}, beta={b}"));
        }
        let next = ((s - 1.0) * (s * (s - 2.0) * x + a * a - b * b) * cur
            - 2.0 * (n + a - 1.0) * (n + b - 1.0) * s * prev)
            / den;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// The printed finite sum for P_m^{(ν−γ,γ−1)}(2w − 1), with (1 − w)^n.
pub fn jacobi_printed_sum(m: usize, nu: f64, gamma_: f64, w: f64) -> Result<f64> {
    let lead = gamma(nu - gamma_ + m as f64 + 1.0)? / (gamma(m as f64 + 1.0)? * gamma(nu + m as f64)?);
    let mut sum = 0.0;
    for n in 0..=m {
        sum += binomial(m, n)
            * gamma(nu + (n + m) as f64)?
            * reciprocal_gamma(nu - gamma_ + n as f64 + 1.0)?
            * (1.0 - w).powi(n as i32);
    }
    Ok(lead * sum)
}

/// ₂F₁(−m, m+ν; γ|w) = c·P_m^{(ν−γ,γ−1)}(2w−1) with c = (−1)^m m!Γ(γ)/Γ(m+γ).
pub fn hypergeometric_jacobi_constant(m: usize, gamma_: f64) -> Result<f64> {
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * gamma(m as f64 + 1.0)? * gamma(gamma_)? / gamma(m as f64 + gamma_)?)
}

/// The printed constant (−1)^m Γ(2m+ν) m!/Γ(m+γ).
pub fn printed_hypergeometric_jacobi_constant(m: usize, nu: f64, gamma_: f64) -> Result<f64> {
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * gamma(2.0 * m as f64 + nu)? * gamma(m as f64 + 1.0)? / gamma(m as f64 + gamma_)?)
}

/// N_m = 2^{ν−1}Γ(m+ν−γ+1)Γ(m+γ)/(m!(2m+ν)Γ(m+ν)).
pub fn jacobi_norm(m: usize, nu: f64, gamma_: f64) -> Result<f64> {
    let mf = m as f64;
    if 2.0 * mf + nu == 0.0 {
        return domain("normalization needs 2m + nu != 0");
    }
    Ok(2f64.powf(nu - 1.0) * gamma(mf + nu - gamma_ + 1.0)? * gamma(mf + gamma_)?
        / (gamma(mf + 1.0)? * (2.0 * mf + nu) * gamma(mf + nu)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PCTParams {
    pub nu: u32,
    pub gamma: u32,
    pub m: u32,
    pub b: Rational,
    pub branch: Branch,
    pub inv: EllipticInvariants,
}

impl PCTParams {
    pub fn new(nu: u32, gamma: u32, m: u32, b: Rational, branch: Branch, inv: EllipticInvariants) -> Result<Self> {
        if gamma < 1 {
            return domain("gamma must be at least 1");
        }
        Ok(PCTParams { nu, gamma, m, b, branch, inv })
    }

    /// The k of the selected branch.
    pub fn k(&self) -> Result<f64> {
        let pair = k_pm(&self.b, &self.inv.g2, &self.inv.g3)?;
        if pair.complex {
            return domain(format!("k is complex for B = {}, {}", format_rational(&self.b), self.inv));
        }
        let k = match self.branch {
            Branch::Plus => &pair.exact.as_ref().expect("real pair")[0],
            Branch::Minus => &pair.exact.as_ref().expect("real pair")[1],
        };
        if k.is_zero() {
            return domain(format!("degenerate branch: k = 0 for B = {}, {}", format_rational(&self.b), self.inv));
        }
        Ok(k.to_f64())
    }
}

/// |k|^{−1/2}·Π_s(r−e_s)^{−ν_s/2}·w^{−(γ±1)/2}·(w−1)^{(ν−γ±1)/2}·P_m^{(ν−γ,γ−1)}(2w−1),
/// w = exp(k r).
pub fn exact_wavefunction(params: &PCTParams, r: f64) -> Result<f64> {
    let residues = gauge_residues(&params.inv)?;
    let top = residues.roots.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if r <= top {
        return domain(format!("wave function needs r > {top}, got {r}"));
    }
    let k = params.k()?;
    let w = (k * r).exp();
    let (nu, ga, sign) = (params.nu as f64, params.gamma as f64, params.branch.sign());
    let w_exp = -(ga + sign) / 2.0;
    let shifted_exp = (nu - ga + sign) / 2.0;
    let shifted = w - 1.0;
    let shifted_factor = if shifted > 0.0 {
        shifted.powf(shifted_exp)
    } else if shifted == 0.0 {
        if shifted_exp < 0.0 {
            return domain("singularity: w = 1 with a negative exponent");
        }
        if shifted_exp == 0.0 { 1.0 } else { 0.0 }
    } else if shifted_exp == shifted_exp.floor() {
        shifted.powi(shifted_exp as i32)
    } else {
        return domain(format!(
            "singularity: w - 1 = {shifted} < 0 raised to the fractional power {shifted_exp}; choose the other branch or parity of nu - gamma"
        ));
    };
    let gauge: f64 = (0..3).map(|s| (r - residues.roots[s]).powf(-residues.nu[s] / 2.0)).product();
    let poly = jacobi_p(params.m as usize, nu - ga, ga - 1.0, 2.0 * w - 1.0)?;
    Ok(k.abs().powf(-0.5) * gauge * w.powf(w_exp) * shifted_factor * poly)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualSample {
    pub r: f64,
    pub value: f64,
    /// |P3 R″ + (g2/4) R′ + B R|
    pub residual: f64,
    /// residual / (|P3 R″| + |(g2/4) R′| + |B R|)
    pub relative: f64,
}

fn central(f: &dyn Fn(f64) -> Result<f64>, r: f64, h: f64) -> Result<(f64, f64)> {
    let (fp, f0, fm) = (f(r + h)?, f(r)?, f(r - h)?);
    Ok(((fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)))
}

/// Residual of the j = 1/2 operator on the assembled wave function, derivatives by central
/// differences with h = 1e−5·r and one Richardson step.
pub fn residual_profile(params: &PCTParams, grid: &[f64]) -> Result<Vec<ResidualSample>> {
    let f = |r: f64| exact_wavefunction(params, r);
    let (g2, g3, b) = (to_f64(&params.inv.g2), to_f64(&params.inv.g3), to_f64(&params.b));
    grid.iter()
        .map(|&r| {
            let h = 1e-5 * r;
            let (d1h, d2h) = central(&f, r, h)?;
            let (d1q, d2q) = central(&f, r, h / 2.0)?;
            let d1 = (4.0 * d1q - d1h) / 3.0;
            let d2 = (4.0 * d2q - d2h) / 3.0;
            let value = f(r)?;
            let p3 = 4.0 * r * r * r - g2 * r - g3;
            let terms = [p3 * d2, g2 / 4.0 * d1, b * value];
            let residual = terms.iter().sum::<f64>().abs();
            let size: f64 = terms.iter().map(|t| t.abs()).sum();
            Ok(ResidualSample { r, value, residual, relative: if size == 0.0 { 0.0 } else { residual / size } })
        })
        .collect()
}

/// Logarithmic grid of `count` points on [lo, hi].
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count < 2 {
        return vec![lo];
    }
    let step = (hi / lo).ln() / (count - 1) as f64;
    (0..count).map(|i| lo * (step * i as f64).exp()).collect()
}

pub fn discrepancies() -> Vec<Discrepancy> {
    let mut out = Vec::new();
    let (g2, g3, b) = (int(1), int(0), int(1));
    let half = rat(1, 2);

    let displayed = exact_operator(&g2, &g3, &b);
    let from_generators = build_from_spec(&exact_spec(&g2, &g3, &b));
    compare(&mut out, "j=1/2 operator: generator form vs explicit form", from_generators.to_string(), displayed.to_string());
    let canonical = canonical_operator(&half, &g2, &g3, &b);
    compare(
        &mut out,
        "j=1/2 first-order coefficient vs canonical operator at j=1/2 (g2=1)",
        format_rational(&displayed.p1.coeff(0)),
        format_rational(&canonical.p1.coeff(0)),
    );
    compare(
        &mut out,
        "j=1/2 zeroth-order term vs canonical operator at j=1/2 (B=1)",
        format_rational(&displayed.p0.coeff(0)),
        format_rational(&canonical.p0.coeff(0)),
    );
    compare(
        &mut out,
        "positive-grading coefficient c+ at j=1/2",
        "0",
        format_rational(&canonical_spec(&half, &g2, &g3, &b).c_a[0]),
    );

    let pair = k_pm(&b, &g2, &g3).expect("g3 != -2");
    let disc = (1.0f64 + 64.0 * 2.0).sqrt();
    compare_f64(&mut out, "exponent rate of w_+ in the stated solution (B=1, g2=1, g3=0)", (1.0 + disc) / 8.0, pair.plus.re, 1e-12);
    compare_f64(&mut out, "exponent rate of w_- in the stated solution (B=1, g2=1, g3=0)", (1.0 - disc) / 8.0, pair.minus.re, 1e-12);

    let lem = EllipticInvariants::new(int(1), int(0));
    let nu = gauge_residues(&lem).expect("distinct").exact.expect("rational");
    compare(&mut out, "exponent of (r - e_1) in the stated wave function, lemniscatic", format_rational(&-nu[0].clone()), format_rational(&-(&nu[0] / int(2))));
    compare(
        &mut out,
        "exponent of (r - e_1) in the product form of the gauge function, lemniscatic",
        format_rational(&(&nu[0] / int(2))),
        format_rational(&-(&nu[0] / int(2))),
    );
    compare(&mut out, "g2 in terms of the roots", "4(e1e2 + e2e3 + e1e3)", "-4(e1e2 + e2e3 + e1e3)");

    let (m, nu_, ga, w) = (2usize, 2.0, 1.0, 0.3);
    let standard = jacobi_p(m, nu_ - ga, ga - 1.0, 2.0 * w - 1.0).expect("finite");
    let printed = jacobi_printed_sum(m, nu_, ga, w).expect("finite");
    compare_f64(&mut out, "Jacobi finite sum at m=2, nu=2, gamma=1, w=3/10", printed, standard, 1e-12);
    let c_printed = printed_hypergeometric_jacobi_constant(m, nu_, ga).expect("finite");
    let c_derived = hypergeometric_jacobi_constant(m, ga).expect("finite");
    compare_f64(&mut out, "hypergeometric-to-Jacobi constant at m=2, nu=2, gamma=1", c_printed, c_derived, 1e-12);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_on_simple_inputs() {
        let op = exact_operator(&int(1), &int(0), &int(3));
        assert_eq!(op.apply(&RatPoly::constant(int(5))), RatPoly::constant(int(15)));
        let lem = exact_operator(&int(1), &int(0), &int(0));
        assert_eq!(lem.apply(&RatPoly::x()), RatPoly::constant(rat(1, 4)));
    }

    #[test]
    fn generator_form_reproduces_explicit_form() {
        let (g2, g3, b) = (rat(7, 3), int(-2), rat(1, 5));
        assert_eq!(build_from_spec(&exact_spec(&g2, &g3, &b)), exact_operator(&g2, &g3, &b));
    }

    #[test]
    fn lemniscatic_residues() {
        let r = gauge_residues(&EllipticInvariants::new(int(1), int(0))).unwrap();
        assert_eq!(r.exact.unwrap()[1], rat(-1, 8));
        assert!(gauge_residues(&EllipticInvariants::new(int(0), int(0))).is_err());
    }

    #[test]
    fn k_examples() {
        let p = k_pm(&int(0), &int(1), &int(0)).unwrap();
        let [plus, minus] = p.exact.unwrap();
        assert!(plus.is_zero());
        assert_eq!(minus, Surd::rational(rat(-1, 4)));
        let sym = k_pm(&int(2), &int(0), &int(1)).unwrap();
        assert!((sym.plus.re + sym.minus.re).abs() < 1e-15);
        let c = k_pm(&int(-1), &int(1), &int(0)).unwrap();
        assert!(c.complex && c.plus == c.minus.conj());
        assert!(matches!(k_pm(&int(1), &int(1), &int(-2)), Err(Error::Degree(_))));
    }

    #[test]
    fn hypergeometric_examples() {
        assert_eq!(hypergeometric_2f1_terminating(0, &int(2), &int(1)).unwrap(), RatPoly::constant(int(1)));
        let f = hypergeometric_2f1_terminating(1, &int(2), &int(1)).unwrap();
        assert_eq!(f, RatPoly::from_coeffs(vec![int(1), int(-3)]));
        assert!(hypergeometric_ode(&f, 1, &int(2), &int(1)).is_zero());
        assert!(hypergeometric_2f1_terminating(3, &int(2), &int(-1)).is_err());
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_p(0, 0.3, 1.2, 0.4).unwrap(), 1.0);
        assert!((jacobi_p(1, 0.0, 0.0, 0.37).unwrap() - 0.37).abs() < 1e-15);
        assert!((jacobi_recurrence(1, 0.0, 0.0, 0.37).unwrap() - 0.37).abs() < 1e-15);
        // Legendre P_2(x) = (3x² − 1)/2.
        let x: f64 = -0.6;
        assert!((jacobi_p(2, 0.0, 0.0, x).unwrap() - (3.0 * x * x - 1.0) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn norm_examples() {
        assert!((jacobi_norm(0, 2.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(jacobi_norm(0, 0.0, 1.0).is_err());
    }

    #[test]
    fn zero_branch_is_degenerate() {
        let lem = EllipticInvariants::new(int(1), int(0));
        let plus = PCTParams::new(2, 1, 0, int(0), Branch::Plus, lem.clone()).unwrap();
        match exact_wavefunction(&plus, 2.0) {
            Err(Error::Domain(msg)) => assert!(msg.contains("degenerate branch")),
            other => panic!("{other:?}"),
        }
        let minus = PCTParams::new(2, 1, 0, int(0), Branch::Minus, lem).unwrap();
        // k = −1/4, w < 1, (ν−γ−1)/2 = 0 so the shifted factor is 1.
        let v = exact_wavefunction(&minus, 2.0).unwrap();
        let res = gauge_residues(&minus.inv).unwrap();
        let w = (-0.5f64).exp();
        let gauge: f64 = (0..3).map(|s| (2.0 - res.roots[s]).powf(-res.nu[s] / 2.0)).product();
        assert!((v - 2.0 * gauge * w.powf(0.0)).abs() < 1e-14, "{v}");
        assert!(PCTParams::new(2, 0, 0, int(0), Branch::Minus, minus.inv.clone()).is_err());
    }

    #[test]
    fn report_lists_printed_constants() {
        let d = discrepancies();
        let has = |s: &str| d.iter().any(|x| x.location.contains(s));
        assert!(has("hypergeometric-to-Jacobi constant"));
        assert!(has("Jacobi finite sum"));
        assert!(has("first-order coefficient vs canonical"));
        assert!(!has("generator form vs explicit form"));
        assert!(!has("positive-grading"));
    }
}
