//! Delta-series solutions R(r) = Σ a_k δ^{(k)}(r) of the lemniscatic radial operator
//! (4r³ − r)D² − (n − ½)(6r² − ½)D + n(2n − 1)r − B with n = −2s, through the Fourier side.

use crate::discrepancy::{compare, compare_f64, Discrepancy};
use crate::error::{domain, Result};
use crate::exactmath::{
    falling_factorial, format_rational, generalized_binomial, int, rat, to_f64, CSurd, QComplex, Rational, Surd,
};
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

/// Lemniscatic roots used by the weight function.
const ROOTS: [(i64, i64); 3] = [(1, 2), (0, 1), (-1, 2)];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightTerm {
    pub p: usize,
    /// m = 3⌊N1⌋ − 2p
    pub m: i64,
    /// (−1)^p 2^{−2p} C(N1, p) from expanding (r³ − r/4)^{N1}
    #[serde(skip)]
    pub binomial_weight: Rational,
    /// 2^{−2p} C(⌊N1⌋, p) as carried into the per-m brackets
    #[serde(skip)]
    pub folded_weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightSpec {
    pub n: i64,
    #[serde(skip)]
    pub exponents: [Rational; 3],
    pub floor_n1: i64,
    /// n = −2s with s ≥ 1, so ⌊N1⌋ = s − 1 and the expansion index set is nonempty.
    pub integral_floor: bool,
    pub terms: Vec<WeightTerm>,
}

/// N_s = −(n − ½)(6e_s² − ½)/(4Π_{t≠s}(e_s − e_t)) − 1 at the lemniscatic roots.
pub fn weight_exponents(n: i64) -> WeightSpec {
    let e = ROOTS.map(|(p, q)| rat(p, q));
    let nh = int(n) - rat(1, 2);
    let exponents: [Rational; 3] = std::array::from_fn(|s| {
        let den = (0..3).filter(|&t| t != s).fold(int(4), |acc, t| acc * (&e[s] - &e[t]));
        -(&nh * (int(6) * &e[s] * &e[s] - rat(1, 2))) / den - int(1)
    });
    let floor_n1 = exponents[0].floor().to_integer().try_into().expect("small exponent");
    let integral_floor = n < 0 && n % 2 == 0;
    let terms = if floor_n1 >= 0 {
        (0..=floor_n1 as usize)
            .map(|p| {
                let quarter = Rational::one() / int(4).pow(p as i32);
                let sign = if p % 2 == 0 { int(1) } else { int(-1) };
                WeightTerm {
                    p,
                    m: 3 * floor_n1 - 2 * p as i64,
                    binomial_weight: sign * &quarter * generalized_binomial(&exponents[0], p),
                    folded_weight: quarter * generalized_binomial(&int(floor_n1), p),
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    WeightSpec { n, exponents, floor_n1, integral_floor, terms }
}

/// Finite sum Σ c_j σ^j; powers may be negative when used as an order label.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SigmaPolynomial {
    pub coeffs: BTreeMap<i64, CSurd>,
}

impl SigmaPolynomial {
    pub fn monomial(power: i64, c: CSurd) -> Self {
        let mut out = SigmaPolynomial::default();
        out.add_term(power, c);
        out
    }

    pub fn add_term(&mut self, power: i64, c: CSurd) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(power).or_insert_with(CSurd::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.coeffs.remove(&power);
        }
    }

    pub fn add_scaled(&mut self, other: &SigmaPolynomial, c: &CSurd) {
        for (&j, v) in &other.coeffs {
            self.add_term(j, v.clone() * c.clone());
        }
    }

    pub fn coeff(&self, power: i64) -> CSurd {
        self.coeffs.get(&power).cloned().unwrap_or_else(CSurd::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_order(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }
}

/// ⟨r^a δ^{(b)}(r), χ_σ⟩ as (−i)^a (d/dσ)^a applied to (−i)^b σ^b: (−i)^{a+b}(b)_a σ^{b−a}.
pub fn fourier_term(power_r: usize, deriv_order: usize) -> SigmaPolynomial {
    if power_r > deriv_order {
        return SigmaPolynomial::default();
    }
    let ff = falling_factorial(deriv_order as i64, power_r as i64).expect("nonnegative order");
    let phase = QComplex::minus_i_pow(power_r + deriv_order);
    let c = CSurd::from_qcomplex(&QComplex::new(&phase.re * &ff, &phase.im * &ff));
    SigmaPolynomial::monomial((deriv_order - power_r) as i64, c)
}

/// A_k = 4(k)_{m+1} + (k)_{m−1}, S_k = (1 − 2n)[3(k)_{m+1} + ¼(k)_{m−1}],
/// D_k = n(2n − 1)(k)_{m+1} − (k)_m q.
#[derive(Clone, Debug, PartialEq)]
struct Bracket {
    a: Rational,
    s: Rational,
    d: Rational,
}

fn bracket(k: i64, m: i64, n: i64, q: &Rational) -> Result<Bracket> {
    let up = falling_factorial(k, m + 1)?;
    let mid = falling_factorial(k, m)?;
    let down = falling_factorial(k, m - 1)?;
    Ok(Bracket {
        a: int(4) * &up + &down,
        s: int(1 - 2 * n) * (int(3) * &up + &down / int(4)),
        d: int(n * (2 * n - 1)) * up - mid * q,
    })
}

/// (ς_{k,m}, ε_{k,m}) with ς = S_k/D_k and ε = A_k/D_k.
pub fn sigma_epsilon(k: i64, m: i64, n: i64, q: &Rational) -> Result<(Rational, Rational)> {
    let b = bracket(k, m, n, q)?;
    if b.d.is_zero() {
        return domain(format!("vanishing denominator n(2n-1)(k)_(m+1) - (k)_m q at k={k}, m={m}"));
    }
    Ok((&b.s / &b.d, &b.a / &b.d))
}

/// One per-m delta series. Entries below `k0` vanish; a_{k0} = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaSeries {
    pub m: i64,
    pub k0: usize,
    pub coeffs: Vec<Surd>,
}

impl DeltaSeries {
    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(Surd::to_f64).collect()
    }

    fn at(&self, k: i64) -> Surd {
        if k < 0 {
            return Surd::zero();
        }
        self.coeffs.get(k as usize).cloned().unwrap_or_else(Surd::zero)
    }
}

/// Largest k in 1..=kmax with D_k = 0, or 0. Below it the bracket cannot fix a_k.
fn start_index(kmax: usize, m: i64, n: i64, q: &Rational) -> Result<usize> {
    for k in (1..=kmax).rev() {
        if bracket(k as i64, m, n, q)?.d.is_zero() {
            return Ok(k);
        }
    }
    Ok(0)
}

fn check_k2(k2: &Rational) -> Result<()> {
    if !(k2.is_positive() && k2 < &int(1)) {
        return domain(format!("K2 must lie in (0, 1), got {}", format_rational(k2)));
    }
    Ok(())
}

/// a_{k0+1} = ς/2 + Λ/2 with Λ = (1 − 2K2)√(ς² + 4ε) at index k0 + 1.
fn first_step(k: i64, m: i64, n: i64, q: &Rational, k2: &Rational) -> Result<Surd> {
    let (sig, eps) = sigma_epsilon(k, m, n, q)?;
    let disc = &sig * &sig + int(4) * &eps;
    if disc.is_negative() {
        return domain(format!("negative discriminant sigma^2 + 4 epsilon at k={k}, m={m}"));
    }
    let lambda = Surd::sqrt(&disc).scale(&(int(1) - int(2) * k2));
    Ok((Surd::rational(sig) + lambda).scale(&rat(1, 2)))
}

fn series(
    kmax: usize,
    m: i64,
    n: i64,
    q: &Rational,
    k2: &Rational,
    step: impl Fn(&Rational, &Rational, &Surd, &Surd) -> Surd,
) -> Result<DeltaSeries> {
    if kmax < 1 {
        return domain("truncation K must be at least 1");
    }
    check_k2(k2)?;
    let k0 = start_index(kmax, m, n, q)?;
    let mut coeffs = vec![Surd::zero(); kmax + 1];
    coeffs[k0] = Surd::one();
    if k0 < kmax {
        coeffs[k0 + 1] = first_step(k0 as i64 + 1, m, n, q, k2)?;
    }
    for k in k0 + 2..=kmax {
        let (sig, eps) = sigma_epsilon(k as i64, m, n, q)?;
        coeffs[k] = step(&sig, &eps, &coeffs[k - 1], &coeffs[k - 2]);
    }
    Ok(DeltaSeries { m, k0, coeffs })
}

/// a_k = ς_{k,m}a_{k−1} + ε_{k,m}a_{k−2}, the rearranged bracket; a_{k0} = 1,
/// a_{k0+1} = ς/2 + Λ/2.
pub fn coefficients_recurrence(kmax: usize, m: i64, n: i64, q: &Rational, k2: &Rational) -> Result<DeltaSeries> {
    series(kmax, m, n, q, k2, |sig, eps, prev, prev2| prev.scale(sig) + prev2.scale(eps))
}

/// The worked chain a_k = ε_{k,m}a_{k−1} + ς_{k,m}a_{k−2}.
pub fn coefficients_worked_chain(kmax: usize, m: i64, n: i64, q: &Rational, k2: &Rational) -> Result<DeltaSeries> {
    series(kmax, m, n, q, k2, |sig, eps, prev, prev2| prev.scale(eps) + prev2.scale(sig))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedForm {
    pub value: Complex64,
    /// ς² + 4ε < 0
    pub complex: bool,
}

/// a_k = K1 t_+^k + K2 t_−^k with t_± = (ς_{k,m} ± √(ς_{k,m}² + 4ε_{k,m}))/2.
pub fn coefficients_closed_form(k: i64, m: i64, n: i64, q: &Rational, k1: &Rational, k2: &Rational) -> Result<ClosedForm> {
    if k1 + k2 != int(1) {
        return domain("closed form needs K1 + K2 = 1");
    }
    if k == 0 {
        return Ok(ClosedForm { value: Complex64::new(1.0, 0.0), complex: false });
    }
    let (sig, eps) = sigma_epsilon(k, m, n, q)?;
    let disc = to_f64(&(&sig * &sig + int(4) * &eps));
    let root = Complex64::new(disc, 0.0).sqrt();
    let s = to_f64(&sig);
    let (tp, tm) = ((s + root) / 2.0, (s - root) / 2.0);
    Ok(ClosedForm {
        value: tp.powi(k as i32) * to_f64(k1) + tm.powi(k as i32) * to_f64(k2),
        complex: disc < 0.0,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedSeries {
    pub p: usize,
    pub weight: Rational,
    pub series: DeltaSeries,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistributionExpansion {
    pub s: u32,
    pub n: i64,
    pub q: Rational,
    pub k2: Rational,
    pub truncation: usize,
    pub weights: WeightSpec,
    /// Ascending m.
    pub terms: Vec<WeightedSeries>,
}

impl DistributionExpansion {
    /// Coefficient of δ^{(k)}: unweighted sum over m.
    pub fn total(&self) -> Vec<f64> {
        (0..=self.truncation)
            .map(|k| self.terms.iter().map(|t| t.series.coeffs[k].to_f64()).sum())
            .collect()
    }

    /// Exact totals when every term lives in one quadratic extension.
    pub fn total_exact(&self) -> Option<Vec<Surd>> {
        let ds: Vec<_> = self.terms.iter().flat_map(|t| t.series.coeffs.iter()).filter(|c| !c.is_rational()).map(|c| c.d.clone()).collect();
        if ds.windows(2).any(|w| w[0] != w[1]) {
            return None;
        }
        Some(
            (0..=self.truncation)
                .map(|k| self.terms.iter().fold(Surd::zero(), |acc, t| acc + t.series.coeffs[k].clone()))
                .collect(),
        )
    }
}

/// Outer sum over m = 3⌊N1⌋ − 2p, p = 0..⌊N1⌋, for n = −2s; each m-term solved on its own.
pub fn assemble_distribution(s: u32, q: &Rational, k2: &Rational, kmax: usize) -> Result<DistributionExpansion> {
    if s < 1 {
        return domain("s must be at least 1");
    }
    let n = -2 * s as i64;
    let weights = weight_exponents(n);
    let mut terms = weights
        .terms
        .iter()
        .map(|t| {
            Ok(WeightedSeries {
                p: t.p,
                weight: t.folded_weight.clone(),
                series: coefficients_recurrence(kmax, t.m, n, q, k2)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    terms.sort_by_key(|t| t.series.m);
    Ok(DistributionExpansion { s, n, q: q.clone(), k2: k2.clone(), truncation: kmax, weights, terms })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderResidual {
    /// σ-order label k − 2 of the bracket fixing a_k.
    pub order: i64,
    pub residual: f64,
    pub exact_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TermReport {
    pub m: i64,
    pub k0: usize,
    pub interior: Vec<OrderResidual>,
    /// Orders fixed by the free initial data rather than by the bracket.
    pub initial: Vec<OrderResidual>,
    /// Orders touching coefficients beyond the truncation.
    pub boundary: Vec<OrderResidual>,
    pub first_nonzero_interior: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FourierReport {
    pub terms: Vec<TermReport>,
    pub max_interior: f64,
    pub all_interior_zero: bool,
}

/// Σ_k σ^{k−2}[A_k a_{k−2} + S_k a_{k−1} − D_k a_k] for one m-term, k = 0..K+2.
pub fn bracket_polynomial(series: &DeltaSeries, n: i64, q: &Rational) -> Result<SigmaPolynomial> {
    let mut out = SigmaPolynomial::default();
    let kmax = series.coeffs.len() as i64 - 1;
    for k in 0..=kmax + 2 {
        let b = bracket(k, series.m, n, q)?;
        let e = series.at(k - 2).scale(&b.a) + series.at(k - 1).scale(&b.s) - series.at(k).scale(&b.d);
        out.add_term(k - 2, CSurd::real(e));
    }
    Ok(out)
}

fn order_residual(poly: &SigmaPolynomial, order: i64) -> OrderResidual {
    let c = poly.coeff(order);
    OrderResidual { order, residual: c.abs_f64(), exact_zero: c.is_zero() }
}

/// Evaluates the bracket of the transformed condition order by order for every m-term.
/// Interior orders are those the recurrence fixes; they vanish exactly for rational input.
pub fn verify_fourier_condition(exp: &DistributionExpansion) -> Result<FourierReport> {
    let mut terms = Vec::new();
    for t in &exp.terms {
        let series = &t.series;
        let poly = bracket_polynomial(series, exp.n, &exp.q)?;
        let kmax = exp.truncation as i64;
        let k0 = series.k0 as i64;
        let d0_zero = bracket(k0, series.m, exp.n, &exp.q)?.d.is_zero();
        let is_initial = |k: i64| k == k0 + 1 || (k == k0 && !d0_zero);
        let mut report = TermReport { m: series.m, k0: series.k0, interior: vec![], initial: vec![], boundary: vec![], first_nonzero_interior: None };
        for k in 0..=kmax + 2 {
            let r = order_residual(&poly, k - 2);
            if k > kmax {
                report.boundary.push(r);
            } else if is_initial(k) {
                report.initial.push(r);
            } else {
                if !r.exact_zero && report.first_nonzero_interior.is_none() {
                    report.first_nonzero_interior = Some(r.order);
                }
                report.interior.push(r);
            }
        }
        terms.push(report);
    }
    let max_interior = terms.iter().flat_map(|t| t.interior.iter()).map(|r| r.residual).fold(0.0, f64::max);
    let all_interior_zero = terms.iter().all(|t| t.interior.iter().all(|r| r.exact_zero));
    Ok(FourierReport { terms, max_interior, all_interior_zero })
}

/// ⟨r^m H_1 R, χ_σ⟩ graded by the true σ-power of each r^a δ^{(b)} piece, with B = iq.
pub fn transform_polynomial(series: &DeltaSeries, n: i64, q: &Rational) -> SigmaPolynomial {
    let m = series.m as usize;
    let re = |x: Rational| CSurd::real(Surd::rational(x));
    let nh = int(n) - rat(1, 2);
    let b = CSurd::new(Surd::zero(), Surd::rational(q.clone()));
    let mut out = SigmaPolynomial::default();
    for (k, a) in series.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mut piece = SigmaPolynomial::default();
        piece.add_scaled(&fourier_term(m + 3, k + 2), &re(int(4)));
        piece.add_scaled(&fourier_term(m + 1, k + 2), &re(int(-1)));
        piece.add_scaled(&fourier_term(m + 2, k + 1), &re(-(int(6) * &nh)));
        piece.add_scaled(&fourier_term(m, k + 1), &re(&nh / int(2)));
        piece.add_scaled(&fourier_term(m + 1, k), &re(int(n * (2 * n - 1))));
        piece.add_scaled(&fourier_term(m, k), &-b.clone());
        out.add_scaled(&piece, &CSurd::real(a.clone()));
    }
    out
}

/// Largest coefficient of `transform_polynomial` at σ-powers no coefficient beyond the
/// truncation can reach.
pub fn transform_interior_max(series: &DeltaSeries, n: i64, q: &Rational) -> f64 {
    let top = series.coeffs.len() as i64 - 1 - 1 - series.m;
    transform_polynomial(series, n, q)
        .coeffs
        .iter()
        .filter(|(&j, _)| j <= top)
        .map(|(_, c)| c.abs_f64())
        .fold(0.0, f64::max)
}

pub fn discrepancies() -> Vec<Discrepancy> {
    let mut out = Vec::new();
    let (n, q, k2) = (-2i64, Rational::zero(), rat(1, 2));
    let rec = coefficients_recurrence(12, 0, n, &q, &k2).expect("s=1 sequence");
    let chain = coefficients_worked_chain(12, 0, n, &q, &k2).expect("s=1 sequence");
    for k in [2usize, 3] {
        compare_f64(
            &mut out,
            &format!("a_{k} by the worked chain eps*a_(k-1) + sigma*a_(k-2) vs the rearranged bracket (s=1, q=0, K2=1/2)"),
            chain.coeffs[k].to_f64(),
            rec.coeffs[k].to_f64(),
            1e-12,
        );
    }
    let closed = coefficients_closed_form(2, 0, n, &q, &rat(1, 2), &k2).expect("real roots");
    compare_f64(&mut out, "characteristic-root closed form for a_2 (s=1, q=0, K1=K2=1/2)", closed.value.re, rec.coeffs[2].to_f64(), 1e-12);

    let chain_exp = DistributionExpansion {
        s: 1,
        n,
        q: q.clone(),
        k2: k2.clone(),
        truncation: 12,
        weights: weight_exponents(n),
        terms: vec![WeightedSeries { p: 0, weight: int(1), series: chain }],
    };
    let chain_report = verify_fourier_condition(&chain_exp).expect("finite brackets");
    compare_f64(&mut out, "largest interior bracket residual of the worked-chain coefficients (s=1, q=0)", 0.0, chain_report.max_interior, 1e-12);
    compare_f64(
        &mut out,
        "largest interior coefficient of the transformed weighted operator graded by true sigma-power (s=1, q=0, K2=1/2)",
        0.0,
        transform_interior_max(&rec, n, &q),
        1e-12,
    );

    compare(&mut out, "falling-factorial order on the cubic part of the a_(k-2) coefficient after the index shift", "(k)_(m+1)", "(k)_(m+3)");
    compare(&mut out, "falling-factorial order on the linear part of the a_(k-2) coefficient after the index shift", "(k)_(m-1)", "(k)_(m+1)");
    compare(&mut out, "falling-factorial order on the quadratic part of the a_(k-1) coefficient after the index shift", "(k)_(m+1)", "(k)_(m+2)");
    compare(&mut out, "falling-factorial order on the constant part of the a_(k-1) coefficient after the index shift", "(k)_(m-1)", "(k)_(m)");
    compare(&mut out, "sign of the q term between the transformed condition and the recurrence", "-(k)_m q", "+(k)_m q");

    let w = weight_exponents(-2);
    compare(
        &mut out,
        "integer part of N1 = 1/4 under the stated greatest-integer-greater-or-equal definition",
        format_rational(&w.exponents[0].ceil()),
        w.floor_n1.to_string(),
    );
    let w2 = weight_exponents(-4);
    compare(
        &mut out,
        "binomial weight of the p=1 term for s=2: C(N1,1) vs C(floor N1,1)",
        format_rational(&generalized_binomial(&w2.exponents[0], 1)),
        format_rational(&generalized_binomial(&int(w2.floor_n1), 1)),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_examples() {
        let w = weight_exponents(-2);
        assert_eq!(w.exponents, [rat(1, 4), rat(1, 4), rat(1, 4)]);
        assert_eq!((w.floor_n1, w.terms.len(), w.terms[0].m), (0, 1, 0));
        let w = weight_exponents(-4);
        assert_eq!(w.exponents[1], rat(5, 4));
        assert_eq!(w.terms.iter().map(|t| (t.p, t.m)).collect::<Vec<_>>(), vec![(0, 3), (1, 1)]);
        assert_eq!(w.terms[1].folded_weight, rat(1, 4));
        assert_eq!(w.terms[1].binomial_weight, rat(-5, 16));
        let w = weight_exponents(0);
        assert_eq!(w.exponents[2], rat(-3, 4));
        assert!(!w.integral_floor && w.terms.is_empty());
    }

    #[test]
    fn fourier_term_examples() {
        let minus_one = CSurd::real(Surd::rational(int(-1)));
        assert_eq!(fourier_term(0, 2), SigmaPolynomial::monomial(2, minus_one));
        let i = CSurd::new(Surd::zero(), Surd::one());
        assert_eq!(fourier_term(0, 3), SigmaPolynomial::monomial(3, i));
        assert_eq!(fourier_term(2, 2), SigmaPolynomial::monomial(0, CSurd::real(Surd::rational(int(2)))));
        assert!(fourier_term(3, 2).is_zero());
    }

    #[test]
    fn sigma_epsilon_example() {
        assert_eq!(sigma_epsilon(1, 0, -2, &int(0)).unwrap(), (rat(25, 16), rat(9, 20)));
        match sigma_epsilon(1, 1, -4, &int(0)) {
            Err(crate::error::Error::Domain(msg)) => assert!(msg.contains("k=1, m=1")),
            other => panic!("{other:?}"),
        }
        let (s, e) = sigma_epsilon(1, 0, -2, &int(1_000_000_000)).unwrap();
        assert!(to_f64(&s).abs() < 1e-5 && to_f64(&e).abs() < 1e-5);
    }

    #[test]
    fn first_coefficients() {
        let a = coefficients_recurrence(12, 0, -2, &int(0), &rat(1, 2)).unwrap();
        assert_eq!(a.coeffs[0], Surd::one());
        assert_eq!(a.coeffs[1], Surd::rational(rat(25, 32)));
        let (s2, e2) = sigma_epsilon(2, 0, -2, &int(0)).unwrap();
        assert_eq!(a.coeffs[2], Surd::rational(&s2 * rat(25, 32) + e2));
        let chain = coefficients_worked_chain(12, 0, -2, &int(0), &rat(1, 2)).unwrap();
        let (s2, e2) = sigma_epsilon(2, 0, -2, &int(0)).unwrap();
        assert_eq!(chain.coeffs[2], Surd::rational(&e2 * rat(25, 32) + s2));
        assert!(coefficients_recurrence(12, 0, -2, &int(0), &int(1)).is_err());
    }

    #[test]
    fn closed_form_agrees_for_small_k() {
        let q = int(0);
        let rec = coefficients_recurrence(4, 0, -2, &q, &rat(1, 4)).unwrap();
        for k in 0..=1 {
            let c = coefficients_closed_form(k, 0, -2, &q, &rat(3, 4), &rat(1, 4)).unwrap();
            assert!((c.value.re - rec.coeffs[k as usize].to_f64()).abs() < 1e-12);
        }
        assert!(coefficients_closed_form(1, 0, -2, &q, &rat(1, 2), &rat(1, 4)).is_err());
    }

    #[test]
    fn offsets_for_second_weight_term() {
        let exp = assemble_distribution(2, &int(0), &rat(1, 2), 12).unwrap();
        let offs: Vec<(i64, usize)> = exp.terms.iter().map(|t| (t.series.m, t.series.k0)).collect();
        assert_eq!(offs, vec![(1, 1), (3, 3)]);
        let exp = assemble_distribution(2, &int(1), &rat(1, 2), 12).unwrap();
        let offs: Vec<(i64, usize)> = exp.terms.iter().map(|t| (t.series.m, t.series.k0)).collect();
        assert_eq!(offs, vec![(1, 0), (3, 2)]);
    }

    #[test]
    fn closure_for_single_term() {
        let exp = assemble_distribution(1, &int(0), &rat(1, 2), 12).unwrap();
        let report = verify_fourier_condition(&exp).unwrap();
        assert!(report.all_interior_zero);
        assert_eq!(report.terms[0].interior.len(), 12);
        assert!(report.terms[0].boundary.iter().any(|r| !r.exact_zero));
        let tiny = assemble_distribution(1, &int(0), &rat(1, 2), 1).unwrap();
        assert!(verify_fourier_condition(&tiny).unwrap().terms[0].interior.iter().all(|r| r.exact_zero));
    }

    #[test]
    fn report_lists_findings() {
        let d = discrepancies();
        let has = |s: &str| d.iter().any(|x| x.location.contains(s));
        assert!(has("worked chain"));
        assert!(has("true sigma-power"));
        assert!(has("greatest-integer"));
    }
}
