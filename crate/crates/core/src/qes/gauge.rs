//! Gauge exponents, assembled radial wave functions and Schrödinger potentials.

use super::QESSolution;
use crate::algebraization::DifferentialOperator;
use crate::error::{domain, Result};
use crate::exactmath::{exact_roots, int, rat, to_f64, Rational};
use crate::weierstrass::{roots_from_invariants, EllipticInvariants};

#[derive(Clone, Debug, PartialEq)]
pub struct GaugeExponents {
    /// Weierstrass roots, descending.
    pub roots: [f64; 3],
    pub eta: [f64; 3],
    pub exact_roots: Option<[Rational; 3]>,
    pub exact_eta: Option<[Rational; 3]>,
}

/// η_s = ((9/2)(2j−1)e_s² + g2/4) / (4·Π_{t≠s}(e_s − e_t)).
pub fn gauge_exponents(j: &Rational, inv: &EllipticInvariants) -> Result<GaugeExponents> {
    let triple = roots_from_invariants(inv);
    if !triple.all_real() {
        return domain(format!("gauge exponents need real roots; {inv} has a complex pair"));
    }
    if !triple.distinct() {
        return domain(format!("repeated root of the cubic for {inv}: gauge exponent has a pole"));
    }
    let a = rat(9, 2) * (int(2) * j - int(1));
    let c = &inv.g2 / int(4);
    let exact_roots = triple.rational();
    let exact_eta = exact_roots.as_ref().map(|e| {
        std::array::from_fn(|s| {
            let den = (0..3).filter(|&t| t != s).fold(int(4), |acc, t| acc * (&e[s] - &e[t]));
            (&a * &e[s] * &e[s] + &c) / den
        })
    });
    let roots = triple.to_c64().map(|z| z.re);
    let (af, cf) = (to_f64(&a), to_f64(&c));
    let eta = std::array::from_fn(|s| {
        let den = (0..3).filter(|&t| t != s).fold(4.0, |acc, t| acc * (roots[s] - roots[t]));
        (af * roots[s] * roots[s] + cf) / den
    });
    let eta = match &exact_eta {
        Some(e) => e.clone().map(|x| to_f64(&x)),
        None => eta,
    };
    Ok(GaugeExponents { roots, eta, exact_roots, exact_eta })
}

/// R(r) = 2^{−j}·Π_s (r − e_s)^{η_s − j/2}·Σ a_m r^m.
pub fn radial_wavefunction(sol: &QESSolution, r: f64) -> Result<f64> {
    let gauge = match &sol.gauge {
        Some(g) => g.clone(),
        None => gauge_exponents(&sol.j, &sol.invariants)?,
    };
    let top = gauge.roots.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if r <= top {
        return domain(format!("radial wave function needs r > {top}, got {r}"));
    }
    let a: Vec<_> = sol.coefficients.iter().map(|z| z.to_c64()).collect();
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if a.iter().any(|z| z.im.abs() > 1e-12 * scale) {
        return domain(format!("accessory parameter {} gives a complex polynomial", sol.b));
    }
    let poly = a.iter().rev().fold(0.0, |acc, z| acc * r + z.re);
    let j = to_f64(&sol.j);
    let prefactor: f64 = (0..3).map(|s| (r - gauge.roots[s]).powf(gauge.eta[s] - j / 2.0)).product();
    Ok(2f64.powf(-j) * prefactor * poly)
}

struct Coefficients {
    p: f64,
    dp: f64,
    ddp: f64,
    q: f64,
    dq: f64,
    rr: f64,
}

fn sample(op: &DifferentialOperator, r: f64) -> Result<Coefficients> {
    let f = op.p2.to_f64();
    let p = f.eval(&r);
    if p <= 0.0 {
        return domain(format!("leading coefficient must be positive, got {p} at r = {r}"));
    }
    let q = op.p1.to_f64();
    Ok(Coefficients {
        p,
        dp: f.derivative().eval(&r),
        ddp: f.differentiate(2).eval(&r),
        q: q.eval(&r),
        dq: q.derivative().eval(&r),
        rr: op.p0.to_f64().eval(&r),
    })
}

/// V = (3P′² − 8P′Q + 4Q²)/(16P) − P″/4 + Q′/2 − R for P D² + Q D + R under
/// w = ∫_r^∞ P^{−1/2} and the gauge P^{−1/4}exp(½∫Q/P).
pub fn schrodinger_potential(op: &DifferentialOperator, r: f64) -> Result<f64> {
    let c = sample(op, r)?;
    Ok((3.0 * c.dp * c.dp - 8.0 * c.dp * c.q + 4.0 * c.q * c.q) / (16.0 * c.p) - c.ddp / 4.0 + c.dq / 2.0
        - c.rr)
}

/// The general formula with a leading minus on the fraction, as stated.
pub fn statement_potential(op: &DifferentialOperator, r: f64) -> Result<f64> {
    let c = sample(op, r)?;
    Ok(-(3.0 * c.dp * c.dp - 8.0 * c.dp * c.q + 4.0 * c.q * c.q) / (16.0 * c.p) - c.ddp / 4.0 + c.dq / 2.0
        - c.rr)
}

/// Explicit potential as displayed for the canonical operator:
/// (12r−g2)[36r(1−(2j−1)r) − 5g2]/(16P3) + (18(2j−1)r² + g2)²/(64P3) − ½[28j² + 32j − 3]r + B.
pub fn printed_potential(j: &Rational, inv: &EllipticInvariants, b: f64, r: f64) -> Result<f64> {
    let p3 = inv.cubic_f64(r);
    if p3 <= 0.0 {
        return domain(format!("4r^3 - g2 r - g3 must be positive, got {p3} at r = {r}"));
    }
    let (j, g2) = (to_f64(j), to_f64(&inv.g2));
    let s = 2.0 * j - 1.0;
    Ok((12.0 * r - g2) * (36.0 * r * (1.0 - s * r) - 5.0 * g2) / (16.0 * p3)
        + (18.0 * s * r * r + g2).powi(2) / (64.0 * p3)
        - 0.5 * (28.0 * j * j + 32.0 * j - 3.0) * r
        + b)
}

/// μ(r) = P^{−1/4}exp(½∫Q/P) for a cubic P with real simple roots, using the partial
/// fractions Q/P = Σ ρ_s/(r − e_s), ρ_s = Q(e_s)/P′(e_s).
pub fn schrodinger_gauge(op: &DifferentialOperator, r: f64) -> Result<f64> {
    if op.p2.degree() != 3 {
        return domain("gauge factor needs a cubic leading coefficient");
    }
    let roots = exact_roots(&op.p2);
    if roots.len() != 3 || roots.iter().any(|x| x.value.to_c64().im != 0.0) {
        return domain("gauge factor needs three real simple roots");
    }
    let p = op.p2.to_f64();
    let dp = p.derivative();
    let q = op.p1.to_f64();
    let pr = p.eval(&r);
    if pr <= 0.0 {
        return domain(format!("leading coefficient must be positive at r = {r}"));
    }
    let mut log = -0.25 * pr.ln();
    for root in &roots {
        let e = root.value.to_c64().re;
        let rho = q.eval(&e) / dp.eval(&e);
        log += 0.5 * rho * (r - e).abs().ln();
    }
    Ok(log.exp())
}
