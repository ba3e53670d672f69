//! Quasi-exact solvability of the canonical radial operator: the banded spectral matrix,
//! the accessory-parameter spectrum, polynomial eigenfunctions and their residuals.
//!
//! Matrix layout: column k of `m_matrix` holds the coefficients of op(r^k), so
//! `m_matrix[l][k] = τ_{k,l}` and T(B)·a = 0 is exactly op(Σ a_m r^m) = 0.

mod gauge;
mod linalg;
mod paper;
mod report;

pub use gauge::{
    gauge_exponents, printed_potential, radial_wavefunction, schrodinger_gauge, schrodinger_potential,
    statement_potential, GaugeExponents,
};
pub use linalg::{char_poly, dense_determinant, det_polynomial};
pub use paper::{
    cubic_accessory_roots, cubic_printed_roots, determinant_closed_form, determinant_recurrence, mu_paper,
    mu_recurrence, paper_tau_matrix, tau_paper, CubicCoefficients, TauRow,
};
pub use report::discrepancies;

use crate::algebraization::{apply_spec_directly, canonical_operator, canonical_spec, DifferentialOperator};
use crate::error::{Error, Result};
use crate::exactmath::{exact_roots, Coeff, ComplexValue, Polynomial, QComplex, RatPoly, Rational, RootWithMultiplicity};
use crate::weierstrass::EllipticInvariants;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralMatrix {
    pub dim: usize,
    /// B-independent part of T(B); `m_matrix[l][k] = τ_{k,l}`.
    pub m_matrix: Vec<Vec<Rational>>,
}

/// The three τ bands: τ_{k,k+1} (k = 0..n−1), τ_{k,k−1} (k = 1..n), τ_{k,k−2} (k = 2..n).
#[derive(Clone, Debug, PartialEq)]
pub struct BandProfile {
    pub superdiagonal: Vec<Rational>,
    pub subdiagonal: Vec<Rational>,
    pub sub_subdiagonal: Vec<Rational>,
}

impl SpectralMatrix {
    /// Builds the matrix from τ_{k,l}.
    pub fn from_tau(dim: usize, tau: impl Fn(usize, usize) -> Rational) -> Self {
        let m_matrix = (0..dim).map(|l| (0..dim).map(|k| tau(k, l)).collect()).collect();
        SpectralMatrix { dim, m_matrix }
    }

    pub fn tau(&self, k: usize, l: usize) -> &Rational {
        &self.m_matrix[l][k]
    }

    pub fn band_profile(&self) -> BandProfile {
        let n = self.dim;
        BandProfile {
            superdiagonal: (0..n.saturating_sub(1)).map(|k| self.tau(k, k + 1).clone()).collect(),
            subdiagonal: (1..n).map(|k| self.tau(k, k - 1).clone()).collect(),
            sub_subdiagonal: (2..n).map(|k| self.tau(k, k - 2).clone()).collect(),
        }
    }

    /// True when every τ_{k,l} with l − k ∉ {+1, −1, −2} vanishes.
    pub fn is_banded(&self) -> bool {
        (0..self.dim).all(|k| {
            (0..self.dim).all(|l| {
                let offset = l as i64 - k as i64;
                matches!(offset, 1 | -1 | -2) || self.tau(k, l).is_zero()
            })
        })
    }

    /// T(B) = M − B·I.
    pub fn t_matrix(&self, b: &Rational) -> Vec<Vec<Rational>> {
        let mut t = self.m_matrix.clone();
        for (i, row) in t.iter_mut().enumerate() {
            row[i] = &row[i] - b;
        }
        t
    }

    fn t_matrix_c64(&self, b: Complex64) -> Vec<Vec<Complex64>> {
        self.m_matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(k, x)| Complex64::from_rational(x) - if i == k { b } else { Complex64::zero() })
                    .collect()
            })
            .collect()
    }
}

/// Matrix of `op` on span{1, r, …, r^n}. The operator should carry B = 0; any constant
/// diagonal contribution stays in the matrix.
pub fn matrix_from_operator(op: &DifferentialOperator, n: usize) -> Result<SpectralMatrix> {
    let mut columns = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let image = op.apply(&RatPoly::monomial(Rational::one(), k));
        if image.degree() > n as isize {
            return Err(Error::Structural(format!(
                "operator maps r^{k} to degree {} outside polynomials of degree <= {n}",
                image.degree()
            )));
        }
        columns.push(image);
    }
    Ok(SpectralMatrix::from_tau(n + 1, |k, l| columns[k].coeff(l)))
}

/// Spectral matrix of the canonical operator with j = n/2.
pub fn canonical_matrix(n: usize, inv: &EllipticInvariants) -> Result<SpectralMatrix> {
    let j = Rational::new((n as i64).into(), 2.into());
    matrix_from_operator(&canonical_operator(&j, &inv.g2, &inv.g3, &Rational::zero()), n)
}

/// Eigenvalues of M with multiplicity, ascending by (real, imaginary).
pub fn spectrum(sm: &SpectralMatrix) -> Vec<RootWithMultiplicity> {
    exact_roots(&char_poly(sm))
}

/// The n+1 accessory parameters B for which a polynomial solution of degree ≤ n exists.
pub fn accessory_spectrum(n: usize, inv: &EllipticInvariants) -> Result<Vec<RootWithMultiplicity>> {
    Ok(spectrum(&canonical_matrix(n, inv)?))
}

/// Null vector of T(B), normalized so the first nonzero entry is 1 (a_0 = 1 when a_0 ≠ 0).
pub fn eigen_polynomial(b: &ComplexValue, sm: &SpectralMatrix) -> Result<Vec<ComplexValue>> {
    match b.as_rational() {
        Some(b) => exact_null_vector(&sm.t_matrix(b))
            .map(|v| v.into_iter().map(ComplexValue::exact_real).collect()),
        None => approx_null_vector(sm.t_matrix_c64(b.to_c64()))
            .map(|v| v.into_iter().map(ComplexValue::Approx).collect()),
    }
}

fn exact_null_vector(t: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let (rref, pivots) = linalg::rref(t.to_vec());
    let n = t.len();
    let free = (0..n)
        .find(|c| !pivots.contains(c))
        .ok_or_else(|| Error::NoNullVector("T(B) is nonsingular".into()))?;
    let mut x = vec![Rational::zero(); n];
    x[free] = Rational::one();
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = -rref[row][free].clone();
    }
    let lead = x.iter().find(|v| !v.is_zero()).cloned().expect("free entry is 1");
    Ok(x.into_iter().map(|v| v / &lead).collect())
}

/// Complete-pivoting elimination; the column of the smallest pivot is the free direction.
fn approx_null_vector(mut a: Vec<Vec<Complex64>>) -> Result<Vec<Complex64>> {
    let n = a.len();
    let scale = a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let mut cols: Vec<usize> = (0..n).collect();
    for step in 0..n {
        let (mut pr, mut pc, mut best) = (step, step, -1.0);
        for (r, row) in a.iter().enumerate().skip(step) {
            for (c, z) in row.iter().enumerate().skip(step) {
                if z.norm() > best {
                    (pr, pc, best) = (r, c, z.norm());
                }
            }
        }
        a.swap(step, pr);
        for row in a.iter_mut() {
            row.swap(step, pc);
        }
        cols.swap(step, pc);
        if best <= 1e-7 * scale {
            // Rank deficiency reached: set this unknown free and back-substitute.
            let mut y = vec![Complex64::zero(); n];
            y[step] = Complex64::one();
            for r in (0..step).rev() {
                let mut acc = Complex64::zero();
                for c in (r + 1)..=step {
                    acc += a[r][c] * y[c];
                }
                y[r] = -acc / a[r][r];
            }
            let mut x = vec![Complex64::zero(); n];
            for (pos, &c) in cols.iter().enumerate() {
                x[c] = y[pos];
            }
            let top = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let lead = *x.iter().find(|z| z.norm() > 1e-12 * top).expect("nonzero vector");
            return Ok(x.into_iter().map(|z| z / lead).collect());
        }
        for r in (step + 1)..n {
            let f = a[r][step] / a[step][step];
            for c in step..n {
                let v = a[step][c];
                a[r][c] -= f * v;
            }
        }
    }
    Err(Error::NoNullVector("T(B) is numerically nonsingular".into()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct QESSolution {
    pub b: ComplexValue,
    pub multiplicity: usize,
    pub coefficients: Vec<ComplexValue>,
    /// max |residual coefficient| / max |a_m| over both differentiation paths.
    pub residual_norm: f64,
    pub j: Rational,
    pub invariants: EllipticInvariants,
    /// Present when the Weierstrass roots are real and distinct.
    pub gauge: Option<GaugeExponents>,
}

/// Every accessory parameter for degree n with its polynomial and residual.
pub fn solve(n: usize, inv: &EllipticInvariants) -> Result<Vec<QESSolution>> {
    let sm = canonical_matrix(n, inv)?;
    let j = Rational::new((n as i64).into(), 2.into());
    let gauge = gauge_exponents(&j, inv).ok();
    spectrum(&sm)
        .into_iter()
        .map(|root| {
            let coefficients = eigen_polynomial(&root.value, &sm)?;
            let residual_norm = operator_residual(&j, inv, &root.value, &coefficients);
            Ok(QESSolution {
                b: root.value,
                multiplicity: root.multiplicity,
                coefficients,
                residual_norm,
                j: j.clone(),
                invariants: inv.clone(),
                gauge: gauge.clone(),
            })
        })
        .collect()
}

/// Residual of the canonical operator on Σ a_m r^m, taking the larger of the
/// coefficient-polynomial path and the generator-composition path; relative to max |a_m|.
pub fn operator_residual(j: &Rational, inv: &EllipticInvariants, b: &ComplexValue, a: &[ComplexValue]) -> f64 {
    let exact: Option<Vec<Rational>> = a.iter().map(|z| z.as_rational().cloned()).collect();
    if let (Some(b), Some(a)) = (b.as_rational(), exact) {
        let p = RatPoly::from_coeffs(a);
        let by_coefficients = canonical_operator(j, &inv.g2, &inv.g3, b).apply(&p);
        let by_generators = apply_spec_directly(&canonical_spec(j, &inv.g2, &inv.g3, b), &p);
        let top = crate::exactmath::abs_max(p.coeffs());
        let worst = by_coefficients
            .coeffs()
            .iter()
            .chain(by_generators.coeffs())
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero);
        return if worst.is_zero() { 0.0 } else { crate::exactmath::to_f64(&(worst / top)) };
    }
    let bc = b.to_c64();
    let p = Polynomial::from_coeffs(a.iter().map(|z| z.to_c64()).collect());
    let zero = Rational::zero();
    let shift = p.scale(&bc);
    let op = canonical_operator(j, &inv.g2, &inv.g3, &zero).map::<Complex64>();
    let by_coefficients = &op.apply(&p) - &shift;
    let by_generators = &apply_spec_directly(&canonical_spec(j, &inv.g2, &inv.g3, &zero), &p) - &shift;
    let top = p.coeffs().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let worst = by_coefficients
        .coeffs()
        .iter()
        .chain(by_generators.coeffs())
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    worst / top
}

/// T(B)·a, exact when everything is rational.
pub fn apply_t(sm: &SpectralMatrix, b: &ComplexValue, a: &[ComplexValue]) -> Vec<ComplexValue> {
    let exact: Option<Vec<Rational>> = a.iter().map(|z| z.as_rational().cloned()).collect();
    if let (Some(b), Some(a)) = (b.as_rational(), exact) {
        return sm
            .t_matrix(b)
            .iter()
            .map(|row| {
                let s = row.iter().zip(&a).fold(Rational::zero(), |acc, (t, x)| acc + t * x);
                ComplexValue::Exact(QComplex::real(s))
            })
            .collect();
    }
    let a: Vec<Complex64> = a.iter().map(|z| z.to_c64()).collect();
    sm.t_matrix_c64(b.to_c64())
        .iter()
        .map(|row| ComplexValue::Approx(row.iter().zip(&a).map(|(t, x)| t * x).sum()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    fn lemniscatic() -> EllipticInvariants {
        EllipticInvariants::new(int(1), int(0))
    }

    #[test]
    fn ground_state_has_zero_accessory_parameter() {
        let sm = canonical_matrix(0, &lemniscatic()).unwrap();
        assert_eq!(sm.m_matrix, vec![vec![int(0)]]);
        let spec = spectrum(&sm);
        assert_eq!(spec.len(), 1);
        assert_eq!(spec[0].value, ComplexValue::exact_real(int(0)));
        assert_eq!(eigen_polynomial(&spec[0].value, &sm).unwrap(), vec![ComplexValue::exact_real(int(1))]);
    }

    #[test]
    fn spin_half_matrix_is_nilpotent() {
        let sm = canonical_matrix(1, &lemniscatic()).unwrap();
        assert_eq!(sm.tau(0, 1), &int(0));
        assert_eq!(sm.tau(1, 0), &rat(-1, 4));
        let spec = spectrum(&sm);
        assert_eq!(spec.len(), 1);
        assert_eq!(spec[0].multiplicity, 2);
        assert_eq!(spec[0].value, ComplexValue::exact_real(int(0)));
    }

    #[test]
    fn entries_match_direct_application() {
        let inv = EllipticInvariants::new(int(4), int(1));
        let op = canonical_operator(&int(1), &inv.g2, &inv.g3, &int(0));
        let sm = matrix_from_operator(&op, 2).unwrap();
        let image = op.apply(&RatPoly::monomial(int(1), 1));
        for l in 0..3 {
            assert_eq!(sm.tau(1, l), &image.coeff(l));
        }
        let four = canonical_matrix(4, &inv).unwrap();
        assert!(four.is_banded());
        assert_eq!(four.m_matrix[0][3], int(0));
    }

    #[test]
    fn leaking_operator_is_rejected_with_offending_power() {
        let op = crate::algebraization::printed_canonical_operator(&int(1), &int(1), &int(0), &int(0));
        match matrix_from_operator(&op, 2) {
            Err(Error::Structural(msg)) => assert!(msg.contains("r^2"), "{msg}"),
            other => panic!("expected leak error, got {other:?}"),
        }
    }

    #[test]
    fn free_spin_example_has_irrational_pair() {
        let sm = paper_tau_matrix(1, &int(1), &int(-4), &int(0));
        let spec = spectrum(&sm);
        let values: Vec<f64> = spec.iter().map(|r| r.value.to_c64().re).collect();
        let s7 = 7f64.sqrt();
        assert!((values[0] + s7).abs() < 1e-12 && (values[1] - s7).abs() < 1e-12, "{values:?}");
        let a = eigen_polynomial(&spec[1].value, &sm).unwrap();
        assert!((a[1].to_c64() - Complex64::new(s7, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn non_eigenvalue_has_no_null_vector() {
        let sm = canonical_matrix(2, &lemniscatic()).unwrap();
        assert!(matches!(
            eigen_polynomial(&ComplexValue::exact_real(int(5)), &sm),
            Err(Error::NoNullVector(_))
        ));
        assert!(matches!(
            eigen_polynomial(&ComplexValue::Approx(Complex64::new(5.3, 0.1)), &sm),
            Err(Error::NoNullVector(_))
        ));
    }

    #[test]
    fn solutions_annihilate_the_operator() {
        for n in 0..=4 {
            for sol in solve(n, &EllipticInvariants::new(int(4), int(1))).unwrap() {
                assert!(sol.residual_norm < 1e-9, "n={n}, B={}: {}", sol.b, sol.residual_norm);
                let t = apply_t(&canonical_matrix(n, &sol.invariants).unwrap(), &sol.b, &sol.coefficients);
                assert!(t.iter().all(|z| z.to_c64().norm() < 1e-8));
            }
        }
    }
}
