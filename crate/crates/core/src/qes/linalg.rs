//! Exact dense linear algebra over the rationals for small spectral matrices.

use super::SpectralMatrix;
use crate::exactmath::{int, RatPoly, Rational};
use num_traits::{One, Zero};

/// Reduced row echelon form and the pivot column of each nonzero row.
pub(crate) fn rref(mut a: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in c..cols {
                    let v = &a[r][k] * &f;
                    a[i][k] = &a[i][k] - v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn dense_determinant(a: &[Vec<Rational>]) -> Rational {
    let mut a = a.to_vec();
    let n = a.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Rational::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in (c + 1)..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[c][c];
            for k in c..n {
                let v = &a[c][k] * &f;
                a[i][k] = &a[i][k] - v;
            }
        }
    }
    det
}

/// Monic det(x·I − M) by the Faddeev–LeVerrier recursion.
pub fn char_poly(sm: &SpectralMatrix) -> RatPoly {
    let n = sm.dim;
    let a = &sm.m_matrix;
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = matmul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = &row[i] + &coeffs[n - k + 1];
        }
        let am = matmul(a, &next);
        let trace = (0..n).fold(Rational::zero(), |acc, i| acc + &am[i][i]);
        coeffs[n - k] = -trace / int(k as i64);
        m = next;
    }
    RatPoly::from_coeffs(coeffs)
}

fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// det(M − B·I) as a polynomial in B, interpolated through exact determinants at
/// B = 0, 1, …, n+1.
pub fn det_polynomial(sm: &SpectralMatrix) -> RatPoly {
    let nodes: Vec<Rational> = (0..=sm.dim as i64).map(int).collect();
    let values: Vec<Rational> = nodes.iter().map(|b| dense_determinant(&sm.t_matrix(b))).collect();
    let mut out = RatPoly::zero();
    for (i, xi) in nodes.iter().enumerate() {
        let mut basis = RatPoly::constant(values[i].clone());
        for (k, xk) in nodes.iter().enumerate() {
            if k != i {
                let lin = RatPoly::from_coeffs(vec![-xk.clone(), Rational::one()]);
                basis = (&basis * &lin).scale(&(Rational::one() / (xi - xk)));
            }
        }
        out = &out + &basis;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn determinant_of_small_matrices() {
        let a = vec![vec![int(2), int(1)], vec![int(7), int(4)]];
        assert_eq!(dense_determinant(&a), int(1));
        let singular = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(dense_determinant(&singular), int(0));
        let swap = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(dense_determinant(&swap), int(-1));
    }

    #[test]
    fn char_poly_and_interpolated_det_agree_up_to_sign() {
        let sm = SpectralMatrix::from_tau(3, |k, l| rat((k * 3 + l) as i64 - 4, 1 + l as i64));
        let p = char_poly(&sm);
        let d = det_polynomial(&sm);
        assert_eq!(d, p.scale(&int(-1)));
        assert_eq!(p.leading(), Some(&int(1)));
    }

    #[test]
    fn rref_reports_pivots() {
        let (r, piv) = rref(vec![vec![int(1), int(2)], vec![int(2), int(4)]]);
        assert_eq!(piv, vec![0]);
        assert_eq!(r[0], vec![int(1), int(2)]);
    }
}
