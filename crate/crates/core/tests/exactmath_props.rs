use halphen::exactmath::{
    falling_factorial, generalized_binomial, int, rat, solve_cubic, ComplexValue, QComplex, RatPoly,
    Rational,
};
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-100i64..=100, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn rat_poly(max_len: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(small_rational(), 0..max_len).prop_map(RatPoly::from_coeffs)
}

fn exact_abs_residual(p: &RatPoly, z: &ComplexValue) -> f64 {
    let q = match z {
        ComplexValue::Exact(q) => q.clone(),
        ComplexValue::Approx(c) => QComplex::new(
            Rational::from_float(c.re).unwrap(),
            Rational::from_float(c.im).unwrap(),
        ),
    };
    let mut acc = QComplex::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc * q.clone() + QComplex::real(c.clone());
    }
    acc.to_c64().norm()
}

proptest! {
    #[test]
    fn derivative_orders_compose(p in rat_poly(9), a in 0usize..5, b in 0usize..5) {
        prop_assert_eq!(p.differentiate(a).differentiate(b), p.differentiate(a + b));
    }

    #[test]
    fn derivative_lowers_degree_by_one(p in rat_poly(9)) {
        if p.degree() >= 1 {
            prop_assert_eq!(p.derivative().degree(), p.degree() - 1);
        }
    }

    #[test]
    fn falling_factorial_is_multiplicative(k in 0i64..=12, m in -4i64..=4, l in -4i64..=4) {
        let lhs = falling_factorial(k, m).and_then(|a| falling_factorial(k - m, l).map(|b| a * b));
        let rhs = falling_factorial(k, m + l);
        if let (Ok(lhs), Ok(rhs)) = (lhs, rhs) {
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn generalized_binomial_matches_integer_binomial(x in 0u64..=20, p in 0usize..=20) {
        let expected: u128 = if (p as u64) > x {
            0
        } else {
            (0..p as u128).fold(1u128, |acc, i| acc * (x as u128 - i) / (i + 1))
        };
        prop_assert_eq!(generalized_binomial(&int(x as i64), p), int(expected as i64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cubic_roots_substitute_back(
        a3 in small_rational().prop_filter("nonzero", |x| !x.is_zero()),
        a2 in small_rational(),
        a1 in small_rational(),
        a0 in small_rational(),
    ) {
        let roots = solve_cubic(&a3, &a2, &a1, &a0).unwrap();
        prop_assert_eq!(roots.multiplicities.iter().sum::<usize>(), 3);
        let p = RatPoly::from_coeffs(vec![a0.clone(), a1.clone(), a2.clone(), a3.clone()]);
        let max_coef = [&a3, &a2, &a1, &a0].iter().map(|c| c.abs().to_f64().unwrap()).fold(0.0, f64::max);
        for z in &roots.roots {
            // A double-precision root is off by up to half an ulp, so the attainable
            // residual grows like |z|^3; the bound is scaled accordingly.
            let scale = z.to_c64().norm().max(1.0).powi(3);
            let res = exact_abs_residual(&p, z);
            prop_assert!(res <= 1e-12 * (1.0 + max_coef) * scale, "root {} residual {}", z, res);
        }
    }
}
