use halphen::exactmath::{int, rat, ComplexValue, Rational};
use halphen::weierstrass::{
    dw_dr, invariants_from_roots, r_to_w, roots_from_invariants, EllipticInvariants,
};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=8).prop_map(|(n, d)| rat(n, d))
}

/// Independent oracle: u = 1/s² turns the half-line integral into
/// ∫_0^{1/√r} 2 ds / √(4 − g2 s⁴ − g3 s⁶), integrated by composite Simpson.
fn w_oracle(r: f64, g2: f64, g3: f64) -> f64 {
    let top = 1.0 / r.sqrt();
    let n = 20_000;
    let h = top / n as f64;
    let f = |s: f64| 2.0 / (4.0 - g2 * s.powi(4) - g3 * s.powi(6)).sqrt();
    let mut acc = f(0.0) + f(top);
    for i in 1..n {
        acc += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn invariants_round_trip(g2 in small_rational(), g3 in small_rational()) {
        let inv = EllipticInvariants::new(g2, g3);
        prop_assume!(inv.all_real_roots());
        let roots = roots_from_invariants(&inv);
        prop_assert_eq!(invariants_from_roots(&roots.e).unwrap(), inv);
    }

    #[test]
    fn rational_roots_round_trip(a in small_rational(), b in small_rational()) {
        let e = [
            ComplexValue::exact_real(a.clone()),
            ComplexValue::exact_real(b.clone()),
            ComplexValue::exact_real(-(a + b)),
        ];
        let inv = invariants_from_roots(&e).unwrap();
        let back = roots_from_invariants(&inv);
        prop_assert!(back.rational().is_some());
        prop_assert_eq!(invariants_from_roots(&back.e).unwrap(), inv);
    }
}

#[test]
fn w_is_strictly_decreasing() {
    let cases = [(int(1), int(0)), (int(3), int(1)), (int(7), rat(-1, 2))];
    let mut pairs = 0;
    for (g2, g3) in cases {
        let inv = EllipticInvariants::new(g2, g3);
        let top = roots_from_invariants(&inv).max_real();
        let grid: Vec<f64> = (0..18).map(|i| top + 0.05 * 1.5f64.powi(i)).collect();
        let w: Vec<f64> = grid.iter().map(|&r| r_to_w(r, &inv).unwrap()).collect();
        for pair in w.windows(2) {
            assert!(pair[1] < pair[0], "w not decreasing: {pair:?}");
            pairs += 1;
        }
    }
    assert!(pairs >= 50);
}

#[test]
fn w_matches_independent_quadrature() {
    for (g2, g3, r) in [(1.0, 0.0, 1.0), (1.0, 0.0, 4.0), (3.0, 1.0, 2.5), (-4.0, 0.0, 0.5)] {
        let inv = EllipticInvariants::new(
            Rational::from_float(g2).unwrap(),
            Rational::from_float(g3).unwrap(),
        );
        if !inv.all_real_roots() {
            assert!(r_to_w(r, &inv).is_err());
            continue;
        }
        let w = r_to_w(r, &inv).unwrap();
        let oracle = w_oracle(r, g2, g3);
        assert!((w - oracle).abs() <= 1e-9 * oracle, "{w} vs {oracle}");
    }
}

#[test]
fn w_derivative_matches_integrand() {
    let inv = EllipticInvariants::new(int(1), int(0));
    let h = 1e-4;
    let fd = (r_to_w(2.0 + h, &inv).unwrap() - r_to_w(2.0 - h, &inv).unwrap()) / (2.0 * h);
    assert!((fd - dw_dr(2.0, &inv)).abs() < 1e-6);
}

#[test]
fn w_near_the_largest_root_approaches_the_half_period() {
    // Lemniscatic real half-period Γ(1/4)²/(4√π); near e1 = 1/2 the integral loses
    // 2√(δ/P′(e1)) with P′(1/2) = 2.
    let omega = 1.854_074_677_301_372;
    let inv = EllipticInvariants::new(int(1), int(0));
    let delta = 1e-9;
    let w = r_to_w(0.5 + delta, &inv).unwrap();
    let expected = omega - 2.0 * (delta / 2.0f64).sqrt();
    assert!((w - expected).abs() < 1e-8, "{w} vs {expected}");
}
