//! Acceptance suite: one PASS/FAIL line per criterion with its wall time and budget.

use halphen::algebraization::{
    apply_generator, apply_spec_directly, build_from_spec, canonical_operator, canonical_spec, commutator,
    structure_metric, Generator, OperatorSpec,
};
use halphen::distributional::{assemble_distribution, sigma_epsilon, verify_fourier_condition};
use halphen::exact_j_half::{
    exact_wavefunction, hypergeometric_2f1_terminating, hypergeometric_ode, jacobi_p, jacobi_recurrence, k_pm, Branch,
    PCTParams,
};
use halphen::exactmath::{exact_roots, int, rat, to_f64, ComplexValue, Rational, Surd};
use halphen::qes::{self, canonical_matrix, cubic_accessory_roots, det_polynomial, determinant_recurrence, spectrum};
use halphen::weierstrass::{dw_dr, invariants_from_roots, r_to_w, roots_from_invariants, EllipticInvariants};
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::io::Write;
use std::time::{Duration, Instant};

type Outcome = (bool, String);

fn small_rational(rng: &mut ChaCha8Rng, span: i64, den: i64) -> Rational {
    rat(rng.gen_range(-span..=span), rng.gen_range(1..=den))
}

fn spins() -> [Rational; 5] {
    [int(0), rat(1, 2), int(1), rat(3, 2), int(2)]
}

fn grid() -> [EllipticInvariants; 3] {
    [
        EllipticInvariants::new(int(1), int(0)),
        EllipticInvariants::new(int(-4), int(0)),
        EllipticInvariants::new(int(4), int(1)),
    ]
}

fn multiset(values: impl IntoIterator<Item = (ComplexValue, usize)>) -> Vec<Complex64> {
    values.into_iter().flat_map(|(v, m)| std::iter::repeat_n(v.to_c64(), m)).collect()
}

fn same_multiset(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let mut rest = b.to_vec();
    a.len() == b.len()
        && a.iter().all(|z| {
            let best = (0..rest.len()).min_by(|&i, &k| (rest[i] - z).norm().total_cmp(&(rest[k] - z).norm()));
            match best {
                Some(i) if (rest[i] - z).norm() <= tol * (1.0 + z.norm()) => {
                    rest.swap_remove(i);
                    true
                }
                _ => false,
            }
        })
}

/// Coefficients of p2 p'' + p1 p' + p0 p by plain convolution, without the polynomial type.
fn apply_by_hand<T>(p2: &[T], p1: &[T], p0: &[T], a: &[T]) -> Vec<T>
where
    T: Clone + Zero + std::ops::Mul<Output = T> + std::ops::Add<Output = T> + num_traits::FromPrimitive,
{
    let d = |c: &[T]| -> Vec<T> { c.iter().enumerate().skip(1).map(|(k, x)| x.clone() * T::from_usize(k).unwrap()).collect() };
    let (a1, a2) = (d(a), d(&d(a)));
    let len = a.len() + p2.len().max(p1.len()).max(p0.len());
    let mut out = vec![T::zero(); len];
    for (coef, poly) in [(p2, &a2), (p1, &a1), (p0, &a.to_vec())] {
        for (i, x) in coef.iter().enumerate() {
            for (k, y) in poly.iter().enumerate() {
                out[i + k] = out[i + k].clone() + x.clone() * y.clone();
            }
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut mismatches = 0;
    for _ in 0..25 {
        let upper: [Rational; 6] = std::array::from_fn(|_| small_rational(&mut rng, 40, 6));
        let lin: [Rational; 3] = std::array::from_fn(|_| small_rational(&mut rng, 40, 6));
        let star = small_rational(&mut rng, 40, 6);
        for j in spins() {
            let spec = OperatorSpec::from_upper(upper.clone(), lin.clone(), star.clone(), j.clone());
            let op = build_from_spec(&spec);
            let top: usize = (int(2) * &j).to_integer().try_into().unwrap();
            for k in 0..=top + 4 {
                let mono = halphen::exactmath::RatPoly::monomial(int(1), k);
                mismatches += usize::from(op.apply(&mono) != apply_spec_directly(&spec, &mono));
            }
        }
    }
    let b = rat(2, 5);
    let p0_ok = spins().iter().all(|j| {
        let image = apply_spec_directly(&canonical_spec(j, &int(3), &rat(1, 2), &b), &halphen::exactmath::RatPoly::constant(int(1)));
        image == halphen::exactmath::RatPoly::from_coeffs(vec![-b.clone(), int(7) * j * (int(2) * j - int(1))])
    });
    (mismatches == 0 && p0_ok, format!("{mismatches} closed-form mismatches over 25 specs x 5 spins; p0 = 7j(2j-1)r - B: {p0_ok}"))
}

fn criterion_2() -> Outcome {
    use Generator::*;
    let mut failures = 0;
    for j in spins() {
        for k in 0..=10 {
            let p = halphen::exactmath::RatPoly::monomial(int(1), k);
            failures += usize::from(commutator(Zero, Plus, &j, &p) != apply_generator(Plus, &j, &p));
            failures += usize::from(commutator(Zero, Minus, &j, &p) != -apply_generator(Minus, &j, &p));
            failures += usize::from(commutator(Plus, Minus, &j, &p) != apply_generator(Zero, &j, &p).scale(&int(-2)));
        }
    }
    let reported = halphen::algebraization::discrepancies().iter().any(|d| d.location.starts_with("commutator [J+, J-]"));
    (failures == 0 && reported, format!("{failures} relation failures; sign deviation reported: {reported}"))
}

fn criterion_3() -> Outcome {
    let (mut exact_fail, mut worst, mut count_fail) = (0, 0.0f64, 0);
    for inv in grid() {
        for n in 0..=6usize {
            let j = rat(n as i64, 2);
            let op = canonical_operator(&j, &inv.g2, &inv.g3, &int(0));
            let sols = qes::solve(n, &inv).unwrap();
            count_fail += usize::from(sols.iter().map(|s| s.multiplicity).sum::<usize>() != n + 1);
            for sol in sols {
                let exact: Option<Vec<Rational>> = sol.coefficients.iter().map(|z| z.as_rational().cloned()).collect();
                match (sol.b.as_rational(), exact) {
                    (Some(b), Some(a)) => {
                        let mut image = apply_by_hand(op.p2.coeffs(), op.p1.coeffs(), op.p0.coeffs(), &a);
                        for (k, c) in a.iter().enumerate() {
                            image[k] = image[k].clone() - b * c;
                        }
                        exact_fail += usize::from(image.iter().any(|c| !c.is_zero()));
                    }
                    _ => {
                        let c = |p: &halphen::exactmath::RatPoly| -> Vec<Complex64> {
                            p.coeffs().iter().map(|x| Complex64::new(to_f64(x), 0.0)).collect()
                        };
                        let a: Vec<Complex64> = sol.coefficients.iter().map(|z| z.to_c64()).collect();
                        let b = sol.b.to_c64();
                        let mut image = apply_by_hand(&c(&op.p2), &c(&op.p1), &c(&op.p0), &a);
                        for (k, x) in a.iter().enumerate() {
                            image[k] -= b * x;
                        }
                        let top = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
                        worst = worst.max(image.iter().map(|z| z.norm()).fold(0.0, f64::max) / top);
                    }
                }
            }
        }
    }
    let lem = EllipticInvariants::new(int(1), int(0));
    let zero = Complex64::new(0.0, 0.0);
    let b0 = multiset(qes::accessory_spectrum(0, &lem).unwrap().into_iter().map(|r| (r.value, r.multiplicity)));
    let b1 = multiset(qes::accessory_spectrum(1, &lem).unwrap().into_iter().map(|r| (r.value, r.multiplicity)));
    let named = b0 == vec![zero] && b1 == vec![zero, zero];
    (
        exact_fail == 0 && count_fail == 0 && worst < 1e-9 && named,
        format!("rational residual failures {exact_fail}, worst irrational residual {worst:.2e}, count failures {count_fail}, n=0 -> {{0}} and n=1 -> {{0, 0}}: {named}"),
    )
}

fn criterion_4() -> Outcome {
    let mut dense = 0;
    for inv in grid() {
        for n in 0..=6 {
            let sm = canonical_matrix(n, &inv).unwrap();
            let d = multiset(exact_roots(&det_polynomial(&sm)).into_iter().map(|r| (r.value, r.multiplicity)));
            let e = multiset(spectrum(&sm).into_iter().map(|r| (r.value, r.multiplicity)));
            dense += usize::from(!same_multiset(&d, &e, 1e-9));
        }
    }
    let mut recurrence = 0;
    for g2 in [int(1), int(-4), rat(7, 3)] {
        let inv = EllipticInvariants::new(g2, int(0));
        for n in 0..=7 {
            let sm = canonical_matrix(n, &inv).unwrap();
            recurrence += usize::from(determinant_recurrence(&sm).ok() != Some(det_polynomial(&sm)));
        }
    }
    let mut cubic = 0;
    for inv in grid() {
        let sm = canonical_matrix(2, &inv).unwrap();
        let e = multiset(spectrum(&sm).into_iter().map(|r| (r.value, r.multiplicity)));
        cubic += usize::from(!same_multiset(&cubic_accessory_roots(&sm).unwrap(), &e, 1e-9));
    }
    (
        dense + recurrence + cubic == 0,
        format!("dense-vs-eigen failures {dense}, recurrence failures {recurrence}, cubic failures {cubic}"),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut failures = 0;
    for _ in 0..50 {
        let (g2, g3) = (small_rational(&mut rng, 40, 6), small_rational(&mut rng, 40, 6));
        let spec = canonical_spec(&int(1), &g2, &g3, &small_rational(&mut rng, 10, 3));
        failures += usize::from(structure_metric(&spec).determinant != int(4) * g3);
    }
    (failures == 0, format!("{failures} of 50 samples off 4 g3"))
}

fn criterion_6() -> Outcome {
    let lem = roots_from_invariants(&EllipticInvariants::new(int(1), int(0))).rational();
    let lem_ok = lem == Some([rat(1, 2), int(0), rat(-1, 2)]);
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let mut round_trip = 0;
    for _ in 0..100 {
        let (a, b) = (small_rational(&mut rng, 60, 8), small_rational(&mut rng, 60, 8));
        let e = [a.clone(), b.clone(), -(a + b)].map(ComplexValue::exact_real);
        let inv = invariants_from_roots(&e).unwrap();
        assert!(inv.discriminant() >= int(0));
        let back = roots_from_invariants(&inv);
        round_trip += usize::from(back.rational().is_none() || invariants_from_roots(&back.e).ok() != Some(inv));
    }
    let (mut monotone, mut deriv) = (true, 0.0f64);
    for (g2, g3) in [(int(1), int(0)), (int(3), int(1)), (int(7), rat(-1, 2))] {
        let inv = EllipticInvariants::new(g2, g3);
        let top = roots_from_invariants(&inv).max_real();
        let mut prev = f64::INFINITY;
        for i in 0..18 {
            let r = top + 0.05 * 1.5f64.powi(i);
            let w = r_to_w(r, &inv).unwrap();
            monotone &= w < prev;
            prev = w;
            let central = |h: f64| (r_to_w(r + h, &inv).unwrap() - r_to_w(r - h, &inv).unwrap()) / (2.0 * h);
            let h = 1e-3 * (r - top).min(1.0);
            deriv = deriv.max(((4.0 * central(h / 2.0) - central(h)) / 3.0 - dw_dr(r, &inv)).abs());
        }
    }
    (
        lem_ok && round_trip == 0 && monotone && deriv < 1e-6,
        format!("lemniscatic exact: {lem_ok}; round-trip failures {round_trip}/100; monotone: {monotone}; derivative error {deriv:.2e}"),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let (mut worst, mut exact_fail, mut tried) = (0.0f64, 0, 0);
    while tried < 100 {
        let (b, g2, g3) = (small_rational(&mut rng, 20, 4), small_rational(&mut rng, 20, 4), small_rational(&mut rng, 20, 4));
        if g3 == int(-2) {
            continue;
        }
        tried += 1;
        let pair = k_pm(&b, &g2, &g3).unwrap();
        let a = 2.0 * (to_f64(&g3) + 2.0);
        for k in [pair.plus, pair.minus] {
            let lhs = k * k * a + k * to_f64(&g2) - 8.0 * to_f64(&b);
            worst = worst.max(lhs.norm() / (1.0 + (k * k * a).norm() + 8.0 * to_f64(&b).abs()));
        }
        for k in pair.exact.into_iter().flatten() {
            let lhs = (k.clone() * k.clone()).scale(&(int(2) * (&g3 + int(2)))) + k.scale(&g2) - Surd::rational(int(8) * &b);
            exact_fail += usize::from(!lhs.is_zero());
        }
    }
    let mut ode = 0;
    for m in 0..=6usize {
        for nu in 1..=6 {
            for ga in 1..=6 {
                let f = hypergeometric_2f1_terminating(m, &int(nu), &int(ga)).unwrap();
                ode += usize::from(!hypergeometric_ode(&f, m, &int(nu), &int(ga)).is_zero());
            }
        }
    }
    let mut jac = 0.0f64;
    for _ in 0..100 {
        let m = rng.gen_range(0usize..=8);
        let (a, b, x) = (rng.gen_range(0.0..5.0), rng.gen_range(0.0..5.0), rng.gen_range(-1.0..1.0));
        let (s, r) = (jacobi_p(m, a, b, x).unwrap(), jacobi_recurrence(m, a, b, x).unwrap());
        jac = jac.max((s - r).abs() / (1.0 + s.abs().max(r.abs())));
    }
    let lem = k_pm(&int(0), &int(1), &int(0)).unwrap().exact.map(|[p, m]| [p.to_f64(), m.to_f64()]);
    let lem_ok = lem == Some([0.0, -0.25]);
    let degenerate = PCTParams::new(2, 1, 0, int(0), Branch::Plus, EllipticInvariants::new(int(1), int(0)))
        .and_then(|p| exact_wavefunction(&p, 2.0))
        .map_err(|e| e.to_string().contains("degenerate branch"))
        == Err(true);
    (
        worst < 1e-12 && exact_fail == 0 && ode == 0 && jac < 1e-10 && lem_ok && degenerate,
        format!(
            "k equation worst {worst:.2e} (exact failures {exact_fail}); ODE failures {ode}; Jacobi gap {jac:.2e}; lemniscatic k = {{0, -1/4}}: {lem_ok}; degenerate branch error: {degenerate}"
        ),
    )
}

fn criterion_8() -> Outcome {
    let (mut closure, mut leading) = (0, 0);
    for s in [1, 2] {
        for q in [int(0), int(1), int(-2)] {
            for k2 in [rat(1, 2), rat(1, 4)] {
                let exp = assemble_distribution(s, &q, &k2, 12).unwrap();
                closure += usize::from(!verify_fourier_condition(&exp).unwrap().all_interior_zero);
                for t in &exp.terms {
                    let k0 = t.series.k0;
                    leading += usize::from(t.series.coeffs[k0] != Surd::rational(int(1)));
                    if k2 == rat(1, 2) {
                        let (sig, _) = sigma_epsilon((k0 + 1) as i64, t.series.m, exp.n, &q).unwrap();
                        leading += usize::from(t.series.coeffs[k0 + 1] != Surd::rational(sig / int(2)));
                    }
                }
            }
        }
    }
    let mut exp = assemble_distribution(1, &int(0), &rat(1, 2), 12).unwrap();
    let c = exp.terms[0].series.coeffs[3].clone();
    exp.terms[0].series.coeffs[3] = c + Surd::rational(rat(1, 1000));
    let first = verify_fourier_condition(&exp).unwrap().terms[0].first_nonzero_interior;
    (
        closure == 0 && leading == 0 && first == Some(1),
        format!("closure failures {closure}/12; leading-term failures {leading}; fault on a_3 first seen at sigma-order {first:?}"),
    )
}

fn criterion_9() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_halphen");
    let run = || {
        let t = Instant::now();
        let out = std::process::Command::new(bin).args(["verify", "--suite", "all", "--seed", "7"]).output().unwrap();
        (out, t.elapsed())
    };
    let ((a, ta), (b, tb)) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    let parsed: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap_or_default();
    let failed = parsed["summary"]["failed"].as_u64();
    let slowest = ta.max(tb);
    (
        same && a.status.code() == Some(0) && failed == Some(0) && slowest < Duration::from_secs(10),
        format!("byte-identical: {same}; exit {:?}; failed checks {failed:?}; slowest run {:.2} s", a.status.code(), slowest.as_secs_f64()),
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome, f64); 9] = [
        ("1 algebraization closed form vs generator composition", criterion_1, 2.0),
        ("2 commutation relations", criterion_2, 1.0),
        ("3 spectrum residuals", criterion_3, 5.0),
        ("4 determinant cross-checks", criterion_4, 2.0),
        ("5 structure metric determinant", criterion_5, 1.0),
        ("6 weierstrass roots and r_to_w", criterion_6, 3.0),
        ("7 exact j = 1/2 branch", criterion_7, 3.0),
        ("8 distributional closure", criterion_8, 3.0),
        ("9 verify determinism", criterion_9, 20.0),
    ];
    let mut failed = Vec::new();
    let mut stdout = std::io::stdout();
    writeln!(stdout).unwrap();
    for (name, check, budget) in criteria {
        let t = Instant::now();
        let (ok, detail) = check();
        let secs = t.elapsed().as_secs_f64();
        let pass = ok && secs < budget;
        writeln!(stdout, "{} criterion {name} ({secs:.2} s, budget {budget} s): {detail}", if pass { "PASS" } else { "FAIL" }).unwrap();
        if !pass {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
