//! Seeded invariant suites behind `halphen verify`. Output carries no timings so that two
//! runs with the same seed render byte-identical reports.

use super::render::{self, Table};
use super::{Format, Rendered, Suite};
use crate::algebraization::{
    apply_generator, apply_spec_directly, build_from_spec, canonical_spec, commutator, structure_metric, Generator,
    OperatorSpec,
};
use crate::distributional::{assemble_distribution, sigma_epsilon, verify_fourier_condition};
use crate::exact_j_half::{
    exact_wavefunction, hypergeometric_2f1_terminating, hypergeometric_ode, jacobi_p, jacobi_recurrence, k_pm, Branch,
    PCTParams,
};
use crate::exactmath::{exact_roots, falling_factorial, format_rational, int, rat, to_f64, ComplexValue, RatPoly, Rational, Surd};
use crate::qes::{self, canonical_matrix, cubic_accessory_roots, det_polynomial, determinant_recurrence, spectrum};
use crate::weierstrass::{dw_dr, invariants_from_roots, r_to_w, roots_from_invariants, EllipticInvariants};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn record(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { suite: self.suite, name, passed, detail: detail.into() });
    }
}

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

fn same_multiset(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|z| {
        let hit = (0..b.len()).filter(|&i| !used[i]).min_by(|&i, &k| (b[i] - z).norm().total_cmp(&(b[k] - z).norm()));
        match hit {
            Some(i) if (b[i] - z).norm() <= tol * (1.0 + z.norm()) => {
                used[i] = true;
                true
            }
            _ => false,
        }
    })
}

fn expanded(values: impl IntoIterator<Item = (ComplexValue, usize)>) -> Vec<Complex64> {
    values.into_iter().flat_map(|(v, m)| std::iter::repeat_n(v.to_c64(), m)).collect()
}

fn exactmath_suite(rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let mut failures = 0;
    for _ in 0..40 {
        let roots: Vec<Rational> = (0..3).map(|_| small_rational(rng, 20, 4)).collect();
        let p = roots.iter().fold(RatPoly::constant(int(1)), |acc, r| {
            acc * RatPoly::from_coeffs(vec![-r.clone(), int(1)])
        });
        let mut found: Vec<Rational> = exact_roots(&p)
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value.as_rational().cloned(), r.multiplicity))
            .map(|r| r.unwrap_or_else(|| int(i64::MAX)))
            .collect();
        let mut want = roots.clone();
        found.sort();
        want.sort();
        if found != want {
            failures += 1;
        }
    }
    rec.record("rational cubic roots recovered exactly", failures == 0, format!("40 cubics, {failures} failures"));

    let mut failures = 0;
    for _ in 0..40 {
        let k = rng.gen_range(-12i64..=12);
        let (m, n) = (rng.gen_range(0i64..=5), rng.gen_range(0i64..=5));
        let lhs = falling_factorial(k, m).unwrap() * falling_factorial(k - m, n).unwrap();
        if lhs != falling_factorial(k, m + n).unwrap() {
            failures += 1;
        }
    }
    rec.record("falling factorial splits (k)_(m+n) = (k)_m (k-m)_n", failures == 0, format!("40 triples, {failures} failures"));

    let mut failures = 0;
    for _ in 0..20 {
        let p = RatPoly::from_coeffs((0..7).map(|_| small_rational(rng, 9, 3)).collect());
        if p.differentiate(3) != p.derivative().derivative().derivative() {
            failures += 1;
        }
    }
    rec.record("repeated differentiation is consistent", failures == 0, format!("20 polynomials, {failures} failures"));
}

fn weierstrass_suite(rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let lem = roots_from_invariants(&EllipticInvariants::new(int(1), int(0)));
    let found = lem.rational();
    let detail = match &found {
        Some(e) => e.iter().map(format_rational).collect::<Vec<_>>().join(", "),
        None => "not rational".into(),
    };
    rec.record("lemniscatic roots are {1/2, 0, -1/2}", found == Some([rat(1, 2), int(0), rat(-1, 2)]), detail);

    let mut failures = 0;
    for _ in 0..100 {
        let (a, b) = (small_rational(rng, 60, 8), small_rational(rng, 60, 8));
        let e = [a.clone(), b.clone(), -(a + b)].map(ComplexValue::exact_real);
        let inv = invariants_from_roots(&e).unwrap();
        let back = roots_from_invariants(&inv);
        if back.rational().is_none() || invariants_from_roots(&back.e).ok() != Some(inv) {
            failures += 1;
        }
    }
    rec.record("invariants and roots round-trip exactly", failures == 0, format!("100 samples, {failures} failures"));

    let (mut monotone, mut deriv_err) = (true, 0.0f64);
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
            let fd = (4.0 * central(h / 2.0) - central(h)) / 3.0;
            deriv_err = deriv_err.max((fd - dw_dr(r, &inv)).abs());
        }
    }
    rec.record("r_to_w strictly decreasing", monotone, "3 invariant pairs, 18 radii each");
    rec.record("dw/dr matches a finite difference to 1e-6", deriv_err < 1e-6, format!("max error {deriv_err:.3e}"));
}

fn algebraization_suite(rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let mut mismatches = 0;
    for _ in 0..25 {
        let upper: [Rational; 6] = std::array::from_fn(|_| small_rational(rng, 40, 6));
        let lin: [Rational; 3] = std::array::from_fn(|_| small_rational(rng, 40, 6));
        let star = small_rational(rng, 40, 6);
        for j in spins() {
            let spec = OperatorSpec::from_upper(upper.clone(), lin.clone(), star.clone(), j.clone());
            let op = build_from_spec(&spec);
            let top: usize = (int(2) * &j).to_integer().try_into().unwrap();
            for k in 0..=top + 4 {
                let mono = RatPoly::monomial(int(1), k);
                if op.apply(&mono) != apply_spec_directly(&spec, &mono) {
                    mismatches += 1;
                }
            }
        }
    }
    rec.record("closed form equals generator composition", mismatches == 0, format!("25 specs x 5 spins, {mismatches} mismatches"));

    let b = small_rational(rng, 40, 6);
    let ok = spins().iter().all(|j| {
        let spec = canonical_spec(j, &int(1), &int(0), &b);
        let image = apply_spec_directly(&spec, &RatPoly::constant(int(1)));
        image == RatPoly::from_coeffs(vec![-b.clone(), int(7) * j * (int(2) * j - int(1))])
    });
    rec.record("canonical constants give p0 = 7j(2j-1)r - B", ok, format!("B = {b}"));

    use Generator::*;
    let mut failures = 0;
    for j in spins() {
        for k in 0..=10 {
            let p = RatPoly::monomial(int(1), k);
            failures += usize::from(commutator(Zero, Plus, &j, &p) != apply_generator(Plus, &j, &p));
            failures += usize::from(commutator(Zero, Minus, &j, &p) != -apply_generator(Minus, &j, &p));
            failures += usize::from(commutator(Plus, Minus, &j, &p) != apply_generator(Zero, &j, &p).scale(&int(-2)));
        }
    }
    rec.record("sl(2) commutation relations on r^k, k <= 10", failures == 0, format!("{failures} failures"));

    let mut failures = 0;
    for _ in 0..50 {
        let (g2, g3) = (small_rational(rng, 40, 6), small_rational(rng, 40, 6));
        let spec = canonical_spec(&int(1), &g2, &g3, &int(0));
        failures += usize::from(structure_metric(&spec).determinant != int(4) * g3);
    }
    rec.record("structure metric determinant is 4 g3", failures == 0, format!("50 samples, {failures} failures"));
}

fn qes_suite(rec: &mut Recorder) {
    let (mut worst, mut exact_fail, mut count_fail) = (0.0f64, 0, 0);
    for inv in grid() {
        for n in 0..=6 {
            let sols = qes::solve(n, &inv).unwrap();
            count_fail += usize::from(sols.iter().map(|s| s.multiplicity).sum::<usize>() != n + 1);
            for sol in sols {
                if sol.b.as_rational().is_some() {
                    exact_fail += usize::from(sol.residual_norm != 0.0);
                } else {
                    worst = worst.max(sol.residual_norm);
                }
            }
        }
    }
    rec.record(
        "eigenpolynomials annihilated by the canonical operator",
        exact_fail == 0 && count_fail == 0 && worst < 1e-9,
        format!("n = 0..6 on 3 invariant pairs; rational residual failures {exact_fail}, worst irrational residual {worst:.3e}"),
    );

    let lem = EllipticInvariants::new(int(1), int(0));
    let b0 = expanded(qes::accessory_spectrum(0, &lem).unwrap().into_iter().map(|r| (r.value, r.multiplicity)));
    let b1 = expanded(qes::accessory_spectrum(1, &lem).unwrap().into_iter().map(|r| (r.value, r.multiplicity)));
    let zero = Complex64::new(0.0, 0.0);
    rec.record("ground state gives B = {0}", b0 == vec![zero], format!("{b0:?}"));
    rec.record("n = 1 lemniscatic gives B = {0, 0}", b1 == vec![zero, zero], format!("{b1:?}"));

    let mut failures = 0;
    for inv in grid() {
        for n in 0..=6 {
            let sm = canonical_matrix(n, &inv).unwrap();
            let d = expanded(exact_roots(&det_polynomial(&sm)).into_iter().map(|r| (r.value, r.multiplicity)));
            let e = expanded(spectrum(&sm).into_iter().map(|r| (r.value, r.multiplicity)));
            failures += usize::from(!same_multiset(&d, &e, 1e-9));
        }
    }
    rec.record("dense determinant roots equal the eigenvalue multiset", failures == 0, format!("{failures} failures"));

    let mut failures = 0;
    for g2 in [int(1), int(-4), rat(7, 3)] {
        let inv = EllipticInvariants::new(g2, int(0));
        for n in 0..=7 {
            let sm = canonical_matrix(n, &inv).unwrap();
            failures += usize::from(determinant_recurrence(&sm).ok() != Some(det_polynomial(&sm)));
        }
    }
    rec.record("three-term recurrence equals dense determinant up to dim 8", failures == 0, format!("{failures} failures"));

    let mut failures = 0;
    for inv in grid() {
        let sm = canonical_matrix(2, &inv).unwrap();
        let cubic = cubic_accessory_roots(&sm).unwrap();
        let e = expanded(spectrum(&sm).into_iter().map(|r| (r.value, r.multiplicity)));
        failures += usize::from(!same_multiset(&cubic, &e, 1e-9));
    }
    rec.record("cubic formula matches the eigenvalue path at n = 2", failures == 0, format!("{failures} failures"));
}

fn exact_suite(rng: &mut ChaCha8Rng, rec: &mut Recorder) {
    let (mut worst, mut exact_fail, mut tried) = (0.0f64, 0, 0);
    while tried < 100 {
        let (b, g2, g3) = (small_rational(rng, 20, 4), small_rational(rng, 20, 4), small_rational(rng, 20, 4));
        if g3 == int(-2) {
            continue;
        }
        tried += 1;
        let pair = k_pm(&b, &g2, &g3).unwrap();
        let a = 2.0 * (to_f64(&g3) + 2.0);
        for k in [pair.plus, pair.minus] {
            let lhs = k * k * a + k * to_f64(&g2) - 8.0 * to_f64(&b);
            let scale = 1.0 + (k * k * a).norm() + 8.0 * to_f64(&b).abs();
            worst = worst.max(lhs.norm() / scale);
        }
        if let Some(ks) = pair.exact {
            for k in ks {
                let lhs = (k.clone() * k.clone()).scale(&(int(2) * (&g3 + int(2)))) + k.scale(&g2)
                    - Surd::rational(int(8) * &b);
                exact_fail += usize::from(!lhs.is_zero());
            }
        }
    }
    rec.record(
        "k roots satisfy 2(g3+2)k^2 + g2 k = 8B to 1e-12",
        worst < 1e-12 && exact_fail == 0,
        format!("100 inputs, worst relative {worst:.3e}, exact failures {exact_fail}"),
    );

    let mut failures = 0;
    for m in 0..=6usize {
        for nu in 1..=6i64 {
            for ga in 1..=6i64 {
                let f = hypergeometric_2f1_terminating(m, &int(nu), &int(ga)).unwrap();
                failures += usize::from(!hypergeometric_ode(&f, m, &int(nu), &int(ga)).is_zero());
            }
        }
    }
    rec.record("terminating 2F1 satisfies its ODE exactly", failures == 0, format!("m, nu, gamma <= 6, {failures} failures"));

    let mut worst = 0.0f64;
    for _ in 0..60 {
        let m = rng.gen_range(0usize..=8);
        let (a, b) = (rng.gen_range(0.0..5.0), rng.gen_range(0.0..5.0));
        let x: f64 = rng.gen_range(-1.0..1.0);
        let (s, r) = (jacobi_p(m, a, b, x).unwrap(), jacobi_recurrence(m, a, b, x).unwrap());
        worst = worst.max((s - r).abs() / (1.0 + s.abs().max(r.abs())));
    }
    rec.record("Jacobi sum and recurrence agree to 1e-10", worst < 1e-10, format!("60 samples, worst {worst:.3e}"));

    let lem = k_pm(&int(0), &int(1), &int(0)).unwrap();
    let ks = lem.exact.clone().map(|[p, m]| [p.to_f64(), m.to_f64()]);
    rec.record("lemniscatic B = 0 gives k = {0, -1/4}", ks == Some([0.0, -0.25]), format!("{ks:?}"));
    let zero_branch = PCTParams::new(2, 1, 0, int(0), Branch::Plus, EllipticInvariants::new(int(1), int(0)))
        .and_then(|p| exact_wavefunction(&p, 2.0));
    let detail = match &zero_branch {
        Ok(v) => format!("returned {v}"),
        Err(e) => e.to_string(),
    };
    rec.record("zero k branch raises the degenerate-branch error", detail.contains("degenerate branch"), detail);
}

fn dist_suite(rec: &mut Recorder) {
    let mut failures = Vec::new();
    let mut first_step = 0;
    for s in [1, 2] {
        for q in [int(0), int(1), int(-2)] {
            for k2 in [rat(1, 2), rat(1, 4)] {
                let exp = assemble_distribution(s, &q, &k2, 12).unwrap();
                let report = verify_fourier_condition(&exp).unwrap();
                if !report.all_interior_zero {
                    failures.push(format!("s={s} q={q} K2={k2}"));
                }
                for t in &exp.terms {
                    let k0 = t.series.k0;
                    first_step += usize::from(t.series.coeffs[k0] != Surd::rational(int(1)));
                    if k2 == rat(1, 2) {
                        let (sig, _) = sigma_epsilon((k0 + 1) as i64, t.series.m, exp.n, &q).unwrap();
                        first_step += usize::from(t.series.coeffs[k0 + 1] != Surd::rational(sig / int(2)));
                    }
                }
            }
        }
    }
    rec.record("interior sigma-coefficients vanish exactly", failures.is_empty(), format!("12 configurations, failing {failures:?}"));
    rec.record("leading coefficient 1 and first step sigma/2 at K2 = 1/2", first_step == 0, format!("{first_step} failures"));

    let mut exp = assemble_distribution(1, &int(0), &rat(1, 2), 12).unwrap();
    let c = exp.terms[0].series.coeffs[3].clone();
    exp.terms[0].series.coeffs[3] = c + Surd::rational(rat(1, 1000));
    let report = verify_fourier_condition(&exp).unwrap();
    let first = report.terms[0].first_nonzero_interior;
    rec.record("fault on a_3 detected at sigma-order 1", first == Some(1), format!("first nonzero interior order {first:?}"));
}

fn consolidated() -> Vec<serde_json::Value> {
    let mut out = render::discrepancies("algebraization", &crate::algebraization::discrepancies());
    out.extend(render::discrepancies("qes", &qes::discrepancies()));
    out.extend(render::discrepancies("exact_j_half", &crate::exact_j_half::discrepancies()));
    out.extend(render::discrepancies("distributional", &crate::distributional::discrepancies()));
    out
}

pub(super) fn cmd_verify(suite: Suite, seed: u64) -> crate::Result<Rendered> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let wanted = |s: Suite| suite == Suite::All || suite == s;
    let mut run = |s: Suite, name: &'static str, f: &mut dyn FnMut(&mut Recorder)| {
        if wanted(s) {
            log::info!("running {name} suite");
            let mut rec = Recorder { suite: name, checks: Vec::new() };
            f(&mut rec);
            checks.extend(rec.checks);
        }
    };
    run(Suite::Exactmath, "exactmath", &mut |r| exactmath_suite(&mut rng, r));
    run(Suite::Weierstrass, "weierstrass", &mut |r| weierstrass_suite(&mut rng, r));
    run(Suite::Algebraization, "algebraization", &mut |r| algebraization_suite(&mut rng, r));
    run(Suite::Qes, "qes", &mut qes_suite);
    run(Suite::Exact, "exact_j_half", &mut |r| exact_suite(&mut rng, r));
    run(Suite::Dist, "distributional", &mut dist_suite);

    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut table = Table::new(&["suite", "check", "status", "detail"]);
    for c in &checks {
        table.push(vec![c.suite.into(), c.name.into(), if c.passed { "PASS" } else { "FAIL" }.into(), c.detail.clone()]);
    }
    let json = json!({
        "seed": seed,
        "summary": {"total": checks.len(), "passed": checks.len() - failed, "failed": failed},
        "checks": checks,
        "discrepancies": consolidated(),
    });
    Ok(Rendered { json, table, default: Format::Json, failed: failed > 0 })
}
