//! Printed QES formulas compared against the construction at fixed sample parameters.

use super::{
    canonical_matrix, cubic_accessory_roots, cubic_printed_roots, dense_determinant, determinant_closed_form,
    gauge_exponents, matrix_from_operator, mu_paper, mu_recurrence, paper_tau_matrix, printed_potential,
    schrodinger_potential, spectrum, statement_potential, tau_paper, CubicCoefficients,
};
use crate::algebraization::{canonical_operator, printed_canonical_operator};
use crate::discrepancy::{compare, compare_f64, Discrepancy};
use crate::exactmath::{format_rational, int, to_f64, Rational};
use crate::weierstrass::EllipticInvariants;
use num_complex::Complex64;
use num_traits::Zero;

fn show(x: &Rational) -> String {
    format_rational(x)
}

fn show_roots(mut z: Vec<Complex64>) -> String {
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let parts: Vec<String> = z.iter().map(|c| format!("{:.9}{:+.9}i", c.re, c.im)).collect();
    parts.join(", ")
}

pub fn discrepancies() -> Vec<Discrepancy> {
    let mut out = Vec::new();
    let zero = Rational::zero();
    let lemniscatic = EllipticInvariants::new(int(1), int(0));
    let general = EllipticInvariants::new(int(4), int(1));

    // τ table against the canonical operator's action at j = 1 (n = 2).
    let sm = canonical_matrix(2, &general).expect("canonical operator preserves degree 2");
    for k in 0..=2usize {
        let row = tau_paper(k, &int(1), &general.g2, &general.g3);
        if k < 2 {
            compare(&mut out, &format!("tau_{{k,k+1}} at k={k}, j=1"), show(&row.up), show(sm.tau(k, k + 1)));
        }
        if k >= 1 {
            compare(&mut out, &format!("tau_{{k,k-1}} at k={k}, j=1, g2=4"), show(&row.down), show(sm.tau(k, k - 1)));
        }
        if k >= 2 {
            compare(&mut out, &format!("tau_{{k,k-2}} at k={k}, g3=1"), show(&row.down2), show(sm.tau(k, k - 2)));
        }
    }
    // Direct expansion of the printed operator on r^2 (lower neighbour).
    let printed = printed_canonical_operator(&int(1), &general.g2, &general.g3, &zero);
    if let Ok(psm) = matrix_from_operator(&printed, 3) {
        let row = tau_paper(2, &int(1), &general.g2, &general.g3);
        compare(&mut out, "tau_{k,k-1} from the printed operator's own expansion at k=2", show(&row.down), show(psm.tau(2, 1)));
    } else {
        let image = printed.apply(&crate::exactmath::RatPoly::monomial(int(1), 2));
        let row = tau_paper(2, &int(1), &general.g2, &general.g3);
        compare(
            &mut out,
            "tau_{k,k-1} from the printed operator's own expansion at k=2",
            show(&row.down),
            show(&image.coeff(1)),
        );
    }

    // Layout of the linear system.
    compare(
        &mut out,
        "index placement in the tau system",
        "sum_l tau_{k,l} a_l = 0 (row k)",
        "sum_k tau_{k,l} a_k = 0 (coefficient of r^l)",
    );

    // First determinant.
    let b = int(3);
    let one = canonical_matrix(0, &general).expect("dimension 1");
    compare(&mut out, "first determinant D_1 at B=3", show(&b), show(&dense_determinant(&one.t_matrix(&b))));

    // Closed-form determinant against the dense determinant (g3 = 0, n = 2, B = 1).
    let tri = canonical_matrix(2, &lemniscatic).expect("degree 2");
    let closed = determinant_closed_form(&tri, Complex64::new(1.0, 0.0));
    let dense = dense_determinant(&tri.t_matrix(&int(1)));
    compare_f64(&mut out, "closed-form determinant D_3 at B=1, g2=1, g3=0", closed.re, to_f64(&dense), 1e-9);

    // Cubic in B for n = 2.
    let derived = CubicCoefficients::derived(&sm).expect("3x3");
    let paper = CubicCoefficients::printed(&sm).expect("3x3");
    compare(&mut out, "linear coefficient of the accessory cubic (g2=4, g3=1)", show(&paper.b1), show(&derived.b1));
    compare(&mut out, "constant coefficient of the accessory cubic (g2=4, g3=1)", show(&paper.b0), show(&derived.b0));
    let eig: Vec<Complex64> = spectrum(&sm)
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.value.to_c64(), r.multiplicity))
        .collect();
    let printed_roots = cubic_printed_roots(&sm).expect("3x3").to_vec();
    compare(&mut out, "roots of the accessory cubic (g2=4, g3=1)", show_roots(printed_roots), show_roots(eig.clone()));
    let derived_roots = cubic_accessory_roots(&sm).expect("3x3").to_vec();
    compare(
        &mut out,
        "roots of the accessory cubic with the corrected coefficients (g2=4, g3=1)",
        show_roots(derived_roots),
        show_roots(eig),
    );

    // First-order coefficient at j = 1, g2 = −4, B = √7 (free-spin example).
    let free = paper_tau_matrix(1, &int(1), &int(-4), &zero);
    let top = spectrum(&free).last().expect("two roots").value.clone();
    let bc = top.to_c64();
    let mu1 = mu_paper(1, &int(1), &bc, &int(-4), &zero).expect("nonzero denominator")[0];
    let a = super::eigen_polynomial(&top, &free).expect("eigenvalue");
    compare_f64(&mut out, "a_1/a_0 at n=1, j=1, g2=-4, B=sqrt(7)", mu1.re, a[1].to_c64().re, 1e-9);

    // Second order: displayed μ^{(2)} vs the general quotient at j = 1, g2 = 4, g3 = 1, B = 2.
    let b2 = int(2);
    let shown = mu_paper(2, &int(1), &b2, &general.g2, &general.g3).expect("nonzero");
    let quotient = mu_recurrence(2, &int(1), &b2, &general.g2, &general.g3).expect("nonzero");
    compare(&mut out, "first-order coefficient: displayed value vs general quotient (B=2)", show(&shown[0]), show(&quotient[0]));
    compare(&mut out, "second-order coefficient: displayed value vs general quotient (B=2)", show(&shown[1]), show(&quotient[1]));

    // Gauge exponent produced by exp(½∫P2/P3) and the power of P3.
    let gauge = gauge_exponents(&int(1), &lemniscatic).expect("distinct roots");
    let eta = gauge.exact_eta.expect("rational roots");
    compare(
        &mut out,
        "exponent of (r - e_1) from exp((1/2) int P2/P3), j=1, lemniscatic",
        show(&eta[0]),
        show(&(&eta[0] / int(2))),
    );
    compare(&mut out, "power of P3 in the gauge factor at j=1", "-1/2", "-1/4");

    // Potential: statement sign and the explicit display.
    let op = canonical_operator(&int(1), &lemniscatic.g2, &lemniscatic.g3, &zero);
    let v = schrodinger_potential(&op, 2.0).expect("r above roots");
    compare_f64(&mut out, "general potential formula sign at j=1, lemniscatic, r=2", statement_potential(&op, 2.0).expect("r above roots"), v, 1e-9);
    let explicit = printed_potential(&int(1), &lemniscatic, 0.0, 2.0).expect("r above roots");
    compare_f64(&mut out, "explicit potential at j=1, lemniscatic, B=0, r=2", explicit, v, 1e-9);
    compare(&mut out, "derivative of 4r^3 - g2 r - g3 used in the potential", "3r^2 - g2", "12r^2 - g2");
    compare(&mut out, "second derivative of 4r^3 - g2 r - g3 used in the potential", "6r", "24r");

    // Adjoint spectrum at n = 2.
    let adj_spec = crate::algebraization::adjoint(&crate::algebraization::canonical_spec(
        &int(1),
        &general.g2,
        &general.g3,
        &zero,
    ));
    let adj = matrix_from_operator(&crate::algebraization::build_from_spec(&adj_spec), 2).expect("degree 2");
    let conj: Vec<Complex64> = spectrum(&sm)
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.value.to_c64().conj(), r.multiplicity))
        .collect();
    let adj_eig: Vec<Complex64> = spectrum(&adj)
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.value.to_c64(), r.multiplicity))
        .collect();
    compare(&mut out, "spectrum of the adjoint canonical operator (n=2, g2=4, g3=1)", show_roots(conj), show_roots(adj_eig));

    out
}
