//! Published polynomials against the exact assembly. The fixtures are in
//! printed order, so this also exercises the parser's normalization.

mod fixtures;

use std::str::FromStr;

use fixtures::tables::{MIXED_FIRST_SECOND, P4_A0_PARTS, P4_UPPER, SECOND_DERIVATIVE};
use zeta_moments_core::moment::{assemble_polynomial, leading_coeff_closed_form};
use zeta_moments_core::ring::rational;
use zeta_moments_core::{ExactPoly, Ring, Symbolic};

fn p(s: &str) -> ExactPoly {
    ExactPoly::from_str(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn check(mu: usize, nu: usize, expected: &[ExactPoly]) {
    let poly = assemble_polynomial(&Symbolic, mu, nu).unwrap();
    assert_eq!(poly.coeffs.len(), expected.len(), "degree of P_({mu},{nu})");
    for (m, want) in expected.iter().enumerate() {
        assert_eq!(poly.coeffs[m], *want, "P_({mu},{nu}) coefficient of x^{m}");
    }
}

#[test]
fn first_derivative_p4() {
    let r = Symbolic;
    let [a, b, c, d, e, f] = P4_A0_PARTS.map(p);
    let inner = r.add(&r.add(&r.add(&a, &r.mul(&b, &c)), &r.mul(&d, &e)), &f);
    let mut want = vec![r.scale(&inner, &rational(1, 3))];
    want.extend(P4_UPPER.map(p));
    check(1, 1, &want);
}

#[test]
fn second_derivative_table() {
    check(2, 2, &SECOND_DERIVATIVE.map(p));
}

#[test]
fn mixed_derivative_table() {
    check(1, 2, &MIXED_FIRST_SECOND.map(p));
    check(2, 1, &MIXED_FIRST_SECOND.map(p));
}

#[test]
fn leading_coefficients_follow_the_closed_form() {
    for mu in 1..=4 {
        for nu in 1..=4 {
            let poly = assemble_polynomial(&Symbolic, mu, nu).unwrap();
            assert_eq!(poly.degree(), mu + nu + 2);
            assert_eq!(
                *poly.leading().unwrap(),
                ExactPoly::constant(leading_coeff_closed_form(mu, nu)),
                "({mu},{nu})"
            );
        }
    }
    assert_eq!(leading_coeff_closed_form(1, 1), rational(1, 12));
    assert_eq!(leading_coeff_closed_form(2, 2), rational(4, 45));
    assert_eq!(leading_coeff_closed_form(1, 2), rational(-1, 12));
}

#[test]
fn symmetric_in_the_two_orders() {
    for (mu, nu) in [(1, 3), (2, 3), (1, 4), (3, 4), (2, 5), (1, 6), (1, 7), (2, 6), (3, 5)] {
        let a = assemble_polynomial(&Symbolic, mu, nu).unwrap();
        let b = assemble_polynomial(&Symbolic, nu, mu).unwrap();
        assert_eq!(a.coeffs, b.coeffs, "({mu},{nu})");
    }
}

#[test]
fn zeroth_order_is_rejected() {
    assert!(assemble_polynomial(&Symbolic, 0, 1).is_err());
    assert!(assemble_polynomial(&Symbolic, 2, 0).is_err());
}
