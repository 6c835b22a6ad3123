//! Published moment polynomials, transcribed term by term in their printed
//! order, lowest power first.

#![allow(dead_code)]

/// `|ζ'|²`, except the constant term, which is printed in nested form (see
/// [`P4_A0_PARTS`]).
pub const P4_UPPER: [&str; 4] = [
    "-2 + 4*g0 - 2*g0^2 - 2*g0^3 - 10*g0*g1 + 4*g1 - g2",
    "1 - 2*g0 + g0^2 - 2*g1",
    "2/3*g0 - 1/3",
    "1/12",
];

/// `(6 + 6g0·(5g1 + 4g2 − 2) + 6g0²·(g0 + g0² + 6g1 + 1) − 12g1 + 42g1² + 3g2 + 10g3) / 3`
/// as `[6, 6g0, 5g1 + 4g2 − 2, 6g0², g0 + g0² + 6g1 + 1, −12g1 + 42g1² + 3g2 + 10g3]`.
pub const P4_A0_PARTS: [&str; 6] = [
    "6",
    "6*g0",
    "5*g1 + 4*g2 - 2",
    "6*g0^2",
    "g0 + g0^2 + 6*g1 + 1",
    "-12*g1 + 42*g1^2 + 3*g2 + 10*g3",
];

/// `|ζ''|²`: A_0..A_6.
pub const SECOND_DERIVATIVE: [&str; 7] = [
    "64 - 88*g0 + 24*g0^2 + 16*g0^3 + 8*g0^4 - 8*g0^6 - 64*g1 + 72*g0*g1 + 48*g0^2*g1 + 8*g0^3*g1 - 48*g0^4*g1 \
     + 48*g1^2 + 24*g0*g1^2 - 72*g0^2*g1^2 - 16*g1^3 - 4*g2 + 32*g0*g2 + 12*g0^2*g2 - 16*g0^3*g2 + 32*g1*g2 \
     - 24*g0*g1*g2 + 4*g2^2 + 16/3*g3 + 8*g0*g3 + 8*g1*g3 + 4/3*g4 + 2*g0*g4 + 14/15*g5",
    "-64 + 88*g0 - 24*g0^2 - 16*g0^3 - 8*g0^4 + 64*g1 - 72*g0*g1 - 48*g0^2*g1 - 8*g0^3*g1 - 48*g1^2 \
     - 24*g0*g1^2 + 4*g2 - 32*g0*g2 - 12*g0^2*g2 - 32*g1*g2 - 16/3*g3 - 8*g0*g3 - 4/3*g4",
    "32 - 44*g0 + 12*g0^2 + 8*g0^3 + 4*g0^4 - 32*g1 + 36*g0*g1 + 24*g0^2*g1 + 24*g1^2 - 2*g2 + 16*g0*g2 + 8/3*g3",
    "-32/3 + 44/3*g0 - 4*g0^2 - 8/3*g0^3 + 32/3*g1 - 12*g0*g1 + 2/3*g2",
    "8/3 - 11/3*g0 + g0^2 - 8/3*g1",
    "-8/15 + 11/15*g0",
    "4/45",
];

/// `ζ'(ρ)ζ''(1−ρ)`: B_0..B_5.
pub const MIXED_FIRST_SECOND: [&str; 6] = [
    "10 - 16*g0 + 6*g0^2 + 4*g0^3 + 2*g0^4 - 12*g1 + 20*g0*g1 + 12*g0^2*g1 + 14*g1^2 + 2*g2 + 8*g0*g2 + 10/3*g3",
    "-10 + 16*g0 - 6*g0^2 - 4*g0^3 - 2*g0^4 + 12*g1 - 20*g0*g1 - 12*g0^2*g1 - 14*g1^2 - 2*g2 - 8*g0*g2 - 10/3*g3",
    "5 - 8*g0 + 3*g0^2 + 2*g0^3 - 6*g1 + 10*g0*g1 + g2",
    "-5/3 + 8/3*g0 - g0^2 + 2*g1",
    "5/12 - 2/3*g0",
    "-1/12",
];
