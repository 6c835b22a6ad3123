//! Exact Bernoulli numbers.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ring::{Rational, Real};

/// `B_0..=B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let even = bernoulli_even(n / 2);
    (0..=n)
        .map(|k| match k {
            0 => Rational::one(),
            1 => Rational::new(BigInt::from(-1), BigInt::from(2)),
            k if k % 2 == 1 => Rational::zero(),
            k => even[k / 2 - 1].clone(),
        })
        .collect()
}

/// `B_2, B_4, …, B_{2m}` from the tangent numbers `T_k`,
/// `B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1))`.
///
/// The tangent numbers come from the integer recurrence of Brent and
/// Harvey, so no rational arithmetic happens until the final division.
pub fn bernoulli_even(m: usize) -> Vec<Rational> {
    let mut t: Vec<BigInt> = alloc::vec![BigInt::zero(); m + 1];
    if m >= 1 {
        t[1] = BigInt::one();
    }
    for k in 2..=m {
        t[k] = &t[k - 1] * BigInt::from(k - 1);
    }
    for k in 2..=m {
        for j in k..=m {
            t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
        }
    }
    (1..=m)
        .map(|k| {
            let four_k = BigInt::one() << (2 * k);
            let num = &t[k] * BigInt::from(2 * k);
            let q = Rational::new(num, &four_k * (&four_k - BigInt::one()));
            if k % 2 == 1 {
                q
            } else {
                -q
            }
        })
        .collect()
}

/// `B_{2j}/(2j)!` for `j = 1..=m`, rounded to `prec` bits.
pub fn em_weights(m: usize, prec: usize) -> Vec<Real> {
    let b = bernoulli_even(m);
    let mut fact = BigInt::one();
    let mut out = Vec::with_capacity(m);
    for (j, bj) in b.iter().enumerate() {
        fact *= BigInt::from((2 * j + 1) * (2 * j + 2));
        out.push(Real::from_rational(&(bj / Rational::from_integer(fact.clone())), prec));
    }
    out
}
