//! Exact and multiprecision machinery for the discrete second moment of
//! mixed zeta derivatives at the nontrivial zeros,
//!
//! ```text
//! I(μ,ν;T) = Σ_{0<γ≤T} ζ^(μ)(ρ) ζ^(ν)(1-ρ)  ~  (T/2π) P_{μ,ν}(log T/2π).
//! ```
//!
//! The crate is `no_std` (it needs `alloc`). It provides:
//!
//! * [`ring`]: coefficient rings. Exact polynomials over ℚ in the Stieltjes
//!   symbols `g0, g1, …` and multiprecision real/complex numbers.
//! * [`series`]: truncated Laurent series about `s = 1`.
//! * [`stieltjes`]: the constants `γ_n`, bundled and recomputed.
//! * [`moment`]: the Laurent coefficients `c`/`d`, the `C1`/`C2` sums and
//!   the assembled polynomial `P_{μ,ν}`.
//! * [`zeta`]: multiprecision `ζ(s)` and its derivatives.
//! * [`zeros`]: ordinate tables, Newton refinement and counting checks.
//! * [`empirics`]: the discrete sums and their comparison with the asymptotic.
//!
//! File formats, parallel evaluation and the CLI live in the companion
//! `zeta-moments` crate.

#![no_std]

extern crate alloc;

pub mod bernoulli;
pub mod empirics;
mod error;
pub mod moment;
pub mod ring;
pub mod series;
pub mod stieltjes;
pub mod zeros;
pub mod zeta;

pub use error::{Error, Result};
pub use moment::{assemble_polynomial, CoefficientSet, MomentPolynomial};
pub use ring::{Complex, ExactPoly, Numeric, Rational, Real, Ring, Symbolic};
pub use series::LaurentSeries;
pub use stieltjes::StieltjesTable;
pub use zeros::ZeroTable;
pub use zeta::EvalConfig;
