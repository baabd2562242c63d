//! Exact arithmetic for necklace, cyclotomic and dynatomic polynomials.
//!
//! The polynomial kernel in [`poly`] is generic over its coefficient ring
//! through the [`Coeff`] trait (built on `num-traits`). Three rings are
//! provided and aliased here:
//!
//! * [`QPoly`]: polynomials over the rationals,
//! * [`FpPoly`]: polynomials over a prime field `F_p`,
//! * [`QaPoly`]: polynomials in `x` whose coefficients lie in `Q[a]`, used to
//!   verify statements for a whole one-parameter family such as `x^2 + a`.
//!
//! On top of the kernel sit the necklace operator calculus ([`necklace`]),
//! cyclotomic factor scans ([`cyclotomic`]), dynatomic polynomials and
//! divisibility certificates ([`dynatomic`]) and the Dirichlet character
//! cover test ([`characters`]).

pub mod characters;
pub mod cyclotomic;
pub mod dynatomic;
mod error;
pub mod necklace;
pub mod numtheory;
pub mod poly;

pub use error::{Error, Result};
pub use poly::fp::Fp;
pub use poly::{CoefficientRing, Coeff, Field, Polynomial};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Polynomials over `Q`.
pub type QPoly = Polynomial<Rational>;

/// Polynomials over a prime field.
pub type FpPoly = Polynomial<Fp>;

/// Polynomials in `x` over `Q[a]`.
pub type QaPoly = Polynomial<QPoly>;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `n / d`. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
