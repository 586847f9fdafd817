//! Exact coefficient arithmetic and univariate polynomial algebra over `F_p` and `Q`.
//!
//! Resultants follow the Sylvester-matrix convention with the rows of the first
//! argument on top, so `Res(f, g) = lc(f)^deg(g) * prod g(a)` over the roots `a`
//! of `f`. In particular `Res(t - a, t - b) = a - b`.

mod base;
mod factor;
mod field;
mod poly;
mod rational;
mod resultant;

pub use base::BaseField;
pub use factor::{factor_fp, is_irreducible_fp, Factorization};
pub use field::{is_prime_u64, Field, PrimeField, Rationals};
pub use poly::{Poly, SquarefreeDecomposition};
pub use rational::{
    content_and_primitive, is_squarefree_exact, is_squarefree_mod, rational_gcd, reduce_mod,
    ModSquarefree, Inconclusive, SQUAREFREE_LADDER,
};
pub use resultant::{subresultant, sylvester_resultant};

use thiserror::Error;

/// Polynomials over a prime field.
pub type ModPoly = Poly<PrimeField>;
/// Polynomials over the rationals.
pub type RatPoly = Poly<Rationals>;

pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} does not fit the word-size arithmetic")]
    ModulusTooLarge(u64),
    #[error("derivative vanishes identically")]
    InseparableInput,
    #[error("polynomial degree too small")]
    DegreeTooSmall,
    #[error("zero input")]
    ZeroInput,
}

/// Free-function form of [`Poly::gcd`].
pub fn poly_gcd<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    f.gcd(g)
}

/// Free-function form of [`Poly::squarefree_decomposition`].
pub fn squarefree_decomposition<F: Field>(f: &Poly<F>) -> SquarefreeDecomposition<F> {
    f.squarefree_decomposition()
}

/// Free-function form of [`Poly::resultant`].
pub fn resultant<F: Field>(f: &Poly<F>, g: &Poly<F>) -> F::Elem {
    f.resultant(g)
}

/// Free-function form of [`Poly::discriminant`].
pub fn discriminant<F: Field>(f: &Poly<F>) -> Result<F::Elem, AlgebraError> {
    f.discriminant()
}
