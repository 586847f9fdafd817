use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{factor_fp, Field, Poly, PrimeField, Rationals};

/// Constant fields `k` usable as the base of `K = k(t)`.
///
/// The hooks give the irreducibility certifier what it needs: points to
/// specialize `t` at, primes to reduce the constants to, and whatever prime
/// factors of `k[t]` elements can be found cheaply.
pub trait BaseField: Field + Copy {
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    /// Elements `0, 1, -1, 2, ...` (up to `count`, distinct).
    fn sample_points(&self, count: usize) -> Vec<Self::Elem>;

    /// Primes `l` with a reduction map `k -> F_l` worth trying.
    fn reduction_primes(&self) -> Vec<u64>;

    /// Image of `a` in `F_l`, `None` when `a` is not `l`-integral or `l` is not a valid target.
    fn reduce_to(&self, a: &Self::Elem, ell: u64) -> Option<u64>;

    /// Monic irreducible factors of `f` that can be found: all of them over `F_p`,
    /// the linear ones (rational roots) over `Q`.
    fn known_prime_factors(&self, f: &Poly<Self>) -> Vec<Poly<Self>>;
}

impl BaseField for PrimeField {
    fn from_bigint(&self, n: &BigInt) -> u64 {
        self.reduce_bigint(n)
    }

    fn sample_points(&self, count: usize) -> Vec<u64> {
        (0..self.modulus().min(count as u64)).collect()
    }

    fn reduction_primes(&self) -> Vec<u64> {
        vec![self.modulus()]
    }

    fn reduce_to(&self, a: &u64, ell: u64) -> Option<u64> {
        (ell == self.modulus()).then_some(*a)
    }

    fn known_prime_factors(&self, f: &Poly<Self>) -> Vec<Poly<Self>> {
        if f.is_constant() {
            return Vec::new();
        }
        factor_fp(f, 0).factors.into_iter().map(|(g, _)| g).collect()
    }
}

impl BaseField for Rationals {
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn sample_points(&self, count: usize) -> Vec<BigRational> {
        (0..count as i64)
            .map(|i| {
                let k = (i + 1) / 2;
                self.from_i64(if i % 2 == 1 { k } else { -k })
            })
            .collect()
    }

    fn reduction_primes(&self) -> Vec<u64> {
        vec![3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    }

    fn reduce_to(&self, a: &BigRational, ell: u64) -> Option<u64> {
        PrimeField::new(ell).ok()?.reduce_rational(a)
    }

    fn known_prime_factors(&self, f: &Poly<Self>) -> Vec<Poly<Self>> {
        rational_roots(f)
            .into_iter()
            .map(|r| Poly::new(Rationals, vec![-r, self.one()]))
            .collect()
    }
}

/// Rational roots by the rational root test on the primitive integer form.
fn rational_roots(f: &Poly<Rationals>) -> Vec<BigRational> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let z = f.trailing_zeros();
    if z > 0 {
        out.push(BigRational::zero());
    }
    let shifted = Poly::new(Rationals, f.coeffs()[z..].to_vec());
    if shifted.is_constant() {
        return out;
    }
    let (_, prim) = super::content_and_primitive(&shifted);
    let a0 = prim[0].abs();
    let an = prim.last().unwrap().abs();
    // Divisor enumeration is only attempted for modest constants.
    let (Some(pd), Some(qd)) = (small_divisors(&a0), small_divisors(&an)) else {
        return out;
    };
    for p in &pd {
        for q in &qd {
            for s in [1i64, -1] {
                let r = BigRational::new(p * BigInt::from(s), q.clone());
                if out.contains(&r) {
                    continue;
                }
                if shifted.eval(&r).is_zero() {
                    out.push(r);
                }
            }
        }
    }
    out
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    use num_traits::ToPrimitive;
    let n = n.to_u64().filter(|&n| n <= 1_000_000)?;
    Some(
        (1..=n)
            .filter(|d| n % d == 0)
            .map(BigInt::from)
            .collect(),
    )
}
