//! Q[t] specifics: primitive parts, gcd, reduction mod primes, square-freeness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{clear_denominators, is_prime_u64};
use super::{AlgebraError, ModPoly, Poly, PrimeField, RatPoly, Rationals};

/// Primes tried by [`is_squarefree_exact`] before falling back to the exact gcd.
pub const SQUAREFREE_LADDER: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

// Large primes for the coprimality shortcut in `rational_gcd`.
const GCD_PRIMES: [u64; 3] = [
    2_305_843_009_213_693_951,
    4_611_686_018_427_387_847,
    1_000_000_000_000_000_003,
];

/// Why a modular square-freeness test said nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inconclusive {
    /// The prime divides a coefficient denominator.
    BadPrime,
    /// The leading coefficient vanishes mod the prime.
    DegreeDrop,
    /// The reduction has a repeated factor.
    SharedFactor,
    ZeroPolynomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModSquarefree {
    Yes,
    Inconclusive(Inconclusive),
}

/// Splits `f = content * primitive` with `primitive` in Z[t], coefficient gcd 1
/// and positive leading coefficient. The zero polynomial gives `(0, [])`.
pub fn content_and_primitive(f: &RatPoly) -> (BigRational, Vec<BigInt>) {
    if f.is_zero() {
        return (BigRational::zero(), Vec::new());
    }
    let (den, nums) = clear_denominators(f.coeffs());
    let mut g = nums.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if nums.last().unwrap().is_negative() {
        g = -g;
    }
    let prim = nums.iter().map(|c| c / &g).collect();
    (BigRational::new(g, den), prim)
}

/// `f mod ell`, or `None` when `ell` divides some denominator.
pub fn reduce_mod(f: &RatPoly, ell: u64) -> Option<ModPoly> {
    let fp = PrimeField::new(ell).ok()?;
    let mut out = Vec::with_capacity(f.coeffs().len());
    for c in f.coeffs() {
        out.push(fp.reduce_rational(c)?);
    }
    Some(Poly::new(fp, out))
}

/// Certifies square-freeness over Q by reduction mod `ell`.
///
/// `Yes` is sound: a degree-preserving reduction that is square-free forces a
/// nonzero discriminant over Q.
pub fn is_squarefree_mod(f: &RatPoly, ell: u64) -> Result<ModSquarefree, AlgebraError> {
    if !is_prime_u64(ell) {
        return Err(AlgebraError::NotPrime(ell));
    }
    use Inconclusive::*;
    let verdict = if f.is_zero() {
        ModSquarefree::Inconclusive(ZeroPolynomial)
    } else {
        match reduce_mod(f, ell) {
            None => ModSquarefree::Inconclusive(BadPrime),
            Some(r) if r.degree() != f.degree() => ModSquarefree::Inconclusive(DegreeDrop),
            Some(r) if r.is_squarefree() => ModSquarefree::Yes,
            Some(_) => ModSquarefree::Inconclusive(SharedFactor),
        }
    };
    Ok(verdict)
}

/// True iff `gcd(f, f')` is constant. Zero is not square-free.
pub fn is_squarefree_exact(f: &RatPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    if f.is_constant() {
        return true;
    }
    for &ell in &SQUAREFREE_LADDER {
        if is_squarefree_mod(f, ell) == Ok(ModSquarefree::Yes) {
            return true;
        }
    }
    f.gcd(&f.derivative()).is_one()
}

/// Monic gcd over Q.
///
/// A modular coprimality test settles the common case; otherwise a primitive
/// remainder sequence over Z[t] is run.
pub fn rational_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(Rationals);
    }
    let (_, pa) = content_and_primitive(a);
    let (_, pb) = content_and_primitive(b);
    for &ell in &GCD_PRIMES {
        let m = BigInt::from(ell);
        if pa.last().unwrap().mod_floor(&m).is_zero() || pb.last().unwrap().mod_floor(&m).is_zero()
        {
            continue;
        }
        let fp = PrimeField::new(ell).expect("prime");
        let ra = int_to_mod(&fp, &pa);
        let rb = int_to_mod(&fp, &pb);
        // The mod-ell gcd has at least the degree of the true gcd.
        if ra.euclid_gcd(&rb).is_one() {
            return Poly::one(Rationals);
        }
        break;
    }
    let (mut x, mut y) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
    while !y.is_empty() {
        let r = primitive(pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    let coeffs = x
        .into_iter()
        .map(BigRational::from_integer)
        .collect();
    Poly::new(Rationals, coeffs).monic()
}

/// Resultant over Q via Collins' subresultant sequence on the integer numerators.
pub(crate) fn rational_resultant(a: &RatPoly, b: &RatPoly) -> BigRational {
    let (da, ia) = clear_denominators(a.coeffs());
    let (db, ib) = clear_denominators(b.coeffs());
    let (m, n) = (ia.len() as u32 - 1, ib.len() as u32 - 1);
    let r = int_resultant(ia, ib);
    BigRational::new(r, num_traits::pow(da, n as usize) * num_traits::pow(db, m as usize))
}

fn int_resultant(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> BigInt {
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let mut negate = false;
    if a.len() < b.len() {
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            negate = !negate;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    while b.len() > 1 {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = exact_prem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        let div = &g * num_traits::pow(h.clone(), delta as usize);
        a = b;
        b = r.into_iter().map(|c| c / &div).collect();
        g = a.last().unwrap().clone();
        if delta > 0 {
            h = num_traits::pow(g.clone(), delta as usize) / num_traits::pow(h, delta as usize - 1);
        }
    }
    let da = a.len() - 1;
    let res = if da == 0 {
        BigInt::one()
    } else {
        num_traits::pow(b[0].clone(), da) / num_traits::pow(h, da - 1)
    };
    if negate {
        -res
    } else {
        res
    }
}

// lc(b)^(deg a - deg b + 1) * a mod b.
fn exact_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    for k in (0..a.len() - db).rev() {
        let lr = r[k + db].clone();
        for c in r[..k + db].iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b[..db].iter().enumerate() {
            r[k + j] -= &lr * bc;
        }
    }
    r.truncate(db);
    trim(&mut r);
    r
}

fn int_to_mod(fp: &PrimeField, c: &[BigInt]) -> ModPoly {
    Poly::new(*fp, c.iter().map(|n| fp.reduce_bigint(n)).collect())
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut v);
    if v.is_empty() {
        return v;
    }
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    v
}

// Remainder of lc(b)^k * a by b for some k; only the primitive part is used.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &lr * bc;
        }
        trim(&mut r);
    }
    r
}
