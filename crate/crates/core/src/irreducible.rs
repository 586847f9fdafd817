//! One-sided irreducibility certificates for `phi^n(x) - a` over `K = k(t)`.
//!
//! Two routes, each sound on its own:
//! * Eisenstein at a finite place `p`, checked on the coefficients of `phi^n(x) - a`
//!   computed in the local ring `k[t] / (p^2)` (enough to tell valuations 0, 1, >= 2).
//! * Specialization `t -> c` followed by reduction to `F_l`, when the degree in `x`
//!   survives both steps and the image is irreducible over `F_l`.

use crate::algebra::{is_irreducible_fp, BaseField, Field, ModPoly, Poly, PrimeField};
use crate::dynsys::{DegreeCap, DynError, DynPolynomial, RatFunc};

/// A valuation known exactly below 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LocalVal {
    Zero,
    One,
    AtLeastTwo,
}

/// Arithmetic in `k[t] / (p^2)` for a monic irreducible `p`.
#[derive(Clone, Debug)]
pub struct LocalRing<F: Field> {
    prime: Poly<F>,
    modulus: Poly<F>,
}

impl<F: Field> LocalRing<F> {
    pub fn new(prime: Poly<F>) -> Self {
        let prime = prime.monic();
        let modulus = &prime * &prime;
        Self { prime, modulus }
    }

    pub fn prime(&self) -> &Poly<F> {
        &self.prime
    }

    /// Image of a `p`-integral element; `None` when `p` divides the denominator.
    pub fn reduce(&self, beta: &RatFunc<F>) -> Option<Poly<F>> {
        let num = beta.num().rem(&self.modulus);
        if beta.den().is_one() {
            return Some(num);
        }
        let inv = beta.den().inverse_mod(&self.modulus)?;
        Some(num.mul_mod(&inv, &self.modulus))
    }

    pub fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a.mul_mod(b, &self.modulus)
    }

    pub fn val(&self, a: &Poly<F>) -> LocalVal {
        if a.is_zero() {
            LocalVal::AtLeastTwo
        } else if self.prime.divides(a) {
            LocalVal::One
        } else {
            LocalVal::Zero
        }
    }

    // Product of two x-polynomials with coefficients in the ring, ascending.
    fn mul_x(&self, a: &[Poly<F>], b: &[Poly<F>]) -> Vec<Poly<F>> {
        let f = self.prime.field().clone();
        let mut out = vec![Poly::zero(f); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        out.iter().map(|c| c.rem(&self.modulus)).collect()
    }

    /// Coefficients of `phi^n(x) - a` in the ring (ascending in `x`), if all inputs are `p`-integral.
    pub fn iterate_minus(
        &self,
        phi: &DynPolynomial<F>,
        n: usize,
        a: &RatFunc<F>,
    ) -> Option<Vec<Poly<F>>> {
        let coeffs: Vec<Poly<F>> = phi
            .as_poly()
            .coeffs()
            .iter()
            .map(|c| self.reduce(c))
            .collect::<Option<_>>()?;
        let a_img = self.reduce(a)?;
        let mut psi = coeffs.clone();
        for _ in 1..n {
            // Horner: phi(psi) = (...(c_d psi + c_{d-1}) psi + ...) + c_0
            let mut acc = vec![coeffs.last().unwrap().clone()];
            for c in coeffs.iter().rev().skip(1) {
                acc = self.mul_x(&acc, &psi);
                acc[0] = (&acc[0] + c).rem(&self.modulus);
            }
            psi = acc;
        }
        psi[0] = (&psi[0] - &a_img).rem(&self.modulus);
        Some(psi)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EisensteinReport<F: Field> {
    pub place: Poly<F>,
    /// Valuations of the coefficients of `phi^n(x) - a`, ascending in `x`.
    pub valuations: Vec<LocalVal>,
    /// First coefficient breaking the pattern (ascending index), if any.
    pub offending: Option<usize>,
}

impl<F: Field> EisensteinReport<F> {
    pub fn holds(&self) -> bool {
        self.offending.is_none()
    }
}

/// Eisenstein pattern of `phi^n(x) - a` at `place`; `None` when some input is not integral there.
pub fn eisenstein_check<F: Field>(
    phi: &DynPolynomial<F>,
    n: usize,
    a: &RatFunc<F>,
    place: &Poly<F>,
) -> Option<EisensteinReport<F>> {
    let ring = LocalRing::new(place.clone());
    let coeffs = ring.iterate_minus(phi, n, a)?;
    let valuations: Vec<LocalVal> = coeffs.iter().map(|c| ring.val(c)).collect();
    let top = valuations.len() - 1;
    let offending = valuations.iter().enumerate().position(|(i, v)| match i {
        0 => *v != LocalVal::One,
        i if i == top => *v != LocalVal::Zero,
        _ => *v == LocalVal::Zero,
    });
    Some(EisensteinReport {
        place: ring.prime().clone(),
        valuations,
        offending,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate<F: Field> {
    Eisenstein { place: Poly<F> },
    /// `t -> point`, then reduction mod `prime`, gives an irreducible polynomial over `F_prime`.
    Specialization { point: F::Elem, prime: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum IrreducibilityStatus<F: Field> {
    Certified(Certificate<F>),
    Unknown,
}

impl<F: Field> IrreducibilityStatus<F> {
    pub fn is_certified(&self) -> bool {
        matches!(self, Self::Certified(_))
    }
}

/// Candidate Eisenstein places: common prime factors of the non-leading coefficients and of `a`.
pub fn eisenstein_candidates<F: BaseField>(phi: &DynPolynomial<F>, a: &RatFunc<F>) -> Vec<Poly<F>> {
    let base = *phi.base();
    let mut g = Poly::zero(base);
    for c in phi.coefficients().iter().skip(1).chain(std::iter::once(a)) {
        if !c.is_zero() {
            g = g.gcd(c.num());
        }
    }
    if g.is_zero() || g.is_constant() {
        return Vec::new();
    }
    base.known_prime_factors(&g)
}

/// Tries Eisenstein at the candidate places (plus `extra_places`), then specialization.
pub fn certify_iterate<F: BaseField>(
    phi: &DynPolynomial<F>,
    n: usize,
    a: &RatFunc<F>,
    extra_places: &[Poly<F>],
    cap: DegreeCap,
) -> Result<IrreducibilityStatus<F>, DynError> {
    cap.check_power(phi.degree(), n)?;
    let mut places = eisenstein_candidates(phi, a);
    for p in extra_places {
        if !places.contains(&p.monic()) {
            places.push(p.monic());
        }
    }
    for place in places {
        if let Some(rep) = eisenstein_check(phi, n, a, &place) {
            if rep.holds() {
                return Ok(IrreducibilityStatus::Certified(Certificate::Eisenstein { place }));
            }
        }
    }
    if let Some((point, prime)) = specialization_witness(phi, n, a) {
        return Ok(IrreducibilityStatus::Certified(Certificate::Specialization { point, prime }));
    }
    Ok(IrreducibilityStatus::Unknown)
}

// Image of an element of k(t) under t -> c followed by k -> F_l.
fn specialize<F: BaseField>(beta: &RatFunc<F>, c: &F::Elem, ell: u64) -> Option<u64> {
    let base = *beta.num().field();
    let v = beta.eval(c)?;
    base.reduce_to(&v, ell)
}

fn specialization_witness<F: BaseField>(
    phi: &DynPolynomial<F>,
    n: usize,
    a: &RatFunc<F>,
) -> Option<(F::Elem, u64)> {
    let base = *phi.base();
    for c in base.sample_points(8) {
        'primes: for ell in base.reduction_primes() {
            let fl = PrimeField::new(ell).ok()?;
            let mut img = Vec::with_capacity(phi.degree() + 1);
            for coeff in phi.as_poly().coeffs() {
                match specialize(coeff, &c, ell) {
                    Some(v) => img.push(v),
                    None => continue 'primes,
                }
            }
            let Some(a_img) = specialize(a, &c, ell) else {
                continue;
            };
            let phibar = Poly::new(fl, img);
            if phibar.degree() != Some(phi.degree()) {
                continue;
            }
            let shift = Poly::constant(fl, a_img);
            // phi^m - a reducible forces phi^(m+1) - a reducible, so climb level by level.
            let mut psi: ModPoly = phibar.clone();
            let mut ok = true;
            for m in 1..=n {
                if m > 1 {
                    psi = phibar.compose(&psi);
                }
                if !is_irreducible_fp(&(&psi - &shift)) {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Some((c, ell));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rationals;
    use crate::dynsys::RationalFunctions;

    #[test]
    fn local_valuations() {
        let ring = LocalRing::new(Poly::var(Rationals));
        let k = RationalFunctions::new(Rationals);
        // (-3t^3 - 3t) / (3t^2 + 2) has valuation exactly 1 at t.
        let a = RatFunc::new(
            Poly::from_i64s(Rationals, &[0, -3, 0, -3]),
            Poly::from_i64s(Rationals, &[2, 0, 3]),
        );
        assert_eq!(ring.val(&ring.reduce(&a).unwrap()), LocalVal::One);
        assert_eq!(ring.val(&ring.reduce(&k.one()).unwrap()), LocalVal::Zero);
        let t2 = k.from_base_i64s(&[0, 0, 1]);
        assert_eq!(ring.val(&ring.reduce(&t2).unwrap()), LocalVal::AtLeastTwo);
        assert!(ring.reduce(&k.inv(&k.t()).unwrap()).is_none());
    }

    #[test]
    fn eisenstein_x2_plus_t() {
        let k = RationalFunctions::new(Rationals);
        let phi = DynPolynomial::new(Rationals, vec![k.one(), k.zero(), k.t()]).unwrap();
        for n in 1..5 {
            let rep = eisenstein_check(&phi, n, &k.zero(), &Poly::var(Rationals)).unwrap();
            assert!(rep.holds(), "level {n}");
            assert_eq!(rep.valuations.len(), (1 << n) + 1);
        }
        // x^2 + t^2 fails on the constant term.
        let psi = DynPolynomial::new(Rationals, vec![k.one(), k.zero(), k.from_base_i64s(&[0, 0, 1])]).unwrap();
        let rep = eisenstein_check(&psi, 1, &k.zero(), &Poly::var(Rationals)).unwrap();
        assert_eq!(rep.offending, Some(0));
    }

    #[test]
    fn local_iterate_matches_full_iterate() {
        let f = PrimeField::new(7).unwrap();
        let k = RationalFunctions::new(f);
        let phi = DynPolynomial::new(
            f,
            vec![
                k.from_base_i64s(&[1, 1]),
                k.from_base_i64s(&[0, 2, 1]),
                k.inv(&k.from_base_i64s(&[1, 1])).unwrap(),
            ],
        )
        .unwrap();
        let a = k.from_base_i64s(&[3, 0, 1]);
        let place = Poly::from_i64s(f, &[1, 0, 1]);
        let ring = LocalRing::new(place);
        let local = ring.iterate_minus(&phi, 3, &a).unwrap();
        let full = phi.iterate(3, DegreeCap::default()).unwrap();
        for (i, c) in full.as_poly().coeffs().iter().enumerate() {
            let mut expect = ring.reduce(c).unwrap();
            if i == 0 {
                expect = (&expect - &ring.reduce(&a).unwrap()).rem(&(ring.prime() * ring.prime()));
            }
            assert_eq!(local[i], expect, "coefficient {i}");
        }
    }

    #[test]
    fn certifier_routes() {
        let k = RationalFunctions::new(Rationals);
        let phi = DynPolynomial::new(Rationals, vec![k.one(), k.zero(), k.t()]).unwrap();
        let st = certify_iterate(&phi, 3, &k.zero(), &[], DegreeCap::default()).unwrap();
        assert_eq!(
            st,
            IrreducibilityStatus::Certified(Certificate::Eisenstein { place: Poly::var(Rationals) })
        );
        // x^2 + 1 - a with a = 1 + t^2 + t: no common factor; the specialization route
        // finds t -> c with x^2 - c - c^2 irreducible mod some prime.
        let a = k.from_base_i64s(&[1, 1, 1]);
        let psi = DynPolynomial::new(Rationals, vec![k.one(), k.zero(), k.one()]).unwrap();
        let st = certify_iterate(&psi, 1, &a, &[], DegreeCap::default()).unwrap();
        assert!(matches!(st, IrreducibilityStatus::Certified(Certificate::Specialization { .. })));
        // x^2 - t^2 is reducible; nothing may certify it.
        let sq = DynPolynomial::new(Rationals, vec![k.one(), k.zero(), k.zero()]).unwrap();
        let st = certify_iterate(&sq, 1, &k.from_base_i64s(&[0, 0, 1]), &[], DegreeCap::default()).unwrap();
        assert_eq!(st, IrreducibilityStatus::Unknown);
    }
}
