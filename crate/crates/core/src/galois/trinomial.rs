//! Trinomials `x^d + A x^s + B`: discriminant, inertia transpositions, maximality.

use num_integer::Integer;

use super::{val_at, GaloisError};
use crate::algebra::{is_prime_u64, BaseField, Field, Poly};
use crate::dynsys::{critical_points, orbit, DegreeCap, DynPolynomial, RatFunc, RationalFunctions};
use crate::irreducible::{certify_iterate, IrreducibilityStatus};

#[derive(Clone, Debug, PartialEq)]
pub struct Trinomial<G: Field> {
    field: G,
    d: usize,
    s: usize,
    a: G::Elem,
    b: G::Elem,
}

impl<G: Field> Trinomial<G> {
    /// `x^d + A x^s + B`; rejects `d <= s`, `s = 0`, and `d s (d - s) = 0` in the field.
    pub fn new(field: G, d: usize, s: usize, a: G::Elem, b: G::Elem) -> Result<Self, GaloisError> {
        if s == 0 || d <= s {
            return Err(GaloisError::InvalidTrinomial { d, s });
        }
        let p = field.characteristic();
        for m in [d, s, d - s] {
            if p != 0 && m as u64 % p == 0 {
                return Err(GaloisError::BadCharacteristic(m as u64));
            }
        }
        Ok(Self { field, d, s, a, b })
    }

    pub fn field(&self) -> &G {
        &self.field
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn a(&self) -> &G::Elem {
        &self.a
    }

    pub fn b(&self) -> &G::Elem {
        &self.b
    }

    pub fn gcd_ds(&self) -> usize {
        self.d.gcd(&self.s)
    }

    pub fn as_poly(&self) -> Poly<G> {
        let k = &self.field;
        let mut c = vec![k.zero(); self.d + 1];
        c[self.d] = k.one();
        c[self.s] = k.add(&c[self.s], &self.a);
        c[0] = k.add(&c[0], &self.b);
        Poly::new(k.clone(), c)
    }
}

impl<F: Field> Trinomial<RationalFunctions<F>> {
    pub fn to_dyn(&self) -> DynPolynomial<F> {
        DynPolynomial::from_x_poly(self.as_poly()).expect("d >= 2")
    }
}

/// Closed-form discriminant. With `e = gcd(d, s)`, `N = d/e`, `S = s/e`:
/// `(-1)^(d(d-1)/2) B^(s-1) (d^N B^(N-S) - (-1)^N (d-s)^(N-S) s^S A^N)^e`.
pub fn trinomial_disc<G: Field>(t: &Trinomial<G>) -> G::Elem {
    let k = t.field();
    let (d, s) = (t.d as u64, t.s as u64);
    let e = t.gcd_ds() as u64;
    let (n, sm) = (d / e, s / e);
    let int = |m: u64| k.from_i64(m as i64);
    let first = k.mul(&k.pow(&int(d), n), &k.pow(t.b(), n - sm));
    let mut second = k.mul(
        &k.mul(&k.pow(&int(d - s), n - sm), &k.pow(&int(s), sm)),
        &k.pow(t.a(), n),
    );
    if n % 2 == 1 {
        second = k.neg(&second);
    }
    let inner = k.pow(&k.sub(&first, &second), e);
    let mut out = k.mul(&k.pow(t.b(), s - 1), &inner);
    if (d * (d - 1) / 2) % 2 == 1 {
        out = k.neg(&out);
    }
    out
}

/// `(-1)^(d(d-1)/2) Res(f, f')`, the oracle for [`trinomial_disc`].
pub fn resultant_disc<G: Field>(t: &Trinomial<G>) -> G::Elem {
    t.as_poly()
        .discriminant()
        .expect("d is nonzero in the field, so f' is nonzero")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TranspositionVerdict {
    /// Every hypothesis holds and `v_p(disc)` is odd, so `p` ramifies: the inertia
    /// group at `p` has order two and acts as a transposition.
    Certified,
    /// Every hypothesis holds but `v_p(disc)` is even and positive; the conclusion
    /// needs `p` to ramify, which is not decided here.
    ContingentOnRamification,
    Failed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TranspositionChecklist<F: Field> {
    pub coprime: bool,
    pub ds_nonzero: bool,
    /// `A` and `B` are `p`-integral.
    pub integral: bool,
    /// `v_p(A B) = 0`.
    pub ab_unit: bool,
    /// `v_p(disc)`, `None` when the discriminant vanishes.
    pub disc_valuation: Option<i64>,
    pub irreducibility: IrreducibilityStatus<F>,
    pub verdict: TranspositionVerdict,
}

/// Hypotheses for an inertia transposition at the finite place `place` (monic irreducible).
pub fn transposition_hypotheses<F: BaseField>(
    t: &Trinomial<RationalFunctions<F>>,
    place: &Poly<F>,
    cap: DegreeCap,
) -> TranspositionChecklist<F> {
    let k = t.field();
    let va = val_at(t.a(), place);
    let vb = val_at(t.b(), place);
    let integral = va.map_or(true, |v| v >= 0) && vb.map_or(true, |v| v >= 0);
    let ab_unit = va == Some(0) && vb == Some(0);
    let disc_valuation = val_at(&trinomial_disc(t), place);
    let irreducibility = certify_iterate(&t.to_dyn(), 1, &k.zero(), &[place.clone()], cap)
        .unwrap_or(IrreducibilityStatus::Unknown);
    let coprime = t.gcd_ds() == 1;
    let base_ok = coprime && integral && ab_unit && irreducibility.is_certified();
    let verdict = match disc_valuation {
        Some(v) if base_ok && v > 0 && v % 2 == 1 => TranspositionVerdict::Certified,
        Some(v) if base_ok && v > 0 => TranspositionVerdict::ContingentOnRamification,
        _ => TranspositionVerdict::Failed,
    };
    TranspositionChecklist {
        coprime,
        ds_nonzero: true,
        integral,
        ab_unit,
        disc_valuation,
        irreducibility,
        verdict,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DynTranspositionCheck<F: Field> {
    pub irreducibility: IrreducibilityStatus<F>,
    pub coprime: bool,
    /// Every root of `phi'` lies in `K` and is `p`-integral, as are `A` and `B`.
    pub critical_integral: bool,
    pub gamma_multiplicity: usize,
    /// `v_p(phi^n(gamma))`.
    pub gamma_valuation: Option<i64>,
    pub cond_a: bool,
    /// `v_p(d A)`.
    pub da_valuation: Option<i64>,
    /// `v_p(phi^n(0))`.
    pub zero_orbit_valuation: Option<i64>,
    /// `(delta, v_p(phi^n(delta)))` for the other critical points.
    pub other_valuations: Vec<(RatFunc<F>, Option<i64>)>,
    pub cond_b: bool,
    /// All hypotheses and both conditions hold: `Gal_{K(alpha)}(phi(x) - alpha)`
    /// contains a transposition for every root `alpha` of `phi^(n-1)`.
    pub passes: bool,
}

/// Conditions (a) and (b) of the dynamical transposition criterion at `place`, level `n >= 2`.
pub fn dyn_transposition_check<F: BaseField>(
    t: &Trinomial<RationalFunctions<F>>,
    gamma: &RatFunc<F>,
    n: usize,
    place: &Poly<F>,
    cap: DegreeCap,
) -> Result<DynTranspositionCheck<F>, GaloisError> {
    let k = t.field();
    let phi = t.to_dyn();
    let irreducibility = certify_iterate(&phi, n, &k.zero(), &[place.clone()], cap)?;
    if !irreducibility.is_certified() {
        return Err(GaloisError::MissingIrreducibility);
    }
    let cps = critical_points(&phi)?;
    let gamma_multiplicity = cps.multiplicity(gamma);
    let nonneg = |v: Option<i64>| v.map_or(true, |v| v >= 0);
    let critical_integral = cps.is_complete()
        && nonneg(val_at(t.a(), place))
        && nonneg(val_at(t.b(), place))
        && cps.points.iter().all(|(c, _)| nonneg(val_at(c, place)));

    let gamma_valuation = val_at(&orbit(&phi, gamma, n, cap)?[n], place);
    let cond_a = matches!(gamma_valuation, Some(v) if v % 2 != 0);

    let da = k.mul(&k.from_i64(t.d() as i64), t.a());
    let da_valuation = val_at(&da, place);
    let zero_orbit_valuation = val_at(&orbit(&phi, &k.zero(), n, cap)?[n], place);
    let mut other_valuations = Vec::new();
    for (delta, _) in cps.points.iter().filter(|(c, _)| c != gamma) {
        let v = val_at(&orbit(&phi, delta, n, cap)?[n], place);
        other_valuations.push((delta.clone(), v));
    }
    let cond_b = da_valuation == Some(0)
        && zero_orbit_valuation == Some(0)
        && other_valuations.iter().all(|(_, v)| *v == Some(0));
    let passes = t.gcd_ds() == 1
        && critical_integral
        && gamma_multiplicity == 1
        && n >= 2
        && cond_a
        && cond_b;
    Ok(DynTranspositionCheck {
        irreducibility,
        coprime: t.gcd_ds() == 1,
        critical_integral,
        gamma_multiplicity,
        gamma_valuation,
        cond_a,
        da_valuation,
        zero_orbit_valuation,
        other_valuations,
        cond_b,
        passes,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MaximalityCheck<F: Field> {
    pub transposition: DynTranspositionCheck<F>,
    /// `v_p(phi^m(gamma)) = 0` for `1 <= m < n`.
    pub primitive: bool,
    /// `v_p(phi^m(delta)) = 0` for `1 <= m <= n` and every other critical point.
    pub others_clear: bool,
    /// `d` prime, so transitivity plus a transposition gives `S_d`.
    pub prime_degree: bool,
    /// All of the above: `Gal(K_n / K_(n-1))` is `(S_d)^(d^(n-1))`, contingent on the
    /// transposition and maximality criteria it instantiates.
    pub level_maximal: bool,
}

pub fn maximality_conditions<F: BaseField>(
    t: &Trinomial<RationalFunctions<F>>,
    gamma: &RatFunc<F>,
    n: usize,
    place: &Poly<F>,
    cap: DegreeCap,
) -> Result<MaximalityCheck<F>, GaloisError> {
    let transposition = dyn_transposition_check(t, gamma, n, place, cap)?;
    let phi = t.to_dyn();
    let g_orbit = orbit(&phi, gamma, n, cap)?;
    let primitive = (1..n).all(|m| val_at(&g_orbit[m], place) == Some(0));
    let mut others_clear = true;
    for (delta, _) in &transposition.other_valuations {
        let o = orbit(&phi, delta, n, cap)?;
        others_clear &= (1..=n).all(|m| val_at(&o[m], place) == Some(0));
    }
    let prime_degree = is_prime_u64(t.d() as u64);
    let level_maximal = transposition.passes && primitive && others_clear && prime_degree;
    Ok(MaximalityCheck {
        transposition,
        primitive,
        others_clear,
        prime_degree,
        level_maximal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{factor_fp, PrimeField, Rationals};
    use crate::galois::family_phi;
    use proptest::prelude::*;

    fn q() -> RationalFunctions<Rationals> {
        RationalFunctions::new(Rationals)
    }

    #[test]
    fn cubic_disc() {
        let k = q();
        let (a, b) = (k.from_base_i64s(&[1, 2]), k.from_base_i64s(&[0, 0, 3]));
        let t = Trinomial::new(k, 3, 1, a.clone(), b.clone()).unwrap();
        let expect = k.neg(&k.add(
            &k.mul(&k.from_i64(4), &k.pow(&a, 3)),
            &k.mul(&k.from_i64(27), &k.pow(&b, 2)),
        ));
        assert_eq!(trinomial_disc(&t), expect);
        assert_eq!(resultant_disc(&t), expect);
    }

    #[test]
    fn zero_b_kills_disc() {
        let t = Trinomial::new(q(), 5, 3, q().t(), q().zero()).unwrap();
        assert!(trinomial_disc(&t).is_zero());
    }

    #[test]
    fn quintic_constants() {
        use num_rational::BigRational;
        let one = BigRational::from_integer(1.into());
        let t = Trinomial::new(Rationals, 5, 2, one.clone(), one).unwrap();
        // 5^5 + (-1)^4 3^3 2^2 = 3125 + 108
        assert_eq!(trinomial_disc(&t), BigRational::from_integer(3233.into()));
        assert_eq!(resultant_disc(&t), trinomial_disc(&t));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Trinomial::new(q(), 3, 3, q().one(), q().one()),
            Err(GaloisError::InvalidTrinomial { .. })
        ));
        let f = PrimeField::new(3).unwrap();
        let k = RationalFunctions::new(f);
        assert_eq!(
            Trinomial::new(k, 4, 1, k.one(), k.t()).unwrap_err(),
            GaloisError::BadCharacteristic(3)
        );
    }

    #[test]
    fn transposition_x3_x_t() {
        let k = q();
        let t = Trinomial::new(k, 3, 1, k.one(), k.t()).unwrap();
        // disc = -4 - 27 t^2; its monic irreducible factor over Q.
        let place = Poly::from_i64s(Rationals, &[-4, 0, -27]).monic();
        let rep = transposition_hypotheses(&t, &place, DegreeCap::default());
        assert_eq!(rep.disc_valuation, Some(1));
        assert!(rep.ab_unit);
        assert_eq!(rep.verdict, TranspositionVerdict::Certified);
    }

    #[test]
    fn transposition_failures() {
        let k = q();
        let t = Trinomial::new(k, 4, 2, k.one(), k.t()).unwrap();
        let rep = transposition_hypotheses(&t, &Poly::from_i64s(Rationals, &[1, 1]), DegreeCap::default());
        assert!(!rep.coprime);
        assert_eq!(rep.verdict, TranspositionVerdict::Failed);
        let t = Trinomial::new(k, 3, 1, k.one(), k.t()).unwrap();
        let rep = transposition_hypotheses(&t, &Poly::var(Rationals), DegreeCap::default());
        assert!(!rep.ab_unit);
        assert_eq!(rep.verdict, TranspositionVerdict::Failed);
    }

    fn phi3_f7() -> (Trinomial<RationalFunctions<PrimeField>>, RatFunc<PrimeField>) {
        let f = PrimeField::new(7).unwrap();
        let k = RationalFunctions::new(f);
        let fam = family_phi(f, 3, k.t()).unwrap();
        (fam.to_trinomial(), fam.gamma.clone())
    }

    #[test]
    fn dyn_transposition_over_f7() {
        let (t, gamma) = phi3_f7();
        let phi = t.to_dyn();
        let cap = DegreeCap::default();
        let a2 = orbit(&phi, &gamma, 2, cap).unwrap()[2].clone();
        let fac = factor_fp(a2.num(), 0);
        let (place, e) = fac.factors.iter().find(|(_, e)| *e == 1).cloned().unwrap();
        assert_eq!(e, 1);
        let chk = dyn_transposition_check(&t, &gamma, 2, &place, cap).unwrap();
        assert_eq!(chk.gamma_multiplicity, 1);
        assert!(chk.cond_a);
        // At t the zero orbit has valuation 1, so (b) fails.
        let chk = dyn_transposition_check(&t, &gamma, 2, &Poly::var(*t.field().base()), cap).unwrap();
        assert_eq!(chk.zero_orbit_valuation, Some(1));
        assert!(!chk.cond_b);
        assert!(!chk.passes);
    }

    #[test]
    fn condition_b_reduces_to_zero_orbit() {
        // x^2 + x + t has the single critical point -1/2, so with p not dividing d A
        // condition (b) is just v_p(phi^n(0)) = 0.
        let f = PrimeField::new(7).unwrap();
        let k = RationalFunctions::new(f);
        let t = Trinomial::new(k, 2, 1, k.one(), k.t()).unwrap();
        let gamma = k.from_i64(3);
        let cap = DegreeCap::default();
        for place in [Poly::from_i64s(f, &[1, 1]), Poly::var(f)] {
            let chk = dyn_transposition_check(&t, &gamma, 2, &place, cap).unwrap();
            assert_eq!(chk.gamma_multiplicity, 1);
            assert!(chk.other_valuations.is_empty());
            assert_eq!(chk.da_valuation, Some(0));
            assert_eq!(chk.cond_b, chk.zero_orbit_valuation == Some(0));
        }
    }

    #[test]
    fn maximality_primitive_checks() {
        let (t, gamma) = phi3_f7();
        let phi = t.to_dyn();
        let cap = DegreeCap::default();
        let o = orbit(&phi, &gamma, 3, cap).unwrap();
        // A fresh factor of a_2 is primitive at level 2.
        let earlier: Vec<_> = o[1..2].iter().map(|v| v.num().clone()).collect();
        let fresh = factor_fp(o[2].num(), 0)
            .factors
            .into_iter()
            .map(|(q, _)| q)
            .find(|q| earlier.iter().all(|c| !q.divides(c)))
            .unwrap();
        let chk = maximality_conditions(&t, &gamma, 2, &fresh, cap).unwrap();
        assert!(chk.primitive);
        // A factor of a_1 reused at level 3 is not.
        let old = factor_fp(o[1].num(), 0).factors[0].0.clone();
        let chk = maximality_conditions(&t, &gamma, 3, &old, cap).unwrap();
        assert!(!chk.primitive);
        assert!(!chk.level_maximal);
    }

    fn coprime_pairs() -> Vec<(usize, usize)> {
        (2..=7)
            .flat_map(|d| (1..d).map(move |s| (d, s)))
            .filter(|(d, s)| d.gcd(s) == 1)
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn formula_matches_resultant_q(
            idx in 0usize..17,
            a in prop::collection::vec(-5i64..6, 1..3),
            b in prop::collection::vec(-5i64..6, 1..3),
        ) {
            let pairs = coprime_pairs();
            let (d, s) = pairs[idx % pairs.len()];
            let k = q();
            let t = Trinomial::new(k, d, s, k.from_base_i64s(&a), k.from_base_i64s(&b)).unwrap();
            prop_assert_eq!(trinomial_disc(&t), resultant_disc(&t));
        }

        #[test]
        fn formula_matches_resultant_non_coprime(
            ds in prop::sample::select(vec![(4usize, 2usize), (6, 2), (6, 3), (6, 4)]),
            a in -5i64..6,
            b in -5i64..6,
        ) {
            let t = Trinomial::new(q(), ds.0, ds.1, q().from_i64(a), q().from_base_i64s(&[b, 1])).unwrap();
            prop_assert_eq!(trinomial_disc(&t), resultant_disc(&t));
        }
    }
}
