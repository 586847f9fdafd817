//! The family `phi(x) = x^p + A x^(p-1) + B`, `A = (-p B^p - p B) / (p B^(p-1) + p - 1)`.

use super::trinomial::Trinomial;
use super::GaloisError;
use crate::algebra::{
    content_and_primitive, is_prime_u64, reduce_mod, BaseField, Field, ModPoly, Poly, PrimeField,
    RatPoly, Rationals,
};
use crate::dynsys::{
    critical_points, orbit, wandering_certificate, DegreeCap, DynPolynomial, RatFunc,
    RationalFunctions, WanderingVerdict,
};
use crate::irreducible::{eisenstein_check, EisensteinReport};
use crate::riccati::{delta_phi, epsilon_phi};

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyPhi<F: Field> {
    pub p: u64,
    pub b: RatFunc<F>,
    pub a: RatFunc<F>,
    /// The critical point other than 0: `-(p-1) A / p`.
    pub gamma: RatFunc<F>,
    pub phi: DynPolynomial<F>,
}

impl<F: Field> FamilyPhi<F> {
    pub fn to_trinomial(&self) -> Trinomial<RationalFunctions<F>> {
        let p = self.p as usize;
        Trinomial::new(self.phi.field().clone(), p, p - 1, self.a.clone(), self.b.clone())
            .expect("p(p-1) checked at construction")
    }
}

fn check_p<F: Field>(base: &F, p: u64) -> Result<(), GaloisError> {
    if p < 3 || !is_prime_u64(p) {
        return Err(GaloisError::NotPrime(p));
    }
    let ch = base.characteristic();
    if ch != 0 && (p * (p - 1)) % ch == 0 {
        return Err(GaloisError::BadCharacteristic(p * (p - 1)));
    }
    Ok(())
}

/// Builds the family member and verifies `phi^2(0) = gamma` and that the critical
/// points are exactly `0` and `gamma`, with `gamma` simple.
pub fn family_phi<F: BaseField>(base: F, p: u64, b: RatFunc<F>) -> Result<FamilyPhi<F>, GaloisError> {
    check_p(&base, p)?;
    if b.is_constant() {
        return Err(GaloisError::ConstantB);
    }
    let k = RationalFunctions::new(base);
    let pk = k.from_i64(p as i64);
    let bp = k.pow(&b, p);
    let num = k.neg(&k.mul(&pk, &k.add(&bp, &b)));
    let den = k.add(&k.mul(&pk, &k.pow(&b, p - 1)), &k.from_i64(p as i64 - 1));
    let a = k.div(&num, &den).ok_or(GaloisError::InvariantFailed("p B^(p-1) + p - 1 vanishes"))?;
    let gamma = k.div(&k.mul(&k.from_i64(1 - p as i64), &a), &pk).unwrap();
    let mut coeffs = vec![k.one(), a.clone()];
    coeffs.extend((0..p - 2).map(|_| k.zero()));
    coeffs.push(b.clone());
    let phi = DynPolynomial::new(base, coeffs)?;

    if phi.evaluate(&phi.evaluate(&k.zero())) != gamma {
        return Err(GaloisError::InvariantFailed("phi^2(0) = gamma"));
    }
    let cps = critical_points(&phi)?;
    let simple = cps.multiplicity(&gamma) == 1;
    let only = cps.is_complete()
        && cps.points.len() == 2
        && cps.multiplicity(&k.zero()) == p as usize - 2;
    if !simple || !only {
        return Err(GaloisError::InvariantFailed("critical set {0, gamma} with gamma simple"));
    }
    Ok(FamilyPhi { p, b, a, gamma, phi })
}

/// Eisenstein pattern of `phi^n(x)` at `t` for `n = 1..=n_max`.
pub fn eisenstein_stability<F: Field>(
    fam: &FamilyPhi<F>,
    n_max: usize,
) -> Result<Vec<EisensteinReport<F>>, GaloisError> {
    let k = fam.phi.field();
    let place = Poly::var(k.base().clone());
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let rep = eisenstein_check(&fam.phi, n, &k.zero(), &place)
            .ok_or(GaloisError::PatternBroken { n, index: None })?;
        if let Some(i) = rep.offending {
            return Err(GaloisError::PatternBroken { n, index: Some(i) });
        }
        out.push(rep);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ANCheck {
    /// The denominator of `phi^n(gamma)` is a power of `p t^(p-1) + p - 1`.
    DenominatorPower,
    /// `a_n mod p` is a unit times `(x^p + t)^(n+2)` evaluated at 0.
    ModPIdentity,
    /// `d/dt (a_n mod p)` is a nonzero constant and `p` does not divide `lc(a_n)`.
    DerivativeConstant,
    /// `deg a_n = p^(n+1)`.
    Degree,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ANTerm {
    pub n: usize,
    /// Primitive integer numerator of `phi^n(gamma)`, positive leading coefficient.
    pub a_n: RatPoly,
    /// `e` with `den(phi^n(gamma)) = (p t^(p-1) + p - 1)^e` up to a constant.
    pub denominator_exponent: Option<u64>,
    pub reduction: ModPoly,
    /// `u` with `a_n mod p = u * phibar^(n+2)(0)`.
    pub mod_p_unit: Option<u64>,
    pub derivative_constant: bool,
    pub lc_coprime: bool,
    pub degree: usize,
}

impl ANTerm {
    pub fn first_failure(&self, p: u64) -> Option<ANCheck> {
        if self.denominator_exponent.is_none() {
            Some(ANCheck::DenominatorPower)
        } else if self.mod_p_unit.is_none() {
            Some(ANCheck::ModPIdentity)
        } else if !(self.derivative_constant && self.lc_coprime) {
            Some(ANCheck::DerivativeConstant)
        } else if self.degree as u128 != (p as u128).pow(self.n as u32 + 1) {
            Some(ANCheck::Degree)
        } else {
            None
        }
    }

    /// `a_n` square-free over Q: its reduction has constant nonzero derivative and keeps its degree.
    pub fn squarefree_certified(&self) -> bool {
        self.derivative_constant && self.lc_coprime
    }
}

fn bad_family() -> GaloisError {
    GaloisError::RequiresBEqualsT
}

/// `a_0, ..., a_{n_max}` with every check recorded (none enforced).
pub fn a_n_terms(
    fam: &FamilyPhi<Rationals>,
    n_max: usize,
    cap: DegreeCap,
) -> Result<Vec<ANTerm>, GaloisError> {
    let k = fam.phi.field();
    if fam.b != k.t() {
        return Err(bad_family());
    }
    let p = fam.p;
    let fp = PrimeField::new(p).map_err(|_| GaloisError::NotPrime(p))?;
    let mut r0 = vec![0i64; p as usize];
    r0[0] = p as i64 - 1;
    r0[p as usize - 1] = p as i64;
    let r0 = Poly::from_i64s(Rationals, &r0).monic();
    // phibar^(m)(0) for x^p + t over F_p, starting at m = 2.
    let tp = Poly::var(fp);
    let mut phibar = &tp.pow(p) + &tp;
    let values = orbit(&fam.phi, &fam.gamma, n_max, cap)?;
    let mut out = Vec::with_capacity(n_max + 1);
    for (n, v) in values.iter().enumerate() {
        if n > 0 {
            phibar = &phibar.pow(p) + &tp;
        }
        let (_, ints) = content_and_primitive(v.num());
        let a_n = Poly::new(Rationals, ints.into_iter().map(num_rational::BigRational::from_integer).collect());
        let dd = v.den().deg().max(0) as u64;
        let denominator_exponent = (dd % (p - 1) == 0)
            .then(|| dd / (p - 1))
            .filter(|e| r0.pow(*e) == *v.den());
        let reduction = reduce_mod(&a_n, p).expect("integer coefficients");
        let mod_p_unit = reduction.lc().and_then(|&l| {
            let u = fp.div(&l, phibar.lc()?)?;
            (phibar.scale(&u) == reduction).then_some(u)
        });
        let deriv = reduction.derivative();
        let derivative_constant = deriv.degree() == Some(0);
        let lc_coprime = reduction.degree() == a_n.degree();
        out.push(ANTerm {
            n,
            degree: a_n.degree().unwrap_or(0),
            a_n,
            denominator_exponent,
            reduction,
            mod_p_unit,
            derivative_constant,
            lc_coprime,
        });
    }
    Ok(out)
}

/// `a_0, ..., a_{n_max}`, failing on the first broken check.
pub fn a_n_sequence(
    fam: &FamilyPhi<Rationals>,
    n_max: usize,
    cap: DegreeCap,
) -> Result<Vec<ANTerm>, GaloisError> {
    let terms = a_n_terms(fam, n_max, cap)?;
    for t in &terms {
        if let Some(check) = t.first_failure(fam.p) {
            return Err(GaloisError::CheckFailed { check, n: t.n });
        }
    }
    Ok(terms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelFailure {
    Stability,
    Squarefree,
    DegreeIdentity,
    DegreeInequality,
    LowerLevel(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelVerdict {
    /// `Gal(K_n / K_(n-1))` is `(S_p)^(p^(n-1))`, contingent on the transposition and
    /// maximality criteria the degree argument feeds.
    MaximalCertified,
    Failed(LevelFailure),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurjectivityLevel {
    pub n: usize,
    pub stability_cert: bool,
    pub a_n_squarefree: bool,
    pub degree_identity: bool,
    /// `deg a_n > sum_{m<n} deg a_m + deg t + deg num(gamma)`.
    pub degree_inequality: bool,
    pub verdict: LevelVerdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurjectivityReport {
    pub p: u64,
    pub n_max: usize,
    pub levels: Vec<SurjectivityLevel>,
}

impl SurjectivityReport {
    pub fn all_maximal(&self) -> bool {
        self.levels
            .iter()
            .all(|l| l.verdict == LevelVerdict::MaximalCertified)
    }
}

/// Levels `2..=n_max` of the surjectivity argument for `B = t` over `Q(t)`.
pub fn surjectivity_certificate(
    p: u64,
    n_max: usize,
    cap: DegreeCap,
) -> Result<SurjectivityReport, GaloisError> {
    let k = RationalFunctions::new(Rationals);
    let fam = family_phi(Rationals, p, k.t())?;
    cap.check_power(p as usize, n_max)?;
    let stable: Vec<bool> = (1..=n_max)
        .map(|n| {
            eisenstein_check(&fam.phi, n, &k.zero(), &Poly::var(Rationals))
                .is_some_and(|r| r.holds())
        })
        .collect();
    let terms = a_n_terms(&fam, n_max, cap)?;
    let gamma_deg = fam.gamma.num().deg().max(0) as usize;
    let mut levels = Vec::new();
    let mut lower_ok: Option<usize> = None;
    for n in 2..=n_max {
        let term = &terms[n];
        let stability_cert = stable[n - 1];
        let a_n_squarefree = term.squarefree_certified();
        let degree_identity = term.degree as u128 == (p as u128).pow(n as u32 + 1);
        let lower: usize = terms[..n].iter().map(|t| t.degree).sum();
        let degree_inequality = term.degree > lower + 1 + gamma_deg;
        let failure = if let Some(m) = lower_ok {
            Some(LevelFailure::LowerLevel(m))
        } else if !stability_cert {
            Some(LevelFailure::Stability)
        } else if !a_n_squarefree {
            Some(LevelFailure::Squarefree)
        } else if !degree_identity {
            Some(LevelFailure::DegreeIdentity)
        } else if !degree_inequality {
            Some(LevelFailure::DegreeInequality)
        } else {
            None
        };
        if failure.is_some() && lower_ok.is_none() {
            lower_ok = Some(n);
        }
        levels.push(SurjectivityLevel {
            n,
            stability_cert,
            a_n_squarefree,
            degree_identity,
            degree_inequality,
            verdict: failure.map_or(LevelVerdict::MaximalCertified, LevelVerdict::Failed),
        });
    }
    Ok(SurjectivityReport { p, n_max, levels })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteIndexReport<F: Field> {
    pub p_prime: bool,
    pub p_invertible: bool,
    pub b_nonconstant: bool,
    pub delta_nonzero: bool,
    pub epsilon_nonzero: bool,
    pub zero_wandering: bool,
    pub gamma_wandering: bool,
    pub gamma_simple: bool,
    pub family: Option<FamilyPhi<F>>,
    /// Every check passed: the arboreal image has finite index in `Aut(T_p)`,
    /// contingent on the finite-index theorem whose hypotheses these are.
    pub finite_index: bool,
}

pub fn finite_index_report<F: BaseField>(
    base: F,
    p: u64,
    b: RatFunc<F>,
    cap: DegreeCap,
) -> FiniteIndexReport<F> {
    let p_prime = p >= 3 && is_prime_u64(p);
    let ch = base.characteristic();
    let p_invertible = ch == 0 || (p * p.saturating_sub(1)) % ch != 0;
    let b_nonconstant = !b.is_constant();
    let mut rep = FiniteIndexReport {
        p_prime,
        p_invertible,
        b_nonconstant,
        delta_nonzero: false,
        epsilon_nonzero: false,
        zero_wandering: false,
        gamma_wandering: false,
        gamma_simple: false,
        family: None,
        finite_index: false,
    };
    if !(p_prime && p_invertible && b_nonconstant) {
        return rep;
    }
    let Ok(fam) = family_phi(base, p, b) else {
        return rep;
    };
    let k = fam.phi.field();
    rep.delta_nonzero = !delta_phi(&fam.phi).is_zero();
    rep.epsilon_nonzero = !epsilon_phi(&fam.phi).is_zero();
    let wanders = |x: &RatFunc<F>| {
        matches!(
            wandering_certificate(&fam.phi, x, 12, cap),
            Ok(WanderingVerdict::Wandering { .. })
        )
    };
    rep.zero_wandering = wanders(&k.zero());
    rep.gamma_wandering = wanders(&fam.gamma);
    rep.gamma_simple = critical_points(&fam.phi).is_ok_and(|c| c.multiplicity(&fam.gamma) == 1);
    rep.finite_index = rep.delta_nonzero
        && rep.epsilon_nonzero
        && rep.zero_wandering
        && rep.gamma_wandering
        && rep.gamma_simple;
    rep.family = Some(fam);
    rep
}
