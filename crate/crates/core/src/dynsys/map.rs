//! Polynomial maps `phi in K[x]` and their iteration.

use std::fmt;

use super::ratfunc::{clear_x_denominators, RatFunc, RationalFunctions};
use super::{DegreeCap, DynError};
use crate::algebra::{Field, Poly};

/// `phi(x) = A_0 x^d + A_1 x^(d-1) + ... + A_d` with `A_i in k(t)`, `d >= 2`.
#[derive(Clone, PartialEq, Debug)]
pub struct DynPolynomial<F: Field> {
    poly: Poly<RationalFunctions<F>>,
}

impl<F: Field> DynPolynomial<F> {
    /// From the coefficient list `[A_0, ..., A_d]` (leading first).
    pub fn new(base: F, coeffs: Vec<RatFunc<F>>) -> Result<Self, DynError> {
        let mut asc = coeffs;
        asc.reverse();
        Self::from_x_poly(Poly::new(RationalFunctions::new(base), asc))
    }

    pub fn from_x_poly(poly: Poly<RationalFunctions<F>>) -> Result<Self, DynError> {
        match poly.degree() {
            Some(d) if d >= 2 => Ok(Self { poly }),
            _ => Err(DynError::DegreeTooSmall),
        }
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap()
    }

    pub fn field(&self) -> &RationalFunctions<F> {
        self.poly.field()
    }

    pub fn base(&self) -> &F {
        self.poly.field().base()
    }

    /// `A_i` in the leading-first indexing; zero beyond `d`.
    pub fn a(&self, i: usize) -> RatFunc<F> {
        let d = self.degree();
        if i > d {
            return self.field().zero();
        }
        self.poly.coeff(d - i)
    }

    /// `[A_0, ..., A_d]`.
    pub fn coefficients(&self) -> Vec<RatFunc<F>> {
        (0..=self.degree()).map(|i| self.a(i)).collect()
    }

    /// The underlying polynomial in `x`, ascending.
    pub fn as_poly(&self) -> &Poly<RationalFunctions<F>> {
        &self.poly
    }

    /// Coefficients in `k[t]` when every `A_i` is a polynomial, ascending in `x`.
    pub fn integral_coeffs(&self) -> Option<Vec<Poly<F>>> {
        self.poly
            .coeffs()
            .iter()
            .map(|c| c.is_polynomial().then(|| c.num().clone()))
            .collect()
    }

    pub fn evaluate(&self, beta: &RatFunc<F>) -> RatFunc<F> {
        OrbitEvaluator::new(self).eval(beta)
    }

    /// `phi(x)` composed with itself `n` times.
    pub fn iterate(&self, n: usize, cap: DegreeCap) -> Result<Self, DynError> {
        assert!(n >= 1, "iterate needs n >= 1");
        let d = self.degree();
        let total = cap.check_power(d, n)?;
        let _ = total;
        let mut acc = self.poly.clone();
        for _ in 1..n {
            acc = self.poly.compose(&acc);
        }
        Ok(Self { poly: acc })
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            poly: self.poly.compose(&other.poly),
        }
    }

    /// Derivative in `x`.
    pub fn derivative_x(&self) -> Poly<RationalFunctions<F>> {
        self.poly.derivative()
    }
}

impl<F: Field> fmt::Display for DynPolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt_with_var(f, "x")
    }
}

/// Repeated evaluation of one map, reusing a coprime factor base for denominators.
///
/// With `phi = (sum a_j x^j) / L` over `k[t]` and `beta = N / M`, the value is
/// `sum a_j N^j M^(d-j) / (L M^d)`. All denominators along an orbit are supported
/// on the primes of `L` and of the starting denominator, so cancellation only
/// needs trial division by the (small) base elements.
#[derive(Clone, Debug)]
pub struct OrbitEvaluator<F: Field> {
    d: usize,
    ints: Vec<Poly<F>>,
    lden: Poly<F>,
    base: Vec<Poly<F>>,
    field: RationalFunctions<F>,
}

impl<F: Field> OrbitEvaluator<F> {
    pub fn new(phi: &DynPolynomial<F>) -> Self {
        let (lden, ints) = clear_x_denominators(phi.as_poly());
        let mut ev = Self {
            d: phi.degree(),
            ints,
            lden: lden.clone(),
            base: Vec::new(),
            field: phi.field().clone(),
        };
        ev.absorb(&lden);
        ev
    }

    // Adds the radical of `m` to the base, keeping it pairwise coprime.
    fn absorb(&mut self, m: &Poly<F>) {
        if m.is_constant() {
            return;
        }
        let sqf = m.squarefree_decomposition();
        for (g, _) in sqf.parts.iter().chain(sqf.inseparable.iter()) {
            refine(&mut self.base, g.clone());
        }
    }

    // Exponents of `m` over the base, extending the base when needed.
    fn express(&mut self, m: &Poly<F>) -> Vec<usize> {
        loop {
            let mut rest = m.monic();
            let mut exps = vec![0; self.base.len()];
            for (q, e) in self.base.iter().zip(exps.iter_mut()) {
                while let Some(quo) = (!rest.is_constant()).then(|| rest.exact_div(q)).flatten() {
                    rest = quo;
                    *e += 1;
                }
            }
            if rest.is_constant() {
                return exps;
            }
            self.absorb(&rest);
        }
    }

    pub fn eval(&mut self, beta: &RatFunc<F>) -> RatFunc<F> {
        let d = self.d;
        let n = beta.num();
        let m = beta.den();
        let lden = self.lden.clone();
        let (mexp, lexp) = loop {
            let version = self.base.len();
            let mexp = self.express(m);
            let lexp = self.express(&lden);
            if self.base.len() == version {
                break (mexp, lexp);
            }
        };
        // Homogeneous Horner: acc = sum a_j N^j M^(d-j).
        let mut mpow = vec![Poly::one(self.field.base().clone())];
        if !m.is_one() {
            for i in 1..=d {
                let next = &mpow[i - 1] * m;
                mpow.push(next);
            }
        }
        let mp = |i: usize| -> &Poly<F> { if m.is_one() { &mpow[0] } else { &mpow[i] } };
        let mut acc = self.ints[d].clone();
        for j in (0..d).rev() {
            acc = &(&acc * n) + &(&self.ints[j] * mp(d - j));
        }
        let mut dens: Vec<(Poly<F>, usize)> = self
            .base
            .iter()
            .zip(lexp.iter().zip(mexp.iter()))
            .filter_map(|(q, (&el, &em))| {
                let e = el + d * em;
                (e > 0).then(|| (q.clone(), e))
            })
            .collect();
        if acc.is_zero() {
            return self.field.zero();
        }
        let mut i = 0;
        while i < dens.len() {
            loop {
                let (q, e) = &mut dens[i];
                if *e == 0 {
                    break;
                }
                let (quo, r) = acc.div_rem(q);
                if r.is_zero() {
                    acc = quo;
                    *e -= 1;
                    continue;
                }
                let g = q.gcd(&r);
                if g.is_one() {
                    break;
                }
                let other = q.exact_div(&g).unwrap();
                let e_val = *e;
                *q = g.clone();
                dens.push((other, e_val));
                refine(&mut self.base, g);
            }
            i += 1;
        }
        let mut den = Poly::one(self.field.base().clone());
        for (q, e) in &dens {
            if *e > 0 {
                den = &den * &q.pow(*e as u64);
            }
        }
        // acc is coprime to every remaining base power; only normalization is left.
        let lc = den.lc().unwrap().clone();
        let base = self.field.base().clone();
        let inv = base.inv(&lc).unwrap();
        let num = acc.scale(&inv);
        let den = den.scale(&inv);
        RatFunc::new_unchecked(num, den)
    }
}

// Inserts a square-free monic `g` into a pairwise coprime square-free base.
fn refine<F: Field>(base: &mut Vec<Poly<F>>, g: Poly<F>) {
    let mut pending = vec![g.monic()];
    while let Some(mut r) = pending.pop() {
        if r.is_constant() {
            continue;
        }
        let mut i = 0;
        while i < base.len() && !r.is_constant() {
            let c = base[i].gcd(&r);
            if c.is_one() {
                i += 1;
                continue;
            }
            let q = base[i].exact_div(&c).unwrap();
            r = r.exact_div(&c).unwrap();
            if q.is_constant() {
                // base[i] divides r entirely; keep it.
                i += 1;
                continue;
            }
            base[i] = c;
            base.push(q);
            i += 1;
        }
        if !r.is_constant() {
            base.push(r.monic());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn k() -> RationalFunctions<Rationals> {
        RationalFunctions::new(Rationals)
    }

    fn rq(c: &[i64]) -> RatFunc<Rationals> {
        k().from_base_i64s(c)
    }

    fn x2_plus_t() -> DynPolynomial<Rationals> {
        DynPolynomial::new(Rationals, vec![rq(&[1]), rq(&[]), rq(&[0, 1])]).unwrap()
    }

    #[test]
    fn iterate_examples() {
        let phi = x2_plus_t();
        let phi2 = phi.iterate(2, DegreeCap::default()).unwrap();
        let expected = DynPolynomial::new(
            Rationals,
            vec![rq(&[1]), rq(&[]), rq(&[0, 2]), rq(&[]), rq(&[0, 1, 1])],
        )
        .unwrap();
        assert_eq!(phi2, expected);
        assert_eq!(phi.iterate(1, DegreeCap::default()).unwrap(), phi);
        assert!(matches!(
            phi.iterate(20, DegreeCap::new(1000)),
            Err(DynError::DegreeCapExceeded { .. })
        ));
    }

    #[test]
    fn evaluate_examples() {
        let kk = k();
        let phi = x2_plus_t();
        assert_eq!(phi.evaluate(&kk.zero()), kk.t());
        let inv_t = kk.inv(&kk.t()).unwrap();
        let expected = RatFunc::new(
            Poly::from_i64s(Rationals, &[1, 0, 0, 1]),
            Poly::from_i64s(Rationals, &[0, 0, 1]),
        );
        assert_eq!(phi.evaluate(&inv_t), expected);
    }

    #[test]
    fn evaluator_splits_partial_factors() {
        // Denominator base starts from t^2 + t; the value needs t alone to cancel.
        let kk = k();
        let phi = DynPolynomial::new(
            Rationals,
            vec![rq(&[1]), kk.inv(&rq(&[0, 1, 1])).unwrap(), rq(&[])],
        )
        .unwrap();
        let beta = RatFunc::new(Poly::from_i64s(Rationals, &[0, 1]), Poly::from_i64s(Rationals, &[1, 1]));
        let naive = phi.as_poly().eval(&beta);
        assert_eq!(phi.evaluate(&beta), naive);
    }

    fn arb_map(p: u64) -> impl Strategy<Value = DynPolynomial<PrimeField>> {
        let coeff = (
            prop::collection::vec(0i64..p as i64, 0..3),
            prop::collection::vec(0i64..p as i64, 1..3),
        );
        (2usize..4, prop::collection::vec(coeff, 4)).prop_filter_map("valid map", move |(d, cs)| {
            let f = PrimeField::new(p).unwrap();
            let mut out = Vec::new();
            for (n, dd) in cs.into_iter().take(d + 1) {
                let den = Poly::from_i64s(f, &dd);
                if den.is_zero() {
                    return None;
                }
                out.push(RatFunc::new(Poly::from_i64s(f, &n), den));
            }
            if out[0].is_zero() {
                return None;
            }
            DynPolynomial::new(f, out).ok()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn composition_law(phi in arb_map(7), m in 1usize..3, n in 1usize..3) {
            let cap = DegreeCap::default();
            let lhs = phi.iterate(m + n, cap).unwrap();
            let rhs = phi.iterate(m, cap).unwrap().compose(&phi.iterate(n, cap).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn evaluator_matches_horner(phi in arb_map(5), a in prop::collection::vec(0i64..5, 0..3), b in prop::collection::vec(0i64..5, 1..3)) {
            let f = PrimeField::new(5).unwrap();
            let den = Poly::from_i64s(f, &b);
            prop_assume!(!den.is_zero());
            let beta = RatFunc::new(Poly::from_i64s(f, &a), den);
            let mut ev = OrbitEvaluator::new(&phi);
            let mut x = beta.clone();
            for _ in 0..3 {
                let fast = ev.eval(&x);
                let slow = phi.as_poly().eval(&x);
                prop_assert_eq!(&fast, &slow);
                x = fast;
            }
        }
    }
}
