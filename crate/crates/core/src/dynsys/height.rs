//! Orbits, Weil and canonical heights, wandering certificates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::map::{DynPolynomial, OrbitEvaluator};
use super::ratfunc::{weil_height, RatFunc};
use super::{DegreeCap, DynError};
use crate::algebra::Field;

/// `c_n = phi^n(b) - a` for `n = 1..=N`, plus the heights `h(phi^n(b))` for `n = 0..=N`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitTable<F: Field> {
    pub b: RatFunc<F>,
    pub a: RatFunc<F>,
    pub terms: Vec<RatFunc<F>>,
    pub heights: Vec<u64>,
}

impl<F: Field> OrbitTable<F> {
    /// `c_n` for `n >= 1`.
    pub fn term(&self, n: usize) -> &RatFunc<F> {
        &self.terms[n - 1]
    }
}

/// `C = d * sum_i h(A_i)`. For every `x in K`, `|h(phi(x)) - d h(x)| <= C`.
///
/// Place by place, the upper bound costs at most `max_i lambda_v(A_i)` and the
/// lower bound at most `d (lambda_v(1/A_0) + max_i lambda_v(A_i))`; summing the
/// local heights over all places of `k(t)` gives the constant.
pub fn height_constant<F: Field>(phi: &DynPolynomial<F>) -> u64 {
    let s: u64 = phi.coefficients().iter().map(weil_height).sum();
    phi.degree() as u64 * s
}

/// `[b, phi(b), ..., phi^n(b)]`, refusing to exceed the degree cap.
pub fn orbit<F: Field>(
    phi: &DynPolynomial<F>,
    b: &RatFunc<F>,
    n: usize,
    cap: DegreeCap,
) -> Result<Vec<RatFunc<F>>, DynError> {
    let d = phi.degree() as u128;
    let c = height_constant(phi) as u128;
    let mut ev = OrbitEvaluator::new(phi);
    let mut out = Vec::with_capacity(n + 1);
    out.push(b.clone());
    for _ in 0..n {
        let last = out.last().unwrap();
        cap.check(d * weil_height(last) as u128 + c)?;
        let next = ev.eval(last);
        out.push(next);
    }
    Ok(out)
}

pub fn orbit_table<F: Field>(
    phi: &DynPolynomial<F>,
    b: &RatFunc<F>,
    a: &RatFunc<F>,
    n: usize,
    cap: DegreeCap,
) -> Result<OrbitTable<F>, DynError> {
    let k = phi.field();
    let values = orbit(phi, b, n, cap)?;
    let heights = values.iter().map(weil_height).collect();
    let terms = values[1..].iter().map(|v| k.sub(v, a)).collect();
    Ok(OrbitTable {
        b: b.clone(),
        a: a.clone(),
        terms,
        heights,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeightEstimate {
    /// `h(phi^n(beta)) / d^n`.
    pub estimate: BigRational,
    /// `C / ((d - 1) d^n)`; the canonical height lies within this of the estimate.
    pub error_bound: BigRational,
    /// The constant `C` of [`height_constant`].
    pub constant: u64,
    /// Largest `|h(phi(x)) - d h(x)|` seen along the computed orbit segment.
    pub observed_defect: u64,
    pub iterations: usize,
}

impl HeightEstimate {
    pub fn lower(&self) -> BigRational {
        &self.estimate - &self.error_bound
    }

    pub fn upper(&self) -> BigRational {
        &self.estimate + &self.error_bound
    }
}

pub fn canonical_height_estimate<F: Field>(
    phi: &DynPolynomial<F>,
    beta: &RatFunc<F>,
    n: usize,
    cap: DegreeCap,
) -> Result<HeightEstimate, DynError> {
    assert!(n >= 1, "need at least one iteration");
    let d = phi.degree() as u64;
    let values = orbit(phi, beta, n, cap)?;
    let hs: Vec<u64> = values.iter().map(weil_height).collect();
    let observed_defect = hs
        .windows(2)
        .map(|w| (w[1] as i128 - d as i128 * w[0] as i128).unsigned_abs() as u64)
        .max()
        .unwrap_or(0);
    let dn = BigInt::from(d).pow(n as u32);
    let c = height_constant(phi);
    Ok(HeightEstimate {
        estimate: BigRational::new(BigInt::from(hs[n]), dn.clone()),
        error_bound: BigRational::new(BigInt::from(c), dn * BigInt::from(d - 1)),
        constant: c,
        observed_defect,
        iterations: n,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WanderingVerdict {
    /// From `phi^index(b)` on, heights increase forever.
    Wandering { index: usize, height: u64 },
    /// `phi^(preperiod + period)(b) = phi^preperiod(b)`.
    Preperiodic { preperiod: usize, period: usize },
    Unknown,
}

/// Sound wandering/preperiodic decision within a window of iterates.
///
/// `Wandering` is returned once some `h = h(phi^k(b))` has `(d - 1) h > C`: then
/// `h(phi^(k+1)(b)) >= d h - C > h` and the inequality propagates.
pub fn wandering_certificate<F: Field>(
    phi: &DynPolynomial<F>,
    b: &RatFunc<F>,
    window: usize,
    cap: DegreeCap,
) -> Result<WanderingVerdict, DynError> {
    assert!(window >= 2, "window must be at least 2");
    let d = phi.degree() as u64;
    let c = height_constant(phi);
    let mut ev = OrbitEvaluator::new(phi);
    let mut seen: Vec<RatFunc<F>> = vec![b.clone()];
    for k in 0..=window {
        let cur = &seen[k];
        let h = weil_height(cur);
        if (d - 1) * h > c {
            return Ok(WanderingVerdict::Wandering { index: k, height: h });
        }
        if k == window {
            break;
        }
        cap.check(d as u128 * h as u128 + c as u128)?;
        let next = ev.eval(cur);
        if let Some(j) = seen.iter().position(|v| *v == next) {
            return Ok(WanderingVerdict::Preperiodic {
                preperiod: j,
                period: k + 1 - j,
            });
        }
        seen.push(next);
    }
    Ok(WanderingVerdict::Unknown)
}

/// Smallest `m >= 1` with `log_d(h_upper / hmin) + 3 <= m`, i.e. `d^(m-3) hmin >= h_upper`.
pub fn min_iterate_from_bracket(
    d: usize,
    h_lower: &BigRational,
    h_upper: &BigRational,
    hmin_lower: &BigRational,
) -> Result<u32, DynError> {
    if !h_lower.is_positive() {
        return Err(DynError::NonpositiveHeight);
    }
    assert!(hmin_lower.is_positive(), "hmin_lower must be positive");
    let d = BigRational::from_integer(BigInt::from(d));
    let mut m = 1u32;
    // d^(m-3) as an exact rational, starting from d^-2.
    let mut scale = (&d * &d).recip();
    while &scale * hmin_lower < *h_upper {
        scale *= &d;
        m += 1;
    }
    Ok(m)
}

/// The iterate bound with the canonical height of `a` bracketed from `iterations` steps.
pub fn min_iterate_bound<F: Field>(
    phi: &DynPolynomial<F>,
    a: &RatFunc<F>,
    hmin_lower: &BigRational,
    iterations: usize,
    cap: DegreeCap,
) -> Result<u32, DynError> {
    let est = canonical_height_estimate(phi, a, iterations, cap)?;
    min_iterate_from_bracket(phi.degree(), &est.lower(), &est.upper(), hmin_lower)
}

/// Exact rational from a ratio of small integers.
pub fn ratio(n: i64, d: i64) -> BigRational {
    if d.is_one() {
        return BigRational::from_integer(n.into());
    }
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Poly, PrimeField, Rationals};
    use crate::dynsys::RationalFunctions;
    use proptest::prelude::*;

    fn k() -> RationalFunctions<Rationals> {
        RationalFunctions::new(Rationals)
    }

    fn map(coeffs: &[&[i64]]) -> DynPolynomial<Rationals> {
        let kk = k();
        DynPolynomial::new(Rationals, coeffs.iter().map(|c| kk.from_base_i64s(c)).collect()).unwrap()
    }

    #[test]
    fn estimates() {
        let cap = DegreeCap::default();
        let sq = map(&[&[1], &[], &[]]);
        for n in 1..6 {
            let e = canonical_height_estimate(&sq, &k().t(), n, cap).unwrap();
            assert_eq!(e.estimate, ratio(1, 1));
            assert_eq!(e.error_bound, ratio(0, 1));
        }
        let phi = map(&[&[1], &[], &[0, 1]]);
        let e = canonical_height_estimate(&phi, &k().zero(), 3, cap).unwrap();
        assert_eq!(e.estimate, ratio(1, 2));
        assert!(e.observed_defect <= e.constant);
    }

    #[test]
    fn wandering_examples() {
        let cap = DegreeCap::default();
        let sq = map(&[&[1], &[], &[]]);
        assert_eq!(
            wandering_certificate(&sq, &k().one(), 4, cap).unwrap(),
            WanderingVerdict::Preperiodic { preperiod: 0, period: 1 }
        );
        let phi = map(&[&[1], &[], &[0, 1]]);
        assert!(matches!(
            wandering_certificate(&phi, &k().zero(), 6, cap).unwrap(),
            WanderingVerdict::Wandering { .. }
        ));
        // x^2 - 1 has the 2-cycle 0 -> -1 -> 0.
        let cyc = map(&[&[1], &[], &[-1]]);
        assert_eq!(
            wandering_certificate(&cyc, &k().zero(), 4, cap).unwrap(),
            WanderingVerdict::Preperiodic { preperiod: 0, period: 2 }
        );
    }

    #[test]
    fn min_iterate_examples() {
        let one = ratio(1, 1);
        assert_eq!(min_iterate_from_bracket(3, &one, &one, &one).unwrap(), 3);
        let nine = ratio(9, 1);
        assert_eq!(min_iterate_from_bracket(3, &nine, &nine, &one).unwrap(), 5);
        assert_eq!(min_iterate_from_bracket(3, &one, &one, &ratio(1, 3)).unwrap(), 4);
        assert_eq!(
            min_iterate_from_bracket(3, &ratio(0, 1), &one, &one),
            Err(DynError::NonpositiveHeight)
        );
        // A bracket straddling a power rounds up.
        assert_eq!(min_iterate_from_bracket(3, &ratio(8, 1), &ratio(10, 1), &one).unwrap(), 6);
    }

    #[test]
    fn min_iterate_from_orbit() {
        let cap = DegreeCap::default();
        let sq = map(&[&[1, 0, 0], &[], &[]]);
        let m = min_iterate_bound(&sq, &k().t(), &ratio(1, 1), 4, cap).unwrap();
        assert_eq!(m, 3);
        assert_eq!(
            min_iterate_bound(&sq, &k().one(), &ratio(1, 1), 4, cap),
            Err(DynError::NonpositiveHeight)
        );
    }

    fn arb_map_fp() -> impl Strategy<Value = DynPolynomial<PrimeField>> {
        (2usize..4, prop::collection::vec(prop::collection::vec(0i64..7, 0..3), 4))
            .prop_filter_map("leading nonzero", |(d, cs)| {
                let f = PrimeField::new(7).unwrap();
                let kk = RationalFunctions::new(f);
                let coeffs: Vec<_> = cs.iter().take(d + 1).map(|c| kk.from_base_i64s(c)).collect();
                if coeffs[0].is_zero() {
                    return None;
                }
                DynPolynomial::new(f, coeffs).ok()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn one_step_bounds_hold(phi in arb_map_fp(), start in prop::collection::vec(0i64..7, 0..3), den in prop::collection::vec(0i64..7, 1..3)) {
            let f = PrimeField::new(7).unwrap();
            let dp = Poly::from_i64s(f, &den);
            prop_assume!(!dp.is_zero());
            let beta = RatFunc::new(Poly::from_i64s(f, &start), dp);
            let d = phi.degree() as i64;
            let c = height_constant(&phi) as i64;
            let max_h = phi.coefficients().iter().map(weil_height).max().unwrap() as i64;
            let c_spec = (d + 1) * max_h + d;
            let values = orbit(&phi, &beta, 4, DegreeCap::default()).unwrap();
            for w in values.windows(2) {
                let defect = (weil_height(&w[1]) as i64 - d * weil_height(&w[0]) as i64).abs();
                prop_assert!(defect <= c);
                prop_assert!(defect <= c_spec);
            }
        }
    }
}
