//! The invariants `delta`, `epsilon` of a polynomial map and the Riccati coefficients
//! forced on a solution `beta' = b beta + c` of `phi(beta)' = f phi(beta) + g`.

use thiserror::Error;

use crate::algebra::{BaseField, Field, Poly};
use crate::dynsys::{d_dt, DegreeCap, DynPolynomial, RatFunc, RationalFunctions};
use crate::irreducible::{certify_iterate, IrreducibilityStatus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RiccatiError {
    #[error("the coefficient system is singular (delta vanishes)")]
    SingularSystem,
    #[error("degree {0} is zero in the base field")]
    BadCharacteristic(usize),
    #[error("degree {0} is below 3")]
    DegreeTooSmall(usize),
}

/// Coefficients of `beta' = a beta^2 + b beta + c` and `phi(beta)' = e phi(beta)^2 + f phi(beta) + g`.
#[derive(Clone, Debug, PartialEq)]
pub struct RiccatiSolution<F: Field> {
    pub a: RatFunc<F>,
    pub b: RatFunc<F>,
    pub c: RatFunc<F>,
    pub e: RatFunc<F>,
    pub f: RatFunc<F>,
    pub g: RatFunc<F>,
}

fn int<F: Field>(k: &RationalFunctions<F>, n: usize) -> RatFunc<F> {
    k.from_i64(n as i64)
}

/// `2 d A_0 A_2 - (d-1) A_1^2`.
pub fn delta_phi<F: Field>(phi: &DynPolynomial<F>) -> RatFunc<F> {
    let k = phi.field();
    let d = phi.degree();
    let (a0, a1, a2) = (phi.a(0), phi.a(1), phi.a(2));
    k.sub(
        &k.mul(&int(k, 2 * d), &k.mul(&a0, &a2)),
        &k.mul(&int(k, d - 1), &k.mul(&a1, &a1)),
    )
}

/// `(d-1)^2 A_0 A_1 A_1' + d(d-3) A_0 A_2 A_0' - (d-1)(d-2) A_1^2 A_0' - d(d-1) A_0^2 A_2'`.
pub fn epsilon_phi<F: Field>(phi: &DynPolynomial<F>) -> RatFunc<F> {
    let k = phi.field();
    let d = phi.degree();
    let (a0, a1, a2) = (phi.a(0), phi.a(1), phi.a(2));
    let (da0, da1, da2) = (d_dt(&a0), d_dt(&a1), d_dt(&a2));
    let m = |x: &RatFunc<F>, y: &RatFunc<F>| k.mul(x, y);
    let t1 = m(&int(k, (d - 1) * (d - 1)), &m(&m(&a0, &a1), &da1));
    let t2 = m(&int(k, d * (d - 3)), &m(&m(&a0, &a2), &da0));
    let t3 = m(&int(k, (d - 1) * (d - 2)), &m(&m(&a1, &a1), &da0));
    let t4 = m(&int(k, d * (d - 1)), &m(&m(&a0, &a0), &da2));
    k.sub(&k.sub(&k.add(&t1, &t2), &t3), &t4)
}

/// The coefficient matrix acting on `(b, f, c)`.
pub fn coefficient_matrix<F: Field>(phi: &DynPolynomial<F>) -> [[RatFunc<F>; 3]; 3] {
    let k = phi.field();
    let d = phi.degree();
    let (a0, a1, a2) = (phi.a(0), phi.a(1), phi.a(2));
    [
        [k.mul(&int(k, d), &a0), k.neg(&a0), k.zero()],
        [k.mul(&int(k, d - 1), &a1), k.neg(&a1), k.mul(&int(k, d), &a0)],
        [k.mul(&int(k, d - 2), &a2), k.neg(&a2), k.mul(&int(k, d - 1), &a1)],
    ]
}

/// Right-hand side `-(A_0', A_1', A_2')` under which the top coefficients of `P` vanish.
pub fn riccati_rhs<F: Field>(phi: &DynPolynomial<F>) -> [RatFunc<F>; 3] {
    let k = phi.field();
    [0, 1, 2].map(|i| k.neg(&d_dt(&phi.a(i))))
}

pub fn determinant3<F: Field>(k: &F, m: &[[F::Elem; 3]; 3]) -> F::Elem {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        k.sub(&k.mul(&m[r1][c1], &m[r2][c2]), &k.mul(&m[r1][c2], &m[r2][c1]))
    };
    let p0 = k.mul(&m[0][0], &minor(1, 2, 1, 2));
    let p1 = k.mul(&m[0][1], &minor(1, 2, 0, 2));
    let p2 = k.mul(&m[0][2], &minor(1, 2, 0, 1));
    k.add(&k.sub(&p0, &p1), &p2)
}

// Fraction-free (Bareiss) elimination on the augmented matrix; `None` if singular.
fn bareiss_solve<F: Field>(
    k: &F,
    m: &[[F::Elem; 3]; 3],
    rhs: &[F::Elem; 3],
) -> Option<[F::Elem; 3]> {
    let mut a: Vec<Vec<F::Elem>> = (0..3)
        .map(|i| {
            let mut row = m[i].to_vec();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut prev = k.one();
    for col in 0..3 {
        let piv = (col..3).find(|&r| !k.is_zero(&a[r][col]))?;
        a.swap(col, piv);
        for r in col + 1..3 {
            for j in col + 1..4 {
                let v = k.sub(
                    &k.mul(&a[col][col], &a[r][j]),
                    &k.mul(&a[r][col], &a[col][j]),
                );
                a[r][j] = k.div(&v, &prev).expect("Bareiss divisor is a nonzero pivot");
            }
            a[r][col] = k.zero();
        }
        prev = a[col][col].clone();
    }
    let mut x = [k.zero(), k.zero(), k.zero()];
    for i in (0..3).rev() {
        let mut s = a[i][3].clone();
        for j in i + 1..3 {
            s = k.sub(&s, &k.mul(&a[i][j], &x[j]));
        }
        x[i] = k.div(&s, &a[i][i])?;
    }
    Some(x)
}

fn check_degree<F: Field>(phi: &DynPolynomial<F>) -> Result<(), RiccatiError> {
    let d = phi.degree();
    if d < 3 {
        return Err(RiccatiError::DegreeTooSmall(d));
    }
    let p = phi.field().characteristic();
    if p != 0 && d as u64 % p == 0 {
        return Err(RiccatiError::BadCharacteristic(d));
    }
    Ok(())
}

/// The unique `(b, f, c)` (and `g`) making the top three coefficients of `P` vanish; `a = e = 0`.
pub fn solve_riccati_coeffs<F: Field>(
    phi: &DynPolynomial<F>,
) -> Result<RiccatiSolution<F>, RiccatiError> {
    check_degree(phi)?;
    let k = phi.field();
    if delta_phi(phi).is_zero() {
        return Err(RiccatiError::SingularSystem);
    }
    let m = coefficient_matrix(phi);
    let [b, f, c] =
        bareiss_solve(k, &m, &riccati_rhs(phi)).ok_or(RiccatiError::SingularSystem)?;
    let d = phi.degree();
    let (ad1, ad) = (phi.a(d - 1), phi.a(d));
    let g = k.add(&k.sub(&k.mul(&ad1, &c), &k.mul(&ad, &f)), &d_dt(&ad));
    Ok(RiccatiSolution {
        a: k.zero(),
        b,
        c,
        e: k.zero(),
        f,
        g,
    })
}

/// `P = phi_x(x) (b x + c) + phi^{(t)}(x) - f phi(x) - g`, with `phi^{(t)}` the coefficientwise derivative.
pub fn p_phi<F: Field>(
    phi: &DynPolynomial<F>,
    sol: &RiccatiSolution<F>,
) -> Poly<RationalFunctions<F>> {
    let k = phi.field().clone();
    let lin = Poly::new(k.clone(), vec![sol.c.clone(), sol.b.clone()]);
    let dt = phi.as_poly().map(k.clone(), d_dt);
    let p = &(&phi.derivative_x() * &lin) + &dt;
    let p = &p - &phi.as_poly().scale(&sol.f);
    &p - &Poly::constant(k, sol.g.clone())
}

/// Coefficients of `x^d`, `x^(d-1)`, `x^(d-2)` in `P`.
pub fn p_phi_top_coefficients<F: Field>(
    phi: &DynPolynomial<F>,
    sol: &RiccatiSolution<F>,
) -> [RatFunc<F>; 3] {
    let k = phi.field();
    let d = phi.degree();
    let m = coefficient_matrix(phi);
    let x = [&sol.b, &sol.f, &sol.c];
    let mut out = [0, 1, 2].map(|i| d_dt(&phi.a(i)));
    for (i, o) in out.iter_mut().enumerate() {
        if i > d {
            break;
        }
        for j in 0..3 {
            *o = k.add(o, &k.mul(&m[i][j], x[j]));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    NonisotrivialCurveExists,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailedCondition {
    DegreeBelowFive,
    DegreeNotInvertible,
    DeltaVanishes,
    EpsilonVanishes,
    IrreducibilityUnknown,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsotrivialityReport<F: Field> {
    pub delta: RatFunc<F>,
    pub epsilon: RatFunc<F>,
    /// Status for `phi^3(x) - a`.
    pub irreducibility: IrreducibilityStatus<F>,
    pub verdict: Verdict,
    pub failed: Vec<FailedCondition>,
}

/// Checks `delta != 0`, `epsilon != 0` and tries to certify `phi^3(x) - a` irreducible.
///
/// A positive verdict means one of the curves `y^2 = phi^n(x) - a` (n = 1, 2, 3) is non-isotrivial;
/// the report does not say which.
pub fn dyniso_preconditions<F: BaseField>(
    phi: &DynPolynomial<F>,
    a: &RatFunc<F>,
    cap: DegreeCap,
) -> IsotrivialityReport<F> {
    let d = phi.degree();
    let mut failed = Vec::new();
    if d < 5 {
        failed.push(FailedCondition::DegreeBelowFive);
    }
    let p = phi.field().characteristic();
    if p != 0 && d as u64 % p == 0 {
        failed.push(FailedCondition::DegreeNotInvertible);
    }
    let (delta, epsilon) = if d >= 3 {
        (delta_phi(phi), epsilon_phi(phi))
    } else {
        (phi.field().zero(), phi.field().zero())
    };
    if delta.is_zero() {
        failed.push(FailedCondition::DeltaVanishes);
    }
    if epsilon.is_zero() {
        failed.push(FailedCondition::EpsilonVanishes);
    }
    let irreducibility =
        certify_iterate(phi, 3, a, &[], cap).unwrap_or(IrreducibilityStatus::Unknown);
    if !irreducibility.is_certified() {
        failed.push(FailedCondition::IrreducibilityUnknown);
    }
    let verdict = if failed.is_empty() {
        Verdict::NonisotrivialCurveExists
    } else {
        Verdict::Inconclusive
    };
    IsotrivialityReport {
        delta,
        epsilon,
        irreducibility,
        verdict,
        failed,
    }
}
