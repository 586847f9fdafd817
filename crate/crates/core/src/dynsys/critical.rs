//! Critical points of `phi` lying in `K`.

use super::map::DynPolynomial;
use super::ratfunc::{clear_x_denominators, RatFunc, RationalFunctions};
use super::DynError;
use crate::algebra::{BaseField, Field, Poly};

// Bound on candidate roots tried by the divisor search.
const CANDIDATE_CAP: usize = 20_000;

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPoints<F: Field> {
    /// `(gamma, e(gamma, phi))` with `e` the multiplicity of `gamma` as a root of `phi'`.
    pub points: Vec<(RatFunc<F>, usize)>,
    /// Degree of the part of `phi'` whose roots were not found in `K` (0 when complete).
    pub non_rational_degree: usize,
}

impl<F: Field> CriticalPoints<F> {
    pub fn is_complete(&self) -> bool {
        self.non_rational_degree == 0
    }

    pub fn multiplicity(&self, gamma: &RatFunc<F>) -> usize {
        self.points
            .iter()
            .find(|(g, _)| g == gamma)
            .map_or(0, |(_, e)| *e)
    }
}

/// Roots of `phi'` in `K`, with multiplicities from the square-free decomposition of `phi'`.
pub fn critical_points<F: BaseField>(phi: &DynPolynomial<F>) -> Result<CriticalPoints<F>, DynError> {
    let dphi = phi.derivative_x();
    if dphi.is_zero() {
        return Err(DynError::InseparableDerivative);
    }
    let total = dphi.degree().unwrap();
    let mut points = Vec::new();
    let mut found = 0;
    if total > 0 {
        let sqf = dphi.squarefree_decomposition();
        for (g, e) in &sqf.parts {
            for root in roots_in_k(g) {
                found += e;
                points.push((root, *e));
            }
        }
    }
    Ok(CriticalPoints {
        points,
        non_rational_degree: total - found,
    })
}

// Roots in K of a square-free monic g in K[x].
fn roots_in_k<F: BaseField>(g: &Poly<RationalFunctions<F>>) -> Vec<RatFunc<F>> {
    let k = g.field().clone();
    let mut g = g.clone();
    let mut out = Vec::new();
    if g.trailing_zeros() > 0 {
        out.push(k.zero());
        g = Poly::new(k.clone(), g.coeffs()[1..].to_vec());
    }
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let r = k.neg(&k.div(&g.coeff(0), &g.coeff(1)).unwrap());
            out.push(r);
        }
        Some(2) if k.characteristic() != 2 => {
            let (a, b, c) = (g.coeff(2), g.coeff(1), g.coeff(0));
            let disc = k.sub(&k.mul(&b, &b), &k.mul(&k.from_i64(4), &k.mul(&a, &c)));
            if let Some(s) = k.sqrt(&disc) {
                let two_a = k.mul(&k.from_i64(2), &a);
                for sg in [s.clone(), k.neg(&s)] {
                    let r = k.div(&k.sub(&sg, &b), &two_a).unwrap();
                    if !out.contains(&r) {
                        out.push(r);
                    }
                }
            }
        }
        Some(_) => out.extend(search_roots(&g)),
    }
    out
}

// Rational root theorem over k[t]: a root N/M has N | G(0) and M | lc(G).
fn search_roots<F: BaseField>(g: &Poly<RationalFunctions<F>>) -> Vec<RatFunc<F>> {
    let k = g.field().clone();
    let base = *k.base();
    let (_, ints) = clear_x_denominators(g);
    let units: Vec<F::Elem> = if base.characteristic() == 0 {
        vec![base.one(), base.neg(&base.one())]
    } else if base.characteristic() <= 101 {
        base.sample_points(101)
            .into_iter()
            .filter(|c| !base.is_zero(c))
            .collect()
    } else {
        return Vec::new();
    };
    let nums = monic_divisors(&base, &ints[0]);
    let dens = monic_divisors(&base, ints.last().unwrap());
    let (Some(nums), Some(dens)) = (nums, dens) else {
        return Vec::new();
    };
    if nums.len() * dens.len() * units.len() > CANDIDATE_CAP {
        return Vec::new();
    }
    let mut out = Vec::new();
    for n in &nums {
        for m in &dens {
            if !n.gcd(m).is_one() {
                continue;
            }
            for u in &units {
                let r = RatFunc::new(n.scale(u), m.clone());
                if !out.contains(&r) && k.is_zero(&g.eval(&r)) {
                    out.push(r);
                }
            }
        }
    }
    out
}

// All monic divisors, from the prime factors the base field can find; `None` if incomplete.
fn monic_divisors<F: BaseField>(base: &F, f: &Poly<F>) -> Option<Vec<Poly<F>>> {
    let mut divs = vec![Poly::one(*base)];
    let mut rest = f.monic();
    for q in base.known_prime_factors(f) {
        let mut e = 0;
        while let Some(quo) = rest.exact_div(&q) {
            if rest.is_constant() {
                break;
            }
            rest = quo;
            e += 1;
        }
        let mut next = Vec::with_capacity(divs.len() * (e + 1));
        for d in &divs {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..e {
                cur = &cur * &q;
                next.push(cur.clone());
            }
        }
        divs = next;
        if divs.len() > CANDIDATE_CAP {
            return None;
        }
    }
    rest.is_constant().then_some(divs)
}
