//! Primitive prime divisors of `phi^n(b) - a` over `F_p(t)` and the Zsigmondy set.

use thiserror::Error;

use crate::algebra::{factor_fp, is_irreducible_fp, Field, ModPoly, Poly, PrimeField};
use crate::dynsys::{wandering_certificate, DegreeCap, DynError, DynPolynomial, RatFunc, WanderingVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZsigmondyError {
    #[error("phi, a and b must have coefficients in F_p[t]")]
    NonIntegralModel,
    #[error("base point is preperiodic (preperiod {preperiod}, period {period})")]
    PreperiodicBase { preperiod: usize, period: usize },
    #[error("no wandering certificate for the base point within the window")]
    WanderingUnproven,
    #[error("zero input")]
    ZeroInput,
    #[error(transparent)]
    Dyn(#[from] DynError),
}

/// A place of `k(t)`: a monic irreducible polynomial, or the place at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum PrimeDivisor<F: Field> {
    Finite(Poly<F>),
    Infinite,
}

impl PrimeDivisor<PrimeField> {
    /// Finite place of a monic irreducible polynomial; `None` otherwise.
    pub fn finite(q: ModPoly) -> Option<Self> {
        (q.is_monic() && is_irreducible_fp(&q)).then_some(Self::Finite(q))
    }
}

impl<F: Field> PrimeDivisor<F> {
    /// Skips the irreducibility check; for bases without a factoring routine.
    pub fn finite_unchecked(q: Poly<F>) -> Self {
        Self::Finite(q.monic())
    }

    pub fn degree(&self) -> usize {
        match self {
            Self::Finite(q) => q.degree().unwrap_or(0),
            Self::Infinite => 1,
        }
    }
}

fn poly_val<F: Field>(f: &Poly<F>, q: &Poly<F>) -> i64 {
    let mut f = f.clone();
    let mut v = 0;
    while let Some(next) = f.exact_div(q) {
        f = next;
        v += 1;
    }
    v
}

/// `v(beta)`; at infinity this is `deg den - deg num`.
pub fn valuation<F: Field>(beta: &RatFunc<F>, v: &PrimeDivisor<F>) -> Result<i64, ZsigmondyError> {
    if beta.is_zero() {
        return Err(ZsigmondyError::ZeroInput);
    }
    Ok(match v {
        PrimeDivisor::Finite(q) => poly_val(beta.num(), q) - poly_val(beta.den(), q),
        PrimeDivisor::Infinite => beta.den().deg() as i64 - beta.num().deg() as i64,
    })
}

/// Support of `beta` with valuations, the place at infinity last when nonzero.
pub fn support(beta: &RatFunc<PrimeField>, seed: u64) -> Result<Vec<(PrimeDivisor<PrimeField>, i64)>, ZsigmondyError> {
    if beta.is_zero() {
        return Err(ZsigmondyError::ZeroInput);
    }
    let mut out = Vec::new();
    for (sign, part) in [(1, beta.num()), (-1, beta.den())] {
        if part.is_constant() {
            continue;
        }
        for (q, e) in factor_fp(part, seed).factors {
            out.push((PrimeDivisor::Finite(q), sign * e as i64));
        }
    }
    let inf = valuation(beta, &PrimeDivisor::Infinite)?;
    if inf != 0 {
        out.push((PrimeDivisor::Infinite, inf));
    }
    Ok(out)
}

/// `sum_v v(beta) deg(v) == 0`.
pub fn product_formula_holds(beta: &RatFunc<PrimeField>, seed: u64) -> Result<bool, ZsigmondyError> {
    let s: i64 = support(beta, seed)?
        .iter()
        .map(|(v, e)| e * v.degree() as i64)
        .sum();
    Ok(s == 0)
}

/// `c = u * d * y^2` with `u` a unit, `d` square-free monic, `y` monic.
pub fn squarefree_part(c: &ModPoly) -> Result<(u64, ModPoly, ModPoly), ZsigmondyError> {
    let Some(&u) = c.lc() else {
        return Err(ZsigmondyError::ZeroInput);
    };
    let field = *c.field();
    let sqf = c.squarefree_decomposition();
    let mut d = Poly::one(field);
    let mut y = Poly::one(field);
    for (g, e) in &sqf.parts {
        if e % 2 == 1 {
            d = &d * g;
        }
        y = &y * &g.pow(*e as u64 / 2);
    }
    Ok((u, d, y))
}

/// First index at which each prime appears, and the factored support of every term.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SupportTable {
    first: Vec<(ModPoly, usize)>,
    /// `levels[n - 1]` lists `(q, v_q(c_n))`.
    pub levels: Vec<Vec<(ModPoly, usize)>>,
}

impl SupportTable {
    pub fn first_index(&self, q: &ModPoly) -> Option<usize> {
        self.first.iter().find(|(p, _)| p == q).map(|(_, n)| *n)
    }

    pub fn primes(&self) -> impl Iterator<Item = (&ModPoly, usize)> {
        self.first.iter().map(|(q, n)| (q, *n))
    }

    /// Records the factorization of the next term; returns its primitive primes with valuations.
    pub fn push(&mut self, factors: Vec<(ModPoly, usize)>) -> Vec<(ModPoly, usize)> {
        let n = self.levels.len() + 1;
        let mut primitive = Vec::new();
        for (q, e) in &factors {
            if self.first_index(q).is_none() {
                self.first.push((q.clone(), n));
                primitive.push((q.clone(), *e));
            }
        }
        self.levels.push(factors);
        primitive
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanLevel {
    pub n: usize,
    /// `c_n = phi^n(b) - a`.
    pub value: ModPoly,
    pub unit: u64,
    pub factors: Vec<(ModPoly, usize)>,
    pub primitive: Vec<ModPoly>,
    /// Primitive primes dividing `c_n` to odd order.
    pub odd_primitive: Vec<ModPoly>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZsigmondyReport {
    pub n_max: usize,
    pub levels: Vec<ScanLevel>,
    /// `Z(phi, a, b) ∩ [1, n_max]`.
    pub zsigmondy_set: Vec<usize>,
    pub table: SupportTable,
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub cap: DegreeCap,
    /// Skip the wandering certificate (the caller vouches for it).
    pub assume_wandering: bool,
    /// Orbit window for the wandering certificate.
    pub window: usize,
    pub seed: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            cap: DegreeCap::default(),
            assume_wandering: false,
            window: 12,
            seed: 0,
        }
    }
}

/// Scans `n = 1..=n_max`, factoring each `c_n` and recording which primes are new.
pub fn zsigmondy_scan(
    phi: &DynPolynomial<PrimeField>,
    a: &ModPoly,
    b: &ModPoly,
    n_max: usize,
    opts: ScanOptions,
) -> Result<ZsigmondyReport, ZsigmondyError> {
    let coeffs = phi.integral_coeffs().ok_or(ZsigmondyError::NonIntegralModel)?;
    let field = *phi.base();
    if a.field() != &field || b.field() != &field {
        return Err(ZsigmondyError::NonIntegralModel);
    }
    if !opts.assume_wandering {
        match wandering_certificate(phi, &RatFunc::from_poly(b.clone()), opts.window.max(2), opts.cap)? {
            WanderingVerdict::Wandering { .. } => {}
            WanderingVerdict::Preperiodic { preperiod, period } => {
                return Err(ZsigmondyError::PreperiodicBase { preperiod, period })
            }
            WanderingVerdict::Unknown => return Err(ZsigmondyError::WanderingUnproven),
        }
    }
    let d = phi.degree() as u128;
    let coeff_deg = coeffs.iter().map(|c| c.deg().max(0) as u128).max().unwrap_or(0);
    let mut table = SupportTable::default();
    let mut levels = Vec::with_capacity(n_max);
    let mut zset = Vec::new();
    let mut cur = b.clone();
    for n in 1..=n_max {
        opts.cap.check(d * cur.deg().max(0) as u128 + coeff_deg)?;
        cur = horner(&coeffs, &cur);
        let value = &cur - a;
        if value.is_zero() {
            return Err(ZsigmondyError::ZeroInput);
        }
        let fac = factor_fp(&value, opts.seed);
        let primitive = table.push(fac.factors.clone());
        if primitive.is_empty() {
            zset.push(n);
        }
        levels.push(ScanLevel {
            n,
            value,
            unit: fac.unit,
            factors: fac.factors,
            odd_primitive: primitive
                .iter()
                .filter(|(_, e)| e % 2 == 1)
                .map(|(q, _)| q.clone())
                .collect(),
            primitive: primitive.into_iter().map(|(q, _)| q).collect(),
        });
    }
    Ok(ZsigmondyReport {
        n_max,
        levels,
        zsigmondy_set: zset,
        table,
    })
}

/// Per-level primitive primes appearing to odd valuation.
pub fn odd_primitive_scan(
    phi: &DynPolynomial<PrimeField>,
    a: &ModPoly,
    b: &ModPoly,
    n_max: usize,
    opts: ScanOptions,
) -> Result<Vec<(usize, Vec<ModPoly>)>, ZsigmondyError> {
    let rep = zsigmondy_scan(phi, a, b, n_max, opts)?;
    Ok(rep.levels.into_iter().map(|l| (l.n, l.odd_primitive)).collect())
}

fn horner<F: Field>(asc: &[Poly<F>], x: &Poly<F>) -> Poly<F> {
    let mut acc = asc.last().unwrap().clone();
    for c in asc.iter().rev().skip(1) {
        acc = &(&acc * x) + c;
    }
    acc
}
