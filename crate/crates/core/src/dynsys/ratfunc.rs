//! The rational function field `K = k(t)`.

use std::fmt;

use crate::algebra::{subresultant, Field, Poly};

/// A reduced quotient `num / den` with `den` monic.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Reduces `num / den`. Panics on a zero denominator.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            let f = den.field().clone();
            return Self::from_poly(Poly::zero(f));
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        normalize(&mut num, &mut den);
        Self { num, den }
    }

    /// Trusts the caller that `num`, `den` are coprime and `den` is monic.
    pub(crate) fn new_unchecked(num: Poly<F>, den: Poly<F>) -> Self {
        debug_assert!(den.is_monic());
        if num.is_zero() {
            return Self::from_poly(num);
        }
        Self { num, den }
    }

    pub fn from_poly(num: Poly<F>) -> Self {
        let den = Poly::one(num.field().clone());
        Self { num, den }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::from_poly(Poly::constant(field, c))
    }

    pub fn t(field: F) -> Self {
        Self::from_poly(Poly::var(field))
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// True for elements of the constant field `k`.
    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    /// Value at `t = c`, `None` when `c` is a pole.
    pub fn eval(&self, c: &F::Elem) -> Option<F::Elem> {
        let f = self.num.field();
        f.div(&self.num.eval(c), &self.den.eval(c))
    }
}

// Assumes num, den coprime; makes den monic.
fn normalize<F: Field>(num: &mut Poly<F>, den: &mut Poly<F>) {
    if !den.is_monic() {
        let f = den.field().clone();
        let inv = f.inv(den.lc().unwrap()).unwrap();
        *num = num.scale(&inv);
        *den = den.scale(&inv);
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Derivative with respect to `t` (quotient rule). In characteristic `p`,
/// `(t^p)' = 0`.
pub fn d_dt<F: Field>(beta: &RatFunc<F>) -> RatFunc<F> {
    let n = beta.num();
    let d = beta.den();
    if d.is_one() {
        return RatFunc::from_poly(n.derivative());
    }
    let top = &(&n.derivative() * d) - &(n * &d.derivative());
    RatFunc::new(top, d * d)
}

/// Weil height `max(deg num, deg den)`; `h(0) = 0`.
pub fn weil_height<F: Field>(beta: &RatFunc<F>) -> u64 {
    if beta.is_zero() {
        return 0;
    }
    beta.num().deg().max(beta.den().deg()) as u64
}

/// The field `k(t)` over a base field `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalFunctions<F> {
    base: F,
}

impl<F: Field> RationalFunctions<F> {
    pub fn new(base: F) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn t(&self) -> RatFunc<F> {
        RatFunc::t(self.base.clone())
    }

    pub fn from_poly(&self, p: Poly<F>) -> RatFunc<F> {
        RatFunc::from_poly(p)
    }

    pub fn constant(&self, c: F::Elem) -> RatFunc<F> {
        RatFunc::constant(self.base.clone(), c)
    }

    pub fn from_base_i64s(&self, coeffs: &[i64]) -> RatFunc<F> {
        RatFunc::from_poly(Poly::from_i64s(self.base.clone(), coeffs))
    }

    pub fn quotient(&self, num: Poly<F>, den: Poly<F>) -> Option<RatFunc<F>> {
        (!den.is_zero()).then(|| RatFunc::new(num, den))
    }
}

impl<F: Field> Field for RationalFunctions<F> {
    type Elem = RatFunc<F>;

    fn zero(&self) -> RatFunc<F> {
        RatFunc::from_poly(Poly::zero(self.base.clone()))
    }

    fn one(&self) -> RatFunc<F> {
        RatFunc::from_poly(Poly::one(self.base.clone()))
    }

    fn is_zero(&self, a: &RatFunc<F>) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> RatFunc<F> {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.den.is_one() && b.den.is_one() {
            return RatFunc::from_poly(&a.num + &b.num);
        }
        // Henrici: only gcd(n, g) can cancel.
        let g = a.den.gcd(&b.den);
        if g.is_one() {
            let num = &(&a.num * &b.den) + &(&b.num * &a.den);
            return RatFunc {
                num,
                den: &a.den * &b.den,
            };
        }
        let ad = a.den.exact_div(&g).unwrap();
        let bd = b.den.exact_div(&g).unwrap();
        let n = &(&a.num * &bd) + &(&b.num * &ad);
        if n.is_zero() {
            return self.zero();
        }
        let h = n.gcd(&g);
        let (num, bden) = if h.is_one() {
            (n, b.den.clone())
        } else {
            (n.exact_div(&h).unwrap(), b.den.exact_div(&h).unwrap())
        };
        let mut num = num;
        let mut den = &ad * &bden;
        normalize(&mut num, &mut den);
        RatFunc { num, den }
    }

    fn sub(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> RatFunc<F> {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &RatFunc<F>) -> RatFunc<F> {
        RatFunc {
            num: -&a.num,
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> RatFunc<F> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if a.den.is_one() && b.den.is_one() {
            return RatFunc::from_poly(&a.num * &b.num);
        }
        let g1 = a.num.gcd(&b.den);
        let g2 = b.num.gcd(&a.den);
        let div = |x: &Poly<F>, g: &Poly<F>| {
            if g.is_one() {
                x.clone()
            } else {
                x.exact_div(g).unwrap()
            }
        };
        let mut num = &div(&a.num, &g1) * &div(&b.num, &g2);
        let mut den = &div(&a.den, &g2) * &div(&b.den, &g1);
        normalize(&mut num, &mut den);
        RatFunc { num, den }
    }

    fn inv(&self, a: &RatFunc<F>) -> Option<RatFunc<F>> {
        if a.is_zero() {
            return None;
        }
        let mut num = a.den.clone();
        let mut den = a.num.clone();
        normalize(&mut num, &mut den);
        Some(RatFunc { num, den })
    }

    fn from_i64(&self, n: i64) -> RatFunc<F> {
        self.constant(self.base.from_i64(n))
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn pth_root(&self, a: &RatFunc<F>) -> Option<RatFunc<F>> {
        Some(RatFunc {
            num: a.num.pth_root()?,
            den: a.den.pth_root()?,
        })
    }

    fn sqrt(&self, a: &RatFunc<F>) -> Option<RatFunc<F>> {
        if a.is_zero() {
            return Some(a.clone());
        }
        let lc = a.num.lc().unwrap();
        let root_lc = self.base.sqrt(lc)?;
        let inv = self.base.inv(lc).unwrap();
        let n = poly_sqrt_monic(&a.num.scale(&inv))?.scale(&root_lc);
        let d = poly_sqrt_monic(&a.den)?;
        Some(RatFunc::new(n, d))
    }

    fn fmt_elem(&self, a: &RatFunc<F>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{a}")
    }

    fn is_compound(&self, a: &RatFunc<F>) -> bool {
        if !a.den.is_one() {
            return true;
        }
        let terms = a.num.coeffs().iter().filter(|c| !self.base.is_zero(c)).count();
        terms > 1 || self.is_negative(a)
    }

    fn is_negative(&self, a: &RatFunc<F>) -> bool {
        let terms = a.num.coeffs().iter().filter(|c| !self.base.is_zero(c)).count();
        a.den.is_one() && terms == 1 && self.base.is_negative(a.num.lc().unwrap())
    }

    fn poly_resultant(a: &Poly<Self>, b: &Poly<Self>) -> RatFunc<F> {
        let k = a.field().clone();
        let (la, ia) = clear_x_denominators(a);
        let (lb, ib) = clear_x_denominators(b);
        let r = subresultant(&ia, &ib, &k.base);
        // Res(A/la, B/lb) = la^(-deg B) lb^(-deg A) Res(A, B)
        let scale = &la.pow(b.degree().unwrap() as u64) * &lb.pow(a.degree().unwrap() as u64);
        RatFunc::new(r, scale)
    }
}

/// Common denominator `L` of the coefficients and the coefficients of `L * f` in `k[t]`.
pub fn clear_x_denominators<F: Field>(
    f: &Poly<RationalFunctions<F>>,
) -> (Poly<F>, Vec<Poly<F>>) {
    let base = f.field().base.clone();
    let mut l = Poly::one(base);
    for c in f.coeffs() {
        if !c.den.is_one() {
            let g = l.gcd(&c.den);
            l = &l * &c.den.exact_div(&g).unwrap();
        }
    }
    let ints = f
        .coeffs()
        .iter()
        .map(|c| {
            if c.den.is_one() {
                &c.num * &l
            } else {
                &c.num * &l.exact_div(&c.den).unwrap()
            }
        })
        .collect();
    (l, ints)
}

/// Square root of a monic polynomial by matching coefficients from the top, if exact.
pub fn poly_sqrt_monic<F: Field>(f: &Poly<F>) -> Option<Poly<F>> {
    let field = f.field().clone();
    let n = f.degree()?;
    if n % 2 == 1 {
        return None;
    }
    if n == 0 {
        return Some(Poly::one(field));
    }
    if field.characteristic() == 2 {
        let r = f.pth_root()?;
        return (&r * &r == *f).then_some(r);
    }
    let m = n / 2;
    let two_inv = field.inv(&field.from_i64(2))?;
    // g = x^m + g_{m-1} x^{m-1} + ...; stored top-down in `g`.
    let mut g = vec![field.zero(); m + 1];
    g[m] = field.one();
    for k in 1..=m {
        // coefficient of x^(n-k) in g^2 = 2 g_{m-k} + sum_{i+j=n-k, i,j>m-k} g_i g_j
        let target = f.coeff(n - k);
        let mut s = field.zero();
        for i in (m - k + 1)..=m {
            let j = n - k - i;
            if j > m - k && j <= m {
                s = field.add(&s, &field.mul(&g[i], &g[j]));
            }
        }
        g[m - k] = field.mul(&field.sub(&target, &s), &two_inv);
    }
    let r = Poly::new(field, g);
    (&r * &r == *f).then_some(r)
}
