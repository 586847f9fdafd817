//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;

/// Dense polynomial, coefficients stored from degree 0 upward.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and the last stored coefficient is the leading one.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

/// Output of [`Poly::squarefree_decomposition`].
#[derive(Clone, PartialEq, Debug)]
pub struct SquarefreeDecomposition<F: Field> {
    pub unit: F::Elem,
    /// `(g_i, i)` with `g_i` monic, square-free and pairwise coprime, sorted by `i`.
    pub parts: Vec<(Poly<F>, usize)>,
    /// A monic factor that is a `p`-th power in `K[x]` with no `p`-th root in the
    /// coefficient field (only possible over imperfect fields such as `F_p(t)`).
    pub inseparable: Option<(Poly<F>, usize)>,
}

impl<F: Field> SquarefreeDecomposition<F> {
    pub fn reconstruct(&self, field: &F) -> Poly<F> {
        let mut acc = Poly::constant(field.clone(), self.unit.clone());
        for (g, e) in self.parts.iter().chain(self.inseparable.iter()) {
            acc = &acc * &g.pow(*e as u64);
        }
        acc
    }
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Self::new(field, vec![one])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(field: F, c: F::Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Self::new(field, coeffs)
    }

    /// The polynomial variable itself.
    pub fn var(field: F) -> Self {
        let one = field.one();
        Self::monomial(field, one, 1)
    }

    pub fn from_i64s(field: F, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&n| field.from_i64(n)).collect();
        Self::new(field, c)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn lc(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Number of factors of the variable dividing the polynomial.
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs
            .iter()
            .take_while(|c| self.field.is_zero(c))
            .count()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| self.field.is_one(c))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field.clone());
        }
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Self::new(self.field.clone(), coeffs)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.field.clone(), coeffs)
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Self::new(f.clone(), coeffs)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self(inner)`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero(self.field.clone());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(self.field.clone(), c.clone());
        }
        acc
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = &self.field;
        let dlc = divisor.lc().expect("division by the zero polynomial");
        let dinv = f.inv(dlc).expect("nonzero leading coefficient");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(f.clone()), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dd], &dinv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, dc));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(f.clone(), quot), Self::new(f.clone(), rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact quotient, `None` when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        (self * other).rem(modulus)
    }

    pub fn pow_mod(&self, mut e: u128, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::one(self.field.clone()).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, modulus);
            }
        }
        acc
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        F::poly_gcd(self, other)
    }

    /// Plain Euclidean gcd over the field.
    pub fn euclid_gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `g = s*self + t*other` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f.clone()), Self::zero(f.clone()));
        let (mut t0, mut t1) = (Self::zero(f.clone()), Self::one(f.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = f.inv(lc).expect("nonzero");
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Inverse modulo `modulus`, when `self` is coprime to it.
    pub fn inverse_mod(&self, modulus: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(modulus).ext_gcd(modulus);
        g.is_one().then(|| s.rem(modulus))
    }

    /// True when `gcd(self, self')` is constant. The zero polynomial is not square-free.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.is_constant() {
            return true;
        }
        let dp = self.derivative();
        if dp.is_zero() {
            return false;
        }
        self.gcd(&dp).is_one()
    }

    /// Replaces `t^(k p)` by `t^k` and takes `p`-th roots of coefficients.
    /// `None` if some exponent is not a multiple of `p` or a coefficient has no root.
    pub fn pth_root(&self) -> Option<Self> {
        let f = &self.field;
        let p = f.characteristic() as usize;
        if p == 0 {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len() / p + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                out.push(f.pth_root(c)?);
            } else if !f.is_zero(c) {
                return None;
            }
        }
        Some(Self::new(f.clone(), out))
    }

    /// Square-free decomposition `f = unit * prod g_i^i`.
    ///
    /// In characteristic `p`, factors whose multiplicity is divisible by `p`
    /// survive the derivative; they are collected, a `p`-th root is taken and the
    /// routine recurses with multiplicities scaled by `p`.
    pub fn squarefree_decomposition(&self) -> SquarefreeDecomposition<F> {
        let field = self.field.clone();
        let unit = self.lc().cloned().expect("square-free decomposition of zero");
        let monic = self.monic();
        let mut parts = Vec::new();
        let mut inseparable = None;
        sqf_rec(&monic, 1, &mut parts, &mut inseparable);
        parts.sort_by_key(|(_, e)| *e);
        let _ = field;
        SquarefreeDecomposition {
            unit,
            parts,
            inseparable,
        }
    }

    /// Resultant in the Sylvester convention with `self` rows first:
    /// `Res(f, g) = lc(f)^deg(g) * prod_{f(a)=0} g(a)`. Zero if either input is zero.
    pub fn resultant(&self, other: &Self) -> F::Elem {
        if self.is_zero() || other.is_zero() {
            return self.field.zero();
        }
        F::poly_resultant(self, other)
    }

    /// Euclidean resultant over the field.
    pub fn euclid_resultant(&self, other: &Self) -> F::Elem {
        let f = self.field.clone();
        if self.is_zero() || other.is_zero() {
            return f.zero();
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = f.one();
        loop {
            let m = a.degree().unwrap();
            let n = match b.degree() {
                None => return f.zero(),
                Some(n) => n,
            };
            if n == 0 {
                // Res(a, c) = c^deg(a)
                return f.mul(&acc, &f.pow(b.lc().unwrap(), m as u64));
            }
            if m == 0 {
                return f.mul(&acc, &f.pow(a.lc().unwrap(), n as u64));
            }
            // Res(a, b) = (-1)^{mn} Res(b, a) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r)
            let r = a.rem(&b);
            if r.is_zero() {
                return f.zero();
            }
            if (m * n) % 2 == 1 {
                acc = f.neg(&acc);
            }
            let dr = r.degree().unwrap();
            acc = f.mul(&acc, &f.pow(b.lc().unwrap(), (m - dr) as u64));
            a = b;
            b = r;
        }
    }

    /// `(-1)^{d(d-1)/2} Res(f, f') / lc(f)` with `f'` taken at formal degree `d - 1`.
    pub fn discriminant(&self) -> Result<F::Elem, super::AlgebraError> {
        let f = &self.field;
        let d = match self.degree() {
            None | Some(0) => return Err(super::AlgebraError::DegreeTooSmall),
            Some(d) => d,
        };
        if d == 1 {
            return Ok(f.one());
        }
        let dp = self.derivative();
        let dpd = match dp.degree() {
            None => return Err(super::AlgebraError::InseparableInput),
            Some(k) => k,
        };
        let lc = self.lc().unwrap();
        let mut res = self.resultant(&dp);
        // Res at formal degree d-1 picks up lc(f)^(d-1-deg f').
        res = f.mul(&res, &f.pow(lc, (d - 1 - dpd) as u64));
        let mut disc = f.div(&res, lc).unwrap();
        if (d * (d - 1) / 2) % 2 == 1 {
            disc = f.neg(&disc);
        }
        Ok(disc)
    }

    /// Maps every coefficient through `g` into another field.
    pub fn map<G: Field>(&self, target: G, g: impl Fn(&F::Elem) -> G::Elem) -> Poly<G> {
        let coeffs = self.coeffs.iter().map(g).collect();
        Poly::new(target, coeffs)
    }
}

fn sqf_rec<F: Field>(
    f: &Poly<F>,
    scale: usize,
    parts: &mut Vec<(Poly<F>, usize)>,
    inseparable: &mut Option<(Poly<F>, usize)>,
) {
    if f.is_constant() {
        return;
    }
    let dp = f.derivative();
    let mut c = f.gcd(&dp);
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).expect("gcd divides");
        if !z.is_constant() {
            parts.push((z.monic(), i * scale));
        }
        i += 1;
        c = c.exact_div(&y).expect("gcd divides");
        w = y;
    }
    if !c.is_constant() {
        let p = f.field().characteristic() as usize;
        match c.pth_root() {
            Some(root) => sqf_rec(&root.monic(), scale * p, parts, inseparable),
            None => *inseparable = Some((c.monic(), scale)),
        }
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    /// Canonical string `c_k*t^k + ... + c_0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with_var(f, "t")
    }
}

impl<F: Field> Poly<F> {
    pub fn fmt_with_var(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        let field = &self.field;
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if field.is_zero(c) {
                continue;
            }
            let neg = field.is_negative(c);
            let mag = if neg { field.neg(c) } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit = field.is_one(&mag);
            if k == 0 || !unit {
                if field.is_compound(&mag) {
                    write!(f, "(")?;
                    field.fmt_elem(&mag, f)?;
                    write!(f, ")")?;
                } else {
                    field.fmt_elem(&mag, f)?;
                }
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "{var}")?,
                _ => write!(f, "{var}^{k}")?,
            }
        }
        Ok(())
    }

    /// Display adaptor printing the variable as `var`.
    pub fn display_var<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        struct D<'a, F: Field>(&'a Poly<F>, &'a str);
        impl<F: Field> fmt::Display for D<'_, F> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with_var(f, self.1)
            }
        }
        D(self, var)
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            *c = f.add(c, s);
        }
        Poly::new(f.clone(), coeffs)
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => f.sub(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => f.neg(b),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(f.clone(), coeffs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|c| f.neg(c)).collect())
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f.clone());
        }
        Poly::new(f.clone(), f.poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

impl<F: Field> Add for Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: Poly<F>) -> Poly<F> {
        &self + &rhs
    }
}

impl<F: Field> Sub for Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: Poly<F>) -> Poly<F> {
        &self - &rhs
    }
}

impl<F: Field> Mul for Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Poly<F>) -> Poly<F> {
        &self * &rhs
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}
