//! Factorization over F_p: square-free, distinct-degree, then equal-degree splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Field, ModPoly, Poly, PrimeField};

/// `unit * prod factor^multiplicity`, factors monic irreducible and pairwise coprime.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<F: Field> {
    pub unit: F::Elem,
    pub factors: Vec<(Poly<F>, usize)>,
}

impl<F: Field> Factorization<F> {
    pub fn reconstruct(&self, field: &F) -> Poly<F> {
        self.factors
            .iter()
            .fold(Poly::constant(field.clone(), self.unit.clone()), |acc, (g, e)| {
                &acc * &g.pow(*e as u64)
            })
    }

    pub fn multiplicity(&self, g: &Poly<F>) -> usize {
        self.factors
            .iter()
            .find(|(h, _)| h == g)
            .map_or(0, |(_, e)| *e)
    }
}

/// Complete factorization of a nonzero `f` over F_p.
///
/// Deterministic for a given `(f, seed)`: the random stream is keyed by both.
/// Factors are sorted by degree, then coefficients.
pub fn factor_fp(f: &ModPoly, seed: u64) -> Factorization<PrimeField> {
    let field = *f.field();
    let unit = *f.lc().expect("factor_fp of the zero polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fingerprint(f));
    let mut factors = Vec::new();
    let sqf = f.squarefree_decomposition();
    for (g, e) in &sqf.parts {
        for (deg, block) in distinct_degree(g) {
            let mut out = Vec::new();
            equal_degree(&block, deg, &mut rng, &mut out);
            factors.extend(out.into_iter().map(|h| (h, *e)));
        }
    }
    factors.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
    });
    let _ = field;
    Factorization { unit, factors }
}

/// Rabin-style irreducibility test: square-free with no factor of degree `<= deg/2`.
pub fn is_irreducible_fp(f: &ModPoly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    if !f.is_squarefree() {
        return false;
    }
    let f = f.monic();
    let p = f.field().modulus() as u128;
    let t = Poly::var(*f.field());
    let mut h = t.clone();
    for _ in 1..=n / 2 {
        h = h.pow_mod(p, &f);
        if !(&h - &t).gcd(&f).is_one() {
            return false;
        }
    }
    true
}

fn fingerprint(f: &ModPoly) -> u64 {
    // FNV-1a over modulus and coefficients.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut mix = |v: u64| {
        for b in v.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    mix(f.field().modulus());
    for &c in f.coeffs() {
        mix(c);
    }
    h
}

// Splits a monic square-free polynomial into products of irreducibles of equal degree.
fn distinct_degree(f: &ModPoly) -> Vec<(usize, ModPoly)> {
    let field = *f.field();
    let p = field.modulus() as u128;
    let t = Poly::var(field);
    let mut rest = f.monic();
    let mut h = t.clone();
    let mut out = Vec::new();
    let mut i = 0;
    while rest.degree().unwrap_or(0) >= 2 * (i + 1) {
        i += 1;
        h = h.pow_mod(p, &rest);
        let g = (&h - &t).gcd(&rest);
        if !g.is_one() {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((i, g));
        }
    }
    if let Some(d) = rest.degree() {
        if d > 0 {
            out.push((d, rest));
        }
    }
    out
}

fn equal_degree(f: &ModPoly, deg: usize, rng: &mut ChaCha8Rng, out: &mut Vec<ModPoly>) {
    let n = f.degree().unwrap();
    if n == deg {
        out.push(f.monic());
        return;
    }
    let field = *f.field();
    let p = field.modulus();
    loop {
        let a = Poly::new(field, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(deg-1)).
            let mut acc = a.clone();
            let mut pw = a.clone();
            for _ in 1..deg {
                pw = pw.mul_mod(&pw, f);
                acc = &acc + &pw;
            }
            acc
        } else {
            // a^((p^deg - 1)/2) = (a * a^p * ... * a^(p^(deg-1)))^((p-1)/2).
            let mut norm = a.clone();
            let mut frob = a.clone();
            for _ in 1..deg {
                frob = frob.pow_mod(p as u128, f);
                norm = norm.mul_mod(&frob, f);
            }
            &norm.pow_mod(((p - 1) / 2) as u128, f) - &Poly::one(field)
        };
        let g = b.gcd(f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.exact_div(&g).expect("gcd divides");
            equal_degree(&g, deg, rng, out);
            equal_degree(&h, deg, rng, out);
            return;
        }
    }
}
