//! Deterministic inputs shared by the benches in `benches/`.

use dynprim::algebra::{Field, ModPoly, Poly, PrimeField, RatPoly, Rationals};
use dynprim::dynsys::{DynPolynomial, RationalFunctions};

// Small linear congruential stream; benches only need reproducible, spread-out coefficients.
fn stream(seed: u64) -> impl Iterator<Item = u64> {
    let mut s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    std::iter::repeat_with(move || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        s >> 33
    })
}

/// Monic polynomial of degree `deg` over `F_p`.
pub fn fp_poly(p: u64, deg: usize, seed: u64) -> ModPoly {
    let mut cs: Vec<i64> = stream(seed).take(deg).map(|v| (v % p) as i64).collect();
    cs.push(1);
    Poly::from_i64s(PrimeField::new(p).unwrap(), &cs)
}

/// Degree `deg` over Z with coefficients in `[-h, h]` and leading coefficient 1.
pub fn zt_poly(deg: usize, h: i64, seed: u64) -> RatPoly {
    let span = (2 * h + 1) as u64;
    let mut cs: Vec<i64> = stream(seed).take(deg).map(|v| (v % span) as i64 - h).collect();
    cs.push(1);
    Poly::from_i64s(Rationals, &cs)
}

/// Degree `d` map over `Q(t)` with quadratic coefficients.
pub fn q_map(d: usize, seed: u64) -> DynPolynomial<Rationals> {
    let k = RationalFunctions::new(Rationals);
    let mut it = stream(seed).map(|v| (v % 11) as i64 - 5);
    let mut cs = vec![k.one()];
    for _ in 0..d {
        let c: Vec<i64> = it.by_ref().take(3).collect();
        cs.push(k.from_base_i64s(&c));
    }
    DynPolynomial::new(Rationals, cs).unwrap()
}
