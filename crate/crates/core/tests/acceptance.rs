use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dynprim::algebra::{
    discriminant, factor_fp, is_irreducible_fp, is_squarefree_mod, Field, ModPoly, ModSquarefree, Poly, PrimeField,
    RatPoly, Rationals, SQUAREFREE_LADDER,
};
use dynprim::density::{
    density_verdicts, mod2_derivative_certificate, stability_bounds, PairVerdict, ScanConfig,
};
use dynprim::dynsys::{orbit, weil_height, DegreeCap, DynPolynomial, RatFunc, RationalFunctions};
use dynprim::galois::{
    a_n_terms, eisenstein_stability, family_phi, resultant_disc, surjectivity_certificate,
    trinomial_disc, LevelVerdict, Trinomial,
};
use dynprim::riccati::{
    coefficient_matrix, delta_phi, epsilon_phi, p_phi, riccati_rhs, solve_riccati_coeffs,
};
use dynprim::zsigmondy::{zsigmondy_scan, ScanOptions};

fn random_rf<F: Field>(k: &RationalFunctions<F>, rng: &mut ChaCha8Rng, lo: i64, hi: i64, deg: usize) -> RatFunc<F> {
    let n = rng.gen_range(0..=deg);
    let cs: Vec<i64> = (0..=n).map(|_| rng.gen_range(lo..=hi)).collect();
    k.from_base_i64s(&cs)
}

// Degree 3..=6 map with delta != 0; every other one monic.
fn random_map<F: Field>(base: F, rng: &mut ChaCha8Rng, monic: bool, lo: i64, hi: i64) -> DynPolynomial<F> {
    let k = RationalFunctions::new(base.clone());
    loop {
        let d = rng.gen_range(3..=6);
        let mut cs: Vec<_> = (0..=d).map(|_| random_rf(&k, rng, lo, hi, 2)).collect();
        if monic {
            cs[0] = k.one();
        }
        if cs[0].is_zero() {
            continue;
        }
        let phi = DynPolynomial::new(base.clone(), cs).unwrap();
        if !delta_phi(&phi).is_zero() {
            return phi;
        }
    }
}

fn riccati_identities<F: Field>(phi: &DynPolynomial<F>, monic: bool) {
    let k = phi.field();
    let d = phi.degree();
    let sol = solve_riccati_coeffs(phi).expect("delta != 0");
    let m = coefficient_matrix(phi);
    let rhs = riccati_rhs(phi);
    let x = [&sol.b, &sol.f, &sol.c];
    for i in 0..3 {
        let mut row = k.zero();
        for j in 0..3 {
            row = k.add(&row, &k.mul(&m[i][j], x[j]));
        }
        assert_eq!(row, rhs[i], "matrix residual row {i}");
    }
    let p = p_phi(phi, &sol);
    for i in 0..3 {
        assert!(p.coeff(d - i).is_zero(), "P coefficient of x^{}", d - i);
    }
    let delta = delta_phi(phi);
    let bf = k.mul(&k.sub(&sol.b, &sol.f), &delta);
    if monic {
        assert_eq!(epsilon_phi(phi), bf);
    } else {
        assert_eq!(epsilon_phi(phi), k.mul(&phi.a(0), &bf));
    }
}

fn criterion_1() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f7 = PrimeField::new(7).unwrap();
    for i in 0..100 {
        let monic = i % 2 == 0;
        riccati_identities(&random_map(f7, &mut rng, monic, 0, 6), monic);
        riccati_identities(&random_map(Rationals, &mut rng, monic, -9, 9), monic);
    }
}

fn trinomial_suite<F: Field>(base: F, rng: &mut ChaCha8Rng, lo: i64, hi: i64) {
    let k = RationalFunctions::new(base);
    for d in 2..=7usize {
        for s in 1..d {
            if num_gcd(d, s) != 1 {
                continue;
            }
            for _ in 0..50 {
                let a = random_rf(&k, rng, lo, hi, 2);
                let b = random_rf(&k, rng, lo, hi, 2);
                let t = Trinomial::new(k.clone(), d, s, a, b).unwrap();
                assert_eq!(trinomial_disc(&t), resultant_disc(&t), "d = {d}, s = {s}");
            }
        }
    }
}

fn num_gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn criterion_2() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    trinomial_suite(Rationals, &mut rng, -6, 6);
    // 11 and 13 divide no d s (d - s) with d <= 7.
    trinomial_suite(PrimeField::new(11).unwrap(), &mut rng, 0, 10);
    trinomial_suite(PrimeField::new(13).unwrap(), &mut rng, 0, 12);
}

fn criterion_3() {
    let q = RationalFunctions::new(Rationals);
    let cap = DegreeCap::default();
    for p in [3u64, 5] {
        let fam = family_phi(Rationals, p, q.t()).unwrap();
        let zero = orbit(&fam.phi, &q.zero(), 5, cap).unwrap();
        assert_eq!(zero[2], fam.gamma);
        let gam = orbit(&fam.phi, &fam.gamma, 3, cap).unwrap();
        for n in 2..=5 {
            assert_eq!(zero[n], gam[n - 2], "p = {p}, n = {n}");
        }
        for n in 1..=4 {
            assert_eq!(weil_height(&zero[n]), p.pow(n as u32 - 1), "p = {p}, n = {n}");
        }
        let reps = eisenstein_stability(&fam, 4).unwrap();
        assert_eq!(reps.len(), 4);
        assert!(reps.iter().all(|r| r.holds()));
    }
}

fn criterion_4() {
    let cap = DegreeCap::default();
    let q = RationalFunctions::new(Rationals);
    let fam = family_phi(Rationals, 3, q.t()).unwrap();
    let terms = a_n_terms(&fam, 4, cap).unwrap();
    for n in 2..=4 {
        let a = &terms[n];
        assert_eq!(a.n, n);
        assert_eq!(a.degree, 3usize.pow(n as u32 + 1));
        let dr = a.reduction.derivative();
        assert_eq!(dr.degree(), Some(0), "n = {n}");
        assert!(a.reduction.gcd(&dr).is_one());
        assert!(a.squarefree_certified());
    }
    let rep = surjectivity_certificate(3, 4, cap).unwrap();
    let levels: Vec<_> = rep.levels.iter().filter(|l| (2..=4).contains(&l.n)).collect();
    assert_eq!(levels.len(), 3);
    for l in levels {
        assert!(l.degree_inequality, "n = {}", l.n);
        assert_eq!(l.verdict, LevelVerdict::MaximalCertified, "n = {}", l.n);
    }
}

fn mp(p: u64, cs: &[i64]) -> ModPoly {
    Poly::from_i64s(PrimeField::new(p).unwrap(), cs)
}

fn fp_map(p: u64, coeffs: &[&[i64]]) -> DynPolynomial<PrimeField> {
    let f = PrimeField::new(p).unwrap();
    let k = RationalFunctions::new(f);
    DynPolynomial::new(f, coeffs.iter().map(|c| k.from_base_i64s(c)).collect()).unwrap()
}

// Primitive primes per level, from full orbit terms and a fresh factorization of each.
fn zsig_oracle(phi: &DynPolynomial<PrimeField>, a: &ModPoly, b: &ModPoly, n_max: usize) -> Vec<Vec<ModPoly>> {
    let k = phi.field();
    let mut terms: Vec<ModPoly> = Vec::new();
    for n in 1..=n_max {
        let mut x = RatFunc::from_poly(b.clone());
        for _ in 0..n {
            x = phi.as_poly().eval(&x);
        }
        let c = k.sub(&x, &RatFunc::from_poly(a.clone()));
        assert!(c.den().is_one());
        terms.push(c.num().clone());
    }
    (0..n_max)
        .map(|n| {
            let mut out: Vec<ModPoly> = factor_fp(&terms[n], 12345)
                .factors
                .into_iter()
                .map(|(q, _)| q)
                .filter(|q| terms[..n].iter().all(|c| !q.divides(c)))
                .collect();
            out.sort_by(|x, y| (x.degree(), x.coeffs()).cmp(&(y.degree(), y.coeffs())));
            out
        })
        .collect()
}

fn criterion_5() {
    let sq = fp_map(3, &[&[1], &[0], &[0]]);
    let rep = zsigmondy_scan(&sq, &mp(3, &[]), &mp(3, &[0, 1]), 8, ScanOptions::default()).unwrap();
    let z: Vec<usize> = rep.zsigmondy_set.iter().copied().filter(|n| (2..=8).contains(n)).collect();
    assert_eq!(z, (2..=8).collect::<Vec<_>>());

    let cub = fp_map(5, &[&[1], &[0], &[0], &[0, 1]]);
    let (a, b) = (mp(5, &[]), mp(5, &[]));
    let rep = zsigmondy_scan(&cub, &a, &b, 6, ScanOptions::default()).unwrap();
    let expect = zsig_oracle(&cub, &a, &b, 6);
    assert_eq!(rep.levels.len(), 6);
    for (l, e) in rep.levels.iter().zip(&expect) {
        let mut got = l.primitive.clone();
        got.sort_by(|x, y| (x.degree(), x.coeffs()).cmp(&(y.degree(), y.coeffs())));
        assert_eq!(&got, e, "level {}", l.n);
    }
    let mut at2 = rep.levels[1].primitive.clone();
    at2.sort_by(|x, y| x.coeffs().cmp(y.coeffs()));
    assert_eq!(at2, vec![mp(5, &[2, 1]), mp(5, &[3, 1])]);
}

fn disc_vanishes(f: &RatPoly) -> bool {
    discriminant(f).expect("degree >= 1").is_zero()
}

// Composes phi with plain loops; square-freeness is read off the discriminant.
fn density_oracle(bound: i64, n_max: usize) -> Vec<PairVerdict> {
    let base = 2 * bound + 1;
    let mut out = Vec::new();
    // Index digits base 2B+1, lowest first: gamma_0, gamma_1, c_0, c_1.
    let total = base.pow(4);
    for i in 0..total {
        let mut r = i;
        let mut dig = [0i64; 4];
        for x in dig.iter_mut() {
            *x = r % base - bound;
            r /= base;
        }
        let [g0, g1, c0, c1] = dig;
        if g1 == 0 || c1 == 0 || g1 == c1 {
            out.push(PairVerdict::InM);
            continue;
        }
        let g: RatPoly = Poly::from_i64s(Rationals, &[g0, g1]);
        let c: RatPoly = Poly::from_i64s(Rationals, &[c0, c1]);
        let mut x = g.clone();
        let mut verdict = PairVerdict::InO;
        for n in 1..=n_max {
            let y = &x - &g;
            x = &(&y * &y) + &c;
            let sqf = !x.is_zero() && (x.is_constant() || !disc_vanishes(&x));
            if !sqf {
                verdict = PairVerdict::InV { witness: n };
                break;
            }
        }
        out.push(verdict);
    }
    out
}

fn criterion_6() {
    for (bound, total) in [(1u64, 81usize), (2, 625)] {
        let mut cfg = ScanConfig::new(1, bound, 6);
        cfg.workers = 4;
        let got = density_verdicts(&cfg).unwrap();
        assert_eq!(got.len(), total);
        let want = density_oracle(bound as i64, 6);
        for (i, (g, w)) in got.iter().zip(&want).enumerate() {
            assert_eq!(g, w, "pair {i}, B = {bound}");
        }
    }
    for d in 1..=4 {
        assert!(mod2_derivative_certificate(d, 8).passed(), "d = {d}");
    }
    assert_eq!(stability_bounds(1), (8, 16));
}

fn random_fp(p: u64, rng: &mut ChaCha8Rng, max_deg: usize) -> ModPoly {
    loop {
        let n = rng.gen_range(1..=max_deg);
        let cs: Vec<i64> = (0..=n).map(|_| rng.gen_range(0..p as i64)).collect();
        let f = mp(p, &cs);
        if !f.is_zero() {
            return f;
        }
    }
}

fn random_zt(rng: &mut ChaCha8Rng, max_deg: usize, h: i64) -> RatPoly {
    loop {
        let n = rng.gen_range(1..=max_deg);
        let cs: Vec<i64> = (0..=n).map(|_| rng.gen_range(-h..=h)).collect();
        let f = Poly::from_i64s(Rationals, &cs);
        if f.deg() >= 1 {
            return f;
        }
    }
}

fn squarefree_idempotent<F: Field>(f: &Poly<F>) {
    let dec = f.squarefree_decomposition();
    assert_eq!(&dec.reconstruct(f.field()), f);
    for (g, _) in &dec.parts {
        let again = g.squarefree_decomposition();
        assert_eq!(again.parts, vec![(g.clone(), 1)]);
        assert!(again.inseparable.is_none());
    }
}

fn criterion_7() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in [2u64, 5, 101] {
        for i in 0..500 {
            // Every third input gets a forced repeated factor.
            let mut f = random_fp(p, &mut rng, 24);
            if i % 3 == 0 {
                let g = random_fp(p, &mut rng, 4);
                f = &f * &g.pow(2);
            }
            let fac = factor_fp(&f, i);
            assert_eq!(fac.reconstruct(f.field()), f);
            for (q, _) in &fac.factors {
                assert!(q.is_monic() && is_irreducible_fp(q));
            }
            squarefree_idempotent(&f);
        }
    }
    for i in 0..500 {
        let mut f = random_zt(&mut rng, 20, 9);
        if i % 3 == 0 {
            let g = random_zt(&mut rng, 3, 4);
            f = &f * &g.pow(2);
        }
        squarefree_idempotent(&f);
    }
    for i in 0..500 {
        let mut f = random_zt(&mut rng, 40, 50);
        if i % 2 == 0 {
            // Degree at most 30 + 2 * 5.
            let g = random_zt(&mut rng, 5, 9);
            f = &random_zt(&mut rng, 30, 50) * &g.pow(2);
        }
        let exact = !disc_vanishes(&f);
        for &ell in &SQUAREFREE_LADDER {
            if is_squarefree_mod(&f, ell) == Ok(ModSquarefree::Yes) {
                assert!(exact, "prime {ell} contradicts the discriminant on input {i}");
            }
        }
    }
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn(), Duration); 7] = [
        ("1 riccati identities", criterion_1, Duration::from_secs(10)),
        ("2 trinomial discriminant", criterion_2, Duration::from_secs(30)),
        ("3 family invariants", criterion_3, Duration::from_secs(60)),
        ("4 surjectivity pipeline p=3", criterion_4, Duration::from_secs(120)),
        ("5 zsigmondy scans", criterion_5, Duration::from_secs(30)),
        ("6 density experiment", criterion_6, Duration::from_secs(300)),
        ("7 algebra substrate", criterion_7, Duration::from_secs(60)),
    ];
    let mut failed = Vec::new();
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let took = start.elapsed();
        let ok = outcome.is_ok() && took <= limit;
        let note = match (&outcome, took <= limit) {
            (Err(_), _) => "assertion failed".to_string(),
            (Ok(()), false) => format!("over the {:?} limit", limit),
            _ => String::new(),
        };
        println!(
            "criterion {name}: {} ({:.2?}) {note}",
            if ok { "PASS" } else { "FAIL" },
            took
        );
        if !ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
