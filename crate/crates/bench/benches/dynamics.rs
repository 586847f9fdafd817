use criterion::{black_box, criterion_group, criterion_main, Criterion};

use dynprim::algebra::{Field, Poly, PrimeField, Rationals};
use dynprim::density::{density_scan, ScanConfig};
use dynprim::dynsys::{orbit, DegreeCap, DynPolynomial, RationalFunctions};
use dynprim::galois::{family_phi, surjectivity_certificate};
use dynprim::riccati::solve_riccati_coeffs;
use dynprim::zsigmondy::{zsigmondy_scan, ScanOptions};
use dynprim_bench::q_map;

fn orbits(c: &mut Criterion) {
    let k = RationalFunctions::new(Rationals);
    let fam = family_phi(Rationals, 3, k.t()).unwrap();
    let cap = DegreeCap::default();
    c.bench_function("family p=3 orbit of 0 to n=5", |b| {
        b.iter(|| orbit(black_box(&fam.phi), &k.zero(), 5, cap).unwrap())
    });
    c.bench_function("surjectivity p=3 levels 2..=4", |b| {
        b.iter(|| surjectivity_certificate(3, 4, cap).unwrap())
    });
}

fn riccati(c: &mut Criterion) {
    let phi = q_map(6, 9);
    c.bench_function("solve_riccati_coeffs d=6", |b| b.iter(|| solve_riccati_coeffs(black_box(&phi))));
}

fn zsigmondy(c: &mut Criterion) {
    let f5 = PrimeField::new(5).unwrap();
    let k = RationalFunctions::new(f5);
    let phi = DynPolynomial::new(f5, vec![k.one(), k.zero(), k.zero(), k.t()]).unwrap();
    let zero = Poly::zero(f5);
    c.bench_function("zsigmondy x^3+t over F_5 to n=6", |b| {
        b.iter(|| zsigmondy_scan(&phi, &zero, &zero, 6, ScanOptions::default()).unwrap())
    });
}

fn density(c: &mut Criterion) {
    let mut g = c.benchmark_group("density d=1 B=2 nmax=6");
    g.sample_size(10);
    for workers in [1, 4] {
        let mut cfg = ScanConfig::new(1, 2, 6);
        cfg.workers = workers;
        g.bench_function(format!("workers={workers}"), |b| b.iter(|| density_scan(&cfg).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, orbits, riccati, zsigmondy, density);
criterion_main!(benches);
