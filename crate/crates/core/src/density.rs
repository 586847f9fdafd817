//! Quadratic pairs `phi(x) = (x - gamma)^2 + c` over `Z[t]`: the exceptional sets
//! `M_d`, `V_d` and a full enumeration of coefficient boxes.

use std::time::{Duration, Instant};

use num_rational::BigRational;
use thiserror::Error;

use crate::algebra::{is_squarefree_exact, reduce_mod, Poly, RatPoly, Rationals};

/// `V_d` is the union of `V_n(d)` for `n <= MAX_LEVEL`.
pub const MAX_LEVEL: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("degree {degree} at level {n} exceeds the cap {cap}")]
    DegreeCapExceeded { n: usize, degree: u128, cap: usize },
    #[error("{total} pairs exceed the enumeration cap {cap}")]
    EnumerationCapExceeded { total: u128, cap: u128 },
    #[error("level bound {0} is outside 1..=16")]
    BadLevel(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadPair {
    d: usize,
    gamma: RatPoly,
    c: RatPoly,
}

impl QuadPair {
    /// Integer coefficients, ascending, each list of length at most `d + 1`.
    pub fn from_i64s(d: usize, gamma: &[i64], c: &[i64]) -> Self {
        assert!(gamma.len() <= d + 1 && c.len() <= d + 1, "degree exceeds d");
        Self {
            d,
            gamma: Poly::from_i64s(Rationals, gamma),
            c: Poly::from_i64s(Rationals, c),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn gamma(&self) -> &RatPoly {
        &self.gamma
    }

    pub fn c(&self) -> &RatPoly {
        &self.c
    }

    /// `phi(x)` evaluated at a polynomial.
    pub fn apply(&self, x: &RatPoly) -> RatPoly {
        let y = x - &self.gamma;
        &(&y * &y) + &self.c
    }

    /// `[phi(gamma), ..., phi^n(gamma)]`.
    pub fn critical_orbit(&self, n: usize) -> Vec<RatPoly> {
        let mut out = Vec::with_capacity(n);
        let mut x = self.gamma.clone();
        for _ in 0..n {
            x = self.apply(&x);
            out.push(x.clone());
        }
        out
    }
}

fn top(f: &RatPoly, d: usize) -> BigRational {
    f.coeff(d)
}

/// `a_d b_d (a_d - b_d) = 0` for the degree-`d` coefficients of `gamma` and `c`.
pub fn in_m_d(pair: &QuadPair) -> bool {
    let (a, b) = (top(&pair.gamma, pair.d), top(&pair.c, pair.d));
    a == BigRational::from_integer(0.into())
        || b == BigRational::from_integer(0.into())
        || a == b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VVerdict {
    /// `phi^n(gamma)` is not square-free (the zero polynomial counts as not square-free).
    Yes { witness: usize },
    /// Square-free at every level up to the window tested.
    No,
}

/// Membership in `V_d`, tested on levels `1..=n_max`.
pub fn in_v_d(pair: &QuadPair, n_max: usize, degree_cap: usize) -> Result<VVerdict, DensityError> {
    if n_max == 0 || n_max > MAX_LEVEL {
        return Err(DensityError::BadLevel(n_max));
    }
    let lawful = !in_m_d(pair) && pair.d > 0;
    let mut x = pair.gamma.clone();
    for n in 1..=n_max {
        let bound = 2 * x.deg().max(pair.d as isize) as u128;
        if bound > degree_cap as u128 {
            return Err(DensityError::DegreeCapExceeded { n, degree: bound, cap: degree_cap });
        }
        x = pair.apply(&x);
        if lawful {
            debug_assert_eq!(x.degree(), Some(pair.d << (n - 1)));
        }
        if !is_squarefree_exact(&x) {
            return Ok(VVerdict::Yes { witness: n });
        }
    }
    Ok(VVerdict::No)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mod2Certificate {
    pub n_max: usize,
    /// Levels whose reduction lost degree, settled by an exact square-free test instead.
    pub exact_levels: Vec<usize>,
    pub failed_at: Option<usize>,
}

impl Mod2Certificate {
    pub fn passed(&self) -> bool {
        self.failed_at.is_none()
    }
}

/// Square-freeness of `phi^n(gamma)` for `n <= n_max` via `d/dt (phi^n(gamma) mod 2) = 1`.
///
/// Mod 2 the derivative of `(y - gamma)^2 + c` is `c'`, so one constant derivative
/// carries through every level. Where the leading coefficient is even the reduction
/// loses degree, and that level is checked exactly over Q.
pub fn mod2_certificate_for(pair: &QuadPair, n_max: usize) -> Mod2Certificate {
    let gbar = reduce_mod(&pair.gamma, 2).expect("integer coefficients");
    let cbar = reduce_mod(&pair.c, 2).expect("integer coefficients");
    let mut xbar = gbar.clone();
    // Exact iterate, kept only while its degree is small; afterwards the degree doubles
    // and the leading coefficient squares, so its parity is fixed.
    let mut exact = Some(pair.gamma.clone());
    let mut deg = pair.gamma.deg();
    let mut lc_odd = true;
    let small = pair.gamma.deg().max(pair.c.deg());
    let mut exact_levels = Vec::new();
    for n in 1..=n_max {
        let y = &xbar - &gbar;
        xbar = &(&y * &y) + &cbar;
        match exact.take() {
            Some(x) if x.deg() <= small => {
                let next = pair.apply(&x);
                deg = next.deg();
                lc_odd = next.lc().is_some_and(|l| l.numer().bit(0));
                exact = Some(next);
            }
            _ => {
                deg *= 2;
            }
        }
        let dx = xbar.derivative();
        if dx.degree() != Some(0) {
            return Mod2Certificate { n_max, exact_levels, failed_at: Some(n) };
        }
        if !(lc_odd && xbar.deg() == deg) {
            let x = pair.critical_orbit(n).pop().unwrap();
            if !is_squarefree_exact(&x) {
                return Mod2Certificate { n_max, exact_levels, failed_at: Some(n) };
            }
            exact_levels.push(n);
        }
    }
    Mod2Certificate { n_max, exact_levels, failed_at: None }
}

/// The certificate for the pair `(t^d, 2t^d + t)`.
pub fn mod2_derivative_certificate(d: usize, n_max: usize) -> Mod2Certificate {
    let mut g = vec![0i64; d + 1];
    g[d] = 1;
    let mut c = vec![0i64; d + 1];
    c[d] += 2;
    c[1] += 1;
    mod2_certificate_for(&QuadPair::from_i64s(d, &g, &c), n_max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairVerdict {
    InM,
    InV { witness: usize },
    InO,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityCounts {
    pub d: usize,
    pub bound: u64,
    pub n_max: usize,
    pub total: u64,
    pub in_m: u64,
    pub in_v: u64,
    pub in_o: u64,
    /// `by_witness[n - 1]` counts pairs first failing at level `n`.
    pub by_witness: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct DensityStats {
    pub counts: DensityCounts,
    pub elapsed: Duration,
}

impl DensityStats {
    pub fn o_fraction(&self) -> f64 {
        self.counts.in_o as f64 / self.counts.total as f64
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ScanConfig {
    pub d: usize,
    pub bound: u64,
    pub n_max: usize,
    pub workers: usize,
    pub enumeration_cap: u128,
    pub degree_cap: usize,
}

impl ScanConfig {
    pub fn new(d: usize, bound: u64, n_max: usize) -> Self {
        Self {
            d,
            bound,
            n_max,
            workers: 1,
            enumeration_cap: 50_000_000,
            degree_cap: 1 << 20,
        }
    }

    pub fn total(&self) -> u128 {
        (2 * self.bound as u128 + 1).saturating_pow(2 * (self.d as u32 + 1))
    }

    /// The pair at position `index` in the enumeration: base-`(2B+1)` digits, gamma first.
    pub fn pair_at(&self, mut index: u128) -> QuadPair {
        let base = 2 * self.bound as u128 + 1;
        let mut digits = Vec::with_capacity(2 * self.d + 2);
        for _ in 0..2 * self.d + 2 {
            digits.push((index % base) as i64 - self.bound as i64);
            index /= base;
        }
        let (g, c) = digits.split_at(self.d + 1);
        QuadPair::from_i64s(self.d, g, c)
    }
}

pub fn classify(pair: &QuadPair, n_max: usize, degree_cap: usize) -> Result<PairVerdict, DensityError> {
    if in_m_d(pair) {
        return Ok(PairVerdict::InM);
    }
    Ok(match in_v_d(pair, n_max, degree_cap)? {
        VVerdict::Yes { witness } => PairVerdict::InV { witness },
        VVerdict::No => PairVerdict::InO,
    })
}

/// Verdict for every pair in enumeration order; identical for any worker count.
pub fn density_verdicts(cfg: &ScanConfig) -> Result<Vec<PairVerdict>, DensityError> {
    let total = cfg.total();
    if total > cfg.enumeration_cap {
        return Err(DensityError::EnumerationCapExceeded { total, cap: cfg.enumeration_cap });
    }
    if cfg.n_max == 0 || cfg.n_max > MAX_LEVEL {
        return Err(DensityError::BadLevel(cfg.n_max));
    }
    let total = total as usize;
    let workers = cfg.workers.clamp(1, total.max(1));
    let chunk = total.div_ceil(workers);
    let parts: Vec<Result<Vec<PairVerdict>, DensityError>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let range = (w * chunk)..((w + 1) * chunk).min(total);
                s.spawn(move || {
                    range
                        .map(|i| classify(&cfg.pair_at(i as u128), cfg.n_max, cfg.degree_cap))
                        .collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(total);
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

pub fn density_scan(cfg: &ScanConfig) -> Result<DensityStats, DensityError> {
    let start = Instant::now();
    let verdicts = density_verdicts(cfg)?;
    let mut counts = DensityCounts {
        d: cfg.d,
        bound: cfg.bound,
        n_max: cfg.n_max,
        total: verdicts.len() as u64,
        in_m: 0,
        in_v: 0,
        in_o: 0,
        by_witness: vec![0; cfg.n_max],
    };
    for v in &verdicts {
        match v {
            PairVerdict::InM => counts.in_m += 1,
            PairVerdict::InV { witness } => {
                counts.in_v += 1;
                counts.by_witness[witness - 1] += 1;
            }
            PairVerdict::InO => counts.in_o += 1,
        }
    }
    Ok(DensityStats { counts, elapsed: start.elapsed() })
}

/// Largest `n` with `2^(n-2) d <= 110 d + 4`, and largest `n` with
/// `2^(n-2) <= 36 (2^(floor(n/2)+1) + 2^floor(n/2) + 1)`.
pub fn stability_bounds(d: u64) -> (u32, u32) {
    assert!(d >= 1, "d must be positive");
    let d = d as u128;
    let mut first = 1;
    let mut second = 1;
    // Both left sides outgrow the right sides well before n = 100.
    for n in 2u32..100 {
        let lhs = 1u128 << (n - 2);
        if lhs.saturating_mul(d) <= 110 * d + 4 {
            first = n;
        }
        let h = n / 2;
        if lhs <= 36 * ((1u128 << (h + 1)) + (1u128 << h) + 1) {
            second = n;
        }
    }
    (first, second)
}
