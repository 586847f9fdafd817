use std::collections::BTreeMap;
use std::fmt::Display;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use dynprim::algebra::{
    factor_fp, is_squarefree_exact, BaseField, Field, Poly, PrimeField, Rationals,
};
use dynprim::density::{
    density_scan, density_verdicts, mod2_derivative_certificate, stability_bounds, DensityError,
    PairVerdict, ScanConfig,
};
use dynprim::dynsys::{DegreeCap, DynError, RationalFunctions};
use dynprim::galois::{
    a_n_terms, family_phi, finite_index_report, maximality_conditions, resultant_disc,
    surjectivity_certificate, transposition_hypotheses, trinomial_disc, GaloisError, LevelVerdict,
    Trinomial,
};
use dynprim::irreducible::{Certificate, IrreducibilityStatus};
use dynprim::riccati::{
    coefficient_matrix, dyniso_preconditions, p_phi, riccati_rhs, solve_riccati_coeffs, RiccatiError,
};
use dynprim::zsigmondy::{zsigmondy_scan, ScanOptions, ZsigmondyError};

use crate::expr::{parse_map, parse_ratfunc, parse_tpoly, parse_xpoly, ParseError};
use crate::report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Cap(_) => 2,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::DegreeCap { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<DynError> for CliError {
    fn from(e: DynError) -> Self {
        match e {
            DynError::DegreeCapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<GaloisError> for CliError {
    fn from(e: GaloisError) -> Self {
        match e {
            GaloisError::Dyn(d) => d.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ZsigmondyError> for CliError {
    fn from(e: ZsigmondyError) -> Self {
        match e {
            ZsigmondyError::Dyn(d) => d.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<DensityError> for CliError {
    fn from(e: DensityError) -> Self {
        match e {
            DensityError::BadLevel(_) => CliError::Input(e.to_string()),
            _ => CliError::Cap(e.to_string()),
        }
    }
}

impl From<RiccatiError> for CliError {
    fn from(e: RiccatiError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "dynprim", version, about = "Exact arithmetic dynamics over k(t)")]
pub struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest polynomial degree any computation may produce.
    #[arg(long, global = true, env = "DYNPRIM_DEGREE_CAP", default_value_t = DegreeCap::DEFAULT)]
    pub degree_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Riccati invariants delta, epsilon, the solved coefficients and the isotriviality checks.
    Riccati(RiccatiArgs),
    /// Primitive prime divisors of phi^n(b) - a over F_p(t).
    Zsigmondy(ZsigmondyArgs),
    /// Discriminant and inertia checks for x^d + A x^s + B.
    Trinomial(TrinomialArgs),
    /// The x^p + A x^(p-1) + B family.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Quadratic pairs (x - gamma)^2 + c over Z[t].
    #[command(subcommand)]
    Density(DensityCommand),
    /// Factorization (over F_p) or square-free decomposition and discriminant.
    Factor(FactorArgs),
}

#[derive(Debug, Args)]
pub struct RiccatiArgs {
    #[arg(long)]
    pub phi: String,
    /// Base point a for phi^n(x) - a.
    #[arg(long, default_value = "0")]
    pub a: String,
    /// Work over F_p(t) instead of Q(t).
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ZsigmondyArgs {
    #[arg(long)]
    pub phi: String,
    #[arg(long, default_value = "0")]
    pub a: String,
    #[arg(long)]
    pub b: String,
    /// Characteristic of the constant field.
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 8)]
    pub nmax: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Skip the wandering certificate for b.
    #[arg(long)]
    pub assume_wandering: bool,
    #[arg(long, default_value_t = 12)]
    pub window: usize,
}

#[derive(Debug, Args)]
pub struct TrinomialArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub s: usize,
    #[arg(long = "A")]
    pub a: String,
    #[arg(long = "B")]
    pub b: String,
    #[arg(long)]
    pub p: Option<u64>,
    /// Finite place (monic irreducible in t; linear over Q) for the inertia checks.
    #[arg(long)]
    pub place: Option<String>,
    /// Critical point and level for the dynamical transposition and maximality checks.
    #[arg(long, requires = "level")]
    pub gamma: Option<String>,
    #[arg(long, requires = "gamma")]
    pub level: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum FamilyCommand {
    /// A, gamma and phi for a given B.
    Construct(FamilyArgs),
    /// Surjectivity certificate for B = t over Q(t), levels 2..=levels.
    Certify {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        levels: usize,
    },
    /// The normalized numerators a_n of phi^n(gamma) for B = t over Q(t).
    An {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Print a_n in full.
        #[arg(long)]
        show: bool,
    },
    /// Hypotheses of the finite-index criterion.
    FiniteIndex(FamilyArgs),
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value = "t")]
    pub b: String,
    /// Constant field F_q; Q when absent.
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum DensityCommand {
    Scan {
        #[arg(long)]
        d: usize,
        #[arg(long = "B")]
        bound: u64,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Accepted for scripts; the scan uses no randomness.
        #[arg(long)]
        seedless: bool,
        /// Write one row per pair: coefficients, verdict, witness level.
        #[arg(long)]
        csv: Option<std::path::PathBuf>,
    },
    /// The mod-2 certificate for (t^d, 2t^d + t).
    Lemma {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
    },
    Bounds {
        #[arg(long)]
        d: u64,
    },
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    #[arg(long)]
    pub poly: String,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn mono(d: usize, c: i64) -> Poly<Rationals> {
    Poly::monomial(Rationals, Rationals.from_i64(c), d)
}

fn prime_field(p: u64) -> Result<PrimeField, CliError> {
    PrimeField::new(p).map_err(|e| CliError::Input(e.to_string()))
}

macro_rules! over_field {
    ($p:expr, |$base:ident| $body:expr) => {
        match $p {
            None => {
                let $base = Rationals;
                $body
            }
            Some(p) => {
                let $base = prime_field(p)?;
                $body
            }
        }
    };
}

fn s<T: Display>(x: T) -> Value {
    Value::String(x.to_string())
}

fn elem<F: Field>(base: F, c: &F::Elem) -> String {
    Poly::constant(base, c.clone()).to_string()
}

pub fn run(cli: &Cli) -> Result<(BTreeMap<String, String>, Value), CliError> {
    let cap = DegreeCap::new(cli.degree_cap);
    let mut input = BTreeMap::new();
    let mut put = |k: &str, v: String| {
        input.insert(k.to_string(), v);
    };
    let field = |p: Option<u64>| p.map_or("Q".to_string(), |p| format!("F_{p}"));
    let result = match &cli.command {
        Command::Riccati(a) => {
            put("phi", a.phi.clone());
            put("a", a.a.clone());
            put("field", field(a.p));
            over_field!(a.p, |base| riccati(base, a, cap))?
        }
        Command::Zsigmondy(a) => {
            put("phi", a.phi.clone());
            put("a", a.a.clone());
            put("b", a.b.clone());
            put("field", field(Some(a.p)));
            put("nmax", a.nmax.to_string());
            put("seed", a.seed.to_string());
            zsigmondy(a, cap)?
        }
        Command::Trinomial(a) => {
            put("d", a.d.to_string());
            put("s", a.s.to_string());
            put("A", a.a.clone());
            put("B", a.b.clone());
            put("field", field(a.p));
            if let Some(pl) = &a.place {
                put("place", pl.clone());
            }
            if let (Some(g), Some(n)) = (&a.gamma, a.level) {
                put("gamma", g.clone());
                put("level", n.to_string());
            }
            over_field!(a.p, |base| trinomial(base, a, cap))?
        }
        Command::Family(f) => match f {
            FamilyCommand::Construct(a) => {
                put("p", a.p.to_string());
                put("B", a.b.clone());
                put("field", field(a.q));
                over_field!(a.q, |base| family_construct(base, a, cap))?
            }
            FamilyCommand::FiniteIndex(a) => {
                put("p", a.p.to_string());
                put("B", a.b.clone());
                put("field", field(a.q));
                over_field!(a.q, |base| family_finite_index(base, a, cap))?
            }
            FamilyCommand::Certify { p, levels } => {
                put("p", p.to_string());
                put("levels", levels.to_string());
                family_certify(*p, *levels, cap)?
            }
            FamilyCommand::An { p, n, show } => {
                put("p", p.to_string());
                put("n", n.to_string());
                family_an(*p, *n, *show, cap)?
            }
        },
        Command::Density(d) => match d {
            DensityCommand::Scan { d, bound, nmax, workers, csv, .. } => {
                put("d", d.to_string());
                put("B", bound.to_string());
                put("nmax", nmax.to_string());
                put("workers", workers.to_string());
                density(*d, *bound, *nmax, *workers, csv.as_deref(), cli.degree_cap)?
            }
            DensityCommand::Lemma { d, nmax } => {
                put("d", d.to_string());
                put("nmax", nmax.to_string());
                if *d == 0 {
                    return Err(CliError::Input("d must be positive".into()));
                }
                let c = mod2_derivative_certificate(*d, *nmax);
                json!({
                    "pair": {"gamma": s(mono(*d, 1)), "c": s(&mono(*d, 2) + &mono(1, 1))},
                    "passed": c.passed(),
                    "exact_levels": c.exact_levels,
                    "failed_at": c.failed_at,
                })
            }
            DensityCommand::Bounds { d } => {
                put("d", d.to_string());
                if *d == 0 {
                    return Err(CliError::Input("d must be positive".into()));
                }
                let (a, b) = stability_bounds(*d);
                json!({"stability": a, "zsigmondy": b})
            }
        },
        Command::Factor(a) => {
            put("poly", a.poly.clone());
            put("field", field(a.p));
            put("seed", a.seed.to_string());
            factor(a, cap)?
        }
    };
    Ok((input, result))
}

/// Runs the command and wraps the result in a report.
pub fn run_report(cli: &Cli) -> Result<Report, CliError> {
    let start = std::time::Instant::now();
    let (input, result) = run(cli)?;
    let name = match &cli.command {
        Command::Riccati(_) => "riccati",
        Command::Zsigmondy(_) => "zsigmondy",
        Command::Trinomial(_) => "trinomial",
        Command::Family(FamilyCommand::Construct(_)) => "family construct",
        Command::Family(FamilyCommand::Certify { .. }) => "family certify",
        Command::Family(FamilyCommand::An { .. }) => "family an",
        Command::Family(FamilyCommand::FiniteIndex(_)) => "family finite-index",
        Command::Density(DensityCommand::Scan { .. }) => "density scan",
        Command::Density(DensityCommand::Lemma { .. }) => "density lemma",
        Command::Density(DensityCommand::Bounds { .. }) => "density bounds",
        Command::Factor(_) => "factor",
    };
    Ok(Report::new(name, input, result, start.elapsed().as_secs_f64() * 1e3))
}

fn riccati<F: BaseField>(base: F, args: &RiccatiArgs, cap: DegreeCap) -> Result<Value, CliError> {
    let phi = parse_map(&args.phi, base, cap)?;
    let a = parse_ratfunc(&args.a, base, cap)?;
    let k = phi.field();
    let iso = dyniso_preconditions(&phi, &a, cap);
    let solution = match solve_riccati_coeffs(&phi) {
        Ok(sol) => {
            let m = coefficient_matrix(&phi);
            let rhs = riccati_rhs(&phi);
            let x = [&sol.b, &sol.f, &sol.c];
            let residual: Vec<Value> = (0..3)
                .map(|i| {
                    let row = (0..3).fold(k.neg(&rhs[i]), |acc, j| k.add(&acc, &k.mul(&m[i][j], x[j])));
                    s(row)
                })
                .collect();
            let p = p_phi(&phi, &sol);
            let d = phi.degree();
            json!({
                "b": s(&sol.b), "c": s(&sol.c), "f": s(&sol.f), "g": s(&sol.g),
                "matrix_residual": residual,
                "p_top_coefficients": (0..3).map(|i| s(p.coeff(d - i))).collect::<Vec<_>>(),
                "p": s(p.display_var("x")),
            })
        }
        Err(RiccatiError::SingularSystem) => json!({"singular": true}),
        Err(e) => return Err(e.into()),
    };
    Ok(json!({
        "degree": phi.degree(),
        "phi": s(&phi),
        "delta": s(&iso.delta),
        "epsilon": s(&iso.epsilon),
        "solution": solution,
        "isotriviality": {
            "verdict": format!("{:?}", iso.verdict),
            "failed": iso.failed.iter().map(|f| format!("{f:?}")).collect::<Vec<_>>(),
            "irreducibility_phi3_minus_a": irreducibility_value(base, &iso.irreducibility),
        },
    }))
}

fn irreducibility_value<F: BaseField>(base: F, st: &IrreducibilityStatus<F>) -> Value {
    match st {
        IrreducibilityStatus::Certified(Certificate::Eisenstein { place }) => {
            json!({"certified": true, "method": "eisenstein", "place": s(place)})
        }
        IrreducibilityStatus::Certified(Certificate::Specialization { point, prime }) => json!({
            "certified": true,
            "method": "specialization",
            "point": elem(base, point),
            "prime": prime,
        }),
        IrreducibilityStatus::Unknown => json!({"certified": false}),
    }
}

fn factors_value<F: Field>(fs: &[(Poly<F>, usize)]) -> Value {
    Value::Array(
        fs.iter()
            .map(|(q, e)| json!({"factor": s(q), "multiplicity": e}))
            .collect(),
    )
}

fn zsigmondy(args: &ZsigmondyArgs, cap: DegreeCap) -> Result<Value, CliError> {
    let base = prime_field(args.p)?;
    let phi = parse_map(&args.phi, base, cap)?;
    let a = parse_tpoly(&args.a, base, cap)?;
    let b = parse_tpoly(&args.b, base, cap)?;
    let opts = ScanOptions {
        cap,
        assume_wandering: args.assume_wandering,
        window: args.window,
        seed: args.seed,
    };
    let rep = zsigmondy_scan(&phi, &a, &b, args.nmax, opts)?;
    let levels: Vec<Value> = rep
        .levels
        .iter()
        .map(|l| {
            json!({
                "n": l.n,
                "degree": l.value.degree(),
                "value": if l.value.deg() <= 60 { s(&l.value) } else { Value::Null },
                "factors": factors_value(&l.factors),
                "primitive": l.primitive.iter().map(s).collect::<Vec<_>>(),
                "odd_primitive": l.odd_primitive.iter().map(s).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "n_max": rep.n_max,
        "zsigmondy_set": rep.zsigmondy_set,
        "levels": levels,
    }))
}

fn trinomial<F: BaseField>(base: F, args: &TrinomialArgs, cap: DegreeCap) -> Result<Value, CliError> {
    let k = RationalFunctions::new(base);
    let a = parse_ratfunc(&args.a, base, cap)?;
    let b = parse_ratfunc(&args.b, base, cap)?;
    let t = Trinomial::new(k, args.d, args.s, a, b)?;
    let disc = trinomial_disc(&t);
    let res = resultant_disc(&t);
    let mut out = json!({
        "polynomial": s(t.as_poly().display_var("x")),
        "gcd_ds": t.gcd_ds(),
        "disc": s(&disc),
        "disc_resultant": s(&res),
        "agree": disc == res,
    });
    if let Some(pl) = &args.place {
        let place = parse_tpoly(pl, base, cap)?;
        if !place.is_monic() || !place_is_prime(&place) {
            return Err(CliError::Input(format!("place {place} is not monic irreducible")));
        }
        let c = transposition_hypotheses(&t, &place, cap);
        out["transposition"] = json!({
            "coprime": c.coprime,
            "ds_nonzero": c.ds_nonzero,
            "integral": c.integral,
            "ab_unit": c.ab_unit,
            "disc_valuation": c.disc_valuation,
            "irreducibility": irreducibility_value(base, &c.irreducibility),
            "verdict": format!("{:?}", c.verdict),
        });
        if let (Some(g), Some(n)) = (&args.gamma, args.level) {
            let gamma = parse_ratfunc(g, base, cap)?;
            let m = maximality_conditions(&t, &gamma, n, &place, cap)?;
            let tr = &m.transposition;
            out["dynamical"] = json!({
                "coprime": tr.coprime,
                "critical_integral": tr.critical_integral,
                "gamma_multiplicity": tr.gamma_multiplicity,
                "gamma_valuation": tr.gamma_valuation,
                "cond_a": tr.cond_a,
                "da_valuation": tr.da_valuation,
                "zero_orbit_valuation": tr.zero_orbit_valuation,
                "cond_b": tr.cond_b,
                "transposition": tr.passes,
                "primitive": m.primitive,
                "others_clear": m.others_clear,
                "prime_degree": m.prime_degree,
                "level_maximal": m.level_maximal,
            });
        }
    }
    Ok(out)
}

// Monic irreducible over the base: every nonconstant known factor is the place itself.
fn place_is_prime<F: BaseField>(place: &Poly<F>) -> bool {
    if place.deg() < 1 {
        return false;
    }
    if place.field().characteristic() == 0 {
        // Over Q only linear places can be recognized.
        return place.deg() == 1;
    }
    let fs = place.field().known_prime_factors(place);
    fs.len() == 1 && &fs[0] == place
}

fn family_construct<F: BaseField>(base: F, args: &FamilyArgs, cap: DegreeCap) -> Result<Value, CliError> {
    let b = parse_ratfunc(&args.b, base, cap)?;
    let fam = family_phi(base, args.p, b)?;
    let k = fam.phi.field();
    Ok(json!({
        "A": s(&fam.a),
        "gamma": s(&fam.gamma),
        "phi": s(&fam.phi),
        "phi2_zero_is_gamma": fam.phi.evaluate(&fam.phi.evaluate(&k.zero())) == fam.gamma,
    }))
}

fn family_finite_index<F: BaseField>(base: F, args: &FamilyArgs, cap: DegreeCap) -> Result<Value, CliError> {
    let b = parse_ratfunc(&args.b, base, cap)?;
    let r = finite_index_report(base, args.p, b, cap);
    Ok(json!({
        "p_prime": r.p_prime,
        "p_invertible": r.p_invertible,
        "b_nonconstant": r.b_nonconstant,
        "delta_nonzero": r.delta_nonzero,
        "epsilon_nonzero": r.epsilon_nonzero,
        "zero_wandering": r.zero_wandering,
        "gamma_wandering": r.gamma_wandering,
        "gamma_simple": r.gamma_simple,
        "phi": r.family.as_ref().map(|f| s(&f.phi)),
        "finite_index": r.finite_index,
    }))
}

fn family_certify(p: u64, levels: usize, cap: DegreeCap) -> Result<Value, CliError> {
    let rep = surjectivity_certificate(p, levels, cap)?;
    let lv: Vec<Value> = rep
        .levels
        .iter()
        .map(|l| {
            json!({
                "n": l.n,
                "stability": l.stability_cert,
                "a_n_squarefree": l.a_n_squarefree,
                "degree_identity": l.degree_identity,
                "degree_inequality": l.degree_inequality,
                "verdict": match l.verdict {
                    LevelVerdict::MaximalCertified => "maximal_certified".to_string(),
                    LevelVerdict::Failed(f) => format!("failed: {f:?}"),
                },
            })
        })
        .collect();
    Ok(json!({"p": rep.p, "n_max": rep.n_max, "all_maximal": rep.all_maximal(), "levels": lv}))
}

fn family_an(p: u64, n: usize, show: bool, cap: DegreeCap) -> Result<Value, CliError> {
    let k = RationalFunctions::new(Rationals);
    let fam = family_phi(Rationals, p, k.t())?;
    let terms = a_n_terms(&fam, n, cap)?;
    let out: Vec<Value> = terms
        .iter()
        .map(|t| {
            json!({
                "n": t.n,
                "degree": t.degree,
                "a_n": if show || t.degree <= 30 { s(&t.a_n) } else { Value::Null },
                "denominator_exponent": t.denominator_exponent,
                "mod_p_unit": t.mod_p_unit,
                "derivative_constant": t.derivative_constant,
                "squarefree_certified": t.squarefree_certified(),
                "first_failure": t.first_failure(p).map(|c| format!("{c:?}")),
            })
        })
        .collect();
    Ok(json!({"p": p, "terms": out}))
}

fn density(
    d: usize,
    bound: u64,
    nmax: usize,
    workers: usize,
    csv: Option<&std::path::Path>,
    degree_cap: usize,
) -> Result<Value, CliError> {
    if d == 0 {
        return Err(CliError::Input("d must be positive".into()));
    }
    let mut cfg = ScanConfig::new(d, bound, nmax);
    cfg.workers = workers.max(1);
    cfg.degree_cap = degree_cap;
    let stats = density_scan(&cfg)?;
    if let Some(path) = csv {
        let verdicts = density_verdicts(&cfg)?;
        let mut f = std::io::BufWriter::new(
            std::fs::File::create(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        );
        let io = |e: std::io::Error| CliError::Input(e.to_string());
        let gs: Vec<String> = (0..=d).map(|i| format!("gamma_{i}")).collect();
        let cs: Vec<String> = (0..=d).map(|i| format!("c_{i}")).collect();
        writeln!(f, "{},{},verdict,witness", gs.join(","), cs.join(",")).map_err(io)?;
        for (i, v) in verdicts.iter().enumerate() {
            let pair = cfg.pair_at(i as u128);
            let coeffs = |p: &Poly<Rationals>| (0..=d).map(|j| p.coeff(j).to_string()).collect::<Vec<_>>().join(",");
            let (name, w) = match v {
                PairVerdict::InM => ("M", String::new()),
                PairVerdict::InV { witness } => ("V", witness.to_string()),
                PairVerdict::InO => ("O", String::new()),
            };
            writeln!(f, "{},{},{name},{w}", coeffs(pair.gamma()), coeffs(pair.c())).map_err(io)?;
        }
        f.flush().map_err(io)?;
    }
    let c = &stats.counts;
    Ok(json!({
        "d": c.d,
        "B": c.bound,
        "n_max": c.n_max,
        "total": c.total,
        "in_M": c.in_m,
        "in_V": c.in_v,
        "in_O": c.in_o,
        "in_V_by_witness": c.by_witness,
        "O_fraction": stats.o_fraction(),
        "galois_conclusion": "cited, not computed",
    }))
}

fn factor(args: &FactorArgs, cap: DegreeCap) -> Result<Value, CliError> {
    match args.p {
        Some(p) => {
            let base = prime_field(p)?;
            let f = parse_tpoly(&args.poly, base, cap)?;
            if f.is_zero() {
                return Err(CliError::Input("cannot factor zero".into()));
            }
            let fac = factor_fp(&f, args.seed);
            let sq = f.squarefree_decomposition();
            Ok(json!({
                "poly": s(&f),
                "unit": fac.unit,
                "factors": factors_value(&fac.factors),
                "squarefree_parts": factors_value(&sq.parts),
                "squarefree": f.is_squarefree(),
            }))
        }
        None => {
            let f = parse_tpoly(&args.poly, Rationals, cap)?;
            if f.is_zero() {
                return Err(CliError::Input("cannot factor zero".into()));
            }
            let sq = f.squarefree_decomposition();
            let disc = f.discriminant().ok();
            Ok(json!({
                "poly": s(&f),
                "unit": elem(Rationals, &sq.unit),
                "squarefree_parts": factors_value(&sq.parts),
                "squarefree": is_squarefree_exact(&f),
                "discriminant": disc.map(|d| elem(Rationals, &d)),
            }))
        }
    }
}

/// Parses a `k(t)[x]` expression and prints its canonical form; used by tests.
pub fn canonical<F: BaseField>(src: &str, base: F) -> Result<String, CliError> {
    Ok(parse_xpoly(src, base, DegreeCap::default())?.display_var("x").to_string())
}
