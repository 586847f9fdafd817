//! Trinomial discriminants, transposition and maximality checks, and the
//! `x^p + A x^(p-1) + B` family with its stability and surjectivity pipelines.

mod family;
mod trinomial;

pub use family::{
    a_n_sequence, a_n_terms, eisenstein_stability, family_phi, finite_index_report,
    surjectivity_certificate, ANCheck, ANTerm, FamilyPhi, FiniteIndexReport, LevelFailure,
    LevelVerdict, SurjectivityLevel, SurjectivityReport,
};
pub use trinomial::{
    dyn_transposition_check, maximality_conditions, resultant_disc, transposition_hypotheses,
    trinomial_disc, DynTranspositionCheck, MaximalityCheck, TranspositionChecklist,
    TranspositionVerdict, Trinomial,
};

use thiserror::Error;

use crate::algebra::{Field, Poly};
use crate::dynsys::{DynError, RatFunc};
use crate::zsigmondy::{valuation, PrimeDivisor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error("need d > s >= 1, got d = {d}, s = {s}")]
    InvalidTrinomial { d: usize, s: usize },
    #[error("{0} vanishes in the base field")]
    BadCharacteristic(u64),
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("B must be non-constant")]
    ConstantB,
    #[error("this pipeline needs B = t")]
    RequiresBEqualsT,
    #[error("no irreducibility certificate for the iterate")]
    MissingIrreducibility,
    #[error("Eisenstein pattern broken at level {n} (coefficient {index:?})")]
    PatternBroken { n: usize, index: Option<usize> },
    #[error("check {check:?} failed at n = {n}")]
    CheckFailed { check: ANCheck, n: usize },
    #[error("family invariant failed: {0}")]
    InvariantFailed(&'static str),
    #[error(transparent)]
    Dyn(#[from] DynError),
}

// v_p(beta), with `None` standing for +infinity at beta = 0.
pub(crate) fn val_at<F: Field>(beta: &RatFunc<F>, place: &Poly<F>) -> Option<i64> {
    valuation(beta, &PrimeDivisor::finite_unchecked(place.clone())).ok()
}
