//! Polynomial dynamics over `K = k(t)`.

mod critical;
mod height;
mod map;
mod ratfunc;

pub use critical::{critical_points, CriticalPoints};
pub use height::{
    canonical_height_estimate, height_constant, min_iterate_bound, min_iterate_from_bracket,
    orbit, orbit_table, ratio, wandering_certificate, HeightEstimate, OrbitTable,
    WanderingVerdict,
};
pub use map::{DynPolynomial, OrbitEvaluator};
pub use ratfunc::{clear_x_denominators, d_dt, poly_sqrt_monic, weil_height, RatFunc, RationalFunctions};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynError {
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCapExceeded { degree: u128, cap: usize },
    #[error("a dynamical polynomial needs degree at least 2")]
    DegreeTooSmall,
    #[error("derivative in x vanishes identically")]
    InseparableDerivative,
    #[error("canonical height bracket does not stay positive")]
    NonpositiveHeight,
}

/// Upper bound on polynomial degrees produced by iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeCap(usize);

impl DegreeCap {
    pub const DEFAULT: usize = 200_000;

    pub fn new(cap: usize) -> Self {
        Self(cap)
    }

    pub fn get(&self) -> usize {
        self.0
    }

    pub fn check(&self, degree: u128) -> Result<(), DynError> {
        if degree > self.0 as u128 {
            Err(DynError::DegreeCapExceeded {
                degree,
                cap: self.0,
            })
        } else {
            Ok(())
        }
    }

    /// `d^n`, or an error when it exceeds the cap.
    pub fn check_power(&self, d: usize, n: usize) -> Result<u128, DynError> {
        let mut acc: u128 = 1;
        for _ in 0..n {
            acc = acc.saturating_mul(d as u128);
            if acc > self.0 as u128 {
                return Err(DynError::DegreeCapExceeded {
                    degree: acc,
                    cap: self.0,
                });
            }
        }
        Ok(acc)
    }
}

impl Default for DegreeCap {
    fn default() -> Self {
        Self(Self::DEFAULT)
    }
}
