//! Exact arithmetic dynamics over rational function fields `k(t)`.

pub mod algebra;
pub mod dynsys;
pub mod irreducible;
pub mod riccati;
pub mod zsigmondy;
pub mod galois;
pub mod density;
