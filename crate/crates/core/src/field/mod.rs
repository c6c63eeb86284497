//! Scalar tower: `Q` → `Q(θ)` → Laurent polynomials in `u, z` → fractions.

mod cyclo;
mod poly;
mod scalar;

pub use cyclo::{cyclo_poly, rat, totient, CycloNum, Rational};
pub use poly::{Exps, PolyUZ};
pub use scalar::Scalar;
