//! Exact arithmetic foundations: big rationals, integer matrices in
//! Hermite/Smith form, rational polyhedral cones with LP-backed membership,
//! and cyclotomic field elements.

pub mod cone;
pub mod cyclo;
pub mod lp;
pub mod matrix;

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

pub use cone::RationalCone;
pub use cyclo::{rat_to_f64, Cyclo};
pub use matrix::IntMatrix;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn rint(n: i64) -> Rat {
    Rat::from_integer(n.into())
}
