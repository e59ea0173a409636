//! Exact arithmetic: rationals, cyclotomic numbers and prime fields.

mod cyclotomic;
mod matrix;
mod prime_field;
mod rational;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CycNum};
pub use matrix::CycMatrix;
pub use prime_field::{dixon_prime, fp_discrete_root_table, is_prime, FpElem, PrimeField, PrimeFieldError, RootTable};
pub use rational::{format_rational, parse_rational, BigInt, BigRat};
