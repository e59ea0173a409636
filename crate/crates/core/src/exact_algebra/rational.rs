use num_traits::{One, Zero};

pub use num_bigint::BigInt;

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type BigRat = num_rational::BigRational;

/// `num/den` form, always with an explicit denominator.
pub fn format_rational(q: &BigRat) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `a`, `a/b` (with optional sign on `a`).
pub fn parse_rational(s: &str) -> Option<BigRat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRat::new(n, d))
        }
        None => Some(BigRat::from_integer(s.parse().ok()?)),
    }
}

pub(crate) fn rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub(crate) fn is_one(q: &BigRat) -> bool {
    q.is_one()
}
