use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrimeFieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no primitive {e}-th root of unity mod {p}: {p} is not 1 mod {e}")]
    NoSuchRoot { p: u64, e: u64 },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime `p = 1 mod exponent` with `p > 2 sqrt(order)`.
pub fn dixon_prime(exponent: u64, order: u64) -> u64 {
    let e = exponent.max(1);
    let mut p = e + 1;
    while !(is_prime(p) && (p * p > 4 * order)) {
        p += e;
    }
    p
}

/// Arithmetic context for GF(p), `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, PrimeFieldError> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(PrimeFieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> FpElem {
        FpElem { value: v.rem_euclid(self.p as i64) as u64, modulus: self.p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in GF({})", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(&self) -> u64 {
        if self.p == 2 {
            return 1;
        }
        let qs = prime_divisors(self.p - 1);
        (2..self.p)
            .find(|&g| qs.iter().all(|q| self.pow(g, (self.p - 1) / q) != 1))
            .expect("multiplicative group of a prime field is cyclic")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpElem {
    pub value: u64,
    pub modulus: u64,
}

impl FpElem {
    fn field(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn pow(self, e: u64) -> FpElem {
        FpElem { value: self.field().pow(self.value, e), modulus: self.modulus }
    }

    pub fn inv(self) -> Option<FpElem> {
        (self.value != 0).then(|| FpElem { value: self.field().inv(self.value), modulus: self.modulus })
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

macro_rules! fp_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for FpElem {
            type Output = FpElem;
            fn $m(self, rhs: FpElem) -> FpElem {
                assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
                FpElem { value: self.field().$m(self.value, rhs.value), modulus: self.modulus }
            }
        }
    };
}

fp_binop!(Add, add);
fp_binop!(Sub, sub);
fp_binop!(Mul, mul);

impl Neg for FpElem {
    type Output = FpElem;
    fn neg(self) -> FpElem {
        FpElem { value: self.field().sub(0, self.value), modulus: self.modulus }
    }
}

/// Powers of a fixed primitive `e`-th root of unity in GF(p).
#[derive(Clone, Debug)]
pub struct RootTable {
    pub field: PrimeField,
    pub exponent: u64,
    pub omega: u64,
    /// `powers[j] = omega^j` for `0 <= j < exponent`.
    pub powers: Vec<u64>,
}

impl RootTable {
    pub fn omega(&self) -> FpElem {
        FpElem { value: self.omega, modulus: self.field.modulus() }
    }

    /// `omega^j` for any integer `j`.
    pub fn power(&self, j: i64) -> u64 {
        self.powers[j.rem_euclid(self.exponent as i64) as usize]
    }
}

/// The root is `g^((p-1)/e)` for the smallest primitive root `g`, so it is deterministic.
pub fn fp_discrete_root_table(p: u64, e: u64) -> Result<RootTable, PrimeFieldError> {
    let field = PrimeField::new(p)?;
    if e == 0 || !(p - 1).is_multiple_of(e) {
        return Err(PrimeFieldError::NoSuchRoot { p, e });
    }
    let omega = field.pow(field.primitive_root(), (p - 1) / e);
    let mut powers = Vec::with_capacity(e as usize);
    let mut acc = 1;
    for _ in 0..e {
        powers.push(acc);
        acc = field.mul(acc, omega);
    }
    Ok(RootTable { field, exponent: e, omega, powers })
}
