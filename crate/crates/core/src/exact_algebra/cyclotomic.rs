use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, is_one, parse_rational, rat, BigInt, BigRat};

pub fn euler_phi(n: u32) -> u32 {
    let mut m = n;
    let mut phi = n;
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            while m.is_multiple_of(q) {
                m /= q;
            }
            phi -= phi / q;
        }
        q += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<[i64]>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<[i64]> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let div = cyclotomic_polynomial(d);
        num = divide_monic(&num, &div);
    }
    let poly: Arc<[i64]> = num.into();
    phi_cache().lock().unwrap().insert(n, poly.clone());
    poly
}

fn divide_monic(num: &[i64], div: &[i64]) -> Vec<i64> {
    let dn = div.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (k, &dk) in div.iter().enumerate() {
                rem[i + k] -= c * dk;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// An element of the cyclotomic field Q(zeta_n), stored in the power basis
/// `1, zeta, ..., zeta^(phi(n)-1)` with trailing zero coefficients removed.
///
/// Values of different conductors compare and combine through the lcm field.
#[derive(Clone, Debug)]
pub struct CycNum {
    conductor: u32,
    coeffs: Vec<BigRat>,
}

impl CycNum {
    pub fn zero(conductor: u32) -> Self {
        assert!(conductor >= 1);
        CycNum { conductor, coeffs: Vec::new() }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, BigRat::one())
    }

    pub fn from_int(conductor: u32, v: i64) -> Self {
        Self::from_rational(conductor, rat(v))
    }

    pub fn from_bigint(conductor: u32, v: BigInt) -> Self {
        Self::from_rational(conductor, BigRat::from_integer(v))
    }

    pub fn from_rational(conductor: u32, q: BigRat) -> Self {
        assert!(conductor >= 1);
        let coeffs = if q.is_zero() { Vec::new() } else { vec![q] };
        CycNum { conductor, coeffs }
    }

    /// `zeta_n^j` for any integer `j`.
    pub fn zeta_pow(conductor: u32, j: i64) -> Self {
        Self::from_exponent_terms(conductor, [(j, BigRat::one())])
    }

    /// Sum of `c * zeta_n^j` over the given terms, reduced to canonical form.
    pub fn from_exponent_terms<I>(conductor: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRat)>,
    {
        assert!(conductor >= 1);
        let n = conductor as i64;
        let mut folded = vec![BigRat::zero(); conductor as usize];
        for (j, c) in terms {
            folded[j.rem_euclid(n) as usize] += c;
        }
        Self::reduce(conductor, folded)
    }

    fn reduce(conductor: u32, mut poly: Vec<BigRat>) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        let deg = phi.len() - 1;
        for i in (deg..poly.len()).rev() {
            if poly[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[i]);
            for (k, &pk) in phi.iter().enumerate().take(deg) {
                if pk != 0 {
                    poly[i - deg + k] -= &c * rat(pk);
                }
            }
        }
        poly.truncate(deg);
        while poly.last().is_some_and(|c| c.is_zero()) {
            poly.pop();
        }
        CycNum { conductor, coeffs: poly }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Canonical coefficients in the power basis, trailing zeros removed.
    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn to_rational(&self) -> Option<BigRat> {
        match self.coeffs.len() {
            0 => Some(BigRat::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Re-expresses `self` in Q(zeta_m); `m` must be a multiple of the conductor.
    pub fn promote(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.conductor), "conductor {} does not divide {m}", self.conductor);
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as i64;
        Self::from_exponent_terms(
            m,
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j as i64 * step, c.clone())),
        )
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        let m = self.conductor.lcm(&other.conductor);
        (self.promote(m), other.promote(m))
    }

    /// The Galois automorphism `zeta -> zeta^a`, `a` coprime to the conductor.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.conductor as i64;
        assert!(a.rem_euclid(n).gcd(&n) == 1 || n == 1, "{a} is not a unit mod {n}");
        Self::from_exponent_terms(
            self.conductor,
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j as i64 * a, c.clone())),
        )
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Multiplicative inverse via the field norm, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.to_rational() {
            return Some(Self::from_rational(self.conductor, q.recip()));
        }
        let n = self.conductor as i64;
        let mut cofactor = Self::one(self.conductor);
        for a in 2..n {
            if a.gcd(&n) == 1 {
                cofactor = &cofactor * &self.galois(a);
            }
        }
        let norm = (self * &cofactor).to_rational().expect("field norm is rational");
        Some(cofactor.scale(&norm.recip()))
    }

    pub fn scale(&self, q: &BigRat) -> Self {
        if q.is_zero() {
            return Self::zero(self.conductor);
        }
        CycNum { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Floating-point value at `zeta_n = exp(2 pi i / n)`. Diagnostic only.
    pub fn embed(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let t = std::f64::consts::TAU * j as f64 / n;
            (re + c * t.cos(), im + c * t.sin())
        })
    }

    /// Lexicographic order on the canonical coefficient vectors (in the lcm field).
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.aligned(other);
        let len = a.coeffs.len().max(b.coeffs.len());
        let zero = BigRat::zero();
        for j in 0..len {
            let x = a.coeffs.get(j).unwrap_or(&zero);
            let y = b.coeffs.get(j).unwrap_or(&zero);
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Nonzero `(exponent, coefficient)` pairs, exponent ascending.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRat)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (j as u32, c))
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;

    fn add(self, rhs: &'a CycNum) -> CycNum {
        if self.conductor != rhs.conductor {
            let (a, b) = self.aligned(rhs);
            return &a + &b;
        }
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigRat::zero(); len];
        for (j, c) in self.coeffs.iter().enumerate() {
            out[j] += c;
        }
        for (j, c) in rhs.coeffs.iter().enumerate() {
            out[j] += c;
        }
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        CycNum { conductor: self.conductor, coeffs: out }
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;

    fn sub(self, rhs: &'a CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;

    fn neg(self) -> CycNum {
        CycNum { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;

    fn neg(self) -> CycNum {
        -&self
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;

    fn mul(self, rhs: &'a CycNum) -> CycNum {
        if self.conductor != rhs.conductor {
            let (a, b) = self.aligned(rhs);
            return &a * &b;
        }
        if self.is_zero() || rhs.is_zero() {
            return CycNum::zero(self.conductor);
        }
        if self.coeffs.len() == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.coeffs.len() == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let n = self.conductor as usize;
        let mut folded = vec![BigRat::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    folded[(i + j) % n] += a * b;
                }
            }
        }
        CycNum::reduce(self.conductor, folded)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &'a CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.conductor;
        let mut first = true;
        for (j, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let base = match j {
                0 => None,
                1 => Some(format!("z{n}")),
                _ => Some(format!("z{n}^{j}")),
            };
            match base {
                None => write!(f, "{mag}")?,
                Some(b) if is_one(&mag) => write!(f, "{b}")?,
                Some(b) => write!(f, "{mag}*{b}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumWire {
    conductor: u32,
    coeffs: Vec<(u32, String)>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycNumWire { conductor: self.conductor, coeffs: self.terms().map(|(j, c)| (j, format_rational(c))).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = CycNumWire::deserialize(d)?;
        if wire.conductor == 0 {
            return Err(de::Error::custom("conductor must be positive"));
        }
        let mut terms = Vec::with_capacity(wire.coeffs.len());
        for (j, c) in wire.coeffs {
            let q = parse_rational(&c).ok_or_else(|| de::Error::custom(format!("bad rational {c:?}")))?;
            terms.push((j as i64, q));
        }
        Ok(CycNum::from_exponent_terms(wire.conductor, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u32, j: i64) -> CycNum {
        CycNum::zeta_pow(n, j)
    }

    fn close(a: (f64, f64), b: (f64, f64), tol: f64) -> bool {
        (a.0 - b.0).abs() < tol && (a.1 - b.1).abs() < tol
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(&*cyclotomic_polynomial(1), &[-1, 1]);
        assert_eq!(&*cyclotomic_polynomial(4), &[1, 0, 1]);
        assert_eq!(&*cyclotomic_polynomial(8), &[1, 0, 0, 0, 1]);
        assert_eq!(&*cyclotomic_polynomial(12), &[1, 0, -1, 0, 1]);
        assert_eq!(&*cyclotomic_polynomial(24), &[1, 0, 0, 0, -1, 0, 0, 0, 1]);
        for n in 1..40 {
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, euler_phi(n));
        }
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&z(4, 1) * &z(4, 1), CycNum::from_int(4, -1));
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = &(&CycNum::one(3) + &z(3, 1)) + &z(3, 2);
        assert!(s.is_zero());
        assert!(s.coeffs().is_empty());
    }

    #[test]
    fn norm_of_one_plus_zeta8() {
        let x = &CycNum::one(8) + &z(8, 1);
        let prod = &x * &x.conj();
        // 2 + zeta8 - zeta8^3 = 2 + sqrt(2)
        let expected = CycNum::from_exponent_terms(8, [(0, rat(2)), (1, rat(1)), (3, rat(-1))]);
        assert_eq!(prod, expected);
        let (re, im) = prod.embed();
        assert!((re - (2.0 + 2f64.sqrt())).abs() < 1e-12 && im.abs() < 1e-12);
    }

    #[test]
    fn conjugation_basics() {
        assert_eq!(z(4, 1).conj(), -z(4, 1));
        let half = CycNum::from_rational(12, BigRat::new(3.into(), 2.into()));
        assert_eq!(half.conj(), half);
    }

    #[test]
    fn mixed_conductors_promote() {
        assert_eq!(z(4, 1), z(8, 2));
        assert_eq!(z(3, 1), z(24, 8));
        let s = &z(4, 1) + &z(3, 1);
        assert_eq!(s.conductor(), 12);
        assert!(close(s.embed(), (-0.5, 1.0 + 3f64.sqrt() / 2.0), 1e-12));
    }

    #[test]
    fn full_cosets_reduce_to_zero() {
        // sum of all primitive-subgroup cosets: zeta_n^a * (1 + zeta_d + ... ) over d | n
        for n in [3u32, 4, 8, 12, 24] {
            for d in (2..=n).filter(|d| n % d == 0) {
                for shift in 0..n as i64 {
                    let step = (n / d) as i64;
                    let x = CycNum::from_exponent_terms(n, (0..d as i64).map(|k| (shift + k * step, rat(1))));
                    assert!(x.is_zero(), "n={n} d={d} shift={shift}");
                }
            }
        }
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert!(CycNum::zero(8).inv().is_none());
    }

    #[test]
    fn json_shape() {
        let x = CycNum::from_exponent_terms(8, [(0, rat(2)), (3, BigRat::new((-1).into(), 2.into()))]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"conductor":8,"coeffs":[[0,"2/1"],[3,"-1/2"]]}"#);
        let back: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<CycNum>(r#"{"conductor":0,"coeffs":[]}"#).is_err());
    }

    fn arb_cyc() -> impl Strategy<Value = CycNum> {
        (prop::sample::select(vec![3u32, 4, 8, 12, 24]), prop::collection::vec((-6i64..=6, 1i64..=4), 1..8)).prop_map(
            |(n, cs)| {
                CycNum::from_exponent_terms(
                    n,
                    cs.into_iter().enumerate().map(|(j, (a, b))| (j as i64 * 5, BigRat::new(a.into(), b.into()))),
                )
            },
        )
    }

    fn arb_triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
        (arb_cyc(), arb_cyc(), arb_cyc())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn field_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if let Some(ai) = a.inv() {
                prop_assert_eq!(&a * &ai, CycNum::one(1));
            } else {
                prop_assert!(a.is_zero());
            }
        }

        #[test]
        fn conj_is_involution(a in arb_cyc()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
        }

        #[test]
        fn embedding_agrees((a, b, _c) in arb_triple()) {
            let (ar, ai) = a.embed();
            let (br, bi) = b.embed();
            prop_assert!(close((&a * &b).embed(), (ar * br - ai * bi, ar * bi + ai * br), 1e-10));
            prop_assert!(close((&a + &b).embed(), (ar + br, ai + bi), 1e-10));
            prop_assert!(close(a.conj().embed(), (ar, -ai), 1e-10));
        }
    }
}
