//! Irreducible character tables and inner products of class functions.

mod dixon;

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

pub use dixon::class_structure_constants;

use crate::exact_algebra::{BigInt, BigRat, CycMatrix, CycNum, PrimeFieldError};
use crate::group_engine::{ClassData, FinGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharTableError {
    #[error(transparent)]
    PrimeField(#[from] PrimeFieldError),
    #[error("class matrices did not split into one-dimensional eigenspaces mod {prime}: dims {dimensions:?}")]
    SplittingFailure { prime: u64, dimensions: Vec<usize> },
    #[error("a class matrix is not diagonalizable mod {prime}")]
    NotDiagonalizable { prime: u64 },
    #[error("could not recover a character degree mod {prime}")]
    DegreeRecovery { prime: u64 },
    #[error("eigenvalue multiplicities on class {class} are inconsistent mod {prime}")]
    LiftFailure { class: usize, prime: u64 },
    #[error("computed table violates orthogonality: {0}")]
    Orthogonality(String),
}

/// One value per conjugacy class, in canonical class order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFunction {
    pub values: Vec<CycNum>,
}

impl ClassFunction {
    pub fn new(values: Vec<CycNum>) -> Self {
        ClassFunction { values }
    }

    pub fn constant(len: usize, v: CycNum) -> Self {
        ClassFunction { values: vec![v; len] }
    }

    pub fn from_integers(conductor: u32, values: &[i64]) -> Self {
        ClassFunction { values: values.iter().map(|&v| CycNum::from_int(conductor, v)).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at the identity class as an integer (for characters, the degree).
    pub fn degree(&self) -> i64 {
        self.values[0].to_integer().and_then(|d| d.to_i64()).expect("integer value at identity")
    }

    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.canonical_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    /// Pointwise product.
    pub fn product(&self, other: &Self) -> Self {
        ClassFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }

    pub fn conj(&self) -> Self {
        ClassFunction { values: self.values.iter().map(CycNum::conj).collect() }
    }
}

/// `(1/|G|) sum_i |C_i| f(C_i) conj(h(C_i))`.
pub fn inner_product(f: &ClassFunction, h: &ClassFunction, c: &ClassData) -> CycNum {
    assert_eq!(f.len(), c.len(), "class function length");
    assert_eq!(h.len(), c.len(), "class function length");
    let conductor = f.values.first().map_or(1, CycNum::conductor);
    let sum = c.classes.iter().zip(f.values.iter().zip(&h.values)).fold(CycNum::zero(conductor), |acc, (k, (a, b))| {
        let size = BigRat::from_integer(BigInt::from(k.size()));
        &acc + &(a * &b.conj()).scale(&size)
    });
    sum.scale(&BigRat::new(BigInt::from(1), BigInt::from(c.group_order())))
}

/// Irreducible characters as rows; the trivial character is row 0.
///
/// Remaining rows are sorted by degree, then by the lexicographic order of their
/// canonical values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharTable {
    pub rows: Vec<ClassFunction>,
    pub class_sizes: Vec<usize>,
    pub class_orders: Vec<usize>,
    pub group_order: usize,
    /// Shared conductor of every entry (the group exponent).
    pub conductor: u32,
    /// Working prime used for the modular phase.
    pub prime: u64,
}

impl CharTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.rows.iter().map(ClassFunction::degree).collect()
    }

    pub fn matrix(&self) -> CycMatrix {
        CycMatrix::from_rows(self.rows.iter().map(|r| r.values.clone()).collect())
    }

    /// `X^-1` read off column orthogonality, `X^-1[j][i] = |C_j| conj(chi_i(C_j)) / |G|`, then
    /// confirmed by multiplying back to the identity. Falls back to Gauss-Jordan if the check fails,
    /// so a table that is not orthogonal still gets its true inverse.
    pub fn inverse(&self) -> CycMatrix {
        let n = self.len();
        let g = BigRat::from_integer(BigInt::from(self.group_order));
        let rows = (0..n)
            .map(|j| {
                let scale = BigRat::from_integer(BigInt::from(self.class_sizes[j])) / &g;
                self.rows.iter().map(|r| r.values[j].conj().scale(&scale)).collect()
            })
            .collect();
        let candidate = CycMatrix::from_rows(rows);
        if self.matrix().mul(&candidate) == CycMatrix::identity(n, self.conductor) {
            candidate
        } else {
            self.inverse_by_elimination()
        }
    }

    /// `X^-1` by Gauss-Jordan elimination, independent of the orthogonality relations.
    /// Slow for large conductors.
    pub fn inverse_by_elimination(&self) -> CycMatrix {
        self.matrix().inverse().expect("character tables are invertible")
    }

    /// Checks both orthogonality relations exactly.
    pub fn verify(&self, c: &ClassData) -> Result<(), CharTableError> {
        let r = self.len();
        if r != c.len() {
            return Err(CharTableError::Orthogonality(format!("{r} characters for {} classes", c.len())));
        }
        for i in 0..r {
            for j in i..r {
                let ip = inner_product(&self.rows[i], &self.rows[j], c);
                let expected = CycNum::from_int(self.conductor, (i == j) as i64);
                if ip != expected {
                    return Err(CharTableError::Orthogonality(format!("<chi_{i}, chi_{j}> = {ip}")));
                }
            }
        }
        for a in 0..r {
            for b in a..r {
                let s = self
                    .rows
                    .iter()
                    .fold(CycNum::zero(self.conductor), |acc, row| &acc + &(&row.values[a] * &row.values[b].conj()));
                let expected = if a == b { (self.group_order / self.class_sizes[a]) as i64 } else { 0 };
                if s != CycNum::from_int(self.conductor, expected) {
                    return Err(CharTableError::Orthogonality(format!("columns {a}, {b} give {s}")));
                }
            }
        }
        Ok(())
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let r = self.len();
        out.push('|');
        out.push_str(" |");
        for k in 0..r {
            let _ = write!(out, " C{} |", k + 1);
        }
        out.push_str("\n|---|");
        out.push_str(&"---|".repeat(r));
        out.push_str("\n| size |");
        for s in &self.class_sizes {
            let _ = write!(out, " {s} |");
        }
        out.push_str("\n| order |");
        for o in &self.class_orders {
            let _ = write!(out, " {o} |");
        }
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            let _ = write!(out, "| chi{} |", i + 1);
            for v in &row.values {
                let _ = write!(out, " {v} |");
            }
            out.push('\n');
        }
        out
    }
}

/// Computes the irreducible characters exactly.
pub fn dixon_schneider(g: &FinGroup, c: &ClassData) -> Result<CharTable, CharTableError> {
    let table = dixon::compute(g, c)?;
    table.verify(c)?;
    Ok(table)
}

/// `sum_i chi_i(1)`.
pub fn sum_of_degrees(t: &CharTable) -> i64 {
    t.degrees().iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_engine::{conjugacy_classes, Presentation, DEFAULT_COSET_LIMIT};

    fn setup(p: Presentation) -> (FinGroup, ClassData, CharTable) {
        let g = FinGroup::from_presentation(&p, DEFAULT_COSET_LIMIT).unwrap();
        let c = conjugacy_classes(&g);
        let t = dixon_schneider(&g, &c).unwrap();
        (g, c, t)
    }

    fn ints(t: &CharTable) -> Vec<Vec<i64>> {
        t.rows.iter().map(|r| r.values.iter().map(|v| v.to_integer().unwrap().to_i64().unwrap()).collect()).collect()
    }

    #[test]
    fn s3_table() {
        let (_, c, t) = setup(Presentation::symmetric3());
        assert_eq!(c.sizes(), vec![1, 3, 2]);
        assert_eq!(ints(&t), vec![vec![1, 1, 1], vec![1, -1, 1], vec![2, 0, -1]]);
        assert_eq!(sum_of_degrees(&t), 4);
    }

    #[test]
    fn cyclic_four_table() {
        let (g, c, t) = setup(Presentation::cyclic(4));
        assert_eq!(t.degrees(), vec![1; 4]);
        let a = g.generators()[0];
        // each character is determined by its value at the generator, a 4th root of unity
        let mut at_gen: Vec<CycNum> = t.rows.iter().map(|r| r.values[c.class_of[a]].clone()).collect();
        for v in &at_gen {
            assert_eq!(v.pow(4), CycNum::one(4));
        }
        at_gen.sort_by(|x, y| x.canonical_cmp(y));
        at_gen.dedup();
        assert_eq!(at_gen.len(), 4);
    }

    #[test]
    fn trivial_group() {
        let (_, _, t) = setup(Presentation::cyclic(1));
        assert_eq!(t.degrees(), vec![1]);
        assert_eq!(sum_of_degrees(&t), 1);
    }

    #[test]
    fn quaternion_table() {
        let (_, _, t) = setup(Presentation::quaternion());
        assert_eq!(t.degrees(), vec![1, 1, 1, 1, 2]);
        assert!(t.rows.iter().all(|r| r.values.iter().all(CycNum::is_rational)));
    }

    #[test]
    fn h1_table() {
        let (g, c, t) = setup(Presentation::h1());
        assert_eq!(t.len(), 16);
        assert_eq!(t.prime, 73);
        let mut degs = t.degrees();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4]);
        assert_eq!(sum_of_degrees(&t), 36);
        assert_eq!(degs.iter().map(|d| d * d).sum::<i64>(), 96);
        assert!(t.rows[0].values.iter().all(|v| *v == CycNum::one(1)));
        // conj(chi(g)) = chi(g^-1)
        for row in &t.rows {
            for k in 0..c.len() {
                assert_eq!(row.values[k].conj(), row.values[c.inverse_class(k)]);
            }
        }
        assert_eq!(24 % g.exponent(), 0);
    }

    #[test]
    fn inverse_matches_orthogonality() {
        let (_, c, t) = setup(Presentation::h1());
        let inv = t.inverse_by_elimination();
        assert_eq!(t.matrix().mul(&inv), CycMatrix::identity(16, t.conductor));
        assert_eq!(t.inverse(), inv);
        let n = BigRat::new(1.into(), 96.into());
        for k in 0..16 {
            for i in 0..16 {
                let expected =
                    t.rows[i].values[k].conj().scale(&(&n * BigRat::from_integer(c.classes[k].size().into())));
                assert_eq!(inv[(k, i)], expected);
            }
        }
    }

    #[test]
    fn inner_products() {
        let (_, c, t) = setup(Presentation::h1());
        let chi1 = &t.rows[0];
        assert_eq!(inner_product(chi1, chi1, &c), CycNum::one(1));
        let f = &t.rows[5];
        let h = &t.rows[7];
        assert_eq!(inner_product(f, h, &c), inner_product(h, f, &c).conj());
    }

    #[test]
    fn deterministic() {
        let (_, _, a) = setup(Presentation::h1());
        let (_, _, b) = setup(Presentation::h1());
        assert_eq!(a, b);
    }
}
