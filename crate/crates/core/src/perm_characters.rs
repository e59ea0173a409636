//! Permutation characters of coset actions and their decomposition into irreducibles.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::character_table::{inner_product, CharTable, ClassFunction};
use crate::exact_algebra::{BigInt, BigRat, CycNum};
use crate::group_engine::{ClassData, FinGroup};
use crate::subgroup_lattice::CosetAction;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermCharError {
    #[error("multiplicity of irreducible {index} is {value}, not a nonnegative integer")]
    NonIntegerMultiplicity { index: usize, value: String },
    #[error("decomposition does not reconstruct the character at class {class}")]
    Reconstruction { class: usize },
    #[error("action is not transitive: trivial character occurs {0} times")]
    NotTransitive(BigInt),
}

/// Fixed-point counts per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermChar {
    pub values: Vec<u64>,
    pub source: String,
}

impl PermChar {
    pub fn degree(&self) -> u64 {
        self.values[0]
    }

    pub fn to_class_function(&self, conductor: u32) -> ClassFunction {
        ClassFunction::new(self.values.iter().map(|&v| CycNum::from_bigint(conductor, v.into())).collect())
    }

    /// Pointwise `k`-th power as a class function.
    pub fn power(&self, k: u32, conductor: u32) -> ClassFunction {
        ClassFunction::new(
            self.values.iter().map(|&v| CycNum::from_bigint(conductor, BigInt::from(v).pow(k))).collect(),
        )
    }

    /// Orbit count by Burnside: `(1/|G|) sum_i |C_i| theta(C_i)`. `None` if not integral.
    pub fn burnside_orbits(&self, c: &ClassData) -> Option<u64> {
        let total: u64 = c.classes.iter().zip(&self.values).map(|(k, &v)| k.size() as u64 * v).sum();
        let n = c.group_order() as u64;
        total.is_multiple_of(n).then_some(total / n)
    }
}

/// Multiplicities of the irreducibles, aligned with the character table rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MultVector {
    #[serde(serialize_with = "serialize_bigints")]
    pub entries: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(small) => seq.serialize_element(&small)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl MultVector {
    pub fn from_i64(v: &[i64]) -> Self {
        MultVector { entries: v.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `sum_i m_i chi_i(1)`.
    pub fn degree(&self, x: &CharTable) -> BigInt {
        self.entries.iter().zip(x.degrees()).map(|(m, d)| m * BigInt::from(d)).sum()
    }

    /// `sum_i m_i chi_i` as a class function.
    pub fn character(&self, x: &CharTable) -> ClassFunction {
        let r = x.rows.first().map_or(0, ClassFunction::len);
        let values = (0..r)
            .map(|k| {
                self.entries.iter().zip(&x.rows).fold(CycNum::zero(x.conductor), |acc, (m, row)| {
                    if m.is_zero() {
                        acc
                    } else {
                        &acc + &row.values[k].scale(&BigRat::from_integer(m.clone()))
                    }
                })
            })
            .collect();
        ClassFunction::new(values)
    }

    /// `sum_i m_i^2`.
    pub fn square_sum(&self) -> BigInt {
        self.entries.iter().map(|m| m * m).sum()
    }
}

/// Fixed points of each class representative under the action.
pub fn permutation_character(a: &CosetAction, g: &FinGroup, c: &ClassData) -> PermChar {
    let values = c.classes.iter().map(|k| a.fixed_points(g, k.representative) as u64).collect();
    PermChar { values, source: a.label.clone() }
}

fn as_multiplicity(index: usize, v: &CycNum) -> Result<BigInt, PermCharError> {
    match v.to_integer() {
        Some(m) if !m.is_negative() => Ok(m),
        _ => Err(PermCharError::NonIntegerMultiplicity { index, value: v.to_string() }),
    }
}

/// Multiplicities `<theta, chi_i>`, checked by reconstructing `theta`.
pub fn decompose(theta: &PermChar, x: &CharTable, c: &ClassData) -> Result<MultVector, PermCharError> {
    decompose_class_function(&theta.to_class_function(x.conductor), x, c)
}

pub fn decompose_class_function(f: &ClassFunction, x: &CharTable, c: &ClassData) -> Result<MultVector, PermCharError> {
    let entries = x
        .rows
        .iter()
        .enumerate()
        .map(|(i, chi)| as_multiplicity(i, &inner_product(f, chi, c)))
        .collect::<Result<Vec<_>, _>>()?;
    let m = MultVector { entries };
    let back = m.character(x);
    if let Some(class) = (0..f.len()).find(|&k| back.values[k] != f.values[k]) {
        return Err(PermCharError::Reconstruction { class });
    }
    Ok(m)
}

/// Multiplicities as the row vector `theta X^-1`.
pub fn decompose_via_inverse(theta: &PermChar, x: &CharTable) -> Result<MultVector, PermCharError> {
    let row = theta.to_class_function(x.conductor).values;
    let entries = x
        .inverse()
        .left_apply(&row)
        .iter()
        .enumerate()
        .map(|(i, v)| as_multiplicity(i, v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MultVector { entries })
}

/// All multiplicities are 0 or 1.
pub fn is_multiplicity_free(m: &MultVector) -> bool {
    m.entries.iter().all(|e| e.is_zero() || e.is_one())
}

/// Trivial character plus exactly one other irreducible, each once. Requires transitivity.
pub fn is_doubly_transitive(m: &MultVector) -> Result<bool, PermCharError> {
    if !contains_identity_once(m) {
        return Err(PermCharError::NotTransitive(m.entries.first().cloned().unwrap_or_default()));
    }
    let nonzero: Vec<&BigInt> = m.entries.iter().filter(|e| !e.is_zero()).collect();
    Ok(nonzero.len() == 2 && nonzero.iter().all(|e| e.is_one()))
}

pub fn contains_identity_once(m: &MultVector) -> bool {
    m.entries.first().is_some_and(|e| e.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character_table::dixon_schneider;
    use crate::group_engine::{conjugacy_classes, Presentation, DEFAULT_COSET_LIMIT};
    use crate::subgroup_lattice::{coset_action, enumerate_subgroups, subgroup_from_generators, DEFAULT_SUBGROUP_CAP};

    struct Fixture {
        g: FinGroup,
        c: ClassData,
        x: CharTable,
    }

    fn fixture(p: Presentation) -> Fixture {
        let g = FinGroup::from_presentation(&p, DEFAULT_COSET_LIMIT).unwrap();
        let c = conjugacy_classes(&g);
        let x = dixon_schneider(&g, &c).unwrap();
        Fixture { g, c, x }
    }

    #[test]
    fn regular_character_of_h1() {
        let f = fixture(Presentation::h1());
        let trivial = subgroup_from_generators(&f.g, &[]);
        let theta = permutation_character(&coset_action(&f.g, &trivial), &f.g, &f.c);
        let mut expected = vec![0u64; 16];
        expected[0] = 96;
        assert_eq!(theta.values, expected);
        let m = decompose(&theta, &f.x, &f.c).unwrap();
        // regular character: multiplicity = degree
        assert_eq!(m.entries, f.x.degrees().iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>());
        assert_eq!(decompose_via_inverse(&theta, &f.x).unwrap(), m);
        assert!(!is_multiplicity_free(&m));
        assert!(!is_doubly_transitive(&m).unwrap());
        assert!(contains_identity_once(&m));
    }

    #[test]
    fn trivial_action_is_trivial_character() {
        let f = fixture(Presentation::h1());
        let whole = subgroup_from_generators(&f.g, f.g.generators());
        let theta = permutation_character(&coset_action(&f.g, &whole), &f.g, &f.c);
        assert_eq!(theta.values, vec![1; 16]);
        let m = decompose(&theta, &f.x, &f.c).unwrap();
        let mut expected = vec![0i64; 16];
        expected[0] = 1;
        assert_eq!(m, MultVector::from_i64(&expected));
    }

    #[test]
    fn natural_s3_action_is_doubly_transitive() {
        let f = fixture(Presentation::symmetric3());
        let subs = enumerate_subgroups(&f.g, DEFAULT_SUBGROUP_CAP).unwrap();
        let point_stabilizer = subs.iter().find(|s| s.order == 2).unwrap();
        let theta = permutation_character(&coset_action(&f.g, point_stabilizer), &f.g, &f.c);
        assert_eq!(theta.values, vec![3, 1, 0]);
        let m = decompose(&theta, &f.x, &f.c).unwrap();
        assert_eq!(m, MultVector::from_i64(&[1, 0, 1]));
        assert!(is_doubly_transitive(&m).unwrap());
        assert!(is_multiplicity_free(&m));
    }

    #[test]
    fn intransitive_sum() {
        let f = fixture(Presentation::symmetric3());
        let trivial = subgroup_from_generators(&f.g, &[]);
        let reg = coset_action(&f.g, &trivial);
        let both = reg.disjoint_union(&reg);
        let theta = permutation_character(&both, &f.g, &f.c);
        assert_eq!(theta.burnside_orbits(&f.c), Some(2));
        let m = decompose(&theta, &f.x, &f.c).unwrap();
        assert_eq!(m, MultVector::from_i64(&[2, 2, 4]));
        assert!(!contains_identity_once(&m));
        assert!(matches!(is_doubly_transitive(&m), Err(PermCharError::NotTransitive(_))));
        // regular character of S3 contains the trivial character once
        let single = decompose(&permutation_character(&reg, &f.g, &f.c), &f.x, &f.c).unwrap();
        assert!(contains_identity_once(&single));
    }

    #[test]
    fn non_character_is_rejected() {
        let f = fixture(Presentation::symmetric3());
        let bogus = PermChar { values: vec![2, 0, 0], source: "bogus".into() };
        assert!(matches!(decompose(&bogus, &f.x, &f.c), Err(PermCharError::NonIntegerMultiplicity { .. })));
    }

    #[test]
    fn all_h1_coset_actions() {
        let f = fixture(Presentation::h1());
        for s in enumerate_subgroups(&f.g, DEFAULT_SUBGROUP_CAP).unwrap() {
            let a = coset_action(&f.g, &s);
            let theta = permutation_character(&a, &f.g, &f.c);
            assert_eq!(theta.degree() as usize, s.index);
            assert_eq!(theta.burnside_orbits(&f.c), Some(1));
            let m = decompose(&theta, &f.x, &f.c).unwrap();
            assert_eq!(decompose_via_inverse(&theta, &f.x).unwrap(), m);
            assert!(contains_identity_once(&m));
            assert_eq!(m.degree(&f.x), BigInt::from(s.index));
        }
    }
}
