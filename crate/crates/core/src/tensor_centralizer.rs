//! Multiplicities of irreducibles in tensor powers of a permutation representation,
//! their closed forms, and the resulting centralizer algebras.
//!
//! For a permutation character `theta`, the `k`-th tensor power has character
//! `theta^k` (pointwise). Its multiplicity vector satisfies `d(k) = d(k-1) A` with
//! `A = X diag(theta) X^-1`, and the centralizer of the representation is
//! `sum_i M_{d_i}`, of dimension `sum_i d_i^2`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::character_table::{inner_product, CharTable};
use crate::exact_algebra::{BigInt, BigRat, CycMatrix, CycNum};
use crate::group_engine::ClassData;
use crate::perm_characters::{decompose, MultVector, PermChar, PermCharError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("tensor power must be at least 1")]
    ZeroPower,
    #[error("transition matrix entry ({row}, {col}) is not rational: {value}")]
    IrrationalTransition { row: usize, col: usize, value: String },
    #[error("recurrence and inner product disagree at k = {k}, irreducible {index}")]
    RouteMismatch { k: u32, index: usize },
    #[error("closed-form coefficient for irreducible {index} at base {base} is not rational")]
    IrrationalCoefficient { index: usize, base: u64 },
    #[error("dimension routes disagree at k = {k}: {square_sum} vs {spectral}")]
    DimensionMismatch { k: u32, square_sum: BigInt, spectral: BigInt },
    #[error(transparent)]
    PermChar(#[from] PermCharError),
}

/// `A = X diag(theta) X^-1`; row `i` expresses `theta * chi_i` in the irreducible basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub entries: Vec<Vec<BigRat>>,
}

impl TransitionMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.entries.iter().flatten().all(|q| q.is_integer() && !q.is_negative())
    }

    /// `v A` for an integer row vector; `None` if a result entry is not an integer.
    pub fn apply(&self, v: &MultVector) -> Option<MultVector> {
        let n = self.size();
        let entries = (0..n)
            .map(|j| {
                let s: BigRat = v
                    .entries
                    .iter()
                    .zip(&self.entries)
                    .filter(|(m, _)| !m.is_zero())
                    .map(|(m, row)| &row[j] * BigRat::from_integer(m.clone()))
                    .sum();
                s.is_integer().then(|| s.to_integer())
            })
            .collect::<Option<Vec<_>>>()?;
        Some(MultVector { entries })
    }
}

pub fn transition_matrix(theta: &PermChar, x: &CharTable) -> Result<TransitionMatrix, TensorError> {
    transition_matrix_with_inverse(theta, x, &x.inverse())
}

pub fn transition_matrix_with_inverse(
    theta: &PermChar,
    x: &CharTable,
    x_inv: &CycMatrix,
) -> Result<TransitionMatrix, TensorError> {
    let diag: Vec<CycNum> = theta.to_class_function(x.conductor).values;
    let scaled = x.matrix().mul(&CycMatrix::diagonal(&diag));
    let a = scaled.mul(x_inv);
    let entries = (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| {
                    a[(i, j)].to_rational().ok_or_else(|| TensorError::IrrationalTransition {
                        row: i,
                        col: j,
                        value: a[(i, j)].to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TransitionMatrix { entries })
}

/// `d(k)` by iterating `d(k) = d(k-1) A` from the decomposition of `theta`.
pub fn multiplicities_by_recurrence(
    theta: &PermChar,
    max_k: u32,
    x: &CharTable,
    c: &ClassData,
    a: &TransitionMatrix,
) -> Result<Vec<MultVector>, TensorError> {
    if max_k == 0 {
        return Err(TensorError::ZeroPower);
    }
    let mut out = vec![decompose(theta, x, c)?];
    for k in 2..=max_k {
        let next = a.apply(out.last().expect("nonempty")).ok_or(TensorError::RouteMismatch { k, index: 0 })?;
        out.push(next);
    }
    Ok(out)
}

/// `d_i(k) = <theta^k, chi_i>` directly.
pub fn multiplicities_by_inner_product(
    theta: &PermChar,
    k: u32,
    x: &CharTable,
    c: &ClassData,
) -> Result<MultVector, TensorError> {
    if k == 0 {
        return Err(TensorError::ZeroPower);
    }
    let power = theta.power(k, x.conductor);
    let entries = x
        .rows
        .iter()
        .enumerate()
        .map(|(i, chi)| {
            let v = inner_product(&power, chi, c);
            v.to_integer().filter(|m| !m.is_negative()).ok_or_else(|| {
                TensorError::PermChar(PermCharError::NonIntegerMultiplicity { index: i, value: v.to_string() })
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MultVector { entries })
}

/// `d(k)` computed by both routes, which must agree exactly.
pub fn tensor_multiplicities(
    theta: &PermChar,
    k: u32,
    x: &CharTable,
    c: &ClassData,
) -> Result<MultVector, TensorError> {
    let a = transition_matrix(theta, x)?;
    let by_recurrence = multiplicities_by_recurrence(theta, k, x, c, &a)?.pop().expect("k >= 1");
    check_routes(k, &by_recurrence, &multiplicities_by_inner_product(theta, k, x, c)?)?;
    Ok(by_recurrence)
}

fn check_routes(k: u32, a: &MultVector, b: &MultVector) -> Result<(), TensorError> {
    match a.entries.iter().zip(&b.entries).position(|(x, y)| x != y) {
        Some(index) => Err(TensorError::RouteMismatch { k, index }),
        None => Ok(()),
    }
}

/// `k -> sum_v c_v v^(k-1)` over bases `v`, with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedForm {
    pub terms: BTreeMap<u64, BigRat>,
}

impl ClosedForm {
    pub fn new(terms: impl IntoIterator<Item = (u64, BigRat)>) -> Self {
        let mut map: BTreeMap<u64, BigRat> = BTreeMap::new();
        for (v, c) in terms {
            *map.entry(v).or_insert_with(BigRat::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        ClosedForm { terms: map }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at `k >= 1`.
    pub fn eval(&self, k: u32) -> BigRat {
        assert!(k >= 1);
        self.terms.iter().map(|(&v, c)| c * BigRat::from_integer(BigInt::from(v).pow(k - 1))).sum()
    }
}

impl fmt::Display for ClosedForm {
    /// Renders each term as `c*v^(k-1)`, dropping unit coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (v, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let base = if *v == 1 { None } else { Some(format!("{v}^(k-1)")) };
            match base {
                None => write!(f, "{mag}")?,
                Some(b) if mag.is_one() => write!(f, "{b}")?,
                Some(b) if mag.is_integer() => write!(f, "{mag}*{b}")?,
                Some(b) => write!(f, "({mag})*{b}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for ClosedForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// One closed form per irreducible: `c_{i,v} = (v/|G|) sum_{j: theta_j = v} |C_j| conj(chi_i(C_j))`
/// over the distinct nonzero values `v` of `theta`.
pub fn closed_forms(theta: &PermChar, x: &CharTable, c: &ClassData) -> Result<Vec<ClosedForm>, TensorError> {
    let mut bases: Vec<u64> = theta.values.iter().copied().filter(|&v| v != 0).collect();
    bases.sort_unstable();
    bases.dedup();
    let n = BigRat::from_integer(BigInt::from(c.group_order()));
    x.rows
        .iter()
        .enumerate()
        .map(|(i, chi)| {
            let terms = bases
                .iter()
                .map(|&v| {
                    let level =
                        (0..c.len()).filter(|&j| theta.values[j] == v).fold(CycNum::zero(x.conductor), |acc, j| {
                            &acc + &chi.values[j].conj().scale(&BigRat::from_integer(BigInt::from(c.classes[j].size())))
                        });
                    let q = level.to_rational().ok_or(TensorError::IrrationalCoefficient { index: i, base: v })?;
                    Ok::<_, TensorError>((v, q * BigRat::from_integer(BigInt::from(v)) / &n))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ClosedForm::new(terms))
        })
        .collect()
}

/// A block `count * M_d` of the Wedderburn decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedderburnBlock {
    #[serde(serialize_with = "serialize_bigint")]
    pub size: BigInt,
    pub count: usize,
    /// Irreducibles (table row indices) sharing this block's closed form.
    pub irreducibles: Vec<usize>,
    pub formula: ClosedForm,
}

fn serialize_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedderburnStructure {
    pub k: u32,
    /// Grouped by identical closed form, in order of first irreducible; zero blocks omitted.
    pub blocks: Vec<WedderburnBlock>,
    #[serde(serialize_with = "serialize_bigint")]
    pub dimension: BigInt,
}

impl WedderburnStructure {
    /// Fully merged `(matrix size, count)` pairs, ascending by size.
    pub fn merged(&self) -> Vec<(BigInt, usize)> {
        let mut map: BTreeMap<BigInt, usize> = BTreeMap::new();
        for b in &self.blocks {
            *map.entry(b.size.clone()).or_default() += b.count;
        }
        map.into_iter().collect()
    }

    /// Renders like `4M_1 + 6M_2`.
    pub fn render_merged(&self) -> String {
        self.merged()
            .iter()
            .map(|(d, n)| if *n == 1 { format!("M_{d}") } else { format!("{n}M_{d}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub fn wedderburn(theta: &PermChar, k: u32, x: &CharTable, c: &ClassData) -> Result<WedderburnStructure, TensorError> {
    let d = tensor_multiplicities(theta, k, x, c)?;
    let forms = closed_forms(theta, x, c)?;
    Ok(wedderburn_from_parts(k, &d, &forms))
}

pub fn wedderburn_from_parts(k: u32, d: &MultVector, forms: &[ClosedForm]) -> WedderburnStructure {
    let mut blocks: Vec<WedderburnBlock> = Vec::new();
    for (i, (m, form)) in d.entries.iter().zip(forms).enumerate() {
        if m.is_zero() {
            continue;
        }
        match blocks.iter_mut().find(|b| &b.formula == form && &b.size == m) {
            Some(b) => {
                b.count += 1;
                b.irreducibles.push(i);
            }
            None => {
                blocks.push(WedderburnBlock { size: m.clone(), count: 1, irreducibles: vec![i], formula: form.clone() })
            }
        }
    }
    WedderburnStructure { k, blocks, dimension: d.square_sum() }
}

/// `(1/|G|) sum_j |C_j| theta(C_j)^(2k)`.
pub fn dim_spectral(theta: &PermChar, k: u32, c: &ClassData) -> BigInt {
    let total: BigInt = c
        .classes
        .iter()
        .zip(&theta.values)
        .map(|(cls, &v)| BigInt::from(cls.size()) * BigInt::from(v).pow(2 * k))
        .sum();
    let n = BigInt::from(c.group_order());
    debug_assert!((&total % &n).is_zero());
    total / n
}

/// `sum_i d_i(k)^2`, asserted equal to the spectral formula.
pub fn dim_centralizer(theta: &PermChar, k: u32, x: &CharTable, c: &ClassData) -> Result<BigInt, TensorError> {
    let square_sum = tensor_multiplicities(theta, k, x, c)?.square_sum();
    let spectral = dim_spectral(theta, k, c);
    if square_sum != spectral {
        return Err(TensorError::DimensionMismatch { k, square_sum, spectral });
    }
    Ok(square_sum)
}

/// Everything about one permutation character for `k = 1..=max_k`, computed once.
#[derive(Clone, Debug)]
pub struct TensorReport {
    pub transition: TransitionMatrix,
    pub closed_forms: Vec<ClosedForm>,
    /// `multiplicities[k-1] = d(k)`, checked against the inner-product route.
    pub multiplicities: Vec<MultVector>,
    pub structures: Vec<WedderburnStructure>,
    pub dimensions: Vec<BigInt>,
}

pub fn tensor_report(
    theta: &PermChar,
    max_k: u32,
    x: &CharTable,
    x_inv: &CycMatrix,
    c: &ClassData,
) -> Result<TensorReport, TensorError> {
    let transition = transition_matrix_with_inverse(theta, x, x_inv)?;
    let multiplicities = multiplicities_by_recurrence(theta, max_k, x, c, &transition)?;
    let closed = closed_forms(theta, x, c)?;
    let mut structures = Vec::new();
    let mut dimensions = Vec::new();
    for (idx, d) in multiplicities.iter().enumerate() {
        let k = idx as u32 + 1;
        check_routes(k, d, &multiplicities_by_inner_product(theta, k, x, c)?)?;
        let w = wedderburn_from_parts(k, d, &closed);
        let spectral = dim_spectral(theta, k, c);
        if w.dimension != spectral {
            return Err(TensorError::DimensionMismatch { k, square_sum: w.dimension.clone(), spectral });
        }
        dimensions.push(w.dimension.clone());
        structures.push(w);
    }
    Ok(TensorReport { transition, closed_forms: closed, multiplicities, structures, dimensions })
}

/// Evaluates each closed form at `k` as an integer vector, if integral.
pub fn evaluate_closed_forms(forms: &[ClosedForm], k: u32) -> Option<MultVector> {
    let entries = forms
        .iter()
        .map(|f| {
            let v = f.eval(k);
            v.is_integer().then(|| v.to_integer())
        })
        .collect::<Option<Vec<_>>>()?;
    Some(MultVector { entries })
}

/// Convenience for small exponents in tests and reports.
pub fn to_u128(v: &BigInt) -> Option<u128> {
    v.to_u128()
}
