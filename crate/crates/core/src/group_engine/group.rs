use std::collections::HashMap;

use thiserror::Error;

use super::presentation::{Letter, Presentation, Word};
use super::todd_coxeter::{todd_coxeter, CosetTable, EnumerationError};

/// Largest group we are willing to enumerate into a full multiplication table.
pub const DEFAULT_MAX_ORDER: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("action is not faithful: image has order {image}, group has order {group}")]
    NonFaithfulAction { image: usize, group: usize },
    #[error("group order exceeds the cap of {0}")]
    OrderCapExceeded(usize),
    #[error("generator permutations have inconsistent degrees")]
    DegreeMismatch,
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

/// A fully enumerated permutation group.
///
/// Elements are indexed in breadth-first order over the generators and their
/// inverses, so index 0 is the identity and every element carries a shortest word.
/// Products follow the right-action convention: `mul(a, b)` applies `a` first.
#[derive(Clone, Debug)]
pub struct FinGroup {
    generator_names: Vec<String>,
    degree: usize,
    perms: Vec<Vec<u32>>,
    words: Vec<Word>,
    generators: Vec<usize>,
    mult: Vec<u32>,
    inverse: Vec<u32>,
}

impl FinGroup {
    /// Closes the group generated by `generators` (permutations of `0..degree`).
    pub fn from_permutations(
        generator_names: Vec<String>,
        generators: &[Vec<u32>],
        max_order: usize,
    ) -> Result<Self, GroupError> {
        let degree = generators.first().map_or(0, |g| g.len());
        if generators.iter().any(|g| g.len() != degree) {
            return Err(GroupError::DegreeMismatch);
        }
        let invert = |p: &Vec<u32>| {
            let mut q = vec![0u32; p.len()];
            for (i, &x) in p.iter().enumerate() {
                q[x as usize] = i as u32;
            }
            q
        };
        let letters: Vec<(Letter, Vec<u32>)> = generators
            .iter()
            .enumerate()
            .flat_map(|(g, p)| [(Letter::new(g, false), p.clone()), (Letter::new(g, true), invert(p))])
            .collect();

        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        index.insert(identity.clone(), 0);
        let mut perms = vec![identity];
        let mut words = vec![Word::identity()];
        let mut parent: Vec<(usize, usize)> = vec![(0, usize::MAX)];
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut x = 0;
        while x < perms.len() {
            let mut row = Vec::with_capacity(letters.len());
            for (li, (letter, p)) in letters.iter().enumerate() {
                let y: Vec<u32> = perms[x].iter().map(|&a| p[a as usize]).collect();
                let next = perms.len();
                let yi = *index.entry(y.clone()).or_insert(next);
                if yi == next {
                    if next >= max_order {
                        return Err(GroupError::OrderCapExceeded(max_order));
                    }
                    perms.push(y);
                    let mut w = words[x].0.clone();
                    w.push(*letter);
                    words.push(Word(w));
                    parent.push((x, li));
                }
                row.push(yi as u32);
            }
            right.push(row);
            x += 1;
        }

        let n = perms.len();
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            mult[a * n] = a as u32;
            for b in 1..n {
                let (pb, lb) = parent[b];
                let prev = mult[a * n + pb] as usize;
                mult[a * n + b] = right[prev][lb];
            }
        }
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if mult[a * n + b] == 0 {
                    inverse[a] = b as u32;
                    break;
                }
            }
        }
        let gens = (0..generators.len()).map(|g| right[0][2 * g] as usize).collect();
        Ok(FinGroup { generator_names, degree, perms, words, generators: gens, mult, inverse })
    }

    /// The group of the presentation, via its regular coset action.
    pub fn from_presentation(pres: &Presentation, coset_limit: usize) -> Result<Self, GroupError> {
        let table = todd_coxeter(pres, &[], coset_limit)?;
        build_group(&table, pres)
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.identity() {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    /// lcm of all element orders.
    pub fn exponent(&self) -> usize {
        use num_integer::Integer;
        self.elements().fold(1, |e, x| e.lcm(&self.element_order(x)))
    }

    pub fn permutation(&self, x: usize) -> &[u32] {
        &self.perms[x]
    }

    pub fn word(&self, x: usize) -> &Word {
        &self.words[x]
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    /// Element indices of the generators.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Evaluates a word in the generators.
    pub fn evaluate(&self, word: &Word) -> usize {
        word.0.iter().fold(self.identity(), |acc, l| {
            let g = self.generators[l.gen];
            self.mul(acc, if l.inverse { self.inv(g) } else { g })
        })
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, as a sorted list of element indices.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity()] = true;
        let mut members = vec![self.identity()];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }
}

/// Builds the permutation group induced by the generators on the cosets of a
/// complete table. On the trivial subgroup this is the regular representation.
pub fn build_group(table: &CosetTable, pres: &Presentation) -> Result<FinGroup, GroupError> {
    if !table.complete {
        return Err(GroupError::IncompleteTable);
    }
    let gens: Vec<Vec<u32>> = (0..table.num_generators).map(|g| table.generator_permutation(g)).collect();
    FinGroup::from_permutations(pres.generators.clone(), &gens, DEFAULT_MAX_ORDER)
}

/// Like [`build_group`], but fails unless the coset action is faithful, i.e. the
/// image has the order of the presented group.
pub fn build_faithful_group(
    table: &CosetTable,
    pres: &Presentation,
    coset_limit: usize,
) -> Result<FinGroup, GroupError> {
    let image = build_group(table, pres)?;
    let group = todd_coxeter(pres, &[], coset_limit)?.index();
    if image.order() != group {
        return Err(GroupError::NonFaithfulAction { image: image.order(), group });
    }
    Ok(image)
}
