//! HLT coset enumeration with lookahead.
//!
//! Follows the classical scan-and-fill formulation: every live coset is scanned
//! under every relator, undefined entries are filled by new definitions, and
//! coincidences are merged through a union-find queue. When the coset bound is
//! reached, a lookahead pass scans all live cosets without defining anything,
//! then the table is compacted and enumeration resumes.

use thiserror::Error;

use super::presentation::{Presentation, Word};

pub const DEFAULT_COSET_LIMIT: usize = 200_000;

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("coset limit of {0} exceeded before the table closed")]
    CosetLimitExceeded(usize),
}

/// A coset table: `rows[c][col]` is the image of coset `c` under the letter in
/// column `col` (see [`Letter::column`](super::Letter::column)). Coset 0 is the subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub num_generators: usize,
    pub rows: Vec<Vec<u32>>,
    pub complete: bool,
    /// Largest number of coset slots in use at any point of the enumeration.
    pub peak_cosets: usize,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows.len()
    }

    /// Image of `coset` under a word, acting on the right.
    pub fn act(&self, coset: usize, word: &Word) -> usize {
        word.0.iter().fold(coset, |c, l| self.rows[c][l.column()] as usize)
    }

    /// Permutation of cosets induced by generator `gen`.
    pub fn generator_permutation(&self, gen: usize) -> Vec<u32> {
        self.rows.iter().map(|r| r[2 * gen]).collect()
    }

    /// Every relator traces a closed loop from every coset.
    pub fn relators_close(&self, pres: &Presentation) -> bool {
        (0..self.index()).all(|c| pres.relators.iter().all(|r| self.act(c, r) == c))
    }
}

struct Enumerator {
    relators: Vec<Vec<usize>>,
    subgroup: Vec<Vec<usize>>,
    cols: usize,
    limit: usize,
    table: Vec<Vec<u32>>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    peak: usize,
}

#[inline]
fn inv_col(c: usize) -> usize {
    c ^ 1
}

enum Define {
    Done,
    Full,
}

impl Enumerator {
    fn new(pres: &Presentation, subgroup: &[Word], limit: usize) -> Self {
        let cols = 2 * pres.num_generators();
        let to_cols = |w: &Word| w.0.iter().map(|l| l.column()).collect::<Vec<_>>();
        Enumerator {
            relators: pres.relators.iter().map(to_cols).collect(),
            subgroup: subgroup.iter().map(to_cols).collect(),
            cols,
            limit: limit.max(1),
            table: vec![vec![UNDEF; cols]],
            parent: vec![0],
            queue: Vec::new(),
            peak: 1,
        }
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut cur = c;
        while self.parent[cur] as usize != root {
            let next = self.parent[cur] as usize;
            self.parent[cur] = root as u32;
            cur = next;
        }
        root
    }

    fn define(&mut self, c: usize, col: usize) -> Define {
        if self.table.len() >= self.limit {
            return Define::Full;
        }
        let d = self.table.len();
        self.table.push(vec![UNDEF; self.cols]);
        self.parent.push(d as u32);
        self.table[c][col] = d as u32;
        self.table[d][inv_col(col)] = c as u32;
        self.peak = self.peak.max(self.table.len());
        Define::Done
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo as u32;
            self.queue.push(hi as u32);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i] as usize;
            i += 1;
            for col in 0..self.cols {
                let target = self.table[dead][col];
                if target == UNDEF {
                    continue;
                }
                let target = target as usize;
                if self.table[target][inv_col(col)] as usize == dead {
                    self.table[target][inv_col(col)] = UNDEF;
                }
                let mu = self.rep(dead);
                let nu = self.rep(target);
                if self.table[mu][col] != UNDEF {
                    let img = self.table[mu][col] as usize;
                    self.merge(nu, img);
                } else if self.table[nu][inv_col(col)] != UNDEF {
                    let img = self.table[nu][inv_col(col)] as usize;
                    self.merge(mu, img);
                } else {
                    self.table[mu][col] = nu as u32;
                    self.table[nu][inv_col(col)] = mu as u32;
                }
            }
        }
    }

    /// Scans `word` from coset `start`. With `fill`, missing entries are defined;
    /// returns `Define::Full` if that hits the limit.
    fn scan(&mut self, start: usize, word: &[usize], fill: bool) -> Define {
        if word.is_empty() {
            return Define::Done;
        }
        let mut f = start;
        let mut b = start;
        let mut i = 0usize;
        let mut j = word.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.table[f][word[i]] != UNDEF {
                f = self.table[f][word[i]] as usize;
                i += 1;
            }
            if (i as isize) > j {
                if f != start {
                    self.coincidence(f, start);
                }
                return Define::Done;
            }
            while j >= i as isize && self.table[b][inv_col(word[j as usize])] != UNDEF {
                b = self.table[b][inv_col(word[j as usize])] as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Define::Done;
            }
            if i as isize == j {
                let col = word[i];
                self.table[f][col] = b as u32;
                self.table[b][inv_col(col)] = f as u32;
                return Define::Done;
            }
            if !fill {
                return Define::Done;
            }
            if let Define::Full = self.define(f, word[i]) {
                return Define::Full;
            }
        }
    }

    /// Scans every live coset under every relator without new definitions.
    fn lookahead(&mut self) {
        let mut c = 0;
        while c < self.table.len() {
            for r in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                let rel = std::mem::take(&mut self.relators[r]);
                self.scan(c, &rel, false);
                self.relators[r] = rel;
            }
            c += 1;
        }
    }

    /// Renumbers live cosets in increasing order. Returns the new index of `cursor`
    /// (or of the next live coset after it).
    fn compact(&mut self, cursor: usize) -> usize {
        let n = self.table.len();
        let mut new_index = vec![UNDEF; n];
        let mut next = 0u32;
        for (c, slot) in new_index.iter_mut().enumerate() {
            if self.is_live(c) {
                *slot = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize);
        for c in 0..n {
            if self.is_live(c) {
                let row =
                    self.table[c].iter().map(|&t| if t == UNDEF { UNDEF } else { new_index[t as usize] }).collect();
                table.push(row);
            }
        }
        let new_cursor = (cursor..n).find(|&c| self.is_live(c)).map_or(next as usize, |c| new_index[c] as usize);
        self.table = table;
        self.parent = (0..next).collect();
        new_cursor
    }

    fn run(mut self) -> Result<CosetTable, EnumerationError> {
        let subgroup = std::mem::take(&mut self.subgroup);
        for w in &subgroup {
            if let Define::Full = self.scan(0, w, true) {
                self.lookahead();
                self.compact(0);
                if let Define::Full = self.scan(0, w, true) {
                    return Err(EnumerationError::CosetLimitExceeded(self.limit));
                }
            }
        }
        let mut c = 0;
        'cosets: while c < self.table.len() {
            let mut r = 0;
            while r < self.relators.len() && self.is_live(c) {
                let rel = std::mem::take(&mut self.relators[r]);
                let out = self.scan(c, &rel, true);
                self.relators[r] = rel;
                if let Define::Full = out {
                    c = self.make_room(c)?;
                    continue 'cosets;
                }
                r += 1;
            }
            if self.is_live(c) {
                for col in 0..self.cols {
                    if self.table[c][col] == UNDEF {
                        if let Define::Full = self.define(c, col) {
                            c = self.make_room(c)?;
                            continue 'cosets;
                        }
                    }
                }
            }
            c += 1;
        }
        self.compact(0);
        let rows = self.table;
        debug_assert!(rows.iter().all(|r| r.iter().all(|&x| x != UNDEF)));
        Ok(CosetTable { num_generators: self.cols / 2, rows, complete: true, peak_cosets: self.peak })
    }

    fn make_room(&mut self, cursor: usize) -> Result<usize, EnumerationError> {
        self.lookahead();
        let new_cursor = self.compact(cursor);
        if self.table.len() >= self.limit {
            return Err(EnumerationError::CosetLimitExceeded(self.limit));
        }
        Ok(new_cursor)
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup_words`.
pub fn todd_coxeter(
    pres: &Presentation,
    subgroup_words: &[Word],
    limit: usize,
) -> Result<CosetTable, EnumerationError> {
    Enumerator::new(pres, subgroup_words, limit).run()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    #[test]
    fn cyclic_four() {
        let p = pres("gens: a\nrel: a a a a\n");
        let t = todd_coxeter(&p, &[], DEFAULT_COSET_LIMIT).unwrap();
        assert_eq!(t.index(), 4);
        assert!(t.complete);
        assert!(t.relators_close(&p));
    }

    #[test]
    fn s3_point_stabilizer() {
        let p = pres("gens: s t\nrel: s s\nrel: t t\nrel: s t s t s t\n");
        let s = p.parse_word("s").unwrap();
        let t = todd_coxeter(&p, &[s], DEFAULT_COSET_LIMIT).unwrap();
        assert_eq!(t.index(), 3);
        assert!(t.relators_close(&p));
        assert_eq!(todd_coxeter(&p, &[], DEFAULT_COSET_LIMIT).unwrap().index(), 6);
    }

    #[test]
    fn h1_regular() {
        let p = Presentation::h1();
        let t = todd_coxeter(&p, &[], DEFAULT_COSET_LIMIT).unwrap();
        assert_eq!(t.index(), 96);
        assert!(t.relators_close(&p));
        for g in 0..2 {
            let mut perm = t.generator_permutation(g);
            perm.sort_unstable();
            assert_eq!(perm, (0..96).collect::<Vec<u32>>());
        }
    }

    #[test]
    fn h1_subgroup_indices() {
        let p = Presentation::h1();
        let s = p.parse_word("s").unwrap();
        // <s> has order 4
        assert_eq!(todd_coxeter(&p, std::slice::from_ref(&s), DEFAULT_COSET_LIMIT).unwrap().index(), 24);
        let t = p.parse_word("t").unwrap();
        // s and t are conjugate reflections; <s, t> is everything
        assert_eq!(todd_coxeter(&p, &[s, t], DEFAULT_COSET_LIMIT).unwrap().index(), 1);
    }

    #[test]
    fn limit_is_enforced() {
        let p = Presentation::h1();
        assert_eq!(todd_coxeter(&p, &[], 40), Err(EnumerationError::CosetLimitExceeded(40)));
    }

    #[test]
    fn lookahead_recovers_space() {
        // A bound below the unconstrained peak still succeeds once lookahead frees dead cosets.
        for p in [Presentation::h1(), Presentation::quaternion(), Presentation::symmetric3()] {
            let free = todd_coxeter(&p, &[], DEFAULT_COSET_LIMIT).unwrap();
            let order = free.index();
            if free.peak_cosets == order {
                continue;
            }
            let t = todd_coxeter(&p, &[], free.peak_cosets - 1).unwrap();
            assert_eq!(t.index(), order);
            assert!(t.relators_close(&p));
            assert!(t.peak_cosets < free.peak_cosets);
        }
    }

    #[test]
    fn h1_enumeration_overshoots() {
        // keeps lookahead_recovers_space from being vacuous
        let free = todd_coxeter(&Presentation::h1(), &[], DEFAULT_COSET_LIMIT).unwrap();
        assert!(free.peak_cosets > 96);
    }

    #[test]
    fn quaternion_group() {
        let p = pres("gens: i j\nrel: i i i i\nrel: i i J J\nrel: i j i J\n");
        let t = todd_coxeter(&p, &[], DEFAULT_COSET_LIMIT).unwrap();
        assert_eq!(t.index(), 8);
    }
}
