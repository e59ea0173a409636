//! Subgroups up to conjugacy, cores, and transitive coset actions.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::group_engine::{CosetTable, FinGroup, Word};

pub const DEFAULT_SUBGROUP_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubgroupError {
    #[error("group order {order} exceeds the subgroup enumeration cap {cap}")]
    CapExceeded { order: usize, cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupRecord {
    /// Position in the enumeration output; `None` for subgroups built outside it (e.g. cores).
    pub class_id: Option<usize>,
    pub members: Vec<usize>,
    pub order: usize,
    pub index: usize,
    /// Number of distinct conjugates.
    pub class_length: usize,
    pub core_order: usize,
    pub is_faithful_action: bool,
    /// Element indices generating the subgroup.
    pub generators: Vec<usize>,
}

impl SubgroupRecord {
    fn new(g: &FinGroup, members: Vec<usize>, generators: Vec<usize>) -> Self {
        let core = core_members(g, &members);
        let order = members.len();
        SubgroupRecord {
            class_id: None,
            order,
            index: g.order() / order,
            class_length: conjugates(g, &members).len(),
            core_order: core.len(),
            is_faithful_action: core.len() == 1,
            members,
            generators,
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_normal(&self) -> bool {
        self.class_length == 1
    }

    pub fn generator_words<'a>(&self, g: &'a FinGroup) -> Vec<&'a Word> {
        self.generators.iter().map(|&x| g.word(x)).collect()
    }
}

/// The subgroup `members`, closed under multiplication, as a full record.
pub fn subgroup_from_generators(g: &FinGroup, generators: &[usize]) -> SubgroupRecord {
    SubgroupRecord::new(g, g.closure(generators), generators.to_vec())
}

fn conjugate_set(g: &FinGroup, members: &[usize], by: usize) -> Vec<usize> {
    let mut c: Vec<usize> = members.iter().map(|&x| g.conjugate(x, by)).collect();
    c.sort_unstable();
    c
}

fn conjugates(g: &FinGroup, members: &[usize]) -> HashSet<Vec<usize>> {
    g.elements().map(|h| conjugate_set(g, members, h)).collect()
}

/// Lexicographically least conjugate; equal for conjugate subgroups.
fn canonical_key(g: &FinGroup, members: &[usize]) -> Vec<usize> {
    g.elements().map(|h| conjugate_set(g, members, h)).min().expect("nonempty group")
}

fn core_members(g: &FinGroup, members: &[usize]) -> Vec<usize> {
    let mut keep = vec![0u32; g.order()];
    for h in g.elements() {
        for x in conjugate_set(g, members, h) {
            keep[x] += 1;
        }
    }
    let n = g.order() as u32;
    g.elements().filter(|&x| keep[x] == n).collect()
}

/// One representative per conjugacy class of subgroups.
///
/// Starts from the cyclic subgroups and repeatedly extends each representative by
/// every element, closing and deduplicating by conjugacy, until nothing new appears.
/// Sorted by (order, core order, class length, least conjugate).
pub fn enumerate_subgroups(g: &FinGroup, cap: usize) -> Result<Vec<SubgroupRecord>, SubgroupError> {
    if g.order() > cap {
        return Err(SubgroupError::CapExceeded { order: g.order(), cap });
    }
    let mut reps: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut keys: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();

    let mut offer = |members: Vec<usize>, gens: Vec<usize>, reps: &mut Vec<(Vec<usize>, Vec<usize>)>| {
        if !seen.insert(members.clone()) {
            return;
        }
        let key = canonical_key(g, &members);
        if keys.insert(key) {
            reps.push((members, gens));
        }
    };

    for x in g.elements() {
        let gens = if x == g.identity() { vec![] } else { vec![x] };
        offer(g.closure(&gens), gens, &mut reps);
    }
    let mut i = 0;
    while i < reps.len() {
        let (members, gens) = reps[i].clone();
        let mut inside = vec![false; g.order()];
        for &m in &members {
            inside[m] = true;
        }
        for x in g.elements().filter(|&x| !inside[x]) {
            let mut ext = gens.clone();
            ext.push(x);
            offer(g.closure(&ext), ext, &mut reps);
        }
        i += 1;
    }

    let mut records: Vec<(Vec<usize>, SubgroupRecord)> = reps
        .into_iter()
        .map(|(members, gens)| {
            let key = canonical_key(g, &members);
            (key, SubgroupRecord::new(g, members, gens))
        })
        .collect();
    records.sort_by(|(ka, a), (kb, b)| {
        (a.order, a.core_order, a.class_length, ka).cmp(&(b.order, b.core_order, b.class_length, kb))
    });
    Ok(records
        .into_iter()
        .enumerate()
        .map(|(id, (_, mut r))| {
            r.class_id = Some(id);
            r
        })
        .collect())
}

/// Largest normal subgroup of `g` contained in `h`.
pub fn core_of(g: &FinGroup, h: &SubgroupRecord) -> SubgroupRecord {
    let members = core_members(g, &h.members);
    let generators = members.iter().copied().filter(|&x| x != g.identity()).collect();
    SubgroupRecord::new(g, members, generators)
}

/// A permutation action, given by the images of the group generators. Actions built
/// from cosets are transitive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetAction {
    pub label: String,
    pub degree: usize,
    pub generator_images: Vec<Vec<u32>>,
}

impl CosetAction {
    /// From a complete coset table (e.g. enumerated over subgroup words).
    pub fn from_table(table: &CosetTable, label: impl Into<String>) -> Self {
        CosetAction {
            label: label.into(),
            degree: table.index(),
            generator_images: (0..table.num_generators).map(|gen| table.generator_permutation(gen)).collect(),
        }
    }

    /// Image of a word in the generators, as a permutation of points.
    pub fn word_image(&self, word: &Word) -> Vec<u32> {
        let mut perm: Vec<u32> = (0..self.degree as u32).collect();
        for l in &word.0 {
            let gp = &self.generator_images[l.gen];
            if l.inverse {
                let mut inv = vec![0u32; self.degree];
                for (a, &b) in gp.iter().enumerate() {
                    inv[b as usize] = a as u32;
                }
                perm.iter_mut().for_each(|p| *p = inv[*p as usize]);
            } else {
                perm.iter_mut().for_each(|p| *p = gp[*p as usize]);
            }
        }
        perm
    }

    /// Disjoint union of two actions of the same group (points of `other` shifted up).
    pub fn disjoint_union(&self, other: &CosetAction) -> CosetAction {
        assert_eq!(self.generator_images.len(), other.generator_images.len());
        let shift = self.degree as u32;
        let generator_images = self
            .generator_images
            .iter()
            .zip(&other.generator_images)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|x| x + shift)).collect())
            .collect();
        CosetAction {
            label: format!("{}+{}", self.label, other.label),
            degree: self.degree + other.degree,
            generator_images,
        }
    }

    pub fn element_image(&self, g: &FinGroup, x: usize) -> Vec<u32> {
        self.word_image(g.word(x))
    }

    pub fn fixed_points(&self, g: &FinGroup, x: usize) -> usize {
        self.element_image(g, x).iter().enumerate().filter(|(a, &b)| *a == b as usize).count()
    }

    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.degree];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(a) = stack.pop() {
            for gp in &self.generator_images {
                let b = gp[a] as usize;
                if !seen[b] {
                    seen[b] = true;
                    count += 1;
                    stack.push(b);
                }
            }
        }
        count == self.degree
    }

    /// Elements acting trivially.
    pub fn kernel(&self, g: &FinGroup) -> Vec<usize> {
        g.elements().filter(|&x| self.fixed_points(g, x) == self.degree).collect()
    }
}

/// Right action of `g` on the right cosets `Hx`, numbered by least element index
/// (coset 0 is `H` itself).
pub fn coset_action(g: &FinGroup, h: &SubgroupRecord) -> CosetAction {
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &m in &h.members {
            coset_of[g.mul(m, x)] = id;
        }
    }
    let generator_images =
        g.generators().iter().map(|&s| reps.iter().map(|&r| coset_of[g.mul(r, s)] as u32).collect()).collect();
    let label = match h.class_id {
        Some(id) => format!("H{id}"),
        None => format!("H[{}]", h.order),
    };
    CosetAction { label, degree: reps.len(), generator_images }
}
