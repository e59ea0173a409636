//! Hand-checkable groups run through the whole pipeline.

use std::collections::BTreeSet;

use num_traits::{ToPrimitive, Zero};

use super::Analysis;
use crate::character_table::CharTable;
use crate::exact_algebra::{BigInt, CycNum};
use crate::group_engine::{FinGroup, Presentation, DEFAULT_COSET_LIMIT};
use crate::perm_characters::{decompose, permutation_character};
use crate::subgroup_lattice::coset_action;

#[derive(Clone, Copy, Debug)]
pub enum KnownTable {
    Cyclic(usize),
    Symmetric3,
    Quaternion,
}

#[derive(Clone, Copy, Debug)]
pub struct SmallGroupCase {
    pub name: &'static str,
    pub presentation: fn() -> Presentation,
    pub order: usize,
    /// Subgroups up to conjugacy, counted by hand.
    pub subgroup_classes: usize,
    pub table: KnownTable,
}

macro_rules! cyclic {
    ($name:literal, $n:literal, $subs:literal) => {
        SmallGroupCase {
            name: $name,
            presentation: || Presentation::cyclic($n),
            order: $n,
            subgroup_classes: $subs,
            table: KnownTable::Cyclic($n),
        }
    };
}

pub const SMALL_GROUP_CASES: [SmallGroupCase; 10] = [
    SmallGroupCase {
        name: "S3",
        presentation: Presentation::symmetric3,
        order: 6,
        subgroup_classes: 4,
        table: KnownTable::Symmetric3,
    },
    cyclic!("C1", 1, 1),
    cyclic!("C2", 2, 2),
    cyclic!("C3", 3, 2),
    cyclic!("C4", 4, 3),
    cyclic!("C5", 5, 2),
    cyclic!("C6", 6, 4),
    cyclic!("C7", 7, 2),
    cyclic!("C8", 8, 4),
    SmallGroupCase {
        name: "Q8",
        presentation: Presentation::quaternion,
        order: 8,
        subgroup_classes: 6,
        table: KnownTable::Quaternion,
    },
];

/// Subgroups up to conjugacy by testing every subset for closure. Only for order <= 16.
pub fn brute_force_subgroup_classes(g: &FinGroup) -> usize {
    let n = g.order();
    assert!(n <= 16, "brute force is exponential in the order");
    let members = |mask: u32| (0..n).filter(move |&i| mask >> i & 1 == 1);
    let conjugate_mask = |mask: u32, x: usize| members(mask).fold(0u32, |m, h| m | 1 << g.conjugate(h, x));
    let mut classes = BTreeSet::new();
    for mask in (0u32..1 << n).filter(|m| m & 1 == 1) {
        let closed = members(mask).all(|a| members(mask).all(|b| mask >> g.mul(a, b) & 1 == 1));
        if closed {
            classes.insert(g.elements().map(|x| conjugate_mask(mask, x)).min().expect("nonempty group"));
        }
    }
    classes.len()
}

fn int_rows(t: &CharTable) -> Option<Vec<Vec<i64>>> {
    t.rows.iter().map(|r| r.values.iter().map(|v| v.to_integer()?.to_i64()).collect()).collect()
}

fn check_table(a: &Analysis, known: KnownTable) -> Result<(), String> {
    let t = &a.table;
    let c = &a.classes;
    match known {
        KnownTable::Cyclic(n) => {
            // every character is a homomorphism determined by its value at the generator,
            // and the values at the generator run over all n-th roots of unity
            let gen = a.group.generators().first().copied().unwrap_or(0);
            let mut seen = BTreeSet::new();
            for row in &t.rows {
                let z = &row.values[c.class_of[gen]];
                for j in 0..n {
                    if row.values[c.class_of[a.group.pow(gen, j as i64)]] != z.pow(j as u32) {
                        return Err(format!("C{n}: a character is not a homomorphism"));
                    }
                }
                let exp = (0..n).find(|&e| *z == CycNum::zeta_pow(n.max(1) as u32, e as i64));
                seen.insert(exp.ok_or(format!("C{n}: value {z} is not an n-th root of unity"))?);
            }
            if seen.len() != n {
                return Err(format!("C{n}: {} distinct characters", seen.len()));
            }
        }
        KnownTable::Symmetric3 => {
            let rows = int_rows(t).ok_or("S3 table is not integral")?;
            if c.sizes() != [1, 3, 2] || rows != [vec![1, 1, 1], vec![1, -1, 1], vec![2, 0, -1]] {
                return Err(format!("S3 table {rows:?} on class sizes {:?}", c.sizes()));
            }
        }
        KnownTable::Quaternion => {
            let rows = int_rows(t).ok_or("Q8 table is not integral")?;
            let central: Vec<usize> = (1..c.len()).filter(|&k| c.classes[k].size() == 1).collect();
            let [z] = central[..] else { return Err(format!("Q8 has {} central involutions", central.len())) };
            let others: Vec<usize> = (1..c.len()).filter(|&k| k != z).collect();
            let linear: BTreeSet<Vec<i64>> = rows
                .iter()
                .filter(|r| r[0] == 1 && r[z] == 1)
                .map(|r| others.iter().map(|&k| r[k]).collect())
                .collect();
            let expected: BTreeSet<Vec<i64>> =
                [vec![1, 1, 1], vec![1, -1, -1], vec![-1, 1, -1], vec![-1, -1, 1]].into_iter().collect();
            let two = rows.iter().filter(|r| r[0] == 2 && r[z] == -2 && others.iter().all(|&k| r[k] == 0)).count();
            if rows.len() != 5 || linear != expected || two != 1 {
                return Err(format!("Q8 table {rows:?}"));
            }
        }
    }
    Ok(())
}

/// Full pipeline on one small group; `Err` describes the first discrepancy.
pub fn check_small_group(case: &SmallGroupCase) -> Result<(), String> {
    let a = Analysis::build((case.presentation)(), DEFAULT_COSET_LIMIT).map_err(|e| format!("{}: {e}", case.name))?;
    let fail = |msg: String| Err(format!("{}: {msg}", case.name));
    if a.group.order() != case.order {
        return fail(format!("order {} instead of {}", a.group.order(), case.order));
    }
    let brute = brute_force_subgroup_classes(&a.group);
    if brute != case.subgroup_classes || a.subgroups.len() != brute {
        return fail(format!(
            "subgroup classes: enumerated {}, brute force {brute}, expected {}",
            a.subgroups.len(),
            case.subgroup_classes
        ));
    }
    check_table(&a, case.table).map_err(|e| format!("{}: {e}", case.name))?;
    for (id, s) in a.subgroups.iter().enumerate() {
        let theta = permutation_character(&coset_action(&a.group, s), &a.group, &a.classes);
        if theta.burnside_orbits(&a.classes) != Some(1) {
            return fail(format!("Burnside count for subgroup {id}"));
        }
        let m = decompose(&theta, &a.table, &a.classes).map_err(|e| format!("{}: {e}", case.name))?;
        if m.entries.first().cloned() != Some(BigInt::from(1)) {
            return fail(format!("trivial constituent of subgroup {id}"));
        }
    }
    let tensor = a.tensor(4).map_err(|e| format!("{}: {e}", case.name))?;
    for (action, report) in a.actions.iter().zip(&tensor) {
        for (k, d) in report.multiplicities.iter().enumerate() {
            if d.degree(&a.table) != BigInt::from(action.degree).pow(k as u32 + 1) {
                return fail(format!("degree bookkeeping for {} at k = {}", action.label, k + 1));
            }
            if d.entries.iter().any(|m| m < &BigInt::zero()) {
                return fail(format!("negative multiplicity for {}", action.label));
            }
        }
    }
    Ok(())
}
