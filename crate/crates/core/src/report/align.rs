//! Matching our class, character and action numbering to the published one by invariants.

use num_traits::ToPrimitive;
use serde::Serialize;

use super::Analysis;
use crate::reference_data::{
    formula_for, letters, Formula, CLASS_COUNT, DECOMPOSITIONS, FIXED_POINTS, GROUP_ORDER, THETA_LABELS,
};
use crate::tensor_centralizer::{closed_forms, ClosedForm};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Alignment {
    pub labels: [&'static str; 5],
    /// Index into `Analysis::actions` for each label.
    pub theta_actions: [usize; 5],
    /// Both assignments of the two degree-24 actions fit the published data.
    pub up_to_automorphism: bool,
    /// Published class `i` (0-based) is our class `class_witness[i]`.
    pub class_witness: Vec<usize>,
    /// Published irreducible `i` (0-based) is our table row `irreducible_witness[i]`.
    pub irreducible_witness: Vec<usize>,
}

/// Greedy bijection between equal keys, preferring pairs accepted by `prefer`.
fn match_keys<K: PartialEq>(published: &[K], ours: &[K], prefer: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    if published.len() != ours.len() {
        return None;
    }
    let mut used = vec![false; ours.len()];
    let mut out = Vec::with_capacity(published.len());
    for (i, key) in published.iter().enumerate() {
        let candidates: Vec<usize> = (0..ours.len()).filter(|&j| !used[j] && &ours[j] == key).collect();
        let j = candidates.iter().copied().find(|&j| prefer(i, j)).or_else(|| candidates.first().copied())?;
        used[j] = true;
        out.push(j);
    }
    Some(out)
}

/// Published closed form of irreducible `i` under action `t`, using the corrected reading where one exists.
pub(super) fn published_form(t: usize, i: usize) -> Option<ClosedForm> {
    let f = formula_for(t, letters(t)[i])?;
    Formula::parse(f.correction.unwrap_or(f.printed)).ok()?.to_closed_form()
}

fn try_assignment(a: &Analysis, order: [usize; 5], ours_forms: &[Vec<ClosedForm>]) -> Option<(Vec<usize>, Vec<usize>)> {
    let classes = a.classes.len();
    let published_cols: Vec<Vec<u64>> =
        (0..CLASS_COUNT).map(|j| FIXED_POINTS.iter().map(|row| row[j]).collect()).collect();
    let our_cols: Vec<Vec<u64>> =
        (0..classes).map(|j| order.iter().map(|&t| a.actions[t].theta.values[j]).collect()).collect();
    let class_witness = match_keys(&published_cols, &our_cols, |_, _| true)?;

    let published_rows: Vec<Vec<u64>> =
        (0..CLASS_COUNT).map(|i| DECOMPOSITIONS.iter().map(|row| row[i] as u64).collect()).collect();
    let our_rows: Vec<Vec<u64>> = (0..a.table.len())
        .map(|i| order.iter().map(|&t| a.actions[t].decomposition.entries[i].to_u64().unwrap_or(u64::MAX)).collect())
        .collect();
    let published_forms: Vec<Vec<Option<ClosedForm>>> =
        (0..5).map(|t| (0..CLASS_COUNT).map(|i| published_form(t, i)).collect()).collect();
    let prefer = |i: usize, j: usize| (0..5).all(|t| published_forms[t][i].as_ref() == Some(&ours_forms[order[t]][j]));
    let irreducible_witness = match_keys(&published_rows, &our_rows, prefer)?;
    Some((class_witness, irreducible_witness))
}

pub fn align(a: &Analysis) -> Result<Alignment, String> {
    if a.group.order() != GROUP_ORDER || a.classes.len() != CLASS_COUNT || a.table.len() != CLASS_COUNT {
        return Err(format!("group of order {} with {} classes is not H1", a.group.order(), a.classes.len()));
    }
    let degrees: Vec<usize> = a.actions.iter().map(|x| x.degree).collect();
    if degrees != [96, 48, 32, 24, 24] {
        return Err(format!("faithful action degrees {degrees:?}"));
    }
    let forms: Vec<Vec<ClosedForm>> = a
        .actions
        .iter()
        .map(|x| closed_forms(&x.theta, &a.table, &a.classes).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let first = try_assignment(a, [0, 1, 2, 3, 4], &forms);
    let second = try_assignment(a, [0, 1, 2, 4, 3], &forms);
    let (theta_actions, (class_witness, irreducible_witness)) = match (&first, &second) {
        (Some(w), _) => ([0, 1, 2, 3, 4], w.clone()),
        (None, Some(w)) => ([0, 1, 2, 4, 3], w.clone()),
        (None, None) => return Err("no assignment of the degree-24 actions fits the published data".into()),
    };
    Ok(Alignment {
        labels: THETA_LABELS,
        theta_actions,
        up_to_automorphism: first.is_some() && second.is_some(),
        class_witness,
        irreducible_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_engine::{Presentation, DEFAULT_COSET_LIMIT};

    #[test]
    fn h1_aligns() {
        let a = Analysis::build(Presentation::h1(), DEFAULT_COSET_LIMIT).unwrap();
        let al = align(&a).unwrap();
        assert_eq!(al.class_witness[0], 0);
        assert_eq!(al.irreducible_witness[0], 0);
        let mut c = al.class_witness.clone();
        c.sort_unstable();
        assert_eq!(c, (0..16).collect::<Vec<_>>());
        let mut r = al.irreducible_witness.clone();
        r.sort_unstable();
        assert_eq!(r, (0..16).collect::<Vec<_>>());
    }

    #[test]
    fn other_groups_do_not_align() {
        let a = Analysis::build(Presentation::symmetric3(), DEFAULT_COSET_LIMIT).unwrap();
        assert!(align(&a).is_err());
    }
}
