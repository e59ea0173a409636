use std::sync::OnceLock;

use proptest::prelude::*;

use wlab_core::character_table::inner_product;
use wlab_core::exact_algebra::{BigInt, BigRat, CycNum};
use wlab_core::group_engine::{FinGroup, Presentation, DEFAULT_COSET_LIMIT};
use wlab_core::perm_characters::{decompose, decompose_class_function, permutation_character, PermChar};
use wlab_core::reference_data::Formula;
use wlab_core::report::{align, Analysis};
use wlab_core::subgroup_lattice::coset_action;
use wlab_core::tensor_centralizer::{
    closed_forms, dim_spectral, evaluate_closed_forms, multiplicities_by_inner_product, ClosedForm, TensorReport,
};

struct H1 {
    a: Analysis,
    tensor: Vec<TensorReport>,
}

fn h1() -> &'static H1 {
    static CELL: OnceLock<H1> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut a = Analysis::build(Presentation::h1(), DEFAULT_COSET_LIMIT).unwrap();
        let al = align(&a).unwrap();
        a.apply_alignment(&al);
        let tensor = a.tensor(8).unwrap();
        H1 { a, tensor }
    })
}

fn cyc(conductor: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec((0i64..conductor as i64, -5i64..=5), 0..4).prop_map(move |terms| {
        terms.into_iter().fold(CycNum::zero(conductor), |acc, (j, c)| {
            &acc + &(CycNum::zeta_pow(conductor, j) * CycNum::from_int(conductor, c))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms(a in cyc(24), b in cyc(24), c in cyc(24)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), CycNum::one(24));
        }
    }

    #[test]
    fn closed_form_merging_is_additive(terms in prop::collection::vec((1u64..50, -20i64..20, 1i64..6), 0..6), k in 1u32..10) {
        let direct: BigRat = terms
            .iter()
            .map(|&(v, n, d)| BigRat::new(n.into(), d.into()) * BigRat::from_integer(BigInt::from(v).pow(k - 1)))
            .sum();
        let form = ClosedForm::new(terms.iter().map(|&(v, n, d)| (v, BigRat::new(n.into(), d.into()))));
        prop_assert_eq!(form.eval(k), direct);
        prop_assert!(form.terms.values().all(|c| c != &BigRat::from_integer(0.into())));
    }

    #[test]
    fn printed_formula_shapes_evaluate(n in 1i64..9, base in 2u64..40, mult in 1u32..3, offset in -1i32..=1, d in 1i64..13, k in 1u32..8) {
        let exp = match offset {
            0 => if mult == 1 { "k".to_string() } else { format!("{mult}k") },
            o if o > 0 => format!("{mult}k+{o}"),
            o => format!("{mult}k-{}", -o),
        };
        let exp = exp.replace("1k", "k");
        let text = format!("{n}*{base}^({exp})/{d}");
        let f = Formula::parse(&text).unwrap();
        let power = (mult * k) as i32 + offset;
        prop_assume!(power >= 0);
        let want = BigRat::new(BigInt::from(n) * BigInt::from(base).pow(power as u32), d.into());
        prop_assert_eq!(f.eval(k), want);
    }

    #[test]
    fn h1_recurrence_matches_inner_products(action in 0usize..5, k in 1u32..=8) {
        let h = h1();
        let a = &h.a;
        let theta = &a.actions[action].theta;
        let oracle = multiplicities_by_inner_product(theta, k, &a.table, &a.classes).unwrap();
        prop_assert_eq!(&h.tensor[action].multiplicities[k as usize - 1], &oracle);
        let forms = evaluate_closed_forms(&h.tensor[action].closed_forms, k).unwrap();
        prop_assert_eq!(&forms, &oracle);
    }

    #[test]
    fn h1_degree_bookkeeping(action in 0usize..5, k in 1u32..=8) {
        let h = h1();
        let a = &h.a;
        let d = &h.tensor[action].multiplicities[k as usize - 1];
        prop_assert_eq!(d.degree(&a.table), BigInt::from(a.actions[action].degree).pow(k));
        prop_assert!(d.entries.iter().all(|m| m >= &BigInt::from(0)));
        prop_assert_eq!(d.square_sum(), dim_spectral(&a.actions[action].theta, k, &a.classes));
    }

    #[test]
    fn h1_degree_24_actions_share_dimensions(k in 1u32..=8) {
        let h = h1();
        let idx: Vec<usize> = h.a.actions.iter().enumerate().filter(|(_, x)| x.degree == 24).map(|(i, _)| i).collect();
        prop_assert_eq!(idx.len(), 2);
        let dims: Vec<&BigInt> = idx.iter().map(|&i| &h.tensor[i].dimensions[k as usize - 1]).collect();
        prop_assert_eq!(dims[0], dims[1]);
        let mut m0 = h.tensor[idx[0]].multiplicities[k as usize - 1].entries.clone();
        let mut m1 = h.tensor[idx[1]].multiplicities[k as usize - 1].entries.clone();
        m0.sort();
        m1.sort();
        prop_assert_eq!(m0, m1);
    }

    #[test]
    fn h1_sums_of_actions_decompose_linearly(picks in prop::collection::vec(0usize..24, 1..4)) {
        let h = h1();
        let a = &h.a;
        let thetas: Vec<PermChar> = picks
            .iter()
            .map(|&s| permutation_character(&coset_action(&a.group, &a.subgroups[s]), &a.group, &a.classes))
            .collect();
        let sum = PermChar {
            values: (0..a.classes.len()).map(|c| thetas.iter().map(|t| t.values[c]).sum()).collect(),
            source: "sum".into(),
        };
        prop_assert_eq!(sum.burnside_orbits(&a.classes), Some(picks.len() as u64));
        let whole = decompose(&sum, &a.table, &a.classes).unwrap();
        let parts: Vec<_> = thetas.iter().map(|t| decompose(t, &a.table, &a.classes).unwrap()).collect();
        for i in 0..a.table.len() {
            let s: BigInt = parts.iter().map(|p| p.entries[i].clone()).sum();
            prop_assert_eq!(&whole.entries[i], &s);
        }
        prop_assert_eq!(whole.character(&a.table), sum.to_class_function(a.table.conductor));
    }

    #[test]
    fn h1_products_of_irreducibles_are_characters(i in 0usize..16, j in 0usize..16) {
        let a = &h1().a;
        let prod = a.table.rows[i].product(&a.table.rows[j]);
        let m = decompose_class_function(&prod, &a.table, &a.classes).unwrap();
        prop_assert!(m.entries.iter().all(|e| e >= &BigInt::from(0)));
        let deg = a.table.rows[i].degree() * a.table.rows[j].degree();
        prop_assert_eq!(m.degree(&a.table), BigInt::from(deg));
        let self_ip = inner_product(&prod, &prod, &a.classes);
        prop_assert_eq!(self_ip, CycNum::from_bigint(a.table.conductor, m.square_sum()));
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cyclic_groups_have_abelian_tables(n in 1usize..=16) {
        let g = FinGroup::from_presentation(&Presentation::cyclic(n), DEFAULT_COSET_LIMIT).unwrap();
        prop_assert_eq!(g.order(), n);
        let a = Analysis::build(Presentation::cyclic(n), DEFAULT_COSET_LIMIT).unwrap();
        prop_assert_eq!(a.classes.len(), n);
        prop_assert!(a.table.degrees().iter().all(|&d| d == 1));
        // the regular action: theta^k = n^(k-1) theta, so every closed form is n^(k-1)
        let regular = a.actions.iter().find(|x| x.degree == n).unwrap();
        for f in closed_forms(&regular.theta, &a.table, &a.classes).unwrap() {
            prop_assert_eq!(f, ClosedForm::new([(n as u64, BigRat::from_integer(1.into()))]));
        }
    }
}
