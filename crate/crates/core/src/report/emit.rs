//! JSON, CSV and markdown renderings. JSON and CSV are byte-deterministic.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::{Alignment, Analysis, OutputFormat, VerificationSummary};
use crate::exact_algebra::BigInt;
use crate::reference_data::{letters, merged_wedderburn, Formula, DIMENSION_FORMULAS, WEDDERBURN};
use crate::tensor_centralizer::TensorReport;

fn big(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// RFC 4180 with LF record terminators.
fn csv_string(rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn ks(tensor: &[TensorReport], range: &RangeInclusive<u32>) -> Vec<u32> {
    let available = tensor.first().map_or(0, |r| r.multiplicities.len() as u32);
    range.clone().filter(|&k| k <= available).collect()
}

pub fn group_json(a: &Analysis) -> String {
    let names = a.group.generator_names();
    let classes: Vec<Value> = a
        .classes
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "class": i + 1,
                "size": c.size(),
                "element_order": c.element_order,
                "representative": a.group.word(c.representative).render(names),
            })
        })
        .collect();
    pretty(&json!({
        "presentation": a.presentation.to_string(),
        "order": a.group.order(),
        "exponent": a.group.exponent(),
        "abelian": a.group.is_abelian(),
        "peak_cosets": a.peak_cosets,
        "classes": classes,
    }))
}

pub fn subgroups_json(a: &Analysis) -> String {
    let names = a.group.generator_names();
    let subs: Vec<Value> = a
        .subgroups
        .iter()
        .enumerate()
        .map(|(id, s)| {
            json!({
                "id": id,
                "order": s.order,
                "index": s.index,
                "class_length": s.class_length,
                "core_order": s.core_order,
                "faithful": s.is_faithful_action,
                "generators": s.generator_words(&a.group).iter().map(|w| w.render(names)).collect::<Vec<_>>(),
            })
        })
        .collect();
    pretty(&json!({ "group_order": a.group.order(), "classes": subs.len(), "subgroups": subs }))
}

pub fn chartable_json(a: &Analysis) -> String {
    let t = &a.table;
    pretty(&json!({
        "group_order": t.group_order,
        "conductor": t.conductor,
        "prime": t.prime,
        "class_sizes": t.class_sizes,
        "class_orders": t.class_orders,
        "characters": t.rows.iter().map(|r| serde_json::to_value(&r.values).expect("serialize")).collect::<Vec<_>>(),
    }))
}

pub fn chartable_markdown(a: &Analysis, al: Option<&Alignment>) -> String {
    let mut out = String::from("# Character table\n\n");
    let _ = writeln!(
        out,
        "Values in Q(zeta_{}); `z{}^j` is exp(2 pi i j / {}).\n",
        a.table.conductor, a.table.conductor, a.table.conductor
    );
    out.push_str(&a.table.to_markdown());
    if let Some(al) = al {
        out.push_str("\nPublished numbering (published -> ours):\n\n");
        let _ = writeln!(out, "- classes: {}", pairs(&al.class_witness, "C"));
        let _ = writeln!(out, "- irreducibles: {}", pairs(&al.irreducible_witness, "chi"));
    }
    out
}

fn pairs(w: &[usize], p: &str) -> String {
    w.iter().enumerate().map(|(i, j)| format!("{p}{}->{p}{}", i + 1, j + 1)).collect::<Vec<_>>().join(", ")
}

pub fn permchars_json(a: &Analysis) -> String {
    let actions: Vec<Value> = a
        .actions
        .iter()
        .map(|x| {
            json!({
                "label": x.label,
                "subgroup": x.subgroup,
                "degree": x.degree,
                "fixed_points": x.theta.values,
                "multiplicities": x.decomposition.entries.iter().map(big).collect::<Vec<_>>(),
                "transitive": x.transitive,
                "multiplicity_free": x.multiplicity_free,
                "doubly_transitive": x.doubly_transitive,
            })
        })
        .collect();
    pretty(&json!({ "class_sizes": a.classes.sizes(), "actions": actions }))
}

pub fn permchars_csv(a: &Analysis) -> String {
    let mut rows = vec![std::iter::once("action".to_string())
        .chain((1..=a.classes.len()).map(|k| format!("C{k}")))
        .collect::<Vec<_>>()];
    for x in &a.actions {
        rows.push(std::iter::once(x.label.clone()).chain(x.theta.values.iter().map(u64::to_string)).collect());
    }
    csv_string(&rows)
}

fn md_row(out: &mut String, cells: impl IntoIterator<Item = String>) {
    out.push('|');
    for c in cells {
        let _ = write!(out, " {c} |");
    }
    out.push('\n');
}

fn md_header(out: &mut String, cells: Vec<String>) {
    let n = cells.len();
    md_row(out, cells);
    md_row(out, std::iter::repeat_n("---".to_string(), n));
}

pub fn fixed_points_markdown(a: &Analysis, al: Option<&Alignment>) -> String {
    let mut out = String::from("## Fixed points per class\n\n");
    let r = a.classes.len();
    md_header(&mut out, std::iter::once(String::new()).chain((1..=r).map(|k| format!("C{k}"))).collect());
    md_row(&mut out, std::iter::once("size".into()).chain(a.classes.sizes().iter().map(usize::to_string)));
    md_row(&mut out, std::iter::once("order".into()).chain(a.classes.orders().iter().map(usize::to_string)));
    for x in &a.actions {
        md_row(&mut out, std::iter::once(x.label.clone()).chain(x.theta.values.iter().map(u64::to_string)));
    }
    if let Some(al) = al {
        let _ = writeln!(out, "\nPublished class order (published -> ours): {}", pairs(&al.class_witness, "C"));
    }
    out
}

pub fn decompositions_markdown(a: &Analysis, al: Option<&Alignment>) -> String {
    let mut out = String::from("## Multiplicities of irreducibles\n\n");
    let r = a.table.len();
    md_header(&mut out, std::iter::once(String::new()).chain((1..=r).map(|i| format!("chi{i}"))).collect());
    md_row(&mut out, std::iter::once("degree".into()).chain(a.table.degrees().iter().map(i64::to_string)));
    for x in &a.actions {
        md_row(&mut out, std::iter::once(x.label.clone()).chain(x.decomposition.entries.iter().map(BigInt::to_string)));
    }
    if let Some(al) = al {
        let _ = writeln!(
            out,
            "\nPublished irreducible order (published -> ours): {}",
            pairs(&al.irreducible_witness, "chi")
        );
        if al.up_to_automorphism {
            out.push_str("\ntheta8 and theta9 are assigned up to automorphism.\n");
        }
    }
    out.push_str("\n## Predicates\n\n");
    md_header(
        &mut out,
        ["action", "degree", "faithful", "transitive", "multiplicity-free", "doubly transitive"]
            .map(String::from)
            .to_vec(),
    );
    let yn = |b: bool| if b { "yes" } else { "no" }.to_string();
    for x in &a.actions {
        md_row(
            &mut out,
            [
                x.label.clone(),
                x.degree.to_string(),
                yn(true),
                yn(x.transitive),
                yn(x.multiplicity_free),
                yn(x.doubly_transitive),
            ],
        );
    }
    out
}

pub fn permchars_markdown(a: &Analysis, al: Option<&Alignment>) -> String {
    format!("# Permutation characters\n\n{}\n{}", fixed_points_markdown(a, al), decompositions_markdown(a, al))
}

/// Dimension rows, with actions of identical dimension sequences merged (`theta8=theta9`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimTable {
    pub ks: Vec<u32>,
    pub rows: Vec<(String, Vec<BigInt>)>,
}

pub fn dim_table(a: &Analysis, tensor: &[TensorReport], range: &RangeInclusive<u32>) -> DimTable {
    let ks = ks(tensor, range);
    let mut rows: Vec<(String, Vec<BigInt>)> = Vec::new();
    for (x, report) in a.actions.iter().zip(tensor) {
        let dims: Vec<BigInt> = ks.iter().map(|&k| report.dimensions[k as usize - 1].clone()).collect();
        match rows.last_mut() {
            Some((label, prev)) if *prev == dims => {
                label.push('=');
                label.push_str(&x.label);
            }
            _ => rows.push((x.label.clone(), dims)),
        }
    }
    DimTable { ks, rows }
}

pub fn emit_dim_table(t: &DimTable, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut rows = vec![std::iter::once("action".to_string()).chain(t.ks.iter().map(u32::to_string)).collect()];
            for (label, dims) in &t.rows {
                rows.push(std::iter::once(label.clone()).chain(dims.iter().map(BigInt::to_string)).collect());
            }
            csv_string(&rows)
        }
        OutputFormat::Markdown => {
            let mut out = String::new();
            md_header(
                &mut out,
                std::iter::once("dim A^(k)".to_string()).chain(t.ks.iter().map(|k| format!("k={k}"))).collect(),
            );
            for (label, dims) in &t.rows {
                md_row(&mut out, std::iter::once(label.clone()).chain(dims.iter().map(BigInt::to_string)));
            }
            out
        }
        OutputFormat::Json => pretty(&dim_table_value(t)),
    }
}

fn dim_table_value(t: &DimTable) -> Value {
    json!({
        "k": t.ks,
        "rows": t.rows.iter().map(|(l, d)| json!({ "action": l, "dimensions": d.iter().map(big).collect::<Vec<_>>() })).collect::<Vec<_>>(),
    })
}

pub fn tensor_json(a: &Analysis, tensor: &[TensorReport], range: &RangeInclusive<u32>) -> String {
    let ks = ks(tensor, range);
    let actions: Vec<Value> = a
        .actions
        .iter()
        .zip(tensor)
        .map(|(x, r)| {
            let powers: Vec<Value> = ks
                .iter()
                .map(|&k| {
                    let s = &r.structures[k as usize - 1];
                    json!({
                        "k": k,
                        "multiplicities": r.multiplicities[k as usize - 1].entries.iter().map(big).collect::<Vec<_>>(),
                        "wedderburn": s.render_merged(),
                        "components": s.merged().iter().map(|(d, n)| json!({ "size": big(d), "count": n })).collect::<Vec<_>>(),
                        "dimension": big(&s.dimension),
                    })
                })
                .collect();
            json!({
                "label": x.label,
                "degree": x.degree,
                "transition_matrix_integral": r.transition.is_nonnegative_integral(),
                "closed_forms": r.closed_forms.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                "powers": powers,
            })
        })
        .collect();
    pretty(&json!({ "actions": actions, "dim_table": dim_table_value(&dim_table(a, tensor, range)) }))
}

pub fn closed_forms_markdown(a: &Analysis, al: Option<&Alignment>, tensor: &[TensorReport]) -> String {
    let mut out = String::from("## Closed forms of the multiplicities\n\nEach entry gives d_i^(k).\n\n");
    let r = a.table.len();
    md_header(
        &mut out,
        std::iter::once("irreducible".to_string()).chain(a.actions.iter().map(|x| x.label.clone())).collect(),
    );
    for i in 0..r {
        md_row(
            &mut out,
            std::iter::once(format!("chi{}", i + 1)).chain(tensor.iter().map(|t| format!("`{}`", t.closed_forms[i]))),
        );
    }
    if let Some(al) = al {
        out.push_str("\nPublished letters (ours -> letter):\n\n");
        for (t, &idx) in al.theta_actions.iter().enumerate() {
            let ls = letters(t);
            let mut by_row = vec!['?'; r];
            for (i, &j) in al.irreducible_witness.iter().enumerate() {
                by_row[j] = ls[i];
            }
            let _ = writeln!(out, "- {}: {}", a.actions[idx].label, by_row.iter().collect::<String>());
        }
    }
    out
}

pub fn wedderburn_markdown(
    a: &Analysis,
    al: Option<&Alignment>,
    tensor: &[TensorReport],
    range: &RangeInclusive<u32>,
) -> String {
    let mut out = String::from("## Wedderburn structure of A^(k)\n\n");
    let ks = ks(tensor, range);
    md_header(&mut out, ["action", "k", "components", "dimension"].map(String::from).to_vec());
    for (x, r) in a.actions.iter().zip(tensor) {
        for &k in &ks {
            let s = &r.structures[k as usize - 1];
            md_row(&mut out, [x.label.clone(), k.to_string(), s.render_merged(), s.dimension.to_string()]);
        }
    }
    if let Some(al) = al {
        out.push_str("\nIn published letters (merged):\n\n");
        for (t, &idx) in al.theta_actions.iter().enumerate() {
            let printed: Vec<String> = WEDDERBURN[t].iter().map(|&(n, l)| component(n, l)).collect();
            let merged: Vec<String> = merged_wedderburn(t).iter().map(|&(l, n)| component(n, l)).collect();
            let _ = writeln!(
                out,
                "- {}: printed `{}`, merged `{}`",
                a.actions[idx].label,
                printed.join(" + "),
                merged.join(" + ")
            );
        }
    }
    out
}

fn component(n: usize, l: char) -> String {
    if n == 1 {
        format!("M_{l}")
    } else {
        format!("{n}M_{l}")
    }
}

pub fn dimension_formulas_markdown(
    a: &Analysis,
    al: Option<&Alignment>,
    tensor: &[TensorReport],
    range: &RangeInclusive<u32>,
) -> String {
    let mut out = String::from("## Dimension formulas\n\n");
    let Some(al) = al else {
        out.push_str("No published formulas for this group.\n");
        return out;
    };
    let ks = ks(tensor, range);
    md_header(
        &mut out,
        std::iter::once("action".to_string())
            .chain(std::iter::once("formula".to_string()))
            .chain(ks.iter().map(|k| format!("k={k}")))
            .collect(),
    );
    for (t, &idx) in al.theta_actions.iter().enumerate() {
        let f = Formula::parse(DIMENSION_FORMULAS[t]).expect("transcribed formula parses");
        md_row(
            &mut out,
            [a.actions[idx].label.clone(), format!("`{}`", DIMENSION_FORMULAS[t])]
                .into_iter()
                .chain(ks.iter().map(|&k| f.eval(k).to_string())),
        );
    }
    out
}

pub fn tensor_markdown(
    a: &Analysis,
    al: Option<&Alignment>,
    tensor: &[TensorReport],
    range: &RangeInclusive<u32>,
) -> String {
    format!(
        "# Tensor powers\n\n{}\n{}\n{}\n## Dimension table\n\n{}",
        closed_forms_markdown(a, al, tensor),
        wedderburn_markdown(a, al, tensor, range),
        dimension_formulas_markdown(a, al, tensor, range),
        emit_dim_table(&dim_table(a, tensor, range), OutputFormat::Markdown)
    )
}

pub fn summary_json(s: &VerificationSummary) -> String {
    pretty(&json!({ "all_passed": s.all_passed(), "claims": s.claims }))
}

pub fn summary_csv(s: &VerificationSummary) -> String {
    let mut rows = vec![["claim", "anchor", "status", "detail"].map(String::from).to_vec()];
    for c in &s.claims {
        rows.push(vec![c.id.to_string(), c.anchor.to_string(), c.status.as_str().to_string(), c.detail.clone()]);
    }
    csv_string(&rows)
}

pub fn summary_markdown(s: &VerificationSummary) -> String {
    let mut out = String::from("# Verification summary\n\n");
    md_header(&mut out, ["claim", "anchor", "status", "detail"].map(String::from).to_vec());
    for c in &s.claims {
        md_row(
            &mut out,
            [c.id.to_string(), c.anchor.to_string(), c.status.as_str().to_string(), c.detail.replace('|', "\\|")],
        );
    }
    let notes: Vec<String> =
        s.claims.iter().flat_map(|c| c.notes.iter().map(move |n| format!("- {}: {}", c.id, n))).collect();
    if !notes.is_empty() {
        out.push_str("\n## Notes\n\n");
        out.push_str(&notes.join("\n"));
        out.push('\n');
    }
    let _ = writeln!(out, "\nOverall: {}", if s.all_passed() { "PASS" } else { "FAILED" });
    out
}
