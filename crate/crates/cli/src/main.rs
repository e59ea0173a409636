use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use wlab_core::group_engine::{Presentation, DEFAULT_COSET_LIMIT};
use wlab_core::report::{
    align, chartable_json, chartable_markdown, closed_forms_markdown, decompositions_markdown, dim_table,
    dimension_formulas_markdown, emit_dim_table, fixed_points_markdown, group_json, parse_k_range, permchars_csv,
    permchars_json, permchars_markdown, run_pipeline, subgroups_json, summary_csv, summary_json, summary_markdown,
    tensor_json, tensor_markdown, wedderburn_markdown, Alignment, Analysis, OutputFormat, ReportTarget, RunConfig,
};

#[derive(Parser)]
#[command(name = "wlab", version, about = "Character tables, permutation characters and tensor-power centralizers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group construction from a presentation
    #[command(subcommand)]
    Group(GroupCommand),
    /// Subgroups up to conjugacy, with cores and generators
    Subgroups(Common),
    /// Irreducible character table
    Chartable(Common),
    /// Permutation characters of the faithful transitive actions and their decompositions
    Permchars(Common),
    /// Multiplicities, Wedderburn structure and dimension of the tensor-power centralizers
    Tensor(TensorArgs),
    /// Run the whole pipeline and check every published claim
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Enumerate the group and its conjugacy classes
    Build(Common),
}

#[derive(Args, Clone)]
struct Common {
    /// Presentation file (`gens:` / `rel:` lines); defaults to the bundled H1
    #[arg(long, value_name = "FILE")]
    presentation: Option<PathBuf>,
    /// Maximum number of cosets during enumeration
    #[arg(long, env = "WLAB_COSET_LIMIT", default_value_t = DEFAULT_COSET_LIMIT)]
    coset_limit: usize,
    #[arg(long, value_name = "OUT")]
    json: Option<PathBuf>,
    #[arg(long, value_name = "OUT")]
    csv: Option<PathBuf>,
    #[arg(long, value_name = "OUT")]
    markdown: Option<PathBuf>,
}

#[derive(Args)]
struct TensorArgs {
    #[command(flatten)]
    common: Common,
    /// `all`, or a comma-separated list of action labels (theta1, theta8, H5, ...)
    #[arg(long, default_value = "all")]
    theta: String,
    /// Tensor powers, `N` or `A..B` (inclusive, within 1..16)
    #[arg(long, default_value = "1..4")]
    k: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "1..4")]
    k: String,
    /// Sections of the markdown report
    #[arg(long, value_delimiter = ',', default_value = "all")]
    targets: Vec<Target>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Target {
    FixedPoints,
    Decompositions,
    Wedderburn,
    DimensionFormulas,
    DimTable,
    All,
}

impl From<Target> for ReportTarget {
    fn from(t: Target) -> Self {
        match t {
            Target::FixedPoints => ReportTarget::FixedPoints,
            Target::Decompositions => ReportTarget::Decompositions,
            Target::Wedderburn => ReportTarget::Wedderburn,
            Target::DimensionFormulas => ReportTarget::DimensionFormulas,
            Target::DimTable => ReportTarget::DimTable,
            Target::All => ReportTarget::All,
        }
    }
}

/// Files to write once everything has been computed; stdout gets `fallback` if none were requested.
struct Outputs {
    files: Vec<(PathBuf, String)>,
    fallback: Option<String>,
}

impl Outputs {
    fn new() -> Self {
        Outputs { files: Vec::new(), fallback: None }
    }

    fn add(&mut self, path: &Option<PathBuf>, render: impl FnOnce() -> String) {
        if let Some(p) = path {
            self.files.push((p.clone(), render()));
        }
    }

    fn flush(self) -> Result<()> {
        if self.files.is_empty() {
            if let Some(s) = self.fallback {
                print!("{s}");
            }
        }
        for (path, contents) in self.files {
            fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }
}

fn load(common: &Common) -> Result<Presentation> {
    let cfg = RunConfig { presentation: common.presentation.clone(), ..RunConfig::default() };
    Ok(cfg.load_presentation()?)
}

fn analyze(common: &Common) -> Result<(Analysis, Option<Alignment>)> {
    let pres = load(common)?;
    let mut a = Analysis::build(pres, common.coset_limit)?;
    let al = align(&a).ok();
    if let Some(al) = &al {
        a.apply_alignment(al);
    }
    Ok((a, al))
}

fn formats(common: &Common) -> Vec<OutputFormat> {
    let mut f = Vec::new();
    if common.json.is_some() {
        f.push(OutputFormat::Json);
    }
    if common.csv.is_some() {
        f.push(OutputFormat::Csv);
    }
    if common.markdown.is_some() {
        f.push(OutputFormat::Markdown);
    }
    if f.is_empty() {
        f.push(OutputFormat::Json);
    }
    f
}

fn reject_csv(common: &Common, what: &str) -> Result<()> {
    if common.csv.is_some() {
        bail!("{what} has no CSV output");
    }
    Ok(())
}

fn group_build(c: &Common) -> Result<ExitCode> {
    reject_csv(c, "group build")?;
    let (a, _) = analyze(c)?;
    let mut out = Outputs::new();
    out.add(&c.json, || group_json(&a));
    out.add(&c.markdown, || {
        let mut s = format!(
            "# Group\n\norder {}, exponent {}, {} classes\n\n",
            a.group.order(),
            a.group.exponent(),
            a.classes.len()
        );
        s.push_str("| class | size | order |\n|---|---|---|\n");
        for (i, k) in a.classes.classes.iter().enumerate() {
            s.push_str(&format!("| C{} | {} | {} |\n", i + 1, k.size(), k.element_order));
        }
        s
    });
    out.fallback = Some(group_json(&a));
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn subgroups(c: &Common) -> Result<ExitCode> {
    reject_csv(c, "subgroups")?;
    let (a, _) = analyze(c)?;
    let mut out = Outputs::new();
    out.add(&c.json, || subgroups_json(&a));
    out.add(&c.markdown, || {
        let mut s = String::from("# Subgroups up to conjugacy\n\n| id | order | index | conjugates | core | faithful |\n|---|---|---|---|---|---|\n");
        for (id, h) in a.subgroups.iter().enumerate() {
            s.push_str(&format!(
                "| {id} | {} | {} | {} | {} | {} |\n",
                h.order,
                h.index,
                h.class_length,
                h.core_order,
                if h.is_faithful_action { "yes" } else { "no" }
            ));
        }
        s
    });
    out.fallback = Some(subgroups_json(&a));
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn chartable(c: &Common) -> Result<ExitCode> {
    reject_csv(c, "chartable")?;
    let (a, al) = analyze(c)?;
    let mut out = Outputs::new();
    out.add(&c.json, || chartable_json(&a));
    out.add(&c.markdown, || chartable_markdown(&a, al.as_ref()));
    out.fallback = Some(chartable_markdown(&a, al.as_ref()));
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn permchars(c: &Common) -> Result<ExitCode> {
    let (a, al) = analyze(c)?;
    let mut out = Outputs::new();
    out.add(&c.json, || permchars_json(&a));
    out.add(&c.csv, || permchars_csv(&a));
    out.add(&c.markdown, || permchars_markdown(&a, al.as_ref()));
    out.fallback = Some(permchars_markdown(&a, al.as_ref()));
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn select_actions(a: &mut Analysis, wanted: &str) -> Result<Vec<usize>> {
    if wanted.trim() == "all" {
        return Ok((0..a.actions.len()).collect());
    }
    wanted.split(',')
        .map(|label| {
            let label = label.trim();
            a.actions
                .iter()
                .position(|x| x.label == label)
                .with_context(|| format!("no faithful action labelled {label:?}"))
        })
        .collect()
}

fn tensor(t: &TensorArgs) -> Result<ExitCode> {
    let c = &t.common;
    let range = parse_k_range(&t.k)?;
    let pres = load(c)?;
    let mut a = Analysis::build(pres, c.coset_limit)?;
    let al = align(&a).ok();
    if let Some(al) = &al {
        a.apply_alignment(al);
    }
    let keep = select_actions(&mut a, &t.theta)?;
    // alignment indices refer to the unfiltered action list
    let al = if keep.len() == a.actions.len() { al } else { None };
    a.actions = keep.iter().map(|&i| a.actions[i].clone()).collect();
    let reports = a.tensor(*range.end())?;
    let mut out = Outputs::new();
    out.add(&c.json, || tensor_json(&a, &reports, &range));
    out.add(&c.csv, || emit_dim_table(&dim_table(&a, &reports, &range), OutputFormat::Csv));
    out.add(&c.markdown, || tensor_markdown(&a, al.as_ref(), &reports, &range));
    out.fallback = Some(emit_dim_table(&dim_table(&a, &reports, &range), OutputFormat::Markdown));
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn verify(v: &VerifyArgs) -> Result<ExitCode> {
    let c = &v.common;
    let cfg = RunConfig {
        presentation: c.presentation.clone(),
        coset_limit: c.coset_limit,
        k_range: parse_k_range(&v.k)?,
        formats: formats(c),
        targets: v.targets.iter().map(|&t| t.into()).collect(),
        seed: 0,
    };
    cfg.validate()?;
    // parse errors abort before any report is written
    cfg.load_presentation()?;
    let run = match run_pipeline(&cfg) {
        Ok(run) => run,
        Err(e) => {
            let mut out = Outputs::new();
            let msg = e.to_string();
            out.add(&c.json, || format!("{{\n  \"all_passed\": false,\n  \"error\": {}\n}}\n", json_string(&msg)));
            out.add(&c.csv, || format!("claim,anchor,status,detail\npipeline,,fail,{}\n", csv_field(&msg)));
            out.add(&c.markdown, || format!("# Verification summary\n\nFAILED: {msg}\n"));
            out.flush()?;
            return Err(e.into());
        }
    };
    let s = &run.summary;
    for claim in &s.claims {
        println!("{:<16} {:<15} {}", claim.id, claim.status.as_str(), claim.detail);
    }
    let a = &run.analysis;
    let al = run.alignment.as_ref().ok();
    let mut out = Outputs::new();
    out.add(&c.json, || summary_json(s));
    out.add(&c.csv, || summary_csv(s));
    out.add(&c.markdown, || {
        let mut md = summary_markdown(s);
        let range = cfg.k_range.clone();
        let sections = [
            (ReportTarget::FixedPoints, fixed_points_markdown(a, al)),
            (ReportTarget::Decompositions, decompositions_markdown(a, al)),
            (ReportTarget::Wedderburn, closed_forms_markdown(a, al, &run.tensor)),
            (ReportTarget::Wedderburn, wedderburn_markdown(a, al, &run.tensor, &range)),
            (ReportTarget::DimensionFormulas, dimension_formulas_markdown(a, al, &run.tensor, &range)),
            (
                ReportTarget::DimTable,
                format!(
                    "## Dimension table\n\n{}",
                    emit_dim_table(&dim_table(a, &run.tensor, &range), OutputFormat::Markdown)
                ),
            ),
        ];
        for (target, text) in sections {
            if cfg.wants(target) {
                md.push('\n');
                md.push_str(&text);
            }
        }
        md
    });
    out.flush()?;
    println!("{}", if s.all_passed() { "all claims pass" } else { "FAILED" });
    Ok(if s.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn json_string(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n"))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Group(GroupCommand::Build(c)) => group_build(c),
        Command::Subgroups(c) => subgroups(c),
        Command::Chartable(c) => chartable(c),
        Command::Permchars(c) => permchars(c),
        Command::Tensor(t) => tensor(t),
        Command::Verify(v) => verify(v),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
