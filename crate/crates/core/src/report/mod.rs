//! End-to-end pipeline: presentation to tensor-power centralizers, with
//! verification claims and report emission.

mod align;
mod claims;
mod emit;
mod small_groups;

use std::ops::RangeInclusive;
use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

pub use align::{align, Alignment};
pub use claims::{verify_claims, Claim, ClaimStatus, VerificationSummary};
pub use emit::{
    chartable_json, chartable_markdown, closed_forms_markdown, decompositions_markdown, dim_table,
    dimension_formulas_markdown, emit_dim_table, fixed_points_markdown, group_json, permchars_csv, permchars_json,
    permchars_markdown, subgroups_json, summary_csv, summary_json, summary_markdown, tensor_json, tensor_markdown,
    wedderburn_markdown, DimTable,
};
pub use small_groups::{brute_force_subgroup_classes, check_small_group, SmallGroupCase, SMALL_GROUP_CASES};

use crate::character_table::{dixon_schneider, CharTable, CharTableError};
use crate::exact_algebra::CycMatrix;
use crate::group_engine::{
    build_faithful_group, conjugacy_classes, todd_coxeter, ClassData, EnumerationError, FinGroup, GroupError,
    ParseError, Presentation, DEFAULT_COSET_LIMIT,
};
use crate::perm_characters::{
    decompose, is_doubly_transitive, is_multiplicity_free, permutation_character, MultVector, PermChar, PermCharError,
};
use crate::subgroup_lattice::{
    coset_action, enumerate_subgroups, CosetAction, SubgroupError, SubgroupRecord, DEFAULT_SUBGROUP_CAP,
};
use crate::tensor_centralizer::{tensor_report, TensorError, TensorReport};

/// Largest tensor power accepted on the command line.
pub const MAX_K: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("k range {0:?} is not of the form N or A..B")]
    BadRange(String),
    #[error("k range {lo}..{hi} must be nonempty and within 1..{max}", max = MAX_K)]
    OutOfBounds { lo: u32, hi: u32 },
    #[error("at least one output format is required")]
    NoFormat,
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("cannot read presentation {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Subgroups(#[from] SubgroupError),
    #[error(transparent)]
    CharTable(#[from] CharTableError),
    #[error(transparent)]
    PermChar(#[from] PermCharError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("coset action of subgroup {subgroup} disagrees with enumeration over its generators")]
    ActionMismatch { subgroup: usize },
    #[error(transparent)]
    Config(#[from] ConfigError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OutputFormat {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReportTarget {
    FixedPoints,
    Decompositions,
    Wedderburn,
    DimensionFormulas,
    DimTable,
    All,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// `None` selects the bundled H1 presentation.
    pub presentation: Option<PathBuf>,
    pub coset_limit: usize,
    pub k_range: RangeInclusive<u32>,
    pub formats: Vec<OutputFormat>,
    pub targets: Vec<ReportTarget>,
    /// Reserved; no algorithm is randomized.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            presentation: None,
            coset_limit: DEFAULT_COSET_LIMIT,
            k_range: 1..=4,
            formats: vec![OutputFormat::Json],
            targets: vec![ReportTarget::All],
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        check_k_range(&self.k_range)?;
        if self.formats.is_empty() {
            return Err(ConfigError::NoFormat);
        }
        Ok(())
    }

    pub fn ks(&self) -> Vec<u32> {
        self.k_range.clone().collect()
    }

    pub fn wants(&self, t: ReportTarget) -> bool {
        self.targets.iter().any(|&x| x == t || x == ReportTarget::All)
    }

    pub fn load_presentation(&self) -> Result<Presentation, PipelineError> {
        match &self.presentation {
            None => Ok(Presentation::h1()),
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|source| PipelineError::Read { path: path.clone(), source })?;
                Ok(Presentation::parse(&text)?)
            }
        }
    }
}

fn check_k_range(r: &RangeInclusive<u32>) -> Result<(), ConfigError> {
    let (lo, hi) = (*r.start(), *r.end());
    if lo == 0 || hi < lo || hi > MAX_K {
        return Err(ConfigError::OutOfBounds { lo, hi });
    }
    Ok(())
}

/// Parses `N`, `A..B` or `A..=B` (both inclusive).
pub fn parse_k_range(s: &str) -> Result<RangeInclusive<u32>, ConfigError> {
    let bad = || ConfigError::BadRange(s.to_string());
    let s = s.trim();
    let r = match s.split_once("..") {
        None => {
            let k = s.parse().map_err(|_| bad())?;
            k..=k
        }
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            a.trim().parse().map_err(|_| bad())?..=b.trim().parse().map_err(|_| bad())?
        }
    };
    check_k_range(&r)?;
    Ok(r)
}

/// One faithful transitive action with its character data.
#[derive(Clone, Debug, Serialize)]
pub struct ActionData {
    /// Position of the point stabilizer in the subgroup census.
    pub subgroup: usize,
    pub label: String,
    pub degree: usize,
    pub theta: PermChar,
    pub decomposition: MultVector,
    pub transitive: bool,
    pub multiplicity_free: bool,
    pub doubly_transitive: bool,
}

/// Everything computed once from a presentation.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub presentation: Presentation,
    pub group: FinGroup,
    pub peak_cosets: usize,
    pub classes: ClassData,
    pub subgroups: Vec<SubgroupRecord>,
    pub table: CharTable,
    pub table_inverse: CycMatrix,
    /// Faithful actions, by degree descending then census position.
    pub actions: Vec<ActionData>,
}

impl Analysis {
    pub fn build(presentation: Presentation, coset_limit: usize) -> Result<Self, PipelineError> {
        let regular = todd_coxeter(&presentation, &[], coset_limit)?;
        let group = build_faithful_group(&regular, &presentation, coset_limit)?;
        let classes = conjugacy_classes(&group);
        let subgroups = enumerate_subgroups(&group, DEFAULT_SUBGROUP_CAP)?;
        let table = dixon_schneider(&group, &classes)?;
        let table_inverse = table.inverse();
        let mut actions = Vec::new();
        for (id, s) in subgroups.iter().enumerate().filter(|(_, s)| s.is_faithful_action) {
            let action = enumerated_action(&presentation, &group, s, id, coset_limit)?;
            let theta = permutation_character(&action, &group, &classes);
            if theta != permutation_character(&coset_action(&group, s), &group, &classes) {
                return Err(PipelineError::ActionMismatch { subgroup: id });
            }
            let decomposition = decompose(&theta, &table, &classes)?;
            let transitive = action.is_transitive();
            actions.push(ActionData {
                subgroup: id,
                label: format!("H{id}"),
                degree: action.degree,
                multiplicity_free: is_multiplicity_free(&decomposition),
                doubly_transitive: transitive && is_doubly_transitive(&decomposition)?,
                transitive,
                theta,
                decomposition,
            });
        }
        actions.sort_by_key(|a| (std::cmp::Reverse(a.degree), a.subgroup));
        Ok(Analysis {
            presentation,
            group,
            peak_cosets: regular.peak_cosets,
            classes,
            subgroups,
            table,
            table_inverse,
            actions,
        })
    }

    /// Tensor data for each action, `k = 1..=max_k`.
    pub fn tensor(&self, max_k: u32) -> Result<Vec<TensorReport>, PipelineError> {
        self.actions
            .iter()
            .map(|a| Ok(tensor_report(&a.theta, max_k, &self.table, &self.table_inverse, &self.classes)?))
            .collect()
    }

    /// Relabels actions with the published names when the alignment succeeds.
    pub fn apply_alignment(&mut self, al: &Alignment) {
        for (label, &idx) in al.labels.iter().zip(&al.theta_actions) {
            self.actions[idx].label = label.to_string();
        }
    }
}

/// The action on cosets of `s`, enumerated from the generator words of `s`.
fn enumerated_action(
    pres: &Presentation,
    g: &FinGroup,
    s: &SubgroupRecord,
    id: usize,
    coset_limit: usize,
) -> Result<CosetAction, PipelineError> {
    let words: Vec<_> = s.generator_words(g).into_iter().cloned().collect();
    let table = todd_coxeter(pres, &words, coset_limit)?;
    if table.index() != s.index {
        return Err(PipelineError::ActionMismatch { subgroup: id });
    }
    Ok(CosetAction::from_table(&table, format!("H{id}")))
}

/// Output of a verification run.
#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub analysis: Analysis,
    pub alignment: Result<Alignment, String>,
    pub tensor: Vec<TensorReport>,
    pub summary: VerificationSummary,
}

/// Builds the analysis and evaluates every claim. Claims are checked for
/// `k = 1..=max(8, k_hi)`.
pub fn run_pipeline(cfg: &RunConfig) -> Result<PipelineOutput, PipelineError> {
    cfg.validate()?;
    let presentation = cfg.load_presentation()?;
    let mut analysis = Analysis::build(presentation, cfg.coset_limit)?;
    let alignment = align(&analysis);
    if let Ok(al) = &alignment {
        analysis.apply_alignment(al);
    }
    let max_k = (*cfg.k_range.end()).max(8);
    let tensor = analysis.tensor(max_k)?;
    let summary = verify_claims(&analysis, &alignment, &tensor, cfg);
    Ok(PipelineOutput { analysis, alignment, tensor, summary })
}
