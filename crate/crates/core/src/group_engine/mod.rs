//! Finitely presented groups: coset enumeration, permutation realization,
//! conjugacy classes and power maps.

mod classes;
mod group;
mod presentation;
mod todd_coxeter;

pub use classes::{conjugacy_classes, ClassData, ConjugacyClass};
pub use group::{build_faithful_group, build_group, FinGroup, GroupError, DEFAULT_MAX_ORDER};
pub use presentation::{Letter, ParseError, Presentation, Word, H1_PRESENTATION};
pub use todd_coxeter::{todd_coxeter, CosetTable, EnumerationError, DEFAULT_COSET_LIMIT};
