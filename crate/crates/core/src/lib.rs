pub mod character_table;
pub mod exact_algebra;
pub mod group_engine;
pub mod perm_characters;
pub mod reference_data;
pub mod report;
pub mod subgroup_lattice;
pub mod tensor_centralizer;
