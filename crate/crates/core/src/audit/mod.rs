//! Audits of finite free complexes: column-ideal grades, acyclicity through
//! minors, splitting off trivial summands, and syzygy bounds.

mod be;
mod complex;
mod minors;
mod split;
mod stiffness;
mod syzygy;

pub use be::{buchsbaum_eisenbud_check, expected_ranks, BEReport, BESpot};
pub use complex::{
    column_ideal, content_ideal, homology_dim, homology_vanishes, is_minimal, nonzero_homology_witness, FreeComplex,
};
pub use minors::{determinant, index_subsets, matrix_rank, minor_ideal};
pub use split::{add_split_summand, eilenberg_split, SplitPair, SplitResult};
pub use stiffness::{
    change_basis, first_syzygy_ann_check, random_base_change, stiffness_certificate, stiffness_certificate_with_budget,
    stiffness_check_basis, stiffness_probe_random, AnnCheck, BaseChange, ColumnCheck, StiffnessReport, StiffnessVerdict,
    Violation, CERTIFICATE_BUDGET,
};
pub use syzygy::{
    column_subsets, is_acyclic, order_ideal_grade, thm11_generator_bound, thm14_minor_grades, thm14_table, GeneratorBound,
    MinorGradeEntry, MinorGradeTable, OrderIdeal, SUBSET_LIMIT,
};

#[cfg(test)]
mod tests;
