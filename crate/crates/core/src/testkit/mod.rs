//! Seeded generators for raw terms, well-typed terms and ∼ε-perturbed
//! pairs, and the property suites built on them.

mod gen;
mod rewrite;
mod suites;

pub use gen::{
    gen_sized_over, gen_term, gen_term_with, gen_type, gen_type_with, gen_typed_term, gen_typed_term_with,
    instance_seed, GenConfig,
};
pub use rewrite::{apply_rule, gen_equiv_pair, positions, random_rewrite, rewrite_at, EQUIV_RULES};
pub use suites::{run_instance, run_suite, tame, Outcome, Suite, SuiteReport, UnknownSuite, CANON_BUDGET};
