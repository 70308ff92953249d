#![allow(dead_code)]

use lambda_eps::canonical::canonical_cost;
use lambda_eps::syntax::{parse, Term};
use lambda_eps::testkit::{gen_term, GenConfig, CANON_BUDGET};
use proptest::prelude::*;

pub fn p(src: &str) -> Term {
    parse(src).unwrap_or_else(|e| panic!("{src}: {e}"))
}

/// Seeded raw terms of at most `size` nodes.
pub fn term(size: usize) -> impl Strategy<Value = Term> {
    any::<u64>().prop_map(move |s| gen_term(&GenConfig::default().with_seed(s).with_size(size)))
}

/// Raw terms cheap enough to canonicalize.
pub fn tame_term(size: usize) -> impl Strategy<Value = Term> {
    term(size).prop_filter("canonical form too large", |t| canonical_cost(t) <= CANON_BUDGET)
}

pub fn cheap(terms: &[&Term]) -> bool {
    terms.iter().all(|t| canonical_cost(t) <= CANON_BUDGET)
}
