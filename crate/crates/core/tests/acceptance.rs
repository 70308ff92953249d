//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::time::{Duration, Instant};

use lambda_eps::canonical::{canonicalize, perm_eq};
use lambda_eps::docs::CANON_EXAMPLE;
use lambda_eps::model::axioms::l1;
use lambda_eps::model::{check_cdc_axioms, check_lambda_axioms, FinGroup, Map};
use lambda_eps::syntax::parse;
use lambda_eps::testkit::{run_suite, Suite};

const SEED: u64 = 0;
const SIZE: usize = 12;

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Result<String, String>,
}

fn suite(suite: Suite, count: usize) -> Result<String, String> {
    let r = run_suite(suite, count, SEED, SIZE);
    if r.failed == 0 && r.passed == count {
        Ok(format!("{}/{count} passed", r.passed))
    } else {
        Err(r.to_string())
    }
}

fn golden() -> Result<String, String> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/canon_example.txt");
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let expected = parse(text.trim()).map_err(|e| e.to_string())?;
    let got = canonicalize(&parse(CANON_EXAMPLE).unwrap());
    if perm_eq(&got, &canonicalize(&expected)) {
        Ok(format!("{} summands", got.summands().len()))
    } else {
        Err("canonical form differs from golden file".into())
    }
}

fn axioms() -> Result<String, String> {
    let z2 = FinGroup::cyclic(2);
    let z22 = FinGroup::product(&z2, &z2);
    let mut reports = vec![check_cdc_axioms(&z2, &z2, 1 << 20, SEED), check_cdc_axioms(&z22, &z2, 1 << 20, SEED)];
    let lambda = check_lambda_axioms(&z2, &z2, &z2, 1 << 20, SEED);
    if !lambda.get("L1").is_some_and(|c| c.exhaustive) {
        return Err("L1 was sampled".into());
    }
    reports.push(lambda);
    for r in &reports {
        if !r.is_clean() || !r.checks.iter().all(|c| c.exhaustive) {
            return Err(r.to_string());
        }
    }
    let wide = FinGroup::product(&z22, &z2);
    let maps = (0..256u128).map(|i| Map::nth(&wide, &z2, i));
    if let Some(i) = maps.enumerate().find(|(_, f)| !l1(f, &z22, &z2)).map(|(i, _)| i) {
        return Err(format!("L1 fails on map #{i} over Z2xZ2 x Z2"));
    }
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    Ok(format!("{checks} exhaustive checks, 0 violations"))
}

const CRITERIA: &[Criterion] = &[
    Criterion { name: "golden canonical form", limit: Some(Duration::from_secs(1)), run: golden },
    Criterion { name: "canonicity", limit: Some(Duration::from_secs(60)), run: || suite(Suite::Canonicity, 1000) },
    Criterion { name: "taylor", limit: Some(Duration::from_secs(60)), run: || suite(Suite::Taylor, 500) },
    Criterion { name: "regularity", limit: None, run: || suite(Suite::Regularity, 500) },
    Criterion { name: "commutation", limit: None, run: || suite(Suite::Commutation, 300) },
    Criterion { name: "confluence", limit: None, run: || suite(Suite::Confluence, 300) },
    Criterion { name: "typing", limit: Some(Duration::from_secs(120)), run: || suite(Suite::Typing, 500) },
    Criterion { name: "model soundness", limit: None, run: || suite(Suite::Soundness, 200) },
    Criterion { name: "axiom reports", limit: Some(Duration::from_secs(60)), run: axioms },
    Criterion { name: "erasure simulation", limit: None, run: || suite(Suite::Erasure, 300) },
];

fn main() {
    let mut failed = 0;
    for (i, c) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took longer than {limit:?}")),
            (r, _) => r,
        };
        let (status, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("{status} {:>2} {:<22} {:>8.2?}  {detail}", i + 1, c.name, elapsed);
        failed += usize::from(result.is_err());
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
