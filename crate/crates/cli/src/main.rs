use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use lambda_eps::canonical::{canonicalize, diff_eq, embed, perm_normalize};
use lambda_eps::docs;
use lambda_eps::erasure::erase;
use lambda_eps::model::{
    all_envs, check_cdc_axioms, check_lambda_axioms, denote_type, eval, parse_cyclic, parse_value, AxiomReport,
    FinGroup, ModelConfig, ModelError, SemValue, DEFAULT_BUDGET,
};
use lambda_eps::reduction::{normalize, render_path, step, wf_step, ReductionError, DEFAULT_FUEL};
use lambda_eps::syntax::{parse, parse_context, parse_type, to_json, ParseError, Term};
use lambda_eps::testkit::{run_suite, Suite, UnknownSuite};
use lambda_eps::typing::{check_diag, infer, TypingContext};

#[derive(Parser)]
#[command(name = "leps", version, about = "Interpreter and checker for the difference lambda-calculus")]
struct Cli {
    /// Emit one JSON object with `command`, `result` and `diagnostics`.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// Inline term; may be repeated where a command takes two terms.
    #[arg(short = 'e', long = "expr")]
    exprs: Vec<String>,
    /// Files holding terms; `-` reads standard input.
    files: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and pretty-print a term.
    Parse(Input),
    /// Print the permutation-normalized canonical form.
    Canon(Input),
    /// Decide differential equivalence of two terms.
    Equiv(Input),
    /// List the one-step reducts.
    Reduce {
        /// Reduce the equivalence class instead of the raw term.
        #[arg(long)]
        wf: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Iterate full parallel reduction to a normal form.
    Normalize {
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Check a term against a type, or synthesize one.
    Typecheck {
        #[arg(long = "type")]
        ty: Option<String>,
        #[arg(long, default_value = "")]
        ctx: String,
        #[command(flatten)]
        input: Input,
    },
    /// Denote a typed term in the model of cyclic groups.
    Eval {
        /// Base moduli, e.g. `a=Z3,b=Z2`.
        #[arg(long, default_value = "a=Z3")]
        model: String,
        #[arg(long, default_value = "")]
        ctx: String,
        /// Values for the context, e.g. `z=1`; omitted means every environment.
        #[arg(long)]
        env: Option<String>,
        #[arg(long = "type")]
        ty: String,
        #[command(flatten)]
        input: Input,
    },
    /// Erase eps from a term.
    Erase(Input),
    /// Check the difference-category and lambda-category laws.
    Axioms {
        /// Carrier of the checks, e.g. `Z2`.
        #[arg(long, default_value = "Z2")]
        model: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a seeded property suite.
    Fuzz {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        size: usize,
    },
    /// Render the reference pages.
    Docs {
        #[arg(long, default_value = "docs")]
        out: PathBuf,
        /// Compare with the files in `--out` instead of writing.
        #[arg(long)]
        check: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Parse(_) => "parse",
            Command::Canon(_) => "canon",
            Command::Equiv(_) => "equiv",
            Command::Reduce { .. } => "reduce",
            Command::Normalize { .. } => "normalize",
            Command::Typecheck { .. } => "typecheck",
            Command::Eval { .. } => "eval",
            Command::Erase(_) => "erase",
            Command::Axioms { .. } => "axioms",
            Command::Fuzz { .. } => "fuzz",
            Command::Docs { .. } => "docs",
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Suite(#[from] UnknownSuite),
}

impl CliError {
    fn status(&self) -> u8 {
        match self {
            CliError::Model(ModelError::IllTyped(_) | ModelError::TooLarge { .. }) => 1,
            _ => 2,
        }
    }
}

/// A command's outcome: text, JSON result, diagnostics, and whether it was positive.
struct Report {
    text: String,
    result: Value,
    diagnostics: Vec<String>,
    ok: bool,
}

impl Report {
    fn ok(text: String, result: Value) -> Report {
        Report {
            text,
            result,
            diagnostics: Vec::new(),
            ok: true,
        }
    }

    fn negative(mut self, why: Option<String>) -> Report {
        self.ok = false;
        self.diagnostics.extend(why);
        self
    }
}

fn read_inputs(input: &Input, want: usize) -> Result<Vec<Term>, CliError> {
    let mut texts = input.exprs.clone();
    for path in &input.files {
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|source| CliError::Io { path: "-".into(), source })?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?
        };
        texts.push(text);
    }
    if texts.len() != want {
        return Err(CliError::Usage(format!("expected {want} term(s), got {}", texts.len())));
    }
    texts.iter().map(|t| parse(t).map_err(CliError::from)).collect()
}

fn read_one(input: &Input) -> Result<Term, CliError> {
    Ok(read_inputs(input, 1)?.remove(0))
}

fn canon_term(t: &Term) -> Term {
    embed(&perm_normalize(&canonicalize(t)))
}

/// Splits on commas outside braces, so table values survive.
fn split_top(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in text.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts.into_iter().map(str::trim).filter(|p| !p.is_empty()).collect()
}

fn axiom_json(r: &AxiomReport) -> Value {
    json!({
        "title": r.title,
        "violations": r.violation_count(),
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name,
            "instances": c.instances,
            "exhaustive": c.exhaustive,
            "violations": c.violations,
        })).collect::<Vec<_>>(),
    })
}

fn run(cmd: &Command) -> Result<Report, CliError> {
    Ok(match cmd {
        Command::Parse(input) => {
            let t = read_one(input)?;
            Report::ok(t.to_string(), json!({ "term": t.to_string(), "ast": to_json(&t) }))
        }
        Command::Canon(input) => {
            let t = read_one(input)?;
            let c = perm_normalize(&canonicalize(&t));
            let shown = embed(&c).to_string();
            let summands: Vec<String> = c.summands().iter().map(|s| s.to_term().to_string()).collect();
            Report::ok(shown.clone(), json!({ "term": shown, "summands": summands }))
        }
        Command::Equiv(input) => {
            let ts = read_inputs(input, 2)?;
            let eq = diff_eq(&ts[0], &ts[1]);
            let (l, r) = (canon_term(&ts[0]).to_string(), canon_term(&ts[1]).to_string());
            let report = Report::ok(
                if eq { "equivalent" } else { "not equivalent" }.into(),
                json!({ "equivalent": eq, "left": l, "right": r }),
            );
            if eq {
                report
            } else {
                report.negative(Some(format!("canonical forms differ: {l} vs {r}")))
            }
        }
        Command::Reduce { wf, input } => {
            let t = read_one(input)?;
            let mut lines = Vec::new();
            let mut items = Vec::new();
            if *wf {
                for c in wf_step(&t) {
                    let s = embed(&c).to_string();
                    lines.push(s.clone());
                    items.push(json!({ "term": s }));
                }
            } else {
                for s in step(&t).successors {
                    let (kind, path, term) = (s.kind.to_string(), render_path(&s.path), s.term.to_string());
                    lines.push(format!("{kind} {path}: {term}"));
                    items.push(json!({ "kind": kind, "path": path, "term": term }));
                }
            }
            if lines.is_empty() {
                lines.push("normal form".into());
            }
            Report::ok(lines.join("\n"), json!({ "successors": items }))
        }
        Command::Normalize { fuel, input } => {
            let t = read_one(input)?;
            match normalize(&t, *fuel) {
                Ok((c, steps)) => {
                    let s = embed(&c).to_string();
                    Report::ok(format!("{s}\nsteps: {steps}"), json!({ "normal_form": s, "steps": steps }))
                }
                Err(e @ ReductionError::FuelExhausted(n)) => {
                    Report::ok(e.to_string(), json!({ "normal_form": null, "steps": n })).negative(Some(e.to_string()))
                }
            }
        }
        Command::Typecheck { ty, ctx, input } => {
            let t = read_one(input)?;
            let ctx = TypingContext::from_pairs(parse_context(ctx)?);
            match ty {
                Some(ty) => {
                    let ty = parse_type(ty)?;
                    let res = check_diag(&ctx, &t, &ty);
                    let report = Report::ok(
                        if res.is_ok() { format!("{t} : {ty}") } else { "ill-typed".into() },
                        json!({ "type": ty.to_string(), "derivable": res.is_ok() }),
                    );
                    match res {
                        Ok(()) => report,
                        Err(e) => report.negative(Some(e.to_string())),
                    }
                }
                None => match infer(&ctx, &t) {
                    Some(ty) => Report::ok(format!("{t} : {ty}"), json!({ "type": ty.to_string() })),
                    None => Report::ok("no type".into(), json!({ "type": null }))
                        .negative(Some("no type can be synthesized".into())),
                },
            }
        }
        Command::Eval {
            model,
            ctx,
            env,
            ty,
            input,
        } => {
            let t = read_one(input)?;
            let cfg = ModelConfig::parse(model)?;
            let ctx = TypingContext::from_pairs(parse_context(ctx)?);
            let ty = parse_type(ty)?;
            let envs = match env {
                Some(text) => vec![parse_env(text, &ctx, &cfg)?],
                None => all_envs(&ctx, &cfg)?,
            };
            let mut lines = Vec::new();
            let mut items = Vec::new();
            for e in &envs {
                let v = eval(&ctx, e, &t, &ty, &cfg)?;
                let shown: Vec<String> = ctx.entries().iter().zip(e).map(|((n, _), v)| format!("{n}={v}")).collect();
                lines.push(if shown.is_empty() { v.to_string() } else { format!("{}: {v}", shown.join(", ")) });
                items.push(json!({ "env": shown, "value": v.to_string() }));
            }
            let sem = denote_type(&ty, &cfg)?;
            Report::ok(lines.join("\n"), json!({ "type": sem.to_string(), "values": items }))
        }
        Command::Erase(input) => {
            let t = erase(&read_one(input)?);
            Report::ok(t.to_string(), json!({ "term": t.to_string() }))
        }
        Command::Axioms { model, budget, seed } => {
            let spec = model.rsplit('=').next().unwrap_or(model);
            let g = FinGroup::cyclic(parse_cyclic(spec.trim())?);
            let reports = vec![
                check_cdc_axioms(&g, &g, *budget, *seed),
                check_cdc_axioms(&FinGroup::product(&g, &g), &g, *budget, *seed),
                check_lambda_axioms(&g, &g, &g, *budget, *seed),
            ];
            let text: String = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
            let clean = reports.iter().all(AxiomReport::is_clean);
            let report = Report::ok(text, json!({ "reports": reports.iter().map(axiom_json).collect::<Vec<_>>() }));
            if clean {
                report
            } else {
                report.negative(Some("axiom violations found".into()))
            }
        }
        Command::Fuzz { suite, count, seed, size } => {
            let suite: Suite = suite.parse()?;
            let r = run_suite(suite, *count, *seed, *size);
            let result = json!({
                "suite": r.suite.name(),
                "seed": r.seed,
                "passed": r.passed,
                "failed": r.failed,
                "skipped": r.skipped,
                "failures": r.failures,
            });
            let report = Report::ok(r.to_string(), result);
            if r.is_clean() {
                report
            } else {
                report.negative(Some(format!("{} failing instance(s)", r.failed)))
            }
        }
        Command::Docs { out, check } => {
            let pages = docs::render_all();
            let names: Vec<&str> = pages.iter().map(|(n, _)| *n).collect();
            if *check {
                let stale: Vec<&str> = pages
                    .iter()
                    .filter(|(n, text)| std::fs::read_to_string(out.join(n)).ok().as_deref() != Some(text.as_str()))
                    .map(|(n, _)| *n)
                    .collect();
                let report = Report::ok(
                    if stale.is_empty() { "up to date".into() } else { format!("stale: {}", stale.join(", ")) },
                    json!({ "pages": names, "stale": stale }),
                );
                if stale.is_empty() {
                    report
                } else {
                    report.negative(Some("rendered pages differ from the files on disk".into()))
                }
            } else {
                docs::regen_examples(out).map_err(|source| CliError::Io {
                    path: out.display().to_string(),
                    source,
                })?;
                Report::ok(format!("wrote {} pages to {}", names.len(), out.display()), json!({ "pages": names }))
            }
        }
    })
}

fn parse_env(text: &str, ctx: &TypingContext, cfg: &ModelConfig) -> Result<Vec<SemValue>, CliError> {
    let mut given = Vec::new();
    for part in split_top(text) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("environment entry `{part}` lacks `=`")))?;
        given.push((name.trim(), value.trim()));
    }
    let mut env = Vec::new();
    for (name, ty) in ctx.entries() {
        let value = given
            .iter()
            .find(|(n, _)| *n == &**name)
            .ok_or_else(|| CliError::Usage(format!("no value given for `{name}`")))?
            .1;
        env.push(parse_value(value, &denote_type(ty, cfg)?)?);
    }
    if given.len() != env.len() {
        return Err(CliError::Usage("environment names a variable outside the context".into()));
    }
    Ok(env)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let (status, text, result, diagnostics) = match run(&cli.command) {
        Ok(r) => (if r.ok { 0 } else { 1 }, r.text, r.result, r.diagnostics),
        Err(e) => (e.status(), String::new(), Value::Null, vec![e.to_string()]),
    };
    if cli.json {
        let obj = json!({ "command": name, "result": result, "diagnostics": diagnostics });
        println!("{obj}");
    } else {
        if !text.is_empty() {
            println!("{text}");
        }
        for d in &diagnostics {
            eprintln!("leps: {d}");
        }
    }
    ExitCode::from(status)
}
