use std::fmt;
use std::fs;
use std::path::Path;

use aut_homology::action::{act_path_a, act_path_b, full_matrix, representation_matrix, ActionSource, RepMatrix};
use aut_homology::catalog::{poincare_polynomial, render_polynomial, Family, GroupSpec, SimpleFactor};
use aut_homology::free_group::{AutMap, GeneratorWord};
use aut_homology::grassmann::{Context, HomologyClass};
use aut_homology::verify::{verify_rank_invariance, verify_theorems, Suite, VerifyConfig, VerifyReport};
use aut_homology::{Error, Int};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::{Cli, Command, ContextArgs, Format, GroupsCommand, SourceArgs};

#[derive(Debug)]
pub enum CliError {
    /// Malformed input: the flag it came from, the input and the error.
    Input { flag: &'static str, input: String, error: String, pos: Option<usize> },
    /// Well-formed input that is not a valid mathematical object.
    Semantic(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input { flag, input, error, pos } => {
                write!(f, "error: --{flag}: {error}")?;
                if let Some(p) = pos {
                    // caret under the offending byte
                    let col = input[..(*p).min(input.len())].chars().count();
                    write!(f, "\n  {input}\n  {}^", " ".repeat(col))?;
                }
                Ok(())
            }
            CliError::Semantic(msg) => write!(f, "error: {msg}"),
        }
    }
}

fn classify(flag: &'static str, input: &str, e: Error) -> CliError {
    match e {
        Error::Parse { pos, .. } => CliError::Input {
            flag,
            input: input.to_string(),
            error: e.to_string(),
            pos: Some(pos),
        },
        Error::Json(_)
        | Error::InvalidFactor { .. }
        | Error::InvalidLetter(_)
        | Error::ContextMismatch
        | Error::RankMismatch { .. } => CliError::Input {
            flag,
            input: input.to_string(),
            error: e.to_string(),
            pos: None,
        },
        Error::InvalidContext(_) | Error::IndexOutOfRange(_) | Error::NotInvertible { .. } => {
            CliError::Semantic(e.to_string())
        }
    }
}

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn render(format: Format, value: &Value, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => format!("{value}\n"),
        Format::Text => text(),
    }
}

fn context_json(ctx: &Context) -> Value {
    json!({ "degrees": ctx.degrees().as_slice(), "r": ctx.r() })
}

fn parse_group(src: &str, flag: &'static str) -> Result<GroupSpec, CliError> {
    src.parse().map_err(|e| classify(flag, src, e))
}

fn build_context(spec: &GroupSpec, r: usize) -> Result<Context, CliError> {
    Context::new(spec.degrees(), r).map_err(|e| classify("rank", &r.to_string(), e))
}

fn load_context(args: &ContextArgs) -> Result<(GroupSpec, Context), CliError> {
    let spec = parse_group(&args.group, "group")?;
    let ctx = build_context(&spec, args.r)?;
    Ok((spec, ctx))
}

fn load_tuple(src: &str) -> Result<String, CliError> {
    if src.trim_start().starts_with('{') {
        return Ok(src.to_string());
    }
    fs::read_to_string(Path::new(src)).map_err(|e| CliError::Input {
        flag: "tuple",
        input: src.to_string(),
        error: format!("cannot read {src}: {e}"),
        pos: None,
    })
}

fn load_source(args: &SourceArgs, ctx: &Context) -> Result<ActionSource, CliError> {
    if let Some(w) = &args.word {
        let word: GeneratorWord = w.parse().map_err(|e| classify("word", w, e))?;
        word.validate(ctx.r()).map_err(|e| classify("word", w, e))?;
        return Ok(ActionSource::Word(word));
    }
    let src = args.tuple.as_deref().expect("clap requires --word or --tuple");
    let doc = load_tuple(src)?;
    let f = AutMap::from_json(&doc).map_err(|e| classify("tuple", src, e))?;
    if f.r() != ctx.r() {
        return Err(classify("tuple", src, Error::RankMismatch { expected: ctx.r(), found: f.r() }));
    }
    Ok(ActionSource::Map(f))
}

fn source_json(source: &ActionSource) -> Value {
    match source {
        ActionSource::Word(w) => json!({ "word": w.to_string() }),
        ActionSource::Map(f) => json!({ "tuple": f.to_json() }),
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Poincare(args) => poincare(cli.format, args),
        Command::Act { context, source, class } => act(cli.format, context, source, class),
        Command::Matrix { context, source, degree, full, out } => {
            matrix(cli.format, context, source, *degree, *full, out.as_deref())
        }
        Command::Verify { suite, group, groups, r, trials, seed, max_len } => {
            let cfg = VerifyConfig { trials: *trials, max_len: *max_len, seed: *seed };
            let names = match (group, groups) {
                (Some(g), _) => vec![g.clone()],
                (None, Some(gs)) => gs.clone(),
                (None, None) => unreachable!("clap requires --group or --groups"),
            };
            verify(cli.format, suite, &names, *r, &cfg)
        }
        Command::Groups { command: GroupsCommand::List { max_rank } } => Ok(groups_list(cli.format, *max_rank)),
    }
}

fn poincare(format: Format, args: &ContextArgs) -> Result<Output, CliError> {
    let (spec, ctx) = load_context(args)?;
    let coeffs = poincare_polynomial(ctx.degrees(), ctx.r());
    let pretty = render_polynomial(&coeffs);
    let ints: Vec<Int> = coeffs.iter().map(|c| Int::from(BigInt::from(c.clone()))).collect();
    let value = json!({
        "schema": 1,
        "group": spec.to_string(),
        "context": context_json(&ctx),
        "coefficients": ints,
        "polynomial": pretty,
    });
    Ok(Output::ok(render(format, &value, || {
        let list: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
        format!("{pretty}\ncoefficients: [{}]\n", list.join(", "))
    })))
}

fn act(format: Format, args: &ContextArgs, source: &SourceArgs, class: &str) -> Result<Output, CliError> {
    let (_, ctx) = load_context(args)?;
    let source = load_source(source, &ctx)?;
    let x = HomologyClass::parse(&ctx, class).map_err(|e| classify("class", class, e))?;
    let y = match &source {
        ActionSource::Word(w) => act_path_a(w, &x),
        ActionSource::Map(f) => act_path_b(f, &x),
    }
    .map_err(|e| classify("tuple", "", e))?;
    let value = json!({
        "schema": 1,
        "context": context_json(&ctx),
        "source": source_json(&source),
        "class": x.to_string(),
        "result": y.to_string(),
    });
    Ok(Output::ok(render(format, &value, || format!("{y}\n"))))
}

fn matrix(
    format: Format,
    args: &ContextArgs,
    source: &SourceArgs,
    degree: Option<u64>,
    full: bool,
    out: Option<&Path>,
) -> Result<Output, CliError> {
    let (_, ctx) = load_context(args)?;
    let source = load_source(source, &ctx)?;
    let m: RepMatrix = if full {
        if ctx.num_generators() > 20 {
            return Err(CliError::Semantic(format!(
                "--full needs n·r <= 20, this context has {} generators",
                ctx.num_generators()
            )));
        }
        full_matrix(&source, &ctx)
    } else {
        representation_matrix(&source, degree.expect("clap requires --degree or --full"), &ctx)
    }
    .map_err(|e| classify("tuple", "", e))?;
    let value = m.to_json();
    if let Some(path) = out {
        fs::write(path, format!("{value}\n")).map_err(|e| CliError::Input {
            flag: "out",
            input: path.display().to_string(),
            error: format!("cannot write {}: {e}", path.display()),
            pos: None,
        })?;
        return Ok(Output::ok(format!("wrote {}x{} matrix to {}\n", m.dim(), m.dim(), path.display())));
    }
    Ok(Output::ok(render(format, &value, || {
        let basis: Vec<String> = m.basis().iter().map(|&b| aut_homology::grassmann::format_monomial(&ctx, b)).collect();
        let label = match m.degree() {
            Some(d) => format!("degree {d}"),
            None => "full".to_string(),
        };
        format!("# {label}, basis {}\n{}\n", basis.join(", "), m.rows_string())
    })))
}

fn verify(format: Format, suite: &str, names: &[String], r: usize, cfg: &VerifyConfig) -> Result<Output, CliError> {
    let suite: Suite = suite.parse().map_err(|e| classify("suite", suite, e))?;
    let mut contexts = Vec::new();
    for name in names {
        let spec = parse_group(name, "groups")?;
        contexts.push(build_context(&spec, r)?);
    }
    let fail = |e: Error| classify("groups", &names.join(","), e);
    let mut checks = Vec::new();
    if names.len() > 1 {
        let per_group = match suite {
            Suite::RankInvariance => None,
            Suite::All => Some(Suite::All),
            other => Some(other),
        };
        if let Some(s) = per_group {
            for ctx in &contexts {
                let mut report = verify_theorems(ctx, s, cfg).map_err(fail)?;
                report.checks.retain(|c| s != Suite::All || c.name != "rank-invariance");
                checks.extend(report.checks);
            }
        }
        if matches!(suite, Suite::RankInvariance | Suite::All) {
            checks.extend(verify_rank_invariance(&contexts, cfg).map_err(fail)?.checks);
        }
    } else {
        checks = verify_theorems(&contexts[0], suite, cfg).map_err(fail)?.checks;
    }
    let report = VerifyReport {
        schema: 1,
        seed: cfg.seed,
        trials: cfg.trials,
        max_len: cfg.max_len,
        passed: checks.iter().all(|c| c.passed),
        checks,
    };
    let value = serde_json::to_value(&report).expect("report serializes");
    let text = render(format, &value, || {
        let mut s = String::new();
        for c in &report.checks {
            s.push_str(&format!("{c}\n"));
        }
        let passed = report.checks.iter().filter(|c| c.passed).count();
        s.push_str(&format!("{passed}/{} checks passed (seed {})\n", report.checks.len(), cfg.seed));
        s
    });
    Ok(Output { text, code: if report.passed { 0 } else { 1 } })
}

fn groups_list(format: Format, max_rank: usize) -> Output {
    let mut factors = Vec::new();
    for family in Family::ALL {
        if family.is_classical() {
            for rank in family.min_rank()..=max_rank.max(family.min_rank()) {
                factors.push(SimpleFactor::new(family, rank).expect("rank at or above the minimum"));
            }
        } else {
            factors.push(SimpleFactor::exceptional(family).expect("exceptional family"));
        }
    }
    let rows: Vec<Value> = factors
        .iter()
        .map(|f| {
            json!({
                "name": f.to_string(),
                "rank": f.rank(),
                "degrees": f.degrees(),
                "dimension": f.dimension(),
            })
        })
        .collect();
    let value = json!({ "schema": 1, "groups": rows });
    Output::ok(render(format, &value, || {
        let mut s = format!("{:<6} {:>4} {:>5}  degrees\n", "group", "rank", "dim");
        for f in &factors {
            let degrees: Vec<String> = f.degrees().iter().map(u32::to_string).collect();
            s.push_str(&format!("{:<6} {:>4} {:>5}  {}\n", f.to_string(), f.rank(), f.dimension(), degrees.join(", ")));
        }
        s
    }))
}
