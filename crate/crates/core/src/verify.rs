//! Randomized and exhaustive checks of the kernel and image statements.
//!
//! Every trial draws from its own ChaCha stream (`seed`, stream = trial
//! index), so a report depends only on the seed and the configuration.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::action::{
    act_path_a, full_matrix, path_b_endomorphism, representation_matrix, tensor_exterior_matrix,
    ActionSource, RepMatrix,
};
use crate::error::{Error, Result};
use crate::free_group::{magnus_ia_generators, AutMap, GeneratorWord, Letter};
use crate::grassmann::{Context, HomologyClass, Monomial};
use crate::int::Int;
use crate::linalg::IntMatrix;

/// Contexts up to this many generators are checked on every monomial;
/// larger ones on a random sample.
pub const EXHAUSTIVE_GENERATORS: usize = 12;
const SAMPLED_MONOMIALS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Paths,
    Ia,
    Faithful,
    RankInvariance,
    All,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paths" => Ok(Suite::Paths),
            "ia" => Ok(Suite::Ia),
            "faithful" => Ok(Suite::Faithful),
            "rank-invariance" => Ok(Suite::RankInvariance),
            "all" => Ok(Suite::All),
            _ => Err(Error::parse(
                0,
                format!("unknown suite {s:?}; expected paths, ia, faithful, rank-invariance or all"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub trials: usize,
    pub max_len: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { trials: 100, max_len: 20, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub word: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub context: String,
    pub passed: bool,
    pub instances: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [{}] ({} instances)",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.context,
            self.instances
        )?;
        if let Some(n) = &self.note {
            write!(f, ": {n}")?;
        }
        if let Some(c) = &self.counterexample {
            write!(f, "\n    word: {}", c.word)?;
            if let Some(x) = &c.class {
                write!(f, "\n    class: {x}")?;
            }
            if let Some(n) = &c.note {
                write!(f, "\n    {n}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub seed: u64,
    pub trials: usize,
    pub max_len: usize,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    fn new(cfg: &VerifyConfig, checks: Vec<CheckOutcome>) -> Self {
        VerifyReport {
            schema: 1,
            seed: cfg.seed,
            trials: cfg.trials,
            max_len: cfg.max_len,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

fn describe(ctx: &Context) -> String {
    format!("degrees {:?}, r={}", ctx.degrees().as_slice(), ctx.r())
}

pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Uniform length in 0..=max_len, letters uniform over [`Letter::all`].
pub fn random_word<R: Rng>(rng: &mut R, r: usize, max_len: usize) -> GeneratorWord {
    let alphabet = Letter::all(r);
    let len = rng.gen_range(0..=max_len);
    GeneratorWord((0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect())
}

/// Random word that is not in IA_r (rejection sampling).
pub fn random_non_ia_word<R: Rng>(rng: &mut R, r: usize, max_len: usize) -> Option<(GeneratorWord, AutMap)> {
    for _ in 0..10_000 {
        let w = random_word(rng, r, max_len.max(1));
        let f = AutMap::from_word(&w, r).expect("letters are valid");
        if !f.is_ia() {
            return Some((w, f));
        }
    }
    None
}

/// A random element of IA_r spelled in letters: a product of conjugates
/// u K u^-1 of Magnus generator factorizations.
pub fn random_ia_word<R: Rng>(rng: &mut R, r: usize, max_len: usize) -> GeneratorWord {
    let gens = magnus_ia_generators(r);
    let factors = rng.gen_range(1..=3);
    let mut out = GeneratorWord::empty();
    for _ in 0..factors {
        let u = random_word(rng, r, max_len / 2);
        let mut k = gens[rng.gen_range(0..gens.len())].factorization.clone();
        if rng.gen_bool(0.5) {
            k = k.inverse();
        }
        out = out.concat(&u).concat(&k).concat(&u.inverse());
    }
    out
}

fn test_monomials(ctx: &Context, rng: &mut ChaCha8Rng) -> Vec<Monomial> {
    if ctx.num_generators() <= EXHAUSTIVE_GENERATORS {
        ctx.full_basis()
    } else {
        let mask = ctx.all_mask();
        (0..SAMPLED_MONOMIALS).map(|_| Monomial(rng.gen::<u64>() & mask)).collect()
    }
}

/// Is the action trivial on every graded piece? Beyond
/// [`EXHAUSTIVE_GENERATORS`], on sampled monomials.
fn acts_trivially(source: &ActionSource, ctx: &Context, rng: &mut ChaCha8Rng) -> Result<bool> {
    if ctx.num_generators() <= EXHAUSTIVE_GENERATORS {
        for d in ctx.occurring_degrees() {
            if !representation_matrix(source, d, ctx)?.is_identity() {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let e = source.endomorphism(ctx)?;
    for m in test_monomials(ctx, rng) {
        let image = e.apply_monomial(m);
        if image.len() != 1 || image[0].0 != m || !image[0].1.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn outcome(name: &str, ctx: &Context, instances: usize, failure: Option<Counterexample>) -> CheckOutcome {
    CheckOutcome {
        name: name.into(),
        context: describe(ctx),
        passed: failure.is_none(),
        instances,
        note: None,
        counterexample: failure,
    }
}

/// Does column `c` of `b` hold exactly the terms of `x`?
fn column_equals(b: &RepMatrix, c: usize, x: &HomologyClass) -> bool {
    let col = b.column(c);
    x.num_terms() == col.len()
        && x.terms().zip(col).all(|((m, v), (row, w))| b.basis()[*row as usize] == m && v == w)
}

/// Path A against Path B on the test monomials for every trial word. Path A
/// runs letter by letter on each monomial; Path B is the full matrix of the
/// abelianized map (or its endomorphism on sampled monomials).
pub fn check_paths(ctx: &Context, cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let exhaustive = ctx.num_generators() <= EXHAUSTIVE_GENERATORS;
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let w = random_word(&mut rng, ctx.r(), cfg.max_len);
        let f = AutMap::from_word(&w, ctx.r())?;
        let mismatch = |x: HomologyClass| {
            let fail = Counterexample { word: w.to_string(), class: Some(x.to_string()), note: None };
            Ok(outcome("paths", ctx, t + 1, Some(fail)))
        };
        if exhaustive {
            let b = full_matrix(&ActionSource::Map(f), ctx)?;
            for (c, &m) in b.basis().iter().enumerate() {
                let x = HomologyClass::monomial(ctx, m);
                if !column_equals(&b, c, &act_path_a(&w, &x)?) {
                    return mismatch(x);
                }
            }
        } else {
            let e = path_b_endomorphism(&f, ctx)?;
            for m in test_monomials(ctx, &mut rng) {
                let x = HomologyClass::monomial(ctx, m);
                if act_path_a(&w, &x)? != e.apply(&x)? {
                    return mismatch(x);
                }
            }
        }
    }
    Ok(outcome("paths", ctx, cfg.trials, None))
}

/// The Path B full matrix against ⊗_k Λ(Mᵀ) built from minors. Only for
/// contexts small enough to enumerate.
pub fn check_exterior(ctx: &Context, cfg: &VerifyConfig) -> Result<CheckOutcome> {
    if ctx.num_generators() > EXHAUSTIVE_GENERATORS {
        let mut skipped = outcome("exterior-factorization", ctx, 0, None);
        skipped.note = Some(format!("skipped, needs n·r <= {EXHAUSTIVE_GENERATORS}"));
        return Ok(skipped);
    }
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let w = random_word(&mut rng, ctx.r(), cfg.max_len);
        let f = AutMap::from_word(&w, ctx.r())?;
        let direct = full_matrix(&ActionSource::Map(f.clone()), ctx)?;
        if direct != tensor_exterior_matrix(&f.abelianization_matrix(), ctx)? {
            let fail = Counterexample {
                word: w.to_string(),
                class: None,
                note: Some("full matrix differs from the tensor product of exterior powers".into()),
            };
            return Ok(outcome("exterior-factorization", ctx, t + 1, Some(fail)));
        }
    }
    Ok(outcome("exterior-factorization", ctx, cfg.trials, None))
}

/// Magnus generators (as maps via Path B and as letter factorizations via
/// Path A) and random IA products act trivially in every degree.
pub fn check_ia(ctx: &Context, cfg: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
    let r = ctx.r();
    let gens = if r >= 2 { magnus_ia_generators(r) } else { Vec::new() };
    let mut fail_b = None;
    let mut fail_a = None;
    let mut rng = trial_rng(cfg.seed, usize::MAX);
    for g in &gens {
        if fail_b.is_none() && !acts_trivially(&ActionSource::Map(g.map.clone()), ctx, &mut rng)? {
            fail_b = Some(Counterexample {
                word: g.map.to_string(),
                class: None,
                note: Some(format!("{} is not trivial via Path B", g.name)),
            });
        }
        if fail_a.is_none() && !acts_trivially(&ActionSource::Word(g.factorization.clone()), ctx, &mut rng)? {
            fail_a = Some(Counterexample {
                word: g.factorization.to_string(),
                class: None,
                note: Some(format!("{} is not trivial via Path A", g.name)),
            });
        }
    }
    let mut fail_random = None;
    let mut random_count = 0;
    if r >= 2 {
        for t in 0..cfg.trials {
            let mut rng = trial_rng(cfg.seed, t);
            let w = random_ia_word(&mut rng, r, cfg.max_len);
            random_count += 1;
            let f = AutMap::from_word(&w, r)?;
            if !f.is_ia() || !acts_trivially(&ActionSource::Word(w.clone()), ctx, &mut rng)? {
                fail_random = Some(Counterexample {
                    word: w.to_string(),
                    class: None,
                    note: Some("IA product acts nontrivially".into()),
                });
                break;
            }
        }
    }
    Ok(vec![
        outcome("ia-magnus-path-b", ctx, gens.len(), fail_b),
        outcome("ia-magnus-path-a", ctx, gens.len(), fail_a),
        outcome("ia-random-products", ctx, random_count, fail_random),
    ])
}

/// Random non-IA words act nontrivially, and the action on the span of
/// t^1_1..t^1_r is the exponent-sum matrix read by the row rule:
/// block[m][i] = M[i][m].
pub fn check_faithful(ctx: &Context, cfg: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
    let r = ctx.r();
    let first_block: Vec<Monomial> = (0..r as u32).map(|p| Monomial(1 << p)).collect();
    let mut fail = None;
    let mut count = 0;
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let Some((w, f)) = random_non_ia_word(&mut rng, r, cfg.max_len) else {
            break;
        };
        count += 1;
        let source = ActionSource::Word(w.clone());
        let matrix = if ctx.num_generators() <= EXHAUSTIVE_GENERATORS {
            full_matrix(&source, ctx)?
        } else {
            representation_matrix(&source, ctx.degrees().as_slice()[0] as u64, ctx)?
        };
        let block = matrix.restrict(&first_block)?;
        let expect: IntMatrix = f.abelianization_matrix().transpose();
        let note = if matrix.is_identity() {
            Some("non-IA word acts trivially".to_string())
        } else if block != expect {
            Some(format!("first block {block:?} != row-rule matrix {expect:?}"))
        } else if block.is_identity() {
            Some("first block is the identity for a non-IA word".to_string())
        } else {
            None
        };
        if let Some(note) = note {
            fail = Some(Counterexample { word: w.to_string(), class: None, note: Some(note) });
            break;
        }
    }
    if count < cfg.trials && fail.is_none() {
        fail = Some(Counterexample {
            word: String::new(),
            class: None,
            note: Some(format!("only {count} non-IA words could be drawn")),
        });
    }
    Ok(vec![outcome("faithful-mod-ia", ctx, count, fail)])
}

fn same_entries(a: &RepMatrix, b: &RepMatrix) -> bool {
    a.basis() == b.basis() && (0..a.dim()).all(|c| a.column(c) == b.column(c))
}

fn bit_terms(x: &HomologyClass) -> Vec<(u64, Int)> {
    x.terms().map(|(m, c)| (m.bits(), c.clone())).collect()
}

/// Full matrices of the same random words agree entry for entry across
/// contexts with equal n and r, both via Path A and via Path B. Beyond
/// [`EXHAUSTIVE_GENERATORS`] the images of sampled monomials (the same bit
/// patterns in every context) are compared instead.
pub fn check_rank_invariance(contexts: &[Context], cfg: &VerifyConfig) -> Result<CheckOutcome> {
    let first = contexts
        .first()
        .ok_or_else(|| Error::InvalidContext("no contexts to compare".into()))?;
    if let Some(bad) = contexts.iter().find(|c| c.n() != first.n() || c.r() != first.r()) {
        return Err(Error::InvalidContext(format!(
            "rank invariance compares equal n and r; {} vs {}",
            describe(first),
            describe(bad)
        )));
    }
    let exhaustive = first.num_generators() <= EXHAUSTIVE_GENERATORS;
    let label = contexts.iter().map(describe).collect::<Vec<_>>().join(" | ");
    let mut fail = None;
    'trials: for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let w = random_word(&mut rng, first.r(), cfg.max_len);
        let f = AutMap::from_word(&w, first.r())?;
        let differs = |other: &Context, class: Option<String>| Counterexample {
            word: w.to_string(),
            class,
            note: Some(format!("{} differs from {}", describe(first), describe(other))),
        };
        if exhaustive {
            for source in [ActionSource::Word(w.clone()), ActionSource::Map(f.clone())] {
                let base = full_matrix(&source, first)?;
                for other in &contexts[1..] {
                    if !same_entries(&base, &full_matrix(&source, other)?) {
                        fail = Some(differs(other, None));
                        break 'trials;
                    }
                }
            }
        } else {
            let endos = contexts
                .iter()
                .map(|c| path_b_endomorphism(&f, c))
                .collect::<Result<Vec<_>>>()?;
            for m in test_monomials(first, &mut rng) {
                let x = HomologyClass::monomial(first, m);
                let base_a = bit_terms(&act_path_a(&w, &x)?);
                let base_b = bit_terms(&endos[0].apply(&x)?);
                for (other, e) in contexts[1..].iter().zip(&endos[1..]) {
                    let y = HomologyClass::monomial(other, m);
                    if bit_terms(&act_path_a(&w, &y)?) != base_a || bit_terms(&e.apply(&y)?) != base_b {
                        fail = Some(differs(other, Some(x.to_string())));
                        break 'trials;
                    }
                }
            }
        }
    }
    Ok(CheckOutcome {
        name: "rank-invariance".into(),
        context: label,
        passed: fail.is_none(),
        instances: cfg.trials,
        note: (!exhaustive).then(|| format!("sampled {SAMPLED_MONOMIALS} monomials per word")),
        counterexample: fail,
    })
}

/// `ctx` together with [3,5,…,2n+1] and [3,3,…,3] at the same r.
pub fn rank_companions(ctx: &Context) -> Result<Vec<Context>> {
    let n = ctx.n() as u32;
    let mut out = vec![ctx.clone()];
    for degrees in [(1..=n).map(|k| 2 * k + 1).collect::<Vec<_>>(), vec![3; n as usize]] {
        let c = Context::from_degrees(&degrees, ctx.r())?;
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

pub fn verify_theorems(ctx: &Context, suite: Suite, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    if suite.includes(Suite::Paths) {
        checks.push(check_paths(ctx, cfg)?);
        checks.push(check_exterior(ctx, cfg)?);
    }
    if suite.includes(Suite::Ia) {
        checks.extend(check_ia(ctx, cfg)?);
    }
    if suite.includes(Suite::Faithful) {
        checks.extend(check_faithful(ctx, cfg)?);
    }
    if suite.includes(Suite::RankInvariance) {
        checks.push(check_rank_invariance(&rank_companions(ctx)?, cfg)?);
    }
    Ok(VerifyReport::new(cfg, checks))
}

/// Rank invariance over an explicit list of contexts.
pub fn verify_rank_invariance(contexts: &[Context], cfg: &VerifyConfig) -> Result<VerifyReport> {
    Ok(VerifyReport::new(cfg, vec![check_rank_invariance(contexts, cfg)?]))
}
