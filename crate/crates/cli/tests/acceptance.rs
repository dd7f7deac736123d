//! Acceptance criteria, one PASS/FAIL line each. Runs sequentially so the
//! reported times are wall-clock times of each criterion alone.

#![allow(clippy::needless_range_loop)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use aut_homology::action::{act_path_a, act_path_b, full_matrix, representation_matrix, ActionSource, RepMatrix};
use aut_homology::catalog::{poincare_polynomial, DegreeSequence, Family, SimpleFactor};
use aut_homology::free_group::{magnus_ia_generators, AutMap, GeneratorWord, Word};
use aut_homology::grassmann::{canonicalize, Context, GeneratorIndex, HomologyClass, Monomial};
use aut_homology::verify::{check_paths, check_rank_invariance, random_non_ia_word, random_word, trial_rng, VerifyConfig};
use aut_homology::Int;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ctx(degrees: &[u32], r: usize) -> Context {
    Context::from_degrees(degrees, r).unwrap()
}

fn class_of(ctx: &Context, terms: &[(i64, &[(usize, usize)])]) -> HomologyClass {
    let mut out = HomologyClass::zero(ctx);
    for (c, gens) in terms {
        let gens: Vec<GeneratorIndex> = gens.iter().map(|&(k, i)| GeneratorIndex::new(k, i)).collect();
        out = out.add(&HomologyClass::product_of(ctx, &gens).unwrap().scale(&Int::from(*c))).unwrap();
    }
    out
}

/// Exponent sums of each image word, read off the printed word.
fn exponent_matrix(f: &AutMap) -> Vec<Vec<i64>> {
    let r = f.r();
    let mut m = vec![vec![0i64; r]; r];
    for col in 0..r {
        for token in f.image(col + 1).to_string().split_whitespace().filter(|t| *t != "1") {
            let (body, e) = match token.strip_suffix("^-1") {
                Some(b) => (b, -1),
                None => (token, 1),
            };
            m[body[1..].parse::<usize>().unwrap() - 1][col] += e;
        }
    }
    m
}

fn det(m: &[Vec<i64>]) -> i64 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|c| {
            let minor: Vec<Vec<i64>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| *v).collect()).collect();
            (if c % 2 == 0 { 1 } else { -1 }) * m[0][c] * det(&minor)
        })
        .sum()
}

fn dense(m: &RepMatrix) -> Vec<Vec<i64>> {
    let n = m.dim();
    let mut out = vec![vec![0i64; n]; n];
    for c in 0..n {
        for (row, v) in m.column(c) {
            out[*row as usize][c] = v.to_i64().expect("small entries");
        }
    }
    out
}

fn dense_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

fn bit_degree(ctx: &Context, bits: u64) -> u64 {
    (0..ctx.num_generators()).filter(|p| bits >> p & 1 == 1).map(|p| ctx.degrees().as_slice()[p / ctx.r()] as u64).sum()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

// ------------------------------------------------------------------ criteria

fn worked_example() -> Outcome {
    let c = ctx(&[3, 5], 3);
    let x = class_of(&c, &[(1, &[(1, 1), (1, 3), (2, 1), (2, 2)])]);
    let expect = class_of(&c, &[(1, &[(1, 1), (1, 3), (2, 1), (2, 2)]), (-1, &[(1, 1), (1, 3), (2, 2), (2, 3)])]);
    let start = Instant::now();
    let w: GeneratorWord = "R(1,3)".parse().unwrap();
    let by_a = act_path_a(&w, &x).unwrap();
    let lib_time = start.elapsed();
    ensure(by_a == expect, || format!("Path A gave {by_a}"))?;
    let by_b = act_path_b(&AutMap::from_word(&w, 3).unwrap(), &x).unwrap();
    ensure(by_b == expect, || format!("Path B gave {by_b}"))?;

    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_authom"))
        .args(["act", "--group", "A2", "-r", "3", "--word", "R(1,3)", "--class", "t1_1 t1_3 t2_1 t2_2"])
        .env_remove("AUTHOM_FORMAT")
        .output()
        .unwrap();
    let cli_time = start.elapsed();
    let printed = String::from_utf8(out.stdout).unwrap();
    ensure(printed == "t1_1 t1_3 t2_1 t2_2 - t1_1 t1_3 t2_2 t2_3\n", || format!("CLI printed {printed:?}"))?;
    ensure(lib_time < Duration::from_secs(1) && cli_time < Duration::from_secs(1), || {
        format!("too slow: library {lib_time:?}, CLI {cli_time:?}")
    })?;
    Ok(format!("library {:.1} ms, CLI {:.1} ms", lib_time.as_secs_f64() * 1e3, cli_time.as_secs_f64() * 1e3))
}

fn poincare_examples() -> Outcome {
    let digits = |v: Vec<num_bigint::BigUint>| v.iter().map(|c| c.to_string().parse::<u64>().unwrap()).collect::<Vec<_>>();
    let got = digits(poincare_polynomial(&DegreeSequence::new(vec![3, 5]).unwrap(), 1));
    ensure(got == [1, 0, 0, 1, 0, 1, 0, 0, 1], || format!("[3,5]: {got:?}"))?;
    for n in 1..=6u64 {
        let mut expect = vec![0u64; 3 * n as usize + 1];
        for j in 0..=n {
            expect[3 * j as usize] = binomial(n, j);
        }
        let as_power = digits(poincare_polynomial(&DegreeSequence::new(vec![3]).unwrap(), n as usize));
        let as_product = digits(poincare_polynomial(&DegreeSequence::new(vec![3; n as usize]).unwrap(), 1));
        ensure(as_power == expect && as_product == expect, || format!("SU(2)^{n}: {as_power:?} / {as_product:?}"))?;
    }
    Ok("[3,5] r=1 and SU(2)^n for n = 1..6".into())
}

fn cross_path() -> Outcome {
    let panel = [(vec![3, 5], 3), (vec![3, 7], 4), (vec![3, 5, 7], 4), (vec![3], 12)];
    let cfg = VerifyConfig { trials: 1000, max_len: 20, seed: 2024 };
    let start = Instant::now();
    let mut monomials = 0usize;
    for (degrees, r) in &panel {
        let c = ctx(degrees, *r);
        let outcome = check_paths(&c, &cfg).unwrap();
        ensure(outcome.passed, || format!("{outcome}"))?;
        monomials += cfg.trials << c.num_generators();
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "contexts [3,5]r3 [3,7]r4 [3,5,7]r4 [3]r12, 1000 words each, {monomials} monomial images equal, {:.1} s",
        elapsed.as_secs_f64()
    ))
}

fn magnus_trivial() -> Outcome {
    let mut count = 0;
    for degrees in [vec![3u32], vec![3, 5], vec![3, 7]] {
        for r in 2..=4 {
            let c = ctx(&degrees, r);
            for g in magnus_ia_generators(r) {
                // the defining images, spelled out independently
                let name: Vec<usize> = g.name[1..].split(',').map(|s| s.parse().unwrap()).collect();
                let images: Vec<Word> = (1..=r)
                    .map(|l| {
                        let text = match name[..] {
                            [i, j] if l == i => format!("a{j} a{i} a{j}^-1"),
                            [i, j, k] if l == i => format!("a{i} a{j} a{k} a{j}^-1 a{k}^-1"),
                            _ => format!("a{l}"),
                        };
                        text.parse().unwrap()
                    })
                    .collect();
                let defined = AutMap::new(r, images).unwrap();
                ensure(g.map == defined, || format!("{} map differs from its definition", g.name))?;
                ensure(AutMap::from_word(&g.factorization, r).unwrap() == defined, || {
                    format!("{} factorization {} is wrong", g.name, g.factorization)
                })?;
                for source in [ActionSource::Map(defined.clone()), ActionSource::Word(g.factorization.clone())] {
                    for d in c.occurring_degrees() {
                        let m = representation_matrix(&source, d, &c).unwrap();
                        ensure(m.is_identity(), || format!("{} acts nontrivially in degree {d} of {:?} r={r}", g.name, degrees))?;
                    }
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} generator/context pairs (A1, A2, B2 at r = 2..4), both paths, every degree"))
}

fn faithful_mod_ia() -> Outcome {
    let mut contexts = 0;
    for degrees in [vec![3u32], vec![3, 5], vec![3, 7]] {
        for r in 2..=4 {
            let c = ctx(&degrees, r);
            let first: Vec<u64> = (0..r).map(|p| 1u64 << p).collect();
            for t in 0..200 {
                let mut rng = trial_rng(77, t);
                let (w, f) = random_non_ia_word(&mut rng, r, 20).ok_or("could not draw a non-IA word")?;
                let m = exponent_matrix(&f);
                ensure((0..r).any(|i| (0..r).any(|j| m[i][j] != (i == j) as i64)), || format!("{w} has trivial abelianization"))?;
                let full = full_matrix(&ActionSource::Word(w.clone()), &c).unwrap();
                ensure(!full.is_identity(), || format!("{w} acts trivially on {degrees:?} r={r}"))?;
                // block[a][b]: coefficient of t1_{a+1} in the image of t1_{b+1}
                for b in 0..r {
                    for a in 0..r {
                        let got = full.entry(first[a] as usize, first[b] as usize);
                        ensure(got == Int::from(m[b][a]), || format!("{w}: block entry ({a},{b}) is {got}, row rule gives {}", m[b][a]))?;
                    }
                }
            }
            contexts += 1;
        }
    }
    Ok(format!("200 non-IA words in each of {contexts} contexts (A1, A2, B2 at r = 2..4)"))
}

fn rank_only() -> Outcome {
    let contexts = [ctx(&[3, 5, 7], 2), ctx(&[3, 7, 11], 2), ctx(&[3, 3, 3], 2)];
    let cfg = VerifyConfig { trials: 200, max_len: 20, seed: 6 };
    let outcome = check_rank_invariance(&contexts, &cfg).unwrap();
    ensure(outcome.passed, || format!("{outcome}"))?;
    Ok("200 words, Path A and Path B, [3,5,7] = [3,7,11] = [3,3,3] at r=2".into())
}

fn kernel_oracles() -> Outcome {
    // every (n, r) shape with n·r <= 12: the index map is a bijection onto 0..n·r
    for n in 1..=12usize {
        for r in 1..=12 / n {
            let c = ctx(&vec![3; n], r);
            let mut seen = 0u64;
            for k in 1..=n {
                for i in 1..=r {
                    let (m, s) = canonicalize(&c, &[GeneratorIndex::new(k, i)]).unwrap();
                    ensure(s == 1 && m.0.count_ones() == 1 && seen & m.0 == 0, || format!("t{k}_{i} in n={n}, r={r}"))?;
                    seen |= m.0;
                }
            }
            ensure(seen == c.all_mask(), || format!("n={n} r={r} does not cover all positions"))?;
        }
    }
    // every list of length <= 8 over the 12 generators of ([3,5,7], r=4)
    let c = ctx(&[3, 5, 7], 4);
    let gens: Vec<GeneratorIndex> = (0..12).map(|p| GeneratorIndex::new(p / 4 + 1, p % 4 + 1)).collect();
    let mut lists = 0u64;
    for len in 0..=8u32 {
        let mut digits = vec![0usize; len as usize];
        let mut buf = Vec::with_capacity(8);
        let mut positions = Vec::with_capacity(8);
        loop {
            buf.clear();
            positions.clear();
            buf.extend(digits.iter().map(|&d| gens[d]));
            positions.extend(digits.iter().copied());
            // adjacent-transposition oracle
            let mut swaps = 0u32;
            let mut repeated = false;
            for i in 0..positions.len() {
                for j in 0..positions.len().saturating_sub(1 + i) {
                    if positions[j] == positions[j + 1] {
                        repeated = true;
                    } else if positions[j] > positions[j + 1] {
                        positions.swap(j, j + 1);
                        swaps += 1;
                    }
                }
            }
            let (m, s) = canonicalize(&c, &buf).unwrap();
            let expect = if repeated { 0 } else if swaps.is_multiple_of(2) { 1 } else { -1 };
            ensure(s == expect, || format!("sign of {buf:?}: got {s}, oracle {expect}"))?;
            if s != 0 {
                let bits = digits.iter().fold(0u64, |acc, &d| acc | 1 << d);
                ensure(m.0 == bits, || format!("monomial of {buf:?}"))?;
            }
            lists += 1;
            // odometer
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if digits[i] < 12 {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
    }
    // graded dimensions against a product-expansion oracle, for every
    // catalog group with n·r <= 12
    let mut groups = 0;
    for family in Family::ALL {
        let ranks: Vec<usize> = if family.is_classical() { (family.min_rank()..=12).collect() } else { vec![0] };
        for rank in ranks {
            let factor = if family.is_classical() { SimpleFactor::new(family, rank) } else { SimpleFactor::exceptional(family) }.unwrap();
            let degrees = factor.degrees();
            for r in 1..=12 / degrees.len() {
                let c = ctx(&degrees, r);
                let mut oracle = vec![1u64];
                for _ in 0..r {
                    for &d in &degrees {
                        let mut next = vec![0u64; oracle.len() + d as usize];
                        for (i, v) in oracle.iter().enumerate() {
                            next[i] += v;
                            next[i + d as usize] += v;
                        }
                        oracle = next;
                    }
                }
                let library: Vec<u64> = poincare_polynomial(c.degrees(), r).iter().map(|v| v.to_string().parse().unwrap()).collect();
                ensure(library == oracle, || format!("Poincaré polynomial of {factor} r={r}"))?;
                let mut total = 0u64;
                for (d, expect) in oracle.iter().enumerate() {
                    let basis = c.basis_of_degree(d as u64);
                    ensure(basis.len() as u64 == *expect, || format!("dim H_{d} of {factor} r={r}"))?;
                    ensure(basis.iter().all(|m| bit_degree(&c, m.0) == d as u64), || format!("basis of degree {d}"))?;
                    total += basis.len() as u64;
                }
                ensure(total == 1 << c.num_generators(), || format!("total dimension of {factor} r={r}"))?;
                groups += 1;
            }
        }
    }
    Ok(format!("{lists} generator lists; index maps for all shapes; graded dimensions for {groups} group/rank pairs"))
}

fn structural_laws() -> Outcome {
    let contexts = [ctx(&[3, 5], 3), ctx(&[3, 7], 4), ctx(&[3, 5, 7], 2)];
    for t in 0..100 {
        let c = &contexts[t % contexts.len()];
        let r = c.r();
        let mut rng = trial_rng(8, t);
        let u = random_word(&mut rng, r, 20);
        let v = random_word(&mut rng, r, 20);
        let mu = full_matrix(&ActionSource::Word(u.clone()), c).unwrap();
        let mv = full_matrix(&ActionSource::Word(v.clone()), c).unwrap();
        let muv = full_matrix(&ActionSource::Word(u.concat(&v)), c).unwrap();
        ensure(dense(&muv) == dense_mul(&dense(&mv), &dense(&mu)), || format!("anti-homomorphism fails for u={u}, v={v}"))?;

        // graded block-diagonality, degrees recomputed from the bits
        for (col, &m) in muv.basis().iter().enumerate() {
            let d = bit_degree(c, m.0);
            for (row, _) in muv.column(col) {
                ensure(bit_degree(c, muv.basis()[*row as usize].0) == d, || format!("{u}{v} leaves degree {d}"))?;
            }
        }

        // ring map on random classes, both paths
        let f = AutMap::from_word(&u, r).unwrap();
        let random_class = |rng: &mut rand_chacha::ChaCha8Rng| {
            let terms: Vec<(Monomial, Int)> =
                (0..4).map(|_| (Monomial(rng.gen::<u64>() & c.all_mask()), Int::from(rng.gen_range(-3i64..=3)))).collect();
            HomologyClass::from_terms(c, terms)
        };
        let x = random_class(&mut rng);
        let y = random_class(&mut rng);
        let xy = x.multiply(&y).unwrap();
        let lhs = act_path_a(&u, &xy).unwrap();
        let rhs = act_path_a(&u, &x).unwrap().multiply(&act_path_a(&u, &y).unwrap()).unwrap();
        ensure(lhs == rhs, || format!("Path A of {u} is not multiplicative on {x} and {y}"))?;
        let rhs_b = act_path_b(&f, &x).unwrap().multiply(&act_path_b(&f, &y).unwrap()).unwrap();
        ensure(act_path_b(&f, &xy).unwrap() == rhs_b, || format!("Path B of {u} is not multiplicative"))?;

        // top degree scalar
        let d = det(&exponent_matrix(&f));
        let top = representation_matrix(&ActionSource::Map(f), c.top_degree(), c).unwrap();
        let expect = d.pow(c.n() as u32);
        ensure((d == 1 || d == -1) && top.dim() == 1 && top.entry(0, 0) == Int::from(expect), || {
            format!("top degree of {u}: {:?}, det {d}", top.entry(0, 0))
        })?;
    }
    Ok("100 instances each of anti-homomorphism, gradedness, ring map, top degree = det^n".into())
}

fn catalog_oracle() -> Outcome {
    let mut count = 0;
    for family in Family::ALL {
        let factors: Vec<SimpleFactor> = if family.is_classical() {
            (family.min_rank()..=25).map(|n| SimpleFactor::new(family, n).unwrap()).collect()
        } else {
            vec![SimpleFactor::exceptional(family).unwrap()]
        };
        for f in factors {
            let n = f.rank() as u64;
            let dim = match family {
                Family::A => n * (n + 2),
                Family::B | Family::C => n * (2 * n + 1),
                Family::D => n * (2 * n - 1),
                Family::G2 => 14,
                Family::F4 => 52,
                Family::E6 => 78,
                Family::E7 => 133,
                Family::E8 => 248,
            };
            let degrees = f.degrees();
            let sum: u64 = degrees.iter().map(|&d| d as u64).sum();
            ensure(degrees.len() as u64 == n, || format!("{f} has {} degrees", degrees.len()))?;
            ensure(degrees.iter().all(|&d| d % 2 == 1 && d >= 3), || format!("{f}: {degrees:?}"))?;
            ensure(sum == dim && f.dimension() == dim, || format!("{f}: sum {sum}, dimension {}, expected {dim}", f.dimension()))?;
            count += 1;
        }
    }
    Ok(format!("{count} simple factors"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("worked Nielsen example, A2 r=3", worked_example),
        ("Poincare polynomials", poincare_examples),
        ("cross-path equivalence", cross_path),
        ("Magnus generators act trivially", magnus_trivial),
        ("faithful modulo IA, row rule", faithful_mod_ia),
        ("rank-only dependence", rank_only),
        ("algebra kernel oracles", kernel_oracles),
        ("structural laws", structural_laws),
        ("catalog dimension oracle", catalog_oracle),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
