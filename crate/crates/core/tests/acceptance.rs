//! Acceptance criteria, one line each. Runs as a plain binary so that every
//! criterion reports even when an earlier one fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use cosetdyn::decompose::{decompose, verify_certificate, Limits, Step};
use cosetdyn::gallery::{dlim_coded, gallery_spec, sigma_a, GALLERY};
use cosetdyn::group::FiniteGroup;
use cosetdyn::group_shift::{bracket, check_product_structure, GroupShiftModel};
use cosetdyn::report::{run, Command, Format, RunOptions};
use cosetdyn::sample::{fixture_groups, random_group_shift, random_word, random_word_through};
use cosetdyn::shift::{
    block_entropy, check_inverse_pair, determinism, follower, higher_block, markov_memory, path_count, predecessor,
    SftPresentation,
};
use cosetdyn::wandering::{
    classify_blocks, cycle_plus_q3_certificate, cycle_plus_q3_graph, dual_entropy, matrix_no_periodics,
    q3_graph, q3xq3_certificate, q3xq3_graph, quotient_is_wandering, radius_stable, totally_wandering, z2_system,
    Block, State,
};
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Absolute tolerance for entropies compared as floats.
const LOG_TOL: f64 = 1e-12;
/// Fixed seed for every sampled corpus.
const SEED: u64 = 20_240_601;
/// Random models per fixture group for criteria 3 and 4.
const PER_GROUP: usize = 3;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn corpus() -> Vec<(String, GroupShiftModel)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for (name, g) in fixture_groups().into_iter().filter(|(_, g)| g.order() <= 16) {
        for i in 0..PER_GROUP {
            out.push((format!("{name}#{i}"), random_group_shift(&g, &mut rng)));
        }
    }
    out
}

fn c1_sigma_a() -> Outcome {
    let text = gallery_spec("sigma_a").unwrap().render();
    let start = Instant::now();
    let r = run(Command::Decompose, &text, &RunOptions::default());
    let took = start.elapsed();
    let r = match r {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let m = sigma_a();
    let c = decompose(&m, Limits::default()).unwrap();
    let product = c.product_shift();
    // closed form for the input, and the product's 4^n, agree in growth
    let mut counts_ok = true;
    for n in 1..=8u32 {
        let o = path_count(m.shift(), n as usize, None);
        let p = path_count(&product, n as usize, None);
        counts_ok &= o == BigUint::from(8u8) * BigUint::from(4u8).pow(n - 1);
        counts_ok &= p == BigUint::from(4u8).pow(n);
    }
    let v = verify_certificate(m.shift(), &c, 8);
    let pass = r.passed()
        && r.get("emitted") == Some("[2,2]")
        && r.get("residual_cycle_type") == Some("[1]")
        && counts_ok
        && v.passed()
        && took <= Duration::from_secs(1);
    outcome(
        pass,
        format!(
            "decompose+verify {:.2}s of 1s, emitted {}, residual {}, counts 8*4^(n-1) for n<=8 {}, certificate {}",
            took.as_secs_f64(),
            r.get("emitted").unwrap_or("?"),
            r.get("residual_cycle_type").unwrap_or("?"),
            if counts_ok { "exact" } else { "WRONG" },
            if v.passed() { "verified" } else { "FAILED" }
        ),
    )
}

fn c2_full_shifts() -> Outcome {
    let mut checked = 0;
    for (name, g) in fixture_groups().into_iter().filter(|(_, g)| g.order() <= 8) {
        let order = g.order();
        let c = match decompose(&GroupShiftModel::full(g), Limits::default()) {
            Ok(c) => c,
            Err(e) => return outcome(false, format!("{name}: {e}")),
        };
        let one_split = c.steps.len() == 1 && c.steps[0].step == Step::Split { factor: order };
        if !(one_split && c.emitted == [order] && c.residual.len() == 1) {
            return outcome(false, format!("{name}: emitted {:?} in {} steps", c.emitted, c.steps.len()));
        }
        checked += 1;
    }
    outcome(checked > 0, format!("{checked} groups, each one split to [|A|] with a trivial residual"))
}

fn c3_entropy(models: &[(String, GroupShiftModel)]) -> Outcome {
    for (name, m) in models {
        let c = match decompose(m, Limits::default()) {
            Ok(c) => c,
            Err(e) => return outcome(false, format!("{name}: {e}")),
        };
        let e = block_entropy(m.shift(), 6).unwrap();
        if e.geometric_base != Some(BigUint::from(c.emitted_product())) {
            return outcome(
                false,
                format!("{name}: counts {:?} vs product {}", e.counts, c.emitted_product()),
            );
        }
        if ((c.emitted_product() as f64).ln() - e.entropy).abs() > LOG_TOL {
            return outcome(false, format!("{name}: log mismatch"));
        }
    }
    outcome(
        models.len() >= 50,
        format!("{} models, prod(emitted) = exact word-count ratio for n<=6", models.len()),
    )
}

fn is_subgroup(g: &FiniteGroup, members: &[usize]) -> bool {
    let set: BTreeSet<usize> = members.iter().copied().collect();
    set.contains(&g.identity())
        && members
            .iter()
            .all(|&a| set.contains(&g.inv(a)) && members.iter().all(|&b| set.contains(&g.mul(a, b))))
}

fn c4_structure(models: &[(String, GroupShiftModel)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut brackets = 0usize;
    for (name, m) in models {
        let g = m.group();
        if !is_subgroup(g, m.follower_e().members()) || !is_subgroup(g, m.predecessor_e().members()) {
            return outcome(false, format!("{name}: f(e) or p(e) is not a subgroup"));
        }
        for a in 0..g.order() {
            for (set, sub) in [
                (follower(m.shift(), &[a]).unwrap(), m.follower_e()),
                (predecessor(m.shift(), &[a]).unwrap(), m.predecessor_e()),
            ] {
                let mut coset: Vec<usize> = sub.members().iter().map(|&x| g.mul(set[0], x)).collect();
                coset.sort_unstable();
                if coset != set {
                    return outcome(false, format!("{name}: a follower or predecessor set is not a coset"));
                }
            }
        }
        if !check_product_structure(m, 4).passed() {
            return outcome(false, format!("{name}: product structure fails at depth 4"));
        }
        for d in 1..=4 {
            for _ in 0..50 {
                let w1 = random_word(m.shift(), 2 * d + 1, &mut rng);
                let w2 = random_word_through(m.shift(), 2 * d + 1, d, w1[d], &mut rng);
                match bracket(m, &w1, &w2, d) {
                    Ok(b) if m.shift().is_word(&b) => brackets += 1,
                    _ => return outcome(false, format!("{name}: bracket failed at depth {d}")),
                }
            }
        }
    }
    outcome(
        true,
        format!("{} models, cosets and product structure hold, {brackets} brackets", models.len()),
    )
}

/// Bi-infinite language of the shift avoiding `forbidden`, by brute force
/// over contexts of length `m` on both sides.
fn language(k: usize, forbidden: &[Vec<usize>], m: usize, n: usize) -> BTreeSet<Vec<usize>> {
    let avoids = |w: &[usize]| !forbidden.iter().any(|f| w.windows(f.len()).any(|s| s == &f[..]));
    let all = |len: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| (0..k).map(move |a| [w.clone(), vec![a]].concat()))
                .collect();
        }
        out
    };
    let states: Vec<Vec<usize>> = all(m).into_iter().filter(|s| avoids(s)).collect();
    // greatest fixed points: states with infinite forward / backward paths
    let mut fwd: BTreeSet<Vec<usize>> = states.iter().cloned().collect();
    let mut bwd = fwd.clone();
    loop {
        let nf: BTreeSet<Vec<usize>> = fwd
            .iter()
            .filter(|s| {
                (0..k).any(|a| {
                    let w = [s.as_slice(), &[a]].concat();
                    avoids(&w) && fwd.contains(&w[1..])
                })
            })
            .cloned()
            .collect();
        let nb: BTreeSet<Vec<usize>> = bwd
            .iter()
            .filter(|s| {
                (0..k).any(|a| {
                    let w = [&[a], s.as_slice()].concat();
                    avoids(&w) && bwd.contains(&w[..m])
                })
            })
            .cloned()
            .collect();
        if nf == fwd && nb == bwd {
            break;
        }
        fwd = nf;
        bwd = nb;
    }
    let mut out = BTreeSet::new();
    for w in all(n) {
        'ctx: for l in &bwd {
            for r in &fwd {
                let full = [l.as_slice(), &w, r].concat();
                if avoids(&full) {
                    out.insert(w.clone());
                    break 'ctx;
                }
            }
        }
    }
    out
}

/// Least `m` such that followers of words of length `m+1..=m+3` depend
/// only on the last `m` symbols.
fn memory_oracle(k: usize, forbidden: &[Vec<usize>], ctx: usize) -> usize {
    let langs: Vec<BTreeSet<Vec<usize>>> = (0..=7).map(|n| language(k, forbidden, ctx, n)).collect();
    let f = |u: &[usize]| -> Vec<usize> {
        (0..k)
            .filter(|&b| langs[u.len() + 1].contains(&[u, &[b]].concat()))
            .collect()
    };
    for m in 0..=3 {
        let ok = (m + 1..=m + 3).all(|len| langs[len].iter().all(|u| f(u) == f(&u[len - m..])));
        if ok {
            return m;
        }
    }
    usize::MAX
}

fn c5_memory() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut done = 0;
    let mut memories = Vec::new();
    while done < 20 {
        let k = rng.gen_range(2..=3);
        let forbidden: Vec<Vec<usize>> = (0..rng.gen_range(1..=3))
            .map(|_| (0..rng.gen_range(2..=4)).map(|_| rng.gen_range(0..k)).collect())
            .collect();
        let names: Vec<String> = (0..k).map(|a| a.to_string()).collect();
        let Ok(x) = SftPresentation::from_forbidden(names, &forbidden) else {
            continue;
        };
        if x.path_count(1) == BigUint::from(0u8) {
            continue;
        }
        let ctx = forbidden.iter().map(Vec::len).max().unwrap() - 1;
        let n = match markov_memory(&x, 6) {
            Ok(n) => n,
            Err(e) => return outcome(false, format!("{forbidden:?}: {e}")),
        };
        let oracle = memory_oracle(k, &forbidden, ctx.max(1));
        if n != oracle || n > 3 {
            return outcome(false, format!("{forbidden:?}: memory {n}, oracle {oracle}"));
        }
        let hb = higher_block(&x, 3).unwrap();
        let y = SftPresentation::from_vertex_shift(&hb.shift);
        let recoded_memory = markov_memory(&y, 4).unwrap();
        // a 2-block check: every path of the recoded graph is a word
        let one_step = (2..=5).all(|len| {
            let lang = language(k, &forbidden, ctx.max(1), len + 2);
            path_count(&hb.shift, len, None) == BigUint::from(lang.len())
        });
        let ws = x.words(8).unwrap();
        let inverse_ok = check_inverse_pair(&hb.forward, &hb.inverse, &ws).is_ok_and(|n| n > 0);
        if recoded_memory > 1 || !one_step || !inverse_ok {
            return outcome(
                false,
                format!("{forbidden:?}: recoded memory {recoded_memory}, counts {one_step}, inverse {inverse_ok}"),
            );
        }
        memories.push(n);
        done += 1;
    }
    outcome(true, format!("20 shifts, memories {memories:?} match the oracle; 3-block recodings are 1-step"))
}

fn c6_wandering() -> Outcome {
    let g = q3xq3_graph();
    let wander = totally_wandering(&g, &q3xq3_certificate(), 8).map(|v| v.holds()).unwrap_or(false);
    let d = dual_entropy(&g, g.base(), 12).unwrap();
    let exact = d
        .forward
        .counts
        .iter()
        .enumerate()
        .all(|(n, c)| *c == BigUint::from(3u8).pow(n as u32));
    let growth = (d.growth_entropy - 3f64.ln()).abs() <= LOG_TOL;
    let measure = d.measure_bound == Some(0.0);
    let q = q3_graph();
    let degrees = (0..=300).all(|n| {
        let s = State::new(0, vec![n]);
        q.successors(&s).len() == 1 && q.predecessors(&s).len() == 3
    });
    outcome(
        wander && exact && growth && measure && degrees,
        format!(
            "q3xq3 wandering {wander}, counts 3^n n<=12 {exact}, growth log 3 {growth}, measure 0 {measure}; \
             q3 |f|=1 |p|=3 {degrees}"
        ),
    )
}

fn lucas(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::from(2), BigInt::from(1));
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

fn c7_matrix() -> Outcome {
    let v = matrix_no_periodics(&z2_system(), 50);
    let oracle = v
        .dets
        .iter()
        .enumerate()
        .all(|(i, d)| *d == BigInt::from(2) - lucas(2 * (i + 1)));
    outcome(
        v.holds() && oracle && v.dets.len() == 50,
        format!("det(M^n - I) = 2 - L(2n) != 0 for n <= {}", v.dets.len()),
    )
}

fn order_of_two(modulus: u64) -> usize {
    let (mut x, mut k) = (2 % modulus, 1);
    while x != 1 {
        x = x * 2 % modulus;
        k += 1;
    }
    k
}

fn c8_permutations() -> Outcome {
    let mut maxima = Vec::new();
    for m in 1..=3 {
        let coded = dlim_coded(m);
        if !determinism(coded.shift()).is_permutation() {
            return outcome(false, format!("m={m}: not a permutation"));
        }
        let c = match decompose(&coded.point_model(), Limits::default()) {
            Ok(c) => c,
            Err(e) => return outcome(false, format!("m={m}: {e}")),
        };
        let max = c.residual_cycle_lengths().last().copied().unwrap_or(0);
        if !c.emitted.is_empty() || max != order_of_two(3u64.pow(m as u32)) {
            return outcome(false, format!("m={m}: emitted {:?}, longest cycle {max}", c.emitted));
        }
        maxima.push(max);
    }
    outcome(maxima == [2, 6, 18], format!("no full-shift factors, longest cycles {maxima:?}"))
}

fn c9_blocks() -> Outcome {
    let g = cycle_plus_q3_graph();
    let r = 9;
    let c = match classify_blocks(&g, r) {
        Ok(c) => c,
        Err(e) => return outcome(false, e.to_string()),
    };
    let t: Vec<&State> = c.states_in(Block::Transitive);
    let nested = c.non_wandering() > t.len() && t == [g.base()];
    let stable = radius_stable(&g, r).unwrap_or(false);
    let quotient = quotient_is_wandering(&g, &c, &cycle_plus_q3_certificate())
        .map(|v| v.holds())
        .unwrap_or(false);
    outcome(
        nested && stable && quotient,
        format!(
            "T={} C={} W={}, stable r={r}..{} {stable}, quotient wandering {quotient}",
            t.len(),
            c.non_wandering(),
            c.count(Block::Wandering),
            r + 2
        ),
    )
}

fn specs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs")
}

fn c10_determinism() -> Outcome {
    let mut files: Vec<PathBuf> = match std::fs::read_dir(specs_dir()) {
        Ok(d) => d
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "spec"))
            .collect(),
        Err(e) => return outcome(false, format!("specs directory: {e}")),
    };
    files.sort();
    let mut runs = 0;
    for path in &files {
        let text = std::fs::read_to_string(path).unwrap();
        let stem = path.file_stem().unwrap().to_string_lossy().to_string();
        if GALLERY.contains(&stem.as_str()) && gallery_spec(&stem).unwrap().render() != text {
            return outcome(false, format!("{stem}.spec differs from its builder"));
        }
        for cmd in Command::ALL {
            let a = run(cmd, &text, &RunOptions::default());
            let b = run(cmd, &text, &RunOptions::default());
            let same = match (&a, &b) {
                (Ok(a), Ok(b)) => {
                    a.render(Format::Machine) == b.render(Format::Machine)
                        && a.render(Format::Human) == b.render(Format::Human)
                        && a.dot == b.dot
                }
                (Err(a), Err(b)) => a.to_string() == b.to_string(),
                _ => false,
            };
            if !same {
                return outcome(false, format!("{stem}: `{}` differs between runs", cmd.name()));
            }
            runs += 1;
        }
    }
    outcome(
        files.len() >= GALLERY.len(),
        format!("{} specs x {} commands, reports and DOT byte-identical", files.len(), runs / files.len().max(1)),
    )
}

type Criterion<'a> = (&'static str, Option<Duration>, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let start = Instant::now();
    let models = corpus();
    println!("corpus of {} models sampled in {:.2}s", models.len(), start.elapsed().as_secs_f64());
    let criteria: Vec<Criterion> = vec![
        ("sigma_a end to end", None, Box::new(c1_sigma_a)),
        ("full group shifts", Some(Duration::from_secs(1)), Box::new(c2_full_shifts)),
        ("entropy conservation", Some(Duration::from_secs(60)), Box::new(|| c3_entropy(&models))),
        ("coset structure", None, Box::new(|| c4_structure(&models))),
        ("memory detection", None, Box::new(c5_memory)),
        ("wandering gallery", Some(Duration::from_secs(5)), Box::new(c6_wandering)),
        ("hyperbolic Z^2", Some(Duration::from_secs(1)), Box::new(c7_matrix)),
        ("permutation block", None, Box::new(c8_permutations)),
        ("three building blocks", None, Box::new(c9_blocks)),
        ("determinism", None, Box::new(c10_determinism)),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let took = start.elapsed();
        let in_time = limit.is_none_or(|l| took <= l);
        let pass = o.pass && in_time;
        if !pass {
            failed += 1;
        }
        let budget = match limit {
            Some(l) => format!("{:.2}s of {}s", took.as_secs_f64(), l.as_secs()),
            None => format!("{:.2}s", took.as_secs_f64()),
        };
        println!(
            "criterion {:>2} {} {name}: {} ({budget})",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
