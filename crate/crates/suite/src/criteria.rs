//! The acceptance criteria, each returning an [`Outcome`] rather than
//! panicking so that every criterion reports.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use slender::cx::{ce_power, ce_solve_system, ce_system, CEElement, CounterexampleGroup};
use slender::equations::{bounded_solve, check_solution, cyclic_symbolic_solve, EquationSystem, SolveOutcome, SolutionTuple};
use slender::hawaiian::{self, project, LazyWord, Letter};
use slender::vertex::Integers;
use slender::witness::{
    bounded_exponent_extension_witness, check_certificate, direct_product_witness, dudley_factory, refutation_certificate,
};
use slender::{CommutationGraph, GPElement, GraphProduct};

use crate::oracles;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] {} {}: {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.seconds
        )
    }
}

type Runner = fn(u64) -> (bool, String);

pub const CRITERIA: [(u32, &str, Runner); 9] = [
    (1, "normal-form oracle equivalence", normal_forms),
    (2, "dudley norm on ball(G1, 4)", dudley_ball),
    (3, "syllable norm on ker sigma", kernel_norm),
    (4, "roots completeness", roots_completeness),
    (5, "symbolic cascade solutions", symbolic_cascades),
    (6, "dudley refutation certificates", dudley_refutation),
    (7, "counterexample group", counterexample),
    (8, "hawaiian coherence and lazy cascade", hawaiian_truncations),
    (9, "witness combinators", witness_combinators),
];

pub fn run(id: u32, seed: u64) -> Option<Outcome> {
    let &(id, title, runner) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (passed, detail) = runner(seed);
    Some(Outcome {
        id,
        title,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    CRITERIA.iter().filter_map(|c| run(c.0, seed)).collect()
}

fn verdict(failures: &[String], summary: String) -> (bool, String) {
    match failures.first() {
        None => (true, summary),
        Some(first) => (false, format!("{summary}; {} failures, first: {first}", failures.len())),
    }
}

fn three_vertex_graphs() -> Vec<(&'static str, GraphProduct)> {
    let names = ["u", "v", "w"];
    vec![
        ("G1", GraphProduct::gamma1()),
        ("empty", GraphProduct::raag(CommutationGraph::empty(&names).expect("valid"))),
        ("complete", GraphProduct::raag(CommutationGraph::complete(&names).expect("valid"))),
    ]
}

const WORDS_PER_GRAPH: usize = 10_000;

fn normal_forms(seed: u64) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut equal_pairs = 0;
    for (name, gp) in three_vertex_graphs() {
        let graph = gp.graph().clone();
        let adjacent = move |a: usize, b: usize| graph.adjacent(a, b);
        let mut key_to_nf: HashMap<oracles::RawWord, GPElement> = HashMap::new();
        let mut nf_to_key: HashMap<GPElement, oracles::RawWord> = HashMap::new();
        let word = |rng: &mut ChaCha8Rng| -> oracles::RawWord {
            let len = rng.gen_range(0..=6);
            (0..len).map(|_| (rng.gen_range(0..3), rng.gen_range(-2..=2))).collect()
        };
        let mut previous: oracles::RawWord = Vec::new();
        for i in 0..WORDS_PER_GRAPH {
            // Every other word is a rewrite of the previous one, so the sample
            // contains many equal pairs.
            let w = if i % 2 == 1 { shuffled_variant(&mut rng, &gp, &previous) } else { word(&mut rng) };
            previous = w.clone();
            let closure = oracles::rewrite_closure(&adjacent, &w);
            let key = oracles::closure_key(&closure);
            let nf = gp.normalize(&w);
            let nf_word = oracles::syllables(&nf);
            checked += 1;
            if !closure.contains(&nf_word) || nf_word.len() != key.len() {
                failures.push(format!("{name}: {w:?} normalizes outside its closure"));
            }
            match key_to_nf.get(&key) {
                Some(prev) if *prev != nf => failures.push(format!("{name}: {w:?} splits a closure class")),
                Some(_) => equal_pairs += 1,
                None => {
                    key_to_nf.insert(key.clone(), nf.clone());
                }
            }
            match nf_to_key.get(&nf) {
                Some(prev) if *prev != key => failures.push(format!("{name}: {w:?} merges two closure classes")),
                _ => {
                    nf_to_key.insert(nf, key);
                }
            }
        }
    }
    verdict(&failures, format!("{checked} words, {equal_pairs} repeated classes"))
}

/// A word equal to `w` in the group: commuting swaps, split syllables and
/// inserted trivial syllables, kept to at most six syllables.
fn shuffled_variant(rng: &mut ChaCha8Rng, gp: &GraphProduct, w: &[(usize, i64)]) -> oracles::RawWord {
    let mut out = w.to_vec();
    for _ in 0..4 {
        match rng.gen_range(0..3) {
            0 if out.len() >= 2 => {
                let i = rng.gen_range(0..out.len() - 1);
                if out[i].0 != out[i + 1].0 && gp.graph().adjacent(out[i].0, out[i + 1].0) {
                    out.swap(i, i + 1);
                }
            }
            1 if out.len() < 6 && !out.is_empty() => {
                let i = rng.gen_range(0..out.len());
                let (v, x) = out[i];
                let part = rng.gen_range(-2..=2);
                if (-2..=2).contains(&(x - part)) {
                    out[i] = (v, part);
                    out.insert(i + 1, (v, x - part));
                }
            }
            2 if out.len() < 6 => {
                let i = rng.gen_range(0..=out.len());
                out.insert(i, (rng.gen_range(0..3), 0));
            }
            _ => {}
        }
    }
    out
}

fn dudley_ball(_seed: u64) -> (bool, String) {
    let gp = GraphProduct::gamma1();
    let ball = gp.ball(4).expect("integer vertices");
    let mut failures = Vec::new();
    let metric = oracles::word_metric_ball(&gp, 4);
    if metric.len() != ball.len() {
        failures.push(format!("ball has {} elements, word metric gives {}", ball.len(), metric.len()));
    }
    for a in &ball {
        let norm = gp.dudley_norm(a).expect("integer vertices");
        if metric.get(a).map(|&d| d as u64) != Some(norm) {
            failures.push(format!("{} has norm {norm} but word length {:?}", gp.render(a), metric.get(a)));
        }
    }
    let report = gp.verify_dudley(|a| gp.dudley_norm(a).expect("integer vertices"), &ball, 6);
    failures.extend(report.violations.iter().map(|v| format!("{v:?}")));
    verdict(&failures, format!("{} elements, {} violations", report.samples, report.violations.len()))
}

fn kernel_elements(gp: &GraphProduct, rng: &mut ChaCha8Rng, count: usize) -> Vec<GPElement> {
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 1_000_000 {
        attempts += 1;
        let mut g = gp.identity();
        for _ in 0..rng.gen_range(1..=2) {
            let x = gp.generator(rng.gen_range(0..3), [-2, -1, 1, 2][rng.gen_range(0..4)]);
            let y = gp.generator(rng.gen_range(0..3), [-2, -1, 1, 2][rng.gen_range(0..4)]);
            let commutator = gp.product([&x, &y, &gp.invert(&x), &gp.invert(&y)]);
            let by = gp.generator(rng.gen_range(0..3), rng.gen_range(-1..=1));
            g = gp.multiply(&g, &gp.conjugate(&commutator, &by));
        }
        let l = gp.syllable_length(&g);
        if l == 0 || l > 6 || !gp.in_kernel_of_sigma(&g) {
            continue;
        }
        if seen.insert(gp.render(&g)) {
            out.push(g);
        }
    }
    out
}

fn kernel_norm(seed: u64) -> (bool, String) {
    let gp = GraphProduct::gamma1();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elements = kernel_elements(&gp, &mut rng, 200);
    let mut failures = Vec::new();
    if elements.len() < 200 {
        failures.push(format!("only {} kernel elements found", elements.len()));
    }
    let report = gp.verify_dudley(|a| gp.kernel_sigma_norm(a).expect("kernel element"), &elements, 5);
    failures.extend(report.violations.iter().map(|v| format!("{v:?}")));
    let mut non_abelian = 0;
    for g in &elements {
        if gp.pairwise_commuting(&gp.pivot(g).core) {
            continue;
        }
        non_abelian += 1;
        for n in 1..=5u64 {
            let l = gp.syllable_length(&gp.power(g, n as i64));
            if l < 2 * n {
                failures.push(format!("l({}^{n}) = {l} < {}", gp.render(g), 2 * n));
            }
        }
    }
    verdict(
        &failures,
        format!("{} kernel elements, {} violations, {non_abelian} non-abelian cores", elements.len(), report.violations.len()),
    )
}

/// Elements with at most three syllables, each exponent in `{±1, ±2}`.
fn short_elements(gp: &GraphProduct) -> Vec<GPElement> {
    let mut words: Vec<Vec<(usize, i64)>> = vec![Vec::new()];
    let mut frontier = words.clone();
    for _ in 0..3 {
        let mut next = Vec::new();
        for w in &frontier {
            for v in 0..gp.rank() {
                for x in [-2, -1, 1, 2] {
                    let mut longer = w.clone();
                    longer.push((v, x));
                    next.push(longer);
                }
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let mut seen = BTreeSet::new();
    words
        .into_iter()
        .map(|w| gp.normalize(&w))
        .filter(|a| a.syllables().iter().all(|s| (1..=2).contains(&s.value.abs())) && a.len() <= 3)
        .filter(|a| seen.insert(gp.render(a)))
        .collect()
}

fn roots_completeness(_seed: u64) -> (bool, String) {
    let mut failures = Vec::new();
    let mut total = 0;
    for (name, gp) in [("free2", GraphProduct::free2()), ("G1", GraphProduct::gamma1())] {
        let elements = short_elements(&gp);
        let max_norm = elements.iter().map(|a| gp.dudley_norm(a).expect("integer vertices")).max().unwrap_or(0);
        let index = oracles::PowerIndex::build(&gp, max_norm as usize + 2, max_norm.max(1) + 2);
        for g in &elements {
            total += 1;
            let l = gp.dudley_norm(g).expect("integer vertices");
            let found: BTreeSet<(String, u64)> = gp
                .roots(g)
                .expect("integer vertices")
                .into_iter()
                .flat_map(|r| {
                    let base = gp.render(&r.base);
                    r.exponents.into_iter().map(move |n| (base.clone(), n))
                })
                .collect();
            let naive = index.roots(&gp, g, l as usize + 2, l.max(1) + 2);
            if found != naive {
                failures.push(format!("{name}: roots({}) = {found:?}, naive {naive:?}", gp.render(g)));
            }
        }
    }
    verdict(&failures, format!("{total} elements compared"))
}

fn symbolic_cascades(seed: u64) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = GraphProduct::raag(CommutationGraph::empty(&["u"]).expect("valid"));
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let j = rng.gen_range(1..=3u64);
        let depth = rng.gen_range(0..=6usize);
        let k: Vec<u64> = (0..=depth).map(|_| rng.gen_range(1..=5)).collect();
        let e = match cyclic_symbolic_solve(j, &k) {
            Ok(e) => e,
            Err(err) => {
                failures.push(format!("j={j} k={k:?}: {err}"));
                continue;
            }
        };
        let big_k: i128 = k.iter().map(|&x| x as i128).product();
        let substitutes = e[0] as i128 == big_k
            && (0..=depth).all(|m| e[m] as i128 == j as i128 * big_k + k[m] as i128 * e[m + 1] as i128);
        let sys = EquationSystem::uniform(z.generator(0, big_k as i64), j, k.clone()).expect("valid system");
        let tuple = SolutionTuple(e.iter().map(|&x| z.generator(0, x)).collect());
        let checked = check_solution(&z, &sys, &tuple).map(|v| v.holds()).unwrap_or(false);
        let tail = oracles::closed_form_tail(j, &k) == e[depth + 1] as i128;
        if !(substitutes && checked && tail) {
            failures.push(format!("j={j} k={k:?} e={e:?}"));
        }
    }
    verdict(&failures, "1000 instances".to_string())
}

fn dudley_refutation(_seed: u64) -> (bool, String) {
    let gp = GraphProduct::gamma1();
    let mut failures = Vec::new();
    let mut certificates = 0;
    for g_text in ["u", "u w"] {
        let g = gp.parse(g_text).expect("fixture");
        let witness = gp.dudley_witness(&g).expect("non-identity");
        for b0 in gp.ball(2).expect("integer vertices") {
            let depth = witness.depth_bound(&b0).expect("dudley bound") as usize;
            let k = witness.p_prefix(depth + 1);
            let cert = match refutation_certificate(&gp, &witness, &g, &b0, &k) {
                Ok(c) => c,
                Err(e) => {
                    failures.push(format!("{g_text}, {}: {e}", gp.render(&b0)));
                    continue;
                }
            };
            certificates += 1;
            let norm = |a: &GPElement| gp.dudley_norm(a).expect("integer vertices");
            let arithmetic = oracles::certificate_holds(norm(&g), norm(&b0), &k);
            if !(cert.valid && arithmetic && check_certificate(&gp, &norm, &g, &b0, &cert)) {
                failures.push(format!("certificate rejected: {}", cert.to_json()));
            }
            let sys = EquationSystem::uniform(g.clone(), 1, k).expect("valid system");
            match bounded_solve(&gp, &sys, &b0, 5) {
                Ok(SolveOutcome::NoSolutionWithinRadius) => {}
                other => failures.push(format!("{g_text}, {}: bounded search gave {other:?}", gp.render(&b0))),
            }
        }
    }
    verdict(&failures, format!("{certificates} certificates, each confirmed at radius 5"))
}

fn counterexample(_seed: u64) -> (bool, String) {
    let mut failures = Vec::new();
    for n in 2..=12u64 {
        if oracles::ce_generator_power(n, n) != CEElement::z(1) || ce_power(&CEElement::x(n, 1), n as i64) != CEElement::z(1) {
            failures.push(format!("x{n}^{n} != z"));
        }
    }
    let mut systems = 0;
    for len in 1..=4u32 {
        for code in 0..3u64.pow(len) {
            let k: Vec<u64> = (0..len).map(|i| 2 + (code / 3u64.pow(i)) % 3).collect();
            systems += 1;
            let b = match ce_solve_system(1, &k) {
                Ok(b) => b,
                Err(e) => {
                    failures.push(format!("k={k:?}: {e}"));
                    continue;
                }
            };
            let sys = ce_system(1, &k).expect("valid system");
            let holds = check_solution(&CounterexampleGroup, &sys, &b).map(|v| v.holds()).unwrap_or(false);
            let direct = b.0[0] == CEElement::z(1)
                && (0..k.len()).all(|m| {
                    let mut rhs = CEElement::z(1);
                    for _ in 0..k[m] {
                        rhs = slender::cx::ce_multiply(&rhs, &b.0[m + 1]);
                    }
                    rhs == b.0[m]
                });
            if !(holds && direct) {
                failures.push(format!("k={k:?}"));
            }
        }
    }
    verdict(&failures, format!("11 generator relations, {systems} solved systems"))
}

fn random_heg_word(rng: &mut ChaCha8Rng) -> Vec<Letter> {
    let len = rng.gen_range(0..=12);
    (0..len)
        .map(|_| Letter::new(rng.gen_range(0..10), [-2, -1, 1, 2][rng.gen_range(0..4)]))
        .collect()
}

fn hawaiian_truncations(seed: u64) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let w = random_heg_word(&mut rng);
        let (k, m) = (rng.gen_range(0..=8), rng.gen_range(0..=8));
        let twice = project(project(&w, m).letters(), k);
        let direct = project(&w, k.min(m));
        if twice.letters() != direct.letters() || direct.letters() != oracles::naive_project(&w, k.min(m)).as_slice() {
            failures.push(format!("{} at ({k}, {m})", hawaiian::render(&w)));
        }
    }
    let lazy = LazyWord::fixture();
    for n in 0..=8 {
        for m in 0..=n {
            let (lhs, next) = match (lazy.project(m, n), lazy.project(m + 1, n)) {
                (Ok(a), Ok(b)) => (a, b),
                (a, b) => {
                    failures.push(format!("lazy projection failed: {a:?} {b:?}"));
                    continue;
                }
            };
            let mut expanded = lazy.coefficient(m);
            for _ in 0..lazy.exponent(m) {
                expanded.extend_from_slice(next.letters());
            }
            if lhs.letters() != oracles::naive_project(&expanded, n).as_slice() {
                failures.push(format!("cascade identity fails at m={m}, N={n}"));
            }
        }
    }
    match lazy.project(0, 2) {
        Ok(w) if w.to_string() == "a0 a1^2" => {}
        other => failures.push(format!("p_2(U_0) = {other:?}")),
    }
    verdict(&failures, "1000 coherence checks, 45 cascade horizons".to_string())
}

const TERMS: usize = 32;

fn witness_combinators(seed: u64) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut sequences = 0;
    let abs = |x: i64| x.unsigned_abs();

    let z_witness = || dudley_factory(Arc::new(Integers), Arc::new(|x: &i64| x.unsigned_abs()));
    let (w_n, w_q) = (z_witness(), z_witness());
    let z2 = direct_product_witness(Arc::new(Integers), Arc::new(Integers), &w_n, &w_q);
    if z2.j() != w_q.j() * w_n.j() {
        failures.push("Z x Z: j is not j_Q j_N".to_string());
    }
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            if (a, b) == (0, 0) {
                continue;
            }
            let j = z2.j() as i64;
            let want: Vec<u64> = (0..TERMS as u64)
                .map(|m| {
                    if b != 0 {
                        (m + 2) * (abs(b * j) + 1)
                    } else {
                        (m + 1) * (m + 2) * (abs(a * j) + 1)
                    }
                })
                .collect();
            sequences += 1;
            match z2.witness(&(a, b)) {
                Ok(w) if w.p_prefix(TERMS) == want && w.has_depth_bound() == (b != 0) => {}
                other => failures.push(format!("Z x Z at ({a}, {b}): {other:?}")),
            }
        }
    }

    let g1 = GraphProduct::gamma1();
    let factory = g1.graph_product_witness().expect("integer vertices");
    for g in g1.ball(3).expect("integer vertices").into_iter().skip(1) {
        let s = g1.sigma(&g);
        let want: Vec<u64> = (0..TERMS as u64)
            .map(|m| match (s[0], s[1], s[2]) {
                (0, 0, 0) => (m + 1) * (m + 2) * (g1.syllable_length(&g) + 1),
                (_, _, c) if c != 0 => (m + 2) * (abs(c) + 1),
                (_, b, 0) if b != 0 => (m + 1) * (m + 2) * (abs(b) + 1),
                (a, _, _) => (m + 1) * (m + 1) * (m + 2) * (abs(a) + 1),
            })
            .collect();
        sequences += 1;
        match factory.witness(&g) {
            Ok(w) if w.j() == 1 && w.p_prefix(TERMS) == want => {}
            other => failures.push(format!("G1 at {}: {other:?}", g1.render(&g))),
        }
    }

    for g in ["u", "u w", "w^-2 v"] {
        let base = g1.dudley_witness(&g1.parse(g).expect("fixture")).expect("non-identity");
        for d in 1..=4u64 {
            sequences += 1;
            match bounded_exponent_extension_witness(&base, d) {
                Ok(w) if w.j() == d * base.j()
                    && (0..TERMS).all(|m| w.p(m) == d * base.p(m)) => {}
                other => failures.push(format!("bounded exponent d={d} at {g}: {other:?}")),
            }
        }
    }

    let refuted = sampled_refutations(&mut rng, &mut failures);
    verdict(&failures, format!("{sequences} sequences of {TERMS} terms, {refuted} refutations confirmed"))
}

/// Ten refutations on `Z^2` and ten on `G1` drawn from quotient-branch
/// witnesses, each checked by bounded search at the witness's depth.
fn sampled_refutations(rng: &mut ChaCha8Rng, failures: &mut Vec<String>) -> usize {
    let z2 = GraphProduct::raag(CommutationGraph::complete(&["a", "b"]).expect("valid"));
    let g1 = GraphProduct::gamma1();
    let mut confirmed = 0;
    for (gp, last, radius) in [(z2, 1usize, 6u64), (g1, 2, 4)] {
        let factory = gp.graph_product_witness().expect("integer vertices");
        let candidates: Vec<GPElement> = gp
            .ball(3)
            .expect("integer vertices")
            .into_iter()
            .filter(|g| gp.sigma(g)[last] != 0)
            .collect();
        let starts = gp.ball(2).expect("integer vertices");
        for _ in 0..10 {
            let g = &candidates[rng.gen_range(0..candidates.len())];
            let b0 = &starts[rng.gen_range(0..starts.len())];
            let witness = match factory.witness(g) {
                Ok(w) => w,
                Err(e) => {
                    failures.push(format!("{}: {e}", gp.render(g)));
                    continue;
                }
            };
            let Some(depth) = witness.depth_bound(b0) else {
                failures.push(format!("{}: quotient branch without depth bound", gp.render(g)));
                continue;
            };
            let k = witness.p_prefix(depth as usize + 1);
            let sys = EquationSystem::uniform(g.clone(), witness.j(), k).expect("valid system");
            match bounded_solve(&gp, &sys, b0, radius) {
                Ok(SolveOutcome::NoSolutionWithinRadius) => confirmed += 1,
                other => failures.push(format!("{} from {}: {other:?}", gp.render(g), gp.render(b0))),
            }
        }
    }
    confirmed
}
