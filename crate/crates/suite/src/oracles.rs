//! Reference computations that share no code paths with the library
//! algorithms they check.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use slender::cx::CEElement;
use slender::hawaiian::Letter;
use slender::{GPElement, GraphProduct};

pub type RawWord = Vec<(usize, i64)>;

/// Every word reachable from `w` by swapping adjacent syllables on adjacent
/// vertices, merging adjacent syllables on one vertex, and deleting trivial
/// syllables (integer vertex groups).
pub fn rewrite_closure(adjacent: &dyn Fn(usize, usize) -> bool, w: &[(usize, i64)]) -> HashSet<RawWord> {
    let mut seen: HashSet<RawWord> = HashSet::new();
    let mut queue: VecDeque<RawWord> = VecDeque::new();
    seen.insert(w.to_vec());
    queue.push_back(w.to_vec());
    while let Some(cur) = queue.pop_front() {
        let mut next: Vec<RawWord> = Vec::new();
        for i in 0..cur.len() {
            if cur[i].1 == 0 {
                let mut x = cur.clone();
                x.remove(i);
                next.push(x);
            }
            if i + 1 < cur.len() {
                let (a, b) = (cur[i], cur[i + 1]);
                if a.0 == b.0 {
                    let mut x = cur.clone();
                    x[i] = (a.0, a.1 + b.1);
                    x.remove(i + 1);
                    next.push(x);
                } else if adjacent(a.0, b.0) {
                    let mut x = cur.clone();
                    x.swap(i, i + 1);
                    next.push(x);
                }
            }
        }
        for x in next {
            if seen.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    seen
}

/// Shortest, then lexicographically least, word of the closure.
pub fn closure_key(closure: &HashSet<RawWord>) -> RawWord {
    closure
        .iter()
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
        .expect("closure contains its seed")
        .clone()
}

pub fn syllables(a: &GPElement) -> RawWord {
    a.syllables().iter().map(|s| (s.vertex, s.value)).collect()
}

/// Elements reachable by words of at most `radius` letters `v^±1`, each with
/// the length of its shortest such word.
pub fn word_metric_ball(gp: &GraphProduct, radius: usize) -> HashMap<GPElement, usize> {
    let mut gens = Vec::new();
    for v in 0..gp.rank() {
        gens.push(gp.generator(v, 1));
        gens.push(gp.generator(v, -1));
    }
    let mut dist: HashMap<GPElement, usize> = HashMap::new();
    dist.insert(gp.identity(), 0);
    let mut frontier = vec![gp.identity()];
    for r in 1..=radius {
        let mut next = Vec::new();
        for a in &frontier {
            for s in &gens {
                let b = gp.multiply(a, s);
                if !dist.contains_key(&b) {
                    dist.insert(b.clone(), r);
                    next.push(b);
                }
            }
        }
        frontier = next;
    }
    dist
}

/// For every `h` of word length at most `radius` and `1 <= n <= max_exp`,
/// records `(h, n)` under `h^n`, with powers built by repeated
/// multiplication.
pub struct PowerIndex {
    by_power: HashMap<GPElement, Vec<(GPElement, u64, usize)>>,
}

impl PowerIndex {
    pub fn build(gp: &GraphProduct, radius: usize, max_exp: u64) -> Self {
        let mut by_power: HashMap<GPElement, Vec<(GPElement, u64, usize)>> = HashMap::new();
        for (h, len) in word_metric_ball(gp, radius) {
            if h.is_identity() {
                continue;
            }
            let mut acc = gp.identity();
            for n in 1..=max_exp {
                acc = gp.multiply(&acc, &h);
                by_power.entry(acc.clone()).or_default().push((h.clone(), n, len));
            }
        }
        Self { by_power }
    }

    /// Pairs `(h, n)` with `h^n = g`, `|h| <= radius` and `n <= max_exp`.
    pub fn roots(&self, gp: &GraphProduct, g: &GPElement, radius: usize, max_exp: u64) -> BTreeSet<(String, u64)> {
        if g.is_identity() {
            return [("e".to_string(), 1)].into_iter().collect();
        }
        self.by_power
            .get(g)
            .into_iter()
            .flatten()
            .filter(|(_, n, len)| *len <= radius && *n <= max_exp)
            .map(|(h, n, _)| (gp.render(h), *n))
            .collect()
    }
}

/// `1 - j·(1 + k_0 + k_0k_1 + … + k_0⋯k_{M-1})`.
pub fn closed_form_tail(j: u64, k: &[u64]) -> i128 {
    let mut sum = 0i128;
    let mut prefix = 1i128;
    for &km in k {
        sum += prefix;
        prefix *= km as i128;
    }
    1 - j as i128 * sum
}

/// Deletes letters of index at least `n` and cancels with a stack of single
/// letters `a_i^±1`.
pub fn naive_project(w: &[Letter], n: usize) -> Vec<Letter> {
    let mut stack: Vec<(usize, i64)> = Vec::new();
    for l in w.iter().filter(|l| l.index < n) {
        let unit = l.exponent.signum();
        for _ in 0..l.exponent.abs() {
            match stack.last() {
                Some(&(i, s)) if i == l.index && s == -unit => {
                    stack.pop();
                }
                _ => stack.push((l.index, unit)),
            }
        }
    }
    let mut out: Vec<Letter> = Vec::new();
    for (i, s) in stack {
        match out.last_mut() {
            Some(top) if top.index == i => top.exponent += s,
            _ => out.push(Letter::new(i, s)),
        }
    }
    out
}

/// `x_n^r` multiplied out one generator at a time from the relation
/// `x_n^n = z`.
pub fn ce_generator_power(n: u64, r: u64) -> CEElement {
    let x = CEElement::x(n, 1);
    let mut acc = CEElement::identity();
    for _ in 0..r {
        acc = slender::cx::ce_multiply(&acc, &x);
    }
    acc
}

/// The dudley certificate arithmetic, recomputed from scratch.
pub fn certificate_holds(lg: u64, lb0: u64, k: &[u64]) -> bool {
    let depth = lb0 + 1;
    if k.len() as u64 != depth + 1 {
        return false;
    }
    if k.iter().enumerate().any(|(m, &km)| km % ((m as u64 + 2) * (lg + 1)) != 0) {
        return false;
    }
    let need = (depth + 1) * (lg + 1);
    let last = k[depth as usize];
    let before = k[depth as usize - 1];
    // Walk the chain L(b_0) >= L(b_M^{k_{M-1}}) - M·L(g) one step at a time.
    let mut bound = need as i128;
    for _ in 0..depth {
        bound -= lg as i128;
    }
    before >= need && last >= need + lg && bound > lb0 as i128
}
