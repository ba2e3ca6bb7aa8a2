//! Finite truncations of Hawaiian-earring words.
//!
//! Words are sequences of letters `a_i^k`. [`project`] applies the
//! retraction `p_N`, which forgets every letter of index at least `N`. A
//! [`LazyWord`] describes `U_m = W(m)·U_{m+1}^{k(m)}` through its coherent
//! family of truncations `p_N(U_m)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HegError {
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: &'static str },
    #[error("split point {m} exceeds level {level}")]
    SplitAboveLevel { m: usize, level: usize },
    #[error("floor never reaches {n} within {cap} steps from {m}")]
    FloorStalled { m: usize, n: usize, cap: usize },
    #[error("W({0}) uses a letter below the floor, or the floor decreases there")]
    FloorViolation(usize),
    #[error("lazy word fixture: {0}")]
    Fixture(String),
}

/// `a_index^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub exponent: i64,
}

impl Letter {
    pub fn new(index: usize, exponent: i64) -> Self {
        Self { index, exponent }
    }
}

/// Free reduction: merges neighbouring powers of the same letter and drops
/// trivial ones.
pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if l.exponent == 0 {
            continue;
        }
        match out.last_mut() {
            Some(top) if top.index == l.index => {
                top.exponent += l.exponent;
                if top.exponent == 0 {
                    out.pop();
                }
            }
            _ => out.push(l),
        }
    }
    out
}

pub fn invert(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|l| Letter::new(l.index, -l.exponent)).collect()
}

pub fn power(word: &[Letter], k: i64) -> Vec<Letter> {
    let base = if k < 0 { invert(word) } else { word.to_vec() };
    reduce((0..k.unsigned_abs()).flat_map(|_| base.iter().copied()))
}

/// Parses `a0 a3^-1 a1^2`; `e` is the empty word. The result is not reduced.
pub fn parse(text: &str) -> Result<Vec<Letter>, HegError> {
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        if token == "e" {
            continue;
        }
        let err = |reason| HegError::Parse { token: token.to_string(), reason };
        let body = token.strip_prefix('a').ok_or_else(|| err("letters look like a<index>"))?;
        let (index, exponent) = match body.split_once('^') {
            Some((i, k)) => (i, k.parse::<i64>().map_err(|_| err("bad exponent"))?),
            None => (body, 1),
        };
        if index.is_empty() || !index.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("bad index"));
        }
        let index = index.parse::<usize>().map_err(|_| err("bad index"))?;
        out.push(Letter::new(index, exponent));
    }
    Ok(out)
}

pub fn render(word: &[Letter]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter()
        .map(|l| match l.exponent {
            1 => format!("a{}", l.index),
            k => format!("a{}^{}", l.index, k),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// A reduced word in the free group on `a_0, …, a_{level-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedWord {
    level: usize,
    word: Vec<Letter>,
}

impl TruncatedWord {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn letters(&self) -> &[Letter] {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

impl fmt::Display for TruncatedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.word))
    }
}

/// `p_n`: deletes letters of index at least `n`, then reduces.
pub fn project(word: &[Letter], n: usize) -> TruncatedWord {
    TruncatedWord {
        level: n,
        word: reduce(word.iter().copied().filter(|l| l.index < n)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Letters of index below the split point.
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub side: Side,
    pub letters: Vec<Letter>,
}

/// Factors `w` into maximal alternating blocks below and at or above `m`.
pub fn split(w: &TruncatedWord, m: usize) -> Result<Vec<Block>, HegError> {
    if m > w.level {
        return Err(HegError::SplitAboveLevel { m, level: w.level });
    }
    let mut blocks: Vec<Block> = Vec::new();
    for &l in &w.word {
        let side = if l.index < m { Side::Lower } else { Side::Upper };
        match blocks.last_mut() {
            Some(b) if b.side == side => b.letters.push(l),
            _ => blocks.push(Block { side, letters: vec![l] }),
        }
    }
    Ok(blocks)
}

pub fn render_blocks(blocks: &[Block]) -> String {
    if blocks.is_empty() {
        return "[]".to_string();
    }
    let inner: Vec<String> = blocks.iter().map(|b| render(&b.letters)).collect();
    format!("[{}]", inner.join(" | "))
}

type Coefficient = Arc<dyn Fn(usize) -> Vec<Letter> + Send + Sync>;
type Floor = Arc<dyn Fn(usize) -> usize + Send + Sync>;
type Exponent = Arc<dyn Fn(usize) -> u64 + Send + Sync>;

/// `U_m = W(m)·U_{m+1}^{k(m)}`, where `W(m)` only uses letters of index at
/// least `f(m)` and `f` is nondecreasing and unbounded.
pub struct LazyWord {
    coefficient: Coefficient,
    floor: Floor,
    exponent: Exponent,
    search_cap: usize,
    cache: Mutex<HashMap<(usize, usize), Vec<Letter>>>,
}

impl fmt::Debug for LazyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = (0..3).map(|m| render(&(self.coefficient)(m))).collect();
        f.debug_struct("LazyWord")
            .field("W", &head)
            .field("floor", &(0..3).map(|m| (self.floor)(m)).collect::<Vec<_>>())
            .field("k", &(0..3).map(|m| (self.exponent)(m)).collect::<Vec<_>>())
            .finish()
    }
}

const DEFAULT_SEARCH_CAP: usize = 1 << 16;

impl LazyWord {
    pub fn new<W, F, K>(coefficient: W, floor: F, exponent: K) -> Self
    where
        W: Fn(usize) -> Vec<Letter> + Send + Sync + 'static,
        F: Fn(usize) -> usize + Send + Sync + 'static,
        K: Fn(usize) -> u64 + Send + Sync + 'static,
    {
        Self {
            coefficient: Arc::new(coefficient),
            floor: Arc::new(floor),
            exponent: Arc::new(exponent),
            search_cap: DEFAULT_SEARCH_CAP,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// Limits how far [`LazyWord::project`] scans for the floor to pass `N`.
    pub fn with_search_cap(mut self, cap: usize) -> Self {
        self.search_cap = cap;
        self
    }

    /// `W(m) = a_m`, `f(m) = m`, `k(m) = 2`.
    pub fn fixture() -> Self {
        Self::new(|m| vec![Letter::new(m, 1)], |m| m, |_| 2)
    }

    pub fn coefficient(&self, m: usize) -> Vec<Letter> {
        (self.coefficient)(m)
    }

    pub fn floor(&self, m: usize) -> usize {
        (self.floor)(m)
    }

    pub fn exponent(&self, m: usize) -> u64 {
        (self.exponent)(m)
    }

    /// `p_n(U_m)`.
    pub fn project(&self, m: usize, n: usize) -> Result<TruncatedWord, HegError> {
        if let Some(hit) = self.cache.lock().expect("cache poisoned").get(&(m, n)) {
            return Ok(TruncatedWord { level: n, word: hit.clone() });
        }
        // Past the least m* >= m with f(m*) >= n every W(i) projects to e.
        let mut top = m;
        while self.floor(top) < n {
            if top > m && self.floor(top) < self.floor(top - 1) {
                return Err(HegError::FloorViolation(top));
            }
            top += 1;
            if top - m > self.search_cap {
                return Err(HegError::FloorStalled { m, n, cap: self.search_cap });
            }
        }
        let mut acc: Vec<Letter> = Vec::new();
        for i in (m..top).rev() {
            let cached = self.cache.lock().expect("cache poisoned").get(&(i, n)).cloned();
            acc = match cached {
                Some(hit) => hit,
                None => {
                    let w = self.coefficient(i);
                    if w.iter().any(|l| l.index < self.floor(i)) {
                        return Err(HegError::FloorViolation(i));
                    }
                    let head = project(&w, n).word;
                    let tail = power(&acc, self.exponent(i) as i64);
                    let value = reduce(head.into_iter().chain(tail));
                    self.cache.lock().expect("cache poisoned").insert((i, n), value.clone());
                    value
                }
            };
        }
        Ok(TruncatedWord { level: n, word: acc })
    }

    /// Reads the JSON form `{"W": ["a0", "a1"], "floor": "identity", "k":
    /// [2]}`.
    ///
    /// Coefficients past the listed prefix repeat the last entry with every
    /// index shifted up by one per step; exponents repeat the last entry;
    /// `floor` is `"identity"` or a list of naturals continued by `+1` per
    /// step.
    pub fn from_json(text: &str) -> Result<Self, HegError> {
        let spec: LazyWordFile = serde_json::from_str(text).map_err(|e| HegError::Fixture(e.to_string()))?;
        spec.build()
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LazyWordFile {
    #[serde(rename = "W")]
    coefficients: Vec<String>,
    floor: FloorSpec,
    k: Vec<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum FloorSpec {
    Named(String),
    Prefix(Vec<usize>),
}

impl LazyWordFile {
    fn build(self) -> Result<LazyWord, HegError> {
        let fixture = |msg: &str| HegError::Fixture(msg.to_string());
        if self.coefficients.is_empty() {
            return Err(fixture("W needs at least one entry"));
        }
        if self.k.is_empty() || self.k.contains(&0) {
            return Err(fixture("k needs at least one entry, all at least 1"));
        }
        let words = self.coefficients.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
        let floor: Floor = match self.floor {
            FloorSpec::Named(name) if name == "identity" => Arc::new(|m| m),
            FloorSpec::Named(_) => return Err(fixture("floor must be \"identity\" or a list")),
            FloorSpec::Prefix(prefix) if prefix.is_empty() => return Err(fixture("floor list is empty")),
            FloorSpec::Prefix(prefix) => Arc::new(move |m| match prefix.get(m) {
                Some(&f) => f,
                None => prefix[prefix.len() - 1] + (m + 1 - prefix.len()),
            }),
        };
        let k = self.k;
        let exponent = move |m: usize| k[m.min(k.len() - 1)];
        let coefficient = move |m: usize| match words.get(m) {
            Some(w) => w.clone(),
            None => {
                let shift = m + 1 - words.len();
                words[words.len() - 1].iter().map(|l| Letter::new(l.index + shift, l.exponent)).collect()
            }
        };
        Ok(LazyWord {
            coefficient: Arc::new(coefficient),
            floor,
            exponent: Arc::new(exponent),
            search_cap: DEFAULT_SEARCH_CAP,
            cache: Mutex::new(HashMap::new()),
        })
    }
}
