//! Graph products of groups.
//!
//! Elements are stored as reduced syllable sequences in a fixed canonical
//! order, so equality of group elements is equality of sequences. A word is
//! reduced when no two syllables from the same vertex group can be brought
//! together by commuting moves; among all shuffles of a reduced word the
//! canonical one emits, at each step, the front-movable syllable of least
//! vertex index.
//!
//! ```
//! use slender::gp::GraphProduct;
//!
//! let g1 = GraphProduct::gamma1();
//! let a = g1.parse("u v u^-1").unwrap();
//! assert_eq!(g1.render(&a), "v");
//! let b = g1.parse("v u").unwrap();
//! assert_eq!(g1.render(&b), "u v");
//! ```

mod ball;
mod pivot;

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::graph::{CommutationGraph, GraphError, GroupFile};
use crate::vertex::{VertexGroup, VertexGroupKind};

pub use ball::{Ball, BallEntry};
pub use pivot::PivotForm;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GpError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: &'static str },
    #[error("vertex group at `{0}` has no Dudley norm")]
    NoNorm(String),
    #[error("element is not in the kernel of sigma")]
    NotInKernel,
    #[error("pivot needs to split a syllable, which strict mode refuses")]
    SplitRequired,
    #[error("the graph has no vertices")]
    EmptyGraph,
}

/// A nontrivial vertex-group element tagged with its vertex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub vertex: usize,
    pub value: i64,
}

impl Syllable {
    pub fn new(vertex: usize, value: i64) -> Self {
        Self { vertex, value }
    }
}

/// Canonical reduced form of a graph-product element.
///
/// Only [`GraphProduct`] builds these, so the syllable sequence always obeys
/// the canonical-order invariant.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GPElement {
    syllables: Vec<Syllable>,
}

impl GPElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of syllables, the length `l` with respect to the vertex groups.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }
}

/// A graph together with one vertex group per vertex.
pub struct GraphProduct {
    graph: CommutationGraph,
    groups: Vec<VertexGroupKind>,
    ball_cache: Mutex<Option<Arc<Ball>>>,
}

impl Clone for GraphProduct {
    fn clone(&self) -> Self {
        Self::new(self.graph.clone(), self.groups.clone())
    }
}

impl fmt::Debug for GraphProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GraphProduct")
            .field("vertices", &self.graph.names())
            .field("edges", &self.graph.edges())
            .field("groups", &self.groups)
            .finish()
    }
}

impl PartialEq for GraphProduct {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.groups == other.groups
    }
}

impl GraphProduct {
    /// # Panics
    /// If `groups` does not have one entry per vertex.
    pub fn new(graph: CommutationGraph, groups: Vec<VertexGroupKind>) -> Self {
        assert_eq!(graph.len(), groups.len(), "one vertex group per vertex");
        Self {
            graph,
            groups,
            ball_cache: Mutex::new(None),
        }
    }

    /// Every vertex group is the integers: a right-angled Artin group.
    pub fn raag(graph: CommutationGraph) -> Self {
        let groups = vec![VertexGroupKind::Integers; graph.len()];
        Self::new(graph, groups)
    }

    pub fn from_file(file: &GroupFile) -> Result<Self, GpError> {
        let (graph, groups) = file.build()?;
        Ok(Self::new(graph, groups))
    }

    /// Fixture: vertices `u, v, w`, one edge `{u, v}`, integer vertex groups.
    pub fn gamma1() -> Self {
        Self::raag(CommutationGraph::new(&["u", "v", "w"], &[("u", "v")]).expect("valid fixture"))
    }

    /// Fixture: free group on `u, w`.
    pub fn free2() -> Self {
        Self::raag(CommutationGraph::empty(&["u", "w"]).expect("valid fixture"))
    }

    pub fn graph(&self) -> &CommutationGraph {
        &self.graph
    }

    pub fn vertex_groups(&self) -> &[VertexGroupKind] {
        &self.groups
    }

    pub fn rank(&self) -> usize {
        self.graph.len()
    }

    pub fn has_norm(&self) -> bool {
        self.groups.iter().all(VertexGroupKind::has_norm)
    }

    pub(crate) fn require_norm(&self) -> Result<(), GpError> {
        match self.groups.iter().position(|g| !g.has_norm()) {
            Some(v) => Err(GpError::NoNorm(self.graph.name(v).to_string())),
            None => Ok(()),
        }
    }

    #[inline]
    fn commute(&self, a: usize, b: usize) -> bool {
        self.graph.adjacent(a, b)
    }

    pub fn identity(&self) -> GPElement {
        GPElement::identity()
    }

    /// Single-syllable element `v^value`.
    pub fn generator(&self, vertex: usize, value: i64) -> GPElement {
        self.normalize(&[(vertex, value)])
    }

    /// Appends one syllable to a reduced word, keeping it reduced.
    ///
    /// The new syllable slides left past every syllable it commutes with and
    /// merges with the first same-vertex syllable it meets.
    fn push(&self, word: &mut Vec<Syllable>, vertex: usize, value: i64) {
        let group = self.groups[vertex];
        let value = group.reduce(value);
        if value == 0 {
            return;
        }
        let mut i = word.len();
        while i > 0 {
            let t = word[i - 1];
            if t.vertex == vertex {
                let merged = group.multiply(&t.value, &value);
                if merged == 0 {
                    word.remove(i - 1);
                } else {
                    word[i - 1].value = merged;
                }
                return;
            }
            if !self.commute(t.vertex, vertex) {
                break;
            }
            i -= 1;
        }
        word.push(Syllable::new(vertex, value));
    }

    /// Reorders a reduced word into canonical form.
    fn canonicalize(&self, word: Vec<Syllable>) -> GPElement {
        let n = word.len();
        if n < 2 {
            return GPElement { syllables: word };
        }
        // q must precede p whenever they do not commute.
        let mut blockers = vec![0usize; n];
        let mut successors: Vec<Vec<usize>> = vec![Vec::new(); n];
        for p in 0..n {
            for q in 0..p {
                if !self.commute(word[q].vertex, word[p].vertex) {
                    blockers[p] += 1;
                    successors[q].push(p);
                }
            }
        }
        let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..n)
            .filter(|&p| blockers[p] == 0)
            .map(|p| Reverse((word[p].vertex, p)))
            .collect();
        let mut out = Vec::with_capacity(n);
        while let Some(Reverse((_, p))) = ready.pop() {
            out.push(word[p]);
            for &s in &successors[p] {
                blockers[s] -= 1;
                if blockers[s] == 0 {
                    ready.push(Reverse((word[s].vertex, s)));
                }
            }
        }
        GPElement { syllables: out }
    }

    /// Canonical form of a raw word of `(vertex, value)` pairs.
    ///
    /// Trivial syllables are dropped.
    ///
    /// # Panics
    /// If a vertex index is out of range; use [`GraphProduct::parse`] for
    /// untrusted input.
    pub fn normalize(&self, raw: &[(usize, i64)]) -> GPElement {
        let mut word = Vec::with_capacity(raw.len());
        for &(v, x) in raw {
            assert!(v < self.rank(), "vertex index {v} out of range");
            self.push(&mut word, v, x);
        }
        self.canonicalize(word)
    }

    pub fn multiply(&self, a: &GPElement, b: &GPElement) -> GPElement {
        let mut word = a.syllables.clone();
        for s in &b.syllables {
            self.push(&mut word, s.vertex, s.value);
        }
        self.canonicalize(word)
    }

    /// Product of a sequence of elements, left to right.
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a GPElement>) -> GPElement {
        let mut word = Vec::new();
        for f in factors {
            for s in &f.syllables {
                self.push(&mut word, s.vertex, s.value);
            }
        }
        self.canonicalize(word)
    }

    pub fn invert(&self, a: &GPElement) -> GPElement {
        let word = a
            .syllables
            .iter()
            .rev()
            .map(|s| Syllable::new(s.vertex, self.groups[s.vertex].invert(&s.value)))
            .collect();
        self.canonicalize(word)
    }

    pub fn conjugate(&self, a: &GPElement, by: &GPElement) -> GPElement {
        self.product([by, a, &self.invert(by)])
    }

    /// Whether all syllables pairwise commute (lie in distinct, pairwise
    /// adjacent vertices).
    pub fn pairwise_commuting(&self, a: &GPElement) -> bool {
        let s = &a.syllables;
        (0..s.len()).all(|i| (i + 1..s.len()).all(|j| self.commute(s[i].vertex, s[j].vertex)))
    }

    /// `a^n`, computed through the pivot decomposition `prefix · core^n ·
    /// prefix^-1`.
    pub fn power(&self, a: &GPElement, n: i64) -> GPElement {
        if n == 0 || a.is_identity() {
            return self.identity();
        }
        if n < 0 {
            return self.power(&self.invert(a), -n);
        }
        if n == 1 {
            return a.clone();
        }
        let PivotForm { prefix, core } = self.pivot(a);
        let core_power = if self.pairwise_commuting(&core) {
            let raw: Vec<(usize, i64)> = core
                .syllables
                .iter()
                .map(|s| (s.vertex, s.value.checked_mul(n).expect("exponent overflow")))
                .collect();
            self.normalize(&raw)
        } else {
            let mut word = Vec::with_capacity(core.len() * n as usize);
            for _ in 0..n {
                for s in &core.syllables {
                    self.push(&mut word, s.vertex, s.value);
                }
            }
            // Powers of a cyclically reduced word never merge across copies.
            debug_assert_eq!(word.len(), core.len() * n as usize, "cyclically reduced power merged");
            self.canonicalize(word)
        };
        self.product([&prefix, &core_power, &self.invert(&prefix)])
    }

    /// Image under the abelianizing map onto the direct sum of the vertex
    /// groups, one entry per vertex in declaration order.
    pub fn sigma(&self, a: &GPElement) -> Vec<i64> {
        let mut out = vec![0i64; self.rank()];
        for s in &a.syllables {
            out[s.vertex] = self.groups[s.vertex].multiply(&out[s.vertex], &s.value);
        }
        out
    }

    pub fn in_kernel_of_sigma(&self, a: &GPElement) -> bool {
        self.sigma(a).iter().all(|&x| x == 0)
    }

    /// Parses a raw word `"u^2 v^-3 w"` (or `"e"`) into canonical form.
    pub fn parse(&self, text: &str) -> Result<GPElement, GpError> {
        Ok(self.normalize(&self.parse_raw(text)?))
    }

    /// Parses without normalizing. Zero exponents are kept.
    pub fn parse_raw(&self, text: &str) -> Result<Vec<(usize, i64)>, GpError> {
        let mut raw = Vec::new();
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(GpError::Parse {
                token: text.to_string(),
                reason: "empty element (write `e` for the identity)",
            });
        }
        for token in tokens {
            if token == "e" {
                continue;
            }
            let (name, exponent) = match token.split_once('^') {
                Some((name, exp)) => {
                    let exp = exp.parse::<i64>().map_err(|_| GpError::Parse {
                        token: token.to_string(),
                        reason: "exponent is not an integer",
                    })?;
                    (name, exp)
                }
                None => (token, 1),
            };
            if name.is_empty() {
                return Err(GpError::Parse {
                    token: token.to_string(),
                    reason: "missing vertex name",
                });
            }
            raw.push((self.graph.vertex(name)?, exponent));
        }
        Ok(raw)
    }

    pub fn render(&self, a: &GPElement) -> String {
        if a.is_identity() {
            return "e".to_string();
        }
        let parts: Vec<String> = a
            .syllables
            .iter()
            .map(|s| {
                let name = self.graph.name(s.vertex);
                if s.value == 1 {
                    name.to_string()
                } else {
                    format!("{name}^{}", s.value)
                }
            })
            .collect();
        parts.join(" ")
    }

    /// Adapter for `format!`.
    pub fn display<'a>(&'a self, a: &'a GPElement) -> Display<'a> {
        Display { gp: self, element: a }
    }

    pub fn render_sigma(&self, image: &[i64]) -> Vec<(String, i64)> {
        self.graph.names().iter().cloned().zip(image.iter().copied()).collect()
    }
}

pub struct Display<'a> {
    gp: &'a GraphProduct,
    element: &'a GPElement,
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.gp.render(self.element))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm_str(gp: &GraphProduct, s: &str) -> String {
        gp.render(&gp.parse(s).unwrap())
    }

    #[test]
    fn normalize_examples() {
        let g = GraphProduct::gamma1();
        assert_eq!(norm_str(&g, "u v u^-1"), "v");
        assert_eq!(norm_str(&g, "v w w^-1 v^-1"), "e");
        assert_eq!(norm_str(&g, "u^2 v^3 u^-1"), "u v^3");
        assert_eq!(norm_str(&g, "v u"), "u v");
        assert_eq!(norm_str(&g, "u^0 w"), "w");
        assert_eq!(norm_str(&g, "e"), "e");
    }

    #[test]
    fn multiply_and_invert_examples() {
        let g = GraphProduct::gamma1();
        let p = |s| g.parse(s).unwrap();
        assert_eq!(g.render(&g.multiply(&p("u"), &p("u^-1"))), "e");
        assert_eq!(g.render(&g.multiply(&p("w u"), &p("u^-1 w"))), "w^2");
        assert_eq!(g.render(&g.multiply(&p("u"), &p("v"))), "u v");
        assert_eq!(g.render(&g.invert(&p("u v^2"))), "u^-1 v^-2");
        assert_eq!(g.render(&g.invert(&p("e"))), "e");
        assert_eq!(g.render(&g.invert(&p("w u"))), "u^-1 w^-1");
    }

    #[test]
    fn power_examples() {
        let g = GraphProduct::gamma1();
        let p = |s| g.parse(s).unwrap();
        assert_eq!(g.render(&g.power(&p("w u w^-1"), 3)), "w u^3 w^-1");
        assert_eq!(g.render(&g.power(&p("u v"), 2)), "u^2 v^2");
        assert_eq!(g.render(&g.power(&p("u w"), 3)), "u w u w u w");
        assert_eq!(g.render(&g.power(&p("u w"), -1)), "w^-1 u^-1");
        let a = p("u^2 w v^-1");
        assert!(g.power(&a, 0).is_identity());
        assert_eq!(g.power(&a, 1), a);
    }

    #[test]
    fn sigma_examples() {
        let g = GraphProduct::gamma1();
        assert_eq!(g.sigma(&g.parse("u v u^-1 v^-1").unwrap()), vec![0, 0, 0]);
        assert_eq!(g.sigma(&g.parse("u^2 w").unwrap()), vec![2, 0, 1]);
        assert_eq!(g.sigma(&g.identity()), vec![0, 0, 0]);
        assert!(g.in_kernel_of_sigma(&g.parse("u w u^-1 w^-1").unwrap()));
    }

    #[test]
    fn cyclic_vertices_reduce_mod_n() {
        let file = GroupFile::parse(
            r#"{"vertices":["a","b"],"vertex_groups":{"a":"Z/2","b":"Z/3"}}"#,
        )
        .unwrap();
        let g = GraphProduct::from_file(&file).unwrap();
        assert_eq!(norm_str(&g, "a a"), "e");
        assert_eq!(norm_str(&g, "b^-1"), "b^2");
        assert_eq!(norm_str(&g, "a b a b^2 a"), "a b a b^2 a");
        assert_eq!(g.render(&g.power(&g.parse("a b").unwrap(), 6)), "a b a b a b a b a b a b");
        assert_eq!(g.sigma(&g.parse("b b b^2").unwrap()), vec![0, 1]);
        assert!(matches!(g.require_norm(), Err(GpError::NoNorm(v)) if v == "a"));
    }

    #[test]
    fn parse_errors_name_the_token() {
        let g = GraphProduct::gamma1();
        assert_eq!(
            g.parse("u x^2"),
            Err(GpError::Graph(GraphError::UnknownVertex("x".into())))
        );
        assert!(matches!(g.parse("u^q"), Err(GpError::Parse { token, .. }) if token == "u^q"));
        assert!(matches!(g.parse("^2"), Err(GpError::Parse { .. })));
        assert!(matches!(g.parse("   "), Err(GpError::Parse { .. })));
    }
}
