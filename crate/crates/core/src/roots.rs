//! Root sets `Roots(g) = { h : h^n = g for some n >= 1 }`.
//!
//! With a Dudley norm every root of `g != e` satisfies `L(h) <= L(g)` and
//! `n <= L(g)`, so a scan of the ball of radius `L(g)` is complete. The
//! abelianization filter `n·sigma(h) = sigma(g)` discards most candidates
//! before any power is formed.

use std::collections::{BTreeMap, BTreeSet};

use crate::gp::{GPElement, GpError, GraphProduct};

/// One root base with every exponent that powers it to the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub base: GPElement,
    pub exponents: Vec<u64>,
}

impl GraphProduct {
    /// Roots of `g` with bases of norm at most `radius` and exponents at most
    /// `max_exponent`, in ball order.
    pub fn roots_within(&self, g: &GPElement, radius: u64, max_exponent: u64) -> Result<Vec<Root>, GpError> {
        self.require_norm()?;
        if g.is_identity() {
            return Ok(vec![Root { base: self.identity(), exponents: vec![1] }]);
        }
        let target_sigma = self.sigma(g);
        let ball = self.ball_cached(radius)?;
        let mut out = Vec::new();
        for entry in ball.within(radius) {
            if entry.element.is_identity() {
                continue;
            }
            let mut exponents = Vec::new();
            for n in 1..=max_exponent {
                let scaled = entry.sigma.iter().zip(&target_sigma).all(|(&h, &t)| h * n as i64 == t);
                if scaled && self.power(&entry.element, n as i64) == *g {
                    exponents.push(n);
                }
            }
            if !exponents.is_empty() {
                out.push(Root { base: entry.element.clone(), exponents });
            }
        }
        Ok(out)
    }

    /// Complete root set of `g`. The identity is reported as `(e, {1})`.
    pub fn roots(&self, g: &GPElement) -> Result<Vec<Root>, GpError> {
        let r = self.dudley_norm(g)?;
        self.roots_within(g, r, r.max(1))
    }

    /// Least `p >= 1` with `h^k` outside `xs` for every `k >= p` and `h != e`.
    pub fn power_free_bound(&self, xs: &[GPElement]) -> Result<u64, GpError> {
        let mut top = 0;
        for x in xs {
            for root in self.roots(x)? {
                if !root.base.is_identity() {
                    top = top.max(*root.exponents.iter().max().expect("nonempty"));
                }
            }
        }
        Ok(top + 1)
    }

    /// `g^-1·Roots(g^-1·Roots(… g^-1·X …))` with `depth` applications of
    /// `Roots`, sorted by serialization.
    pub fn roots_closure(&self, g: &GPElement, xs: &[GPElement], depth: usize) -> Result<Vec<GPElement>, GpError> {
        let g_inv = self.invert(g);
        let mut set: BTreeSet<GPElement> = xs.iter().map(|x| self.multiply(&g_inv, x)).collect();
        for _ in 0..depth {
            let mut next = BTreeSet::new();
            for x in &set {
                for root in self.roots(x)? {
                    next.insert(self.multiply(&g_inv, &root.base));
                }
            }
            set = next;
        }
        let mut keyed: BTreeMap<String, GPElement> = BTreeMap::new();
        for a in set {
            keyed.insert(self.render(&a), a);
        }
        Ok(keyed.into_values().collect())
    }
}
