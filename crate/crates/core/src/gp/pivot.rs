//! Cyclic reduction: writing an element as `prefix · core · prefix^-1` with a
//! cyclically reduced core.

use super::{GPElement, GpError, GraphProduct, Syllable};
use crate::vertex::VertexGroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotForm {
    pub prefix: GPElement,
    pub core: GPElement,
}

/// One conjugation step found on a reduced word.
struct Step {
    conjugator: Syllable,
    core: Vec<Syllable>,
    split: bool,
}

impl GraphProduct {
    /// Positions whose syllable commutes with every syllable before it.
    fn front_movable(&self, s: &[Syllable]) -> Vec<usize> {
        (0..s.len())
            .filter(|&p| (0..p).all(|q| self.commute(s[q].vertex, s[p].vertex)))
            .collect()
    }

    fn back_movable(&self, s: &[Syllable]) -> Vec<usize> {
        (0..s.len())
            .filter(|&p| (p + 1..s.len()).all(|q| self.commute(s[q].vertex, s[p].vertex)))
            .collect()
    }

    /// Finds a front-movable `x` and back-movable `y` on the same vertex, at
    /// distinct positions, choosing the least vertex index.
    fn conjugation_step(&self, s: &[Syllable]) -> Option<Step> {
        let front = self.front_movable(s);
        let back = self.back_movable(s);
        let (px, py) = front
            .iter()
            .flat_map(|&px| back.iter().map(move |&py| (px, py)))
            .filter(|&(px, py)| px != py && s[px].vertex == s[py].vertex)
            .min_by_key(|&(px, _)| s[px].vertex)?;
        let (x, y) = (s[px], s[py]);
        let group = self.groups[x.vertex];
        let rest: Vec<Syllable> = s
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != px && i != py)
            .map(|(_, t)| *t)
            .collect();
        let merged = group.multiply(&x.value, &y.value);
        if merged == 0 {
            return Some(Step { conjugator: x, core: rest, split: false });
        }
        // x·rest·y = y^-1·(xy·rest)·y = x·(rest·xy)·x^-1; keep the cheaper
        // conjugator, ties going to the smaller value.
        let y_inv = Syllable::new(y.vertex, group.invert(&y.value));
        let key = |t: &Syllable| (group.norm(&t.value).unwrap_or(0), t.value);
        let merged = Syllable::new(x.vertex, merged);
        let (conjugator, core) = if key(&y_inv) < key(&x) {
            (y_inv, std::iter::once(merged).chain(rest).collect())
        } else {
            (x, rest.into_iter().chain(std::iter::once(merged)).collect())
        };
        Some(Step { conjugator, core, split: true })
    }

    fn pivot_impl(&self, a: &GPElement, strict: bool) -> Result<PivotForm, GpError> {
        let mut prefix: Vec<Syllable> = Vec::new();
        let mut core = a.clone();
        while let Some(step) = self.conjugation_step(&core.syllables) {
            if strict && step.split {
                return Err(GpError::SplitRequired);
            }
            self.push(&mut prefix, step.conjugator.vertex, step.conjugator.value);
            let raw: Vec<(usize, i64)> = step.core.iter().map(|t| (t.vertex, t.value)).collect();
            core = self.normalize(&raw);
        }
        Ok(PivotForm {
            prefix: self.canonicalize(prefix),
            core,
        })
    }

    /// Decomposes `a = prefix · core · prefix^-1` with a cyclically reduced
    /// core, splitting a syllable when the outermost pair is not an exact
    /// inverse pair (`u^2 w u^-1 = u · (u w) · u^-1`).
    pub fn pivot(&self, a: &GPElement) -> PivotForm {
        self.pivot_impl(a, false).expect("non-strict pivot is total")
    }

    /// Like [`GraphProduct::pivot`] but only strips exact inverse pairs.
    pub fn pivot_strict(&self, a: &GPElement) -> Result<PivotForm, GpError> {
        self.pivot_impl(a, true)
    }

    /// No shuffle of `a` starts and ends with syllables of the same vertex.
    pub fn is_cyclically_reduced(&self, a: &GPElement) -> bool {
        self.conjugation_step(&a.syllables).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pivot_str(g: &GraphProduct, s: &str) -> (String, String) {
        let p = g.pivot(&g.parse(s).unwrap());
        (g.render(&p.prefix), g.render(&p.core))
    }

    #[test]
    fn pivot_examples() {
        let g = GraphProduct::gamma1();
        assert_eq!(pivot_str(&g, "w u w^-1"), ("w".into(), "u".into()));
        assert_eq!(pivot_str(&g, "u w"), ("e".into(), "u w".into()));
        assert_eq!(pivot_str(&g, "u^2 w u^-1"), ("u".into(), "u w".into()));
        assert_eq!(pivot_str(&g, "e"), ("e".into(), "e".into()));
        assert_eq!(pivot_str(&g, "w u w^2 v w^-2 u^-1 w^-1"), ("w u w^2".into(), "v".into()));
    }

    #[test]
    fn cyclic_reduction_examples() {
        let g = GraphProduct::gamma1();
        let c = |s| g.is_cyclically_reduced(&g.parse(s).unwrap());
        assert!(c("u w"));
        assert!(!c("w u w^-1"));
        assert!(!c("u^2 w u^-1"));
        assert!(c("u v"));
        assert!(c("e"));
        // u and v commute, so u·(w)·v·u^-1 still conjugates off u.
        assert!(!c("u w v u^-1"));
    }

    #[test]
    fn strict_mode_refuses_splits() {
        let g = GraphProduct::gamma1();
        let split = g.parse("u^2 w u^-1").unwrap();
        assert_eq!(g.pivot_strict(&split), Err(GpError::SplitRequired));
        let exact = g.parse("w u w^-1").unwrap();
        assert_eq!(g.pivot_strict(&exact).unwrap(), g.pivot(&exact));
    }

    #[test]
    fn pivot_round_trips_on_ball() {
        let g = GraphProduct::gamma1();
        for a in g.ball(4).unwrap() {
            let PivotForm { prefix, core } = g.pivot(&a);
            assert_eq!(g.conjugate(&core, &prefix), a, "{}", g.render(&a));
            assert!(g.is_cyclically_reduced(&core));
            assert_eq!(core.is_identity(), a.is_identity());
        }
    }
}
