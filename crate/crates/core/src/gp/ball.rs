//! Balls of the Dudley norm, enumerated breadth first in the Cayley graph of
//! the norm-one generators.

use std::collections::HashSet;
use std::sync::Arc;

use super::{GPElement, GpError, GraphProduct};
use crate::vertex::VertexGroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallEntry {
    pub element: GPElement,
    pub norm: u64,
    pub sigma: Vec<i64>,
    /// Canonical serialization; the secondary sort key.
    pub key: String,
}

/// All elements of norm at most `radius`, sorted by `(norm, serialization)`.
#[derive(Debug, Clone)]
pub struct Ball {
    radius: u64,
    entries: Vec<BallEntry>,
    // layer_ends[r] = number of entries with norm <= r
    layer_ends: Vec<usize>,
}

impl Ball {
    pub fn radius(&self) -> u64 {
        self.radius
    }

    pub fn entries(&self) -> &[BallEntry] {
        &self.entries
    }

    /// The sub-ball of the given radius, clamped to this ball's radius.
    pub fn within(&self, radius: u64) -> &[BallEntry] {
        let r = radius.min(self.radius) as usize;
        &self.entries[..self.layer_ends[r]]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Position of `a` in the `(norm, serialization)` enumeration.
    pub fn index_of(&self, a: &GPElement, norm: u64, key: &str) -> Option<usize> {
        if norm > self.radius {
            return None;
        }
        let start = if norm == 0 { 0 } else { self.layer_ends[norm as usize - 1] };
        let layer = &self.entries[start..self.layer_ends[norm as usize]];
        layer
            .binary_search_by(|e| e.key.as_str().cmp(key))
            .ok()
            .filter(|&i| layer[i].element == *a)
            .map(|i| start + i)
    }
}

impl GraphProduct {
    fn norm_one_generators(&self) -> Result<Vec<GPElement>, GpError> {
        let mut out = Vec::new();
        for (v, group) in self.groups.iter().enumerate() {
            let gens = group
                .generators_of_norm_one()
                .ok_or_else(|| GpError::NoNorm(self.graph.name(v).to_string()))?;
            out.extend(gens.into_iter().map(|x| self.generator(v, x)));
        }
        Ok(out)
    }

    fn build_ball(&self, radius: u64) -> Result<Ball, GpError> {
        let gens = self.norm_one_generators()?;
        let mut entries = Vec::new();
        let mut layer_ends = Vec::new();
        let mut previous: HashSet<GPElement> = HashSet::new();
        let mut current: Vec<GPElement> = vec![self.identity()];
        for r in 0..=radius {
            let mut layer: Vec<BallEntry> = current
                .iter()
                .map(|a| BallEntry {
                    element: a.clone(),
                    norm: r,
                    sigma: self.sigma(a),
                    key: self.render(a),
                })
                .collect();
            layer.sort_by(|x, y| x.key.cmp(&y.key));
            debug_assert!(layer.iter().all(|e| self.norm_of(&e.element) == r));
            entries.extend(layer);
            layer_ends.push(entries.len());
            if r == radius {
                break;
            }
            let current_set: HashSet<GPElement> = current.iter().cloned().collect();
            let mut next: HashSet<GPElement> = HashSet::new();
            for a in &current {
                for s in &gens {
                    let b = self.multiply(a, s);
                    if !previous.contains(&b) && !current_set.contains(&b) {
                        next.insert(b);
                    }
                }
            }
            previous = current_set;
            current = next.into_iter().collect();
        }
        Ok(Ball { radius, entries, layer_ends })
    }

    /// Shared ball of at least the requested radius; reuses the largest ball
    /// built so far.
    pub fn ball_cached(&self, radius: u64) -> Result<Arc<Ball>, GpError> {
        let mut cache = self.ball_cache.lock().expect("ball cache poisoned");
        if let Some(ball) = cache.as_ref() {
            if ball.radius >= radius {
                return Ok(Arc::clone(ball));
            }
        }
        let ball = Arc::new(self.build_ball(radius)?);
        *cache = Some(Arc::clone(&ball));
        Ok(ball)
    }

    /// Every element of Dudley norm at most `radius`, sorted by norm and then
    /// by serialization.
    pub fn ball(&self, radius: u64) -> Result<Vec<GPElement>, GpError> {
        let ball = self.ball_cached(radius)?;
        Ok(ball.within(radius).iter().map(|e| e.element.clone()).collect())
    }

    // Sum of absolute syllable values; only meaningful for integer vertices.
    pub(crate) fn norm_of(&self, a: &GPElement) -> u64 {
        a.syllables.iter().map(|s| s.value.unsigned_abs()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{CommutationGraph, GroupFile};

    #[test]
    fn small_balls() {
        let g1 = GraphProduct::gamma1();
        assert_eq!(g1.ball(0).unwrap(), vec![g1.identity()]);

        let z = GraphProduct::raag(CommutationGraph::empty(&["u"]).unwrap());
        let names: Vec<String> = z.ball(2).unwrap().iter().map(|a| z.render(a)).collect();
        assert_eq!(names, ["e", "u", "u^-1", "u^-2", "u^2"]);

        let f2 = GraphProduct::free2();
        assert_eq!(f2.ball(2).unwrap().len(), 17);
        assert_eq!(f2.ball(3).unwrap().len(), 1 + 4 + 12 + 36);
        let start: Vec<String> = f2.ball(1).unwrap().iter().map(|a| f2.render(a)).collect();
        assert_eq!(start, ["e", "u", "u^-1", "w", "w^-1"]);
    }

    #[test]
    fn free_abelian_ball_sizes() {
        // |{x in Z^2 : |x|_1 <= r}| = 2r^2 + 2r + 1
        let z2 = GraphProduct::raag(CommutationGraph::complete(&["a", "b"]).unwrap());
        for r in 0..6u64 {
            assert_eq!(z2.ball(r).unwrap().len() as u64, 2 * r * r + 2 * r + 1);
        }
    }

    #[test]
    fn cached_ball_serves_smaller_radii() {
        let g = GraphProduct::gamma1();
        let big = g.ball_cached(4).unwrap();
        let small = g.ball(2).unwrap();
        assert_eq!(big.within(2).len(), small.len());
        assert!(Arc::ptr_eq(&big, &g.ball_cached(3).unwrap()));
        let (a, entry) = (small[7].clone(), &big.entries()[7]);
        assert_eq!(big.index_of(&a, entry.norm, &entry.key), Some(7));
    }

    #[test]
    fn torsion_vertices_have_no_ball() {
        let file =
            GroupFile::parse(r#"{"vertices":["a"],"vertex_groups":{"a":"Z/2"}}"#).unwrap();
        let g = GraphProduct::from_file(&file).unwrap();
        assert_eq!(g.ball(1), Err(GpError::NoNorm("a".into())));
    }
}
