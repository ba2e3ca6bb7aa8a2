//! Length functions on graph products.
//!
//! [`GraphProduct::dudley_norm`] sums vertex norms over the canonical
//! syllables and is a Dudley norm whenever every vertex norm is one.
//! [`GraphProduct::kernel_sigma_norm`] counts syllables; that count is a
//! Dudley norm on the kernel of sigma but not off it.

use serde::Serialize;

use crate::gp::{GPElement, GpError, GraphProduct};
use crate::vertex::VertexGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Clause {
    Identity,
    Symmetry,
    Triangle,
    Power,
}

/// A failed length-function or Dudley clause, `lhs >= rhs` expected.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub element: String,
    pub clause: Clause,
    pub other: Option<String>,
    pub n: u64,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LengthFunctionReport {
    pub samples: usize,
    pub violations: Vec<Violation>,
}

impl LengthFunctionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

impl GraphProduct {
    /// Sum of the vertex norms of the canonical syllables.
    pub fn dudley_norm(&self, a: &GPElement) -> Result<u64, GpError> {
        self.require_norm()?;
        Ok(a
            .syllables()
            .iter()
            .map(|s| self.vertex_groups()[s.vertex].norm(&s.value).expect("checked"))
            .sum())
    }

    pub fn syllable_length(&self, a: &GPElement) -> u64 {
        a.len() as u64
    }

    pub fn kernel_sigma_norm(&self, a: &GPElement) -> Result<u64, GpError> {
        if !self.in_kernel_of_sigma(a) {
            return Err(GpError::NotInKernel);
        }
        Ok(self.syllable_length(a))
    }

    /// Checks the length-function axioms on `elements` (all pairs for the
    /// triangle inequality) and `L(g^n) >= max(n, L(g))` for `1 <= n <=
    /// n_max` and every non-identity sample.
    pub fn verify_dudley<F>(&self, norm: F, elements: &[GPElement], n_max: u64) -> LengthFunctionReport
    where
        F: Fn(&GPElement) -> u64,
    {
        let mut violations = Vec::new();
        let norms: Vec<u64> = elements.iter().map(&norm).collect();
        let names: Vec<String> = elements.iter().map(|a| self.render(a)).collect();

        let id_norm = norm(&self.identity());
        if id_norm != 0 {
            violations.push(Violation {
                element: "e".into(),
                clause: Clause::Identity,
                other: None,
                n: 0,
                lhs: 0,
                rhs: id_norm,
            });
        }
        for (i, a) in elements.iter().enumerate() {
            let inv = norm(&self.invert(a));
            if inv != norms[i] {
                violations.push(Violation {
                    element: names[i].clone(),
                    clause: Clause::Symmetry,
                    other: None,
                    n: 0,
                    lhs: inv,
                    rhs: norms[i],
                });
            }
            for (j, b) in elements.iter().enumerate() {
                let ab = norm(&self.multiply(a, b));
                if ab > norms[i] + norms[j] {
                    violations.push(Violation {
                        element: names[i].clone(),
                        clause: Clause::Triangle,
                        other: Some(names[j].clone()),
                        n: 0,
                        lhs: norms[i] + norms[j],
                        rhs: ab,
                    });
                }
            }
            if a.is_identity() {
                continue;
            }
            for n in 1..=n_max {
                let lhs = norm(&self.power(a, n as i64));
                let rhs = n.max(norms[i]);
                if lhs < rhs {
                    violations.push(Violation {
                        element: names[i].clone(),
                        clause: Clause::Power,
                        other: None,
                        n,
                        lhs,
                        rhs,
                    });
                }
            }
        }
        violations.sort();
        LengthFunctionReport {
            samples: elements.len(),
            violations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GroupFile;

    #[test]
    fn dudley_norm_examples() {
        let g = GraphProduct::gamma1();
        let p = |s| g.parse(s).unwrap();
        assert_eq!(g.dudley_norm(&p("u^2 v^-3")), Ok(5));
        assert_eq!(g.dudley_norm(&p("e")), Ok(0));
        let cube = g.power(&p("u v"), 3);
        assert_eq!(g.render(&cube), "u^3 v^3");
        assert_eq!(g.dudley_norm(&cube), Ok(6));
        assert!(6 >= 3u64.max(g.dudley_norm(&p("u v")).unwrap()));
    }

    #[test]
    fn syllable_and_kernel_norms() {
        let g = GraphProduct::gamma1();
        let p = |s| g.parse(s).unwrap();
        assert_eq!(g.syllable_length(&p("w u w^-1")), 3);
        assert_eq!(g.syllable_length(&p("e")), 0);
        assert_eq!(g.syllable_length(&g.power(&p("u w"), 3)), 6);
        assert_eq!(g.kernel_sigma_norm(&p("u w u^-1 w^-1")), Ok(4));
        assert_eq!(g.kernel_sigma_norm(&p("e")), Ok(0));
        assert_eq!(g.kernel_sigma_norm(&p("u^2 w")), Err(GpError::NotInKernel));
    }

    #[test]
    fn norm_requires_integer_vertices() {
        let file =
            GroupFile::parse(r#"{"vertices":["a","b"],"vertex_groups":{"a":"Z","b":"Z/2"}}"#)
                .unwrap();
        let g = GraphProduct::from_file(&file).unwrap();
        assert_eq!(g.dudley_norm(&g.parse("a").unwrap()), Err(GpError::NoNorm("b".into())));
    }

    #[test]
    fn verify_accepts_dudley_norm_on_small_ball() {
        let g = GraphProduct::gamma1();
        let ball = g.ball(3).unwrap();
        let report = g.verify_dudley(|a| g.dudley_norm(a).unwrap(), &ball, 6);
        assert!(report.holds(), "{:?}", &report.violations[..report.violations.len().min(3)]);
        assert_eq!(report.samples, ball.len());
    }

    #[test]
    fn syllable_count_fails_off_the_kernel() {
        let g = GraphProduct::gamma1();
        let ball = g.ball(2).unwrap();
        let report = g.verify_dudley(|a| g.syllable_length(a), &ball, 3);
        assert!(!report.holds());
        assert!(report.violations.iter().any(|v| v.element == "u"
            && v.clause == Clause::Power
            && v.n == 3
            && v.lhs == 1
            && v.rhs == 3));
        // only the power clause can fail for a genuine length function
        assert!(report.violations.iter().all(|v| v.clause == Clause::Power));
    }

    #[test]
    fn syllable_count_is_dudley_on_commutators() {
        let g = GraphProduct::gamma1();
        let mut kernel = Vec::new();
        for a in g.ball(2).unwrap() {
            for b in g.ball(2).unwrap() {
                let c = g.product([&a, &b, &g.invert(&a), &g.invert(&b)]);
                if !kernel.contains(&c) {
                    kernel.push(c);
                }
            }
        }
        let report = g.verify_dudley(|a| g.kernel_sigma_norm(a).unwrap(), &kernel, 5);
        assert!(report.holds());
    }
}
