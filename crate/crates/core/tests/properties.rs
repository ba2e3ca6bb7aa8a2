use proptest::prelude::*;

use slender::cx::{ce_invert, ce_multiply, ce_power, ce_quotient, quotient_multiply, CEElement};
use slender::equations::{check_solution, cyclic_symbolic_solve, symbolic_tail, EquationSystem, SolutionTuple};
use slender::hawaiian::{self, project, split, Letter};
use slender::{CommutationGraph, GraphProduct};

fn gamma1() -> GraphProduct {
    GraphProduct::gamma1()
}

fn raw_word(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..rank, -3i64..=3), 0..=max_len)
}

fn heg_word() -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0usize..10, prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2)]), 0..=10)
        .prop_map(|v| v.into_iter().map(|(i, k)| Letter::new(i, k)).collect())
}

fn ce_element() -> impl Strategy<Value = CEElement> {
    (-3i64..=3, prop::collection::vec((2u64..=6, -7i64..=7), 0..=4)).prop_map(|(a, xs)| {
        xs.into_iter()
            .fold(CEElement::z(a), |acc, (n, r)| ce_multiply(&acc, &CEElement::x(n, r)))
    })
}

proptest! {
    #[test]
    fn gp_group_axioms(a in raw_word(3, 6), b in raw_word(3, 6), c in raw_word(3, 6)) {
        let g = gamma1();
        let (a, b, c) = (g.normalize(&a), g.normalize(&b), g.normalize(&c));
        prop_assert_eq!(g.multiply(&g.multiply(&a, &b), &c), g.multiply(&a, &g.multiply(&b, &c)));
        prop_assert!(g.multiply(&a, &g.invert(&a)).is_identity());
        prop_assert_eq!(g.multiply(&a, &g.identity()), a.clone());
    }

    #[test]
    fn normalize_is_idempotent(a in raw_word(3, 8)) {
        let g = gamma1();
        let once = g.normalize(&a);
        let again: Vec<(usize, i64)> = once.syllables().iter().map(|s| (s.vertex, s.value)).collect();
        prop_assert_eq!(g.normalize(&again), once.clone());
        prop_assert_eq!(g.parse(&g.render(&once)).unwrap(), once);
    }

    #[test]
    fn sigma_is_a_homomorphism(a in raw_word(3, 6), b in raw_word(3, 6)) {
        let g = gamma1();
        let (a, b) = (g.normalize(&a), g.normalize(&b));
        let sum: Vec<i64> = g.sigma(&a).iter().zip(g.sigma(&b)).map(|(x, y)| x + y).collect();
        prop_assert_eq!(g.sigma(&g.multiply(&a, &b)), sum);
    }

    #[test]
    fn power_matches_repeated_product(a in raw_word(3, 5), n in -5i64..=5) {
        let g = gamma1();
        let a = g.normalize(&a);
        let base = if n < 0 { g.invert(&a) } else { a.clone() };
        let slow = (0..n.abs()).fold(g.identity(), |acc, _| g.multiply(&acc, &base));
        prop_assert_eq!(g.power(&a, n), slow);
    }

    #[test]
    fn pivot_recomposes(a in raw_word(3, 7)) {
        let g = gamma1();
        let a = g.normalize(&a);
        let form = g.pivot(&a);
        prop_assert_eq!(g.conjugate(&form.core, &form.prefix), a);
        prop_assert!(g.is_cyclically_reduced(&form.core));
    }

    #[test]
    fn dudley_power_clause(a in raw_word(3, 5), n in 1i64..=6) {
        let g = gamma1();
        let a = g.normalize(&a);
        prop_assume!(!a.is_identity());
        let l = g.dudley_norm(&a).unwrap();
        prop_assert!(g.dudley_norm(&g.power(&a, n)).unwrap() >= l.max(n as u64));
    }

    #[test]
    fn free_abelian_normal_form_is_exponent_vector(a in raw_word(3, 8)) {
        let z3 = GraphProduct::raag(CommutationGraph::complete(&["a", "b", "c"]).unwrap());
        let x = z3.normalize(&a);
        prop_assert_eq!(x.len(), z3.sigma(&x).iter().filter(|&&s| s != 0).count());
    }

    #[test]
    fn symbolic_cascade_substitutes(j in 1u64..=3, k in prop::collection::vec(1u64..=5, 1..=6)) {
        let e = cyclic_symbolic_solve(j, &k).unwrap();
        for (m, &km) in k.iter().enumerate() {
            prop_assert_eq!(e[m], (j as i64) * e[0] + (km as i64) * e[m + 1]);
        }
        prop_assert_eq!(*e.last().unwrap(), symbolic_tail(j, &k).unwrap());
        let z = GraphProduct::raag(CommutationGraph::empty(&["u"]).unwrap());
        let sys = EquationSystem::uniform(z.generator(0, e[0]), j, k.clone()).unwrap();
        let b = SolutionTuple(e.iter().map(|&x| z.generator(0, x)).collect());
        prop_assert!(check_solution(&z, &sys, &b).unwrap().holds());
    }

    #[test]
    fn hawaiian_projection_coherence(w in heg_word(), k in 0usize..=8, m in 0usize..=8) {
        let once = project(&w, m);
        let (twice, direct) = (project(once.letters(), k), project(&w, k.min(m)));
        prop_assert_eq!(twice.letters(), direct.letters());
    }

    #[test]
    fn hawaiian_projection_is_a_homomorphism(a in heg_word(), b in heg_word(), n in 0usize..=8) {
        let ab: Vec<Letter> = a.iter().chain(&b).copied().collect();
        let (pa, pb) = (project(&a, n), project(&b, n));
        let joined: Vec<Letter> = pa.letters().iter().chain(pb.letters()).copied().collect();
        let (whole, reduced) = (project(&ab, n), hawaiian::reduce(joined));
        prop_assert_eq!(whole.letters(), reduced.as_slice());
    }

    #[test]
    fn hawaiian_split_round_trips(w in heg_word(), m in 0usize..=10) {
        let t = project(&w, 10);
        let blocks = split(&t, m).unwrap();
        let joined = hawaiian::reduce(blocks.iter().flat_map(|b| b.letters.iter().copied()));
        prop_assert_eq!(joined.as_slice(), t.letters());
        prop_assert!(blocks.windows(2).all(|p| p[0].side != p[1].side));
        prop_assert!(blocks.iter().all(|b| !b.letters.is_empty()));
    }

    #[test]
    fn ce_associative(a in ce_element(), b in ce_element(), c in ce_element()) {
        prop_assert_eq!(
            ce_multiply(&ce_multiply(&a, &b), &c),
            ce_multiply(&a, &ce_multiply(&b, &c))
        );
        prop_assert!(ce_multiply(&a, &ce_invert(&a)).is_identity());
    }

    #[test]
    fn ce_center(a in ce_element(), s in -5i64..=5) {
        let z = CEElement::z(s);
        prop_assert_eq!(ce_multiply(&a, &z), ce_multiply(&z, &a));
    }

    #[test]
    fn ce_quotient_homomorphism(a in ce_element(), b in ce_element()) {
        prop_assert_eq!(
            ce_quotient(&ce_multiply(&a, &b)),
            quotient_multiply(&ce_quotient(&a), &ce_quotient(&b))
        );
        prop_assert_eq!(ce_quotient(&a).is_empty(), a.word().is_empty());
    }

    #[test]
    fn ce_normal_form_invariants(a in ce_element(), n in -4i64..=4) {
        let p = ce_power(&a, n);
        prop_assert!(p.word().iter().all(|s| 0 < s.r && s.r < s.n));
        prop_assert!(p.word().windows(2).all(|w| w[0].n != w[1].n));
    }
}
