mod support;

use malcev::lie::{build_free, witt_dim, Generator, GradedLieAlgebra, LieElement, LieTree};
use malcev::linalg::rational::Rational;
use proptest::prelude::*;
use support::{assoc_rank, commutator, expand, expand_basis, lyndon_bracket, lyndon_words, q, witt_oracle};

fn gens(k: usize) -> Vec<Generator> {
    (0..k).map(|i| Generator::new(format!("g{i}"), -1)).collect()
}

fn free(k: usize, n: usize) -> GradedLieAlgebra {
    build_free(&gens(k), n).unwrap()
}

fn element(alg: &GradedLieAlgebra, coeffs: &[(usize, i64, i64)]) -> LieElement {
    let mut v = vec![Rational::from_integer(0.into()); alg.dim()];
    for &(i, n, d) in coeffs {
        v[i % alg.dim()] += q(n, d);
    }
    alg.from_dense(&v)
}

fn tree_weight(alg: &GradedLieAlgebra, t: &LieTree) -> i64 {
    match t {
        LieTree::Generator(g) => alg.generators()[*g].weight,
        LieTree::Bracket(a, b) => tree_weight(alg, a) + tree_weight(alg, b),
    }
}

#[test]
fn witt_formula_matches_necklace_count() {
    for k in 1..=4 {
        for n in 1..=6 {
            assert_eq!(witt_dim(k as u64, n as u32) as usize, witt_oracle(k, n), "k={k} n={n}");
        }
    }
    assert_eq!(witt_dim(2, 6), 9);
}

#[test]
fn degree_dims_match_witt() {
    for k in 1..=3 {
        let alg = free(k, 6);
        let expected: Vec<usize> = (1..=6).map(|n| witt_dim(k as u64, n) as usize).collect();
        assert_eq!(alg.degree_dims(), expected, "k={k}");
    }
    assert_eq!(free(2, 3).degree_dims(), vec![2, 1, 2]);
    assert_eq!(free(3, 2).degree_dims(), vec![3, 3]);
}

/// The Hall words of each degree embed as independent Lie polynomials
/// spanning the same space as the Lyndon basis.
#[test]
fn hall_basis_spans_the_free_lie_algebra() {
    for (k, n) in [(2, 6), (3, 5)] {
        let alg = free(k, n);
        for d in 1..=n {
            let hall: Vec<_> = alg.degree_range(d).map(|i| expand_basis(&alg, i)).collect();
            let lyndon: Vec<_> = lyndon_words(k, d).iter().map(|w| lyndon_bracket(w)).collect();
            assert_eq!(assoc_rank(&hall), hall.len(), "independence k={k} d={d}");
            let mut both = hall.clone();
            both.extend(lyndon.iter().cloned());
            assert_eq!(assoc_rank(&both), lyndon.len(), "same span k={k} d={d}");
        }
    }
}

#[test]
fn structure_constants_match_commutators() {
    for (k, n) in [(2, 6), (3, 4)] {
        let alg = free(k, n);
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                if alg.degree(i) + alg.degree(j) > n {
                    continue;
                }
                let lhs = expand(&alg, &alg.element(alg.bracket_basis(i, j)));
                let rhs = commutator(&expand_basis(&alg, i), &expand_basis(&alg, j), usize::MAX);
                assert_eq!(lhs, rhs, "[e{i}, e{j}] k={k}");
            }
        }
    }
}

#[test]
fn jacobi_on_all_basis_triples() {
    for k in 1..=3 {
        for n in 1..=5 {
            let alg = free(k, n);
            assert!(alg.jacobi_violations().is_empty(), "k={k} n={n}");
        }
    }
}

#[test]
fn brackets_above_the_class_vanish() {
    let alg = free(2, 3);
    for i in alg.degree_range(2) {
        for j in alg.degree_range(2) {
            assert!(alg.bracket_basis(i, j).is_empty());
        }
    }
}

#[test]
fn weights_are_additive() {
    let alg = build_free(
        &[Generator::new("a", -1), Generator::new("b", -2), Generator::new("c", -3)],
        5,
    )
    .unwrap();
    for i in 0..alg.dim() {
        assert_eq!(alg.weight(i), tree_weight(&alg, alg.tree(i)));
    }
    assert!(alg.grading_violations().is_empty());
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            for (&t, _) in &alg.bracket_basis(i, j) {
                assert_eq!(alg.weight(t), alg.weight(i) + alg.weight(j));
                assert_eq!(alg.degree(t), alg.degree(i) + alg.degree(j));
            }
        }
    }
}

fn coeffs() -> impl Strategy<Value = Vec<(usize, i64, i64)>> {
    prop::collection::vec((0usize..1000, -6i64..=6, 1i64..=3), 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_alternating_and_bilinear(a in coeffs(), b in coeffs(), c in coeffs()) {
        let alg = free(3, 4);
        let (x, y, z) = (element(&alg, &a), element(&alg, &b), element(&alg, &c));
        prop_assert!(alg.bracket(&x, &x).unwrap().is_zero());
        let xy = alg.bracket(&x, &y).unwrap();
        let yx = alg.bracket(&y, &x).unwrap();
        prop_assert!(xy.checked_add(&yx).unwrap().is_zero());
        let lhs = alg.bracket(&x, &y.checked_add(&z).unwrap()).unwrap();
        let rhs = xy.checked_add(&alg.bracket(&x, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi_on_random_elements(a in coeffs(), b in coeffs(), c in coeffs()) {
        let alg = free(2, 5);
        let (x, y, z) = (element(&alg, &a), element(&alg, &b), element(&alg, &c));
        let br = |u: &LieElement, v: &LieElement| alg.bracket(u, v).unwrap();
        let total = br(&br(&x, &y), &z)
            .checked_add(&br(&br(&y, &z), &x)).unwrap()
            .checked_add(&br(&br(&z, &x), &y)).unwrap();
        prop_assert!(total.is_zero());
    }

    /// `[x,[y,z]]` computed directly and through the Leibniz expansion
    /// `[[x,y],z] + [y,[x,z]]` give the same canonical element, which is
    /// also the image of the associative commutator.
    #[test]
    fn rewriting_is_confluent(a in coeffs(), b in coeffs(), c in coeffs()) {
        let alg = free(3, 4);
        let (x, y, z) = (element(&alg, &a), element(&alg, &b), element(&alg, &c));
        let br = |u: &LieElement, v: &LieElement| alg.bracket(u, v).unwrap();
        let direct = br(&x, &br(&y, &z));
        let leibniz = br(&br(&x, &y), &z).checked_add(&br(&y, &br(&x, &z))).unwrap();
        prop_assert_eq!(&direct, &leibniz);
        let inner = commutator(&expand(&alg, &y), &expand(&alg, &z), 4);
        prop_assert_eq!(expand(&alg, &direct), commutator(&expand(&alg, &x), &inner, 4));
    }
}
