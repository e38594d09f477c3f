use std::collections::{BTreeSet, HashMap, VecDeque};

use num_complex::Complex64;

use wahp::algebra::GroupAlgebraElement;
use wahp::coset::{h_orbit, orbit_bfs, orbit_size_crosscheck, OrbitStatus};
use wahp::group::{enumerate_ball, GroupElement, GroupSpec, Index, Perm, Subgroup};
use wahp::harmonic::CosetVector;
use wahp::qn::{check_condition3, decide_condition6_finite, Scope, Truth};
use wahp::sweep::{catalogue_group, enumerate_subgroups, ORDER_CAP};

fn f2() -> GroupSpec {
    GroupSpec::free(2).unwrap()
}

fn s3() -> GroupSpec {
    GroupSpec::perm_from_cycles(3, &["(1 2)", "(1 2 3)"]).unwrap()
}

/// `F2 -> S3`, `a -> (1 2)`, `b -> (1 2 3)`, evaluated letter by letter.
fn phi(w: &GroupElement) -> GroupElement {
    let s = s3();
    w.as_word().unwrap().letters().iter().fold(s.identity(), |acc, l| {
        let x = s.generator(l.gen as usize);
        &acc * &if l.inv { x.inverse() } else { x }
    })
}

/// Schreier generators `t s (t')^-1` of `phi^-1(T)` from a BFS transversal
/// of the right cosets `T x`.
fn preimage_generators(t: &Subgroup) -> Vec<GroupElement> {
    let (g, s) = (f2(), s3());
    let key = |x: &GroupElement| t.elements().unwrap().iter().map(|y| y * x).min().unwrap();
    let mut transversal: HashMap<GroupElement, GroupElement> = HashMap::new();
    let mut queue = VecDeque::new();
    transversal.insert(key(&s.identity()), g.identity());
    queue.push_back(g.identity());
    let letters = [g.parse_word("a").unwrap(), g.parse_word("b").unwrap(), g.parse_word("a^-1").unwrap(), g.parse_word("b^-1").unwrap()];
    while let Some(w) = queue.pop_front() {
        for l in &letters {
            let next = &w * l;
            let k = key(&phi(&next));
            if let std::collections::hash_map::Entry::Vacant(e) = transversal.entry(k) {
                e.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut gens = Vec::new();
    for w in transversal.values() {
        for l in &letters[..2] {
            let next = w * l;
            let rep = &transversal[&key(&phi(&next))];
            let x = &next * &rep.inverse();
            if !x.is_identity() {
                gens.push(x);
            }
        }
    }
    gens.sort();
    gens.dedup();
    gens
}

#[test]
fn folding_matches_schreier_preimages() {
    let g = f2();
    let s = s3();
    let ball = enumerate_ball(&g, &g.generators(), 4);
    for words in [vec![], vec!["(1 2)"], vec!["(1 2 3)"], vec!["(1 2)", "(1 2 3)"], vec!["(1 3)"]] {
        let t = Subgroup::from_words(&s, &words).unwrap();
        let h = Subgroup::new(&g, preimage_generators(&t)).unwrap();
        assert_eq!(h.index_in(&Subgroup::whole(&g)).unwrap(), Index::Finite(6 / t.order().unwrap()));
        for w in &ball {
            assert_eq!(h.contains(w), t.contains(&phi(w)), "{w} against {t}");
        }
    }
}

/// Elements of `<gens>` reachable by products of at most `n` generators.
fn generated_ball(gens: &[&str], n: usize) -> BTreeSet<GroupElement> {
    let g = f2();
    let elements: Vec<GroupElement> = gens.iter().map(|w| g.parse_word(w).unwrap()).collect();
    enumerate_ball(&g, &elements, n).into_iter().collect()
}

#[test]
fn membership_matches_generated_balls() {
    // Nielsen-reduced bases: an element of length at most 4 is a product of at
    // most 4 basis elements.
    let g = f2();
    let ball = enumerate_ball(&g, &g.generators(), 4);
    for gens in [vec!["a"], vec!["a^2"], vec!["a", "b^2"], vec!["a b", "b a"], vec!["a^2", "b a b^-1"]] {
        let h = Subgroup::from_words(&g, &gens).unwrap();
        let accepted: BTreeSet<GroupElement> = ball.iter().filter(|w| h.contains(w)).cloned().collect();
        let spanned: BTreeSet<GroupElement> =
            generated_ball(&gens, 4).into_iter().filter(|w| w.as_word().unwrap().len() <= 4).collect();
        assert_eq!(accepted, spanned, "{gens:?}");
    }
}

#[test]
fn free_orbits_match_stabilizer_indices() {
    let g = f2();
    let ball = enumerate_ball(&g, &g.generators(), 3);
    for gens in [vec!["a^2", "b^2", "a b"], vec!["a", "b a b^-1"], vec!["a^3", "b"]] {
        let h = Subgroup::from_words(&g, &gens).unwrap();
        for x in &ball {
            let exact = orbit_size_crosscheck(x, &h).unwrap();
            let bfs = orbit_bfs(x, &h, 200);
            match exact {
                Index::Finite(n) => assert_eq!(bfs.size(), Some(n), "{x} in {h}"),
                Index::Infinite => assert_eq!(bfs.status, OrbitStatus::BudgetExhausted, "{x} in {h}"),
            }
        }
    }
}

/// Left cosets as element sets.
fn coset_set(x: &GroupElement, h: &Subgroup) -> BTreeSet<GroupElement> {
    h.elements().unwrap().iter().map(|y| x * y).collect()
}

#[test]
fn finite_coset_keys_match_element_sets() {
    let s4 = catalogue_group("S4").unwrap();
    let all = s4.elements().unwrap();
    for h in enumerate_subgroups(&s4, ORDER_CAP).unwrap() {
        let cosets: BTreeSet<BTreeSet<GroupElement>> = all.iter().map(|x| coset_set(x, &h)).collect();
        assert_eq!(cosets.len() * h.order().unwrap(), 24);
        for x in all.iter().step_by(5) {
            for y in &all {
                let same = wahp::coset::canonical_coset(x, &h) == wahp::coset::canonical_coset(y, &h);
                assert_eq!(same, coset_set(x, &h) == coset_set(y, &h));
            }
        }
        let v = CosetVector::delta(&all[3], &h);
        let moved = v.apply_pi(&all[7]);
        let target = coset_set(&(&all[7] * &all[3]), &h);
        let rep = moved.support().next().unwrap().representative().clone();
        assert!(target.contains(&rep));
    }
}

/// Subgroups by brute force over all subsets closed under multiplication.
fn closed_subsets(g: &GroupSpec) -> BTreeSet<Vec<GroupElement>> {
    let all = g.elements().unwrap();
    let e = g.identity();
    let others: Vec<&GroupElement> = all.iter().filter(|x| **x != e).collect();
    let mut found = BTreeSet::new();
    for mask in 0u32..(1 << others.len()) {
        let mut set: Vec<GroupElement> = vec![e.clone()];
        set.extend(others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| (*x).clone()));
        let lookup: BTreeSet<&GroupElement> = set.iter().collect();
        if set.iter().all(|x| set.iter().all(|y| lookup.contains(&(x * y)))) {
            set.sort();
            found.insert(set);
        }
    }
    found
}

#[test]
fn subgroup_lattices_match_brute_force() {
    for name in ["trivial", "Z4", "V4", "Z6", "S3", "D4", "Q8", "A4"] {
        let g = catalogue_group(name).unwrap();
        let listed: BTreeSet<Vec<GroupElement>> =
            enumerate_subgroups(&g, ORDER_CAP).unwrap().iter().map(|h| h.elements().unwrap().to_vec()).collect();
        assert_eq!(listed, closed_subsets(&g), "{name}");
    }
}

/// cond6 by trying every nonempty subset of `G \ K`.
fn condition6_brute_force(h: &Subgroup, k: &Subgroup) -> bool {
    let outside: Vec<GroupElement> = h.ambient().elements().unwrap().into_iter().filter(|x| !k.contains(x)).collect();
    let hs = h.elements().unwrap();
    (1u32..(1 << outside.len())).all(|mask| {
        let f: Vec<&GroupElement> = outside.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| x).collect();
        hs.iter().any(|x| f.iter().all(|a| f.iter().all(|b| !h.contains(&(&(*a * x) * *b)))))
    })
}

#[test]
fn condition6_decision_matches_all_subsets() {
    for name in ["Z4", "V4", "S3", "D4", "Q8"] {
        let g = catalogue_group(name).unwrap();
        let subgroups = enumerate_subgroups(&g, ORDER_CAP).unwrap();
        for k in &subgroups {
            for h in subgroups.iter().filter(|h| h.is_subgroup_of(k)) {
                let (decided, _) = decide_condition6_finite(h, k).unwrap();
                assert_eq!(decided, condition6_brute_force(h, k), "{name}: {h} < {k}");
            }
        }
    }
}

#[test]
fn finite_quasi_normalizers_are_everything() {
    // every H-orbit on a finite G/H is finite, so each g outside K is a violation
    for name in ["S3", "D4", "A4"] {
        let g = catalogue_group(name).unwrap();
        let subgroups = enumerate_subgroups(&g, ORDER_CAP).unwrap();
        for k in &subgroups {
            for h in subgroups.iter().filter(|h| h.is_subgroup_of(k)) {
                let v = check_condition3(h, k, Scope::All, 100).unwrap();
                let outside = g.order().unwrap() - k.order().unwrap();
                assert_eq!(v.violations.len(), outside);
                assert_eq!(v.holds == Truth::True, outside == 0);
                for violation in &v.violations {
                    let orbit = h_orbit(&violation.element, h, 100);
                    let double: BTreeSet<GroupElement> = h
                        .elements()
                        .unwrap()
                        .iter()
                        .flat_map(|x| h.elements().unwrap().iter().map(move |y| &(x * &violation.element) * y))
                        .collect();
                    assert_eq!(orbit.size().unwrap() * h.order().unwrap(), double.len());
                }
            }
        }
    }
}

/// Left-regular matrix of `x` on `C[G]` in the basis `all`.
fn regular_matrix(x: &GroupAlgebraElement, all: &[GroupElement]) -> Vec<Vec<Complex64>> {
    let index: HashMap<&GroupElement, usize> = all.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut m = vec![vec![Complex64::new(0.0, 0.0); all.len()]; all.len()];
    for (g, c) in x.terms() {
        for (j, basis) in all.iter().enumerate() {
            m[index[&(g * basis)]][j] += c;
        }
    }
    m
}

fn matmul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

#[test]
fn convolution_matches_regular_representation() {
    let s = s3();
    let all = s.elements().unwrap();
    let x = GroupAlgebraElement::from_terms(&s, all.iter().enumerate().map(|(i, g)| (g.clone(), Complex64::new(i as f64, 1.0)))).unwrap();
    let y = GroupAlgebraElement::from_terms(
        &s,
        all.iter().enumerate().filter(|(i, _)| i % 2 == 0).map(|(i, g)| (g.clone(), Complex64::new(1.0, -(i as f64)))),
    )
    .unwrap();
    let product = x.convolve(&y).unwrap();
    assert_eq!(regular_matrix(&product, &all), matmul(&regular_matrix(&x, &all), &regular_matrix(&y, &all)));
}

#[test]
fn permutation_convention_matches_hand_table() {
    // sigma tau applies tau first
    let compose = |s: &[u16], t: &[u16]| t.iter().map(|&i| s[i as usize]).collect::<Vec<u16>>();
    let t12 = vec![1, 0, 2];
    let t13 = vec![2, 1, 0];
    let expected = Perm::from_images(compose(&t12, &t13)).unwrap();
    let s = s3();
    let got = &s.parse_word("(1 2)").unwrap() * &s.parse_word("(1 3)").unwrap();
    assert_eq!(got.as_perm().unwrap(), &expected);
    assert_eq!(got.to_string(), "(1 3 2)");
}
