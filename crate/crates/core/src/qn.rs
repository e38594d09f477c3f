//! One-sided quasi-normalizer checks and the `FhF ∩ H = ∅` search.
//!
//! cond6 quantifies `F` over finite subsets of `G \ K`. The weaker
//! reading with `F ⊂ G \ H` is not equivalent when `K ≠ H` (for `2Z < Z`,
//! every `F + h + F` is even, yet every element of `Z` quasi-normalizes
//! `2Z` trivially). The two readings agree when `K = H`.

use std::fmt;

use crate::coset::{h_orbit, OrbitStatus};
use crate::group::{enumerate_ball, GroupElement, Subgroup};
use crate::Error;

/// Three-valued answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::Unknown => "unknown",
        })
    }
}

/// Which elements of `G` a check ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Every element of a finite group.
    All,
    /// The ball of this radius in the standard generators of `G`.
    Ball(usize),
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::All => f.write_str("all"),
            Scope::Ball(r) => write!(f, "ball({r})"),
        }
    }
}

fn scope_elements(h: &Subgroup, scope: Scope) -> Result<Vec<GroupElement>, Error> {
    let ambient = h.ambient();
    match scope {
        Scope::All => {
            let mut all = ambient
                .elements()
                .ok_or(Error::Precondition("scope 'all' requires a finite ambient group".into()))?;
            all.sort();
            Ok(all)
        }
        Scope::Ball(r) => Ok(enumerate_ball(ambient, &ambient.generators(), r)),
    }
}

fn check_chain(h: &Subgroup, k: &Subgroup) -> Result<(), Error> {
    if h.ambient() != k.ambient() {
        return Err(Error::Precondition("H and K live in different ambient groups".into()));
    }
    if let Some(g) = h.first_generator_outside(k) {
        return Err(Error::Precondition(format!("H is not contained in K: generator {g} is not in K")));
    }
    Ok(())
}

/// An element outside `K` whose `H`-orbit on `G/H` is finite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub element: GroupElement,
    pub covering_family: Vec<GroupElement>,
}

impl Violation {
    /// `F = {f^-1 : f in family}`, which meets `H` on the right of every
    /// `h g`: from `h g ∈ f H` follows `f^-1 h g ∈ H`.
    pub fn failure_set(&self) -> Vec<GroupElement> {
        self.covering_family.iter().map(|f| f.inverse()).collect()
    }

    /// Re-checks with membership and multiplication only: `g ∉ K`, `gH` is
    /// among the family's cosets, and those cosets are permuted by every
    /// generator of `H`, so `Hg ⊂ F H`.
    pub fn verify(&self, h: &Subgroup, k: &Subgroup) -> bool {
        let same = |x: &GroupElement, y: &GroupElement| h.contains(&(&x.inverse() * y));
        let covered = |x: &GroupElement| self.covering_family.iter().any(|f| same(f, x));
        !k.contains(&self.element)
            && covered(&self.element)
            && self.covering_family.iter().all(|f| h.generator_steps().iter().all(|s| covered(&(s * f))))
    }
}

#[derive(Clone, Debug)]
pub struct Verdict3 {
    pub holds: Truth,
    pub violations: Vec<Violation>,
    pub exhaustive: bool,
    pub scope: Scope,
    /// Elements of the scope outside `K`.
    pub tested: usize,
    /// Elements outside `K` proven not to quasi-normalize `H`.
    pub infinite_certified: Vec<GroupElement>,
    /// Elements outside `K` whose orbit neither closed nor was certified infinite.
    pub unknown: Vec<GroupElement>,
}

/// Checks `qN(H) ⊂ K` over `scope`: every `g ∉ K` must have an infinite
/// `H`-orbit on `G/H`.
pub fn check_condition3(h: &Subgroup, k: &Subgroup, scope: Scope, budget: usize) -> Result<Verdict3, Error> {
    check_chain(h, k)?;
    let elements = scope_elements(h, scope)?;
    let exhaustive = match h.ambient().order() {
        Some(order) => elements.len() == order,
        None => false,
    };
    let mut verdict = Verdict3 {
        holds: Truth::True,
        violations: Vec::new(),
        exhaustive,
        scope,
        tested: 0,
        infinite_certified: Vec::new(),
        unknown: Vec::new(),
    };
    for g in elements.into_iter().filter(|g| !k.contains(g)) {
        verdict.tested += 1;
        let orbit = h_orbit(&g, h, budget);
        match orbit.status {
            OrbitStatus::Finite => verdict.violations.push(Violation { element: g, covering_family: orbit.covering_family }),
            OrbitStatus::InfiniteCertified => verdict.infinite_certified.push(g),
            OrbitStatus::BudgetExhausted => verdict.unknown.push(g),
        }
    }
    verdict.holds = if !verdict.violations.is_empty() {
        Truth::False
    } else if !verdict.unknown.is_empty() {
        Truth::Unknown
    } else {
        Truth::True
    };
    Ok(verdict)
}

/// Outcome of a bounded search over `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// No candidate in the searched ball works; not a proof.
    NotFoundWithinRadius { radius: usize, tested: usize },
    /// Every element of a finite `H` was tried and none works.
    Falsified { tested: usize },
}

/// Candidates for `h`, in length-lex order. Finite ambient groups always get
/// all of `H`, so a failed search there is exhaustive.
fn h_candidates(h: &Subgroup, radius: usize) -> (Vec<GroupElement>, bool) {
    if h.ambient().is_finite() {
        (enumerate_ball(h.ambient(), h.generators(), usize::MAX), true)
    } else {
        (enumerate_ball(h.ambient(), h.generators(), radius), false)
    }
}

fn check_outside_k(set: &[GroupElement], k: &Subgroup) -> Result<(), Error> {
    if set.is_empty() {
        return Err(Error::Precondition("the set F must be nonempty".into()));
    }
    for f in set {
        k.ambient().check_owns(f)?;
        if k.contains(f) {
            return Err(Error::Precondition(format!("element {f} of F lies in K")));
        }
    }
    Ok(())
}

/// `F h F ∩ H = ∅`, checked by brute force over all products.
pub fn avoids_h(set: &[GroupElement], x: &GroupElement, right: &[GroupElement], h: &Subgroup) -> bool {
    set.iter().all(|f1| {
        let left = f1 * x;
        right.iter().all(|f2| !h.contains(&(&left * f2)))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cond6Certificate {
    pub set: Vec<GroupElement>,
    pub h: GroupElement,
    pub verified: bool,
}

impl Cond6Certificate {
    /// Independent re-check from membership and multiplication alone.
    pub fn verify(&self, h: &Subgroup, k: &Subgroup) -> bool {
        !self.set.is_empty()
            && self.set.iter().all(|f| !k.contains(f))
            && h.contains(&self.h)
            && avoids_h(&self.set, &self.h, &self.set, h)
    }
}

/// First `h` in the length-lex `H`-ball with `F h F ∩ H = ∅`.
pub fn cond6_search(set: &[GroupElement], h: &Subgroup, k: &Subgroup, radius: usize) -> Result<Search<Cond6Certificate>, Error> {
    check_chain(h, k)?;
    check_outside_k(set, k)?;
    let (candidates, exhaustive) = h_candidates(h, radius);
    for x in &candidates {
        if avoids_h(set, x, set, h) {
            let mut cert = Cond6Certificate { set: set.to_vec(), h: x.clone(), verified: false };
            cert.verified = cert.verify(h, k);
            return Ok(Search::Found(cert));
        }
    }
    Ok(if exhaustive {
        Search::Falsified { tested: candidates.len() }
    } else {
        Search::NotFoundWithinRadius { radius, tested: candidates.len() }
    })
}

/// First `h` in the length-lex `H`-ball with `F h g ∩ H = ∅`.
pub fn pair_condition_search(
    set: &[GroupElement],
    g: &GroupElement,
    h: &Subgroup,
    k: &Subgroup,
    radius: usize,
) -> Result<Search<GroupElement>, Error> {
    check_chain(h, k)?;
    check_outside_k(set, k)?;
    k.ambient().check_owns(g)?;
    if k.contains(g) {
        return Err(Error::Precondition(format!("g = {g} lies in K")));
    }
    let (candidates, exhaustive) = h_candidates(h, radius);
    let right = std::slice::from_ref(g);
    for x in &candidates {
        if avoids_h(set, x, right, h) {
            return Ok(Search::Found(x.clone()));
        }
    }
    Ok(if exhaustive {
        Search::Falsified { tested: candidates.len() }
    } else {
        Search::NotFoundWithinRadius { radius, tested: candidates.len() }
    })
}

/// cond6 on a finite group. A falsified subset of `G \ K` stays
/// falsified under enlargement, so testing `F = G \ K` decides the
/// quantifier over all nonempty finite subsets.
pub fn decide_condition6_finite(h: &Subgroup, k: &Subgroup) -> Result<(bool, Search<Cond6Certificate>), Error> {
    check_chain(h, k)?;
    let all = h
        .ambient()
        .elements()
        .ok_or(Error::Precondition("cond6 can only be decided on a finite ambient group".into()))?;
    let complement: Vec<GroupElement> = all.into_iter().filter(|g| !k.contains(g)).collect();
    if complement.is_empty() {
        return Ok((true, Search::NotFoundWithinRadius { radius: 0, tested: 0 }));
    }
    let outcome = cond6_search(&complement, h, k, 0)?;
    Ok((matches!(outcome, Search::Found(_)), outcome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn s3() -> GroupSpec {
        GroupSpec::perm_from_cycles(3, &["(1 2)", "(1 2 3)"]).unwrap()
    }
    fn f2() -> GroupSpec {
        GroupSpec::free(2).unwrap()
    }
    fn els(spec: &GroupSpec, ws: &[&str]) -> Vec<GroupElement> {
        ws.iter().map(|w| spec.parse_word(w).unwrap()).collect()
    }

    #[test]
    fn s3_condition3() {
        let g = s3();
        let h = Subgroup::from_words(&g, &["(1 2)"]).unwrap();
        let v = check_condition3(&h, &h, Scope::All, 100).unwrap();
        assert_eq!(v.holds, Truth::False);
        assert!(v.exhaustive);
        let first = &v.violations[0];
        assert_eq!(first.element.to_string(), "(1 3)");
        assert_eq!(first.covering_family, els(&g, &["(1 3)", "(2 3)"]));
        assert!(v.violations.iter().all(|x| x.verify(&h, &h)));

        let whole = Subgroup::whole(&g);
        let v = check_condition3(&h, &whole, Scope::All, 100).unwrap();
        assert_eq!(v.holds, Truth::True);
        assert!(v.exhaustive);
        assert_eq!(v.tested, 0);
    }

    #[test]
    fn f2_cyclic_is_its_own_quasi_normalizer() {
        let g = f2();
        let a = Subgroup::from_words(&g, &["a"]).unwrap();
        let v = check_condition3(&a, &a, Scope::Ball(3), 100).unwrap();
        assert_eq!(v.holds, Truth::True);
        assert!(!v.exhaustive);
        assert!(v.unknown.is_empty());
        assert_eq!(v.infinite_certified.len(), v.tested);
    }

    #[test]
    fn preconditions() {
        let g = f2();
        let a = Subgroup::from_words(&g, &["a"]).unwrap();
        let a2 = Subgroup::from_words(&g, &["a^2"]).unwrap();
        assert!(matches!(check_condition3(&a, &a2, Scope::Ball(1), 10), Err(Error::Precondition(_))));
        assert!(check_condition3(&a, &a, Scope::All, 10).is_err());
        assert!(cond6_search(&els(&g, &["a"]), &a, &a, 1).is_err());
        assert!(cond6_search(&[], &a, &a, 1).is_err());
        assert!(pair_condition_search(&els(&g, &["b"]), &g.parse_word("a").unwrap(), &a, &a, 1).is_err());
    }

    #[test]
    fn cond6_examples() {
        let s = s3();
        let h = Subgroup::from_words(&s, &["(1 2)"]).unwrap();
        let f = els(&s, &["(1 3)", "(2 3)", "(1 2 3)", "(1 3 2)"]);
        assert_eq!(cond6_search(&f, &h, &h, 0).unwrap(), Search::Falsified { tested: 2 });

        let g = f2();
        let a = Subgroup::from_words(&g, &["a"]).unwrap();
        match cond6_search(&els(&g, &["b"]), &a, &a, 2).unwrap() {
            Search::Found(c) => {
                assert!(c.h.is_identity());
                assert!(c.verified);
            }
            other => panic!("{other:?}"),
        }
        match cond6_search(&els(&g, &["b", "b^-1"]), &a, &a, 2).unwrap() {
            Search::Found(c) => {
                assert_eq!(c.h.to_string(), "a");
                assert!(c.verify(&a, &a));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pair_examples() {
        let s = s3();
        let h = Subgroup::from_words(&s, &["(1 2)"]).unwrap();
        let g13 = s.parse_word("(1 3)").unwrap();
        let out = pair_condition_search(&els(&s, &["(1 3)", "(2 3)"]), &g13, &h, &h, 0).unwrap();
        assert_eq!(out, Search::Falsified { tested: 2 });

        let g = f2();
        let a = Subgroup::from_words(&g, &["a"]).unwrap();
        let b = g.parse_word("b").unwrap();
        assert_eq!(pair_condition_search(&els(&g, &["b^-1"]), &b, &a, &a, 2).unwrap(), Search::Found(g.parse_word("a").unwrap()));
        assert_eq!(pair_condition_search(&els(&g, &["a b"]), &b, &a, &a, 2).unwrap(), Search::Found(g.identity()));
    }

    #[test]
    fn integer_example_for_the_domain_reading() {
        // Z with H = 2Z, K = Z: every element lies in K, so cond3
        // holds and the K-complement reading of cond6 is vacuous, while every
        // F ⊂ Z \ 2Z has F + h + F ⊂ 2Z = H.
        let z = GroupSpec::abelian(1).unwrap();
        let h = Subgroup::from_words(&z, &["a^2"]).unwrap();
        let k = Subgroup::whole(&z);
        let v = check_condition3(&h, &k, Scope::Ball(5), 10).unwrap();
        assert_eq!(v.holds, Truth::True);
        let odd = els(&z, &["a", "a^-1", "a^3"]);
        let candidates = enumerate_ball(&z, h.generators(), 4);
        assert!(candidates.iter().all(|x| !avoids_h(&odd, x, &odd, &h)));
    }
}
