//! Finitely supported vectors of `l2(G/H)` under the quasi-regular action
//! `pi(g) delta_[x] = delta_[gx]`.
//!
//! A finitely supported vector is `H`-compact exactly when every coset in its
//! support has a finite `H`-orbit: the orbit of the vector then stays in the
//! finite-dimensional span of those orbits, and conversely a coset with an
//! infinite orbit cannot be covered by finitely many `epsilon/2`-balls.
//! Compactness is only ever certified through that criterion.

use std::collections::BTreeMap;
use std::collections::HashSet;

use num_complex::Complex64;

use crate::coset::{canonical_coset, h_orbit, orbit_bfs, Coset, OrbitStatus};
use crate::group::{GroupElement, Subgroup};
use crate::qn::Truth;
use crate::Error;

/// Absolute tolerance for invariance and zero tests.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct CosetVector {
    subgroup: Subgroup,
    coefficients: BTreeMap<Coset, Complex64>,
}

impl CosetVector {
    pub fn zero(h: &Subgroup) -> Self {
        CosetVector { subgroup: h.clone(), coefficients: BTreeMap::new() }
    }

    pub fn delta(g: &GroupElement, h: &Subgroup) -> Self {
        let mut v = CosetVector::zero(h);
        v.add_at(canonical_coset(g, h), Complex64::new(1.0, 0.0));
        v
    }

    pub fn from_terms<'a, I>(h: &Subgroup, terms: I) -> Self
    where
        I: IntoIterator<Item = (&'a GroupElement, Complex64)>,
    {
        let mut v = CosetVector::zero(h);
        for (g, c) in terms {
            v.add_at(canonical_coset(g, h), c);
        }
        v
    }

    fn add_at(&mut self, coset: Coset, c: Complex64) {
        let entry = self.coefficients.entry(coset.clone()).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.coefficients.remove(&coset);
        }
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn coefficient(&self, g: &GroupElement) -> Complex64 {
        self.coefficients.get(&canonical_coset(g, &self.subgroup)).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Coset, &Complex64)> {
        self.coefficients.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Coset> {
        self.coefficients.keys()
    }

    pub fn support_len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.values().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut v = CosetVector::zero(&self.subgroup);
        for (k, c) in &self.coefficients {
            v.add_at(k.clone(), c * s);
        }
        v
    }

    pub fn add(&self, other: &CosetVector) -> Result<Self, Error> {
        self.check_same(other)?;
        let mut v = self.clone();
        for (k, c) in &other.coefficients {
            v.add_at(k.clone(), *c);
        }
        Ok(v)
    }

    pub fn sub(&self, other: &CosetVector) -> Result<Self, Error> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    fn check_same(&self, other: &CosetVector) -> Result<(), Error> {
        if self.subgroup == other.subgroup {
            Ok(())
        } else {
            Err(Error::Precondition("coset vectors over different subgroups".into()))
        }
    }

    /// `pi(g)`: relabels each support coset `[x]` as `[gx]`.
    pub fn apply_pi(&self, g: &GroupElement) -> Self {
        let mut v = CosetVector::zero(&self.subgroup);
        for (k, c) in &self.coefficients {
            v.add_at(canonical_coset(&(g * k.representative()), &self.subgroup), *c);
        }
        v
    }

    /// `<v, w>`, linear in `v` and conjugate-linear in `w`.
    pub fn inner(&self, other: &CosetVector) -> Result<Complex64, Error> {
        self.check_same(other)?;
        Ok(self
            .coefficients
            .iter()
            .filter_map(|(k, c)| other.coefficients.get(k).map(|d| c * d.conj()))
            .sum())
    }

    /// `max |coefficient|` of the difference; exact at the support level.
    pub fn distance(&self, other: &CosetVector) -> Result<f64, Error> {
        Ok(self.sub(other)?.norm())
    }

    /// Whether every support coset lies in `K/H`, i.e. has its
    /// representative in `K`.
    pub fn is_supported_in(&self, k: &Subgroup) -> bool {
        self.coefficients.keys().all(|c| k.contains(c.representative()))
    }

    /// Orthogonal to `l2(K/H)`: no support coset inside `K`.
    pub fn is_orthogonal_to(&self, k: &Subgroup) -> bool {
        self.coefficients.keys().all(|c| !k.contains(c.representative()))
    }
}

/// `sum_{g in F} delta_[g]`; elements sharing a coset accumulate.
pub fn delta_sum(set: &[GroupElement], h: &Subgroup) -> Result<CosetVector, Error> {
    if set.is_empty() {
        return Err(Error::Precondition("delta_sum needs a nonempty set".into()));
    }
    Ok(CosetVector::from_terms(h, set.iter().map(|g| (g, Complex64::new(1.0, 0.0)))))
}

/// `(1/|hs|) sum_{h in hs} pi(h) v`, a point of the closed convex hull of the
/// `H`-orbit of `v`. With `hs` all of a finite `H` this is the orthogonal
/// projection onto the invariant vectors.
pub fn average_over(v: &CosetVector, hs: &[GroupElement]) -> Result<CosetVector, Error> {
    if hs.is_empty() {
        return Err(Error::Precondition("average_over needs a nonempty list".into()));
    }
    if let Some(x) = hs.iter().find(|x| !v.subgroup.contains(x)) {
        return Err(Error::Precondition(format!("{x} is not in H")));
    }
    let mut acc = CosetVector::zero(&v.subgroup);
    for x in hs {
        acc = acc.add(&v.apply_pi(x))?;
    }
    Ok(acc.scale(Complex64::new(1.0 / hs.len() as f64, 0.0)))
}

/// Invariance under each generator of `H`, which implies invariance under `H`.
pub fn is_invariant(v: &CosetVector, h: &Subgroup, tol: f64) -> bool {
    h.generators().iter().all(|s| {
        let moved = v.apply_pi(s);
        let diff = moved.sub(&v.clone());
        diff.map(|d| d.norm() <= tol).unwrap_or(false)
    })
}

/// Unit-norm indicator of the `H`-orbit of `gH`, when that orbit closes
/// within `budget`.
pub fn finite_orbit_invariant(g: &GroupElement, h: &Subgroup, budget: usize) -> Option<CosetVector> {
    let orbit = h_orbit(g, h, budget);
    if orbit.status != OrbitStatus::Finite {
        return None;
    }
    let c = Complex64::new(1.0 / (orbit.cosets.len() as f64).sqrt(), 0.0);
    let mut v = CosetVector::zero(h);
    for coset in orbit.cosets {
        v.add_at(coset, c);
    }
    Some(v)
}

/// `H`-orbits partitioning `G/H` for a finite `G`, each listed from its
/// least coset, in order of that coset.
pub fn orbit_partition(h: &Subgroup) -> Result<Vec<Vec<Coset>>, Error> {
    let elements = h
        .ambient()
        .elements()
        .ok_or(Error::Precondition("orbit partition needs a finite ambient group".into()))?;
    let mut cosets: Vec<Coset> = elements.iter().map(|g| canonical_coset(g, h)).collect();
    cosets.sort();
    cosets.dedup();
    let mut seen: HashSet<Coset> = HashSet::new();
    let mut orbits = Vec::new();
    for c in cosets {
        if seen.contains(&c) {
            continue;
        }
        let orbit = orbit_bfs(c.representative(), h, elements.len());
        let mut members = orbit.cosets;
        members.sort();
        seen.extend(members.iter().cloned());
        orbits.push(members);
    }
    Ok(orbits)
}

/// Orthonormal basis of `l2(G/H)^H` for finite `G`: the orbit indicators.
pub fn invariant_basis(h: &Subgroup) -> Result<Vec<CosetVector>, Error> {
    Ok(orbit_partition(h)?
        .into_iter()
        .map(|orbit| {
            let c = Complex64::new(1.0 / (orbit.len() as f64).sqrt(), 0.0);
            let mut v = CosetVector::zero(h);
            for coset in orbit {
                v.add_at(coset, c);
            }
            v
        })
        .collect())
}

/// Whether a containment of a subspace in `l2(K/H)` holds, with a witness
/// vector outside `l2(K/H)` when it does not.
#[derive(Clone, Debug)]
pub struct SubspaceVerdict {
    pub holds: bool,
    pub witness: Option<CosetVector>,
}

fn check_finite_chain(h: &Subgroup, k: &Subgroup) -> Result<(), Error> {
    if !h.ambient().is_finite() {
        return Err(Error::Precondition("this check needs a finite ambient group".into()));
    }
    if h.ambient() != k.ambient() {
        return Err(Error::Precondition("H and K live in different ambient groups".into()));
    }
    if let Some(g) = h.first_generator_outside(k) {
        return Err(Error::Precondition(format!("H is not contained in K: generator {g} is not in K")));
    }
    Ok(())
}

/// `l2(G/H)^H ⊂ l2(K/H)` for finite `G`. `K` is a union of `H`-orbits, so
/// the containment fails exactly when some orbit lies outside `K/H`; its
/// indicator is the witness.
pub fn check_condition5(h: &Subgroup, k: &Subgroup) -> Result<SubspaceVerdict, Error> {
    check_finite_chain(h, k)?;
    for v in invariant_basis(h)? {
        if !v.is_supported_in(k) {
            return Ok(SubspaceVerdict { holds: false, witness: Some(v) });
        }
    }
    Ok(SubspaceVerdict { holds: true, witness: None })
}

/// `l2(G/H)_{c,H} ⊂ l2(K/H)` for finite `G`. Every vector is `H`-compact in
/// finite dimensions, so this holds iff `K = G`; the witness is `delta_[g]`
/// for the least `g ∉ K`.
pub fn check_condition4(h: &Subgroup, k: &Subgroup) -> Result<SubspaceVerdict, Error> {
    check_finite_chain(h, k)?;
    let elements = h.ambient().elements().expect("finite");
    Ok(match elements.iter().filter(|g| !k.contains(g)).min() {
        Some(g) => SubspaceVerdict { holds: false, witness: Some(CosetVector::delta(g, h)) },
        None => SubspaceVerdict { holds: true, witness: None },
    })
}

/// `H`-compactness of a finitely supported vector via orbit finiteness of
/// its support.
pub fn is_compact(v: &CosetVector, budget: usize) -> Truth {
    let mut unknown = false;
    for c in v.support() {
        match h_orbit(c.representative(), v.subgroup(), budget).status {
            OrbitStatus::Finite => {}
            OrbitStatus::InfiniteCertified => return Truth::False,
            OrbitStatus::BudgetExhausted => unknown = true,
        }
    }
    if unknown {
        Truth::Unknown
    } else {
        Truth::True
    }
}

/// Pair case `K = H` on a finite group: cond5 holds iff the
/// invariant vectors are the multiples of `delta_[e]`.
pub fn invariants_are_multiples_of_identity_delta(h: &Subgroup) -> Result<bool, Error> {
    let basis = invariant_basis(h)?;
    let e = CosetVector::delta(&h.ambient().identity(), h);
    Ok(basis.len() == 1 && basis[0].distance(&e)? <= TOLERANCE)
}

/// Pairings behind the invariant-vector construction for a set `F` with
/// `F h F ∩ H ≠ ∅` for all `h ∈ H`.
#[derive(Clone, Debug, PartialEq)]
pub struct HullBound {
    /// `min_h Re <pi(h) xi, xi>` for `xi = sum_{f in F} delta_[f]`.
    pub min_pairing: f64,
    /// `Re <eta, xi>` for `eta` the `H`-average of `xi`.
    pub eta_pairing: f64,
    pub eta_invariant: bool,
}

impl HullBound {
    pub fn holds(&self) -> bool {
        self.min_pairing >= 1.0 && self.eta_pairing >= 1.0 && self.eta_invariant
    }
}

/// Evaluates the bound on a finite `H`. `F` should be closed under inverses.
pub fn hull_bound(set: &[GroupElement], h: &Subgroup) -> Result<HullBound, Error> {
    let hs = h.elements().ok_or(Error::Precondition("the hull bound needs a finite subgroup".into()))?;
    let xi = delta_sum(set, h)?;
    let mut min_pairing = f64::INFINITY;
    for x in hs {
        min_pairing = min_pairing.min(xi.apply_pi(x).inner(&xi)?.re);
    }
    let eta = average_over(&xi, hs)?;
    Ok(HullBound { min_pairing, eta_pairing: eta.inner(&xi)?.re, eta_invariant: is_invariant(&eta, h, 1e-12) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn s3() -> GroupSpec {
        GroupSpec::perm_from_cycles(3, &["(1 2)", "(1 2 3)"]).unwrap()
    }
    fn el(spec: &GroupSpec, w: &str) -> GroupElement {
        spec.parse_word(w).unwrap()
    }
    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn pi_examples() {
        let g = GroupSpec::free(2).unwrap();
        let a = Subgroup::from_words(&g, &["a"]).unwrap();
        let e = CosetVector::delta(&g.identity(), &a);
        assert_eq!(e.apply_pi(&el(&g, "b")).coefficient(&el(&g, "b")), re(1.0));
        assert_eq!(e.apply_pi(&g.identity()).coefficient(&g.identity()), re(1.0));

        let s = s3();
        let h = Subgroup::from_words(&s, &["(1 2)"]).unwrap();
        let d13 = CosetVector::delta(&el(&s, "(1 3)"), &h);
        let moved = d13.apply_pi(&el(&s, "(1 2)"));
        assert_eq!(moved.coefficient(&el(&s, "(2 3)")), re(1.0));
        assert_eq!(moved.support_len(), 1);
    }

    #[test]
    fn inner_products() {
        let g = GroupSpec::free(2).unwrap();
        let a = Subgroup::from_words(&g, &["a"]).unwrap();
        let e = CosetVector::delta(&g.identity(), &a);
        assert_eq!(e.inner(&CosetVector::delta(&el(&g, "b"), &a)).unwrap(), re(0.0));
        assert_eq!(e.inner(&CosetVector::delta(&el(&g, "a"), &a)).unwrap(), re(1.0));
        let s = s3();
        let h = Subgroup::from_words(&s, &["(1 2)"]).unwrap();
        let v = delta_sum(&[el(&s, "(1 3)"), el(&s, "(2 3)")], &h).unwrap();
        assert_eq!(v.inner(&v).unwrap(), re(2.0));
        let other = Subgroup::from_words(&s, &["(1 3)"]).unwrap();
        assert!(v.inner(&CosetVector::zero(&other)).is_err());
    }

    #[test]
    fn delta_sums_accumulate() {
        let g = GroupSpec::free(2).unwrap();
        let a2 = Subgroup::from_words(&g, &["a^2"]).unwrap();
        let v = delta_sum(&[el(&g, "a"), el(&g, "a^3")], &a2).unwrap();
        assert_eq!(v.support_len(), 1);
        assert_eq!(v.coefficient(&el(&g, "a")), re(2.0));

        let s = s3();
        let h = Subgroup::from_words(&s, &["(1 2)"]).unwrap();
        let f: Vec<_> = ["(1 3)", "(2 3)", "(1 2 3)", "(1 3 2)"].iter().map(|w| el(&s, w)).collect();
        let xi = delta_sum(&f, &h).unwrap();
        assert_eq!(xi.support_len(), 2);
        assert_eq!(xi.coefficient(&el(&s, "(1 3)")), re(2.0));
        assert_eq!(xi.coefficient(&el(&s, "(2 3)")), re(2.0));
        let eta = average_over(&xi, h.elements().unwrap()).unwrap();
        assert!(eta.distance(&xi).unwrap() < 1e-15);
        assert_eq!(eta.inner(&xi).unwrap(), re(8.0));
    }

    #[test]
    fn averaging_and_invariance() {
        let s = s3();
        let h = Subgroup::from_words(&s, &["(1 2)"]).unwrap();
        let d13 = CosetVector::delta(&el(&s, "(1 3)"), &h);
        let avg = average_over(&d13, h.elements().unwrap()).unwrap();
        assert_eq!(avg.coefficient(&el(&s, "(1 3)")), re(0.5));
        assert_eq!(avg.coefficient(&el(&s, "(2 3)")), re(0.5));
        assert!(is_invariant(&avg, &h, 1e-12));
        assert!(!is_invariant(&d13, &h, 1e-12));
        assert!(is_invariant(&CosetVector::delta(&s.identity(), &h), &h, 0.0));
        assert!(average_over(&d13, &[el(&s, "(1 3)")]).is_err());
    }

    #[test]
    fn orbit_invariants() {
        let s = s3();
        let h = Subgroup::from_words(&s, &["(1 2)"]).unwrap();
        let v = finite_orbit_invariant(&el(&s, "(1 3)"), &h, 10).unwrap();
        let c = 1.0 / 2f64.sqrt();
        assert!((v.coefficient(&el(&s, "(1 3)")) - re(c)).norm() < 1e-15);
        assert!((v.norm() - 1.0).abs() < 1e-15);
        assert_eq!(finite_orbit_invariant(&el(&s, "(1 2)"), &h, 10).unwrap().coefficient(&s.identity()), re(1.0));

        let g = GroupSpec::free(2).unwrap();
        let a2 = Subgroup::from_words(&g, &["a^2"]).unwrap();
        let v = finite_orbit_invariant(&el(&g, "a"), &a2, 10).unwrap();
        assert_eq!(v.support_len(), 1);
        assert!(finite_orbit_invariant(&el(&g, "b"), &a2, 10).is_none());
    }

    #[test]
    fn conditions_four_and_five_on_s3() {
        let s = s3();
        let h = Subgroup::from_words(&s, &["(1 2)"]).unwrap();
        let v5 = check_condition5(&h, &h).unwrap();
        assert!(!v5.holds);
        let w = v5.witness.unwrap();
        assert!(is_invariant(&w, &h, 1e-12));
        assert!(w.is_orthogonal_to(&h));
        let c = 1.0 / 2f64.sqrt();
        assert!((w.coefficient(&el(&s, "(1 3)")) - re(c)).norm() < 1e-15);
        assert!((w.coefficient(&el(&s, "(2 3)")) - re(c)).norm() < 1e-15);
        let whole = Subgroup::whole(&s);
        assert!(check_condition5(&h, &whole).unwrap().holds);
        assert!(check_condition4(&h, &whole).unwrap().holds);
        let v4 = check_condition4(&h, &h).unwrap();
        assert!(!v4.holds);
        assert_eq!(v4.witness.unwrap().coefficient(&el(&s, "(1 3)")), re(1.0));
    }

    #[test]
    fn condition4_on_d4() {
        let d4 = GroupSpec::perm_from_cycles(4, &["(1 2 3 4)", "(2 4)"]).unwrap();
        let r2 = Subgroup::from_words(&d4, &["a^2"]).unwrap();
        let r = Subgroup::from_words(&d4, &["a"]).unwrap();
        let v = check_condition4(&r2, &r).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        let rep = w.support().next().unwrap().representative().clone();
        assert!(!r.contains(&rep));
        let rep_perm = rep.as_perm().unwrap();
        // a reflection: order 2 and not the rotation r^2.
        assert!(rep_perm.compose(rep_perm).is_identity() && !r.contains(&rep));
    }

    #[test]
    fn compactness_through_orbits() {
        let g = GroupSpec::free(2).unwrap();
        let a2 = Subgroup::from_words(&g, &["a^2"]).unwrap();
        assert_eq!(is_compact(&CosetVector::delta(&el(&g, "a"), &a2), 100), Truth::True);
        assert_eq!(is_compact(&CosetVector::delta(&el(&g, "b"), &a2), 100), Truth::False);
    }

    #[test]
    fn hull_bound_on_s3() {
        let s = s3();
        let h = Subgroup::from_words(&s, &["(1 2)"]).unwrap();
        let f: Vec<_> = ["(1 3)", "(2 3)", "(1 2 3)", "(1 3 2)"].iter().map(|w| el(&s, w)).collect();
        let b = hull_bound(&f, &h).unwrap();
        assert!(b.holds());
        assert_eq!(b.eta_pairing, 8.0);
    }

    #[test]
    fn pair_case_invariants() {
        let s = s3();
        let h = Subgroup::from_words(&s, &["(1 2)"]).unwrap();
        assert!(!invariants_are_multiples_of_identity_delta(&h).unwrap());
        assert!(invariants_are_multiples_of_identity_delta(&Subgroup::whole(&s)).unwrap());
    }
}
