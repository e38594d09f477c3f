//! Finitely supported elements of the group algebra, with conditional
//! expectations realised as support restriction.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::group::{enumerate_ball, GroupElement, GroupSpec, Subgroup};
use crate::harmonic::TOLERANCE;
use crate::qn::{avoids_h, Search};
use crate::Error;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraElement {
    ambient: GroupSpec,
    coefficients: BTreeMap<GroupElement, Complex64>,
}

impl GroupAlgebraElement {
    pub fn zero(ambient: &GroupSpec) -> Self {
        GroupAlgebraElement { ambient: ambient.clone(), coefficients: BTreeMap::new() }
    }

    /// `lambda_g`.
    pub fn lam(ambient: &GroupSpec, g: &GroupElement) -> Result<Self, Error> {
        Self::from_terms(ambient, [(g.clone(), ONE)])
    }

    pub fn from_terms<I>(ambient: &GroupSpec, terms: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (GroupElement, Complex64)>,
    {
        let mut x = Self::zero(ambient);
        for (g, c) in terms {
            ambient.check_owns(&g)?;
            x.add_at(g, c);
        }
        Ok(x)
    }

    fn add_at(&mut self, g: GroupElement, c: Complex64) {
        let entry = self.coefficients.entry(g.clone()).or_insert(ZERO);
        *entry += c;
        if *entry == ZERO {
            self.coefficients.remove(&g);
        }
    }

    pub fn ambient(&self) -> &GroupSpec {
        &self.ambient
    }

    pub fn coefficient(&self, g: &GroupElement) -> Complex64 {
        self.coefficients.get(g).copied().unwrap_or(ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &Complex64)> {
        self.coefficients.iter()
    }

    pub fn support(&self) -> Vec<GroupElement> {
        self.coefficients.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Coefficient at the identity.
    pub fn trace(&self) -> Complex64 {
        self.coefficient(&self.ambient.identity())
    }

    pub fn norm2_sqr(&self) -> f64 {
        self.coefficients.values().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm2(&self) -> f64 {
        self.norm2_sqr().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut x = Self::zero(&self.ambient);
        for (g, c) in &self.coefficients {
            x.add_at(g.clone(), c * s);
        }
        x
    }

    fn check_same(&self, other: &Self) -> Result<(), Error> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(crate::GroupError::BackendMismatch { left: self.ambient.backend(), right: other.ambient.backend() }.into())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_same(other)?;
        let mut x = self.clone();
        for (g, c) in &other.coefficients {
            x.add_at(g.clone(), *c);
        }
        Ok(x)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.scale(-ONE))
    }

    pub fn convolve(&self, other: &Self) -> Result<Self, Error> {
        self.check_same(other)?;
        let mut x = Self::zero(&self.ambient);
        for (g1, c1) in &self.coefficients {
            for (g2, c2) in &other.coefficients {
                x.add_at(g1 * g2, c1 * c2);
            }
        }
        Ok(x)
    }

    /// `E_S`: keeps the coefficients at elements of `S`.
    pub fn e_sub(&self, s: &Subgroup) -> Self {
        GroupAlgebraElement {
            ambient: self.ambient.clone(),
            coefficients: self.coefficients.iter().filter(|(g, _)| s.contains(g)).map(|(g, c)| (g.clone(), *c)).collect(),
        }
    }

    /// `x - E_K(x)`.
    pub fn m_minus_en(&self, k: &Subgroup) -> Self {
        GroupAlgebraElement {
            ambient: self.ambient.clone(),
            coefficients: self.coefficients.iter().filter(|(g, _)| !k.contains(g)).map(|(g, c)| (g.clone(), *c)).collect(),
        }
    }

    /// First support element lying in `K`, if any.
    fn first_in(&self, k: &Subgroup) -> Option<(&GroupElement, &Complex64)> {
        self.coefficients.iter().find(|(g, _)| k.contains(g))
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.coefficients.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}{:+}i) lam({g})", c.re, c.im)?;
        }
        Ok(())
    }
}

fn check_in_complement(x: &GroupAlgebraElement, k: &Subgroup, name: &str) -> Result<(), Error> {
    if x.ambient() != k.ambient() {
        return Err(Error::Precondition(format!("{name} lives in a different ambient group")));
    }
    match x.first_in(k) {
        Some((g, c)) => Err(Error::Precondition(format!("{name} has coefficient {c} at {g}, which lies in K"))),
        None => Ok(()),
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

/// `H`-elements to try, in length-lex order over the generators of `H`.
fn h_ball(h: &Subgroup, radius: usize) -> Vec<GroupElement> {
    enumerate_ball(h.ambient(), h.generators(), radius)
}

/// `E_H(x lambda_h y)`.
pub fn sandwich(x: &GroupAlgebraElement, h_elem: &GroupElement, y: &GroupAlgebraElement, h: &Subgroup) -> Result<GroupAlgebraElement, Error> {
    let lam = GroupAlgebraElement::lam(x.ambient(), h_elem)?;
    Ok(x.convolve(&lam)?.convolve(y)?.e_sub(h))
}

/// First `h` in the `H`-ball with `supp(x) h supp(y) ∩ H = ∅`; for such `h`
/// the exact value `E_H(x lambda_h y)` is recomputed and must vanish.
pub fn wahp_witness(
    x: &GroupAlgebraElement,
    y: &GroupAlgebraElement,
    h: &Subgroup,
    k: &Subgroup,
    radius: usize,
) -> Result<Search<GroupElement>, Error> {
    check_chain(h, k)?;
    check_in_complement(x, k, "x")?;
    check_in_complement(y, k, "y")?;
    let (sx, sy) = (x.support(), y.support());
    let candidates = h_ball(h, radius);
    for c in &candidates {
        if avoids_h(&sx, c, &sy, h) {
            let value = sandwich(x, c, y, h)?;
            assert!(value.is_zero(), "support certificate for {c} but E_H(x lam(h) y) = {value}");
            return Ok(Search::Found(c.clone()));
        }
    }
    Ok(Search::NotFoundWithinRadius { radius, tested: candidates.len() })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    /// `h` with `F0 h F0 ∩ H = ∅` for `F0` the union of all supports.
    pub common_witness: Option<GroupElement>,
    /// The `h` attaining `best_value`.
    pub best_h: GroupElement,
    /// `min_h max_{x, y} ||E_H(x lambda_h y)||_2` over the ball.
    pub best_value: f64,
    pub tested: usize,
}

/// Runs every `x` in `xs` against every `y` in `ys`.
pub fn wahp_decay_probe(
    xs: &[GroupAlgebraElement],
    ys: &[GroupAlgebraElement],
    h: &Subgroup,
    k: &Subgroup,
    radius: usize,
) -> Result<ProbeReport, Error> {
    check_chain(h, k)?;
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::Precondition("the probe needs at least one x and one y".into()));
    }
    for (i, x) in xs.iter().enumerate() {
        check_in_complement(x, k, &format!("x[{i}]"))?;
    }
    for (i, y) in ys.iter().enumerate() {
        check_in_complement(y, k, &format!("y[{i}]"))?;
    }
    let mut f0: Vec<GroupElement> = xs.iter().chain(ys).flat_map(|z| z.support()).collect();
    f0.sort();
    f0.dedup();
    let candidates = h_ball(h, radius);
    let mut best: Option<(f64, GroupElement)> = None;
    for c in &candidates {
        if avoids_h(&f0, c, &f0, h) {
            return Ok(ProbeReport { common_witness: Some(c.clone()), best_h: c.clone(), best_value: 0.0, tested: candidates.len() });
        }
        let mut worst: f64 = 0.0;
        for x in xs {
            for y in ys {
                worst = worst.max(sandwich(x, c, y, h)?.norm2());
            }
        }
        if best.as_ref().is_none_or(|(v, _)| worst < *v) {
            best = Some((worst, c.clone()));
        }
    }
    let (best_value, best_h) = best.expect("the ball contains the identity");
    Ok(ProbeReport { common_witness: None, best_h, best_value, tested: candidates.len() })
}

/// `sum_{g' in F} ||E_H(lambda_{g'} u lambda_g)||_2^2` for a unit vector `u`
/// supported in `H`. When every `h` in `supp(u)` has some `g'` with
/// `g' h g ∈ H`, this is at least `||u||_2^2 = 1`.
pub fn inequality_check(set: &[GroupElement], g: &GroupElement, h: &Subgroup, u: &GroupAlgebraElement) -> Result<f64, Error> {
    if u.ambient() != h.ambient() {
        return Err(Error::Precondition("u lives in a different ambient group".into()));
    }
    if let Some((x, c)) = u.terms().find(|(x, _)| !h.contains(x)) {
        return Err(Error::Precondition(format!("u has coefficient {c} at {x}, which is not in H")));
    }
    if (u.norm2() - 1.0).abs() > TOLERANCE {
        return Err(Error::Precondition(format!("u has norm {} instead of 1", u.norm2())));
    }
    let right = GroupAlgebraElement::lam(h.ambient(), g)?;
    let mut total = 0.0;
    for f in set {
        let left = GroupAlgebraElement::lam(h.ambient(), f)?;
        total += left.convolve(u)?.convolve(&right)?.e_sub(h).norm2_sqr();
    }
    Ok(total)
}

/// Whether every `h ∈ supp(u)` is moved into `H` by some `g' h g`.
pub fn is_failure_configuration(set: &[GroupElement], g: &GroupElement, h: &Subgroup, u: &GroupAlgebraElement) -> bool {
    u.terms().all(|(x, _)| set.iter().any(|f| h.contains(&(&(f * x) * g))))
}

/// Unit vector on `support` with independent standard complex Gaussian
/// coefficients, normalised.
pub fn random_unit_vector<R: Rng + ?Sized>(ambient: &GroupSpec, support: &[GroupElement], rng: &mut R) -> Result<GroupAlgebraElement, Error> {
    if support.is_empty() {
        return Err(Error::Precondition("random_unit_vector needs a nonempty support".into()));
    }
    loop {
        let terms: Vec<(GroupElement, Complex64)> = support
            .iter()
            .map(|x| (x.clone(), Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))))
            .collect();
        let raw = GroupAlgebraElement::from_terms(ambient, terms)?;
        let n = raw.norm2();
        if n > 1e-6 {
            return Ok(raw.scale(Complex64::new(1.0 / n, 0.0)));
        }
    }
}
