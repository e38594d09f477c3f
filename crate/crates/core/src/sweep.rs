//! Small finite groups, their subgroup lattices, and the exhaustive check
//! that cond3 to cond6 agree with `K = G` on every pair `H ≤ K`.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{inequality_check, random_unit_vector};
use crate::group::{GroupElement, GroupError, GroupSpec, Perm, Subgroup};
use crate::harmonic::{check_condition4, check_condition5, hull_bound};
use crate::qn::{check_condition3, decide_condition6_finite, Scope, Search, Truth};
use crate::Error;

/// Default order cap for subgroup enumeration.
pub const ORDER_CAP: usize = 24;

/// Random unit vectors per cond3 violation in a sweep.
pub const SWEEP_SAMPLES: usize = 20;

fn perm_group(degree: usize, cycles: &[&str]) -> GroupSpec {
    GroupSpec::perm_from_cycles(degree, cycles).expect("catalogue entry")
}

/// `Q8` acting on itself by left multiplication.
pub fn quaternion_group() -> GroupSpec {
    let image = |one_based: [u16; 8]| Perm::from_images(one_based.iter().map(|p| p - 1).collect()).expect("catalogue entry");
    let i = image([3, 4, 2, 1, 7, 8, 6, 5]);
    let j = image([5, 6, 8, 7, 2, 1, 3, 4]);
    GroupSpec::perm(8, vec![i, j]).expect("catalogue entry")
}

/// Named groups available to the sweep, in increasing order.
pub fn catalogue() -> Vec<(&'static str, GroupSpec)> {
    vec![
        ("trivial", GroupSpec::perm(1, Vec::new()).expect("catalogue entry")),
        ("Z2", perm_group(2, &["(1 2)"])),
        ("Z4", perm_group(4, &["(1 2 3 4)"])),
        ("V4", perm_group(4, &["(1 2)", "(3 4)"])),
        ("Z6", perm_group(6, &["(1 2 3 4 5 6)"])),
        ("S3", perm_group(3, &["(1 2)", "(1 2 3)"])),
        ("D4", perm_group(4, &["(1 2 3 4)", "(2 4)"])),
        ("Q8", quaternion_group()),
        ("A4", perm_group(4, &["(1 2 3)", "(1 2)(3 4)"])),
        ("S4", perm_group(4, &["(1 2)", "(1 2 3 4)"])),
    ]
}

pub fn catalogue_group(name: &str) -> Option<GroupSpec> {
    catalogue().into_iter().find(|(n, _)| *n == name).map(|(_, g)| g)
}

/// Every subgroup exactly once, ordered by order and then by element list.
/// Each subgroup is reached as a join `<U, g>` of a smaller subgroup `U`
/// and one element, so no bound on generating-set size is needed.
pub fn enumerate_subgroups(g: &GroupSpec, cap: usize) -> Result<Vec<Subgroup>, Error> {
    let elements = g.elements_capped(cap)?;
    let mut seen: BTreeSet<Vec<GroupElement>> = BTreeSet::new();
    let mut found: Vec<Subgroup> = Vec::new();
    let trivial = Subgroup::trivial(g);
    seen.insert(trivial.elements().expect("finite").to_vec());
    found.push(trivial);
    let mut next = 0;
    while next < found.len() {
        let u = found[next].clone();
        next += 1;
        for x in &elements {
            if u.contains(x) {
                continue;
            }
            let mut gens = u.generators().to_vec();
            gens.push(x.clone());
            let joined = Subgroup::new(g, gens)?;
            if seen.insert(joined.elements().expect("finite").to_vec()) {
                found.push(joined);
            }
        }
    }
    found.sort_by(|a, b| {
        let (ea, eb) = (a.elements().expect("finite"), b.elements().expect("finite"));
        ea.len().cmp(&eb.len()).then_with(|| ea.cmp(eb))
    });
    Ok(found)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepInstance {
    pub h: String,
    pub k: String,
    pub h_order: usize,
    pub k_order: usize,
    pub cond3: bool,
    pub cond4: bool,
    pub cond5: bool,
    pub cond6: bool,
    pub k_is_g: bool,
    pub agreement: bool,
    pub violations: usize,
    /// Least `inequality_check` value over all violations and samples.
    pub inequality_min: Option<f64>,
    pub inequality_ok: bool,
    /// Whether the invariant-vector pairings reach 1 when cond6 fails.
    pub hull_ok: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub pairs: usize,
    pub disagreements: usize,
    pub inequality_failures: usize,
    pub hull_failures: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub group: String,
    pub order: usize,
    pub subgroups: usize,
    pub seed: u64,
    pub samples: usize,
    pub instances: Vec<SweepInstance>,
    pub summary: SweepSummary,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.summary.disagreements == 0 && self.summary.inequality_failures == 0 && self.summary.hull_failures == 0
    }
}

/// Decides cond3 to cond6 on one pair, with the inequality and hull
/// probes attached.
pub fn sweep_pair(h: &Subgroup, k: &Subgroup, rng: &mut ChaCha8Rng, samples: usize) -> Result<SweepInstance, Error> {
    let ambient = h.ambient();
    let order = ambient.order().ok_or(GroupError::WrongFamily { required: "finite" })?;
    let v3 = check_condition3(h, k, Scope::All, order)?;
    let cond3 = v3.holds == Truth::True;
    let cond4 = check_condition4(h, k)?.holds;
    let cond5 = check_condition5(h, k)?.holds;
    let (cond6, search6) = decide_condition6_finite(h, k)?;
    let k_is_g = k.order() == Some(order);

    let hs = h.elements().expect("finite");
    let mut inequality_min: Option<f64> = None;
    for violation in &v3.violations {
        for _ in 0..samples {
            let u = random_unit_vector(ambient, hs, rng)?;
            let value = inequality_check(&violation.failure_set(), &violation.element, h, &u)?;
            inequality_min = Some(inequality_min.map_or(value, |m| m.min(value)));
        }
    }
    let hull_ok = match search6 {
        Search::Falsified { .. } => {
            let complement: Vec<GroupElement> = ambient.elements().expect("finite").into_iter().filter(|x| !k.contains(x)).collect();
            Some(hull_bound(&complement, h)?.holds())
        }
        _ => None,
    };
    let agreement = [cond4, cond5, cond6, k_is_g].iter().all(|&c| c == cond3);
    Ok(SweepInstance {
        h: h.to_string(),
        k: k.to_string(),
        h_order: hs.len(),
        k_order: k.order().expect("finite"),
        cond3,
        cond4,
        cond5,
        cond6,
        k_is_g,
        agreement,
        violations: v3.violations.len(),
        inequality_min,
        inequality_ok: inequality_min.is_none_or(|m| m >= 1.0 - 1e-9),
        hull_ok,
    })
}

pub fn equivalence_sweep(name: &str, g: &GroupSpec, seed: u64, samples: usize) -> Result<SweepReport, Error> {
    let subgroups = enumerate_subgroups(g, ORDER_CAP)?;
    let order = g.order().expect("enumerated above");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances = Vec::new();
    for h in &subgroups {
        for k in subgroups.iter().filter(|k| h.is_subgroup_of(k)) {
            instances.push(sweep_pair(h, k, &mut rng, samples)?);
        }
    }
    let summary = SweepSummary {
        pairs: instances.len(),
        disagreements: instances.iter().filter(|i| !i.agreement).count(),
        inequality_failures: instances.iter().filter(|i| !i.inequality_ok).count(),
        hull_failures: instances.iter().filter(|i| i.hull_ok == Some(false)).count(),
    };
    Ok(SweepReport { group: name.to_string(), order, subgroups: subgroups.len(), seed, samples, instances, summary })
}
