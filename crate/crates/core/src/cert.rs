//! JSON certificate documents. Every document carries a `kind` tag first,
//! then its fields in declaration order. Elements are written in the word
//! grammar, so they parse back against the same group.

use serde::{Deserialize, Serialize};

use crate::algebra::{GroupAlgebraElement, ProbeReport};
use crate::coset::OrbitResult;
use crate::group::{GroupElement, Subgroup};
use crate::harmonic::{CosetVector, SubspaceVerdict};
use crate::qn::{Cond6Certificate, Search, Verdict3};
use crate::sweep::SweepReport;
use crate::Error;

/// `[element, re, im]`.
pub type Term = (String, f64, f64);

fn words(xs: &[GroupElement]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

pub fn algebra_terms(x: &GroupAlgebraElement) -> Vec<Term> {
    x.terms().map(|(g, c)| (g.to_string(), c.re, c.im)).collect()
}

/// Coset vectors are written through their coset representatives.
pub fn vector_terms(v: &CosetVector) -> Vec<Term> {
    v.terms().map(|(c, z)| (c.representative().to_string(), z.re, z.im)).collect()
}

/// The triple an answer is about.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Context {
    pub group: String,
    #[serde(rename = "H")]
    pub h: Vec<String>,
    #[serde(rename = "K")]
    pub k: Vec<String>,
}

impl Context {
    pub fn new(h: &Subgroup, k: &Subgroup) -> Self {
        Context { group: h.ambient().to_string(), h: words(h.generators()), k: words(k.generators()) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitDoc {
    #[serde(flatten)]
    pub context: Context,
    pub g: String,
    pub status: String,
    pub size: Option<usize>,
    pub covering_family: Vec<String>,
    pub budget: usize,
    pub budget_used: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QnDoc {
    #[serde(flatten)]
    pub context: Context,
    pub g: String,
    /// `true`, `false` or `unknown`.
    pub in_qn: String,
    pub status: String,
    pub covering_family: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ViolationDoc {
    pub g: String,
    pub covering_family: Vec<String>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cond3Doc {
    #[serde(flatten)]
    pub context: Context,
    pub scope: String,
    pub holds: String,
    pub exhaustive: bool,
    pub tested: usize,
    pub violations: Vec<ViolationDoc>,
    pub infinite_certified: Vec<String>,
    pub unknown: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cond6Doc {
    #[serde(flatten)]
    pub context: Context,
    #[serde(rename = "F")]
    pub set: Vec<String>,
    pub h: String,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cond6FailDoc {
    #[serde(flatten)]
    pub context: Context,
    #[serde(rename = "F")]
    pub set: Vec<String>,
    pub radius: Option<usize>,
    pub tested: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubspaceDoc {
    #[serde(flatten)]
    pub context: Context,
    pub holds: bool,
    pub witness: Option<Vec<Term>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WahpDoc {
    #[serde(flatten)]
    pub context: Context,
    pub x: Vec<Term>,
    pub y: Vec<Term>,
    pub radius: usize,
    pub h: Option<String>,
    pub tested: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeDoc {
    #[serde(flatten)]
    pub context: Context,
    pub xs: Vec<Vec<Term>>,
    pub ys: Vec<Vec<Term>>,
    pub radius: usize,
    pub common_witness: Option<String>,
    pub best_h: String,
    pub best_value: f64,
    pub tested: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IneqDoc {
    #[serde(flatten)]
    pub context: Context,
    pub g: String,
    #[serde(rename = "F")]
    pub set: Vec<String>,
    pub seed: u64,
    pub samples: usize,
    /// Every sampled `u` met the covering hypothesis of the bound.
    pub failure_configuration: bool,
    pub min: f64,
    pub max: f64,
    pub bound_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepDoc {
    pub order_max: usize,
    pub seed: u64,
    pub passed: bool,
    pub reports: Vec<SweepReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Orbit(OrbitDoc),
    Qn(QnDoc),
    Cond3(Cond3Doc),
    Cond6Certificate(Cond6Doc),
    Cond6Falsified(Cond6FailDoc),
    Cond6NotFound(Cond6FailDoc),
    Cond4(SubspaceDoc),
    Cond5(SubspaceDoc),
    Wahp(WahpDoc),
    Probe(ProbeDoc),
    Ineq(IneqDoc),
    Sweep(SweepDoc),
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn orbit(h: &Subgroup, g: &GroupElement, result: &OrbitResult, budget: usize) -> Self {
        Certificate::Orbit(OrbitDoc {
            context: Context::new(h, h),
            g: g.to_string(),
            status: result.status.as_str().to_string(),
            size: result.size(),
            covering_family: words(&result.covering_family),
            budget,
            budget_used: result.budget_used,
        })
    }

    pub fn qn(h: &Subgroup, g: &GroupElement, result: &OrbitResult) -> Self {
        let in_qn = match result.status {
            crate::coset::OrbitStatus::Finite => "true",
            crate::coset::OrbitStatus::InfiniteCertified => "false",
            crate::coset::OrbitStatus::BudgetExhausted => "unknown",
        };
        Certificate::Qn(QnDoc {
            context: Context::new(h, h),
            g: g.to_string(),
            in_qn: in_qn.to_string(),
            status: result.status.as_str().to_string(),
            covering_family: words(&result.covering_family),
        })
    }

    pub fn cond3(h: &Subgroup, k: &Subgroup, v: &Verdict3) -> Self {
        Certificate::Cond3(Cond3Doc {
            context: Context::new(h, k),
            scope: v.scope.to_string(),
            holds: v.holds.to_string(),
            exhaustive: v.exhaustive,
            tested: v.tested,
            violations: v
                .violations
                .iter()
                .map(|x| ViolationDoc { g: x.element.to_string(), covering_family: words(&x.covering_family), verified: x.verify(h, k) })
                .collect(),
            infinite_certified: words(&v.infinite_certified),
            unknown: words(&v.unknown),
        })
    }

    pub fn cond6(h: &Subgroup, k: &Subgroup, set: &[GroupElement], search: &Search<Cond6Certificate>) -> Self {
        let context = Context::new(h, k);
        match search {
            Search::Found(c) => {
                Certificate::Cond6Certificate(Cond6Doc { context, set: words(&c.set), h: c.h.to_string(), verified: c.verified })
            }
            Search::Falsified { tested } => {
                Certificate::Cond6Falsified(Cond6FailDoc { context, set: words(set), radius: None, tested: *tested })
            }
            Search::NotFoundWithinRadius { radius, tested } => {
                Certificate::Cond6NotFound(Cond6FailDoc { context, set: words(set), radius: Some(*radius), tested: *tested })
            }
        }
    }

    pub fn cond4(h: &Subgroup, k: &Subgroup, v: &SubspaceVerdict) -> Self {
        Certificate::Cond4(subspace(h, k, v))
    }

    pub fn cond5(h: &Subgroup, k: &Subgroup, v: &SubspaceVerdict) -> Self {
        Certificate::Cond5(subspace(h, k, v))
    }

    pub fn wahp(
        h: &Subgroup,
        k: &Subgroup,
        x: &GroupAlgebraElement,
        y: &GroupAlgebraElement,
        radius: usize,
        search: &Search<GroupElement>,
    ) -> Self {
        let (found, tested) = match search {
            Search::Found(e) => (Some(e.to_string()), 0),
            Search::NotFoundWithinRadius { tested, .. } | Search::Falsified { tested } => (None, *tested),
        };
        Certificate::Wahp(WahpDoc { context: Context::new(h, k), x: algebra_terms(x), y: algebra_terms(y), radius, h: found, tested })
    }

    pub fn probe(
        h: &Subgroup,
        k: &Subgroup,
        xs: &[GroupAlgebraElement],
        ys: &[GroupAlgebraElement],
        radius: usize,
        report: &ProbeReport,
    ) -> Self {
        Certificate::Probe(ProbeDoc {
            context: Context::new(h, k),
            xs: xs.iter().map(algebra_terms).collect(),
            ys: ys.iter().map(algebra_terms).collect(),
            radius,
            common_witness: report.common_witness.as_ref().map(|e| e.to_string()),
            best_h: report.best_h.to_string(),
            best_value: report.best_value,
            tested: report.tested,
        })
    }
}

fn subspace(h: &Subgroup, k: &Subgroup, v: &SubspaceVerdict) -> SubspaceDoc {
    SubspaceDoc { context: Context::new(h, k), holds: v.holds, witness: v.witness.as_ref().map(vector_terms) }
}
