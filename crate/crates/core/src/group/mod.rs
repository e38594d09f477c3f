//! Concrete group backends: free groups, permutation groups and free abelian
//! groups, each with a solved word problem, plus subgroup membership.

mod ball;
mod element;
mod lattice;
mod parse;
pub mod stallings;
mod subgroup;

use std::collections::HashSet;
use std::fmt;

pub use ball::enumerate_ball;
pub use element::{generator_index, generator_symbol, BackendKind, Exponents, GroupElement, Letter, Perm, Word, GENERATOR_SYMBOLS};
pub use lattice::Lattice;
pub use parse::{split_top_level, ParseError};
pub use stallings::FoldedAutomaton;
pub use subgroup::{Index, Subgroup, SubgroupBackend};

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum GroupError {
    #[error("backend mismatch: {left} vs {right}")]
    BackendMismatch { left: BackendKind, right: BackendKind },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("element {element} is not in the subgroup")]
    NotContained { element: String },
    #[error("operation requires a {required} ambient group")]
    WrongFamily { required: &'static str },
    #[error("group has order {order}, above the cap {cap}")]
    TooLarge { order: usize, cap: usize },
}

/// The ambient group G.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Free { rank: usize },
    Perm { degree: usize, generators: Vec<Perm> },
    Abelian { rank: usize },
}

impl GroupSpec {
    pub fn free(rank: usize) -> Result<Self, GroupError> {
        check_rank(rank)?;
        Ok(GroupSpec::Free { rank })
    }

    pub fn abelian(rank: usize) -> Result<Self, GroupError> {
        check_rank(rank)?;
        Ok(GroupSpec::Abelian { rank })
    }

    pub fn perm(degree: usize, generators: Vec<Perm>) -> Result<Self, GroupError> {
        if degree == 0 || degree > u16::MAX as usize {
            return Err(GroupError::InvalidSpec(format!("permutation degree {degree} out of range")));
        }
        if generators.len() > GENERATOR_SYMBOLS.len() {
            return Err(GroupError::InvalidSpec(format!("at most {} generators", GENERATOR_SYMBOLS.len())));
        }
        if let Some(p) = generators.iter().find(|p| p.degree() != degree) {
            return Err(GroupError::InvalidSpec(format!("generator {p} has degree {}, expected {degree}", p.degree())));
        }
        Ok(GroupSpec::Perm { degree, generators })
    }

    /// Builds a permutation group from cycle-notation generator words.
    pub fn perm_from_cycles(degree: usize, generators: &[&str]) -> Result<Self, GroupError> {
        let bare = GroupSpec::perm(degree, Vec::new())?;
        let gens = generators
            .iter()
            .map(|w| bare.parse_word(w).map(|g| g.as_perm().cloned().expect("perm backend")))
            .collect::<Result<Vec<_>, _>>()?;
        GroupSpec::perm(degree, gens)
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            GroupSpec::Free { .. } => "free",
            GroupSpec::Perm { .. } => "perm",
            GroupSpec::Abelian { .. } => "abelian",
        }
    }

    pub fn backend(&self) -> BackendKind {
        match self {
            GroupSpec::Free { .. } => BackendKind::Free,
            GroupSpec::Perm { degree, .. } => BackendKind::Perm(*degree),
            GroupSpec::Abelian { rank } => BackendKind::Abelian(*rank),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GroupSpec::Perm { .. })
    }

    pub fn is_free(&self) -> bool {
        matches!(self, GroupSpec::Free { .. })
    }

    pub fn generator_count(&self) -> usize {
        match self {
            GroupSpec::Free { rank } | GroupSpec::Abelian { rank } => *rank,
            GroupSpec::Perm { generators, .. } => generators.len(),
        }
    }

    pub fn generator_names(&self) -> Vec<char> {
        (0..self.generator_count()).map(generator_symbol).collect()
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupSpec::Free { .. } => GroupElement::Free(Word::identity()),
            GroupSpec::Perm { degree, .. } => GroupElement::Perm(Perm::identity(*degree)),
            GroupSpec::Abelian { rank } => GroupElement::Abelian(Exponents::zero(*rank)),
        }
    }

    /// The i-th standard generator.
    pub fn generator(&self, index: usize) -> GroupElement {
        match self {
            GroupSpec::Free { .. } => GroupElement::Free(Word::letter(Letter::new(index, false))),
            GroupSpec::Perm { generators, .. } => GroupElement::Perm(generators[index].clone()),
            GroupSpec::Abelian { rank } => {
                let mut v = vec![0; *rank];
                v[index] = 1;
                GroupElement::Abelian(Exponents::new(v))
            }
        }
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.generator_count()).map(|i| self.generator(i)).collect()
    }

    /// Whether `g` is a normal form of this group.
    pub fn owns(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (GroupSpec::Free { rank }, GroupElement::Free(w)) => w.generator_bound() <= *rank,
            (GroupSpec::Perm { degree, .. }, GroupElement::Perm(p)) => p.degree() == *degree,
            (GroupSpec::Abelian { rank }, GroupElement::Abelian(x)) => x.rank() == *rank,
            _ => false,
        }
    }

    pub fn check_owns(&self, g: &GroupElement) -> Result<(), GroupError> {
        if self.owns(g) {
            Ok(())
        } else {
            Err(GroupError::BackendMismatch { left: self.backend(), right: g.backend() })
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_owns(a)?;
        self.check_owns(b)?;
        a.try_mul(b)
    }

    pub fn parse_word(&self, text: &str) -> Result<GroupElement, GroupError> {
        Ok(parse::parse_word(self, text)?)
    }

    /// All elements of a finite group in length-lex ball order.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        match self {
            GroupSpec::Perm { .. } => Some(enumerate_ball(self, &self.generators(), usize::MAX)),
            _ => None,
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.elements().map(|e| e.len())
    }

    /// Element set of a finite group, checked against a size cap before the
    /// full enumeration is materialized.
    pub fn elements_capped(&self, cap: usize) -> Result<Vec<GroupElement>, GroupError> {
        if !self.is_finite() {
            return Err(GroupError::WrongFamily { required: "finite" });
        }
        let gens = self.generators();
        let mut seen: HashSet<GroupElement> = HashSet::new();
        let mut frontier = vec![self.identity()];
        seen.insert(self.identity());
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for g in &frontier {
                for s in &gens {
                    let h = g * s;
                    if seen.insert(h.clone()) {
                        if seen.len() > cap {
                            return Err(GroupError::TooLarge { order: seen.len(), cap });
                        }
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        Ok(self.elements().expect("finite"))
    }
}

fn check_rank(rank: usize) -> Result<(), GroupError> {
    if rank == 0 || rank > GENERATOR_SYMBOLS.len() {
        return Err(GroupError::InvalidSpec(format!("rank {rank} out of range 1..={}", GENERATOR_SYMBOLS.len())));
    }
    Ok(())
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Free { rank } => write!(f, "F{rank}"),
            GroupSpec::Abelian { rank } => write!(f, "Z^{rank}"),
            GroupSpec::Perm { degree, generators } => {
                write!(f, "<")?;
                for (i, g) in generators.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, "> <= S{degree}")
            }
        }
    }
}

/// Product of two elements of the same backend.
pub fn mul(a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
    a.try_mul(b)
}

pub fn inverse(a: &GroupElement) -> GroupElement {
    a.inverse()
}
