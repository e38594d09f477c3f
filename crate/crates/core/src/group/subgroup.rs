use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::stallings::{FoldedAutomaton, SpanningBasis};
use super::{enumerate_ball, GroupElement, GroupError, GroupSpec, Lattice, Word};

/// Index of a subgroup, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Index {
    Finite(usize),
    Infinite,
}

impl Index {
    pub fn is_finite(self) -> bool {
        matches!(self, Index::Finite(_))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => f.write_str("infinite"),
        }
    }
}

/// Membership machinery, chosen by the ambient family.
#[derive(Debug)]
pub enum SubgroupBackend {
    Folded { automaton: FoldedAutomaton, basis: SpanningBasis },
    Enumerated { elements: Vec<GroupElement>, lookup: HashSet<GroupElement> },
    Lattice(Lattice),
}

#[derive(Debug)]
struct Inner {
    ambient: GroupSpec,
    generators: Vec<GroupElement>,
    backend: SubgroupBackend,
}

/// A finitely generated subgroup with an exact membership oracle. Cheap to
/// clone.
#[derive(Clone, Debug)]
pub struct Subgroup(Arc<Inner>);

impl Subgroup {
    /// An empty generator list gives the trivial subgroup.
    pub fn new(ambient: &GroupSpec, generators: Vec<GroupElement>) -> Result<Self, GroupError> {
        for g in &generators {
            ambient.check_owns(g)?;
        }
        let backend = match ambient {
            GroupSpec::Free { rank } => {
                let words: Vec<Word> = generators.iter().map(|g| g.as_word().cloned().expect("free")).collect();
                let automaton = FoldedAutomaton::fold(*rank, &words);
                let basis = automaton.free_basis();
                SubgroupBackend::Folded { automaton, basis }
            }
            GroupSpec::Perm { .. } => {
                let mut elements = enumerate_ball(ambient, &generators, usize::MAX);
                elements.sort();
                let lookup = elements.iter().cloned().collect();
                SubgroupBackend::Enumerated { elements, lookup }
            }
            GroupSpec::Abelian { rank } => {
                let vectors: Vec<Vec<i64>> =
                    generators.iter().map(|g| g.as_exponents().expect("abelian").values().to_vec()).collect();
                SubgroupBackend::Lattice(Lattice::from_generators(*rank, &vectors))
            }
        };
        Ok(Subgroup(Arc::new(Inner { ambient: ambient.clone(), generators, backend })))
    }

    pub fn from_words(ambient: &GroupSpec, words: &[&str]) -> Result<Self, GroupError> {
        let gens = words.iter().map(|w| ambient.parse_word(w)).collect::<Result<Vec<_>, _>>()?;
        Subgroup::new(ambient, gens)
    }

    pub fn trivial(ambient: &GroupSpec) -> Self {
        Subgroup::new(ambient, Vec::new()).expect("no generators to reject")
    }

    pub fn whole(ambient: &GroupSpec) -> Self {
        Subgroup::new(ambient, ambient.generators()).expect("standard generators")
    }

    pub fn ambient(&self) -> &GroupSpec {
        &self.0.ambient
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.0.generators
    }

    pub fn backend(&self) -> &SubgroupBackend {
        &self.0.backend
    }

    /// Generators followed by their inverses, interleaved: `s1, s1^-1, s2, ...`.
    pub fn generator_steps(&self) -> Vec<GroupElement> {
        self.0.generators.iter().flat_map(|g| [g.clone(), g.inverse()]).collect()
    }

    pub fn automaton(&self) -> Option<&FoldedAutomaton> {
        match &self.0.backend {
            SubgroupBackend::Folded { automaton, .. } => Some(automaton),
            _ => None,
        }
    }

    pub fn spanning_basis(&self) -> Option<&SpanningBasis> {
        match &self.0.backend {
            SubgroupBackend::Folded { basis, .. } => Some(basis),
            _ => None,
        }
    }

    pub fn lattice(&self) -> Option<&Lattice> {
        match &self.0.backend {
            SubgroupBackend::Lattice(l) => Some(l),
            _ => None,
        }
    }

    /// All elements, sorted, for finite ambient groups.
    pub fn elements(&self) -> Option<&[GroupElement]> {
        match &self.0.backend {
            SubgroupBackend::Enumerated { elements, .. } => Some(elements),
            _ => None,
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.elements().map(|e| e.len())
    }

    /// Exact membership. Elements of another backend are never members.
    pub fn contains(&self, g: &GroupElement) -> bool {
        if !self.0.ambient.owns(g) {
            return false;
        }
        match (&self.0.backend, g) {
            (SubgroupBackend::Folded { automaton, .. }, GroupElement::Free(w)) => automaton.accepts(w),
            (SubgroupBackend::Enumerated { lookup, .. }, g) => lookup.contains(g),
            (SubgroupBackend::Lattice(l), GroupElement::Abelian(x)) => l.contains(x.values()),
            _ => false,
        }
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.0.ambient == other.0.ambient && self.0.generators.iter().all(|g| other.contains(g))
    }

    /// First generator of `self` outside `other`.
    pub fn first_generator_outside(&self, other: &Subgroup) -> Option<&GroupElement> {
        self.0.generators.iter().find(|g| !other.contains(g))
    }

    /// `g H g^-1`, generated by the conjugated generators.
    pub fn conjugate(&self, g: &GroupElement) -> Result<Subgroup, GroupError> {
        self.0.ambient.check_owns(g)?;
        let gi = g.inverse();
        let gens = self.0.generators.iter().map(|h| &(g * h) * &gi).collect();
        Subgroup::new(&self.0.ambient, gens)
    }

    /// Intersection of two subgroups of the same free group, via the fiber
    /// product of their folded automata.
    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup, GroupError> {
        let (Some(a), Some(b)) = (self.automaton(), other.automaton()) else {
            return Err(GroupError::WrongFamily { required: "free" });
        };
        if self.0.ambient != other.0.ambient {
            return Err(GroupError::BackendMismatch { left: self.0.ambient.backend(), right: other.0.ambient.backend() });
        }
        let automaton = a.intersection(b);
        let basis = automaton.free_basis();
        let generators = basis.elements.iter().cloned().map(GroupElement::Free).collect();
        Ok(Subgroup(Arc::new(Inner {
            ambient: self.0.ambient.clone(),
            generators,
            backend: SubgroupBackend::Folded { automaton, basis },
        })))
    }

    /// `[container : self]` for free-group subgroups: rewrites the generators
    /// of `self` in the spanning-tree basis of `container` and folds them in
    /// that free group; the index is finite iff the result is complete, and
    /// then equals its vertex count.
    pub fn index_in(&self, container: &Subgroup) -> Result<Index, GroupError> {
        let (Some(_), Some(h_aut), Some(h_basis)) = (self.automaton(), container.automaton(), container.spanning_basis())
        else {
            return Err(GroupError::WrongFamily { required: "free" });
        };
        let mut rewritten = Vec::with_capacity(self.0.generators.len());
        for g in &self.0.generators {
            let w = g.as_word().expect("free");
            match h_basis.rewrite(h_aut, w) {
                Some(r) => rewritten.push(r),
                None => return Err(GroupError::NotContained { element: g.to_string() }),
            }
        }
        let folded = FoldedAutomaton::fold(h_basis.len(), &rewritten);
        Ok(if folded.is_complete() { Index::Finite(folded.vertex_count()) } else { Index::Infinite })
    }
}

/// Equal iff same ambient and same subgroup; the backends are canonical.
impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.ambient != other.0.ambient {
            return false;
        }
        match (&self.0.backend, &other.0.backend) {
            (SubgroupBackend::Folded { automaton: a, .. }, SubgroupBackend::Folded { automaton: b, .. }) => a == b,
            (SubgroupBackend::Enumerated { elements: a, .. }, SubgroupBackend::Enumerated { elements: b, .. }) => a == b,
            (SubgroupBackend::Lattice(a), SubgroupBackend::Lattice(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Subgroup {}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.0.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> GroupSpec {
        GroupSpec::free(2).unwrap()
    }

    fn s3() -> GroupSpec {
        GroupSpec::perm_from_cycles(3, &["(1 2)", "(1 2 3)"]).unwrap()
    }

    fn el(spec: &GroupSpec, w: &str) -> GroupElement {
        spec.parse_word(w).unwrap()
    }

    #[test]
    fn free_membership() {
        let g = f2();
        let h = Subgroup::from_words(&g, &["a^2"]).unwrap();
        assert!(h.contains(&el(&g, "a^4")));
        assert!(!h.contains(&el(&g, "a^3")));
        assert!(!h.contains(&el(&g, "b a^2 b^-1")));
    }

    #[test]
    fn finite_and_abelian_membership() {
        let g = s3();
        let h = Subgroup::from_words(&g, &["(1 2)"]).unwrap();
        assert!(!h.contains(&el(&g, "(1 2 3)")));
        assert_eq!(h.order(), Some(2));
        let z2 = GroupSpec::abelian(2).unwrap();
        let l = Subgroup::from_words(&z2, &["a^2 b", "b^3"]).unwrap();
        assert!(l.contains(&el(&z2, "a^4 b^5")));
        assert!(!l.contains(&el(&z2, "a")));
    }

    #[test]
    fn conjugation() {
        let g = f2();
        let a = Subgroup::from_words(&g, &["a"]).unwrap();
        assert_eq!(a.conjugate(&g.identity()).unwrap(), a);
        let bab = a.conjugate(&el(&g, "b")).unwrap();
        assert_eq!(bab, Subgroup::from_words(&g, &["b a b^-1"]).unwrap());
        let s = s3();
        let t12 = Subgroup::from_words(&s, &["(1 2)"]).unwrap();
        let c = t12.conjugate(&el(&s, "(1 2 3)")).unwrap();
        assert_eq!(c, Subgroup::from_words(&s, &["(2 3)"]).unwrap());
    }

    #[test]
    fn intersections_and_indices() {
        let g = f2();
        let a = Subgroup::from_words(&g, &["a"]).unwrap();
        let a2 = Subgroup::from_words(&g, &["a^2"]).unwrap();
        assert_eq!(a.intersection(&a2).unwrap(), a2);
        let ba2b = Subgroup::from_words(&g, &["b a^2 b^-1"]).unwrap();
        assert_eq!(a2.intersection(&ba2b).unwrap(), Subgroup::trivial(&g));
        assert_eq!(a2.index_in(&a).unwrap(), Index::Finite(2));
        assert_eq!(Subgroup::trivial(&g).index_in(&a).unwrap(), Index::Infinite);
        let ab2 = Subgroup::from_words(&g, &["a", "b^2"]).unwrap();
        assert_eq!(ab2.index_in(&ab2).unwrap(), Index::Finite(1));
        assert_eq!(ab2.index_in(&Subgroup::whole(&g)).unwrap(), Index::Infinite);
        let finite = Subgroup::from_words(&g, &["a", "b^2", "b a b^-1"]).unwrap();
        assert_eq!(finite.index_in(&Subgroup::whole(&g)).unwrap(), Index::Finite(2));
        assert!(matches!(a.index_in(&a2), Err(GroupError::NotContained { .. })));
    }

    #[test]
    fn trivial_in_trivial_has_index_one() {
        let g = f2();
        let t = Subgroup::trivial(&g);
        assert_eq!(t.index_in(&t).unwrap(), Index::Finite(1));
    }
}
