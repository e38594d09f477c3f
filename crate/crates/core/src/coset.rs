//! Left cosets `gH` and left `H`-orbits on `G/H`.
//!
//! `Hg` is covered by finitely many left cosets exactly when the orbit of
//! `gH` under left multiplication by `H` is finite, so orbit enumeration is
//! the executable form of one-sided quasi-normalizer membership.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use crate::group::stallings::SpanningBasis;
use crate::group::{Exponents, FoldedAutomaton, GroupElement, GroupError, Index, Letter, Subgroup, Word};

/// Budget used when a caller does not choose one.
pub const DEFAULT_BUDGET: usize = 10_000;

/// Backend-specific canonical label of a left coset.
///
/// * free: `gH` is read as the right coset `H g^-1`, a vertex of the Schreier
///   graph: the folded core vertex where reading `g^-1` stops, plus the
///   unread suffix that leaves the core into a hanging tree;
/// * finite: the least element of `gH`;
/// * abelian: the lattice residue of `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CosetKey {
    Free { vertex: u32, suffix: Word },
    Finite(GroupElement),
    Abelian(Exponents),
}

/// A left coset with a display representative. Equality, ordering and
/// hashing go through the key only.
#[derive(Clone, Debug)]
pub struct Coset {
    key: CosetKey,
    representative: GroupElement,
}

impl Coset {
    pub fn key(&self) -> &CosetKey {
        &self.key
    }

    pub fn representative(&self) -> &GroupElement {
        &self.representative
    }

    /// Membership-based equality, independent of the key.
    pub fn same_coset_by_membership(&self, other: &Coset, h: &Subgroup) -> bool {
        h.contains(&(&self.representative.inverse() * &other.representative))
    }
}

impl PartialEq for Coset {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Coset {}

impl Hash for Coset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state)
    }
}

impl PartialOrd for Coset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

pub fn canonical_coset(g: &GroupElement, h: &Subgroup) -> Coset {
    match g {
        GroupElement::Free(word) => {
            let automaton = h.automaton().expect("free ambient has a folded backend");
            let basis = h.spanning_basis().expect("free ambient has a spanning basis");
            let inv = word.inverse();
            let stop = automaton.read(&inv);
            let suffix = Word::from_letters(inv.letters()[stop.consumed..].iter().copied());
            // least w with w^-1 = q·suffix, q a path from the base to the stop vertex
            let representative = GroupElement::Free(suffix.inverse().mul(&basis.returns[stop.vertex]));
            Coset { key: CosetKey::Free { vertex: stop.vertex as u32, suffix }, representative }
        }
        GroupElement::Perm(_) => {
            let least = h
                .elements()
                .expect("finite ambient has an element list")
                .iter()
                .map(|x| g * x)
                .min()
                .expect("subgroup contains the identity");
            Coset { key: CosetKey::Finite(least.clone()), representative: least }
        }
        GroupElement::Abelian(x) => {
            let lattice = h.lattice().expect("abelian ambient has a lattice backend");
            let residue = Exponents::new(lattice.reduce(x.values()));
            Coset { key: CosetKey::Abelian(residue.clone()), representative: GroupElement::Abelian(residue) }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrbitStatus {
    Finite,
    InfiniteCertified,
    BudgetExhausted,
}

impl OrbitStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            OrbitStatus::Finite => "finite",
            OrbitStatus::InfiniteCertified => "infinite-certified",
            OrbitStatus::BudgetExhausted => "budget-exhausted",
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrbitResult {
    pub status: OrbitStatus,
    /// The whole orbit when finite, otherwise just the start coset.
    pub cosets: Vec<Coset>,
    /// One representative per orbit coset when finite; empty otherwise.
    pub covering_family: Vec<GroupElement>,
    pub budget_used: usize,
}

impl OrbitResult {
    pub fn size(&self) -> Option<usize> {
        (self.status == OrbitStatus::Finite).then_some(self.cosets.len())
    }

    /// Closure check: every generator image of every listed coset is listed.
    pub fn is_closed_under(&self, h: &Subgroup) -> bool {
        let keys: std::collections::HashSet<&CosetKey> = self.cosets.iter().map(|c| c.key()).collect();
        self.cosets.iter().all(|c| {
            h.generator_steps().iter().all(|s| keys.contains(canonical_coset(&(s * c.representative()), h).key()))
        })
    }
}

/// Breadth-first closure of `{gH}` under left multiplication by the
/// generators of `H` and their inverses, in discovery order. Budget-exhausted
/// once more than `budget` cosets have been discovered.
pub fn orbit_bfs(g: &GroupElement, h: &Subgroup, budget: usize) -> OrbitResult {
    if let GroupElement::Free(word) = g {
        return free_orbit_bfs(word, h, budget);
    }
    let steps = h.generator_steps();
    let start = canonical_coset(g, h);
    let mut index: HashMap<CosetKey, usize> = HashMap::new();
    index.insert(start.key.clone(), 0);
    let mut cosets = vec![start];
    let mut head = 0;
    while head < cosets.len() && cosets.len() <= budget {
        let rep = cosets[head].representative.clone();
        head += 1;
        for s in &steps {
            let next = canonical_coset(&(s * &rep), h);
            if !index.contains_key(&next.key) {
                index.insert(next.key.clone(), cosets.len());
                cosets.push(next);
            }
        }
    }
    finish(cosets, budget)
}

fn finish(mut cosets: Vec<Coset>, budget: usize) -> OrbitResult {
    if cosets.len() > budget {
        let budget_used = cosets.len();
        cosets.truncate(1);
        return OrbitResult { status: OrbitStatus::BudgetExhausted, budget_used, cosets, covering_family: Vec::new() };
    }
    let covering_family = cosets.iter().map(|c| c.representative.clone()).collect();
    OrbitResult { status: OrbitStatus::Finite, budget_used: cosets.len(), cosets, covering_family }
}

/// Vertices of the Schreier graph of `H` met so far: the core vertices,
/// then hanging-tree vertices interned on demand. A vertex is the end of
/// reading `g^-1`, and left multiplication by `s` appends `s^-1`.
struct SchreierWalk<'a> {
    automaton: &'a FoldedAutomaton,
    /// Hanging vertices as (parent, letter from parent).
    hanging: Vec<(usize, Letter)>,
    children: HashMap<(usize, Letter), usize>,
}

impl<'a> SchreierWalk<'a> {
    fn new(automaton: &'a FoldedAutomaton) -> Self {
        SchreierWalk { automaton, hanging: Vec::new(), children: HashMap::new() }
    }

    fn core_count(&self) -> usize {
        self.automaton.vertex_count()
    }

    fn follow(&mut self, node: usize, l: Letter) -> usize {
        let core = self.core_count();
        if node < core {
            if let Some(t) = self.automaton.edge(node, l) {
                return t;
            }
        } else if self.hanging[node - core].1 == l.inverse() {
            return self.hanging[node - core].0;
        }
        if let Some(&child) = self.children.get(&(node, l)) {
            return child;
        }
        let id = core + self.hanging.len();
        self.hanging.push((node, l));
        self.children.insert((node, l), id);
        id
    }

    fn read(&mut self, start: usize, word: &Word) -> usize {
        word.letters().iter().fold(start, |v, &l| self.follow(v, l))
    }

    fn coset(&self, mut node: usize, basis: &SpanningBasis) -> Coset {
        let core = self.core_count();
        let mut suffix = Vec::new();
        while node >= core {
            let (parent, l) = self.hanging[node - core];
            suffix.push(l);
            node = parent;
        }
        suffix.reverse();
        let suffix = Word::from_letters(suffix);
        let representative = GroupElement::Free(suffix.inverse().mul(&basis.returns[node]));
        Coset { key: CosetKey::Free { vertex: node as u32, suffix }, representative }
    }
}

fn free_orbit_bfs(g: &Word, h: &Subgroup, budget: usize) -> OrbitResult {
    let automaton = h.automaton().expect("free ambient has a folded backend");
    let basis = h.spanning_basis().expect("free ambient has a spanning basis");
    let steps: Vec<Word> = h.generator_steps().iter().map(|s| s.as_word().expect("free").inverse()).collect();
    let mut walk = SchreierWalk::new(automaton);
    let start = walk.read(0, &g.inverse());
    let mut seen: HashMap<usize, ()> = HashMap::from([(start, ())]);
    let mut order = vec![start];
    let mut head = 0;
    while head < order.len() && order.len() <= budget {
        let v = order[head];
        head += 1;
        for s in &steps {
            let next = walk.read(v, s);
            if seen.insert(next, ()).is_none() {
                order.push(next);
            }
        }
    }
    if order.len() > budget {
        let budget_used = order.len();
        return OrbitResult {
            status: OrbitStatus::BudgetExhausted,
            cosets: vec![walk.coset(start, basis)],
            covering_family: Vec::new(),
            budget_used,
        };
    }
    finish(order.into_iter().map(|v| walk.coset(v, basis)).collect(), budget)
}

/// `[H : H ∩ gHg^-1]`, the size of the orbit of `gH` by orbit-stabilizer.
pub fn orbit_size_crosscheck(g: &GroupElement, h: &Subgroup) -> Result<Index, GroupError> {
    let stabilizer = h.intersection(&h.conjugate(g)?)?;
    stabilizer.index_in(h)
}

/// Orbit of `gH` under `H`. Free ambients first take the exact
/// orbit-stabilizer route, which certifies infinite orbits; everything else
/// is decided by bounded breadth-first search.
pub fn h_orbit(g: &GroupElement, h: &Subgroup, budget: usize) -> OrbitResult {
    if h.ambient().is_free() {
        let exact = orbit_size_crosscheck(g, h).expect("stabilizer lies in H by construction");
        if exact == Index::Infinite {
            return OrbitResult {
                status: OrbitStatus::InfiniteCertified,
                cosets: vec![canonical_coset(g, h)],
                covering_family: Vec::new(),
                budget_used: 1,
            };
        }
    }
    orbit_bfs(g, h, budget)
}
