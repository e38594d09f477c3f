//! Element normal forms for the three group backends.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use super::GroupError;

/// Generator symbols, in index order. `e` is reserved for the identity.
pub const GENERATOR_SYMBOLS: &[u8] = b"abcdfghijklmnopqrstuvwxyz";

pub fn generator_symbol(index: usize) -> char {
    GENERATOR_SYMBOLS[index] as char
}

pub fn generator_index(symbol: char) -> Option<usize> {
    GENERATOR_SYMBOLS.iter().position(|&c| c as char == symbol)
}

/// A generator or its inverse. Letters are ordered `a < a^-1 < b < b^-1 < ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    pub gen: u8,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize, inv: bool) -> Self {
        Letter { gen: gen as u8, inv }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    /// Dense index `2 * gen + inv`, used as the edge slot in folded automata.
    pub fn slot(self) -> usize {
        2 * self.gen as usize + self.inv as usize
    }

    pub fn from_slot(slot: usize) -> Self {
        Letter::new(slot / 2, slot % 2 == 1)
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.slot().cmp(&other.slot())
    }
}

/// Freely reduced word. Ordered length-lex.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(letter: Letter) -> Self {
        Word(vec![letter])
    }

    /// Reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut left = self.0.len();
        let mut right = 0;
        while left > 0 && right < other.0.len() && self.0[left - 1] == other.0[right].inverse() {
            left -= 1;
            right += 1;
        }
        let mut out = Vec::with_capacity(left + other.0.len() - right);
        out.extend_from_slice(&self.0[..left]);
        out.extend_from_slice(&other.0[right..]);
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Highest generator index used, plus one.
    pub fn generator_bound(&self) -> usize {
        self.0.iter().map(|l| l.gen as usize + 1).max().unwrap_or(0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Writes `gen^exp` runs separated by spaces; `e` for the identity.
fn write_runs(f: &mut fmt::Formatter<'_>, runs: &[(usize, i64)]) -> fmt::Result {
    if runs.is_empty() {
        return f.write_str("e");
    }
    for (i, &(gen, exp)) in runs.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        let sym = generator_symbol(gen);
        if exp == 1 {
            write!(f, "{sym}")?;
        } else {
            write!(f, "{sym}^{exp}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut runs: Vec<(usize, i64)> = Vec::new();
        for l in &self.0 {
            let step = if l.inv { -1 } else { 1 };
            match runs.last_mut() {
                Some((gen, exp)) if *gen == l.gen as usize && (*exp > 0) == (step > 0) => *exp += step,
                _ => runs.push((l.gen as usize, step)),
            }
        }
        write_runs(f, &runs)
    }
}

/// Permutation of `{0, .., degree-1}` stored as its image array.
///
/// Composition follows `(s * t)(x) = s(t(x))`: the right factor acts first.
/// Points are printed 1-based in cycle notation. The order is length-lex on
/// that cycle notation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u16).collect())
    }

    /// Builds from 0-based images, rejecting non-bijections.
    pub fn from_images(images: Vec<u16>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(GroupError::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// Builds a single cycle of 0-based points.
    pub fn cycle(degree: usize, points: &[usize]) -> Result<Self, GroupError> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut seen = vec![false; degree];
        for &p in points {
            if p >= degree {
                return Err(GroupError::InvalidPermutation(format!("point {} exceeds degree {degree}", p + 1)));
            }
            if seen[p] {
                return Err(GroupError::InvalidPermutation(format!("point {} repeated in cycle", p + 1)));
            }
            seen[p] = true;
        }
        for (i, &p) in points.iter().enumerate() {
            images[p] = points[(i + 1) % points.len()] as u16;
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    pub fn compose(&self, right: &Perm) -> Perm {
        Perm(right.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u16;
        }
        Perm(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.0[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    fn spelling(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("e");
        }
        for (i, cycle) in cycles.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str("(")?;
            for (j, p) in cycle.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl PartialOrd for Perm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Perm {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        let (a, b) = (self.spelling(), other.spelling());
        a.len()
            .cmp(&b.len())
            .then_with(|| a.cmp(&b))
            .then_with(|| self.0.len().cmp(&other.0.len()))
    }
}

/// Exponent vector of a free abelian group `Z^rank`.
///
/// Ordered length-lex on the spelled word `a^x1 b^x2 ...` expanded into letters.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exponents(Vec<i64>);

impl Exponents {
    pub fn zero(rank: usize) -> Self {
        Exponents(vec![0; rank])
    }

    pub fn new(values: Vec<i64>) -> Self {
        Exponents(values)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Exponents {
        Exponents(self.0.iter().map(|a| -a).collect())
    }

    fn l1(&self) -> i64 {
        self.0.iter().map(|a| a.abs()).sum()
    }

    fn spelled_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &x)| std::iter::repeat_n(Letter::new(i, x < 0), x.unsigned_abs() as usize))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        self.l1()
            .cmp(&other.l1())
            .then_with(|| self.spelled_letters().cmp(other.spelled_letters()))
            .then_with(|| self.0.len().cmp(&other.0.len()))
    }
}

impl fmt::Display for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let runs: Vec<(usize, i64)> = self.0.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect();
        write_runs(f, &runs)
    }
}

/// Which backend an element belongs to, with its size parameter where the
/// normal form carries one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BackendKind {
    Free,
    Perm(usize),
    Abelian(usize),
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendKind::Free => f.write_str("free"),
            BackendKind::Perm(d) => write!(f, "perm(degree {d})"),
            BackendKind::Abelian(r) => write!(f, "abelian(rank {r})"),
        }
    }
}

/// Normal form of a group element. Equality of values is equality of elements.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum GroupElement {
    Free(Word),
    Perm(Perm),
    Abelian(Exponents),
}

impl GroupElement {
    pub fn backend(&self) -> BackendKind {
        match self {
            GroupElement::Free(_) => BackendKind::Free,
            GroupElement::Perm(p) => BackendKind::Perm(p.degree()),
            GroupElement::Abelian(x) => BackendKind::Abelian(x.rank()),
        }
    }

    pub fn try_mul(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        Ok(match (self, other) {
            (GroupElement::Free(a), GroupElement::Free(b)) => GroupElement::Free(a.mul(b)),
            (GroupElement::Perm(a), GroupElement::Perm(b)) if a.degree() == b.degree() => GroupElement::Perm(a.compose(b)),
            (GroupElement::Abelian(a), GroupElement::Abelian(b)) if a.rank() == b.rank() => GroupElement::Abelian(a.add(b)),
            _ => {
                return Err(GroupError::BackendMismatch {
                    left: self.backend(),
                    right: other.backend(),
                })
            }
        })
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Free(w) => GroupElement::Free(w.inverse()),
            GroupElement::Perm(p) => GroupElement::Perm(p.inverse()),
            GroupElement::Abelian(x) => GroupElement::Abelian(x.neg()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Free(w) => w.is_empty(),
            GroupElement::Perm(p) => p.is_identity(),
            GroupElement::Abelian(x) => x.values().iter().all(|&v| v == 0),
        }
    }

    /// The identity of the same backend.
    pub fn identity_like(&self) -> GroupElement {
        match self {
            GroupElement::Free(_) => GroupElement::Free(Word::identity()),
            GroupElement::Perm(p) => GroupElement::Perm(Perm::identity(p.degree())),
            GroupElement::Abelian(x) => GroupElement::Abelian(Exponents::zero(x.rank())),
        }
    }

    pub fn as_word(&self) -> Option<&Word> {
        match self {
            GroupElement::Free(w) => Some(w),
            _ => None,
        }
    }

    pub fn as_perm(&self) -> Option<&Perm> {
        match self {
            GroupElement::Perm(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_exponents(&self) -> Option<&Exponents> {
        match self {
            GroupElement::Abelian(x) => Some(x),
            _ => None,
        }
    }
}

/// Panics on mixed backends; use [`GroupElement::try_mul`] for unvalidated input.
impl Mul for &GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: &GroupElement) -> GroupElement {
        match self.try_mul(rhs) {
            Ok(g) => g,
            Err(e) => panic!("{e}"),
        }
    }
}

/// Prints in the word grammar; parsing the output yields the same element.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Free(w) => w.fmt(f),
            GroupElement::Perm(p) => p.fmt(f),
            GroupElement::Abelian(x) => x.fmt(f),
        }
    }
}
