//! Stallings foldings for finitely generated subgroups of free groups.
//!
//! A subgroup is held as its folded core graph: a deterministic, connected
//! graph with a base vertex and no degree-1 vertices other than the base.
//! Vertices are numbered breadth-first from the base along the letter order
//! `a, a^-1, b, b^-1, ...`, which makes the graph a canonical form: two
//! generating sets give the same subgroup iff they fold to equal automata.

use std::collections::{HashMap, VecDeque};

use super::element::{Letter, Word};

/// Folded core automaton. `trans[v][slot]` is the end of the edge leaving
/// `v` labeled by `Letter::from_slot(slot)`; every edge `u -x-> v` is paired
/// with `v -x^-1-> u`. Vertex 0 is the base.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FoldedAutomaton {
    rank: usize,
    trans: Vec<Vec<Option<u32>>>,
}

/// Result of reading a word from the base as far as edges allow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReadStop {
    pub vertex: usize,
    pub consumed: usize,
}

/// Folding workspace: a graph under union-find, merged until deterministic.
struct Folder {
    trans: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    fn new(rank: usize) -> Self {
        Folder { trans: vec![vec![None; 2 * rank]], parent: vec![0], pending: Vec::new() }
    }

    fn add_vertex(&mut self) -> usize {
        let slots = self.trans[0].len();
        self.trans.push(vec![None; slots]);
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn add_edge(&mut self, u: usize, letter: Letter, v: usize) {
        self.add_edge_deferred(u, letter, v);
        self.settle();
    }

    fn settle(&mut self) {
        while let Some((p, q)) = self.pending.pop() {
            let (p, q) = (self.find(p), self.find(q));
            if p == q {
                continue;
            }
            // Keep the smaller id as root so the base stays vertex 0.
            let (keep, gone) = if p < q { (p, q) } else { (q, p) };
            self.parent[gone] = keep;
            for slot in 0..self.trans[gone].len() {
                if let Some(t) = self.trans[gone][slot].take() {
                    self.add_edge_deferred(keep, Letter::from_slot(slot), t);
                }
            }
        }
    }

    /// Inserts `u -letter-> v`, queueing merges instead of performing them.
    fn add_edge_deferred(&mut self, u: usize, letter: Letter, v: usize) {
        let (u, v) = (self.find(u), self.find(v));
        let (x, xi) = (letter.slot(), letter.inverse().slot());
        match self.trans[u][x] {
            Some(w) => {
                let w = self.find(w);
                if w != v {
                    self.pending.push((w, v));
                }
            }
            None => self.trans[u][x] = Some(v),
        }
        match self.trans[v][xi] {
            Some(w) => {
                let w = self.find(w);
                if w != u {
                    self.pending.push((w, u));
                }
            }
            None => self.trans[v][xi] = Some(u),
        }
    }

    fn add_loop(&mut self, word: &Word) {
        let letters = word.letters();
        if letters.is_empty() {
            return;
        }
        let mut at = 0;
        for (i, &l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() { 0 } else { self.add_vertex() };
            self.add_edge(at, l, next);
            at = next;
        }
    }

    /// Resolved transition table over root vertices only.
    fn into_table(mut self) -> Vec<Vec<Option<usize>>> {
        let n = self.trans.len();
        let mut table = vec![Vec::new(); n];
        for (v, slot) in table.iter_mut().enumerate() {
            if self.find(v) != v {
                continue;
            }
            let row: Vec<Option<usize>> = self.trans[v].clone();
            *slot = row.into_iter().map(|t| t.map(|t| self.find(t))).collect();
        }
        table
    }
}

/// Removes hanging trees (degree-1 non-base vertices) and renumbers the base
/// component breadth-first. Rows of dead vertices may be empty.
fn core_and_canonicalize(rank: usize, mut table: Vec<Vec<Option<usize>>>) -> FoldedAutomaton {
    let slots = 2 * rank;
    let n = table.len();
    let live = |row: &Vec<Option<usize>>| !row.is_empty();
    let mut degree: Vec<usize> = table.iter().map(|row| row.iter().filter(|t| t.is_some()).count()).collect();
    let mut queue: Vec<usize> = (1..n).filter(|&v| live(&table[v]) && degree[v] == 1).collect();
    while let Some(v) = queue.pop() {
        if degree[v] != 1 {
            continue;
        }
        let slot = (0..slots).find(|&s| table[v][s].is_some()).expect("degree 1");
        let t = table[v][slot].take().expect("edge");
        table[t][Letter::from_slot(slot).inverse().slot()] = None;
        degree[v] = 0;
        degree[t] -= 1;
        if t != 0 && degree[t] == 1 {
            queue.push(t);
        }
    }

    let mut id: Vec<Option<u32>> = vec![None; n];
    let mut order = vec![0usize];
    id[0] = Some(0);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &t in table[v].iter().take(slots) {
            if let Some(t) = t {
                if id[t].is_none() {
                    id[t] = Some(order.len() as u32);
                    order.push(t);
                }
            }
        }
    }
    let trans = order
        .iter()
        .map(|&v| (0..slots).map(|s| table[v].get(s).copied().flatten().map(|t| id[t].expect("reachable"))).collect())
        .collect();
    FoldedAutomaton { rank, trans }
}

impl FoldedAutomaton {
    /// Folds the bouquet of generator loops. Generator order does not matter.
    pub fn fold(rank: usize, generators: &[Word]) -> Self {
        let mut folder = Folder::new(rank);
        for g in generators {
            folder.add_loop(g);
        }
        core_and_canonicalize(rank, folder.into_table())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.trans.len()
    }

    pub fn edge(&self, vertex: usize, letter: Letter) -> Option<usize> {
        self.trans[vertex].get(letter.slot()).copied().flatten().map(|t| t as usize)
    }

    /// Edges `(source, positive generator, target)` in vertex then letter order.
    pub fn positive_edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (v, row) in self.trans.iter().enumerate() {
            for gen in 0..self.rank {
                if let Some(t) = row[2 * gen] {
                    out.push((v, gen, t as usize));
                }
            }
        }
        out
    }

    pub fn read(&self, word: &Word) -> ReadStop {
        let mut v = 0;
        for (i, &l) in word.letters().iter().enumerate() {
            match self.edge(v, l) {
                Some(t) => v = t,
                None => return ReadStop { vertex: v, consumed: i },
            }
        }
        ReadStop { vertex: v, consumed: word.len() }
    }

    pub fn accepts(&self, word: &Word) -> bool {
        let stop = self.read(word);
        stop.consumed == word.len() && stop.vertex == 0
    }

    /// Every vertex carries every letter: the subgroup has finite index.
    pub fn is_complete(&self) -> bool {
        self.trans.iter().all(|row| row.iter().all(|t| t.is_some()))
    }

    /// Fiber product restricted to the base component, then cored.
    pub fn intersection(&self, other: &FoldedAutomaton) -> FoldedAutomaton {
        assert_eq!(self.rank, other.rank, "intersection of automata over different ranks");
        let slots = 2 * self.rank;
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut states = vec![(0usize, 0usize)];
        index.insert((0, 0), 0);
        let mut table: Vec<Vec<Option<usize>>> = Vec::new();
        let mut head = 0;
        while head < states.len() {
            let (u, v) = states[head];
            head += 1;
            let mut row = vec![None; slots];
            for (slot, entry) in row.iter_mut().enumerate() {
                if let (Some(a), Some(b)) = (self.trans[u][slot], other.trans[v][slot]) {
                    let key = (a as usize, b as usize);
                    let next = *index.entry(key).or_insert_with(|| {
                        states.push(key);
                        states.len() - 1
                    });
                    *entry = Some(next);
                }
            }
            table.push(row);
        }
        core_and_canonicalize(self.rank, table)
    }

    /// Shortest, then lexicographically least, path from the base to each vertex.
    pub fn tree_paths(&self) -> (Vec<Word>, Vec<Option<(usize, Letter)>>) {
        let n = self.trans.len();
        let mut paths: Vec<Option<Word>> = vec![None; n];
        let mut parent: Vec<Option<(usize, Letter)>> = vec![None; n];
        paths[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for slot in 0..2 * self.rank {
                if let Some(t) = self.trans[v][slot] {
                    let t = t as usize;
                    if paths[t].is_none() {
                        let letter = Letter::from_slot(slot);
                        let base = paths[v].as_ref().expect("visited");
                        paths[t] = Some(base.mul(&Word::letter(letter)));
                        parent[t] = Some((v, letter));
                        queue.push_back(t);
                    }
                }
            }
        }
        (paths.into_iter().map(|p| p.expect("connected")).collect(), parent)
    }

    /// Length-lex least word labelling a path from each vertex to the base.
    pub fn return_paths(&self) -> Vec<Word> {
        let (paths, _) = self.tree_paths();
        let mut order: Vec<usize> = (0..self.trans.len()).collect();
        order.sort_by_key(|&v| paths[v].len());
        let mut returns: Vec<Option<Word>> = vec![None; self.trans.len()];
        returns[0] = Some(Word::identity());
        for v in order.into_iter().skip(1) {
            let best = (0..2 * self.rank)
                .filter_map(|slot| {
                    let t = self.trans[v][slot]? as usize;
                    (paths[t].len() + 1 == paths[v].len())
                        .then(|| Word::letter(Letter::from_slot(slot)).mul(returns[t].as_ref().expect("closer vertex")))
                })
                .min();
            returns[v] = best;
        }
        returns.into_iter().map(|r| r.expect("connected")).collect()
    }

    /// A free basis read off a breadth-first spanning tree: one element per
    /// positive edge outside the tree.
    pub fn free_basis(&self) -> SpanningBasis {
        let (paths, parent) = self.tree_paths();
        let mut tree_edge: HashMap<(usize, usize), ()> = HashMap::new();
        for (t, p) in parent.iter().enumerate() {
            if let Some((v, l)) = *p {
                tree_edge.insert((v, l.slot()), ());
                tree_edge.insert((t, l.inverse().slot()), ());
            }
        }
        let mut edges = Vec::new();
        let mut elements = Vec::new();
        let mut edge_index = HashMap::new();
        for (u, gen, v) in self.positive_edges() {
            if tree_edge.contains_key(&(u, 2 * gen)) {
                continue;
            }
            let letter = Letter::new(gen, false);
            edge_index.insert((u, gen), edges.len());
            edges.push((u, gen, v));
            elements.push(paths[u].mul(&Word::letter(letter)).mul(&paths[v].inverse()));
        }
        let returns = self.return_paths();
        SpanningBasis { elements, edge_index, paths, returns }
    }
}

/// A free basis of the subgroup with enough bookkeeping to rewrite accepted
/// words in it.
#[derive(Clone, Debug)]
pub struct SpanningBasis {
    /// Basis elements as words of the ambient free group.
    pub elements: Vec<Word>,
    /// Non-tree edge `(source, generator)` to basis index.
    edge_index: HashMap<(usize, usize), usize>,
    /// Tree path from the base to each vertex.
    pub paths: Vec<Word>,
    /// Least path from each vertex back to the base.
    pub returns: Vec<Word>,
}

impl SpanningBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Rewrites a word accepted by `automaton` as a word in the basis, where
    /// letter `i` stands for `elements[i]`. `None` if the word is rejected.
    pub fn rewrite(&self, automaton: &FoldedAutomaton, word: &Word) -> Option<Word> {
        let mut v = 0;
        let mut out = Vec::new();
        for &l in word.letters() {
            let t = automaton.edge(v, l)?;
            let key = if l.inv { (t, l.gen as usize) } else { (v, l.gen as usize) };
            if let Some(&j) = self.edge_index.get(&key) {
                out.push(Letter::new(j, l.inv));
            }
            v = t;
        }
        (v == 0).then(|| Word::from_letters(out))
    }
}
