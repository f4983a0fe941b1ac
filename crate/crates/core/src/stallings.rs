//! Stallings subgroup graphs.
//!
//! A finitely generated subgroup `⟨w₁, …, wₖ⟩` is represented by the folded
//! core graph obtained from a bouquet of loops spelling the generators. Edges
//! are stored in both directions: an edge `u --g--> v` is recorded as the
//! letter `g` at `u` pointing to `v` and the letter `g⁻¹` at `v` pointing to
//! `u`. Folded means every vertex has at most one edge per signed letter.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

#[derive(Debug, Clone)]
pub struct SubgroupGraph {
    alphabet: Arc<Alphabet>,
    /// Signed-letter adjacency; vertex 0 is the base.
    adjacency: Vec<BTreeMap<Letter, usize>>,
    generators: Vec<Word>,
}

fn shared_alphabet<'a>(words: impl IntoIterator<Item = &'a Word>) -> Result<Option<Arc<Alphabet>>> {
    let mut alphabet: Option<Arc<Alphabet>> = None;
    for w in words {
        match &alphabet {
            None => alphabet = Some(Arc::clone(w.alphabet())),
            Some(a) if a.same_as(w.alphabet()) => {}
            Some(_) => return Err(Error::AlphabetMismatch),
        }
    }
    Ok(alphabet)
}

/// Union-find backed folding workspace.
struct Folder {
    parent: Vec<usize>,
    adjacency: Vec<BTreeMap<Letter, usize>>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    fn new() -> Folder {
        Folder {
            parent: vec![0],
            adjacency: vec![BTreeMap::new()],
            pending: Vec::new(),
        }
    }

    fn add_vertex(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        self.adjacency.push(BTreeMap::new());
        id
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn link(&mut self, from: usize, letter: Letter, to: usize) {
        if let Some(&existing) = self.adjacency[from].get(&letter) {
            self.pending.push((existing, to));
        } else {
            self.adjacency[from].insert(letter, to);
        }
    }

    fn add_edge(&mut self, from: usize, letter: Letter, to: usize) {
        self.link(from, letter, to);
        self.link(to, letter.inverse(), from);
        self.fold();
    }

    fn fold(&mut self) {
        while let Some((x, y)) = self.pending.pop() {
            let (x, y) = (self.find(x), self.find(y));
            if x == y {
                continue;
            }
            let (keep, drop) = if x < y { (x, y) } else { (y, x) };
            self.parent[drop] = keep;
            let moved = std::mem::take(&mut self.adjacency[drop]);
            for (letter, target) in moved {
                match self.adjacency[keep].get(&letter) {
                    Some(&existing) => self.pending.push((existing, target)),
                    None => {
                        self.adjacency[keep].insert(letter, target);
                    }
                }
            }
        }
    }

    /// Spells `word` as a closed path at the base, sharing existing edges.
    fn add_loop(&mut self, word: &Word) {
        let letters = word.letters();
        if letters.is_empty() {
            return;
        }
        let mut current = self.find(0);
        for (i, &letter) in letters.iter().enumerate() {
            let last = i + 1 == letters.len();
            let next = if last { self.find(0) } else { self.add_vertex() };
            self.add_edge(current, letter, next);
            current = self.find(next);
        }
    }

    /// Canonical root adjacency with vertices renumbered by BFS from the base.
    fn finish(mut self) -> Vec<BTreeMap<Letter, usize>> {
        let n = self.parent.len();
        let mut resolved: Vec<BTreeMap<Letter, usize>> = vec![BTreeMap::new(); n];
        for (v, out) in resolved.iter_mut().enumerate() {
            if self.find(v) != v {
                continue;
            }
            let edges: Vec<(Letter, usize)> = self.adjacency[v].iter().map(|(&l, &t)| (l, t)).collect();
            for (l, t) in edges {
                out.insert(l, self.find(t));
            }
        }
        let base = self.find(0);
        trim_and_renumber(resolved, base)
    }
}

/// Removes non-base degree-1 vertices repeatedly, then renumbers by BFS.
fn trim_and_renumber(mut adjacency: Vec<BTreeMap<Letter, usize>>, base: usize) -> Vec<BTreeMap<Letter, usize>> {
    let n = adjacency.len();
    let mut alive = vec![false; n];
    // only vertices reachable from the base survive
    let mut queue = VecDeque::from([base]);
    alive[base] = true;
    while let Some(v) = queue.pop_front() {
        for &t in adjacency[v].values() {
            if !alive[t] {
                alive[t] = true;
                queue.push_back(t);
            }
        }
    }
    let mut stack: Vec<usize> = (0..n)
        .filter(|&v| alive[v] && v != base && adjacency[v].len() == 1)
        .collect();
    while let Some(v) = stack.pop() {
        if !alive[v] || adjacency[v].len() != 1 {
            continue;
        }
        let (&letter, &t) = adjacency[v].iter().next().unwrap();
        adjacency[v].clear();
        alive[v] = false;
        adjacency[t].remove(&letter.inverse());
        if t != base && adjacency[t].len() == 1 {
            stack.push(t);
        }
    }
    let mut order = vec![usize::MAX; n];
    let mut next = 0;
    let mut queue = VecDeque::from([base]);
    order[base] = 0;
    next += 1;
    while let Some(v) = queue.pop_front() {
        for &t in adjacency[v].values() {
            if order[t] == usize::MAX {
                order[t] = next;
                next += 1;
                queue.push_back(t);
            }
        }
    }
    let mut out = vec![BTreeMap::new(); next];
    for v in 0..n {
        if order[v] == usize::MAX {
            continue;
        }
        out[order[v]] = adjacency[v].iter().map(|(&l, &t)| (l, order[t])).collect();
    }
    out
}

impl SubgroupGraph {
    /// Folded core graph of the subgroup generated by `gens`.
    ///
    /// An empty list needs an alphabet, so use [`SubgroupGraph::fold_over`] for that case.
    pub fn fold(gens: &[Word]) -> Result<SubgroupGraph> {
        let alphabet = shared_alphabet(gens)?.ok_or_else(|| {
            Error::Degenerate("an empty generator list needs an explicit alphabet".into())
        })?;
        SubgroupGraph::fold_over(&alphabet, gens)
    }

    pub fn fold_over(alphabet: &Arc<Alphabet>, gens: &[Word]) -> Result<SubgroupGraph> {
        for g in gens {
            if !alphabet.same_as(g.alphabet()) {
                return Err(Error::AlphabetMismatch);
            }
        }
        let mut folder = Folder::new();
        for g in gens {
            folder.add_loop(g);
        }
        Ok(SubgroupGraph {
            alphabet: Arc::clone(alphabet),
            adjacency: folder.finish(),
            generators: gens.to_vec(),
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency
            .iter()
            .map(|m| m.keys().filter(|l| l.is_positive()).count())
            .sum()
    }

    /// Positive edges as `(source, generator, target)` triples, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (v, m) in self.adjacency.iter().enumerate() {
            for (&l, &t) in m {
                if l.is_positive() {
                    out.push((v, l.generator(), t));
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    /// Whether `w` labels a closed path at the base vertex.
    pub fn contains(&self, w: &Word) -> Result<bool> {
        if !self.alphabet.same_as(w.alphabet()) {
            return Err(Error::AlphabetMismatch);
        }
        let mut v = 0;
        for l in w.letters() {
            match self.adjacency[v].get(l) {
                Some(&t) => v = t,
                None => return Ok(false),
            }
        }
        Ok(v == 0)
    }

    /// Free basis read off a BFS spanning tree, one word per non-tree edge.
    pub fn basis(&self) -> Vec<Word> {
        let n = self.vertex_count();
        // path[v]: letters of the tree path from the base to v
        let mut path: Vec<Option<Vec<Letter>>> = vec![None; n];
        let mut tree_edge = vec![None; n];
        path[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for (&l, &t) in &self.adjacency[v] {
                if path[t].is_none() {
                    let mut p = path[v].clone().unwrap();
                    p.push(l);
                    path[t] = Some(p);
                    tree_edge[t] = Some((v, l));
                    queue.push_back(t);
                }
            }
        }
        let is_tree = |v: usize, l: Letter, t: usize| {
            tree_edge[t] == Some((v, l)) || tree_edge[v] == Some((t, l.inverse()))
        };
        let mut basis = Vec::new();
        for (v, m) in self.adjacency.iter().enumerate() {
            for (&l, &t) in m {
                if !l.is_positive() || is_tree(v, l, t) {
                    continue;
                }
                let to_v = path[v].as_ref().unwrap();
                let to_t = path[t].as_ref().unwrap();
                let letters = to_v
                    .iter()
                    .copied()
                    .chain(std::iter::once(l))
                    .chain(to_t.iter().rev().map(|x| x.inverse()));
                basis.push(Word::from_letters(letters, &self.alphabet));
            }
        }
        basis
    }
}

impl fmt::Display for SubgroupGraph {
    /// Debug text format: vertex count, then one `src gen dst` triple per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.vertex_count())?;
        for (s, g, t) in self.edges() {
            writeln!(f, "{s} {} {t}", self.alphabet.name(g))?;
        }
        Ok(())
    }
}

/// True iff `gens` is a free basis of the whole ambient free group.
pub fn is_basis_of_ambient(gens: &[Word]) -> Result<bool> {
    let Some(alphabet) = shared_alphabet(gens)? else {
        return Ok(false);
    };
    if gens.len() != alphabet.rank() {
        return Ok(false);
    }
    let graph = SubgroupGraph::fold_over(&alphabet, gens)?;
    // generating set of size rank in a Hopfian free group is a basis
    for g in alphabet.generators() {
        if !graph.contains(&g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `w` lies in the subgroup generated by the union of `part_bases`.
pub fn membership_in_free_product_part(part_bases: &[Vec<Word>], w: &Word) -> Result<bool> {
    let gens: Vec<Word> = part_bases.iter().flatten().cloned().collect();
    let graph = SubgroupGraph::fold_over(w.alphabet(), &gens)?;
    graph.contains(w)
}
