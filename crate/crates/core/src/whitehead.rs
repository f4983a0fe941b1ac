//! Whitehead automorphisms, length minimization and primitivity.
//!
//! Tuples are minimized as tuples of elements: the same automorphism acts on
//! every entry and the cost is the total reduced length. By Whitehead's peak
//! reduction, any tuple that is not of minimal length in its `Aut(F)` orbit
//! admits a single type-II move that strictly shortens it, so greedy descent
//! reaches the minimal level. The minimal level is then explored breadth-first.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::word::{push_reduced, Alphabet, Letter, Word};

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// An automorphism given by generator images, with its inverse recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    alphabet: Arc<Alphabet>,
    images: Vec<Word>,
    inverse_images: Vec<Word>,
}

fn substitute(images: &[Word], w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        let image = &images[l.generator()];
        if l.is_positive() {
            for &x in image.letters() {
                push_reduced(&mut out, x);
            }
        } else {
            for &x in image.letters().iter().rev() {
                push_reduced(&mut out, x.inverse());
            }
        }
    }
    Word::from_letters(out, w.alphabet())
}

impl Automorphism {
    /// Builds an automorphism, checking that the two image lists are mutually inverse.
    pub fn new(alphabet: &Arc<Alphabet>, images: Vec<Word>, inverse_images: Vec<Word>) -> Result<Automorphism> {
        let rank = alphabet.rank();
        if images.len() != rank || inverse_images.len() != rank {
            return Err(Error::Precondition(format!(
                "automorphism of a rank-{rank} group needs {rank} images and {rank} inverse images"
            )));
        }
        for w in images.iter().chain(&inverse_images) {
            if !alphabet.same_as(w.alphabet()) {
                return Err(Error::AlphabetMismatch);
            }
        }
        let f = Automorphism {
            alphabet: Arc::clone(alphabet),
            images,
            inverse_images,
        };
        for g in alphabet.generators() {
            let there_and_back = substitute(&f.inverse_images, &substitute(&f.images, &g));
            let back_and_there = substitute(&f.images, &substitute(&f.inverse_images, &g));
            if there_and_back != g || back_and_there != g {
                return Err(Error::Precondition(format!(
                    "recorded inverse does not invert the image of {g}"
                )));
            }
        }
        Ok(f)
    }

    pub fn identity(alphabet: &Arc<Alphabet>) -> Automorphism {
        let gens = alphabet.generators();
        Automorphism {
            alphabet: Arc::clone(alphabet),
            images: gens.clone(),
            inverse_images: gens,
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Word] {
        &self.inverse_images
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if !self.alphabet.same_as(w.alphabet()) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(substitute(&self.images, w))
    }

    pub fn apply_inverse(&self, w: &Word) -> Result<Word> {
        if !self.alphabet.same_as(w.alphabet()) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(substitute(&self.inverse_images, w))
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            alphabet: Arc::clone(&self.alphabet),
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        if !self.alphabet.same_as(&other.alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        let images = other.images.iter().map(|w| substitute(&self.images, w)).collect();
        let inverse_images = self
            .inverse_images
            .iter()
            .map(|w| substitute(&other.inverse_images, w))
            .collect();
        Ok(Automorphism {
            alphabet: Arc::clone(&self.alphabet),
            images,
            inverse_images,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.letters() == [Letter::positive(i)])
    }
}

/// Compact form of a Whitehead generator used inside the search loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum WhiteheadMove {
    /// Generator `i` maps to the letter `targets[i]`.
    Permutation(Vec<Letter>),
    /// The multiplier fixes itself; generator `x` maps to `x`, `m x`,
    /// `x m⁻¹` or `m x m⁻¹` for action 0, 1, 2, 3.
    Multiplier { multiplier: Letter, actions: Vec<u8> },
}

impl WhiteheadMove {
    fn push_image(&self, out: &mut Vec<Letter>, l: Letter) {
        match self {
            WhiteheadMove::Permutation(targets) => {
                let t = targets[l.generator()];
                push_reduced(out, if l.is_positive() { t } else { t.inverse() });
            }
            WhiteheadMove::Multiplier { multiplier: m, actions } => {
                let x = Letter::positive(l.generator());
                let (pre, post) = match actions[l.generator()] {
                    0 => (None, None),
                    1 => (Some(*m), None),
                    2 => (None, Some(m.inverse())),
                    _ => (Some(*m), Some(m.inverse())),
                };
                if l.is_positive() {
                    pre.into_iter()
                        .chain(std::iter::once(x))
                        .chain(post)
                        .for_each(|y| push_reduced(out, y));
                } else {
                    post.map(Letter::inverse)
                        .into_iter()
                        .chain(std::iter::once(x.inverse()))
                        .chain(pre.map(Letter::inverse))
                        .for_each(|y| push_reduced(out, y));
                }
            }
        }
    }

    pub(crate) fn apply(&self, w: &Word) -> Word {
        let mut out = Vec::with_capacity(w.len() + 4);
        for &l in w.letters() {
            self.push_image(&mut out, l);
        }
        Word::from_letters(out, w.alphabet())
    }

    fn inverse(&self) -> WhiteheadMove {
        match self {
            WhiteheadMove::Permutation(targets) => {
                let mut inv = vec![Letter::positive(0); targets.len()];
                for (i, t) in targets.iter().enumerate() {
                    inv[t.generator()] = Letter::new(i, t.sign());
                }
                WhiteheadMove::Permutation(inv)
            }
            WhiteheadMove::Multiplier { multiplier, actions } => WhiteheadMove::Multiplier {
                multiplier: multiplier.inverse(),
                actions: actions.clone(),
            },
        }
    }

    pub(crate) fn to_automorphism(&self, alphabet: &Arc<Alphabet>) -> Automorphism {
        let gens = alphabet.generators();
        let inv = self.inverse();
        Automorphism {
            alphabet: Arc::clone(alphabet),
            images: gens.iter().map(|g| self.apply(g)).collect(),
            inverse_images: gens.iter().map(|g| inv.apply(g)).collect(),
        }
    }
}

fn signed_permutations(rank: usize) -> Vec<WhiteheadMove> {
    fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permutations(items, k + 1, out);
            items.swap(k, i);
        }
    }
    let mut perms = Vec::new();
    permutations(&mut (0..rank).collect(), 0, &mut perms);
    perms.sort();
    let mut out = Vec::new();
    for p in perms {
        for signs in 0u64..(1u64 << rank) {
            let targets = p
                .iter()
                .enumerate()
                .map(|(i, &g)| Letter::new(g, if signs >> i & 1 == 1 { -1 } else { 1 }))
                .collect();
            out.push(WhiteheadMove::Permutation(targets));
        }
    }
    out
}

/// Lazily enumerates the nontrivial type-II moves of a rank-`rank` group.
fn multiplier_moves(rank: usize) -> impl Iterator<Item = WhiteheadMove> {
    (0..2 * rank).flat_map(move |mi| {
        let multiplier = Letter::new(mi / 2, if mi % 2 == 0 { 1 } else { -1 });
        let others = rank - 1;
        let combos = 4u64.pow(others as u32);
        (1..combos).map(move |code| {
            let mut actions = vec![0u8; rank];
            let mut c = code;
            for (g, slot) in actions.iter_mut().enumerate() {
                if g == multiplier.generator() {
                    continue;
                }
                *slot = (c % 4) as u8;
                c /= 4;
            }
            WhiteheadMove::Multiplier { multiplier, actions }
        })
    })
}

/// Type-I generators: all signed permutations of the basis, identity included.
pub fn type_one_generators(alphabet: &Arc<Alphabet>) -> Vec<Automorphism> {
    signed_permutations(alphabet.rank())
        .iter()
        .map(|m| m.to_automorphism(alphabet))
        .collect()
}

/// Type-II generators: one multiplier letter acting on the other generators.
pub fn type_two_generators(alphabet: &Arc<Alphabet>) -> Vec<Automorphism> {
    multiplier_moves(alphabet.rank())
        .map(|m| m.to_automorphism(alphabet))
        .collect()
}

/// All Whitehead generators, type I first. The list grows like `r!·2ʳ + 2r·4^(r−1)`,
/// so this is meant for small ranks; the search routines enumerate lazily instead.
pub fn whitehead_generators(alphabet: &Arc<Alphabet>) -> Vec<Automorphism> {
    let mut all = type_one_generators(alphabet);
    all.extend(type_two_generators(alphabet));
    all
}

fn total_length(t: &[Word]) -> usize {
    t.iter().map(Word::len).sum()
}

fn check_tuple(t: &[Word]) -> Result<Arc<Alphabet>> {
    let first = t
        .first()
        .ok_or_else(|| Error::Degenerate("empty tuple".into()))?;
    for w in t {
        first.check_same(w)?;
    }
    Ok(Arc::clone(first.alphabet()))
}

struct Descent {
    tuple: Vec<Word>,
    moves: Vec<WhiteheadMove>,
    explored: usize,
}

fn descend(t: &[Word], budget: usize) -> Result<Descent> {
    let alphabet = check_tuple(t)?;
    let rank = alphabet.rank();
    let mut tuple = t.to_vec();
    let mut moves = Vec::new();
    let mut explored = 0usize;
    'outer: loop {
        let current = total_length(&tuple);
        if current == tuple.len() {
            break;
        }
        for mv in multiplier_moves(rank) {
            explored += 1;
            if explored > budget {
                return Err(Error::BudgetExhausted(budget));
            }
            let image: Vec<Word> = tuple.iter().map(|w| mv.apply(w)).collect();
            if total_length(&image) < current {
                tuple = image;
                moves.push(mv);
                continue 'outer;
            }
        }
        break;
    }
    Ok(Descent { tuple, moves, explored })
}

/// Greedy Whitehead descent. Returns the minimal tuple reached and the
/// automorphisms applied, in order.
pub fn minimize_tuple(t: &[Word]) -> Result<(Vec<Word>, Vec<Automorphism>)> {
    minimize_tuple_with_budget(t, DEFAULT_BUDGET)
}

pub fn minimize_tuple_with_budget(t: &[Word], budget: usize) -> Result<(Vec<Word>, Vec<Automorphism>)> {
    let d = descend(t, budget)?;
    let alphabet = check_tuple(t)?;
    let autos = d.moves.iter().map(|m| m.to_automorphism(&alphabet)).collect();
    Ok((d.tuple, autos))
}

pub fn is_primitive(w: &Word) -> Result<bool> {
    is_primitive_with_budget(w, DEFAULT_BUDGET)
}

pub fn is_primitive_with_budget(w: &Word, budget: usize) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::Degenerate("the identity is not primitive".into()));
    }
    let d = descend(std::slice::from_ref(w), budget)?;
    Ok(d.tuple[0].len() == 1)
}

fn distinct_generators(t: &[Word]) -> bool {
    let mut seen = HashSet::new();
    t.iter()
        .all(|w| w.len() == 1 && seen.insert(w.letters()[0].generator()))
}

pub fn extends_to_basis(t: &[Word]) -> Result<bool> {
    extends_to_basis_with_budget(t, DEFAULT_BUDGET)
}

/// Whether the tuple is part of a free basis of the ambient group.
pub fn extends_to_basis_with_budget(t: &[Word], budget: usize) -> Result<bool> {
    let alphabet = check_tuple(t)?;
    if t.iter().any(Word::is_empty) {
        return Err(Error::Degenerate("tuple contains the identity".into()));
    }
    if t.len() > alphabet.rank() {
        return Ok(false);
    }
    let d = descend(t, budget)?;
    // a basis tuple's orbit bottoms out at |t| single letters
    if total_length(&d.tuple) > t.len() {
        return Ok(false);
    }
    let mut explored = d.explored;
    let mut visited: HashSet<Vec<Word>> = HashSet::new();
    let mut queue = VecDeque::from([d.tuple.clone()]);
    visited.insert(d.tuple);
    let level = t.len();
    while let Some(tuple) = queue.pop_front() {
        if distinct_generators(&tuple) {
            return Ok(true);
        }
        for mv in multiplier_moves(alphabet.rank()) {
            explored += 1;
            if explored > budget {
                return Err(Error::BudgetExhausted(budget));
            }
            let image: Vec<Word> = tuple.iter().map(|w| mv.apply(w)).collect();
            if total_length(&image) == level && visited.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    Ok(false)
}
