//! Brute-force oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use fgcert::whitehead::whitehead_generators;
use fgcert::{Alphabet, Letter, Word};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn alphabet(names: &str) -> Arc<Alphabet> {
    Alphabet::parse(names).unwrap()
}

pub fn word(text: &str, a: &Arc<Alphabet>) -> Word {
    Word::parse(text, a).unwrap()
}

/// Uniform reduced word of exactly `len` letters.
pub fn random_word_exact(rng: &mut impl Rng, a: &Arc<Alphabet>, len: usize) -> Word {
    let r = a.rank();
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::new(rng.gen_range(0..r), if rng.gen() { 1 } else { -1 });
        if letters.last().is_some_and(|p| *p == l.inverse()) {
            continue;
        }
        letters.push(l);
    }
    Word::reduce(letters, a).unwrap()
}

/// Reduced word whose length is uniform in `0..=max_len`.
pub fn random_word(rng: &mut impl Rng, a: &Arc<Alphabet>, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    random_word_exact(rng, a, len)
}

pub fn random_nontrivial(rng: &mut impl Rng, a: &Arc<Alphabet>, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    random_word_exact(rng, a, len)
}

/// Every reduced word of length at most `max_len`.
pub fn all_words(a: &Arc<Alphabet>, max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (0..a.rank()).flat_map(|g| [Letter::positive(g), Letter::negative(g)]).collect();
    let mut out = vec![Vec::<Letter>::new()];
    let mut frontier = vec![Vec::<Letter>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.last().is_some_and(|p| *p == l.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.into_iter().map(|ls| Word::reduce(ls, a).unwrap()).collect()
}

fn signed(gens: &[Word]) -> Vec<Word> {
    gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect()
}

/// Reduced products of at most `max_factors` generators and inverses.
pub fn bounded_products(gens: &[Word], max_factors: usize) -> HashSet<Word> {
    let a = gens[0].alphabet();
    let letters = signed(gens);
    let mut seen: HashSet<Word> = HashSet::from([Word::identity(a)]);
    let mut frontier = vec![Word::identity(a)];
    for _ in 0..max_factors {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &letters {
                let p = w.multiply(g).unwrap();
                if seen.insert(p.clone()) {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    seen
}

/// Independent membership oracle: length-reducing Nielsen transformations,
/// then exhaustive search over products of the reduced generators.
pub struct NielsenOracle {
    pub basis: Vec<Word>,
    /// Whether the reduced set satisfies both Nielsen conditions, which makes
    /// the bounded search complete.
    pub complete: bool,
}

impl NielsenOracle {
    pub fn new(gens: &[Word]) -> NielsenOracle {
        let mut u: Vec<Word> = gens.iter().filter(|g| !g.is_empty()).cloned().collect();
        'reduce: loop {
            u.retain(|g| !g.is_empty());
            for i in 0..u.len() {
                for j in 0..u.len() {
                    if i == j {
                        continue;
                    }
                    let (x, y) = (&u[i], &u[j]);
                    let candidates = [
                        x.multiply(y).unwrap(),
                        x.multiply(&y.inverse()).unwrap(),
                        y.multiply(x).unwrap(),
                        y.inverse().multiply(x).unwrap(),
                    ];
                    if let Some(c) = candidates.into_iter().find(|c| c.len() < x.len()) {
                        u[i] = c;
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        let complete = satisfies_nielsen_conditions(&u);
        NielsenOracle { basis: u, complete }
    }

    /// `None` when the reduced set is not provably Nielsen reduced.
    pub fn contains(&self, w: &Word) -> Option<bool> {
        if !self.complete {
            return None;
        }
        if w.is_empty() {
            return Some(true);
        }
        if self.basis.is_empty() {
            return Some(false);
        }
        // In a product of Nielsen-reduced factors the middle of each factor
        // survives, so every reduced prefix product agrees with `w` except
        // for at most its last `longest` letters.
        let longest = self.basis.iter().map(Word::len).max().unwrap();
        let viable = |p: &Word| {
            let common = p.letters().iter().zip(w.letters()).take_while(|(x, y)| x == y).count();
            p.len() <= w.len() + longest && common + longest >= p.len()
        };
        let letters = signed(&self.basis);
        let a = w.alphabet();
        let mut seen: HashSet<Word> = HashSet::from([Word::identity(a)]);
        let mut frontier = vec![Word::identity(a)];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for g in &letters {
                    let p = x.multiply(g).unwrap();
                    if viable(&p) && seen.insert(p.clone()) {
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        Some(seen.contains(w))
    }
}

fn satisfies_nielsen_conditions(u: &[Word]) -> bool {
    let v = signed(u);
    let not_inverse = |x: &Word, y: &Word| !x.multiply(y).unwrap().is_empty();
    for x in &v {
        for y in &v {
            if !not_inverse(x, y) {
                continue;
            }
            let xy = x.multiply(y).unwrap();
            if xy.len() < x.len() || xy.len() < y.len() {
                return false;
            }
            for z in &v {
                if !not_inverse(y, z) {
                    continue;
                }
                let xyz = xy.multiply(z).unwrap().len() as i64;
                if xyz <= x.len() as i64 - y.len() as i64 + z.len() as i64 {
                    return false;
                }
            }
        }
    }
    true
}

/// Primitive elements reachable from the generators by Whitehead moves
/// through words of length at most `bound`.
pub fn primitive_closure(a: &Arc<Alphabet>, bound: usize) -> HashSet<Word> {
    let moves = whitehead_generators(a);
    let mut seen: HashSet<Word> = a.generators().into_iter().flat_map(|g| [g.inverse(), g]).collect();
    let mut frontier: Vec<Word> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for m in &moves {
                let image = m.apply(w).unwrap();
                if image.len() <= bound && seen.insert(image.clone()) {
                    next.push(image);
                }
            }
        }
        frontier = next;
    }
    seen
}

/// Elements reachable from the generators by at most `radius` Whitehead moves.
pub fn automorphism_ball(a: &Arc<Alphabet>, radius: usize) -> HashSet<Word> {
    let moves = whitehead_generators(a);
    let mut seen: HashSet<Word> = a.generators().into_iter().flat_map(|g| [g.inverse(), g]).collect();
    let mut frontier: Vec<Word> = seen.iter().cloned().collect();
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for m in &moves {
                let image = m.apply(w).unwrap();
                if seen.insert(image.clone()) {
                    next.push(image);
                }
            }
        }
        frontier = next;
    }
    seen
}

/// Exponents `(i, j)` with `|i|, |j| ≤ bound` and `z = uⁱ · z_mid · vʲ`.
pub fn bounded_double_coset(u: &Word, z_mid: &Word, v: &Word, z: &Word, bound: i64) -> Option<(i64, i64)> {
    for i in -bound..=bound {
        let left = u.pow(i).multiply(z_mid).unwrap();
        for j in -bound..=bound {
            if left.multiply(&v.pow(j)).unwrap() == *z {
                return Some((i, j));
            }
        }
    }
    None
}

/// Freely reduced words built from up to `max_len` random letters.
pub fn words(a: &Arc<Alphabet>, max_len: usize) -> impl proptest::strategy::Strategy<Value = Word> {
    use proptest::prelude::*;
    let a = Arc::clone(a);
    proptest::collection::vec((0..a.rank(), any::<bool>()), 0..=max_len).prop_map(move |raw| {
        let letters = raw.into_iter().map(|(g, pos)| Letter::new(g, if pos { 1 } else { -1 }));
        Word::reduce(letters, &a).unwrap()
    })
}

pub fn nontrivial_words(a: &Arc<Alphabet>, max_len: usize) -> impl proptest::strategy::Strategy<Value = Word> {
    use proptest::prelude::*;
    words(a, max_len).prop_filter("nontrivial", |w| !w.is_empty())
}
