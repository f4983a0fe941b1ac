//! Decision procedures for the basic equivalence relations on tuples:
//! conjugacy (`e0`), one-sided cosets of centralizer powers (`e1`, `e2`) and
//! double cosets (`e3`).
//!
//! All relations presuppose nontrivial centralizing elements: `C(1)` is the
//! whole group, so `x = 1` is rejected with [`Error::Degenerate`]. Exponents of
//! the centralizer element range over all of `ℤ`, zero included.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

/// Finite automaton over signed letters for the rational subset
/// `{uᵃ · z_mid · vᵇ : a, b ∈ ℤ}`, saturated under free cancellation.
///
/// Construction: a loop spelling `u` at the initial state (traversable
/// backwards for negative powers), a path spelling `z_mid` to the accepting
/// state, and a loop spelling `v` there. Saturation adds an ε-edge `p → r`
/// whenever `p -x-> q ⇝ q' -x⁻¹-> r` with `q ⇝ q'` already ε-reachable, until
/// nothing changes. A reduced word is then accepted iff it is the reduced
/// form of some word in the original language.
#[derive(Debug, Clone)]
pub struct CosetAutomaton {
    alphabet: Arc<Alphabet>,
    transitions: Vec<Vec<(Letter, usize)>>,
    /// Reflexive-transitive ε-reachability, `closure[p][q]`.
    closure: Vec<Vec<bool>>,
    initial: usize,
    accepting: usize,
}

impl CosetAutomaton {
    pub fn double_coset(u: &Word, z_mid: &Word, v: &Word) -> Result<CosetAutomaton> {
        u.check_same(z_mid)?;
        u.check_same(v)?;
        if u.is_empty() || v.is_empty() {
            return Err(Error::Degenerate("coset generators must be nontrivial".into()));
        }
        let mut a = CosetAutomaton {
            alphabet: Arc::clone(u.alphabet()),
            transitions: Vec::new(),
            closure: Vec::new(),
            initial: 0,
            accepting: 0,
        };
        let mut epsilon = Vec::new();
        let initial = a.add_state();
        a.add_loop(initial, u);
        let accepting = a.add_state();
        a.add_path(initial, z_mid, accepting, &mut epsilon);
        a.add_loop(accepting, v);
        a.initial = initial;
        a.accepting = accepting;
        a.closure = vec![vec![false; a.transitions.len()]; a.transitions.len()];
        for (p, row) in a.closure.iter_mut().enumerate() {
            row[p] = true;
        }
        for (p, q) in epsilon {
            a.add_epsilon(p, q);
        }
        a.saturate();
        Ok(a)
    }

    fn add_state(&mut self) -> usize {
        self.transitions.push(Vec::new());
        self.transitions.len() - 1
    }

    fn add_loop(&mut self, at: usize, w: &Word) {
        let letters = w.letters();
        let mut current = at;
        for (i, &l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() { at } else { self.add_state() };
            self.transitions[current].push((l, next));
            self.transitions[next].push((l.inverse(), current));
            current = next;
        }
    }

    fn add_path(&mut self, from: usize, w: &Word, to: usize, epsilon: &mut Vec<(usize, usize)>) {
        let letters = w.letters();
        if letters.is_empty() {
            epsilon.push((from, to));
            return;
        }
        let mut current = from;
        for (i, &l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() { to } else { self.add_state() };
            self.transitions[current].push((l, next));
            current = next;
        }
    }

    /// Adds `p ⇝ q` and restores transitive closure. Returns whether it was new.
    fn add_epsilon(&mut self, p: usize, q: usize) -> bool {
        if self.closure[p][q] {
            return false;
        }
        let n = self.closure.len();
        let sources: Vec<usize> = (0..n).filter(|&s| self.closure[s][p]).collect();
        let targets: Vec<usize> = (0..n).filter(|&t| self.closure[q][t]).collect();
        for &s in &sources {
            for &t in &targets {
                self.closure[s][t] = true;
            }
        }
        true
    }

    fn saturate(&mut self) {
        let n = self.transitions.len();
        loop {
            let mut added = false;
            for p in 0..n {
                for k in 0..self.transitions[p].len() {
                    let (x, q) = self.transitions[p][k];
                    for q2 in 0..n {
                        if !self.closure[q][q2] {
                            continue;
                        }
                        for j in 0..self.transitions[q2].len() {
                            let (y, r) = self.transitions[q2][j];
                            if y == x.inverse() && self.add_epsilon(p, r) {
                                added = true;
                            }
                        }
                    }
                }
            }
            if !added {
                break;
            }
        }
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    fn close(&self, set: &[bool]) -> Vec<bool> {
        let n = set.len();
        let mut out = vec![false; n];
        for p in (0..n).filter(|&p| set[p]) {
            for (o, &c) in out.iter_mut().zip(&self.closure[p]) {
                *o |= c;
            }
        }
        out
    }

    /// Whether the reduced word `z` is read from the initial to the accepting state.
    pub fn accepts(&self, z: &Word) -> Result<bool> {
        if !self.alphabet.same_as(z.alphabet()) {
            return Err(Error::AlphabetMismatch);
        }
        let n = self.state_count();
        let mut current = vec![false; n];
        current[self.initial] = true;
        current = self.close(&current);
        for &l in z.letters() {
            let mut next = vec![false; n];
            for p in (0..n).filter(|&p| current[p]) {
                for &(x, q) in &self.transitions[p] {
                    if x == l {
                        next[q] = true;
                    }
                }
            }
            current = self.close(&next);
            if !current.iter().any(|&b| b) {
                return Ok(false);
            }
        }
        Ok(current[self.accepting])
    }
}

/// `z ∈ ⟨u⟩ · z_mid · ⟨v⟩`.
pub fn double_coset_member(u: &Word, z_mid: &Word, v: &Word, z: &Word) -> Result<bool> {
    CosetAutomaton::double_coset(u, z_mid, v)?.accepts(z)
}

fn positive(name: &str, k: i64) -> Result<()> {
    if k <= 0 {
        return Err(Error::Precondition(format!("{name} must be positive, got {k}")));
    }
    Ok(())
}

fn nontrivial(words: &[&Word]) -> Result<()> {
    if words.iter().any(|w| w.is_empty()) {
        return Err(Error::Degenerate("centralizer of the identity is not cyclic".into()));
    }
    Ok(())
}

/// `∃z: x^z = y`.
pub fn e0(x: &Word, y: &Word) -> Result<bool> {
    x.is_conjugate(y)
}

fn in_power_subgroup(w: &Word, root: &Word, m: i64) -> bool {
    w.power_of(root).is_some_and(|j| j % m == 0)
}

/// `C(x) = C(x2)` and `y2 = y·t^m` for some `t ∈ C(x)`.
pub fn e1(m: i64, x: &Word, y: &Word, x2: &Word, y2: &Word) -> Result<bool> {
    positive("m", m)?;
    nontrivial(&[x, x2])?;
    y.check_same(y2)?;
    x.check_same(y)?;
    if !Word::centralizer_equal(x, x2)? {
        return Ok(false);
    }
    let (root, _) = x.root()?;
    Ok(in_power_subgroup(&y.inverse().mul_unchecked(y2), &root, m))
}

/// `C(x) = C(x2)` and `y2 = t^m·y` for some `t ∈ C(x)`.
pub fn e2(m: i64, x: &Word, y: &Word, x2: &Word, y2: &Word) -> Result<bool> {
    positive("m", m)?;
    nontrivial(&[x, x2])?;
    y.check_same(y2)?;
    x.check_same(y)?;
    if !Word::centralizer_equal(x, x2)? {
        return Ok(false);
    }
    let (root, _) = x.root()?;
    Ok(in_power_subgroup(&y2.mul_unchecked(&y.inverse()), &root, m))
}

/// `C(x) = C(x2)`, `C(y) = C(y2)` and `z = s^p·z2·t^q` for some `s ∈ C(x)`, `t ∈ C(y)`.
#[allow(clippy::too_many_arguments)]
pub fn e3(p: i64, q: i64, x: &Word, y: &Word, z: &Word, x2: &Word, y2: &Word, z2: &Word) -> Result<bool> {
    positive("p", p)?;
    positive("q", q)?;
    nontrivial(&[x, y, x2, y2])?;
    for w in [y, z, x2, y2, z2] {
        x.check_same(w)?;
    }
    if !Word::centralizer_equal(x, x2)? || !Word::centralizer_equal(y, y2)? {
        return Ok(false);
    }
    let (rx, _) = x.root()?;
    let (ry, _) = y.root()?;
    double_coset_member(&rx.pow(p), z2, &ry.pow(q), z)
}
