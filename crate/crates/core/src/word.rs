//! Reduced words in a free group of finite rank.
//!
//! Every [`Word`] is freely reduced at construction time and carries a shared
//! handle to the [`Alphabet`] it was built over. Binary operations refuse to mix
//! alphabets. Conjugation uses the right-action convention `x^g = g⁻¹ x g` and
//! commutators are `[x, y] = x y x⁻¹ y⁻¹`.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// An ordered list of distinct generator names.
#[derive(Debug, Clone)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

fn valid_generator_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Arc<Alphabet>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !valid_generator_name(name) {
                return Err(Error::InvalidAlphabet(format!(
                    "generator name {name:?} does not match [a-z][a-z0-9_]*"
                )));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate generator {name:?}")));
            }
        }
        Ok(Arc::new(Alphabet { names, index }))
    }

    /// Parses a comma-separated declaration such as `a0,b0,c0`.
    pub fn parse(list: &str) -> Result<Arc<Alphabet>> {
        let names: Vec<&str> = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        Alphabet::new(names)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.names[generator]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn generator(self: &Arc<Self>, generator: usize) -> Word {
        assert!(generator < self.rank(), "generator index out of range");
        Word {
            letters: vec![Letter::positive(generator)],
            alphabet: Arc::clone(self),
        }
    }

    /// Single-letter word for the named generator.
    pub fn gen(self: &Arc<Self>, name: &str) -> Result<Word> {
        let i = self.index_of(name).ok_or_else(|| Error::Parse {
            position: 0,
            message: format!("unknown generator {name:?}"),
        })?;
        Ok(self.generator(i))
    }

    pub fn generators(self: &Arc<Self>) -> Vec<Word> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Alphabet>) -> bool {
        Arc::ptr_eq(self, other) || self.names == other.names
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Alphabet {}

/// A generator together with an exponent sign.
///
/// Letters order by generator index first, then positive before negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: u32,
    inverted: bool,
}

impl Letter {
    pub fn new(generator: usize, sign: i8) -> Letter {
        assert!(sign == 1 || sign == -1, "letter sign must be +1 or -1");
        Letter {
            generator: generator as u32,
            inverted: sign < 0,
        }
    }

    pub fn positive(generator: usize) -> Letter {
        Letter::new(generator, 1)
    }

    pub fn negative(generator: usize) -> Letter {
        Letter::new(generator, -1)
    }

    pub fn generator(self) -> usize {
        self.generator as usize
    }

    pub fn sign(self) -> i8 {
        if self.inverted {
            -1
        } else {
            1
        }
    }

    pub fn is_positive(self) -> bool {
        !self.inverted
    }

    pub fn inverse(self) -> Letter {
        Letter {
            generator: self.generator,
            inverted: !self.inverted,
        }
    }

    /// Dense index in `0..2*rank`: `2g` for `g`, `2g+1` for `g⁻¹`.
    pub fn index(self) -> usize {
        2 * self.generator as usize + self.inverted as usize
    }
}

pub(crate) fn push_reduced(buf: &mut Vec<Letter>, letter: Letter) {
    if buf.last() == Some(&letter.inverse()) {
        buf.pop();
    } else {
        buf.push(letter);
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone)]
pub struct Word {
    letters: Vec<Letter>,
    alphabet: Arc<Alphabet>,
}

impl Word {
    pub fn identity(alphabet: &Arc<Alphabet>) -> Word {
        Word {
            letters: Vec::new(),
            alphabet: Arc::clone(alphabet),
        }
    }

    /// Freely reduces `raw` into a word over `alphabet`.
    pub fn reduce<I>(raw: I, alphabet: &Arc<Alphabet>) -> Result<Word>
    where
        I: IntoIterator<Item = Letter>,
    {
        let rank = alphabet.rank();
        let mut letters = Vec::new();
        for letter in raw {
            if letter.generator() >= rank {
                return Err(Error::GeneratorOutOfRange {
                    index: letter.generator(),
                    rank,
                });
            }
            push_reduced(&mut letters, letter);
        }
        Ok(Word {
            letters,
            alphabet: Arc::clone(alphabet),
        })
    }

    /// Caller guarantees every letter is in range; the sequence is reduced here.
    pub(crate) fn from_letters(raw: impl IntoIterator<Item = Letter>, alphabet: &Arc<Alphabet>) -> Word {
        let mut letters = Vec::new();
        for letter in raw {
            debug_assert!(letter.generator() < alphabet.rank());
            push_reduced(&mut letters, letter);
        }
        Word {
            letters,
            alphabet: Arc::clone(alphabet),
        }
    }

    /// Parses the shared text grammar: whitespace-separated `gen` or `gen^k`
    /// tokens, with `1` standing for the identity.
    pub fn parse(text: &str, alphabet: &Arc<Alphabet>) -> Result<Word> {
        let mut letters = Vec::new();
        for (position, token) in tokens(text) {
            if token == "1" {
                continue;
            }
            let (name, exponent) = match token.split_once('^') {
                Some((name, exp)) => {
                    let k: i64 = exp.parse().map_err(|_| Error::Parse {
                        position: position + name.len() + 1,
                        message: format!("invalid exponent {exp:?} in token {token:?}"),
                    })?;
                    if k == 0 {
                        return Err(Error::Parse {
                            position: position + name.len() + 1,
                            message: format!("zero exponent in token {token:?}"),
                        });
                    }
                    (name, k)
                }
                None => (token, 1),
            };
            if !valid_generator_name(name) {
                return Err(Error::Parse {
                    position,
                    message: format!("malformed generator {name:?}"),
                });
            }
            let generator = alphabet.index_of(name).ok_or_else(|| Error::Parse {
                position,
                message: format!("generator {name:?} is not in the alphabet"),
            })?;
            let letter = Letter::new(generator, if exponent > 0 { 1 } else { -1 });
            for _ in 0..exponent.unsigned_abs() {
                push_reduced(&mut letters, letter);
            }
        }
        Ok(Word {
            letters,
            alphabet: Arc::clone(alphabet),
        })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub(crate) fn check_same(&self, other: &Word) -> Result<()> {
        if self.alphabet.same_as(&other.alphabet) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Word {
            letters,
            alphabet: Arc::clone(&self.alphabet),
        }
    }

    /// Product of a sequence of words over one alphabet.
    pub fn product<'a, I>(alphabet: &Arc<Alphabet>, factors: I) -> Result<Word>
    where
        I: IntoIterator<Item = &'a Word>,
    {
        let mut acc = Word::identity(alphabet);
        for f in factors {
            acc.check_same(f)?;
            for &l in &f.letters {
                push_reduced(&mut acc.letters, l);
            }
        }
        Ok(acc)
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
            alphabet: Arc::clone(&self.alphabet),
        }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate(&self, g: &Word) -> Result<Word> {
        self.check_same(g)?;
        Ok(g.inverse().mul_unchecked(self).mul_unchecked(g))
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`.
    pub fn commutator(x: &Word, y: &Word) -> Result<Word> {
        x.check_same(y)?;
        Ok(x.mul_unchecked(y)
            .mul_unchecked(&x.inverse())
            .mul_unchecked(&y.inverse()))
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity(&self.alphabet);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul_unchecked(&base);
        }
        acc
    }

    /// Length after stripping matching letter/inverse pairs from both ends.
    pub fn cyclic_length(&self) -> usize {
        let (lo, hi) = cyclic_core_bounds(&self.letters);
        hi - lo
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.cyclic_length() == self.len()
    }

    pub fn cyclic_normal_form(&self) -> CyclicWord {
        let (lo, hi) = cyclic_core_bounds(&self.letters);
        let core = &self.letters[lo..hi];
        let r = least_rotation(core);
        let mut canonical = Vec::with_capacity(core.len());
        canonical.extend_from_slice(&core[r..]);
        canonical.extend_from_slice(&core[..r]);
        let mut conjugator = Vec::with_capacity(lo + r);
        conjugator.extend_from_slice(&self.letters[..lo]);
        conjugator.extend_from_slice(&core[..r]);
        CyclicWord {
            canonical: Word {
                letters: canonical,
                alphabet: Arc::clone(&self.alphabet),
            },
            conjugator: Word::from_letters(conjugator, &self.alphabet),
        }
    }

    pub fn is_conjugate(&self, other: &Word) -> Result<bool> {
        self.check_same(other)?;
        if self.cyclic_length() != other.cyclic_length() {
            return Ok(false);
        }
        Ok(self.cyclic_normal_form().canonical.letters == other.cyclic_normal_form().canonical.letters)
    }

    /// Returns `(r, k)` with `self = r^k`, `k` maximal and `r` not a proper power.
    pub fn root(&self) -> Result<(Word, u64)> {
        if self.is_empty() {
            return Err(Error::Degenerate("the identity has no root".into()));
        }
        let cyclic = self.cyclic_normal_form();
        let core = cyclic.canonical.letters();
        let period = smallest_period(core);
        let k = core.len() / period;
        let v = Word {
            letters: core[..period].to_vec(),
            alphabet: Arc::clone(&self.alphabet),
        };
        let c = &cyclic.conjugator;
        let r = c.mul_unchecked(&v).mul_unchecked(&c.inverse());
        Ok((r, k as u64))
    }

    /// `⟨root x⟩ = ⟨root y⟩`, i.e. `C(x) = C(y)` for nontrivial `x`, `y`.
    pub fn centralizer_equal(x: &Word, y: &Word) -> Result<bool> {
        x.check_same(y)?;
        let (rx, _) = x.root()?;
        let (ry, _) = y.root()?;
        Ok(rx == ry || rx == ry.inverse())
    }

    /// Exponent `j` with `self = r^j`, if `self` lies in `⟨r⟩`. `r` must not be a proper power.
    pub(crate) fn power_of(&self, r: &Word) -> Option<i64> {
        if self.is_empty() {
            return Some(0);
        }
        let (root, k) = self.root().ok()?;
        if root == *r {
            Some(k as i64)
        } else if root == r.inverse() {
            Some(-(k as i64))
        } else {
            None
        }
    }
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out.into_iter()
}

fn cyclic_core_bounds(letters: &[Letter]) -> (usize, usize) {
    let (mut lo, mut hi) = (0, letters.len());
    while hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    (lo, hi)
}

/// Start index of the lexicographically least rotation (two-pointer scan).
fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Smallest `p` dividing `s.len()` with `s` a power of `s[..p]`.
fn smallest_period(s: &[Letter]) -> usize {
    let n = s.len();
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let p = n - fail[n - 1];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && self.alphabet.same_as(&other.alphabet)
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let name = self.alphabet.name(l.generator());
            let exp = run as i64 * l.sign() as i64;
            if exp == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Conjugacy-class representative of a word.
///
/// `conjugator⁻¹ · original · conjugator` reduces to `canonical`, which is
/// cyclically reduced and the least of its rotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicWord {
    pub canonical: Word,
    pub conjugator: Word,
}
