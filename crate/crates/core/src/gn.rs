//! The witness groups `G_n` and their certificates.
//!
//! `G_n` is realized as the free group on
//! `X_n = {c0} ∪ {a_i, b_i : 0 ≤ i ≤ n} ∪ {t_i : 0 ≤ i < n}`, ordered
//! `c0, a0, b0, t0, a1, b1, t1, …, a_n, b_n` so that `X_k` is a prefix of `X_n`.
//! The remaining surface-boundary elements are words:
//!
//! ```text
//! d_i     = c_i⁻¹ [a_i, b_i]⁻¹
//! c_{i+1} = t_i⁻¹ d_i t_i          (d_i^{t_i} = c_{i+1})
//! s_i     = (t_0 t_1 … t_i)⁻¹
//! ```
//!
//! Each `H_i = ⟨a_i, b_i, c_i⟩` then satisfies `c_i d_i [a_i, b_i] = 1`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::abelianize::{exponent_vector, is_basis_extendable_abelian};
use crate::error::{Error, Result};
use crate::report::{ReportBuilder, VerificationReport};
use crate::stallings::{is_basis_of_ambient, membership_in_free_product_part, SubgroupGraph};
use crate::whitehead::Automorphism;
use crate::word::{Alphabet, Letter, Word};

/// How `d_i` is glued to `c_{i+1}` along `t_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Convention {
    /// `c_{i+1} = t_i⁻¹ d_i t_i`. The one that closes the surface identity.
    RightAction,
    /// `c_{i+1} = t_i d_i t_i⁻¹`.
    LeftAction,
}

impl Convention {
    pub fn opposite(self) -> Convention {
        match self {
            Convention::RightAction => Convention::LeftAction,
            Convention::LeftAction => Convention::RightAction,
        }
    }

    /// Image of `d` under the gluing along `t`.
    pub fn glue(self, d: &Word, t: &Word) -> Result<Word> {
        match self {
            Convention::RightAction => d.conjugate(t),
            Convention::LeftAction => d.conjugate(&t.inverse()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::RightAction => "right",
            Convention::LeftAction => "left",
        }
    }
}

/// Alphabet of `G_n`, in the prefix-compatible order.
pub fn gn_alphabet(n: usize) -> Arc<Alphabet> {
    let mut names = vec!["c0".to_string(), "a0".to_string(), "b0".to_string()];
    for i in 1..=n {
        names.push(format!("t{}", i - 1));
        names.push(format!("a{i}"));
        names.push(format!("b{i}"));
    }
    Alphabet::new(names).expect("generated names are valid")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GnConstruction {
    pub n: usize,
    pub convention: Convention,
    pub alphabet: Arc<Alphabet>,
    /// `c_0 … c_n`
    pub c: Vec<Word>,
    /// `d_0 … d_n`
    pub d: Vec<Word>,
    /// `s_0 … s_{n−1}`
    pub s: Vec<Word>,
    /// `h̄_i = (a_i, b_i, c_i)`
    pub h_bar: Vec<[Word; 3]>,
    /// Present for even `n ≥ 2`.
    pub rewrite: Option<SurfaceRewrite>,
}

/// The change of basis exhibiting `G_n` as a surface group free product with `⟨t_0⟩ ∗ … ∗ ⟨t_{n−1}⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceRewrite {
    /// `a'_i = a_i^{s_{i−1}}` for `0 ≤ i ≤ n` (index 0 holds `a_0` itself).
    pub a_prime: Vec<Word>,
    pub b_prime: Vec<Word>,
    /// `a''_{2j−1} = (a'_{2j−1})^{d'_n}` stored at position `j − 1`.
    pub a_dblprime: Vec<Word>,
    pub b_dblprime: Vec<Word>,
    /// `d'_n = d_n^{s_{n−1}}`
    pub d_n_prime: Word,
    /// `{a_0, b_0, t_0, a''_1, b''_1, t_1, a'_2, b'_2, …, t_{n−1}, d'_n, a'_n, b'_n}`
    pub new_basis: Vec<Word>,
    /// `c_0⁻¹ [b_0,a_0] [b'_2,a'_2] … [b'_n,a'_n] (d'_n)⁻¹ [a'_{n−1},b'_{n−1}] … [a'_1,b'_1]`
    pub identity_residue: Word,
    /// `c_0⁻¹ [b_0,a_0] [b'_2,a'_2] … [b'_n,a'_n] [a''_{n−1},b''_{n−1}] … [a''_1,b''_1] (d'_n)⁻¹`
    pub dblprime_residue: Word,
}

impl GnConstruction {
    pub fn c0(&self) -> Word {
        self.alphabet.generator(0)
    }

    pub fn a(&self, i: usize) -> Word {
        assert!(i <= self.n);
        self.alphabet.generator(3 * i + 1)
    }

    pub fn b(&self, i: usize) -> Word {
        assert!(i <= self.n);
        self.alphabet.generator(3 * i + 2)
    }

    pub fn t(&self, i: usize) -> Word {
        assert!(i < self.n);
        self.alphabet.generator(3 * i + 3)
    }

    /// Generators of `X_k` viewed inside `G_n`.
    pub fn x_basis(&self, k: usize) -> Vec<Word> {
        (0..3 * (k + 1)).map(|g| self.alphabet.generator(g)).collect()
    }

    /// `N_0 = ⟨a_0, b_0⟩`, `N_j = N_{j−1} ∗ ⟨t_{j−1}⟩ ∗ ⟨a_j, b_j⟩`.
    pub fn n_basis(&self, j: usize) -> Vec<Word> {
        let mut out = vec![self.a(0), self.b(0)];
        for m in 1..=j {
            out.extend([self.t(m - 1), self.a(m), self.b(m)]);
        }
        out
    }

    pub fn h_basis(&self, i: usize) -> Vec<Word> {
        self.h_bar[i].to_vec()
    }
}

pub fn build_gn(n: usize) -> GnConstruction {
    build_gn_with(n, Convention::RightAction)
}

pub fn build_gn_with(n: usize, convention: Convention) -> GnConstruction {
    let alphabet = gn_alphabet(n);
    let gen = |g: usize| alphabet.generator(g);
    let a = |i: usize| gen(3 * i + 1);
    let b = |i: usize| gen(3 * i + 2);
    let t = |i: usize| gen(3 * i + 3);
    let mut c = vec![gen(0)];
    let mut d = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let comm = Word::commutator(&a(i), &b(i)).expect("shared alphabet");
        let di = c[i].inverse().mul_unchecked(&comm.inverse());
        if i < n {
            c.push(convention.glue(&di, &t(i)).expect("shared alphabet"));
        }
        d.push(di);
    }
    let mut s = Vec::with_capacity(n);
    let mut prefix = Word::identity(&alphabet);
    for i in 0..n {
        prefix = prefix.mul_unchecked(&t(i));
        s.push(prefix.inverse());
    }
    let h_bar = (0..=n).map(|i| [a(i), b(i), c[i].clone()]).collect();
    let mut g = GnConstruction {
        n,
        convention,
        alphabet,
        c,
        d,
        s,
        h_bar,
        rewrite: None,
    };
    if n >= 2 && n.is_multiple_of(2) {
        g.rewrite = surface_rewrite(&g).ok();
    }
    g
}

fn comm(x: &Word, y: &Word) -> Word {
    Word::commutator(x, y).expect("shared alphabet")
}

/// Checks `c_i d_i [a_i, b_i] = 1`, the gluing `d_i ↦ c_{i+1}`, the rank, and `s_i⁻¹ = t_0 … t_i`.
pub fn verify_relation_chain(g: &GnConstruction) -> VerificationReport {
    let mut r = ReportBuilder::new("relation_chain").param("n", g.n as i64);
    if g.alphabet.rank() != 3 * (g.n + 1) {
        r.fail(format!("rank {} != 3(n+1)", g.alphabet.rank()));
    }
    for i in 0..=g.n {
        let residue = Word::product(&g.alphabet, [&g.c[i], &g.d[i], &comm(&g.a(i), &g.b(i))]);
        match residue {
            Ok(w) if w.is_empty() => {}
            Ok(w) => r.fail(format!("i={i}: c_{i} d_{i} [a_{i},b_{i}] = {w}")),
            Err(e) => r.fail(format!("i={i}: {e}")),
        }
    }
    for i in 0..g.n {
        match g.convention.glue(&g.d[i], &g.t(i)) {
            Ok(expected) if expected == g.c[i + 1] => {}
            Ok(expected) => {
                let residue = g.c[i + 1].mul_unchecked(&expected.inverse());
                r.fail(format!("i={i}: c_{} (d_{i}^t_{i})^-1 = {residue}", i + 1));
            }
            Err(e) => r.fail(format!("i={i}: {e}")),
        }
        let mut prefix = Word::identity(&g.alphabet);
        for j in 0..=i {
            prefix = prefix.mul_unchecked(&g.t(j));
        }
        if g.s[i].inverse() != prefix {
            r.fail(format!("i={i}: s_{i}^-1 = {} != {prefix}", g.s[i].inverse()));
        }
    }
    r.finish()
}

/// Moves `w` onto the prefix sub-alphabet `sub`.
fn restrict(w: &Word, sub: &Arc<Alphabet>) -> Result<Word> {
    Word::reduce(w.letters().iter().copied(), sub)
}

fn restrict_all(ws: &[Word], sub: &Arc<Alphabet>) -> Result<Vec<Word>> {
    ws.iter().map(|w| restrict(w, sub)).collect()
}

/// `N_k ∗ ⟨t_k⟩`: the proposed complement of `H_{k+1}` in `G_{k+1}`.
pub fn free_factor_complement(g: &GnConstruction, k: usize) -> Vec<Word> {
    let mut out = g.n_basis(k);
    out.push(g.t(k));
    out
}

pub fn verify_free_factor_chain(g: &GnConstruction) -> Result<VerificationReport> {
    verify_free_factor_chain_with(g, |k| free_factor_complement(g, k))
}

/// Free-factor certificate with a caller-supplied complement, for fault injection.
///
/// For every `0 ≤ k < n`, over the sub-alphabet `X_{k+1}`:
/// * `X_k ∪ {t_k, a_{k+1}, b_{k+1}}` is a basis and folds to rank `3(k+2)`;
/// * `complement(k) ∪ {a_{k+1}, b_{k+1}, c_{k+1}}` is a basis, so `H_{k+1}` is a free factor.
pub fn verify_free_factor_chain_with<F>(g: &GnConstruction, complement: F) -> Result<VerificationReport>
where
    F: Fn(usize) -> Vec<Word>,
{
    if g.n == 0 {
        return Err(Error::Precondition("the free-factor chain needs n >= 1".into()));
    }
    let mut r = ReportBuilder::new("free_factor_chain").param("n", g.n as i64);
    if !is_basis_of_ambient(&restrict_all(&g.h_basis(0), &gn_alphabet(0))?)? {
        r.fail("H_0 basis is not a basis of G_0");
    }
    for k in 0..g.n {
        let sub = gn_alphabet(k + 1);
        let mut step = g.x_basis(k);
        step.extend([g.t(k), g.a(k + 1), g.b(k + 1)]);
        let step = restrict_all(&step, &sub)?;
        let rank = SubgroupGraph::fold_over(&sub, &step)?.rank();
        if rank != 3 * (k + 2) {
            r.fail(format!("k={k}: Stallings rank of X_{} is {rank}, expected {}", k + 1, 3 * (k + 2)));
        }
        if !is_basis_of_ambient(&step)? {
            r.fail(format!("k={k}: X_{k} with t_{k}, a_{}, b_{} is not a basis", k + 1, k + 1));
        }
        let mut split = complement(k);
        split.extend(g.h_basis(k + 1));
        let split = restrict_all(&split, &sub)?;
        if !is_basis_of_ambient(&split)? {
            let rank = SubgroupGraph::fold_over(&sub, &split)?.rank();
            r.fail(format!(
                "k={k}: complement with H_{} is not a basis of G_{} ({} elements, rank {rank})",
                k + 1,
                k + 1,
                split.len()
            ));
        }
    }
    let full_rank = SubgroupGraph::fold_over(&g.alphabet, &g.x_basis(g.n))?.rank();
    r.set_param("rank", full_rank as i64);
    if full_rank != 3 * (g.n + 1) {
        r.fail(format!("Stallings rank of X_{} is {full_rank}", g.n));
    }
    Ok(r.finish())
}

/// Builds the change of basis for even `n ≥ 2`. The two residues are recorded
/// as computed; [`verify_surface_rewrite`] checks that they vanish.
pub fn surface_rewrite(g: &GnConstruction) -> Result<SurfaceRewrite> {
    let n = g.n;
    if n < 2 || n % 2 == 1 {
        return Err(Error::Precondition(format!("surface rewrite needs even n >= 2, got {n}")));
    }
    let conj = |x: &Word, by: &Word| x.conjugate(by).expect("shared alphabet");
    let mut a_prime = vec![g.a(0)];
    let mut b_prime = vec![g.b(0)];
    for i in 1..=n {
        a_prime.push(conj(&g.a(i), &g.s[i - 1]));
        b_prime.push(conj(&g.b(i), &g.s[i - 1]));
    }
    let d_n_prime = conj(&g.d[n], &g.s[n - 1]);
    let k = n / 2;
    let a_dblprime: Vec<Word> = (1..=k).map(|j| conj(&a_prime[2 * j - 1], &d_n_prime)).collect();
    let b_dblprime: Vec<Word> = (1..=k).map(|j| conj(&b_prime[2 * j - 1], &d_n_prime)).collect();

    let head = {
        let mut w = g.c0().inverse().mul_unchecked(&comm(&g.b(0), &g.a(0)));
        for j in (2..=n).step_by(2) {
            w = w.mul_unchecked(&comm(&b_prime[j], &a_prime[j]));
        }
        w
    };
    let mut identity_residue = head.mul_unchecked(&d_n_prime.inverse());
    for j in (1..n).step_by(2).rev() {
        identity_residue = identity_residue.mul_unchecked(&comm(&a_prime[j], &b_prime[j]));
    }
    let mut dblprime_residue = head;
    for j in (1..=k).rev() {
        dblprime_residue = dblprime_residue.mul_unchecked(&comm(&a_dblprime[j - 1], &b_dblprime[j - 1]));
    }
    dblprime_residue = dblprime_residue.mul_unchecked(&d_n_prime.inverse());

    let mut new_basis = vec![g.a(0), g.b(0)];
    for i in 1..=n {
        new_basis.push(g.t(i - 1));
        if i == n {
            new_basis.push(d_n_prime.clone());
        }
        if i % 2 == 1 {
            new_basis.push(a_dblprime[(i - 1) / 2].clone());
            new_basis.push(b_dblprime[(i - 1) / 2].clone());
        } else {
            new_basis.push(a_prime[i].clone());
            new_basis.push(b_prime[i].clone());
        }
    }
    Ok(SurfaceRewrite {
        a_prime,
        b_prime,
        a_dblprime,
        b_dblprime,
        d_n_prime,
        new_basis,
        identity_residue,
        dblprime_residue,
    })
}

/// Surface-rewrite certificate: both residues vanish, the new generating set
/// is a basis, and the opposite gluing convention leaves a nonzero residue.
pub fn verify_surface_rewrite(g: &GnConstruction) -> Result<VerificationReport> {
    let mut r = ReportBuilder::new("surface_rewrite").param("n", g.n as i64);
    let sr = surface_rewrite(g)?;
    if !sr.identity_residue.is_empty() {
        r.fail(format!("residue ({} convention) = {}", g.convention.name(), sr.identity_residue));
    }
    if !sr.dblprime_residue.is_empty() {
        r.fail(format!("double-primed residue ({} convention) = {}", g.convention.name(), sr.dblprime_residue));
    }
    r.set_param("basis_size", sr.new_basis.len() as i64);
    if !is_basis_of_ambient(&sr.new_basis)? {
        let rank = SubgroupGraph::fold_over(&g.alphabet, &sr.new_basis)?.rank();
        r.fail(format!("rewritten generating set is not a basis (rank {rank})"));
    }
    let other = build_gn_with(g.n, g.convention.opposite());
    let other_sr = surface_rewrite(&other)?;
    if other_sr.identity_residue.is_empty() {
        r.fail(format!(
            "{} convention also closes the identity; the gluing convention is not pinned",
            other.convention.name()
        ));
    }
    Ok(r.finish())
}

/// The three free factors of `G_n = K ∗ H_{2i} ∗ L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagParts {
    /// `N_{2i−1} ∗ ⟨t_{2i−1}⟩`
    pub k: Vec<Word>,
    /// `{a_{2i}, b_{2i}, c_{2i}}`
    pub h: Vec<Word>,
    /// `⟨t_{2i}⟩ ∗ ⟨a_j, b_j : 2i+1 ≤ j ≤ n⟩ ∗ ⟨t_j : 2i+1 ≤ j ≤ n−1⟩`
    pub l: Vec<Word>,
}

fn check_flag_index(g: &GnConstruction, i: usize) -> Result<()> {
    if i == 0 || 2 * i + 2 > g.n {
        return Err(Error::Precondition(format!(
            "flag index i={i} out of range for n={} (need 1 <= i <= n/2 - 1)",
            g.n
        )));
    }
    Ok(())
}

pub fn flag_parts(g: &GnConstruction, i: usize) -> Result<FlagParts> {
    check_flag_index(g, i)?;
    let mut k = g.n_basis(2 * i - 1);
    k.push(g.t(2 * i - 1));
    let h = g.h_basis(2 * i);
    let mut l = vec![g.t(2 * i)];
    for j in 2 * i + 1..=g.n {
        l.push(g.a(j));
        l.push(g.b(j));
    }
    for j in 2 * i + 1..g.n {
        l.push(g.t(j));
    }
    Ok(FlagParts { k, h, l })
}

pub fn explicit_flag_decomposition(g: &GnConstruction, i: usize) -> Result<VerificationReport> {
    let parts = flag_parts(g, i)?;
    let mut r = ReportBuilder::new("flag_decomposition")
        .param("n", g.n as i64)
        .param("i", i as i64);
    let all: Vec<Word> = parts.k.iter().chain(&parts.h).chain(&parts.l).cloned().collect();
    if !is_basis_of_ambient(&all)? {
        r.fail(format!("K, H_{}, L together are not a basis of G_{}", 2 * i, g.n));
    }
    let left = [parts.k.clone(), parts.h.clone()];
    for j in (0..=2 * (i - 1)).step_by(2) {
        for (name, w) in ["a", "b", "c"].iter().zip(&g.h_bar[j]) {
            if !membership_in_free_product_part(&left, w)? {
                r.fail(format!("{name}_{j} = {w} is not in K*H_{}", 2 * i));
            }
        }
    }
    let right = [parts.h.clone(), parts.l.clone()];
    let j = 2 * (i + 1);
    for (name, w) in ["a", "b", "c"].iter().zip(&g.h_bar[j]) {
        if !membership_in_free_product_part(&right, w)? {
            r.fail(format!("{name}_{j} = {w} is not in H_{}*L", 2 * i));
        }
    }
    Ok(r.finish())
}

/// Abelian obstruction: `vec(d_n) = (−1)^{n+1} vec(c_0)`, so `{c_0, d_n}`
/// cannot be part of a basis.
pub fn verify_not_decomposable(g: &GnConstruction) -> Result<VerificationReport> {
    if g.n == 0 {
        return Err(Error::Precondition("the decomposition obstruction needs n >= 1".into()));
    }
    let mut r = ReportBuilder::new("not_decomposable").param("n", g.n as i64);
    let vc = exponent_vector(&g.c0());
    let vd = exponent_vector(&g.d[g.n]);
    let sign = if g.n % 2 == 1 { 1 } else { -1 };
    let expected = vc.scaled(&sign)?;
    r.set_param("sign", sign);
    if vd != expected {
        r.fail(format!("vec(d_{}) = {:?}, expected {:?}", g.n, vd.entries, expected.entries));
    }
    if is_basis_extendable_abelian(&[vc, vd])? {
        r.fail(format!("{{c_0, d_{}}} extends to a basis of the abelianization", g.n));
    }
    Ok(r.finish())
}

/// Twist fixing `h_part`, conjugating `k_part` by `cⁿ` and sending each
/// HNN letter `t` to `cⁿ t`.
pub fn dehn_twist_family(
    alphabet: &Arc<Alphabet>,
    h_part: &[usize],
    k_part: &[usize],
    hnn_letters: &[usize],
    c: &Word,
    n: i64,
) -> Result<Automorphism> {
    let rank = alphabet.rank();
    let mut role = vec![None; rank];
    for (tag, part) in [(0u8, h_part), (1, k_part), (2, hnn_letters)] {
        for &g in part {
            if g >= rank {
                return Err(Error::Precondition(format!("generator {g} out of range")));
            }
            if role[g].replace(tag).is_some() {
                return Err(Error::Precondition(format!("generator {} is listed twice", alphabet.name(g))));
            }
        }
    }
    if let Some(g) = role.iter().position(Option::is_none) {
        return Err(Error::Precondition(format!(
            "generator {} is in no part of the partition",
            alphabet.name(g)
        )));
    }
    if !alphabet.same_as(c.alphabet()) {
        return Err(Error::AlphabetMismatch);
    }
    if c.letters().iter().any(|l| role[l.generator()] != Some(0)) {
        return Err(Error::Precondition(format!("twisting element {c} is not in the fixed part")));
    }
    let cn = c.pow(n);
    let cinv = c.pow(-n);
    let mut images = Vec::with_capacity(rank);
    let mut inverse_images = Vec::with_capacity(rank);
    for (g, r) in role.iter().enumerate() {
        let x = alphabet.generator(g);
        match r {
            Some(0) => {
                images.push(x.clone());
                inverse_images.push(x);
            }
            Some(1) => {
                images.push(cn.mul_unchecked(&x).mul_unchecked(&cinv));
                inverse_images.push(cinv.mul_unchecked(&x).mul_unchecked(&cn));
            }
            _ => {
                images.push(cn.mul_unchecked(&x));
                inverse_images.push(cinv.mul_unchecked(&x));
            }
        }
    }
    Automorphism::new(alphabet, images, inverse_images)
}

/// Checks that `f_0(g), …, f_N(g)` are pairwise non-conjugate with pairwise
/// distinct centralizers.
pub fn orbit_distinct_check<F>(family: F, g: &Word, max_n: u32) -> Result<VerificationReport>
where
    F: Fn(i64) -> Result<Automorphism>,
{
    if g.is_empty() {
        return Err(Error::Degenerate("orbit of the identity".into()));
    }
    let mut r = ReportBuilder::new("orbit_distinct").param("N", max_n as i64);
    let images: Vec<Word> = (0..=max_n as i64)
        .map(|p| family(p).and_then(|f| f.apply(g)))
        .collect::<Result<_>>()?;
    'scan: for p in 0..images.len() {
        for q in p + 1..images.len() {
            let conj = images[p].is_conjugate(&images[q])?;
            let cent = Word::centralizer_equal(&images[p], &images[q])?;
            if conj || cent {
                r.set_param("p", p as i64);
                r.set_param("q", q as i64);
                r.fail(images[p].to_string());
                r.fail(images[q].to_string());
                break 'scan;
            }
        }
    }
    Ok(r.finish())
}

/// A documented twist family together with the element it moves.
pub struct OrbitInstance {
    pub name: &'static str,
    pub alphabet: Arc<Alphabet>,
    pub h_part: Vec<usize>,
    pub k_part: Vec<usize>,
    pub hnn_letters: Vec<usize>,
    pub twist: Word,
    pub element: Word,
}

impl OrbitInstance {
    pub fn family(&self, n: i64) -> Result<Automorphism> {
        dehn_twist_family(&self.alphabet, &self.h_part, &self.k_part, &self.hnn_letters, &self.twist, n)
    }

    pub fn check(&self, max_n: u32) -> Result<VerificationReport> {
        let mut report = orbit_distinct_check(|n| self.family(n), &self.element, max_n)?;
        report.check = format!("orbit_distinct_{}", self.name);
        Ok(report)
    }
}

/// `F(x,y,z) = ⟨x,y⟩ ∗ ⟨z⟩`, twist by `x`, element `y z`.
pub fn amalgam_instance() -> OrbitInstance {
    let alphabet = Alphabet::parse("x,y,z").unwrap();
    OrbitInstance {
        name: "amalgam",
        twist: alphabet.generator(0),
        element: Word::parse("y z", &alphabet).unwrap(),
        h_part: vec![0, 1],
        k_part: vec![2],
        hnn_letters: vec![],
        alphabet,
    }
}

/// `F(x,y,t)` as an HNN extension of `⟨x,y⟩`, `t ↦ xⁿ t`, element `y t`.
pub fn hnn_instance() -> OrbitInstance {
    let alphabet = Alphabet::parse("x,y,t").unwrap();
    OrbitInstance {
        name: "hnn",
        twist: alphabet.generator(0),
        element: Word::parse("y t", &alphabet).unwrap(),
        h_part: vec![0, 1],
        k_part: vec![],
        hnn_letters: vec![2],
        alphabet,
    }
}

pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

/// Nontrivial elements of `⟨basis⟩` spelled by at most `max_len` basis letters,
/// keyed by ambient cyclic normal form. `None` if more than `cap` words were enumerated.
type Classes = (Vec<Word>, HashMap<Vec<Letter>, Word>);

fn enumerate_classes(basis: &[Word], max_len: usize, cap: usize) -> Option<Classes> {
    let mut order = Vec::new();
    let mut classes: HashMap<Vec<Letter>, Word> = HashMap::new();
    let mut count = 0usize;
    // frontier entries: (last subgroup letter, ambient element)
    let mut frontier: Vec<(Option<Letter>, Word)> = match basis.first() {
        Some(w) => vec![(None, Word::identity(w.alphabet()))],
        None => return Some((order, classes)),
    };
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (last, elem) in &frontier {
            for (g, generator) in basis.iter().enumerate() {
                for sign in [1i8, -1] {
                    let l = Letter::new(g, sign);
                    if *last == Some(l.inverse()) {
                        continue;
                    }
                    count += 1;
                    if count > cap {
                        return None;
                    }
                    let step = if sign > 0 { generator.clone() } else { generator.inverse() };
                    let w = elem.mul_unchecked(&step);
                    if !w.is_empty() {
                        let key = w.cyclic_normal_form().canonical.letters().to_vec();
                        if let std::collections::hash_map::Entry::Vacant(e) = classes.entry(key) {
                            e.insert(w.clone());
                            order.push(w.clone());
                        }
                    }
                    next.push((Some(l), w));
                }
            }
        }
        frontier = next;
    }
    Some((order, classes))
}

/// Looks for a nontrivial element of `⟨part1⟩` conjugate to one of `⟨part2⟩`.
pub fn cross_conjugacy_scan(part1: &[Word], part2: &[Word], max_len: usize) -> Result<VerificationReport> {
    cross_conjugacy_scan_with_cap(part1, part2, max_len, DEFAULT_ELEMENT_CAP)
}

pub fn cross_conjugacy_scan_with_cap(
    part1: &[Word],
    part2: &[Word],
    max_len: usize,
    cap: usize,
) -> Result<VerificationReport> {
    if let (Some(x), Some(y)) = (part1.first(), part2.first()) {
        x.check_same(y)?;
    }
    for w in part1.iter().chain(part2) {
        part1.first().or(part2.first()).unwrap().check_same(w)?;
    }
    let mut r = ReportBuilder::new("cross_conjugacy").param("max_len", max_len as i64);
    let (Some((order1, _)), Some((_, classes2))) = (
        enumerate_classes(part1, max_len, cap),
        enumerate_classes(part2, max_len, cap),
    ) else {
        r.set_param("cap", cap as i64);
        r.exhausted();
        return Ok(r.finish());
    };
    r.set_param("classes", order1.len() as i64);
    for w in &order1 {
        let key = w.cyclic_normal_form().canonical.letters().to_vec();
        if let Some(v) = classes2.get(&key) {
            r.fail(w.to_string());
            r.fail(v.to_string());
            break;
        }
    }
    Ok(r.finish())
}

/// `H_0` against `H_2` inside `G_n`, `n ≥ 2`.
pub fn separation_check(g: &GnConstruction, max_len: usize, cap: usize) -> Result<VerificationReport> {
    if g.n < 2 {
        return Err(Error::Precondition("the separation scan needs n >= 2".into()));
    }
    let mut report = cross_conjugacy_scan_with_cap(&g.h_basis(0), &g.h_basis(2), max_len, cap)?;
    report.params.insert("n".into(), g.n as i64);
    Ok(report)
}

/// Named word table for display: `c_i`, `d_i`, `s_i`.
pub fn derived_table(g: &GnConstruction) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for (i, w) in g.c.iter().enumerate() {
        out.insert(format!("c{i}"), w.to_string());
    }
    for (i, w) in g.d.iter().enumerate() {
        out.insert(format!("d{i}"), w.to_string());
    }
    for (i, w) in g.s.iter().enumerate() {
        out.insert(format!("s{i}"), w.to_string());
    }
    out
}
