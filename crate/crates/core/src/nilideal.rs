//! The nil ideal `I_{n,m}` generated by all `n`-th powers in `F_m⁺`.
//!
//! Membership is decided over `F_p`. Every spanning element below has integer
//! coefficients, and the rank of an integer matrix over `F_p` equals its rank
//! over any extension field, so the answers hold for every infinite field of
//! characteristic `p`.
//!
//! Over an infinite field the ideal is spanned by the elements
//! `u · P_λ(w_1, ..., w_s) · v` with distinct nonempty words `w_i`, positive
//! `λ_i` summing to `n`, and arbitrary words `u`, `v`. Each such element is
//! multihomogeneous, so all spans are built one multidegree block at a time.

use std::collections::{HashMap, HashSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::commpoly::{monomials_of_multidegree, count_monomials_of_multidegree, CommMonomial, CommPoly};
use crate::error::{Error, Result};
use crate::exactla::{Basis, GradedSpan, SparseVec};
use crate::freealg::{
    complete_linearization, multiset_arrangements, substitute_words, words_of_length, words_up_to,
    words_with_multidegree, FreeElement, MultiDegree, Word,
};
use crate::genmat::{
    sigma, sigma_candidates, ConcomitantExpr, InvariantExpr, PolyMatrix, SigmaFactor,
    WordMatrixCache,
};
use crate::ring::{Integers, PrimeField, Ring};

/// Default limit on the number of basis elements a single computation may use.
pub const DEFAULT_BUDGET: u128 = 1 << 16;

/// A spanning element `prefix · P_λ(w_1, ..., w_s) · suffix`.
///
/// `parts` holds the pairs `(w_i, λ_i)`; the inner words are distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorShape {
    pub prefix: Word,
    pub parts: Vec<(Word, usize)>,
    pub suffix: Word,
}

impl GeneratorShape {
    pub fn new(prefix: Word, parts: Vec<(Word, usize)>, suffix: Word) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::usage("a generator needs at least one inner word"));
        }
        if parts.iter().any(|(w, l)| w.is_empty() || *l == 0) {
            return Err(Error::usage("inner words must be nonempty with positive multiplicity"));
        }
        Ok(GeneratorShape { prefix, parts, suffix })
    }

    /// `Σ λ_i`, the power this generator linearizes.
    pub fn n(&self) -> usize {
        self.parts.iter().map(|p| p.1).sum()
    }

    pub fn degree(&self) -> usize {
        self.prefix.len() + self.core_degree() + self.suffix.len()
    }

    fn core_degree(&self) -> usize {
        self.parts.iter().map(|(w, l)| w.len() * l).sum()
    }

    pub fn multidegree(&self, m: usize) -> MultiDegree {
        let mut acc = &self.prefix.multidegree(m) + &self.suffix.multidegree(m);
        for (w, l) in &self.parts {
            acc = &acc + &w.multidegree(m).scale(*l);
        }
        acc
    }

    /// The words of `P_λ(w_1, ..., w_s)` with repetition, one per arrangement.
    pub fn core_words(&self) -> Vec<Word> {
        let counts: Vec<usize> = self.parts.iter().map(|p| p.1).collect();
        multiset_arrangements(&counts)
            .into_iter()
            .map(|arr| {
                let mut w = Word::empty();
                for i in arr {
                    w.extend_from(&self.parts[i].0);
                }
                w
            })
            .collect()
    }

    pub fn expand<R: Ring>(&self, ring: &R, m: usize) -> FreeElement<R> {
        let mut out = FreeElement::zero(ring.clone(), m);
        for core in self.core_words() {
            let mut w = self.prefix.clone();
            w.extend_from(&core);
            w.extend_from(&self.suffix);
            out.add_term(w, ring.one());
        }
        out
    }
}

impl fmt::Display for GeneratorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lambda = self.parts.iter().map(|p| p.1).join(",");
        let args = self.parts.iter().map(|p| p.0.to_string()).join(", ");
        let mut pieces = Vec::new();
        if !self.prefix.is_empty() {
            pieces.push(self.prefix.to_string());
        }
        pieces.push(format!("P_({lambda})({args})"));
        if !self.suffix.is_empty() {
            pieces.push(self.suffix.to_string());
        }
        f.write_str(&pieces.join(" * "))
    }
}

impl Serialize for GeneratorShape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

type Parts = [(Word, usize)];

/// Enumerates the sets `{(w_i, λ_i)}` of distinct nonempty words with
/// `Σ λ_i = n`, keeping those passed by `accept` and cutting branches on
/// which `prune` holds.
fn enumerate_cores(
    n: usize,
    candidates: &[Word],
    max_len: usize,
    accept: &dyn Fn(&Parts) -> bool,
    prune: &dyn Fn(&Parts) -> bool,
) -> Vec<Vec<(Word, usize)>> {
    struct Search<'a> {
        candidates: &'a [Word],
        accept: &'a dyn Fn(&Parts) -> bool,
        prune: &'a dyn Fn(&Parts) -> bool,
        cur: Vec<(Word, usize)>,
        out: Vec<Vec<(Word, usize)>>,
    }

    impl Search<'_> {
        fn rec(&mut self, start: usize, n_left: usize, len_left: usize) {
            if n_left == 0 {
                if (self.accept)(&self.cur) {
                    self.out.push(self.cur.clone());
                }
                return;
            }
            for idx in start..self.candidates.len() {
                let w = &self.candidates[idx];
                if w.len() > len_left {
                    break;
                }
                for lam in 1..=n_left {
                    let used = lam * w.len();
                    if used > len_left || n_left - lam > len_left - used {
                        break;
                    }
                    self.cur.push((w.clone(), lam));
                    if !(self.prune)(&self.cur) {
                        self.rec(idx + 1, n_left - lam, len_left - used);
                    }
                    self.cur.pop();
                }
            }
        }
    }

    let mut search = Search {
        candidates,
        accept,
        prune,
        cur: Vec::new(),
        out: Vec::new(),
    };
    search.rec(0, n, max_len);
    let mut out = search.out;
    out.sort_by(|a, b| {
        let key = |c: &Vec<(Word, usize)>| {
            let inner: usize = c.iter().map(|p| p.0.len()).sum();
            let lambda: Vec<std::cmp::Reverse<usize>> = c.iter().map(|p| std::cmp::Reverse(p.1)).collect();
            (inner, c.len(), lambda)
        };
        key(a)
            .cmp(&key(b))
            .then_with(|| a.iter().map(|p| &p.0).cmp(b.iter().map(|p| &p.0)))
    });
    out
}

/// All `P_λ(w_1, ..., w_s)` of total degree exactly `degree`.
pub fn cores_of_degree(n: usize, m: usize, degree: usize) -> Vec<GeneratorShape> {
    if n == 0 || degree < n {
        return Vec::new();
    }
    let candidates = words_up_to(m, degree);
    let total = |c: &[(Word, usize)]| c.iter().map(|(w, l)| w.len() * l).sum::<usize>();
    enumerate_cores(n, &candidates, degree, &|c| total(c) == degree, &|_| false)
        .into_iter()
        .map(|parts| GeneratorShape {
            prefix: Word::empty(),
            parts,
            suffix: Word::empty(),
        })
        .collect()
}

/// All `P_λ(w_1, ..., w_s)` of multidegree exactly `deg`.
pub fn cores_of_multidegree(n: usize, deg: &MultiDegree) -> Vec<GeneratorShape> {
    let m = deg.len();
    let total = deg.total();
    if n == 0 || total < n {
        return Vec::new();
    }
    let mut candidates: Vec<Word> = deg
        .below()
        .into_iter()
        .filter(|d| !d.is_zero())
        .flat_map(|d| words_with_multidegree(&d))
        .collect();
    candidates.sort();
    let weight = |c: &[(Word, usize)]| {
        c.iter()
            .fold(MultiDegree::zero(m), |acc, (w, l)| &acc + &w.multidegree(m).scale(*l))
    };
    enumerate_cores(
        n,
        &candidates,
        total,
        &|c| weight(c) == *deg,
        &|c| !weight(c).componentwise_le(deg),
    )
    .into_iter()
    .map(|parts| GeneratorShape {
        prefix: Word::empty(),
        parts,
        suffix: Word::empty(),
    })
    .collect()
}

/// Every spanning element `u · P_λ(w) · v` of `I_{n,m}` in total degree
/// `degree`, without duplicate elements.
///
/// Shapes that expand to an integer element already emitted are skipped.
pub fn spanning_generators(n: usize, m: usize, degree: usize) -> Vec<GeneratorShape> {
    let mut out = Vec::new();
    if n == 0 || degree < n {
        return out;
    }
    let mut seen: HashSet<Vec<(Word, BigInt)>> = HashSet::new();
    for core_len in n..=degree {
        let cores = cores_of_degree(n, m, core_len);
        let rest = degree - core_len;
        for core in &cores {
            for ulen in 0..=rest {
                for u in words_of_length(m, ulen) {
                    for v in words_of_length(m, rest - ulen) {
                        let g = GeneratorShape {
                            prefix: u.clone(),
                            parts: core.parts.clone(),
                            suffix: v,
                        };
                        let key: Vec<(Word, BigInt)> = g
                            .expand(&Integers, m)
                            .terms()
                            .map(|(w, c)| (w.clone(), c.clone()))
                            .collect();
                        if seen.insert(key) {
                            out.push(g);
                        }
                    }
                }
            }
        }
    }
    out
}

/// A random spanning element of total degree `degree`, or `None` when none
/// was found within a bounded number of draws.
pub fn sample_generator<G: Rng + ?Sized>(n: usize, m: usize, degree: usize, rng: &mut G) -> Option<GeneratorShape> {
    if n == 0 || m == 0 || degree < n {
        return None;
    }
    for _ in 0..256 {
        let s = rng.gen_range(1..=n);
        let mut cuts: Vec<usize> = (1..n).collect::<Vec<_>>();
        cuts.shuffle(rng);
        let mut cuts: Vec<usize> = cuts.into_iter().take(s - 1).collect();
        cuts.sort_unstable();
        let mut lambda = Vec::with_capacity(s);
        let mut prev = 0;
        for c in cuts.into_iter().chain(std::iter::once(n)) {
            lambda.push(c - prev);
            prev = c;
        }
        let max_len = (degree / n).max(1);
        let lens: Vec<usize> = (0..s).map(|_| rng.gen_range(1..=max_len)).collect();
        let core: usize = lens.iter().zip(&lambda).map(|(l, k)| l * k).sum();
        if core > degree {
            continue;
        }
        let mut words: Vec<Word> = Vec::with_capacity(s);
        for &len in &lens {
            words.push(random_word(m, len, rng));
        }
        if words.iter().unique().count() != s {
            continue;
        }
        let rest = degree - core;
        let ulen = rng.gen_range(0..=rest);
        let mut parts: Vec<(Word, usize)> = words.into_iter().zip(lambda).collect();
        parts.sort();
        return Some(GeneratorShape {
            prefix: random_word(m, ulen, rng),
            parts,
            suffix: random_word(m, rest - ulen, rng),
        });
    }
    None
}

pub(crate) fn random_word<G: Rng + ?Sized>(m: usize, len: usize, rng: &mut G) -> Word {
    let letters: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=m)).collect();
    Word::new(&letters)
}

/// Spans of `I_{n,m}` in one multidegree, over the word basis of that degree.
#[derive(Debug, Clone)]
pub struct Block {
    degree: MultiDegree,
    basis: Basis<Word>,
    span: GradedSpan,
}

impl Block {
    pub fn degree(&self) -> &MultiDegree {
        &self.degree
    }

    pub fn basis(&self) -> &Basis<Word> {
        &self.basis
    }

    pub fn span(&self) -> &GradedSpan {
        &self.span
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    pub fn is_full(&self) -> bool {
        self.span.is_full()
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        match self.basis.position(w) {
            None => false,
            Some(i) => {
                let e = SparseVec::from_pairs(self.span.field(), self.dim(), [(i, 1)]).expect("index in range");
                self.span.member(&e).expect("same dimension")
            }
        }
    }

    pub fn member_words(&self) -> Vec<Word> {
        if self.is_full() {
            return self.basis.labels().to_vec();
        }
        self.basis
            .labels()
            .iter()
            .filter(|w| self.contains_word(w))
            .cloned()
            .collect()
    }

    /// Membership of an arbitrary element of this multidegree.
    pub fn contains(&self, f: &FreeElement<PrimeField>) -> Result<bool> {
        let v = self.basis.vector_from(self.span.field(), f.terms().map(|(w, c)| (w, *c)))?;
        self.span.member(&v)
    }
}

/// Memoized multidegree blocks of `I_{n,m}` over `F_p`.
///
/// The block of degree `μ` is spanned by `x_i · I_{μ-e_i}`, `I_{μ-e_i} · x_i`
/// and the elements `P_λ(w)` of degree `μ`; this equals the span of all
/// `u · P_λ(w) · v` because each such element with `u` or `v` nonempty is a
/// letter times a spanning element of lower degree.
#[derive(Debug)]
pub struct NilIdeal {
    n: usize,
    m: usize,
    field: PrimeField,
    budget: u128,
    blocks: HashMap<MultiDegree, Block>,
}

impl NilIdeal {
    pub fn new(n: usize, m: usize, p: u64, budget: u128) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::usage("n and m must be positive"));
        }
        if m > 255 {
            return Err(Error::usage("at most 255 generators are supported"));
        }
        Ok(NilIdeal {
            n,
            m,
            field: PrimeField::new(p)?,
            budget,
            blocks: HashMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn block(&mut self, deg: &MultiDegree) -> Result<&Block> {
        if deg.len() != self.m {
            return Err(Error::Dimension {
                expected: self.m,
                got: deg.len(),
            });
        }
        self.ensure_block(deg)?;
        Ok(&self.blocks[deg])
    }

    fn ensure_block(&mut self, deg: &MultiDegree) -> Result<()> {
        if self.blocks.contains_key(deg) {
            return Ok(());
        }
        if deg.total() > self.n {
            for pred in predecessors(deg) {
                self.ensure_block(&pred)?;
            }
        }
        let b = self.compute_block(deg)?;
        self.blocks.insert(deg.clone(), b);
        Ok(())
    }

    /// Builds every block of total degree `degree`, in parallel.
    pub fn ensure_level(&mut self, degree: usize) -> Result<()> {
        if degree > self.n {
            self.ensure_level(degree - 1)?;
        }
        let missing: Vec<MultiDegree> = MultiDegree::compositions(self.m, degree)
            .into_iter()
            .filter(|d| !self.blocks.contains_key(d))
            .collect();
        let built: Vec<Result<Block>> = missing.par_iter().map(|d| self.compute_block(d)).collect();
        for b in built {
            let b = b?;
            self.blocks.insert(b.degree.clone(), b);
        }
        Ok(())
    }

    /// The blocks of total degree `degree`, in reverse-lex order.
    pub fn level(&mut self, degree: usize) -> Result<Vec<&Block>> {
        self.ensure_level(degree)?;
        Ok(MultiDegree::compositions(self.m, degree)
            .iter()
            .map(|d| &self.blocks[d])
            .collect())
    }

    fn compute_block(&self, deg: &MultiDegree) -> Result<Block> {
        let total = deg.total();
        let dim = multinomial(deg);
        if dim > self.budget {
            return Err(Error::Budget {
                what: format!("word basis of multidegree {deg}"),
                needed: dim,
                budget: self.budget,
            });
        }
        let basis = Basis::new(words_with_multidegree(deg));
        let mut span = GradedSpan::new(self.field, basis.len());
        if total < self.n {
            return Ok(Block {
                degree: deg.clone(),
                basis,
                span,
            });
        }
        if total > self.n {
            for (i, pred) in predecessors_indexed(deg) {
                let prev = &self.blocks[&pred];
                if prev.rank() == 0 {
                    continue;
                }
                let letter = Word::letter(i + 1);
                let left: Vec<usize> = prev
                    .basis
                    .labels()
                    .iter()
                    .map(|w| basis.position(&letter.concat(w)).expect("shifted word in block"))
                    .collect();
                let right: Vec<usize> = prev
                    .basis
                    .labels()
                    .iter()
                    .map(|w| basis.position(&w.concat(&letter)).expect("shifted word in block"))
                    .collect();
                for map in [&left, &right] {
                    for row in prev.span.rows() {
                        if span.is_full() {
                            break;
                        }
                        let v = SparseVec::from_pairs(&self.field, basis.len(), row.entries().iter().map(|&(c, x)| (map[c], x)))?;
                        span.insert(&v)?;
                    }
                }
            }
        }
        if !span.is_full() {
            for core in cores_of_multidegree(self.n, deg) {
                if span.is_full() {
                    break;
                }
                let e = core.expand(&self.field, self.m);
                let v = basis.vector_from(&self.field, e.terms().map(|(w, c)| (w, *c)))?;
                span.insert(&v)?;
            }
        }
        Ok(Block {
            degree: deg.clone(),
            basis,
            span,
        })
    }
}

fn predecessors_indexed(deg: &MultiDegree) -> Vec<(usize, MultiDegree)> {
    (0..deg.len())
        .filter(|&i| deg.0[i] > 0)
        .map(|i| {
            let mut d = deg.clone();
            d.0[i] -= 1;
            (i, d)
        })
        .collect()
}

fn predecessors(deg: &MultiDegree) -> Vec<MultiDegree> {
    predecessors_indexed(deg).into_iter().map(|p| p.1).collect()
}

/// Number of words with the given letter counts.
pub fn multinomial(deg: &MultiDegree) -> u128 {
    let mut acc: u128 = 1;
    let mut seen: u128 = 0;
    for &a in &deg.0 {
        for k in 1..=a as u128 {
            seen += 1;
            acc = acc * seen / k;
        }
    }
    acc
}

/// The span of [`spanning_generators`] over the full word basis of one total
/// degree, built directly without blocking or recursion.
pub fn full_degree_span(n: usize, m: usize, p: u64, degree: usize) -> Result<(Basis<Word>, GradedSpan)> {
    let field = PrimeField::new(p)?;
    let basis = Basis::new(words_of_length(m, degree));
    let mut span = GradedSpan::new(field, basis.len());
    for g in spanning_generators(n, m, degree) {
        let e = g.expand(&field, m);
        span.insert(&basis.vector_from(&field, e.terms().map(|(w, c)| (w, *c)))?)?;
    }
    Ok((basis, span))
}

/// Result of a single membership query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemberVerdict {
    pub word: String,
    pub n: usize,
    pub m: usize,
    pub p: u64,
    pub degree: usize,
    pub multidegree: Vec<usize>,
    pub member: bool,
    pub block_dim: usize,
    pub block_rank: usize,
}

pub fn word_member(n: usize, m: usize, p: u64, w: &Word, budget: u128) -> Result<MemberVerdict> {
    if w.max_letter() > m {
        return Err(Error::usage(format!("word {w} uses more than {m} generators")));
    }
    let mut ideal = NilIdeal::new(n, m, p, budget)?;
    let deg = w.multidegree(m);
    let block = ideal.block(&deg)?;
    Ok(MemberVerdict {
        word: w.to_string(),
        n,
        m,
        p,
        degree: w.len(),
        multidegree: deg.0.clone(),
        member: block.contains_word(w),
        block_dim: block.dim(),
        block_rank: block.rank(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    #[serde(rename = "D")]
    pub degree: usize,
    pub words: u128,
    pub members: u128,
}

/// Outcome of the scan for the nilpotency index `d(n, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexReport {
    pub n: usize,
    pub m: usize,
    pub p: u64,
    pub cap: usize,
    pub degrees: Vec<DegreeRow>,
    pub d: Option<usize>,
    pub status: &'static str,
    pub monotonicity: Option<DegreeRow>,
}

fn checked_pow(m: usize, d: usize) -> u128 {
    (m as u128).checked_pow(d as u32).unwrap_or(u128::MAX)
}

fn degree_row(ideal: &mut NilIdeal, degree: usize) -> Result<DegreeRow> {
    let members = ideal
        .level(degree)?
        .iter()
        .map(|b| if b.is_full() { b.dim() as u128 } else { b.member_words().len() as u128 })
        .sum();
    Ok(DegreeRow {
        degree,
        words: checked_pow(ideal.m, degree),
        members,
    })
}

/// Scans degrees `n..=cap` for the first degree in which every word lies in
/// `I_{n,m}`, then checks that the next degree is also complete.
pub fn compute_d(n: usize, m: usize, p: u64, cap: usize, budget: u128) -> Result<IndexReport> {
    if cap < n {
        return Err(Error::usage(format!("cap {cap} is below n = {n}")));
    }
    let mut ideal = NilIdeal::new(n, m, p, budget)?;
    let guard = |d: usize| -> Result<()> {
        let needed = checked_pow(m, d);
        if needed > budget {
            return Err(Error::Budget {
                what: format!("words of degree {d}"),
                needed,
                budget,
            });
        }
        Ok(())
    };
    let mut degrees = Vec::new();
    for degree in n..=cap {
        guard(degree)?;
        let row = degree_row(&mut ideal, degree)?;
        let complete = row.members == row.words;
        degrees.push(row);
        if complete {
            guard(degree + 1)?;
            let next = degree_row(&mut ideal, degree + 1)?;
            if next.members != next.words {
                return Err(Error::Contract(format!(
                    "degree {degree} is complete but degree {} has only {} of {} words",
                    degree + 1,
                    next.members,
                    next.words
                )));
            }
            return Ok(IndexReport {
                n,
                m,
                p,
                cap,
                degrees,
                d: Some(degree),
                status: "resolved",
                monotonicity: Some(next),
            });
        }
    }
    Ok(IndexReport {
        n,
        m,
        p,
        cap,
        degrees,
        d: None,
        status: "exceeds_cap",
        monotonicity: None,
    })
}

/// A basis of the invariants of one multidegree plus the generators first
/// needed there.
#[derive(Debug, Clone)]
struct InvariantBlock {
    basis: Vec<CommPoly<PrimeField>>,
    generators: Vec<(SigmaFactor, CommPoly<PrimeField>)>,
    candidates: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaRow {
    #[serde(rename = "D")]
    pub degree: usize,
    pub candidates: usize,
    pub new_generators: usize,
}

/// Outcome of the generator-degree scan for the invariants of `m`-tuples of
/// `n x n` matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaReport {
    pub n: usize,
    pub m: usize,
    pub p: u64,
    pub cap: usize,
    pub degrees: Vec<BetaRow>,
    pub beta_estimate: usize,
    /// The cap reaches the proven bound `(m+1) n^4`, so the estimate is exact.
    pub exact: bool,
    /// No new generators appeared in the last `n` scanned degrees.
    pub stable: bool,
    pub generators: Vec<String>,
}

/// The degree at which the scan is guaranteed to have found every generator.
pub fn beta_sufficient_cap(n: usize, m: usize) -> usize {
    (m + 1) * n.pow(4)
}

/// Counts, degree by degree, the candidates `σ_l(W)` that are not products of
/// lower-degree invariants.
pub fn compute_beta(n: usize, m: usize, p: u64, cap: usize, budget: u128) -> Result<BetaReport> {
    if n == 0 || m == 0 || cap == 0 {
        return Err(Error::usage("n, m and cap must be positive"));
    }
    if n > 255 || m > 255 {
        return Err(Error::usage("n and m must be at most 255"));
    }
    let field = PrimeField::new(p)?;
    let mut blocks: HashMap<MultiDegree, InvariantBlock> = HashMap::new();
    let mut degrees = Vec::new();
    let mut generators = Vec::new();
    for degree in 1..=cap {
        let level = MultiDegree::compositions(m, degree);
        let built: Vec<Result<InvariantBlock>> = level
            .par_iter()
            .map(|mu| invariant_block(n, m, &field, mu, &blocks, budget))
            .collect();
        let mut row = BetaRow {
            degree,
            candidates: 0,
            new_generators: 0,
        };
        for (mu, b) in level.into_iter().zip(built) {
            let b = b?;
            row.candidates += b.candidates;
            row.new_generators += b.generators.len();
            generators.extend(b.generators.iter().map(|(f, _)| f.to_string()));
            blocks.insert(mu, b);
        }
        degrees.push(row);
    }
    let beta_estimate = degrees
        .iter()
        .filter(|r| r.new_generators > 0)
        .map(|r| r.degree)
        .max()
        .unwrap_or(0);
    Ok(BetaReport {
        n,
        m,
        p,
        cap,
        degrees,
        beta_estimate,
        exact: cap >= beta_sufficient_cap(n, m),
        stable: beta_estimate + n <= cap,
        generators,
    })
}

fn invariant_block(
    n: usize,
    m: usize,
    field: &PrimeField,
    mu: &MultiDegree,
    lower: &HashMap<MultiDegree, InvariantBlock>,
    budget: u128,
) -> Result<InvariantBlock> {
    let dim = count_monomials_of_multidegree(n, mu);
    if dim > budget {
        return Err(Error::Budget {
            what: format!("invariant monomials of multidegree {mu}"),
            needed: dim,
            budget,
        });
    }
    let monos = Basis::new(monomials_of_multidegree(n, mu));
    let mut span = GradedSpan::new(*field, monos.len());
    let mut basis = Vec::new();
    let to_vec = |f: &CommPoly<PrimeField>| monos.vector_from(field, f.terms().map(|(t, c)| (t, *c)));

    let mut lower_degrees: Vec<&MultiDegree> = lower.keys().filter(|nu| nu.componentwise_le(mu) && *nu != mu).collect();
    lower_degrees.sort();
    for nu in lower_degrees {
        let gens = &lower[nu].generators;
        if gens.is_empty() {
            continue;
        }
        let rest = mu.checked_sub(nu).expect("nu <= mu");
        let Some(others) = lower.get(&rest) else {
            continue;
        };
        for (_, g) in gens {
            for b in &others.basis {
                let prod = g.mul_unchecked(b);
                if span.insert(&to_vec(&prod)?)? {
                    basis.push(prod);
                }
            }
        }
    }

    let candidates = sigma_candidates(n, mu);
    let mut cache = WordMatrixCache::new(*field, n, m);
    let mut generators = Vec::new();
    for cand in &candidates {
        if cand.l > n {
            continue;
        }
        let f = sigma(cand.l, &cache.get(&cand.word))?;
        if span.insert(&to_vec(&f)?)? {
            basis.push(f.clone());
            generators.push((cand.clone(), f));
        }
    }
    Ok(InvariantBlock {
        basis,
        generators,
        candidates: candidates.len(),
    })
}

/// All nonempty multisets of factors `σ_l(W)` whose degrees sum to `deg`.
pub fn invariant_products(n: usize, deg: &MultiDegree) -> Vec<Vec<SigmaFactor>> {
    let mut factors: Vec<(SigmaFactor, MultiDegree)> = deg
        .below()
        .into_iter()
        .filter(|d| !d.is_zero())
        .flat_map(|d| sigma_candidates(n, &d).into_iter().map(move |f| (f, d.clone())))
        .collect();
    factors.sort();
    fn rec(
        start: usize,
        left: &MultiDegree,
        factors: &[(SigmaFactor, MultiDegree)],
        cur: &mut Vec<SigmaFactor>,
        out: &mut Vec<Vec<SigmaFactor>>,
    ) {
        if left.is_zero() {
            out.push(cur.clone());
            return;
        }
        for idx in start..factors.len() {
            if let Some(rest) = left.checked_sub(&factors[idx].1) {
                cur.push(factors[idx].0.clone());
                rec(idx, &rest, factors, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if !deg.is_zero() {
        rec(0, deg, &factors, &mut Vec::new(), &mut out);
    }
    out
}

/// Result of [`express_monomial`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ExpressOutcome {
    /// `φ1(w) = Σ terms`, re-verified by full expansion.
    Expressed { terms: Vec<ConcomitantExpr> },
    /// The linear system has no solution in this multidegree.
    NoExpression,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpressReport {
    pub word: String,
    pub n: usize,
    pub m: usize,
    pub p: u64,
    pub ambient_dim: usize,
    pub candidates: usize,
    pub span_rank: usize,
    pub outcome: ExpressOutcome,
}

struct ExpressBlock {
    monos: Vec<CommMonomial>,
    index: HashMap<CommMonomial, usize>,
    candidates: Vec<ConcomitantExpr>,
    span: GradedSpan,
}

/// Solver for `φ1(w) = Σ a_λ · Π σ_l(W) · φ1(Z)` with at least one invariant
/// factor in every term, caching the candidate span per multidegree.
pub struct ExpressSolver {
    n: usize,
    m: usize,
    field: PrimeField,
    budget: u128,
    cache: WordMatrixCache<PrimeField>,
    blocks: HashMap<MultiDegree, ExpressBlock>,
}

impl ExpressSolver {
    pub fn new(n: usize, m: usize, p: u64, budget: u128) -> Result<Self> {
        if n == 0 || m == 0 || n > 255 || m > 254 {
            return Err(Error::usage("n and m out of range"));
        }
        let field = PrimeField::new(p)?;
        Ok(ExpressSolver {
            n,
            m,
            field,
            budget,
            cache: WordMatrixCache::new(field, n, m),
            blocks: HashMap::new(),
        })
    }

    fn matrix_vector(&self, block: &ExpressBlock, mat: &PolyMatrix<PrimeField>) -> Result<SparseVec> {
        let (n, k) = (self.n, block.monos.len());
        let mut pairs = Vec::new();
        for (i, j) in mat.nonzero_entries() {
            for (t, c) in mat.get(i, j).terms() {
                let col = *block
                    .index
                    .get(t)
                    .ok_or_else(|| Error::OutsideBasis(t.to_string()))?;
                pairs.push(((i * n + j) * k + col, *c));
            }
        }
        SparseVec::from_pairs(&self.field, n * n * k, pairs)
    }

    fn ensure_block(&mut self, mu: &MultiDegree) -> Result<()> {
        if self.blocks.contains_key(mu) {
            return Ok(());
        }
        let count = count_monomials_of_multidegree(self.n, mu);
        let dim = count.saturating_mul((self.n * self.n) as u128);
        if dim > self.budget {
            return Err(Error::Budget {
                what: format!("matrix entries of multidegree {mu}"),
                needed: dim,
                budget: self.budget,
            });
        }
        let monos = monomials_of_multidegree(self.n, mu);
        let index = monos.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut candidates = Vec::new();
        for nu in mu.below() {
            if nu.is_zero() {
                continue;
            }
            let rest = mu.checked_sub(&nu).expect("nu <= mu");
            let words = words_with_multidegree(&rest);
            for prod in invariant_products(self.n, &nu) {
                let inv = InvariantExpr::unit(prod)?;
                for z in &words {
                    candidates.push(ConcomitantExpr::new(inv.clone(), z.clone()));
                }
            }
        }
        let mut block = ExpressBlock {
            monos,
            index,
            candidates,
            span: GradedSpan::with_provenance(self.field, dim as usize),
        };
        for c in block.candidates.clone() {
            let mat = c.evaluate_cached(&mut self.cache)?;
            let v = self.matrix_vector(&block, &mat)?;
            block.span.insert(&v)?;
        }
        self.blocks.insert(mu.clone(), block);
        Ok(())
    }

    pub fn solve(&mut self, w: &Word) -> Result<ExpressReport> {
        if w.max_letter() > self.m {
            return Err(Error::usage(format!("word {w} uses more than {} generators", self.m)));
        }
        let mu = w.multidegree(self.m);
        self.ensure_block(&mu)?;
        let target = self.cache.get(w);
        let block = &self.blocks[&mu];
        let v = self.matrix_vector(block, &target)?;
        let outcome = match block.span.express(&v)? {
            None => ExpressOutcome::NoExpression,
            Some(combo) => {
                let terms: Vec<ConcomitantExpr> = combo
                    .into_iter()
                    .map(|(k, c)| {
                        let mut t = block.candidates[k].clone();
                        t.invariant.coeff = BigInt::from(c);
                        t
                    })
                    .collect();
                let mut sum = PolyMatrix::zero(self.field, self.n, self.m);
                for t in &terms {
                    sum = sum.add(&t.evaluate_cached(&mut self.cache)?)?;
                }
                if sum != target {
                    return Err(Error::Contract(format!(
                        "expression for {w} does not expand back to its word matrix"
                    )));
                }
                ExpressOutcome::Expressed { terms }
            }
        };
        let block = &self.blocks[&mu];
        Ok(ExpressReport {
            word: w.to_string(),
            n: self.n,
            m: self.m,
            p: self.field.characteristic(),
            ambient_dim: block.span.dim(),
            candidates: block.candidates.len(),
            span_rank: block.span.rank(),
            outcome,
        })
    }
}

pub fn express_monomial(n: usize, m: usize, p: u64, w: &Word, budget: u128) -> Result<ExpressReport> {
    ExpressSolver::new(n, m, p, budget)?.solve(w)
}

/// Verdict of a single inequality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub n: usize,
    pub m: usize,
    pub p: u64,
    pub d: Option<usize>,
    pub d_cap: usize,
    pub beta_next: BetaSummary,
    pub beta_same: BetaSummary,
    pub checks: Vec<CheckLine>,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaSummary {
    pub m: usize,
    pub cap: usize,
    pub beta_estimate: usize,
    pub exact: bool,
    pub stable: bool,
}

impl From<&BetaReport> for BetaSummary {
    fn from(r: &BetaReport) -> Self {
        BetaSummary {
            m: r.m,
            cap: r.cap,
            beta_estimate: r.beta_estimate,
            exact: r.exact,
            stable: r.stable,
        }
    }
}

/// Caps for [`crosscheck_main_inequality`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub d_cap: usize,
    pub beta_cap_next: usize,
    pub beta_cap_same: usize,
    pub budget: u128,
}

/// Compares the computed index `d(n, m)` with scanned generator degrees and
/// the known bounds relating them.
///
/// A scanned `β` below its proven cap is only a lower bound, so a check that
/// needs an upper bound on `β` is inconclusive rather than failed.
pub fn crosscheck_main_inequality(n: usize, m: usize, p: u64, caps: Caps) -> Result<CrosscheckReport> {
    let index = compute_d(n, m, p, caps.d_cap, caps.budget)?;
    let next = compute_beta(n, m + 1, p, caps.beta_cap_next, caps.budget)?;
    let same = compute_beta(n, m, p, caps.beta_cap_same, caps.budget)?;
    let mut checks = Vec::new();
    let d = index.d;
    let n4 = n.pow(4);

    let status_of = |ok: bool| if ok { CheckStatus::Pass } else { CheckStatus::Fail };

    checks.push(match d {
        Some(d) if d <= next.beta_estimate => CheckLine {
            name: "d(n,m) <= beta(n,m+1)",
            status: CheckStatus::Pass,
            detail: format!("{d} <= {}", next.beta_estimate),
        },
        Some(d) if next.exact => CheckLine {
            name: "d(n,m) <= beta(n,m+1)",
            status: CheckStatus::Fail,
            detail: format!("{d} > {} with an exact beta", next.beta_estimate),
        },
        Some(d) => CheckLine {
            name: "d(n,m) <= beta(n,m+1)",
            status: CheckStatus::Inconclusive,
            detail: format!("{d} > lower bound {}", next.beta_estimate),
        },
        None => CheckLine {
            name: "d(n,m) <= beta(n,m+1)",
            status: CheckStatus::Inconclusive,
            detail: format!("d exceeds cap {}", caps.d_cap),
        },
    });

    let bound = (m + 2) * n4;
    checks.push(match d {
        Some(d) => CheckLine {
            name: "d(n,m) <= (m+2)n^4",
            status: status_of(d <= bound),
            detail: format!("{d} <= {bound}"),
        },
        None if caps.d_cap >= bound => CheckLine {
            name: "d(n,m) <= (m+2)n^4",
            status: CheckStatus::Fail,
            detail: format!("no complete degree up to {}", caps.d_cap),
        },
        None => CheckLine {
            name: "d(n,m) <= (m+2)n^4",
            status: CheckStatus::Inconclusive,
            detail: format!("d exceeds cap {}", caps.d_cap),
        },
    });

    for (report, label) in [(&next, "beta(n,m+1) <= (m+2)n^4"), (&same, "beta(n,m) <= (m+1)n^4")] {
        let bound = beta_sufficient_cap(n, report.m);
        checks.push(CheckLine {
            name: label,
            status: status_of(report.beta_estimate <= bound),
            detail: format!("{} <= {bound}", report.beta_estimate),
        });
    }

    if n >= 2 {
        checks.push(match d {
            Some(d) => {
                let bound = (n / 2) * d;
                CheckLine {
                    name: "beta(n,m) <= floor(n/2) d(n,m)",
                    status: status_of(same.beta_estimate <= bound),
                    detail: format!("{} <= {bound}", same.beta_estimate),
                }
            }
            None => CheckLine {
                name: "beta(n,m) <= floor(n/2) d(n,m)",
                status: CheckStatus::Inconclusive,
                detail: "d unresolved".to_string(),
            },
        });
    }

    if m >= 2 {
        let kuzmin = n * (n + 1) / 2;
        let lower = if (p as usize) <= n { kuzmin.max(m + 1) } else { kuzmin };
        let name = if (p as usize) <= n {
            "d(n,m) >= max(m+1, n(n+1)/2)"
        } else {
            "d(n,m) >= n(n+1)/2"
        };
        checks.push(match d {
            Some(d) => CheckLine {
                name,
                status: status_of(d >= lower),
                detail: format!("{d} >= {lower}"),
            },
            None if caps.d_cap + 1 >= lower => CheckLine {
                name,
                status: CheckStatus::Pass,
                detail: format!("d > {} >= {}", caps.d_cap, lower - 1),
            },
            None => CheckLine {
                name,
                status: CheckStatus::Inconclusive,
                detail: format!("d > {}", caps.d_cap),
            },
        });
    }

    let status = if checks.iter().any(|c| c.status == CheckStatus::Fail) {
        CheckStatus::Fail
    } else if checks.iter().any(|c| c.status == CheckStatus::Inconclusive) {
        CheckStatus::Inconclusive
    } else {
        CheckStatus::Pass
    };
    Ok(CrosscheckReport {
        n,
        m,
        p,
        d,
        d_cap: caps.d_cap,
        beta_next: (&next).into(),
        beta_same: (&same).into(),
        checks,
        status,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapRow {
    pub degree: usize,
    pub linearization_rank: usize,
    pub ideal_rank: usize,
}

/// Compares, in one generator, the span of all `P_n(w_1, ..., w_n)` with the
/// nil ideal itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub n: usize,
    pub p: u64,
    pub degrees: Vec<GapRow>,
    /// The first word found in the ideal but outside the linearization span.
    pub witness: Option<String>,
}

pub fn linearization_gap(n: usize, p: u64, max_degree: usize) -> Result<GapReport> {
    let field = PrimeField::new(p)?;
    let pn = complete_linearization(n, false)?;
    let mut ideal = NilIdeal::new(n, 1, p, DEFAULT_BUDGET)?;
    let mut degrees = Vec::new();
    let mut witness = None;
    for degree in n..=max_degree {
        let block = ideal.block(&MultiDegree(vec![degree]))?;
        let mut lin = GradedSpan::new(field, block.dim());
        for parts in (1..=degree).combinations_with_replacement(n) {
            if parts.iter().sum::<usize>() != degree {
                continue;
            }
            for perm in parts.iter().permutations(n).unique() {
                let args: Vec<Word> = perm.iter().map(|&&k| Word::power_of(1, k)).collect();
                let e = substitute_words(&field, 1, &pn, &args);
                lin.insert(&block.basis().vector_from(&field, e.terms().map(|(w, c)| (w, *c)))?)?;
            }
        }
        if witness.is_none() {
            witness = block
                .member_words()
                .into_iter()
                .find(|w| {
                    let i = block.basis().position(w).expect("basis word");
                    let e = SparseVec::from_pairs(&field, block.dim(), [(i, 1)]).expect("index in range");
                    !lin.member(&e).expect("same dimension")
                })
                .map(|w| w.to_string());
        }
        degrees.push(GapRow {
            degree,
            linearization_rank: lin.rank(),
            ideal_rank: block.rank(),
        });
    }
    Ok(GapReport {
        n,
        p,
        degrees,
        witness,
    })
}

/// Default degree cap for the index scan.
pub fn default_d_cap(m: usize) -> usize {
    match m {
        0..=2 => 12,
        3 => 8,
        _ => 6,
    }
}

/// Default degree cap for the generator scan: the proven bound when it is
/// small, otherwise a desk-scale window.
pub fn default_beta_cap(n: usize, m: usize) -> usize {
    let bound = beta_sufficient_cap(n, m);
    if bound <= 32 {
        bound
    } else {
        6
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn generators_n2_m1_d2() {
        let g = spanning_generators(2, 1, 2);
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].expand(&Integers, 1).to_string(), "x1 x1");
    }

    #[test]
    fn generators_n2_m2_d2() {
        let g: Vec<String> = spanning_generators(2, 2, 2)
            .iter()
            .map(|g| g.expand(&Integers, 2).to_string())
            .collect();
        assert!(g.contains(&"x1 x1".to_string()));
        assert!(g.contains(&"x2 x2".to_string()));
        assert!(g.contains(&"x1 x2 + x2 x1".to_string()));
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn generators_n2_m2_d3() {
        let g: Vec<FreeElement<Integers>> = spanning_generators(2, 2, 3).iter().map(|g| g.expand(&Integers, 2)).collect();
        // x1 · P_(1,1)(x1, x2) and P_(1,1)(x1 x2, x1) expand to the same element.
        let target = FreeElement::from_int_terms(2, &[(w("x1 x1 x2"), 1), (w("x1 x2 x1"), 1)]).unwrap();
        assert_eq!(g.iter().filter(|e| **e == target).count(), 1);
        assert!(spanning_generators(2, 2, 1).is_empty());
    }

    #[test]
    fn shapes_are_unique_as_elements() {
        let g = spanning_generators(3, 2, 5);
        let set: HashSet<_> = g.iter().map(|s| s.expand(&Integers, 2).to_string()).collect();
        assert_eq!(set.len(), g.len());
    }

    #[test]
    fn member_examples() {
        assert!(!word_member(2, 2, 2, &w("x1 x2"), DEFAULT_BUDGET).unwrap().member);
        assert!(word_member(2, 2, 2, &w("x1 x2 x1"), DEFAULT_BUDGET).unwrap().member);
        assert!(!word_member(3, 2, 3, &w("x2 x1 x2 x1 x1"), DEFAULT_BUDGET).unwrap().member);
        assert!(!word_member(2, 1, 2, &w("x1"), DEFAULT_BUDGET).unwrap().member);
        assert!(word_member(2, 1, 2, &w("x1 x1"), DEFAULT_BUDGET).unwrap().member);
        assert!(word_member(2, 1, 2, &w("x3"), DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn blocked_and_direct_ranks_agree() {
        for (n, m, p) in [(2, 2, 2), (2, 2, 3), (3, 2, 3), (2, 3, 2)] {
            let mut ideal = NilIdeal::new(n, m, p, DEFAULT_BUDGET).unwrap();
            for degree in n..=4 {
                let (_, direct) = full_degree_span(n, m, p, degree).unwrap();
                let blocked: usize = ideal.level(degree).unwrap().iter().map(|b| b.rank()).sum();
                assert_eq!(direct.rank(), blocked, "n={n} m={m} p={p} D={degree}");
            }
        }
    }

    #[test]
    fn index_examples() {
        assert_eq!(compute_d(2, 2, 2, 12, DEFAULT_BUDGET).unwrap().d, Some(3));
        assert_eq!(compute_d(2, 1, 2, 12, DEFAULT_BUDGET).unwrap().d, Some(2));
        assert_eq!(compute_d(1, 2, 2, 4, DEFAULT_BUDGET).unwrap().d, Some(1));
        let r = compute_d(3, 2, 3, 5, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.d, None);
        assert_eq!(r.status, "exceeds_cap");
        assert!(r.degrees.iter().all(|row| row.members < row.words));
    }

    #[test]
    fn index_budget_guard() {
        let e = compute_d(2, 2, 2, 12, 4).unwrap_err();
        assert!(matches!(e, Error::Budget { .. }));
    }

    #[test]
    fn beta_examples() {
        let r = compute_beta(2, 1, 5, 6, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.beta_estimate, 2);
        assert_eq!(r.generators, vec!["s_1(x1)", "s_2(x1)"]);
        assert!(!r.exact);
        let r = compute_beta(1, 2, 2, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.beta_estimate, 1);
        assert!(r.exact);
    }

    #[test]
    fn express_examples() {
        let mut s = ExpressSolver::new(2, 1, 2, DEFAULT_BUDGET).unwrap();
        assert!(matches!(s.solve(&w("x1 x1")).unwrap().outcome, ExpressOutcome::Expressed { .. }));
        assert_eq!(s.solve(&w("x1")).unwrap().outcome, ExpressOutcome::NoExpression);
        let mut s = ExpressSolver::new(2, 2, 2, DEFAULT_BUDGET).unwrap();
        assert!(matches!(s.solve(&w("x1 x2 x1")).unwrap().outcome, ExpressOutcome::Expressed { .. }));
        assert_eq!(s.solve(&w("x1 x2")).unwrap().outcome, ExpressOutcome::NoExpression);
    }

    #[test]
    fn multinomial_counts() {
        assert_eq!(multinomial(&MultiDegree(vec![2, 2])), 6);
        assert_eq!(multinomial(&MultiDegree(vec![6, 6])), 924);
        assert_eq!(multinomial(&MultiDegree(vec![1, 1, 1])), 6);
    }

    #[test]
    fn linearization_gap_in_small_characteristic() {
        let r = linearization_gap(2, 2, 3).unwrap();
        assert_eq!(r.degrees[0].linearization_rank, 0);
        assert_eq!(r.degrees[0].ideal_rank, 1);
        assert_eq!(r.witness.as_deref(), Some("x1 x1"));
        let r = linearization_gap(2, 3, 3).unwrap();
        assert_eq!(r.witness, None);
    }
}
