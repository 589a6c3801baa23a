//! The free associative algebra `F<x1, ..., xm>` over a coefficient ring.
//!
//! Words are the monomial basis. Elements are sparse linear combinations of
//! words kept in degree-lexicographic order, which is also the order used for
//! display and serialization.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use itertools::Itertools;
use num_bigint::BigInt;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{Integers, PrimeField, Ring};

/// Largest `n` for which `P_n` is built without an explicit override.
pub const MAX_LINEARIZATION_DEFAULT: usize = 7;

/// A word in the generators; letters are 1-based generator indices.
///
/// The empty word is the identity monomial `1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from 1-based generator indices.
    ///
    /// Panics if an index is zero or above 255.
    pub fn new(letters: &[usize]) -> Self {
        Word(
            letters
                .iter()
                .map(|&l| {
                    assert!((1..=255).contains(&l), "letter index {l} out of range");
                    l as u8
                })
                .collect(),
        )
    }

    pub fn letter(l: usize) -> Self {
        Word::new(&[l])
    }

    /// `x_l^k`.
    pub fn power_of(l: usize, k: usize) -> Self {
        Word::new(&vec![l; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&l| l as usize)
    }

    pub fn max_letter(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: usize) {
        assert!((1..=255).contains(&l), "letter index {l} out of range");
        self.0.push(l as u8);
    }

    pub(crate) fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    /// Letter counts `(α_1, ..., α_m)`.
    ///
    /// Panics if the word uses a letter above `m`.
    pub fn multidegree(&self, m: usize) -> MultiDegree {
        let mut exps = vec![0usize; m];
        for l in self.letters() {
            assert!(l <= m, "letter x{l} outside {m} generators");
            exps[l - 1] += 1;
        }
        MultiDegree(exps)
    }

    /// Cyclic rotation starting at position `k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let k = k % self.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// True when the word is the lexicographically least of its rotations.
    pub fn is_necklace(&self) -> bool {
        (1..self.len()).all(|k| self.0 <= self.rotate(k).0)
    }

    /// Least rotation of the word.
    pub fn necklace(&self) -> Word {
        (0..self.len().max(1))
            .map(|k| self.rotate(k))
            .min_by(|a, b| a.0.cmp(&b.0))
            .unwrap_or_default()
    }

    /// Compact `x`/`y` rendering for words in at most two letters.
    pub fn to_xy(&self) -> Option<String> {
        if self.is_empty() {
            return Some("1".to_string());
        }
        self.letters()
            .map(|l| match l {
                1 => Some('x'),
                2 => Some('y'),
                _ => None,
            })
            .collect()
    }

    pub fn parse(text: &str) -> Result<Word> {
        parse_word(text, None)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let s = self.letters().map(|l| format!("x{l}")).join(" ");
        f.write_str(&s)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses a word.
///
/// Accepted forms: `x1 x2 x1`, compact `yxyxx` (`x` = x1, `y` = x2), exponent
/// sugar `x^3` or `x2^2`, and `1` for the empty word. When `m` is given, every
/// letter must lie in `1..=m`.
pub fn parse_word(text: &str, m: Option<usize>) -> Result<Word> {
    let chars: Vec<char> = text.chars().collect();
    if text.trim() == "1" {
        return Ok(Word::empty());
    }
    let err = |position: usize, message: String| Error::Parse { position, message };
    let read_number = |pos: &mut usize| -> Option<usize> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if *pos == start {
            None
        } else {
            chars[start..*pos].iter().collect::<String>().parse().ok()
        }
    };

    let mut letters = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        let c = chars[pos];
        if c.is_whitespace() || c == '*' {
            pos += 1;
            continue;
        }
        let start = pos;
        let letter = match c {
            'x' => {
                pos += 1;
                match read_number(&mut pos) {
                    Some(0) => return Err(err(start + 1, "generator index must be positive".into())),
                    Some(i) => i,
                    None => 1,
                }
            }
            'y' => {
                pos += 1;
                2
            }
            other => return Err(err(start, format!("unexpected character '{other}'"))),
        };
        if letter > 255 {
            return Err(err(start, format!("generator index {letter} too large")));
        }
        if let Some(m) = m {
            if letter > m {
                return Err(err(start, format!("generator x{letter} outside {m} generators")));
            }
        }
        let mut exp = 1;
        if pos < chars.len() && chars[pos] == '^' {
            pos += 1;
            exp = read_number(&mut pos)
                .ok_or_else(|| err(pos, "expected exponent after '^'".into()))?;
        }
        letters.extend(std::iter::repeat_n(letter, exp));
    }
    if letters.is_empty() && !text.trim().is_empty() {
        return Err(err(0, "no letters".into()));
    }
    Ok(Word::new(&letters))
}

/// A `Z^m`-degree `(α_1, ..., α_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct MultiDegree(pub Vec<usize>);

impl MultiDegree {
    pub fn zero(m: usize) -> Self {
        MultiDegree(vec![0; m])
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// Componentwise `self <= other`.
    pub fn componentwise_le(&self, other: &MultiDegree) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise difference; `None` unless `other <= self`.
    pub fn checked_sub(&self, other: &MultiDegree) -> Option<MultiDegree> {
        if !other.componentwise_le(self) {
            return None;
        }
        Some(MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, k: usize) -> MultiDegree {
        MultiDegree(self.0.iter().map(|a| a * k).collect())
    }

    /// All degrees `ν` with `0 <= ν <= self`, in lexicographic order.
    pub fn below(&self) -> Vec<MultiDegree> {
        let mut out = vec![MultiDegree(Vec::with_capacity(self.0.len()))];
        for &a in &self.0 {
            out = out
                .into_iter()
                .flat_map(|d| {
                    (0..=a).map(move |k| {
                        let mut v = d.0.clone();
                        v.push(k);
                        MultiDegree(v)
                    })
                })
                .collect();
        }
        out
    }

    /// All degrees with `m` components summing to `total`, in reverse
    /// lexicographic order (`(total, 0, ..)` first).
    pub fn compositions(m: usize, total: usize) -> Vec<MultiDegree> {
        fn rec(m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiDegree>) {
            if cur.len() + 1 == m {
                cur.push(left);
                out.push(MultiDegree(cur.clone()));
                cur.pop();
                return;
            }
            for a in (0..=left).rev() {
                cur.push(a);
                rec(m, left - a, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if m == 0 {
            if total == 0 {
                out.push(MultiDegree(vec![]));
            }
            return out;
        }
        rec(m, total, &mut Vec::new(), &mut out);
        out
    }
}

impl Add for &MultiDegree {
    type Output = MultiDegree;
    fn add(self, rhs: &MultiDegree) -> MultiDegree {
        assert_eq!(self.0.len(), rhs.0.len(), "multidegree length mismatch");
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// All words of the given length over `m` letters, in lexicographic order.
pub fn words_of_length(m: usize, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if m == 0 {
        if len == 0 {
            out.push(Word::empty());
        }
        return out;
    }
    let mut cur = vec![1usize; len];
    loop {
        out.push(Word::new(&cur));
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < m {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = 1;
                }
                break;
            }
        }
    }
}

/// All nonempty words of length at most `max_len`, in degree-lex order.
pub fn words_up_to(m: usize, max_len: usize) -> Vec<Word> {
    (1..=max_len).flat_map(|l| words_of_length(m, l)).collect()
}

/// All words whose letter counts equal `deg`, in lexicographic order.
pub fn words_with_multidegree(deg: &MultiDegree) -> Vec<Word> {
    fn rec(left: &mut [usize], cur: &mut Vec<usize>, total: usize, out: &mut Vec<Word>) {
        if cur.len() == total {
            out.push(Word::new(cur));
            return;
        }
        for l in 0..left.len() {
            if left[l] > 0 {
                left[l] -= 1;
                cur.push(l + 1);
                rec(left, cur, total, out);
                cur.pop();
                left[l] += 1;
            }
        }
    }
    let mut out = Vec::new();
    let mut left = deg.0.clone();
    rec(&mut left, &mut Vec::new(), deg.total(), &mut out);
    out
}

/// Distinct orderings of a multiset given by multiplicities: each output is a
/// sequence of part indices in which part `i` occurs `counts[i]` times.
pub fn multiset_arrangements(counts: &[usize]) -> Vec<Vec<usize>> {
    fn rec(left: &mut [usize], cur: &mut Vec<usize>, total: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i);
                rec(left, cur, total, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    let total = counts.iter().sum();
    let mut out = Vec::new();
    rec(&mut counts.to_vec(), &mut Vec::new(), total, &mut out);
    out
}

/// A sparse linear combination of words with no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeElement<R: Ring> {
    ring: R,
    m: usize,
    terms: BTreeMap<Word, R::Elem>,
}

impl<R: Ring> FreeElement<R> {
    pub fn zero(ring: R, m: usize) -> Self {
        FreeElement {
            ring,
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: R, m: usize) -> Self {
        let one = ring.one();
        let mut e = Self::zero(ring, m);
        e.add_term(Word::empty(), one);
        e
    }

    pub fn generator(ring: R, m: usize, i: usize) -> Result<Self> {
        Self::from_word(ring, m, Word::letter(i))
    }

    pub fn from_word(ring: R, m: usize, word: Word) -> Result<Self> {
        let one = ring.one();
        Self::from_terms(ring, m, [(word, one)])
    }

    /// Sums the given terms; repeated words are merged.
    pub fn from_terms(
        ring: R,
        m: usize,
        terms: impl IntoIterator<Item = (Word, R::Elem)>,
    ) -> Result<Self> {
        let mut e = Self::zero(ring, m);
        for (w, c) in terms {
            if w.max_letter() > m {
                return Err(Error::usage(format!("word {w} uses a letter outside {m} generators")));
            }
            e.add_term(w, c);
        }
        Ok(e)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &R::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> R::Elem {
        self.terms.get(w).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.contains_key(&Word::empty())
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Adds `c * w` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, w: Word, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                self.ring.add_assign(o.get_mut(), &c);
                if self.ring.is_zero(o.get()) {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::mismatch(format!(
                "generator counts {} and {} differ",
                self.m, other.m
            )));
        }
        if self.ring != other.ring {
            return Err(Error::mismatch(format!(
                "coefficient rings {} and {} differ",
                self.ring.name(),
                other.ring.name()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        FreeElement {
            ring: self.ring.clone(),
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), self.ring.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.m);
        for (w, d) in &self.terms {
            out.add_term(w.clone(), self.ring.mul(c, d));
        }
        out
    }

    /// Product in the free algebra: bilinear extension of concatenation.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.ring.clone(), self.m);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), self.ring.mul(a, b));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.ring.clone(), self.m);
        for _ in 0..k {
            acc = acc.multiply(self).expect("same ring and generators");
        }
        acc
    }

    /// Multiplies on the left and right by words.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Self {
        FreeElement {
            ring: self.ring.clone(),
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (left.concat(w).concat(right), c.clone()))
                .collect(),
        }
    }

    /// Re-embeds the element with a different generator count.
    pub fn with_generators(&self, m: usize) -> Result<Self> {
        Self::from_terms(self.ring.clone(), m, self.terms.clone())
    }

    pub fn map_ring<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> FreeElement<S> {
        let mut out = FreeElement::zero(target.clone(), self.m);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Image under the coefficient map to `F_p` (through integer lifts).
    pub fn reduce_mod(&self, field: &PrimeField) -> FreeElement<PrimeField> {
        self.map_ring(field, |c| field.from_bigint(&self.ring.lift(c)))
    }

    /// True when every term has the same multidegree.
    pub fn multidegree(&self) -> Option<MultiDegree> {
        let mut it = self.terms.keys().map(|w| w.multidegree(self.m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// `(word, coefficient)` pairs in canonical order.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(w, c)| (w.to_string(), self.ring.render(c)))
            .collect()
    }
}

impl FreeElement<Integers> {
    pub fn from_int_terms(m: usize, terms: &[(Word, i64)]) -> Result<Self> {
        Self::from_terms(Integers, m, terms.iter().map(|(w, c)| (w.clone(), BigInt::from(*c))))
    }
}

impl<R: Ring> fmt::Display for FreeElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let s = self
            .terms
            .iter()
            .map(|(w, c)| {
                if self.ring.is_one(c) {
                    w.to_string()
                } else {
                    format!("{}*{}", self.ring.render(c), w)
                }
            })
            .join(" + ");
        f.write_str(&s)
    }
}

impl<R: Ring> fmt::Debug for FreeElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeElement[{}, m={}]({})", self.ring.name(), self.m, self)
    }
}

impl<R: Ring> Serialize for FreeElement<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs = self.to_pairs();
        let mut seq = s.serialize_seq(Some(pairs.len()))?;
        for p in &pairs {
            seq.serialize_element(p)?;
        }
        seq.end()
    }
}

fn check_linearization_size(n: usize, allow_large: bool) -> Result<()> {
    if n == 0 {
        return Err(Error::usage("linearization degree must be positive"));
    }
    if n > MAX_LINEARIZATION_DEFAULT && !allow_large {
        return Err(Error::usage(format!(
            "P_{n} has {n}! terms; pass the allow-large override to build it"
        )));
    }
    Ok(())
}

/// `P_n(x_1, ..., x_n)`: the sum of all `n!` words `x_{π(1)} ... x_{π(n)}`.
pub fn complete_linearization(n: usize, allow_large: bool) -> Result<FreeElement<Integers>> {
    check_linearization_size(n, allow_large)?;
    let terms = (1..=n)
        .permutations(n)
        .map(|p| (Word::new(&p), BigInt::from(1)));
    FreeElement::from_terms(Integers, n, terms)
}

/// `P_λ(x_1, ..., x_m)`: the multihomogeneous component of `(x_1 + ... + x_m)^n`
/// of degree `λ`, i.e. the sum of all words with letter counts `λ`.
pub fn multihomogeneous_component(n: usize, lambda: &MultiDegree) -> Result<FreeElement<Integers>> {
    if lambda.total() != n {
        return Err(Error::usage(format!(
            "multidegree {lambda} does not sum to {n}"
        )));
    }
    let terms = words_with_multidegree(lambda)
        .into_iter()
        .map(|w| (w, BigInt::from(1)));
    FreeElement::from_terms(Integers, lambda.len(), terms)
}

/// Applies the algebra homomorphism `x_i -> args[i-1]` to `f`.
///
/// `f` may be over the integers; its coefficients are mapped into the ring of
/// the arguments through integer lifts.
pub fn substitute<R: Ring, S: Ring>(f: &FreeElement<S>, args: &[FreeElement<R>]) -> Result<FreeElement<R>> {
    if f.m() != args.len() {
        return Err(Error::usage(format!(
            "substitution needs {} arguments, got {}",
            f.m(),
            args.len()
        )));
    }
    let first = args
        .first()
        .ok_or_else(|| Error::usage("substitution needs at least one argument"))?;
    let (ring, m) = (first.ring().clone(), first.m());
    if args.iter().any(|a| a.m() != m || *a.ring() != ring) {
        return Err(Error::mismatch("substitution arguments live in different algebras"));
    }
    let mut out = FreeElement::zero(ring.clone(), m);
    for (w, c) in f.terms() {
        let mut prod = FreeElement::one(ring.clone(), m);
        for l in w.letters() {
            prod = prod.multiply(&args[l - 1])?;
        }
        let c = ring.from_bigint(&f.ring().lift(c));
        out = out.add(&prod.scale(&c))?;
    }
    Ok(out)
}

/// Substitution of words for the generators of an integer element; the result
/// is accumulated directly into `ring`.
pub fn substitute_words<R: Ring>(ring: &R, m: usize, f: &FreeElement<Integers>, args: &[Word]) -> FreeElement<R> {
    assert_eq!(f.m(), args.len(), "substitution arity");
    let mut out = FreeElement::zero(ring.clone(), m);
    for (w, c) in f.terms() {
        let mut prod = Word::empty();
        for l in w.letters() {
            prod.extend_from(&args[l - 1]);
        }
        out.add_term(prod, ring.from_bigint(c));
    }
    out
}

/// The derivation `δ_a` with `δ_a(x1) = x1^a` and `δ_a(x_i) = 0` for `i > 1`.
pub fn derivation_delta<R: Ring>(a: usize, f: &FreeElement<R>) -> FreeElement<R> {
    let mut out = FreeElement::zero(f.ring().clone(), f.m());
    let xa = Word::power_of(1, a);
    for (w, c) in f.terms() {
        let letters: Vec<usize> = w.letters().collect();
        for (pos, &l) in letters.iter().enumerate() {
            if l != 1 {
                continue;
            }
            let mut nw = Word::new(&letters[..pos]);
            nw.extend_from(&xa);
            nw.extend_from(&Word::new(&letters[pos + 1..]));
            out.add_term(nw, c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: usize, terms: &[(&str, i64)]) -> FreeElement<Integers> {
        FreeElement::from_int_terms(
            m,
            &terms
                .iter()
                .map(|(w, c)| (Word::parse(w).unwrap(), *c))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn multiply_examples() {
        let x1 = z(2, &[("x1", 1)]);
        let x2 = z(2, &[("x2", 1)]);
        assert_eq!(x1.multiply(&x2).unwrap(), z(2, &[("x1 x2", 1)]));
        let s = x1.add(&x2).unwrap();
        assert_eq!(s.multiply(&x1).unwrap(), z(2, &[("x1 x1", 1), ("x2 x1", 1)]));

        let f2 = PrimeField::new(2).unwrap();
        let s2 = s.reduce_mod(&f2);
        let sq = s2.multiply(&s2).unwrap();
        let expected = z(2, &[("x1 x1", 1), ("x1 x2", 1), ("x2 x1", 1), ("x2 x2", 1)]).reduce_mod(&f2);
        assert_eq!(sq, expected);
    }

    #[test]
    fn multiply_rejects_mismatched_algebras() {
        let a = z(2, &[("x1", 1)]);
        let b = z(3, &[("x1", 1)]);
        assert!(matches!(a.multiply(&b), Err(Error::Mismatch(_))));
        let f3 = PrimeField::new(3).unwrap();
        let f5 = PrimeField::new(5).unwrap();
        assert!(a.reduce_mod(&f3).multiply(&a.reduce_mod(&f5)).is_err());
    }

    #[test]
    fn multidegree_examples() {
        assert_eq!(Word::parse("x1 x2 x1").unwrap().multidegree(2), MultiDegree(vec![2, 1]));
        assert_eq!(Word::empty().multidegree(3), MultiDegree(vec![0, 0, 0]));
        assert_eq!(Word::parse("x2 x1 x2 x1^2").unwrap().multidegree(2), MultiDegree(vec![3, 2]));
    }

    #[test]
    fn parser_forms_agree() {
        let a = Word::parse("yxyxx").unwrap();
        let b = Word::parse("x2 x1 x2 x1 x1").unwrap();
        let c = Word::parse("y x y x^2").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(Word::parse("1").unwrap(), Word::empty());
        assert_eq!(Word::parse("x^3").unwrap(), Word::power_of(1, 3));
    }

    #[test]
    fn parser_reports_position() {
        match parse_word("x1 q", None) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_word("x1 x3", Some(2)) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_word("x0", None).is_err());
        assert!(parse_word("x^", None).is_err());
    }

    #[test]
    fn complete_linearization_examples() {
        assert_eq!(complete_linearization(1, false).unwrap(), z(1, &[("x1", 1)]));
        assert_eq!(
            complete_linearization(2, false).unwrap(),
            z(2, &[("x1 x2", 1), ("x2 x1", 1)])
        );
        let p3 = complete_linearization(3, false).unwrap();
        assert_eq!(p3.num_terms(), 6);
        assert!(p3.terms().all(|(_, c)| *c == BigInt::from(1)));
        assert!(complete_linearization(0, false).is_err());
        assert!(complete_linearization(8, false).is_err());
        assert_eq!(complete_linearization(8, true).unwrap().num_terms(), 40320);
    }

    #[test]
    fn multihomogeneous_component_examples() {
        assert_eq!(
            multihomogeneous_component(3, &MultiDegree(vec![2, 1])).unwrap(),
            z(2, &[("x1 x1 x2", 1), ("x1 x2 x1", 1), ("x2 x1 x1", 1)])
        );
        assert_eq!(
            multihomogeneous_component(2, &MultiDegree(vec![0, 2])).unwrap(),
            z(2, &[("x2 x2", 1)])
        );
        assert_eq!(
            multihomogeneous_component(2, &MultiDegree(vec![1, 1])).unwrap(),
            complete_linearization(2, false).unwrap()
        );
        assert!(multihomogeneous_component(3, &MultiDegree(vec![1, 1])).is_err());
    }

    #[test]
    fn substitute_examples() {
        let p2 = complete_linearization(2, false).unwrap();
        let xy = z(2, &[("xy", 1)]);
        let x = z(2, &[("x", 1)]);
        assert_eq!(
            substitute(&p2, &[xy, x.clone()]).unwrap(),
            z(2, &[("xyx", 1), ("xxy", 1)])
        );
        let swap = z(2, &[("x1 x2", 1)]);
        let y = z(2, &[("y", 1)]);
        assert_eq!(substitute(&swap, &[y, x.clone()]).unwrap(), z(2, &[("yx", 1)]));
        assert_eq!(substitute(&p2, &[x.clone(), x.clone()]).unwrap(), z(2, &[("xx", 2)]));
        assert!(substitute(&p2, &[x]).is_err());
    }

    #[test]
    fn derivation_examples() {
        assert_eq!(
            derivation_delta(2, &z(2, &[("xyx", 1)])),
            z(2, &[("xxyx", 1), ("xyxx", 1)])
        );
        assert!(derivation_delta(3, &z(2, &[("y", 1)])).is_zero());
        assert_eq!(derivation_delta(1, &z(2, &[("xyx", 1)])), z(2, &[("xyx", 2)]));
    }

    #[test]
    fn degree_lex_order() {
        let mut ws = vec![Word::parse("yx").unwrap(), Word::parse("y").unwrap(), Word::parse("xx").unwrap()];
        ws.sort();
        assert_eq!(ws, vec![Word::parse("y").unwrap(), Word::parse("xx").unwrap(), Word::parse("yx").unwrap()]);
    }

    #[test]
    fn necklaces() {
        assert!(Word::parse("xxy").unwrap().is_necklace());
        assert!(!Word::parse("xyx").unwrap().is_necklace());
        assert_eq!(Word::parse("yxx").unwrap().necklace(), Word::parse("xxy").unwrap());
    }

    #[test]
    fn word_enumerations() {
        assert_eq!(words_of_length(2, 3).len(), 8);
        assert_eq!(words_of_length(3, 0), vec![Word::empty()]);
        assert_eq!(words_with_multidegree(&MultiDegree(vec![2, 2])).len(), 6);
        assert_eq!(multiset_arrangements(&[2, 1]).len(), 3);
        assert_eq!(MultiDegree::compositions(3, 2).len(), 6);
        assert_eq!(MultiDegree(vec![1, 2]).below().len(), 6);
    }

    #[test]
    fn serialization_is_canonical() {
        let e = z(2, &[("yx", -1), ("x", 3)]);
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, r#"[["x1","3"],["x2 x1","-1"]]"#);
    }
}
