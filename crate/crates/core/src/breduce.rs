//! Rewriting of two-letter words modulo the submodule `B`.
//!
//! A word in `x = x1` and `y = x2` is written as an exponent word
//! `[a_1, ..., a_k] = x^{a_1} y x^{a_2} y ... y x^{a_k}`. The submodule `B` is
//! spanned by exponent words with an entry `>= n` or a repeated entry, and by
//! the sums `[a] + [a]^{(ij)}` for transpositions `(ij)`. The quotient is free
//! on strictly increasing exponent words with entries below `n`, so the normal
//! form of a word is either `0` or `±[sorted entries]`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freealg::{derivation_delta, words_up_to, FreeElement, MultiDegree, Word};
use crate::nilideal::{random_word, sample_generator, spanning_generators, GeneratorShape};
use crate::ring::{signed_parts, Integers, Ring};

const X: usize = 1;
const Y: usize = 2;

/// The exponent tuple `(a_1, ..., a_k)`, `k >= 1`, of a two-letter word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentWord(Vec<usize>);

impl ExponentWord {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::usage("an exponent word has at least one entry"));
        }
        Ok(ExponentWord(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn y_degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn x_degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn to_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.x_degree() + self.y_degree());
        for (i, &a) in self.0.iter().enumerate() {
            if i > 0 {
                letters.push(Y);
            }
            letters.extend(std::iter::repeat_n(X, a));
        }
        Word::new(&letters)
    }

    /// Swaps entries `i` and `j` (0-based).
    pub fn transpose(&self, i: usize, j: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(i, j);
        ExponentWord(v)
    }

    /// `x^{a_1} u_1 x^{a_2} ... u_{k-1} x^{a_k}`: each `y` replaced in turn
    /// by the given words.
    pub fn interleave(&self, us: &[Word]) -> Result<Word> {
        if us.len() != self.y_degree() {
            return Err(Error::Dimension {
                expected: self.y_degree(),
                got: us.len(),
            });
        }
        let mut w = Word::empty();
        for (i, &a) in self.0.iter().enumerate() {
            if i > 0 {
                w.extend_from(&us[i - 1]);
            }
            w.extend_from(&Word::power_of(X, a));
        }
        Ok(w)
    }
}

impl Ord for ExponentWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(","))
    }
}

/// Splits a word in `x1`, `x2` into its exponent word. The empty word is `[0]`.
pub fn decompose(w: &Word) -> Result<ExponentWord> {
    let mut entries = vec![0];
    for l in w.letters() {
        match l {
            X => *entries.last_mut().expect("nonempty") += 1,
            Y => entries.push(0),
            _ => return Err(Error::usage(format!("word {w} uses letters other than x1, x2"))),
        }
    }
    Ok(ExponentWord(entries))
}

/// The image of one exponent word: `None` when it lies in `B`, otherwise the
/// sign of the sorting permutation (`true` for negative) and the sorted word.
pub fn reduce_exponent_word(e: &ExponentWord, n: usize) -> Option<(bool, ExponentWord)> {
    let a = &e.0;
    if a.iter().any(|&v| v >= n) {
        return None;
    }
    let mut inversions = 0usize;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            match a[i].cmp(&a[j]) {
                Ordering::Equal => return None,
                Ordering::Greater => inversions += 1,
                Ordering::Less => {}
            }
        }
    }
    let mut sorted = a.clone();
    sorted.sort_unstable();
    Some((inversions % 2 == 1, ExponentWord(sorted)))
}

/// A combination of strictly increasing exponent words with entries below `n`.
#[derive(Clone, PartialEq, Eq)]
pub struct NormalForm<R: Ring> {
    ring: R,
    n: usize,
    terms: BTreeMap<ExponentWord, R::Elem>,
}

impl<R: Ring> NormalForm<R> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentWord, &R::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentWord) -> R::Elem {
        self.terms.get(e).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// `(label, coefficient)` pairs in basis order.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(e, c)| (e.to_string(), self.ring.render(c)))
            .collect()
    }

    fn add_term(&mut self, e: ExponentWord, c: R::Elem) {
        let slot = self.terms.entry(e.clone()).or_insert_with(|| self.ring.zero());
        self.ring.add_assign(slot, &c);
        if self.ring.is_zero(slot) {
            self.terms.remove(&e);
        }
    }
}

impl<R: Ring> fmt::Display for NormalForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let (sign, mag) = signed_parts(&self.ring.lift(c));
                if mag == "1" {
                    format!("{sign}{e}")
                } else {
                    format!("{sign}{mag}{e}")
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl<R: Ring> fmt::Debug for NormalForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalForm(n={}, {})", self.n, self)
    }
}

/// The image of `f` in `Z/B` (or `F_p ⊗ Z/B`) in the free basis.
pub fn normal_form<R: Ring>(f: &FreeElement<R>, n: usize) -> Result<NormalForm<R>> {
    let ring = f.ring().clone();
    let mut out = NormalForm {
        ring: ring.clone(),
        n,
        terms: BTreeMap::new(),
    };
    for (w, c) in f.terms() {
        if let Some((negative, e)) = reduce_exponent_word(&decompose(w)?, n) {
            let c = if negative { ring.neg(c) } else { c.clone() };
            out.add_term(e, c);
        }
    }
    Ok(out)
}

/// Normal form of a single word with coefficient one.
pub fn word_normal_form(w: &Word, n: usize) -> Result<NormalForm<Integers>> {
    normal_form(&FreeElement::from_word(Integers, 2, w.clone())?, n)
}

const SUM_BUDGET: u128 = 1_000_000;

/// `Σ_{c_1+...+c_k=r} Σ_{π ∈ S_k} [a_1 + c_{π(1)}, ..., a_k + c_{π(k)}]`.
pub fn shifted_sum(a: &[usize], r: usize) -> Result<FreeElement<Integers>> {
    let k = a.len();
    if k == 0 {
        return Err(Error::usage("the exponent tuple must be nonempty"));
    }
    let perms: u128 = (1..=k as u128).product();
    let comps = crate::commpoly::binomial((r + k - 1) as u128, (k - 1) as u128);
    if perms.saturating_mul(comps) > SUM_BUDGET {
        return Err(Error::Budget {
            what: "terms of the shifted sum".to_string(),
            needed: perms.saturating_mul(comps),
            budget: SUM_BUDGET,
        });
    }
    let mut out = FreeElement::zero(Integers, 2);
    let one = BigInt::from(1);
    for c in MultiDegree::compositions(k, r) {
        for pi in (0..k).permutations(k) {
            let e = ExponentWord((0..k).map(|i| a[i] + c.0[pi[i]]).collect());
            out.add_term(e.to_word(), one.clone());
        }
    }
    Ok(out)
}

/// Checks that the shifted sum for a weakly increasing `a` with
/// `a_1 + k + r > n` lies in `B`.
pub fn check_shifted_sum_sorted(n: usize, a: &[usize], r: usize) -> Result<bool> {
    if a.is_empty() || a.windows(2).any(|p| p[0] > p[1]) {
        return Err(Error::Precondition("entries must be weakly increasing".into()));
    }
    if a[0] + a.len() + r <= n {
        return Err(Error::Precondition(format!("a_1 + k + r = {} is not above n = {n}", a[0] + a.len() + r)));
    }
    Ok(normal_form(&shifted_sum(a, r)?, n)?.is_zero())
}

/// Checks that the shifted sum for arbitrary `a` with `r + k > n` lies in `B`.
pub fn check_shifted_sum_long(n: usize, a: &[usize], r: usize) -> Result<bool> {
    if a.is_empty() {
        return Err(Error::Precondition("the exponent tuple must be nonempty".into()));
    }
    if r + a.len() <= n {
        return Err(Error::Precondition(format!("r + k = {} is not above n = {n}", r + a.len())));
    }
    Ok(normal_form(&shifted_sum(a, r)?, n)?.is_zero())
}

/// Checks that the spanning element `w_0 P_λ(w) w_{s+1}` of `I_{n,2}` lies in `B`.
pub fn check_generator_in_b(n: usize, g: &GeneratorShape) -> Result<bool> {
    if g.n() != n {
        return Err(Error::Precondition(format!("λ sums to {}, not {n}", g.n())));
    }
    let words = std::iter::once(&g.prefix)
        .chain(g.parts.iter().map(|p| &p.0))
        .chain(std::iter::once(&g.suffix));
    if words.clone().any(|w| w.max_letter() > 2) {
        return Err(Error::usage("generator uses letters other than x1, x2"));
    }
    Ok(normal_form(&g.expand(&Integers, 2), n)?.is_zero())
}

/// `P_n(args)`: the sum over all `n!` orderings of the concatenated arguments.
pub fn linearization_of(args: &[Word]) -> FreeElement<Integers> {
    let mut out = FreeElement::zero(Integers, 2);
    let one = BigInt::from(1);
    for perm in (0..args.len()).permutations(args.len()) {
        let mut w = Word::empty();
        for i in perm {
            w.extend_from(&args[i]);
        }
        out.add_term(w, one.clone());
    }
    out
}

/// The Kuzmin word `y x y x^2 ... y x^{n-1}` (exponent word `[0, 1, ..., n-1]`).
pub fn kuzmin_word(n: usize) -> Word {
    ExponentWord((0..n).collect()).to_word()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpotChecks {
    pub count: usize,
    pub all_zero: bool,
}

/// Evidence that the Kuzmin word lies outside `I_{n,2}`: its normal form is
/// nonzero while spanning elements of the ideal reduce to zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KuzminCertificate {
    pub n: usize,
    pub word: String,
    pub degree: usize,
    pub normal_form: Vec<(String, String)>,
    pub bound: String,
    #[serde(rename = "propB_spot_checks")]
    pub spot_checks: SpotChecks,
}

/// Number of random spanning elements checked at the word's own degree.
pub const KUZMIN_RANDOM_CHECKS: usize = 64;

pub fn kuzmin_certificate(n: usize, seed: u64) -> Result<KuzminCertificate> {
    if n < 2 {
        return Err(Error::Precondition("the certificate needs n >= 2".into()));
    }
    let word = kuzmin_word(n);
    let degree = n * (n + 1) / 2 - 1;
    let nf = word_normal_form(&word, n)?;
    let expected = ExponentWord((0..n).collect());
    if nf.terms.len() != 1 || nf.coefficient(&expected) != BigInt::from(1) {
        return Err(Error::Contract(format!("Kuzmin word reduces to {nf}, not +{expected}")));
    }

    let exhaustive_top = degree.min(n + 2);
    let mut generators: Vec<GeneratorShape> = (n..=exhaustive_top)
        .flat_map(|d| spanning_generators(n, 2, d))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if degree > exhaustive_top {
        for _ in 0..KUZMIN_RANDOM_CHECKS {
            if let Some(g) = sample_generator(n, 2, degree, &mut rng) {
                generators.push(g);
            }
        }
    }
    let failures: Vec<&GeneratorShape> = generators
        .par_iter()
        .filter(|g| !check_generator_in_b(n, g).unwrap_or(false))
        .collect();
    if let Some(g) = failures.first() {
        return Err(Error::Contract(format!("spanning element {g} does not reduce to zero")));
    }
    Ok(KuzminCertificate {
        n,
        word: word.to_xy().expect("two-letter word"),
        degree,
        normal_form: nf.to_pairs(),
        bound: format!("d >= {}", n * (n + 1) / 2),
        spot_checks: SpotChecks {
            count: generators.len(),
            all_zero: true,
        },
    })
}

/// Outcome of one battery of finite lemma instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatteryReport {
    pub name: &'static str,
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.instances > 0
    }

    fn from_results(name: &'static str, results: Vec<(bool, String)>) -> Self {
        let failures: Vec<&String> = results.iter().filter(|r| !r.0).map(|r| &r.1).collect();
        BatteryReport {
            name,
            instances: results.len(),
            failures: failures.len(),
            first_failure: failures.first().map(|s| s.to_string()),
        }
    }
}

/// Weakly increasing or arbitrary tuples of length `k` over `0..=max_entry`.
fn tuples(k: usize, max_entry: usize, sorted: bool) -> Vec<Vec<usize>> {
    (0..k)
        .map(|_| 0..=max_entry)
        .multi_cartesian_product()
        .filter(|t| !sorted || t.windows(2).all(|p| p[0] <= p[1]))
        .collect()
}

/// Every admissible instance with `n <= max_n`, `k <= max_k`, entries at
/// most `max_entry` and `r <= max_r`.
pub fn battery_shifted_sum_sorted(max_n: usize, max_k: usize, max_entry: usize, max_r: usize) -> BatteryReport {
    let mut cases = Vec::new();
    for n in 1..=max_n {
        for k in 1..=max_k {
            for a in tuples(k, max_entry, true) {
                for r in 0..=max_r {
                    if a[0] + k + r > n {
                        cases.push((n, a.clone(), r));
                    }
                }
            }
        }
    }
    let results = cases
        .par_iter()
        .map(|(n, a, r)| (check_shifted_sum_sorted(*n, a, *r).unwrap_or(false), format!("n={n} a={a:?} r={r}")))
        .collect();
    BatteryReport::from_results("shifted_sum_sorted", results)
}

pub fn battery_shifted_sum_long(max_n: usize, max_k: usize, max_entry: usize, max_r: usize) -> BatteryReport {
    let mut cases = Vec::new();
    for n in 1..=max_n {
        for k in 1..=max_k {
            for a in tuples(k, max_entry, false) {
                for r in 0..=max_r {
                    if r + k > n {
                        cases.push((n, a.clone(), r));
                    }
                }
            }
        }
    }
    let results = cases
        .par_iter()
        .map(|(n, a, r)| (check_shifted_sum_long(*n, a, *r).unwrap_or(false), format!("n={n} a={a:?} r={r}")))
        .collect();
    BatteryReport::from_results("shifted_sum_long", results)
}

/// `x^a P_n(w_1, ..., w_{k-1}, x, ..., x) x^b` for `n <= max_n`,
/// `k <= n + 1`, multisets of words of length at most `max_len` with positive
/// `y`-degree, and `a, b <= max_ab`.
pub fn battery_padded_linearization(max_n: usize, max_len: usize, max_ab: usize) -> BatteryReport {
    let with_y: Vec<Word> = words_up_to(2, max_len)
        .into_iter()
        .filter(|w| w.letters().any(|l| l == Y))
        .collect();
    let mut cases = Vec::new();
    for n in 1..=max_n {
        for k in 1..=n + 1 {
            for ws in with_y.iter().combinations_with_replacement(k - 1) {
                for a in 0..=max_ab {
                    for b in 0..=max_ab {
                        cases.push((n, ws.iter().map(|w| (*w).clone()).collect::<Vec<Word>>(), a, b));
                    }
                }
            }
        }
    }
    let results = cases
        .par_iter()
        .map(|(n, ws, a, b)| {
            let mut args = ws.clone();
            args.extend(std::iter::repeat_n(Word::letter(X), n - ws.len()));
            let f = linearization_of(&args).sandwich(&Word::power_of(X, *a), &Word::power_of(X, *b));
            let ok = normal_form(&f, *n).map(|nf| nf.is_zero()).unwrap_or(false);
            (ok, format!("n={n} w={} a={a} b={b}", ws.iter().join("|")))
        })
        .collect();
    BatteryReport::from_results("padded_linearization", results)
}

/// `w_0 P_n(w_1, ..., w_n) w_{n+1}` for `n <= max_n` and all words of length
/// at most `max_len` (outer words possibly empty).
pub fn battery_sandwiched_linearization(max_n: usize, max_len: usize) -> BatteryReport {
    let inner = words_up_to(2, max_len);
    let mut outer = vec![Word::empty()];
    outer.extend(inner.iter().cloned());
    let mut cases = Vec::new();
    for n in 1..=max_n {
        for ws in inner.iter().combinations_with_replacement(n) {
            for w0 in &outer {
                for w1 in &outer {
                    cases.push((n, ws.iter().map(|w| (*w).clone()).collect::<Vec<Word>>(), w0.clone(), w1.clone()));
                }
            }
        }
    }
    let results = cases
        .par_iter()
        .map(|(n, ws, w0, w1)| {
            let f = linearization_of(ws).sandwich(w0, w1);
            let ok = normal_form(&f, *n).map(|nf| nf.is_zero()).unwrap_or(false);
            (ok, format!("n={n} w0={w0} w={} w{}={w1}", ws.iter().join("|"), n + 1))
        })
        .collect();
    BatteryReport::from_results("sandwiched_linearization", results)
}

/// The kinds of explicit generators of `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BGeneratorKind {
    LargeEntry,
    RepeatedEntry,
    Transposition,
}

/// A random element of the explicit generating set of `B`, as an integer
/// combination of words, with its defining exponent word.
pub fn sample_b_generator<G: Rng + ?Sized>(n: usize, max_k: usize, rng: &mut G) -> (FreeElement<Integers>, ExponentWord, BGeneratorKind) {
    let kind = match rng.gen_range(0..3) {
        0 => BGeneratorKind::LargeEntry,
        1 => BGeneratorKind::RepeatedEntry,
        _ => BGeneratorKind::Transposition,
    };
    let min_k = if kind == BGeneratorKind::LargeEntry { 1 } else { 2 };
    let k = rng.gen_range(min_k..=max_k.max(min_k));
    let mut a: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=n + 1)).collect();
    let one = BigInt::from(1);
    let mut f = FreeElement::zero(Integers, 2);
    match kind {
        BGeneratorKind::LargeEntry => {
            let i = rng.gen_range(0..k);
            a[i] = n + rng.gen_range(0..=2);
            f.add_term(ExponentWord(a.clone()).to_word(), one);
        }
        BGeneratorKind::RepeatedEntry => {
            let i = rng.gen_range(0..k);
            let j = (i + rng.gen_range(1..k)) % k;
            a[j] = a[i];
            f.add_term(ExponentWord(a.clone()).to_word(), one);
        }
        BGeneratorKind::Transposition => {
            let i = rng.gen_range(0..k);
            let j = (i + rng.gen_range(1..k)) % k;
            let e = ExponentWord(a.clone());
            f.add_term(e.to_word(), one.clone());
            f.add_term(e.transpose(i, j).to_word(), one);
        }
    }
    (f, ExponentWord(a), kind)
}

fn random_cases<T: Send>(cases: usize, seed: u64, run: impl Fn(&mut ChaCha8Rng) -> (bool, T) + Sync) -> Vec<(bool, T)> {
    (0..cases)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            run(&mut rng)
        })
        .collect()
}

/// `δ_a(g)` reduces to zero for random generators `g` of `B`, `1 <= a <= 3`.
pub fn battery_delta(cases: usize, seed: u64) -> BatteryReport {
    let results = random_cases(cases, seed, |rng| {
        let n = rng.gen_range(2..=4);
        let (g, e, _) = sample_b_generator(n, 4, rng);
        let a = rng.gen_range(1..=3);
        let ok = normal_form(&derivation_delta(a, &g), n).map(|nf| nf.is_zero()).unwrap_or(false);
        (ok, format!("n={n} g={e} a={a}"))
    });
    BatteryReport::from_results("delta_stability", results)
}

/// `y g`, `u y g`, `g y` and `g y v` reduce to zero for random generators `g`.
pub fn battery_ideal(cases: usize, seed: u64) -> BatteryReport {
    let results = random_cases(cases, seed, |rng| {
        let n = rng.gen_range(2..=4);
        let (g, e, _) = sample_b_generator(n, 4, rng);
        let y = Word::letter(Y);
        let u = random_word(2, rng.gen_range(0..=3), rng);
        let v = random_word(2, rng.gen_range(0..=3), rng);
        let products = [
            g.sandwich(&y, &Word::empty()),
            g.sandwich(&u.concat(&y), &Word::empty()),
            g.sandwich(&Word::empty(), &y),
            g.sandwich(&Word::empty(), &y.concat(&v)),
        ];
        let ok = products
            .iter()
            .all(|f| normal_form(f, n).map(|nf| nf.is_zero()).unwrap_or(false));
        (ok, format!("n={n} g={e} u={u} v={v}"))
    });
    BatteryReport::from_results("ideal_stability", results)
}

/// Replacing the `y`s of a generator of `B` by words that are `y` or begin and
/// end with `y` keeps it in `B`.
pub fn battery_substitution(cases: usize, seed: u64) -> BatteryReport {
    let results = random_cases(cases, seed, |rng| {
        let n = rng.gen_range(2..=4);
        let (g, e, _) = sample_b_generator(n, 4, rng);
        let us: Vec<Word> = (0..e.y_degree())
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Word::letter(Y)
                } else {
                    let mid = random_word(2, rng.gen_range(0..=2), rng);
                    Word::letter(Y).concat(&mid).concat(&Word::letter(Y))
                }
            })
            .collect();
        let mut image = FreeElement::zero(Integers, 2);
        for (w, c) in g.terms() {
            let ew = decompose(w).expect("two-letter word");
            image.add_term(ew.interleave(&us).expect("same y-degree"), c.clone());
        }
        let ok = normal_form(&image, n).map(|nf| nf.is_zero()).unwrap_or(false);
        (ok, format!("n={n} g={e} u={}", us.iter().join("|")))
    });
    BatteryReport::from_results("substitution_stability", results)
}

/// Default sizes of the lemma batteries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatteryConfig {
    pub seed: u64,
    pub cases: usize,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig { seed: 0, cases: 1000 }
    }
}

pub fn run_batteries(cfg: BatteryConfig) -> Vec<BatteryReport> {
    vec![
        battery_shifted_sum_sorted(4, 3, 3, 4),
        battery_shifted_sum_long(4, 3, 3, 4),
        battery_padded_linearization(4, 3, 2),
        battery_sandwiched_linearization(3, 2),
        battery_delta(cfg.cases, cfg.seed),
        battery_ideal(cfg.cases, cfg.seed),
        battery_substitution(cfg.cases, cfg.seed),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn nf(s: &str, n: usize) -> String {
        word_normal_form(&xy(s), n).unwrap().to_string()
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(&xy("xxx")).unwrap().entries(), &[3]);
        assert_eq!(decompose(&xy("yxyxx")).unwrap().entries(), &[0, 1, 2]);
        assert_eq!(decompose(&xy("y")).unwrap().entries(), &[0, 0]);
        assert!(decompose(&xy("x3")).is_err());
    }

    #[test]
    fn round_trip() {
        for w in words_up_to(2, 6) {
            assert_eq!(decompose(&w).unwrap().to_word(), w);
        }
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(nf("xxx", 3), "0");
        assert_eq!(nf("xy", 2), "-[0,1]");
        assert_eq!(nf("xy", 5), "-[0,1]");
        assert_eq!(nf("yxyx", 2), "0");
        assert_eq!(nf("yxyxx", 3), "+[0,1,2]");
    }

    #[test]
    fn shifted_sum_sorted_examples() {
        assert!(check_shifted_sum_sorted(2, &[0], 2).unwrap());
        assert!(check_shifted_sum_sorted(3, &[0, 1], 2).unwrap());
        assert!(check_shifted_sum_sorted(4, &[0, 0, 1], 2).unwrap());
        assert!(matches!(check_shifted_sum_sorted(4, &[0, 1], 1), Err(Error::Precondition(_))));
        assert!(check_shifted_sum_sorted(3, &[1, 0], 3).is_err());
    }

    #[test]
    fn shifted_sum_long_examples() {
        assert!(check_shifted_sum_long(2, &[1, 0], 1).unwrap());
        assert!(check_shifted_sum_long(2, &[0, 0, 0], 0).unwrap());
        assert!(check_shifted_sum_long(3, &[0, 2], 2).unwrap());
        assert!(check_shifted_sum_long(3, &[0, 2], 1).is_err());
    }

    #[test]
    fn shifted_sum_below_threshold_survives() {
        // With a_1 + k + r <= n the sum need not lie in B.
        let f = shifted_sum(&[0, 1], 0).unwrap();
        assert!(!normal_form(&f, 3).unwrap().is_zero());
    }

    #[test]
    fn generator_in_b_examples() {
        let g = GeneratorShape::new(xy("x"), vec![(xy("x"), 1), (xy("y"), 1)], Word::empty()).unwrap();
        assert!(check_generator_in_b(2, &g).unwrap());
        let g = GeneratorShape::new(Word::empty(), vec![(xy("xy"), 2)], Word::empty()).unwrap();
        assert!(check_generator_in_b(2, &g).unwrap());
        let g = GeneratorShape::new(Word::empty(), vec![(xy("y"), 1), (xy("x"), 2)], xy("y")).unwrap();
        assert!(check_generator_in_b(3, &g).unwrap());
        assert!(check_generator_in_b(2, &g).is_err());
    }

    #[test]
    fn kuzmin_examples() {
        let c = kuzmin_certificate(2, 0).unwrap();
        assert_eq!(c.word, "yx");
        assert_eq!(c.normal_form, vec![("[0,1]".to_string(), "1".to_string())]);
        assert_eq!(c.bound, "d >= 3");
        let c = kuzmin_certificate(3, 0).unwrap();
        assert_eq!(c.word, "yxyxx");
        assert_eq!(c.bound, "d >= 6");
        let c = kuzmin_certificate(5, 0).unwrap();
        assert_eq!(c.degree, 14);
        assert_eq!(c.bound, "d >= 15");
        assert!(c.spot_checks.all_zero && c.spot_checks.count > 0);
        assert!(kuzmin_certificate(1, 0).is_err());
    }

    #[test]
    fn sign_coherence_for_a_transposition() {
        let e = ExponentWord::new(vec![2, 0, 1]).unwrap();
        let a = normal_form(&FreeElement::from_word(Integers, 2, e.to_word()).unwrap(), 3).unwrap();
        let b = normal_form(&FreeElement::from_word(Integers, 2, e.transpose(0, 2).to_word()).unwrap(), 3).unwrap();
        assert_eq!(a.to_string(), "+[0,1,2]");
        assert_eq!(b.to_string(), "-[0,1,2]");
    }

    #[test]
    fn small_batteries_pass() {
        assert!(battery_shifted_sum_sorted(3, 2, 2, 3).passed());
        assert!(battery_shifted_sum_long(3, 2, 2, 3).passed());
        assert!(battery_padded_linearization(2, 2, 1).passed());
        assert!(battery_sandwiched_linearization(2, 1).passed());
        assert!(battery_delta(50, 1).passed());
        assert!(battery_ideal(50, 1).passed());
        assert!(battery_substitution(50, 1).passed());
    }
}
