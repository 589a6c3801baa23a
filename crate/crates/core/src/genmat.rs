//! Generic matrices and the invariant-theoretic maps built on them.
//!
//! `phi1` sends a free-algebra element to a matrix over the polynomial ring of
//! matrix entries, `sigma` extracts characteristic coefficients as sums of
//! principal minors, and `phi2` evaluates formal products of `s_l(word)`
//! symbols. Everything is exact; no step divides by an integer, so the same
//! code is valid in every characteristic.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::commpoly::{CommMonomial, CommPoly, VarId};
use crate::error::{Error, Result};
use crate::freealg::{words_with_multidegree, FreeElement, MultiDegree, Word};
use crate::ring::{signed_parts, Integers, PrimeField, Ring};

/// An `n x n` matrix of polynomials over a fixed ambient `(n, m)`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix<R: Ring> {
    ring: R,
    n: usize,
    m: usize,
    entries: Vec<CommPoly<R>>,
}

impl<R: Ring> PolyMatrix<R> {
    pub fn zero(ring: R, n: usize, m: usize) -> Self {
        let z = CommPoly::zero(ring.clone(), n, m);
        PolyMatrix {
            ring,
            n,
            m,
            entries: vec![z; n * n],
        }
    }

    pub fn identity(ring: R, n: usize, m: usize) -> Self {
        let mut out = Self::zero(ring.clone(), n, m);
        for i in 0..n {
            out.entries[i * n + i] = CommPoly::one(ring.clone(), n, m);
        }
        out
    }

    /// The generic matrix `X_r = (x[i,j](r))`.
    pub fn generic(ring: R, n: usize, m: usize, r: usize) -> Self {
        let mut out = Self::zero(ring.clone(), n, m);
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = CommPoly::var(ring.clone(), n, m, VarId::new(i + 1, j + 1, r));
            }
        }
        out
    }

    /// Builds a matrix from row-major entries sharing one ambient.
    pub fn from_entries(ring: R, n: usize, m: usize, entries: Vec<CommPoly<R>>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                got: entries.len(),
            });
        }
        if entries.iter().any(|e| e.ambient() != (n, m) || *e.ring() != ring) {
            return Err(Error::mismatch("matrix entries live in different polynomial rings"));
        }
        Ok(PolyMatrix { ring, n, m, entries })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> usize {
        self.m
    }

    /// Entry `(i, j)`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> &CommPoly<R> {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[CommPoly<R>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CommPoly::is_zero)
    }

    /// 0-based positions of nonzero entries.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.get(i, j).is_zero())
            .collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if (self.n, self.m) != (other.n, other.m) || self.ring != other.ring {
            return Err(Error::mismatch("matrices live over different rings"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            a.add_assign_unchecked(b);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&self.ring.neg(&self.ring.one())))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        PolyMatrix {
            ring: self.ring.clone(),
            n: self.n,
            m: self.m,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    /// Multiplies every entry by the polynomial `f`.
    pub fn scale_poly(&self, f: &CommPoly<R>) -> Result<Self> {
        if f.ambient() != (self.n, self.m) || *f.ring() != self.ring {
            return Err(Error::mismatch("scalar polynomial lives in a different ring"));
        }
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            n: self.n,
            m: self.m,
            entries: self.entries.iter().map(|e| e.mul_unchecked(f)).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(self.ring.clone(), n, self.m);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul_unchecked(b);
                    out.entries[i * n + j].add_assign_unchecked(&prod);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.ring.clone(), self.n, self.m);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    pub fn trace(&self) -> CommPoly<R> {
        let mut acc = CommPoly::zero(self.ring.clone(), self.n, self.m);
        for i in 0..self.n {
            acc.add_assign_unchecked(self.get(i, i));
        }
        acc
    }

    /// Determinant of the principal submatrix on `rows`, by cofactor expansion
    /// along the first row.
    fn principal_minor(&self, rows: &[usize]) -> CommPoly<R> {
        self.minor(rows, rows)
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> CommPoly<R> {
        match rows.len() {
            0 => CommPoly::one(self.ring.clone(), self.n, self.m),
            1 => self.get(rows[0], cols[0]).clone(),
            2 => {
                let ad = self.get(rows[0], cols[0]).mul_unchecked(self.get(rows[1], cols[1]));
                let bc = self.get(rows[0], cols[1]).mul_unchecked(self.get(rows[1], cols[0]));
                ad.sub(&bc).expect("same ambient")
            }
            _ => {
                let mut acc = CommPoly::zero(self.ring.clone(), self.n, self.m);
                let sub_rows = &rows[1..];
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = a.mul_unchecked(&self.minor(sub_rows, &sub_cols));
                    if k % 2 == 0 {
                        acc.add_assign_unchecked(&term);
                    } else {
                        acc.add_assign_unchecked(&term.neg());
                    }
                }
                acc
            }
        }
    }

    pub fn determinant(&self) -> CommPoly<R> {
        let all: Vec<usize> = (0..self.n).collect();
        self.principal_minor(&all)
    }

    pub fn map_ring<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem + Copy) -> PolyMatrix<S> {
        PolyMatrix {
            ring: target.clone(),
            n: self.n,
            m: self.m,
            entries: self.entries.iter().map(|e| e.map_ring(target, f)).collect(),
        }
    }

    /// Entrywise rendering, one `(i,j): poly` line per nonzero entry.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.nonzero_entries()
            .into_iter()
            .map(|(i, j)| format!("({},{}): {}", i + 1, j + 1, self.get(i, j)))
            .join("\n")
    }
}

impl<R: Ring> fmt::Debug for PolyMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix[{}x{}]\n{}", self.n, self.n, self.render())
    }
}

/// `φ1(w)`: the product of the generic matrices named by the letters of `w`.
pub fn word_matrix<R: Ring>(ring: &R, n: usize, m: usize, w: &Word) -> PolyMatrix<R> {
    let mut acc = PolyMatrix::identity(ring.clone(), n, m);
    for l in w.letters() {
        acc = acc.mul_unchecked(&PolyMatrix::generic(ring.clone(), n, m, l));
    }
    acc
}

/// `φ1(f)`: the algebra homomorphism `x_r -> X_r` applied to `f`.
pub fn phi1<R: Ring>(f: &FreeElement<R>, n: usize) -> PolyMatrix<R> {
    let ring = f.ring().clone();
    let m = f.m();
    let mut cache = WordMatrixCache::new(ring.clone(), n, m);
    let mut acc = PolyMatrix::zero(ring, n, m);
    for (w, c) in f.terms() {
        let wm = cache.get(w).scale(c);
        acc = acc.add(&wm).expect("same ambient");
    }
    acc
}

/// Memoized word matrices; each word is built from its longest proper prefix.
pub struct WordMatrixCache<R: Ring> {
    ring: R,
    n: usize,
    m: usize,
    cache: HashMap<Word, PolyMatrix<R>>,
}

impl<R: Ring> WordMatrixCache<R> {
    pub fn new(ring: R, n: usize, m: usize) -> Self {
        WordMatrixCache {
            ring,
            n,
            m,
            cache: HashMap::new(),
        }
    }

    pub fn get(&mut self, w: &Word) -> PolyMatrix<R> {
        if let Some(mat) = self.cache.get(w) {
            return mat.clone();
        }
        let letters: Vec<usize> = w.letters().collect();
        let mat = match letters.split_last() {
            None => PolyMatrix::identity(self.ring.clone(), self.n, self.m),
            Some((&last, prefix)) => {
                let head = self.get(&Word::new(prefix));
                head.mul_unchecked(&PolyMatrix::generic(self.ring.clone(), self.n, self.m, last))
            }
        };
        self.cache.insert(w.clone(), mat.clone());
        mat
    }
}

/// `σ_l(B)`: the sum of the principal `l x l` minors of `B`.
///
/// `σ_0 = 1`, `σ_1` is the trace and `σ_n` the determinant.
pub fn sigma<R: Ring>(l: usize, b: &PolyMatrix<R>) -> Result<CommPoly<R>> {
    let n = b.size();
    if l > n {
        return Err(Error::usage(format!("sigma index {l} outside [0, {n}]")));
    }
    let mut acc = CommPoly::zero(b.ring().clone(), n, b.generators());
    for rows in (0..n).combinations(l) {
        acc.add_assign_unchecked(&b.principal_minor(&rows));
    }
    Ok(acc)
}

/// One factor `s_l(W)` of an invariant product.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SigmaFactor {
    pub l: usize,
    pub word: Word,
}

impl SigmaFactor {
    pub fn new(l: usize, word: Word) -> Self {
        SigmaFactor { l, word }
    }

    pub fn multidegree(&self, m: usize) -> MultiDegree {
        self.word.multidegree(m).scale(self.l)
    }
}

impl fmt::Display for SigmaFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s_{}({})", self.l, self.word)
    }
}

fn render_factors(factors: &[SigmaFactor]) -> String {
    factors.iter().map(SigmaFactor::to_string).join(" ")
}

fn render_coefficient(coeff: &BigInt, body: &str) -> String {
    let (sign, mag) = signed_parts(coeff);
    let sign = if sign == '-' { "-" } else { "" };
    if mag == "1" {
        format!("{sign}{body}")
    } else {
        format!("{sign}{mag}*{body}")
    }
}

/// A formal scalar multiple of a product `Π σ_{l_t}(W_t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantExpr {
    pub coeff: BigInt,
    factors: Vec<SigmaFactor>,
}

impl InvariantExpr {
    /// Factors are kept in sorted order; every `l` must be positive and
    /// every word nonempty.
    pub fn new(coeff: BigInt, mut factors: Vec<SigmaFactor>) -> Result<Self> {
        if let Some(f) = factors.iter().find(|f| f.l == 0 || f.word.is_empty()) {
            return Err(Error::usage(format!("invalid invariant factor {f}")));
        }
        factors.sort();
        Ok(InvariantExpr { coeff, factors })
    }

    pub fn unit(factors: Vec<SigmaFactor>) -> Result<Self> {
        Self::new(BigInt::one(), factors)
    }

    pub fn factors(&self) -> &[SigmaFactor] {
        &self.factors
    }

    /// `Σ_t l_t · deg(W_t)`.
    pub fn multidegree(&self, m: usize) -> MultiDegree {
        self.factors
            .iter()
            .fold(MultiDegree::zero(m), |acc, f| &acc + &f.multidegree(m))
    }
}

impl fmt::Display for InvariantExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = if self.factors.is_empty() {
            "1".to_string()
        } else {
            render_factors(&self.factors)
        };
        f.write_str(&render_coefficient(&self.coeff, &body))
    }
}

/// `φ2`: evaluates a formal invariant product over `ring` with `n x n`
/// generic matrices in `m` generators.
pub fn phi2<R: Ring>(ring: &R, e: &InvariantExpr, n: usize, m: usize) -> Result<CommPoly<R>> {
    let mut cache = WordMatrixCache::new(ring.clone(), n, m);
    phi2_cached(e.factors(), &ring.from_bigint(&e.coeff), n, &mut cache)
}

fn phi2_cached<R: Ring>(
    factors: &[SigmaFactor],
    coeff: &R::Elem,
    n: usize,
    cache: &mut WordMatrixCache<R>,
) -> Result<CommPoly<R>> {
    let (ring, m) = (cache.ring.clone(), cache.m);
    let mut acc = CommPoly::constant(ring, n, m, coeff.clone());
    for f in factors {
        if f.l == 0 || f.l > n {
            return Err(Error::usage(format!("factor {f} needs 1 <= l <= {n}")));
        }
        if f.word.max_letter() > m {
            return Err(Error::usage(format!("factor {f} uses a letter outside {m} generators")));
        }
        let s = sigma(f.l, &cache.get(&f.word))?;
        acc = acc.mul_unchecked(&s);
    }
    Ok(acc)
}

/// `coeff · Π σ_{l_t}(W_t) · Z`: an element of the concomitant algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConcomitantExpr {
    pub invariant: InvariantExpr,
    pub word: Word,
}

impl ConcomitantExpr {
    pub fn new(invariant: InvariantExpr, word: Word) -> Self {
        ConcomitantExpr { invariant, word }
    }

    pub fn multidegree(&self, m: usize) -> MultiDegree {
        &self.invariant.multidegree(m) + &self.word.multidegree(m)
    }

    pub fn evaluate<R: Ring>(&self, ring: &R, n: usize, m: usize) -> Result<PolyMatrix<R>> {
        let mut cache = WordMatrixCache::new(ring.clone(), n, m);
        self.evaluate_cached(&mut cache)
    }

    pub(crate) fn evaluate_cached<R: Ring>(&self, cache: &mut WordMatrixCache<R>) -> Result<PolyMatrix<R>> {
        let ring = cache.ring.clone();
        let inv = phi2_cached(
            self.invariant.factors(),
            &ring.from_bigint(&self.invariant.coeff),
            cache.n,
            cache,
        )?;
        cache.get(&self.word).scale_poly(&inv)
    }
}

impl fmt::Display for ConcomitantExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.invariant.factors().is_empty() {
            parts.push(render_factors(self.invariant.factors()));
        }
        parts.push(format!("[{}]", self.word));
        f.write_str(&render_coefficient(&self.invariant.coeff, &parts.join(" * ")))
    }
}

impl Serialize for ConcomitantExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `Σ_{l=0}^n (-1)^l σ_l(φ1(a)) φ1(a)^{n-l}`.
///
/// By Cayley-Hamilton the result is the zero matrix; callers treat any
/// nonzero entry as a failure certificate.
pub fn chi_n_evaluate<R: Ring>(a: &FreeElement<R>, n: usize) -> Result<PolyMatrix<R>> {
    if a.has_constant_term() {
        return Err(Error::usage("chi_n needs an element without constant term"));
    }
    if n == 0 {
        return Err(Error::usage("matrix size must be positive"));
    }
    let mat = phi1(a, n);
    let ring = a.ring().clone();
    let mut powers = vec![PolyMatrix::identity(ring.clone(), n, a.m())];
    for k in 1..=n {
        let next = powers[k - 1].mul_unchecked(&mat);
        powers.push(next);
    }
    let mut acc = PolyMatrix::zero(ring.clone(), n, a.m());
    for l in 0..=n {
        let s = sigma(l, &mat)?;
        let s = if l % 2 == 1 { s.neg() } else { s };
        acc = acc.add(&powers[n - l].scale_poly(&s)?)?;
    }
    Ok(acc)
}

/// Recovers `M` from the linear form `T = Tr(X_{m+1} M)`.
///
/// `T` lives in the ambient with `m + 1` matrices and must have degree
/// exactly one in the entries of the last matrix; the `(j, i)` entry of `M` is
/// the coefficient of `x[i,j](m+1)`.
pub fn trace_pairing_extract<R: Ring>(t: &CommPoly<R>) -> Result<PolyMatrix<R>> {
    let (n, m1) = t.ambient();
    if m1 < 1 {
        return Err(Error::usage("trace pairing needs at least one matrix"));
    }
    let m = m1 - 1;
    let ring = t.ring().clone();
    let mut entries: Vec<CommPoly<R>> = vec![CommPoly::zero(ring.clone(), n, m); n * n];
    for (mono, c) in t.terms() {
        let last: Vec<(VarId, u32)> = mono
            .exponents()
            .iter()
            .copied()
            .filter(|(v, _)| v.r as usize == m1)
            .collect();
        let v = match last.as_slice() {
            [(v, 1)] => *v,
            _ => {
                return Err(Error::usage(format!(
                    "term {mono} is not of degree one in matrix {m1}"
                )))
            }
        };
        let rest: CommMonomial = mono.divide_var(v).expect("v divides the monomial");
        let (i, j) = (v.i as usize - 1, v.j as usize - 1);
        entries[j * n + i].add_term(rest, c.clone());
    }
    PolyMatrix::from_entries(ring, n, m, entries)
}

/// Necklace representatives (least rotations) among the words of the given
/// multidegree.
pub fn necklaces_with_multidegree(deg: &MultiDegree) -> Vec<Word> {
    words_with_multidegree(deg)
        .into_iter()
        .filter(Word::is_necklace)
        .collect()
}

/// Candidate generators `σ_l(W)` of matrix-wise degree exactly `deg`, with
/// `W` a necklace representative; shorter words (larger `l`) come first.
pub fn sigma_candidates(n: usize, deg: &MultiDegree) -> Vec<SigmaFactor> {
    let mut out = Vec::new();
    if deg.is_zero() {
        return out;
    }
    for l in (1..=n).rev() {
        if deg.0.iter().any(|&a| a % l != 0) {
            continue;
        }
        let inner = MultiDegree(deg.0.iter().map(|a| a / l).collect());
        out.extend(
            necklaces_with_multidegree(&inner)
                .into_iter()
                .map(|w| SigmaFactor::new(l, w)),
        );
    }
    out
}

/// The simultaneous conjugation action `x[i,j](r) -> (g^{-1} X_r g)[i,j]`.
///
/// `g` and `g_inv` are integer matrices that must be mutually inverse.
pub fn conjugate<R: Ring>(f: &CommPoly<R>, g: &[Vec<i64>], g_inv: &[Vec<i64>]) -> CommPoly<R> {
    let (n, m) = f.ambient();
    let ring = f.ring().clone();
    f.substitute_vars(n, m, |v| {
        let (i, j, r) = (v.i as usize - 1, v.j as usize - 1, v.r as usize);
        let mut acc = CommPoly::zero(ring.clone(), n, m);
        for (a, &left) in g_inv[i].iter().enumerate() {
            for (b, row) in g.iter().enumerate() {
                let c = left * row[j];
                if c != 0 {
                    let var = CommPoly::var(ring.clone(), n, m, VarId::new(a + 1, b + 1, r));
                    acc.add_assign_unchecked(&var.scale(&ring.from_i64(c)));
                }
            }
        }
        acc
    })
}

/// A random element of the free algebra without constant term: up to
/// `max_terms` words of length `1..=max_degree` with coefficients in
/// `-3..=3`.
pub fn random_element<G: Rng + ?Sized>(m: usize, max_degree: usize, max_terms: usize, rng: &mut G) -> FreeElement<Integers> {
    let mut out = FreeElement::zero(Integers, m);
    while out.is_zero() {
        for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
            let len = rng.gen_range(1..=max_degree.max(1));
            let letters: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=m)).collect();
            let c = *[-3i64, -2, -1, 1, 2, 3].choose(rng).expect("nonempty");
            out.add_term(Word::new(&letters), BigInt::from(c));
        }
    }
    out
}

/// Outcome of evaluating `χ_n` on seeded random elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiReport {
    pub n: usize,
    pub m: usize,
    pub degree: usize,
    pub samples: usize,
    pub seed: u64,
    pub p: u64,
    pub cases: usize,
    pub nonzero: usize,
    pub first_nonzero: Option<String>,
    pub all_zero: bool,
}

/// Evaluates `χ_n(a)` for `samples` random elements of degree at most
/// `degree`, once over the integers and once over `F_p`.
pub fn chi_battery(n: usize, m: usize, degree: usize, samples: usize, seed: u64, p: u64) -> Result<ChiReport> {
    let field = PrimeField::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elements: Vec<FreeElement<Integers>> = (0..samples).map(|_| random_element(m, degree, 4, &mut rng)).collect();
    let verdicts: Vec<Result<(bool, bool)>> = elements
        .par_iter()
        .map(|a| {
            let over_z = chi_n_evaluate(a, n)?.is_zero();
            let over_p = chi_n_evaluate(&a.reduce_mod(&field), n)?.is_zero();
            Ok((over_z, over_p))
        })
        .collect();
    let mut nonzero = 0;
    let mut first_nonzero = None;
    for (a, v) in elements.iter().zip(verdicts) {
        let (z, fp) = v?;
        for (ok, tag) in [(z, "Z"), (fp, "F_p")] {
            if !ok {
                nonzero += 1;
                first_nonzero.get_or_insert_with(|| format!("{a} over {tag}"));
            }
        }
    }
    Ok(ChiReport {
        n,
        m,
        degree,
        samples,
        seed,
        p,
        cases: 2 * samples,
        nonzero,
        first_nonzero,
        all_zero: nonzero == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, PrimeField};

    fn xv(i: usize, j: usize, r: usize) -> CommPoly<Integers> {
        CommPoly::var(Integers, 2, 2, VarId::new(i, j, r))
    }

    fn elem(m: usize, terms: &[(&str, i64)]) -> FreeElement<Integers> {
        FreeElement::from_int_terms(
            m,
            &terms.iter().map(|(w, c)| (Word::parse(w).unwrap(), *c)).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn phi1_of_generator_and_one() {
        let x1 = elem(2, &[("x1", 1)]);
        assert_eq!(phi1(&x1, 2), PolyMatrix::generic(Integers, 2, 2, 1));
        let one = FreeElement::one(Integers, 2);
        assert_eq!(phi1(&one, 2), PolyMatrix::identity(Integers, 2, 2));
    }

    #[test]
    fn trace_of_commutator_vanishes() {
        let c = elem(2, &[("x1 x2", 1), ("x2 x1", -1)]);
        assert!(phi1(&c, 2).trace().is_zero());
    }

    #[test]
    fn sigma_examples() {
        let x1 = PolyMatrix::generic(Integers, 2, 2, 1);
        assert_eq!(sigma(1, &x1).unwrap(), xv(1, 1, 1).add(&xv(2, 2, 1)).unwrap());
        let det = xv(1, 1, 1)
            .mul(&xv(2, 2, 1))
            .unwrap()
            .sub(&xv(1, 2, 1).mul(&xv(2, 1, 1)).unwrap())
            .unwrap();
        assert_eq!(sigma(2, &x1).unwrap(), det);
        assert!(sigma(3, &x1).is_err());
        assert_eq!(sigma(0, &x1).unwrap(), CommPoly::one(Integers, 2, 2));
    }

    #[test]
    fn sigma_is_cyclic_for_two_factor_words() {
        let ab = word_matrix(&Integers, 2, 2, &Word::parse("x1 x2").unwrap());
        let ba = word_matrix(&Integers, 2, 2, &Word::parse("x2 x1").unwrap());
        assert!(sigma(2, &ab).unwrap().sub(&sigma(2, &ba).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn phi2_examples() {
        let tr = phi2(&Integers, &InvariantExpr::unit(vec![SigmaFactor::new(1, Word::letter(1))]).unwrap(), 2, 2).unwrap();
        assert_eq!(tr, xv(1, 1, 1).add(&xv(2, 2, 1)).unwrap());

        let e = InvariantExpr::unit(vec![SigmaFactor::new(1, Word::letter(1)), SigmaFactor::new(1, Word::letter(2))]).unwrap();
        assert_eq!(e.multidegree(2), MultiDegree(vec![1, 1]));
        assert_eq!(phi2(&Integers, &e, 2, 2).unwrap().multidegree(), Some(MultiDegree(vec![1, 1])));

        let d12 = phi2(&Integers, &InvariantExpr::unit(vec![SigmaFactor::new(2, Word::parse("x1 x2").unwrap())]).unwrap(), 2, 2).unwrap();
        let d1 = sigma(2, &PolyMatrix::generic(Integers, 2, 2, 1)).unwrap();
        let d2 = sigma(2, &PolyMatrix::generic(Integers, 2, 2, 2)).unwrap();
        assert_eq!(d12, d1.mul(&d2).unwrap());
    }

    #[test]
    fn phi2_rejects_bad_factors() {
        assert!(InvariantExpr::unit(vec![SigmaFactor::new(0, Word::letter(1))]).is_err());
        assert!(InvariantExpr::unit(vec![SigmaFactor::new(1, Word::empty())]).is_err());
        let e = InvariantExpr::unit(vec![SigmaFactor::new(3, Word::letter(1))]).unwrap();
        assert!(phi2(&Integers, &e, 2, 1).is_err());
    }

    #[test]
    fn chi_examples() {
        assert!(chi_n_evaluate(&elem(1, &[("x1", 1)]), 2).unwrap().is_zero());
        assert!(chi_n_evaluate(&elem(2, &[("x1", 1), ("x2", 1)]), 2).unwrap().is_zero());
        assert!(chi_n_evaluate(&elem(2, &[("x1 x2 x1", 1)]), 3).unwrap().is_zero());
        let f5 = PrimeField::new(5).unwrap();
        let a = elem(2, &[("x1 x2", 3), ("x2", -1)]).reduce_mod(&f5);
        assert!(chi_n_evaluate(&a, 3).unwrap().is_zero());
    }

    #[test]
    fn chi_rejects_constant_term() {
        let a = elem(1, &[("1", 1), ("x1", 1)]);
        assert!(chi_n_evaluate(&a, 2).is_err());
    }

    #[test]
    fn trace_pairing_examples() {
        // Tr(X2 X1) with m+1 = 2 gives M = X1.
        let t = word_matrix(&Integers, 2, 2, &Word::parse("x2 x1").unwrap()).trace();
        let m = trace_pairing_extract(&t).unwrap();
        assert_eq!(m, PolyMatrix::generic(Integers, 2, 1, 1));

        let zero = CommPoly::zero(Integers, 2, 2);
        assert!(trace_pairing_extract(&zero).unwrap().is_zero());

        let tr1 = PolyMatrix::generic(Integers, 2, 2, 1).trace();
        let tr2 = PolyMatrix::generic(Integers, 2, 2, 2).trace();
        let m = trace_pairing_extract(&tr1.mul(&tr2).unwrap()).unwrap();
        let tr1_small = PolyMatrix::generic(Integers, 2, 1, 1).trace();
        assert_eq!(m, PolyMatrix::identity(Integers, 2, 1).scale_poly(&tr1_small).unwrap());
    }

    #[test]
    fn trace_pairing_rejects_wrong_degree() {
        let t = PolyMatrix::generic(Integers, 2, 2, 2).trace().pow(2);
        assert!(trace_pairing_extract(&t).is_err());
        let t = PolyMatrix::generic(Integers, 2, 2, 1).trace();
        assert!(trace_pairing_extract(&t).is_err());
    }

    #[test]
    fn concomitant_rendering() {
        let inv = InvariantExpr::new(BigInt::from(-2), vec![SigmaFactor::new(1, Word::letter(1))]).unwrap();
        let c = ConcomitantExpr::new(inv, Word::parse("x1 x2").unwrap());
        assert_eq!(c.to_string(), "-2*s_1(x1) * [x1 x2]");
    }

    #[test]
    fn sigma_candidates_for_one_matrix() {
        let c = sigma_candidates(2, &MultiDegree(vec![2]));
        assert_eq!(c, vec![SigmaFactor::new(2, Word::letter(1)), SigmaFactor::new(1, Word::power_of(1, 2))]);
    }

    #[test]
    fn chi_battery_small() {
        let r = chi_battery(2, 2, 3, 20, 0, 5).unwrap();
        assert!(r.all_zero);
        assert_eq!(r.cases, 40);
        assert_eq!(r, chi_battery(2, 2, 3, 20, 0, 5).unwrap());
    }
}
