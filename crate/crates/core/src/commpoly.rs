//! Sparse commutative polynomials in the entries `x[i,j](r)` of `m` generic
//! `n x n` matrices.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freealg::MultiDegree;
use crate::ring::Ring;

/// The variable `x[i,j](r)`; all indices are 1-based. Ordered by `(r, i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId {
    pub r: u8,
    pub i: u8,
    pub j: u8,
}

impl VarId {
    pub fn new(i: usize, j: usize, r: usize) -> Self {
        assert!(i >= 1 && j >= 1 && r >= 1 && i <= 255 && j <= 255 && r <= 255);
        VarId {
            r: r as u8,
            i: i as u8,
            j: j as u8,
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}]({})", self.i, self.j, self.r)
    }
}

/// A monomial: sorted `(variable, exponent)` pairs with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CommMonomial(Vec<(VarId, u32)>);

impl CommMonomial {
    pub fn one() -> Self {
        CommMonomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        CommMonomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary pairs, merging repeats and dropping
    /// zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_default() += e;
        }
        CommMonomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn exponents(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> usize {
        self.0.iter().map(|&(_, e)| e as usize).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    /// Component `r` is the total exponent of the variables of matrix `r`.
    pub fn multidegree(&self, m: usize) -> MultiDegree {
        let mut d = vec![0usize; m];
        for &(v, e) in &self.0 {
            d[v.r as usize - 1] += e as usize;
        }
        MultiDegree(d)
    }

    pub fn mul(&self, other: &CommMonomial) -> CommMonomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        CommMonomial(out)
    }

    /// Removes one factor of `v`; `None` if `v` does not divide the monomial.
    pub fn divide_var(&self, v: VarId) -> Option<CommMonomial> {
        let k = self.0.binary_search_by(|(w, _)| w.cmp(&v)).ok()?;
        let mut out = self.0.clone();
        if out[k].1 == 1 {
            out.remove(k);
        } else {
            out[k].1 -= 1;
        }
        Some(CommMonomial(out))
    }
}

impl Ord for CommMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for CommMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CommMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let s = self
            .0
            .iter()
            .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .join("*");
        f.write_str(&s)
    }
}

impl Serialize for CommMonomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// All monomials in the variables of `n x n` matrices whose matrix-wise degree
/// is `deg`, sorted.
pub fn monomials_of_multidegree(n: usize, deg: &MultiDegree) -> Vec<CommMonomial> {
    let vars_of = |r: usize| -> Vec<VarId> {
        (1..=n)
            .flat_map(|i| (1..=n).map(move |j| VarId::new(i, j, r)))
            .collect()
    };
    let mut acc = vec![CommMonomial::one()];
    for (idx, &d) in deg.0.iter().enumerate() {
        let vars = vars_of(idx + 1);
        let parts: Vec<CommMonomial> = vars
            .iter()
            .combinations_with_replacement(d)
            .map(|c| CommMonomial::from_pairs(c.into_iter().map(|&v| (v, 1))))
            .collect();
        acc = acc
            .iter()
            .flat_map(|a| parts.iter().map(move |b| a.mul(b)))
            .collect();
    }
    acc.sort();
    acc
}

/// Number of monomials of a given matrix-wise degree, without enumerating them.
pub fn count_monomials_of_multidegree(n: usize, deg: &MultiDegree) -> u128 {
    let vars = (n * n) as u128;
    deg.0
        .iter()
        .map(|&d| binomial(vars + d as u128 - 1, d as u128))
        .product()
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A polynomial in the `n^2 m` matrix-entry variables.
#[derive(Clone, PartialEq, Eq)]
pub struct CommPoly<R: Ring> {
    ring: R,
    n: usize,
    m: usize,
    terms: BTreeMap<CommMonomial, R::Elem>,
}

impl<R: Ring> CommPoly<R> {
    pub fn zero(ring: R, n: usize, m: usize) -> Self {
        CommPoly {
            ring,
            n,
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: R, n: usize, m: usize, c: R::Elem) -> Self {
        let mut p = Self::zero(ring, n, m);
        p.add_term(CommMonomial::one(), c);
        p
    }

    pub fn one(ring: R, n: usize, m: usize) -> Self {
        let c = ring.one();
        Self::constant(ring, n, m, c)
    }

    /// The variable `x[i,j](r)`.
    pub fn var(ring: R, n: usize, m: usize, v: VarId) -> Self {
        assert!(
            (v.i as usize) <= n && (v.j as usize) <= n && (v.r as usize) <= m,
            "variable {v} outside ambient ({n}, {m})"
        );
        let c = ring.one();
        let mut p = Self::zero(ring, n, m);
        p.add_term(CommMonomial::var(v), c);
        p
    }

    pub fn from_terms(
        ring: R,
        n: usize,
        m: usize,
        terms: impl IntoIterator<Item = (CommMonomial, R::Elem)>,
    ) -> Self {
        let mut p = Self::zero(ring, n, m);
        for (mono, c) in terms {
            p.add_term(mono, c);
        }
        p
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Ambient `(n, m)`.
    pub fn ambient(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CommMonomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &CommMonomial) -> R::Elem {
        self.terms.get(mono).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn add_term(&mut self, mono: CommMonomial, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.entry(mono) {
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
        if (self.n, self.m) != (other.n, other.m) {
            return Err(Error::mismatch(format!(
                "polynomial ambients ({}, {}) and ({}, {}) differ",
                self.n, self.m, other.n, other.m
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
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        for (mono, c) in &other.terms {
            self.add_term(mono.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.ring.neg(&self.ring.one()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.n, self.m);
        if self.ring.is_zero(c) {
            return out;
        }
        for (mono, d) in &self.terms {
            out.add_term(mono.clone(), self.ring.mul(c, d));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut acc: HashMap<CommMonomial, R::Elem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = self.ring.mul(ca, cb);
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        self.ring.add_assign(o.get_mut(), &c);
                    }
                }
            }
        }
        let ring = &self.ring;
        CommPoly {
            ring: ring.clone(),
            n: self.n,
            m: self.m,
            terms: acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.ring.clone(), self.n, self.m);
        for _ in 0..k {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(CommMonomial::total_degree).max().unwrap_or(0)
    }

    /// The common matrix-wise degree of all terms, if the polynomial is
    /// multihomogeneous and nonzero.
    pub fn multidegree(&self) -> Option<MultiDegree> {
        let mut it = self.terms.keys().map(|t| t.multidegree(self.m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Coefficients of `self` along `basis`, in basis order.
    ///
    /// Fails with the offending monomial if a term lies outside the basis.
    pub fn coefficient_vector(&self, basis: &[CommMonomial]) -> Result<Vec<R::Elem>> {
        let index: HashMap<&CommMonomial, usize> =
            basis.iter().enumerate().map(|(k, b)| (b, k)).collect();
        let mut out = vec![self.ring.zero(); basis.len()];
        for (mono, c) in &self.terms {
            let k = *index
                .get(mono)
                .ok_or_else(|| Error::OutsideBasis(mono.to_string()))?;
            out[k] = c.clone();
        }
        Ok(out)
    }

    /// Inverse of [`CommPoly::coefficient_vector`].
    pub fn from_coefficient_vector(
        ring: R,
        n: usize,
        m: usize,
        basis: &[CommMonomial],
        coeffs: &[R::Elem],
    ) -> Result<Self> {
        if basis.len() != coeffs.len() {
            return Err(Error::Dimension {
                expected: basis.len(),
                got: coeffs.len(),
            });
        }
        Ok(Self::from_terms(
            ring,
            n,
            m,
            basis.iter().cloned().zip(coeffs.iter().cloned()),
        ))
    }

    /// Ring homomorphism sending each variable to a polynomial in a possibly
    /// different ambient.
    pub fn substitute_vars(&self, target_n: usize, target_m: usize, image: impl Fn(VarId) -> CommPoly<R>) -> Self {
        let mut cache: HashMap<VarId, CommPoly<R>> = HashMap::new();
        let mut out = Self::zero(self.ring.clone(), target_n, target_m);
        for (mono, c) in &self.terms {
            let mut term = Self::constant(self.ring.clone(), target_n, target_m, c.clone());
            for &(v, e) in mono.exponents() {
                let img = cache.entry(v).or_insert_with(|| image(v)).clone();
                for _ in 0..e {
                    term = term.mul_unchecked(&img);
                }
            }
            out.add_assign_unchecked(&term);
        }
        out
    }

    /// Re-labels the polynomial into a larger or smaller ambient; fails if a
    /// variable does not exist there.
    pub fn with_ambient(&self, n: usize, m: usize) -> Result<Self> {
        for mono in self.terms.keys() {
            for &(v, _) in mono.exponents() {
                if v.i as usize > n || v.j as usize > n || v.r as usize > m {
                    return Err(Error::mismatch(format!("variable {v} outside ambient ({n}, {m})")));
                }
            }
        }
        Ok(CommPoly {
            ring: self.ring.clone(),
            n,
            m,
            terms: self.terms.clone(),
        })
    }

    pub fn map_ring<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> CommPoly<S> {
        CommPoly::from_terms(
            target.clone(),
            self.n,
            self.m,
            self.terms.iter().map(|(mono, c)| (mono.clone(), f(c))),
        )
    }

    /// Evaluates at integer-valued points given by `value`, through integer lifts.
    pub fn evaluate(&self, value: impl Fn(VarId) -> R::Elem) -> R::Elem {
        let mut acc = self.ring.zero();
        for (mono, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in mono.exponents() {
                let x = value(v);
                for _ in 0..e {
                    t = self.ring.mul(&t, &x);
                }
            }
            self.ring.add_assign(&mut acc, &t);
        }
        acc
    }
}

impl<R: Ring> fmt::Display for CommPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let s = self
            .terms
            .iter()
            .map(|(mono, c)| {
                if mono.is_one() {
                    self.ring.render(c)
                } else if self.ring.is_one(c) {
                    mono.to_string()
                } else {
                    format!("{}*{}", self.ring.render(c), mono)
                }
            })
            .join(" + ");
        f.write_str(&s)
    }
}

impl<R: Ring> fmt::Debug for CommPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CommPoly[{}]({})", self.ring.name(), self)
    }
}

/// Component `r` of the result is the total exponent over the variables of matrix `r`.
pub fn multidegree_of_term(t: &CommMonomial, m: usize) -> MultiDegree {
    t.multidegree(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, PrimeField};
    use num_bigint::BigInt;

    fn x(i: usize, j: usize, r: usize) -> CommPoly<Integers> {
        CommPoly::var(Integers, 2, 2, VarId::new(i, j, r))
    }

    #[test]
    fn cancellation() {
        let a = x(1, 1, 1);
        assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn product_of_two_variables() {
        let p = x(1, 1, 1).mul(&x(2, 2, 1)).unwrap();
        assert_eq!(p.num_terms(), 1);
        let (mono, c) = p.terms().next().unwrap();
        assert_eq!(mono.exponents().len(), 2);
        assert!(mono.exponents().iter().all(|&(_, e)| e == 1));
        assert_eq!(*c, BigInt::from(1));
    }

    #[test]
    fn frobenius_in_char_two() {
        let f2 = PrimeField::new(2).unwrap();
        let s = x(1, 1, 1).add(&x(1, 2, 1)).unwrap().map_ring(&f2, |c| f2.from_bigint(c));
        let sq = s.mul(&s).unwrap();
        let expected = x(1, 1, 1)
            .pow(2)
            .add(&x(1, 2, 1).pow(2))
            .unwrap()
            .map_ring(&f2, |c| f2.from_bigint(c));
        assert_eq!(sq, expected);
    }

    #[test]
    fn ambient_mismatch_is_rejected() {
        let a = CommPoly::var(Integers, 2, 2, VarId::new(1, 1, 1));
        let b = CommPoly::var(Integers, 3, 2, VarId::new(1, 1, 1));
        assert!(a.mul(&b).is_err());
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn multidegree_examples() {
        let t = CommMonomial::from_pairs([(VarId::new(1, 1, 1), 1), (VarId::new(2, 2, 1), 1)]);
        assert_eq!(multidegree_of_term(&t, 2), MultiDegree(vec![2, 0]));
        assert_eq!(multidegree_of_term(&CommMonomial::one(), 2), MultiDegree(vec![0, 0]));
        let t = CommMonomial::from_pairs([(VarId::new(1, 2, 2), 3)]);
        assert_eq!(multidegree_of_term(&t, 2), MultiDegree(vec![0, 3]));
    }

    #[test]
    fn coefficient_vector_reports_outside_terms() {
        let p = x(1, 1, 1).add(&x(1, 2, 2)).unwrap();
        let basis = vec![CommMonomial::var(VarId::new(1, 1, 1))];
        match p.coefficient_vector(&basis) {
            Err(Error::OutsideBasis(s)) => assert_eq!(s, "x[1,2](2)"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn monomial_enumeration_counts() {
        let d = MultiDegree(vec![2, 1]);
        let monos = monomials_of_multidegree(2, &d);
        assert_eq!(monos.len() as u128, count_monomials_of_multidegree(2, &d));
        assert_eq!(monos.len(), 10 * 4);
        assert!(monos.iter().all(|t| t.multidegree(2) == d));
    }

    #[test]
    fn display_uses_bracket_names() {
        assert_eq!(x(1, 2, 2).to_string(), "x[1,2](2)");
    }
}
