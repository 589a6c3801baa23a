//! Sparse linear algebra over `F_p`: incremental row-echelon spans.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::ring::PrimeField;

/// A sparse vector over `F_p` with a fixed ambient dimension.
///
/// Entries are sorted by column and never zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparseVec {
    dim: usize,
    entries: Vec<(usize, u64)>,
}

impl SparseVec {
    pub fn zero(dim: usize) -> Self {
        SparseVec {
            dim,
            entries: Vec::new(),
        }
    }

    /// Combines repeated columns and reduces coefficients mod `p`.
    pub fn from_pairs(field: &PrimeField, dim: usize, pairs: impl IntoIterator<Item = (usize, u64)>) -> Result<Self> {
        let mut raw: Vec<(usize, u64)> = pairs.into_iter().collect();
        if let Some(&(c, _)) = raw.iter().find(|(c, _)| *c >= dim) {
            return Err(Error::Dimension { expected: dim, got: c + 1 });
        }
        let p = field.characteristic();
        for e in raw.iter_mut() {
            e.1 %= p;
        }
        Ok(Self::combine(field, dim, raw))
    }

    pub fn from_dense(field: &PrimeField, values: &[u64]) -> Self {
        let p = field.characteristic();
        SparseVec {
            dim: values.len(),
            entries: values
                .iter()
                .enumerate()
                .filter_map(|(i, &v)| (v % p != 0).then_some((i, v % p)))
                .collect(),
        }
    }

    fn combine(field: &PrimeField, dim: usize, mut raw: Vec<(usize, u64)>) -> Self {
        raw.sort_unstable_by_key(|e| e.0);
        let mut entries: Vec<(usize, u64)> = Vec::with_capacity(raw.len());
        for (c, v) in raw {
            match entries.last_mut() {
                Some(last) if last.0 == c => last.1 = field.add_u(last.1, v),
                _ => entries.push((c, v)),
            }
        }
        entries.retain(|e| e.1 != 0);
        SparseVec { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, u64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, col: usize) -> u64 {
        self.entries
            .binary_search_by_key(&col, |e| e.0)
            .map(|k| self.entries[k].1)
            .unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(usize, u64)> {
        self.entries.first().copied()
    }

    pub fn to_dense(&self) -> Vec<u64> {
        let mut out = vec![0; self.dim];
        for &(c, v) in &self.entries {
            out[c] = v;
        }
        out
    }

    fn scale(&self, field: &PrimeField, c: u64) -> Self {
        if c == 0 {
            return Self::zero(self.dim);
        }
        SparseVec {
            dim: self.dim,
            entries: self.entries.iter().map(|&(i, v)| (i, field.mul_u(v, c))).collect(),
        }
    }

    /// `self - Σ c_k · rows_k`.
    fn subtract_combination<'a>(
        &self,
        field: &PrimeField,
        terms: impl IntoIterator<Item = (u64, &'a SparseVec)>,
    ) -> Self {
        let mut raw = self.entries.clone();
        for (c, row) in terms {
            let nc = field.neg_u(c);
            raw.extend(row.entries.iter().map(|&(i, v)| (i, field.mul_u(v, nc))));
        }
        Self::combine(field, self.dim, raw)
    }
}

#[derive(Debug, Clone)]
struct Row {
    vec: SparseVec,
    combo: Option<SparseVec>,
}

/// A subspace of `F_p^dim` kept in reduced row-echelon form.
///
/// With provenance enabled every row also records its expression as a
/// combination of the inserted vectors, so [`GradedSpan::express`] can
/// return explicit coefficients.
#[derive(Debug, Clone)]
pub struct GradedSpan {
    field: PrimeField,
    dim: usize,
    rows: BTreeMap<usize, Row>,
    track: bool,
    inserted: usize,
}

/// Upper bound on the number of inserted vectors when provenance is tracked.
const PROVENANCE_DIM: usize = usize::MAX / 2;

impl GradedSpan {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        GradedSpan {
            field,
            dim,
            rows: BTreeMap::new(),
            track: false,
            inserted: 0,
        }
    }

    pub fn with_provenance(field: PrimeField, dim: usize) -> Self {
        GradedSpan {
            track: true,
            ..Self::new(field, dim)
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors passed to [`GradedSpan::insert`] so far.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> + '_ {
        self.rows.values().map(|r| &r.vec)
    }

    fn check_dim(&self, v: &SparseVec) -> Result<()> {
        if v.dim != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: v.dim,
            });
        }
        Ok(())
    }

    /// Pivot coefficients of `v`; rows are reduced, so these are read directly.
    fn pivot_coeffs(&self, v: &SparseVec) -> Vec<(usize, u64)> {
        v.entries
            .iter()
            .filter(|(c, _)| self.rows.contains_key(c))
            .copied()
            .collect()
    }

    /// The remainder of `v` after reduction against the span.
    pub fn reduce(&self, v: &SparseVec) -> Result<SparseVec> {
        self.check_dim(v)?;
        let coeffs = self.pivot_coeffs(v);
        Ok(v.subtract_combination(&self.field, coeffs.iter().map(|&(c, k)| (k, &self.rows[&c].vec))))
    }

    pub fn member(&self, v: &SparseVec) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Inserts `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec) -> Result<bool> {
        self.check_dim(v)?;
        let index = self.inserted;
        self.inserted += 1;
        let coeffs = self.pivot_coeffs(v);
        let reduced = v.subtract_combination(&self.field, coeffs.iter().map(|&(c, k)| (k, &self.rows[&c].vec)));
        let (pivot, lead) = match reduced.leading() {
            None => return Ok(false),
            Some(l) => l,
        };
        let combo = self.track.then(|| {
            let unit = SparseVec {
                dim: PROVENANCE_DIM,
                entries: vec![(index, 1)],
            };
            unit.subtract_combination(
                &self.field,
                coeffs
                    .iter()
                    .map(|&(c, k)| (k, self.rows[&c].combo.as_ref().expect("tracked"))),
            )
        });
        let inv = self.field.inv_u(lead);
        let row = Row {
            vec: reduced.scale(&self.field, inv),
            combo: combo.map(|c| c.scale(&self.field, inv)),
        };
        for other in self.rows.values_mut() {
            let k = other.vec.get(pivot);
            if k == 0 {
                continue;
            }
            other.vec = other.vec.subtract_combination(&self.field, [(k, &row.vec)]);
            if let (Some(oc), Some(rc)) = (other.combo.as_mut(), row.combo.as_ref()) {
                *oc = oc.subtract_combination(&self.field, [(k, rc)]);
            }
        }
        self.rows.insert(pivot, row);
        Ok(true)
    }

    /// Coefficients `c_k` with `v = Σ c_k · (k-th inserted vector)`, or
    /// `None` when `v` is outside the span. Requires provenance tracking.
    pub fn express(&self, v: &SparseVec) -> Result<Option<Vec<(usize, u64)>>> {
        if !self.track {
            return Err(Error::usage("span was built without provenance"));
        }
        if !self.member(v)? {
            return Ok(None);
        }
        let coeffs = self.pivot_coeffs(v);
        let zero = SparseVec::zero(PROVENANCE_DIM);
        let neg: Vec<(u64, &SparseVec)> = coeffs
            .iter()
            .map(|&(c, k)| (self.field.neg_u(k), self.rows[&c].combo.as_ref().expect("tracked")))
            .collect();
        Ok(Some(zero.subtract_combination(&self.field, neg).entries))
    }
}

/// Number of candidates that successively enlarge `decomposables`.
pub fn new_generator_count(decomposables: &GradedSpan, candidates: &[SparseVec]) -> Result<usize> {
    let mut span = decomposables.clone();
    let mut count = 0;
    for c in candidates {
        if span.insert(c)? {
            count += 1;
        }
    }
    Ok(count)
}

/// An ordered basis of labels, indexing the columns of an ambient space.
#[derive(Debug, Clone)]
pub struct Basis<L: Ord + Hash + Clone> {
    labels: Vec<L>,
    index: HashMap<L, usize>,
}

impl<L: Ord + Hash + Clone + std::fmt::Display> Basis<L> {
    /// Sorts and deduplicates the labels.
    pub fn new(mut labels: Vec<L>) -> Self {
        labels.sort();
        labels.dedup();
        let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        Basis { labels, index }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn position(&self, label: &L) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn vector_from<'a>(
        &self,
        field: &PrimeField,
        pairs: impl IntoIterator<Item = (&'a L, u64)>,
    ) -> Result<SparseVec>
    where
        L: 'a,
    {
        let mut raw = Vec::new();
        for (l, v) in pairs {
            let i = self
                .position(l)
                .ok_or_else(|| Error::OutsideBasis(l.to_string()))?;
            raw.push((i, v));
        }
        SparseVec::from_pairs(field, self.len(), raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn dense(field: &PrimeField, v: &[u64]) -> SparseVec {
        SparseVec::from_dense(field, v)
    }

    /// Textbook dense elimination: rank of the stacked rows.
    fn dense_rank(field: &PrimeField, rows: &[Vec<u64>]) -> usize {
        let mut a: Vec<Vec<u64>> = rows.to_vec();
        let cols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = field.inv_u(a[rank][col]);
            for x in a[rank].iter_mut() {
                *x = field.mul_u(*x, inv);
            }
            let pivot = a[rank].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let k = row[col];
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x = field.sub_u(*x, field.mul_u(k, y));
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn insert_examples_over_f2() {
        let f2 = f(2);
        let mut s = GradedSpan::new(f2, 3);
        assert!(s.insert(&dense(&f2, &[1, 1, 0])).unwrap());
        assert!(s.insert(&dense(&f2, &[0, 1, 1])).unwrap());
        assert!(!s.insert(&dense(&f2, &[1, 0, 1])).unwrap());
        assert_eq!(s.rank(), 2);
        assert!(!s.insert(&SparseVec::zero(3)).unwrap());
        assert!(!s.insert(&dense(&f2, &[1, 1, 0])).unwrap());
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn dimension_mismatch_is_usage_error() {
        let mut s = GradedSpan::new(f(3), 3);
        let e = s.insert(&SparseVec::zero(4)).unwrap_err();
        assert!(e.is_usage());
        assert!(s.member(&SparseVec::zero(2)).is_err());
    }

    #[test]
    fn member_examples() {
        let f3 = f(3);
        let mut s = GradedSpan::new(f3, 4);
        s.insert(&dense(&f3, &[1, 2, 0, 0])).unwrap();
        assert!(s.member(&SparseVec::zero(4)).unwrap());
        let row = s.rows().next().unwrap().clone();
        assert!(s.member(&row).unwrap());
        assert!(!s.member(&dense(&f3, &[0, 0, 1, 1])).unwrap());
    }

    #[test]
    fn new_generator_count_examples() {
        let f2 = f(2);
        let mut s = GradedSpan::new(f2, 3);
        s.insert(&dense(&f2, &[1, 0, 0])).unwrap();
        let inside = dense(&f2, &[1, 0, 0]);
        assert_eq!(new_generator_count(&s, &[inside.clone(), inside]).unwrap(), 0);
        let outside = dense(&f2, &[0, 1, 0]);
        assert_eq!(new_generator_count(&s, &[outside.clone(), outside.clone(), outside]).unwrap(), 1);
        assert_eq!(new_generator_count(&s, &[]).unwrap(), 0);
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn rows_stay_reduced() {
        let f5 = f(5);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut s = GradedSpan::new(f5, 12);
        for _ in 0..20 {
            let v: Vec<u64> = (0..12).map(|_| if rng.gen_bool(0.3) { rng.gen_range(0..5) } else { 0 }).collect();
            s.insert(&dense(&f5, &v)).unwrap();
            let pivots: Vec<usize> = s.pivots().collect();
            for (p, row) in pivots.iter().zip(s.rows()) {
                assert_eq!(row.leading(), Some((*p, 1)));
                for q in &pivots {
                    if q != p {
                        assert_eq!(row.get(*q), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn agrees_with_dense_oracle() {
        for (p, seed) in [(2u64, 1u64), (3, 2), (5, 3), (7, 4)] {
            let field = f(p);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..30 {
                let dim = rng.gen_range(1..=64);
                let count = rng.gen_range(0..=dim + 4);
                let density = rng.gen_range(0.05..0.6);
                let gen = |rng: &mut ChaCha8Rng| -> Vec<u64> {
                    (0..dim)
                        .map(|_| if rng.gen_bool(density) { rng.gen_range(0..p) } else { 0 })
                        .collect()
                };
                let rows: Vec<Vec<u64>> = (0..count).map(|_| gen(&mut rng)).collect();
                let mut s = GradedSpan::new(field, dim);
                for r in &rows {
                    s.insert(&dense(&field, r)).unwrap();
                }
                let base = dense_rank(&field, &rows);
                assert_eq!(s.rank(), base);
                for _ in 0..10 {
                    let probe = gen(&mut rng);
                    let mut ext = rows.clone();
                    ext.push(probe.clone());
                    let oracle = dense_rank(&field, &ext) == base;
                    assert_eq!(s.member(&dense(&field, &probe)).unwrap(), oracle);
                }
            }
        }
    }

    #[test]
    fn membership_is_order_independent() {
        let f3 = f(3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let dim = 20;
        let mut gens: Vec<Vec<u64>> = (0..14)
            .map(|_| (0..dim).map(|_| if rng.gen_bool(0.2) { rng.gen_range(0..3) } else { 0 }).collect())
            .collect();
        let probes: Vec<Vec<u64>> = (0..40)
            .map(|_| (0..dim).map(|_| if rng.gen_bool(0.2) { rng.gen_range(0..3) } else { 0 }).collect())
            .collect();
        let build = |g: &[Vec<u64>]| {
            let mut s = GradedSpan::new(f3, dim);
            for r in g {
                s.insert(&dense(&f3, r)).unwrap();
            }
            s
        };
        let a = build(&gens);
        gens.shuffle(&mut rng);
        let b = build(&gens);
        for p in &probes {
            let v = dense(&f3, p);
            assert_eq!(a.member(&v).unwrap(), b.member(&v).unwrap());
        }
    }

    #[test]
    fn express_recovers_combinations() {
        let f5 = f(5);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let dim = 10;
        let gens: Vec<Vec<u64>> = (0..7)
            .map(|_| (0..dim).map(|_| rng.gen_range(0..5)).collect())
            .collect();
        let mut s = GradedSpan::with_provenance(f5, dim);
        for g in &gens {
            s.insert(&dense(&f5, g)).unwrap();
        }
        let mut target = vec![0u64; dim];
        for (k, g) in gens.iter().enumerate() {
            for c in 0..dim {
                target[c] = f5.add_u(target[c], f5.mul_u(k as u64 + 1, g[c]));
            }
        }
        let combo = s.express(&dense(&f5, &target)).unwrap().unwrap();
        let mut rebuilt = vec![0u64; dim];
        for (k, c) in combo {
            for col in 0..dim {
                rebuilt[col] = f5.add_u(rebuilt[col], f5.mul_u(c, gens[k][col]));
            }
        }
        assert_eq!(rebuilt, target);
        let mut outside = GradedSpan::with_provenance(f5, 3);
        outside.insert(&dense(&f5, &[1, 0, 0])).unwrap();
        assert_eq!(outside.express(&dense(&f5, &[0, 1, 0])).unwrap(), None);
    }

    #[test]
    fn basis_vectors() {
        let f2 = f(2);
        let b = Basis::new(vec![3u32, 1, 2, 1]);
        assert_eq!(b.labels(), &[1, 2, 3]);
        let v = b.vector_from(&f2, [(&3, 1), (&1, 1), (&3, 1)]).unwrap();
        assert_eq!(v.entries(), &[(0, 1)]);
        let e = b.vector_from(&f2, [(&9, 1)]).unwrap_err();
        assert_eq!(e, Error::OutsideBasis("9".into()));
    }
}
