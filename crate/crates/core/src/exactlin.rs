//! Exact sparse linear algebra over the rationals.
//!
//! Every dimension, quotient and span computation in this crate goes
//! through the types here. Vectors are sparse maps from an abstract index
//! universe (usually "the i-th canonical diagram") to `BigRational`.
//! Pivoting is deterministic: the lowest index is always eliminated first,
//! so the same input order always produces the same basis.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// A vector with finitely many nonzero rational entries, sorted by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVector {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        Self { entries: vec![(i, Scalar::one())] }
    }

    /// Builds a vector from arbitrary `(index, value)` pairs; repeated
    /// indices are summed and zeros dropped.
    pub fn from_entries<I: IntoIterator<Item = (usize, Scalar)>>(it: I) -> Self {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, c) in it {
            if c.is_zero() {
                continue;
            }
            let slot = map.entry(i).or_insert_with(Scalar::zero);
            *slot += c;
        }
        Self::from_map(map)
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        Self::from_entries(values.iter().cloned().enumerate())
    }

    fn from_map(map: BTreeMap<usize, Scalar>) -> Self {
        Self {
            entries: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`, merged in one pass.
    pub fn add_scaled(&self, other: &SparseVector, c: &Scalar) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + y * c;
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &SparseVector) -> Self {
        self.add_scaled(other, &Scalar::one())
    }

    pub fn sub(&self, other: &SparseVector) -> Self {
        self.add_scaled(other, &-Scalar::one())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    /// Keeps only the entries whose index satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(usize) -> bool) -> Self {
        Self {
            entries: self.entries.iter().filter(|(i, _)| keep(*i)).cloned().collect(),
        }
    }

    /// Re-indexes entries through `f`; entries mapped to `None` are dropped.
    pub fn reindex(&self, mut f: impl FnMut(usize) -> Option<usize>) -> Self {
        Self::from_entries(self.entries.iter().filter_map(|(i, c)| f(*i).map(|j| (j, c.clone()))))
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (i, c) in self.iter() {
            out[i] = c.clone();
        }
        out
    }
}

impl fmt::Display for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (i, c)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*e{}", c, i)?;
        }
        Ok(())
    }
}

/// Incremental row echelon form. Rows are normalized (pivot entry 1) but
/// not back-substituted until [`Echelon::finish`].
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVector>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        if self.rows.is_empty() {
            return v.clone();
        }
        let mut w = v.clone();
        let mut cursor = 0usize;
        loop {
            let next = w
                .iter()
                .map(|(i, _)| i)
                .find(|i| *i >= cursor && self.rows.contains_key(i));
            let Some(p) = next else { break };
            let c = w.get(p);
            w = w.add_scaled(&self.rows[&p], &-c);
            cursor = p + 1;
        }
        w
    }

    /// Adds `v` to the row space; returns `true` when it was independent.
    pub fn insert(&mut self, v: &SparseVector) -> bool {
        let r = self.reduce(v);
        match r.leading() {
            None => false,
            Some((p, c)) => {
                let inv = c.recip();
                let row = r.scale(&inv);
                self.rows.insert(p, row);
                true
            }
        }
    }

    pub fn finish(self) -> Subspace {
        let mut done: BTreeMap<usize, SparseVector> = BTreeMap::new();
        for (p, row) in self.rows.into_iter().rev() {
            let mut r = row;
            let higher: Vec<usize> = r.indices().filter(|i| *i > p && done.contains_key(i)).collect();
            for q in higher {
                let c = r.get(q);
                if !c.is_zero() {
                    r = r.add_scaled(&done[&q], &-c);
                }
            }
            done.insert(p, r);
        }
        let (pivots, rows) = done.into_iter().unzip();
        Subspace { rows, pivots }
    }
}

/// A subspace stored as its reduced row echelon basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subspace {
    rows: Vec<SparseVector>,
    pivots: Vec<usize>,
}

/// Row-reduces `rows` into the canonical RREF basis of their span.
pub fn rref(rows: &[SparseVector]) -> Subspace {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.finish()
}

impl Subspace {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn spanned_by(rows: &[SparseVector]) -> Self {
        rref(rows)
    }

    /// The coordinate subspace spanned by the given unit vectors.
    pub fn coordinate(indices: impl IntoIterator<Item = usize>) -> Self {
        let rows: Vec<SparseVector> = indices.into_iter().map(SparseVector::unit).collect();
        rref(&rows)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its component along the pivot columns.
    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        let mut w = v.clone();
        for (p, row) in self.pivots.iter().zip(&self.rows) {
            let c = v.get(*p);
            if !c.is_zero() {
                w = w.add_scaled(row, &-c);
            }
        }
        w
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is not in
    /// the span.
    pub fn coordinates(&self, v: &SparseVector) -> Option<Vec<Scalar>> {
        if self.reduce(v).is_zero() {
            Some(self.pivots.iter().map(|p| v.get(*p)).collect())
        } else {
            None
        }
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_all(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut e = Echelon::new();
        for r in self.rows.iter().chain(&other.rows) {
            e.insert(r);
        }
        e.finish()
    }

    /// Zassenhaus intersection.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let offset = 1 + self
            .rows
            .iter()
            .chain(&other.rows)
            .filter_map(|r| r.max_index())
            .max()
            .unwrap_or(0);
        let shift = |v: &SparseVector| v.reindex(|i| Some(i + offset));
        let mut e = Echelon::new();
        for a in &self.rows {
            e.insert(&a.add(&shift(a)));
        }
        for b in &other.rows {
            e.insert(b);
        }
        let full = e.finish();
        let meet: Vec<SparseVector> = full
            .pivots
            .iter()
            .zip(&full.rows)
            .filter(|(p, _)| **p >= offset)
            .map(|(_, r)| r.reindex(|i| i.checked_sub(offset)))
            .collect();
        rref(&meet)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Left kernel of a list of rows: all `x` with `sum_i x_i * rows[i] = 0`.
pub fn left_kernel(rows: &[SparseVector]) -> Subspace {
    let offset = 1 + rows.iter().filter_map(|r| r.max_index()).max().unwrap_or(0);
    let mut e = Echelon::new();
    for (i, r) in rows.iter().enumerate() {
        e.insert(&r.add(&SparseVector::unit(offset + i)));
    }
    let full = e.finish();
    let ker: Vec<SparseVector> = full
        .pivots
        .iter()
        .zip(&full.rows)
        .filter(|(p, _)| **p >= offset)
        .map(|(_, r)| r.reindex(|i| i.checked_sub(offset)))
        .collect();
    rref(&ker)
}

/// A presented vector space: span(ambient) / span(relations).
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    relations: Subspace,
    complement: Subspace,
}

pub fn quotient(ambient: &[SparseVector], relations: &[SparseVector]) -> QuotientPresentation {
    let relations = rref(relations);
    let reduced: Vec<SparseVector> = ambient.iter().map(|v| relations.reduce(v)).collect();
    let complement = rref(&reduced);
    QuotientPresentation { relations, complement }
}

impl QuotientPresentation {
    pub fn dim(&self) -> usize {
        self.complement.dim()
    }

    pub fn relation_rank(&self) -> usize {
        self.relations.dim()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Ambient-space representative of the i-th quotient basis vector.
    pub fn representative(&self, i: usize) -> &SparseVector {
        &self.complement.rows()[i]
    }

    /// Pivot column of the i-th representative; for a quotient of a full
    /// coordinate space this is the ambient index the basis vector stands for.
    pub fn representative_index(&self, i: usize) -> usize {
        self.complement.pivots()[i]
    }

    /// Coordinates of an ambient vector in the quotient basis, as a sparse
    /// vector over `0..dim()`. Returns `None` if `v` is outside the ambient span.
    pub fn coordinates(&self, v: &SparseVector) -> Option<SparseVector> {
        let r = self.relations.reduce(v);
        self.complement.coordinates(&r).map(|c| SparseVector::from_dense(&c))
    }

    pub fn is_zero_class(&self, v: &SparseVector) -> bool {
        self.relations.contains(v)
    }
}

/// Coefficients of `v` in the (linearly independent) list `basis`, or
/// `None` if `v` is outside their span.
pub fn express(basis: &[SparseVector], v: &SparseVector) -> Option<Vec<Scalar>> {
    let offset = 1 + basis
        .iter()
        .chain(std::iter::once(v))
        .filter_map(|r| r.max_index())
        .max()
        .unwrap_or(0);
    let rows: Vec<SparseVector> =
        basis.iter().enumerate().map(|(i, b)| b.add(&SparseVector::unit(offset + i))).collect();
    let s = rref(&rows);
    if s.pivots().iter().any(|p| *p >= offset) {
        return None;
    }
    let r = s.reduce(v);
    if r.indices().any(|i| i < offset) {
        return None;
    }
    Some((0..basis.len()).map(|i| -r.get(offset + i)).collect())
}

/// Dense rational matrix helpers; rows are images of basis vectors.
pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
        .collect()
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Scalar::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn matrix_rank(m: &Matrix) -> usize {
    let rows: Vec<SparseVector> = m.iter().map(|r| SparseVector::from_dense(r)).collect();
    rref(&rows).dim()
}

/// Inverse of a square matrix, `None` if singular.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let rows: Vec<SparseVector> = m
        .iter()
        .enumerate()
        .map(|(i, r)| SparseVector::from_dense(r).add(&SparseVector::unit(n + i)))
        .collect();
    let s = rref(&rows);
    if s.dim() != n || s.pivots().iter().any(|p| *p >= n) {
        return None;
    }
    Some(
        s.rows()
            .iter()
            .map(|r| (0..n).map(|j| r.get(n + j)).collect())
            .collect(),
    )
}

pub fn is_integral(c: &Scalar) -> bool {
    c.is_integer()
}

pub fn abs(c: &Scalar) -> Scalar {
    c.abs()
}
