//! The filtered spaces `A_d(n)` (Jacobi diagrams modulo STU), the graded
//! pieces `B_{d,k}(n)` (open diagrams modulo AS and IHX), and the PBW maps
//! `chi` and `theta` between them.
//!
//! The spanning diagrams of `A_d(n)` are ordered by trivalent count, and
//! the relation matrix is reduced with the lowest column as pivot. A
//! relation therefore always eliminates its diagram with the fewest
//! trivalent vertices, the surviving (free) columns form the quotient
//! basis, and `F_k` is exactly the coordinate span of the free columns
//! whose diagram has at least `k` trivalent vertices.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::diagrams::{
    enumerate_jacobi_capped, enumerate_open_capped, BLeg, DiagramError, Graph, JacobiDiagram, OpenJacobiDiagram,
    DEFAULT_CAP,
};
use crate::exactlin::{int, invert, matmul, rref, Matrix, Scalar, SparseVector, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("diagram does not belong to this space (n = {n}, d = {d})")]
    ForeignDiagram { n: usize, d: usize },
    #[error("vector is not in filtration step F_{k}")]
    NotInFiltration { k: usize },
    #[error("grade {k} is out of range for degree {d}")]
    GradeOutOfRange { k: usize, d: usize },
    #[error("PBW map is not invertible in grade {k}")]
    PbwSingular { k: usize },
}

pub type Result<T> = std::result::Result<T, SpaceError>;

/// Formal rational combination of canonical diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramVector<D: Ord> {
    terms: BTreeMap<D, Scalar>,
}

impl<D: Ord> Default for DiagramVector<D> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

pub type JacobiVector = DiagramVector<JacobiDiagram>;
pub type OpenVector = DiagramVector<OpenJacobiDiagram>;

impl<D: Ord + Clone> DiagramVector<D> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `c * d`, assuming `d` is already canonical.
    pub fn add_canonical(&mut self, d: D, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(d.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&d);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&D, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::new();
        for (d, x) in self.iter() {
            out.add_canonical(d.clone(), x * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, x) in other.iter() {
            out.add_canonical(d.clone(), x.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }
}

impl JacobiVector {
    pub fn from_diagram(d: &JacobiDiagram) -> std::result::Result<Self, DiagramError> {
        let mut v = Self::new();
        v.push(d, Scalar::one())?;
        Ok(v)
    }

    pub fn push(&mut self, d: &JacobiDiagram, c: Scalar) -> std::result::Result<(), DiagramError> {
        self.add_canonical(d.canonical()?, c);
        Ok(())
    }
}

impl OpenVector {
    pub fn from_diagram(d: &OpenJacobiDiagram) -> std::result::Result<Self, DiagramError> {
        let mut v = Self::new();
        v.push(d, Scalar::one())?;
        Ok(v)
    }

    /// Adds `c * d`, folding antisymmetry into the canonical sign.
    pub fn push(&mut self, d: &OpenJacobiDiagram, c: Scalar) -> std::result::Result<(), DiagramError> {
        let (canon, sign) = d.canonical()?;
        if sign != 0 {
            self.add_canonical(canon, c * int(sign as i64));
        }
        Ok(())
    }
}

/// Number of grades `k` carried by degree `d`: trivalent counts
/// `0..2d-1` for `A`, of which the top one is zero.
pub fn grade_count(d: usize) -> usize {
    if d == 0 {
        1
    } else {
        2 * d - 1
    }
}

/// Builds the two STU companions of `s` at leg `leg`, whose partner must be
/// a trivalent slot. Returns `(T, U)` before canonicalization: with the
/// vertex read as `(leg side, x, y)`, `T` puts `x` then `y` along the arc
/// at the leg's position and `U` puts `y` then `x`.
pub(crate) fn stu_pair(s: &Graph, leg: usize) -> Option<(Graph, Graph)> {
    let p = s.partner(leg);
    let (v, slot) = s.slot_of(p)?;
    let x = s.tri_half_edge(v, slot + 1) as u32;
    let y = s.tri_half_edge(v, slot + 2) as u32;
    let label = s.labels()[leg];
    let mut b = s.to_builder();
    b.legs.retain(|l| l.id != leg as u32);
    b.tris.remove(v);
    b.edges.retain(|(a, c)| !(*a as usize == leg.min(p) && *c as usize == leg.max(p)));
    let mk = |first: u32, second: u32| {
        let mut b = b.clone();
        b.legs.push(BLeg { label, key: (leg as u32, 0), id: first });
        b.legs.push(BLeg { label, key: (leg as u32, 1), id: second });
        b.pack().expect("STU rewiring keeps the pairing perfect")
    };
    Some((mk(x, y), mk(y, x)))
}

/// The filtered quotient `A_d(n)`.
#[derive(Debug)]
pub struct SpaceA {
    n: usize,
    d: usize,
    diagrams: Vec<JacobiDiagram>,
    index: HashMap<Graph, usize>,
    relations: Subspace,
    relation_count: usize,
    free: Vec<usize>,
    position: Vec<Option<usize>>,
    /// `grade_start[k]` = first basis index whose diagram has `>= k`
    /// trivalent vertices; has `grade_count(d) + 1` entries.
    grade_start: Vec<usize>,
}

/// STU relation vectors over the ambient indexing of `diagrams`.
pub fn stu_relations(diagrams: &[JacobiDiagram], index: &HashMap<Graph, usize>) -> Vec<SparseVector> {
    diagrams
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, s)| {
            let g = s.graph();
            (0..g.legs())
                .filter_map(|leg| stu_pair(g, leg))
                .map(|(t, u)| {
                    let ti = index[&t.canonical_fixed_legs().expect("legs reach every vertex")];
                    let ui = index[&u.canonical_fixed_legs().expect("legs reach every vertex")];
                    SparseVector::from_entries([(i, int(1)), (ti, int(-1)), (ui, int(1))])
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

pub fn build_a(n: usize, d: usize) -> Result<SpaceA> {
    build_a_capped(n, d, DEFAULT_CAP)
}

pub fn build_a_capped(n: usize, d: usize, cap: usize) -> Result<SpaceA> {
    let top = if d == 0 { 0 } else { 2 * d - 1 };
    let mut diagrams = Vec::new();
    for t in 0..=top {
        diagrams.extend(enumerate_jacobi_capped(n, d, t, cap)?);
        if diagrams.len() > cap {
            return Err(DiagramError::ResourceLimit(cap).into());
        }
    }
    let index: HashMap<Graph, usize> = diagrams.iter().enumerate().map(|(i, g)| (g.graph().clone(), i)).collect();
    let rels = stu_relations(&diagrams, &index);
    let relation_count = rels.len();
    let relations = rref(&rels);
    let mut is_pivot = vec![false; diagrams.len()];
    for p in relations.pivots() {
        is_pivot[*p] = true;
    }
    let free: Vec<usize> = (0..diagrams.len()).filter(|i| !is_pivot[*i]).collect();
    let mut position = vec![None; diagrams.len()];
    for (k, f) in free.iter().enumerate() {
        position[*f] = Some(k);
    }
    let grades = grade_count(d);
    let grade_start = (0..=grades)
        .map(|k| free.iter().position(|f| diagrams[*f].trivalent_count() >= k).unwrap_or(free.len()))
        .collect();
    Ok(SpaceA { n, d, diagrams, index, relations, relation_count, free, position, grade_start })
}

impl SpaceA {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn spanning_set(&self) -> &[JacobiDiagram] {
        &self.diagrams
    }

    pub fn relation_count(&self) -> usize {
        self.relation_count
    }

    pub fn relation_rank(&self) -> usize {
        self.relations.dim()
    }

    /// The diagram standing for basis vector `i`.
    pub fn basis_diagram(&self, i: usize) -> &JacobiDiagram {
        &self.diagrams[self.free[i]]
    }

    pub fn grade_count(&self) -> usize {
        grade_count(self.d)
    }

    /// `dim F_k` for `k = 0..=grade_count`; the last entry is `0` for `d >= 1`.
    pub fn filtration_dims(&self) -> Vec<usize> {
        self.grade_start.iter().map(|s| self.dim() - s).collect()
    }

    /// `dim F_k / F_{k+1}` for `k = 0..grade_count`.
    pub fn graded_dims(&self) -> Vec<usize> {
        self.grade_start.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Basis index range of the grade-`k` piece.
    pub fn grade_range(&self, k: usize) -> std::ops::Range<usize> {
        if k >= self.grade_count() {
            return self.dim()..self.dim();
        }
        self.grade_start[k]..self.grade_start[k + 1]
    }

    pub fn filtration_start(&self, k: usize) -> usize {
        self.grade_start.get(k).copied().unwrap_or(self.dim())
    }

    pub fn ambient_index(&self, g: &Graph) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Quotient coordinates of a vector over the spanning set.
    pub fn reduce_ambient(&self, v: &SparseVector) -> SparseVector {
        self.relations
            .reduce(v)
            .reindex(|i| Some(self.position[i].expect("reduced vectors live on free columns")))
    }

    pub fn diagram_coords(&self, d: &JacobiDiagram) -> Result<SparseVector> {
        let c = d.canonical()?;
        let i = self.ambient_of(&c)?;
        Ok(self.reduce_ambient(&SparseVector::unit(i)))
    }

    fn ambient_of(&self, canonical: &JacobiDiagram) -> Result<usize> {
        if canonical.n() != self.n {
            return Err(SpaceError::ForeignDiagram { n: self.n, d: self.d });
        }
        self.index
            .get(canonical.graph())
            .copied()
            .ok_or(SpaceError::ForeignDiagram { n: self.n, d: self.d })
    }

    pub fn coords(&self, v: &JacobiVector) -> Result<SparseVector> {
        let mut amb = Vec::with_capacity(v.len());
        for (d, c) in v.iter() {
            amb.push((self.ambient_of(d)?, c.clone()));
        }
        Ok(self.reduce_ambient(&SparseVector::from_entries(amb)))
    }

    /// The combination of basis diagrams with the given coordinates.
    pub fn element(&self, coords: &SparseVector) -> JacobiVector {
        let mut v = JacobiVector::new();
        for (i, c) in coords.iter() {
            v.add_canonical(self.basis_diagram(i).clone(), c.clone());
        }
        v
    }

    pub fn in_filtration(&self, coords: &SparseVector, k: usize) -> bool {
        let s = self.filtration_start(k);
        coords.indices().all(|i| i >= s)
    }

    /// The filtration step `F_k` as a coordinate subspace.
    pub fn filtration(&self, k: usize) -> Subspace {
        Subspace::coordinate(self.filtration_start(k)..self.dim())
    }

    /// Grade-`k` coordinates of a vector in `F_k`, i.e. its class in
    /// `F_k / F_{k+1}`.
    pub fn gr_coords(&self, coords: &SparseVector, k: usize) -> Result<SparseVector> {
        if !self.in_filtration(coords, k) {
            return Err(SpaceError::NotInFiltration { k });
        }
        let r = self.grade_range(k);
        Ok(coords.filter(|i| r.contains(&i)).reindex(|i| Some(i - r.start)))
    }
}

/// The graded piece `B_{d,k}(n)`.
#[derive(Debug)]
pub struct SpaceB {
    n: usize,
    d: usize,
    k: usize,
    diagrams: Vec<OpenJacobiDiagram>,
    index: HashMap<Graph, usize>,
    relations: Subspace,
    relation_count: usize,
    free: Vec<usize>,
    position: Vec<Option<usize>>,
}

/// The three IHX terms across the internal edge at half-edge `h`, as
/// `(I, D1, D2)` before canonicalization. With the ends read as
/// `u = (e, a, b)` and `w = (e', c, d)`, `D1` has `u = (e, b, c)`,
/// `w = (e', a, d)` and `D2` has `u = (e, c, a)`, `w = (e', b, d)`; the
/// relation is `I + D1 + D2 = 0`.
pub(crate) fn ihx_terms(g: &Graph, h: usize) -> Option<[Graph; 3]> {
    let p = g.partner(h);
    let (u, su) = g.slot_of(h)?;
    let (w, sw) = g.slot_of(p)?;
    if u == w {
        return None;
    }
    let e = g.tri_half_edge(u, su) as u32;
    let a = g.tri_half_edge(u, su + 1) as u32;
    let b = g.tri_half_edge(u, su + 2) as u32;
    let f = g.tri_half_edge(w, sw) as u32;
    let c = g.tri_half_edge(w, sw + 1) as u32;
    let dd = g.tri_half_edge(w, sw + 2) as u32;
    let base = g.to_builder();
    let mk = |tu: [u32; 3], tw: [u32; 3]| {
        let mut bld = base.clone();
        bld.tris[u] = tu;
        bld.tris[w] = tw;
        bld.pack().expect("IHX rewiring keeps the pairing perfect")
    };
    Some([mk([e, a, b], [f, c, dd]), mk([e, b, c], [f, a, dd]), mk([e, c, a], [f, b, dd])])
}

pub fn ihx_relations(diagrams: &[OpenJacobiDiagram], index: &HashMap<Graph, usize>) -> Vec<SparseVector> {
    diagrams
        .par_iter()
        .flat_map_iter(|dg| {
            let g = dg.graph();
            let l = g.legs();
            (l..g.half_edges())
                .filter(|h| g.partner(*h) > *h && g.partner(*h) >= l)
                .filter_map(|h| ihx_terms(g, h))
                .map(|terms| {
                    SparseVector::from_entries(terms.iter().filter_map(|t| {
                        let (c, s) = t.canonical_free_legs().expect("legs reach every vertex");
                        (s != 0).then(|| (index[&c], int(s as i64)))
                    }))
                })
                .filter(|v| !v.is_zero())
                .collect::<Vec<_>>()
        })
        .collect()
}

pub fn build_b(n: usize, d: usize, k: usize) -> Result<SpaceB> {
    build_b_capped(n, d, k, DEFAULT_CAP)
}

pub fn build_b_capped(n: usize, d: usize, k: usize, cap: usize) -> Result<SpaceB> {
    if k >= grade_count(d) {
        return Err(SpaceError::GradeOutOfRange { k, d });
    }
    let diagrams = enumerate_open_capped(n, d, k, cap)?;
    let index: HashMap<Graph, usize> = diagrams.iter().enumerate().map(|(i, g)| (g.graph().clone(), i)).collect();
    let rels = ihx_relations(&diagrams, &index);
    let relation_count = rels.len();
    let relations = rref(&rels);
    let mut is_pivot = vec![false; diagrams.len()];
    for p in relations.pivots() {
        is_pivot[*p] = true;
    }
    let free: Vec<usize> = (0..diagrams.len()).filter(|i| !is_pivot[*i]).collect();
    let mut position = vec![None; diagrams.len()];
    for (j, f) in free.iter().enumerate() {
        position[*f] = Some(j);
    }
    Ok(SpaceB { n, d, k, diagrams, index, relations, relation_count, free, position })
}

impl SpaceB {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn spanning_set(&self) -> &[OpenJacobiDiagram] {
        &self.diagrams
    }

    pub fn relation_count(&self) -> usize {
        self.relation_count
    }

    pub fn basis_diagram(&self, i: usize) -> &OpenJacobiDiagram {
        &self.diagrams[self.free[i]]
    }

    pub fn reduce_ambient(&self, v: &SparseVector) -> SparseVector {
        self.relations
            .reduce(v)
            .reindex(|i| Some(self.position[i].expect("reduced vectors live on free columns")))
    }

    pub fn coords(&self, v: &OpenVector) -> Result<SparseVector> {
        let mut amb = Vec::with_capacity(v.len());
        for (d, c) in v.iter() {
            if d.n() != self.n || d.trivalent_count() != self.k || d.degree() != self.d {
                return Err(SpaceError::ForeignDiagram { n: self.n, d: self.d });
            }
            let i = self
                .index
                .get(d.graph())
                .copied()
                .ok_or(SpaceError::ForeignDiagram { n: self.n, d: self.d })?;
            amb.push((i, c.clone()));
        }
        Ok(self.reduce_ambient(&SparseVector::from_entries(amb)))
    }

    pub fn diagram_coords(&self, d: &OpenJacobiDiagram) -> Result<SparseVector> {
        self.coords(&OpenVector::from_diagram(d)?)
    }

    pub fn element(&self, coords: &SparseVector) -> OpenVector {
        let mut v = OpenVector::new();
        for (i, c) in coords.iter() {
            v.add_canonical(self.basis_diagram(i).clone(), c.clone());
        }
        v
    }
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// Ambient (spanning-set) vector of `chi(d)`: the average over all ways of
/// attaching the legs of color `i` to arc `i`.
fn chi_ambient(a: &SpaceA, d: &OpenJacobiDiagram, coeff: &Scalar) -> Result<SparseVector> {
    let g = d.graph();
    if g.labels().iter().any(|c| *c as usize >= a.n()) {
        return Err(SpaceError::ForeignDiagram { n: a.n(), d: a.d() });
    }
    let groups: Vec<Vec<usize>> = (0..g.legs()).chunk_by(|i| g.labels()[*i]).into_iter().map(|(_, c)| c.collect()).collect();
    let orders: Vec<Vec<Vec<usize>>> =
        groups.iter().map(|grp| grp.iter().copied().permutations(grp.len()).collect()).collect();
    let count: i64 = groups.iter().map(|grp| factorial(grp.len())).product();
    let w = coeff / int(count);
    let base = g.to_builder();
    let mut entries = Vec::new();
    for combo in orders.iter().map(|o| o.iter()).multi_cartesian_product() {
        let mut b = base.clone();
        for ord in combo {
            for (pos, leg) in ord.iter().enumerate() {
                b.legs[*leg].key = (pos as u32, 0);
            }
        }
        let j = JacobiDiagram::from_graph(a.n(), b.pack()?)?.canonical()?;
        entries.push((a.ambient_of(&j)?, w.clone()));
    }
    if groups.is_empty() {
        let j = JacobiDiagram::from_graph(a.n(), g.clone())?.canonical()?;
        entries.push((a.ambient_of(&j)?, w));
    }
    Ok(SparseVector::from_entries(entries))
}

/// `chi` of a single open diagram taken exactly as given, without first
/// bringing it to canonical form.
pub fn chi_diagram(a: &SpaceA, d: &OpenJacobiDiagram) -> Result<SparseVector> {
    Ok(a.reduce_ambient(&chi_ambient(a, d, &int(1))?))
}

/// `chi(u)` in quotient coordinates of `A_d(n)`.
pub fn chi(a: &SpaceA, u: &OpenVector) -> Result<SparseVector> {
    let mut acc = SparseVector::zero();
    for (d, c) in u.iter() {
        acc = acc.add(&chi_ambient(a, d, c)?);
    }
    Ok(a.reduce_ambient(&acc))
}

/// `A_d(n)` together with every `B_{d,k}(n)` and the graded PBW matrices.
#[derive(Debug)]
pub struct Pbw {
    pub a: Arc<SpaceA>,
    pub b: Vec<Arc<SpaceB>>,
    /// Row `i` of `chi_matrix[k]` is the grade-`k` class of `chi` of the
    /// `i`-th basis vector of `B_{d,k}`.
    chi_matrix: Vec<Matrix>,
    chi_inverse: Vec<Matrix>,
}

impl Pbw {
    pub fn build(n: usize, d: usize) -> Result<Self> {
        let a = space_a(n, d)?;
        let mut b = Vec::new();
        let mut chi_matrix = Vec::new();
        let mut chi_inverse = Vec::new();
        for k in 0..grade_count(d) {
            let bk = space_b(n, d, k)?;
            let range = a.grade_range(k);
            let rows: Vec<Vec<Scalar>> = (0..bk.dim())
                .into_par_iter()
                .map(|i| {
                    let x = chi(&a, &OpenVector::from_diagram(bk.basis_diagram(i))?)?;
                    Ok(a.gr_coords(&x, k)?.to_dense(range.len()))
                })
                .collect::<Result<_>>()?;
            if rows.len() != range.len() {
                return Err(SpaceError::PbwSingular { k });
            }
            let inv = if rows.is_empty() { vec![] } else { invert(&rows).ok_or(SpaceError::PbwSingular { k })? };
            b.push(bk);
            chi_matrix.push(rows);
            chi_inverse.push(inv);
        }
        Ok(Self { a, b, chi_matrix, chi_inverse })
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn d(&self) -> usize {
        self.a.d()
    }

    pub fn chi_matrix(&self, k: usize) -> &Matrix {
        &self.chi_matrix[k]
    }

    fn check_grade(&self, k: usize) -> Result<()> {
        if k >= self.b.len() {
            return Err(SpaceError::GradeOutOfRange { k, d: self.d() });
        }
        Ok(())
    }

    /// `theta` on the class of `x in F_k` modulo `F_{k+1}`; the result is in
    /// coordinates of `B_{d,k}`.
    pub fn theta(&self, k: usize, x: &SparseVector) -> Result<SparseVector> {
        self.check_grade(k)?;
        let g = self.a.gr_coords(x, k)?;
        let dense = vec![g.to_dense(self.a.grade_range(k).len())];
        if self.chi_inverse[k].is_empty() {
            return Ok(SparseVector::zero());
        }
        Ok(SparseVector::from_dense(&matmul(&dense, &self.chi_inverse[k])[0]))
    }

    /// A lift of a grade-`k` element of `B` to `F_k`, namely `chi` of it.
    pub fn lift(&self, k: usize, y: &SparseVector) -> Result<SparseVector> {
        self.check_grade(k)?;
        chi(&self.a, &self.b[k].element(y))
    }

    /// A different lift of a grade-`k` element: every leg is attached in
    /// one fixed order instead of averaging over all orders.
    pub fn lift_shortcut(&self, k: usize, y: &SparseVector) -> Result<SparseVector> {
        self.check_grade(k)?;
        let mut v = JacobiVector::new();
        for (i, c) in y.iter() {
            let g = self.b[k].basis_diagram(i).graph().clone();
            v.push(&JacobiDiagram::from_graph(self.n(), g)?, c.clone())?;
        }
        self.a.coords(&v)
    }

    /// Coordinates of `chi` of a `B_{d,k}` element, via the stored matrix.
    pub fn chi_gr(&self, k: usize, y: &SparseVector) -> Result<SparseVector> {
        self.check_grade(k)?;
        let n = self.b[k].dim();
        if n == 0 {
            return Ok(SparseVector::zero());
        }
        let row = vec![y.to_dense(n)];
        Ok(SparseVector::from_dense(&matmul(&row, &self.chi_matrix[k])[0]))
    }
}

type Cache<K, V> = OnceLock<Mutex<HashMap<K, Arc<V>>>>;

static CACHE_A: Cache<(usize, usize), SpaceA> = OnceLock::new();
static CACHE_B: Cache<(usize, usize, usize), SpaceB> = OnceLock::new();
static CACHE_PBW: Cache<(usize, usize), Pbw> = OnceLock::new();

fn cache_disabled() -> bool {
    std::env::var_os("JACOBI_CACHE_DISABLE").is_some_and(|v| !v.is_empty() && v != "0")
}

fn cached<K: std::hash::Hash + Eq + Clone, V>(
    cache: &'static Cache<K, V>,
    key: K,
    build: impl FnOnce() -> Result<V>,
) -> Result<Arc<V>> {
    if cache_disabled() {
        return build().map(Arc::new);
    }
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().expect("cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(build()?);
    Ok(map.lock().expect("cache poisoned").entry(key).or_insert(v).clone())
}

/// Memoized `build_a`.
pub fn space_a(n: usize, d: usize) -> Result<Arc<SpaceA>> {
    cached(&CACHE_A, (n, d), || build_a(n, d))
}

/// Memoized `build_b`.
pub fn space_b(n: usize, d: usize, k: usize) -> Result<Arc<SpaceB>> {
    cached(&CACHE_B, (n, d, k), || build_b(n, d, k))
}

/// Memoized `Pbw::build`.
pub fn pbw(n: usize, d: usize) -> Result<Arc<Pbw>> {
    cached(&CACHE_PBW, (n, d), || Pbw::build(n, d))
}
