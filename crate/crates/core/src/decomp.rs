//! Strand symmetrizers, the two summands `A_2'` and `A_2''` of `A_2(n)`,
//! character-based Schur decomposition of the `B` spaces, and submodule
//! closures under free-group automorphisms.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::Zero;
use thiserror::Error;

use crate::actions::{act_a, act_a_in, act_aut, ActionError, READING};
use crate::diagrams::{JacobiDiagram, OpenJacobiDiagram};
use crate::exactlin::{express, int, left_kernel, ratio, rref, Matrix, Scalar, SparseVector, Subspace};
use crate::freegroup::{Automorphism, Hom, Word};
use crate::spaces::{pbw, space_a, JacobiVector, OpenVector, SpaceA, SpaceB, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("arc {arc} out of range for {n} arcs")]
    ArcOutOfRange { arc: usize, n: usize },
    #[error("negative multiplicity for {0} in the character")]
    NegativeMultiplicity(Partition),
    #[error("weight vectors must all have length {0}")]
    WeightLength(usize),
    #[error("the span of the basis is not invariant under {0}")]
    NotInvariant(String),
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
}

pub type Result<T> = std::result::Result<T, DecompError>;

/// Sum over permutations of a set of arcs, with or without signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrandSymmetrizer {
    pub arcs: Vec<usize>,
    pub signed: bool,
}

impl StrandSymmetrizer {
    pub fn sym(arcs: &[usize]) -> Self {
        Self { arcs: arcs.to_vec(), signed: false }
    }

    pub fn alt(arcs: &[usize]) -> Self {
        Self { arcs: arcs.to_vec(), signed: true }
    }
}

fn parity(perm: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// `Σ_σ (±1) P_σ(u)` over permutations `σ` of the chosen arcs of `A_d(m)`.
pub fn symmetrize(u: &SparseVector, m: usize, d: usize, s: &StrandSymmetrizer) -> Result<SparseVector> {
    if let Some(a) = s.arcs.iter().find(|a| **a >= m) {
        return Err(DecompError::ArcOutOfRange { arc: *a, n: m });
    }
    let mut acc = SparseVector::zero();
    for p in (0..s.arcs.len()).permutations(s.arcs.len()) {
        let mut perm: Vec<usize> = (0..m).collect();
        for (i, j) in p.iter().enumerate() {
            perm[s.arcs[i]] = s.arcs[*j];
        }
        let img = act_a(&Hom::permutation(&perm), d, u)?;
        let sign = if s.signed { parity(&p) } else { 1 };
        acc = acc.add_scaled(&img, &int(sign));
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    /// The fully symmetrized element `P'`.
    Prime,
    /// The doubly antisymmetrized element `P''`.
    DoublePrime,
}

/// `c ⊗ c` style diagram: chords on arcs `(a, b)` and `(c, e)` of `A_2(4)`.
pub fn two_chords(a: usize, b: usize, c: usize, e: usize) -> JacobiDiagram {
    JacobiDiagram::chords(4, &[(a, b), (c, e)])
}

fn coords_a(a: &SpaceA, d: &JacobiDiagram) -> Result<SparseVector> {
    Ok(a.diagram_coords(d)?)
}

/// `P'` (sym over all four arcs of the chords on arcs 1–2 and 3–4) or `P''`
/// (alt over arcs 1, 2 and over arcs 3, 4 of the chords on 1–3 and 2–4),
/// in coordinates of `A_2(4)`.
pub fn construct_p(which: Which) -> Result<SparseVector> {
    let a = space_a(4, 2)?;
    match which {
        Which::Prime => symmetrize(&coords_a(&a, &two_chords(0, 1, 2, 3))?, 4, 2, &StrandSymmetrizer::sym(&[0, 1, 2, 3])),
        Which::DoublePrime => {
            let x = symmetrize(&coords_a(&a, &two_chords(0, 2, 1, 3))?, 4, 2, &StrandSymmetrizer::alt(&[0, 1]))?;
            symmetrize(&x, 4, 2, &StrandSymmetrizer::alt(&[2, 3]))
        }
    }
}

/// Homomorphisms `F_n -> F_4` sending `x_s` to a product of the `x_t`
/// with `target[t] = s`, one per ordering of each product. Under `A_2`
/// they relabel arc `t` of a diagram on four arcs as arc `target[t]`.
pub fn relabel_homs(target: &[usize], n: usize) -> Vec<Hom> {
    let groups: Vec<Vec<usize>> = (0..n).map(|s| (0..target.len()).filter(|t| target[*t] == s).collect()).collect();
    let orders: Vec<Vec<Vec<usize>>> = groups.iter().map(|g| g.iter().copied().permutations(g.len()).collect()).collect();
    orders
        .iter()
        .map(|o| o.iter())
        .multi_cartesian_product()
        .map(|choice| {
            let images = choice
                .iter()
                .map(|ord| Word::from_pairs(&ord.iter().map(|t| (*t, 1)).collect::<Vec<_>>()))
                .collect();
            Hom::new(n, target.len(), images).expect("ranks match")
        })
        .collect()
}

/// `P_{ijkl}`: the image of `p` under relabeling arc `t` as `target[t]`,
/// with products taken in increasing order.
pub fn relabel(p: &SparseVector, target: &[usize], n: usize) -> Result<SparseVector> {
    let h = relabel_homs(target, n).into_iter().next().expect("at least one hom");
    Ok(act_a(&h, 2, p)?)
}

/// The two terms subtracted in the symmetrizer identity:
/// `(P''_{1324}, P''_{1423})`.
pub fn alt_terms() -> Result<(SparseVector, SparseVector)> {
    let p = construct_p(Which::DoublePrime)?;
    Ok((relabel(&p, &[0, 2, 1, 3], 4)?, relabel(&p, &[0, 3, 1, 2], 4)?))
}

/// `A_2'(n)` or `A_2''(n)` as a subspace of `A_2(n)` coordinates: the
/// span of the images of `P` under every arc relabeling `[4] -> [n]`.
pub fn span_a2(which: Which, n: usize) -> Result<Subspace> {
    let p = construct_p(which)?;
    let src = space_a(4, 2)?;
    let dst = space_a(n, 2)?;
    let mut rows = Vec::new();
    for target in (0..4).map(|_| 0..n).multi_cartesian_product() {
        for h in relabel_homs(&target, n) {
            rows.push(act_a_in(&h, &src, &dst, &p, READING)?);
        }
    }
    Ok(rref(&rows))
}

/// `gr^k` of a subspace `w` of `A_d(n)`: `(w ∩ F_k + F_{k+1}) / F_{k+1}`, in
/// grade-`k` coordinates.
pub fn graded_piece(a: &SpaceA, w: &Subspace, k: usize) -> Result<Subspace> {
    let meet = w.intersect(&a.filtration(k));
    let rows = meet.rows().iter().map(|r| a.gr_coords(r, k)).collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(rref(&rows))
}

/// `theta(gr^k w)` as a subspace of `B_{d,k}(n)` coordinates.
pub fn theta_image(w: &Subspace, n: usize, d: usize, k: usize) -> Result<Subspace> {
    let p = pbw(n, d)?;
    let meet = w.intersect(&p.a.filtration(k));
    let rows = meet.rows().iter().map(|r| p.theta(k, r)).collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(rref(&rows))
}

fn two_struts(n: usize, colors: [u32; 4]) -> OpenJacobiDiagram {
    OpenJacobiDiagram::new(n, &[(0, colors[0]), (1, colors[1]), (2, colors[2]), (3, colors[3])], &[], &[(0, 1), (2, 3)])
        .expect("two struts")
}

/// `B'_{2,0}(n)`: spanned by the full pairing symmetrizations
/// `d_ab d_ce + d_ac d_be + d_ae d_bc`.
pub fn b_prime_20(b: &SpaceB) -> Result<Subspace> {
    let n = b.n() as u32;
    let mut rows = Vec::new();
    for m in (0..n).combinations_with_replacement(4) {
        let mut v = OpenVector::new();
        for [a, x, c, e] in [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]] {
            v.push(&two_struts(b.n(), [m[a], m[x], m[c], m[e]]), int(1)).map_err(SpaceError::from)?;
        }
        rows.push(b.coords(&v)?);
    }
    Ok(rref(&rows))
}

/// `B''_{2,0}(n)`: the kernel of multiplying the four colors together.
pub fn b_double_prime_20(b: &SpaceB) -> Result<Subspace> {
    let mut monomials: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let rows: Vec<SparseVector> = (0..b.dim())
        .map(|i| {
            let key = b.basis_diagram(i).colors().to_vec();
            let next = monomials.len();
            SparseVector::unit(*monomials.entry(key).or_insert(next))
        })
        .collect();
    Ok(left_kernel(&rows))
}

/// A partition, stored weakly decreasing without zero parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: &[usize]) -> Self {
        let mut p: Vec<usize> = parts.iter().copied().filter(|x| *x > 0).collect();
        p.sort_unstable_by(|a, b| b.cmp(a));
        Partition(p)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|x| x.to_string()).join(","))
    }
}

/// `dim S_λ(K^n)` by the hook content formula.
pub fn hook_content_dim(lambda: &Partition, n: usize) -> u64 {
    let p = &lambda.0;
    let conj: Vec<usize> = (0..p.first().copied().unwrap_or(0)).map(|j| p.iter().filter(|r| **r > j).count()).collect();
    let (mut num, mut den) = (1u128, 1u128);
    for (i, row) in p.iter().enumerate() {
        for (j, col) in conj.iter().enumerate().take(*row) {
            let content = n as i64 + j as i64 - i as i64;
            if content <= 0 {
                return 0;
            }
            num *= content as u128;
            den *= (row - j + col - i - 1) as u128;
        }
    }
    (num / den) as u64
}

/// Number of semistandard tableaux of shape `lambda` and content `mu`.
pub fn kostka(lambda: &Partition, mu: &[usize]) -> u64 {
    fn strips(outer: &[usize], size: usize, idx: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        // inner[idx] ranges over outer[idx+1]..=outer[idx]
        if idx == outer.len() {
            if size == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = outer.get(idx + 1).copied().unwrap_or(0);
        let hi = outer[idx];
        for v in lo..=hi {
            let removed = outer[idx] - v;
            if removed > size {
                continue;
            }
            cur.push(v);
            strips(outer, size - removed, idx + 1, cur, out);
            cur.pop();
        }
    }
    fn go(shape: &[usize], mu: &[usize]) -> u64 {
        let total: usize = shape.iter().sum();
        match mu.split_last() {
            None => (total == 0) as u64,
            Some((last, rest)) => {
                if *last > total {
                    return 0;
                }
                let mut inners = Vec::new();
                strips(shape, *last, 0, &mut Vec::new(), &mut inners);
                inners
                    .iter()
                    .map(|inner| {
                        let trimmed: Vec<usize> = inner.iter().copied().filter(|x| *x > 0).collect();
                        go(&trimmed, rest)
                    })
                    .sum()
            }
        }
    }
    go(&lambda.0, mu)
}

/// Decomposes a polynomial representation of `GL_n` given by the weights
/// (color-count vectors) of a weight basis, by peeling off Schur
/// polynomials from the top dominant weight down.
pub fn schur_decompose(weights: &[Vec<usize>], n: usize) -> Result<BTreeMap<Partition, usize>> {
    let mut dominant: BTreeMap<Partition, i64> = BTreeMap::new();
    for w in weights {
        if w.len() != n {
            return Err(DecompError::WeightLength(n));
        }
        if w.windows(2).all(|p| p[0] >= p[1]) {
            *dominant.entry(Partition::new(w)).or_insert(0) += 1;
        }
    }
    let mut out = BTreeMap::new();
    let keys: Vec<Partition> = dominant.keys().rev().cloned().collect();
    for mu in keys {
        let m = dominant[&mu];
        if m < 0 {
            return Err(DecompError::NegativeMultiplicity(mu));
        }
        if m == 0 {
            continue;
        }
        for (nu, c) in dominant.iter_mut() {
            if nu.size() == mu.size() && nu <= &mu {
                *c -= m * kostka(&mu, nu.parts()) as i64;
            }
        }
        out.insert(mu, m as usize);
    }
    Ok(out)
}

/// Weights of the basis of a `B` space.
pub fn weights(b: &SpaceB) -> Vec<Vec<usize>> {
    (0..b.dim())
        .map(|i| {
            let mut w = vec![0; b.n()];
            for c in b.basis_diagram(i).colors() {
                w[*c as usize] += 1;
            }
            w
        })
        .collect()
}

/// Schur decomposition of `B_d(n) = ⊕_k B_{d,k}(n)`.
pub fn schur_decompose_b(n: usize, d: usize) -> Result<BTreeMap<Partition, usize>> {
    let p = pbw(n, d)?;
    let w: Vec<Vec<usize>> = p.b.iter().flat_map(|b| weights(b)).collect();
    schur_decompose(&w, n)
}

/// Closure of a set of vectors under a list of automorphisms.
#[derive(Clone, Debug)]
pub struct SubmoduleReport {
    pub generators: Vec<String>,
    pub closure: Subspace,
    pub iterations: usize,
}

/// Smallest subspace of `A_d(n)` containing `vs` and stable under every
/// generator and its inverse.
pub fn submodule_closure(vs: &[SparseVector], gens: &[Automorphism], d: usize) -> Result<SubmoduleReport> {
    let all: Vec<Automorphism> = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    let mut span = rref(vs);
    let mut iterations = 0;
    loop {
        iterations += 1;
        let mut rows = span.rows().to_vec();
        for g in &all {
            for r in span.rows() {
                rows.push(act_aut(g, d, r)?);
            }
        }
        let next = rref(&rows);
        if next.dim() == span.dim() {
            break;
        }
        span = next;
    }
    Ok(SubmoduleReport { generators: gens.iter().map(|g| g.name().to_string()).collect(), closure: span, iterations })
}

/// Matrix of `u ↦ u·g` on the span of `basis`; row `i` is the image of
/// `basis[i]` in that basis.
pub fn rep_matrix(g: &Automorphism, basis: &[SparseVector], d: usize) -> Result<Matrix> {
    if rref(basis).dim() != basis.len() {
        return Err(DecompError::DependentBasis);
    }
    basis
        .iter()
        .map(|b| {
            let img = act_aut(g, d, b)?;
            express(basis, &img).ok_or_else(|| DecompError::NotInvariant(g.name().to_string()))
        })
        .collect()
}

/// Orientation sign of the bubble lifts in [`n2_basis`] under which the
/// generator matrices take their standard form.
pub const BUBBLE_SIGN: i64 = -1;

/// The basis `{u, u_{1,1}, u_{1,2}, u_{2,2}}` of `A_2''(2)`, in coordinates
/// of `A_2(2)`. Here `u = 2 c_{1,1}c_{2,2} − (parallel) − (crossed)` where
/// the last two have both chords joining arcs 1 and 2, and `u_{i,j}` is a
/// multiple (`1/2`, `1`, `1/2`) of the lift of the bubble with legs colored
/// `i, j`, taken with the given orientation sign.
pub fn n2_basis(bubble_sign: i64) -> Result<Vec<SparseVector>> {
    let p = pbw(2, 2)?;
    let a = &p.a;
    let x = JacobiDiagram::chords(2, &[(0, 0), (1, 1)]);
    let y = JacobiDiagram::chords(2, &[(0, 1), (0, 1)]);
    let z = JacobiDiagram::new(2, &[vec![0, 1], vec![2, 3]], &[], &[(0, 3), (1, 2)]).expect("crossed chords");
    let mut u = JacobiVector::new();
    for (dg, c) in [(x, 2), (y, -1), (z, -1)] {
        u.push(&dg, int(c)).map_err(SpaceError::from)?;
    }
    let mut out = vec![a.coords(&u)?];
    for (i, j, c) in [(0, 0, ratio(1, 2)), (0, 1, int(1)), (1, 1, ratio(1, 2))] {
        let b = p.b[2].diagram_coords(&OpenJacobiDiagram::bubble(2, i, j))?;
        out.push(p.lift(2, &b)?.scale(&(c * int(bubble_sign))));
    }
    Ok(out)
}

/// Diagonal `D` with `D M D⁻¹ = target`, if one exists with nonzero entries
/// and `D_00 = 1`; used to relate two normalizations of the same basis.
pub fn diagonal_conjugator(m: &Matrix, target: &Matrix) -> Option<Vec<Scalar>> {
    let n = m.len();
    let mut dg: Vec<Option<Scalar>> = vec![None; n];
    if n == 0 {
        return Some(vec![]);
    }
    dg[0] = Some(int(1));
    // propagate ratios d_i / d_j = target_ij / m_ij along nonzero entries
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                if m[i][j].is_zero() || target[i][j].is_zero() {
                    continue;
                }
                let r = &target[i][j] / &m[i][j];
                match (&dg[i], &dg[j]) {
                    (Some(di), None) => {
                        dg[j] = Some(di / &r);
                        changed = true;
                    }
                    (None, Some(dj)) => {
                        dg[i] = Some(dj * &r);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
    }
    let dg: Vec<Scalar> = dg.into_iter().map(|x| x.unwrap_or_else(|| int(1))).collect();
    let ok = (0..n).all(|i| (0..n).all(|j| &dg[i] * &m[i][j] / &dg[j] == target[i][j]));
    ok.then_some(dg)
}
