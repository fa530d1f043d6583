//! Functorial actions: free-group homomorphisms act on `A_d` by cabling,
//! integer matrices act on `B_d` by recoloring.
//!
//! Variance: `h: F_p -> F_q` induces `A_d(h): A_d(q) -> A_d(p)`. Output arc
//! `i` carries the word `h(x_i)`; every leg on input arc `j` is sent to one
//! occurrence of `x_j^{±1}` among those words, in all possible ways. Legs
//! sharing an occurrence keep their order for `x_j` and reverse it, each
//! picking up a sign, for `x_j⁻¹`. Occurrences are laid out along an output
//! arc according to [`Reading`].

use rayon::prelude::*;
use thiserror::Error;

use crate::diagrams::{DiagramError, Graph, JacobiDiagram, OpenJacobiDiagram};
use crate::exactlin::{int, Matrix, Scalar, SparseVector};
use crate::freegroup::{Automorphism, Hom};
use crate::spaces::{space_a, space_b, pbw, SpaceA, SpaceB, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
}

pub type Result<T> = std::result::Result<T, ActionError>;

/// Order in which the letters of `h(x_i)` are met along output arc `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reading {
    /// The last letter comes first along the arc orientation. This matches
    /// the convention that the loop product `γ2 γ1` traverses `γ1` first.
    Backward,
    /// The first letter comes first.
    Forward,
}

pub const READING: Reading = Reading::Backward;

/// One occurrence of a generator in the image words.
#[derive(Clone, Copy, Debug)]
struct Occurrence {
    arc: u32,
    slot: u32,
    exp: i8,
}

fn occurrences(h: &Hom, reading: Reading) -> Vec<Vec<Occurrence>> {
    let mut occ = vec![Vec::new(); h.target()];
    for (i, w) in h.images().iter().enumerate() {
        let len = w.len();
        for (r, l) in w.letters().iter().enumerate() {
            let slot = match reading {
                Reading::Forward => r,
                Reading::Backward => len - 1 - r,
            };
            occ[l.gen as usize].push(Occurrence { arc: i as u32, slot: slot as u32, exp: l.exp });
        }
    }
    occ
}

/// All terms of the cabling of one diagram on `h.target()` arcs, as
/// `(canonical diagram on h.source() arcs, sign)`.
pub fn cable(h: &Hom, d: &JacobiDiagram, reading: Reading) -> Result<Vec<(JacobiDiagram, i64)>> {
    if d.n() != h.target() {
        return Err(ActionError::RankMismatch(format!("diagram on {} arcs, hom into F_{}", d.n(), h.target())));
    }
    let g = d.graph();
    let occ = occurrences(h, reading);
    let legs = g.legs();
    let labels = g.labels();
    // Position of each leg along its input arc.
    let mut pos = vec![0u32; legs];
    for i in 1..legs {
        if labels[i] == labels[i - 1] {
            pos[i] = pos[i - 1] + 1;
        }
    }
    let choices: Vec<&[Occurrence]> = labels.iter().map(|a| occ[*a as usize].as_slice()).collect();
    if choices.iter().any(|c| c.is_empty()) {
        return Ok(vec![]);
    }
    let base = g.to_builder();
    let mut out = Vec::new();
    let mut pick = vec![0usize; legs];
    loop {
        let mut b = base.clone();
        let mut sign = 1i64;
        for (leg, c) in pick.iter().enumerate() {
            let o = choices[leg][*c];
            let within = if o.exp > 0 { pos[leg] } else { u32::MAX - pos[leg] };
            sign *= o.exp as i64;
            b.legs[leg].label = o.arc;
            b.legs[leg].key = (o.slot, within);
        }
        let j = JacobiDiagram::from_graph(h.source(), b.pack()?)?.canonical()?;
        out.push((j, sign));
        // advance the odometer
        let mut k = legs;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
        }
    }
}

/// `A_d(h)(x)` between explicitly given spaces, in quotient coordinates.
pub fn act_a_in(h: &Hom, src: &SpaceA, dst: &SpaceA, x: &SparseVector, reading: Reading) -> Result<SparseVector> {
    if src.n() != h.target() || dst.n() != h.source() || src.d() != dst.d() {
        return Err(ActionError::RankMismatch(format!(
            "hom F_{} -> F_{} between A_{}({}) and A_{}({})",
            h.source(),
            h.target(),
            src.d(),
            src.n(),
            dst.d(),
            dst.n()
        )));
    }
    let parts: Vec<Result<Vec<(usize, Scalar)>>> = x
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|(i, c)| {
            let terms = cable(h, src.basis_diagram(*i), reading)?;
            terms
                .into_iter()
                .map(|(j, s)| {
                    let idx = dst
                        .ambient_index(j.graph())
                        .ok_or(SpaceError::ForeignDiagram { n: dst.n(), d: dst.d() })?;
                    Ok((idx, (*c).clone() * int(s)))
                })
                .collect()
        })
        .collect();
    let mut entries = Vec::new();
    for p in parts {
        entries.extend(p?);
    }
    Ok(dst.reduce_ambient(&SparseVector::from_entries(entries)))
}

/// `A_d(h): A_d(q) -> A_d(p)` for `h: F_p -> F_q`, in quotient coordinates.
pub fn act_a(h: &Hom, d: usize, x: &SparseVector) -> Result<SparseVector> {
    let src = space_a(h.target(), d)?;
    let dst = space_a(h.source(), d)?;
    act_a_in(h, &src, &dst, x, READING)
}

/// Matrix of `A_d(h)`; row `i` is the image of basis vector `i`.
pub fn act_a_matrix(h: &Hom, d: usize) -> Result<Matrix> {
    let src = space_a(h.target(), d)?;
    let dst = space_a(h.source(), d)?;
    (0..src.dim())
        .map(|i| Ok(act_a_in(h, &src, &dst, &SparseVector::unit(i), READING)?.to_dense(dst.dim())))
        .collect()
}

/// The right action `u·g := A_d(g)(u)`.
pub fn act_aut(g: &Automorphism, d: usize, x: &SparseVector) -> Result<SparseVector> {
    act_a(g.hom(), d, x)
}

/// Recolors the legs of one open diagram by `m` (`m[i][j]` is the
/// coefficient of `v_j` in the image of `v_i`), expanded multilinearly.
pub fn recolor(m: &[Vec<i64>], p: usize, d: &OpenJacobiDiagram) -> Result<Vec<(OpenJacobiDiagram, Scalar)>> {
    let g: &Graph = d.graph();
    let labels = g.labels();
    let options: Vec<Vec<(u32, i64)>> = labels
        .iter()
        .map(|c| {
            m[*c as usize]
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(j, x)| (j as u32, *x))
                .collect()
        })
        .collect();
    if options.iter().any(|o| o.is_empty()) {
        return Ok(vec![]);
    }
    let base = g.to_builder();
    let mut out = Vec::new();
    let mut pick = vec![0usize; labels.len()];
    loop {
        let mut b = base.clone();
        let mut coeff = 1i64;
        for (leg, c) in pick.iter().enumerate() {
            let (color, x) = options[leg][*c];
            b.legs[leg].label = color;
            coeff *= x;
        }
        let (canon, s) = OpenJacobiDiagram::from_graph(p, b.pack()?)?.canonical()?;
        if s != 0 {
            out.push((canon, int(coeff * s as i64)));
        }
        let mut k = labels.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < options[k].len() {
                break;
            }
            pick[k] = 0;
        }
    }
}

/// `B_{d,k}(M)` for `M` a `q × p` integer matrix, between given spaces.
pub fn act_b_in(m: &[Vec<i64>], src: &SpaceB, dst: &SpaceB, y: &SparseVector) -> Result<SparseVector> {
    let q = src.n();
    let p = dst.n();
    if m.len() != q || m.iter().any(|r| r.len() != p) || src.d() != dst.d() || src.k() != dst.k() {
        return Err(ActionError::RankMismatch(format!("{}×{} matrix from B({q}) to B({p})", m.len(), m.first().map_or(0, |r| r.len()))));
    }
    let mut acc = crate::spaces::OpenVector::new();
    for (i, c) in y.iter() {
        for (dg, x) in recolor(m, p, src.basis_diagram(i))? {
            acc.add_canonical(dg, x * c);
        }
    }
    Ok(dst.coords(&acc)?)
}

/// `B_{d,k}(M): B_{d,k}(q) -> B_{d,k}(p)` for a `q × p` integer matrix.
pub fn act_b(m: &[Vec<i64>], d: usize, k: usize, y: &SparseVector) -> Result<SparseVector> {
    let q = m.len();
    let p = m.first().map_or(0, |r| r.len());
    let (src, dst) = (space_b(q, d, k)?, space_b(p, d, k)?);
    act_b_in(m, &src, &dst, y)
}

/// Per-grade outcome of [`naturality_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeReport {
    pub k: usize,
    pub checked: usize,
    /// Basis indices of `B_{d,k}(q)` where the square fails to commute.
    pub failures: Vec<usize>,
}

impl GradeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `theta ∘ gr(A_d(h)) = B_d(ab(h)) ∘ theta` on a basis of every
/// graded piece.
pub fn naturality_check(h: &Hom, d: usize) -> Result<Vec<GradeReport>> {
    let src = pbw(h.target(), d)?;
    let dst = pbw(h.source(), d)?;
    let ab = h.abelianize();
    let mut out = Vec::new();
    for k in 0..src.b.len() {
        let mut failures = Vec::new();
        for i in 0..src.b[k].dim() {
            let y = SparseVector::unit(i);
            let x = src.lift(k, &y)?;
            let z = act_a_in(h, &src.a, &dst.a, &x, READING)?;
            let ok = match dst.theta(k, &z) {
                Ok(lhs) => lhs == act_b_in(&ab, &src.b[k], &dst.b[k], &y)?,
                Err(_) => false,
            };
            if !ok {
                failures.push(i);
            }
        }
        out.push(GradeReport { k, checked: src.b[k].dim(), failures });
    }
    Ok(out)
}

/// Whether `A_d(h)` maps every `F_k` into `F_k`.
pub fn preserves_filtration(h: &Hom, d: usize) -> Result<bool> {
    let src = space_a(h.target(), d)?;
    let dst = space_a(h.source(), d)?;
    for i in 0..src.dim() {
        let t = src.basis_diagram(i).trivalent_count();
        let img = act_a_in(h, &src, &dst, &SparseVector::unit(i), READING)?;
        if !dst.in_filtration(&img, t) {
            return Ok(false);
        }
    }
    Ok(true)
}
