//! Brackets `[u, g] = u·g − u` with IA automorphisms, the graded maps
//! `β^r_{d,k}: B_{d,k}(n) → B_{d,k+r}(n)` they induce, and the ranks of
//! the maps `ρ1`, `ρ2` collecting them over all Magnus generators.

use thiserror::Error;

use crate::actions::{act_aut, ActionError};
use crate::decomp::{b_double_prime_20, DecompError};
use crate::exactlin::{matrix_rank, Matrix, SparseVector};
use crate::freegroup::{magnus_generators, Automorphism, GroupError, IAWord};
use crate::spaces::{pbw, space_a, SpaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BracketError {
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error("{0} does not act trivially on H_1")]
    NotIA(String),
    #[error("bracket word has depth {got}, expected {expected}")]
    Depth { expected: usize, got: usize },
    #[error("[u, g] left F_{0}; the filtration shift failed")]
    FiltrationShift(usize),
    #[error("graded bracket depends on the chosen lift (basis vector {0})")]
    LiftDependence(usize),
    #[error("rho index must be 1 or 2, got {0}")]
    BadRho(usize),
}

pub type Result<T> = std::result::Result<T, BracketError>;

/// `[u, g] = u·g − u` in coordinates of `A_d(n)`.
pub fn bracket(u: &SparseVector, g: &Automorphism, d: usize) -> Result<SparseVector> {
    Ok(act_aut(g, d, u)?.sub(u))
}

/// `u·w` for a bracket word, applying the generators one at a time instead
/// of cabling along the fully expanded commutator.
pub fn act_word(w: &IAWord, d: usize, u: &SparseVector) -> Result<SparseVector> {
    Ok(match w {
        IAWord::Gen(g) => act_aut(g, d, u)?,
        IAWord::Comm(a, b) => {
            // [a, b] = a b a⁻¹ b⁻¹, and u·(gh) = (u·g)·h
            let x = act_word(a, d, u)?;
            let x = act_word(b, d, &x)?;
            let x = act_word_inverse(a, d, &x)?;
            act_word_inverse(b, d, &x)?
        }
    })
}

fn act_word_inverse(w: &IAWord, d: usize, u: &SparseVector) -> Result<SparseVector> {
    Ok(match w {
        IAWord::Gen(g) => act_aut(&g.inverse(), d, u)?,
        // [a, b]⁻¹ = b a b⁻¹ a⁻¹
        IAWord::Comm(a, b) => {
            let x = act_word(b, d, u)?;
            let x = act_word(a, d, &x)?;
            let x = act_word_inverse(b, d, &x)?;
            act_word_inverse(a, d, &x)?
        }
    })
}

fn check_ia(w: &IAWord) -> Result<()> {
    match w {
        IAWord::Gen(g) if !g.is_ia() => Err(BracketError::NotIA(g.name().to_string())),
        IAWord::Gen(_) => Ok(()),
        IAWord::Comm(a, b) => check_ia(a).and(check_ia(b)),
    }
}

/// `[u, w] = u·w − u` for a bracket word `w`.
pub fn bracket_word(u: &SparseVector, w: &IAWord, d: usize) -> Result<SparseVector> {
    Ok(act_word(w, d, u)?.sub(u))
}

/// Like [`bracket`], but refuses automorphisms outside `IA(n)`.
pub fn bracket_ia(u: &SparseVector, g: &Automorphism, d: usize) -> Result<SparseVector> {
    if !g.is_ia() {
        return Err(BracketError::NotIA(g.name().to_string()));
    }
    bracket(u, g, d)
}

/// Matrix of `β^r_{d,k}(g)`; row `i` is the image of basis vector `i` of
/// `B_{d,k}(n)` in coordinates of `B_{d,k+r}(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBracketMap {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub r: usize,
    pub generator: String,
    pub matrix: Matrix,
}

impl GradedBracketMap {
    pub fn apply(&self, y: &SparseVector) -> SparseVector {
        let mut out = SparseVector::zero();
        for (i, c) in y.iter() {
            out = out.add_scaled(&SparseVector::from_dense(&self.matrix[i]), c);
        }
        out
    }

    pub fn rank(&self) -> usize {
        matrix_rank(&self.matrix)
    }
}

/// `β^r_{d,k}(g)` for a bracket word `g` of depth `r`, checked against a
/// second lift.
pub fn beta(d: usize, k: usize, r: usize, g: &IAWord, n: usize) -> Result<GradedBracketMap> {
    if g.depth() != r {
        return Err(BracketError::Depth { expected: r, got: g.depth() });
    }
    check_ia(g)?;
    let p = pbw(n, d)?;
    let target_dim = p.b.get(k + r).map_or(0, |b| b.dim());
    let mut matrix = Vec::with_capacity(p.b[k].dim());
    for i in 0..p.b[k].dim() {
        let y = SparseVector::unit(i);
        let mut images = Vec::with_capacity(2);
        for x in [p.lift(k, &y)?, p.lift_shortcut(k, &y)?] {
            let z = bracket_word(&x, g, d)?;
            if !p.a.in_filtration(&z, k + r) {
                return Err(BracketError::FiltrationShift(k + r));
            }
            images.push(if k + r < p.b.len() { p.theta(k + r, &z)? } else { SparseVector::zero() });
        }
        if images[0] != images[1] {
            return Err(BracketError::LiftDependence(i));
        }
        matrix.push(images[0].to_dense(target_dim));
    }
    Ok(GradedBracketMap { n, d, k, r, generator: g.to_string(), matrix })
}

/// Outcome of [`rho_rank`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoReport {
    pub which: usize,
    pub n: usize,
    pub domain_dim: usize,
    pub rank: usize,
    pub generators: usize,
}

impl RhoReport {
    pub fn injective(&self) -> bool {
        self.rank == self.domain_dim
    }
}

/// Rank of `ρ1: B''_{2,0}(n) → ⊕_g B_{2,1}(n)` or
/// `ρ2: B_{2,1}(n) → ⊕_g B_{2,2}(n)`, with `g` over the Magnus generators.
pub fn rho_rank(which: usize, n: usize) -> Result<RhoReport> {
    let k = match which {
        1 => 0,
        2 => 1,
        w => return Err(BracketError::BadRho(w)),
    };
    let p = pbw(n, 2)?;
    let domain: Vec<SparseVector> = if which == 1 {
        b_double_prime_20(&p.b[0])?.rows().to_vec()
    } else {
        (0..p.b[1].dim()).map(SparseVector::unit).collect()
    };
    let gens = magnus_generators(n);
    let maps = gens
        .iter()
        .map(|g| beta(2, k, 1, &IAWord::gen(g.clone())?, n))
        .collect::<Result<Vec<_>>>()?;
    let rows: Matrix = domain
        .iter()
        .map(|y| maps.iter().flat_map(|m| m.apply(y).to_dense(p.b[k + 1].dim())).collect())
        .collect();
    let rank = if rows.is_empty() { 0 } else { matrix_rank(&rows) };
    Ok(RhoReport { which, n, domain_dim: domain.len(), rank, generators: gens.len() })
}

/// Checks `[F_k, g] ⊆ F_{k+depth}` on every basis vector of `A_d(n)`.
pub fn filtration_shift_holds(g: &IAWord, n: usize, d: usize) -> Result<bool> {
    check_ia(g)?;
    let a = space_a(n, d)?;
    for i in 0..a.dim() {
        let k = a.basis_diagram(i).trivalent_count();
        let z = bracket_word(&SparseVector::unit(i), g, d)?;
        if !a.in_filtration(&z, k + g.depth()) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_with_identity_vanishes() {
        let id = Automorphism::identity(2);
        for i in 0..space_a(2, 2).unwrap().dim() {
            assert!(bracket(&SparseVector::unit(i), &id, 2).unwrap().is_zero());
        }
    }

    #[test]
    fn non_ia_is_rejected() {
        let s = Automorphism::sigma(2).unwrap();
        assert!(matches!(bracket_ia(&SparseVector::unit(0), &s, 2), Err(BracketError::NotIA(_))));
    }

    #[test]
    fn stepwise_action_matches_expanded_word() {
        let g = IAWord::gen(Automorphism::magnus3(3, 2, 0, 1).unwrap()).unwrap();
        let h = IAWord::gen(Automorphism::magnus2(3, 0, 1).unwrap()).unwrap();
        let w = crate::freegroup::commutator(&g, &h);
        let aut = w.evaluate().unwrap();
        for i in 0..space_a(3, 2).unwrap().dim() {
            let u = SparseVector::unit(i);
            assert_eq!(act_word(&w, 2, &u).unwrap(), act_aut(&aut, 2, &u).unwrap());
        }
    }

    #[test]
    fn rho_vanishes_at_rank_two() {
        assert_eq!(rho_rank(1, 2).unwrap().rank, 0);
        assert_eq!(rho_rank(2, 2).unwrap().rank, 0);
    }
}
