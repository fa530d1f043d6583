use num_traits::Zero;
use proptest::prelude::*;

use jacobi_core::exactlin::{
    express, int, invert, left_kernel, matmul, matrix_rank, quotient, rref, Matrix, SparseVector, Subspace,
};

/// Fraction-free Gaussian elimination over i128; independent of the crate.
fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|x| *x as i128).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|r| m[*r][c] != 0) else { continue };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for k in c + 1..cols {
                m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
            }
            m[r][c] = 0;
        }
        prev = m[rank][c];
        rank += 1;
    }
    rank
}

fn sparse(r: &[i64]) -> SparseVector {
    SparseVector::from_entries(r.iter().enumerate().map(|(i, x)| (i, int(*x))))
}

fn dense(rows: &[Vec<i64>]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|x| int(*x)).collect()).collect()
}

fn small_matrix(max_rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), 0..=max_rows)
}

proptest! {
    #[test]
    fn rank_matches_bareiss(rows in small_matrix(7, 6)) {
        let s = rref(&rows.iter().map(|r| sparse(r)).collect::<Vec<_>>());
        prop_assert_eq!(s.dim(), bareiss_rank(&rows));
    }

    #[test]
    fn rref_is_canonical(rows in small_matrix(6, 5), seed in any::<u64>()) {
        let vs: Vec<SparseVector> = rows.iter().map(|r| sparse(r)).collect();
        let a = rref(&vs);
        // a different spanning set of the same space: reversed order plus
        // pairwise sums
        let mut other: Vec<SparseVector> = vs.iter().rev().cloned().collect();
        for w in vs.windows(2) {
            other.push(w[0].add_scaled(&w[1], &int((seed % 5) as i64 - 2)));
        }
        prop_assert_eq!(a, rref(&other));
    }

    #[test]
    fn reduce_is_idempotent(rows in small_matrix(5, 5), v in prop::collection::vec(-4i64..=4, 5)) {
        let s = rref(&rows.iter().map(|r| sparse(r)).collect::<Vec<_>>());
        let r = s.reduce(&sparse(&v));
        prop_assert_eq!(s.reduce(&r), r.clone());
        prop_assert!(s.contains(&sparse(&v).sub(&r)));
    }

    #[test]
    fn sum_and_intersection_dimensions(a in small_matrix(4, 5), b in small_matrix(4, 5)) {
        let u = rref(&a.iter().map(|r| sparse(r)).collect::<Vec<_>>());
        let w = rref(&b.iter().map(|r| sparse(r)).collect::<Vec<_>>());
        let meet = u.intersect(&w);
        prop_assert_eq!(u.sum(&w).dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(u.contains_all(&meet) && w.contains_all(&meet));
    }

    #[test]
    fn quotient_dimension_formula(amb in small_matrix(5, 5), rel in small_matrix(3, 5)) {
        let a: Vec<SparseVector> = amb.iter().map(|r| sparse(r)).collect();
        let r: Vec<SparseVector> = rel.iter().map(|r| sparse(r)).collect();
        let q = quotient(&a, &r);
        let all: Vec<SparseVector> = a.iter().chain(&r).cloned().collect();
        prop_assert_eq!(q.dim() + q.relation_rank(), rref(&all).dim());
        for v in &r {
            prop_assert!(q.is_zero_class(v));
        }
    }

    #[test]
    fn left_kernel_annihilates(rows in small_matrix(6, 4)) {
        let vs: Vec<SparseVector> = rows.iter().map(|r| sparse(r)).collect();
        let ker = left_kernel(&vs);
        prop_assert_eq!(ker.dim() + rref(&vs).dim(), vs.len());
        for x in ker.rows() {
            let mut acc = SparseVector::zero();
            for (i, c) in x.iter() {
                acc = acc.add_scaled(&vs[i], c);
            }
            prop_assert!(acc.is_zero());
        }
    }

    #[test]
    fn express_recovers_coefficients(rows in small_matrix(4, 6), coeffs in prop::collection::vec(-3i64..=3, 4)) {
        let vs: Vec<SparseVector> = rows.iter().map(|r| sparse(r)).collect();
        prop_assume!(rref(&vs).dim() == vs.len());
        let mut v = SparseVector::zero();
        for (b, c) in vs.iter().zip(&coeffs) {
            v = v.add_scaled(b, &int(*c));
        }
        let got = express(&vs, &v).unwrap();
        prop_assert_eq!(got, coeffs.iter().take(vs.len()).map(|c| int(*c)).collect::<Vec<_>>());
    }

    #[test]
    fn inverse_when_full_rank(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 4)) {
        let m = dense(&rows);
        match invert(&m) {
            Some(inv) => {
                prop_assert_eq!(bareiss_rank(&rows), 4);
                let id = matmul(&m, &inv);
                for (i, r) in id.iter().enumerate() {
                    for (j, c) in r.iter().enumerate() {
                        prop_assert_eq!(c.clone(), if i == j { int(1) } else { int(0) });
                    }
                }
            }
            None => prop_assert!(bareiss_rank(&rows) < 4),
        }
        prop_assert_eq!(matrix_rank(&m), bareiss_rank(&rows));
    }
}

#[test]
fn zero_subspace_behaves() {
    let z = Subspace::zero();
    assert!(z.contains(&SparseVector::zero()));
    assert!(!z.contains(&SparseVector::unit(3)));
    assert!(z.intersect(&Subspace::coordinate(0..4)).is_zero());
    assert!(int(0).is_zero());
}
