use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use jacobi_core::actions::act_a;
use jacobi_core::decomp::{
    construct_p, graded_piece, hook_content_dim, kostka, n2_basis, rep_matrix, schur_decompose, schur_decompose_b,
    span_a2, submodule_closure, symmetrize, weights, DecompError, Partition, StrandSymmetrizer, Which, BUBBLE_SIGN,
};
use jacobi_core::diagrams::JacobiDiagram;
use jacobi_core::exactlin::{identity, int, SparseVector};
use jacobi_core::freegroup::{nielsen_generators, Automorphism, Hom};
use jacobi_core::spaces::{pbw, space_a, space_b};

fn chords(n: usize, pairs: &[(usize, usize)]) -> SparseVector {
    space_a(n, pairs.len()).unwrap().diagram_coords(&JacobiDiagram::chords(n, pairs)).unwrap()
}

#[test]
fn symmetrizer_examples() {
    let c11 = chords(2, &[(0, 0)]);
    let c22 = chords(2, &[(1, 1)]);
    assert_eq!(symmetrize(&c11, 2, 1, &StrandSymmetrizer::sym(&[0])).unwrap(), c11);
    let alt = StrandSymmetrizer::alt(&[0, 1]);
    let once = symmetrize(&c11, 2, 1, &alt).unwrap();
    assert_eq!(once, c11.sub(&c22));
    assert_eq!(symmetrize(&once, 2, 1, &alt).unwrap(), once.scale(&int(2)));
    assert!(matches!(
        symmetrize(&c11, 2, 1, &StrandSymmetrizer::sym(&[0, 2])),
        Err(DecompError::ArcOutOfRange { .. })
    ));
}

#[test]
fn symmetrized_elements_transform_correctly() {
    let pp = construct_p(Which::Prime).unwrap();
    let ppp = construct_p(Which::DoublePrime).unwrap();
    for (i, j) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
        let mut perm = vec![0, 1, 2, 3];
        perm.swap(i, j);
        assert_eq!(act_a(&Hom::permutation(&perm), 2, &pp).unwrap(), pp);
    }
    for swap in [[1, 0, 2, 3], [0, 1, 3, 2]] {
        assert_eq!(act_a(&Hom::permutation(&swap), 2, &ppp).unwrap(), ppp.scale(&int(-1)));
    }
}

#[test]
fn hook_content_values() {
    assert_eq!(hook_content_dim(&Partition::new(&[4]), 3), 15);
    assert_eq!(hook_content_dim(&Partition::new(&[2, 2]), 2), 1);
    assert_eq!(hook_content_dim(&Partition::new(&[1, 1, 1]), 2), 0);
    assert_eq!(hook_content_dim(&Partition::new(&[2, 1]), 3), 8);
    for n in 0..=5 {
        assert_eq!(hook_content_dim(&Partition::new(&[2, 2]), n) as usize, n * n * (n * n).saturating_sub(1) / 12);
    }
}

#[test]
fn kostka_rows_sum_to_dimension() {
    // Σ over weights of length n of K_{λ,μ} equals dim S_λ(K^n)
    fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
        if parts == 0 {
            return if total == 0 { vec![vec![]] } else { vec![] };
        }
        (0..=total)
            .flat_map(|k| {
                compositions(total - k, parts - 1).into_iter().map(move |mut c| {
                    c.insert(0, k);
                    c
                })
            })
            .collect()
    }
    for lambda in [&[3][..], &[2, 1], &[1, 1, 1], &[2, 2], &[3, 1]] {
        let l = Partition::new(lambda);
        for n in 1..=3 {
            let total: u64 = compositions(l.size(), n).iter().map(|mu| kostka(&l, mu)).sum();
            assert_eq!(total, hook_content_dim(&l, n), "{l} at n = {n}");
        }
    }
}

#[test]
fn schur_multiplicities_reproduce_dimensions() {
    for n in 1..=4 {
        let one = schur_decompose_b(n, 1).unwrap();
        assert_eq!(one, BTreeMap::from([(Partition::new(&[2]), 1)]));
        let two = schur_decompose_b(n, 2).unwrap();
        let total: u64 = two.iter().map(|(p, m)| hook_content_dim(p, n) * *m as u64).sum();
        assert_eq!(total as usize, pbw(n, 2).unwrap().a.dim());
    }
    let three = schur_decompose_b(2, 3).unwrap();
    let total: u64 = three.iter().map(|(p, m)| hook_content_dim(p, 2) * *m as u64).sum();
    assert_eq!(total as usize, pbw(2, 3).unwrap().a.dim());
    for k in 0..3 {
        let b = space_b(3, 2, k).unwrap();
        assert_eq!(weights(&b).len(), b.dim());
    }
    assert!(matches!(schur_decompose(&[vec![1, 0]], 3), Err(DecompError::WeightLength(3))));
}

#[test]
fn double_prime_part_has_expected_graded_dims() {
    for n in 1..=4 {
        let a = space_a(n, 2).unwrap();
        let app = span_a2(Which::DoublePrime, n).unwrap();
        let dims: Vec<usize> = (0..3).map(|k| graded_piece(&a, &app, k).unwrap().dim()).collect();
        let s = |p: &[usize]| hook_content_dim(&Partition::new(p), n) as usize;
        assert_eq!(dims, vec![s(&[2, 2]), s(&[1, 1, 1]), s(&[2])], "n = {n}");
    }
}

#[test]
fn closures() {
    let gens = nielsen_generators(3);
    let zero = submodule_closure(&[SparseVector::zero()], &gens, 2).unwrap();
    assert!(zero.closure.is_zero());
    let a = space_a(3, 2).unwrap();
    let f2 = a.filtration(2);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..5 {
        let mut v = SparseVector::zero();
        for r in f2.rows() {
            v = v.add_scaled(r, &int(rng.gen_range(-2..=2)));
        }
        if v.is_zero() {
            continue;
        }
        let c = submodule_closure(&[v], &gens, 2).unwrap();
        assert_eq!(c.closure, f2);
    }
}

#[test]
fn representation_matrices() {
    let basis = n2_basis(BUBBLE_SIGN).unwrap();
    assert_eq!(rep_matrix(&Automorphism::identity(2), &basis, 2).unwrap(), identity(4));
    let not_invariant = vec![chords(2, &[(1, 1), (1, 1)])];
    assert!(matches!(
        rep_matrix(&Automorphism::u12(2).unwrap(), &not_invariant, 2),
        Err(DecompError::NotInvariant(_))
    ));
    let dependent = vec![basis[0].clone(), basis[0].scale(&int(2))];
    assert!(matches!(rep_matrix(&Automorphism::u12(2).unwrap(), &dependent, 2), Err(DecompError::DependentBasis)));
}

#[test]
fn rank_one_double_prime_part_is_trivial() {
    let app = span_a2(Which::DoublePrime, 1).unwrap();
    assert_eq!(app.dim(), 1);
    let s = Automorphism::sigma(1).unwrap();
    for r in app.rows() {
        assert_eq!(&act_a(s.hom(), 2, r).unwrap(), r);
    }
}
