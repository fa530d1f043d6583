use proptest::prelude::*;

use jacobi_core::actions::{act_a, act_a_in, act_aut, act_b, naturality_check, preserves_filtration, Reading};
use jacobi_core::diagrams::JacobiDiagram;
use jacobi_core::exactlin::{int, SparseVector};
use jacobi_core::freegroup::{compose, Automorphism, Hom, Word};
use jacobi_core::spaces::{pbw, space_a, SpaceA};

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, prop::bool::ANY), 0..=max_len)
        .prop_map(|v| Word::from_pairs(&v.into_iter().map(|(g, p)| (g, if p { 1 } else { -1 })).collect::<Vec<_>>()))
}

fn hom(n: usize, m: usize, max_len: usize) -> impl Strategy<Value = Hom> {
    prop::collection::vec(word(m, max_len), n).prop_map(move |imgs| Hom::new(n, m, imgs).unwrap())
}

fn basis(n: usize, d: usize) -> Vec<SparseVector> {
    (0..space_a(n, d).unwrap().dim()).map(SparseVector::unit).collect()
}

/// Reverses every arc and multiplies by `(-1)^t`.
fn reverse_arcs(a: &SpaceA, x: &SparseVector) -> SparseVector {
    let mut out = SparseVector::zero();
    for (i, c) in x.iter() {
        let d = a.basis_diagram(i);
        let g = d.graph();
        let arcs: Vec<Vec<u32>> = d.arcs().into_iter().map(|mut a| {
            a.reverse();
            a
        }).collect();
        let tris: Vec<[u32; 3]> = (0..g.trivalent()).map(|v| [0, 1, 2].map(|s| g.tri_half_edge(v, s) as u32)).collect();
        let r = JacobiDiagram::new(d.n(), &arcs, &tris, &g.edges()).unwrap();
        let sign = if g.trivalent() % 2 == 0 { 1 } else { -1 };
        out = out.add_scaled(&a.diagram_coords(&r).unwrap(), &(c * int(sign)));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn action_is_contravariant(g in hom(2, 3, 2), h in hom(3, 2, 2)) {
        // h∘g : F_2 -> F_2 and g∘h : F_3 -> F_3
        let hg = compose(&h, &g).unwrap();
        let gh = compose(&g, &h).unwrap();
        for d in 1..=2 {
            for u in basis(2, d) {
                let lhs = act_a(&hg, d, &u).unwrap();
                let rhs = act_a(&g, d, &act_a(&h, d, &u).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
            for u in basis(3, d) {
                let lhs = act_a(&gh, d, &u).unwrap();
                let rhs = act_a(&h, d, &act_a(&g, d, &u).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn inner_automorphisms_act_trivially(a in word(3, 4)) {
        let g = Automorphism::inner(3, &a).unwrap();
        for u in basis(3, 2) {
            prop_assert_eq!(act_aut(&g, 2, &u).unwrap(), u);
        }
    }

    #[test]
    fn filtration_is_preserved(h in hom(3, 2, 3)) {
        prop_assert!(preserves_filtration(&h, 2).unwrap());
    }

    #[test]
    fn naturality_for_homs_into_smaller_rank(h in hom(3, 2, 3)) {
        for d in 0..=2 {
            for r in naturality_check(&h, d).unwrap() {
                prop_assert!(r.passed(), "grade {} of degree {}", r.k, d);
            }
        }
    }

    #[test]
    fn readings_are_conjugate_by_arc_reversal(h in hom(2, 3, 3)) {
        // A_fwd(h) = R ∘ A_bwd(h) ∘ R with R the signed arc reversal
        for d in 1..=2 {
            let src = space_a(3, d).unwrap();
            let dst = space_a(2, d).unwrap();
            for u in basis(3, d) {
                let fwd = act_a_in(&h, &src, &dst, &u, Reading::Forward).unwrap();
                let bwd = act_a_in(&h, &src, &dst, &reverse_arcs(&src, &u), Reading::Backward).unwrap();
                prop_assert_eq!(fwd, reverse_arcs(&dst, &bwd));
            }
        }
    }

    #[test]
    fn recoloring_is_functorial(a in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 3),
                                b in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 2)) {
        // act_B(M) takes B(q) to B(p) for M of shape q×p
        let p = pbw(3, 2).unwrap();
        let ab: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| (0..2).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect();
        for k in 0..3 {
            for i in 0..p.b[k].dim() {
                let y = SparseVector::unit(i);
                let two_step = act_b(&b, 2, k, &act_b(&a, 2, k, &y).unwrap()).unwrap();
                prop_assert_eq!(act_b(&ab, 2, k, &y).unwrap(), two_step);
            }
        }
    }
}

#[test]
fn reversal_is_an_involution_on_a() {
    for n in 1..=3 {
        let a = space_a(n, 2).unwrap();
        for u in basis(n, 2) {
            assert_eq!(reverse_arcs(&a, &reverse_arcs(&a, &u)), u);
        }
    }
}

#[test]
fn identity_and_permutations() {
    for u in basis(3, 2) {
        assert_eq!(act_a(&Hom::identity(3), 2, &u).unwrap(), u);
        let p = Hom::permutation(&[1, 2, 0]);
        let q = Hom::permutation(&[2, 0, 1]);
        assert_eq!(act_a(&q, 2, &act_a(&p, 2, &u).unwrap()).unwrap(), u);
    }
}

#[test]
fn rank_mismatch_is_an_error() {
    let h = Hom::parse(2, 3, &["x1", "x2"]).unwrap();
    let src = space_a(2, 1).unwrap();
    let dst = space_a(2, 1).unwrap();
    assert!(act_a_in(&h, &src, &dst, &SparseVector::unit(0), Reading::Backward).is_err());
}
