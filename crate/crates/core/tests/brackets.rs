use proptest::prelude::*;

use jacobi_core::actions::{act_aut, act_b};
use jacobi_core::bracket::{beta, bracket, bracket_word, filtration_shift_holds, BracketError};
use jacobi_core::exactlin::SparseVector;
use jacobi_core::freegroup::{commutator, magnus_generators, nielsen_generators, Automorphism, IAWord};
use jacobi_core::spaces::space_a;

fn gen(g: &Automorphism) -> IAWord {
    IAWord::gen(g.clone()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bracket_product_rule(i in 0usize..9, j in 0usize..9) {
        // [u, gh] = [u, g] + [u, h] + [[u, g], h]
        let gens = magnus_generators(3);
        let (g, h) = (&gens[i], &gens[j]);
        let gh = g.mul(h).unwrap();
        for idx in 0..space_a(3, 2).unwrap().dim() {
            let u = SparseVector::unit(idx);
            let ug = bracket(&u, g, 2).unwrap();
            let rhs = ug.add(&bracket(&u, h, 2).unwrap()).add(&bracket(&ug, h, 2).unwrap());
            prop_assert_eq!(bracket(&u, &gh, 2).unwrap(), rhs);
        }
    }

    #[test]
    fn beta_is_additive(i in 0usize..9, j in 0usize..9, k in 0usize..=1) {
        let gens = magnus_generators(3);
        let gh = IAWord::gen(gens[i].mul(&gens[j]).unwrap()).unwrap();
        let sum = beta(2, k, 1, &gen(&gens[i]), 3).unwrap();
        let other = beta(2, k, 1, &gen(&gens[j]), 3).unwrap();
        let prod = beta(2, k, 1, &gh, 3).unwrap();
        for y in 0..sum.matrix.len() {
            let e = SparseVector::unit(y);
            prop_assert_eq!(sum.apply(&e).add(&other.apply(&e)), prod.apply(&e));
        }
    }

    #[test]
    fn beta_is_equivariant(i in 0usize..9, p in 0usize..5, k in 0usize..=1) {
        // β(φ⁻¹gφ)(y·φ) = β(g)(y)·φ
        let g = &magnus_generators(3)[i];
        let phi = &nielsen_generators(3)[p];
        let conj = phi.inverse().mul(g).unwrap().mul(phi).unwrap();
        let ab = phi.hom().abelianize();
        let b_g = beta(2, k, 1, &gen(g), 3).unwrap();
        let b_conj = beta(2, k, 1, &gen(&conj), 3).unwrap();
        for y in 0..b_g.matrix.len() {
            let e = SparseVector::unit(y);
            let lhs = b_conj.apply(&act_b(&ab, 2, k, &e).unwrap());
            let rhs = act_b(&ab, 2, k + 1, &b_g.apply(&e)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn brackets_shift_the_filtration() {
    let a = space_a(3, 2).unwrap();
    let k21 = Automorphism::magnus2(3, 1, 0).unwrap();
    for i in 0..a.dim() {
        let k = a.basis_diagram(i).trivalent_count();
        let z = bracket(&SparseVector::unit(i), &k21, 2).unwrap();
        assert!(a.in_filtration(&z, k + 1));
    }
    let gens = magnus_generators(3);
    let w = commutator(&gen(&gens[0]), &gen(&gens[7]));
    assert!(filtration_shift_holds(&w, 3, 2).unwrap());
    let w3 = commutator(&w, &gen(&gens[3]));
    assert!(filtration_shift_holds(&w3, 3, 2).unwrap());
}

#[test]
fn brackets_past_the_top_grade_vanish() {
    let g = gen(&magnus_generators(3)[4]);
    let top = beta(2, 2, 1, &g, 3).unwrap();
    assert!(top.matrix.iter().all(|r| r.is_empty()));
    let w = commutator(&g, &gen(&magnus_generators(3)[0]));
    let past = beta(2, 1, 2, &w, 3).unwrap();
    assert!(past.matrix.iter().all(|r| r.is_empty()));
    assert_eq!(past.rank(), 0);
}

#[test]
fn stepwise_and_expanded_words_agree() {
    let gens = magnus_generators(3);
    let w = commutator(&gen(&gens[2]), &gen(&gens[8]));
    let aut = w.evaluate().unwrap();
    for i in 0..space_a(3, 2).unwrap().dim() {
        let u = SparseVector::unit(i);
        assert_eq!(bracket_word(&u, &w, 2).unwrap(), act_aut(&aut, 2, &u).unwrap().sub(&u));
    }
}

#[test]
fn depth_and_ia_are_checked() {
    let g = gen(&magnus_generators(3)[0]);
    assert!(matches!(beta(2, 0, 2, &g, 3), Err(BracketError::Depth { expected: 2, got: 1 })));
    let bad = IAWord::Gen(Automorphism::u12(3).unwrap());
    assert!(matches!(beta(2, 0, 1, &bad, 3), Err(BracketError::NotIA(_))));
}
