use proptest::prelude::*;

use jacobi_core::freegroup::{compose, magnus_generators, nielsen_generators, Automorphism, Hom, Word};

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, prop::bool::ANY), 0..=max_len)
        .prop_map(|v| Word::from_pairs(&v.into_iter().map(|(g, p)| (g, if p { 1 } else { -1 })).collect::<Vec<_>>()))
}

fn hom(n: usize, m: usize, max_len: usize) -> impl Strategy<Value = Hom> {
    prop::collection::vec(word(m, max_len), n).prop_map(move |imgs| Hom::new(n, m, imgs).unwrap())
}

/// All reduced words of length at most `len` in `rank` generators.
fn all_words(rank: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Word::identity()];
    let mut frontier = vec![Word::identity()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..rank {
                for e in [1i8, -1] {
                    let x = w.mul(&Word::from_pairs(&[(g, e)]));
                    if x.len() == w.len() + 1 {
                        next.push(x);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..a.len()).map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

proptest! {
    #[test]
    fn words_reduce_and_invert(w in word(3, 8), v in word(3, 8)) {
        prop_assert!(w.is_reduced());
        prop_assert!(w.mul(&w.inverse()).is_empty());
        prop_assert_eq!(w.mul(&v).inverse(), v.inverse().mul(&w.inverse()));
        prop_assert_eq!(Word::parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn composition_applies_right_to_left(f in hom(3, 2, 3), g in hom(2, 3, 3), w in word(2, 4)) {
        let fg = compose(&f, &g).unwrap();
        prop_assert_eq!(fg.apply(&w), f.apply(&g.apply(&w)));
    }

    #[test]
    fn abelianization_is_functorial(f in hom(3, 2, 3), g in hom(2, 3, 3)) {
        let fg = compose(&f, &g).unwrap();
        prop_assert_eq!(fg.abelianize(), matmul(&f.abelianize(), &g.abelianize()));
    }

    #[test]
    fn hom_json_round_trip(h in hom(2, 3, 4)) {
        prop_assert_eq!(Hom::from_json(&h.to_json()).unwrap(), h);
    }

    #[test]
    fn random_automorphisms_have_correct_inverses(picks in prop::collection::vec((0usize..8, prop::bool::ANY), 0..6)) {
        let gens = nielsen_generators(3);
        let mut g = Automorphism::identity(3);
        for (i, inv) in picks {
            let s = &gens[i % gens.len()];
            g = g.mul(&if inv { s.inverse() } else { s.clone() }).unwrap();
        }
        for w in all_words(3, 2) {
            prop_assert_eq!(g.hom().apply(&g.inverse_hom().apply(&w)), w.clone());
            prop_assert_eq!(g.inverse_hom().apply(&g.hom().apply(&w)), w);
        }
    }
}

#[test]
fn catalog_elements_are_automorphisms() {
    for n in 1..=4 {
        let mut cat = nielsen_generators(n);
        cat.extend(magnus_generators(n));
        for g in &cat {
            for w in all_words(n, 2) {
                assert_eq!(g.hom().apply(&g.inverse_hom().apply(&w)), w, "{}", g.name());
            }
        }
    }
}

#[test]
fn magnus_generators_are_ia() {
    for n in 2..=4 {
        let gens = magnus_generators(n);
        assert_eq!(gens.len(), n * (n - 1) + n * (n - 1) * (n - 2) / 2);
        assert!(gens.iter().all(|g| g.is_ia()));
    }
    assert!(!Automorphism::u12(2).unwrap().is_ia());
}

#[test]
fn malformed_homs_are_rejected() {
    assert!(Hom::parse(2, 2, &["x1 x3", "x2"]).is_err());
    assert!(Hom::parse(2, 2, &["x1"]).is_err());
    assert!(Automorphism::new("bad", Hom::parse(2, 2, &["x1 x2", "x2"]).unwrap(), Hom::identity(2)).is_err());
    assert!(Automorphism::magnus3(3, 0, 0, 1).is_err());
}
