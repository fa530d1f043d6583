use jacobi_core::diagrams::{DiagramError, JacobiDiagram, OpenJacobiDiagram};
use jacobi_core::exactlin::{int, SparseVector};
use jacobi_core::spaces::{build_a, build_a_capped, build_b, chi, pbw, space_a, JacobiVector, OpenVector, SpaceError};

#[test]
fn dimension_table() {
    let table = [
        ((1, 1), 1, vec![1]),
        ((1, 2), 2, vec![1, 0, 1]),
        ((2, 2), 9, vec![6, 0, 3]),
        ((3, 2), 28, vec![21, 1, 6]),
        ((4, 2), 69, vec![55, 4, 10]),
        ((1, 3), 3, vec![1, 0, 1, 0, 1]),
        ((2, 3), 23, vec![10, 0, 10, 0, 3]),
    ];
    for ((n, d), dim, graded) in table {
        let p = pbw(n, d).unwrap();
        assert_eq!(p.a.dim(), dim, "A_{d}({n})");
        assert_eq!(p.a.graded_dims(), graded, "A_{d}({n})");
        assert_eq!(p.b.iter().map(|b| b.dim()).collect::<Vec<_>>(), graded, "B_{d}({n})");
    }
    assert_eq!(space_a(0, 2).unwrap().dim(), 0);
    assert_eq!(space_a(3, 0).unwrap().dim(), 1);
}

#[test]
fn filtration_is_nested() {
    let a = space_a(3, 2).unwrap();
    let dims = a.filtration_dims();
    assert_eq!(dims, vec![28, 7, 6, 0]);
    for k in 0..3 {
        assert!(a.filtration(k).contains_all(&a.filtration(k + 1)));
        assert_eq!(a.filtration(k).dim(), dims[k]);
    }
}

#[test]
fn theta_inverts_chi_in_every_grade() {
    for (n, d) in [(2, 2), (3, 2), (2, 3)] {
        let p = pbw(n, d).unwrap();
        for k in 0..p.b.len() {
            for i in 0..p.b[k].dim() {
                let y = SparseVector::unit(i);
                let x = p.lift(k, &y).unwrap();
                assert!(p.a.in_filtration(&x, k));
                assert_eq!(p.theta(k, &x).unwrap(), y);
                // a different lift agrees modulo the next filtration step
                let other = p.lift_shortcut(k, &y).unwrap();
                assert!(p.a.in_filtration(&x.sub(&other), k + 1));
                assert_eq!(p.chi_gr(k, &y).unwrap(), p.a.gr_coords(&x, k).unwrap());
            }
        }
    }
}

#[test]
fn chi_of_a_strut_is_a_chord() {
    let a = space_a(2, 1).unwrap();
    let x = chi(&a, &OpenVector::from_diagram(&OpenJacobiDiagram::strut(2, 0, 1)).unwrap()).unwrap();
    assert_eq!(x, a.diagram_coords(&JacobiDiagram::chords(2, &[(0, 1)])).unwrap());
}

#[test]
fn stu_holds_in_coordinates() {
    // a tripod with two legs on one arc is the difference of the two chord orderings
    let a = space_a(1, 2).unwrap();
    let isolated = JacobiDiagram::new(1, &[vec![0, 1, 2]], &[[10, 11, 12]], &[(0, 10), (1, 11), (2, 12)]).unwrap();
    let coords = a.diagram_coords(&isolated).unwrap();
    let mut stu = JacobiVector::new();
    stu.push(&JacobiDiagram::new(1, &[vec![0, 1, 2, 3]], &[], &[(0, 2), (1, 3)]).unwrap(), int(1)).unwrap();
    stu.push(&JacobiDiagram::new(1, &[vec![0, 1, 2, 3]], &[], &[(0, 3), (1, 2)]).unwrap(), int(-1)).unwrap();
    let rhs = a.coords(&stu).unwrap();
    assert_eq!(coords, rhs);
    assert!(!coords.is_zero());
}

#[test]
fn errors() {
    assert!(matches!(build_b(2, 2, 3), Err(SpaceError::GradeOutOfRange { k: 3, d: 2 })));
    assert!(matches!(build_a_capped(3, 2, 10), Err(SpaceError::Diagram(DiagramError::ResourceLimit(10)))));
    let a = space_a(2, 1).unwrap();
    let foreign = JacobiDiagram::chords(3, &[(0, 2)]);
    assert!(a.diagram_coords(&foreign).is_err());
    let p = pbw(2, 2).unwrap();
    assert!(matches!(p.theta(5, &SparseVector::zero()), Err(SpaceError::GradeOutOfRange { .. })));
}

#[test]
fn cache_switch_gives_identical_spaces() {
    let cached = space_a(2, 2).unwrap();
    let fresh = build_a(2, 2).unwrap();
    assert_eq!(cached.dim(), fresh.dim());
    for i in 0..fresh.dim() {
        assert_eq!(cached.basis_diagram(i), fresh.basis_diagram(i));
    }
}
