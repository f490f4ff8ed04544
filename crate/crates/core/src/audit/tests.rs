use super::*;
use crate::koszul::koszul;
use crate::module::{minimal_resolution, Dim, FreeMod, ModMatrix, PresentedModule};
use crate::poly::{Field, MonomialOrder, Poly, PolyRing};
use crate::quotient::{Grade, IdealA, QuotientRing, RingElem};

fn ring(vars: &[&str], ideal: &[&str]) -> QuotientRing {
    let s = PolyRing::new(vars, Field::Rational, MonomialOrder::DegRevLex).unwrap();
    let gens = ideal.iter().map(|g| s.parse(g).unwrap()).collect();
    QuotientRing::new(&s, gens).unwrap()
}

fn p(a: &QuotientRing, text: &str) -> Poly {
    a.poly().parse(text).unwrap()
}

fn matrix(a: &QuotientRing, rows: &[&[&str]]) -> ModMatrix {
    let entries = rows.iter().flat_map(|r| r.iter().map(|t| p(a, t))).collect();
    ModMatrix::new(a, rows.len(), rows[0].len(), entries).unwrap()
}

fn kos(a: &QuotientRing, xs: &[&str]) -> FreeComplex {
    let x: Vec<RingElem> = xs.iter().map(|t| a.parse(t).unwrap()).collect();
    koszul(a, &x).unwrap()
}

fn broken_node() -> FreeComplex {
    let node = ring(&["x", "y"], &["x*y"]);
    FreeComplex::from_maps(vec![matrix(&node, &[&["x", "y"]])]).unwrap()
}

#[test]
fn complexes_reject_nonzero_composites() {
    let a = ring(&["x", "y"], &[]);
    let d1 = matrix(&a, &[&["x", "y"]]);
    let d2 = matrix(&a, &[&["y"], &["x"]]);
    assert_eq!(FreeComplex::from_maps(vec![d1, d2]).unwrap_err(), crate::AlgebraError::NotAComplex(1));
}

#[test]
fn minimality_and_content_ideals() {
    let a = ring(&["x", "y"], &[]);
    assert!(is_minimal(&kos(&a, &["x", "y"])));
    let unit = FreeComplex::from_maps(vec![matrix(&a, &[&["1", "x"]])]).unwrap();
    assert!(!is_minimal(&unit));
    let f = broken_node();
    let node = f.ring().clone();
    let c = content_ideal(&f, 1, &[node.poly().one(), Poly::zero()]).unwrap();
    assert!(c.same_ideal(&IdealA::new(&node, &[p(&node, "x")])));
    let c = content_ideal(&f, 1, &[node.poly().one(), node.poly().one()]).unwrap();
    assert!(c.same_ideal(&IdealA::new(&node, &[p(&node, "x+y")])));
    assert!(content_ideal(&f, 1, &[Poly::zero(), Poly::zero()]).unwrap().is_zero());
    assert!(content_ideal(&f, 1, &[Poly::zero()]).is_err());
}

#[test]
fn koszul_stiffness_grades() {
    let a = ring(&["x", "y", "z"], &[]);
    let report = stiffness_check_basis(&kos(&a, &["x", "y", "z"])).unwrap();
    assert_eq!(report.verdict, StiffnessVerdict::VerifiedBasis);
    let grades: Vec<Grade> = report.checks.iter().map(|c| c.grade).collect();
    let g = Grade::Finite;
    assert_eq!(grades, vec![g(1), g(1), g(1), g(2), g(2), g(2), g(3)]);
}

#[test]
fn broken_complex_is_violated_and_base_change_raises_grades() {
    let f = broken_node();
    let report = stiffness_check_basis(&f).unwrap();
    assert_eq!(report.verdict, StiffnessVerdict::Violated);
    assert!(report.checks.iter().all(|c| c.grade == Grade::Finite(0)));
    let node = f.ring().clone();
    let u = matrix(&node, &[&["1", "1"], &["1", "-1"]]);
    let u_inv = matrix(&node, &[&["1/2", "1/2"], &["1/2", "-1/2"]]);
    let g = change_basis(&f, 1, &u, &u_inv).unwrap();
    let report = stiffness_check_basis(&g).unwrap();
    assert!(report.checks.iter().all(|c| c.grade == Grade::Finite(1)));
    assert_eq!(report.verdict, StiffnessVerdict::VerifiedBasis);
    let report = stiffness_probe_random(&f, 5, 0).unwrap();
    assert_eq!(report.verdict, StiffnessVerdict::Violated);
}

#[test]
fn probes_and_certificates_on_koszul() {
    let a = ring(&["x", "y"], &[]);
    let k = kos(&a, &["x", "y"]);
    assert_eq!(stiffness_probe_random(&k, 0, 3).unwrap().verdict, StiffnessVerdict::VerifiedBasis);
    assert_eq!(stiffness_probe_random(&k, 20, 3).unwrap().verdict, StiffnessVerdict::Probed(20));
    let report = stiffness_certificate(&k, 0).unwrap();
    assert_eq!(report.verdict, StiffnessVerdict::Certified);
    let lengths: Vec<usize> = report.checks.iter().map(|c| c.certificate.as_ref().unwrap().len()).collect();
    assert_eq!(lengths, vec![1, 1, 2]);
    assert_eq!(stiffness_certificate_with_budget(&k, 0, 0).unwrap().verdict, StiffnessVerdict::Inconclusive);
}

#[test]
fn random_base_changes_are_inverse_pairs() {
    use rand::SeedableRng;
    let a = ring(&["x", "y", "z"], &[]);
    let k = kos(&a, &["x", "y", "z"]);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    for _ in 0..5 {
        let (g, changes) = random_base_change(&k, &mut rng);
        assert!(g.is_graded());
        for (i, d) in g.maps().iter().enumerate() {
            let back = changes[i].matrix.compose(d).unwrap().compose(&changes[i + 1].inverse).unwrap();
            assert_eq!(back.entries(), k.maps()[i].entries());
        }
    }
}

#[test]
fn annihilators_of_first_syzygies() {
    let a = ring(&["x", "y"], &[]);
    let f = FreeComplex::from_maps(vec![matrix(&a, &[&["x", "y"]])]).unwrap();
    assert!(first_syzygy_ann_check(&f).unwrap().iter().all(|c| c.passed));
    let checks = first_syzygy_ann_check(&broken_node()).unwrap();
    assert!(checks.iter().all(|c| !c.passed));
    let node = ring(&["x", "y"], &["x*y"]);
    let f = FreeComplex::from_maps(vec![matrix(&node, &[&["x+y"]])]).unwrap();
    assert!(first_syzygy_ann_check(&f).unwrap()[0].passed);
}

#[test]
fn minors_and_ranks() {
    let a = ring(&["x", "y", "z"], &[]);
    let m = matrix(&a, &[&["x", "y"]]);
    assert!(minor_ideal(&m, 1).same_ideal(&IdealA::new(&a, &[p(&a, "x"), p(&a, "y")])));
    assert!(minor_ideal(&m, 2).is_zero());
    assert!(minor_ideal(&m, 0).is_unit());
    assert_eq!(matrix_rank(&m), 1);
    assert_eq!(matrix_rank(&matrix(&a, &[&["0", "0"]])), 0);
    let k = kos(&a, &["x", "y", "z"]);
    let d2 = k.map(2).unwrap();
    assert_eq!(matrix_rank(d2), 2);
    // the 2x2 minors of d2 are x, y, z times the entries
    let squares = ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"].map(|t| p(&a, t));
    assert!(minor_ideal(d2, 2).same_ideal(&IdealA::new(&a, &squares)));
}

#[test]
fn buchsbaum_eisenbud_examples() {
    let a = ring(&["x", "y"], &[]);
    let k = kos(&a, &["x", "y"]);
    let report = buchsbaum_eisenbud_check(&k);
    assert!(report.acyclic && report.ranks_match());
    assert_eq!(report.spots.iter().map(|s| s.expected_rank).collect::<Vec<_>>(), vec![1, 1]);
    assert_eq!(report.spots.iter().map(|s| s.grade).collect::<Vec<_>>(), vec![Grade::Finite(2), Grade::Finite(2)]);
    assert!(homology_vanishes(&k, 1).unwrap() && homology_vanishes(&k, 2).unwrap());
    let f = broken_node();
    let report = buchsbaum_eisenbud_check(&f);
    assert!(!report.acyclic);
    assert_eq!(report.spots[0].expected_rank, 2);
    assert!(report.spots[0].minors.is_zero());
    assert!(!homology_vanishes(&f, 1).unwrap());
    assert!(nonzero_homology_witness(&f, 1).unwrap().is_some());
    assert!(matches!(homology_dim(&f, 1, 4).unwrap(), Dim::AtLeast { .. } | Dim::Finite(1..)));
    let point = FreeComplex::new(&a, 2, Vec::new()).unwrap();
    assert!(buchsbaum_eisenbud_check(&point).acyclic);
}

#[test]
fn residue_field_homology() {
    let a = ring(&["x", "y"], &[]);
    let res = minimal_resolution(&PresentedModule::residue_field(&a), 4);
    let f = FreeComplex::from_resolution(&res);
    assert_eq!(homology_dim(&f, 0, 4).unwrap(), Dim::Finite(1));
    assert_eq!(homology_dim(&f, 1, 4).unwrap(), Dim::Finite(0));
}

#[test]
fn splitting_off_an_identity_summand() {
    let a = ring(&["x", "y"], &[]);
    let k = kos(&a, &["x", "y"]);
    let split = eilenberg_split(&k).unwrap();
    assert!(split.pairs.is_empty());
    assert_eq!(split.minimal.ranks(), k.ranks());
    // K ⊕ (0 -> A --1--> A) placed at spots 1 and 0, then mixed up
    let one = ModMatrix::identity(&FreeMod::new(&a, 1));
    let d1 = k.map(1).unwrap().direct_sum(&one);
    let d2_cols = vec![vec![p(&a, "-y"), p(&a, "x"), Poly::zero()]];
    let d2 = ModMatrix::from_columns(&a, d1.source().degrees(), &d2_cols);
    let g = FreeComplex::from_maps(vec![d1, d2]).unwrap();
    let u = matrix(&a, &[&["1", "0", "0"], &["0", "1", "0"], &["x", "y", "1"]]);
    let u_inv = matrix(&a, &[&["1", "0", "0"], &["0", "1", "0"], &["-x", "-y", "1"]]);
    let g = change_basis(&g, 1, &u, &u_inv).unwrap();
    let result = eilenberg_split(&g).unwrap();
    assert_eq!(result.pairs.len(), 1);
    assert!(is_minimal(&result.minimal));
    assert_eq!(result.minimal.ranks(), vec![1, 2, 1]);
    assert!(result.reconstructs(&g));
    for i in 0..=2 {
        assert_eq!(homology_dim(&g, i, 4).unwrap(), homology_dim(&result.minimal, i, 4).unwrap());
    }
}

#[test]
fn non_constant_unit_pivots_are_rejected() {
    let a = ring(&["x", "y"], &[]);
    let f = FreeComplex::from_maps(vec![matrix(&a, &[&["1+x", "y"]])]).unwrap();
    assert!(matches!(eilenberg_split(&f), Err(crate::AlgebraError::NonUnitPivot { map: 1, row: 0, col: 0 })));
}

#[test]
fn theorem14_and_11_on_koszul() {
    let a = ring(&["x", "y", "z"], &[]);
    let k = kos(&a, &["x", "y", "z"]);
    let e = thm14_minor_grades(&k, 2, &[0, 1]).unwrap();
    assert!(e.passed && e.bound == 1 && e.grade.at_least(1));
    let e = thm14_minor_grades(&k, 2, &[2]).unwrap();
    assert_eq!(e.bound, 2);
    assert!(e.passed);
    assert!(thm14_minor_grades(&k, 3, &[0]).is_err());
    let table = thm14_table(&k, 0).unwrap();
    assert!(table.all_passed());
    assert_eq!(table.entries.len(), 3 + 3 + 3);
    let b = thm11_generator_bound(&k, 1).unwrap();
    assert_eq!((b.generators, b.free, b.passed), (3, false, true));
    let b = thm11_generator_bound(&k, 2).unwrap();
    assert_eq!((b.generators, b.passed), (3, true));
}

#[test]
fn order_ideals() {
    let a = ring(&["x", "y"], &[]);
    let k = kos(&a, &["x", "y"]);
    let one = a.poly().one();
    let o = order_ideal_grade(&k, 1, &[one.clone(), Poly::zero()]).unwrap();
    assert!(o.contains_content && o.passed);
    // Hom((x, y), A) = A, so the functionals take the values (x) at x
    assert!(o.ideal.same_ideal(&IdealA::new(&a, &[p(&a, "x")])));
    assert_eq!(o.grade, Grade::Finite(1));
    let o = order_ideal_grade(&k, 2, &[one]).unwrap();
    assert_eq!(o.grade, Grade::Infinite);
    assert!(order_ideal_grade(&k, 1, &[p(&a, "x"), Poly::zero()]).is_err());
}
