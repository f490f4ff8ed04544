use proptest::prelude::*;
use proptest::sample::select;
use stiff_core::audit::{
    add_split_summand, buchsbaum_eisenbud_check, change_basis, column_ideal, eilenberg_split, homology_vanishes,
    is_minimal, order_ideal_grade, FreeComplex,
};
use stiff_core::delta::delta;
use stiff_core::koszul::koszul;
use stiff_core::module::{depth_module, ext_dim, minimal_resolution, FreeMod, ModMatrix, PresentedModule};
use stiff_core::poly::{monomials_of_degree, Field, IdealS, Monomial, MonomialOrder, Poly, PolyRing};
use stiff_core::quotient::{find_regular_sequence, is_regular_sequence, IdealA, QuotientRing, RingElem};

const RINGS: &[(&[&str], &[&str])] = &[
    (&["x", "y"], &[]),
    (&["x", "y", "z"], &[]),
    (&["x", "y"], &["x*y"]),
    (&["x", "y"], &["x^2"]),
    (&["x", "y", "z"], &["x*z", "y*z"]),
    (&["x", "y"], &["x^2", "y^2"]),
];

fn ring(i: usize) -> QuotientRing {
    let (vars, ideal) = RINGS[i];
    let s = PolyRing::new(vars, Field::Rational, MonomialOrder::DegRevLex).unwrap();
    let gens = ideal.iter().map(|g| s.parse(g).unwrap()).collect();
    QuotientRing::new(&s, gens).unwrap()
}

fn xyz() -> PolyRing {
    PolyRing::new(&["x", "y", "z"], Field::Rational, MonomialOrder::DegRevLex).unwrap()
}

type Terms = Vec<(i64, Vec<u16>)>;

fn terms(nvars: usize, max_exp: u16) -> impl Strategy<Value = Terms> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(0..=max_exp, nvars)), 1..4)
}

fn build(s: &PolyRing, t: &Terms) -> Poly {
    let f = s.field();
    s.from_terms(t.iter().map(|(c, e)| (Monomial::from_exponents(e), f.from_i64(*c))).collect())
}

/// Terms of one degree, picked by index among its monomials.
type Form = (u32, Vec<(i64, usize)>);

fn form() -> impl Strategy<Value = Form> {
    (1u32..=2, prop::collection::vec((-2i64..=2, 0usize..16), 1..4))
}

fn build_form(a: &QuotientRing, (deg, t): &Form) -> Poly {
    let mons = monomials_of_degree(a.nvars(), *deg);
    let f = a.field();
    let p = a.poly().from_terms(t.iter().map(|(c, i)| (mons[i % mons.len()].clone(), f.from_i64(*c))).collect());
    a.reduce(&p)
}

fn nonzero_forms(a: &QuotientRing, fs: &[Form]) -> Vec<Poly> {
    fs.iter().map(|f| build_form(a, f)).filter(|p| !p.is_zero()).collect()
}

/// Largest set of variables containing the support of no monomial.
fn independent_set_dim(nvars: usize, mons: &[Monomial]) -> usize {
    (0u32..1 << nvars)
        .filter(|set| mons.iter().all(|m| m.support().any(|v| set & (1 << v) == 0)))
        .map(u32::count_ones)
        .max()
        .unwrap_or(0) as usize
}

fn zero_column(f: &FreeComplex, i: usize) -> bool {
    match (f.map(i), f.map(i + 1)) {
        (Some(a), Some(b)) => a.compose(b).unwrap().is_zero(),
        _ => true,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent(gens in prop::collection::vec(terms(3, 2), 1..3), f in terms(3, 3)) {
        let s = xyz();
        let i = IdealS::new(&s, gens.iter().map(|t| build(&s, t)).collect());
        let f = build(&s, &f);
        let r = i.normal_form(&f).unwrap();
        prop_assert_eq!(i.normal_form(&r).unwrap(), r.clone());
        prop_assert!(i.contains(&s.sub(&f, &r)));
        prop_assert_eq!(r.is_zero(), i.contains(&f));
    }

    #[test]
    fn groebner_basis_depends_only_on_the_ideal(
        gens in prop::collection::vec(terms(3, 2), 2..4),
        mult in terms(3, 1),
        rot in 0usize..4,
    ) {
        let s = xyz();
        let gens: Vec<Poly> = gens.iter().map(|t| build(&s, t)).collect();
        let base = IdealS::new(&s, gens.clone());
        let mut shuffled = gens.clone();
        let len = shuffled.len();
        shuffled.rotate_left(rot % len);
        shuffled.push(s.add(&s.mul(&build(&s, &mult), &gens[0]), &gens[1]));
        let other = IdealS::new(&s, shuffled);
        prop_assert_eq!(base.groebner_basis(), other.groebner_basis());
        prop_assert!(base.verify_groebner());
    }

    #[test]
    fn colon_ideal_brackets(i in prop::collection::vec(terms(3, 2), 1..3), j in prop::collection::vec(terms(3, 1), 1..3)) {
        let s = xyz();
        let i = IdealS::new(&s, i.iter().map(|t| build(&s, t)).collect());
        let j = IdealS::new(&s, j.iter().map(|t| build(&s, t)).collect());
        let q = i.quotient(&j);
        prop_assert!(q.contains_ideal(&i));
        prop_assert!(i.contains_ideal(&q.product(&j)));
    }

    #[test]
    fn dimension_sees_only_leading_terms(gens in prop::collection::vec(terms(3, 2), 1..3)) {
        let s = xyz();
        let i = IdealS::new(&s, gens.iter().map(|t| build(&s, t)).collect());
        prop_assume!(!i.is_unit());
        let lt = i.leading_monomials();
        let initial = IdealS::new(&s, lt.iter().map(|m| s.monomial(m.clone(), s.field().one())).collect());
        prop_assert_eq!(i.krull_dim_quotient().unwrap(), initial.krull_dim_quotient().unwrap());
        prop_assert_eq!(i.krull_dim_quotient().unwrap(), independent_set_dim(3, &lt));
    }

    #[test]
    fn nonzerodivisors_have_zero_annihilator(r in 0..RINGS.len(), a in form()) {
        let a_ring = ring(r);
        let p = build_form(&a_ring, &a);
        prop_assume!(!p.is_zero());
        let ann = IdealA::new(&a_ring, std::slice::from_ref(&p)).annihilator();
        prop_assert_eq!(a_ring.is_nzd(&a_ring.elem(&p)), ann.is_zero());
    }

    #[test]
    fn annihilator_is_a_closure(r in 0..RINGS.len(), fs in prop::collection::vec(form(), 1..3)) {
        let a = ring(r);
        let gens = nonzero_forms(&a, &fs);
        let ann = IdealA::new(&a, &gens).annihilator();
        prop_assert!(ann.annihilator().annihilator().same_ideal(&ann));
        prop_assert_eq!(ann.is_annihilator_ideal(), !ann.is_zero());
    }

    #[test]
    fn grade_is_realised_and_bounded(r in 0..RINGS.len(), fs in prop::collection::vec(form(), 1..3), seed in 0u64..4) {
        let a = ring(r);
        let c = IdealA::new(&a, &nonzero_forms(&a, &fs));
        prop_assume!(c.is_proper() && !c.is_zero());
        let g = c.grade().finite().unwrap();
        prop_assert!(g <= a.dim());
        let seq = find_regular_sequence(&c, g, seed).unwrap();
        prop_assert!(is_regular_sequence(&a, &seq));
        prop_assert!(seq.iter().all(|x| c.contains(x)));
        prop_assert!(!c.grade_at_least(g + 1));
    }

    #[test]
    fn resolutions_are_sound(r in 0..RINGS.len(), fs in prop::collection::vec(form(), 1..3)) {
        let a = ring(r);
        let c = IdealA::new(&a, &nonzero_forms(&a, &fs));
        prop_assume!(c.is_proper());
        let m = PresentedModule::cyclic(&c);
        let res = minimal_resolution(&m, 4);
        prop_assert!(res.is_minimal());
        let f = FreeComplex::from_resolution(&res);
        for i in 1..f.len() {
            prop_assert!(zero_column(&f, i));
        }
        let depth_a = depth_module(&PresentedModule::free(&FreeMod::new(&a, 1))).unwrap();
        let depth_m = depth_module(&m).unwrap();
        prop_assert!(depth_m <= a.dim());
        if res.is_complete() {
            prop_assert_eq!(res.len() + depth_m, depth_a);
        }
    }

    #[test]
    fn ext_ignores_generator_order(r in 0..RINGS.len(), fs in prop::collection::vec(form(), 2..4), i in 0usize..3) {
        let a = ring(r);
        let gens = nonzero_forms(&a, &fs);
        prop_assume!(!gens.is_empty());
        let mut rev = gens.clone();
        rev.reverse();
        let free = PresentedModule::free(&FreeMod::new(&a, 1));
        let one = ext_dim(&PresentedModule::cyclic(&IdealA::new(&a, &gens)), &free, i, 6).unwrap();
        let two = ext_dim(&PresentedModule::cyclic(&IdealA::new(&a, &rev)), &free, i, 6).unwrap();
        prop_assert_eq!(one, two);
    }

    #[test]
    fn content_ideal_ignores_target_basis(
        r in 0..RINGS.len(),
        fs in prop::collection::vec(form(), 2..4),
        coef in select(vec!["1", "-2", "x", "y"]),
    ) {
        let a = ring(r);
        let c = IdealA::new(&a, &nonzero_forms(&a, &fs));
        prop_assume!(c.is_proper() && !c.is_zero());
        let f = FreeComplex::from_resolution(&minimal_resolution(&PresentedModule::cyclic(&c), 3));
        prop_assume!(f.len() >= 2 && f.rank(1) >= 2);
        let module = f.free_module(1).unwrap();
        let e = a.poly().parse(coef).unwrap();
        let mut u = ModMatrix::identity(&module);
        let mut u_inv = ModMatrix::identity(&module);
        u.set(0, 1, e.clone());
        u_inv.set(0, 1, a.poly().neg(&e));
        let g = change_basis(&f, 1, &u, &u_inv).unwrap();
        for col in 0..f.rank(2) {
            prop_assert!(column_ideal(&f, 2, col).same_ideal(&column_ideal(&g, 2, col)));
        }
    }

    #[test]
    fn koszul_acyclicity_detects_regular_sequences(r in 0..RINGS.len(), fs in prop::collection::vec(form(), 1..3)) {
        let a = ring(r);
        let xs: Vec<RingElem> = nonzero_forms(&a, &fs).iter().map(|p| a.elem(p)).collect();
        prop_assume!(!xs.is_empty());
        let k = koszul(&a, &xs).unwrap();
        let be = buchsbaum_eisenbud_check(&k);
        prop_assert_eq!(be.acyclic, is_regular_sequence(&a, &xs));
        if be.acyclic {
            for i in 1..=k.len() {
                prop_assert!(homology_vanishes(&k, i).unwrap());
            }
        }
    }

    #[test]
    fn split_summands_are_removed(r in 0..RINGS.len(), fs in prop::collection::vec(form(), 1..3), spot in 1usize..3) {
        let a = ring(r);
        let c = IdealA::new(&a, &nonzero_forms(&a, &fs));
        prop_assume!(c.is_proper() && !c.is_zero());
        let f = FreeComplex::from_resolution(&minimal_resolution(&PresentedModule::cyclic(&c), 3));
        prop_assume!(spot <= f.len());
        let g = add_split_summand(&f, spot).unwrap();
        prop_assert!(!is_minimal(&g));
        let split = eilenberg_split(&g).unwrap();
        prop_assert!(split.reconstructs(&g));
        prop_assert_eq!(split.minimal.ranks(), f.ranks());
        prop_assert!(is_minimal(&split.minimal));
    }

    #[test]
    fn order_ideals_contain_content(r in 0..RINGS.len(), fs in prop::collection::vec(form(), 1..3), pick in 0usize..8) {
        let a = ring(r);
        let c = IdealA::new(&a, &nonzero_forms(&a, &fs));
        prop_assume!(c.is_proper() && !c.is_zero());
        let res = minimal_resolution(&PresentedModule::cyclic(&c), 3);
        prop_assume!(res.is_complete() && !res.is_empty());
        let f = FreeComplex::from_resolution(&res);
        let i = 1 + pick % f.len();
        let mut z = vec![a.poly().zero(); f.rank(i)];
        z[pick % f.rank(i)] = a.poly().one();
        let o = order_ideal_grade(&f, i, &z).unwrap();
        prop_assert!(o.contains_content);
        prop_assert!(o.passed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn delta_is_bounded_by_generators(r in 0..RINGS.len(), fs in prop::collection::vec(form(), 1..3)) {
        let a = ring(r);
        let c = IdealA::new(&a, &nonzero_forms(&a, &fs));
        prop_assume!(c.is_proper());
        if let Ok(report) = delta(&PresentedModule::cyclic(&c)) {
            prop_assert!(report.delta <= report.generators);
        }
    }
}
