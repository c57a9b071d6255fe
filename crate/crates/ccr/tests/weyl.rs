use std::cmp::Ordering;
use std::sync::Arc;

use gaugeloc_ccr::*;
use gaugeloc_linalg::Rat;
use proptest::prelude::*;

fn r(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn el(v: &[i64]) -> Element {
    v.iter().map(|&x| Rat::int(x)).collect()
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

/// Rank-3 free group with `ρ(e0, e1) = π`, `ρ(e0, e2) = π/3`, `ρ(e1, e2) = −3π/4`.
fn free3() -> Arc<PresymplecticGroup> {
    let f = vec![
        vec![r(0, 1), r(1, 1), r(1, 3)],
        vec![r(-1, 1), r(0, 1), r(-3, 4)],
        vec![r(-1, 3), r(3, 4), r(0, 1)],
    ];
    Arc::new(PresymplecticGroup::free(labels(3), f).unwrap())
}

/// `ℤ² ⊕ ℚ` with a degenerate direction.
fn mixed() -> Arc<PresymplecticGroup> {
    let f = vec![vec![r(0, 1), r(2, 1), r(1, 2)], vec![r(-2, 1), r(0, 1), r(0, 1)], vec![r(-1, 2), r(0, 1), r(0, 1)]];
    let kinds = vec![GeneratorKind::Integer, GeneratorKind::Integer, GeneratorKind::Divisible];
    Arc::new(PresymplecticGroup::new(labels(3), kinds, f).unwrap())
}

fn w(g: &Arc<PresymplecticGroup>, h: &[i64]) -> WeylElement {
    WeylElement::weyl(g, &el(h)).unwrap()
}

fn cx(re: Rat, im: Rat) -> Cyclo {
    &Cyclo::from_rat(re) + &Cyclo::i().scale(&im)
}

/// Complex product in floating point, as an independent check on field arithmetic.
fn fmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
}

#[test]
fn cyclotomic_identities() {
    let i = Cyclo::i();
    assert_eq!(&i * &i, Cyclo::from_rat(Rat::int(-1)));
    assert_eq!(&Cyclo::root(8, 1) * &Cyclo::root(8, 1), i);
    let z = Cyclo::exp_i_pi(&r(1, 3));
    let mut p = Cyclo::one();
    for _ in 0..6 {
        p = &p * &z;
    }
    assert_eq!(p, Cyclo::one());
    // 2cos(π/3) = 1, while 2cos(π/4) = √2 is irrational with square 2.
    assert_eq!(&z + &z.conj(), Cyclo::one());
    let s = &Cyclo::root(8, 1) + &Cyclo::root(8, -1);
    assert!(s.as_rational().is_none());
    assert_eq!(&s * &s, Cyclo::from_rat(Rat::int(2)));
    for n in 2..13 {
        let mut sum = Cyclo::zero();
        for k in 0..n as i64 {
            sum = &sum + &Cyclo::root(n, k);
        }
        assert!(sum.is_zero(), "roots of order {n}");
    }
    // Representations of different orders agree.
    assert_eq!(Cyclo::root(12, 3), Cyclo::root(4, 1));
    assert_eq!(Cyclo::exp_i_pi(&r(7, 2)), Cyclo::exp_i_pi(&r(-1, 2)));
    assert_eq!(cx(r(3, 1), r(4, 1)).modulus(), Some(r(5, 1)));
    assert_eq!(cx(r(1, 1), r(1, 1)).modulus(), None);
    assert_eq!(Cyclo::i().scale(&r(-2, 1)).as_polar(), Some((r(2, 1), r(3, 2))));
}

proptest! {
    #[test]
    fn cyclotomic_arithmetic_matches_floating_point(
        a in (-5i64..5, -5i64..5, 1i64..4, -6i64..6, 1i64..7),
        b in (-5i64..5, -5i64..5, 1i64..4, -6i64..6, 1i64..7),
    ) {
        let x = &cx(r(a.0, a.2), r(a.1, a.2)) * &Cyclo::exp_i_pi(&r(a.3, a.4));
        let y = &cx(r(b.0, b.2), r(b.1, b.2)) * &Cyclo::exp_i_pi(&r(b.3, b.4));
        let (xf, yf) = (x.approx(), y.approx());
        prop_assert!(close((&x * &y).approx(), fmul(xf, yf)));
        prop_assert!(close((&x + &y).approx(), (xf.0 + yf.0, xf.1 + yf.1)));
        prop_assert!(close(x.conj().approx(), (xf.0, -xf.1)));
        prop_assert!(close(x.norm_sq().approx(), (xf.0 * xf.0 + xf.1 * xf.1, 0.0)));
        prop_assert_eq!(&(&x * &y) - &(&y * &x), Cyclo::zero());
    }
}

#[test]
fn weyl_relations_on_generators() {
    let g = free3();
    let (h, k) = (el(&[1, 0, 0]), el(&[0, 1, 0]));
    assert_eq!(g.pairing(&h, &k), Rat::one());
    let prod = w(&g, &[1, 0, 0]).product(&w(&g, &[-1, 0, 0])).unwrap();
    assert_eq!(prod, WeylElement::unit(&g));
    let prod = w(&g, &[1, 0, 0]).product(&w(&g, &[0, 1, 0])).unwrap();
    let expected = w(&g, &[1, 1, 0]).scale(&Cyclo::i().scale(&r(-1, 1)));
    assert_eq!(prod, expected);
    // The unit is two-sided.
    let a = w(&g, &[2, -1, 3]);
    assert_eq!(WeylElement::unit(&g).product(&a).unwrap(), a);
    assert_eq!(a.product(&WeylElement::unit(&g)).unwrap(), a);
}

#[test]
fn involution_examples() {
    let g = free3();
    assert_eq!(w(&g, &[1, -2, 0]).star(), w(&g, &[-1, 2, 0]));
    let (a, b) = (w(&g, &[1, 0, 2]), w(&g, &[0, 3, -1]));
    let lhs = a.product(&b).unwrap().star();
    let rhs = b.star().product(&a.star()).unwrap();
    assert_eq!(lhs, rhs);
    // Two-line phase computation: (W_h W_k)* = conj(e^{−iρ/2}) W_{−h−k} = e^{iρ/2} W_{−h−k}.
    let rho = g.pairing(&el(&[1, 0, 2]), &el(&[0, 3, -1]));
    let oracle = w(&g, &[-1, -3, -1]).scale(&Cyclo::exp_i_pi(&(&rho / &Rat::int(2))));
    assert_eq!(lhs, oracle);
}

#[test]
fn l1_norm_examples() {
    let g = free3();
    assert_eq!(w(&g, &[1, 1, 0]).l1_norm().exact(), Some(Rat::one()));
    let x = WeylElement::unit(&g).sub(&w(&g, &[0, 2, 1])).unwrap();
    assert_eq!(x.l1_norm().exact(), Some(Rat::int(2)));
    let y = WeylElement::from_terms(&g, [(el(&[1, 0, 0]), cx(r(1, 1), r(1, 1)))]).unwrap();
    assert!(y.l1_norm().exact().is_none());
    assert!((y.l1_norm().approx() - 2f64.sqrt()).abs() < 1e-12);
    assert_eq!(y.star().l1_norm().compare_exactly(&y.l1_norm()), Some(Ordering::Equal));
}

#[test]
fn reference_state_examples() {
    let g = free3();
    assert_eq!(reference_state(&WeylElement::unit(&g)), Cyclo::one());
    assert_eq!(reference_state(&w(&g, &[0, 1, 0])), Cyclo::zero());
    let x = WeylElement::unit(&g).sub(&w(&g, &[1, 0, 0])).unwrap();
    assert_eq!(reference_state(&x.star().product(&x).unwrap()), Cyclo::from_rat(Rat::int(2)));
}

#[test]
fn group_mismatch_and_invalid_elements() {
    let (a, b) = (free3(), mixed());
    assert_eq!(w(&a, &[1, 0, 0]).product(&w(&b, &[1, 0, 0])), Err(CcrError::GroupMismatch));
    assert!(matches!(WeylElement::weyl(&a, &[r(1, 2), r(0, 1), r(0, 1)]), Err(CcrError::InvalidElement(_))));
    assert!(WeylElement::weyl(&b, &[r(1, 1), r(0, 1), r(1, 2)]).is_ok());
    assert!(matches!(WeylElement::weyl(&a, &el(&[1, 0])), Err(CcrError::InvalidElement(_))));
    let bad = vec![vec![r(0, 1), r(1, 1)], vec![r(1, 1), r(0, 1)]];
    assert!(matches!(PresymplecticGroup::free(labels(2), bad), Err(CcrError::InvalidGroup(_))));
}

#[test]
fn morphism_examples() {
    let g = free3();
    let id = PresymplecticMap::identity(g.clone());
    let a = WeylElement::from_terms(&g, [(el(&[1, 2, 0]), Cyclo::root(6, 1)), (el(&[0, 0, 1]), Cyclo::one())]).unwrap();
    assert_eq!(id.apply(&a).unwrap(), a);

    // Forget the degenerate direction of the mixed group.
    let m = mixed();
    let quotient = Arc::new(PresymplecticGroup::free(labels(2), vec![vec![r(0, 1), r(2, 1)], vec![r(-2, 1), r(0, 1)]]).unwrap());
    let scaled = PresymplecticMap::new(m.clone(), quotient.clone(), vec![el(&[1, 0]), el(&[0, 1]), vec![Rat::zero(); 2]]);
    // ρ(e0, q) = π/2 is not preserved by sending q to 0.
    assert!(matches!(scaled, Err(CcrError::NotPresymplectic { i: 0, j: 2, .. })));

    // A pairing-preserving map with kernel: ℤ³ with form only on (e0, e1) onto ℤ².
    let src =
        Arc::new(PresymplecticGroup::free(labels(3), vec![vec![r(0, 1), r(2, 1), r(0, 1)], vec![r(-2, 1), r(0, 1), r(0, 1)], vec![r(0, 1); 3]]).unwrap());
    let l = PresymplecticMap::new(src.clone(), quotient.clone(), vec![el(&[1, 0]), el(&[0, 1]), el(&[0, 0])]).unwrap();
    let witness = locality_witness(&src, &el(&[0, 0, 1])).unwrap();
    assert!(!witness.is_zero());
    assert!(l.apply(&witness).unwrap().is_zero());
    assert!(!l.separates_terms(&witness));
    let other = locality_witness(&src, &el(&[1, 0, 1])).unwrap();
    assert!(!l.apply(&other).unwrap().is_zero());
    assert!(l.separates_terms(&other));

    // Scaling by 2 multiplies the form by 4 and is refused.
    let doubled = PresymplecticMap::new(quotient.clone(), quotient.clone(), vec![el(&[2, 0]), el(&[0, 2])]);
    assert!(matches!(doubled, Err(CcrError::NotPresymplectic { .. })));
    // Divisible generators cannot land on integer ones.
    let leak = PresymplecticMap::new(m.clone(), m.clone(), vec![el(&[1, 0, 0]), el(&[0, 1, 0]), el(&[0, 1, 1])]);
    assert!(matches!(leak, Err(CcrError::InvalidElement(_))));
}

#[test]
fn center_examples() {
    let g = free3();
    assert!(center_test(&g, &g.zero()).unwrap().is_central());
    let h = el(&[1, 0, 0]);
    match center_test(&g, &h).unwrap() {
        CenterDecision::NotCentral { partner, pairing, commutator, .. } => {
            assert_eq!(partner, el(&[0, 1, 0]));
            assert_eq!(pairing, Rat::one());
            // (e^{−iπ/2} − e^{iπ/2}) W_{h+k} = −2i W_{h+k}.
            assert_eq!(commutator, w(&g, &[1, 1, 0]).scale(&Cyclo::i().scale(&r(-2, 1))));
        }
        CenterDecision::Central => panic!("W_e0 is not central"),
    }
    // 6e0 pairs into 2πℤ with e1, 6e2 with everything else: ρ(6e0, e2) = 2π, ρ(6e0, e1) = 6π.
    assert!(center_test(&g, &el(&[6, 0, 0])).unwrap().is_central());
    // Mixed group: e1 pairs integrally but not with rational multiples of the divisible q.
    let m = mixed();
    assert!(center_test(&m, &el(&[0, 1, 0])).unwrap().is_central());
    match center_test(&m, &el(&[4, 0, 0])).unwrap() {
        CenterDecision::NotCentral { generator, partner, pairing, commutator } => {
            assert_eq!(generator, 2);
            assert_eq!(partner, vec![r(0, 1), r(0, 1), r(1, 2)]);
            assert_eq!(pairing, Rat::one());
            assert!(!commutator.is_zero());
        }
        CenterDecision::Central => panic!("4e0 pairs nontrivially with q/2"),
    }
}

fn cyclo_strategy() -> impl Strategy<Value = Cyclo> {
    (-4i64..5, -4i64..5, 1i64..4, 0i64..8).prop_map(|(a, b, d, k)| &cx(r(a, d), r(b, d)) * &Cyclo::root(8, k))
}

/// Rational multiples of roots of unity, whose moduli are rational.
fn monomial_strategy() -> impl Strategy<Value = Cyclo> {
    (1i64..6, 1i64..4, 0i64..12).prop_map(|(a, d, k)| Cyclo::root(12, k).scale(&r(a, d)))
}

fn element_in(g: Arc<PresymplecticGroup>, coeff: impl Strategy<Value = Cyclo>) -> impl Strategy<Value = WeylElement> {
    prop::collection::vec(((-2i64..3, -2i64..3, -2i64..3), coeff), 0..4).prop_map(move |terms| {
        WeylElement::from_terms(&g, terms.into_iter().map(|((a, b, c), z)| (el(&[a, b, c]), z))).unwrap()
    })
}

fn element() -> impl Strategy<Value = WeylElement> {
    element_in(free3(), cyclo_strategy())
}

/// Distinct labels, so that no two monomial coefficients merge.
fn monomial_element() -> impl Strategy<Value = WeylElement> {
    let g = free3();
    prop::collection::btree_map((-2i64..3, -2i64..3, -2i64..3), monomial_strategy(), 0..4).prop_map(move |terms| {
        WeylElement::from_terms(&g, terms.into_iter().map(|((a, b, c), z)| (el(&[a, b, c]), z))).unwrap()
    })
}

fn mixed_element() -> impl Strategy<Value = WeylElement> {
    let g = mixed();
    prop::collection::vec(((-2i64..3, -2i64..3, -3i64..4, 1i64..4), cyclo_strategy()), 0..4).prop_map(move |terms| {
        WeylElement::from_terms(&g, terms.into_iter().map(|((a, b, c, d), z)| (vec![Rat::int(a), Rat::int(b), r(c, d)], z))).unwrap()
    })
}

fn gen_triple() -> impl Strategy<Value = [Element; 3]> {
    prop::array::uniform3((-3i64..4, -3i64..4, -3i64..4).prop_map(|(a, b, c)| el(&[a, b, c])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn associativity_on_symbol_triples(t in gen_triple()) {
        let g = free3();
        let [h, k, l] = &t;
        let (a, b, c) = (WeylElement::weyl(&g, h).unwrap(), WeylElement::weyl(&g, k).unwrap(), WeylElement::weyl(&g, l).unwrap());
        let left = a.product(&b).unwrap().product(&c).unwrap();
        let right = a.product(&b.product(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        // Phases add by bilinearity.
        let total = &(&g.pairing(h, k) + &g.pairing(h, l)) + &g.pairing(k, l);
        let sum: Element = (0..3).map(|i| &(&h[i] + &k[i]) + &l[i]).collect();
        let oracle = WeylElement::weyl(&g, &sum).unwrap().scale(&Cyclo::exp_i_pi(&(-&total / &Rat::int(2))));
        prop_assert_eq!(left, oracle);
    }

    #[test]
    fn associativity_and_involution_on_random_triples(a in element(), b in element(), c in element()) {
        let ab = a.product(&b).unwrap();
        prop_assert_eq!(ab.product(&c).unwrap(), a.product(&b.product(&c).unwrap()).unwrap());
        prop_assert_eq!(a.star().star(), a.clone());
        prop_assert_eq!(ab.star(), b.star().product(&a.star()).unwrap());
        // Antilinearity.
        let z = Cyclo::exp_i_pi(&r(1, 4)).scale(&r(3, 2));
        prop_assert_eq!(a.scale(&z).star(), a.star().scale(&z.conj()));
        prop_assert_eq!(a.add(&b).unwrap().star(), a.star().add(&b.star()).unwrap());
    }

    #[test]
    fn mixed_group_laws(a in mixed_element(), b in mixed_element(), c in mixed_element()) {
        prop_assert_eq!(a.product(&b).unwrap().product(&c).unwrap(), a.product(&b.product(&c).unwrap()).unwrap());
        prop_assert_eq!(a.product(&b).unwrap().star(), b.star().product(&a.star()).unwrap());
    }

    #[test]
    fn words_of_four_symbols_agree_in_every_association(t in gen_triple(), extra in (-3i64..4, -3i64..4, -3i64..4)) {
        let g = free3();
        let ws: Vec<WeylElement> = t.iter().chain(std::iter::once(&el(&[extra.0, extra.1, extra.2])))
            .map(|h| WeylElement::weyl(&g, h).unwrap()).collect();
        let p = |x: &WeylElement, y: &WeylElement| x.product(y).unwrap();
        let (a, b, c, d) = (&ws[0], &ws[1], &ws[2], &ws[3]);
        let orders = [
            p(&p(&p(a, b), c), d),
            p(&p(a, &p(b, c)), d),
            p(&p(a, b), &p(c, d)),
            p(a, &p(&p(b, c), d)),
            p(a, &p(b, &p(c, d))),
        ];
        for o in &orders[1..] {
            prop_assert_eq!(o, &orders[0]);
        }
    }

    #[test]
    fn l1_norm_is_submultiplicative(a in element(), b in element()) {
        let lhs = a.product(&b).unwrap().l1_norm();
        let rhs = a.l1_norm().mul(&b.l1_norm());
        prop_assert!(lhs.le(&rhs), "{} vs {}", lhs, rhs);
        prop_assert_eq!(a.star().l1_norm().compare_exactly(&a.l1_norm()), Some(Ordering::Equal));
    }

    #[test]
    fn l1_norm_is_submultiplicative_exactly_on_monomial_coefficients(a in monomial_element(), b in monomial_element()) {
        let rhs = a.l1_norm().mul(&b.l1_norm()).exact().expect("rational moduli");
        let lhs = a.product(&b).unwrap().l1_norm();
        match lhs.exact() {
            Some(x) => prop_assert!(x <= rhs),
            None => prop_assert!(lhs.approx() < rhs.approx()),
        }
    }

    #[test]
    fn reference_state_is_faithful(a in element()) {
        let val = reference_state(&a.star().product(&a).unwrap());
        let mut sq = Cyclo::zero();
        for c in a.terms().values() {
            sq = &sq + &c.norm_sq();
        }
        prop_assert_eq!(&val, &sq);
        prop_assert!(val.is_real());
        let sign = val.real_sign();
        if a.is_zero() {
            prop_assert_eq!(sign, Some(Ordering::Equal));
        } else {
            prop_assert_eq!(sign, Some(Ordering::Greater));
        }
    }

    #[test]
    fn reference_state_is_linear_and_bounded(a in element(), b in element(), z in cyclo_strategy()) {
        let combo = a.add(&b.scale(&z)).unwrap();
        prop_assert_eq!(reference_state(&combo), &reference_state(&a) + &(&reference_state(&b) * &z));
        prop_assert!(AbsSum::modulus(&reference_state(&a)).le(&a.l1_norm()));
    }

    #[test]
    fn cauchy_schwarz(a in element(), b in element()) {
        let ba = reference_state(&b.star().product(&a).unwrap());
        let aa = reference_state(&a.star().product(&a).unwrap());
        let bb = reference_state(&b.star().product(&b).unwrap());
        let gap = &(&aa * &bb) - &ba.norm_sq();
        prop_assert!(matches!(gap.real_sign(), Some(Ordering::Greater | Ordering::Equal)), "{}", gap);
    }

    #[test]
    fn morphisms_are_functorial_star_homomorphisms(a in element(), b in element()) {
        let g = free3();
        let t = PresymplecticMap::new(g.clone(), g.clone(), vec![el(&[1, 0, 0]), el(&[2, 1, 0]), el(&[0, 0, 1])]);
        // e1 ↦ e1 + 2e0 changes ρ(e1, e2) from −3π/4 to −π/12.
        prop_assert!(t.is_err());
        let s = PresymplecticMap::new(g.clone(), g.clone(), vec![el(&[-1, 0, 0]), el(&[0, -1, 0]), el(&[0, 0, -1])]).unwrap();
        let ss = s.compose(&s).unwrap();
        for x in [&a, &b] {
            prop_assert_eq!(ss.apply(x).unwrap(), s.apply(&s.apply(x).unwrap()).unwrap());
            prop_assert_eq!(ss.apply(x).unwrap(), x.clone());
            prop_assert_eq!(s.apply(&x.star()).unwrap(), s.apply(x).unwrap().star());
        }
        prop_assert_eq!(s.apply(&a.product(&b).unwrap()).unwrap(), s.apply(&a).unwrap().product(&s.apply(&b).unwrap()).unwrap());
        prop_assert_eq!(s.apply(&WeylElement::unit(&g)).unwrap(), WeylElement::unit(&g));
        prop_assert!(s.separates_terms(&a));
    }

    #[test]
    fn center_decisions_match_commutators(h in (-6i64..7, -6i64..7, -6i64..7)) {
        let g = free3();
        let h = el(&[h.0, h.1, h.2]);
        let decision = center_test(&g, &h).unwrap();
        let wh = WeylElement::weyl(&g, &h).unwrap();
        let commutes_with_all = (0..3).all(|i| wh.commutator(&WeylElement::weyl(&g, &g.generator(i)).unwrap()).unwrap().is_zero());
        prop_assert_eq!(decision.is_central(), commutes_with_all);
        if let CenterDecision::NotCentral { partner, commutator, .. } = decision {
            prop_assert!(!commutator.is_zero());
            prop_assert_eq!(commutator, wh.commutator(&WeylElement::weyl(&g, &partner).unwrap()).unwrap());
        }
    }
}
