use std::sync::{Arc, OnceLock};

use gaugeloc::linalg::{Rat, SparseVec};
use gaugeloc::maxwell::observables;
use gaugeloc::presets;
use gaugeloc::yangmills::*;
use gaugeloc::*;
use proptest::prelude::*;

fn cyl2() -> Arc<CubicalComplex> {
    static C: OnceLock<Arc<CubicalComplex>> = OnceLock::new();
    C.get_or_init(|| presets::complex("CYL2").unwrap()).clone()
}

fn ann3() -> Arc<CubicalComplex> {
    static C: OnceLock<Arc<CubicalComplex>> = OnceLock::new();
    C.get_or_init(|| presets::complex("ANN3").unwrap()).clone()
}

fn lattice() -> &'static GaugeShiftLattice {
    static L: OnceLock<GaugeShiftLattice> = OnceLock::new();
    L.get_or_init(|| gauge_lattice(cyl2()).unwrap())
}

fn group(name: &str) -> CharacterObservableGroup {
    character_obs_space(observables(presets::complex(name).unwrap(), 1).unwrap(), Rat::one()).unwrap()
}

/// Oriented sum of a 1-cochain around the spatial circle at time 0.
fn holonomy(c: &CubicalComplex, w: &Cochain) -> Rat {
    let mut acc = Rat::zero();
    for i in 0..c.dim(1) {
        let cell = c.cell(1, i);
        if cell.edges == 0b01 && cell.pos[1] == 0 {
            acc += &w.get(i);
        }
    }
    acc
}

fn random_cochain(c: &CubicalComplex, k: usize, seed: &[(usize, i64)]) -> Cochain {
    let pairs = seed.iter().map(|&(i, v)| (i % c.dim(k), Rat::new(v, 1 + (i % 3) as i64)));
    Cochain::new(c, k, SparseVec::from_pairs(c.dim(k), pairs)).unwrap()
}

fn interior_indicator(c: &CubicalComplex, k: usize, pick: usize) -> Cochain {
    let ok = compact_cells(c, k);
    let cells: Vec<usize> = (0..c.dim(k))
        .filter(|&i| {
            let (lo, hi) = c.time_range(k, i).unwrap();
            ok[i] && lo >= 1 && hi < c.nt()
        })
        .collect();
    Cochain::indicator(c, k, cells[pick % cells.len()])
}

#[test]
fn lattice_membership_on_cylinder() {
    let c = cyl2();
    let g = lattice();
    assert_eq!(g.rank(), 1);
    let n = &g.integer_generators()[0];
    assert_eq!(holonomy(&c, n).abs(), Rat::one());
    let chi = random_cochain(&c, 0, &[(3, 2), (17, -1), (40, 5)]);
    let exact = chi.d(&c).unwrap();
    match g.membership(&exact).unwrap() {
        GaugeMembership::Member { chi: found, winding } => {
            assert!(winding.iter().all(|z| *z == 0.into()));
            assert_eq!(found.d(&c).unwrap(), exact);
        }
        other => panic!("{other:?}"),
    }
    let winding = g.shifts()[0].add(&exact).unwrap();
    assert!(g.membership(&winding).unwrap().is_member());
    match g.membership(n).unwrap() {
        GaugeMembership::NonMember { coords } => assert_eq!(coords, vec![Rat::new(1, 2)]),
        other => panic!("{other:?}"),
    }
    let bump = Cochain::indicator(&c, 1, 5);
    assert_eq!(g.membership(&bump).unwrap(), GaugeMembership::NotClosed);
}

#[test]
fn curvature_basics() {
    let c = cyl2();
    let g = lattice();
    assert!(curvature(&Connection::zero(c.clone())).unwrap().is_zero());
    let ab = Connection::new(c.clone(), g.integer_generators()[0].clone()).unwrap();
    assert!(curvature(&ab).unwrap().is_zero());
    let e = interior_indicator(&c, 1, 7);
    let l = Connection::new(c.clone(), e.clone()).unwrap();
    assert_eq!(curvature(&l).unwrap(), e.d(&c).unwrap().scale(&Rat::int(-1)));
    for s in g.shifts() {
        assert_eq!(curvature(&l.shifted(&s).unwrap()).unwrap(), curvature(&l).unwrap());
    }
}

#[test]
fn separation_of_aharonov_bohm_shift() {
    let c = cyl2();
    let g = lattice();
    let zero = Connection::zero(c.clone());
    let ab = Connection::new(c.clone(), g.integer_generators()[0].clone()).unwrap();
    match separate_connections(g, &zero, &ab).unwrap() {
        Separation::Separated { character, values } => {
            assert_ne!(values.0, values.1);
            // e^{iπ} = −1.
            assert_eq!(character.ratio(&zero, &ab).unwrap(), Rat::one());
        }
        other => panic!("{other:?}"),
    }
    let chi = random_cochain(&c, 0, &[(1, 1), (9, -3)]);
    let shifted = zero.shifted(&chi.d(&c).unwrap().add(&g.shifts()[0]).unwrap()).unwrap();
    assert!(matches!(separate_connections(g, &zero, &shifted).unwrap(), Separation::GaugeEquivalent { .. }));
    let bumped = zero.shifted(&interior_indicator(&c, 1, 3)).unwrap();
    match separate_connections(g, &zero, &bumped).unwrap() {
        Separation::Separated { values, .. } => assert_ne!(values.0, values.1),
        other => panic!("{other:?}"),
    }
}

#[test]
fn separation_agrees_with_holonomy_enumeration() {
    let c = cyl2();
    let g = lattice();
    let n = &g.integer_generators()[0];
    let chi = random_cochain(&c, 0, &[(2, 1), (30, 2)]).d(&c).unwrap();
    let zero = Connection::zero(c.clone());
    for den in 1..=4i64 {
        for num in -8..=8i64 {
            let q = Rat::new(num, den);
            let shift = n.scale(&q).add(&chi).unwrap();
            let hol = holonomy(&c, &shift);
            let expected = (&hol / &Rat::int(2)).is_integer();
            let other = zero.shifted(&shift).unwrap();
            match separate_connections(g, &zero, &other).unwrap() {
                Separation::GaugeEquivalent { .. } => assert!(expected, "q = {q}"),
                Separation::Separated { character, values } => {
                    assert!(!expected, "q = {q}");
                    assert_ne!(values.0, values.1);
                    let turns = &hol / &holonomy(&c, n);
                    assert_eq!(character.ratio(&zero, &other).unwrap(), normalize_phase(&turns));
                }
            }
        }
    }
}

#[test]
fn curvature_dual_evaluates_curvature() {
    let c = cyl2();
    let g = lattice();
    let beta = interior_indicator(&c, 2, 11).add(&interior_indicator(&c, 2, 4).scale(&Rat::new(-2, 3))).unwrap();
    let obs = curvature_dual(&c, &beta).unwrap();
    assert!(obs.verify(&c, g).unwrap());
    assert_eq!(obs.linear, beta.delta(&c).unwrap().scale(&Rat::int(-1)));
    assert!(obs.value(&Connection::zero(c.clone())).unwrap().is_zero());
    for seed in [[(1usize, 2i64), (50, -1)], [(7, 3), (88, 1)]] {
        let l = Connection::new(c.clone(), random_cochain(&c, 1, &seed)).unwrap();
        assert_eq!(obs.value(&l).unwrap(), metric_pairing(&c, &beta, &curvature(&l).unwrap()).unwrap());
    }
    // A spatial edge on the initial slice is not compactly supported.
    let edge = (0..c.dim(1)).find(|&i| c.time_range(1, i) == Some((0, 0))).unwrap();
    let leak = Cochain::indicator(&c, 1, edge);
    assert!(matches!(mw_dual(&c, &leak), Err(Error::SupportLeak { .. })));
}

#[test]
fn mw_dual_vanishes_on_shell() {
    let c = cyl2();
    let sols = on_shell_connections(c.clone()).unwrap();
    assert!(!sols.is_empty());
    for pick in [0, 5, 13, 21] {
        let alpha = interior_indicator(&c, 1, pick);
        let obs = mw_dual(&c, &alpha).unwrap();
        for l in &sols {
            assert!(obs.value(l).unwrap().is_zero());
        }
    }
}

#[test]
fn affine_space_on_cylinder() {
    let c = cyl2();
    let a = affine_obs_space(c.clone()).unwrap();
    assert_eq!(a.radical().len(), 1);
    assert_eq!(a.dim(), 1);
    assert_eq!(a.closed_duals().dim(), 1);
    // Flat connections are invisible to affine observables.
    let ab = Connection::new(c.clone(), lattice().integer_generators()[0].clone()).unwrap();
    for r in a.representatives() {
        assert!(metric_pairing(&c, &Cochain::new(&c, 1, r.clone()).unwrap(), ab.value()).unwrap().is_zero());
    }
    for v in a.linear().basis() {
        assert!(metric_pairing(&c, &Cochain::new(&c, 1, v.clone()).unwrap(), ab.value()).unwrap().is_zero());
    }
}

#[test]
fn psv0_recovers_locality() {
    let ts = affine_obs_space(presets::complex("TWOSTRIP").unwrap()).unwrap();
    let tc = affine_obs_space(presets::complex("TWOCYL").unwrap()).unwrap();
    let e = presets::strips_into_circles(ts.complex().clone(), tc.complex().clone()).unwrap();
    assert!(psv0_locality(&e, &ts, &tc).unwrap().injective());
    let ann = affine_obs_space(presets::complex("ANN3").unwrap()).unwrap();
    let plane = affine_obs_space(presets::complex("PLANE3").unwrap()).unwrap();
    let e = presets::annulus_into_plane(ann.complex().clone(), plane.complex().clone()).unwrap();
    let r = psv0_locality(&e, &ann, &plane).unwrap();
    assert!(r.injective(), "{r:?}");
    assert_eq!(r.source_dim, ann.dim() - ann.closed_duals().dim());
}

#[test]
fn character_radical_and_center() {
    let cy = group("CYL2");
    assert_eq!(cy.exprad().len(), 0);
    assert_eq!(cy.center_rank(), 1);
    let gen = cy.center()[0].to_dense();
    assert!(cy.in_center(&gen).unwrap());
    assert!(cy.is_character(&gen).unwrap());
    let half: Vec<Rat> = gen.iter().map(|x| x / &Rat::int(2)).collect();
    assert!(!cy.in_center(&half).unwrap());
    // Central elements pair into 2πℤ with every character basis element that is gauge invariant.
    for j in 0..cy.maxwell().dim() {
        let mut y = vec![Rat::zero(); cy.maxwell().dim()];
        y[j] = Rat::one();
        if cy.is_character(&y).unwrap() {
            assert!((&cy.upsilon(&gen, &y) / &Rat::int(2)).is_integer());
        }
    }

    let ann = group("ANN3");
    assert_eq!(ann.exprad().len(), 1);
    for r in ann.exprad() {
        assert!(ann.in_center(&r.to_dense()).unwrap());
    }
}

#[test]
fn character_locality_and_no_go() {
    let (ts, tc, mk) = (group("TWOSTRIP"), group("TWOCYL"), group("MINK2"));
    let f = presets::strips_into_circles(ts.maxwell().complex().clone(), tc.maxwell().complex().clone()).unwrap();
    let h = presets::strips_into_line(ts.maxwell().complex().clone(), mk.maxwell().complex().clone()).unwrap();
    let audit = ym_locality_audit(&f, &h, &ts, &tc, &mk).unwrap();
    assert_eq!((audit.kernel_f, audit.kernel_h), (0, 1));
    assert_eq!((audit.cohomology_kernel_f, audit.cohomology_kernel_h), (0, 1));
    let w = audit.witness.expect("witness");
    assert!(!w.value.is_zero());
    assert!(w.outside_center());
    assert!(w.value.is_integer() && !(&w.value / &Rat::int(2)).is_integer(), "{}", w.value);
    // The partner is a genuine character of TWOCYL.
    let g = gauge_lattice(tc.maxwell().complex().clone()).unwrap();
    let partner = Cochain::new(tc.maxwell().complex(), 1, w.partner_cochain.clone()).unwrap();
    assert!(AffineCharacter::new(&g, Rat::zero(), partner).is_ok());

    let swapped = ym_locality_audit(&h, &f, &ts, &mk, &tc).unwrap();
    assert!(swapped.witness.is_none());
}

fn strip() -> Arc<CubicalComplex> {
    let s = SpacetimeSpec::new(AxisSpec::interval(3), vec![ComponentSpec::new(vec![AxisSpec::interval(8)])]);
    Arc::new(build_complex(&s).unwrap())
}

#[test]
fn character_isotony() {
    let one = strip();
    let g1 = character_obs_space(observables(one.clone(), 1).unwrap(), Rat::one()).unwrap();
    let (ts, tc, mk) = (group("TWOSTRIP"), group("TWOCYL"), group("MINK2"));
    let into_pair =
        Embedding::new(one.clone(), ts.maxwell().complex().clone(), 0, &[ComponentMap::new(0, vec![0])], 1).unwrap();
    let f = presets::strips_into_circles(ts.maxwell().complex().clone(), tc.maxwell().complex().clone()).unwrap();
    let r = ym_isotony_quotient(&[into_pair.clone(), f], &[&g1, &ts, &tc]).unwrap();
    assert!(r.injective(), "{r:?}");
    assert!(r.kernel_dims.iter().all(|&k| k == 0));
    let h = presets::strips_into_line(ts.maxwell().complex().clone(), mk.maxwell().complex().clone()).unwrap();
    let r = ym_isotony_quotient(&[into_pair, h], &[&g1, &ts, &mk]).unwrap();
    assert!(r.injective(), "{r:?}");
    assert_eq!(r.kernel_dims[1], 1);
    assert_eq!(r.quotient_dims[1], ts.maxwell().dim() - 1);
    let id = Embedding::identity(tc.maxwell().complex().clone());
    let r = ym_isotony_quotient(&[id], &[&tc, &tc]).unwrap();
    assert_eq!(r.kernel_dims, vec![0, 0]);
}

#[test]
fn charges() {
    let c = cyl2();
    let flat = Connection::new(c.clone(), lattice().integer_generators()[0].clone()).unwrap();
    let t = charge_observables(&flat).unwrap();
    assert!(t.magnetic.iter().chain(&t.electric).all(Rat::is_zero));
    let h = cohomology(&c, 2, SupportSystem::C, Flavor::D).unwrap();
    for l in on_shell_connections(c.clone()).unwrap() {
        let t = charge_observables(&l).unwrap();
        let f = curvature(&l).unwrap();
        for (x, r) in t.electric.iter().zip(h.representatives()) {
            let mut direct = Rat::zero();
            for (i, v) in r.values().iter() {
                direct += &(&(&c.weights(2)[i] * v) * &f.get(i));
            }
            assert_eq!(*x, direct);
        }
    }
    // The torus carries magnetic classes; they all vanish on a trivial bundle.
    let tor = presets::complex("TOR3").unwrap();
    let ls = on_shell_connections(tor.clone()).unwrap();
    assert!(!ls.is_empty());
    for l in ls.iter().take(4) {
        let t = charge_observables(l).unwrap();
        assert!(!t.magnetic.is_empty());
        assert!(t.magnetic.iter().all(Rat::is_zero));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn curvature_dual_is_adjoint_on_compact_supports(
        b in proptest::collection::vec((0usize..10_000, -4i64..5), 1..6),
        s in proptest::collection::vec((0usize..10_000, -4i64..5), 1..8),
    ) {
        for c in [cyl2(), ann3()] {
            let cells: Vec<usize> = (0..c.dim(2)).filter(|&i| compact_cells(&c, 2)[i]).collect();
            let beta = SparseVec::from_pairs(c.dim(2), b.iter().map(|&(i, v)| (cells[i % cells.len()], Rat::new(v, 1 + (i % 2) as i64))));
            let beta = Cochain::new(&c, 2, beta).unwrap();
            let obs = curvature_dual(&c, &beta).unwrap();
            let l = Connection::new(c.clone(), random_cochain(&c, 1, &s)).unwrap();
            prop_assert_eq!(obs.value(&l).unwrap(), metric_pairing(&c, &beta, &curvature(&l).unwrap()).unwrap());
        }
    }

    #[test]
    fn character_values_are_gauge_invariant_and_additive(
        s1 in proptest::collection::vec((0usize..10_000, -4i64..5), 1..6),
        s2 in proptest::collection::vec((0usize..10_000, -4i64..5), 1..6),
        chi in proptest::collection::vec((0usize..10_000, -4i64..5), 1..6),
        wind in -3i64..4,
        p in 0usize..100,
    ) {
        let c = cyl2();
        let g = lattice();
        let alpha = dual_generators(g).unwrap().remove(0);
        let b1 = interior_indicator(&c, 2, p);
        let lin = alpha.add(&b1.delta(&c).unwrap().scale(&Rat::new(1, 3))).unwrap();
        let ch = AffineCharacter::new(g, Rat::new(1, 2), lin).unwrap();
        let l = Connection::new(c.clone(), random_cochain(&c, 1, &s1)).unwrap();
        let shift = random_cochain(&c, 0, &chi).d(&c).unwrap().add(&g.shifts()[0].scale(&Rat::int(wind))).unwrap();
        prop_assert_eq!(ch.value(&l).unwrap(), ch.value(&l.shifted(&shift).unwrap()).unwrap());
        // Homomorphism: the linear parts add and the phases add modulo 2.
        let other = AffineCharacter::new(g, Rat::new(1, 3), alpha.scale(&Rat::int(2))).unwrap();
        let lin_sum = ch.linear.add(&other.linear).unwrap();
        let sum = AffineCharacter::new(g, &ch.phase + &other.phase, lin_sum).unwrap();
        let l2 = Connection::new(c.clone(), random_cochain(&c, 1, &s2)).unwrap();
        prop_assert_eq!(sum.value(&l2).unwrap(), normalize_phase(&(&ch.value(&l2).unwrap() + &other.value(&l2).unwrap())));
    }

    #[test]
    fn affine_observables_blind_to_flat_shifts(
        s in proptest::collection::vec((0usize..10_000, -4i64..5), 1..6),
        q in -6i64..7,
        p in 0usize..100,
    ) {
        let c = cyl2();
        let g = lattice();
        let obs = curvature_dual(&c, &interior_indicator(&c, 2, p)).unwrap();
        prop_assert!(obs.verify(&c, g).unwrap());
        let l = Connection::new(c.clone(), random_cochain(&c, 1, &s)).unwrap();
        let flat = g.integer_generators()[0].scale(&Rat::new(q, 4));
        prop_assert_eq!(obs.value(&l).unwrap(), obs.value(&l.shifted(&flat).unwrap()).unwrap());
    }
}
