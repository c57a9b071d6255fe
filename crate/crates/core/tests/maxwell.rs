use std::sync::{Arc, OnceLock};

use gaugeloc::linalg::{rank, Rat, RationalMatrix, SparseVec, Subspace};
use gaugeloc::maxwell::*;
use gaugeloc::presets;
use gaugeloc::propagator::build_dalembert;
use gaugeloc::*;
use proptest::prelude::*;

fn obs(name: &str) -> &'static MaxwellObservables {
    static CACHE: OnceLock<Vec<(&'static str, MaxwellObservables)>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        ["CYL2", "PLANE3", "ANN3", "ANN3S", "TWOCYL", "TWOSTRIP", "MINK2"]
            .into_iter()
            .map(|n| (n, observables(presets::complex(n).unwrap(), 1).unwrap()))
            .collect()
    });
    &all.iter().find(|(n, _)| *n == name).unwrap().1
}

fn strip() -> Arc<CubicalComplex> {
    let s = SpacetimeSpec::new(AxisSpec::interval(3), vec![ComponentSpec::new(vec![AxisSpec::interval(8)])]);
    Arc::new(build_complex(&s).unwrap())
}

fn strip_at(strip: &Arc<CubicalComplex>, line: &Arc<CubicalComplex>, offset: usize) -> Embedding {
    Embedding::new(strip.clone(), line.clone(), 0, &[ComponentMap::new(0, vec![offset])], 1).unwrap()
}

#[test]
fn dimensions() {
    let a = obs("ANN3");
    assert_eq!((a.inv().dim(), a.van().dim(), a.dim(), a.radical().len()), (145, 4, 141, 1));
    assert_eq!(obs("PLANE3").radical().len(), 0);
    let c = obs("CYL2");
    assert_eq!((c.dim(), c.radical().len()), (2, 0));
    assert_eq!(obs("TWOSTRIP").radical().len(), 2);
    let t = obs("TWOCYL");
    assert_eq!((t.dim(), t.radical().len()), (4, 0));
}

#[test]
fn dimensions_by_rank_counting() {
    // dim Inv = |L| − rank δ|_L and dim Van = dim δdC(R) + |L| − dim(δdC(R) + C(L)).
    for name in ["CYL2", "ANN3", "TWOSTRIP", "TWOCYL"] {
        let o = obs(name);
        let c = o.complex();
        let l: Vec<usize> = (0..c.dim(1)).filter(|&i| o.region()[i]).collect();
        let r: Vec<usize> = (0..c.dim(1)).filter(|&i| gauge_region(c, 1)[i]).collect();
        assert_eq!(o.inv().dim(), l.len() - rank(&c.delta(1).select_cols(&l)), "{name}");
        let dd = c.delta(2).mul(c.d(1)).select_cols(&r);
        let img = rank(&dd);
        let units: Vec<SparseVec> = l.iter().map(|&i| SparseVec::unit(c.dim(1), i)).collect();
        let mut both = dd.columns();
        both.extend(units);
        let sum = rank(&RationalMatrix::from_columns(c.dim(1), &both));
        assert_eq!(o.van().dim(), img + l.len() - sum, "{name}");
    }
}

#[test]
fn van_inside_inv_and_gram_antisymmetric() {
    for name in ["CYL2", "ANN3", "TWOSTRIP", "TWOCYL", "MINK2"] {
        let o = obs(name);
        let c = o.complex();
        for v in o.van().basis() {
            assert!(o.inv().contains(v), "{name}");
            assert!(c.delta(1).mul_vec(v).is_zero());
        }
        let g = o.gram();
        assert_eq!(g.add(&g.transpose()), RationalMatrix::zeros(g.rows(), g.cols()), "{name}");
    }
}

#[test]
fn gram_entries_from_separate_green_operators() {
    let o = obs("TWOCYL");
    let c = o.complex();
    let op = o.operator();
    for (i, a) in o.representatives().iter().enumerate() {
        for (j, b) in o.representatives().iter().enumerate() {
            let b = Cochain::new(c, 1, b.clone()).unwrap();
            let gb = op.retarded(&b).unwrap().sub(&op.advanced(&b).unwrap()).unwrap();
            let a = Cochain::new(c, 1, a.clone()).unwrap();
            assert_eq!(metric_pairing(c, &a, &gb).unwrap(), o.gram().get(i, j));
        }
    }
}

#[test]
fn flux_class_on_cylinder_is_nonzero() {
    let o = obs("CYL2");
    let c = o.complex();
    // θ = unit 2-cochain on one interior square: closed and time-compact.
    let cell = Cell { comp: 0, pos: [3, 2, 0, 0], edges: 0b11 };
    let theta = Cochain::from_cells(c, 2, &[(cell, Rat::one())]).unwrap();
    let flux = theta.delta(c).unwrap();
    let x = o.coordinates(flux.values()).unwrap();
    assert!(x.iter().any(|v| !v.is_zero()));
}

#[test]
fn radical_lies_in_gram_nullspace() {
    for name in ["ANN3", "TWOSTRIP", "MINK2"] {
        let o = obs(name);
        for r in o.radical() {
            assert!(o.gram().mul_vec(r).is_zero(), "{name}");
            assert!(o.gram().transpose().mul_vec(r).is_zero(), "{name}");
        }
        assert!(o.gram_nullity() >= o.radical().len());
    }
}

#[test]
fn radical_matches_flux_classes() {
    for name in ["CYL2", "PLANE3", "ANN3", "TWOCYL", "TWOSTRIP", "MINK2"] {
        let check = radical_check(obs(name)).unwrap();
        assert!(check.agrees(), "{name}: {check:?}");
    }
    let a = radical_check(obs("ANN3")).unwrap();
    assert_eq!((a.radical_dim, a.cohomology_kernel_dim, a.flux_span_dim), (1, 1, 1));
}

#[test]
fn degree_refusals() {
    let c = presets::complex("CYL2").unwrap();
    assert!(matches!(observables(c.clone(), 0), Err(Error::DegreeMismatch(_))));
    assert!(matches!(observables(c.clone(), 2), Err(Error::DegreeMismatch(_))));
    assert!(matches!(solution_space(c, 0), Err(Error::DegreeMismatch(_))));
}

#[test]
fn locality_kernels() {
    let (ann, plane) = (obs("ANN3"), obs("PLANE3"));
    let e = presets::annulus_into_plane(ann.complex().clone(), plane.complex().clone()).unwrap();
    let k = locality_kernel(&e, ann, plane).unwrap();
    assert_eq!(k.dim(), 1);
    assert!(k.agrees());
    // Generated by the electric flux around the hole.
    let flux = radical_check(ann).unwrap();
    assert!(flux.flux_in_radical);
    assert_eq!(Subspace::from_vectors(ann.dim(), k.kernel.clone()).dim(), 1);
    assert!(ann.in_radical(&k.kernel[0].to_dense()));

    let (ts, mk, tc) = (obs("TWOSTRIP"), obs("MINK2"), obs("TWOCYL"));
    let h = presets::strips_into_line(ts.complex().clone(), mk.complex().clone()).unwrap();
    let k = locality_kernel(&h, ts, mk).unwrap();
    assert_eq!(k.dim(), 1);
    assert!(k.agrees());
    let f = presets::strips_into_circles(ts.complex().clone(), tc.complex().clone()).unwrap();
    let k = locality_kernel(&f, ts, tc).unwrap();
    assert_eq!(k.dim(), 0);
    assert!(k.agrees());

    let id = Embedding::identity(obs("CYL2").complex().clone());
    assert_eq!(locality_kernel(&id, obs("CYL2"), obs("CYL2")).unwrap().dim(), 0);
}

#[test]
fn strip_kernel_has_opposite_component_parts() {
    let (ts, mk) = (obs("TWOSTRIP"), obs("MINK2"));
    let c = ts.complex();
    let h = presets::strips_into_line(c.clone(), mk.complex().clone()).unwrap();
    let v = locality_kernel(&h, ts, mk).unwrap().kernel[0].to_dense();
    // Each basis class sits on one strip, so the generator is a difference of the two.
    let comp_of = |r: &SparseVec| {
        let comps: Vec<u16> = r.iter().map(|(i, _)| c.cell(1, i).comp).collect();
        assert!(comps.windows(2).all(|w| w[0] == w[1]));
        comps[0]
    };
    let reps = ts.representatives();
    assert_ne!(comp_of(&reps[0]), comp_of(&reps[1]));
    let theta = flux_sources(ts).unwrap().unwrap();
    // Integrals of θ over each strip, for the kernel combination.
    let mut integrals = [Rat::zero(), Rat::zero()];
    for (t, coeff) in theta.iter().zip(&express_in(ts, &theta, &v)) {
        for (i, x) in t.values().iter() {
            integrals[c.cell(2, i).comp as usize] += &(coeff * x);
        }
    }
    assert!(!integrals[0].is_zero());
    assert_eq!(integrals[0], -integrals[1].clone());
    let norm = integrals[1].clone();
    assert_eq!([&integrals[0] / &norm, &integrals[1] / &norm], [Rat::int(-1), Rat::int(1)]);
}

/// Coefficients of `v` (in Obs coordinates) over the classes `[δθ_i]`.
fn express_in(o: &MaxwellObservables, theta: &[Cochain], v: &[Rat]) -> Vec<Rat> {
    let c = o.complex();
    let cols: Vec<SparseVec> =
        theta.iter().map(|t| SparseVec::from_dense(&o.coordinates(t.delta(c).unwrap().values()).unwrap())).collect();
    let solver = gaugeloc::linalg::SpanSolver::new(o.dim(), cols);
    solver.solve(&SparseVec::from_dense(v)).unwrap().to_dense()
}

#[test]
fn no_go() {
    let (ts, mk, tc) = (obs("TWOSTRIP"), obs("MINK2"), obs("TWOCYL"));
    let h = presets::strips_into_line(ts.complex().clone(), mk.complex().clone()).unwrap();
    let f = presets::strips_into_circles(ts.complex().clone(), tc.complex().clone()).unwrap();
    let w = no_go_witness(&f, &h, ts, tc, mk).unwrap().expect("witness");
    assert!(!w.value.is_zero());
    // Recompute the pairing directly on cochains.
    let c = tc.complex();
    let image = f.extend_by_zero(&Cochain::new(ts.complex(), 1, w.element_cochain.clone()).unwrap()).unwrap();
    let partner = Cochain::new(c, 1, w.partner_cochain.clone()).unwrap();
    let g = tc.operator().causal_propagator(&partner).unwrap();
    assert_eq!(metric_pairing(c, &image, &g).unwrap(), w.value);
    assert_eq!(tc.tau(&w.image, &unit(tc.dim(), w.partner)), w.value);
    // The element dies along the line.
    let on_line = h.extend_by_zero(&Cochain::new(ts.complex(), 1, w.element_cochain.clone()).unwrap()).unwrap();
    assert!(mk.coordinates(on_line.values()).unwrap().iter().all(Rat::is_zero));

    assert!(no_go_witness(&h, &f, ts, mk, tc).unwrap().is_none());
    let cy = obs("CYL2");
    let id = Embedding::identity(cy.complex().clone());
    assert!(no_go_witness(&id, &id, cy, cy, cy).unwrap().is_none());
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()
}

#[test]
fn causality() {
    let s = strip();
    let line = presets::complex("MINK2").unwrap();
    let o = observables(s.clone(), 1).unwrap();
    let r = causality_check(&strip_at(&s, &line, 2), &strip_at(&s, &line, 14), &o, &o).unwrap();
    assert!(r.is_zero());
    assert_eq!((r.block.rows(), r.block.cols()), (o.dim(), o.dim()));
    assert!(matches!(
        causality_check(&strip_at(&s, &line, 2), &strip_at(&s, &line, 4), &o, &o),
        Err(Error::ShadowsIntersect)
    ));
    let same = strip_at(&s, &line, 8);
    assert!(matches!(causality_check(&same, &same, &o, &o), Err(Error::ShadowsIntersect)));
}

#[test]
fn time_slice() {
    let small = Arc::new(build_complex(&presets::cyl2_window_spec()).unwrap());
    let big = obs("CYL2");
    let o = observables(small.clone(), 1).unwrap();
    let e = presets::sub_window(small, big.complex().clone(), 1).unwrap();
    let r = timeslice_check(&e, &o, big).unwrap();
    assert!(r.bijective(), "{r:?}");

    let mut thin = presets::cyl2_spec();
    thin.time = AxisSpec::interval(3);
    let thin = Arc::new(build_complex(&thin).unwrap());
    let o = observables(thin.clone(), 1).unwrap();
    let e = presets::sub_window(thin, big.complex().clone(), 2).unwrap();
    assert!(matches!(timeslice_check(&e, &o, big), Err(Error::WindowTooThin(_))));
}

#[test]
fn isotony_chain() {
    let (small, ann, plane) = (obs("ANN3S"), obs("ANN3"), obs("PLANE3"));
    let e1 = presets::sub_window(small.complex().clone(), ann.complex().clone(), 0).unwrap();
    let e2 = presets::annulus_into_plane(ann.complex().clone(), plane.complex().clone()).unwrap();
    let r = isotony_quotient(&[e1, e2], &[small, ann, plane]).unwrap();
    assert!(r.injective(), "{r:?}");
    assert_eq!(r.kernel_dims[1], 1);
    assert_eq!(r.quotient_dims[1], ann.dim() - 1);
    assert_eq!(*r.kernel_dims.last().unwrap(), 0);
}

#[test]
fn isotony_bookkeeping_on_small_matrices() {
    // ℚ² → ℚ² → ℚ, killing (1,−1) at the last step.
    let a = RationalMatrix::identity(2);
    let b = RationalMatrix::from_columns(1, &[SparseVec::from_dense(&[Rat::one()]), SparseVec::from_dense(&[Rat::one()])]);
    let r = isotony_from_steps(&[a, b], &[2, 2, 1]).unwrap();
    assert_eq!(r.kernel_dims, vec![1, 1, 0]);
    assert_eq!(r.quotient_dims, vec![1, 1, 1]);
    assert!(r.injective());
}

#[test]
fn solutions_on_cylinder() {
    let o = obs("CYL2");
    let s = solution_space(o.complex().clone(), 1).unwrap();
    assert!(s.on_shell);
    assert!(s.injective());
    let e = evaluation_matrix(o, &s);
    assert_eq!(rank(&e), o.dim());
    assert_eq!(rank(&e), s.dim());
    // δd(Gω) = 0 off the time ends, checked directly.
    let c = o.complex();
    for a in &s.solutions {
        let f = c.delta(2).mul(c.d(1)).mul_vec(a);
        for (i, _) in f.iter() {
            let (lo, hi) = c.time_range(1, i).unwrap();
            assert!(lo == 0 || hi == c.nt(), "{}", c.show_index(1, i));
        }
    }
}

#[test]
fn solutions_refused_on_bounded_space() {
    let c = presets::complex("ANN3").unwrap();
    assert!(matches!(solution_space(c, 1), Err(Error::ShadowOverflow { .. })));
}

#[test]
fn lorenz_fixing() {
    let o = obs("CYL2");
    let c = o.complex();
    let s = solution_space(c.clone(), 1).unwrap();
    let op = build_dalembert(c.clone(), 1).unwrap();
    for a in &s.solutions {
        let a = Cochain::new(c, 1, a.clone()).unwrap();
        let chi = lorenz_gauge(&op, &a, 3).unwrap();
        assert_eq!(chi.degree(), 0);
        let fixed = a.add(&chi.d(c).unwrap()).unwrap();
        let div = fixed.delta(c).unwrap();
        for (i, _) in div.values().iter() {
            let (t, _) = c.time_range(0, i).unwrap();
            assert!(t < 2 || t > c.nt() - 2, "δ(A + dχ) ≠ 0 at {}", c.show_index(0, i));
        }
        // Gauge shift leaves every observable unchanged.
        for j in 0..o.dim() {
            let x = unit(o.dim(), j);
            assert_eq!(o.evaluate(&x, &a).unwrap(), o.evaluate(&x, &fixed).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn evaluation_is_gauge_invariant(seed in proptest::collection::vec((0usize..10_000, -5i64..6), 1..8), j in 0usize..141) {
        let o = obs("ANN3");
        let c = o.complex();
        let chi = SparseVec::from_pairs(c.dim(0), seed.iter().map(|&(i, v)| (i % c.dim(0), Rat::new(v, 1 + (i % 4) as i64))));
        let chi = Cochain::new(c, 0, chi).unwrap();
        let a = Cochain::new(c, 1, o.propagated()[j % o.dim()].clone()).unwrap();
        let shifted = a.add(&chi.d(c).unwrap()).unwrap();
        let x = unit(o.dim(), (j * 7) % o.dim());
        prop_assert_eq!(o.evaluate(&x, &a).unwrap(), o.evaluate(&x, &shifted).unwrap());
    }

    #[test]
    fn coordinates_reconstruct_modulo_van(seed in proptest::collection::vec((0usize..1000, -5i64..6), 1..6)) {
        let o = obs("ANN3");
        let basis = o.inv().basis();
        let mut w = SparseVec::zeros(o.complex().dim(1));
        for &(i, v) in &seed {
            w = w.add_scaled(&Rat::int(v), &basis[i % basis.len()]);
        }
        let x = o.coordinates(&w).unwrap();
        let diff = w.sub(&o.combine(&x));
        prop_assert!(o.van().contains(&diff));
        // τ is blind to the Van part.
        let y = unit(o.dim(), seed[0].0 % o.dim());
        let direct = w.weighted_dot(&o.g_of(&y), o.complex().weights(1));
        prop_assert_eq!(direct, o.tau(&x, &y));
    }

    #[test]
    fn tau_is_antisymmetric_on_random_classes(
        a in proptest::collection::vec(-4i64..5, 4),
        b in proptest::collection::vec(-4i64..5, 4),
    ) {
        let o = obs("TWOCYL");
        let x: Vec<Rat> = a.iter().map(|&v| Rat::int(v)).collect();
        let y: Vec<Rat> = b.iter().map(|&v| Rat::int(v)).collect();
        prop_assert_eq!(o.tau(&x, &y), -o.tau(&y, &x));
    }
}
