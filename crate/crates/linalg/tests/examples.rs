use gaugeloc_linalg::*;
use num_bigint::BigInt;

fn r(n: i64) -> Rat {
    Rat::int(n)
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn rref_identity() {
    let out = rref(&RationalMatrix::identity(2));
    assert_eq!(out.rank, 2);
    assert_eq!(out.pivots, vec![0, 1]);
    assert_eq!(out.reduced, RationalMatrix::identity(2));
}

#[test]
fn rref_zero() {
    let out = rref(&RationalMatrix::zeros(2, 2));
    assert_eq!(out.rank, 0);
    assert!(out.reduced.is_zero());
}

#[test]
fn rref_dependent_rows() {
    let out = rref(&RationalMatrix::from_ints(&[vec![1, 2], vec![2, 4]]));
    assert_eq!(out.rank, 1);
    assert_eq!(out.reduced.row(0), &SparseVec::from_ints(&[1, 2]));
    assert!(out.reduced.row(1).is_zero());
}

#[test]
fn rref_normalizes_fractions() {
    let out = rref(&RationalMatrix::from_ints(&[vec![0, 3, 1], vec![2, 0, 1]]));
    assert_eq!(out.pivots, vec![0, 1]);
    assert_eq!(out.reduced.get(0, 2), Rat::new(1, 2));
    assert_eq!(out.reduced.get(1, 2), Rat::new(1, 3));
}

#[test]
fn from_triplets_rejects_duplicates() {
    let err = RationalMatrix::from_triplets(2, 2, vec![(0, 0, r(1)), (0, 0, r(2))]).unwrap_err();
    assert_eq!(err, LinalgError::DuplicateEntry { row: 0, col: 0 });
    let m = RationalMatrix::from_triplets(2, 2, vec![(0, 1, r(0)), (1, 0, r(3))]).unwrap();
    assert_eq!(m.nnz(), 1);
}

#[test]
fn kernel_of_identity_is_zero() {
    assert_eq!(kernel_basis(&RationalMatrix::identity(3)).dim(), 0);
}

#[test]
fn kernel_of_zero_is_everything() {
    let k = kernel_basis(&RationalMatrix::zeros(3, 3));
    assert_eq!(k, Subspace::full(3));
}

#[test]
fn kernel_of_single_equation() {
    let k = kernel_basis(&RationalMatrix::from_ints(&[vec![1, 1]]));
    assert_eq!(k.basis(), &[SparseVec::from_ints(&[1, -1])]);
}

#[test]
fn quotient_by_itself_is_trivial() {
    let big = Subspace::full(2);
    let q = quotient_coordinates(&big, &big).unwrap();
    assert_eq!(q.dim(), 0);
}

#[test]
fn quotient_by_zero_keeps_coordinates() {
    let big = Subspace::full(2);
    let q = quotient_coordinates(&Subspace::zero(2), &big).unwrap();
    assert_eq!(q.dim(), 2);
    assert_eq!(q.coords(&SparseVec::from_ints(&[3, -5])).unwrap(), vec![r(3), r(-5)]);
}

#[test]
fn quotient_of_plane_by_diagonal() {
    let big = Subspace::full(2);
    let sub = Subspace::from_vectors(2, vec![SparseVec::from_ints(&[1, 1])]);
    let q = quotient_coordinates(&sub, &big).unwrap();
    assert_eq!(q.dim(), 1);
    let a = q.coords(&SparseVec::from_ints(&[1, 0])).unwrap();
    let b = q.coords(&SparseVec::from_ints(&[0, 1])).unwrap();
    let c = q.coords(&SparseVec::from_ints(&[0, -1])).unwrap();
    assert_ne!(a[0], r(0));
    // (1,0) and (0,1) differ by (1,-1); modulo the diagonal that is twice (1,0).
    assert_eq!(a[0], -b[0].clone());
    // (1,0) − (0,−1) = (1,1) lies in the diagonal, so these two share a class.
    assert_eq!(a, c);
    assert_eq!(q.coords(&SparseVec::from_ints(&[2, 2])).unwrap(), vec![r(0)]);
}

#[test]
fn quotient_requires_containment() {
    let big = Subspace::from_vectors(2, vec![SparseVec::from_ints(&[1, 0])]);
    let sub = Subspace::from_vectors(2, vec![SparseVec::from_ints(&[0, 1])]);
    assert_eq!(quotient_coordinates(&sub, &big).unwrap_err(), LinalgError::NotASubspace { index: 0 });
}

#[test]
fn snf_diag_2_3() {
    let s = smith_normal_form(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]]));
    assert_eq!(s.factors, ints(&[1, 6]));
}

#[test]
fn snf_zero() {
    let s = smith_normal_form(&IntMatrix::zeros(2, 3));
    assert!(s.factors.is_empty());
    assert_eq!(s.d, IntMatrix::zeros(2, 3));
}

#[test]
fn snf_2468() {
    let m = IntMatrix::from_i64(&[vec![2, 4], vec![6, 8]]);
    let s = smith_normal_form(&m);
    assert_eq!(s.factors, ints(&[2, 4]));
    assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
}

#[test]
fn snf_needs_divisibility_fixup() {
    // diag(2,3) is diagonal already; only the gcd/lcm step produces diag(1,6).
    let m = IntMatrix::from_i64(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]);
    assert_eq!(smith_normal_form(&m).factors, ints(&[2, 2, 60]));
}

fn even_lattice() -> IntegerLattice {
    IntegerLattice::from_basis(2, vec![vec![r(2), r(0)], vec![r(0), r(2)]]).unwrap()
}

#[test]
fn lattice_member() {
    let m = lattice_membership(&even_lattice(), &[r(2), r(2)]).unwrap();
    assert_eq!(m, Membership::Member(ints(&[1, 1])));
}

#[test]
fn lattice_non_member_witness() {
    let m = lattice_membership(&even_lattice(), &[r(1), r(0)]).unwrap();
    assert_eq!(m, Membership::NonMember(vec![Rat::new(1, 2), r(0)]));
}

#[test]
fn lattice_outside_span() {
    let l = IntegerLattice::from_basis(2, vec![vec![r(1), r(1)]]).unwrap();
    assert_eq!(lattice_membership(&l, &[r(1), r(0)]).unwrap_err(), LinalgError::NotInSpan);
}

#[test]
fn lattice_from_dependent_generators() {
    let l = IntegerLattice::from_generators(1, &[vec![r(4)], vec![r(6)]]);
    assert_eq!(l.rank(), 1);
    assert!(lattice_membership(&l, &[r(2)]).unwrap().is_member());
    assert!(!lattice_membership(&l, &[r(3)]).unwrap().is_member());
}

#[test]
fn dual_basis_pairs_to_identity() {
    let l = IntegerLattice::from_basis(2, vec![vec![r(2), r(1)], vec![r(0), r(3)]]).unwrap();
    let dual = l.dual_basis();
    for (i, y) in dual.iter().enumerate() {
        for (j, b) in l.basis().iter().enumerate() {
            let dot: Rat = y.iter().zip(b).map(|(a, c)| a * c).sum();
            assert_eq!(dot, if i == j { r(1) } else { r(0) });
        }
    }
}

/// Circle with `n` vertices: edge e runs from vertex e to vertex e+1.
fn circle_d0(n: usize) -> IntMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    for (e, row) in rows.iter_mut().enumerate() {
        row[e] -= 1;
        row[(e + 1) % n] += 1;
    }
    IntMatrix::from_i64(&rows)
}

#[test]
fn circle_generator_halved_is_not_integral() {
    let d0 = circle_d0(8);
    let s = smith_normal_form(&d0);
    assert_eq!(s.rank(), 7);
    assert!(s.factors.iter().all(|d| d == &BigInt::from(1)), "no torsion on the circle");
    // Rows of U past the rank give coordinates on the cokernel ℤ⁸ / im d0 = H¹(S¹, ℤ).
    let class = |w: &[i64]| -> Rat { Rat::from_bigint(s.u.mul_vec(&ints(w))[7].clone()) };
    let gens: Vec<Vec<Rat>> = (0..8).map(|e| vec![class(&unit(8, e))]).collect();
    let lattice = IntegerLattice::from_generators(1, &gens);
    assert_eq!(lattice.rank(), 1);
    let generator = lattice.basis()[0].clone();
    // Every single-edge cocycle has holonomy one, hence the same class.
    assert_eq!(gens[0][0].abs(), generator[0].abs());
    assert!(lattice_membership(&lattice, &generator).unwrap().is_member());
    let half = vec![&generator[0] * &Rat::new(1, 2)];
    assert_eq!(lattice_membership(&lattice, &half).unwrap(), Membership::NonMember(vec![Rat::new(1, 2)]));
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[test]
fn integer_kernel_of_circle_coboundary() {
    let k = integer_kernel(&circle_d0(8));
    assert_eq!(k.len(), 1);
    let first = &k[0][0];
    assert!(k[0].iter().all(|x| x == first) && first.magnitude() == &num_bigint::BigUint::from(1u32));
}

#[test]
fn solve_and_span_solver() {
    let a = RationalMatrix::from_ints(&[vec![1, 2], vec![3, 4], vec![5, 6]]);
    let b = SparseVec::from_ints(&[5, 11, 17]);
    let x = solve(&a, &b).unwrap();
    assert_eq!(a.mul_vec(&x), b);
    assert_eq!(solve(&a, &SparseVec::from_ints(&[1, 0, 0])).unwrap_err(), LinalgError::NotInSpan);
}

#[test]
fn subspace_sum_and_intersection() {
    let u = Subspace::from_vectors(3, vec![SparseVec::from_ints(&[1, 0, 0]), SparseVec::from_ints(&[0, 1, 0])]);
    let w = Subspace::from_vectors(3, vec![SparseVec::from_ints(&[0, 1, 0]), SparseVec::from_ints(&[0, 0, 1])]);
    assert_eq!(u.sum(&w), Subspace::full(3));
    assert_eq!(u.intersection(&w).basis(), &[SparseVec::from_ints(&[0, 1, 0])]);
}

#[test]
fn rational_parsing_and_display() {
    let x: Rat = "-6/8".parse().unwrap();
    assert_eq!(x, Rat::new(-3, 4));
    assert_eq!(x.to_string(), "-3/4");
    assert_eq!(Rat::int(5).to_string(), "5");
    assert!("1/0".parse::<Rat>().is_err());
}
