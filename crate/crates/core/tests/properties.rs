mod common;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_complex, random_matrix, random_unimodular};
use toric_workbench::homology::{boundary_squares_to_zero, chain_complex, homology, Flavor};
use toric_workbench::linalg::{
    complete_to_unimodular, hermite_rows, is_primitive_rows, kernel_lattice, smith,
};
use toric_workbench::{
    acts_almost_freely, acts_freely, boundary_of_simplex, cyclic_polytope_boundary,
    extend_to_characteristic, face_ring_mod2, quotient_projection, torus_from_kernel, Extension,
    ExtensionParams, IntMatrix, SimplicialComplex, Subtorus,
};

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c).prop_map(move |data| {
            IntMatrix::from_vec(r, c, data.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

/// First `k` rows of a random unimodular `m × m` matrix: a primitive `k × m`.
fn primitive_rows(rng: &mut ChaCha8Rng, k: usize, m: usize) -> IntMatrix {
    let u = &random_unimodular(rng, m) * &random_unimodular(rng, m);
    u.select_rows(&(0..k).collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_decomposition_invariants(a in matrix(8, 8, 9)) {
        let d = smith(&a);
        prop_assert_eq!(&(&d.u * &a) * &d.v, d.s.clone());
        prop_assert!(d.u.det().unwrap().abs().is_one());
        prop_assert!(d.v.det().unwrap().abs().is_one());
        for w in d.invariant_factors.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert_eq!(d.rank(), a.rank());
    }

    #[test]
    fn hermite_form_depends_only_on_lattice(a in matrix(5, 6, 6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_unimodular(&mut rng, a.rows());
        prop_assert_eq!(hermite_rows(&(&u * &a)), hermite_rows(&a));
    }

    #[test]
    fn kernel_rows_are_a_primitive_kernel_basis(a in matrix(5, 8, 5)) {
        let k = kernel_lattice(&a);
        prop_assert_eq!(k.rows(), a.cols() - a.rank());
        prop_assert!((&a * &k.transpose()).is_zero());
        prop_assert!(k.rows() == 0 || is_primitive_rows(&k));
        if k.rows() > 0 {
            let m = complete_to_unimodular(&k).unwrap();
            prop_assert!(m.det().unwrap().abs().is_one());
        }
    }

    #[test]
    fn completion_postconditions(seed in any::<u64>(), m in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(0..=m);
        let a = primitive_rows(&mut rng, k, m);
        let c = complete_to_unimodular(&a).unwrap();
        let mut target = IntMatrix::zeros(k, m);
        for i in 0..k {
            target.set(i, i, 1);
        }
        prop_assert_eq!(&a * &c, target);
        prop_assert!(c.det().unwrap().abs().is_one());
    }

    #[test]
    fn quotient_projection_recovers_torus(seed in any::<u64>(), m in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(0..=m);
        let t = Subtorus::new(primitive_rows(&mut rng, k, m)).unwrap();
        let theta = quotient_projection(&t).unwrap();
        prop_assert_eq!(theta.rows(), m - k);
        prop_assert!((&theta * &t.generators().transpose()).is_zero());
        prop_assert_eq!(hermite_rows(&kernel_lattice(&theta)), t.canonical());
    }

    #[test]
    fn homology_identities(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(1..=7);
        let k = random_complex(&mut rng, m);
        prop_assert!(boundary_squares_to_zero(&chain_complex(&k)));
        let h = homology(&k, Flavor::Unreduced);
        prop_assert_eq!(h.euler_characteristic(), k.euler_characteristic());
        for d in &h.degrees {
            prop_assert!(d.mod2 >= d.betti);
        }
        let r = homology(&k, Flavor::Reduced);
        // reduced and unreduced differ only in degree 0 (and -1)
        prop_assert_eq!(r.betti(0) + 1, h.betti(0) + r.betti(-1));
    }

    #[test]
    fn free_implies_almost_free(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, m) = (rng.gen_range(2..=4), rng.gen_range(5..=7));
        let k = cyclic_polytope_boundary(n, m).unwrap();
        let dim = rng.gen_range(1..=m - n);
        let t = Subtorus::new(primitive_rows(&mut rng, dim, m)).unwrap();
        let free = acts_freely(&t, &k).unwrap().is_free();
        let almost = acts_almost_freely(&t, &k).unwrap();
        prop_assert!(!free || almost);
        // freeness is a property of the lattice, not the matrix
        let moved = Subtorus::new(&random_unimodular(&mut rng, dim) * t.generators()).unwrap();
        prop_assert_eq!(acts_freely(&moved, &k).unwrap().is_free(), free);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn extension_contains_torus(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, m) = (rng.gen_range(2..=3), rng.gen_range(5..=7));
        let k = cyclic_polytope_boundary(n, m).unwrap();
        // diagonal circle acts freely on any Z_K with K not a simplex
        let t = Subtorus::diagonal(m);
        let params = ExtensionParams::defaults_for(m, seed);
        match extend_to_characteristic(&t, &k, params).unwrap() {
            Extension::Found { lambda, .. } => {
                let big = torus_from_kernel(&lambda);
                prop_assert!(big.contains(&t));
                prop_assert!(acts_almost_freely(&big, &k).unwrap());
            }
            Extension::Exhausted { tries } => prop_assert!(false, "exhausted after {}", tries),
        }
    }

    #[test]
    fn face_rings_satisfy_poincare_duality(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (n, m) = (rng.gen_range(2..=4), rng.gen_range(5..=8));
        let k = cyclic_polytope_boundary(n, m).unwrap();
        let degree = rng.gen_range(1..=2);
        // rejection-sample a characteristic matrix mod 2
        let ring = (0..500)
            .find_map(|_| face_ring_mod2(&k, &random_matrix(&mut rng, n, m, 1), degree).ok());
        prop_assume!(ring.is_some());
        let ring = ring.unwrap();
        let dims = ring.graded_dims();
        let reversed: Vec<usize> = dims.iter().rev().copied().collect();
        prop_assert_eq!(&dims, &reversed);
        prop_assert_eq!(dims[0], 1);
        prop_assert_eq!(dims.iter().sum::<usize>(), k.facets().len());
        for j in 0..=ring.max_degree() {
            prop_assert_eq!(ring.pairing_rank(j).unwrap(), ring.dim(j));
        }
        let w = ring.total_sw_class();
        prop_assert_eq!(&w[0].coords, &vec![true]);
    }
}

#[test]
fn cyclic_polytopes_are_pure_with_pure_links() {
    for n in 2..=8 {
        for m in n + 1..=12 {
            let k = cyclic_polytope_boundary(n, m).unwrap();
            assert!(k.is_pure());
            assert_eq!(k.dimension(), n as isize - 1);
            for v in 1..=m {
                let link = k.link(&[v]).unwrap();
                assert!(link.complex.is_pure(), "C_{n}({m}) at {v}");
            }
        }
    }
}

#[test]
fn c69_facet_complements_have_odd_gaps() {
    let k = cyclic_polytope_boundary(6, 9).unwrap();
    for f in k.facets() {
        let c = k.complement(f);
        assert!((c[1] - c[0]).is_odd() && (c[2] - c[1]).is_odd(), "{c:?}");
    }
}

#[test]
fn simplex_boundaries_have_sphere_homology() {
    for n in 1..=6 {
        let h = homology(&boundary_of_simplex(n), Flavor::Reduced);
        assert!(h.is_sphere_homology(n as isize - 1));
        let chi = boundary_of_simplex(n).euler_characteristic();
        assert_eq!(chi, 1 + (-1i64).pow(n as u32 - 1));
    }
}

#[test]
fn projective_triviality_up_to_sixteen() {
    for n in 1..=16usize {
        let lambda = toric_workbench::known::projective_characteristic(n);
        let ring = face_ring_mod2(&boundary_of_simplex(n), &lambda, 2).unwrap();
        assert_eq!(ring.sw_triviality(), (n + 1).is_power_of_two(), "n = {n}");
    }
}

#[test]
fn exhaustive_search_has_no_schedule_dependence() {
    use toric_workbench::{search_free, SearchConfig};
    let k = cyclic_polytope_boundary(3, 6).unwrap();
    let cfg = SearchConfig::exhaustive(2, vec![-1, 0, 1]);
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let wide = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let a = serial.install(|| search_free(&k, &cfg).unwrap());
    let b = wide.install(|| search_free(&k, &cfg).unwrap());
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    assert!(a
        .found
        .iter()
        .all(|t| acts_freely(t, &k).unwrap().is_free()));
}

#[test]
fn torus_facet_checks_agree_with_minor_gcd() {
    // independent oracle: injectivity via gcd of maximal minors
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let k = cyclic_polytope_boundary(2, 6).unwrap();
    for _ in 0..100 {
        let a = primitive_rows(&mut rng, 2, 6);
        let t = Subtorus::new(a.clone()).unwrap();
        let expect = k.facets().iter().all(|f| {
            let comp = k.complement(f);
            let g = comp.iter().combinations(2).fold(BigInt::zero(), |g, p| {
                g.gcd(&common::leibniz_det(
                    &a.submatrix_cols(&[*p[0], *p[1]]).unwrap(),
                ))
            });
            g.is_one()
        });
        assert_eq!(acts_freely(&t, &k).unwrap().is_free(), expect);
    }
}

#[test]
fn only_the_empty_face_complex_is_a_minus_one_sphere() {
    let empty_face = SimplicialComplex::new(3, [Vec::<usize>::new()]).unwrap();
    assert!(homology(&empty_face, Flavor::Reduced).is_sphere_homology(-1));
    let void = SimplicialComplex::void(3).unwrap();
    assert!(!homology(&void, Flavor::Reduced).is_sphere_homology(-1));
}
