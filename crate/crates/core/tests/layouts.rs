use pairkit::diophantine::{brute_force, solve_cantor_dioph, uniqueness_scan, Equation, Solution};
use pairkit::inverses::invert_cantor1;
use pairkit::lattice::tetrahedral;
use pairkit::storage::{tri_index, tri_unindex};
use pairkit::{Int, LatticePoint3, Nat, PackedSimplex3, PackedTriangular};
use proptest::prelude::*;

#[test]
fn triangular_layout_is_a_bijection_onto_a_prefix() {
    for order in [1, 2, 3, 17, 100, 512] {
        let len = (order * (order + 1) / 2) as usize;
        let mut hit = vec![false; len];
        for r in 0..order {
            for c in 0..=r {
                let i = tri_index(r, c).unwrap() as usize;
                assert!(i < len && !hit[i], "order {order}: ({r},{c}) -> {i}");
                hit[i] = true;
                assert_eq!(tri_unindex(i as Int), (r, c));
            }
        }
        assert!(hit.iter().all(|&h| h));
    }
}

#[test]
fn simplex_layout_is_a_bijection_onto_a_prefix() {
    for n in 0..=40 {
        let s = PackedSimplex3::new(n, 0u8);
        let len = ((n + 1) * (n + 2) * (n + 3) / 6) as usize;
        assert_eq!(s.len(), len);
        let mut hit = vec![false; len];
        for x in 0..=n {
            for y in 0..=n - x {
                for z in 0..=n - x - y {
                    let i = s.index_of(LatticePoint3::new(x, y, z)).unwrap();
                    assert!(!hit[i]);
                    hit[i] = true;
                }
            }
        }
        assert!(hit.iter().all(|&h| h), "extent {n}");
        assert_eq!(len as Int, tetrahedral(n + 1));
    }
}

#[test]
fn packed_matrix_matches_a_dense_copy() {
    let order = 64;
    let dense: Vec<Vec<i64>> = (0..order).map(|r| (0..=r).map(|c| (r * 1000 + c) as i64).collect()).collect();
    let packed = PackedTriangular::from_fn(order, |r, c| dense[r as usize][c as usize]);
    for r in 0..order {
        for c in 0..=r {
            assert_eq!(*packed.get(r, c).unwrap(), dense[r as usize][c as usize]);
            assert_eq!(packed.get_upper(c, r).unwrap(), packed.get(r, c).unwrap());
        }
    }
    assert!(packed.get(3, 4).is_err());
}

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let m = PackedTriangular::from_fn(20, |r, c| (r - c) as f64 / 3.0);
    let bin = dir.path().join("m.bin");
    m.write_binary(std::fs::File::create(&bin).unwrap()).unwrap();
    assert_eq!(PackedTriangular::<f64>::read_binary(std::fs::File::open(&bin).unwrap()).unwrap(), m);
    let csv = dir.path().join("m.csv");
    m.write_csv(std::fs::File::create(&csv).unwrap()).unwrap();
    assert_eq!(PackedTriangular::<f64>::read_csv(std::fs::File::open(&csv).unwrap()).unwrap(), m);

    let s = PackedSimplex3::from_fn(6, |q| q.x * 100 + q.y * 10 + q.z);
    let path = dir.path().join("s.csv");
    s.write_csv(std::fs::File::create(&path).unwrap()).unwrap();
    assert_eq!(PackedSimplex3::<Int>::read_csv(std::fs::File::open(&path).unwrap()).unwrap(), s);
}

#[test]
fn cantor_equation_solution_is_the_inverse() {
    for z in 0..=100_000 {
        let r = solve_cantor_dioph(Nat::new(z).unwrap());
        let q = invert_cantor1(z).unwrap();
        assert_eq!(r.solutions, vec![Solution { a: q.x, b: q.y }]);
    }
}

#[test]
fn brute_force_agrees_with_closed_forms() {
    for z in 0..=3000 {
        let q = invert_cantor1(z).unwrap();
        assert_eq!(brute_force(Equation::Cantor, z), vec![Solution { a: q.x, b: q.y }]);
        assert_eq!(brute_force(Equation::Triangular, z).len(), 1);
    }
}

#[test]
fn cantor_values_on_a_triangle_fill_a_prefix() {
    let m = 120;
    let mut values: Vec<Int> =
        (0..=m).flat_map(|a| (0..=m - a).map(move |b| Equation::Cantor.rhs(a, b) / 2)).collect();
    values.sort();
    assert_eq!(values, (0..(m + 1) * (m + 2) / 2).collect::<Vec<_>>());
    assert!(uniqueness_scan(Equation::Cantor, Nat::new(m).unwrap()).bijective);
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn tri_index_round_trip(r in 0i64..1_000_000_000, c in 0i64..1_000_000_000) {
        let (r, c) = (r.max(c) as Int, r.min(c) as Int);
        prop_assert_eq!(tri_unindex(tri_index(r, c).unwrap()), (r, c));
    }
}
