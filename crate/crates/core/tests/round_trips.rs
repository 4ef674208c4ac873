use pairkit::inverses::{invert_builtin, invert_p3d, invert_pkd};
use pairkit::mappings::{eval_p3d, eval_pkd};
use pairkit::oracle::{index_of_value, value_of_index};
use pairkit::{builtin, invert, InvError, Int, LatticePoint2, LatticePoint3, LatticePointK, MapId};
use proptest::prelude::*;

#[test]
fn eval_of_invert_is_identity_up_to_one_hundred_thousand() {
    for id in MapId::planar_catalogue() {
        let m = builtin(&id).unwrap();
        for i in 0..=100_000 {
            let z = value_of_index(m.image, i);
            let q = invert_builtin(id, z).unwrap_or_else(|e| panic!("{id}({z}): {e}"));
            assert_eq!(m.eval(q), Ok(z), "{id} at {q}");
        }
    }
}

#[test]
fn invert_of_eval_is_identity_on_the_box() {
    for id in MapId::planar_catalogue() {
        let m = builtin(&id).unwrap();
        for x in -150..=150 {
            for y in -150..=150 {
                let q = LatticePoint2::new(x, y);
                if let Ok(z) = m.eval(q) {
                    assert_eq!(invert_builtin(id, z), Ok(q), "{id}");
                }
            }
        }
    }
}

#[test]
fn cube_round_trip() {
    for x in 0..=60 {
        for y in 0..=60 - x {
            for z in 0..=60 - x - y {
                let q = LatticePoint3::new(x, y, z);
                assert_eq!(invert_p3d(eval_p3d(q).unwrap()), Ok(q));
            }
        }
    }
}

#[test]
fn values_outside_the_image_are_rejected() {
    for id in MapId::planar_catalogue() {
        let m = builtin(&id).unwrap();
        if index_of_value(m.image, -1).is_none() {
            assert!(matches!(invert_builtin(id, -1), Err(InvError::NotInImage { .. })), "{id}");
        }
    }
    assert!(matches!(invert_p3d(-1), Err(InvError::NotInImage { .. })));
}

#[test]
fn derived_mappings_fall_back_to_search() {
    let shifted = pairkit::mappings::shift_domain(&builtin(&MapId::Triangular).unwrap(), 3, -2);
    for z in 0..300 {
        let q = invert(&shifted, z).unwrap();
        assert_eq!(shifted.eval(q), Ok(z));
    }
}

fn planar_id() -> impl Strategy<Value = MapId> {
    prop::sample::select(MapId::planar_catalogue())
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn random_values_round_trip(id in planar_id(), i in 0i64..(1 << 40)) {
        let m = builtin(&id).unwrap();
        let z = value_of_index(m.image, i as Int);
        let q = invert_builtin(id, z).unwrap();
        prop_assert_eq!(m.eval(q), Ok(z));
    }

    #[test]
    fn random_points_round_trip(id in planar_id(), x in -1_000_000i64..1_000_000, y in -1_000_000i64..1_000_000) {
        let m = builtin(&id).unwrap();
        let q = LatticePoint2::new(x as Int, y as Int);
        if let Ok(z) = m.eval(q) {
            prop_assert_eq!(invert_builtin(id, z), Ok(q));
        }
    }

    #[test]
    fn pkd_round_trip(k in 1usize..=6, z in 0i64..1_000_000_000) {
        let q = invert_pkd(k, z as Int).unwrap();
        prop_assert_eq!(q.dim(), k);
        prop_assert_eq!(eval_pkd(&q), Ok(z as Int));
    }

    #[test]
    fn pkd_point_round_trip(coords in prop::collection::vec(0i64..200, 1..=5)) {
        let q = LatticePointK::new(coords.iter().map(|&c| c as Int).collect());
        let z = eval_pkd(&q).unwrap();
        prop_assert_eq!(invert_pkd(q.dim(), z), Ok(q));
    }
}
