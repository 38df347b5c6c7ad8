use proptest::prelude::*;
use qcoh::extensions::{discrete_fiber_vanishing_check, sampled_cocycle};
use qcoh::geometry::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn unit(seed: u64, dim: usize) -> UnitVector {
    UnitVector::random(&mut ChaCha8Rng::seed_from_u64(seed), dim)
}

#[test]
fn rejects_non_unit_and_mismatched_input() {
    assert!(UnitVector::new(vec![1.0, 1.0]).is_err());
    assert!(sphere_op(&unit(1, 3), &unit(2, 4)).is_err());
    // a deciding coordinate inside the boundary tolerance
    assert!(ProjectivePoint::from_coords(vec![1.0, 0.0, 1e-12]).is_err());
}

#[test]
fn witness_pair() {
    let e1 = ProjectivePoint::from_coords(vec![1.0, 0.0, 0.0]).unwrap();
    let e2 = ProjectivePoint::from_coords(vec![0.0, 1.0, 0.0]).unwrap();
    assert_eq!(sphere_cocycle(&e1, &e2).unwrap(), 1);
    assert_eq!(sphere_cocycle(&e1, &e1).unwrap(), 0);
}

#[test]
fn sampled_cocycles_of_the_two_covers() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let points: Vec<ProjectivePoint> = std::iter::repeat_with(|| ProjectivePoint::new(UnitVector::random(&mut rng, 3)))
        .filter_map(Result::ok)
        .take(12)
        .collect();
    let sphere = sampled_cocycle(&ProjectiveCover, &points).unwrap();
    assert!(!discrete_fiber_vanishing_check(&sphere));
    assert!(discrete_fiber_vanishing_check(&sampled_cocycle(&TrivialCover, &points).unwrap()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn sphere_quandle_axioms(a in any::<u64>(), b in any::<u64>(), c in any::<u64>(), dim in 2usize..6) {
        let (x, y, z) = (unit(a, dim), unit(b, dim), unit(c, dim));
        prop_assert_eq!(sphere_op(&x, &x).unwrap(), x.clone());
        let lhs = sphere_op(&sphere_op(&x, &y).unwrap(), &z).unwrap();
        let rhs = sphere_op(&sphere_op(&x, &z).unwrap(), &sphere_op(&y, &z).unwrap()).unwrap();
        prop_assert!(lhs.distance(&rhs) <= 1e-9);
        // the right translation by y is an involution
        let back = sphere_op(&sphere_op(&x, &y).unwrap(), &y).unwrap();
        prop_assert!(back.distance(&x) <= 1e-9);
    }

    // the projective operation does not depend on the chosen signs
    #[test]
    fn projective_op_is_well_defined(a in any::<u64>(), b in any::<u64>(), sx in any::<bool>(), sy in any::<bool>()) {
        let (x, y) = (unit(a, 3), unit(b, 3));
        let (xs, ys) = (if sx { x.neg() } else { x.clone() }, if sy { y.neg() } else { y.clone() });
        if let (Ok(px), Ok(py)) = (ProjectivePoint::new(x), ProjectivePoint::new(y)) {
            prop_assert_eq!(ProjectivePoint::new(xs.clone()).unwrap(), px.clone());
            if let (Ok(expected), Ok(p)) = (projective_op(&px, &py), ProjectivePoint::new(sphere_op(&xs, &ys).unwrap())) {
                prop_assert_eq!(p, expected);
            }
        }
    }

    #[test]
    fn sphere_cocycle_identity_holds(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let pts: Vec<_> = [a, b, c].iter().map(|&s| ProjectivePoint::new(unit(s, 3))).collect();
        if let [Ok(x), Ok(y), Ok(z)] = &pts[..] {
            if let Ok(v) = sphere_cocycle(x, y) {
                prop_assert!(v <= 1);
            }
            if let Ok(holds) = sphere_cocycle_identity(x, y, z) {
                prop_assert!(holds);
            }
        }
    }
}

#[test]
fn csv_rows_match_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let samples = sample_sphere_cocycle(&mut rng, 3, 50);
    let csv = samples_to_csv(&samples);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "x0,x1,x2,y0,y1,y2,phi,boundary");
    assert_eq!(lines.len(), samples.len() + 1);
}
