use std::sync::OnceLock;

use proptest::prelude::*;
use qcoh::algebra::coeff::{identity_rows, CoefficientModule};
use qcoh::algebra::group::AbelianGroup;
use qcoh::algebra::homology::GroupHom;
use qcoh::cohomology::*;
use qcoh::limits::*;
use qcoh::quandle::*;

#[test]
fn alexander_tower_degree_one() {
    let sys = make_alexander_tower(3, 2, 3).unwrap();
    let r = tower_cohomology(&sys, 1, 3).unwrap();
    let stages: Vec<Vec<u64>> = r.stages.iter().map(|g| g.torsion.clone()).collect();
    assert_eq!(stages, vec![vec![3, 3], vec![9, 9], vec![27, 27]]);
    let refs = r.reference_maps.as_ref().unwrap();
    assert_eq!(refs, &vec![vec![vec![3, 0], vec![0, 3]]; 2]);
    assert_eq!(r.colimit, AbelianGroup::from_cyclic_orders(&[27, 27]));
    assert!(!r.stabilized);
}

#[test]
fn dihedral_tower_degree_three() {
    let sys = make_dihedral_tower(3, 2, None).unwrap();
    let r = tower_cohomology(&sys, 3, 2).unwrap();
    assert_eq!(r.stages, vec![AbelianGroup::cyclic(3); 2]);
    assert!(r.connecting_maps[0].is_zero());
    assert!(r.colimit.is_trivial());
    assert!(r.stabilized);
}

#[test]
fn constant_coefficients_degree_one_colimit_is_coefficients() {
    for p in [3, 5] {
        let coeff = CoefficientModule::constant(vec![p]).unwrap();
        let sys = make_dihedral_tower(p, 2, Some(coeff)).unwrap();
        let r = tower_cohomology(&sys, 1, 2).unwrap();
        assert_eq!(r.colimit, AbelianGroup::cyclic(p));
        assert!(r.stabilized);
    }
}

#[test]
fn depth_one_is_first_stage() {
    let sys = make_alexander_tower(5, 3, 1).unwrap();
    let r = tower_cohomology(&sys, 1, 1).unwrap();
    assert_eq!(r.colimit, AbelianGroup::from_cyclic_orders(&[5, 5]));
    assert!(!r.stabilized);
    assert!(tower_cohomology(&sys, 1, 2).is_err());
}

#[test]
fn tower_json_round_trip_gives_same_result() {
    let sys = make_alexander_tower(3, 2, 2).unwrap();
    let back = TowerSystem::from_json(&sys.to_json()).unwrap();
    let (a, b) = (tower_cohomology(&sys, 1, 2).unwrap(), tower_cohomology(&back, 1, 2).unwrap());
    assert_eq!(a.stages, b.stages);
    assert_eq!(a.colimit, b.colimit);
}

#[test]
fn broken_tower_is_rejected() {
    let mut j = make_alexander_tower(3, 2, 2).unwrap().to_json();
    j["projections"][0][0] = serde_json::json!(1);
    assert!(TowerSystem::from_json(&j).is_err());
    let mut j = make_alexander_tower(3, 2, 2).unwrap().to_json();
    // x -> x does not map Z/3 into Z/9 as a hom
    j["coeff_maps"][0] = serde_json::json!([[1]]);
    assert!(TowerSystem::from_json(&j).is_err());
}

// the deeper colimit restricted along the canonical map agrees with the
// shallower one: with injective connecting maps both telescopes embed
#[test]
fn truncations_are_compatible() {
    let sys = make_alexander_tower(3, 2, 3).unwrap();
    let r2 = tower_cohomology(&sys, 1, 2).unwrap();
    let r3 = tower_cohomology(&sys, 1, 3).unwrap();
    assert_eq!(r2.colimit, r2.stages[1]);
    assert_eq!(r3.colimit, r3.stages[2]);
    assert_eq!(r2.connecting_maps[0].matrix(), r3.connecting_maps[0].matrix());
}

struct DihedralData(QuandleTable, Coefficients, CohomologyGroup, CohomologyGroup, CochainMap);

fn dihedral_degree_three() -> (&'static QuandleTable, &'static Coefficients, &'static CohomologyGroup, &'static CohomologyGroup, &'static CochainMap) {
    static DATA: OnceLock<DihedralData> = OnceLock::new();
    let d = DATA.get_or_init(|| {
        let (r3, r9) = (make_dihedral(3), make_dihedral(9));
        let c = Coefficients::Twisted(CoefficientModule::constant(vec![3]).unwrap());
        let h3 = cohomology_group(&r3, &c, 3).unwrap();
        let h9 = cohomology_group(&r9, &c, 3).unwrap();
        let f: Vec<usize> = (0..9).map(|x| x % 3).collect();
        let map = CochainMap::new(f, identity_rows(1), (&r3, &c), (&r9, &c)).unwrap();
        DihedralData(r3, c, h3, h9, map)
    });
    (&d.0, &d.1, &d.2, &d.3, &d.4)
}

fn cochain_from(basis: &CochainBasis, factors: &[u64], vals: &[u64]) -> Cochain {
    let flat: Vec<u64> = (0..basis.len()).map(|i| vals[i % vals.len()] % factors[0]).collect();
    Cochain::from_flat(basis.clone(), factors, &flat).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    // a finite telescope retracts onto its last stage
    #[test]
    fn telescope_is_last_stage(
        orders in proptest::collection::vec(proptest::collection::vec(prop_oneof![Just(2u64), Just(3), Just(4), Just(9)], 1..3), 1..4),
        entries in proptest::collection::vec(0i64..36, 16),
    ) {
        let maps: Vec<GroupHom> = orders
            .windows(2)
            .enumerate()
            .map(|(n, w)| {
                let rows: Vec<Vec<i64>> = (0..w[1].len())
                    .map(|i| (0..w[0].len()).map(|j| {
                        let (s, t) = (w[0][j] as i64, w[1][i] as i64);
                        entries[(n * 4 + i * 2 + j) % 16] * (t / num_integer::gcd(s, t))
                    }).collect())
                    .collect();
                GroupHom::from_rows(w[0].clone(), w[1].clone(), &rows).unwrap()
            })
            .collect();
        let last = AbelianGroup::from_cyclic_orders(orders.last().unwrap());
        prop_assert_eq!(telescope_colimit(&orders, &maps).unwrap(), last);
    }

    // the cochain map commutes with the differentials, as an exact identity
    #[test]
    fn cochain_map_commutes_with_differential(n in 1usize..3, vals in proptest::collection::vec(0u64..27, 1..40)) {
        let sys = make_alexander_tower(3, 2, 2).unwrap();
        let map = sys.cochain_map(0).unwrap();
        let lo = &sys.stages()[0];
        let hi = &sys.stages()[1];
        let (cl, ch) = (Coefficients::Twisted(lo.coeff.clone()), Coefficients::Twisted(hi.coeff.clone()));
        let c = cochain_from(&CochainBasis::new(3, n), &[3], &vals);
        let left = coboundary(&hi.quandle, &ch, &map.apply(&c)).unwrap();
        let right = map.apply(&coboundary(&lo.quandle, &cl, &c).unwrap());
        prop_assert_eq!(left, right);
    }

    // changing a representative by a coboundary leaves the image class fixed
    #[test]
    fn induced_map_is_representative_independent(vals in proptest::collection::vec(0u64..3, 1..20), class in 0u64..3) {
        let (r3, c, h3, h9, map) = dihedral_degree_three();
        let rep = h3.cocycle_for(&[class]);
        let g = cochain_from(&CochainBasis::new(3, 2), &[3], &vals);
        let shifted = rep.sub(&coboundary(r3, c, &g).unwrap()).unwrap();
        prop_assert_eq!(h9.class_of(&map.apply(&rep)).unwrap(), h9.class_of(&map.apply(&shifted)).unwrap());
    }
}
