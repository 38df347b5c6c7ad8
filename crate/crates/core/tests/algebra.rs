mod common;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use qcoh::algebra::zn::ZnMatrix;
use qcoh::algebra::*;

fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows).unwrap()
}

fn matrix_strategy(max: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-bound..=bound, c), r)
    })
}

/// All elements of `Z/o_1 + ... + Z/o_k`.
fn elements(orders: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &o in orders {
        out = out.into_iter().flat_map(|v: Vec<u64>| (0..o).map(move |a| [v.clone(), vec![a]].concat())).collect();
    }
    out
}

proptest! {
    #[test]
    fn snf_is_a_unimodular_diagonalisation(rows in matrix_strategy(4, 6)) {
        let m = int_matrix(&rows);
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).unwrap().mul(&snf.v).unwrap(), snf.d.clone());
        prop_assert!(snf.u.determinant().unwrap().abs().is_one());
        prop_assert!(snf.v.determinant().unwrap().abs().is_one());
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    prop_assert!(snf.d[(i, j)].is_zero());
                }
            }
        }
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    // membership agrees with the enumerated image, and solutions are exact
    #[test]
    fn membership_against_enumeration(
        source in proptest::collection::vec(prop_oneof![Just(2u64), Just(3), Just(4), Just(6)], 1..3),
        target in proptest::collection::vec(prop_oneof![Just(2u64), Just(3), Just(6)], 1..3),
        entries in proptest::collection::vec(0i64..12, 9),
    ) {
        let rows: Vec<Vec<i64>> = (0..target.len())
            .map(|i| (0..source.len()).map(|j| {
                // scale so the entry is well defined from Z/s_j
                let t = target[i] as i64;
                let s = source[j] as i64;
                let unit = t / num_integer::gcd(t, s);
                entries[i * 3 + j] * unit
            }).collect())
            .collect();
        let hom = GroupHom::from_rows(source.clone(), target.clone(), &rows).unwrap();
        let image: HashSet<Vec<u64>> = elements(&source).iter().map(|x| hom.apply(x)).collect();
        for v in elements(&target) {
            match solve_membership(&hom, &v).unwrap() {
                Some(x) => prop_assert_eq!(hom.apply(&x), v),
                None => prop_assert!(!image.contains(&v)),
            }
        }
    }

    // the invariant factors of a cokernel multiply to its order
    #[test]
    fn cokernel_order_matches_determinant(rows in matrix_strategy(3, 5)) {
        let n = rows.len();
        let square: Vec<Vec<i64>> = rows.iter().map(|r| (0..n).map(|j| r.get(j).copied().unwrap_or(0)).collect()).collect();
        let m = int_matrix(&square);
        let det = m.determinant().unwrap().abs();
        let g = AbelianGroup::from_relations(n, &m);
        if det.is_zero() {
            prop_assert!(!g.is_finite());
        } else {
            prop_assert_eq!(BigInt::from(g.order().unwrap()), det);
        }
    }
}

#[test]
fn zn_product_matches_integer_product() {
    let a = ZnMatrix::from_fn(2, 3, 10, |i, j| (i * 3 + j) as i128 - 4);
    let b = ZnMatrix::from_fn(3, 2, 10, |i, j| (i + 2 * j) as i128 + 7);
    let ai = int_matrix(&[vec![-4, -3, -2], vec![-1, 0, 1]]);
    let bi = int_matrix(&[vec![7, 9], vec![8, 10], vec![9, 11]]);
    let p = ai.mul(&bi).unwrap();
    let ab = a.mul(&b);
    for i in 0..2 {
        for j in 0..2 {
            let expected: BigInt = ((&p[(i, j)] % 10) + 10) % 10;
            assert_eq!(BigInt::from(ab.get(i, j)), expected);
        }
    }
}
