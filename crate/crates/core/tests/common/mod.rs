#![allow(dead_code)]

use qcoh::algebra::coeff::{CoefficientModule, IntRows};
use qcoh::algebra::rational::{RationalMatrix, Q};
use qcoh::cohomology::QuandleModule;
use qcoh::quandle::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// Quandles with at most `max` elements from every constructor.
pub fn small_quandles(max: usize) -> Vec<QuandleTable> {
    let mut out = Vec::new();
    for n in 1..=max {
        out.push(make_dihedral(n));
        out.push(make_trivial(n));
        for u in 1..n as i64 {
            if let Ok(q) = make_alexander(n as u64, u) {
                out.push(q);
            }
        }
    }
    for g in [GroupTable::symmetric(3), GroupTable::cyclic(2).direct_product(&GroupTable::cyclic(2))] {
        if g.size() <= max {
            out.push(make_conjugation(&g));
        }
    }
    if max >= 4 {
        out.push(make_gm(&GroupTable::cyclic(2), 2).unwrap());
    }
    out
}

/// The table transported along the permutation `p`.
pub fn relabel(x: &QuandleTable, p: &[usize]) -> QuandleTable {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    QuandleTable::from_fn(x.size(), |a, b| p[x.op(inv[a], inv[b])]).unwrap()
}

pub fn random_quandle<R: Rng>(rng: &mut R, max: usize) -> QuandleTable {
    let lib = small_quandles(max);
    let x = lib.choose(rng).unwrap();
    let mut p: Vec<usize> = (0..x.size()).collect();
    p.shuffle(rng);
    relabel(x, &p)
}

pub fn units(m: u64) -> Vec<i64> {
    (1..m.max(2) as i64).filter(|&u| num_integer::gcd(u, m as i64) == 1).collect()
}

/// `Z/m` with a random unit as twisting, `2 <= m <= max_m`.
pub fn random_cyclic<R: Rng>(rng: &mut R, max_m: u64) -> CoefficientModule {
    let m = rng.gen_range(2..=max_m);
    let u = *units(m).choose(rng).unwrap();
    CoefficientModule::cyclic(m, u).unwrap()
}

pub fn gl2_f2() -> Vec<IntRows> {
    let mut out = Vec::new();
    for bits in 0..16u32 {
        let m: IntRows = vec![
            vec![(bits & 1) as i64, (bits >> 1 & 1) as i64],
            vec![(bits >> 2 & 1) as i64, (bits >> 3 & 1) as i64],
        ];
        if (m[0][0] * m[1][1] - m[0][1] * m[1][0]).rem_euclid(2) == 1 {
            out.push(m);
        }
    }
    out
}

/// A random module on `R_3`: either a constant cyclic one or the
/// reflection action on `(Z/2)^2`, rebased by random automorphisms.
pub fn random_module_on_r3<R: Rng>(rng: &mut R) -> QuandleModule {
    let x = make_dihedral(3);
    if rng.gen_bool(0.5) {
        let c = random_cyclic(rng, 8);
        let m = c.factors()[0];
        let h: Vec<IntRows> = (0..3).map(|_| vec![vec![*units(m).choose(rng).unwrap()]]).collect();
        QuandleModule::constant(&x, &c).rebased(&x, &h).unwrap()
    } else {
        let reflections: Vec<IntRows> =
            vec![vec![vec![0, 1], vec![1, 0]], vec![vec![1, 1], vec![0, 1]], vec![vec![1, 0], vec![1, 1]]];
        let g = gl2_f2();
        let h: Vec<IntRows> = (0..3).map(|_| g.choose(rng).unwrap().clone()).collect();
        QuandleModule::from_action(&x, vec![2, 2], &reflections).unwrap().rebased(&x, &h).unwrap()
    }
}

/// Rank over `F_p` by plain Gaussian elimination.
pub fn rank_mod_p(rows: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|v| v.rem_euclid(p)).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = (1..p).find(|&i| a[rank][c] * i % p == 1).unwrap();
        for v in a[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for k in 0..cols {
                    a[r][k] = (a[r][k] - f * a[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn bareiss_rank(rows: &[Vec<i128>]) -> usize {
    let mut a = rows.to_vec();
    let (n, m) = (a.len(), a.first().map_or(0, |r| r.len()));
    let mut prev = 1i128;
    let mut rank = 0;
    for c in 0..m {
        let Some(piv) = (rank..n).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        for r in rank + 1..n {
            for k in c + 1..m {
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    rank
}

/// Dimension of `{F : F S = T F}` from the Kronecker form
/// `S^T (x) I - I (x) T` acting on column-stacked `F`.
pub fn sylvester_dim_oracle(s: &[Vec<i128>], t: &[Vec<i128>]) -> usize {
    let (n, m) = (s.len(), t.len());
    let mut k = vec![vec![0i128; m * n]; m * n];
    for j in 0..n {
        for jj in 0..n {
            for i in 0..m {
                // (S^T (x) I)[(j, i), (jj, i)] = S[jj][j]
                k[j * m + i][jj * m + i] += s[jj][j];
            }
        }
        for i in 0..m {
            for ii in 0..m {
                k[j * m + i][j * m + ii] -= t[i][ii];
            }
        }
    }
    m * n - bareiss_rank(&k)
}

pub fn rational_from_scaled(rows: &[Vec<i128>], denom: i128) -> RationalMatrix {
    RationalMatrix::from_fn(rows.len(), rows[0].len(), |i, j| {
        Q::new(rows[i][j].into(), denom.into())
    })
}
