use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::intmat::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// Integer matrix acting on a direct sum of cyclic groups.
pub type IntRows = Vec<Vec<i64>>;

/// `A = Z/d_1 + ... + Z/d_k` together with an automorphism `T`, making `A`
/// an Alexander quandle `a * b = T a + (1 - T) b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CoeffJson", into = "CoeffJson")]
pub struct CoefficientModule {
    factors: Vec<u64>,
    t: IntRows,
}

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    torsion: Vec<u64>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    t: Option<IntRows>,
}

impl TryFrom<CoeffJson> for CoefficientModule {
    type Error = Error;
    fn try_from(j: CoeffJson) -> Result<Self> {
        match j.t {
            Some(t) => CoefficientModule::new(j.torsion, t),
            None => CoefficientModule::constant(j.torsion),
        }
    }
}

impl From<CoefficientModule> for CoeffJson {
    fn from(c: CoefficientModule) -> Self {
        CoeffJson { torsion: c.factors, t: Some(c.t) }
    }
}

impl CoefficientModule {
    pub fn new(factors: Vec<u64>, t: IntRows) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidCoefficients("no cyclic factors".into()));
        }
        if let Some(&d) = factors.iter().find(|&&d| !(2..=(1 << 40)).contains(&d)) {
            return Err(Error::InvalidCoefficients(format!("cyclic factor {d} out of range")));
        }
        let k = factors.len();
        if t.len() != k || t.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidCoefficients(format!("T must be {k}x{k}")));
        }
        let t = reduce_rows(&factors, &t);
        if !is_hom(&factors, &factors, &t) {
            return Err(Error::InvalidCoefficients("T is not well defined on A".into()));
        }
        if !is_automorphism(&factors, &t) {
            return Err(Error::InvalidCoefficients("T is not invertible on A".into()));
        }
        Ok(CoefficientModule { factors, t })
    }

    /// Trivial action, `T = 1`.
    pub fn constant(factors: Vec<u64>) -> Result<Self> {
        let k = factors.len();
        Self::new(factors, identity_rows(k))
    }

    /// `Z/m` with `T` multiplication by `u`.
    pub fn cyclic(m: u64, u: i64) -> Result<Self> {
        Self::new(vec![m], vec![vec![u]])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn t(&self) -> &IntRows {
        &self.t
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    /// Least common multiple of the factors.
    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1u64, |acc, d| acc.lcm(d))
    }

    pub fn is_untwisted(&self) -> bool {
        self.t == identity_rows(self.rank())
    }

    pub fn apply(&self, m: &IntRows, a: &[u64]) -> Vec<u64> {
        apply_rows(&self.factors, m, a)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.factors).map(|((x, y), d)| (x + y) % d).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.factors).map(|((x, y), d)| (x + d - y % d) % d).collect()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    /// Alexander operation `T a + (1 - T) b`.
    pub fn alexander_op(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let ta = self.apply(&self.t, a);
        let tb = self.apply(&self.t, b);
        self.add(&ta, &self.sub(b, &tb))
    }

    /// Mixed-radix index of an element, first factor most significant.
    pub fn index_of(&self, a: &[u64]) -> usize {
        a.iter().zip(&self.factors).fold(0usize, |acc, (&x, &d)| acc * d as usize + (x % d) as usize)
    }

    pub fn element(&self, mut idx: usize) -> Vec<u64> {
        let mut v = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let d = self.factors[i] as usize;
            v[i] = (idx % d) as u64;
            idx /= d;
        }
        v
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order() as usize).map(move |i| self.element(i))
    }
}

pub fn identity_rows(k: usize) -> IntRows {
    (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect()
}

/// Reduces row `i` modulo the target factor `d_i`.
pub fn reduce_rows(target: &[u64], m: &IntRows) -> IntRows {
    m.iter()
        .zip(target)
        .map(|(row, &d)| row.iter().map(|&x| x.rem_euclid(d as i64)).collect())
        .collect()
}

pub fn apply_rows(target: &[u64], m: &IntRows, a: &[u64]) -> Vec<u64> {
    m.iter()
        .zip(target)
        .map(|(row, &d)| {
            let s: i128 = row.iter().zip(a).map(|(&x, &y)| x as i128 * y as i128).sum();
            s.rem_euclid(d as i128) as u64
        })
        .collect()
}

/// `m` defines a homomorphism from `source` to `target`:
/// `m[i][j] * s_j = 0 mod t_i`.
pub fn is_hom(source: &[u64], target: &[u64], m: &IntRows) -> bool {
    m.len() == target.len()
        && m.iter().zip(target).all(|(row, &t)| {
            row.len() == source.len()
                && row.iter().zip(source).all(|(&x, &s)| (x as i128 * s as i128).rem_euclid(t as i128) == 0)
        })
}

/// Equality as maps between the groups.
pub fn same_map(target: &[u64], a: &IntRows, b: &IntRows) -> bool {
    a.iter().zip(b).zip(target).all(|((ra, rb), &d)| {
        ra.iter().zip(rb).all(|(&x, &y)| (x as i128 - y as i128).rem_euclid(d as i128) == 0)
    })
}

/// Product `a * b` of maps between sums of cyclic groups, rows reduced
/// modulo `target`.
pub fn compose(target: &[u64], a: &IntRows, b: &IntRows) -> IntRows {
    let k = b.first().map_or(0, Vec::len);
    a.iter()
        .zip(target)
        .map(|(row, &d)| {
            (0..k)
                .map(|j| {
                    let s: i128 = row.iter().zip(b).map(|(&x, rb)| x as i128 * rb[j] as i128).sum();
                    s.rem_euclid(d as i128) as i64
                })
                .collect()
        })
        .collect()
}

pub fn add_maps(target: &[u64], a: &IntRows, b: &IntRows) -> IntRows {
    let sum: IntRows = a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect()).collect();
    reduce_rows(target, &sum)
}

/// A well-defined endomorphism of a finite group is an automorphism iff it
/// is onto, i.e. `Z^k = im T + D Z^k`.
pub fn is_automorphism(factors: &[u64], t: &IntRows) -> bool {
    let k = factors.len();
    let mut m = IntMatrix::zeros(k, 2 * k);
    for i in 0..k {
        for j in 0..k {
            m[(i, j)] = BigInt::from(t[i][j]);
        }
        m[(i, k + i)] = BigInt::from(factors[i]);
    }
    smith_normal_form(&m).diagonal().iter().all(One::is_one)
}
