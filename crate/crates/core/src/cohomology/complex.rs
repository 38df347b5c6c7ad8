//! Non-degenerate tuples and cochains on them.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::error::{Error, Result};

/// Tuples `(x_1, ..., x_n)` over `{0..q}` with `x_i != x_{i+1}`, in
/// lexicographic order. Degree 0 is the empty basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainBasis {
    q: usize,
    degree: usize,
}

impl CochainBasis {
    pub fn new(q: usize, degree: usize) -> Self {
        CochainBasis { q, degree }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn quandle_size(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        if self.degree == 0 || self.q == 0 {
            return 0;
        }
        self.q * (self.q - 1).pow(self.degree as u32 - 1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_degenerate(tuple: &[usize]) -> bool {
        tuple.windows(2).any(|w| w[0] == w[1])
    }

    /// Position of a non-degenerate tuple, `None` for degenerate ones.
    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        if tuple.len() != self.degree || self.degree == 0 {
            return None;
        }
        let mut idx = tuple[0];
        for w in tuple.windows(2) {
            if w[1] == w[0] || w[1] >= self.q {
                return None;
            }
            idx = idx * (self.q - 1) + if w[1] < w[0] { w[1] } else { w[1] - 1 };
        }
        Some(idx)
    }

    pub fn tuple(&self, mut idx: usize) -> Vec<usize> {
        let n = self.degree;
        let mut digits = vec![0; n];
        for d in (1..n).rev() {
            digits[d] = idx % (self.q - 1);
            idx /= self.q - 1;
        }
        digits[0] = idx;
        let mut out = Vec::with_capacity(n);
        for (i, &d) in digits.iter().enumerate() {
            if i == 0 {
                out.push(d);
            } else {
                let prev = out[i - 1];
                out.push(if d < prev { d } else { d + 1 });
            }
        }
        out
    }

    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.len()).map(move |i| self.tuple(i))
    }
}

/// An element of the cochain group: one value in `A` per basis tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    basis: CochainBasis,
    factors: Vec<u64>,
    values: Vec<Vec<u64>>,
}

impl Cochain {
    pub fn zero(basis: CochainBasis, factors: &[u64]) -> Self {
        let values = vec![vec![0; factors.len()]; basis.len()];
        Cochain { basis, factors: factors.to_vec(), values }
    }

    pub fn from_fn(basis: CochainBasis, factors: &[u64], f: impl Fn(&[usize]) -> Vec<i64>) -> Self {
        let values = basis
            .tuples()
            .map(|t| f(&t).iter().zip(factors).map(|(&v, &d)| v.rem_euclid(d as i64) as u64).collect())
            .collect();
        Cochain { basis, factors: factors.to_vec(), values }
    }

    /// Inverse of [`Cochain::flatten`].
    pub fn from_flat(basis: CochainBasis, factors: &[u64], flat: &[u64]) -> Result<Self> {
        let k = factors.len();
        if flat.len() != basis.len() * k {
            return Err(Error::ShapeMismatch("flat cochain has the wrong length".into()));
        }
        let values = flat
            .chunks(k.max(1))
            .take(basis.len())
            .map(|c| c.iter().zip(factors).map(|(v, d)| v % d).collect())
            .collect();
        Ok(Cochain { basis, factors: factors.to_vec(), values })
    }

    pub fn basis(&self) -> &CochainBasis {
        &self.basis
    }

    pub fn degree(&self) -> usize {
        self.basis.degree
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Value at any tuple; degenerate tuples give zero.
    pub fn value(&self, tuple: &[usize]) -> Vec<u64> {
        match self.basis.index_of(tuple) {
            Some(i) => self.values[i].clone(),
            None => vec![0; self.factors.len()],
        }
    }

    pub fn values(&self) -> &[Vec<u64>] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(|&v| v == 0)
    }

    /// Coordinates in the cochain group, tuple-major.
    pub fn flatten(&self) -> Vec<u64> {
        self.values.iter().flatten().copied().collect()
    }

    /// Coordinate orders of the cochain group.
    pub fn group_orders(basis: &CochainBasis, factors: &[u64]) -> Vec<u64> {
        (0..basis.len()).flat_map(|_| factors.iter().copied()).collect()
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        if self.basis != other.basis || self.factors != other.factors {
            return Err(Error::ShapeMismatch("cochains live in different groups".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).zip(&self.factors).map(|((x, y), d)| (x + d - y) % d).collect())
            .collect();
        Ok(Cochain { basis: self.basis.clone(), factors: self.factors.clone(), values })
    }

    /// `{"degree": n, "values": {"x1,x2,...": [..]}}`, zero values omitted.
    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for (i, v) in self.values.iter().enumerate() {
            if v.iter().any(|&x| x != 0) {
                let key = self.basis.tuple(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                map.insert(key, Value::from(v.clone()));
            }
        }
        serde_json::json!({ "degree": self.degree(), "values": map })
    }

    pub fn from_json(value: &Value, q: usize, factors: &[u64]) -> Result<Cochain> {
        let bad = |m: String| Error::InvalidArgument(format!("cochain: {m}"));
        let degree = value
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing \"degree\"".into()))? as usize;
        let basis = CochainBasis::new(q, degree);
        let mut out = Cochain::zero(basis.clone(), factors);
        let values: BTreeMap<String, Vec<i64>> = match value.get("values") {
            Some(v) => serde_json::from_value(v.clone())?,
            None => BTreeMap::new(),
        };
        for (key, v) in values {
            let tuple = key
                .split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|_| bad(format!("bad key {key:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if tuple.len() != degree || tuple.iter().any(|&x| x >= q) {
                return Err(bad(format!("key {key:?} is not a {degree}-tuple over {q} elements")));
            }
            if v.len() != factors.len() {
                return Err(bad(format!("value at {key:?} has the wrong length")));
            }
            let reduced: Vec<u64> = v.iter().zip(factors).map(|(&x, &d)| x.rem_euclid(d as i64) as u64).collect();
            match basis.index_of(&tuple) {
                Some(i) => out.values[i] = reduced,
                None if reduced.iter().all(|&x| x == 0) => {}
                None => return Err(bad(format!("non-zero value on degenerate tuple {key:?}"))),
            }
        }
        Ok(out)
    }
}
