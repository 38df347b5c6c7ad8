//! Quandle modules: families `eta_{x,y}` (automorphisms) and `tau_{x,y}`
//! (endomorphisms) of a finite abelian group `A`.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::algebra::coeff::{
    add_maps, compose, identity_rows, is_automorphism, is_hom, reduce_rows, same_map, CoefficientModule, IntRows,
};
use crate::error::{Error, Result};
use crate::quandle::QuandleTable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuandleModule {
    q: usize,
    factors: Vec<u64>,
    eta: Vec<IntRows>,
    tau: Vec<IntRows>,
}

fn sub_maps(target: &[u64], a: &IntRows, b: &IntRows) -> IntRows {
    let neg: IntRows = b.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    add_maps(target, a, &neg)
}

/// Inverse of an automorphism of a finite group, as its last power before
/// the identity.
pub fn inverse_automorphism(factors: &[u64], h: &IntRows) -> Result<IntRows> {
    if !is_hom(factors, factors, h) || !is_automorphism(factors, h) {
        return Err(Error::InvalidModule("map is not an automorphism".into()));
    }
    let id = identity_rows(factors.len());
    let mut prev = id.clone();
    let mut p = reduce_rows(factors, h);
    while !same_map(factors, &p, &id) {
        prev = p.clone();
        p = compose(factors, &p, h);
    }
    Ok(prev)
}

impl QuandleModule {
    /// `eta` and `tau` are indexed by `x * q + y`.
    pub fn new(x: &QuandleTable, factors: Vec<u64>, eta: Vec<IntRows>, tau: Vec<IntRows>) -> Result<Self> {
        let q = x.size();
        if eta.len() != q * q || tau.len() != q * q {
            return Err(Error::InvalidModule(format!("need {} eta and tau matrices", q * q)));
        }
        CoefficientModule::constant(factors.clone()).map_err(|e| Error::InvalidModule(e.to_string()))?;
        let k = factors.len();
        let shaped = |m: &IntRows| m.len() == k && m.iter().all(|r| r.len() == k);
        for i in 0..q * q {
            let (a, b) = (i / q, i % q);
            if !shaped(&eta[i]) || !shaped(&tau[i]) {
                return Err(Error::InvalidModule(format!("matrices at ({a},{b}) must be {k}x{k}")));
            }
            if !is_hom(&factors, &factors, &eta[i]) || !is_automorphism(&factors, &eta[i]) {
                return Err(Error::InvalidModule(format!("eta at ({a},{b}) is not an automorphism")));
            }
            if !is_hom(&factors, &factors, &tau[i]) {
                return Err(Error::InvalidModule(format!("tau at ({a},{b}) is not well defined")));
            }
        }
        let eta = eta.iter().map(|m| reduce_rows(&factors, m)).collect();
        let tau = tau.iter().map(|m| reduce_rows(&factors, m)).collect();
        let module = QuandleModule { q, factors, eta, tau };
        module.check_axioms(x)?;
        Ok(module)
    }

    /// `eta_{x,y} = T`, `tau_{x,y} = 1 - T`.
    pub fn constant(x: &QuandleTable, coeff: &CoefficientModule) -> Self {
        let q = x.size();
        let f = coeff.factors().to_vec();
        let t = coeff.t().clone();
        let one_minus_t = sub_maps(&f, &identity_rows(f.len()), &t);
        QuandleModule { q, factors: f, eta: vec![t; q * q], tau: vec![one_minus_t; q * q] }
    }

    /// Module from `g: X -> Aut(A)` with `g_{y*z} = g_z g_y g_z^{-1}`:
    /// `eta_{x,y} = g_y`, `tau_{x,y} = 1 - g_y`.
    pub fn from_action(x: &QuandleTable, factors: Vec<u64>, g: &[IntRows]) -> Result<Self> {
        let q = x.size();
        if g.len() != q {
            return Err(Error::InvalidModule(format!("need one automorphism per element, got {}", g.len())));
        }
        let id = identity_rows(factors.len());
        let mut eta = Vec::with_capacity(q * q);
        let mut tau = Vec::with_capacity(q * q);
        for _a in 0..q {
            for gy in g {
                eta.push(gy.clone());
                tau.push(sub_maps(&factors, &id, gy));
            }
        }
        Self::new(x, factors, eta, tau)
    }

    /// Fiberwise change of coordinates by automorphisms `h_x`:
    /// `eta'_{x,y} = h_{x*y}^{-1} eta_{x,y} h_x`, `tau'_{x,y} = h_{x*y}^{-1} tau_{x,y} h_y`.
    pub fn rebased(&self, x: &QuandleTable, h: &[IntRows]) -> Result<Self> {
        if h.len() != self.q {
            return Err(Error::InvalidModule("need one automorphism per element".into()));
        }
        let f = &self.factors;
        let h_inv = h.iter().map(|m| inverse_automorphism(f, m)).collect::<Result<Vec<_>>>()?;
        let mut eta = Vec::with_capacity(self.q * self.q);
        let mut tau = Vec::with_capacity(self.q * self.q);
        for a in 0..self.q {
            for b in 0..self.q {
                let hi = &h_inv[x.op(a, b)];
                eta.push(compose(f, hi, &compose(f, self.eta(a, b), &h[a])));
                tau.push(compose(f, hi, &compose(f, self.tau(a, b), &h[b])));
            }
        }
        Self::new(x, f.clone(), eta, tau)
    }

    pub fn quandle_size(&self) -> usize {
        self.q
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn eta(&self, x: usize, y: usize) -> &IntRows {
        &self.eta[x * self.q + y]
    }

    pub fn tau(&self, x: usize, y: usize) -> &IntRows {
        &self.tau[x * self.q + y]
    }

    /// Constant `eta = T` and `tau = 1 - T` for some `T`.
    pub fn as_constant(&self) -> Option<CoefficientModule> {
        let t = self.eta.first()?;
        let f = &self.factors;
        let one_minus_t = sub_maps(f, &identity_rows(f.len()), t);
        let uniform = self.eta.iter().all(|m| same_map(f, m, t)) && self.tau.iter().all(|m| same_map(f, m, &one_minus_t));
        if uniform {
            CoefficientModule::new(f.clone(), t.clone()).ok()
        } else {
            None
        }
    }

    fn check_axioms(&self, x: &QuandleTable) -> Result<()> {
        let f = &self.factors;
        let fail = |name: &str, a: usize, b: usize, c: usize| {
            Err(Error::InvalidModule(format!("{name} fails at (x,y,z) = ({a},{b},{c})")))
        };
        let id = identity_rows(f.len());
        for a in 0..self.q {
            if !same_map(f, &add_maps(f, self.tau(a, a), self.eta(a, a)), &id) {
                return fail("tau_{x,x} + eta_{x,x} = 1", a, a, a);
            }
            for b in 0..self.q {
                let ab = x.op(a, b);
                for c in 0..self.q {
                    let (ac, bc) = (x.op(a, c), x.op(b, c));
                    let lhs = compose(f, self.eta(ab, c), self.eta(a, b));
                    let rhs = compose(f, self.eta(ac, bc), self.eta(a, c));
                    if !same_map(f, &lhs, &rhs) {
                        return fail("eta_{x*y,z} eta_{x,y} = eta_{x*z,y*z} eta_{x,z}", a, b, c);
                    }
                    let lhs = compose(f, self.eta(ab, c), self.tau(a, b));
                    let rhs = compose(f, self.tau(ac, bc), self.eta(b, c));
                    if !same_map(f, &lhs, &rhs) {
                        return fail("eta_{x*y,z} tau_{x,y} = tau_{x*z,y*z} eta_{y,z}", a, b, c);
                    }
                    let rhs = add_maps(
                        f,
                        &compose(f, self.eta(ac, bc), self.tau(a, c)),
                        &compose(f, self.tau(ac, bc), self.tau(b, c)),
                    );
                    if !same_map(f, self.tau(ab, c), &rhs) {
                        return fail("tau_{x*y,z} = eta_{x*z,y*z} tau_{x,z} + tau_{x*z,y*z} tau_{y,z}", a, b, c);
                    }
                }
            }
        }
        Ok(())
    }

    /// `{"torsion": [..], "eta": {"x,y": [[..]]}, "tau": {..}}`
    pub fn to_json(&self) -> Value {
        let table = |ms: &[IntRows]| {
            let mut map = serde_json::Map::new();
            for (i, m) in ms.iter().enumerate() {
                map.insert(format!("{},{}", i / self.q, i % self.q), serde_json::json!(m));
            }
            Value::Object(map)
        };
        serde_json::json!({ "torsion": self.factors, "eta": table(&self.eta), "tau": table(&self.tau) })
    }

    /// `fallback_factors` is used when the JSON has no `"torsion"` entry.
    pub fn from_json(value: &Value, x: &QuandleTable, fallback_factors: Option<&[u64]>) -> Result<Self> {
        let bad = |m: String| Error::InvalidModule(m);
        let factors: Vec<u64> = match value.get("torsion") {
            Some(t) => serde_json::from_value(t.clone())?,
            None => fallback_factors.ok_or_else(|| bad("module has no \"torsion\" entry".into()))?.to_vec(),
        };
        let q = x.size();
        let read = |key: &str| -> Result<Vec<IntRows>> {
            let raw: BTreeMap<String, IntRows> = serde_json::from_value(
                value.get(key).cloned().ok_or_else(|| bad(format!("module has no {key:?} entry")))?,
            )?;
            let mut out = vec![None; q * q];
            for (k, m) in raw {
                let parts: Vec<usize> = k
                    .split(',')
                    .map(|s| s.trim().parse().map_err(|_| bad(format!("bad key {k:?}"))))
                    .collect::<Result<_>>()?;
                if parts.len() != 2 || parts[0] >= q || parts[1] >= q {
                    return Err(bad(format!("bad key {k:?}")));
                }
                out[parts[0] * q + parts[1]] = Some(m);
            }
            out.into_iter()
                .enumerate()
                .map(|(i, m)| m.ok_or_else(|| bad(format!("{key} missing at \"{},{}\"", i / q, i % q))))
                .collect()
        };
        Self::new(x, factors, read("eta")?, read("tau")?)
    }
}
