//! Principal extensions `E -> X` with a free, fiberwise transitive action of
//! an abelian group `A` (written additively), and the 2-cocycle of a section.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::algebra::coeff::CoefficientModule;
use crate::cohomology::{Cochain, CochainBasis, Coefficients};
use crate::error::{Error, Result};
use crate::quandle::{is_quandle_hom, QuandleTable};

use super::ExtensionTable;

/// Data needed to read off the cocycle of a section: `s(x) * s(y) =
/// s(x*y) . phi(x, y)`.
pub trait PrincipalExtension {
    type Base;
    type Total;

    fn fiber_factors(&self) -> Vec<u64>;
    fn base_op(&self, x: &Self::Base, y: &Self::Base) -> Result<Self::Base>;
    fn total_op(&self, e: &Self::Total, f: &Self::Total) -> Result<Self::Total>;
    fn section(&self, x: &Self::Base) -> Result<Self::Total>;
    /// The unique `a` with `e = f . a`, for `e`, `f` in the same fiber.
    fn fiber_difference(&self, e: &Self::Total, f: &Self::Total) -> Result<Vec<u64>>;
}

pub fn principal_cocycle_value<P: PrincipalExtension>(p: &P, x: &P::Base, y: &P::Base) -> Result<Vec<u64>> {
    let lhs = p.total_op(&p.section(x)?, &p.section(y)?)?;
    let rhs = p.section(&p.base_op(x, y)?)?;
    p.fiber_difference(&lhs, &rhs)
}

/// The cocycle of the section on pairs of sample points, indexed by
/// position in `points`.
pub fn sampled_cocycle<P: PrincipalExtension>(p: &P, points: &[P::Base]) -> Result<Cochain> {
    let basis = CochainBasis::new(points.len(), 2);
    let factors = p.fiber_factors();
    let mut flat = Vec::with_capacity(basis.len() * factors.len());
    for t in basis.tuples() {
        flat.extend(principal_cocycle_value(p, &points[t[0]], &points[t[1]])?);
    }
    Cochain::from_flat(basis, &factors, &flat)
}

/// A finite principal extension given by tables.
#[derive(Clone, Debug)]
pub struct PrincipalData {
    total: QuandleTable,
    base: QuandleTable,
    projection: Vec<usize>,
    fiber: CoefficientModule,
    // action[i][e] = e . (element i of the fiber group)
    action: Vec<Vec<usize>>,
    section: Vec<usize>,
    // translation[e][i] = e . i, inverted per fiber: (e, f) -> a
    difference: Vec<BTreeMap<usize, usize>>,
}

fn invalid(msg: String) -> Error {
    Error::InvalidPrincipal(msg)
}

impl PrincipalData {
    /// `fiber` lists the cyclic factors of `A`; `action` holds one
    /// permutation per element of `A` in mixed-radix order.
    pub fn new(
        total: QuandleTable,
        base: QuandleTable,
        projection: Vec<usize>,
        fiber: Vec<u64>,
        action: Vec<Vec<usize>>,
        section: Vec<usize>,
    ) -> Result<Self> {
        let grp = CoefficientModule::constant(fiber).map_err(|e| invalid(e.to_string()))?;
        let ne = total.size();
        let n = grp.order() as usize;
        if !is_quandle_hom(&projection, &total, &base)? {
            return Err(invalid("projection is not a quandle homomorphism".into()));
        }
        if let Some(x) = (0..base.size()).find(|x| !projection.contains(x)) {
            return Err(invalid(format!("projection misses base element {x}")));
        }
        if action.len() != n {
            return Err(invalid(format!("need {n} action permutations, got {}", action.len())));
        }
        for (i, p) in action.iter().enumerate() {
            let mut seen = vec![false; ne];
            if p.len() != ne || p.iter().any(|&v| v >= ne || std::mem::replace(&mut seen[v], true)) {
                return Err(invalid(format!("action of element {i} is not a permutation")));
            }
        }
        if action[0].iter().enumerate().any(|(e, &v)| e != v) {
            return Err(invalid("the zero element does not act trivially".into()));
        }
        let elems: Vec<Vec<u64>> = grp.elements().collect();
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let k = grp.index_of(&grp.add(a, b));
                if let Some(e) = (0..ne).find(|&e| action[j][action[i][e]] != action[k][e]) {
                    return Err(invalid(format!("(e.a).b != e.(a+b) at e = {e}, a = {a:?}, b = {b:?}")));
                }
            }
        }
        let mut difference = vec![BTreeMap::new(); ne];
        for e in 0..ne {
            for (i, p) in action.iter().enumerate() {
                let f = p[e];
                if projection[f] != projection[e] {
                    return Err(invalid(format!("action moves {e} out of its fiber")));
                }
                if difference[e].insert(f, i).is_some() {
                    return Err(invalid(format!("action is not free at {e}")));
                }
            }
            let fiber_size = projection.iter().filter(|&&x| x == projection[e]).count();
            if fiber_size != n {
                return Err(invalid(format!("action is not transitive on the fiber of {e}")));
            }
        }
        for (i, p) in action.iter().enumerate() {
            for e in 0..ne {
                for f in 0..ne {
                    if p[total.op(e, f)] != total.op(p[e], p[f]) {
                        return Err(invalid(format!("(e*f).a != (e.a)*(f.a) at e={e}, f={f}, a={:?}", elems[i])));
                    }
                    if total.op(p[e], f) != p[total.op(e, f)] {
                        return Err(invalid(format!("(e.a)*f != (e*f).a at e={e}, f={f}, a={:?}", elems[i])));
                    }
                }
            }
        }
        if section.len() != base.size() || section.iter().enumerate().any(|(x, &e)| e >= ne || projection[e] != x) {
            return Err(invalid("section is not a right inverse of the projection".into()));
        }
        Ok(PrincipalData { total, base, projection, fiber: grp, action, section, difference })
    }

    /// The extension with `(x, b) . a = (x, b + a)` and `s(x) = (x, 0)`.
    pub fn from_extension(ext: &ExtensionTable) -> Result<Self> {
        if let Coefficients::Twisted(c) = ext.fiber() {
            if !c.is_untwisted() {
                return Err(invalid("principal extensions need untwisted coefficients".into()));
            }
        } else {
            return Err(invalid("principal extensions need untwisted coefficients".into()));
        }
        let factors = ext.fiber().factors().to_vec();
        let grp = CoefficientModule::constant(factors.clone())?;
        let action = grp
            .elements()
            .map(|a| {
                (0..ext.total().size())
                    .map(|e| {
                        let (x, b) = ext.split(e);
                        ext.index(x, &grp.add(&b, &a))
                    })
                    .collect()
            })
            .collect();
        let section = (0..ext.base().size()).map(|x| ext.index(x, &grp.zero())).collect();
        Self::new(ext.total().clone(), ext.base().clone(), ext.projection(), factors, action, section)
    }

    pub fn with_section(&self, section: Vec<usize>) -> Result<Self> {
        Self::new(
            self.total.clone(),
            self.base.clone(),
            self.projection.clone(),
            self.fiber.factors().to_vec(),
            self.action.clone(),
            section,
        )
    }

    pub fn base(&self) -> &QuandleTable {
        &self.base
    }

    pub fn total(&self) -> &QuandleTable {
        &self.total
    }

    pub fn fiber(&self) -> &CoefficientModule {
        &self.fiber
    }

    pub fn act(&self, e: usize, a: &[u64]) -> usize {
        self.action[self.fiber.index_of(a)][e]
    }

    /// `{"total", "base", "projection", "action": {"a": perm}, "section"}`,
    /// optionally with `"fiber": [d_1, ...]` (default: cyclic of order the
    /// number of permutations). Action keys are comma-separated coordinates.
    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| v.get(k).cloned().ok_or_else(|| invalid(format!("missing {k:?}")));
        let total: QuandleTable = serde_json::from_value(field("total")?)?;
        let base: QuandleTable = serde_json::from_value(field("base")?)?;
        let projection: Vec<usize> = serde_json::from_value(field("projection")?)?;
        let section: Vec<usize> = serde_json::from_value(field("section")?)?;
        let raw: BTreeMap<String, Vec<usize>> = serde_json::from_value(field("action")?)?;
        let fiber: Vec<u64> = match v.get("fiber") {
            Some(f) => serde_json::from_value(f.clone())?,
            None => vec![raw.len() as u64],
        };
        let grp = CoefficientModule::constant(fiber.clone()).map_err(|e| invalid(e.to_string()))?;
        let mut action = vec![None; grp.order() as usize];
        for (k, perm) in raw {
            let coords = k
                .split(',')
                .map(|s| s.trim().parse::<u64>().map_err(|_| invalid(format!("bad action key {k:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if coords.len() != fiber.len() || coords.iter().zip(&fiber).any(|(c, d)| c >= d) {
                return Err(invalid(format!("action key {k:?} is not an element of the fiber group")));
            }
            action[grp.index_of(&coords)] = Some(perm);
        }
        let action = action
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| invalid(format!("no permutation for {:?}", grp.element(i)))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(total, base, projection, fiber, action, section)
    }

    pub fn to_json(&self) -> Value {
        let mut action = serde_json::Map::new();
        for (i, p) in self.action.iter().enumerate() {
            let key = self.fiber.element(i).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
            action.insert(key, serde_json::json!(p));
        }
        serde_json::json!({
            "total": self.total,
            "base": self.base,
            "projection": self.projection,
            "fiber": self.fiber.factors(),
            "action": action,
            "section": self.section,
        })
    }
}

impl PrincipalExtension for PrincipalData {
    type Base = usize;
    type Total = usize;

    fn fiber_factors(&self) -> Vec<u64> {
        self.fiber.factors().to_vec()
    }

    fn base_op(&self, x: &usize, y: &usize) -> Result<usize> {
        Ok(self.base.op(*x, *y))
    }

    fn total_op(&self, e: &usize, f: &usize) -> Result<usize> {
        Ok(self.total.op(*e, *f))
    }

    fn section(&self, x: &usize) -> Result<usize> {
        Ok(self.section[*x])
    }

    fn fiber_difference(&self, e: &usize, f: &usize) -> Result<Vec<u64>> {
        self.difference[*f]
            .get(e)
            .map(|&i| self.fiber.element(i))
            .ok_or_else(|| invalid(format!("{e} and {f} lie in different fibers")))
    }
}

/// The cocycle `phi(x, y)` defined by `s(x) * s(y) = s(x*y) . phi(x, y)`.
pub fn extract_principal_cocycle(d: &PrincipalData) -> Result<Cochain> {
    let q = d.base.size();
    let basis = CochainBasis::new(q, 2);
    let factors = d.fiber.factors().to_vec();
    let mut flat = Vec::with_capacity(basis.len() * factors.len());
    for t in basis.tuples() {
        flat.extend(principal_cocycle_value(d, &t[0], &t[1])?);
    }
    for x in 0..q {
        if principal_cocycle_value(d, &x, &x)?.iter().any(|&v| v != 0) {
            return Err(invalid(format!("s({x}) * s({x}) != s({x})")));
        }
    }
    Cochain::from_flat(basis, &factors, &flat)
}

/// With a discrete fiber a continuous cocycle of this kind vanishes, so a
/// non-zero value rules continuity out.
pub fn discrete_fiber_vanishing_check(phi: &Cochain) -> bool {
    phi.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::extend;
    use crate::quandle::make_dihedral;

    #[test]
    fn round_trip_through_extension() {
        let x = make_dihedral(3);
        let c = Coefficients::Twisted(CoefficientModule::cyclic(3, 1).unwrap());
        // coboundary of g = (0, 1, 2) is a cocycle
        let psi = Cochain::from_fn(CochainBasis::new(3, 2), &[3], |t| vec![t[0] as i64 - x.op(t[0], t[1]) as i64]);
        let ext = extend(&x, &c, &psi).unwrap();
        let d = PrincipalData::from_extension(&ext).unwrap();
        assert_eq!(extract_principal_cocycle(&d).unwrap(), psi);
        let back = PrincipalData::from_json(&d.to_json()).unwrap();
        assert_eq!(extract_principal_cocycle(&back).unwrap(), psi);
    }

    #[test]
    fn twisted_extension_is_not_principal() {
        let x = make_dihedral(3);
        let c = Coefficients::Twisted(CoefficientModule::cyclic(3, 2).unwrap());
        let ext = extend(&x, &c, &Cochain::zero(CochainBasis::new(3, 2), &[3])).unwrap();
        assert!(matches!(PrincipalData::from_extension(&ext), Err(Error::InvalidPrincipal(_))));
    }
}
