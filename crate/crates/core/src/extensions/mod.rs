//! Abelian extensions `X x_psi A` of quandles by 2-cocycles.

pub mod principal;

pub use principal::{
    discrete_fiber_vanishing_check, extract_principal_cocycle, principal_cocycle_value, sampled_cocycle, PrincipalData,
    PrincipalExtension,
};

use crate::algebra::coeff::{apply_rows, CoefficientModule};
use crate::cohomology::{is_coboundary, Cochain, CochainBasis, Coefficients, QuandleModule};
use crate::error::{Error, Result};
use crate::quandle::{verify_table, QuandleTable, Violation};

/// The total quandle of an extension. Element `(x, a)` has index
/// `x * |A| + index(a)`, with `a` indexed in mixed radix, first factor most
/// significant.
#[derive(Clone, Debug)]
pub struct ExtensionTable {
    base: QuandleTable,
    fiber: Coefficients,
    cocycle: Cochain,
    total: QuandleTable,
}

fn fiber_group(factors: &[u64]) -> CoefficientModule {
    CoefficientModule::constant(factors.to_vec()).expect("validated factors")
}

impl ExtensionTable {
    pub fn base(&self) -> &QuandleTable {
        &self.base
    }

    pub fn fiber(&self) -> &Coefficients {
        &self.fiber
    }

    pub fn cocycle(&self) -> &Cochain {
        &self.cocycle
    }

    pub fn total(&self) -> &QuandleTable {
        &self.total
    }

    pub fn fiber_order(&self) -> usize {
        fiber_group(self.fiber.factors()).order() as usize
    }

    pub fn index(&self, x: usize, a: &[u64]) -> usize {
        x * self.fiber_order() + fiber_group(self.fiber.factors()).index_of(a)
    }

    pub fn split(&self, e: usize) -> (usize, Vec<u64>) {
        let n = self.fiber_order();
        (e / n, fiber_group(self.fiber.factors()).element(e % n))
    }

    /// The projection `(x, a) |-> x`.
    pub fn projection(&self) -> Vec<usize> {
        (0..self.total.size()).map(|e| e / self.fiber_order()).collect()
    }
}

/// `(x, a) * (y, b) = (x*y, eta_{x,y} a + tau_{x,y} b + psi(x, y))`; for
/// twisted coefficients `eta = T`, `tau = 1 - T`.
pub fn extend(x: &QuandleTable, coeffs: &Coefficients, psi: &Cochain) -> Result<ExtensionTable> {
    if psi.degree() != 2 || psi.basis().quandle_size() != x.size() || psi.factors() != coeffs.factors() {
        return Err(Error::ShapeMismatch("extension needs a 2-cochain over the same quandle and group".into()));
    }
    let module = match coeffs {
        Coefficients::Twisted(c) => QuandleModule::constant(x, c),
        Coefficients::Module(m) => m.clone(),
    };
    let f = coeffs.factors();
    let g = fiber_group(f);
    let n = g.order() as usize;
    let q = x.size();
    let elems: Vec<Vec<u64>> = g.elements().collect();
    let mut rows = vec![vec![0usize; q * n]; q * n];
    for a in 0..q {
        for b in 0..q {
            let k = psi.value(&[a, b]);
            let ab = x.op(a, b);
            for (i, u) in elems.iter().enumerate() {
                let eu = apply_rows(f, module.eta(a, b), u);
                for (j, v) in elems.iter().enumerate() {
                    let tv = apply_rows(f, module.tau(a, b), v);
                    let w = g.add(&g.add(&eu, &tv), &k);
                    rows[a * n + i][b * n + j] = ab * n + g.index_of(&w);
                }
            }
        }
    }
    let report = verify_table(&rows);
    if let Some(v) = report.violations.first() {
        let label = |e: usize| format!("({},{:?})", e / n, elems[e % n]);
        let msg = match v {
            Violation::SelfDistributivity { x, y, z } => {
                format!("self-distributivity fails at {}, {}, {}", label(*x), label(*y), label(*z))
            }
            other => other.to_string(),
        };
        return Err(Error::NotACocycle(msg));
    }
    let total = QuandleTable::new(rows)?;
    Ok(ExtensionTable { base: x.clone(), fiber: coeffs.clone(), cocycle: psi.clone(), total })
}

/// `g: X -> A` with `delta g = psi - phi`, when the extensions are
/// equivalent; `(x, a) |-> (x, a + g(x))` maps `X x_psi A` onto `X x_phi A`.
pub fn equivalent(x: &QuandleTable, coeffs: &Coefficients, psi: &Cochain, phi: &Cochain) -> Result<Option<Cochain>> {
    let diff = psi.sub(phi)?;
    for (name, c) in [("first", psi), ("second", phi)] {
        let d = coeffs.differential(x, 2)?;
        if d.apply(&c.flatten()).iter().any(|&v| v != 0) {
            return Err(Error::NotACocycle(format!("the {name} cochain is not a 2-cocycle")));
        }
    }
    is_coboundary(x, coeffs, &diff)
}

/// The map `(x, a) |-> (x, a + g(x))` on total-table indices.
pub fn fiber_shift(ext: &ExtensionTable, g: &Cochain) -> Result<Vec<usize>> {
    if g.degree() != 1 || g.factors() != ext.fiber.factors() || g.basis() != &CochainBasis::new(ext.base.size(), 1) {
        return Err(Error::ShapeMismatch("shift must be a 1-cochain on the base".into()));
    }
    let grp = fiber_group(ext.fiber.factors());
    Ok((0..ext.total.size())
        .map(|e| {
            let (x, a) = ext.split(e);
            ext.index(x, &grp.add(&a, &g.value(&[x])))
        })
        .collect())
}
