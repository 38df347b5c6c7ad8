//! Coboundary maps as matrices between cochain groups.

use crate::algebra::coeff::{identity_rows, CoefficientModule, IntRows};
use crate::algebra::homology::{lcm_all, GroupHom};
use crate::algebra::zn::{neg_mod, ZnMatrix};
use crate::error::Result;
use crate::quandle::QuandleTable;

use super::complex::{Cochain, CochainBasis};
use super::module::QuandleModule;

/// Face `i` (1-based) of a tuple: drop `x_i`.
fn face0(x: &[usize], i: usize) -> Vec<usize> {
    x.iter().enumerate().filter(|&(j, _)| j + 1 != i).map(|(_, &v)| v).collect()
}

/// Face `i` acted on: `(x_1*x_i, ..., x_{i-1}*x_i, x_{i+1}, ...)`.
fn face1(x: &[usize], i: usize, quandle: &QuandleTable) -> Vec<usize> {
    let xi = x[i - 1];
    x.iter()
        .enumerate()
        .filter(|&(j, _)| j + 1 != i)
        .map(|(j, &v)| if j + 1 < i { quandle.op(v, xi) } else { v })
        .collect()
}

struct Assembler<'a> {
    source: CochainBasis,
    target: CochainBasis,
    factors: &'a [u64],
    modulus: u64,
    matrix: ZnMatrix,
}

impl<'a> Assembler<'a> {
    fn new(q: usize, n: usize, factors: &'a [u64]) -> Self {
        let source = CochainBasis::new(q, n);
        let target = CochainBasis::new(q, n + 1);
        let k = factors.len();
        let modulus = lcm_all(factors);
        let matrix = ZnMatrix::zeros(target.len() * k, source.len() * k, modulus);
        Assembler { source, target, factors, modulus, matrix }
    }

    /// Adds `sign * coeff` into block `(row, face)`; degenerate faces vanish.
    fn add(&mut self, row: usize, face: &[usize], coeff: &IntRows, sign: i64) {
        let Some(col) = self.source.index_of(face) else { return };
        let k = self.factors.len();
        let m = self.modulus;
        for (r, crow) in coeff.iter().enumerate() {
            for (c, &e) in crow.iter().enumerate() {
                let v = (e as i128).rem_euclid(m as i128) as u64;
                let v = if sign < 0 { neg_mod(v, m) } else { v };
                if v != 0 {
                    self.matrix.add_to(row * k + r, col * k + c, v);
                }
            }
        }
    }

    fn finish(self) -> Result<GroupHom> {
        let src = Cochain::group_orders(&self.source, self.factors);
        let tgt = Cochain::group_orders(&self.target, self.factors);
        GroupHom::new(src, tgt, self.matrix)
    }
}

/// `delta^n = sum_{i=1}^{n+1} (-1)^i (T d0_i - d1_i)` from degree `n` to
/// `n + 1`. Degree 0 is the zero map out of the trivial group.
pub fn differential_matrix(x: &QuandleTable, coeff: &CoefficientModule, n: usize) -> Result<GroupHom> {
    let factors = coeff.factors();
    let mut asm = Assembler::new(x.size(), n, factors);
    if n == 0 {
        return asm.finish();
    }
    let t = coeff.t();
    let id = identity_rows(factors.len());
    for row in 0..asm.target.len() {
        let tuple = asm.target.tuple(row);
        for i in 1..=n + 1 {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            asm.add(row, &face0(&tuple, i), t, sign);
            asm.add(row, &face1(&tuple, i, x), &id, -sign);
        }
    }
    asm.finish()
}

/// Differential with quandle-module coefficients:
/// `sum_{i=2}^{n+1} (-1)^i (eta_{[x without x_i], [x_i..x_{n+1}]} d0_i - d1_i)
///  + tau_{[x_1, x_3..x_{n+1}], [x_2, x_3..x_{n+1}]} d0_1`,
/// brackets left-normed.
pub fn generalized_differential_matrix(x: &QuandleTable, module: &QuandleModule, n: usize) -> Result<GroupHom> {
    let factors = module.factors();
    let mut asm = Assembler::new(x.size(), n, factors);
    if n == 0 {
        return asm.finish();
    }
    let id = identity_rows(factors.len());
    for row in 0..asm.target.len() {
        let tuple = asm.target.tuple(row);
        for i in 2..=n + 1 {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let d0 = face0(&tuple, i);
            let a = x.bracket(d0.iter().copied());
            let b = x.bracket(tuple[i - 1..].iter().copied());
            asm.add(row, &d0, module.eta(a, b), sign);
            asm.add(row, &face1(&tuple, i, x), &id, -sign);
        }
        let tail = &tuple[2..];
        let a = x.bracket(std::iter::once(tuple[0]).chain(tail.iter().copied()));
        let b = x.bracket(std::iter::once(tuple[1]).chain(tail.iter().copied()));
        asm.add(row, &face0(&tuple, 1), module.tau(a, b), 1);
    }
    asm.finish()
}

/// Which coefficients a complex uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Twisted(CoefficientModule),
    Module(QuandleModule),
}

impl Coefficients {
    pub fn factors(&self) -> &[u64] {
        match self {
            Coefficients::Twisted(c) => c.factors(),
            Coefficients::Module(m) => m.factors(),
        }
    }

    pub fn differential(&self, x: &QuandleTable, n: usize) -> Result<GroupHom> {
        match self {
            Coefficients::Twisted(c) => differential_matrix(x, c, n),
            Coefficients::Module(m) => generalized_differential_matrix(x, m, n),
        }
    }
}

impl From<CoefficientModule> for Coefficients {
    fn from(c: CoefficientModule) -> Self {
        Coefficients::Twisted(c)
    }
}

impl From<QuandleModule> for Coefficients {
    fn from(m: QuandleModule) -> Self {
        Coefficients::Module(m)
    }
}

/// Applies the coboundary to a cochain.
pub fn coboundary(x: &QuandleTable, coeffs: &Coefficients, c: &Cochain) -> Result<Cochain> {
    let d = coeffs.differential(x, c.degree())?;
    let image = d.apply(&c.flatten());
    Cochain::from_flat(CochainBasis::new(x.size(), c.degree() + 1), coeffs.factors(), &image)
}

/// The degree-2 cocycle condition checked pointwise:
/// `T phi(x1,x2) + phi(x1*x2,x3) = T phi(x1,x3) + (1-T) phi(x2,x3) + phi(x1*x3,x2*x3)`
/// on every non-degenerate triple, or its module analogue.
pub fn satisfies_two_cocycle_condition(x: &QuandleTable, coeffs: &Coefficients, phi: &Cochain) -> bool {
    let f = coeffs.factors();
    let q = x.size();
    let module = match coeffs {
        Coefficients::Twisted(c) => QuandleModule::constant(x, c),
        Coefficients::Module(m) => m.clone(),
    };
    let ap = |m: &IntRows, v: &[u64]| crate::algebra::coeff::apply_rows(f, m, v);
    let add = |a: &[u64], b: &[u64]| a.iter().zip(b).zip(f).map(|((x, y), d)| (x + y) % d).collect::<Vec<_>>();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                if a == b || b == c {
                    continue;
                }
                let (ab, ac, bc) = (x.op(a, b), x.op(a, c), x.op(b, c));
                let lhs = add(&ap(module.eta(ab, c), &phi.value(&[a, b])), &phi.value(&[ab, c]));
                let rhs = add(
                    &add(&ap(module.eta(ac, bc), &phi.value(&[a, c])), &ap(module.tau(ac, bc), &phi.value(&[b, c]))),
                    &phi.value(&[ac, bc]),
                );
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}
