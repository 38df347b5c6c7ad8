//! A quandle-module certificate on `X = G x R^n`, where `G` is the group of
//! block lower-triangular matrices `E = [[S, 0], [C, T]]`.

use std::hash::{Hash, Hasher};

use serde_json::Value;

use super::chain::{ChainPoint, FormalChain};
use super::{identity, Certificate};
use crate::algebra::rational::{qvec_to_json, vec_add, vec_neg, vec_sub, QVec, RationalMatrix, Q};
use crate::error::{Error, Result};
use num_traits::Zero;

/// A point `(E, x)`; `E` is `2n x 2n`, `x` in `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePoint {
    pub e: RationalMatrix,
    pub x: QVec,
}

impl Hash for ModulePoint {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.e.hash(h);
        self.x.hash(h);
    }
}

impl ChainPoint for ModulePoint {
    fn to_json(&self) -> Value {
        serde_json::json!({ "E": self.e, "x": qvec_to_json(&self.x) })
    }
}

fn block(e: &RationalMatrix, row: usize, col: usize) -> RationalMatrix {
    let n = e.rows() / 2;
    RationalMatrix::from_fn(n, n, |i, j| e.get(row * n + i, col * n + j).clone())
}

/// `E = [[S, 0], [C, T]]` from its blocks.
pub fn block_matrix(s: &RationalMatrix, c: &RationalMatrix, t: &RationalMatrix) -> RationalMatrix {
    let n = s.rows();
    RationalMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => s.get(i, j).clone(),
        (true, false) => Q::zero(),
        (false, true) => c.get(i - n, j).clone(),
        (false, false) => t.get(i - n, j - n).clone(),
    })
}

/// `(E0, x0) * (E1, x1) = (E1 E0 E1^{-1}, S1 x0 + (I - S1) x1)`
pub fn module_op(p: &ModulePoint, r: &ModulePoint) -> Result<ModulePoint> {
    let e = r.e.mul(&p.e)?.mul(&r.e.inverse()?)?;
    let s1 = block(&r.e, 0, 0);
    let x = vec_add(&s1.mul_vec(&p.x)?, &vec_sub(&r.x, &s1.mul_vec(&r.x)?));
    Ok(ModulePoint { e, x })
}

/// `eta_{p, (E1, x1)} = T1`
pub fn module_eta(_p: &ModulePoint, r: &ModulePoint) -> RationalMatrix {
    block(&r.e, 1, 1)
}

/// `tau_{p, (E1, x1)} = I - T1`
pub fn module_tau(_p: &ModulePoint, r: &ModulePoint) -> RationalMatrix {
    let t = block(&r.e, 1, 1);
    RationalMatrix::identity(t.rows()).sub(&t).expect("square")
}

/// `kappa_{(E0, x0), (E1, x1)} = C1 (x0 - x1)`
pub fn module_kappa(p: &ModulePoint, r: &ModulePoint) -> Result<QVec> {
    block(&r.e, 1, 0).mul_vec(&vec_sub(&p.x, &r.x))
}

fn axioms_hold(points: &[ModulePoint]) -> Result<(bool, bool)> {
    let mut axioms = true;
    let mut cocycle = true;
    for a in points {
        let id = RationalMatrix::identity(a.x.len());
        axioms &= module_tau(a, a).add(&module_eta(a, a))? == id;
        for b in points {
            let ab = module_op(a, b)?;
            for c in points {
                let (ac, bc) = (module_op(a, c)?, module_op(b, c)?);
                let eta = module_eta;
                let tau = module_tau;
                axioms &= eta(&ab, c).mul(&eta(a, b))? == eta(&ac, &bc).mul(&eta(a, c))?;
                axioms &= eta(&ab, c).mul(&tau(a, b))? == tau(&ac, &bc).mul(&eta(b, c))?;
                axioms &= tau(&ab, c) == eta(&ac, &bc).mul(&tau(a, c))?.add(&tau(&ac, &bc).mul(&tau(b, c))?)?;
                let lhs = vec_add(&eta(&ab, c).mul_vec(&module_kappa(a, b)?)?, &module_kappa(&ab, c)?);
                let rhs = vec_add(
                    &vec_add(
                        &eta(&ac, &bc).mul_vec(&module_kappa(a, c)?)?,
                        &tau(&ac, &bc).mul_vec(&module_kappa(b, c)?)?,
                    ),
                    &module_kappa(&ac, &bc)?,
                );
                cocycle &= lhs == rhs;
            }
        }
    }
    Ok((axioms, cocycle))
}

/// `w = <(E, x), (E, 0)> - <(E, -x), (E, 0)>` with `E = [[-I, 0], [C1, -I]]`;
/// the cocycle `kappa` takes the value `C1 (2x)` on `w`.
pub fn certify_module_example(n: usize, c1: &RationalMatrix, x: &[Q]) -> Result<Certificate> {
    if n == 0 || c1.rows() != n || c1.cols() != n || x.len() != n {
        return Err(Error::ShapeMismatch(format!("need an {n}x{n} matrix and a vector of length {n}")));
    }
    let minus = RationalMatrix::identity(n).neg();
    let e = block_matrix(&minus, c1, &minus);
    let zero = vec![Q::zero(); n];
    let p_plus = ModulePoint { e: e.clone(), x: x.to_vec() };
    let p_zero = ModulePoint { e: e.clone(), x: zero.clone() };
    let p_minus = ModulePoint { e: e.clone(), x: vec_neg(x) };
    let id = RationalMatrix::identity(n);
    let w = FormalChain::new(n, 2)
        .with_term(id.clone(), vec![p_plus.clone(), p_zero.clone()])?
        .with_term(id.neg(), vec![p_minus.clone(), p_zero.clone()])?;
    let boundary = w.boundary2(module_op, module_eta, module_tau)?;
    let value = w.evaluate(module_kappa)?;
    let expected: QVec = c1.mul_vec(x)?.iter().map(|v| v * Q::from_integer(2.into())).collect();

    // a point with a different group element, so that conjugation acts
    let two = RationalMatrix::scalar(n, Q::from_integer(2.into()));
    let three = RationalMatrix::scalar(n, Q::from_integer(3.into()));
    let other = ModulePoint { e: block_matrix(&two, &id, &three), x: vec![Q::from_integer(1.into()); n] };
    let (axioms, cocycle) = axioms_hold(&[p_plus, p_zero, p_minus, other])?;
    let ids = vec![
        identity("module axioms at the sampled points", axioms),
        identity("kappa satisfies the module 2-cocycle condition at the sampled points", cocycle),
        identity("pairing equals C1(2x)", value == expected),
    ];
    let inputs = serde_json::json!({ "n": n, "C1": c1, "x": qvec_to_json(x), "E": e });
    Ok(Certificate::assemble(inputs, ids, w.to_json(), boundary.to_json(), boundary.is_zero(), value))
}
