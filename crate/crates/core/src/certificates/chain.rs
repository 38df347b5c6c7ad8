//! Formal chains with matrix coefficients over linear quandles.

use std::collections::HashMap;
use std::hash::Hash;

use num_traits::Zero;
use serde_json::Value;

use crate::algebra::rational::{q, qvec_to_json, vec_add, vec_is_zero, vec_sub, QVec, RationalMatrix, Q};
use crate::error::{Error, Result};

/// A point a chain may be built on.
pub trait ChainPoint: Clone + Eq + Hash {
    fn to_json(&self) -> Value;
}

impl ChainPoint for QVec {
    fn to_json(&self) -> Value {
        qvec_to_json(self)
    }
}

/// `sum_i c_i <p_i1, ..., p_in>` with `c_i` square matrices acting on `Q^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalChain<P> {
    m: usize,
    degree: usize,
    terms: Vec<(RationalMatrix, Vec<P>)>,
}

impl<P: ChainPoint> FormalChain<P> {
    pub fn new(m: usize, degree: usize) -> Self {
        FormalChain { m, degree, terms: Vec::new() }
    }

    pub fn coefficient_dim(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(RationalMatrix, Vec<P>)] {
        &self.terms
    }

    pub fn push(&mut self, coeff: RationalMatrix, tuple: Vec<P>) -> Result<()> {
        if coeff.rows() != self.m || coeff.cols() != self.m {
            return Err(Error::ShapeMismatch(format!("chain coefficients must be {}x{}", self.m, self.m)));
        }
        if tuple.len() != self.degree {
            return Err(Error::ShapeMismatch(format!("chain tuples must have length {}", self.degree)));
        }
        self.terms.push((coeff, tuple));
        Ok(())
    }

    pub fn with_term(mut self, coeff: RationalMatrix, tuple: Vec<P>) -> Result<Self> {
        self.push(coeff, tuple)?;
        Ok(self)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.m != other.m || self.degree != other.degree {
            return Err(Error::ShapeMismatch("chains of different shapes".into()));
        }
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        Ok(out.combined())
    }

    /// Left multiplication of every coefficient.
    pub fn scaled(&self, c: &RationalMatrix) -> Result<Self> {
        let terms = self.terms.iter().map(|(k, t)| Ok((c.mul(k)?, t.clone()))).collect::<Result<_>>()?;
        Ok(FormalChain { m: self.m, degree: self.degree, terms })
    }

    /// Sums like terms and drops zero coefficients; in degree at least 2,
    /// tuples with equal adjacent entries are dropped as well. Terms keep
    /// the order of their first appearance.
    pub fn combined(&self) -> Self {
        let mut index: HashMap<&[P], usize> = HashMap::new();
        let mut acc: Vec<(RationalMatrix, Vec<P>)> = Vec::new();
        for (c, t) in &self.terms {
            if self.degree >= 2 && t.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            match index.get(t.as_slice()) {
                Some(&i) => acc[i].0 = acc[i].0.add(c).expect("same shape"),
                None => {
                    index.insert(t.as_slice(), acc.len());
                    acc.push((c.clone(), t.clone()));
                }
            }
        }
        acc.retain(|(c, _)| !c.is_zero());
        FormalChain { m: self.m, degree: self.degree, terms: acc }
    }

    pub fn is_zero(&self) -> bool {
        self.combined().terms.is_empty()
    }

    /// `d(c<p, q>) = c eta_{p,q} <p> + c tau_{p,q} <q> - c <p*q>` on a
    /// degree-2 chain.
    pub fn boundary2(
        &self,
        op: impl Fn(&P, &P) -> Result<P>,
        eta: impl Fn(&P, &P) -> RationalMatrix,
        tau: impl Fn(&P, &P) -> RationalMatrix,
    ) -> Result<Self> {
        if self.degree != 2 {
            return Err(Error::ShapeMismatch("boundary of a chain that is not of degree 2".into()));
        }
        let mut out = FormalChain::new(self.m, 1);
        for (c, t) in &self.terms {
            let (p, r) = (&t[0], &t[1]);
            out.push(c.mul(&eta(p, r))?, vec![p.clone()])?;
            out.push(c.mul(&tau(p, r))?, vec![r.clone()])?;
            out.push(c.neg(), vec![op(p, r)?])?;
        }
        Ok(out.combined())
    }

    /// `sum c kappa(p, q)` over the terms of a degree-2 chain.
    pub fn evaluate(&self, kappa: impl Fn(&P, &P) -> Result<QVec>) -> Result<QVec> {
        let mut acc = vec![Q::zero(); self.m];
        for (c, t) in &self.terms {
            if t.len() != 2 {
                return Err(Error::ShapeMismatch("pairing needs a degree-2 chain".into()));
            }
            acc = vec_add(&acc, &c.mul_vec(&kappa(&t[0], &t[1])?)?);
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(c, t)| {
                    serde_json::json!({
                        "coefficient": c,
                        "tuple": t.iter().map(ChainPoint::to_json).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

/// `R^n` with `x * y = S x + (I - S) y` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearQuandle {
    s: RationalMatrix,
}

impl LinearQuandle {
    pub fn new(s: RationalMatrix) -> Result<Self> {
        if !s.is_invertible() {
            return Err(Error::InvalidArgument("S must be an invertible square matrix".into()));
        }
        Ok(LinearQuandle { s })
    }

    pub fn dim(&self) -> usize {
        self.s.rows()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.s
    }

    pub fn is_indecomposable(&self) -> bool {
        RationalMatrix::identity(self.dim()).sub(&self.s).map(|m| m.is_invertible()).unwrap_or(false)
    }

    pub fn op(&self, x: &[Q], y: &[Q]) -> Result<QVec> {
        let sx = self.s.mul_vec(x)?;
        let sy = self.s.mul_vec(y)?;
        Ok(vec_add(&sx, &vec_sub(y, &sy)))
    }
}

/// Twisted boundary `d<u, v> = T<u> + (I - T)<v> - <u*v>` over `(Q^n, S)`
/// with coefficients in `(Q^m, T)`.
pub fn boundary2_twisted(w: &FormalChain<QVec>, s: &RationalMatrix, t: &RationalMatrix) -> Result<FormalChain<QVec>> {
    let x = LinearQuandle::new(s.clone())?;
    if t.rows() != w.coefficient_dim() || !t.is_square() {
        return Err(Error::ShapeMismatch("T does not act on the coefficient space".into()));
    }
    for (_, tuple) in w.terms() {
        if tuple.iter().any(|p| p.len() != x.dim()) {
            return Err(Error::ShapeMismatch("chain point of the wrong dimension".into()));
        }
    }
    let one_minus_t = RationalMatrix::identity(t.rows()).sub(t)?;
    w.boundary2(|a, b| x.op(a, b), |_, _| t.clone(), |_, _| one_minus_t.clone())
}

/// Evaluation of `phi(x1, x2) = C (x1 - x2)` on a degree-2 chain.
pub fn pairing(c: &RationalMatrix, w: &FormalChain<QVec>) -> Result<QVec> {
    if c.rows() != w.coefficient_dim() {
        return Err(Error::ShapeMismatch("C has the wrong number of rows".into()));
    }
    w.evaluate(|a, b| c.mul_vec(&vec_sub(a, b)))
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    vec_is_zero(v)
}

pub fn scalar_vec(v: &[Q], k: i64) -> QVec {
    v.iter().map(|x| x * q(k)).collect()
}
