//! Certificates over linear Alexander quandles `(Q^n, S)` with coefficients
//! `(Q^m, T)` and the cocycle `phi(x1, x2) = C (x1 - x2)`.

use serde::{Deserialize, Serialize};

use super::chain::{boundary2_twisted, pairing, scalar_vec, FormalChain};
use super::{identity, observation, Certificate};
use crate::algebra::rational::{q, qvec_to_json, vec_is_zero, vec_neg, vec_sub, QVec, RationalMatrix, Q};
use crate::error::{Error, Result};
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinearMode {
    /// `S^2 - S + 1 = 0 = T^2 - T + 1` and `C - TCS != 0`.
    I,
    /// `T = -I` and `S` has eigenvalue `-1`.
    Ii,
}

fn check_shapes(s: &RationalMatrix, t: &RationalMatrix, c: &RationalMatrix) -> Result<()> {
    if !s.is_invertible() || !t.is_invertible() {
        return Err(Error::InvalidArgument("S and T must be invertible square matrices".into()));
    }
    if c.rows() != t.rows() || c.cols() != s.rows() {
        return Err(Error::ShapeMismatch(format!(
            "C must be {}x{}, got {}x{}",
            t.rows(),
            s.rows(),
            c.rows(),
            c.cols()
        )));
    }
    Ok(())
}

fn check_vec(v: &Option<QVec>, n: usize, name: &str) -> Result<()> {
    match v {
        Some(x) if x.len() != n => Err(Error::ShapeMismatch(format!("{name} must have length {n}"))),
        _ => Ok(()),
    }
}

fn unit_vector(n: usize, j: usize) -> QVec {
    (0..n).map(|i| if i == j { q(1) } else { Q::zero() }).collect()
}

/// `e_j` for the first column `j` of `k` that is non-zero, else `e_0`.
fn seed_from_columns(k: &RationalMatrix) -> QVec {
    let j = (0..k.cols()).find(|&j| !vec_is_zero(&k.column(j))).unwrap_or(0);
    unit_vector(k.cols(), j)
}

/// `sum_{j=a}^{b} (-S)^j`, zero when `a > b`.
fn alt_sum(s: &RationalMatrix, a: u32, b: u32) -> Result<RationalMatrix> {
    let n = s.rows();
    let mut acc = RationalMatrix::zeros(n, n);
    if a > b {
        return Ok(acc);
    }
    let minus_s = s.neg();
    let mut p = minus_s.pow(a as i64)?;
    for _ in a..=b {
        acc = acc.add(&p)?;
        p = p.mul(&minus_s)?;
    }
    Ok(acc)
}

fn inputs_json(s: &RationalMatrix, t: &RationalMatrix, c: &RationalMatrix, u0: &[Q], v0: &[Q]) -> serde_json::Value {
    serde_json::json!({ "S": s, "T": t, "C": c, "u0": qvec_to_json(u0), "v0": qvec_to_json(v0) })
}

pub fn certify_linear(
    s: &RationalMatrix,
    t: &RationalMatrix,
    c: &RationalMatrix,
    mode: LinearMode,
    u0: Option<QVec>,
    v0: Option<QVec>,
) -> Result<Certificate> {
    check_shapes(s, t, c)?;
    let (n, m) = (s.rows(), t.rows());
    check_vec(&u0, n, "u0")?;
    check_vec(&v0, n, "v0")?;
    let id_n = RationalMatrix::identity(n);
    let id_m = RationalMatrix::identity(m);
    let zero = vec![Q::zero(); n];
    match mode {
        LinearMode::I => {
            let tcs = t.mul(c)?.mul(s)?;
            let d = c.sub(&tcs)?;
            let s_poly = s.mul(s)?.sub(s)?.add(&id_n)?;
            let t_poly = t.mul(t)?.sub(t)?.add(&id_m)?;
            let (u0, v0) = match (u0, v0) {
                (None, None) => (seed_from_columns(&d), zero.clone()),
                (u, v) => (u.unwrap_or_else(|| zero.clone()), v.unwrap_or_else(|| zero.clone())),
            };
            let u1 = v0.clone();
            let v1 = LinearQuandleOps::op(s, &u0, &v0)?;
            let w = FormalChain::new(m, 2)
                .with_term(id_m.clone(), vec![u0.clone(), v0.clone()])?
                .with_term(t.clone(), vec![u1, v1])?;
            let boundary = boundary2_twisted(&w, s, t)?;
            let value = pairing(c, &w)?;
            let expected = d.mul_vec(&vec_sub(&u0, &v0))?;
            let ids = vec![
                identity("S^2 - S + I = 0", s_poly.is_zero()),
                identity("T^2 - T + I = 0", t_poly.is_zero()),
                observation("C - TCS != 0", !d.is_zero()),
                identity("pairing equals (C - TCS)(u0 - v0)", value == expected),
            ];
            let mut inputs = inputs_json(s, t, c, &u0, &v0);
            inputs["mode"] = "i".into();
            Ok(Certificate::assemble(inputs, ids, w.to_json(), boundary.to_json(), boundary.is_zero(), value))
        }
        LinearMode::Ii => {
            if v0.as_ref().is_some_and(|v| !vec_is_zero(v)) {
                return Err(Error::InvalidArgument("mode ii uses v0 = 0".into()));
            }
            let u0 = match u0 {
                Some(u) => u,
                None => {
                    let kernel = s.add(&id_n)?.kernel();
                    kernel
                        .iter()
                        .find(|u| !vec_is_zero(&c.mul_vec(u).unwrap_or_default()))
                        .or(kernel.first())
                        .cloned()
                        .unwrap_or_else(|| zero.clone())
                }
            };
            let w = FormalChain::new(m, 2)
                .with_term(id_m.clone(), vec![u0.clone(), zero.clone()])?
                .with_term(t.clone(), vec![vec_neg(&u0), zero.clone()])?;
            let boundary = boundary2_twisted(&w, s, t)?;
            let value = pairing(c, &w)?;
            let expected = scalar_vec(&c.mul_vec(&u0)?, 2);
            let ids = vec![
                identity("T = -I", *t == id_m.neg()),
                identity("u0 != 0", !vec_is_zero(&u0)),
                identity("S u0 = -u0", s.mul_vec(&u0)? == vec_neg(&u0)),
                identity("pairing equals C(2 u0)", value == expected),
            ];
            let mut inputs = inputs_json(s, t, c, &u0, &zero);
            inputs["mode"] = "ii".into();
            Ok(Certificate::assemble(inputs, ids, w.to_json(), boundary.to_json(), boundary.is_zero(), value))
        }
    }
}

struct LinearQuandleOps;

impl LinearQuandleOps {
    /// `S x + (I - S) y`
    fn op(s: &RationalMatrix, x: &[Q], y: &[Q]) -> Result<QVec> {
        let sx = s.mul_vec(x)?;
        let sy = s.mul_vec(y)?;
        Ok(sx.iter().zip(y).zip(&sy).map(|((a, b), c)| a + b - c).collect())
    }
}

/// Matrix `K` with pairing `K (u0 - v0)` for the degree-`k` family:
/// `K = -sum_{l=0}^{k} (-T)^l C sum_{j=1}^{k-l+1} (-S)^j`.
///
/// The overall minus sign is forced by `k = 1`, where the chain is the
/// mode-i chain and the pairing is `(C - TCS)(u0 - v0)`.
pub fn appendix_pairing_matrix(s: &RationalMatrix, t: &RationalMatrix, c: &RationalMatrix, k: u32) -> Result<RationalMatrix> {
    let minus_t = t.neg();
    let mut acc = RationalMatrix::zeros(c.rows(), c.cols());
    for l in 0..=k {
        let term = minus_t.pow(l as i64)?.mul(c)?.mul(&alt_sum(s, 1, k - l + 1)?)?;
        acc = acc.add(&term)?;
    }
    Ok(acc.neg())
}

/// The points `u_0..u_k` and `v_0..v_k` of the degree-`k` cycle
/// `w = sum_i T^i <u_i, v_i>`, from the closed forms by parity of `k`.
pub fn appendix_points(s: &RationalMatrix, k: u32, u0: &[Q], v0: &[Q]) -> Result<(Vec<QVec>, Vec<QVec>)> {
    let n = s.rows();
    let id = RationalMatrix::identity(n);
    let v1 = LinearQuandleOps::op(s, u0, v0)?;
    let vs: Vec<QVec> = (0..=k).map(|i| if i % 2 == 0 { v0.to_vec() } else { v1.clone() }).collect();
    let combo = |a: &RationalMatrix, b: &RationalMatrix| -> Result<QVec> {
        let x = a.mul_vec(u0)?;
        let y = b.mul_vec(v0)?;
        Ok(x.iter().zip(&y).map(|(p, r)| p + r).collect())
    };
    // "a" form: P(2, e) u0 + (I - P(2, e)) v0; "b" form: -P(1, e) u0 + P(0, e) v0
    let form_a = |e: u32| -> Result<QVec> {
        let p = alt_sum(s, 2, e)?;
        combo(&p, &id.sub(&p)?)
    };
    let form_b = |e: u32| -> Result<QVec> { combo(&alt_sum(s, 1, e)?.neg(), &alt_sum(s, 0, e)?) };
    let mut us: Vec<Option<QVec>> = vec![None; k as usize + 1];
    let mut i = 0u32;
    while 2 * i <= k {
        let even_idx = (k - 2 * i) as usize;
        us[even_idx] = Some(if k % 2 == 1 { form_a(2 * i + 1)? } else { form_b(2 * i + 1)? });
        if 2 * i < k {
            let odd_idx = (k - 2 * i - 1) as usize;
            us[odd_idx] = Some(if k % 2 == 1 { form_b(2 * i + 2)? } else { form_a(2 * i + 2)? });
        }
        i += 1;
    }
    Ok((us.into_iter().map(|u| u.expect("every index is covered")).collect(), vs))
}

pub fn certify_appendix(
    s: &RationalMatrix,
    t: &RationalMatrix,
    c: &RationalMatrix,
    k: u32,
    u0: Option<QVec>,
    v0: Option<QVec>,
) -> Result<Certificate> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    check_shapes(s, t, c)?;
    let (n, m) = (s.rows(), t.rows());
    check_vec(&u0, n, "u0")?;
    check_vec(&v0, n, "v0")?;
    let zero = vec![Q::zero(); n];
    let closed = appendix_pairing_matrix(s, t, c, k)?;
    let (u0, v0) = match (u0, v0) {
        (None, None) => (seed_from_columns(&closed), zero.clone()),
        (u, v) => (u.unwrap_or_else(|| zero.clone()), v.unwrap_or_else(|| zero.clone())),
    };
    let (us, vs) = appendix_points(s, k, &u0, &v0)?;

    let mut ids = vec![
        identity(format!("sum_{{i=0}}^{} (-S)^i = 0", k + 1), alt_sum(s, 0, k + 1)?.is_zero()),
        identity(format!("sum_{{i=0}}^{} (-T)^i = 0", k + 1), alt_sum(t, 0, k + 1)?.is_zero()),
        identity("u_0 matches the seed", us[0] == u0),
        identity("u_k = v_(k-1)", us[k as usize] == vs[k as usize - 1]),
    ];
    let recurrence = (1..=k as usize)
        .map(|i| Ok(us[i - 1] == LinearQuandleOps::op(s, &us[i], &vs[i])?))
        .collect::<Result<Vec<bool>>>()?;
    ids.push(identity("u_(i-1) = S u_i + (I - S) v_i for i = 1..k", recurrence.iter().all(|&b| b)));

    let mut w = FormalChain::new(m, 2);
    let mut ti = RationalMatrix::identity(m);
    for i in 0..=k as usize {
        w.push(ti.clone(), vec![us[i].clone(), vs[i].clone()])?;
        ti = ti.mul(t)?;
    }
    let boundary = boundary2_twisted(&w, s, t)?;
    let value = pairing(c, &w)?;
    let expected = closed.mul_vec(&vec_sub(&u0, &v0))?;
    ids.push(identity("termwise pairing equals the closed form", value == expected));

    let mut inputs = inputs_json(s, t, c, &u0, &v0);
    inputs["k"] = k.into();
    inputs["closed_form"] = serde_json::to_value(&closed)?;
    Ok(Certificate::assemble(inputs, ids, w.to_json(), boundary.to_json(), boundary.is_zero(), value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::qvec;
    use crate::certificates::Verdict;

    fn m(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_ints(rows).unwrap()
    }

    #[test]
    fn mode_i_rejects_bad_spectrum() {
        let s = m(&[vec![2]]);
        let t = m(&[vec![0, -1], vec![1, 1]]);
        let c = m(&[vec![1], vec![0]]);
        let cert = certify_linear(&s, &t, &c, LinearMode::I, None, None).unwrap();
        assert_eq!(cert.verdict, Verdict::Rejected);
        assert!(cert.failing_identities().contains(&"S^2 - S + I = 0"));
    }

    #[test]
    fn mode_ii_small() {
        let s = m(&[vec![-1, 0], vec![0, 2]]);
        let t = m(&[vec![-1]]);
        let c = m(&[vec![1, 0]]);
        let cert = certify_linear(&s, &t, &c, LinearMode::Ii, Some(qvec(&[1, 0])), None).unwrap();
        assert_eq!(cert.verdict, Verdict::NonTrivial);
        assert_eq!(cert.pairing, qvec(&[2]));
        let found = certify_linear(&s, &t, &c, LinearMode::Ii, None, None).unwrap();
        assert_eq!(found.verdict, Verdict::NonTrivial);
    }

    #[test]
    fn appendix_k1_is_mode_i() {
        let t = m(&[vec![0, -1], vec![1, 1]]);
        let s = t.direct_sum(&t);
        let c = RationalMatrix::identity(2).hstack(&RationalMatrix::identity(2)).unwrap();
        let u0 = qvec(&[1, 0, 0, 2]);
        let v0 = qvec(&[0, 1, -1, 0]);
        let a = certify_appendix(&s, &t, &c, 1, Some(u0.clone()), Some(v0.clone())).unwrap();
        let l = certify_linear(&s, &t, &c, LinearMode::I, Some(u0), Some(v0)).unwrap();
        assert_eq!(a.pairing, l.pairing);
        assert_eq!(a.verdict, Verdict::NonTrivial);
        assert_eq!(a.chain, l.chain);
    }

    #[test]
    fn zero_coefficient_is_inconclusive() {
        let s = m(&[vec![0, -1], vec![1, 0]]);
        let c = RationalMatrix::zeros(2, 2);
        let cert = certify_appendix(&s, &s, &c, 2, None, None).unwrap();
        assert_eq!(cert.verdict, Verdict::Inconclusive);
    }
}
