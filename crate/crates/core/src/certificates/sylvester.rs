//! Solutions of `F S = T F`: the linear part of continuous quandle
//! homomorphisms `(Q^n, S) -> (Q^m, T)`.

use crate::algebra::rational::{RationalMatrix, Q};
use crate::error::{Error, Result};

/// Dimension and a basis (as `m x n` matrices) of `{F : F S = T F}`.
pub fn sylvester_h1(s: &RationalMatrix, t: &RationalMatrix) -> Result<(usize, Vec<RationalMatrix>)> {
    if !s.is_square() || !t.is_square() {
        return Err(Error::ShapeMismatch("S and T must be square".into()));
    }
    let (n, m) = (s.rows(), t.rows());
    // column (i * n + j) is the image of the elementary matrix E_ij
    let mut columns = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            let mut e = RationalMatrix::zeros(m, n);
            e.set(i, j, Q::from_integer(1.into()));
            let image = e.mul(s)?.sub(&t.mul(&e)?)?;
            columns.push(image);
        }
    }
    let map = RationalMatrix::from_fn(m * n, m * n, |r, c| columns[c].get(r / n, r % n).clone());
    let basis: Vec<RationalMatrix> = map
        .kernel()
        .into_iter()
        .map(|v| RationalMatrix::from_fn(m, n, |i, j| v[i * n + j].clone()))
        .collect();
    Ok((basis.len(), basis))
}
