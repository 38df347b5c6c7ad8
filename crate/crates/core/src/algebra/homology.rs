//! Homology of complexes of finite abelian groups `Z/d_1 + ... + Z/d_N`.
//!
//! A cochain group is presented as `Z^N / D Z^N` with `D = diag(d_i)`. With
//! `M` the exponent of all groups involved, every lattice in sight contains
//! `M Z^N`, so kernels, images and quotients are computed by diagonalizing
//! over `Z/M`. Rows of a map into `Z/t_r` are scaled by `M / t_r` first, so
//! that "zero modulo `t_r`" becomes "zero modulo `M`".

use num_integer::Integer;

use super::group::AbelianGroup;
use super::zn::{diagonalize, divide_mod, mul_mod, DiagOptions, ZnMatrix};
use crate::error::{Error, Result};

pub fn lcm_all<'a>(orders: impl IntoIterator<Item = &'a u64>) -> u64 {
    orders.into_iter().fold(1u64, |acc, d| acc.lcm(d))
}

/// A homomorphism between sums of cyclic groups. Entry `(r, c)` is only
/// meaningful modulo `target[r]`; the matrix is stored modulo the exponent
/// of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Vec<u64>,
    target: Vec<u64>,
    matrix: ZnMatrix,
}

impl GroupHom {
    /// `matrix` must have a modulus divisible by every target order.
    pub fn new(source: Vec<u64>, target: Vec<u64>, matrix: ZnMatrix) -> Result<Self> {
        if matrix.rows() != target.len() || matrix.cols() != source.len() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix for a map from rank {} to rank {}",
                matrix.rows(),
                matrix.cols(),
                source.len(),
                target.len()
            )));
        }
        let m = lcm_all(&target);
        if !matrix.modulus().is_multiple_of(m) {
            return Err(Error::ShapeMismatch("matrix modulus incompatible with the target".into()));
        }
        let matrix = matrix.reduce_to(m);
        for r in 0..target.len() {
            for c in 0..source.len() {
                let e = matrix.get(r, c) as u128;
                if !(e * source[c] as u128).is_multiple_of(target[r] as u128) {
                    return Err(Error::ShapeMismatch(format!(
                        "entry ({r},{c}) does not respect orders {} -> {}",
                        source[c], target[r]
                    )));
                }
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub fn from_rows(source: Vec<u64>, target: Vec<u64>, rows: &[Vec<i64>]) -> Result<Self> {
        let m = lcm_all(&target);
        if rows.len() != target.len() || rows.iter().any(|r| r.len() != source.len()) {
            return Err(Error::ShapeMismatch("matrix shape does not match the groups".into()));
        }
        let z = ZnMatrix::from_fn(target.len(), source.len(), m, |i, j| rows[i][j] as i128);
        Self::new(source, target, z)
    }

    pub fn zero(source: Vec<u64>, target: Vec<u64>) -> Self {
        let m = lcm_all(&target);
        let matrix = ZnMatrix::zeros(target.len(), source.len(), m);
        GroupHom { source, target, matrix }
    }

    pub fn source(&self) -> &[u64] {
        &self.source
    }

    pub fn target(&self) -> &[u64] {
        &self.target
    }

    pub fn matrix(&self) -> &ZnMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let y = self.matrix.mul_vec(&lift(x, self.matrix.modulus()));
        y.iter().zip(&self.target).map(|(v, t)| v % t).collect()
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.target != self.source {
            return Err(Error::ShapeMismatch("composition of incompatible maps".into()));
        }
        let m = self.matrix.modulus().lcm(&inner.matrix.modulus());
        let a = widen(&self.matrix, m);
        let b = widen(&inner.matrix, m);
        GroupHom::new(inner.source.clone(), self.target.clone(), a.mul(&b))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.target.len())
            .all(|r| (0..self.source.len()).all(|c| self.matrix.get(r, c).is_multiple_of(self.target[r])))
    }

    /// Rows scaled into "zero iff zero modulo `m`" form.
    fn scaled(&self, m: u64) -> ZnMatrix {
        let mut g = ZnMatrix::zeros(self.target.len(), self.source.len(), m);
        for r in 0..self.target.len() {
            let scale = m / self.target[r];
            for c in 0..self.source.len() {
                let e = self.matrix.get(r, c) % self.target[r];
                if e != 0 {
                    g.set(r, c, mul_mod(e, scale, m));
                }
            }
        }
        g
    }
}

/// Reinterprets residues in a larger modulus (`m` a multiple of the current
/// modulus). Only valid where entries matter modulo a divisor of the old
/// modulus, which holds for [`GroupHom`] matrices.
fn widen(a: &ZnMatrix, m: u64) -> ZnMatrix {
    ZnMatrix::from_fn(a.rows(), a.cols(), m, |i, j| a.get(i, j) as i128)
}

fn lift(x: &[u64], m: u64) -> Vec<u64> {
    x.iter().map(|v| v % m).collect()
}

/// `ker(d_out) / im(d_in)`, with enough bookkeeping to name classes and
/// produce representatives.
#[derive(Clone, Debug)]
pub struct Homology {
    pub group: AbelianGroup,
    orders: Vec<u64>,
    modulus: u64,
    v_inv: ZnMatrix,
    // ideal of each diagonal position of d_out, i.e. the kernel in
    // y = V^{-1} x coordinates is y_i in (M / g_i) Z
    ideals: Vec<u64>,
    coords: Vec<usize>,
    u: ZnMatrix,
    factors: Vec<u64>,
    generators: Vec<Vec<u64>>,
}

impl Homology {
    /// Representative cycles, one per cyclic factor of `group`, in the same
    /// order as `group.torsion`.
    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    fn kernel_coords(&self, z: &[u64]) -> Option<Vec<u64>> {
        let m = self.modulus;
        let y = self.v_inv.mul_vec(&lift(z, m));
        for (i, &yi) in y.iter().enumerate() {
            if yi % (m / self.ideals[i]) != 0 {
                return None;
            }
        }
        Some(self.coords.iter().map(|&i| y[i] / (m / self.ideals[i])).collect())
    }

    pub fn is_cycle(&self, z: &[u64]) -> bool {
        z.len() == self.orders.len() && self.kernel_coords(z).is_some()
    }

    /// Coordinates of the class of `z` with respect to [`Self::generators`].
    pub fn class_of(&self, z: &[u64]) -> Result<Vec<u64>> {
        if z.len() != self.orders.len() {
            return Err(Error::ShapeMismatch("cochain has the wrong length".into()));
        }
        let c = self
            .kernel_coords(z)
            .ok_or_else(|| Error::NotACocycle("element is not in the kernel".into()))?;
        let w = self.u.mul_vec(&c);
        Ok(self
            .factors
            .iter()
            .enumerate()
            .filter(|(_, &h)| h > 1)
            .map(|(j, &h)| w[j] % h)
            .collect())
    }

    pub fn is_boundary(&self, z: &[u64]) -> Result<bool> {
        Ok(self.class_of(z)?.iter().all(|&x| x == 0))
    }

    /// Cycle representing the given class coordinates.
    pub fn representative(&self, class: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        let mut acc = vec![0u64; self.orders.len()];
        for (g, &k) in self.generators.iter().zip(class) {
            for (a, &x) in acc.iter_mut().zip(g) {
                *a = (*a + mul_mod(k % m, x, m)) % m;
            }
        }
        acc.iter().zip(&self.orders).map(|(a, o)| a % o).collect()
    }
}

/// Homology at the middle of `C_prev --d_in--> C --d_out--> C_next`.
pub fn homology_of_pair(d_out: &GroupHom, d_in: &GroupHom) -> Result<Homology> {
    if d_in.target != d_out.source {
        return Err(Error::ShapeMismatch("d_in and d_out do not share the middle group".into()));
    }
    let orders = d_out.source.clone();
    let n = orders.len();
    let m = lcm_all(orders.iter().chain(&d_out.target).chain(&d_in.source));

    let g = d_out.scaled(m);
    let dg = diagonalize(g, DiagOptions { track_u: false, track_v: true, chain: false }, vec![]);
    let ideals: Vec<u64> = (0..n).map(|i| dg.ideal(i)).collect();
    let v = dg.v.expect("tracked");
    let v_inv = dg.v_inv.expect("tracked");
    let coords: Vec<usize> = (0..n).filter(|&i| ideals[i] > 1).collect();
    let r = coords.len();

    // boundaries: columns of d_in plus the order relations d_c e_c
    let mut boundary_gens: Vec<Vec<u64>> = Vec::new();
    let din = widen(&d_in.matrix, m.max(1));
    for c in 0..d_in.source.len() {
        let col: Vec<u64> = din.column(c).iter().zip(&orders).map(|(x, o)| x % o).collect();
        boundary_gens.push(col);
    }
    for (c, &o) in orders.iter().enumerate() {
        if o % m != 0 {
            let mut e = vec![0; n];
            e[c] = o;
            boundary_gens.push(e);
        }
    }

    let mut rel = ZnMatrix::zeros(r, r + boundary_gens.len(), m);
    for (k, &i) in coords.iter().enumerate() {
        rel.set(k, k, ideals[i]);
    }
    for (col, b) in boundary_gens.iter().enumerate() {
        let y = v_inv.mul_vec(b);
        for (i, &yi) in y.iter().enumerate() {
            if yi % (m / ideals[i]) != 0 {
                return Err(Error::NonZeroComposition);
            }
        }
        for (k, &i) in coords.iter().enumerate() {
            rel.set(k, r + col, (y[i] / (m / ideals[i])) % ideals[i]);
        }
    }

    let dr = diagonalize(rel, DiagOptions { track_u: true, track_v: false, chain: true }, vec![]);
    let factors: Vec<u64> = (0..r).map(|j| dr.ideal(j)).collect();
    let u = dr.u.expect("tracked");
    let u_inv = dr.u_inv.expect("tracked");

    let mut generators = Vec::new();
    for (j, &h) in factors.iter().enumerate() {
        if h <= 1 {
            continue;
        }
        let mut y = vec![0u64; n];
        for (k, &i) in coords.iter().enumerate() {
            y[i] = mul_mod(u_inv.get(k, j), m / ideals[i], m);
        }
        let x = v.mul_vec(&y);
        generators.push(x.iter().zip(&orders).map(|(a, o)| a % o).collect());
    }
    let group = AbelianGroup::from_cyclic_orders(&factors.iter().copied().filter(|&h| h > 1).collect::<Vec<_>>());
    debug_assert_eq!(group.torsion.len(), generators.len());
    Ok(Homology { group, orders, modulus: m, v_inv, ideals, coords, u, factors, generators })
}

/// Some `x` with `hom(x) = v`, or `None` when `v` is not in the image.
pub fn solve_membership(hom: &GroupHom, v: &[u64]) -> Result<Option<Vec<u64>>> {
    if v.len() != hom.target.len() {
        return Err(Error::ShapeMismatch("right-hand side has the wrong length".into()));
    }
    let m = lcm_all(hom.source.iter().chain(&hom.target));
    let g = hom.scaled(m);
    let b: Vec<u64> = v
        .iter()
        .zip(&hom.target)
        .map(|(&x, &t)| mul_mod(x % t, m / t, m))
        .collect();
    let d = diagonalize(g, DiagOptions { track_u: false, track_v: true, chain: false }, vec![b]);
    let rhs = &d.rhs[0];
    let ncols = hom.source.len();
    let mut y = vec![0u64; ncols];
    for (i, &bi) in rhs.iter().enumerate() {
        if i < ncols && i < d.diag.len() {
            match divide_mod(bi, d.diag[i], m) {
                Some(q) => y[i] = q,
                None => return Ok(None),
            }
        } else if bi != 0 {
            return Ok(None);
        }
    }
    let x = d.v.expect("tracked").mul_vec(&y);
    let x: Vec<u64> = x.iter().zip(&hom.source).map(|(a, s)| a % s).collect();
    debug_assert_eq!(hom.apply(&x), v.iter().zip(&hom.target).map(|(a, t)| a % t).collect::<Vec<_>>());
    Ok(Some(x))
}
