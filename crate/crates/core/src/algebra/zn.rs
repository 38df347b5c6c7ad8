//! Dense matrices over `Z/M` and their diagonalization.
//!
//! Every lattice that shows up in cohomology over a finite coefficient
//! group contains `M * Z^N` for `M` the exponent of the group, so all
//! elimination can be carried out with residues in `[0, M)`. Entries never
//! grow, which is what makes the degree-3 computations tractable.

use num_integer::Integer;

/// `a * b mod m`
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

#[inline]
pub fn neg_mod(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

/// Reduces a signed integer into `[0, m)`.
#[inline]
pub fn reduce(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

/// `(g, s, t)` with `s a + t b = g = gcd(a, b)`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd(a as i128, m as i128);
    (g == 1).then(|| reduce(s, m))
}

/// Some `q` with `q * p = e (mod m)`, if one exists.
pub fn divide_mod(e: u64, p: u64, m: u64) -> Option<u64> {
    let g = p.gcd(&m);
    if !e.is_multiple_of(g) {
        return None;
    }
    let m1 = m / g;
    if m1 == 1 {
        return Some(0);
    }
    let inv = inv_mod((p / g) % m1, m1)?;
    Some(mul_mod((e / g) % m1, inv, m1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZnMatrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    data: Vec<u64>,
}

impl ZnMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        assert!(modulus >= 1);
        ZnMatrix { rows, cols, modulus, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.set(i, i, 1 % modulus);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, modulus: u64, mut f: impl FnMut(usize, usize) -> i128) -> Self {
        let mut m = Self::zeros(rows, cols, modulus);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = reduce(f(i, j), modulus);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.modulus;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: u64) {
        let m = self.modulus;
        let e = &mut self.data[i * self.cols + j];
        *e = add_mod(*e, v % m, m);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &ZnMatrix) -> ZnMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        assert_eq!(self.modulus, other.modulus, "matrix product modulus");
        let m = self.modulus;
        let mut out = ZnMatrix::zeros(self.rows, other.cols, m);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let base = i * other.cols;
                for (j, &b) in orow.iter().enumerate() {
                    if b != 0 {
                        out.data[base + j] = add_mod(out.data[base + j], mul_mod(a, b, m), m);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let m = self.modulus;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| add_mod(acc, mul_mod(a, b, m), m))
            })
            .collect()
    }

    /// Same residues read modulo a multiple `new_modulus` of the current one
    /// is not well defined; this only allows shrinking to a divisor.
    pub fn reduce_to(&self, new_modulus: u64) -> ZnMatrix {
        assert_eq!(self.modulus % new_modulus, 0);
        ZnMatrix {
            rows: self.rows,
            cols: self.cols,
            modulus: new_modulus,
            data: self.data.iter().map(|&x| x % new_modulus).collect(),
        }
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// row_i -= q * row_j, touching columns `from..`.
    fn sub_row_multiple(&mut self, i: usize, j: usize, q: u64, from: usize) {
        if q == 0 {
            return;
        }
        let m = self.modulus;
        let c = self.cols;
        for k in from..c {
            let b = self.data[j * c + k];
            if b != 0 {
                let a = self.data[i * c + k];
                self.data[i * c + k] = sub_mod(a, mul_mod(q, b, m), m);
            }
        }
    }

    /// col_i -= q * col_j
    fn sub_col_multiple(&mut self, i: usize, j: usize, q: u64) {
        if q == 0 {
            return;
        }
        let m = self.modulus;
        let c = self.cols;
        for r in 0..self.rows {
            let b = self.data[r * c + j];
            if b != 0 {
                let a = self.data[r * c + i];
                self.data[r * c + i] = sub_mod(a, mul_mod(q, b, m), m);
            }
        }
    }

    /// (row_i, row_j) <- (s row_i + t row_j, -b' row_i + a' row_j)
    fn combine_rows(&mut self, i: usize, j: usize, k: [u64; 4], from: usize) {
        let m = self.modulus;
        let c = self.cols;
        for col in from..c {
            let x = self.data[i * c + col];
            let y = self.data[j * c + col];
            if x == 0 && y == 0 {
                continue;
            }
            self.data[i * c + col] = add_mod(mul_mod(k[0], x, m), mul_mod(k[1], y, m), m);
            self.data[j * c + col] = add_mod(mul_mod(k[2], x, m), mul_mod(k[3], y, m), m);
        }
    }

    /// (col_i, col_j) <- (s col_i + t col_j, -b' col_i + a' col_j)
    fn combine_cols(&mut self, i: usize, j: usize, k: [u64; 4]) {
        let m = self.modulus;
        let c = self.cols;
        for r in 0..self.rows {
            let x = self.data[r * c + i];
            let y = self.data[r * c + j];
            if x == 0 && y == 0 {
                continue;
            }
            self.data[r * c + i] = add_mod(mul_mod(k[0], x, m), mul_mod(k[1], y, m), m);
            self.data[r * c + j] = add_mod(mul_mod(k[2], x, m), mul_mod(k[3], y, m), m);
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DiagOptions {
    pub track_u: bool,
    pub track_v: bool,
    /// Enforce the divisibility chain on the diagonal.
    pub chain: bool,
}

/// Result of [`diagonalize`]: `u * a * v = diag`, with `u`, `v` invertible
/// over `Z/M`. `rhs` holds `u * b` for each right-hand side `b` supplied.
#[derive(Clone, Debug)]
pub struct Diagonalized {
    pub modulus: u64,
    pub diag: Vec<u64>,
    pub u: Option<ZnMatrix>,
    pub u_inv: Option<ZnMatrix>,
    pub v: Option<ZnMatrix>,
    pub v_inv: Option<ZnMatrix>,
    pub rhs: Vec<Vec<u64>>,
}

impl Diagonalized {
    /// Ideal generated by the `i`-th diagonal entry, as `gcd(d_i, M)`;
    /// positions past the diagonal count as zero.
    pub fn ideal(&self, i: usize) -> u64 {
        let d = self.diag.get(i).copied().unwrap_or(0);
        d.gcd(&self.modulus)
    }
}

struct Tracker<'a> {
    opts: DiagOptions,
    u: Option<ZnMatrix>,
    u_inv: Option<ZnMatrix>,
    v: Option<ZnMatrix>,
    v_inv: Option<ZnMatrix>,
    rhs: &'a mut [Vec<u64>],
    modulus: u64,
}

impl Tracker<'_> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, j);
        }
        for b in self.rhs.iter_mut() {
            b.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(i, j);
        }
    }

    /// row_i -= q row_j  (u <- E u, u_inv <- u_inv E^{-1})
    fn sub_row_multiple(&mut self, i: usize, j: usize, q: u64) {
        let m = self.modulus;
        if let Some(u) = &mut self.u {
            u.sub_row_multiple(i, j, q, 0);
        }
        if let Some(ui) = &mut self.u_inv {
            // col_j += q col_i
            ui.sub_col_multiple(j, i, neg_mod(q, m));
        }
        for b in self.rhs.iter_mut() {
            b[i] = sub_mod(b[i], mul_mod(q, b[j], m), m);
        }
    }

    /// col_i -= q col_j  (v <- v E, v_inv <- E^{-1} v_inv)
    fn sub_col_multiple(&mut self, i: usize, j: usize, q: u64) {
        let m = self.modulus;
        if let Some(v) = &mut self.v {
            v.sub_col_multiple(i, j, q);
        }
        if let Some(vi) = &mut self.v_inv {
            // row_j += q row_i
            vi.sub_row_multiple(j, i, neg_mod(q, m), 0);
        }
    }

    /// Rows (i, j) replaced by the unimodular combination `k`, whose inverse
    /// is `kinv`.
    fn combine_rows(&mut self, i: usize, j: usize, k: [u64; 4], kinv: [u64; 4]) {
        let m = self.modulus;
        if let Some(u) = &mut self.u {
            u.combine_rows(i, j, k, 0);
        }
        if let Some(ui) = &mut self.u_inv {
            // u_inv <- u_inv K^{-1}: columns combine with the transpose of kinv
            ui.combine_cols(i, j, [kinv[0], kinv[2], kinv[1], kinv[3]]);
        }
        for b in self.rhs.iter_mut() {
            let (x, y) = (b[i], b[j]);
            b[i] = add_mod(mul_mod(k[0], x, m), mul_mod(k[1], y, m), m);
            b[j] = add_mod(mul_mod(k[2], x, m), mul_mod(k[3], y, m), m);
        }
    }

    fn combine_cols(&mut self, i: usize, j: usize, k: [u64; 4], kinv: [u64; 4]) {
        if let Some(v) = &mut self.v {
            v.combine_cols(i, j, k);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.combine_rows(i, j, [kinv[0], kinv[2], kinv[1], kinv[3]], 0);
        }
    }
}

/// Unimodular 2x2 combination sending `(a, b)` to `(gcd, 0)`, together with
/// its inverse. Entries are given row-major as residues mod `m`.
fn bezout(a: u64, b: u64, m: u64) -> ([u64; 4], [u64; 4]) {
    let (g, s, t) = ext_gcd(a as i128, b as i128);
    let (a1, b1) = (a as i128 / g, b as i128 / g);
    let k = [reduce(s, m), reduce(t, m), reduce(-b1, m), reduce(a1, m)];
    // det = s a1 + t b1 = 1
    let kinv = [reduce(a1, m), reduce(-t, m), reduce(b1, m), reduce(s, m)];
    (k, kinv)
}

/// Diagonalizes `a` over `Z/M` by unimodular row and column operations.
///
/// Pivots are chosen to generate the largest ideal available in the
/// remaining block (smallest `gcd(entry, M)`, first in row-major order).
pub fn diagonalize(mut a: ZnMatrix, opts: DiagOptions, mut rhs: Vec<Vec<u64>>) -> Diagonalized {
    let m = a.modulus;
    let (r, c) = (a.rows, a.cols);
    for b in &rhs {
        assert_eq!(b.len(), r, "right-hand side length");
    }
    let mut tr = Tracker {
        opts,
        u: opts.track_u.then(|| ZnMatrix::identity(r, m)),
        u_inv: opts.track_u.then(|| ZnMatrix::identity(r, m)),
        v: opts.track_v.then(|| ZnMatrix::identity(c, m)),
        v_inv: opts.track_v.then(|| ZnMatrix::identity(c, m)),
        rhs: &mut rhs,
        modulus: m,
    };
    let mut diag = Vec::with_capacity(r.min(c));
    'outer: for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = pick_pivot(&a, t) else {
                diag.resize(r.min(c), 0);
                break 'outer;
            };
            a.swap_rows(t, pi);
            tr.swap_rows(t, pi);
            a.swap_cols(t, pj);
            tr.swap_cols(t, pj);

            // column t
            for i in t + 1..r {
                let e = a.get(i, t);
                if e == 0 {
                    continue;
                }
                let p = a.get(t, t);
                match divide_mod(e, p, m) {
                    Some(q) => {
                        a.sub_row_multiple(i, t, q, t);
                        tr.sub_row_multiple(i, t, q);
                    }
                    None => {
                        let (k, kinv) = bezout(p, e, m);
                        a.combine_rows(t, i, k, t);
                        tr.combine_rows(t, i, k, kinv);
                    }
                }
            }
            // row t; column t stays clean while every step divides
            let mut col_clean = true;
            for j in t + 1..c {
                let e = a.get(t, j);
                if e == 0 {
                    continue;
                }
                let p = a.get(t, t);
                match divide_mod(e, p, m) {
                    Some(q) => {
                        if col_clean {
                            a.set(t, j, 0);
                        } else {
                            a.sub_col_multiple(j, t, q);
                        }
                        tr.sub_col_multiple(j, t, q);
                    }
                    None => {
                        let (k, kinv) = bezout(p, e, m);
                        a.combine_cols(t, j, k);
                        tr.combine_cols(t, j, k, kinv);
                        col_clean = false;
                    }
                }
            }
            if !col_clean && (t + 1..r).any(|i| a.get(i, t) != 0) {
                continue;
            }
            if tr.opts.chain {
                let g = a.get(t, t).gcd(&m);
                let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.get(i, j).is_multiple_of(g)));
                if let Some(i) = bad {
                    // row_t += row_i
                    a.sub_row_multiple(t, i, m - 1, t);
                    tr.sub_row_multiple(t, i, m - 1);
                    continue;
                }
            }
            diag.push(a.get(t, t));
            break;
        }
    }
    diag.resize(r.min(c), 0);
    Diagonalized {
        modulus: m,
        diag,
        u: tr.u,
        u_inv: tr.u_inv,
        v: tr.v,
        v_inv: tr.v_inv,
        rhs,
    }
}

fn pick_pivot(a: &ZnMatrix, t: usize) -> Option<(usize, usize)> {
    let m = a.modulus;
    let mut best: Option<(u64, usize, usize)> = None;
    for i in t..a.rows {
        let row = a.row(i);
        for (j, &e) in row.iter().enumerate().skip(t) {
            if e == 0 {
                continue;
            }
            let g = e.gcd(&m);
            if g == 1 {
                return Some((i, j));
            }
            if best.is_none_or(|(bg, _, _)| g < bg) {
                best = Some((g, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}
