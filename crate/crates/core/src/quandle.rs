//! Finite quandles stored as operation tables.
//!
//! Elements are `0..q`; entry `(x, y)` of the table is `x * y`. Composite
//! quandles (products, `G^m`) flatten their elements lexicographically with
//! the first coordinate most significant.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A finite quandle whose operation table has passed [`verify_table`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "QuandleJson", into = "QuandleJson")]
pub struct QuandleTable {
    size: usize,
    table: Vec<usize>,
    // inv[y * q + z] = x with x * y = z
    inv: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct QuandleJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    size: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<QuandleJson> for QuandleTable {
    type Error = Error;
    fn try_from(j: QuandleJson) -> Result<Self> {
        if j.table.len() != j.size {
            return Err(Error::InvalidQuandle(format!(
                "size is {} but table has {} rows",
                j.size,
                j.table.len()
            )));
        }
        QuandleTable::new(j.table)
    }
}

impl From<QuandleTable> for QuandleJson {
    fn from(q: QuandleTable) -> Self {
        QuandleJson { kind: None, size: q.size, table: q.rows() }
    }
}

impl QuandleTable {
    /// Validates `rows` against the quandle axioms.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let report = verify_table(&rows);
        if !report.is_empty() {
            return Err(Error::InvalidQuandle(report.to_string()));
        }
        Ok(Self::from_rows_unchecked(rows))
    }

    fn from_rows_unchecked(rows: Vec<Vec<usize>>) -> Self {
        let q = rows.len();
        Self::from_fn_unchecked(q, |x, y| rows[x][y])
    }

    fn from_fn_unchecked(q: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = vec![0; q * q];
        let mut inv = vec![0; q * q];
        for x in 0..q {
            for y in 0..q {
                let z = op(x, y);
                table[x * q + y] = z;
                inv[y * q + z] = x;
            }
        }
        QuandleTable { size: q, table, inv }
    }

    /// Builds a table from an operation closure and validates it.
    pub fn from_fn(q: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows = (0..q).map(|x| (0..q).map(|y| op(x, y)).collect()).collect();
        Self::new(rows)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    /// The unique `x` with `x * y = z`.
    #[inline]
    pub fn inv_op(&self, z: usize, y: usize) -> usize {
        self.inv[y * self.size + z]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size.max(1)).take(self.size).map(|r| r.to_vec()).collect()
    }

    /// Left-normed product `((x1 * x2) * x3) * ... * xk`; a single element
    /// brackets to itself.
    pub fn bracket(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        let mut it = xs.into_iter();
        let first = it.next().expect("bracket of an empty sequence");
        it.fold(first, |acc, y| self.op(acc, y))
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).all(|y| self.op(x, y) == x))
    }

    pub fn is_indecomposable(&self) -> bool {
        inner_orbits(self).blocks.len() <= 1
    }
}

/// One failed axiom instance, with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    NotSquare { row: usize, len: usize },
    OutOfRange { x: usize, y: usize, value: usize },
    Idempotency { x: usize, value: usize },
    /// Column `y` sends both `x1` and `x2` to `z`.
    RightInvertibility { y: usize, x1: usize, x2: usize, z: usize },
    SelfDistributivity { x: usize, y: usize, z: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSquare { row, len } => write!(f, "row {row} has length {len}"),
            Violation::OutOfRange { x, y, value } => write!(f, "{x}*{y} = {value} is out of range"),
            Violation::Idempotency { x, value } => write!(f, "idempotency fails: {x}*{x} = {value}"),
            Violation::RightInvertibility { y, x1, x2, z } => {
                write!(f, "right translation by {y} is not bijective: {x1}*{y} = {x2}*{y} = {z}")
            }
            Violation::SelfDistributivity { x, y, z } => {
                write!(f, "self-distributivity fails at ({x},{y},{z})")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks every quandle axiom on a raw table and reports all failures.
///
/// Shape and range errors short-circuit the remaining checks, since the
/// algebraic axioms are meaningless on a malformed table.
pub fn verify_table(rows: &[Vec<usize>]) -> ValidationReport {
    let q = rows.len();
    let mut violations = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        if row.len() != q {
            violations.push(Violation::NotSquare { row: r, len: row.len() });
        }
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }
    for x in 0..q {
        for y in 0..q {
            if rows[x][y] >= q {
                violations.push(Violation::OutOfRange { x, y, value: rows[x][y] });
            }
        }
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }
    for x in 0..q {
        if rows[x][x] != x {
            violations.push(Violation::Idempotency { x, value: rows[x][x] });
        }
    }
    for y in 0..q {
        let mut seen: Vec<Option<usize>> = vec![None; q];
        for x in 0..q {
            let z = rows[x][y];
            match seen[z] {
                Some(x1) => violations.push(Violation::RightInvertibility { y, x1, x2: x, z }),
                None => seen[z] = Some(x),
            }
        }
    }
    for x in 0..q {
        for y in 0..q {
            let xy = rows[x][y];
            for z in 0..q {
                if rows[xy][z] != rows[rows[x][z]][rows[y][z]] {
                    violations.push(Violation::SelfDistributivity { x, y, z });
                }
            }
        }
    }
    ValidationReport { violations }
}

pub fn verify_quandle(t: &QuandleTable) -> ValidationReport {
    verify_table(&t.rows())
}

/// Dihedral (Takasaki) quandle `R_n`: `x * y = 2y - x mod n`.
pub fn make_dihedral(n: usize) -> QuandleTable {
    assert!(n >= 1, "dihedral quandle needs n >= 1");
    QuandleTable::from_fn_unchecked(n, |x, y| (2 * y + n - x % n) % n)
}

/// Trivial quandle on `q` elements: `x * y = x`.
pub fn make_trivial(q: usize) -> QuandleTable {
    QuandleTable::from_fn_unchecked(q, |x, _| x)
}

/// Alexander quandle on `Z/m`: `x * y = u x + (1 - u) y`.
pub fn make_alexander(m: u64, u: i64) -> Result<QuandleTable> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let mi = m as i64;
    let ur = u.rem_euclid(mi);
    if num_integer::gcd(ur, mi) != 1 {
        return Err(Error::NotAUnit { value: u, modulus: m });
    }
    let vr = (1 - ur).rem_euclid(mi);
    let q = m as usize;
    Ok(QuandleTable::from_fn_unchecked(q, |x, y| {
        ((ur * x as i64 + vr * y as i64) % mi) as usize
    }))
}

/// A finite group given by its multiplication table, identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "QuandleJson", into = "QuandleJson")]
pub struct GroupTable {
    size: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl TryFrom<QuandleJson> for GroupTable {
    type Error = Error;
    fn try_from(j: QuandleJson) -> Result<Self> {
        if let Some(kind) = &j.kind {
            if kind != "group" {
                return Err(Error::InvalidGroup(format!("kind is {kind:?}, expected \"group\"")));
            }
        }
        if j.table.len() != j.size {
            return Err(Error::InvalidGroup("size does not match table".into()));
        }
        GroupTable::new(j.table)
    }
}

impl From<GroupTable> for QuandleJson {
    fn from(g: GroupTable) -> Self {
        let rows = (0..g.size).map(|a| (0..g.size).map(|b| g.mul(a, b)).collect()).collect();
        QuandleJson { kind: Some("group".into()), size: g.size, table: rows }
    }
}

impl GroupTable {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", r.len())));
            }
            if let Some(&v) = r.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidGroup(format!("entry {v} out of range in row {i}")));
            }
        }
        for a in 0..n {
            if rows[0][a] != a || rows[a][0] != a {
                return Err(Error::InvalidGroup(format!("index 0 is not an identity (element {a})")));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| rows[a][b] == 0) {
                Some(b) if rows[b][a] == 0 => inverse[a] = b,
                _ => return Err(Error::InvalidGroup(format!("element {a} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if rows[rows[a][b]][c] != rows[a][rows[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let table = rows.into_iter().flatten().collect();
        Ok(GroupTable { size: n, table, inverse })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn cyclic(n: usize) -> Self {
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable::new(rows).expect("cyclic group table")
    }

    /// Symmetric group on `k` letters; permutations listed lexicographically
    /// so that the identity comes first.
    pub fn symmetric(k: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        permutations(&mut (0..k).collect(), 0, &mut perms);
        perms.sort();
        Self::from_permutations(&perms)
    }

    /// Dihedral group of order `2n` acting on an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        for r in 0..n {
            perms.push((0..n).map(|i| (i + r) % n).collect());
        }
        for r in 0..n {
            perms.push((0..n).map(|i| (r + n - i) % n).collect());
        }
        perms.sort();
        perms.dedup();
        Self::from_permutations(&perms)
    }

    /// Group of permutations closed under composition; the identity must be
    /// the smallest element lexicographically (it is, for sorted input).
    fn from_permutations(perms: &[Vec<usize>]) -> Self {
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed under composition");
        let rows = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        // (a b)(i) = a(b(i))
                        let c: Vec<usize> = b.iter().map(|&i| a[i]).collect();
                        index(&c)
                    })
                    .collect()
            })
            .collect();
        GroupTable::new(rows).expect("permutation group table")
    }

    pub fn direct_product(&self, other: &GroupTable) -> GroupTable {
        let m = other.size;
        let rows = (0..self.size * m)
            .map(|a| {
                (0..self.size * m)
                    .map(|b| self.mul(a / m, b / m) * m + other.mul(a % m, b % m))
                    .collect()
            })
            .collect();
        GroupTable::new(rows).expect("direct product of groups")
    }
}

fn permutations(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permutations(cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// Conjugation quandle `Conj(G)`: `x * y = y^{-1} x y`.
pub fn make_conjugation(group: &GroupTable) -> QuandleTable {
    QuandleTable::from_fn_unchecked(group.size(), |x, y| group.mul(group.mul(group.inv(y), x), y))
}

/// The quandle on `G^m` with
/// `(a_1..a_m) * (b_1..b_m) = (a_1, a_2 + b_1 - a_1, ..., a_m + b_{m-1} - a_{m-1})`.
pub fn make_gm(group: &GroupTable, m: usize) -> Result<QuandleTable> {
    if m == 0 {
        return Err(Error::InvalidArgument("G^m needs m >= 1".into()));
    }
    if !group.is_abelian() {
        return Err(Error::InvalidGroup("G^m needs an abelian group".into()));
    }
    let g = group.size();
    let q = g.checked_pow(m as u32).ok_or_else(|| Error::InvalidArgument("G^m too large".into()))?;
    let decode = |mut x: usize| {
        let mut v = vec![0; m];
        for i in (0..m).rev() {
            v[i] = x % g;
            x /= g;
        }
        v
    };
    Ok(QuandleTable::from_fn_unchecked(q, |x, y| {
        let a = decode(x);
        let b = decode(y);
        let mut c = a.clone();
        for i in 1..m {
            c[i] = group.mul(group.mul(a[i], b[i - 1]), group.inv(a[i - 1]));
        }
        c.iter().fold(0, |acc, &ci| acc * g + ci)
    }))
}

/// Partition into orbits of the inner automorphism group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn block_of(&self, x: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&x)).expect("partition covers every element")
    }
}

pub fn inner_orbits(t: &QuandleTable) -> OrbitPartition {
    let q = t.size();
    let mut parent: Vec<usize> = (0..q).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for x in 0..q {
        for y in 0..q {
            let a = find(&mut parent, x);
            let b = find(&mut parent, t.op(x, y));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut root_block = vec![usize::MAX; q];
    for x in 0..q {
        let r = find(&mut parent, x);
        if root_block[r] == usize::MAX {
            root_block[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[root_block[r]].push(x);
    }
    OrbitPartition { blocks }
}

/// `f(x *_X y) = f(x) *_Y f(y)` for all pairs.
pub fn is_quandle_hom(f: &[usize], x: &QuandleTable, y: &QuandleTable) -> Result<bool> {
    if f.len() != x.size() {
        return Err(Error::ShapeMismatch(format!(
            "map has {} entries but the source has {} elements",
            f.len(),
            x.size()
        )));
    }
    if let Some(&v) = f.iter().find(|&&v| v >= y.size()) {
        return Err(Error::ShapeMismatch(format!("map value {v} outside the target")));
    }
    Ok((0..x.size()).all(|a| (0..x.size()).all(|b| f[x.op(a, b)] == y.op(f[a], f[b]))))
}
