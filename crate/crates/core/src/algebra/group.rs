use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use super::intmat::{smith_normal_form, IntMatrix};

/// Finitely generated abelian group `Z^free_rank + Z/d_1 + ... + Z/d_k`
/// with `1 < d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(d: u64) -> Self {
        Self::from_cyclic_orders(&[d])
    }

    /// Canonical form of `Z/o_1 + Z/o_2 + ...`, where an order of 0 means a
    /// copy of `Z`.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let n = orders.len();
        let mut rel = IntMatrix::zeros(n, n);
        for (i, &o) in orders.iter().enumerate() {
            rel[(i, i)] = BigInt::from(o);
        }
        Self::from_relations(n, &rel)
    }

    /// `Z^generators / (column span of relations)`.
    pub fn from_relations(generators: usize, relations: &IntMatrix) -> Self {
        assert_eq!(relations.rows(), generators);
        let snf = smith_normal_form(relations);
        let diag = snf.diagonal();
        let mut torsion = Vec::new();
        let free_rank = generators - diag.iter().filter(|d| !d.is_zero()).count();
        for d in diag {
            if d.is_zero() || d.is_one() {
                continue;
            }
            torsion.push(d.to_u64().expect("invariant factor fits in u64"));
        }
        AbelianGroup { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of a finite group.
    pub fn order(&self) -> Option<u128> {
        self.is_finite().then(|| self.torsion.iter().map(|&d| d as u128).product())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(AbelianGroup::from_cyclic_orders(&[2, 3]).torsion, vec![6]);
        assert_eq!(AbelianGroup::from_cyclic_orders(&[4, 2, 1]).torsion, vec![2, 4]);
        let g = AbelianGroup::from_cyclic_orders(&[0, 3, 3]);
        assert_eq!((g.free_rank, g.torsion.clone()), (1, vec![3, 3]));
        assert_eq!(g.to_string(), "Z + Z/3 + Z/3");
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(serde_json::to_string(&AbelianGroup::cyclic(3)).unwrap(), r#"{"free_rank":0,"torsion":[3]}"#);
    }
}
