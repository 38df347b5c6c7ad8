//! Towers of finite quandles `X_1 <- X_2 <- ...` with coefficient systems
//! `A_1 -> A_2 -> ...`, the induced maps on cohomology and their colimit.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::coeff::{compose, is_hom, same_map, CoefficientModule, IntRows};
use crate::algebra::group::AbelianGroup;
use crate::algebra::homology::{solve_membership, GroupHom};
use crate::algebra::intmat::IntMatrix;
use crate::cohomology::{cohomology_group, induced_map, Cochain, CochainBasis, CochainMap, Coefficients, CohomologyGroup};
use crate::error::{Error, Result};
use crate::quandle::{is_quandle_hom, make_alexander, make_dihedral, QuandleTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerStage {
    pub quandle: QuandleTable,
    pub coeff: CoefficientModule,
}

/// Stages `(X_n, A_n)`, projections `X_{n+1} -> X_n` and coefficient maps
/// `A_n -> A_{n+1}`.
#[derive(Clone, Debug)]
pub struct TowerSystem {
    stages: Vec<TowerStage>,
    projections: Vec<Vec<usize>>,
    coeff_maps: Vec<IntRows>,
    // preferred cocycles per stage in one degree, used to display the
    // connecting maps in a fixed basis
    reference: Option<(usize, Vec<Vec<Cochain>>)>,
}

#[derive(Deserialize)]
struct TowerJson {
    stages: Vec<TowerStage>,
    projections: Vec<Vec<usize>>,
    coeff_maps: Vec<IntRows>,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl TowerSystem {
    pub fn new(stages: Vec<TowerStage>, projections: Vec<Vec<usize>>, coeff_maps: Vec<IntRows>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::InvalidTower("a tower needs at least one stage".into()));
        }
        let links = stages.len() - 1;
        if projections.len() != links || coeff_maps.len() != links {
            return Err(Error::InvalidTower(format!(
                "{} stages need {links} projections and coefficient maps",
                stages.len()
            )));
        }
        for n in 0..links {
            let (lower, upper) = (&stages[n], &stages[n + 1]);
            let f = &projections[n];
            if !is_quandle_hom(f, &upper.quandle, &lower.quandle)? {
                return Err(Error::InvalidTower(format!("projection {n} is not a quandle homomorphism")));
            }
            if (0..lower.quandle.size()).any(|x| !f.contains(&x)) {
                return Err(Error::InvalidTower(format!("projection {n} is not surjective")));
            }
            let h = &coeff_maps[n];
            let (src, tgt) = (lower.coeff.factors(), upper.coeff.factors());
            let shaped = h.len() == tgt.len() && h.iter().all(|r| r.len() == src.len());
            if !shaped || !is_hom(src, tgt, h) {
                return Err(Error::InvalidTower(format!("coefficient map {n} is not a homomorphism")));
            }
            if !same_map(tgt, &compose(tgt, h, lower.coeff.t()), &compose(tgt, upper.coeff.t(), h)) {
                return Err(Error::InvalidTower(format!("coefficient map {n} does not commute with T")));
            }
        }
        Ok(TowerSystem { stages, projections, coeff_maps, reference: None })
    }

    /// `{"stages": [{"quandle", "coeff"}], "projections": [..], "coeff_maps": [..]}`
    pub fn from_json(v: &Value) -> Result<Self> {
        let raw: TowerJson = serde_json::from_value(v.clone())?;
        Self::new(raw.stages, raw.projections, raw.coeff_maps)
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "stages": self.stages,
            "projections": self.projections,
            "coeff_maps": self.coeff_maps,
        })
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn stages(&self) -> &[TowerStage] {
        &self.stages
    }

    pub fn with_reference(mut self, degree: usize, cocycles: Vec<Vec<Cochain>>) -> Result<Self> {
        if cocycles.len() != self.stages.len() {
            return Err(Error::InvalidTower("need reference cocycles for every stage".into()));
        }
        self.reference = Some((degree, cocycles));
        Ok(self)
    }

    /// The cochain map from stage `n` to stage `n + 1`.
    pub fn cochain_map(&self, n: usize) -> Result<CochainMap> {
        let (lo, hi) = (&self.stages[n], &self.stages[n + 1]);
        CochainMap::new(
            self.projections[n].clone(),
            self.coeff_maps[n].clone(),
            (&lo.quandle, &Coefficients::Twisted(lo.coeff.clone())),
            (&hi.quandle, &Coefficients::Twisted(hi.coeff.clone())),
        )
    }
}

/// Dihedral quandles `R_p, R_{p^2}, ..., R_{p^N}` with reduction maps and
/// constant coefficients (`Z/p` untwisted unless given).
pub fn make_dihedral_tower(p: u64, depth: usize, coeff: Option<CoefficientModule>) -> Result<TowerSystem> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::InvalidTower("the dihedral tower needs an odd prime".into()));
    }
    if depth == 0 {
        return Err(Error::InvalidTower("depth must be at least 1".into()));
    }
    let coeff = match coeff {
        Some(c) => c,
        None => CoefficientModule::constant(vec![p])?,
    };
    let sizes: Vec<usize> = (1..=depth as u32).map(|k| p.pow(k) as usize).collect();
    let stages = sizes.iter().map(|&n| TowerStage { quandle: make_dihedral(n), coeff: coeff.clone() }).collect();
    let projections = sizes.windows(2).map(|w| (0..w[1]).map(|x| x % w[0]).collect()).collect();
    let k = coeff.factors().len();
    let id: IntRows = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    TowerSystem::new(stages, projections, vec![id; depth - 1])
}

/// Alexander quandles `(Z/p^n, u)` with coefficients `(Z/p^n, T = u)` and
/// maps `x -> p x` between coefficient stages. Degree-1 reference cocycles
/// are `x |-> x` and `x |-> 1`.
pub fn make_alexander_tower(p: u64, u: i64, depth: usize) -> Result<TowerSystem> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if u.rem_euclid(p as i64) == 0 {
        return Err(Error::NotAUnit { value: u, modulus: p });
    }
    if depth == 0 {
        return Err(Error::InvalidTower("depth must be at least 1".into()));
    }
    let mods: Vec<u64> = (1..=depth as u32).map(|k| p.pow(k)).collect();
    let mut stages = Vec::new();
    for &m in &mods {
        stages.push(TowerStage { quandle: make_alexander(m, u)?, coeff: CoefficientModule::cyclic(m, u)? });
    }
    let projections = mods.windows(2).map(|w| (0..w[1] as usize).map(|x| x % w[0] as usize).collect()).collect();
    let coeff_maps = vec![vec![vec![p as i64]]; depth - 1];
    let reference = mods
        .iter()
        .map(|&m| {
            let basis = CochainBasis::new(m as usize, 1);
            vec![
                Cochain::from_fn(basis.clone(), &[m], |t| vec![t[0] as i64]),
                Cochain::from_fn(basis, &[m], |_| vec![1]),
            ]
        })
        .collect();
    TowerSystem::new(stages, projections, coeff_maps)?.with_reference(1, reference)
}

/// Per-stage cohomology, connecting maps and the truncated colimit.
#[derive(Clone, Debug)]
pub struct ColimitResult {
    pub degree: usize,
    pub depth: usize,
    pub stages: Vec<AbelianGroup>,
    /// Matrices with respect to the generators of the stage groups.
    pub connecting_maps: Vec<GroupHom>,
    /// The same maps in the reference cocycles, when the tower has them.
    pub reference_maps: Option<Vec<Vec<Vec<u64>>>>,
    pub colimit: AbelianGroup,
    pub stabilized: bool,
}

impl ColimitResult {
    pub fn to_json(&self) -> Value {
        let maps: Vec<Vec<Vec<u64>>> = self.connecting_maps.iter().map(hom_rows).collect();
        let mut v = serde_json::json!({
            "degree": self.degree,
            "depth": self.depth,
            "stages": self.stages,
            "connecting_maps": maps,
            "colimit": self.colimit,
            "stabilized": self.stabilized,
        });
        if let Some(r) = &self.reference_maps {
            v["reference_maps"] = serde_json::json!(r);
        }
        v
    }
}

fn hom_rows(h: &GroupHom) -> Vec<Vec<u64>> {
    (0..h.target().len())
        .map(|r| (0..h.source().len()).map(|c| h.matrix().get(r, c) % h.target()[r]).collect())
        .collect()
}

/// A homomorphism of finite groups is an isomorphism iff the orders agree
/// and the cokernel is trivial.
pub fn is_isomorphism(h: &GroupHom) -> bool {
    let order = |o: &[u64]| o.iter().map(|&d| d as u128).product::<u128>();
    if order(h.source()) != order(h.target()) {
        return false;
    }
    let (r, c) = (h.target().len(), h.source().len());
    let mut rel = IntMatrix::zeros(r, c + r);
    for i in 0..r {
        for j in 0..c {
            rel[(i, j)] = BigInt::from(h.matrix().get(i, j) % h.target()[i]);
        }
        rel[(i, c + i)] = BigInt::from(h.target()[i]);
    }
    AbelianGroup::from_relations(r, &rel).is_trivial()
}

/// Cokernel of the telescope map on `H_1 + ... + H_N`, each stage given
/// by the cyclic orders of its generators: one relation `g = tau(g)` for
/// each generator `g` of a non-final stage.
pub fn telescope_colimit(orders: &[Vec<u64>], maps: &[GroupHom]) -> Result<AbelianGroup> {
    if orders.is_empty() || maps.len() + 1 != orders.len() {
        return Err(Error::InvalidTower(format!("{} stages need {} maps", orders.len(), orders.len().saturating_sub(1))));
    }
    if let Some(n) = (0..maps.len()).find(|&n| maps[n].source() != orders[n] || maps[n].target() != orders[n + 1]) {
        return Err(Error::InvalidTower(format!("map {n} does not match the stage generators")));
    }
    let offsets: Vec<usize> = orders
        .iter()
        .scan(0, |acc, o| {
            let start = *acc;
            *acc += o.len();
            Some(start)
        })
        .collect();
    let total: usize = orders.iter().map(Vec::len).sum();
    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    for (s, o) in orders.iter().enumerate() {
        for (j, &d) in o.iter().enumerate() {
            let mut col = vec![BigInt::from(0); total];
            col[offsets[s] + j] = BigInt::from(d);
            columns.push(col);
        }
    }
    for (s, h) in maps.iter().enumerate() {
        for j in 0..h.source().len() {
            let mut col = vec![BigInt::from(0); total];
            col[offsets[s] + j] = BigInt::from(1);
            for i in 0..h.target().len() {
                col[offsets[s + 1] + i] = -BigInt::from(h.matrix().get(i, j) % h.target()[i]);
            }
            columns.push(col);
        }
    }
    let mut rel = IntMatrix::zeros(total, columns.len());
    for (c, col) in columns.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            rel[(r, c)] = v.clone();
        }
    }
    Ok(AbelianGroup::from_relations(total, &rel))
}

/// Coordinates of `target` classes of the images of the reference cocycles,
/// expressed in the reference cocycles of the next stage.
fn reference_matrix(map: &CochainMap, refs_lo: &[Cochain], refs_hi: &[Cochain], hi: &CohomologyGroup) -> Result<Vec<Vec<u64>>> {
    let torsion = hi.group().torsion.clone();
    let classes = hi.express_in_basis(refs_hi)?;
    let orders: Vec<u64> = classes
        .iter()
        .map(|c| {
            c.iter().zip(&torsion).map(|(&x, &d)| d / num_integer::gcd(x, d)).fold(1, num_integer::lcm)
        })
        .collect();
    let rows: Vec<Vec<i64>> =
        (0..torsion.len()).map(|i| classes.iter().map(|c| c[i] as i64).collect()).collect();
    let basis_hom = GroupHom::from_rows(orders.clone(), torsion, &rows)?;
    let mut cols = Vec::new();
    for r in refs_lo {
        let image = hi.class_of(&map.apply(r))?;
        let coeffs = solve_membership(&basis_hom, &image)?
            .ok_or_else(|| Error::InvalidTower("reference cocycles do not span the next stage".into()))?;
        cols.push(coeffs);
    }
    Ok((0..refs_hi.len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect())
}

/// Cohomology of the first `depth` stages in degree `n`, the connecting
/// maps and the colimit at that depth.
///
/// The telescope at finite depth `N` is isomorphic to `H_N`. When the last
/// connecting map is zero the tower is taken to be eventually zero, giving
/// the trivial colimit; otherwise the colimit is the telescope and it is
/// reported stable when the last connecting map is an isomorphism.
pub fn tower_cohomology(sys: &TowerSystem, degree: usize, depth: usize) -> Result<ColimitResult> {
    if depth == 0 || depth > sys.len() {
        return Err(Error::InvalidTower(format!("depth must be between 1 and {}", sys.len())));
    }
    let groups = (0..depth)
        .map(|n| {
            let st = &sys.stages[n];
            cohomology_group(&st.quandle, &Coefficients::Twisted(st.coeff.clone()), degree)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::new();
    let mut reference_maps = Vec::new();
    let refs = sys.reference.as_ref().filter(|(d, _)| *d == degree).map(|(_, r)| r);
    for n in 0..depth - 1 {
        let map = sys.cochain_map(n)?;
        maps.push(induced_map(&map, &groups[n], &groups[n + 1])?);
        if let Some(r) = refs {
            reference_maps.push(reference_matrix(&map, &r[n], &r[n + 1], &groups[n + 1])?);
        }
    }
    let stages: Vec<AbelianGroup> = groups.iter().map(|g| g.group().clone()).collect();
    let (colimit, stabilized) = match maps.last() {
        Some(last) if last.is_zero() => (AbelianGroup::trivial(), true),
        Some(last) => {
            let orders: Vec<Vec<u64>> = groups.iter().map(|g| g.group().torsion.clone()).collect();
            (telescope_colimit(&orders, &maps)?, is_isomorphism(last))
        }
        None => (stages[0].clone(), false),
    };
    Ok(ColimitResult {
        degree,
        depth,
        stages,
        connecting_maps: maps,
        reference_maps: refs.map(|_| reference_maps),
        colimit,
        stabilized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn towers_validate() {
        assert!(make_dihedral_tower(3, 2, None).is_ok());
        assert!(matches!(make_dihedral_tower(2, 2, None), Err(Error::InvalidTower(_))));
        assert!(matches!(make_dihedral_tower(9, 2, None), Err(Error::NotPrime(9))));
        assert!(matches!(make_alexander_tower(3, 3, 2), Err(Error::NotAUnit { .. })));
    }

    #[test]
    fn telescope_of_identity_maps() {
        let id = GroupHom::from_rows(vec![5], vec![5], &[vec![1]]).unwrap();
        let c = telescope_colimit(&[vec![5], vec![5], vec![5]], &[id.clone(), id.clone()]).unwrap();
        assert_eq!(c, AbelianGroup::cyclic(5));
        assert!(telescope_colimit(&[vec![5], vec![3]], std::slice::from_ref(&id)).is_err());
        assert!(is_isomorphism(&id));
    }

    #[test]
    fn json_round_trip() {
        let t = make_alexander_tower(3, 2, 2).unwrap();
        let back = TowerSystem::from_json(&t.to_json()).unwrap();
        assert_eq!(back.stages(), t.stages());
    }
}
