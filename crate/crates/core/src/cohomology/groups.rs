//! Cohomology groups, coboundary witnesses and induced maps.

use crate::algebra::coeff::{apply_rows, compose, is_hom, same_map, IntRows};
use crate::algebra::group::AbelianGroup;
use crate::algebra::homology::{homology_of_pair, solve_membership, GroupHom, Homology};
use crate::error::{Error, Result};
use crate::quandle::{is_quandle_hom, QuandleTable};

use super::complex::{Cochain, CochainBasis};
use super::differential::Coefficients;

/// `H^n = ker delta^n / im delta^{n-1}` with representative cocycles.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: usize,
    q: usize,
    factors: Vec<u64>,
    homology: Homology,
    representatives: Vec<Cochain>,
}

impl CohomologyGroup {
    pub fn group(&self) -> &AbelianGroup {
        &self.homology.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// One cocycle per cyclic factor of [`Self::group`].
    pub fn representatives(&self) -> &[Cochain] {
        &self.representatives
    }

    fn check(&self, c: &Cochain) -> Result<()> {
        if c.degree() != self.degree || c.basis().quandle_size() != self.q || c.factors() != self.factors {
            return Err(Error::ShapeMismatch("cochain does not belong to this complex".into()));
        }
        Ok(())
    }

    pub fn is_cocycle(&self, c: &Cochain) -> Result<bool> {
        self.check(c)?;
        Ok(self.homology.is_cycle(&c.flatten()))
    }

    /// Coordinates of the class of a cocycle in terms of the representatives.
    pub fn class_of(&self, c: &Cochain) -> Result<Vec<u64>> {
        self.check(c)?;
        self.homology.class_of(&c.flatten())
    }

    pub fn cocycle_for(&self, class: &[u64]) -> Cochain {
        let flat = self.homology.representative(class);
        Cochain::from_flat(CochainBasis::new(self.q, self.degree), &self.factors, &flat).expect("consistent shape")
    }

    /// Class coordinates of each cocycle in `basis`, as columns.
    pub fn express_in_basis(&self, basis: &[Cochain]) -> Result<Vec<Vec<u64>>> {
        basis.iter().map(|c| self.class_of(c)).collect()
    }
}

pub fn cohomology_group(x: &QuandleTable, coeffs: &Coefficients, n: usize) -> Result<CohomologyGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("cohomology degree must be at least 1".into()));
    }
    let d_out = coeffs.differential(x, n)?;
    let d_in = coeffs.differential(x, n - 1)?;
    let homology = homology_of_pair(&d_out, &d_in)?;
    let basis = CochainBasis::new(x.size(), n);
    let representatives = homology
        .generators()
        .iter()
        .map(|g| Cochain::from_flat(basis.clone(), coeffs.factors(), g))
        .collect::<Result<Vec<_>>>()?;
    Ok(CohomologyGroup { degree: n, q: x.size(), factors: coeffs.factors().to_vec(), homology, representatives })
}

/// A cochain `g` of degree `n - 1` with `delta g = phi`, if one exists.
pub fn is_coboundary(x: &QuandleTable, coeffs: &Coefficients, phi: &Cochain) -> Result<Option<Cochain>> {
    let n = phi.degree();
    if n == 0 {
        return Err(Error::InvalidArgument("degree-0 cochains are not coboundaries".into()));
    }
    let d_out = coeffs.differential(x, n)?;
    if d_out.apply(&phi.flatten()).iter().any(|&v| v != 0) {
        return Err(Error::NotACocycle(format!("degree-{n} cochain has non-zero coboundary")));
    }
    let d_in = coeffs.differential(x, n - 1)?;
    let basis = CochainBasis::new(x.size(), n - 1);
    match solve_membership(&d_in, &phi.flatten())? {
        Some(g) => Ok(Some(Cochain::from_flat(basis, coeffs.factors(), &g)?)),
        None => Ok(None),
    }
}

/// A cochain map `phi |-> h . phi . (f x ... x f)` from the complex over
/// `(X, A)` to the complex over `(Y, B)`, for a quandle map `f: Y -> X` and
/// a coefficient map `h: A -> B` compatible with the twistings.
#[derive(Clone, Debug)]
pub struct CochainMap {
    f: Vec<usize>,
    h: IntRows,
    target_factors: Vec<u64>,
}

impl CochainMap {
    pub fn new(
        f: Vec<usize>,
        h: IntRows,
        source: (&QuandleTable, &Coefficients),
        target: (&QuandleTable, &Coefficients),
    ) -> Result<Self> {
        let (x, ca) = source;
        let (y, cb) = target;
        if !is_quandle_hom(&f, y, x)? {
            return Err(Error::NotAHomomorphism("quandle map does not preserve the operation".into()));
        }
        let (fa, fb) = (ca.factors(), cb.factors());
        if !is_hom(fa, fb, &h) {
            return Err(Error::NotAHomomorphism("coefficient map is not well defined".into()));
        }
        // h eta^X_{f a, f b} = eta^Y_{a,b} h, likewise for tau
        let pair = |c: &Coefficients, a: usize, b: usize| -> (IntRows, IntRows) {
            match c {
                Coefficients::Twisted(m) => {
                    let k = m.factors().len();
                    let id = crate::algebra::coeff::identity_rows(k);
                    let t = m.t().clone();
                    let tau = crate::algebra::coeff::add_maps(
                        m.factors(),
                        &id,
                        &t.iter().map(|r| r.iter().map(|v| -v).collect()).collect(),
                    );
                    (t, tau)
                }
                Coefficients::Module(m) => (m.eta(a, b).clone(), m.tau(a, b).clone()),
            }
        };
        for a in 0..y.size() {
            for b in 0..y.size() {
                let (ex, tx) = pair(ca, f[a], f[b]);
                let (ey, ty) = pair(cb, a, b);
                if !same_map(fb, &compose(fb, &h, &ex), &compose(fb, &ey, &h))
                    || !same_map(fb, &compose(fb, &h, &tx), &compose(fb, &ty, &h))
                {
                    return Err(Error::NotAHomomorphism(format!(
                        "coefficient map does not intertwine the actions at ({a},{b})"
                    )));
                }
            }
        }
        Ok(CochainMap { f, h, target_factors: fb.to_vec() })
    }

    pub fn apply(&self, c: &Cochain) -> Cochain {
        let basis = CochainBasis::new(self.f.len(), c.degree());
        Cochain::from_fn(basis, &self.target_factors, |t| {
            let image: Vec<usize> = t.iter().map(|&v| self.f[v]).collect();
            apply_rows(&self.target_factors, &self.h, &c.value(&image)).iter().map(|&v| v as i64).collect()
        })
    }
}

/// Matrix of the induced map on cohomology, columns indexed by the source
/// generators and rows by the target generators.
pub fn induced_map(map: &CochainMap, source: &CohomologyGroup, target: &CohomologyGroup) -> Result<GroupHom> {
    let columns = source
        .representatives()
        .iter()
        .map(|r| target.class_of(&map.apply(r)))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<Vec<i64>> = (0..target.group().torsion.len())
        .map(|i| columns.iter().map(|c| c[i] as i64).collect())
        .collect();
    GroupHom::from_rows(source.group().torsion.clone(), target.group().torsion.clone(), &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coeff::CoefficientModule;
    use crate::quandle::{make_alexander, make_dihedral, make_trivial};

    fn twisted(m: u64, u: i64) -> Coefficients {
        Coefficients::Twisted(CoefficientModule::cyclic(m, u).unwrap())
    }

    #[test]
    fn h1_of_dihedral_three() {
        let h = cohomology_group(&make_dihedral(3), &twisted(3, 1), 1).unwrap();
        assert_eq!(h.group().torsion, vec![3]);
    }

    #[test]
    fn h1_of_trivial_quandle() {
        let h = cohomology_group(&make_trivial(3), &twisted(2, 1), 1).unwrap();
        assert_eq!(h.group().torsion, vec![2, 2, 2]);
    }

    #[test]
    fn twisted_h1_of_alexander() {
        let x = make_alexander(3, 2).unwrap();
        let h = cohomology_group(&x, &twisted(3, 2), 1).unwrap();
        assert_eq!(h.group().torsion, vec![3, 3]);
    }

    #[test]
    fn coboundary_witness() {
        let x = make_dihedral(3);
        let c = twisted(3, 2);
        let g0 = Cochain::from_fn(CochainBasis::new(3, 1), &[3], |t| vec![[2, 0, 1][t[0]]]);
        let d = c.differential(&x, 1).unwrap();
        let phi = Cochain::from_flat(CochainBasis::new(3, 2), &[3], &d.apply(&g0.flatten())).unwrap();
        let g = is_coboundary(&x, &c, &phi).unwrap().expect("coboundary");
        assert_eq!(d.apply(&g.flatten()), phi.flatten());
        let zero = Cochain::zero(CochainBasis::new(3, 2), &[3]);
        assert!(is_coboundary(&x, &c, &zero).unwrap().unwrap().is_zero());
    }

    #[test]
    fn identity_induces_identity() {
        let x = make_dihedral(3);
        let c = twisted(3, 1);
        let h = cohomology_group(&x, &c, 2).unwrap();
        let map = CochainMap::new(vec![0, 1, 2], vec![vec![1]], (&x, &c), (&x, &c)).unwrap();
        let ind = induced_map(&map, &h, &h).unwrap();
        for i in 0..h.group().torsion.len() {
            let mut e = vec![0; h.group().torsion.len()];
            e[i] = 1;
            assert_eq!(ind.apply(&e), e);
        }
    }
}
