//! The sphere quandle `x * y = 2 (x.y) y - x`, projective space as its
//! quotient by `x ~ -x`, and the hemisphere section.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extensions::PrincipalExtension;

pub const EPS_NORM: f64 = 1e-9;
pub const EPS_BOUNDARY: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UnitVector(Vec<f64>);

impl UnitVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(coords, EPS_NORM)
    }

    fn with_tolerance(coords: Vec<f64>, tol: f64) -> Result<Self> {
        let n2: f64 = coords.iter().map(|c| c * c).sum();
        if coords.is_empty() || !n2.is_finite() || (n2 - 1.0).abs() > tol {
            return Err(Error::NotUnit(n2 - 1.0));
        }
        Ok(UnitVector(coords))
    }

    /// Rescales a non-zero vector onto the sphere.
    pub fn normalized(coords: Vec<f64>) -> Result<Self> {
        let n = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::NotUnit(-1.0));
        }
        Self::new(coords.into_iter().map(|c| c / n).collect())
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn neg(&self) -> Self {
        UnitVector(self.0.iter().map(|c| -c).collect())
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn random<R: Rng>(rng: &mut R, dim: usize) -> Self {
        loop {
            let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let n2: f64 = v.iter().map(|c| c * c).sum();
            if n2 > 1e-6 && n2 <= 1.0 {
                return Self::normalized(v).expect("non-zero sample");
            }
        }
    }
}

pub fn sphere_op(x: &UnitVector, y: &UnitVector) -> Result<UnitVector> {
    if x.dim() != y.dim() {
        return Err(Error::ShapeMismatch("points of different dimensions".into()));
    }
    // 2(x.x)x - x is x only up to rounding
    if x == y {
        return Ok(x.clone());
    }
    let d = x.dot(y);
    let coords = x.0.iter().zip(&y.0).map(|(a, b)| 2.0 * d * b - a).collect();
    UnitVector::with_tolerance(coords, 2.0 * EPS_NORM)
}

/// Sign of the deciding coordinate: scanning from the last coordinate,
/// exact zeros are skipped and the first non-zero one decides. Returns
/// `true` when the vector lies in the positive half `P+`.
fn in_positive_half(v: &UnitVector) -> Result<bool> {
    for &c in v.0.iter().rev() {
        if c == 0.0 {
            continue;
        }
        if c.abs() < EPS_BOUNDARY {
            return Err(Error::BoundaryAmbiguous(format!("coordinate {c:e} too close to zero in {:?}", v.0)));
        }
        return Ok(c > 0.0);
    }
    Err(Error::BoundaryAmbiguous("zero vector".into()))
}

/// A point of projective space, stored as its representative in `P+`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjectivePoint(UnitVector);

impl ProjectivePoint {
    pub fn new(v: UnitVector) -> Result<Self> {
        Ok(if in_positive_half(&v)? { ProjectivePoint(v) } else { ProjectivePoint(v.neg()) })
    }

    pub fn from_coords(coords: Vec<f64>) -> Result<Self> {
        Self::new(UnitVector::new(coords)?)
    }

    /// The hemisphere section `s([x]) = x` with `x` in `P+`.
    pub fn representative(&self) -> &UnitVector {
        &self.0
    }
}

/// `[x] * [y] = [x * y]`; independent of the signs of `x` and `y`.
pub fn projective_op(x: &ProjectivePoint, y: &ProjectivePoint) -> Result<ProjectivePoint> {
    ProjectivePoint::new(sphere_op(&x.0, &y.0)?)
}

/// `0` when `s(x) * s(y)` lies in `P+`, `1` otherwise.
pub fn sphere_cocycle(x: &ProjectivePoint, y: &ProjectivePoint) -> Result<u8> {
    Ok(if in_positive_half(&sphere_op(&x.0, &y.0)?)? { 0 } else { 1 })
}

/// `phi(x,y) + phi(x*y,z) = phi(x,z) + phi(x*z,y*z)` in `Z/2`.
pub fn sphere_cocycle_identity(x: &ProjectivePoint, y: &ProjectivePoint, z: &ProjectivePoint) -> Result<bool> {
    let xy = projective_op(x, y)?;
    let xz = projective_op(x, z)?;
    let yz = projective_op(y, z)?;
    let lhs = sphere_cocycle(x, y)? ^ sphere_cocycle(&xy, z)?;
    let rhs = sphere_cocycle(x, z)? ^ sphere_cocycle(&xz, &yz)?;
    Ok(lhs == rhs)
}

/// `S^n -> RP^n` as a principal extension by `Z/2` acting by `x |-> -x`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ProjectiveCover;

impl PrincipalExtension for ProjectiveCover {
    type Base = ProjectivePoint;
    type Total = UnitVector;

    fn fiber_factors(&self) -> Vec<u64> {
        vec![2]
    }

    fn base_op(&self, x: &ProjectivePoint, y: &ProjectivePoint) -> Result<ProjectivePoint> {
        projective_op(x, y)
    }

    fn total_op(&self, e: &UnitVector, f: &UnitVector) -> Result<UnitVector> {
        sphere_op(e, f)
    }

    fn section(&self, x: &ProjectivePoint) -> Result<UnitVector> {
        Ok(x.0.clone())
    }

    fn fiber_difference(&self, e: &UnitVector, f: &UnitVector) -> Result<Vec<u64>> {
        let tol = 1e-6;
        if e.distance(f) < tol {
            Ok(vec![0])
        } else if e.distance(&f.neg()) < tol {
            Ok(vec![1])
        } else {
            Err(Error::InvalidPrincipal("points lie in different fibers".into()))
        }
    }
}

/// The trivial double cover `X x Z/2 -> X` of projective space, with the
/// product operation and section `x |-> (x, 0)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct TrivialCover;

impl PrincipalExtension for TrivialCover {
    type Base = ProjectivePoint;
    type Total = (ProjectivePoint, u8);

    fn fiber_factors(&self) -> Vec<u64> {
        vec![2]
    }

    fn base_op(&self, x: &ProjectivePoint, y: &ProjectivePoint) -> Result<ProjectivePoint> {
        projective_op(x, y)
    }

    fn total_op(&self, e: &Self::Total, f: &Self::Total) -> Result<Self::Total> {
        Ok((projective_op(&e.0, &f.0)?, e.1))
    }

    fn section(&self, x: &ProjectivePoint) -> Result<Self::Total> {
        Ok((x.clone(), 0))
    }

    fn fiber_difference(&self, e: &Self::Total, f: &Self::Total) -> Result<Vec<u64>> {
        if e.0.representative().distance(f.0.representative()) > 1e-6 {
            return Err(Error::InvalidPrincipal("points lie in different fibers".into()));
        }
        Ok(vec![u64::from(e.1 ^ f.1)])
    }
}

/// Result of sampling the hemisphere cocycle.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleSample {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// `None` when the sample fell within the boundary tolerance.
    pub value: Option<u8>,
}

pub fn sample_sphere_cocycle<R: Rng>(rng: &mut R, dim: usize, count: usize) -> Vec<CocycleSample> {
    (0..count)
        .map(|_| {
            let x = ProjectivePoint::new(UnitVector::random(rng, dim));
            let y = ProjectivePoint::new(UnitVector::random(rng, dim));
            match (x, y) {
                (Ok(x), Ok(y)) => CocycleSample {
                    value: sphere_cocycle(&x, &y).ok(),
                    x: x.0 .0,
                    y: y.0 .0,
                },
                _ => CocycleSample { x: vec![], y: vec![], value: None },
            }
        })
        .filter(|s| !s.x.is_empty())
        .collect()
}

/// CSV with columns `x0..xn, y0..yn, phi, boundary`.
pub fn samples_to_csv(samples: &[CocycleSample]) -> String {
    let dim = samples.first().map_or(3, |s| s.x.len());
    let mut header: Vec<String> = (0..dim).map(|i| format!("x{i}")).collect();
    header.extend((0..dim).map(|i| format!("y{i}")));
    header.push("phi".into());
    header.push("boundary".into());
    let mut out = header.join(",");
    out.push('\n');
    for s in samples {
        let mut row: Vec<String> = s.x.iter().chain(&s.y).map(|c| format!("{c:.17e}")).collect();
        row.push(s.value.map_or(String::new(), |v| v.to_string()));
        row.push(u8::from(s.value.is_none()).to_string());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
