//! Homogeneous coordinates: points of projective d-space, linear functionals
//! (hyperplanes through the origin of R^{d+1}), and flats given by explicit
//! rational bases. Duality is the polarity of the standard inner product:
//! the hyperplane of `u` is `{x : <u, x> = 0}`.

use crate::error::Error;
use crate::linalg;
use crate::rat::{sign, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Rescale by the unique positive rational making all entries integers with
/// gcd 1. Preserves orientation (the sign pattern).
pub(crate) fn primitive_scale(coords: &[Rat]) -> Vec<Rat> {
    debug_assert!(coords.iter().any(|c| !c.is_zero()));
    let mut lcm = BigInt::one();
    for c in coords {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coords
        .iter()
        .map(|c| c.numer() * &lcm / c.denom())
        .collect();
    let mut gcd = BigInt::zero();
    for i in &ints {
        gcd = gcd.gcd(i);
    }
    ints.into_iter()
        .map(|i| Rat::from_integer(i / &gcd))
        .collect()
}

/// A nonzero vector of d+1 rationals, read as a point of projective d-space.
/// Vectors with last coordinate zero are points at infinity (directions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousPoint {
    coords: Vec<Rat>,
}

impl HomogeneousPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self, Error> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { coords })
    }

    /// Embed an affine point of R^d as (p, 1).
    pub fn lift_affine(p: &[Rat]) -> Self {
        let mut coords = p.to_vec();
        coords.push(Rat::one());
        Self { coords }
    }

    /// Embed a direction of R^d as the point at infinity (v, 0).
    pub fn direction(v: &[Rat]) -> Result<Self, Error> {
        let mut coords = v.to_vec();
        coords.push(Rat::zero());
        Self::new(coords)
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// Ambient affine dimension d (one less than the coordinate count).
    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coords.last().is_some_and(Rat::is_zero)
    }

    /// Primitive integer representative on the same ray (positive scaling
    /// only, so signs against every functional are unchanged).
    pub fn primitive_oriented(&self) -> Self {
        Self {
            coords: primitive_scale(&self.coords),
        }
    }

    /// Primitive integer representative with the first nonzero coordinate
    /// positive: a canonical form for projective (unoriented) identity.
    pub fn canonical(&self) -> Self {
        let mut coords = primitive_scale(&self.coords);
        if let Some(first) = coords.iter().find(|c| !c.is_zero()) {
            if sign(first) < 0 {
                for c in &mut coords {
                    *c = -c.clone();
                }
            }
        }
        Self { coords }
    }

    pub fn neg(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
        }
    }

    /// Equality as projective points: proportional by any nonzero rational.
    pub fn projectively_eq(&self, other: &Self) -> bool {
        self.coords.len() == other.coords.len() && self.canonical() == other.canonical()
    }
}

/// A nonzero linear functional on R^{d+1}; its zero set is a projective
/// hyperplane. Arrangement hyperplanes are stored in this form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrangementFunctional {
    coeffs: Vec<Rat>,
}

impl ArrangementFunctional {
    pub fn new(coeffs: Vec<Rat>) -> Result<Self, Error> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn ambient_dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn evaluate(&self, u: &HomogeneousPoint) -> Result<Rat, Error> {
        if self.coeffs.len() != u.coords().len() {
            return Err(Error::DimensionMismatch {
                expected: self.coeffs.len(),
                got: u.coords().len(),
            });
        }
        Ok(linalg::dot(&self.coeffs, u.coords()))
    }

    pub fn sign_of(&self, u: &HomogeneousPoint) -> Result<i8, Error> {
        Ok(sign(&self.evaluate(u)?))
    }
}

/// A nonzero linear subspace of R^{d+1} with an explicit rational basis,
/// read as a flat of projective d-space. `hdim` is the basis length; the
/// projective dimension is `hdim - 1`.
///
/// Equality is representational (same basis vectors); use `spans_same` for
/// equality as subspaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveFlat {
    basis: Vec<HomogeneousPoint>,
}

impl ProjectiveFlat {
    pub fn new(basis: Vec<HomogeneousPoint>) -> Result<Self, Error> {
        if basis.is_empty() {
            return Err(Error::DependentBasis);
        }
        let width = basis[0].coords().len();
        for b in &basis {
            if b.coords().len() != width {
                return Err(Error::DimensionMismatch {
                    expected: width,
                    got: b.coords().len(),
                });
            }
        }
        if basis.len() > width {
            return Err(Error::DependentBasis);
        }
        let rows: Vec<Vec<Rat>> = basis.iter().map(|b| b.coords().to_vec()).collect();
        if linalg::rank(&rows) != basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(Self { basis })
    }

    pub fn basis(&self) -> &[HomogeneousPoint] {
        &self.basis
    }

    pub fn hdim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis[0].ambient_dim()
    }

    /// The flat of all vectors orthogonal to this one; hdim is the
    /// complementary (d+1) - hdim. Basis vectors come out canonical.
    pub fn orthogonal_complement(&self) -> ProjectiveFlat {
        let rows: Vec<Vec<Rat>> = self.basis.iter().map(|b| b.coords().to_vec()).collect();
        let cols = rows[0].len();
        let kernel = linalg::kernel_basis(&rows, cols);
        let basis = kernel
            .into_iter()
            .map(|v| {
                HomogeneousPoint::new(v)
                    .expect("kernel basis vectors are nonzero")
                    .canonical()
            })
            .collect();
        ProjectiveFlat::new(basis).expect("kernel basis is independent")
    }

    /// Whether the two subspaces share a nonzero vector, i.e. the projective
    /// flats meet (possibly at infinity).
    pub fn intersects(&self, other: &ProjectiveFlat) -> Result<bool, Error> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: other.ambient_dim(),
            });
        }
        let mut rows: Vec<Vec<Rat>> = self.basis.iter().map(|b| b.coords().to_vec()).collect();
        rows.extend(other.basis.iter().map(|b| b.coords().to_vec()));
        Ok(linalg::rank(&rows) < self.hdim() + other.hdim())
    }

    pub fn contains(&self, u: &HomogeneousPoint) -> bool {
        let rows: Vec<Vec<Rat>> = self.basis.iter().map(|b| b.coords().to_vec()).collect();
        u.coords().len() == rows[0].len() && linalg::in_span(&rows, u.coords())
    }

    pub fn spans_same(&self, other: &ProjectiveFlat) -> bool {
        self.hdim() == other.hdim()
            && self.ambient_dim() == other.ambient_dim()
            && other.basis.iter().all(|b| self.contains(b))
    }

    /// The point with the given coefficients against this flat's basis.
    pub fn combine(&self, coeffs: &[Rat]) -> Result<HomogeneousPoint, Error> {
        if coeffs.len() != self.hdim() {
            return Err(Error::DimensionMismatch {
                expected: self.hdim(),
                got: coeffs.len(),
            });
        }
        let width = self.basis[0].coords().len();
        let mut out = vec![Rat::zero(); width];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(b.coords()) {
                *o += c * x;
            }
        }
        HomogeneousPoint::new(out)
    }
}
