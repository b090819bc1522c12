//! Reduction of crossing-distance queries to covering problems on products
//! of circles. A segment with endpoints on two disjoint flats crosses a
//! hyperplane exactly when the hyperplane's restricted signs at the two
//! endpoint directions multiply to -1, so the minimum over segments becomes
//! a minimum over pairs of open cells on the factor circles.

use crate::circle::CircleVector;
use crate::error::Error;
use crate::projective::{ArrangementFunctional, HomogeneousPoint, ProjectiveFlat};
use crate::rat::Rat;
use num_traits::{One, Zero};

/// The dual hyperplane of an affine point p: functional (p, 1). A point q
/// lies on the dual hyperplane of p exactly when p lies on the dual of q.
pub fn dual_of_point(p: &[Rat]) -> ArrangementFunctional {
    let mut coeffs = p.to_vec();
    coeffs.push(Rat::one());
    ArrangementFunctional::new(coeffs).expect("last coefficient is one")
}

/// Functional whose zero set is the homogeneous closure of {x : a.x = b}.
pub fn functional_of_affine_hyperplane(a: &[Rat], b: &Rat) -> Result<ArrangementFunctional, Error> {
    if a.iter().all(Zero::is_zero) {
        return Err(Error::ZeroNormal);
    }
    let mut coeffs = a.to_vec();
    coeffs.push(-b.clone());
    Ok(ArrangementFunctional::new(coeffs).expect("normal part is nonzero"))
}

/// The flat every depth query measures distance to: the orthogonal
/// complement of the span of the response directions at infinity. Responses
/// are the last d-k coordinates, so the flat is spanned by the k explanatory
/// directions at infinity together with (0,...,0,1).
pub fn vertical_infinity_flat(d: usize, k: usize) -> Result<ProjectiveFlat, Error> {
    if d == 0 || k + 1 > d {
        return Err(Error::ResponseCountOutOfRange { k, d });
    }
    let mut responses = Vec::with_capacity(d - k);
    for axis in k..d {
        let mut v = vec![Rat::zero(); d + 1];
        v[axis] = Rat::one();
        responses.push(HomogeneousPoint::new(v).expect("unit vector"));
    }
    let span = ProjectiveFlat::new(responses).expect("distinct unit vectors");
    Ok(span.orthogonal_complement())
}

/// The dual (d-2)-flat of the line through two projectively distinct points.
pub fn dual_flat_of_line(
    p: &HomogeneousPoint,
    q: &HomogeneousPoint,
) -> Result<ProjectiveFlat, Error> {
    if p.coords().len() == q.coords().len() && p.projectively_eq(q) {
        return Err(Error::CoincidentPoints);
    }
    let span = ProjectiveFlat::new(vec![p.clone(), q.clone()])?;
    Ok(span.orthogonal_complement())
}

/// One arrangement hyperplane restricted to both factor bases. For a factor
/// with a single basis vector the second coefficient is zero and the factor
/// is sampled only at (±1, 0).
#[derive(Debug, Clone)]
pub struct RestrictedFunctional {
    pub index: usize,
    pub on1: (Rat, Rat),
    pub on2: (Rat, Rat),
}

impl RestrictedFunctional {
    pub fn sign1(&self, u: &CircleVector) -> i8 {
        u.sign_against(&self.on1.0, &self.on1.1)
    }

    pub fn sign2(&self, u: &CircleVector) -> i8 {
        u.sign_against(&self.on2.0, &self.on2.1)
    }
}

/// A crossing-distance query reduced to factor coordinates. `active` holds
/// restrictions that vanish identically on neither factor; hyperplanes
/// containing a whole factor flat are listed in `incident` and counted
/// additively in the closed distance.
#[derive(Debug, Clone)]
pub struct CoveringInstance {
    factor1: ProjectiveFlat,
    factor2: ProjectiveFlat,
    active: Vec<RestrictedFunctional>,
    incident: Vec<usize>,
    n_total: usize,
}

#[derive(Debug)]
pub enum BuildOutcome {
    Instance(CoveringInstance),
    /// The factor flats share a projective point: crossing distance is zero.
    IntersectingFlats,
}

pub fn build_instance(
    functionals: &[ArrangementFunctional],
    factor1: &ProjectiveFlat,
    factor2: &ProjectiveFlat,
) -> Result<BuildOutcome, Error> {
    let (hdim1, hdim2) = (factor1.hdim(), factor2.hdim());
    if hdim1 > 2 || hdim2 > 2 {
        return Err(Error::UnsupportedFlatDimension { hdim1, hdim2 });
    }
    if factor1.ambient_dim() != factor2.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: factor1.ambient_dim(),
            got: factor2.ambient_dim(),
        });
    }
    let width = factor1.ambient_dim() + 1;
    for h in functionals {
        if h.coeffs().len() != width {
            return Err(Error::DimensionMismatch {
                expected: width,
                got: h.coeffs().len(),
            });
        }
    }
    if factor1.intersects(factor2)? {
        return Ok(BuildOutcome::IntersectingFlats);
    }

    let mut active = Vec::with_capacity(functionals.len());
    let mut incident = Vec::new();
    for (index, h) in functionals.iter().enumerate() {
        let restrict = |f: &ProjectiveFlat| -> (Rat, Rat) {
            let mut vals = f
                .basis()
                .iter()
                .map(|b| h.evaluate(b).expect("widths checked above"));
            let a = vals.next().expect("basis is nonempty");
            let b = vals.next().unwrap_or_else(Rat::zero);
            (a, b)
        };
        let on1 = restrict(factor1);
        let on2 = restrict(factor2);
        if (on1.0.is_zero() && on1.1.is_zero()) || (on2.0.is_zero() && on2.1.is_zero()) {
            incident.push(index);
        } else {
            active.push(RestrictedFunctional { index, on1, on2 });
        }
    }
    Ok(BuildOutcome::Instance(CoveringInstance {
        factor1: factor1.clone(),
        factor2: factor2.clone(),
        active,
        incident,
        n_total: functionals.len(),
    }))
}

impl CoveringInstance {
    pub fn factor1(&self) -> &ProjectiveFlat {
        &self.factor1
    }

    pub fn factor2(&self) -> &ProjectiveFlat {
        &self.factor2
    }

    pub fn hdim1(&self) -> usize {
        self.factor1.hdim()
    }

    pub fn hdim2(&self) -> usize {
        self.factor2.hdim()
    }

    pub fn active(&self) -> &[RestrictedFunctional] {
        &self.active
    }

    pub fn incident(&self) -> &[usize] {
        &self.incident
    }

    pub fn incident_count(&self) -> u64 {
        self.incident.len() as u64
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    /// Number of active hyperplanes whose restricted signs at the two
    /// directions strictly differ: the crossing count of the open segment
    /// pair selected by (u1, u2).
    pub fn strict_crossing_count(&self, u1: &CircleVector, u2: &CircleVector) -> u64 {
        self.active
            .iter()
            .filter(|h| i32::from(h.sign1(u1)) * i32::from(h.sign2(u2)) == -1)
            .count() as u64
    }

    /// Sorted deduplicated boundary directions of the active restrictions on
    /// one factor (1 or 2). Closed under antipodes by construction: each
    /// restriction (A, B) contributes both zeros (-B, A) and (B, -A) of the
    /// form A·α + B·β.
    pub fn boundary_directions(&self, factor: u8) -> Vec<CircleVector> {
        let mut set = std::collections::BTreeSet::new();
        for h in &self.active {
            let (a, b) = if factor == 1 { &h.on1 } else { &h.on2 };
            let dir =
                CircleVector::new(-b.clone(), a.clone()).expect("active restrictions are nonzero");
            set.insert(dir.antipode());
            set.insert(dir);
        }
        set.into_iter().collect()
    }

    /// Map factor-circle coordinates to homogeneous endpoint representatives
    /// (primitive, orientation preserved so recounts reproduce the signs).
    pub fn witness_points(
        &self,
        c1: &CircleVector,
        c2: &CircleVector,
    ) -> (HomogeneousPoint, HomogeneousPoint) {
        (
            combine_direction(&self.factor1, c1),
            combine_direction(&self.factor2, c2),
        )
    }

    /// The same instance with the factor roles exchanged.
    pub fn swapped(&self) -> CoveringInstance {
        CoveringInstance {
            factor1: self.factor2.clone(),
            factor2: self.factor1.clone(),
            active: self
                .active
                .iter()
                .map(|h| RestrictedFunctional {
                    index: h.index,
                    on1: h.on2.clone(),
                    on2: h.on1.clone(),
                })
                .collect(),
            incident: self.incident.clone(),
            n_total: self.n_total,
        }
    }
}

fn combine_direction(factor: &ProjectiveFlat, c: &CircleVector) -> HomogeneousPoint {
    let coeffs = if factor.hdim() == 2 {
        vec![c.alpha().clone(), c.beta().clone()]
    } else {
        debug_assert!(
            c.beta().is_zero(),
            "1-dimensional factors are sampled at (±1, 0)"
        );
        vec![c.alpha().clone()]
    };
    factor
        .combine(&coeffs)
        .expect("coefficient arity matches hdim")
        .primitive_oriented()
}

/// Outcome of a solved query. Closed semantics: hyperplanes containing a
/// query flat are crossed by every segment's closure, so the headline
/// distance is the strict minimum plus the incident count.
#[derive(Debug, Clone)]
pub struct DepthResult {
    pub distance: u64,
    pub strict_min: u64,
    pub incident_count: u64,
    pub witness: Witness,
}

#[derive(Debug, Clone)]
pub enum Witness {
    /// The flats meet; every count is zero and no endpoint pair is reported.
    IntersectingFlats,
    Pair {
        /// Coefficients against the factor bases (length = factor hdim).
        coords1: Vec<Rat>,
        coords2: Vec<Rat>,
        u1: HomogeneousPoint,
        u2: HomogeneousPoint,
    },
}

impl DepthResult {
    pub fn intersecting() -> Self {
        DepthResult {
            distance: 0,
            strict_min: 0,
            incident_count: 0,
            witness: Witness::IntersectingFlats,
        }
    }

    pub(crate) fn from_strict(
        inst: &CoveringInstance,
        strict_min: u64,
        c1: &CircleVector,
        c2: &CircleVector,
    ) -> Self {
        debug_assert_eq!(inst.strict_crossing_count(c1, c2), strict_min);
        let (u1, u2) = inst.witness_points(c1, c2);
        let coords_of = |hdim: usize, c: &CircleVector| {
            if hdim == 2 {
                vec![c.alpha().clone(), c.beta().clone()]
            } else {
                vec![c.alpha().clone()]
            }
        };
        let incident_count = inst.incident_count();
        DepthResult {
            distance: strict_min + incident_count,
            strict_min,
            incident_count,
            witness: Witness::Pair {
                coords1: coords_of(inst.hdim1(), c1),
                coords2: coords_of(inst.hdim2(), c2),
                u1,
                u2,
            },
        }
    }

    /// The same result with the witness factors exchanged (used to undo a
    /// factor swap made for dispatch).
    pub(crate) fn swapped(self) -> Self {
        let witness = match self.witness {
            Witness::IntersectingFlats => Witness::IntersectingFlats,
            Witness::Pair {
                coords1,
                coords2,
                u1,
                u2,
            } => Witness::Pair {
                coords1: coords2,
                coords2: coords1,
                u1: u2,
                u2: u1,
            },
        };
        DepthResult { witness, ..self }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rat::{rat_from_i64 as ri, ratio};
    use proptest::prelude::*;

    fn hp(coords: &[i64]) -> HomogeneousPoint {
        HomogeneousPoint::new(coords.iter().map(|&c| ri(c)).collect()).unwrap()
    }

    fn flat(basis: &[&[i64]]) -> ProjectiveFlat {
        ProjectiveFlat::new(basis.iter().map(|b| hp(b)).collect()).unwrap()
    }

    fn func(coeffs: &[i64]) -> ArrangementFunctional {
        ArrangementFunctional::new(coeffs.iter().map(|&c| ri(c)).collect()).unwrap()
    }

    fn cv(a: i64, b: i64) -> CircleVector {
        CircleVector::new(ri(a), ri(b)).unwrap()
    }

    #[test]
    fn dual_of_point_appends_one() {
        assert_eq!(
            dual_of_point(&[ri(0), ri(0), ri(0)]).coeffs(),
            func(&[0, 0, 0, 1]).coeffs()
        );
        assert_eq!(
            dual_of_point(&[ri(1), ri(2)]).coeffs(),
            func(&[1, 2, 1]).coeffs()
        );
    }

    #[test]
    fn polarity_is_symmetric() {
        let pairs = [
            (vec![ri(1), ri(2)], vec![ri(-3), ratio(1, 2)]),
            (vec![ri(0), ri(5)], vec![ri(7), ri(-1)]),
            (vec![ratio(2, 3), ri(4)], vec![ri(1), ri(1)]),
        ];
        for (p, q) in pairs {
            let at = |a: &[Rat], b: &[Rat]| {
                dual_of_point(a)
                    .evaluate(&HomogeneousPoint::lift_affine(b))
                    .unwrap()
            };
            assert_eq!(at(&p, &q), at(&q, &p));
        }
    }

    #[test]
    fn hyperplane_functional_negates_offset() {
        let h = functional_of_affine_hyperplane(&[ri(0), ri(1), ri(0)], &ri(2)).unwrap();
        assert_eq!(h.coeffs(), func(&[0, 1, 0, -2]).coeffs());
        let g = functional_of_affine_hyperplane(&[ri(1), ri(1)], &ri(0)).unwrap();
        assert_eq!(g.coeffs(), func(&[1, 1, 0]).coeffs());
        // A solution point of a.x = b lies on the zero set.
        let h2 = functional_of_affine_hyperplane(&[ri(3), ri(-1)], &ri(6)).unwrap();
        assert_eq!(
            h2.sign_of(&HomogeneousPoint::lift_affine(&[ri(2), ri(0)]))
                .unwrap(),
            0
        );
        assert_eq!(
            functional_of_affine_hyperplane(&[ri(0), ri(0)], &ri(1)),
            Err(Error::ZeroNormal)
        );
    }

    #[test]
    fn vertical_infinity_flat_spans() {
        assert!(vertical_infinity_flat(3, 1)
            .unwrap()
            .spans_same(&flat(&[&[1, 0, 0, 0], &[0, 0, 0, 1]])));
        assert!(vertical_infinity_flat(2, 1)
            .unwrap()
            .spans_same(&flat(&[&[1, 0, 0], &[0, 0, 1]])));
        assert!(vertical_infinity_flat(2, 0)
            .unwrap()
            .spans_same(&flat(&[&[0, 0, 1]])));
        assert_eq!(
            vertical_infinity_flat(2, 2),
            Err(Error::ResponseCountOutOfRange { k: 2, d: 2 })
        );
    }

    #[test]
    fn dual_flat_of_coordinate_line() {
        let dual = dual_flat_of_line(&hp(&[0, 0, 0, 1]), &hp(&[1, 0, 0, 0])).unwrap();
        assert!(dual.spans_same(&flat(&[&[0, 1, 0, 0], &[0, 0, 1, 0]])));
    }

    #[test]
    fn dual_flat_of_diagonal_line_in_plane() {
        let dual = dual_flat_of_line(
            &HomogeneousPoint::lift_affine(&[ri(0), ri(0)]),
            &HomogeneousPoint::lift_affine(&[ri(1), ri(1)]),
        )
        .unwrap();
        assert!(dual.spans_same(&flat(&[&[1, -1, 0]])));
        // Points on the line dualize to hyperplanes through the dual flat.
        for p in [[ri(2), ri(2)], [ri(-5), ri(-5)], [ratio(1, 3), ratio(1, 3)]] {
            for u in dual.basis() {
                assert_eq!(dual_of_point(&p).sign_of(u).unwrap(), 0);
            }
        }
        assert_eq!(
            dual_flat_of_line(&hp(&[1, 1, 1]), &hp(&[2, 2, 2])),
            Err(Error::CoincidentPoints)
        );
    }

    #[test]
    fn restriction_to_factor_bases() {
        let f1 = flat(&[&[0, 0, 0, 1], &[1, 0, 0, 0]]);
        let f2 = flat(&[&[0, 1, 0, 1], &[0, 0, 1, 0]]);
        let out = build_instance(&[func(&[0, 1, 0, -2])], &f1, &f2).unwrap();
        let BuildOutcome::Instance(inst) = out else {
            panic!("flats are disjoint");
        };
        assert_eq!(inst.active().len(), 1);
        assert_eq!(inst.active()[0].on2, (ri(-1), ri(0)));
        assert_eq!(inst.active()[0].on1, (ri(-2), ri(0)));
        assert_eq!(inst.incident_count(), 0);
    }

    #[test]
    fn intersecting_flats_short_circuit() {
        let f1 = flat(&[&[0, 0, 0, 1], &[1, 0, 0, 0]]);
        let f2 = flat(&[&[0, 0, 0, 1], &[0, 1, 0, 0]]);
        assert!(matches!(
            build_instance(&[], &f1, &f2).unwrap(),
            BuildOutcome::IntersectingFlats
        ));
    }

    #[test]
    fn functional_vanishing_on_factor_is_incident() {
        let f1 = flat(&[&[0, 0, 0, 1], &[1, 0, 0, 0]]);
        let f2 = flat(&[&[0, 1, 0, 1], &[0, 0, 1, 0]]);
        // x2 = 0 contains the whole x-axis.
        let hs = [func(&[0, 1, 0, 0]), func(&[0, 1, 0, -2])];
        let BuildOutcome::Instance(inst) = build_instance(&hs, &f1, &f2).unwrap() else {
            panic!("flats are disjoint");
        };
        assert_eq!(inst.incident_count(), 1);
        assert_eq!(inst.incident(), &[0]);
        assert_eq!(inst.active().len(), 1);
        assert_eq!(inst.n_total(), 2);
    }

    #[test]
    fn unsupported_hdim_rejected() {
        let plane = flat(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]);
        let line = flat(&[&[0, 0, 0, 1], &[1, 0, 0, 0]]);
        assert_eq!(
            build_instance(&[], &plane, &line).unwrap_err(),
            Error::UnsupportedFlatDimension { hdim1: 3, hdim2: 2 }
        );
    }

    #[test]
    fn single_hyperplane_same_side_counts_zero() {
        let inst = product_instance(&[[1, 1, 1, 1]]);
        assert_eq!(inst.strict_crossing_count(&cv(1, 0), &cv(1, 0)), 0);
        assert_eq!(inst.strict_crossing_count(&cv(1, 0), &cv(-1, -1)), 1);
    }

    /// Instance on the coordinate product: factor1 = span{e1,e2}, factor2 =
    /// span{e3,e4} in R^4, so a functional (a,b,c,d) restricts to (a,b) and
    /// (c,d) directly.
    pub(crate) fn product_instance(rows: &[[i64; 4]]) -> CoveringInstance {
        let f1 = flat(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let f2 = flat(&[&[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let hs: Vec<ArrangementFunctional> = rows.iter().map(|r| func(r)).collect();
        match build_instance(&hs, &f1, &f2).unwrap() {
            BuildOutcome::Instance(inst) => inst,
            BuildOutcome::IntersectingFlats => panic!("coordinate factors are disjoint"),
        }
    }

    fn arb_dir() -> impl Strategy<Value = CircleVector> {
        (-9i64..=9, -9i64..=9)
            .prop_filter("nonzero", |(a, b)| *a != 0 || *b != 0)
            .prop_map(|(a, b)| cv(a, b))
    }

    fn arb_rows() -> impl Strategy<Value = Vec<[i64; 4]>> {
        proptest::collection::vec(
            [-5i64..=5, -5i64..=5, -5i64..=5, -5i64..=5]
                .prop_filter("nonvanishing on both factors", |r| {
                    (r[0] != 0 || r[1] != 0) && (r[2] != 0 || r[3] != 0)
                }),
            0..12,
        )
    }

    proptest! {
        #[test]
        fn antipodal_invariance(rows in arb_rows(), u1 in arb_dir(), u2 in arb_dir()) {
            let inst = product_instance(&rows);
            prop_assert_eq!(
                inst.strict_crossing_count(&u1, &u2),
                inst.strict_crossing_count(&u1.antipode(), &u2.antipode())
            );
        }

        #[test]
        fn complement_identity(rows in arb_rows(), u1 in arb_dir(), u2 in arb_dir()) {
            let inst = product_instance(&rows);
            let both_nonzero = inst
                .active()
                .iter()
                .filter(|h| h.sign1(&u1) != 0 && h.sign2(&u2) != 0)
                .count() as u64;
            prop_assert_eq!(
                inst.strict_crossing_count(&u1, &u2)
                    + inst.strict_crossing_count(&u1, &u2.antipode()),
                both_nonzero
            );
        }

        #[test]
        fn counts_ignore_positive_scaling(
            rows in arb_rows(),
            u1 in arb_dir(),
            u2 in arb_dir(),
            k in 1i64..40,
        ) {
            let inst = product_instance(&rows);
            let scaled = CircleVector::new(u1.alpha() * ri(k), u1.beta() * ri(k)).unwrap();
            prop_assert_eq!(
                inst.strict_crossing_count(&scaled, &u2),
                inst.strict_crossing_count(&u1, &u2)
            );
        }

        #[test]
        fn negating_a_functional_keeps_counts(
            rows in arb_rows(), u1 in arb_dir(), u2 in arb_dir(),
        ) {
            prop_assume!(!rows.is_empty());
            let mut negated = rows.clone();
            for x in negated[0].iter_mut() {
                *x = -*x;
            }
            let a = product_instance(&rows);
            let b = product_instance(&negated);
            prop_assert_eq!(
                a.strict_crossing_count(&u1, &u2),
                b.strict_crossing_count(&u1, &u2)
            );
        }
    }
}
