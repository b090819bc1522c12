//! Public queries: crossing distance between flats of an arrangement,
//! regression depth of lines, and planar Tukey depth. Each query builds the
//! dual instance, dispatches to a solver, and reports the witness both in
//! homogeneous coordinates and as a primal double wedge.

use crate::error::Error;
use crate::projective::{ArrangementFunctional, HomogeneousPoint, ProjectiveFlat};
use crate::rat::Rat;
use crate::reduce::{
    build_instance, dual_flat_of_line, dual_of_point, functional_of_affine_hyperplane,
    vertical_infinity_flat, BuildOutcome, DepthResult, Witness,
};
use crate::sweep;
use num_traits::Zero;

/// User-level description of a flat of dimension 0 or 1: one or two affine
/// points, a point with a direction, or raw homogeneous vectors (which may
/// place the flat at infinity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineFlatSpec {
    Points(Vec<Vec<Rat>>),
    PointDirection {
        point: Vec<Rat>,
        direction: Vec<Rat>,
    },
    Homogeneous(Vec<Vec<Rat>>),
}

impl AffineFlatSpec {
    pub fn ambient_dim(&self) -> Result<usize, Error> {
        let empty = || Error::DegenerateFlatSpec("flat needs at least one defining vector".into());
        match self {
            AffineFlatSpec::Points(ps) => ps.first().map(Vec::len).ok_or_else(empty),
            AffineFlatSpec::PointDirection { point, .. } => Ok(point.len()),
            AffineFlatSpec::Homogeneous(vs) => vs
                .first()
                .map(|v| v.len().saturating_sub(1))
                .ok_or_else(empty),
        }
    }

    pub fn to_flat(&self, d: usize) -> Result<ProjectiveFlat, Error> {
        let arity = |v: &[Rat], want: usize| {
            if v.len() == want {
                Ok(())
            } else {
                Err(Error::DimensionMismatch {
                    expected: want,
                    got: v.len(),
                })
            }
        };
        let basis = match self {
            AffineFlatSpec::Points(ps) => {
                if ps.is_empty() || ps.len() > 2 {
                    return Err(Error::DegenerateFlatSpec(format!(
                        "expected one or two defining points, got {}",
                        ps.len()
                    )));
                }
                for p in ps {
                    arity(p, d)?;
                }
                let lifted: Vec<HomogeneousPoint> = ps
                    .iter()
                    .map(|p| HomogeneousPoint::lift_affine(p))
                    .collect();
                if lifted.len() == 2 && lifted[0].projectively_eq(&lifted[1]) {
                    return Err(Error::CoincidentPoints);
                }
                lifted
            }
            AffineFlatSpec::PointDirection { point, direction } => {
                arity(point, d)?;
                arity(direction, d)?;
                let dir = HomogeneousPoint::direction(direction)
                    .map_err(|_| Error::DegenerateFlatSpec("direction must be nonzero".into()))?;
                vec![HomogeneousPoint::lift_affine(point), dir]
            }
            AffineFlatSpec::Homogeneous(vs) => {
                if vs.is_empty() || vs.len() > 2 {
                    return Err(Error::DegenerateFlatSpec(format!(
                        "expected one or two homogeneous vectors, got {}",
                        vs.len()
                    )));
                }
                for v in vs {
                    arity(v, d + 1)?;
                }
                vs.iter()
                    .map(|v| HomogeneousPoint::new(v.clone()))
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        ProjectiveFlat::new(basis)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    Torus,
    Circle,
    PointPair,
    /// Brute-force reference solver.
    Oracle,
    /// The factor flats meet; no sweep ran.
    Intersecting,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Torus => "torus",
            SolverKind::Circle => "circle",
            SolverKind::PointPair => "point-pair",
            SolverKind::Oracle => "oracle",
            SolverKind::Intersecting => "intersecting",
        }
    }
}

/// Which solver a query runs: the sweep, or the exhaustive reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveEngine {
    Sweep,
    Brute { jobs: usize },
}

/// An affine hyperplane {x : coeffs.x = rhs}, or the hyperplane at infinity
/// when all coefficients vanish (no affine solutions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimalHyperplane {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
    pub at_infinity: bool,
}

/// The primal double wedge certifying a result: the polar hyperplanes of the
/// two witness directions and the strict count they realize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimalWitness {
    pub bound_a: PrimalHyperplane,
    pub bound_b: PrimalHyperplane,
    pub count: u64,
}

/// Polar hyperplane of a homogeneous witness point: coefficients are the
/// first d coordinates, the last coordinate is the negated offset.
pub fn witness_to_primal(
    u1: &HomogeneousPoint,
    u2: &HomogeneousPoint,
    count: u64,
) -> PrimalWitness {
    let polar = |u: &HomogeneousPoint| {
        let c = u.coords();
        let d = c.len() - 1;
        PrimalHyperplane {
            coeffs: c[..d].to_vec(),
            rhs: -c[d].clone(),
            at_infinity: c[..d].iter().all(Zero::is_zero),
        }
    };
    PrimalWitness {
        bound_a: polar(u1),
        bound_b: polar(u2),
        count,
    }
}

#[derive(Debug, Clone)]
pub struct DepthReport {
    pub result: DepthResult,
    pub primal: Option<PrimalWitness>,
    pub solver: SolverKind,
    pub n: usize,
    pub d: usize,
}

fn run(
    functionals: &[ArrangementFunctional],
    f1: &ProjectiveFlat,
    f2: &ProjectiveFlat,
) -> Result<DepthReport, Error> {
    run_engine(functionals, f1, f2, SolveEngine::Sweep)
}

pub(crate) fn run_engine(
    functionals: &[ArrangementFunctional],
    f1: &ProjectiveFlat,
    f2: &ProjectiveFlat,
    engine: SolveEngine,
) -> Result<DepthReport, Error> {
    let n = functionals.len();
    let d = f1.ambient_dim();
    match build_instance(functionals, f1, f2)? {
        BuildOutcome::IntersectingFlats => Ok(DepthReport {
            result: DepthResult::intersecting(),
            primal: None,
            solver: SolverKind::Intersecting,
            n,
            d,
        }),
        BuildOutcome::Instance(inst) => {
            let (solver, result) = match engine {
                SolveEngine::Sweep => {
                    let kind = match (inst.hdim1(), inst.hdim2()) {
                        (2, 2) => SolverKind::Torus,
                        (1, 1) => SolverKind::PointPair,
                        _ => SolverKind::Circle,
                    };
                    (kind, sweep::solve(&inst))
                }
                SolveEngine::Brute { jobs } => (
                    SolverKind::Oracle,
                    crate::oracle::brute_force_min_jobs(&inst, jobs),
                ),
            };
            let primal = match &result.witness {
                Witness::Pair { u1, u2, .. } => Some(witness_to_primal(u1, u2, result.strict_min)),
                Witness::IntersectingFlats => None,
            };
            Ok(DepthReport {
                result,
                primal,
                solver,
                n,
                d,
            })
        }
    }
}

/// Fewest arrangement hyperplanes crossed by a segment with one endpoint on
/// each flat, zero when the flats meet (possibly at infinity).
pub fn crossing_distance(
    hyperplanes: &[(Vec<Rat>, Rat)],
    flat_a: &AffineFlatSpec,
    flat_b: &AffineFlatSpec,
) -> Result<DepthReport, Error> {
    let d = flat_a.ambient_dim()?;
    let d_b = flat_b.ambient_dim()?;
    if d_b != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: d_b,
        });
    }
    let (fa, fb) = flats_crossdist(flat_a, flat_b, d)?;
    let hs = hyperplanes
        .iter()
        .map(|(a, b)| {
            if a.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: a.len(),
                });
            }
            functional_of_affine_hyperplane(a, b)
        })
        .collect::<Result<Vec<_>, _>>()?;
    run(&hs, &fa, &fb)
}

fn line_flat(line: &AffineFlatSpec, d: usize) -> Result<ProjectiveFlat, Error> {
    let f = line.to_flat(d)?;
    if f.hdim() != 2 {
        return Err(Error::DegenerateFlatSpec(
            "a line needs two distinct points or a point and a direction".into(),
        ));
    }
    Ok(f)
}

// The flat pairs below are shared with witness verification, which recounts
// crossings against the same construction without rerunning a solver.

pub(crate) fn flats_line3(
    line: &AffineFlatSpec,
) -> Result<(ProjectiveFlat, ProjectiveFlat), Error> {
    let lf = line_flat(line, 3)?;
    let f1 = dual_flat_of_line(&lf.basis()[0], &lf.basis()[1])?;
    Ok((f1, vertical_infinity_flat(3, 1)?))
}

pub(crate) fn flats_line2(
    line: &AffineFlatSpec,
) -> Result<(ProjectiveFlat, ProjectiveFlat), Error> {
    let lf = line_flat(line, 2)?;
    Ok((lf.orthogonal_complement(), vertical_infinity_flat(2, 1)?))
}

pub(crate) fn flats_tukey2(q: &[Rat]) -> Result<(ProjectiveFlat, ProjectiveFlat), Error> {
    if q.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: q.len(),
        });
    }
    let qf = ProjectiveFlat::new(vec![HomogeneousPoint::lift_affine(q)])
        .expect("a lifted point is nonzero");
    Ok((qf.orthogonal_complement(), vertical_infinity_flat(2, 0)?))
}

pub(crate) fn flats_crossdist(
    flat_a: &AffineFlatSpec,
    flat_b: &AffineFlatSpec,
    d: usize,
) -> Result<(ProjectiveFlat, ProjectiveFlat), Error> {
    Ok((flat_a.to_flat(d)?, flat_b.to_flat(d)?))
}

fn point_duals(points: &[Vec<Rat>], d: usize) -> Result<Vec<ArrangementFunctional>, Error> {
    points
        .iter()
        .map(|p| {
            if p.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: p.len(),
                });
            }
            Ok(dual_of_point(p))
        })
        .collect()
}

/// Regression depth of a line fit in R³ (explanatory x₁, responses x₂, x₃):
/// crossing distance between the line's dual flat and the vertical-infinity
/// flat. Data points on the line count through `incident_count`; lines that
/// are regression failures come back with distance zero.
pub fn regression_depth_line3(
    points: &[Vec<Rat>],
    line: &AffineFlatSpec,
) -> Result<DepthReport, Error> {
    let (f1, f2) = flats_line3(line)?;
    run(&point_duals(points, 3)?, &f1, &f2)
}

/// Regression depth of a line fit in the plane (explanatory x₁, response
/// x₂). The line dualizes to a point, so the sweep runs on one circle.
pub fn regression_depth_line2(
    points: &[Vec<Rat>],
    line: &AffineFlatSpec,
) -> Result<DepthReport, Error> {
    let (f1, f2) = flats_line2(line)?;
    run(&point_duals(points, 2)?, &f1, &f2)
}

/// Closed-halfplane Tukey depth of q: crossing distance between the dual
/// line of q and the point dual to the hyperplane at infinity.
pub fn tukey_depth2(points: &[Vec<Rat>], q: &[Rat]) -> Result<DepthReport, Error> {
    let (f1, f2) = flats_tukey2(q)?;
    run(&point_duals(points, 2)?, &f1, &f2)
}
