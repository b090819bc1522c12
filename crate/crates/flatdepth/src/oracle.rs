//! Independent ground-truth computations. `brute_force_min` answers covering
//! instances by exhausting every pair of open cells; `tukey2_primal` computes
//! planar Tukey depth directly in the primal with its own angular machinery;
//! `double_wedge_count` recounts a witness from raw signs. The solvers are
//! tested against these, never the other way around.

use crate::circle::CircleVector;
use crate::error::Error;
use crate::projective::{ArrangementFunctional, HomogeneousPoint};
use crate::rat::{sign, Rat};
use crate::reduce::{CoveringInstance, DepthResult};
use num_traits::{One, Signed, Zero};

/// One interior direction per open arc between consecutive boundaries.
/// `boundaries` must be deduplicated, closed under antipodes, and circularly
/// sorted; the empty set denotes the full circle, sampled at (1,0).
pub fn cell_midpoints(boundaries: &[CircleVector]) -> Vec<CircleVector> {
    if boundaries.is_empty() {
        return vec![CircleVector::unit()];
    }
    (0..boundaries.len())
        .map(|k| boundaries[k].gap_midpoint(&boundaries[(k + 1) % boundaries.len()]))
        .collect()
}

fn factor_candidates(inst: &CoveringInstance, factor: u8) -> Vec<CircleVector> {
    let hdim = if factor == 1 {
        inst.hdim1()
    } else {
        inst.hdim2()
    };
    if hdim == 2 {
        cell_midpoints(&inst.boundary_directions(factor))
    } else {
        vec![CircleVector::unit(), CircleVector::unit().antipode()]
    }
}

/// Exact minimum of the strict crossing count over all open cell pairs, by
/// exhaustion. Candidate interior points are evaluated through per-candidate
/// sign tables; the reported witness is the first minimizing pair in
/// candidate order.
pub fn brute_force_min(inst: &CoveringInstance) -> DepthResult {
    brute_force_min_jobs(inst, 1)
}

/// `brute_force_min` with the candidate-pair scan split across `jobs`
/// worker threads. The result is identical for every job count: workers
/// report (count, pair index) and the lexicographic minimum wins.
pub fn brute_force_min_jobs(inst: &CoveringInstance, jobs: usize) -> DepthResult {
    let cands1 = factor_candidates(inst, 1);
    let cands2 = factor_candidates(inst, 2);
    let signs1 = sign_table(inst, 1, &cands1);
    let signs2 = sign_table(inst, 2, &cands2);

    let total = cands1.len() * cands2.len();
    let jobs = jobs.max(1).min(total.max(1));
    let scan = |lo: usize, hi: usize| -> (u64, usize) {
        let mut best = (u64::MAX, usize::MAX);
        for flat in lo..hi {
            let (i, j) = (flat / cands2.len(), flat % cands2.len());
            let mut count = 0u64;
            for (s1, s2) in signs1[i].iter().zip(&signs2[j]) {
                if i32::from(*s1) * i32::from(*s2) == -1 {
                    count += 1;
                }
            }
            if count < best.0 {
                best = (count, flat);
            }
        }
        best
    };

    let (_, best_flat) = if jobs == 1 {
        scan(0, total)
    } else {
        let chunk = total.div_ceil(jobs);
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs)
                .map(|w| {
                    let scan = &scan;
                    s.spawn(move || scan(w * chunk, ((w + 1) * chunk).min(total)))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("scan worker panicked"))
                .min()
                .expect("at least one worker")
        })
    };

    let (i, j) = (best_flat / cands2.len(), best_flat % cands2.len());
    let strict = inst.strict_crossing_count(&cands1[i], &cands2[j]);
    DepthResult::from_strict(inst, strict, &cands1[i], &cands2[j])
}

fn sign_table(inst: &CoveringInstance, factor: u8, cands: &[CircleVector]) -> Vec<Vec<i8>> {
    cands
        .iter()
        .map(|c| {
            inst.active()
                .iter()
                .map(|h| if factor == 1 { h.sign1(c) } else { h.sign2(c) })
                .collect()
        })
        .collect()
}

/// Closed-halfplane Tukey depth of `q`, computed in the primal plane with
/// local direction arithmetic (nothing shared with the dual pipeline).
/// Points equal to q lie in every closed halfplane and contribute always;
/// the rest is minimized over the gap midpoints of the critical normal
/// multiset {±perp(p - q)}, where the count function is locally constant.
pub fn tukey2_primal(points: &[Vec<Rat>], q: &[Rat]) -> u64 {
    assert_eq!(q.len(), 2, "planar query point");
    let mut coincident = 0u64;
    let mut diffs: Vec<(Rat, Rat)> = Vec::new();
    for p in points {
        assert_eq!(p.len(), 2, "planar data points");
        let (dx, dy) = (&p[0] - &q[0], &p[1] - &q[1]);
        if dx.is_zero() && dy.is_zero() {
            coincident += 1;
        } else {
            diffs.push((dx, dy));
        }
    }
    if diffs.is_empty() {
        return coincident;
    }

    let upper = |v: &(Rat, Rat)| sign(&v.1) > 0 || (sign(&v.1) == 0 && sign(&v.0) > 0);
    let cross = |u: &(Rat, Rat), v: &(Rat, Rat)| -> Rat { &u.0 * &v.1 - &v.0 * &u.1 };
    // u before v when cross(u, v) > 0, i.e. zero < cross(u, v).
    let cmp = |u: &(Rat, Rat), v: &(Rat, Rat)| -> std::cmp::Ordering {
        match (upper(u), upper(v)) {
            (true, false) => std::cmp::Ordering::Less,
            (false, true) => std::cmp::Ordering::Greater,
            _ => Rat::zero().cmp(&cross(u, v)),
        }
    };

    let mut normals: Vec<(Rat, Rat)> = Vec::with_capacity(2 * diffs.len());
    for (dx, dy) in &diffs {
        normals.push((-dy.clone(), dx.clone()));
        normals.push((dy.clone(), -dx.clone()));
    }
    normals.sort_by(|a, b| cmp(a, b));
    normals.dedup_by(|a, b| cmp(a, b) == std::cmp::Ordering::Equal);

    let mut best = u64::MAX;
    for k in 0..normals.len() {
        let (w, wn) = (&normals[k], &normals[(k + 1) % normals.len()]);
        let antipodal = (&w.0 + &wn.0).is_zero() && (&w.1 + &wn.1).is_zero();
        let mid = if antipodal {
            (-w.1.clone(), w.0.clone())
        } else {
            (&w.0 + &wn.0, &w.1 + &wn.1)
        };
        let count = diffs
            .iter()
            .filter(|(dx, dy)| sign(&(&mid.0 * dx + &mid.1 * dy)) >= 0)
            .count() as u64;
        best = best.min(count);
    }
    coincident + best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WedgeMode {
    Strict,
    Closed,
}

/// Number of data points inside the double wedge bounded by the polar
/// hyperplanes of g1 and g2: strictly opposite signs, plus boundary points
/// in closed mode.
pub fn double_wedge_count(
    points: &[Vec<Rat>],
    g1: &ArrangementFunctional,
    g2: &ArrangementFunctional,
    mode: WedgeMode,
) -> Result<u64, Error> {
    let mut count = 0u64;
    for p in points {
        let lifted = HomogeneousPoint::lift_affine(p);
        let s1 = g1.sign_of(&lifted)?;
        let s2 = g2.sign_of(&lifted)?;
        let inside = match mode {
            WedgeMode::Strict => i32::from(s1) * i32::from(s2) == -1,
            WedgeMode::Closed => i32::from(s1) * i32::from(s2) == -1 || s1 == 0 || s2 == 0,
        };
        if inside {
            count += 1;
        }
    }
    Ok(count)
}

/// A primal line {x : a.x = b} in the plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateLine {
    pub a: (Rat, Rat),
    pub b: Rat,
}

impl CandidateLine {
    /// A point-direction description of the line (direction = perp of the
    /// normal), suitable for depth queries.
    pub fn point_and_direction(&self) -> (Vec<Rat>, Vec<Rat>) {
        let point = if !self.a.1.is_zero() {
            vec![Rat::zero(), &self.b / &self.a.1]
        } else {
            vec![&self.b / &self.a.0, Rat::zero()]
        };
        let direction = vec![-self.a.1.clone(), self.a.0.clone()];
        (point, direction)
    }

    fn residual(&self, p: &[Rat]) -> Rat {
        &self.a.0 * &p[0] + &self.a.1 * &p[1] - &self.b
    }
}

/// Candidate lines for maximizing depth over a planar point set: for every
/// pair of distinct points, the exact connecting line plus four perturbed
/// copies (intercept shifted by ±δ, normal tilted by ±δ toward the segment
/// direction, re-anchored at the segment midpoint). δ is computed exactly
/// per pair as a quarter of the smallest ratio |residual| / max(1, |v.(s-m)|)
/// over points s off the line, so every perturbation preserves the strict
/// side of every off-line point while splitting the on-line ones.
pub fn candidate_lines_2d(points: &[Vec<Rat>]) -> Result<Vec<CandidateLine>, Error> {
    let mut distinct: Vec<&Vec<Rat>> = Vec::new();
    for p in points {
        assert_eq!(p.len(), 2, "planar points");
        if !distinct.contains(&p) {
            distinct.push(p);
        }
    }
    if distinct.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: distinct.len(),
        });
    }

    let mut out = Vec::new();
    for i in 0..distinct.len() {
        for j in i + 1..distinct.len() {
            let (p, r) = (distinct[i], distinct[j]);
            let v = (&r[0] - &p[0], &r[1] - &p[1]);
            let a = (-v.1.clone(), v.0.clone());
            let base = CandidateLine {
                b: &a.0 * &p[0] + &a.1 * &p[1],
                a,
            };
            let m = (
                (&p[0] + &r[0]) / Rat::from_integer(2.into()),
                (&p[1] + &r[1]) / Rat::from_integer(2.into()),
            );

            let mut delta: Option<Rat> = None;
            for s in points {
                let res = base.residual(s);
                if res.is_zero() {
                    continue;
                }
                let drift = (&v.0 * (&s[0] - &m.0) + &v.1 * (&s[1] - &m.1)).abs();
                let bound = res.abs() / drift.max(Rat::one());
                delta = Some(match delta {
                    Some(d) => d.min(bound),
                    None => bound,
                });
            }
            let delta = delta.map_or_else(Rat::one, |d| d / Rat::from_integer(4.into()));

            out.push(CandidateLine {
                a: base.a.clone(),
                b: &base.b + &delta,
            });
            out.push(CandidateLine {
                a: base.a.clone(),
                b: &base.b - &delta,
            });
            for tilt_sign in [1i64, -1] {
                let t = &delta * Rat::from_integer(tilt_sign.into());
                let a_t = (&base.a.0 + &t * &v.0, &base.a.1 + &t * &v.1);
                let b_t = &a_t.0 * &m.0 + &a_t.1 * &m.1;
                out.push(CandidateLine { a: a_t, b: b_t });
            }
            out.push(base);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_from_i64 as ri, ratio};
    use proptest::prelude::*;

    fn cv(a: i64, b: i64) -> CircleVector {
        CircleVector::new(ri(a), ri(b)).unwrap()
    }

    fn pts(coords: &[[i64; 2]]) -> Vec<Vec<Rat>> {
        coords.iter().map(|p| vec![ri(p[0]), ri(p[1])]).collect()
    }

    #[test]
    fn midpoints_of_antipodal_pair() {
        assert_eq!(
            cell_midpoints(&[cv(0, 1), cv(0, -1)]),
            vec![cv(-1, 0), cv(1, 0)]
        );
        assert_eq!(cell_midpoints(&[]), vec![CircleVector::unit()]);
        let four = [cv(1, 0), cv(0, 1), cv(-1, 0), cv(0, -1)];
        assert_eq!(cell_midpoints(&four).len(), 4);
    }

    #[test]
    fn brute_force_trivial_cases() {
        use crate::reduce::tests::product_instance;
        let empty = product_instance(&[]);
        assert_eq!(brute_force_min(&empty).strict_min, 0);
        // A single hyperplane never separates: some same-sign pair exists.
        let one = product_instance(&[[1, 2, -1, 3]]);
        assert_eq!(brute_force_min(&one).strict_min, 0);
    }

    #[test]
    fn jobs_split_matches_sequential() {
        use crate::reduce::tests::product_instance;
        let inst = product_instance(&[
            [1, 0, 1, 0],
            [0, 1, 0, 1],
            [1, 1, -1, 2],
            [2, -1, 3, 1],
            [1, -2, -1, -1],
        ]);
        let solo = brute_force_min(&inst);
        for jobs in [2, 3, 8, 64] {
            let multi = brute_force_min_jobs(&inst, jobs);
            assert_eq!(multi.strict_min, solo.strict_min);
            assert_eq!(multi.distance, solo.distance);
        }
    }

    #[test]
    fn tukey_square_center() {
        let points = pts(&[[1, 0], [-1, 0], [0, 1], [0, -1]]);
        assert_eq!(tukey2_primal(&points, &[ri(0), ri(0)]), 2);
    }

    #[test]
    fn tukey_triangle_interior() {
        let points = pts(&[[0, 0], [1, 0], [0, 1]]);
        assert_eq!(tukey2_primal(&points, &[ratio(1, 3), ratio(1, 3)]), 1);
    }

    #[test]
    fn tukey_coincident_point_counts() {
        // q sits on one data point; the others lie far to one side.
        let points = pts(&[[0, 0], [10, 1], [11, -1], [12, 0]]);
        assert_eq!(tukey2_primal(&points, &[ri(0), ri(0)]), 1);
        // All points equal to q: depth n.
        let same = pts(&[[3, 4], [3, 4], [3, 4]]);
        assert_eq!(tukey2_primal(&same, &[ri(3), ri(4)]), 3);
        // Outside the hull: depth 0.
        assert_eq!(
            tukey2_primal(&pts(&[[1, 1], [2, 1], [1, 2]]), &[ri(-5), ri(0)]),
            0
        );
    }

    #[test]
    fn wedge_counts_strict_vs_closed() {
        let g1 = ArrangementFunctional::new(vec![ri(1), ri(0), ri(0)]).unwrap();
        let g2 = ArrangementFunctional::new(vec![ri(0), ri(1), ri(0)]).unwrap();
        // Both signs positive for every point: empty wedge either way.
        let outside = pts(&[[1, 1], [2, 3]]);
        assert_eq!(
            double_wedge_count(&outside, &g1, &g2, WedgeMode::Strict).unwrap(),
            0
        );
        assert_eq!(
            double_wedge_count(&outside, &g1, &g2, WedgeMode::Closed).unwrap(),
            0
        );
        // A point on g1 (x = 0) counts only in closed mode.
        let boundary = pts(&[[0, 5]]);
        assert_eq!(
            double_wedge_count(&boundary, &g1, &g2, WedgeMode::Strict).unwrap(),
            0
        );
        assert_eq!(
            double_wedge_count(&boundary, &g1, &g2, WedgeMode::Closed).unwrap(),
            1
        );
        // Opposite strict signs count in both.
        let inside = pts(&[[-1, 2]]);
        assert_eq!(
            double_wedge_count(&inside, &g1, &g2, WedgeMode::Strict).unwrap(),
            1
        );
    }

    #[test]
    fn two_points_give_five_candidates() {
        let cands = candidate_lines_2d(&pts(&[[0, 0], [2, 1]])).unwrap();
        assert_eq!(cands.len(), 5);
        assert_eq!(
            candidate_lines_2d(&pts(&[[1, 1], [1, 1]])),
            Err(Error::TooFewPoints { needed: 2, got: 1 })
        );
    }

    #[test]
    fn collinear_set_keeps_exact_line() {
        let points = pts(&[[0, 0], [1, 1], [2, 2], [3, 3]]);
        let cands = candidate_lines_2d(&points).unwrap();
        // The exact connecting line (all residuals zero) must be present.
        assert!(cands
            .iter()
            .any(|c| points.iter().all(|p| c.residual(p).is_zero())));
    }

    #[test]
    fn perturbed_lines_preserve_strict_sides() {
        let points = pts(&[[0, 0], [4, 1], [1, 3], [-2, 2], [3, -2]]);
        for chunk in candidate_lines_2d(&points).unwrap().chunks(5) {
            let base = &chunk[4];
            for cand in &chunk[..4] {
                for p in &points {
                    let s = sign(&base.residual(p));
                    if s != 0 {
                        assert_eq!(sign(&cand.residual(p)), s, "perturbation crossed {p:?}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn brute_force_invariant_under_permutation(
            rows in proptest::collection::vec(
                [-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4].prop_filter(
                    "nonvanishing on both factors",
                    |r| (r[0] != 0 || r[1] != 0) && (r[2] != 0 || r[3] != 0),
                ),
                1..8,
            ),
            seed in 0u64..1000,
        ) {
            use crate::reduce::tests::product_instance;
            let mut shuffled = rows.clone();
            // Any deterministic permutation driven by the seed.
            let n = shuffled.len();
            for i in 0..n {
                let j = (seed as usize + i * 7) % n;
                shuffled.swap(i, j);
            }
            prop_assert_eq!(
                brute_force_min(&product_instance(&rows)).strict_min,
                brute_force_min(&product_instance(&shuffled)).strict_min
            );
        }

        #[test]
        fn tukey_primal_never_exceeds_n(
            coords in proptest::collection::vec((-8i64..=8, -8i64..=8), 1..12),
            qx in -8i64..=8,
            qy in -8i64..=8,
        ) {
            let points: Vec<Vec<Rat>> =
                coords.iter().map(|(x, y)| vec![ri(*x), ri(*y)]).collect();
            let depth = tukey2_primal(&points, &[ri(qx), ri(qy)]);
            prop_assert!(depth <= points.len() as u64);
        }
    }
}
