//! Deterministic instance generation.
//!
//! The PRNG is SplitMix64 with the reference constants, implemented here so
//! the byte stream is fixed by this file alone: equal seeds give equal
//! instances on every platform and toolchain.

use crate::depth::AffineFlatSpec;
use crate::io::{InstanceData, InstanceFile, QuerySpec};
use crate::linalg;
use crate::projective::primitive_scale;
use crate::rat::{rat_from_i64, Rat};
use num_traits::Zero;

pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from [0, bound), rejecting the overhang so no residue
    /// class is favored.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let limit = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < limit {
                return x % bound;
            }
        }
    }

    /// Uniform draw from the inclusive range [lo, hi].
    pub fn int_between(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi as i128 - lo as i128 + 1) as u128;
        if span > u64::MAX as u128 {
            return self.next_u64() as i64;
        }
        lo.wrapping_add(self.below(span as u64) as i64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    DepthLine3,
    DepthLine2,
    Tukey2,
    CrossDist,
}

impl GenKind {
    pub fn name(self) -> &'static str {
        match self {
            GenKind::DepthLine3 => "depth-line3",
            GenKind::DepthLine2 => "depth-line2",
            GenKind::Tukey2 => "tukey2",
            GenKind::CrossDist => "crossdist",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "depth-line3" => Some(GenKind::DepthLine3),
            "depth-line2" => Some(GenKind::DepthLine2),
            "tukey2" => Some(GenKind::Tukey2),
            "crossdist" => Some(GenKind::CrossDist),
            _ => None,
        }
    }
}

/// Natural query for a dimension: line depth in 2 and 3, crossing distance
/// elsewhere.
pub fn default_kind(dim: usize) -> GenKind {
    match dim {
        3 => GenKind::DepthLine3,
        2 => GenKind::DepthLine2,
        _ => GenKind::CrossDist,
    }
}

#[derive(Debug, Clone)]
pub struct GenConfig {
    pub seed: u64,
    pub n: usize,
    pub dim: usize,
    pub coord_bound: i64,
    pub kind: GenKind,
    /// Deliberately violate general position: duplicate points, points on
    /// the query flat, hyperplanes containing it, parallel flats.
    pub degenerate: bool,
}

fn rand_point(rng: &mut SplitMix64, dim: usize, bound: i64) -> Vec<Rat> {
    (0..dim)
        .map(|_| rat_from_i64(rng.int_between(-bound, bound)))
        .collect()
}

fn rand_nonzero(rng: &mut SplitMix64, dim: usize, bound: i64) -> Vec<Rat> {
    loop {
        let v = rand_point(rng, dim, bound);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

fn rand_distinct_pair(rng: &mut SplitMix64, dim: usize, bound: i64) -> (Vec<Rat>, Vec<Rat>) {
    let p = rand_point(rng, dim, bound);
    loop {
        let q = rand_point(rng, dim, bound);
        if q != p {
            return (p, q);
        }
    }
}

fn point_on_line(rng: &mut SplitMix64, p: &[Rat], q: &[Rat], bound: i64) -> Vec<Rat> {
    let t = rat_from_i64(rng.int_between(-bound, bound));
    p.iter().zip(q).map(|(a, b)| a + &t * (b - a)).collect()
}

/// Integer functional vanishing on both lifted points, i.e. an affine
/// hyperplane through the segment. None when the only solutions are at
/// infinity.
fn hyperplane_through(rng: &mut SplitMix64, p: &[Rat], q: &[Rat]) -> Option<(Vec<Rat>, Rat)> {
    let d = p.len();
    let lift = |v: &[Rat]| {
        let mut row: Vec<Rat> = v.to_vec();
        row.push(rat_from_i64(1));
        row
    };
    let kernel = linalg::kernel_basis(&[lift(p), lift(q)], d + 1);
    for _ in 0..64 {
        let mut g = vec![Rat::zero(); d + 1];
        for k in &kernel {
            let c = rat_from_i64(rng.int_between(-3, 3));
            for (gi, ki) in g.iter_mut().zip(k) {
                *gi += &c * ki;
            }
        }
        if g[..d].iter().all(Zero::is_zero) {
            continue;
        }
        let g = primitive_scale(&g);
        let rhs = -g[d].clone();
        return Some((g[..d].to_vec(), rhs));
    }
    None
}

fn gen_line_query(
    rng: &mut SplitMix64,
    cfg: &GenConfig,
    dim: usize,
) -> (Vec<Vec<Rat>>, AffineFlatSpec) {
    let b = cfg.coord_bound;
    let (p, q) = rand_distinct_pair(rng, dim, b);
    let mut points = Vec::with_capacity(cfg.n);
    for i in 0..cfg.n {
        if cfg.degenerate && i % 3 == 0 {
            points.push(point_on_line(rng, &p, &q, b));
        } else if cfg.degenerate && i % 3 == 1 && !points.is_empty() {
            points.push(points[0].clone());
        } else {
            points.push(rand_point(rng, dim, b));
        }
    }
    (points, AffineFlatSpec::Points(vec![p, q]))
}

pub fn generate(cfg: &GenConfig) -> InstanceFile {
    let mut rng = SplitMix64::new(cfg.seed);
    let b = cfg.coord_bound.max(1);
    let cfg = GenConfig {
        coord_bound: b,
        ..cfg.clone()
    };
    match cfg.kind {
        GenKind::DepthLine3 => {
            let (points, line) = gen_line_query(&mut rng, &cfg, 3);
            InstanceFile {
                dimension: 3,
                data: InstanceData::Points(points),
                query: Some(QuerySpec::DepthLine3 { line }),
            }
        }
        GenKind::DepthLine2 => {
            let (points, line) = gen_line_query(&mut rng, &cfg, 2);
            InstanceFile {
                dimension: 2,
                data: InstanceData::Points(points),
                query: Some(QuerySpec::DepthLine2 { line }),
            }
        }
        GenKind::Tukey2 => {
            let mut points: Vec<Vec<Rat>> = Vec::with_capacity(cfg.n);
            for i in 0..cfg.n {
                if cfg.degenerate && i % 4 == 1 && !points.is_empty() {
                    points.push(points[0].clone());
                } else if cfg.degenerate && i % 4 == 3 && points.len() >= 2 {
                    points.push(point_on_line(&mut rng, &points[0], &points[1], 2));
                } else {
                    points.push(rand_point(&mut rng, 2, b));
                }
            }
            let at = if cfg.degenerate && !points.is_empty() {
                points[0].clone()
            } else {
                rand_point(&mut rng, 2, b)
            };
            InstanceFile {
                dimension: 2,
                data: InstanceData::Points(points),
                query: Some(QuerySpec::Tukey2 { at }),
            }
        }
        GenKind::CrossDist => {
            let dim = cfg.dim.max(2);
            let (p, q) = rand_distinct_pair(&mut rng, dim, b);
            let flat_a = AffineFlatSpec::Points(vec![p.clone(), q.clone()]);
            let flat_b = if cfg.degenerate && rng.below(2) == 0 {
                // Parallel translate: meets flat_a at infinity.
                let shift = rand_nonzero(&mut rng, dim, b);
                let moved =
                    |v: &[Rat]| -> Vec<Rat> { v.iter().zip(&shift).map(|(a, s)| a + s).collect() };
                AffineFlatSpec::Points(vec![moved(&p), moved(&q)])
            } else {
                let (r, s) = rand_distinct_pair(&mut rng, dim, b);
                AffineFlatSpec::Points(vec![r, s])
            };
            let mut planes = Vec::with_capacity(cfg.n);
            for i in 0..cfg.n {
                if cfg.degenerate && i % 3 == 0 {
                    if let Some(h) = hyperplane_through(&mut rng, &p, &q) {
                        planes.push(h);
                        continue;
                    }
                }
                let coeffs = rand_nonzero(&mut rng, dim, b);
                let rhs = rat_from_i64(rng.int_between(-b, b));
                planes.push((coeffs, rhs));
            }
            InstanceFile {
                dimension: dim,
                data: InstanceData::Hyperplanes(planes),
                query: Some(QuerySpec::CrossDist { flat_a, flat_b }),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::instance_to_json;

    #[test]
    fn splitmix_reference_stream() {
        let mut r = SplitMix64::new(0);
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(r.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(r.next_u64(), 0x06C4_5D18_8009_454F);
        assert_eq!(r.next_u64(), 0xF88B_B8A8_724C_81EC);

        let mut r = SplitMix64::new(0x0123_4567_89AB_CDEF);
        assert_eq!(r.next_u64(), 0x157A_3807_A48F_AA9D);
        assert_eq!(r.next_u64(), 0xD573_529B_34A1_D093);
        assert_eq!(r.next_u64(), 0x2F90_B72E_996D_CCBE);
    }

    #[test]
    fn bounded_draws_stay_in_range() {
        let mut r = SplitMix64::new(42);
        let mut seen_lo = false;
        let mut seen_hi = false;
        for _ in 0..2000 {
            let v = r.int_between(-3, 3);
            assert!((-3..=3).contains(&v));
            seen_lo |= v == -3;
            seen_hi |= v == 3;
        }
        assert!(seen_lo && seen_hi);
        assert_eq!(r.below(1), 0);
    }

    #[test]
    fn generation_is_deterministic() {
        for kind in [
            GenKind::DepthLine3,
            GenKind::DepthLine2,
            GenKind::Tukey2,
            GenKind::CrossDist,
        ] {
            for degenerate in [false, true] {
                let cfg = GenConfig {
                    seed: 7,
                    n: 12,
                    dim: 4,
                    coord_bound: 50,
                    kind,
                    degenerate,
                };
                let a = instance_to_json(&generate(&cfg));
                let b = instance_to_json(&generate(&cfg));
                assert_eq!(a, b);
                let other = instance_to_json(&generate(&GenConfig { seed: 8, ..cfg }));
                assert_ne!(a, other);
            }
        }
    }

    #[test]
    fn generated_instances_answer_cleanly() {
        for kind in [
            GenKind::DepthLine3,
            GenKind::DepthLine2,
            GenKind::Tukey2,
            GenKind::CrossDist,
        ] {
            for degenerate in [false, true] {
                for seed in 0..8u64 {
                    let cfg = GenConfig {
                        seed,
                        n: 9,
                        dim: 3,
                        coord_bound: 12,
                        kind,
                        degenerate,
                    };
                    let inst = generate(&cfg);
                    let query = inst.query.clone().expect("generated query");
                    crate::io::answer(&inst, &query).expect("generated instance answers");
                }
            }
        }
    }

    #[test]
    fn degenerate_hyperplanes_really_contain_the_flat() {
        let mut rng = SplitMix64::new(5);
        let p = vec![rat_from_i64(1), rat_from_i64(2), rat_from_i64(3)];
        let q = vec![rat_from_i64(-1), rat_from_i64(0), rat_from_i64(4)];
        let (coeffs, rhs) = hyperplane_through(&mut rng, &p, &q).unwrap();
        for pt in [&p, &q] {
            let lhs: Rat = coeffs.iter().zip(pt.iter()).map(|(a, x)| a * x).sum();
            assert_eq!(lhs, rhs);
        }
    }
}
