//! Exact solvers for covering instances, dispatched on the factor
//! dimensions. The torus case rotates a direction around the first factor
//! circle; between consecutive events every hyperplane pins one open
//! semicircle on the second factor, maintained in a coverage segment tree
//! whose root minimum is the best cell of the current column. Total work is
//! O(n log n) tree updates plus the event sort.

use crate::circle::CircleVector;
use crate::error::Error;
use crate::rat::Rat;
use crate::reduce::{CoveringInstance, DepthResult};
use crate::segtree::CoverageSegmentTree;
use std::collections::{BTreeMap, HashMap};

/// Endpoints (start, end) of the open counterclockwise arc on which
/// sign(a·α + b·β) equals `side`.
fn semicircle(a: &Rat, b: &Rat, side: i8) -> (CircleVector, CircleVector) {
    debug_assert!(side == 1 || side == -1);
    let pos_start = CircleVector::new(b.clone(), -a.clone()).expect("restriction is nonzero");
    let pos_end = pos_start.antipode();
    if side > 0 {
        (pos_start, pos_end)
    } else {
        (pos_end, pos_start)
    }
}

/// Sorted boundary directions of one factor circle with index lookup;
/// leaf k of the matching segment tree is the open arc from dirs[k] to
/// dirs[k+1] (circularly).
struct CircleIndex {
    dirs: Vec<CircleVector>,
    index: HashMap<CircleVector, usize>,
}

impl CircleIndex {
    fn new(dirs: Vec<CircleVector>) -> Self {
        let index = dirs.iter().cloned().zip(0..).collect();
        CircleIndex { dirs, index }
    }

    fn len(&self) -> usize {
        self.dirs.len()
    }

    fn get(&self, d: &CircleVector) -> usize {
        *self
            .index
            .get(d)
            .expect("arc endpoints are boundary directions")
    }

    fn midpoint(&self, leaf: usize) -> CircleVector {
        self.dirs[leaf].gap_midpoint(&self.dirs[(leaf + 1) % self.dirs.len()])
    }
}

/// Dispatch on factor dimensions. Covering instances only exist with factor
/// hdim 1 or 2, so every case is covered; the (2,1) shape is solved with the
/// factors swapped and the witness swapped back.
pub fn solve(inst: &CoveringInstance) -> DepthResult {
    match (inst.hdim1(), inst.hdim2()) {
        (2, 2) => solve_torus(inst).expect("dims checked"),
        (1, 2) => solve_circle(inst).expect("dims checked"),
        (2, 1) => solve_circle(&inst.swapped())
            .expect("dims checked")
            .swapped(),
        _ => solve_point_pair(inst).expect("dims checked"),
    }
}

/// Rotational sweep over the first circle. Events are the boundary
/// directions of the active restrictions on factor 1; passing one flips the
/// restricted sign there, so the hyperplane's semicircle on factor 2 is
/// exchanged for its complement (one delete, one insert; a semicircle's
/// complement has the same endpoints in reverse order). The root minimum is
/// sampled once per open gap between consecutive events.
pub fn solve_torus(inst: &CoveringInstance) -> Result<DepthResult, Error> {
    if inst.hdim1() != 2 || inst.hdim2() != 2 {
        return Err(Error::UnsupportedFlatDimension {
            hdim1: inst.hdim1(),
            hdim2: inst.hdim2(),
        });
    }
    let active = inst.active();
    if active.is_empty() {
        return Ok(DepthResult::from_strict(
            inst,
            0,
            &CircleVector::unit(),
            &CircleVector::unit(),
        ));
    }

    let bounds2 = CircleIndex::new(inst.boundary_directions(2));
    let mut tree = CoverageSegmentTree::new(bounds2.len());

    let mut events: BTreeMap<CircleVector, Vec<usize>> = BTreeMap::new();
    for (k, h) in active.iter().enumerate() {
        let dir = CircleVector::new(-h.on1.1.clone(), h.on1.0.clone())
            .expect("active restrictions are nonzero");
        events.entry(dir.antipode()).or_default().push(k);
        events.entry(dir).or_default().push(k);
    }
    let events: Vec<(CircleVector, Vec<usize>)> = events.into_iter().collect();
    let m1 = events.len();
    debug_assert!(m1 >= 2 && m1.is_multiple_of(2));

    // The sweep starts inside the gap that wraps past the sort cut.
    let start = events[m1 - 1].0.gap_midpoint(&events[0].0);
    let mut side = Vec::with_capacity(active.len());
    let mut arcs = Vec::with_capacity(active.len());
    for h in active {
        let s = h.sign1(&start);
        debug_assert!(s != 0, "gap interiors avoid every boundary");
        let (from, to) = semicircle(&h.on2.0, &h.on2.1, -s);
        let arc = (bounds2.get(&from), bounds2.get(&to));
        tree.insert_circular(arc.0, arc.1);
        side.push(s);
        arcs.push(arc);
    }

    let first_sample = tree.root_min();
    let mut best = first_sample;
    let mut best_c1 = start;
    let mut best_leaf = tree.argmin_leaf();
    for k in 0..m1 {
        for &hi in &events[k].1 {
            let (i, j) = arcs[hi];
            tree.delete_circular(i, j);
            tree.insert_circular(j, i);
            arcs[hi] = (j, i);
            side[hi] = -side[hi];
        }
        // The gap after the last event is the starting gap, already sampled.
        if k + 1 < m1 {
            let sample = tree.root_min();
            if sample < best {
                best = sample;
                best_c1 = events[k].0.gap_midpoint(&events[k + 1].0);
                best_leaf = tree.argmin_leaf();
            }
        }
    }
    // Every hyperplane flipped twice: the tree must be back where it began.
    debug_assert_eq!(tree.root_min(), first_sample);
    debug_assert!(side.iter().all(|&s| s != 0));

    let c2 = bounds2.midpoint(best_leaf);
    Ok(DepthResult::from_strict(inst, best as u64, &best_c1, &c2))
}

/// One factor is S⁰: fix its positive basis direction (the antipodal copy
/// is equivalent) and minimize over the arcs of the other circle with a
/// difference array over the sorted boundaries.
pub fn solve_circle(inst: &CoveringInstance) -> Result<DepthResult, Error> {
    if inst.hdim1() != 1 || inst.hdim2() != 2 {
        return Err(Error::UnsupportedFlatDimension {
            hdim1: inst.hdim1(),
            hdim2: inst.hdim2(),
        });
    }
    let fixed = CircleVector::unit();
    let active = inst.active();
    if active.is_empty() {
        return Ok(DepthResult::from_strict(
            inst,
            0,
            &fixed,
            &CircleVector::unit(),
        ));
    }

    let bounds2 = CircleIndex::new(inst.boundary_directions(2));
    let m = bounds2.len();
    let mut enters = vec![0i64; m];
    let mut exits = vec![0i64; m];
    let mut wrapping = 0i64;
    for h in active {
        let s = h.sign1(&fixed);
        debug_assert!(s != 0, "active restrictions do not vanish on the S⁰ factor");
        let (from, to) = semicircle(&h.on2.0, &h.on2.1, -s);
        let (i, j) = (bounds2.get(&from), bounds2.get(&to));
        enters[i] += 1;
        exits[j] += 1;
        if i > j {
            wrapping += 1;
        }
    }
    // Walk the leaves once; leaf k inherits the arcs alive at its left
    // boundary: those that entered minus those that ended, with wrapping
    // arcs pre-counted into leaf 0.
    let mut run = wrapping;
    let mut best = i64::MAX;
    let mut best_leaf = 0;
    for k in 0..m {
        run += enters[k] - exits[k];
        if run < best {
            best = run;
            best_leaf = k;
        }
    }
    let c2 = bounds2.midpoint(best_leaf);
    Ok(DepthResult::from_strict(inst, best as u64, &fixed, &c2))
}

/// Both factors are S⁰: by antipodal invariance only the relative sign
/// matters, so two evaluations decide.
pub fn solve_point_pair(inst: &CoveringInstance) -> Result<DepthResult, Error> {
    if inst.hdim1() != 1 || inst.hdim2() != 1 {
        return Err(Error::UnsupportedFlatDimension {
            hdim1: inst.hdim1(),
            hdim2: inst.hdim2(),
        });
    }
    let plus = CircleVector::unit();
    let minus = plus.antipode();
    let same = inst.strict_crossing_count(&plus, &plus);
    let opposite = inst.strict_crossing_count(&plus, &minus);
    if same <= opposite {
        Ok(DepthResult::from_strict(inst, same, &plus, &plus))
    } else {
        Ok(DepthResult::from_strict(inst, opposite, &plus, &minus))
    }
}
