//! Segment tree over the open arcs between consecutive boundary directions
//! of a circle, supporting insert/delete of arcs given as circular leaf
//! ranges and O(1) queries for the minimum total coverage. Node fields:
//! `cover` (arcs stored exactly at this node) and `min_below` (minimum,
//! over leaves in the subtree, of the coverage contributed by this node and
//! everything beneath it).

/// Sentinel for padding leaves so they never win a minimum query.
const UNREACHABLE: i64 = i64::MAX / 4;

#[derive(Debug, Clone)]
pub struct CoverageSegmentTree {
    leaves: usize,
    size: usize,
    cover: Vec<i64>,
    min_below: Vec<i64>,
}

impl CoverageSegmentTree {
    /// Tree over `leaves` elementary arcs, all coverage zero. The leaf count
    /// is padded to a power of two internally; padding never affects minima.
    pub fn new(leaves: usize) -> Self {
        assert!(leaves >= 1, "a circle has at least one open arc");
        let size = leaves.next_power_of_two();
        let mut min_below = vec![0i64; 2 * size];
        for pad in leaves..size {
            min_below[size + pad] = UNREACHABLE;
        }
        for v in (1..size).rev() {
            min_below[v] = min_below[2 * v].min(min_below[2 * v + 1]);
        }
        CoverageSegmentTree {
            leaves,
            size,
            cover: vec![0; 2 * size],
            min_below,
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves
    }

    pub fn root_min(&self) -> i64 {
        self.min_below[1]
    }

    /// Insert the circular arc of leaves i, i+1, ..., j-1 (indices mod len).
    /// Endpoints must differ; a wrapping arc splits into two linear ranges.
    pub fn insert_circular(&mut self, i: usize, j: usize) {
        self.apply_circular(i, j, 1);
    }

    /// Remove a previously inserted arc. Removing an absent arc trips a
    /// debug assertion (coverage would go negative).
    pub fn delete_circular(&mut self, i: usize, j: usize) {
        self.apply_circular(i, j, -1);
    }

    fn apply_circular(&mut self, i: usize, j: usize, delta: i64) {
        assert!(
            i < self.leaves && j < self.leaves && i != j,
            "arc endpoints must be distinct leaves"
        );
        if i < j {
            self.apply_range(i, j, delta);
        } else {
            self.apply_range(i, self.leaves, delta);
            if j > 0 {
                self.apply_range(0, j, delta);
            }
        }
        debug_assert!(self.validate(), "tree invariant broken");
    }

    /// Add `delta` to the coverage of leaves [l, r).
    fn apply_range(&mut self, l: usize, r: usize, delta: i64) {
        debug_assert!(l < r && r <= self.leaves);
        let (mut lo, mut hi) = (l + self.size, r + self.size);
        let (path_l, path_r) = (lo, hi - 1);
        while lo < hi {
            if lo & 1 == 1 {
                self.bump(lo, delta);
                lo += 1;
            }
            if hi & 1 == 1 {
                hi -= 1;
                self.bump(hi, delta);
            }
            lo /= 2;
            hi /= 2;
        }
        self.pull_up(path_l);
        self.pull_up(path_r);
    }

    fn bump(&mut self, v: usize, delta: i64) {
        self.cover[v] += delta;
        debug_assert!(self.cover[v] >= 0, "deleted an arc that was not present");
        self.refresh(v);
    }

    fn refresh(&mut self, v: usize) {
        self.min_below[v] = if v >= self.size {
            let base = if v - self.size < self.leaves {
                0
            } else {
                UNREACHABLE
            };
            self.cover[v] + base
        } else {
            self.cover[v] + self.min_below[2 * v].min(self.min_below[2 * v + 1])
        };
    }

    fn pull_up(&mut self, leaf_slot: usize) {
        let mut v = leaf_slot / 2;
        while v >= 1 {
            self.refresh(v);
            v /= 2;
        }
    }

    /// A leaf attaining the root minimum: descend into the child with the
    /// smaller subtree minimum, left on ties.
    pub fn argmin_leaf(&self) -> usize {
        let mut v = 1;
        while v < self.size {
            v = if self.min_below[2 * v] <= self.min_below[2 * v + 1] {
                2 * v
            } else {
                2 * v + 1
            };
        }
        let leaf = v - self.size;
        debug_assert!(leaf < self.leaves, "minimum attained on a padding leaf");
        leaf
    }

    /// Total coverage of one leaf: sum of `cover` along its root path.
    pub fn leaf_coverage(&self, leaf: usize) -> i64 {
        assert!(leaf < self.leaves);
        let mut v = leaf + self.size;
        let mut total = 0;
        while v >= 1 {
            total += self.cover[v];
            v /= 2;
        }
        total
    }

    /// Full recomputation of every subtree minimum; true when the stored
    /// fields match and no coverage is negative.
    pub fn validate(&self) -> bool {
        if self.cover.iter().any(|&c| c < 0) {
            return false;
        }
        if (self.leaves..self.size).any(|pad| self.cover[self.size + pad] != 0) {
            return false;
        }
        let mut expect = vec![0i64; 2 * self.size];
        for leaf in 0..self.size {
            let base = if leaf < self.leaves { 0 } else { UNREACHABLE };
            expect[self.size + leaf] = self.cover[self.size + leaf] + base;
        }
        for v in (1..self.size).rev() {
            expect[v] = self.cover[v] + expect[2 * v].min(expect[2 * v + 1]);
        }
        expect == self.min_below
    }
}
