//! Directions on the unit circle of a 2-dimensional flat with a fixed basis
//! (b1, b2): the pair (α, β) stands for α·b1 + β·b2. Comparisons are exact
//! sign computations, never angles.

use crate::error::Error;
use crate::rat::{sign, Rat};
use num_traits::{One, Zero};
use std::cmp::Ordering;

/// A nonzero direction (α, β), kept in canonical form: primitive integers,
/// rescaled by a positive factor only. Canonicalization never flips sign, so
/// a direction and its antipode stay distinct; they parametrize different
/// points of the double cover.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircleVector {
    alpha: Rat,
    beta: Rat,
}

impl CircleVector {
    pub fn new(alpha: Rat, beta: Rat) -> Result<Self, Error> {
        if alpha.is_zero() && beta.is_zero() {
            return Err(Error::ZeroVector);
        }
        let prim = crate::projective::primitive_scale(&[alpha, beta]);
        let mut it = prim.into_iter();
        Ok(Self {
            alpha: it.next().unwrap(),
            beta: it.next().unwrap(),
        })
    }

    pub fn unit() -> Self {
        Self {
            alpha: Rat::one(),
            beta: Rat::zero(),
        }
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    pub fn beta(&self) -> &Rat {
        &self.beta
    }

    pub fn coords(&self) -> [Rat; 2] {
        [self.alpha.clone(), self.beta.clone()]
    }

    pub fn antipode(&self) -> Self {
        Self {
            alpha: -self.alpha.clone(),
            beta: -self.beta.clone(),
        }
    }

    /// Quarter turn counterclockwise: (α, β) to (−β, α).
    pub fn rotated_ccw(&self) -> Self {
        Self {
            alpha: -self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    /// The circle is split at (1,0): the upper half {β > 0} ∪ {β = 0, α > 0}
    /// comes first in circular order, then the lower half.
    fn is_upper_half(&self) -> bool {
        let sb = sign(&self.beta);
        sb > 0 || (sb == 0 && sign(&self.alpha) > 0)
    }

    /// Cross product α_self · β_other − α_other · β_self; positive when
    /// `other` lies counterclockwise of `self` by less than a half turn.
    pub fn cross(&self, other: &Self) -> Rat {
        &self.alpha * &other.beta - &other.alpha * &self.beta
    }

    /// sign(A·α + B·β): which side of the restricted functional (A, B) this
    /// direction lies on.
    pub fn sign_against(&self, a: &Rat, b: &Rat) -> i8 {
        sign(&(a * &self.alpha + b * &self.beta))
    }

    /// Strict total order counterclockwise starting at (1,0). Equal iff the
    /// canonical forms coincide (positive proportionality).
    pub fn circular_cmp(&self, other: &Self) -> Ordering {
        match (self.is_upper_half(), other.is_upper_half()) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            // Within one open half no two distinct directions are antipodal,
            // so the cross product decides.
            _ => match sign(&self.cross(other)) {
                1 => Ordering::Less,
                -1 => Ordering::Greater,
                _ => Ordering::Equal,
            },
        }
    }

    /// An interior direction of the open counterclockwise arc from `self` to
    /// `next`. The vector sum works for arcs under a half turn; the antipodal
    /// arc (exactly a half turn) takes the perpendicular instead. Arcs over a
    /// half turn cannot occur between consecutive members of an
    /// antipode-closed boundary set.
    pub fn gap_midpoint(&self, next: &Self) -> Self {
        if *next == self.antipode() {
            self.rotated_ccw()
        } else {
            debug_assert!(*self != *next, "gap endpoints must be distinct");
            Self::new(&self.alpha + &next.alpha, &self.beta + &next.beta)
                .expect("non-antipodal consecutive directions have nonzero sum")
        }
    }
}

impl Ord for CircleVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.circular_cmp(other)
    }
}

impl PartialOrd for CircleVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_from_i64 as ri, ratio};
    use proptest::prelude::*;

    pub(crate) fn cv(a: i64, b: i64) -> CircleVector {
        CircleVector::new(ri(a), ri(b)).unwrap()
    }

    #[test]
    fn axis_directions_in_quadrant_order() {
        let dirs = [cv(1, 0), cv(0, 1), cv(-1, 0), cv(0, -1)];
        for w in dirs.windows(2) {
            assert_eq!(w[0].circular_cmp(&w[1]), Ordering::Less);
        }
    }

    #[test]
    fn cross_product_orders_within_half() {
        assert_eq!(cv(1, 1).circular_cmp(&cv(1, 2)), Ordering::Less);
        assert_eq!(cv(2, 0).circular_cmp(&cv(1, 0)), Ordering::Equal);
        assert_eq!(cv(2, 0), cv(1, 0));
    }

    #[test]
    fn canonical_form_is_primitive_and_sign_preserving() {
        assert_eq!(
            CircleVector::new(ratio(2, 3), ratio(-4, 3)).unwrap(),
            cv(1, -2)
        );
        assert_eq!(cv(-2, -4), cv(-1, -2));
        assert_ne!(cv(1, 2), cv(-1, -2));
        assert_eq!(cv(0, -3), cv(0, -1));
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(
            CircleVector::new(Rat::zero(), Rat::zero()),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn antipode_and_rotation() {
        assert_eq!(cv(1, 2).antipode(), cv(-1, -2));
        assert_eq!(cv(1, 0).rotated_ccw(), cv(0, 1));
        assert_eq!(cv(0, 1).rotated_ccw(), cv(-1, 0));
    }

    #[test]
    fn midpoint_of_short_gap_is_inside() {
        let m = cv(1, 0).gap_midpoint(&cv(0, 1));
        assert_eq!(m, cv(1, 1));
        // Inside means: strictly after the start, strictly before the end.
        assert_eq!(cv(1, 0).circular_cmp(&m), Ordering::Less);
        assert_eq!(m.circular_cmp(&cv(0, 1)), Ordering::Less);
    }

    #[test]
    fn midpoint_of_antipodal_gap_takes_quarter_turn() {
        assert_eq!(cv(0, 1).gap_midpoint(&cv(0, -1)), cv(-1, 0));
        assert_eq!(cv(0, -1).gap_midpoint(&cv(0, 1)), cv(1, 0));
        assert_eq!(cv(1, 1).gap_midpoint(&cv(-1, -1)), cv(-1, 1));
    }

    fn arb_dir() -> impl Strategy<Value = CircleVector> {
        ((-20i64..=20, 1i64..=9), (-20i64..=20, 1i64..=9))
            .prop_map(|((an, ad), (bn, bd))| (ratio(an, ad), ratio(bn, bd)))
            .prop_filter("nonzero", |(a, b)| !(a.is_zero() && b.is_zero()))
            .prop_map(|(a, b)| CircleVector::new(a, b).unwrap())
    }

    proptest! {
        #[test]
        fn order_is_total_and_antisymmetric(u in arb_dir(), v in arb_dir()) {
            match u.circular_cmp(&v) {
                Ordering::Equal => prop_assert_eq!(&u, &v),
                ord => prop_assert_eq!(v.circular_cmp(&u), ord.reverse()),
            }
        }

        #[test]
        fn order_is_transitive(u in arb_dir(), v in arb_dir(), w in arb_dir()) {
            let mut sorted = [u, v, w];
            sorted.sort();
            prop_assert!(sorted[0] <= sorted[1] && sorted[1] <= sorted[2]);
            prop_assert!(sorted[0] <= sorted[2]);
        }

        #[test]
        fn order_invariant_under_positive_scaling(u in arb_dir(), v in arb_dir(), k in 1i64..50) {
            let scaled = CircleVector::new(u.alpha() * ri(k), u.beta() * ri(k)).unwrap();
            prop_assert_eq!(scaled.circular_cmp(&v), u.circular_cmp(&v));
        }

        #[test]
        fn antipode_is_involution_and_distinct(u in arb_dir()) {
            prop_assert_eq!(u.antipode().antipode(), u.clone());
            prop_assert_ne!(u.antipode(), u.clone());
            // A direction and its antipode always land in opposite halves.
            prop_assert_ne!(u.is_upper_half(), u.antipode().is_upper_half());
        }

        #[test]
        fn gap_midpoint_lies_strictly_inside(u in arb_dir(), v in arb_dir()) {
            prop_assume!(u != v);
            let m = u.gap_midpoint(&v);
            if v == u.antipode() {
                // Half-turn arc: the quarter turn from u is interior.
                prop_assert_eq!(sign(&u.cross(&m)), 1);
            } else {
                // The arc from u to v is under a half turn exactly when
                // cross(u, v) > 0; the midpoint must be interior then.
                prop_assume!(sign(&u.cross(&v)) == 1);
                prop_assert_eq!(sign(&u.cross(&m)), 1);
                prop_assert_eq!(sign(&m.cross(&v)), 1);
            }
        }
    }
}
