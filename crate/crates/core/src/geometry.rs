//! Planar point arithmetic used for drawings and embeddings.
//!
//! Everything here is generic over [`Scalar`], so the same code runs on exact
//! rationals (the default for built-in layouts) and on `f64` drawings.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_traits::{Num, Signed};
use serde::{Deserialize, Serialize};

/// Coordinate type for layouts.
///
/// Any signed, partially ordered numeric type works. Exact types give exact
/// angle comparisons; floating point types inherit the usual rounding caveats.
pub trait Scalar: Num + Signed + PartialOrd + Clone + Debug {}

impl<T> Scalar for T where T: Num + Signed + PartialOrd + Clone + Debug {}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    /// Vector from `self` to `other`.
    pub fn to(&self, other: &Point<T>) -> Point<T> {
        Point::new(other.x.clone() - self.x.clone(), other.y.clone() - self.y.clone())
    }

    pub fn cross(&self, other: &Point<T>) -> T {
        self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// 0 for directions in [0, pi), 1 for [pi, 2pi), measured from the positive x axis.
    fn half_plane(&self) -> u8 {
        let zero = T::zero();
        if self.y > zero || (self.y == zero && self.x > zero) {
            0
        } else {
            1
        }
    }
}

/// Compares two nonzero direction vectors by counterclockwise angle from the
/// positive x axis. Returns `Equal` exactly when the directions coincide.
pub fn cmp_angle<T: Scalar>(a: &Point<T>, b: &Point<T>) -> Ordering {
    let (ha, hb) = (a.half_plane(), b.half_plane());
    if ha != hb {
        return ha.cmp(&hb);
    }
    let c = a.cross(b);
    let zero = T::zero();
    if c > zero {
        Ordering::Less
    } else if c < zero {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

/// Twice the signed area of a closed polygon (positive when counterclockwise).
pub fn doubled_signed_area<T: Scalar>(polygon: &[Point<T>]) -> T {
    let n = polygon.len();
    let mut acc = T::zero();
    for i in 0..n {
        acc = acc + polygon[i].cross(&polygon[(i + 1) % n]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(x: i64, y: i64) -> Point<Rational> {
        Point::new(Rational::from_integer(x), Rational::from_integer(y))
    }

    #[test]
    fn angle_order_goes_counterclockwise_from_east() {
        let mut dirs = vec![r(-1, -1), r(1, 1), r(0, -1), r(-1, 0), r(1, 0), r(0, 1), r(1, -1)];
        dirs.sort_by(cmp_angle);
        assert_eq!(dirs, vec![r(1, 0), r(1, 1), r(0, 1), r(-1, 0), r(-1, -1), r(0, -1), r(1, -1)]);
    }

    #[test]
    fn collinear_same_direction_is_equal() {
        assert_eq!(cmp_angle(&r(2, 3), &r(4, 6)), Ordering::Equal);
        assert_ne!(cmp_angle(&r(2, 3), &r(-2, -3)), Ordering::Equal);
    }

    #[test]
    fn exact_and_float_agree() {
        let pts = [(3, 1), (-2, 5), (-7, -1), (4, -9), (1, 0)];
        let mut exact: Vec<_> = pts.iter().map(|&(x, y)| r(x, y)).collect();
        let mut float: Vec<_> = pts.iter().map(|&(x, y)| Point::new(x as f64, y as f64)).collect();
        exact.sort_by(cmp_angle);
        float.sort_by(cmp_angle);
        let back: Vec<_> = float.iter().map(|p| r(p.x as i64, p.y as i64)).collect();
        assert_eq!(exact, back);
    }

    #[test]
    fn unit_square_area() {
        let sq = [r(0, 0), r(1, 0), r(1, 1), r(0, 1)];
        assert_eq!(doubled_signed_area(&sq), Rational::from_integer(2));
        let rev: Vec<_> = sq.iter().rev().cloned().collect();
        assert_eq!(doubled_signed_area(&rev), Rational::from_integer(-2));
    }
}
