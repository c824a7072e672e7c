//! Coordinates and lengths, all in half-units.
//!
//! Instances are stated on the integer grid, but optimal Steiner placements
//! may need half-integral coordinates. Doubling everything once at the
//! boundary keeps the whole solver in exact `i64` arithmetic: one half-unit
//! here is 0.5 in instance units, so instance coordinates are always even.

use std::fmt;

/// Coordinates must fit a 62-bit signed range so that single L1 distances
/// and modest sums of them cannot overflow `i64`.
pub const COORD_BOUND: i64 = 1 << 61;

/// A point with half-unit coordinates.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct HalfPoint {
    pub x2: i64,
    pub y2: i64,
}

impl HalfPoint {
    pub fn new(x2: i64, y2: i64) -> Self {
        HalfPoint { x2, y2 }
    }

    /// Point from whole instance units.
    pub fn of_units(x: i64, y: i64) -> Self {
        HalfPoint { x2: 2 * x, y2: 2 * y }
    }

    /// L1 distance in half-units.
    pub fn l1(self, other: HalfPoint) -> i64 {
        (self.x2 - other.x2).abs() + (self.y2 - other.y2).abs()
    }

    pub fn offset(self, dx2: i64, dy2: i64) -> HalfPoint {
        HalfPoint { x2: self.x2 + dx2, y2: self.y2 + dy2 }
    }

    pub fn in_range(self) -> bool {
        self.x2.abs() < COORD_BOUND && self.y2.abs() < COORD_BOUND
    }
}

impl fmt::Display for HalfPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x2, self.y2)
    }
}

/// A half-unit length that may be unbounded. Used for path budgets and for
/// table values that can be infeasible. Arithmetic saturates at INFINITY so
/// a missing restriction never turns into a finite number.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Length(i64);

impl Length {
    pub const INFINITY: Length = Length(i64::MAX);
    pub const ZERO: Length = Length(0);

    pub fn finite(v: i64) -> Self {
        debug_assert!(v < i64::MAX);
        Length(v)
    }

    /// Finite length from whole instance units.
    pub fn of_units(v: i64) -> Self {
        Length::finite(2 * v)
    }

    pub fn is_finite(self) -> bool {
        self.0 != i64::MAX
    }

    /// The finite value, if any.
    pub fn value(self) -> Option<i64> {
        if self.is_finite() {
            Some(self.0)
        } else {
            None
        }
    }

    /// Add a finite half-unit amount; INFINITY absorbs.
    pub fn plus(self, d: i64) -> Length {
        if self.is_finite() {
            Length(self.0 + d)
        } else {
            Length::INFINITY
        }
    }

    pub fn min(self, other: Length) -> Length {
        if self.0 <= other.0 {
            self
        } else {
            other
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            write!(f, "{}", self.0)
        } else {
            write!(f, "inf")
        }
    }
}

impl fmt::Debug for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
