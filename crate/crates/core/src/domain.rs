//! Intervals and rectangles with the derived geometric quantities.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "shape", rename_all = "snake_case"))]
pub enum DomainSpec {
    Interval { length: f64 },
    Rectangle { lx: f64, ly: f64 },
}

impl DomainSpec {
    pub fn interval(length: f64) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::Domain("interval length must be positive"));
        }
        Ok(Self::Interval { length })
    }

    pub fn rectangle(lx: f64, ly: f64) -> Result<Self> {
        if !(lx > 0.0 && ly > 0.0 && lx.is_finite() && ly.is_finite()) {
            return Err(Error::Domain("rectangle sides must be positive"));
        }
        Ok(Self::Rectangle { lx, ly })
    }

    pub fn square(l: f64) -> Result<Self> {
        Self::rectangle(l, l)
    }

    pub fn unit_square() -> Self {
        Self::Rectangle { lx: 1.0, ly: 1.0 }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Interval { .. } => 1,
            Self::Rectangle { .. } => 2,
        }
    }

    pub fn volume(&self) -> f64 {
        match *self {
            Self::Interval { length } => length,
            Self::Rectangle { lx, ly } => lx * ly,
        }
    }

    /// Boundary measure; for an interval this is the counting measure of the two endpoints.
    pub fn perimeter(&self) -> f64 {
        match *self {
            Self::Interval { .. } => 2.0,
            Self::Rectangle { lx, ly } => 2.0 * (lx + ly),
        }
    }

    pub fn inradius(&self) -> f64 {
        match *self {
            Self::Interval { length } => length / 2.0,
            Self::Rectangle { lx, ly } => lx.min(ly) / 2.0,
        }
    }

    /// Scale every length by s.
    pub fn scaled(&self, s: f64) -> Self {
        match *self {
            Self::Interval { length } => Self::Interval { length: s * length },
            Self::Rectangle { lx, ly } => Self::Rectangle { lx: s * lx, ly: s * ly },
        }
    }

    /// Measure of the inner collar {x : dist(x, ∂Ω) ≤ h}.
    pub fn tube_volume(&self, h: f64) -> Result<f64> {
        if !(h >= 0.0) || h > self.inradius() {
            return Err(Error::Domain("tube width must lie in [0, inradius]"));
        }
        Ok(match *self {
            Self::Interval { .. } => 2.0 * h,
            Self::Rectangle { lx, ly } => lx * ly - (lx - 2.0 * h) * (ly - 2.0 * h),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tube_examples() {
        let sq = DomainSpec::unit_square();
        assert_eq!(sq.tube_volume(0.0).unwrap(), 0.0);
        assert_eq!(sq.tube_volume(0.5).unwrap(), 1.0);
        let r = DomainSpec::rectangle(2.0, 1.0).unwrap();
        assert!((r.tube_volume(0.1).unwrap() - 0.56).abs() < 1e-14);
        assert!(r.tube_volume(0.6).is_err());
        assert!(r.tube_volume(-0.1).is_err());
    }

    #[test]
    fn tube_over_h_tends_to_perimeter() {
        let r = DomainSpec::rectangle(2.0, 1.0).unwrap();
        for h in [1e-2, 1e-3, 1e-4] {
            let gap = r.perimeter() - r.tube_volume(h).unwrap() / h;
            assert!((gap - 4.0 * h).abs() < 1e-9, "h={h} gap={gap}");
        }
    }

    #[test]
    fn bad_sides_rejected() {
        assert!(DomainSpec::rectangle(0.0, 1.0).is_err());
        assert!(DomainSpec::interval(f64::NAN).is_err());
    }
}
