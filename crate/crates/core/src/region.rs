//! Convex regions cut out by half-planes.
//!
//! A half-plane is the set where `sense(Im(e^{iφ}(z − anchor)))` holds. A
//! [`ConvexRegion`] is a finite intersection of half-planes, optionally
//! enlarged by finitely many explicitly listed points (the apex of a cone
//! atom, for instance).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::isometry::{phasor, Isometry};

/// Distance under which a point is reported as grazing a boundary line.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    /// `> 0`
    Gt,
    /// `≥ 0`
    Ge,
    /// `< 0`
    Lt,
    /// `≤ 0`
    Le,
}

impl Sense {
    #[inline]
    pub fn holds(self, v: f64) -> bool {
        match self {
            Sense::Gt => v > 0.0,
            Sense::Ge => v >= 0.0,
            Sense::Lt => v < 0.0,
            Sense::Le => v <= 0.0,
        }
    }

    /// The sense selecting the closure of the opposite side.
    pub fn complement(self) -> Sense {
        match self {
            Sense::Gt => Sense::Le,
            Sense::Ge => Sense::Lt,
            Sense::Lt => Sense::Ge,
            Sense::Le => Sense::Gt,
        }
    }

    fn holds_loosely(self, v: f64, tol: f64) -> bool {
        match self {
            Sense::Gt | Sense::Ge => v > -tol,
            Sense::Lt | Sense::Le => v < tol,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlane {
    phi: f64,
    anchor: Complex64,
    sense: Sense,
    phasor: Complex64,
}

impl HalfPlane {
    pub fn new(phi: f64, anchor: Complex64, sense: Sense) -> Self {
        Self {
            phi,
            anchor,
            sense,
            phasor: phasor(phi),
        }
    }

    /// Uses an exact unit phasor instead of `e^{iφ}`; `(0, 1)` gives an exact
    /// vertical boundary `Re z = Re anchor`.
    pub fn from_phasor(phasor: Complex64, anchor: Complex64, sense: Sense) -> Self {
        Self {
            phi: phasor.arg(),
            anchor,
            sense,
            phasor,
        }
    }

    /// `Re z ≥ x` (with `sense = Ge`) and friends.
    pub fn vertical(x: f64, sense: Sense) -> Self {
        Self::from_phasor(Complex64::new(0.0, 1.0), Complex64::new(x, 0.0), sense)
    }

    /// `Im z ≥ y` (with `sense = Ge`) and friends.
    pub fn horizontal(y: f64, sense: Sense) -> Self {
        Self::from_phasor(Complex64::new(1.0, 0.0), Complex64::new(0.0, y), sense)
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn anchor(&self) -> Complex64 {
        self.anchor
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn phasor(&self) -> Complex64 {
        self.phasor
    }

    /// Signed distance `Im(e^{iφ}(z − anchor))`.
    #[inline]
    pub fn value(&self, z: Complex64) -> f64 {
        (self.phasor * (z - self.anchor)).im
    }

    #[inline]
    pub fn contains(&self, z: Complex64) -> bool {
        self.sense.holds(self.value(z))
    }

    pub fn complement(&self) -> HalfPlane {
        HalfPlane {
            sense: self.sense.complement(),
            ..*self
        }
    }

    /// The half-plane `t(H)`, so that `z ∈ H ⇔ t(z) ∈ t(H)`.
    pub fn image(&self, t: &Isometry) -> HalfPlane {
        HalfPlane {
            phi: self.phi - t.theta(),
            anchor: t.apply(self.anchor),
            sense: self.sense,
            phasor: self.phasor * t.rotation().conj(),
        }
    }

    /// Unit direction of the boundary line.
    pub fn direction(&self) -> Complex64 {
        self.phasor.conj()
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConvexRegion {
    pub constraints: Vec<HalfPlane>,
    pub special_points: Vec<Complex64>,
}

impl ConvexRegion {
    pub fn new(constraints: Vec<HalfPlane>) -> Self {
        Self {
            constraints,
            special_points: Vec::new(),
        }
    }

    /// The whole plane.
    pub fn full() -> Self {
        Self::default()
    }

    pub fn with_special_point(mut self, z: Complex64) -> Self {
        self.special_points.push(z);
        self
    }

    /// `{z : arg(z − apex) ∈ [from, to)}` for an opening `to − from` in `(0, π)`.
    pub fn cone(apex: Complex64, from: f64, to: f64) -> Self {
        Self::new(vec![
            HalfPlane::new(-from, apex, Sense::Ge),
            HalfPlane::new(-to, apex, Sense::Lt),
        ])
    }

    /// `[x0, x1) × [y0, y1)` with exact axis-parallel boundaries.
    pub fn rectangle(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Self::new(vec![
            HalfPlane::vertical(x0, Sense::Ge),
            HalfPlane::vertical(x1, Sense::Lt),
            HalfPlane::horizontal(y0, Sense::Ge),
            HalfPlane::horizontal(y1, Sense::Lt),
        ])
    }

    #[inline]
    pub fn contains(&self, z: Complex64) -> bool {
        self.constraints.iter().all(|h| h.contains(z)) || self.special_points.contains(&z)
    }

    /// True if `z` is within `tol` of the region and of one of its boundary lines.
    pub fn near_boundary(&self, z: Complex64, tol: f64) -> bool {
        self.constraints
            .iter()
            .all(|h| h.sense.holds_loosely(h.value(z), tol))
            && self.constraints.iter().any(|h| h.value(z).abs() < tol)
    }

    pub fn intersect(&self, other: &ConvexRegion) -> ConvexRegion {
        let mut constraints = self.constraints.clone();
        constraints.extend_from_slice(&other.constraints);
        let special_points = self
            .special_points
            .iter()
            .filter(|&&p| other.contains(p))
            .chain(other.special_points.iter().filter(|&&p| self.contains(p)))
            .copied()
            .collect();
        ConvexRegion {
            constraints,
            special_points,
        }
    }

    pub fn image(&self, t: &Isometry) -> ConvexRegion {
        ConvexRegion {
            constraints: self.constraints.iter().map(|h| h.image(t)).collect(),
            special_points: self.special_points.iter().map(|&p| t.apply(p)).collect(),
        }
    }

    /// `t⁻¹(self)`.
    pub fn preimage(&self, t: &Isometry) -> ConvexRegion {
        self.image(&t.inverse())
    }

    /// Convex pieces whose disjoint union is `self \ other`: piece `k` keeps
    /// the first `k` constraints of `other` and violates the next one.
    /// Special points of `other` are not removed.
    pub fn difference(&self, other: &ConvexRegion) -> Vec<ConvexRegion> {
        let mut pieces = Vec::with_capacity(other.constraints.len());
        let mut kept = self.clone();
        kept.special_points.retain(|&p| !other.contains(p));
        for h in &other.constraints {
            let mut piece = kept.clone();
            piece.constraints.push(h.complement());
            piece.special_points.retain(|&p| !h.contains(p));
            pieces.push(piece);
            kept.constraints.push(*h);
            kept.special_points.retain(|&p| h.contains(p));
        }
        pieces
    }
}
