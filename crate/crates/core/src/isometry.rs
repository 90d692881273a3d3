//! Orientation-preserving isometries `z ↦ e^{iθ}z + λ` of the plane.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Reduces an angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Reduces an angle into `(-π, π]`.
pub fn reduce_symmetric(theta: f64) -> f64 {
    let t = normalize_angle(theta);
    if t > std::f64::consts::PI {
        t - TAU
    } else {
        t
    }
}

/// Unit phasor `e^{iθ}`.
pub fn phasor(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "IsometryJson", into = "IsometryJson")]
pub struct Isometry {
    theta: f64,
    rotation: Complex64,
    lambda: Complex64,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct IsometryJson {
    pub theta: f64,
    pub lambda: Complex64,
}

impl From<IsometryJson> for Isometry {
    fn from(j: IsometryJson) -> Self {
        Isometry::new(j.theta, j.lambda)
    }
}

impl From<Isometry> for IsometryJson {
    fn from(t: Isometry) -> Self {
        IsometryJson {
            theta: t.theta,
            lambda: t.lambda,
        }
    }
}

impl Isometry {
    /// The rotation phasor is taken from `theta` before normalization so that
    /// evaluation matches `exp(iθ)` computed directly from the given angle.
    pub fn new(theta: f64, lambda: Complex64) -> Self {
        Self {
            theta: normalize_angle(theta),
            rotation: phasor(theta),
            lambda,
        }
    }

    /// Builds the map from an exact unit phasor, bypassing `cos`/`sin`.
    pub fn from_rotation(rotation: Complex64, lambda: Complex64) -> Self {
        Self {
            theta: normalize_angle(rotation.arg()),
            rotation,
            lambda,
        }
    }

    pub fn identity() -> Self {
        Self::translation(Complex64::new(0.0, 0.0))
    }

    pub fn translation(lambda: Complex64) -> Self {
        Self {
            theta: 0.0,
            rotation: Complex64::new(1.0, 0.0),
            lambda,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn rotation(&self) -> Complex64 {
        self.rotation
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    #[inline]
    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.rotation * z + self.lambda
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            theta: normalize_angle(self.theta + other.theta),
            rotation: self.rotation * other.rotation,
            lambda: self.rotation * other.lambda + self.lambda,
        }
    }

    pub fn inverse(&self) -> Isometry {
        let rotation = self.rotation.conj();
        Isometry {
            theta: normalize_angle(-self.theta),
            rotation,
            lambda: -(rotation * self.lambda),
        }
    }

    /// Compares rotation phasors and translations componentwise.
    pub fn approx_eq(&self, other: &Isometry, tol: f64) -> bool {
        (self.rotation - other.rotation).norm() <= tol && (self.lambda - other.lambda).norm() <= tol
    }
}

impl Default for Isometry {
    fn default() -> Self {
        Self::identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn apply_examples() {
        let z = c(0.3, -0.7);
        assert_eq!(Isometry::identity().apply(z), z);
        let t = Isometry::new(FRAC_PI_2, c(1.0, 0.0));
        assert!((t.apply(c(1.0, 0.0)) - c(1.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn theta_is_normalized() {
        assert!((Isometry::new(-FRAC_PI_2, c(0.0, 0.0)).theta() - 1.5 * PI).abs() < 1e-15);
        assert!(Isometry::new(7.0, c(0.0, 0.0)).theta() < TAU);
        assert_eq!(normalize_angle(-1e-18), 0.0);
        assert!((reduce_symmetric(1.5 * PI) + FRAC_PI_2).abs() < 1e-15);
        assert_eq!(reduce_symmetric(PI), PI);
    }

    #[test]
    fn json_shape() {
        let t = Isometry::new(0.5, c(1.0, -2.0));
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"theta":0.5,"lambda":[1.0,-2.0]}"#);
        let back: Isometry = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }

    fn iso() -> impl Strategy<Value = Isometry> {
        (-10.0..10.0f64, -5.0..5.0f64, -5.0..5.0f64).prop_map(|(t, a, b)| Isometry::new(t, c(a, b)))
    }

    fn point() -> impl Strategy<Value = Complex64> {
        (-5.0..5.0f64, -5.0..5.0f64).prop_map(|(a, b)| c(a, b))
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided(t in iso(), z in point()) {
            let id = Isometry::identity();
            prop_assert!(t.compose(&t.inverse()).approx_eq(&id, 1e-13));
            prop_assert!(t.inverse().compose(&t).approx_eq(&id, 1e-13));
            prop_assert!((t.inverse().apply(t.apply(z)) - z).norm() < 1e-13);
        }

        #[test]
        fn composition_is_associative(a in iso(), b in iso(), c in iso(), z in point()) {
            let left = a.compose(&b).compose(&c);
            let right = a.compose(&b.compose(&c));
            prop_assert!(left.approx_eq(&right, 1e-13));
            prop_assert!((left.apply(z) - a.apply(b.apply(c.apply(z)))).norm() < 1e-13);
            let angle = normalize_angle(a.theta() + b.theta());
            prop_assert!((a.compose(&b).theta() - angle).abs() < 1e-12);
        }

        #[test]
        fn distances_are_preserved(t in iso(), z in point(), w in point()) {
            prop_assert!(((t.apply(z) - t.apply(w)).norm() - (z - w).norm()).abs() < 1e-13);
        }
    }
}
