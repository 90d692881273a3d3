//! Reference constants of the two worked examples, in one place.
//!
//! Every value consumed by the system builders, the reproduction pipeline and
//! the CLI defaults is defined here and nowhere else.

use num_complex::Complex64;

/// The three-atom PWI `T'` with atoms cut by two lines through `z'_1`, `z'_2`.
pub mod three_pwi {
    use super::Complex64;

    pub const ALPHA: f64 = 1.3;
    pub const BETA: f64 = 0.75;
    pub const Z0: Complex64 = Complex64::new(0.0, 0.0);
    pub const Z1: Complex64 = Complex64::new(0.215998, 0.168125);
    pub const Z2: Complex64 = Complex64::new(0.491520, 0.051612);
    pub const Z3: Complex64 = Complex64::new(0.586452, 0.0);

    /// Nominal rotation angles.
    pub const THETA_NOMINAL: [f64; 3] = [4.460361, 0.800153, 0.995933];
    /// Rotation angles in use. The nominal first angle violates the forced
    /// breakpoint relation `T'_2(z'_2) = T'_1(z'_0)` by about `0.135`; solving
    /// that relation gives `4.96037`, one digit away from the nominal value.
    pub const THETA: [f64; 3] = [4.960361, 0.800153, 0.995933];

    /// Sign of `λ'_3 = ± e^{iθ'_3} z'_2`. The nominal formula has `+`, which
    /// breaks `T'_3(z'_2) = z'_0` and sends the orbit of `0` to infinity.
    pub const LAMBDA3_SIGN: f64 = -1.0;

    pub const LENGTHS: [f64; 3] = [0.3910666426, 0.4553369973, 0.1535963601];
    /// `(2)(13)` in one-line notation.
    pub const PERM: [usize; 3] = [3, 2, 1];
    pub const SEED: Complex64 = Z0;

    pub const XI: [Complex64; 3] = [
        Complex64::new(-0.453, 0.651),
        Complex64::new(0.326, 0.669),
        Complex64::new(0.417, 0.679),
    ];
    pub const RESIDUAL: f64 = 1.19e-5;
    pub const MATCH: usize = 60_000;
}

/// The four-cone family `T(α, β, λ)` and the return strip `S` at `(0.5, 1)`.
pub mod cone {
    use super::Complex64;

    pub const ALPHA: f64 = 0.5;
    pub const BETA: f64 = 1.0;

    /// `λ_g = (√5 − 1)/2`.
    pub fn golden_ratio() -> f64 {
        (5f64.sqrt() - 1.0) / 2.0
    }

    pub const LENGTHS: [f64; 4] = [0.1217970148, 0.1329352086, 0.2008884081, 0.3550989199];
    /// `(2)(143)` in one-line notation.
    pub const PERM: [usize; 4] = [4, 2, 1, 3];

    pub const ANCHOR_RADIUS: f64 = 0.47665;
    /// Argument of the anchor in units of `π`.
    pub const ANCHOR_TURNS: f64 = 0.68165;

    pub fn anchor() -> Complex64 {
        Complex64::from_polar(ANCHOR_RADIUS, ANCHOR_TURNS * std::f64::consts::PI)
    }

    /// A point on the same invariant curve as the anchor.
    pub const CURVE_SEED: Complex64 = Complex64::new(0.0, 0.416);
    /// Radii of the seeds `r·e^{i(π−β)}` of the two curves bounding `Ξ`.
    pub const BOUNDARY_RADII: [f64; 2] = [0.470, 0.503];

    pub const XI: [Complex64; 4] = [
        Complex64::new(0.718, 0.125),
        Complex64::new(0.538, -0.512),
        Complex64::new(0.460, -0.438),
        Complex64::new(0.300, -0.562),
    ];
    pub const RESIDUAL: f64 = 6.30e-6;
    pub const MATCH: usize = 100_000;
}

/// Thresholds used when judging a reproduction.
pub mod thresholds {
    pub const LEVEL: usize = 8;
    pub const XI_TOL: f64 = 5e-3;
    pub const RESIDUAL_MAX: f64 = 1e-4;
    pub const FREQUENCY_TOL: f64 = 5e-3;
    pub const FREQUENCY_STEPS: usize = 1_000_000;
    pub const CONNECTING_MAX: f64 = 1e-10;
    pub const ANCHOR_RELATION_MAX: f64 = 1e-5;
    /// Longest symbolic match attempted.
    pub const MATCH_HORIZON: usize = 1_000_000;
    pub const RETURN_CAP: usize = 10_000_000;
}
