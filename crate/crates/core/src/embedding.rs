//! Embeddings of IETs into PWIs and the tests that screen for them.
//!
//! Trivial embeddings come in closed form. Non-trivial ones are only ever
//! probed through the orbit of an anchor `h(0)`: its symbolic itinerary, and
//! the ergodic averages of the tangent exchange map over the IET.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::iet::Iet;
use crate::isometry::{normalize_angle, phasor, Isometry};
use crate::pwi::Pwi;
use crate::region::ConvexRegion;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingKind {
    /// `h(x) = x + i·height/2` on the strip `I × [0, height)`; translations only.
    Linear,
    /// `h(x) = e^{isx}` with `s = π/|I|`; rotations about the origin only.
    Arc,
}

/// A trivial continuous embedding of an IET together with its companion PWI.
#[derive(Clone, Debug)]
pub struct TrivialEmbedding {
    kind: EmbeddingKind,
    iet: Iet,
    pwi: Pwi,
    /// Height of the strip, or the angular scale `s`.
    param: f64,
}

/// `h|_{I_j}(x) = z_j + v_j x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearPiece {
    pub z: Complex64,
    pub v: Complex64,
}

/// `h|_{I_j}(x) = z_j + r_j e^{i(a_j x + b_j)}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcPiece {
    pub z: Complex64,
    pub r: f64,
    pub a: f64,
    pub b: f64,
}

impl TrivialEmbedding {
    pub fn linear(iet: &Iet, height: f64) -> Result<Self> {
        if !(height > 0.0 && height.is_finite()) {
            return Err(Error::ParameterOutOfRange {
                name: "height",
                value: height,
                range: "(0, ∞)",
            });
        }
        let x = iet.breakpoints();
        let atoms = (0..iet.d())
            .map(|j| ConvexRegion::rectangle(x[j], x[j + 1], 0.0, height))
            .collect();
        let maps = iet
            .translations()
            .iter()
            .map(|&t| Isometry::translation(Complex64::new(t, 0.0)))
            .collect();
        Ok(Self {
            kind: EmbeddingKind::Linear,
            iet: iet.clone(),
            pwi: Pwi::new("trivial-linear", atoms, maps)?,
            param: height,
        })
    }

    /// Rescales `I` onto `[0, π)` and wraps it around the unit circle; atom
    /// `j` is the sector over `s·I_j`.
    pub fn arc(iet: &Iet) -> Result<Self> {
        let s = PI / iet.total_length();
        let x = iet.breakpoints();
        let origin = Complex64::new(0.0, 0.0);
        let atoms = (0..iet.d())
            .map(|j| ConvexRegion::cone(origin, s * x[j], s * x[j + 1]))
            .collect();
        let maps = iet
            .translations()
            .iter()
            .map(|&t| Isometry::new(s * t, origin))
            .collect();
        Ok(Self {
            kind: EmbeddingKind::Arc,
            iet: iet.clone(),
            pwi: Pwi::new("trivial-arc", atoms, maps)?,
            param: s,
        })
    }

    pub fn kind(&self) -> EmbeddingKind {
        self.kind
    }

    pub fn iet(&self) -> &Iet {
        &self.iet
    }

    pub fn pwi(&self) -> &Pwi {
        &self.pwi
    }

    pub fn h(&self, x: f64) -> Complex64 {
        match self.kind {
            EmbeddingKind::Linear => Complex64::new(x, self.param / 2.0),
            EmbeddingKind::Arc => phasor(self.param * x),
        }
    }

    pub fn anchor(&self) -> Complex64 {
        self.h(0.0)
    }

    /// `|h(f(x)) − T(h(x))|`; also fails if `h(x)` lies in the wrong atom.
    pub fn conjugacy_defect(&self, x: f64) -> Result<f64> {
        let j = self.iet.locate(x)?;
        let (w, atom) = self.pwi.apply(self.h(x))?;
        if atom != j {
            return Ok(f64::INFINITY);
        }
        Ok((self.h(self.iet.forward(x)?) - w).norm())
    }

    /// Fits `z_j, v_j` to `h` sampled at two interior points of each interval.
    pub fn linear_pieces(&self) -> Vec<LinearPiece> {
        self.sample_points(2)
            .into_iter()
            .map(|xs| {
                let (p, q) = (self.h(xs[0]), self.h(xs[1]));
                let v = (q - p) / (xs[1] - xs[0]);
                LinearPiece {
                    z: p - v * xs[0],
                    v,
                }
            })
            .collect()
    }

    /// Fits a circle through `h` at three interior points of each interval.
    pub fn arc_pieces(&self) -> Vec<ArcPiece> {
        self.sample_points(3)
            .into_iter()
            .map(|xs| {
                let p: Vec<Complex64> = xs.iter().map(|&x| self.h(x)).collect();
                let z = circumcenter(p[0], p[1], p[2]);
                let r = (p[0] - z).norm();
                let t0 = (p[0] - z).arg();
                let t1 = t0 + ((p[1] - z) / (p[0] - z)).arg();
                let a = (t1 - t0) / (xs[1] - xs[0]);
                ArcPiece {
                    z,
                    r,
                    a,
                    b: t0 - a * xs[0],
                }
            })
            .collect()
    }

    fn sample_points(&self, k: usize) -> Vec<Vec<f64>> {
        let x = self.iet.breakpoints();
        (0..self.iet.d())
            .map(|j| {
                (1..=k)
                    .map(|i| x[j] + (x[j + 1] - x[j]) * i as f64 / (k + 1) as f64)
                    .collect()
            })
            .collect()
    }
}

fn circumcenter(a: Complex64, b: Complex64, c: Complex64) -> Complex64 {
    let (b, c) = (b - a, c - a);
    let d = 2.0 * (b.re * c.im - b.im * c.re);
    let (nb, nc) = (b.norm_sqr(), c.norm_sqr());
    a + Complex64::new((c.im * nb - b.im * nc) / d, (b.re * nc - c.re * nb) / d)
}

/// `alignment[atom] = interval` with atom `j` coding interval `j`.
pub fn identity_alignment(d: usize) -> Vec<usize> {
    (0..d).collect()
}

/// Length of the common prefix of the itinerary of `0` under `iet` and the
/// atom trace of `z0` under `pwi`, relabelled through `alignment`, capped at
/// `n`. An escape before the first disagreement is an error.
pub fn symbolic_match(
    iet: &Iet,
    pwi: &Pwi,
    z0: Complex64,
    n: usize,
    alignment: &[usize],
) -> Result<usize> {
    if alignment.len() != pwi.d() {
        return Err(Error::LengthMismatch {
            expected: pwi.d(),
            actual: alignment.len(),
        });
    }
    let mut x = 0.0;
    let mut z = z0;
    for step in 0..n {
        let j = iet.locate(x)?;
        let Some(atom) = pwi.locate(z) else {
            return Err(Error::Escaped { step });
        };
        if alignment[atom] != j {
            return Ok(step);
        }
        x += iet.translations()[j];
        z = pwi.maps()[atom].apply(z);
    }
    Ok(n)
}

/// A point `(x, y)` of `I × S¹`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TangentState {
    pub x: f64,
    pub y: f64,
}

impl TangentState {
    pub fn new(x: f64, y: f64) -> Self {
        Self {
            x,
            y: normalize_angle(y),
        }
    }
}

fn check_angles(iet: &Iet, theta: &[f64]) -> Result<()> {
    if theta.len() != iet.d() {
        return Err(Error::LengthMismatch {
            expected: iet.d(),
            actual: theta.len(),
        });
    }
    Ok(())
}

/// `Ψ^k(start)` for `k = 0..=n`, where `Ψ(x, y) = (f(x), y + θ_{j(x)})`.
pub fn tangent_orbit(
    iet: &Iet,
    theta: &[f64],
    start: TangentState,
    n: usize,
) -> Result<Vec<TangentState>> {
    check_angles(iet, theta)?;
    let mut out = Vec::with_capacity(n + 1);
    let mut s = TangentState::new(start.x, start.y);
    iet.locate(s.x)?;
    out.push(s);
    for _ in 0..n {
        let j = iet.locate(s.x)?;
        s = TangentState::new(s.x + iet.translations()[j], s.y + theta[j]);
        out.push(s);
    }
    Ok(out)
}

/// Unreduced rotational cocycle `C^{(n)}(x)`. For `n < 0` this is
/// `−(θ_{j(f^{-1}x)} + ... + θ_{j(f^{n}x)})`, so that `C` is additive along orbits.
pub fn rotation_cocycle(iet: &Iet, theta: &[f64], x: f64, n: i64) -> Result<f64> {
    check_angles(iet, theta)?;
    let mut y = x;
    let mut sum = 0.0;
    if n >= 0 {
        for _ in 0..n {
            let j = iet.locate(y)?;
            sum += theta[j];
            y += iet.translations()[j];
        }
    } else {
        for _ in 0..n.unsigned_abs() {
            y = iet.inverse(y)?;
            sum -= theta[iet.locate(y)?];
        }
    }
    Ok(sum)
}

/// Per-atom ergodic averages of `exp(−i C)` along the orbit of `0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErgodicEstimate {
    pub level: usize,
    /// `p(level)`, the orbit length the averages are taken at.
    pub horizon: usize,
    pub m: Vec<usize>,
    pub e: Vec<Complex64>,
    pub xi: Vec<Complex64>,
    pub residual: Option<f64>,
}

/// Estimates `ξ_j` at `p(level)`.
///
/// With `x'_j = f^{k_j}(0)` the first point of the orbit of `0` in `I_j` and
/// `y'_j = C^{(k_j)}(0)`, the angles `c_j(k) = y'_j + C^{(N_j^{(k)}(x'_j)+1)}(x'_j)`
/// are the cocycle just after the `k`-th return to `I_j`. Along the orbit of
/// `0` that is `C^{(t+1)}(0)` at the visit time `t = k_j + N_j^{(k)}(x'_j)`.
/// `e_j` sums `exp(−i c_j(k))` over `k < m_j`, with `m_j` counting the visits
/// at times `1..=p(level)`.
pub fn xi_estimates(iet: &Iet, theta: &[f64], level: usize, cap: usize) -> Result<ErgodicEstimate> {
    check_angles(iet, theta)?;
    let d = iet.d();
    let p = iet.p_sequence(level, cap)?;
    let horizon = *p.last().ok_or(Error::CapExceeded { cap })?;

    let symbols = iet.itinerary(0.0, horizon + 1)?.0;
    let mut m = vec![0; d];
    for &j in &symbols[1..=horizon] {
        m[j] += 1;
    }
    if let Some(j) = m.iter().position(|&c| c == 0) {
        return Err(Error::AtomNeverVisited(j));
    }

    let mut e = vec![Complex64::new(0.0, 0.0); d];
    let mut used = vec![0; d];
    let mut c = 0.0;
    for &j in &symbols {
        c += theta[j];
        if used[j] < m[j] {
            e[j] += phasor(-c);
            used[j] += 1;
        }
    }

    let xi = e.iter().zip(&m).map(|(e, &m)| e / m as f64).collect();
    Ok(ErgodicEstimate {
        level,
        horizon,
        m,
        e,
        xi,
        residual: None,
    })
}

/// `|Σ_j (λ_j − h0(1 − e^{iθ_j})) ξ_j μ_j|`.
pub fn ergodic_residual(
    iet: &Iet,
    theta: &[f64],
    lambda: &[Complex64],
    h0: Complex64,
    xi: &[Complex64],
) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    iet.lengths()
        .iter()
        .enumerate()
        .map(|(j, &mu)| (lambda[j] - h0 * (one - phasor(theta[j]))) * xi[j] * mu)
        .sum::<Complex64>()
        .norm()
}

/// Rotation angles `θ_j = 2πτ_j/|I|` for which the circle is an eigenfunction.
pub fn resonant_angles(iet: &Iet) -> Vec<f64> {
    let len = iet.total_length();
    iet.translations().iter().map(|t| TAU * t / len).collect()
}

/// True iff `θ_j ≡ 2πτ_j/|I| (mod 2π)` within `1e-10` for every `j`.
pub fn resonance_check(iet: &Iet, theta: &[f64]) -> bool {
    theta.len() == iet.d()
        && resonant_angles(iet).iter().zip(theta).all(|(r, t)| {
            let diff = normalize_angle(t - r);
            diff.min(TAU - diff) < 1e-10
        })
}

/// Closed form of `ξ_j` under resonance, with `|I|` rescaled to `1`:
/// `e^{−2πia_j}(1 − e^{−2πiμ_j})/(2πiμ_j)`, `a_j` the left end of `f(I_j)`.
pub fn corollary_xi(iet: &Iet, j: usize) -> Complex64 {
    let len = iet.total_length();
    resonant_xi(iet.image_start(j) / len, iet.lengths()[j] / len)
}

/// Mean of `e^{−2πix}` over `[a, a + μ]`.
pub fn resonant_xi(a: f64, mu: f64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    phasor(-TAU * a) * (one - phasor(-TAU * mu)) / Complex64::new(0.0, TAU * mu)
}
