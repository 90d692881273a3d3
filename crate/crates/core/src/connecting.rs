//! Connecting graphs, connecting maps and the parametric connecting equation.
//!
//! For an irreducible `π` extended by `π(0) = 0`, vertex `p ∈ {0..d}` stands
//! for the breakpoint `x_p`. A continuous embedding forces
//! `T_{π⁻¹([i])}(z_{[π⁻¹(i)−1]}) = T_{π⁻¹([i−1])}(z_{π⁻¹([i−1])})`, which chains
//! the breakpoint images `z_p = h(x_p)` along the cycles of [`ConnectingGraph`].

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::isometry::{phasor, reduce_symmetric, Isometry};
use crate::perm::Permutation;

/// Rotation sums at or below this magnitude count as resonant.
pub const THETA_EPS: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectingGraph {
    d: usize,
    edges: Vec<(usize, usize)>,
    successor: Vec<usize>,
    cycles: Vec<Vec<usize>>,
}

impl ConnectingGraph {
    /// Adds, for each `i ∈ {0..d}`, the edge `π⁻¹([i−1]) → [π⁻¹(i)−1]`.
    pub fn build(perm: &Permutation) -> Result<Self> {
        perm.require_irreducible()?;
        let d = perm.d();
        let edges: Vec<(usize, usize)> = (0..=d)
            .map(|i| {
                let from = perm.preimage(perm.bracket(i as isize - 1));
                let to = perm.bracket(perm.preimage(i) as isize - 1);
                (from, to)
            })
            .collect();

        let mut successor = vec![usize::MAX; d + 1];
        for &(from, to) in &edges {
            successor[from] = to;
        }
        assert!(
            successor.iter().all(|&s| s <= d),
            "every vertex of the connecting graph has an out-edge"
        );

        let mut seen = vec![false; d + 1];
        let mut cycles = Vec::new();
        for start in 0..=d {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = successor[v];
            }
            cycles.push(cycle);
        }

        Ok(Self {
            d,
            edges,
            successor,
            cycles,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn successor(&self, v: usize) -> usize {
        self.successor[v]
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn is_connected(&self) -> bool {
        self.cycles.len() == 1
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.d + 1];
        for &(from, _) in &self.edges {
            deg[from] += 1;
        }
        deg
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.d + 1];
        for &(_, to) in &self.edges {
            deg[to] += 1;
        }
        deg
    }

    pub fn sequence(&self, p0: usize) -> Result<ConnectingSequence> {
        if p0 > self.d {
            return Err(Error::BadVertex {
                vertex: p0,
                d: self.d,
            });
        }
        let mut sequence = vec![p0];
        let mut v = self.successor[p0];
        while v != p0 {
            sequence.push(v);
            v = self.successor[v];
        }
        Ok(ConnectingSequence {
            p0,
            period: sequence.len(),
            sequence,
        })
    }
}

/// One period `p_0, ..., p_{s−1}` of the connecting sequence of `p_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectingSequence {
    pub p0: usize,
    pub sequence: Vec<usize>,
    pub period: usize,
}

/// `T_0 = id, T_1, ..., T_d` from per-interval angles and translations.
fn branch_maps(theta: &[f64], lambda: &[Complex64], d: usize) -> Result<Vec<Isometry>> {
    if theta.len() != d || lambda.len() != d {
        return Err(Error::LengthMismatch {
            expected: d,
            actual: theta.len().min(lambda.len()),
        });
    }
    let mut maps = Vec::with_capacity(d + 1);
    maps.push(Isometry::identity());
    maps.extend(theta.iter().zip(lambda).map(|(&t, &l)| Isometry::new(t, l)));
    Ok(maps)
}

/// Vertex reached from `p` in one step of the chain: `π⁻¹([π(p)+1])`.
fn partner(perm: &Permutation, p: usize) -> usize {
    perm.preimage(perm.bracket(perm.image(p) as isize + 1))
}

/// `F_{p_0} = G_{p_0} ∘ ... ∘ G_{p_{s−1}}` with `G_p = T_p⁻¹ ∘ T_{π⁻¹([π(p)+1])}`,
/// together with the rotation sum `Θ_π(p_0)` reduced to `(−π, π]`.
pub fn connecting_map(
    theta: &[f64],
    lambda: &[Complex64],
    perm: &Permutation,
    p0: usize,
) -> Result<(Isometry, f64)> {
    let graph = ConnectingGraph::build(perm)?;
    let seq = graph.sequence(p0)?;
    let maps = branch_maps(theta, lambda, perm.d())?;
    let angle = |v: usize| if v == 0 { 0.0 } else { theta[v - 1] };

    let mut f = Isometry::identity();
    let mut sum = 0.0;
    for &p in &seq.sequence {
        let q = partner(perm, p);
        f = f.compose(&maps[p].inverse().compose(&maps[q]));
        sum += angle(q) - angle(p);
    }
    Ok((f, reduce_symmetric(sum)))
}

/// Coefficients `r_j(θ)` of `λ_j` in `F_{p_0}(0)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParametricCoefficients {
    pub r: Vec<Complex64>,
    pub theta_sum: f64,
}

impl ParametricCoefficients {
    /// `Σ_j λ_j r_j`.
    pub fn evaluate(&self, lambda: &[Complex64]) -> Complex64 {
        self.r.iter().zip(lambda).map(|(r, l)| r * l).sum()
    }
}

/// `F_{p_0}(0)` is linear in `λ`; each `r_j` is read off at `λ = e_j`.
pub fn parametric_coefficients(
    theta: &[f64],
    perm: &Permutation,
    p0: usize,
) -> Result<ParametricCoefficients> {
    let d = perm.d();
    let zero = Complex64::new(0.0, 0.0);
    let mut r = Vec::with_capacity(d);
    let mut theta_sum = 0.0;
    for j in 0..d {
        let mut basis = vec![zero; d];
        basis[j] = Complex64::new(1.0, 0.0);
        let (f, sum) = connecting_map(theta, &basis, perm, p0)?;
        r.push(f.apply(zero));
        theta_sum = sum;
    }
    Ok(ParametricCoefficients { r, theta_sum })
}

/// Left side of the parametric connecting equation, `Σ_j λ_j r_j(θ)`.
pub fn parametric_residual(
    theta: &[f64],
    lambda: &[Complex64],
    perm: &Permutation,
    p0: usize,
) -> Result<Complex64> {
    if lambda.len() != perm.d() {
        return Err(Error::LengthMismatch {
            expected: perm.d(),
            actual: lambda.len(),
        });
    }
    Ok(parametric_coefficients(theta, perm, p0)?.evaluate(lambda))
}

/// The fixed point `F_{p_0}(0) / (1 − e^{iΘ})` that `h(x_{p_0})` must equal.
pub fn forced_anchor(
    theta: &[f64],
    lambda: &[Complex64],
    perm: &Permutation,
    p0: usize,
) -> Result<Complex64> {
    let (f, sum) = connecting_map(theta, lambda, perm, p0)?;
    fixed_point(&f, sum)
}

/// Fixed point of `f`, whose rotation angle reduces to `theta_sum`.
pub fn fixed_point(f: &Isometry, theta_sum: f64) -> Result<Complex64> {
    if theta_sum.abs() <= THETA_EPS {
        return Err(Error::ResonantTheta(theta_sum));
    }
    Ok(f.lambda() / (Complex64::new(1.0, 0.0) - f.rotation()))
}

/// Residuals of the breakpoint relations for `i = 0..=d`, given the images
/// `z_0..z_d` of the breakpoints.
pub fn breakpoint_relation_residuals(
    theta: &[f64],
    lambda: &[Complex64],
    perm: &Permutation,
    z: &[Complex64],
) -> Result<Vec<f64>> {
    let d = perm.d();
    if z.len() != d + 1 {
        return Err(Error::LengthMismatch {
            expected: d + 1,
            actual: z.len(),
        });
    }
    let maps = branch_maps(theta, lambda, d)?;
    Ok((0..=d)
        .map(|i| {
            let q = perm.preimage(i);
            let p = perm.preimage(perm.bracket(i as isize - 1));
            let left = maps[q].apply(z[perm.bracket(q as isize - 1)]);
            let right = maps[p].apply(z[p]);
            (left - right).norm()
        })
        .collect())
}

/// For a 2-IET, the common center `λ_j / (1 − e^{iθ_j})` if both branches
/// are rotations about the same point (within `tol`).
pub fn two_iet_center(theta: &[f64; 2], lambda: &[Complex64; 2], tol: f64) -> Option<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let c1 = lambda[0] / (one - phasor(theta[0]));
    let c2 = lambda[1] / (one - phasor(theta[1]));
    ((c1 - c2).norm() <= tol).then_some(c1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn e(t: f64) -> Complex64 {
        phasor(t)
    }

    #[test]
    fn graph_examples() {
        let g = ConnectingGraph::build(&perm(&[2, 1])).unwrap();
        assert_eq!(g.cycles(), &[vec![0, 1, 2]]);
        assert_eq!(g.sequence(0).unwrap().period, 3);

        let g = ConnectingGraph::build(&perm(&[4, 2, 1, 3])).unwrap();
        assert!(g.is_connected());
        assert_eq!(g.sequence(0).unwrap().sequence, vec![0, 2, 3, 1, 4]);

        let g = ConnectingGraph::build(&perm(&[2, 3, 1])).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.successor(1), 1);
        assert_eq!(g.sequence(1).unwrap().period, 1);

        assert!(matches!(
            ConnectingGraph::build(&perm(&[1, 2])),
            Err(Error::Reducible(_))
        ));
        assert!(matches!(g.sequence(9), Err(Error::BadVertex { .. })));
    }

    #[test]
    fn identity_parameters_give_identity() {
        let p = perm(&[4, 2, 1, 3]);
        let zero = Complex64::new(0.0, 0.0);
        let (f, sum) = connecting_map(&[0.0; 4], &[zero; 4], &p, 0).unwrap();
        assert!(f.approx_eq(&Isometry::identity(), 1e-15));
        assert_eq!(sum, 0.0);
        let r = parametric_coefficients(&[0.0; 4], &p, 0).unwrap();
        assert!(r.r.iter().all(|c| c.norm() < 1e-15));
    }

    #[test]
    fn two_iet_map_is_explicit_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = perm(&[2, 1]);
        for _ in 0..50 {
            let th = [rng.gen_range(-PI..PI), rng.gen_range(-PI..PI)];
            let la = [
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            ];
            let t1 = Isometry::new(th[0], la[0]);
            let t2 = Isometry::new(th[1], la[1]);
            // T_0⁻¹∘T_2∘T_1⁻¹∘T_0∘T_2⁻¹∘T_1
            let oracle = t2
                .compose(&t1.inverse())
                .compose(&t2.inverse())
                .compose(&t1);
            let (f, sum) = connecting_map(&th, &la, &p, 0).unwrap();
            assert!(f.approx_eq(&oracle, 1e-12));
            assert!(sum.abs() < 1e-12);
            let res = parametric_residual(&th, &la, &p, 0).unwrap();
            assert!((res - oracle.lambda()).norm() < 1e-12);
        }
    }

    #[test]
    fn forced_anchor_examples() {
        // F(z) = -z + 1 has fixed point 1/2
        let f = Isometry::new(PI, Complex64::new(1.0, 0.0));
        assert!((fixed_point(&f, PI).unwrap() - 0.5).norm() < 1e-15);

        let th = [0.3, 1.1, -0.4, 2.0];
        let la = [Complex64::new(0.2, 0.1); 4];
        assert!(matches!(
            forced_anchor(&th, &la, &perm(&[4, 2, 1, 3]), 0),
            Err(Error::ResonantTheta(_))
        ));
    }

    #[test]
    fn fixed_vertex_anchor() {
        // π = (123), p0 = 1: (e^{i(θ2−θ1)} − 1) h(x_1) + (λ2 − λ1) e^{−iθ1} = 0
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = perm(&[2, 3, 1]);
        for _ in 0..20 {
            let th: Vec<f64> = (0..3).map(|_| rng.gen_range(-PI..PI)).collect();
            let la: Vec<Complex64> = (0..3)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let h = forced_anchor(&th, &la, &p, 1).unwrap();
            let lhs = (e(th[1] - th[0]) - 1.0) * h + (la[1] - la[0]) * e(-th[0]);
            assert!(lhs.norm() < 1e-12, "{lhs}");
            let (f, _) = connecting_map(&th, &la, &p, 1).unwrap();
            assert!((f.apply(h) - h).norm() < 1e-10);
        }
    }

    #[test]
    fn two_iet_center_witness() {
        let c = Complex64::new(0.3, -0.2);
        let th = [0.7, -1.9];
        let la = [c * (1.0 - e(th[0])), c * (1.0 - e(th[1]))];
        let res = parametric_residual(&th, &la, &perm(&[2, 1]), 0).unwrap();
        assert!(res.norm() < 1e-12);
        assert!((two_iet_center(&th, &la, 1e-10).unwrap() - c).norm() < 1e-12);
        let off = [la[0], la[1] + 0.1];
        assert!(two_iet_center(&th, &off, 1e-10).is_none());
    }
}
