//! Planar piecewise isometries with convex atoms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iet::{Iet, Itinerary, RauzyStep, RauzyType};
use crate::io::PwiJson;
use crate::isometry::Isometry;
use crate::region::{ConvexRegion, BOUNDARY_TOL};

/// Orbits longer than this are refused by the front ends.
pub const MAX_ORBIT_POINTS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PwiJson", into = "PwiJson")]
pub struct Pwi {
    name: String,
    atoms: Vec<ConvexRegion>,
    maps: Vec<Isometry>,
}

/// A finite orbit segment `z_s, ..., z_{s+n}` after a transient of `s` steps.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OrbitRecord {
    /// Number of discarded transient steps.
    pub start: usize,
    pub points: Vec<Complex64>,
    /// Atom of each stored point.
    pub atoms: Itinerary,
    pub boundary_flags: Vec<bool>,
    /// Absolute step at which the orbit left every atom; that point is not stored.
    pub escaped_at: Option<usize>,
}

impl OrbitRecord {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The first-return system produced by one Rauzy-Veech step on a PWI.
#[derive(Clone, Debug)]
pub struct InducedPwi {
    pub pwi: Pwi,
    /// Interval of the induced IET coded by each atom (several convex
    /// pieces may share one interval).
    pub symbols: Vec<usize>,
    pub step: RauzyStep,
}

impl InducedPwi {
    /// Induced itinerary of `z0`, coded by the induced IET's intervals.
    pub fn itinerary(&self, z0: Complex64, n: usize) -> Result<Itinerary> {
        let raw = self.pwi.itinerary(z0, n)?;
        Ok(Itinerary(
            raw.0.into_iter().map(|a| self.symbols[a]).collect(),
        ))
    }
}

impl Pwi {
    pub fn new(
        name: impl Into<String>,
        atoms: Vec<ConvexRegion>,
        maps: Vec<Isometry>,
    ) -> Result<Self> {
        if atoms.len() != maps.len() {
            return Err(Error::LengthMismatch {
                expected: atoms.len(),
                actual: maps.len(),
            });
        }
        Ok(Self {
            name: name.into(),
            atoms,
            maps,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn atoms(&self) -> &[ConvexRegion] {
        &self.atoms
    }

    pub fn maps(&self) -> &[Isometry] {
        &self.maps
    }

    /// Number of atoms.
    pub fn d(&self) -> usize {
        self.atoms.len()
    }

    pub fn thetas(&self) -> Vec<f64> {
        self.maps.iter().map(Isometry::theta).collect()
    }

    pub fn lambdas(&self) -> Vec<Complex64> {
        self.maps.iter().map(Isometry::lambda).collect()
    }

    /// First atom in declaration order containing `z`.
    #[inline]
    pub fn locate(&self, z: Complex64) -> Option<usize> {
        self.atoms.iter().position(|a| a.contains(z))
    }

    pub fn near_boundary(&self, z: Complex64) -> bool {
        self.atoms.iter().any(|a| a.near_boundary(z, BOUNDARY_TOL))
    }

    #[inline]
    pub fn apply(&self, z: Complex64) -> Result<(Complex64, usize)> {
        match self.locate(z) {
            Some(j) => Ok((self.maps[j].apply(z), j)),
            None => Err(Error::NoAtom { re: z.re, im: z.im }),
        }
    }

    /// Number of sample points lying in two or more atoms.
    pub fn overlap_count(&self, samples: &[Complex64]) -> usize {
        samples
            .iter()
            .filter(|&&z| self.atoms.iter().filter(|a| a.contains(z)).count() > 1)
            .count()
    }

    pub fn orbit(&self, z0: Complex64, n: usize, transient: usize) -> OrbitRecord {
        let mut record = OrbitRecord {
            start: transient,
            ..Default::default()
        };
        let mut z = z0;
        for step in 0..transient {
            match self.apply(z) {
                Ok((next, _)) => z = next,
                Err(_) => {
                    record.escaped_at = Some(step);
                    return record;
                }
            }
        }
        for k in 0..=n {
            let Some(j) = self.locate(z) else {
                record.escaped_at = Some(transient + k);
                break;
            };
            record.points.push(z);
            record.atoms.0.push(j);
            record.boundary_flags.push(self.near_boundary(z));
            z = self.maps[j].apply(z);
        }
        record
    }

    /// Atoms visited by `z0, T(z0), ..., T^{n-1}(z0)`.
    pub fn itinerary(&self, z0: Complex64, n: usize) -> Result<Itinerary> {
        let mut symbols = Vec::with_capacity(n);
        let mut z = z0;
        for step in 0..n {
            let j = self.locate(z).ok_or(Error::Escaped { step })?;
            symbols.push(j);
            z = self.maps[j].apply(z);
        }
        Ok(Itinerary(symbols))
    }

    /// Visits to each atom among the first `n` iterates of `z0`.
    pub fn visit_counts(&self, z0: Complex64, n: usize) -> Result<Vec<usize>> {
        let mut counts = vec![0; self.d()];
        let mut z = z0;
        for step in 0..n {
            let j = self.locate(z).ok_or(Error::Escaped { step })?;
            counts[j] += 1;
            z = self.maps[j].apply(z);
        }
        Ok(counts)
    }

    /// First return of `z` to the union `section`: the least `k ≥ 1` with
    /// `T^k(z)` in the section, and that point.
    pub fn first_return(
        &self,
        section: &[ConvexRegion],
        z: Complex64,
        cap: usize,
    ) -> Result<(usize, Complex64)> {
        let inside = |w: Complex64| section.iter().any(|r| r.contains(w));
        if !inside(z) {
            return Err(Error::NotInSection { re: z.re, im: z.im });
        }
        let mut w = z;
        for k in 1..=cap {
            w = self.apply(w).map_err(|_| Error::Escaped { step: k - 1 })?.0;
            if inside(w) {
                return Ok((k, w));
            }
        }
        Err(Error::CapExceeded { cap })
    }
}

/// One Rauzy-Veech step for a PWI whose atom `j` carries the interval `I_j`
/// of `iet`: the first-return system on `X'`, the union of the atoms with the
/// loser's image removed.
pub fn induced_pwi(pwi: &Pwi, iet: &Iet) -> Result<InducedPwi> {
    let d = iet.d();
    if pwi.d() != d {
        return Err(Error::LengthMismatch {
            expected: d,
            actual: pwi.d(),
        });
    }
    let step = iet.rauzy_step()?;
    let last = d - 1;
    let a = iet.perm().preimage(d) - 1;
    let (xa, ta) = (&pwi.atoms[a], pwi.maps[a]);
    let (xd, td) = (&pwi.atoms[last], pwi.maps[last]);
    let twice = td.compose(&ta);
    let into_last = xa.intersect(&xd.preimage(&ta));
    let not_into_last = xa.difference(&xd.preimage(&ta));

    let mut pieces: Vec<(usize, ConvexRegion, Isometry)> = Vec::new();
    match step.kind {
        RauzyType::Zero => {
            for j in 0..last {
                if j == a {
                    pieces.push((j, into_last.clone(), twice));
                    pieces.extend(not_into_last.iter().map(|r| (j, r.clone(), ta)));
                } else {
                    pieces.push((j, pwi.atoms[j].clone(), pwi.maps[j]));
                }
            }
            let kept = xd.difference(&xa.image(&ta));
            pieces.extend(kept.into_iter().map(|r| (last, r, td)));
        }
        RauzyType::One => {
            for j in 0..last {
                match j.cmp(&a) {
                    std::cmp::Ordering::Less => pieces.push((j, pwi.atoms[j].clone(), pwi.maps[j])),
                    std::cmp::Ordering::Equal => {
                        pieces.extend(not_into_last.iter().map(|r| (a, r.clone(), ta)));
                        pieces.push((a + 1, into_last.clone(), twice));
                    }
                    std::cmp::Ordering::Greater => {
                        pieces.push((j + 1, pwi.atoms[j].clone(), pwi.maps[j]))
                    }
                }
            }
        }
    }
    pieces.sort_by_key(|(s, _, _)| *s);

    let symbols = pieces.iter().map(|(s, _, _)| *s).collect();
    let (atoms, maps) = pieces.into_iter().map(|(_, r, t)| (r, t)).unzip();
    Ok(InducedPwi {
        pwi: Pwi::new(format!("{} (induced)", pwi.name), atoms, maps)?,
        symbols,
        step,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use crate::region::{HalfPlane, Sense};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Strip `[0,|I|) × [0,1)` realizing `iet` by translations.
    fn strip(iet: &Iet) -> Pwi {
        let x = iet.breakpoints();
        let atoms = (0..iet.d())
            .map(|j| ConvexRegion::rectangle(x[j], x[j + 1], 0.0, 1.0))
            .collect();
        let maps = iet
            .translations()
            .iter()
            .map(|&t| Isometry::translation(c(t, 0.0)))
            .collect();
        Pwi::new("strip", atoms, maps).unwrap()
    }

    fn golden(flip: bool) -> Iet {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let mut l = vec![phi - 1.0, 2.0 - phi];
        if flip {
            l.reverse();
        }
        Iet::new(l, Permutation::new(vec![2, 1]).unwrap()).unwrap()
    }

    #[test]
    fn apply_and_escape() {
        let p = strip(&golden(false));
        let (w, j) = p.apply(c(0.1, 0.5)).unwrap();
        assert_eq!(j, 0);
        assert!((w - c(0.1 + p.maps()[0].lambda().re, 0.5)).norm() < 1e-15);
        assert!(matches!(p.apply(c(0.1, 2.0)), Err(Error::NoAtom { .. })));
        assert!(matches!(
            p.itinerary(c(0.1, 2.0), 3),
            Err(Error::Escaped { step: 0 })
        ));
    }

    #[test]
    fn orbit_lengths() {
        let p = strip(&golden(false));
        let r = p.orbit(c(0.1, 0.5), 0, 0);
        assert_eq!(r.points, vec![c(0.1, 0.5)]);
        let r = p.orbit(c(0.1, 0.5), 10, 5);
        assert_eq!(r.len(), 11);
        assert_eq!(r.atoms.len(), 11);
        assert_eq!(r.boundary_flags.len(), 11);
        assert_eq!(r.escaped_at, None);

        let r = p.orbit(c(0.1, 5.0), 10, 0);
        assert!(r.is_empty());
        assert_eq!(r.escaped_at, Some(0));
    }

    #[test]
    fn orbit_tail_resimulates() {
        let p = strip(&golden(false));
        let r = p.orbit(c(0.123, 0.5), 500, 0);
        let tail = p.orbit(r.points[200], 300, 0);
        assert_eq!(&r.points[200..], &tail.points[..]);
        assert_eq!(&r.atoms.0[200..], &tail.atoms.0[..]);
    }

    #[test]
    fn first_return_whole_domain() {
        let p = strip(&golden(false));
        let z = c(0.3, 0.2);
        let (k, w) = p.first_return(p.atoms(), z, 10).unwrap();
        assert_eq!(k, 1);
        assert_eq!(w, p.apply(z).unwrap().0);
        assert!(matches!(
            p.first_return(&p.atoms()[..1], c(0.9, 0.2), 10),
            Err(Error::NotInSection { .. })
        ));
    }

    #[test]
    fn first_return_matches_loop() {
        let p = strip(&golden(false));
        let section = [ConvexRegion::rectangle(0.0, 0.2, 0.0, 1.0)];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let z = c(rng.gen_range(0.0..0.2), rng.gen_range(0.0..1.0));
            let (k, w) = p.first_return(&section, z, 1000).unwrap();
            let mut v = z;
            let mut n = 0;
            loop {
                v = p.apply(v).unwrap().0;
                n += 1;
                if section[0].contains(v) {
                    break;
                }
            }
            assert_eq!((k, w), (n, v));
        }
    }

    #[test]
    fn atoms_are_disjoint() {
        let p = strip(&golden(false));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let samples: Vec<_> = (0..10_000)
            .map(|_| c(rng.gen_range(-0.5..1.5), rng.gen_range(-0.5..1.5)))
            .collect();
        assert_eq!(p.overlap_count(&samples), 0);
    }

    fn check_induced(iet: &Iet, expected: RauzyType) {
        let pwi = strip(iet);
        let ind = induced_pwi(&pwi, iet).unwrap();
        assert_eq!(ind.step.kind, expected);
        let sub = &ind.step.iet;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x = rng.gen_range(0.0..sub.total_length());
            let z = c(x, 0.5);
            assert_eq!(
                ind.itinerary(z, 1000).unwrap(),
                sub.itinerary(x, 1000).unwrap()
            );
            // closure: the first return lands back in X'
            let (w, _) = ind.pwi.apply(z).unwrap();
            assert!(ind.pwi.locate(w).is_some());
            assert!((w.re - sub.forward(x).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn induced_type_one() {
        let iet = golden(false);
        check_induced(&iet, RauzyType::One);
        let ind = induced_pwi(&strip(&iet), &iet).unwrap();
        // I_1 splits: T on the left part, T² on the part entering I_2
        let twice = ind
            .symbols
            .iter()
            .zip(ind.pwi.maps())
            .find(|(&s, _)| s == 1)
            .unwrap()
            .1;
        let t = strip(&iet);
        assert!(twice.approx_eq(&t.maps()[1].compose(&t.maps()[0]), 1e-15));
        assert!(!ind.symbols.contains(&2));
    }

    #[test]
    fn induced_type_zero() {
        check_induced(&golden(true), RauzyType::Zero);
        let p = Permutation::new(vec![4, 2, 1, 3]).unwrap();
        let iet = Iet::new(vec![0.13, 0.21, 0.17, 0.49], p).unwrap();
        check_induced(&iet, RauzyType::Zero);
        let p = Permutation::new(vec![3, 1, 2]).unwrap();
        let iet = Iet::new(vec![0.33, 0.21 * 2f64.sqrt(), 0.1], p).unwrap();
        check_induced(&iet, RauzyType::One);
    }

    #[test]
    fn rejects_mismatched_atoms() {
        let p = Pwi::new(
            "one",
            vec![ConvexRegion::full()],
            vec![Isometry::identity()],
        )
        .unwrap();
        assert!(matches!(
            induced_pwi(&p, &golden(false)),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(Pwi::new("bad", vec![ConvexRegion::full()], vec![]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn first_return_oracle(x in 0.0..0.25f64, y in 0.0..1.0f64, w in 0.05..0.5f64) {
            let p = strip(&golden(false));
            let section = vec![ConvexRegion::new(vec![
                HalfPlane::vertical(0.0, Sense::Ge),
                HalfPlane::vertical(w, Sense::Lt),
            ])];
            let z = c(x * w * 4.0 * 0.999, y);
            let (k, out) = p.first_return(&section, z, 10_000).unwrap();
            let mut v = z;
            for _ in 0..k {
                v = p.apply(v).unwrap().0;
            }
            prop_assert_eq!(v, out);
        }
    }
}
