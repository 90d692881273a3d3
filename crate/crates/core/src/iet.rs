//! Interval exchange transformations.
//!
//! A `d`-IET on `I = [0, |I|)` cuts `I` into `I_j = [x_{j-1}, x_j)` and
//! translates each piece by `τ_j` so that the images appear in the order given
//! by the permutation. Membership uses the exact half-open convention with no
//! tolerance; [`Iet::near_breakpoint`] reports orbits that graze a cut point.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Distance under which a point is reported as sitting on a breakpoint.
pub const BREAKPOINT_TOL: f64 = 1e-12;

/// Equal-length threshold below which a Rauzy step is refused.
pub const DEGENERATE_TOL: f64 = 1e-12;

/// Default depth for [`Iet::idoc_check`].
pub const DEFAULT_IDOC_DEPTH: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Which return time to use when inducing on a subinterval.
///
/// `Literal` is `inf{k > 1 : f^k(x) ∈ I_j}` as written in the ergodic section
/// of the source text; `Standard` is the usual first return `k ≥ 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReturnConvention {
    #[default]
    Standard,
    Literal,
}

impl ReturnConvention {
    fn min_steps(self) -> usize {
        match self {
            ReturnConvention::Standard => 1,
            ReturnConvention::Literal => 2,
        }
    }
}

/// Finite symbolic coding of an orbit. Symbols are zero-based interval (or
/// atom) indices; [`Itinerary::symbols`] gives the one-based letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Itinerary(pub Vec<usize>);

impl Itinerary {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn symbols(&self) -> Vec<usize> {
        self.0.iter().map(|s| s + 1).collect()
    }

    /// Drops the first symbol.
    pub fn shifted(&self) -> Itinerary {
        Itinerary(self.0.iter().skip(1).copied().collect())
    }

    /// Length of the longest common prefix.
    pub fn agreement(&self, other: &Itinerary) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .take_while(|(a, b)| a == b)
            .count()
    }
}

impl std::fmt::Display for Itinerary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s + 1)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "IetJson", into = "IetJson")]
pub struct Iet {
    perm: Permutation,
    lengths: Vec<f64>,
    breakpoints: Vec<f64>,
    translations: Vec<f64>,
    /// Left endpoints of the image intervals, sorted by image position.
    image_starts: Vec<f64>,
}

/// On-disk form: `{"lengths": [...], "perm": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IetJson {
    pub lengths: Vec<f64>,
    pub perm: Vec<usize>,
}

impl TryFrom<IetJson> for Iet {
    type Error = Error;

    fn try_from(j: IetJson) -> Result<Self> {
        Iet::new(j.lengths, Permutation::new(j.perm)?)
    }
}

impl From<Iet> for IetJson {
    fn from(iet: Iet) -> Self {
        IetJson {
            lengths: iet.lengths,
            perm: iet.perm.one_line().to_vec(),
        }
    }
}

/// Result of one Rauzy-Veech step.
#[derive(Clone, Debug, PartialEq)]
pub struct RauzyStep {
    pub iet: Iet,
    pub kind: RauzyType,
    /// Zero-based index of the longer of the two competing intervals.
    pub winner: usize,
    /// Zero-based index of the shorter one.
    pub loser: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RauzyType {
    /// `f(I_{π⁻¹(d)}) ⊂ I_d`: the last interval wins.
    Zero,
    /// `I_d ⊂ f(I_{π⁻¹(d)})`: the interval sent to the end wins.
    One,
}

impl RauzyType {
    pub fn as_index(self) -> u8 {
        match self {
            RauzyType::Zero => 0,
            RauzyType::One => 1,
        }
    }
}

/// Statistics of the forward orbit of the left endpoint `0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroOrbitStats {
    /// `p(1) < p(2) < ...`, every term not exceeding the horizon.
    pub p: Vec<usize>,
    /// `m_j = #{1 ≤ k ≤ n : f^k(0) ∈ I_j}`.
    pub m: Vec<usize>,
    /// `k_j = min{k ≥ 0 : f^k(0) ∈ I_j}`.
    pub first_hit: Vec<usize>,
    /// `x'_j = f^{k_j}(0)`.
    pub first_hit_point: Vec<f64>,
}

impl Iet {
    pub fn new(lengths: Vec<f64>, perm: Permutation) -> Result<Self> {
        let d = perm.d();
        if lengths.len() != d {
            return Err(Error::LengthMismatch {
                expected: d,
                actual: lengths.len(),
            });
        }
        if let Some((index, &length)) = lengths
            .iter()
            .enumerate()
            .find(|(_, &l)| !(l > 0.0 && l.is_finite()))
        {
            return Err(Error::NonPositiveLength { index, length });
        }

        let mut breakpoints = Vec::with_capacity(d + 1);
        breakpoints.push(0.0);
        for &l in &lengths {
            breakpoints.push(breakpoints.last().unwrap() + l);
        }

        let starts: Vec<f64> = (0..d)
            .map(|j| {
                let pj = perm.image(j + 1);
                (0..d)
                    .filter(|&k| perm.image(k + 1) < pj)
                    .fold(0.0, |acc, k| acc + lengths[k])
            })
            .collect();
        let translations = (0..d).map(|j| starts[j] - breakpoints[j]).collect();
        let image_starts = (1..=d).map(|pos| starts[perm.preimage(pos) - 1]).collect();

        Ok(Self {
            perm,
            lengths,
            breakpoints,
            translations,
            image_starts,
        })
    }

    /// Builds the IET, failing with [`Error::Reducible`] unless `perm` is irreducible.
    pub fn new_irreducible(lengths: Vec<f64>, perm: Permutation) -> Result<Self> {
        perm.require_irreducible()?;
        Self::new(lengths, perm)
    }

    pub fn d(&self) -> usize {
        self.lengths.len()
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    /// `x_0 = 0, ..., x_d = |I|`.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn translations(&self) -> &[f64] {
        &self.translations
    }

    pub fn total_length(&self) -> f64 {
        self.breakpoints[self.d()]
    }

    pub fn is_irreducible(&self) -> bool {
        self.perm.is_irreducible()
    }

    /// Left endpoint of `f(I_j)`.
    pub fn image_start(&self, j: usize) -> f64 {
        self.breakpoints[j] + self.translations[j]
    }

    /// Same combinatorics with every length multiplied by `s > 0`.
    pub fn scaled(&self, s: f64) -> Result<Iet> {
        Iet::new(
            self.lengths.iter().map(|l| l * s).collect(),
            self.perm.clone(),
        )
    }

    pub fn contains(&self, x: f64) -> bool {
        (0.0..self.total_length()).contains(&x)
    }

    /// Zero-based index of the subinterval containing `x`.
    pub fn locate(&self, x: f64) -> Result<usize> {
        if !self.contains(x) {
            return Err(Error::OutOfDomain(x));
        }
        Ok(self.breakpoints[1..self.d()].partition_point(|&b| b <= x))
    }

    pub fn near_breakpoint(&self, x: f64) -> bool {
        self.breakpoints
            .iter()
            .any(|b| (x - b).abs() < BREAKPOINT_TOL)
    }

    pub fn apply(&self, x: f64, direction: Direction) -> Result<f64> {
        match direction {
            Direction::Forward => self.forward(x),
            Direction::Inverse => self.inverse(x),
        }
    }

    pub fn forward(&self, x: f64) -> Result<f64> {
        let j = self.locate(x)?;
        Ok(x + self.translations[j])
    }

    pub fn inverse(&self, y: f64) -> Result<f64> {
        if !self.contains(y) {
            return Err(Error::OutOfDomain(y));
        }
        let pos = self.image_starts[1..].partition_point(|&s| s <= y);
        let j = self.perm.preimage(pos + 1) - 1;
        Ok(y - self.translations[j])
    }

    /// Iterates `x` and returns the first `n` symbols of its itinerary.
    pub fn itinerary(&self, x: f64, n: usize) -> Result<Itinerary> {
        let mut symbols = Vec::with_capacity(n);
        let mut y = x;
        for _ in 0..n {
            let j = self.locate(y)?;
            symbols.push(j);
            y += self.translations[j];
        }
        Ok(Itinerary(symbols))
    }

    /// `x, f(x), ..., f^n(x)`.
    pub fn orbit(&self, x: f64, n: usize) -> Result<Vec<f64>> {
        let mut points = Vec::with_capacity(n + 1);
        let mut y = x;
        points.push(y);
        for _ in 0..n {
            y = self.forward(y)?;
            points.push(y);
        }
        Ok(points)
    }

    /// One step of Rauzy-Veech induction: the first return of `f` to `I`
    /// with the loser removed.
    pub fn rauzy_step(&self) -> Result<RauzyStep> {
        let d = self.d();
        let last = d - 1;
        let sent_last = self.perm.preimage(d) - 1;
        let (mu_last, mu_sent) = (self.lengths[last], self.lengths[sent_last]);
        if (mu_last - mu_sent).abs() < DEGENERATE_TOL {
            return Err(Error::DegenerateStep(mu_last, mu_sent));
        }

        let pi = |j: usize| self.perm.image(j + 1);
        let mut lengths = self.lengths.clone();
        let mut images = vec![0; d];

        let (kind, winner, loser) = if mu_sent < mu_last {
            // The image of I_{π⁻¹(d)} is cut from the end of I_d; that interval
            // now returns through I_d and lands right after f(I_d).
            lengths[last] = mu_last - mu_sent;
            let pd = pi(last);
            for (j, img) in images.iter_mut().enumerate() {
                *img = if j == sent_last {
                    pd + 1
                } else if pi(j) > pd {
                    pi(j) + 1
                } else {
                    pi(j)
                };
            }
            (RauzyType::Zero, last, sent_last)
        } else {
            // I_d is cut; I_{π⁻¹(d)} splits into a part that stays and the
            // preimage of I_d, which returns through I_d.
            let a = sent_last;
            lengths[a] = mu_sent - mu_last;
            lengths.insert(a + 1, mu_last);
            lengths.pop();
            for (j, img) in images.iter_mut().enumerate() {
                *img = match j.cmp(&(a + 1)) {
                    std::cmp::Ordering::Less => pi(j),
                    std::cmp::Ordering::Equal => pi(last),
                    std::cmp::Ordering::Greater => pi(j - 1),
                };
            }
            (RauzyType::One, sent_last, last)
        };

        Ok(RauzyStep {
            iet: Iet::new(lengths, Permutation::new(images)?)?,
            kind,
            winner,
            loser,
        })
    }

    /// Return time `n` of `x ∈ I_j` to `I_j` and the landing point `f^n(x)`.
    pub fn first_return(
        &self,
        j: usize,
        x: f64,
        cap: usize,
        convention: ReturnConvention,
    ) -> Result<(usize, f64)> {
        if self.locate(x)? != j {
            return Err(Error::OutOfDomain(x));
        }
        let min_steps = convention.min_steps();
        let mut y = x;
        for k in 1..=cap {
            y = self.forward(y)?;
            if k >= min_steps && self.locate(y)? == j {
                return Ok((k, y));
            }
        }
        Err(Error::CapExceeded { cap })
    }

    /// `N_j^{(k)}(x)`: total time of `k` successive returns of `x` to `I_j`,
    /// together with the point reached.
    pub fn return_cocycle(
        &self,
        j: usize,
        x: f64,
        k: usize,
        cap: usize,
        convention: ReturnConvention,
    ) -> Result<(usize, f64)> {
        let mut total = 0;
        let mut y = x;
        for _ in 0..k {
            let (n, next) = self.first_return(j, y, cap, convention)?;
            total += n;
            y = next;
        }
        Ok((total, y))
    }

    /// The first `levels` terms of `p(n)`: `p(1)` is the first positive time
    /// the orbit of `0` is in `I_1`, and each later term is the next time the
    /// orbit comes strictly closer to `0` from the right.
    pub fn p_sequence(&self, levels: usize, cap: usize) -> Result<Vec<usize>> {
        let mut p = Vec::with_capacity(levels);
        if levels == 0 {
            return Ok(p);
        }
        let mut y = 0.0;
        let mut record = f64::INFINITY;
        for t in 1..=cap {
            y = self.forward(y)?;
            let hit = if p.is_empty() {
                y < self.breakpoints[1]
            } else {
                y < record
            };
            if hit {
                p.push(t);
                record = y;
                if p.len() == levels {
                    return Ok(p);
                }
            }
        }
        Err(Error::CapExceeded { cap })
    }

    pub fn zero_orbit_statistics(&self, n_max: usize) -> Result<ZeroOrbitStats> {
        let d = self.d();
        let mut p = Vec::new();
        let mut m = vec![0; d];
        let mut first_hit = vec![usize::MAX; d];
        let mut first_hit_point = vec![f64::NAN; d];
        let mut record = f64::INFINITY;

        let mut y = 0.0;
        for k in 0..=n_max {
            let j = self.locate(y)?;
            if first_hit[j] == usize::MAX {
                first_hit[j] = k;
                first_hit_point[j] = y;
            }
            if k >= 1 {
                m[j] += 1;
                let hit = if p.is_empty() { j == 0 } else { y < record };
                if hit {
                    p.push(k);
                    record = y;
                }
            }
            y += self.translations[j];
        }

        if p.is_empty() || first_hit.contains(&usize::MAX) {
            return Err(Error::CapExceeded { cap: n_max });
        }
        Ok(ZeroOrbitStats {
            p,
            m,
            first_hit,
            first_hit_point,
        })
    }

    /// Numerical stand-in for Keane's condition: follows the backward orbit
    /// of each interior breakpoint for `depth` steps and fails if it comes
    /// within [`BREAKPOINT_TOL`] of a breakpoint. Since `f` is a bijection,
    /// two backward orbits can only meet if one of them hits a breakpoint.
    pub fn idoc_check(&self, depth: usize) -> bool {
        let d = self.d();
        let cuts = &self.breakpoints[..d];
        (1..d).all(|i| {
            let mut y = self.breakpoints[i];
            for _ in 0..depth {
                y = match self.inverse(y) {
                    Ok(v) => v,
                    Err(_) => return false,
                };
                if cuts.iter().any(|c| (y - c).abs() < BREAKPOINT_TOL) {
                    return false;
                }
            }
            true
        })
    }

    /// True iff `f⁻¹({x_1..x_{d-1}})` meets `{x_1..x_{d-1}}`, the condition
    /// under which a discontinuous embedding into some PWI exists.
    pub fn discontinuous_embedding_predicate(&self) -> bool {
        let d = self.d();
        let interior = &self.breakpoints[1..d];
        interior.iter().any(|&x| {
            self.inverse(x)
                .is_ok_and(|y| interior.iter().any(|&c| (y - c).abs() < BREAKPOINT_TOL))
        })
    }
}
