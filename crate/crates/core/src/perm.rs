//! Permutations of `{1, ..., d}` in one-line notation.
//!
//! Letters are one-based here, matching the combinatorics of the connecting
//! graph, which extends a permutation by `π(0) = 0` and works modulo `d + 1`.
//! Interval and atom indices elsewhere in the crate are zero-based: interval
//! `j` (zero-based) is sent to position `perm.image(j + 1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
    preimages: Vec<usize>,
    irreducible: bool,
}

impl Permutation {
    /// Builds a permutation from its one-line notation `[π(1), ..., π(d)]`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        if d < 2 {
            return Err(Error::TooShort(d));
        }
        let mut preimages = vec![0; d + 1];
        for (j, &v) in images.iter().enumerate() {
            if v == 0 || v > d || preimages[v] != 0 {
                return Err(Error::NonBijective { d, mapping: images });
            }
            preimages[v] = j + 1;
        }
        let irreducible = (1..d).all(|k| images[..k].iter().any(|&v| v > k));
        Ok(Self {
            images,
            preimages,
            irreducible,
        })
    }

    /// Like [`Permutation::new`] but rejects reducible permutations.
    pub fn irreducible(images: Vec<usize>) -> Result<Self> {
        let p = Self::new(images)?;
        p.require_irreducible()?;
        Ok(p)
    }

    pub fn identity(d: usize) -> Result<Self> {
        Self::new((1..=d).collect())
    }

    /// The rotation `[2, 3, ..., d, 1]`.
    pub fn rotation(d: usize) -> Result<Self> {
        Self::new((1..=d).map(|j| j % d + 1).collect())
    }

    /// The order-reversing permutation `[d, d-1, ..., 1]`.
    pub fn reversal(d: usize) -> Result<Self> {
        Self::new((1..=d).rev().collect())
    }

    pub fn require_irreducible(&self) -> Result<()> {
        if self.irreducible {
            Ok(())
        } else {
            Err(Error::Reducible(self.images.clone()))
        }
    }

    pub fn d(&self) -> usize {
        self.images.len()
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn one_line(&self) -> &[usize] {
        &self.images
    }

    /// `π(j)` for `j` in `0..=d`, with `π(0) = 0`.
    pub fn image(&self, j: usize) -> usize {
        if j == 0 {
            0
        } else {
            self.images[j - 1]
        }
    }

    /// `π⁻¹(k)` for `k` in `0..=d`, with `π⁻¹(0) = 0`.
    pub fn preimage(&self, k: usize) -> usize {
        self.preimages[k]
    }

    /// `[i] = i mod (d + 1)`, taken in `0..=d`.
    pub fn bracket(&self, i: isize) -> usize {
        i.rem_euclid(self.d() as isize + 1) as usize
    }

    /// Every permutation of `{1..d}` in lexicographic order.
    pub fn all(d: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=d).collect();
        loop {
            if let Ok(p) = Permutation::new(current.clone()) {
                out.push(p);
            }
            // next lexicographic permutation
            let Some(i) = (1..current.len())
                .rev()
                .find(|&i| current[i - 1] < current[i])
            else {
                break;
            };
            let j = (i..current.len())
                .rev()
                .find(|&j| current[j] > current[i - 1])
                .expect("a successor exists past the pivot");
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(matches!(
            Permutation::new(vec![1, 1]),
            Err(Error::NonBijective { .. })
        ));
        assert!(matches!(
            Permutation::new(vec![0, 1]),
            Err(Error::NonBijective { .. })
        ));
        assert!(matches!(
            Permutation::new(vec![1, 3]),
            Err(Error::NonBijective { .. })
        ));
        assert_eq!(Permutation::new(vec![1]), Err(Error::TooShort(1)));
    }

    #[test]
    fn irreducibility() {
        assert!(Permutation::new(vec![2, 1]).unwrap().is_irreducible());
        assert!(!Permutation::new(vec![1, 2]).unwrap().is_irreducible());
        assert!(matches!(
            Permutation::irreducible(vec![1, 2]),
            Err(Error::Reducible(_))
        ));
        // (2)(143) and (2)(13)
        assert!(Permutation::new(vec![4, 2, 1, 3]).unwrap().is_irreducible());
        assert!(Permutation::new(vec![3, 2, 1]).unwrap().is_irreducible());
        // π({1,2}) = {1,2}
        assert!(!Permutation::new(vec![2, 1, 4, 3]).unwrap().is_irreducible());
    }

    #[test]
    fn extension_and_bracket() {
        let p = Permutation::new(vec![4, 2, 1, 3]).unwrap();
        assert_eq!(p.image(0), 0);
        assert_eq!(p.preimage(0), 0);
        for j in 0..=4 {
            assert_eq!(p.preimage(p.image(j)), j);
        }
        assert_eq!(p.bracket(-1), 4);
        assert_eq!(p.bracket(5), 0);
        assert_eq!(p.bracket(7), 2);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Permutation::all(3).len(), 6);
        assert_eq!(Permutation::all(5).len(), 120);
        let irr = Permutation::all(3)
            .into_iter()
            .filter(|p| p.is_irreducible())
            .count();
        assert_eq!(irr, 3);
    }

    #[test]
    fn serde_one_line() {
        let p: Permutation = serde_json::from_str("[3,2,1]").unwrap();
        assert_eq!(p.one_line(), &[3, 2, 1]);
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
        assert_eq!(serde_json::to_string(&p).unwrap(), "[3,2,1]");
    }
}
