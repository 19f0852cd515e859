//! Signed permutations: the isometries of the unit cube that permute the
//! coordinate axes, possibly reversing some of them (x ↦ 1−x).
//!
//! Face gluings and cubical maps carry one of these as their coordinate
//! correspondence.

use serde::{Deserialize, Serialize};

use crate::error::ComplexError;

/// A bijection of `{0..size-1}` together with a reversal flag per slot.
///
/// `images[k] = (t, flip)` sends source coordinate `k` to target coordinate
/// `t`; when `flip` is set, the coordinate value is reversed (`x ↦ 1−x`), so a
/// face side `s ∈ {0,1}` maps to `1−s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPermutation {
    images: Vec<(usize, bool)>,
}

impl SignedPermutation {
    pub fn new(images: Vec<(usize, bool)>) -> Result<Self, ComplexError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &(t, _) in &images {
            if t >= n || seen[t] {
                return Err(ComplexError::BadPermutation { size: n });
            }
            seen[t] = true;
        }
        Ok(SignedPermutation { images })
    }

    pub fn identity(size: usize) -> Self {
        SignedPermutation {
            images: (0..size).map(|i| (i, false)).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &(t, f))| i == t && !f)
    }

    /// Image of source coordinate `k` as `(target, flip)`.
    pub fn image(&self, k: usize) -> (usize, bool) {
        self.images[k]
    }

    /// Image of the facet `(coord, side)` of the source cube.
    pub fn image_side(&self, coord: usize, side: u8) -> (usize, u8) {
        let (t, f) = self.images[coord];
        (t, if f { 1 - side } else { side })
    }

    /// `other ∘ self`: apply `self` first, then `other`.
    pub fn then(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.size(), other.size());
        SignedPermutation {
            images: self
                .images
                .iter()
                .map(|&(t, f)| {
                    let (u, g) = other.images[t];
                    (u, f ^ g)
                })
                .collect(),
        }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut images = vec![(0, false); self.size()];
        for (k, &(t, f)) in self.images.iter().enumerate() {
            images[t] = (k, f);
        }
        SignedPermutation { images }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.images.iter().copied()
    }
}

impl std::fmt::Display for SignedPermutation {
    /// One-based signed list notation, e.g. `(2,-1,3)`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, &(t, flip)) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            if flip {
                write!(f, "-")?;
            }
            write!(f, "{}", t + 1)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_invert() {
        let p = SignedPermutation::new(vec![(1, true), (0, false), (2, true)]).unwrap();
        let q = p.then(&p.inverse());
        assert!(q.is_identity());
        let r = p.inverse().then(&p);
        assert!(r.is_identity());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(SignedPermutation::new(vec![(0, false), (0, true)]).is_err());
        assert!(SignedPermutation::new(vec![(2, false), (0, false)]).is_err());
    }

    #[test]
    fn side_images_respect_flips() {
        let p = SignedPermutation::new(vec![(1, true), (0, false)]).unwrap();
        assert_eq!(p.image_side(0, 0), (1, 1));
        assert_eq!(p.image_side(0, 1), (1, 0));
        assert_eq!(p.image_side(1, 1), (0, 1));
    }

    #[test]
    fn display_is_one_based_signed() {
        let p = SignedPermutation::new(vec![(1, true), (0, false), (2, false)]).unwrap();
        assert_eq!(p.to_string(), "(-2,1,3)");
    }
}
