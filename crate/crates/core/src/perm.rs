//! Permutations of `{0, …, r-1}` stored by their image table.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0, …, r-1}`; `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// The cyclic shift `i ↦ i + 1 mod degree`.
    pub fn cyclic_shift(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32)
                .map(|i| if i + 1 == degree as u32 { 0 } else { i + 1 })
                .collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &v) in images.iter().enumerate() {
            let v = v as usize;
            if v >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {v} of {i} is out of range for degree {n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("{v} is hit twice")));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (pos, &x) in cycle.iter().enumerate() {
                let xi = x as usize;
                if xi >= degree {
                    return Err(Error::PointOutOfRange { point: xi, degree });
                }
                if touched[xi] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycles are not disjoint at {x}"
                    )));
                }
                touched[xi] = true;
                images[xi] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of `point`. Panics when `point` is out of range.
    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn try_apply(&self, point: usize) -> Result<u32> {
        self.images
            .get(point)
            .copied()
            .ok_or(Error::PointOutOfRange {
                point,
                degree: self.degree(),
            })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        })
    }

    /// `π ∘ self ∘ π⁻¹`, i.e. `self` with every point renamed through `relabel`.
    pub fn conjugate_by(&self, relabel: &Self) -> Result<Self> {
        if self.degree() != relabel.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: relabel.degree(),
            });
        }
        let mut images = vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[relabel.apply(x as u32) as usize] = relabel.apply(y);
        }
        Ok(Permutation { images })
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// Steps to the next permutation in lexicographic order of the image
    /// table. Returns `false` (and leaves `self` untouched) at the last one.
    pub fn advance_lex(&mut self) -> bool {
        next_lex(&mut self.images)
    }
}

/// In-place lexicographic successor of a sequence. Returns `false` at the
/// last arrangement.
pub(crate) fn next_lex<T: Ord>(seq: &mut [T]) -> bool {
    if seq.len() < 2 {
        return false;
    }
    let mut i = seq.len() - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = seq.len() - 1;
    while seq[j] <= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
