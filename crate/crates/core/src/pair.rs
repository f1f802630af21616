//! Pairs of permutations as actions of `F₂`, and the subgroups they encode.
//!
//! A pair `(σ₁, σ₂)` of degree `r` lets `a` act by `σ₁` and `b` by `σ₂`. When
//! the action is transitive, the stabilizer of the basepoint `0` is a subgroup
//! of index `r`, and the coset of a word is where it sends `0`. Two transitive
//! pairs give the same subgroup exactly when some relabeling fixing `0`
//! conjugates one into the other.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::word::{GeneratorWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutationPair {
    sigma1: Permutation,
    sigma2: Permutation,
    sigma1_inv: Permutation,
    sigma2_inv: Permutation,
}

impl PermutationPair {
    pub fn new(sigma1: Permutation, sigma2: Permutation) -> Result<Self> {
        if sigma1.degree() != sigma2.degree() {
            return Err(Error::DegreeMismatch {
                left: sigma1.degree(),
                right: sigma2.degree(),
            });
        }
        Ok(PermutationPair {
            sigma1_inv: sigma1.inverse(),
            sigma2_inv: sigma2.inverse(),
            sigma1,
            sigma2,
        })
    }

    pub fn degree(&self) -> usize {
        self.sigma1.degree()
    }

    pub fn sigma1(&self) -> &Permutation {
        &self.sigma1
    }

    pub fn sigma2(&self) -> &Permutation {
        &self.sigma2
    }

    pub fn generator(&self, letter: Letter) -> &Permutation {
        match letter {
            Letter::A => &self.sigma1,
            Letter::AInv => &self.sigma1_inv,
            Letter::B => &self.sigma2,
            Letter::BInv => &self.sigma2_inv,
        }
    }

    #[inline]
    pub fn apply_letter(&self, letter: Letter, point: u32) -> u32 {
        self.generator(letter).apply(point)
    }

    /// Image of `start` under `word`, letters applied left to right.
    pub fn apply_word(&self, word: &GeneratorWord, start: usize) -> Result<u32> {
        if start >= self.degree() {
            return Err(Error::PointOutOfRange {
                point: start,
                degree: self.degree(),
            });
        }
        Ok(word
            .letters()
            .iter()
            .fold(start as u32, |x, &l| self.apply_letter(l, x)))
    }

    /// Membership mask of the orbit of `0`.
    pub fn orbit_of_basepoint(&self) -> Vec<bool> {
        let n = self.degree();
        let mut seen = vec![false; n];
        if n == 0 {
            return seen;
        }
        let mut queue = VecDeque::from([0u32]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for letter in Letter::ALL {
                let y = self.apply_letter(letter, x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn is_transitive(&self) -> bool {
        self.degree() >= 1 && self.orbit_of_basepoint().iter().all(|&s| s)
    }

    /// Index of the coset containing `word`; `0` iff the word stabilizes `0`.
    pub fn coset_of(&self, word: &GeneratorWord) -> Result<u32> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        self.apply_word(word, 0)
    }

    /// `(π σ₁ π⁻¹, π σ₂ π⁻¹)`.
    pub fn conjugate_by(&self, relabel: &Permutation) -> Result<Self> {
        PermutationPair::new(
            self.sigma1.conjugate_by(relabel)?,
            self.sigma2.conjugate_by(relabel)?,
        )
    }

    /// The relabeling `π` with `π(0) = 0` carrying `self` onto `other`, if any.
    ///
    /// Built by a simultaneous breadth-first walk from `0`: the point a word
    /// reaches under `self` must be sent to the point the same word reaches
    /// under `other`. A clash, or two points sent to the same place, means no
    /// such relabeling exists.
    pub fn relabeling_to(&self, other: &PermutationPair) -> Result<Option<Permutation>> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        if !self.is_transitive() || !other.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let n = self.degree();
        const UNSET: u32 = u32::MAX;
        let mut map = vec![UNSET; n];
        let mut used = vec![false; n];
        map[0] = 0;
        used[0] = true;
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            let image = map[x as usize];
            for letter in Letter::ALL {
                let y = self.apply_letter(letter, x);
                let y_image = other.apply_letter(letter, image);
                match map[y as usize] {
                    UNSET => {
                        if used[y_image as usize] {
                            return Ok(None);
                        }
                        map[y as usize] = y_image;
                        used[y_image as usize] = true;
                        queue.push_back(y);
                    }
                    assigned if assigned != y_image => return Ok(None),
                    _ => {}
                }
            }
        }
        Ok(Some(Permutation::from_images_unchecked(map)))
    }

    /// Whether both pairs define the same stabilizer subgroup of `F₂`.
    pub fn equivalent_to(&self, other: &PermutationPair) -> Result<bool> {
        Ok(self.relabeling_to(other)?.is_some())
    }

    /// Representative of the equivalence class: points renamed in the order
    /// a breadth-first walk from `0` discovers them (letters in
    /// [`Letter::ALL`] order). Equal canonical forms ⇔ equivalent pairs.
    pub fn canonical_form(&self) -> Result<PermutationPair> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let n = self.degree();
        let mut label = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        label[0] = 0;
        order.push(0u32);
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for letter in Letter::ALL {
                let y = self.apply_letter(letter, x);
                if label[y as usize] == u32::MAX {
                    label[y as usize] = order.len() as u32;
                    order.push(y);
                }
            }
        }
        self.conjugate_by(&Permutation::from_images_unchecked(label))
    }
}

/// Free-function form of [`PermutationPair::apply_word`].
pub fn apply_word(pair: &PermutationPair, word: &GeneratorWord, start: usize) -> Result<u32> {
    pair.apply_word(word, start)
}

pub fn is_transitive(pair: &PermutationPair) -> bool {
    pair.is_transitive()
}

pub fn coset_of(pair: &PermutationPair, word: &GeneratorWord) -> Result<u32> {
    pair.coset_of(word)
}

pub fn pairs_equivalent(p1: &PermutationPair, p2: &PermutationPair) -> Result<bool> {
    p1.equivalent_to(p2)
}
