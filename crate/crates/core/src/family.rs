//! The doubling family of index-`r` subgroups.
//!
//! The first generator is the cyclic shift `σ₁: i ↦ i + 1 mod r`. The second
//! generator ranges over the set `S` of permutations with `σ(i) = 2i` on a
//! set of constrained inputs below `r/2`. Every member of the family shares
//! the same short coset representatives: to reach coset `2i`, read the binary
//! digits of `i` from the top and alternate "add `2d`" (`a^{2d}`) with
//! "double" (`b`). The doubling step only ever sees even points strictly
//! between `0` and `r/2`, so it never leaves the constrained inputs.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::seq::SliceRandom;

use crate::error::{domain, Result};
use crate::numeric::{factorial, ln_factorial, ln_rational};
use crate::perm::{next_lex, Permutation};
use crate::rng::{stream_rng, ExperimentRng};
use crate::word::{GeneratorWord, Letter};

/// Smallest degree the family is defined for.
pub const MIN_FAMILY_DEGREE: usize = 5;

/// Which inputs `i` with `0 < i < r/2` are pinned to `σ(i) = 2i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ConstraintMode {
    /// Even `i` only. Reproduces the wording of the construction; the family
    /// is larger than `(⌊r/2⌋+1)!`.
    EvenOnly,
    /// Every `i`. The family has exactly `(⌊r/2⌋+1)!` members.
    #[default]
    AllBelowHalf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    degree: usize,
    mode: ConstraintMode,
}

impl FamilySpec {
    pub fn new(degree: usize, mode: ConstraintMode) -> Result<Self> {
        if degree < MIN_FAMILY_DEGREE {
            return Err(domain(format!(
                "family degree must be at least {MIN_FAMILY_DEGREE}, got {degree}"
            )));
        }
        if degree > u32::MAX as usize / 2 {
            return Err(domain(format!("family degree {degree} is too large")));
        }
        Ok(FamilySpec { degree, mode })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn mode(&self) -> ConstraintMode {
        self.mode
    }

    fn is_constrained(&self, i: usize) -> bool {
        i > 0
            && 2 * i < self.degree
            && match self.mode {
                ConstraintMode::EvenOnly => i.is_multiple_of(2),
                ConstraintMode::AllBelowHalf => true,
            }
    }

    /// The pinned value `σ(i) = 2i`, or `None` for a free input.
    pub fn constraint(&self, i: u32) -> Option<u32> {
        self.is_constrained(i as usize).then_some(2 * i)
    }

    pub fn constrained_inputs(&self) -> Vec<u32> {
        (1..self.degree as u32)
            .take_while(|&i| 2 * (i as usize) < self.degree)
            .filter(|&i| self.is_constrained(i as usize))
            .collect()
    }

    pub fn free_inputs(&self) -> Vec<u32> {
        (0..self.degree as u32)
            .filter(|&i| !self.is_constrained(i as usize))
            .collect()
    }

    pub fn free_outputs(&self) -> Vec<u32> {
        let mut pinned = alloc::vec![false; self.degree];
        for i in self.constrained_inputs() {
            pinned[2 * i as usize] = true;
        }
        (0..self.degree as u32)
            .filter(|&v| !pinned[v as usize])
            .collect()
    }

    /// Number of free inputs; the family has `free_count()!` members.
    pub fn free_count(&self) -> usize {
        self.degree - self.constrained_inputs().len()
    }

    /// Whether `sigma` satisfies every doubling constraint of this family.
    pub fn contains(&self, sigma: &Permutation) -> bool {
        sigma.degree() == self.degree
            && self
                .constrained_inputs()
                .into_iter()
                .all(|i| sigma.apply(i) == 2 * i)
    }
}

/// The cyclic shift `i ↦ i + 1 mod r`.
pub fn sigma1(r: usize) -> Result<Permutation> {
    if r == 0 {
        return Err(domain("degree must be at least 1"));
    }
    Ok(Permutation::cyclic_shift(r))
}

/// `|S| = (r − m)!` with `m` the number of constrained inputs.
pub fn family_size(spec: &FamilySpec) -> BigUint {
    factorial(spec.free_count() as u64)
}

pub fn family_size_ln(spec: &FamilySpec) -> f64 {
    ln_factorial(spec.free_count() as u64)
}

/// Members of `S`: all of them in lexicographic order of the free-point
/// assignment when `|S| ≤ budget`, otherwise `budget` uniform samples drawn
/// from the stream `(seed, r)`.
pub fn family_members(spec: &FamilySpec, budget: usize, seed: u64) -> FamilyMembers {
    let free_inputs = spec.free_inputs();
    let free_outputs = spec.free_outputs();
    let mut base = alloc::vec![0u32; spec.degree];
    for i in spec.constrained_inputs() {
        base[i as usize] = 2 * i;
    }
    // |S| ≤ budget is decided in log space first so huge families never
    // materialize their size.
    let exhaustive = family_size_ln(spec) <= libm::log(budget.max(1) as f64) + 1.0
        && family_size(spec) <= BigUint::from(budget);
    let state = if exhaustive {
        MemberState::Exhaustive {
            assignment: Some(free_outputs),
        }
    } else {
        MemberState::Sampled {
            rng: Box::new(stream_rng(seed, spec.degree as u64)),
            outputs: free_outputs,
            remaining: budget,
        }
    };
    FamilyMembers {
        base,
        free_inputs,
        state,
    }
}

pub struct FamilyMembers {
    base: Vec<u32>,
    free_inputs: Vec<u32>,
    state: MemberState,
}

enum MemberState {
    Exhaustive {
        assignment: Option<Vec<u32>>,
    },
    Sampled {
        rng: Box<ExperimentRng>,
        outputs: Vec<u32>,
        remaining: usize,
    },
}

impl FamilyMembers {
    /// Whether the stream walks the whole family rather than sampling it.
    pub fn is_exhaustive(&self) -> bool {
        matches!(self.state, MemberState::Exhaustive { .. })
    }

    fn assemble(base: &[u32], free_inputs: &[u32], outputs: &[u32]) -> Permutation {
        let mut images = base.to_vec();
        for (&i, &v) in free_inputs.iter().zip(outputs) {
            images[i as usize] = v;
        }
        Permutation::from_images_unchecked(images)
    }
}

impl Iterator for FamilyMembers {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        match &mut self.state {
            MemberState::Exhaustive { assignment } => {
                let current = assignment.as_mut()?;
                let member = Self::assemble(&self.base, &self.free_inputs, current);
                if !next_lex(current) {
                    *assignment = None;
                }
                Some(member)
            }
            MemberState::Sampled {
                rng,
                outputs,
                remaining,
            } => {
                if *remaining == 0 {
                    return None;
                }
                *remaining -= 1;
                outputs.shuffle(rng.as_mut());
                Some(Self::assemble(&self.base, &self.free_inputs, outputs))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetRepresentative {
    pub coset: u32,
    pub word: GeneratorWord,
}

/// Representatives of cosets `2i` and `2i + 1` (the latter reduced mod `r`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentativePair {
    pub even: CosetRepresentative,
    pub odd: CosetRepresentative,
}

/// The binary-expansion word `a^{2d_k} b a^{2d_{k−1}} b … b a^{2d_0}` reaching
/// coset `2i` from `0` for every member of the family, and the same word
/// followed by `a` for coset `2i + 1`.
pub fn coset_rep_word(i: usize, r: usize) -> Result<RepresentativePair> {
    if r < MIN_FAMILY_DEGREE {
        return Err(domain(format!(
            "family degree must be at least {MIN_FAMILY_DEGREE}, got {r}"
        )));
    }
    if 2 * i >= r {
        return Err(domain(format!("need i < r/2, got i = {i}, r = {r}")));
    }
    let mut word = GeneratorWord::new();
    if i > 0 {
        let top = usize::BITS - 1 - i.leading_zeros();
        for bit in (0..=top).rev() {
            if bit != top {
                word.push(Letter::B);
            }
            let digit = (i >> bit) & 1;
            word.push_power(Letter::A, 2 * digit);
        }
    }
    let mut odd_word = word.clone();
    odd_word.push(Letter::A);
    Ok(RepresentativePair {
        even: CosetRepresentative {
            coset: (2 * i) as u32,
            word,
        },
        odd: CosetRepresentative {
            coset: ((2 * i + 1) % r) as u32,
            word: odd_word,
        },
    })
}

/// `3(1 + log₂ i)`, the length cap for the representative of coset `2i`.
pub fn length_bound(i: usize) -> f64 {
    3.0 * (1.0 + libm::log2(i as f64))
}

/// Outcome of running a word against the whole family at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyTrace {
    pub landing: u32,
    /// Every point the word handed to `b` (or `b⁻¹`), in order.
    pub doubling_inputs: Vec<u32>,
}

/// Evaluates `word` from `0` knowing `σ₂` only on the constrained inputs.
///
/// Success means the landing point is the same for every member of `S`; an
/// `Err` carries the first free point the word needed `σ₂` (or `σ₂⁻¹`) at.
pub fn trace_on_family(
    spec: &FamilySpec,
    word: &GeneratorWord,
) -> core::result::Result<FamilyTrace, u32> {
    let r = spec.degree as u32;
    let mut x = 0u32;
    let mut doubling_inputs = Vec::new();
    for &letter in word.letters() {
        x = match letter {
            Letter::A => (x + 1) % r,
            Letter::AInv => (x + r - 1) % r,
            Letter::B => {
                doubling_inputs.push(x);
                spec.constraint(x).ok_or(x)?
            }
            Letter::BInv => {
                doubling_inputs.push(x);
                if x.is_multiple_of(2) && spec.constraint(x / 2) == Some(x) {
                    x / 2
                } else {
                    return Err(x);
                }
            }
        };
    }
    Ok(FamilyTrace {
        landing: x,
        doubling_inputs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentativeReport {
    pub degree: usize,
    pub mode: ConstraintMode,
    pub words_checked: usize,
    /// Cosets whose representative missed, or touched a free input.
    pub failures: Vec<u32>,
    /// `i` values whose even or odd word exceeded `3(1 + log₂ i)`.
    pub length_violations: Vec<usize>,
    pub max_even_length: usize,
    pub max_length: usize,
}

impl RepresentativeReport {
    pub fn all_valid(&self) -> bool {
        self.failures.is_empty() && self.length_violations.is_empty()
    }
}

/// Checks every representative symbolically against the whole family.
pub fn verify_representatives(spec: &FamilySpec) -> RepresentativeReport {
    let r = spec.degree;
    let mut report = RepresentativeReport {
        degree: r,
        mode: spec.mode,
        words_checked: 0,
        failures: Vec::new(),
        length_violations: Vec::new(),
        max_even_length: 0,
        max_length: 0,
    };
    for i in 0..r.div_ceil(2) {
        let reps = coset_rep_word(i, r).expect("i < r/2 and r >= 5");
        for rep in [&reps.even, &reps.odd] {
            report.words_checked += 1;
            report.max_length = report.max_length.max(rep.word.len());
            match trace_on_family(spec, &rep.word) {
                Ok(t) if t.landing == rep.coset => {}
                _ => report.failures.push(rep.coset),
            }
        }
        report.max_even_length = report.max_even_length.max(reps.even.word.len());
        // the odd word is the even word plus one letter
        if i >= 1 && reps.odd.word.len() as f64 > length_bound(i) {
            report.length_violations.push(i);
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundCount {
    /// `(⌊r/2⌋+1)! / (r·k)`.
    pub exact: BigRational,
    /// Its natural log via log-gamma.
    pub ln: f64,
}

impl LowerBoundCount {
    /// Natural log computed from the exact value.
    pub fn ln_from_exact(&self) -> f64 {
        ln_rational(&self.exact).expect("count is positive")
    }
}

/// Lower bound on non-equivalent covers: family size divided by the
/// conjugacy cap `r·k` (`k` the commensurator index).
pub fn lower_bound_count(r: usize, k: u64) -> Result<LowerBoundCount> {
    if r < MIN_FAMILY_DEGREE {
        return Err(domain(format!(
            "degree must be at least {MIN_FAMILY_DEGREE}, got {r}"
        )));
    }
    if k == 0 {
        return Err(domain("commensurator index k must be at least 1"));
    }
    let m = (r / 2 + 1) as u64;
    let exact = BigRational::new(
        BigInt::from(factorial(m)),
        BigInt::from(r as u64) * BigInt::from(k),
    );
    Ok(LowerBoundCount {
        exact,
        ln: lower_bound_ln(r, k),
    })
}

/// Log-gamma form of [`lower_bound_count`]; usable far beyond exact range.
pub fn lower_bound_ln(r: usize, k: u64) -> f64 {
    ln_factorial((r / 2 + 1) as u64) - libm::log(r as f64) - libm::log(k as f64)
}
