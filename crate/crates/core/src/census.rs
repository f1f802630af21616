//! Census of index-`r` subgroups of `F₂`, counted two independent ways.
//!
//! [`enumerate_transitive_pairs`] walks every pair of permutations of degree
//! `r` and groups the transitive ones by subgroup; [`hall_subgroup_count`]
//! evaluates Hall's recurrence
//! `a_n = n·n! − Σ_{i<n} (n−i)!·a_i`, `a_1 = 1`, exactly.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::error::{domain, Error, Result};
use crate::numeric::factorial;
use crate::pair::PermutationPair;
use crate::perm::{next_lex, Permutation};

/// Largest degree the exhaustive walk accepts; `(7!)² ≈ 2.5·10⁷` pairs.
pub const ENUMERATION_CUTOFF: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub degree: usize,
    pub total_pairs: u64,
    pub transitive_pairs: u64,
    pub classes: u64,
    /// Every class holds exactly `(r−1)!` pairs.
    pub uniform_class_size: bool,
}

// Small-degree permutations are kept as fixed arrays so the inner loop of the
// walk never allocates.
#[derive(Clone, Copy)]
struct SmallPerm {
    fwd: [u8; ENUMERATION_CUTOFF],
    inv: [u8; ENUMERATION_CUTOFF],
}

fn small_perms(r: usize) -> Vec<SmallPerm> {
    let mut cur: Vec<u8> = (0..r as u8).collect();
    let mut out = Vec::new();
    loop {
        let mut fwd = [0u8; ENUMERATION_CUTOFF];
        let mut inv = [0u8; ENUMERATION_CUTOFF];
        for (i, &v) in cur.iter().enumerate() {
            fwd[i] = v;
            inv[v as usize] = i as u8;
        }
        out.push(SmallPerm { fwd, inv });
        if !next_lex(&mut cur) {
            break;
        }
    }
    out
}

fn transitive(r: usize, a: &SmallPerm, b: &SmallPerm) -> bool {
    let full: u8 = (1u8 << r) - 1;
    let mut orbit: u8 = 1;
    loop {
        let mut next = orbit;
        let mut bits = orbit;
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            next |= (1 << a.fwd[x]) | (1 << b.fwd[x]);
        }
        if next == orbit {
            return orbit == full;
        }
        orbit = next;
    }
}

/// Packed canonical form; agrees with [`PermutationPair::canonical_form`].
fn canonical_key(r: usize, a: &SmallPerm, b: &SmallPerm) -> u64 {
    const UNSET: u8 = u8::MAX;
    let mut label = [UNSET; ENUMERATION_CUTOFF];
    let mut order = [0u8; ENUMERATION_CUTOFF];
    let mut len = 1;
    label[0] = 0;
    let mut head = 0;
    while head < len {
        let x = order[head] as usize;
        head += 1;
        for y in [a.fwd[x], a.inv[x], b.fwd[x], b.inv[x]] {
            if label[y as usize] == UNSET {
                label[y as usize] = len as u8;
                order[len] = y;
                len += 1;
            }
        }
    }
    let mut key = 0u64;
    for x in 0..r {
        let lx = label[x] as u64;
        key |= (label[a.fwd[x] as usize] as u64) << (3 * lx);
        key |= (label[b.fwd[x] as usize] as u64) << (3 * (r as u64 + lx));
    }
    key
}

/// Tally for one fixed first generator. Tallies over disjoint sets of first
/// generators can be merged, so the walk splits cleanly across workers.
#[derive(Debug, Clone, Default)]
pub struct CensusTally {
    total_pairs: u64,
    transitive_pairs: u64,
    class_sizes: BTreeMap<u64, u64>,
}

impl CensusTally {
    pub fn merge(&mut self, other: CensusTally) {
        self.total_pairs += other.total_pairs;
        self.transitive_pairs += other.transitive_pairs;
        for (k, v) in other.class_sizes {
            *self.class_sizes.entry(k).or_default() += v;
        }
    }

    pub fn finish(self, degree: usize) -> CensusRow {
        let class_size = factorial(degree.saturating_sub(1) as u64)
            .to_u64()
            .unwrap_or(u64::MAX);
        CensusRow {
            degree,
            total_pairs: self.total_pairs,
            transitive_pairs: self.transitive_pairs,
            classes: self.class_sizes.len() as u64,
            uniform_class_size: self.class_sizes.values().all(|&c| c == class_size),
        }
    }
}

fn check_census_degree(r: usize) -> Result<()> {
    if r == 0 {
        return Err(domain("census degree must be at least 1"));
    }
    if r > ENUMERATION_CUTOFF {
        return Err(Error::AboveCutoff {
            degree: r,
            cutoff: ENUMERATION_CUTOFF,
        });
    }
    Ok(())
}

/// Number of first generators (`r!`), i.e. the valid `outer` range for
/// [`tally_for_outer`].
pub fn outer_count(r: usize) -> Result<usize> {
    check_census_degree(r)?;
    Ok((1..=r).product())
}

/// Walks all second generators against the `outer`-th first generator (in
/// lexicographic order).
pub fn tally_for_outer(r: usize, outer: usize) -> Result<CensusTally> {
    check_census_degree(r)?;
    let perms = small_perms(r);
    let a = perms
        .get(outer)
        .ok_or_else(|| domain("outer index out of range"))?;
    Ok(tally_block(r, core::slice::from_ref(a), &perms))
}

fn tally_block(r: usize, outers: &[SmallPerm], perms: &[SmallPerm]) -> CensusTally {
    let mut tally = CensusTally::default();
    for a in outers {
        for b in perms {
            tally.total_pairs += 1;
            if transitive(r, a, b) {
                tally.transitive_pairs += 1;
                *tally.class_sizes.entry(canonical_key(r, a, b)).or_default() += 1;
            }
        }
    }
    tally
}

/// Exhaustive census of degree-`r` pairs, `1 ≤ r ≤ ENUMERATION_CUTOFF`.
pub fn enumerate_transitive_pairs(r: usize) -> Result<CensusRow> {
    check_census_degree(r)?;
    let perms = small_perms(r);
    Ok(tally_block(r, &perms, &perms).finish(r))
}

/// Equivalence by trying every relabeling that fixes `0`. Test oracle for
/// [`PermutationPair::equivalent_to`]; degree at most the enumeration cutoff.
pub fn equivalent_by_search(p1: &PermutationPair, p2: &PermutationPair) -> Result<bool> {
    if p1.degree() != p2.degree() {
        return Err(Error::DegreeMismatch {
            left: p1.degree(),
            right: p2.degree(),
        });
    }
    let r = p1.degree();
    if r > ENUMERATION_CUTOFF {
        return Err(Error::AboveCutoff {
            degree: r,
            cutoff: ENUMERATION_CUTOFF,
        });
    }
    if r == 0 {
        return Ok(true);
    }
    // Relabelings fixing 0 are exactly the first (r-1)! in lexicographic order.
    let mut relabel = Permutation::identity(r);
    loop {
        if relabel.apply(0) != 0 {
            return Ok(false);
        }
        let c = p1.conjugate_by(&relabel)?;
        if c.sigma1() == p2.sigma1() && c.sigma2() == p2.sigma2() {
            return Ok(true);
        }
        if !relabel.advance_lex() {
            return Ok(false);
        }
    }
}

/// Number of index-`r` subgroups of `F₂`.
pub fn hall_subgroup_count(r: usize) -> Result<BigUint> {
    if r == 0 {
        return Err(domain("subgroup index must be at least 1"));
    }
    Ok(hall_subgroup_counts(r).pop().expect("r >= 1"))
}

/// `[a_1, …, a_max]`.
pub fn hall_subgroup_counts(max: usize) -> Vec<BigUint> {
    let facts: Vec<BigInt> = (0..=max as u64)
        .map(|i| BigInt::from(factorial(i)))
        .collect();
    let mut counts: Vec<BigInt> = Vec::with_capacity(max);
    for n in 1..=max {
        let mut a = BigInt::from(n) * &facts[n];
        for (i, ai) in counts.iter().enumerate() {
            a -= &facts[n - (i + 1)] * ai;
        }
        if n == 1 {
            debug_assert!(a.is_one());
        }
        counts.push(a);
    }
    counts
        .into_iter()
        .map(|a| a.to_biguint().expect("subgroup counts are positive"))
        .collect()
}
