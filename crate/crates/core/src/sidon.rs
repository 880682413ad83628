//! Sidon set constructions and the two-phase sumset-growth pipeline that
//! witnesses cubic growth of `|Σ*X|` constructively.
//!
//! A set is *Sidon* when all pairwise sums of its elements are distinct.
//! Starting from `X = ∅` inside a Sidon set `A`, the pipeline adds one pair
//! per step: the *small phase* picks the pair whose sum `b` minimizes the
//! overlap `|Σ*X ∩ (Σ*X + b)|`, multiplying `|Σ*X|` by at least 3/2; once
//! `|Σ*X|` outgrows that phase's hypothesis, the *large phase* picks pairs
//! from the quarter of smallest unused elements, adding at least
//! `⌈½·C(⌊|A|/4⌋, 2)⌉` new sums per step. Every guarantee is asserted at
//! run time, every step is recorded in a [`GrowthTrace`], and the
//! incrementally maintained sumset is cross-checked against a from-scratch
//! recomputation every fifth step.
//!
//! Elements must be nonnegative: the overlap-counting argument behind the
//! small phase needs every chosen `b = a₁ + a₂` to be strictly positive,
//! which distinct nonnegative elements guarantee. (The prime-indexed
//! construction below starts at 0, so nonnegativity rather than positivity
//! is the natural domain.)

use std::collections::HashSet;

use serde::Serialize;

use crate::bits::BitWindow;
use crate::budget::Caps;
use crate::error::{Error, Result};
use crate::intset::IntSet;
use crate::sumset::{is_sidon, restricted_sumset_bits};

/// Largest prime accepted by [`erdos_turan_sidon`].
pub const MAX_SIDON_PRIME: u64 = 1_000_000;

/// Largest length accepted by [`mian_chowla`].
pub const MAX_GREEDY_LENGTH: u64 = 10_000;

fn is_prime_trial(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The prime-indexed Sidon set `{2p·i + (i² mod p) : 0 ≤ i < p}`.
///
/// It has exactly `p` elements inside `[0, 2p²)`. Primality is checked by
/// trial division; for small `p` the Sidon property itself is re-verified,
/// beyond that the classical construction is trusted (the check is
/// quadratic in `p`).
pub fn erdos_turan_sidon(p: u64) -> Result<IntSet> {
    if p > MAX_SIDON_PRIME {
        return Err(Error::range(format!(
            "prime {p} exceeds the supported maximum {MAX_SIDON_PRIME}"
        )));
    }
    if !is_prime_trial(p) {
        return Err(Error::NotPrime { p });
    }
    let elems: Vec<i64> = (0..p).map(|i| (2 * p * i + (i * i) % p) as i64).collect();
    let set = IntSet::new(elems);
    assert_eq!(set.len() as u64, p, "residues must map to distinct elements");
    if p <= 1000 {
        assert!(is_sidon(&set), "prime-indexed construction failed the Sidon check");
    }
    Ok(set)
}

/// The first `k` terms of the greedy Sidon sequence from 1: always append
/// the smallest positive integer that keeps the set Sidon.
pub fn mian_chowla(k: u64) -> Result<IntSet> {
    if k < 1 {
        return Err(Error::range("greedy length k must be at least 1"));
    }
    if k > MAX_GREEDY_LENGTH {
        return Err(Error::range(format!(
            "greedy length {k} exceeds the supported maximum {MAX_GREEDY_LENGTH}"
        )));
    }
    let mut elems: Vec<i64> = Vec::with_capacity(k as usize);
    let mut sums: HashSet<i64> = HashSet::new();
    let mut candidate = 1i64;
    while elems.len() < k as usize {
        // Admissible iff no sum candidate + x (x already in, or the double)
        // collides with an existing pairwise sum. Rejections are permanent —
        // the sum set only grows — so the candidate never restarts.
        let ok = elems
            .iter()
            .chain(std::iter::once(&candidate))
            .all(|&x| !sums.contains(&(candidate + x)));
        if ok {
            for &x in &elems {
                sums.insert(candidate + x);
            }
            sums.insert(candidate + candidate);
            elems.push(candidate);
        }
        candidate += 1;
    }
    let set = IntSet::new(elems);
    debug_assert!(is_sidon(&set));
    Ok(set)
}

/// Which growth lemma produced a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Small,
    Large,
}

/// One growth step: the chosen pair, its sum, and the set sizes around it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GrowthStep {
    pub phase: Phase,
    pub a1: i64,
    pub a2: i64,
    /// `b = a1 + a2`.
    pub b: i64,
    pub x_size_before: u64,
    pub x_size_after: u64,
    pub sumset_before: u64,
    pub sumset_after: u64,
}

/// Why a phase stopped iterating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseEnd {
    /// `|Σ*X|` outgrew the phase's sumset hypothesis — the intended exit of
    /// the small phase.
    SumsetCap,
    /// `|X|` hit the phase's size cap.
    SizeCap,
    /// Too few unused elements remain to form another pair.
    TooFewUnused,
}

/// Full record of a two-phase growth run.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthTrace {
    pub a_size: u64,
    pub steps: Vec<GrowthStep>,
    pub small_steps: u64,
    pub large_steps: u64,
    /// Which small-phase hypothesis failed first. `SumsetCap` here means the
    /// sumset outgrew its cap before the size cap bound — the regime the
    /// growth argument expects for large sets.
    pub small_phase_end: PhaseEnd,
    pub large_phase_end: PhaseEnd,
    pub final_x: IntSet,
    pub final_sumset_size: u64,
    /// `|Σ*A|`, which the grown `|Σ*X|` can never exceed.
    pub ambient_sumset_size: u64,
    /// Empirical constant `|Σ*X| / |A|³`.
    pub cubic_constant: f64,
}

/// Shared entry validation for the growth operations.
fn validate_growth_input(a: &IntSet, x: &IntSet) -> Result<()> {
    if let Some(lo) = a.min() {
        if lo < 0 {
            return Err(Error::domain(
                "growth requires nonnegative elements (pair sums must be positive)",
            ));
        }
    }
    if !is_sidon(a) {
        return Err(Error::precondition("the ambient set A is not Sidon"));
    }
    if !x.is_subset_of(a) {
        return Err(Error::precondition("X must be a subset of A"));
    }
    Ok(())
}

/// All pairwise sums of distinct elements, with their pairs, ascending by
/// sum. For a Sidon source the sums are pairwise distinct (asserted).
fn pairwise_sums(elems: &[i64]) -> Result<Vec<(i64, i64, i64)>> {
    let mut out = Vec::with_capacity(elems.len() * (elems.len() - 1) / 2);
    for (i, &p) in elems.iter().enumerate() {
        for &q in &elems[i + 1..] {
            let b = p
                .checked_add(q)
                .ok_or_else(|| Error::overflow("summing a candidate pair"))?;
            out.push((b, p, q));
        }
    }
    out.sort_unstable();
    assert!(
        out.windows(2).all(|w| w[0].0 != w[1].0),
        "pairwise sums of a Sidon set must be distinct"
    );
    Ok(out)
}

/// Membership test tolerant of sums that overflow the window arithmetic.
fn bits_contains_sum(bits: &BitWindow, s: i64, b: i64) -> bool {
    match s.checked_add(b) {
        Some(t) => bits.contains(t),
        None => false,
    }
}

/// One small-phase step: adds the unused pair whose sum `b` minimizes
/// `|Σ*X ∩ (Σ*X + b)|` (ties to the smallest `b`), guaranteeing
/// `|Σ*X′| ≥ (3/2)|Σ*X|`.
///
/// Hypotheses: `A` Sidon with nonnegative elements, `X ⊆ A`,
/// `|X| ≤ |A|/2`, and `|Σ*X| ≤ C(⌊|A|/2⌋, 2)`.
pub fn grow_small_phase(a: &IntSet, x: &IntSet) -> Result<(IntSet, GrowthStep)> {
    grow_small_phase_with(a, x, &Caps::default())
}

/// [`grow_small_phase`] with explicit window caps.
pub fn grow_small_phase_with(
    a: &IntSet,
    x: &IntSet,
    caps: &Caps,
) -> Result<(IntSet, GrowthStep)> {
    validate_growth_input(a, x)?;
    let a_size = a.len() as u64;
    let x_size = x.len() as u64;
    let unused: Vec<i64> = a.iter().filter(|v| !x.contains(*v)).collect();
    if unused.len() < 2 {
        return Err(Error::degenerate(
            "fewer than two unused elements left to pair",
        ));
    }
    if 2 * x_size > a_size {
        return Err(Error::precondition(format!(
            "small phase needs |X| ≤ |A|/2, got |X| = {x_size}, |A| = {a_size}"
        )));
    }
    let x_bits = restricted_sumset_bits(x, caps)?;
    let sumset_before = x_bits.count();
    let half = a_size / 2;
    let sumset_cap = half * half.saturating_sub(1) / 2;
    if sumset_before > sumset_cap {
        return Err(Error::precondition(format!(
            "small phase needs |Σ*X| ≤ C(⌊|A|/2⌋, 2) = {sumset_cap}, got {sumset_before}"
        )));
    }

    let candidates = pairwise_sums(&unused)?;
    let mut best: Option<(u64, i64, i64, i64)> = None;
    for &(b, a1, a2) in &candidates {
        // |Σ*X ∩ (Σ*X + b)| — strictly-smaller updates keep the smallest b
        // on ties, because candidates ascend by b.
        let overlap = x_bits.shifted_and_count(&x_bits, b);
        if best.is_none_or(|(best_overlap, ..)| overlap < best_overlap) {
            best = Some((overlap, b, a1, a2));
        }
    }
    let (min_overlap, b, a1, a2) = best.expect("at least one candidate pair");

    // Existence bound: summing the overlaps over all b counts each ordered
    // pair of Σ*X at most once (the b values are distinct), so the minimum
    // is at most C(|Σ*X|, 2)/|B| ≤ ½|Σ*X| under the hypotheses.
    assert!(
        2 * min_overlap <= sumset_before,
        "no pair with overlap ≤ half the sumset exists (|Σ*X| = {sumset_before})"
    );

    let x_new: IntSet = x.iter().chain([a1, a2]).collect();
    let new_bits = restricted_sumset_bits(&x_new, caps)?;
    let sumset_after = new_bits.count();
    // Σ*X′ ⊇ Σ*X ∪ (Σ*X + b), of size 2|Σ*X| − overlap ≥ ⌈(3/2)|Σ*X|⌉.
    assert!(
        2 * sumset_after >= 3 * sumset_before,
        "small-phase growth fell below 3/2 ({sumset_before} → {sumset_after})"
    );
    let step = GrowthStep {
        phase: Phase::Small,
        a1,
        a2,
        b,
        x_size_before: x_size,
        x_size_after: x_size + 2,
        sumset_before,
        sumset_after,
    };
    Ok((x_new, step))
}

/// One large-phase step: with `A′` the `⌊|A|/4⌋` smallest unused elements
/// and `S` the `|B|` largest current sums, adds the pair of `A′` whose sum
/// `b` maximizes `|(S + b) ∖ Σ*X|` (ties to the smallest `b`), guaranteeing
/// at least `⌈½·C(⌊|A|/4⌋, 2)⌉` new sums.
///
/// Hypotheses: `A` Sidon with nonnegative elements, `X ⊆ A`,
/// `|X| ≤ 3|A|/4`, and `|Σ*X| ≥ C(⌊|A|/4⌋, 2)`.
pub fn grow_large_phase(a: &IntSet, x: &IntSet) -> Result<(IntSet, GrowthStep)> {
    grow_large_phase_with(a, x, &Caps::default())
}

/// [`grow_large_phase`] with explicit window caps.
pub fn grow_large_phase_with(
    a: &IntSet,
    x: &IntSet,
    caps: &Caps,
) -> Result<(IntSet, GrowthStep)> {
    validate_growth_input(a, x)?;
    let a_size = a.len() as u64;
    let x_size = x.len() as u64;
    let quarter = (a_size / 4) as usize;
    if quarter < 2 {
        return Err(Error::degenerate(
            "⌊|A|/4⌋ < 2 leaves no pairs to draw from",
        ));
    }
    let unused: Vec<i64> = a.iter().filter(|v| !x.contains(*v)).collect();
    if unused.len() < quarter {
        return Err(Error::degenerate(format!(
            "only {} unused elements, need ⌊|A|/4⌋ = {quarter}",
            unused.len()
        )));
    }
    if 4 * x_size > 3 * a_size {
        return Err(Error::precondition(format!(
            "large phase needs |X| ≤ 3|A|/4, got |X| = {x_size}, |A| = {a_size}"
        )));
    }
    let x_bits = restricted_sumset_bits(x, caps)?;
    let sumset_before = x_bits.count();
    let b_size = (quarter * (quarter - 1) / 2) as u64;
    if sumset_before < b_size {
        return Err(Error::precondition(format!(
            "large phase needs |Σ*X| ≥ C(⌊|A|/4⌋, 2) = {b_size}, got {sumset_before}"
        )));
    }

    // A′ = smallest unused quarter; its pairwise sums form B (all distinct).
    let candidates = pairwise_sums(&unused[..quarter])?;
    debug_assert_eq!(candidates.len() as u64, b_size);

    // S = the |B| largest current sums. |B| ≤ |Σ*X| by the hypothesis.
    let all_sums = x_bits.values();
    let s_slice = &all_sums[all_sums.len() - b_size as usize..];

    // Counting bound: a pair (s, b) with s + b ∈ Σ*X pushes the i-th largest
    // sum past itself, so at most i−1 values of b spoil it; the spoiled
    // pairs number at most C(|B|, 2), leaving more than half of S × B good.
    let mut good_pairs: u64 = 0;
    for &(b, _, _) in &candidates {
        for &s in s_slice {
            if !bits_contains_sum(&x_bits, s, b) {
                good_pairs += 1;
            }
        }
    }
    assert!(
        2 * good_pairs > b_size * b_size,
        "fewer than half of S × B escape Σ*X ({good_pairs} of {})",
        b_size * b_size
    );

    let mut best: Option<(u64, i64, i64, i64)> = None;
    for &(b, a1, a2) in &candidates {
        let fresh = s_slice
            .iter()
            .filter(|&&s| !bits_contains_sum(&x_bits, s, b))
            .count() as u64;
        if best.is_none_or(|(best_fresh, ..)| fresh > best_fresh) {
            best = Some((fresh, b, a1, a2));
        }
    }
    let (fresh, b, a1, a2) = best.expect("at least one candidate pair");
    let gain_floor = b_size.div_ceil(2);
    assert!(
        fresh >= gain_floor,
        "best pair adds {fresh} sums, below the guaranteed ⌈|B|/2⌉ = {gain_floor}"
    );

    let x_new: IntSet = x.iter().chain([a1, a2]).collect();
    let new_bits = restricted_sumset_bits(&x_new, caps)?;
    let sumset_after = new_bits.count();
    assert!(
        sumset_after >= sumset_before + gain_floor,
        "large-phase growth fell below its floor ({sumset_before} → {sumset_after})"
    );
    let step = GrowthStep {
        phase: Phase::Large,
        a1,
        a2,
        b,
        x_size_before: x_size,
        x_size_after: x_size + 2,
        sumset_before,
        sumset_after,
    };
    Ok((x_new, step))
}

/// Runs the full two-phase pipeline from `X = ∅`: small phase until one of
/// its hypotheses fails, then large phase until its size cap (or element
/// supply) is exhausted. Requires `A` Sidon with at least 8 nonnegative
/// elements.
///
/// The trace records every step, both phase-end reasons, and the final
/// empirical constant `|Σ*X| / |A|³`. The incrementally maintained sumset is*
/// compared to a from-scratch recomputation every fifth step and against
/// each step's own report on every step.
pub fn sidon_cubic_lowerbound(a: &IntSet) -> Result<GrowthTrace> {
    sidon_cubic_lowerbound_with(a, &Caps::default())
}

/// [`sidon_cubic_lowerbound`] with explicit window caps.
pub fn sidon_cubic_lowerbound_with(a: &IntSet, caps: &Caps) -> Result<GrowthTrace> {
    validate_growth_input(a, &IntSet::empty())?;
    let a_size = a.len() as u64;
    if a_size < 8 {
        return Err(Error::precondition(format!(
            "the growth schedule needs |A| ≥ 8, got {a_size}"
        )));
    }
    let ambient_bits = restricted_sumset_bits(a, caps)?;
    let ambient_sumset_size = ambient_bits.count();

    // Incremental sumset of X, maintained in the ambient window: adjoining
    // an element e maps Σ*X to Σ*X ∪ (Σ*X + e), which is exactly shift_or.
    let mut inc = BitWindow::new(ambient_bits.lo().min(0), ambient_bits.hi(), caps)?;
    inc.insert(0);

    let mut x = IntSet::empty();
    let mut steps: Vec<GrowthStep> = Vec::new();
    let half = a_size / 2;
    let small_sumset_cap = half * half.saturating_sub(1) / 2;

    let apply = |x: &mut IntSet,
                     inc: &mut BitWindow,
                     steps: &mut Vec<GrowthStep>,
                     (x_new, step): (IntSet, GrowthStep)|
     -> Result<()> {
        inc.shift_or(step.a1);
        inc.shift_or(step.a2);
        assert_eq!(
            inc.count(),
            step.sumset_after,
            "incremental sumset size diverged from the step's own count"
        );
        assert!(
            step.sumset_after > step.sumset_before,
            "Σ*X must grow strictly every step"
        );
        *x = x_new;
        steps.push(step);
        if steps.len().is_multiple_of(5) {
            let scratch = restricted_sumset_bits(x, caps)?;
            assert_eq!(
                scratch.values(),
                inc.values(),
                "incremental sumset diverged from the from-scratch recomputation"
            );
        }
        Ok(())
    };

    // Small phase: iterate until a hypothesis fails, recording which.
    let small_phase_end = loop {
        if a_size - (x.len() as u64) < 2 {
            break PhaseEnd::TooFewUnused;
        }
        if 2 * x.len() as u64 > a_size {
            break PhaseEnd::SizeCap;
        }
        if inc.count() > small_sumset_cap {
            break PhaseEnd::SumsetCap;
        }
        let grown = grow_small_phase_with(a, &x, caps)?;
        apply(&mut x, &mut inc, &mut steps, grown)?;
    };
    let small_steps = steps.len() as u64;

    // Large phase: iterate until the size cap or the element supply binds.
    // Its sumset-floor hypothesis is expected to hold on entry; if it does
    // not, the step function reports the violation honestly.
    let quarter = a_size / 4;
    let large_phase_end = loop {
        if a_size - (x.len() as u64) < quarter {
            break PhaseEnd::TooFewUnused;
        }
        if 4 * x.len() as u64 > 3 * a_size {
            break PhaseEnd::SizeCap;
        }
        let grown = grow_large_phase_with(a, &x, caps)?;
        apply(&mut x, &mut inc, &mut steps, grown)?;
    };
    let large_steps = steps.len() as u64 - small_steps;

    let final_sumset_size = inc.count();
    assert!(
        final_sumset_size <= ambient_sumset_size,
        "Σ*X exceeded Σ*A, which is impossible for X ⊆ A"
    );
    debug_assert!(is_sidon(&x));
    let cubic_constant = final_sumset_size as f64 / (a_size as f64).powi(3);
    Ok(GrowthTrace {
        a_size,
        steps,
        small_steps,
        large_steps,
        small_phase_end,
        large_phase_end,
        final_x: x,
        final_sumset_size,
        ambient_sumset_size,
        cubic_constant,
    })
}
