//! Colorings of `[n] = {1, …, n}`: product colorings, seeded random
//! colorings, backtracking construction of colorings without monochromatic
//! arithmetic progressions, and detectors for monochromatic progressions and
//! affine cubes.
//!
//! An *affine `k`-cube* is a set of the form `x₀ + Σ*A` where `A` is a set of
//! `k` distinct integers and `Σ*A` is its restricted sumset. Cubes are kept in
//! a canonical form here: `A` consists of distinct **positive** integers.
//! Negating an element of `A` and shifting `x₀` realizes the same set, so
//! positivity loses no cubes, and admitting `0` would collapse the cube to
//! dimension `k−1`.
//!
//! Everything in this module is deterministic. Random colorings are a pure
//! function of `(n, r, seed)` under the pinned generator in [`crate::rng`],
//! and both detectors document their tie-breaking order, so re-runs and
//! parallel runs reproduce witnesses bit for bit.

use serde::{Deserialize, Serialize};

use crate::budget::{NodeCounter, SearchBudget};
use crate::error::{Error, Result};
use crate::intset::{ApWitness, IntSet};
use crate::rng;
use crate::sumset::restricted_sumset;

/// Exact enumeration of all `2^n` colorings is refused above this domain
/// size; use sampling instead.
pub const EXACT_ENUMERATION_MAX_N: i64 = 20;

/// A total coloring of `[n]` with colors `{0, …, r−1}`.
///
/// Positions are 1-indexed to match the underlying interval `[1..n]`; the
/// color array is stored 0-indexed internally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    r: u32,
    colors: Vec<u32>,
}

impl Coloring {
    /// Builds a coloring from an explicit color array (position `i` gets
    /// `colors[i−1]`). Requires `r ≥ 1` and every entry `< r`.
    pub fn new(r: u32, colors: Vec<u32>) -> Result<Self> {
        if r < 1 {
            return Err(Error::range("color count r must be at least 1"));
        }
        if let Some(&bad) = colors.iter().find(|&&c| c >= r) {
            return Err(Error::domain(format!(
                "color {bad} is outside the palette 0..{r}"
            )));
        }
        Ok(Coloring { r, colors })
    }

    /// The constant coloring of `[n]` with a single color value.
    pub fn solid(n: i64, r: u32, color: u32) -> Result<Self> {
        if n < 0 {
            return Err(Error::range("domain size n must be nonnegative"));
        }
        Coloring::new(r, vec![color; n as usize])
    }

    /// Domain size `n`.
    pub fn n(&self) -> i64 {
        self.colors.len() as i64
    }

    /// Number of colors in the palette.
    pub fn r(&self) -> u32 {
        self.r
    }

    /// Color of position `i ∈ [1..n]`.
    pub fn color(&self, i: i64) -> u32 {
        assert!(
            1 <= i && i <= self.n(),
            "position {i} outside the domain [1..{}]",
            self.n()
        );
        self.colors[(i - 1) as usize]
    }

    /// The raw 0-indexed color array.
    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// All positions of one color, as a set.
    pub fn class(&self, color: u32) -> IntSet {
        (1..=self.n()).filter(|&i| self.color(i) == color).collect()
    }

    /// The color classes in palette order (possibly empty ones included).
    pub fn classes(&self) -> Vec<IntSet> {
        (0..self.r).map(|c| self.class(c)).collect()
    }

    /// Whether all listed positions share one color. Vacuously true for an
    /// empty or singleton list.
    pub fn is_monochromatic(&self, points: &[i64]) -> bool {
        match points.split_first() {
            None => true,
            Some((&first, rest)) => {
                let c = self.color(first);
                rest.iter().all(|&p| self.color(p) == c)
            }
        }
    }

    /// Renders the coloring as one line of digits (color of 1, color of 2,
    /// …). Only available for palettes of at most 10 colors.
    pub fn to_digit_line(&self) -> Result<String> {
        if self.r > 10 {
            return Err(Error::range(format!(
                "digit-line format supports at most 10 colors, palette has {}",
                self.r
            )));
        }
        Ok(self
            .colors
            .iter()
            .map(|&c| char::from(b'0' + c as u8))
            .collect())
    }

    /// Parses the digit-line format: one line of digits, with `#` comment
    /// lines and surrounding whitespace ignored. The palette size is inferred
    /// as the largest digit plus one.
    pub fn parse(text: &str) -> Result<Self> {
        let mut content: Option<&str> = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if content.is_some() {
                return Err(Error::parse(
                    "coloring files hold a single line of digits",
                ));
            }
            content = Some(line);
        }
        let line = content.ok_or_else(|| Error::parse("empty coloring"))?;
        let mut colors = Vec::with_capacity(line.len());
        for ch in line.chars() {
            match ch.to_digit(10) {
                Some(d) => colors.push(d),
                None => {
                    return Err(Error::parse(format!(
                        "invalid character {ch:?} in coloring digits"
                    )))
                }
            }
        }
        let r = colors.iter().max().copied().unwrap_or(0) + 1;
        Coloring::new(r, colors)
    }

    /// Reads a coloring from a digit-line file.
    pub fn from_file(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Coloring::parse(&std::fs::read_to_string(path)?)
    }
}

/// The product of two colorings of the same domain: position `i` gets color
/// `r₂·c₁(i) + c₂(i)` in a palette of `r₁·r₂` colors.
///
/// A set is monochromatic under the product if and only if it is
/// monochromatic under both factors.
pub fn product_coloring(c1: &Coloring, c2: &Coloring) -> Result<Coloring> {
    if c1.n() != c2.n() {
        return Err(Error::shape(format!(
            "product of colorings needs equal domains, got {} and {}",
            c1.n(),
            c2.n()
        )));
    }
    let r = c1
        .r
        .checked_mul(c2.r)
        .ok_or_else(|| Error::overflow("multiplying palette sizes"))?;
    let colors = c1
        .colors
        .iter()
        .zip(&c2.colors)
        .map(|(&a, &b)| c2.r * a + b)
        .collect();
    Coloring::new(r, colors)
}

/// A seeded uniform random coloring: position `i` gets
/// `value_at(seed, i−1) mod r`.
///
/// Deterministic in `(n, r, seed)`. Reducing a 64-bit value modulo `r`
/// biases each color by less than `r·2⁻⁶⁴`, which we accept and document
/// rather than paying for rejection sampling.
pub fn random_coloring(n: i64, r: u32, seed: u64) -> Result<Coloring> {
    if n < 0 {
        return Err(Error::range("domain size n must be nonnegative"));
    }
    if r < 2 {
        return Err(Error::range("random colorings need at least 2 colors"));
    }
    let colors = (0..n as u64)
        .map(|j| (rng::value_at(seed, j) % u64::from(r)) as u32)
        .collect();
    Coloring::new(r, colors)
}

/// Finds a monochromatic `k`-term arithmetic progression inside `[1..n]`, if
/// any exists: smallest difference first, then smallest start.
///
/// A 1-term progression is a single point, reported as start 1 with the
/// conventional difference 1.
pub fn find_mono_ap(c: &Coloring, k: u64) -> Option<ApWitness> {
    assert!(k >= 1, "progression length k must be at least 1");
    let n = c.n();
    if k == 1 {
        return if n >= 1 {
            Some(ApWitness::new(1, 1, 1))
        } else {
            None
        };
    }
    let steps = (k - 1) as i64;
    if n < k as i64 {
        return None;
    }
    for d in 1..=(n - 1) / steps {
        for start in 1..=n - steps * d {
            let color = c.color(start);
            if (1..=steps).all(|j| c.color(start + j * d) == color) {
                return Some(ApWitness::new(start, d, k));
            }
        }
    }
    None
}

/// Whether assigning color `c` to the next position (one past `prefix`)
/// completes a monochromatic `k`-term progression ending there.
///
/// `prefix[j]` is the color of position `j+1`; the new position is
/// `prefix.len() + 1`. Only progressions ending at the new position need
/// checking during left-to-right search, because older ones were checked
/// when their own endpoints were placed.
pub(crate) fn completes_mono_ap(prefix: &[u32], c: u32, k: i64) -> bool {
    let q = prefix.len() as i64 + 1;
    let steps = k - 1;
    if steps <= 0 {
        return true;
    }
    let mut d = 1;
    while steps * d < q {
        if (1..=steps).all(|j| prefix[(q - j * d - 1) as usize] == c) {
            return true;
        }
        d += 1;
    }
    false
}

/// Iterative first-fail backtracking over canonical colorings of `[n_max]`,
/// generic over the pruning predicate.
///
/// Canonical means restricted-growth order: a color may appear only after
/// all smaller colors have appeared, which fixes `color(1) = 0` and counts
/// each coloring once up to a permutation of the palette (for `r = 2`, once
/// up to the color swap). Completeness is preserved because the avoided
/// patterns are color-blind: permuting the palette of a valid coloring keeps
/// it valid.
///
/// `completes(prefix, c)` must report whether giving the next position color
/// `c` completes a forbidden monochromatic pattern; every node of the
/// explored tree is therefore a valid coloring of its own depth. Returns
/// `(best_depth, colors, reached)`: the largest depth attained, the first
/// coloring that attained it, and whether that depth is `n_max` (in which
/// case the search exits early). Colors are tried in increasing order, so
/// the returned coloring is the lexicographically smallest canonical valid
/// one of its length, and the node count of a full exhaustion is a
/// deterministic certificate size.
pub(crate) fn search_extremal<F>(
    n_max: usize,
    r: u32,
    counter: &mut NodeCounter,
    mut completes: F,
) -> Result<(usize, Vec<u32>, bool)>
where
    F: FnMut(&[u32], u32) -> bool,
{
    let mut colors: Vec<u32> = Vec::with_capacity(n_max);
    // used[p] = number of distinct colors among the first p positions
    let mut used: Vec<u32> = Vec::with_capacity(n_max + 1);
    used.push(0);
    // next[p] = next candidate color to try at position p
    let mut next: Vec<u32> = vec![0; n_max];
    let mut best_depth = 0;
    let mut best: Vec<u32> = Vec::new();
    if n_max == 0 {
        return Ok((0, best, true));
    }
    loop {
        let p = colors.len();
        if p == n_max {
            return Ok((n_max, colors, true));
        }
        let cap = used[p].min(r - 1);
        let mut placed = false;
        let mut c = next[p];
        while c <= cap {
            counter.tick()?;
            if !completes(&colors, c) {
                next[p] = c + 1;
                used.push(used[p].max(c + 1));
                colors.push(c);
                if colors.len() > best_depth {
                    best_depth = colors.len();
                    best = colors.clone();
                }
                if p + 1 < n_max {
                    next[p + 1] = 0;
                }
                placed = true;
                break;
            }
            c += 1;
        }
        if placed {
            continue;
        }
        if p == 0 {
            return Ok((best_depth, best, false));
        }
        colors.pop();
        used.pop();
    }
}

/// Searches for an `r`-coloring of `[n]` with no monochromatic `k`-term
/// progression, using the default node budget.
///
/// `Ok(None)` is a **certified** negative: the backtracking exhausted every
/// canonical coloring. Running out of nodes is the distinct error
/// [`Error::Timeout`].
pub fn find_ap_free_coloring(n: i64, k: u64, r: u32) -> Result<Option<Coloring>> {
    find_ap_free_coloring_with(n, k, r, &SearchBudget::default())
}

/// [`find_ap_free_coloring`] with an explicit node budget.
pub fn find_ap_free_coloring_with(
    n: i64,
    k: u64,
    r: u32,
    budget: &SearchBudget,
) -> Result<Option<Coloring>> {
    if n < 1 {
        return Err(Error::range("domain size n must be at least 1"));
    }
    if k < 1 {
        return Err(Error::range("progression length k must be at least 1"));
    }
    if r < 2 {
        return Err(Error::range("avoidance needs at least 2 colors"));
    }
    if k == 1 {
        // A single point is a monochromatic 1-term progression, so no
        // coloring of a nonempty domain avoids them.
        return Ok(None);
    }
    let mut counter = NodeCounter::new(budget);
    let (_, colors, reached) = search_extremal(n as usize, r, &mut counter, |prefix, c| {
        completes_mono_ap(prefix, c, k as i64)
    })?;
    if !reached {
        return Ok(None);
    }
    let coloring = Coloring::new(r, colors)?;
    // Self-verification: the constructed coloring must pass the independent
    // detector.
    assert!(
        find_mono_ap(&coloring, k).is_none(),
        "backtracking returned a coloring with a monochromatic progression"
    );
    Ok(Some(coloring))
}

/// A monochromatic affine cube `x₀ + Σ*A` found inside a coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeWitness {
    /// The cube's base point.
    pub x0: i64,
    /// The generator set: `|A| = k` distinct positive integers.
    #[serde(rename = "A")]
    pub a: IntSet,
    /// All realized points `x₀ + Σ*A`, inside `[1..n]`.
    pub realized: IntSet,
    /// The shared color.
    pub color: u32,
}

impl CubeWitness {
    /// Re-derives everything the witness claims: `A` has `k` distinct
    /// positive elements, `realized` equals `x₀ + Σ*A`, lies inside the
    /// domain, and is monochromatic in the claimed color.
    pub fn verify(&self, c: &Coloring, k: u64) -> bool {
        if self.a.len() as u64 != k || self.a.min().is_none_or(|m| m <= 0) {
            return false;
        }
        let sums = match restricted_sumset(&self.a) {
            Ok(s) => s,
            Err(_) => return false,
        };
        let translated: IntSet = sums.iter().map(|s| self.x0 + s).collect();
        translated == self.realized
            && self.realized.min().is_some_and(|lo| lo >= 1)
            && self.realized.max().is_some_and(|hi| hi <= c.n())
            && self.realized.iter().all(|p| c.color(p) == self.color)
    }
}

/// Recursive lexicographic scan over canonical generator sets `A`, then base
/// points `x₀` in increasing order; returns the first monochromatic cube.
fn search_mono_cube(
    c: &Coloring,
    k: usize,
    a: &mut Vec<i64>,
    sum: i64,
    sumset_cap: Option<u64>,
    counter: &mut NodeCounter,
) -> Result<Option<CubeWitness>> {
    let n = c.n();
    if a.len() == k {
        counter.tick()?;
        let gen = IntSet::new(a.clone());
        let sums = restricted_sumset(&gen)?;
        if let Some(cap) = sumset_cap {
            if sums.len() as u64 > cap {
                return Ok(None);
            }
        }
        for x0 in 1..=n - sum {
            counter.tick()?;
            let color = c.color(x0); // 0 ∈ Σ*A, so x₀ itself is realized
            if sums.iter().all(|s| c.color(x0 + s) == color) {
                let realized = sums.iter().map(|s| x0 + s).collect();
                let witness = CubeWitness {
                    x0,
                    a: gen,
                    realized,
                    color,
                };
                assert!(witness.verify(c, k as u64));
                return Ok(Some(witness));
            }
        }
        return Ok(None);
    }
    let rem = (k - a.len()) as i128;
    let mut v = a.last().map_or(1, |&last| last + 1);
    loop {
        // Cheapest completion picks v, v+1, …  — prune when even that
        // overflows the domain (the whole cube must fit in [1..n]).
        let min_tail = rem * v as i128 + rem * (rem - 1) / 2;
        if sum as i128 + min_tail > n as i128 - 1 {
            return Ok(None);
        }
        counter.tick()?;
        a.push(v);
        if let Some(w) = search_mono_cube(c, k, a, sum + v, sumset_cap, counter)? {
            return Ok(Some(w));
        }
        a.pop();
        v += 1;
    }
}

/// Finds a monochromatic affine `k`-cube inside the coloring, if one exists.
///
/// Generator sets are canonical (distinct positive integers, increasing) and
/// scanned in lexicographic order; for each `A`, base points `x₀` ascend.
/// The first hit is returned. `sumset_cap`, when given, skips generator sets
/// whose restricted sumset exceeds the cap; with `None` the search is
/// exhaustive over all cubes fitting in `[1..n]`.
pub fn find_mono_cube(
    c: &Coloring,
    k: u64,
    sumset_cap: Option<u64>,
) -> Result<Option<CubeWitness>> {
    find_mono_cube_with(c, k, sumset_cap, &SearchBudget::default())
}

/// [`find_mono_cube`] with an explicit node budget.
pub fn find_mono_cube_with(
    c: &Coloring,
    k: u64,
    sumset_cap: Option<u64>,
    budget: &SearchBudget,
) -> Result<Option<CubeWitness>> {
    if k < 1 {
        return Err(Error::range("cube dimension k must be at least 1"));
    }
    let mut counter = NodeCounter::new(budget);
    let mut a = Vec::with_capacity(k as usize);
    search_mono_cube(c, k as usize, &mut a, 0, sumset_cap, &mut counter)
}

/// How [`estimate_mono_cube_probability`] draws its colorings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TrialMode {
    /// Enumerate all `2^n` two-colorings (exact probability, zero standard
    /// error). Refused for `n >` [`EXACT_ENUMERATION_MAX_N`].
    Exact,
    /// Sample seeded random two-colorings; trial `t` uses the derived seed
    /// `derive_seed(seed, t)`, so the estimate is independent of thread
    /// count and scheduling.
    Sampled { trials: u64, seed: u64 },
}

/// The measured probability that a random 2-coloring of `[n]` contains a
/// monochromatic affine `k`-cube.
#[derive(Debug, Clone, Serialize)]
pub struct MonoCubeEstimate {
    pub n: i64,
    pub k: u64,
    /// `"exact"` or `"sampled"`.
    pub mode: &'static str,
    /// Colorings examined: `2^n` for exact mode, the trial count otherwise.
    pub trials: u64,
    /// Colorings containing a monochromatic cube.
    pub hits: u64,
    pub probability: f64,
    /// Binomial standard error `√(p̂(1−p̂)/trials)`; zero in exact mode.
    pub standard_error: f64,
    /// The seed used in sampled mode.
    pub seed: Option<u64>,
}

/// Collects the realized-point bitmasks of every canonical `k`-cube fitting
/// in `[1..n]` (bit `i` ↦ position `i+1`), deduplicated.
fn cube_realized_masks(
    n: i64,
    k: usize,
    a: &mut Vec<i64>,
    sum: i64,
    masks: &mut Vec<u64>,
    counter: &mut NodeCounter,
) -> Result<()> {
    if a.len() == k {
        let sums = restricted_sumset(&IntSet::new(a.clone()))?;
        for x0 in 1..=n - sum {
            counter.tick()?;
            let mut mask = 0u64;
            for s in sums.iter() {
                mask |= 1 << (x0 + s - 1);
            }
            masks.push(mask);
        }
        return Ok(());
    }
    let rem = (k - a.len()) as i128;
    let mut v = a.last().map_or(1, |&last| last + 1);
    loop {
        let min_tail = rem * v as i128 + rem * (rem - 1) / 2;
        if sum as i128 + min_tail > n as i128 - 1 {
            masks.sort_unstable();
            masks.dedup();
            return Ok(());
        }
        counter.tick()?;
        a.push(v);
        cube_realized_masks(n, k, a, sum + v, masks, counter)?;
        a.pop();
        v += 1;
    }
}

/// Estimates (or, in exact mode, computes) the probability that a uniform
/// random 2-coloring of `[n]` contains a monochromatic affine `k`-cube.
pub fn estimate_mono_cube_probability(
    n: i64,
    k: u64,
    mode: TrialMode,
) -> Result<MonoCubeEstimate> {
    estimate_mono_cube_probability_with(n, k, mode, &SearchBudget::default())
}

/// [`estimate_mono_cube_probability`] with an explicit per-trial node budget.
pub fn estimate_mono_cube_probability_with(
    n: i64,
    k: u64,
    mode: TrialMode,
    budget: &SearchBudget,
) -> Result<MonoCubeEstimate> {
    use rayon::prelude::*;

    if n < 1 {
        return Err(Error::range("domain size n must be at least 1"));
    }
    if k < 1 {
        return Err(Error::range("cube dimension k must be at least 1"));
    }
    match mode {
        TrialMode::Exact => {
            if n > EXACT_ENUMERATION_MAX_N {
                return Err(Error::Budget {
                    what: "exact coloring enumeration",
                    size: 1u128 << n,
                    cap: 1 << EXACT_ENUMERATION_MAX_N,
                });
            }
            let mut counter = NodeCounter::new(budget);
            let mut masks = Vec::new();
            let mut a = Vec::with_capacity(k as usize);
            cube_realized_masks(n, k as usize, &mut a, 0, &mut masks, &mut counter)?;
            let total = 1u64 << n;
            let mut hits = 0u64;
            for coloring in 0..total {
                counter.tick()?;
                // A cube is monochromatic when its positions are all ones or
                // all zeros in the coloring's bitmask.
                if masks.iter().any(|&m| {
                    let overlap = coloring & m;
                    overlap == 0 || overlap == m
                }) {
                    hits += 1;
                }
            }
            Ok(MonoCubeEstimate {
                n,
                k,
                mode: "exact",
                trials: total,
                hits,
                probability: hits as f64 / total as f64,
                standard_error: 0.0,
                seed: None,
            })
        }
        TrialMode::Sampled { trials, seed } => {
            if trials < 1 {
                return Err(Error::range("sampling needs at least one trial"));
            }
            let hits = (0..trials)
                .into_par_iter()
                .map(|t| -> Result<u64> {
                    let coloring = random_coloring(n, 2, rng::derive_seed(seed, t))?;
                    let found = find_mono_cube_with(&coloring, k, None, budget)?;
                    Ok(u64::from(found.is_some()))
                })
                .try_reduce(|| 0u64, |x, y| Ok(x + y))?;
            let p = hits as f64 / trials as f64;
            Ok(MonoCubeEstimate {
                n,
                k,
                mode: "sampled",
                trials,
                hits,
                probability: p,
                standard_error: (p * (1.0 - p) / trials as f64).sqrt(),
                seed: Some(seed),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn coloring_of(r: u32, colors: &[u32]) -> Coloring {
        Coloring::new(r, colors.to_vec()).unwrap()
    }

    /// All 2-colorings of [n] as bitmask-driven color arrays.
    fn all_two_colorings(n: usize) -> Vec<Coloring> {
        (0u32..1 << n)
            .map(|bits| {
                coloring_of(2, &(0..n).map(|i| (bits >> i) & 1).collect::<Vec<_>>())
            })
            .collect()
    }

    #[test]
    fn construction_and_accessors() {
        let c = coloring_of(3, &[0, 2, 1, 0]);
        assert_eq!(c.n(), 4);
        assert_eq!(c.r(), 3);
        assert_eq!(c.color(2), 2);
        assert_eq!(c.class(0).as_slice(), &[1, 4]);
        assert_eq!(c.classes().len(), 3);
        assert!(c.is_monochromatic(&[1, 4]));
        assert!(!c.is_monochromatic(&[1, 2]));
        assert!(c.is_monochromatic(&[]));
        assert!(Coloring::new(0, vec![]).is_err());
        assert!(Coloring::new(2, vec![0, 2]).is_err());
        let s = Coloring::solid(5, 2, 1).unwrap();
        assert_eq!(s.colors(), &[1, 1, 1, 1, 1]);
    }

    #[test]
    fn digit_line_round_trip_and_parse_errors() {
        let c = coloring_of(3, &[0, 1, 2, 0]);
        let line = c.to_digit_line().unwrap();
        assert_eq!(line, "0120");
        assert_eq!(Coloring::parse(&line).unwrap(), c);

        // Palette size is inferred from the digits actually present.
        let parsed = Coloring::parse("# extremal for n=8\n 00110011 \n").unwrap();
        assert_eq!(parsed.r(), 2);
        assert_eq!(parsed.n(), 8);

        assert!(Coloring::parse("01a0").is_err());
        assert!(Coloring::parse("").is_err());
        assert!(Coloring::parse("01\n10").is_err());
        assert!(Coloring::new(11, vec![10]).unwrap().to_digit_line().is_err());
    }

    #[test]
    fn product_known_cases() {
        let z = Coloring::solid(3, 1, 0).unwrap();
        let p = product_coloring(&z, &z).unwrap();
        assert_eq!(p.r(), 1);
        assert_eq!(p.colors(), &[0, 0, 0]);

        let c1 = coloring_of(2, &[0, 1]);
        let c2 = coloring_of(2, &[1, 0]);
        let p = product_coloring(&c1, &c2).unwrap();
        assert_eq!(p.r(), 4);
        assert_eq!(p.colors(), &[1, 2]);

        let short = coloring_of(2, &[0]);
        assert!(matches!(
            product_coloring(&c1, &short),
            Err(Error::Shape { .. })
        ));
    }

    #[test]
    fn product_monochromatic_law_exhaustive_on_4() {
        // S monochromatic in the product ⟺ monochromatic in both factors,
        // for every pair of 2-colorings of [4] and every nonempty S ⊆ [4].
        let colorings = all_two_colorings(4);
        let subsets: Vec<Vec<i64>> = (1u32..16)
            .map(|bits| (1..=4).filter(|&p| bits >> (p - 1) & 1 == 1).collect())
            .collect();
        for c1 in &colorings {
            for c2 in &colorings {
                let p = product_coloring(c1, c2).unwrap();
                for s in &subsets {
                    assert_eq!(
                        p.is_monochromatic(s),
                        c1.is_monochromatic(s) && c2.is_monochromatic(s)
                    );
                }
            }
        }
    }

    #[test]
    fn mono_ap_known_cases() {
        let zeros = Coloring::solid(5, 2, 0).unwrap();
        assert_eq!(find_mono_ap(&zeros, 3), Some(ApWitness::new(1, 1, 3)));
        assert_eq!(find_mono_ap(&zeros, 1), Some(ApWitness::new(1, 1, 1)));
        assert_eq!(find_mono_ap(&zeros, 6), None);

        // Alternating colors on [9]: no 3 consecutive, but 1,3,5 works.
        let alt = coloring_of(2, &[0, 1, 0, 1, 0, 1, 0, 1, 0]);
        assert_eq!(find_mono_ap(&alt, 3), Some(ApWitness::new(1, 2, 3)));

        let empty = Coloring::new(2, vec![]).unwrap();
        assert_eq!(find_mono_ap(&empty, 1), None);
    }

    #[test]
    fn mono_ap_matches_brute_oracle() {
        let mut g = SplitMix64::new(0x00A1_1CE5);
        for _ in 0..300 {
            let n = g.next_in_range(1, 28);
            let r = g.next_below(2) as u32 + 2;
            let k = g.next_below(3) + 2;
            let colors: Vec<u32> =
                (0..n).map(|_| g.next_below(u64::from(r)) as u32).collect();
            let c = coloring_of(r, &colors);

            // Independent oracle: collect every monochromatic k-AP and take
            // the minimum by (difference, start).
            let steps = (k - 1) as i64;
            let mut best: Option<(i64, i64)> = None;
            for d in 1..=n {
                for start in 1..=n {
                    if start + steps * d > n {
                        break;
                    }
                    let terms: Vec<i64> = (0..=steps).map(|j| start + j * d).collect();
                    if c.is_monochromatic(&terms) {
                        let key = (d, start);
                        if best.is_none_or(|b| key < b) {
                            best = Some(key);
                        }
                    }
                }
            }
            let got = find_mono_ap(&c, k);
            match (got, best) {
                (None, None) => {}
                (Some(w), Some((d, start))) => {
                    assert_eq!((w.difference, w.start, w.length), (d, start, k));
                    assert!(c.is_monochromatic(&w.terms()));
                }
                (got, best) => panic!("detector {got:?} vs oracle {best:?}"),
            }
        }
    }

    #[test]
    fn ap_free_known_cases() {
        // [8] can be 2-colored without a monochromatic 3-AP…
        let c = find_ap_free_coloring(8, 3, 2).unwrap().expect("feasible");
        assert_eq!(c.color(1), 0);
        assert!(find_mono_ap(&c, 3).is_none());

        // …but [9] cannot.
        assert!(find_ap_free_coloring(9, 3, 2).unwrap().is_none());

        // No 2-term progression fits in [1].
        let tiny = find_ap_free_coloring(1, 2, 2).unwrap().expect("feasible");
        assert_eq!(tiny.colors(), &[0]);

        // A 2-AP is any pair, so [3] defeats 2 colors by pigeonhole…
        assert!(find_ap_free_coloring(3, 2, 2).unwrap().is_none());
        // …and a 1-AP is a point, so avoidance is always impossible.
        assert!(find_ap_free_coloring(5, 1, 2).unwrap().is_none());
    }

    #[test]
    fn ap_free_three_colors() {
        let c = find_ap_free_coloring(15, 3, 3).unwrap().expect("feasible");
        assert_eq!(c.r(), 3);
        assert!(find_mono_ap(&c, 3).is_none());
        // Canonical first-use order: color m+1 never appears before color m.
        let mut seen = 0u32;
        for &col in c.colors() {
            assert!(col <= seen);
            seen = seen.max(col + 1);
        }
    }

    #[test]
    fn ap_free_timeout_is_distinct_from_notfound() {
        let starved = SearchBudget::new(5);
        let err = find_ap_free_coloring_with(9, 3, 2, &starved).unwrap_err();
        assert!(matches!(err, Error::Timeout { .. }));
        assert!(err.is_resource_limit());
    }

    #[test]
    fn ap_free_notfound_is_monotone_in_n() {
        // (9,3,2) is infeasible, so every larger domain is too.
        for n in [10, 11, 12] {
            assert!(find_ap_free_coloring(n, 3, 2).unwrap().is_none());
        }
    }

    #[test]
    fn mono_cube_known_cases() {
        let zeros = Coloring::solid(4, 2, 0).unwrap();
        let w = find_mono_cube(&zeros, 2, None).unwrap().expect("cube");
        assert_eq!(w.x0, 1);
        assert_eq!(w.a.as_slice(), &[1, 2]);
        assert_eq!(w.realized.as_slice(), &[1, 2, 3, 4]);
        assert_eq!(w.color, 0);
        assert!(w.verify(&zeros, 2));

        // The only 2-cube in [4] is {1,2,3,4}; split it and none remains.
        let split = coloring_of(2, &[0, 0, 1, 1]);
        assert!(find_mono_cube(&split, 2, None).unwrap().is_none());

        // No 2-cube fits in [3] at all: the minimum span is 1+1+2 = 4.
        let three = Coloring::solid(3, 2, 0).unwrap();
        assert!(find_mono_cube(&three, 2, None).unwrap().is_none());
    }

    #[test]
    fn mono_cube_respects_sumset_cap() {
        let zeros = Coloring::solid(4, 2, 0).unwrap();
        // |Σ*{1,2}| = 4, so a cap of 3 hides the only cube.
        assert!(find_mono_cube(&zeros, 2, Some(3)).unwrap().is_none());
        assert!(find_mono_cube(&zeros, 2, Some(4)).unwrap().is_some());
    }

    #[test]
    fn mono_cube_dimension_one_pigeonhole() {
        // With n ≤ r an injective coloring defeats 1-cubes; with n > r any
        // coloring repeats a color and {x₀, x₀+a} exists.
        for r in 2..=4u32 {
            let n = i64::from(r);
            let injective = coloring_of(r, &(0..r).collect::<Vec<_>>());
            assert!(find_mono_cube(&injective, 1, None).unwrap().is_none());
            for seed in 0..10u64 {
                let c = random_coloring(n + 1, r, seed).unwrap();
                let w = find_mono_cube(&c, 1, None).unwrap().expect("pigeonhole");
                assert!(w.verify(&c, 1));
            }
        }
    }

    #[test]
    fn mono_cube_matches_first_hit_oracle() {
        let mut g = SplitMix64::new(0xC0BE ^ 0xBEEF);
        for _ in 0..150 {
            let n = g.next_in_range(1, 12);
            let k = g.next_below(3) + 1;
            let c = random_coloring(n, 2, g.next_u64()).unwrap();

            // Oracle: enumerate every canonical (A, x₀), keep monochromatic
            // ones, take the minimum by (A lexicographically, then x₀).
            let mut best: Option<(Vec<i64>, i64)> = None;
            let mut stack: Vec<Vec<i64>> = vec![vec![]];
            while let Some(a) = stack.pop() {
                if a.len() == k as usize {
                    let sum: i64 = a.iter().sum();
                    let sums = restricted_sumset(&IntSet::new(a.clone())).unwrap();
                    for x0 in 1..=n - sum {
                        let pts: Vec<i64> = sums.iter().map(|s| x0 + s).collect();
                        if c.is_monochromatic(&pts) {
                            let key = (a.clone(), x0);
                            if best.as_ref().is_none_or(|b| key < *b) {
                                best = Some(key);
                            }
                        }
                    }
                    continue;
                }
                let lo = a.last().map_or(1, |&l| l + 1);
                for v in lo..=n {
                    let mut ext = a.clone();
                    ext.push(v);
                    if ext.iter().sum::<i64>() < n {
                        stack.push(ext);
                    }
                }
            }

            let got = find_mono_cube(&c, k, None).unwrap();
            match (got, best) {
                (None, None) => {}
                (Some(w), Some((a, x0))) => {
                    assert_eq!(w.a.as_slice(), a.as_slice());
                    assert_eq!(w.x0, x0);
                    assert!(w.verify(&c, k));
                }
                (got, best) => panic!("detector {got:?} vs oracle {best:?}"),
            }
        }
    }

    #[test]
    fn mono_cube_budget_exhaustion() {
        let zeros = Coloring::solid(30, 2, 0).unwrap();
        let starved = SearchBudget::new(2);
        assert!(matches!(
            find_mono_cube_with(&zeros, 3, None, &starved),
            Err(Error::Timeout { .. })
        ));
    }

    #[test]
    fn random_coloring_is_deterministic_with_uniform_marginals() {
        let a = random_coloring(1000, 3, 42).unwrap();
        let b = random_coloring(1000, 3, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_coloring(1000, 3, 43).unwrap());
        assert!(random_coloring(10, 1, 0).is_err());

        let big = random_coloring(100_000, 2, 0).unwrap();
        let mean =
            big.colors().iter().map(|&c| f64::from(c)).sum::<f64>() / 100_000.0;
        assert!((mean - 0.5).abs() < 0.01, "mean color {mean}");
    }

    #[test]
    fn cube_probability_exact_on_4_is_one_eighth() {
        let e = estimate_mono_cube_probability(4, 2, TrialMode::Exact).unwrap();
        assert_eq!(e.trials, 16);
        assert_eq!(e.hits, 2);
        assert_eq!(e.probability, 0.125);
        assert_eq!(e.standard_error, 0.0);

        // Cross-check the mask enumeration against the witness detector.
        for c in all_two_colorings(4) {
            let direct = find_mono_cube(&c, 2, None).unwrap().is_some();
            let expected = c.colors().iter().all(|&x| x == 0)
                || c.colors().iter().all(|&x| x == 1);
            assert_eq!(direct, expected);
        }
    }

    #[test]
    fn cube_probability_sampled_tracks_exact() {
        let exact = estimate_mono_cube_probability(6, 2, TrialMode::Exact)
            .unwrap()
            .probability;
        let mode = TrialMode::Sampled {
            trials: 10_000,
            seed: 0xC0FFEE,
        };
        let e = estimate_mono_cube_probability(6, 2, mode).unwrap();
        let slack = 3.0 * e.standard_error.max(1e-3);
        assert!(
            (e.probability - exact).abs() <= slack,
            "sampled {} vs exact {exact}",
            e.probability
        );
        // Determinism: the estimate is a pure function of the seed.
        let again = estimate_mono_cube_probability(6, 2, mode).unwrap();
        assert_eq!(e.hits, again.hits);
    }

    #[test]
    fn cube_probability_zero_when_no_cube_fits() {
        // A 3-cube needs span ≥ 1+1+2+3 = 7 > 4.
        let exact = estimate_mono_cube_probability(4, 3, TrialMode::Exact).unwrap();
        assert_eq!(exact.hits, 0);
        assert_eq!(exact.probability, 0.0);
        let sampled = estimate_mono_cube_probability(
            4,
            3,
            TrialMode::Sampled { trials: 50, seed: 1 },
        )
        .unwrap();
        assert_eq!(sampled.hits, 0);
    }

    #[test]
    fn cube_probability_guards() {
        let err =
            estimate_mono_cube_probability(21, 2, TrialMode::Exact).unwrap_err();
        assert!(err.is_resource_limit());
        assert!(estimate_mono_cube_probability(
            4,
            2,
            TrialMode::Sampled { trials: 0, seed: 0 }
        )
        .is_err());
    }
}
