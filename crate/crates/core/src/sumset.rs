//! Restricted and iterated sumsets of integer sets, with exact witnesses.
//!
//! The central object is the *restricted sumset* of a set `A`: the set of
//! all sums of subsets of `A`, including the empty sum `0`. Everything is
//! computed by shift-or dynamic programming over [`BitWindow`]s sized from
//! checked bounds, so results are exact and overflow is an error rather than
//! silent wraparound.

use crate::bits::BitWindow;
use crate::budget::Caps;
use crate::error::{Error, Result};
use crate::intset::{ApWitness, IntSet};

/// Sum of the negative elements and sum of the positive elements, as checked
/// window bounds for subset-sum DP.
fn subset_sum_bounds(a: &IntSet) -> Result<(i64, i64)> {
    let mut lo: i128 = 0;
    let mut hi: i128 = 0;
    for v in a.iter() {
        if v < 0 {
            lo += v as i128;
        } else {
            hi += v as i128;
        }
    }
    if lo < i64::MIN as i128 || hi > i64::MAX as i128 {
        return Err(Error::overflow("sizing subset-sum window"));
    }
    Ok((lo as i64, hi as i64))
}

/// Bit vector of all subset sums of `a` (including the empty sum 0).
///
/// Elements are folded in by increasing absolute value; the order does not
/// change the result, only the constant factor, but fixing it keeps runs
/// reproducible down to the instruction level.
pub(crate) fn restricted_sumset_bits(a: &IntSet, caps: &Caps) -> Result<BitWindow> {
    let (lo, hi) = subset_sum_bounds(a)?;
    let mut bits = BitWindow::new(lo, hi, caps)?;
    bits.insert(0);
    let mut order: Vec<i64> = a.iter().collect();
    order.sort_by_key(|v| v.unsigned_abs());
    for v in order {
        bits.shift_or(v);
    }
    Ok(bits)
}

/// The set of all subset sums of `a`: `{Σ s : s ⊆ a}`, always containing 0.
pub fn restricted_sumset(a: &IntSet) -> Result<IntSet> {
    restricted_sumset_with(a, &Caps::default())
}

pub fn restricted_sumset_with(a: &IntSet, caps: &Caps) -> Result<IntSet> {
    Ok(IntSet::new(restricted_sumset_bits(a, caps)?.values()))
}

/// Sums of exactly `ell` *distinct* elements of `a`. `ell = 0` yields `{0}`.
pub fn ell_fold_sums(a: &IntSet, ell: usize) -> Result<IntSet> {
    ell_fold_sums_with(a, ell, &Caps::default())
}

pub fn ell_fold_sums_with(a: &IntSet, ell: usize, caps: &Caps) -> Result<IntSet> {
    if ell > a.len() {
        return Err(Error::range(format!(
            "cannot sum {ell} distinct elements of a {}-element set",
            a.len()
        )));
    }
    let (lo, hi) = subset_sum_bounds(a)?;
    // One layer per selection count; account for the combined footprint.
    let cells = (hi as i128 - lo as i128 + 1) as u128;
    caps.check_window(cells.saturating_mul(ell as u128 + 1))?;
    let mut layers: Vec<BitWindow> = (0..=ell)
        .map(|_| BitWindow::new(lo, hi, caps))
        .collect::<Result<_>>()?;
    layers[0].insert(0);
    for v in a.iter() {
        for j in (1..=ell).rev() {
            let (below, above) = layers.split_at_mut(j);
            above[0].or_shifted_from(&below[j - 1], v);
        }
    }
    Ok(IntSet::new(layers[ell].values()))
}

/// Sums of exactly `m` elements of `s`, repetition allowed:
/// `{x₁ + … + x_m : xᵢ ∈ s}`.
pub fn m_fold_sumset(s: &IntSet, m: u32) -> Result<IntSet> {
    m_fold_sumset_with(s, m, &Caps::default())
}

pub fn m_fold_sumset_with(s: &IntSet, m: u32, caps: &Caps) -> Result<IntSet> {
    if m == 0 {
        return Err(Error::range("fold count m must be >= 1"));
    }
    if s.is_empty() {
        return Err(Error::Empty { what: "summand set" });
    }
    let (min, max) = (s.min().unwrap(), s.max().unwrap());
    let bound = |k: u32, v: i64| -> Result<i64> {
        let b = v as i128 * k as i128;
        i64::try_from(b).map_err(|_| Error::overflow("sizing iterated-sumset window"))
    };
    let mut cur = s.to_bits(caps)?;
    for fold in 2..=m {
        let mut next = BitWindow::new(bound(fold, min)?, bound(fold, max)?, caps)?;
        for v in s.iter() {
            next.or_shifted_from(&cur, v);
        }
        cur = next;
    }
    Ok(IntSet::new(cur.values()))
}

/// Sums of at most `m` subsets of `a`, i.e. the `m`-fold iterated sumset of
/// the restricted sumset. Equivalently (and this is checked against an
/// independent multiplicity DP in the tests): all sums `Σ c_v · v` over
/// `v ∈ a` with integer coefficients `0 ≤ c_v ≤ m`.
pub fn m_fold_restricted_sumset(a: &IntSet, m: u32) -> Result<IntSet> {
    m_fold_restricted_sumset_with(a, m, &Caps::default())
}

pub fn m_fold_restricted_sumset_with(a: &IntSet, m: u32, caps: &Caps) -> Result<IntSet> {
    let sums = restricted_sumset_with(a, caps)?;
    m_fold_sumset_with(&sums, m, caps)
}

/// A strictly increasing chain of subset sums of `a` with
/// `k(k+1)/2 + 1` entries, where `k = |a|`; requires positive elements.
///
/// The chain starts at 0 and climbs in rows: row `j` consists of the sums
/// `a_i + (the j-1 largest elements)` for `i = 1, …, k-j+1`, each row ending
/// at the sum of the `j` largest elements. Every entry is a subset sum, and
/// consecutive entries increase strictly, which makes the chain a certificate
/// that `|Σ(a)| ≥ k(k+1)/2 + 1`.
pub fn chain_witness(a: &IntSet) -> Result<Vec<i64>> {
    if let Some(min) = a.min() {
        if min <= 0 {
            return Err(Error::domain(format!(
                "chain witness requires positive elements, found {min}"
            )));
        }
    }
    let xs = a.as_slice();
    let k = xs.len();
    let add = |x: i64, y: i64| {
        x.checked_add(y)
            .ok_or_else(|| Error::overflow("building chain witness"))
    };
    let mut chain = Vec::with_capacity(k * (k + 1) / 2 + 1);
    chain.push(0i64);
    let mut top = 0i64; // sum of the j-1 largest elements
    for j in 1..=k {
        for &x in &xs[..=(k - j)] {
            chain.push(add(top, x)?);
        }
        top = add(top, xs[k - j])?;
    }
    debug_assert!(chain.windows(2).all(|w| w[0] < w[1]));
    Ok(chain)
}

/// The longest arithmetic progression contained in `a`, with ties broken by
/// smallest difference, then smallest start. Singletons count as length-1
/// progressions with difference 1.
///
/// Candidate differences are enumerated in increasing order — the distinct
/// pairwise differences when the set is small enough to afford them, every
/// difference up to the span otherwise — and the scan stops as soon as the
/// span bound `span/d + 1` can no longer beat the best length found.
pub fn longest_ap_in(a: &IntSet) -> Result<ApWitness> {
    const PAIRWISE_LIMIT: usize = 2048;
    if a.is_empty() {
        return Err(Error::Empty { what: "input set" });
    }
    let xs = a.as_slice();
    let n = xs.len();
    if n == 1 {
        return Ok(ApWitness::new(xs[0], 1, 1));
    }
    let span = xs[n - 1] as i128 - xs[0] as i128;

    // Length of the longest run with difference d ending at each element,
    // plus the best (start, length) for this d.
    let mut runlen = vec![0u64; n];
    let mut best = ApWitness::new(xs[0], 1, 1);
    let mut scan = |d: i128, best: &mut ApWitness| -> Result<()> {
        for i in 0..n {
            let prev = xs[i] as i128 - d;
            let len = match i64::try_from(prev).ok().and_then(|p| xs.binary_search(&p).ok()) {
                Some(j) => runlen[j] + 1,
                None => 1,
            };
            runlen[i] = len;
            if len > best.length {
                let d64 = i64::try_from(d)
                    .map_err(|_| Error::overflow("progression difference exceeds i64"))?;
                let start = xs[i] as i128 - d * (len as i128 - 1);
                *best = ApWitness::new(
                    i64::try_from(start)
                        .map_err(|_| Error::overflow("progression start exceeds i64"))?,
                    d64,
                    len,
                );
            }
        }
        Ok(())
    };

    if n <= PAIRWISE_LIMIT {
        let mut diffs: Vec<i128> = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                diffs.push(xs[j] as i128 - xs[i] as i128);
            }
        }
        diffs.sort_unstable();
        diffs.dedup();
        for d in diffs {
            if span / d < best.length as i128 {
                break;
            }
            scan(d, &mut best)?;
        }
    } else {
        let mut d: i128 = 1;
        while d <= span && span / d + 1 > best.length as i128 {
            scan(d, &mut best)?;
            d += 1;
        }
    }
    debug_assert!(best.contained_in(a));
    Ok(best)
}

/// True if `a` is a Sidon set: all pairwise sums `x + y` with `x ≤ y` are
/// distinct. Equivalently, the 2-fold sumset has exactly
/// `|a|(|a|+1)/2` elements.
pub fn is_sidon(a: &IntSet) -> bool {
    let xs = a.as_slice();
    let n = xs.len();
    let mut sums = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            sums.push(xs[i] as i128 + xs[j] as i128);
        }
    }
    sums.sort_unstable();
    sums.windows(2).all(|w| w[0] != w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use std::collections::BTreeSet;

    /// Independent oracle: subset sums by explicit bitmask enumeration.
    fn brute_subset_sums(xs: &[i64]) -> BTreeSet<i64> {
        assert!(xs.len() <= 20);
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << xs.len()) {
            let mut s: i64 = 0;
            for (i, &v) in xs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s += v;
                }
            }
            out.insert(s);
        }
        out
    }

    fn brute_ell_fold(xs: &[i64], ell: usize) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << xs.len()) {
            if mask.count_ones() as usize != ell {
                continue;
            }
            let s: i64 = xs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| v)
                .sum();
            out.insert(s);
        }
        out
    }

    fn random_set(rng: &mut SplitMix64, max_len: usize, lo: i64, hi: i64) -> IntSet {
        let len = rng.next_below(max_len as u64 + 1) as usize;
        (0..len).map(|_| rng.next_in_range(lo, hi)).collect()
    }

    #[test]
    fn restricted_sumset_known_values() {
        let s = restricted_sumset(&IntSet::new(vec![1, 2, 5, 11])).unwrap();
        assert_eq!(s.len(), 16);
        assert_eq!(s.min(), Some(0));
        assert_eq!(s.max(), Some(19));

        // Powers of two realize every value in [0, 15].
        let p = restricted_sumset(&IntSet::new(vec![1, 2, 4, 8])).unwrap();
        assert_eq!(p.as_slice(), (0..=15).collect::<Vec<_>>().as_slice());

        // Empty set: only the empty sum.
        let e = restricted_sumset(&IntSet::empty()).unwrap();
        assert_eq!(e.as_slice(), &[0]);
    }

    #[test]
    fn restricted_sumset_matches_oracle_randomized() {
        let mut rng = SplitMix64::new(101);
        for _ in 0..400 {
            let a = random_set(&mut rng, 12, -50, 50);
            let got = restricted_sumset(&a).unwrap();
            let want = brute_subset_sums(a.as_slice());
            assert_eq!(got.as_slice(), want.into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn restricted_sumset_overflow_is_an_error() {
        let a = IntSet::new(vec![i64::MAX, i64::MAX - 1]);
        assert!(matches!(
            restricted_sumset(&a),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn restricted_sumset_window_cap() {
        let caps = Caps {
            window_cells: 1000,
            ..Caps::default()
        };
        let a = IntSet::new(vec![1, 2000]);
        assert!(matches!(
            restricted_sumset_with(&a, &caps),
            Err(Error::Window { .. })
        ));
    }

    #[test]
    fn ell_fold_edges_and_oracle() {
        let a = IntSet::new(vec![-3, 1, 4, 7]);
        assert_eq!(ell_fold_sums(&a, 0).unwrap().as_slice(), &[0]);
        assert_eq!(ell_fold_sums(&a, 4).unwrap().as_slice(), &[9]);
        assert!(matches!(ell_fold_sums(&a, 5), Err(Error::Range { .. })));

        let mut rng = SplitMix64::new(102);
        for _ in 0..200 {
            let a = random_set(&mut rng, 10, -30, 30);
            for ell in 0..=a.len() {
                let got = ell_fold_sums(&a, ell).unwrap();
                let want = brute_ell_fold(a.as_slice(), ell);
                assert_eq!(got.as_slice(), want.into_iter().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn ell_folds_union_to_restricted_sumset() {
        let mut rng = SplitMix64::new(103);
        for _ in 0..100 {
            let a = random_set(&mut rng, 10, -20, 40);
            let mut union = BTreeSet::new();
            for ell in 0..=a.len() {
                union.extend(ell_fold_sums(&a, ell).unwrap().iter());
            }
            let full = restricted_sumset(&a).unwrap();
            assert_eq!(union.into_iter().collect::<Vec<_>>(), full.as_slice());
        }
    }

    #[test]
    fn m_fold_sumset_known_and_oracle() {
        let s = IntSet::new(vec![1, 2]);
        assert_eq!(m_fold_sumset(&s, 2).unwrap().as_slice(), &[2, 3, 4]);
        assert!(matches!(m_fold_sumset(&s, 0), Err(Error::Range { .. })));
        assert!(matches!(
            m_fold_sumset(&IntSet::empty(), 2),
            Err(Error::Empty { .. })
        ));

        let mut rng = SplitMix64::new(104);
        for _ in 0..150 {
            let s = random_set(&mut rng, 8, -20, 20);
            if s.is_empty() {
                continue;
            }
            for m in 1..=4u32 {
                let got = m_fold_sumset(&s, m).unwrap();
                // Oracle: iterated Minkowski sum via nested sets.
                let mut want: BTreeSet<i64> = s.iter().collect();
                for _ in 1..m {
                    let mut next = BTreeSet::new();
                    for x in &want {
                        for y in s.iter() {
                            next.insert(x + y);
                        }
                    }
                    want = next;
                }
                assert_eq!(got.as_slice(), want.into_iter().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn m_fold_restricted_matches_multiplicity_oracle() {
        // Independent model: sums Σ c_v·v with 0 ≤ c_v ≤ m.
        fn multiplicity_sums(xs: &[i64], m: u32) -> BTreeSet<i64> {
            let mut out = BTreeSet::new();
            out.insert(0);
            for &v in xs {
                let mut next = BTreeSet::new();
                for &s in &out {
                    for c in 0..=m as i64 {
                        next.insert(s + c * v);
                    }
                }
                out = next;
            }
            out
        }
        let mut rng = SplitMix64::new(105);
        for _ in 0..100 {
            let a = random_set(&mut rng, 7, -15, 15);
            for m in 1..=3u32 {
                let got = m_fold_restricted_sumset(&a, m).unwrap();
                let want = multiplicity_sums(a.as_slice(), m);
                assert_eq!(got.as_slice(), want.into_iter().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn chain_witness_example_and_properties() {
        let a = IntSet::new(vec![2, 3, 7]);
        assert_eq!(chain_witness(&a).unwrap(), vec![0, 2, 3, 7, 9, 10, 12]);

        assert!(matches!(
            chain_witness(&IntSet::new(vec![0, 1])),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            chain_witness(&IntSet::new(vec![-1, 3])),
            Err(Error::Domain { .. })
        ));
        assert_eq!(chain_witness(&IntSet::empty()).unwrap(), vec![0]);

        let mut rng = SplitMix64::new(106);
        for _ in 0..200 {
            let a = random_set(&mut rng, 12, 1, 100);
            let k = a.len();
            let chain = chain_witness(&a).unwrap();
            assert_eq!(chain.len(), k * (k + 1) / 2 + 1);
            assert!(chain.windows(2).all(|w| w[0] < w[1]));
            let sums = brute_subset_sums(a.as_slice());
            assert!(chain.iter().all(|v| sums.contains(v)));
        }
    }

    #[test]
    fn longest_ap_known_cases() {
        let w = longest_ap_in(&IntSet::new(vec![1, 2, 3, 5, 7, 9])).unwrap();
        assert_eq!((w.start, w.difference, w.length), (1, 2, 5));

        let w = longest_ap_in(&IntSet::new(vec![42])).unwrap();
        assert_eq!((w.start, w.difference, w.length), (42, 1, 1));

        // Ties prefer the smallest difference…
        let w = longest_ap_in(&IntSet::new(vec![1, 2, 3, 7, 9, 11])).unwrap();
        assert_eq!((w.start, w.difference, w.length), (1, 1, 3));
        // …then the smallest start.
        let w = longest_ap_in(&IntSet::new(vec![1, 2, 3, 6, 7, 8])).unwrap();
        assert_eq!((w.start, w.difference, w.length), (1, 1, 3));

        assert!(matches!(
            longest_ap_in(&IntSet::empty()),
            Err(Error::Empty { .. })
        ));
    }

    #[test]
    fn longest_ap_matches_oracle_randomized() {
        /// Oracle: try every (start element, difference) pair directly.
        fn brute_longest(xs: &[i64]) -> (i64, i64, u64) {
            let set: BTreeSet<i64> = xs.iter().copied().collect();
            let mut best = (xs[0], 1i64, 1u64);
            let span = xs[xs.len() - 1] - xs[0];
            for d in 1..=span.max(1) {
                for &s in xs {
                    // Only count runs that start at s (s - d absent).
                    if set.contains(&(s - d)) {
                        continue;
                    }
                    let mut len = 1u64;
                    let mut t = s;
                    while set.contains(&(t + d)) {
                        t += d;
                        len += 1;
                    }
                    if len > best.2 {
                        best = (s, d, len);
                    }
                }
            }
            best
        }
        let mut rng = SplitMix64::new(107);
        for _ in 0..300 {
            let mut a = random_set(&mut rng, 14, -40, 40);
            if a.is_empty() {
                a = IntSet::new(vec![rng.next_in_range(-40, 40)]);
            }
            let got = longest_ap_in(&a).unwrap();
            let want = brute_longest(a.as_slice());
            assert_eq!((got.start, got.difference, got.length), want);
            assert!(got.contained_in(&a));
        }
    }

    #[test]
    fn sidon_checks() {
        assert!(is_sidon(&IntSet::empty()));
        assert!(is_sidon(&IntSet::new(vec![5])));
        assert!(is_sidon(&IntSet::new(vec![1, 2, 4, 8, 13])));
        assert!(!is_sidon(&IntSet::new(vec![1, 2, 3])));
        assert!(is_sidon(&IntSet::new(vec![0, 7, 13])));
        // Characterization via the 2-fold sumset size.
        let mut rng = SplitMix64::new(108);
        for _ in 0..200 {
            let a = random_set(&mut rng, 9, -30, 30);
            if a.is_empty() {
                continue;
            }
            let n = a.len() as u64;
            let two_fold = m_fold_sumset(&a, 2).unwrap();
            assert_eq!(
                is_sidon(&a),
                two_fold.len() as u64 == n * (n + 1) / 2,
                "sidon characterization failed for {a}"
            );
        }
    }
}
