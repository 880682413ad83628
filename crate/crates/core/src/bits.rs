//! Offset bit-vector windows.
//!
//! A [`BitWindow`] stores a subset of the integer interval `[lo, hi]` as a
//! packed bit vector, with cell `c` representing the value `lo + c`. All the
//! subset-sum style dynamic programs in this crate are sequences of
//! *shift-or* operations on such windows: `w |= (w + delta)` adds the choice
//! "also take an element of value `delta`". Windows are sized up front from
//! checked bounds on the reachable sums and validated against a memory cap,
//! so the kernels below never reallocate and never wrap around.
//!
//! Bits shifted outside the window are dropped. The sumset routines size
//! their windows to contain every reachable sum, so nothing is ever lost
//! there; the overlap-counting helpers rely on the dropping behavior to
//! restrict attention to the window of interest.

use crate::budget::Caps;
use crate::error::Result;

const WORD_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitWindow {
    lo: i64,
    len: usize,
    words: Vec<u64>,
}

impl BitWindow {
    /// Empty window over the inclusive value range `[lo, hi]`, checked
    /// against the window-cell cap.
    pub fn new(lo: i64, hi: i64, caps: &Caps) -> Result<Self> {
        assert!(lo <= hi, "BitWindow bounds must satisfy lo <= hi");
        let cells = (hi as i128 - lo as i128 + 1) as u128;
        caps.check_window(cells)?;
        let len = cells as usize;
        Ok(BitWindow {
            lo,
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.len as i64 - 1
    }

    /// Number of cells (values representable), not the number of set bits.
    pub fn cells(&self) -> usize {
        self.len
    }

    #[inline]
    fn cell_of(&self, v: i64) -> Option<usize> {
        let c = v as i128 - self.lo as i128;
        if c >= 0 && (c as u128) < self.len as u128 {
            Some(c as usize)
        } else {
            None
        }
    }

    /// Sets the bit for value `v`. Panics if `v` is outside the window:
    /// windows are sized from checked bounds, so an out-of-window insert is
    /// a logic error, not a data error.
    #[inline]
    pub fn insert(&mut self, v: i64) {
        let c = self
            .cell_of(v)
            .expect("value outside BitWindow; window was sized incorrectly");
        self.words[c / WORD_BITS] |= 1u64 << (c % WORD_BITS);
    }

    #[inline]
    pub fn contains(&self, v: i64) -> bool {
        match self.cell_of(v) {
            Some(c) => self.words[c / WORD_BITS] >> (c % WORD_BITS) & 1 == 1,
            None => false,
        }
    }

    /// Number of set bits.
    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Set bits as sorted values.
    pub fn values(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.count() as usize);
        for (wi, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(self.lo + (wi * WORD_BITS + b) as i64);
                bits &= bits - 1;
            }
        }
        out
    }

    /// Reads the 64 bits starting at cell index `c` (which may be negative
    /// or beyond the window; out-of-window positions read as zero).
    #[inline]
    fn word_at_cell(&self, c: i64) -> u64 {
        // Word index may be negative; use Euclidean division so the
        // remainder (sub-word shift) is always in 0..64.
        let q = c.div_euclid(WORD_BITS as i64);
        let r = c.rem_euclid(WORD_BITS as i64) as u32;
        let get = |idx: i64| -> u64 {
            if idx >= 0 && (idx as usize) < self.words.len() {
                self.words[idx as usize]
            } else {
                0
            }
        };
        if r == 0 {
            get(q)
        } else {
            (get(q) >> r) | (get(q + 1) << (WORD_BITS as u32 - r))
        }
    }

    /// Clears bits in the unused tail of the last word so that popcounts and
    /// word-level comparisons stay honest after shifts.
    #[inline]
    fn mask_tail(&mut self) {
        let tail = self.len % WORD_BITS;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    /// In-place shift-or: `self |= self + delta` (as sets of values). Bits
    /// that would land outside the window are dropped. This is the inner
    /// loop of every subset-sum DP.
    pub fn shift_or(&mut self, delta: i64) {
        if delta == 0 || self.len == 0 {
            return;
        }
        let n = self.words.len();
        if delta.unsigned_abs() as u128 >= self.len as u128 {
            return; // shift longer than the window: everything drops
        }
        if delta > 0 {
            let q = (delta as usize) / WORD_BITS;
            let r = ((delta as usize) % WORD_BITS) as u32;
            // Target words descend so every read sees pre-shift contents.
            for w in (0..n).rev() {
                let src = if w >= q { self.words[w - q] } else { 0 };
                let carry = if r != 0 && w > q {
                    self.words[w - q - 1] >> (WORD_BITS as u32 - r)
                } else {
                    0
                };
                let shifted = if r == 0 { src } else { (src << r) | carry };
                self.words[w] |= shifted;
            }
        } else {
            let a = delta.unsigned_abs() as usize;
            let q = a / WORD_BITS;
            let r = (a % WORD_BITS) as u32;
            for w in 0..n {
                let src = if w + q < n { self.words[w + q] } else { 0 };
                let carry = if r != 0 && w + q + 1 < n {
                    self.words[w + q + 1] << (WORD_BITS as u32 - r)
                } else {
                    0
                };
                let shifted = if r == 0 { src } else { (src >> r) | carry };
                self.words[w] |= shifted;
            }
        }
        self.mask_tail();
    }

    /// Cross-window shift-or: `self |= src + delta` (as sets of values).
    /// The windows may have different bounds; out-of-window bits drop.
    pub fn or_shifted_from(&mut self, src: &BitWindow, delta: i64) {
        // Value v lands in self iff v - delta is set in src; in cell terms,
        // self cell c corresponds to src cell c + (self.lo - delta - src.lo).
        let shift = self.lo as i128 - delta as i128 - src.lo as i128;
        let n = self.words.len();
        for w in 0..n {
            let c = w as i128 * WORD_BITS as i128 + shift;
            // Positions far outside src contribute nothing.
            if c >= src.len as i128 || c + (WORD_BITS as i128) <= 0 {
                continue;
            }
            self.words[w] |= src.word_at_cell(c as i64);
        }
        self.mask_tail();
    }

    /// `|(self + delta) ∩ other|`: the number of values `v` set in `other`
    /// with `v - delta` set in `self`.
    pub fn shifted_and_count(&self, other: &BitWindow, delta: i64) -> u64 {
        let shift = other.lo as i128 - delta as i128 - self.lo as i128;
        let mut total = 0u64;
        for (w, &word) in other.words.iter().enumerate() {
            if word == 0 {
                continue;
            }
            let c = w as i128 * WORD_BITS as i128 + shift;
            if c >= self.len as i128 || c + (WORD_BITS as i128) <= 0 {
                continue;
            }
            total += (word & self.word_at_cell(c as i64)).count_ones() as u64;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use std::collections::BTreeSet;

    fn naive(values: &BTreeSet<i64>, lo: i64, hi: i64) -> BTreeSet<i64> {
        values.iter().copied().filter(|v| *v >= lo && *v <= hi).collect()
    }

    fn window_from(values: &BTreeSet<i64>, lo: i64, hi: i64) -> BitWindow {
        let mut w = BitWindow::new(lo, hi, &Caps::default()).unwrap();
        for &v in naive(values, lo, hi).iter() {
            w.insert(v);
        }
        w
    }

    #[test]
    fn insert_contains_values_roundtrip() {
        let mut w = BitWindow::new(-10, 10, &Caps::default()).unwrap();
        for v in [-10, -3, 0, 7, 10] {
            w.insert(v);
        }
        assert!(w.contains(-10) && w.contains(10) && w.contains(0));
        assert!(!w.contains(1) && !w.contains(-11) && !w.contains(11));
        assert_eq!(w.values(), vec![-10, -3, 0, 7, 10]);
        assert_eq!(w.count(), 5);
    }

    #[test]
    fn window_cap_is_enforced() {
        let caps = Caps {
            window_cells: 100,
            ..Caps::default()
        };
        assert!(BitWindow::new(0, 99, &caps).is_ok());
        assert!(BitWindow::new(0, 100, &caps).is_err());
    }

    #[test]
    fn shift_or_matches_set_model_randomized() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..300 {
            let lo = rng.next_in_range(-200, 0);
            let hi = rng.next_in_range(1, 260);
            let mut model: BTreeSet<i64> = BTreeSet::new();
            for _ in 0..rng.next_in_range(0, 40) {
                model.insert(rng.next_in_range(lo, hi));
            }
            let mut w = window_from(&model, lo, hi);
            let delta = rng.next_in_range(-300, 300);
            let shifted: BTreeSet<i64> = model.iter().map(|v| v + delta).collect();
            let expect: BTreeSet<i64> =
                naive(&model.union(&shifted).copied().collect(), lo, hi);
            w.shift_or(delta);
            assert_eq!(w.values(), expect.into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn or_shifted_from_matches_set_model_randomized() {
        let mut rng = SplitMix64::new(12);
        for _ in 0..300 {
            let (alo, ahi) = (rng.next_in_range(-100, 0), rng.next_in_range(1, 150));
            let (blo, bhi) = (rng.next_in_range(-150, 0), rng.next_in_range(1, 100));
            let mut amodel = BTreeSet::new();
            let mut bmodel = BTreeSet::new();
            for _ in 0..rng.next_in_range(0, 30) {
                amodel.insert(rng.next_in_range(alo, ahi));
            }
            for _ in 0..rng.next_in_range(0, 30) {
                bmodel.insert(rng.next_in_range(blo, bhi));
            }
            let mut a = window_from(&amodel, alo, ahi);
            let b = window_from(&bmodel, blo, bhi);
            let delta = rng.next_in_range(-200, 200);
            let shifted: BTreeSet<i64> = bmodel.iter().map(|v| v + delta).collect();
            let expect: BTreeSet<i64> =
                naive(&amodel.union(&shifted).copied().collect(), alo, ahi);
            a.or_shifted_from(&b, delta);
            assert_eq!(a.values(), expect.into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn shifted_and_count_matches_set_model_randomized() {
        let mut rng = SplitMix64::new(13);
        for _ in 0..300 {
            let (alo, ahi) = (rng.next_in_range(-80, 0), rng.next_in_range(1, 120));
            let (blo, bhi) = (rng.next_in_range(-120, 0), rng.next_in_range(1, 80));
            let mut amodel = BTreeSet::new();
            let mut bmodel = BTreeSet::new();
            for _ in 0..rng.next_in_range(0, 40) {
                amodel.insert(rng.next_in_range(alo, ahi));
            }
            for _ in 0..rng.next_in_range(0, 40) {
                bmodel.insert(rng.next_in_range(blo, bhi));
            }
            let a = window_from(&amodel, alo, ahi);
            let b = window_from(&bmodel, blo, bhi);
            let delta = rng.next_in_range(-150, 150);
            let expect = bmodel
                .iter()
                .filter(|v| naive(&amodel, alo, ahi).contains(&(*v - delta)))
                .count() as u64;
            assert_eq!(a.shifted_and_count(&b, delta), expect);
        }
    }

    #[test]
    fn shift_by_more_than_window_drops_everything_new() {
        let mut w = BitWindow::new(0, 9, &Caps::default()).unwrap();
        w.insert(0);
        w.insert(9);
        w.shift_or(100);
        assert_eq!(w.values(), vec![0, 9]);
        w.shift_or(-100);
        assert_eq!(w.values(), vec![0, 9]);
    }
}
