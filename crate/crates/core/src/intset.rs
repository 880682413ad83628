//! Sorted integer sets and arithmetic-progression witnesses.
//!
//! [`IntSet`] is the universal currency of the 1-D operations: a strictly
//! increasing vector of `i64` elements plus an inclusive window `[lo, hi]`
//! used to size bit-vector representations. The window always covers the
//! elements; by default it is exactly their hull.

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;
use std::path::Path;

use crate::bits::BitWindow;
use crate::budget::Caps;
use crate::error::{Error, Result};

/// A finite set of integers, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSet {
    elems: Vec<i64>,
    /// Inclusive bounds covering every element; `None` iff the set is empty.
    window: Option<(i64, i64)>,
}

impl IntSet {
    /// Builds a set from arbitrary values: sorts, deduplicates, and sets the
    /// window to the hull of the elements.
    pub fn new(mut values: Vec<i64>) -> Self {
        values.sort_unstable();
        values.dedup();
        let window = match (values.first(), values.last()) {
            (Some(&lo), Some(&hi)) => Some((lo, hi)),
            _ => None,
        };
        IntSet {
            elems: values,
            window,
        }
    }

    pub fn empty() -> Self {
        IntSet {
            elems: Vec::new(),
            window: None,
        }
    }

    /// Like [`IntSet::new`] but with an explicitly widened window.
    pub fn with_window(values: Vec<i64>, lo: i64, hi: i64) -> Result<Self> {
        let mut s = IntSet::new(values);
        if lo > hi {
            return Err(Error::shape(format!("window [{lo}, {hi}] is empty")));
        }
        if let Some((min, max)) = s.window {
            if lo > min || hi < max {
                return Err(Error::shape(format!(
                    "window [{lo}, {hi}] does not cover elements [{min}, {max}]"
                )));
            }
        }
        s.window = Some((lo, hi));
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, v: i64) -> bool {
        self.elems.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.elems.iter().copied()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.elems
    }

    pub fn min(&self) -> Option<i64> {
        self.elems.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.elems.last().copied()
    }

    /// Inclusive window bounds; `None` for the empty set.
    pub fn window(&self) -> Option<(i64, i64)> {
        self.window
    }

    pub fn is_subset_of(&self, other: &IntSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Materializes the set as a bit vector over its window.
    pub fn to_bits(&self, caps: &Caps) -> Result<BitWindow> {
        let (lo, hi) = self.window.unwrap_or((0, 0));
        let mut bits = BitWindow::new(lo, hi, caps)?;
        for v in self.iter() {
            bits.insert(v);
        }
        Ok(bits)
    }

    /// Parses a set from text: integers separated by whitespace and/or
    /// commas, with `#` starting a comment that runs to end of line.
    /// Duplicate values are merged.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            for tok in line.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let v: i64 = tok
                    .parse()
                    .map_err(|_| Error::parse(format!("invalid integer {tok:?}")))?;
                values.push(v);
            }
        }
        Ok(IntSet::new(values))
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        IntSet::parse(&text)
    }
}

impl FromIterator<i64> for IntSet {
    fn from_iter<T: IntoIterator<Item = i64>>(iter: T) -> Self {
        IntSet::new(iter.into_iter().collect())
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Sets serialize as plain arrays of their elements; the window is derived
/// presentation-layer information.
impl Serialize for IntSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

/// The inverse of the array serialization: elements in any order, duplicates
/// collapse, no window.
impl<'de> serde::Deserialize<'de> for IntSet {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        Ok(IntSet::new(Vec::<i64>::deserialize(deserializer)?))
    }
}

/// A concrete arithmetic progression `start, start + difference, …` of
/// `length` terms, used as a checkable witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApWitness {
    pub start: i64,
    /// Common difference, always ≥ 1 (singletons use difference 1).
    pub difference: i64,
    /// Number of terms, always ≥ 1.
    pub length: u64,
}

impl ApWitness {
    pub fn new(start: i64, difference: i64, length: u64) -> Self {
        assert!(difference >= 1, "progression difference must be >= 1");
        assert!(length >= 1, "progression length must be >= 1");
        ApWitness {
            start,
            difference,
            length,
        }
    }

    /// The terms of the progression, in increasing order.
    pub fn terms(&self) -> Vec<i64> {
        (0..self.length)
            .map(|j| self.start + self.difference * j as i64)
            .collect()
    }

    /// True if every term belongs to `set`.
    pub fn contained_in(&self, set: &IntSet) -> bool {
        self.terms().iter().all(|t| set.contains(*t))
    }
}
