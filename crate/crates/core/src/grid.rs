//! Sets of lattice points in up to four dimensions: iterated restricted
//! sumsets by bit-grid dynamic programming, the stack/dyadic decomposition
//! machinery behind the dense-box lower bounds, replacement-walk witnesses,
//! a rank-lowering embedding into the plane, and an empirical bound
//! verifier.
//!
//! Points are `d`-tuples of checked `i64`. A [`GridSet`] may carry a *box*
//! `[1, N₁] × … × [1, N_d]`; the density-sensitive operations (stacks,
//! dyadic selection, bound measurement) require one, the sumset DP does not.

use serde::Serialize;

use crate::budget::Caps;
use crate::error::{Error, Result};
use crate::intset::IntSet;

fn gcd_u128(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd_u128(b, a % b)
    }
}

/// A finite set of `d`-dimensional integer points, `1 ≤ d ≤ 4`, optionally
/// declared as a subset of the box `[1, N₁] × … × [1, N_d]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridSet {
    dim: usize,
    /// Sorted lexicographically, no duplicates.
    points: Vec<Vec<i64>>,
    #[serde(rename = "box")]
    box_dims: Option<Vec<i64>>,
}

impl GridSet {
    pub fn new(dim: usize, mut points: Vec<Vec<i64>>) -> Result<Self> {
        if !(1..=4).contains(&dim) {
            return Err(Error::shape(format!(
                "dimension must be between 1 and 4, got {dim}"
            )));
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::shape(format!(
                    "point {p:?} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
        }
        points.sort_unstable();
        points.dedup();
        Ok(GridSet {
            dim,
            points,
            box_dims: None,
        })
    }

    /// Declares the box `[1, N₁] × … × [1, N_d]`; every point must lie in it.
    pub fn with_box(mut self, dims: Vec<i64>) -> Result<Self> {
        if dims.len() != self.dim {
            return Err(Error::shape(format!(
                "box has {} axes, set has {}",
                dims.len(),
                self.dim
            )));
        }
        if let Some(n) = dims.iter().find(|n| **n < 1) {
            return Err(Error::shape(format!("box axis bound must be >= 1, got {n}")));
        }
        for p in &self.points {
            for (c, n) in p.iter().zip(&dims) {
                if *c < 1 || c > n {
                    return Err(Error::shape(format!(
                        "point {p:?} is outside the box {dims:?}"
                    )));
                }
            }
        }
        self.box_dims = Some(dims);
        Ok(self)
    }

    /// The full box `[1, N₁] × … × [1, N_d]` as a `GridSet` with that box.
    pub fn full_box(dims: Vec<i64>) -> Result<Self> {
        let d = dims.len();
        if !(1..=4).contains(&d) {
            return Err(Error::shape(format!(
                "dimension must be between 1 and 4, got {d}"
            )));
        }
        let mut points = vec![vec![1i64; d]];
        for (axis, &n) in dims.iter().enumerate() {
            if n < 1 {
                return Err(Error::shape(format!("box axis bound must be >= 1, got {n}")));
            }
            let mut next = Vec::with_capacity(points.len() * n as usize);
            for p in &points {
                for v in 1..=n {
                    let mut q = p.clone();
                    q[axis] = v;
                    next.push(q);
                }
            }
            points = next;
        }
        GridSet::new(d, points)?.with_box(dims)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn box_dims(&self) -> Option<&[i64]> {
        self.box_dims.as_deref()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    /// Parses the grid file format: one point per line as comma-separated
    /// coordinates, with an optional first line `box: N1,N2,...`; `#` starts
    /// a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut box_dims: Option<Vec<i64>> = None;
        let mut points: Vec<Vec<i64>> = Vec::new();
        let mut first_content_line = true;
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if first_content_line {
                first_content_line = false;
                if let Some(rest) = line.strip_prefix("box:") {
                    box_dims = Some(parse_coords(rest)?);
                    continue;
                }
            } else if line.starts_with("box:") {
                return Err(Error::parse("box header must be the first line"));
            }
            points.push(parse_coords(line)?);
        }
        let dim = match (&box_dims, points.first()) {
            (Some(b), _) => b.len(),
            (None, Some(p)) => p.len(),
            (None, None) => {
                return Err(Error::parse(
                    "empty grid file: cannot infer dimension without a box header",
                ))
            }
        };
        let set = GridSet::new(dim, points)?;
        match box_dims {
            Some(b) => set.with_box(b),
            None => Ok(set),
        }
    }

    pub fn from_file(path: impl AsRef<std::path::Path>) -> Result<Self> {
        GridSet::parse(&std::fs::read_to_string(path)?)
    }
}

fn parse_coords(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::parse(format!("invalid coordinate {:?}", t.trim())))
        })
        .collect()
}

/// Dense multi-dimensional bit grid over a window `Π [loᵢ, hiᵢ]`, row-major.
struct NdGrid {
    lo: Vec<i64>,
    size: Vec<usize>,
    strides: Vec<usize>,
    words: Vec<u64>,
}

impl NdGrid {
    fn new(lo: &[i64], hi: &[i64], caps: &Caps) -> Result<Self> {
        let mut cells: u128 = 1;
        for (l, h) in lo.iter().zip(hi) {
            debug_assert!(l <= h);
            cells = cells.saturating_mul((*h as i128 - *l as i128 + 1) as u128);
        }
        caps.check_window(cells)?;
        let size: Vec<usize> = lo
            .iter()
            .zip(hi)
            .map(|(l, h)| (*h - *l + 1) as usize)
            .collect();
        let mut strides = vec![1usize; size.len()];
        for i in (0..size.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * size[i + 1];
        }
        Ok(NdGrid {
            lo: lo.to_vec(),
            size,
            strides,
            words: vec![0; (cells as usize).div_ceil(64)],
        })
    }

    fn index(&self, p: &[i64]) -> usize {
        p.iter()
            .zip(self.lo.iter().zip(&self.size))
            .zip(&self.strides)
            .map(|((c, (l, n)), s)| {
                let off = (c - l) as usize;
                debug_assert!(off < *n, "coordinate {c} escapes its window axis");
                off * s
            })
            .sum()
    }

    fn insert(&mut self, p: &[i64]) {
        let i = self.index(p);
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn decode(&self, mut idx: usize) -> Vec<i64> {
        let mut p = Vec::with_capacity(self.lo.len());
        for (s, l) in self.strides.iter().zip(&self.lo) {
            p.push((idx / s) as i64 + l);
            idx %= s;
        }
        p
    }

    fn set_indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                out.push(wi * 64 + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        out
    }

    /// `out |= self + delta` (vector shift). The caller guarantees every
    /// shifted point fits `out`'s window; this holds by construction for the
    /// sumset DP, whose windows bound all reachable sums.
    fn or_shifted_into(&self, delta: &[i64], out: &mut NdGrid) {
        for idx in self.set_indices() {
            let mut p = self.decode(idx);
            for (c, d) in p.iter_mut().zip(delta) {
                *c += d;
            }
            out.insert(&p);
        }
    }
}

/// All coordinatewise sums of sub-multisets of `a` in which every point is
/// used at most `m` times. Always contains the origin (the empty sum).
pub fn grid_restricted_sumset(a: &GridSet, m: u32) -> Result<GridSet> {
    grid_restricted_sumset_with(a, m, &Caps::default())
}

pub fn grid_restricted_sumset_with(a: &GridSet, m: u32, caps: &Caps) -> Result<GridSet> {
    if m == 0 {
        return Err(Error::range("multiplicity m must be >= 1"));
    }
    let d = a.dim();
    let mut lo = vec![0i128; d];
    let mut hi = vec![0i128; d];
    for p in a.points() {
        for (axis, &c) in p.iter().enumerate() {
            if c < 0 {
                lo[axis] += c as i128 * m as i128;
            } else {
                hi[axis] += c as i128 * m as i128;
            }
        }
    }
    let to64 = |v: i128| i64::try_from(v).map_err(|_| Error::overflow("sizing sumset window"));
    let lo: Vec<i64> = lo.into_iter().map(to64).collect::<Result<_>>()?;
    let hi: Vec<i64> = hi.into_iter().map(to64).collect::<Result<_>>()?;

    let mut dp = NdGrid::new(&lo, &hi, caps)?;
    dp.insert(&vec![0i64; d]);
    for p in a.points() {
        // acc runs over "previous state shifted by c·p" for c = 1..m.
        let mut acc = NdGrid::new(&lo, &hi, caps)?;
        dp.or_shifted_into(&vec![0; d], &mut acc);
        for _ in 0..m {
            let mut shifted = NdGrid::new(&lo, &hi, caps)?;
            acc.or_shifted_into(p, &mut shifted);
            for (w, s) in dp.words.iter_mut().zip(&shifted.words) {
                *w |= s;
            }
            acc = shifted;
        }
    }
    let points: Vec<Vec<i64>> = dp.set_indices().into_iter().map(|i| dp.decode(i)).collect();
    GridSet::new(d, points)
}

/// One stack of a [`StackDecomposition`]: the fiber of `A` over a base point
/// in the first `d−1` coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct Stack {
    pub base: Vec<i64>,
    /// Last coordinates of the points in this fiber, sorted.
    pub elems: Vec<i64>,
    /// True when `2·|elems|·Π_{i<d} Nᵢ > |A|`, i.e. `|elems| > α·N_d / 2`.
    pub dense: bool,
}

/// Partition of a boxed grid set into fibers over the first `d−1`
/// coordinates, with each fiber classified dense or sparse against the
/// threshold `α·N_d/2` (where `α = |A| / Π Nᵢ` is the density).
#[derive(Debug, Clone, Serialize)]
pub struct StackDecomposition {
    /// Nonempty stacks, sorted by base point.
    pub stacks: Vec<Stack>,
    /// `|A|`.
    pub total: u64,
    /// `Π Nᵢ`.
    pub volume: u128,
    /// `Π_{i<d} Nᵢ` (number of possible base points).
    pub base_cells: u128,
    /// `N_d`.
    pub last_axis: i64,
    /// `|A| / volume`.
    pub alpha: f64,
    /// `max(1, ⌈log₂ α⁻¹⌉)`.
    pub s: u32,
    pub dense_mass: u64,
    pub sparse_mass: u64,
}

/// Smallest `t ≥ 0` with `|A|·2^t ≥ volume`, i.e. `⌈log₂ α⁻¹⌉` computed
/// exactly in integers.
fn ceil_log2_inv_alpha(total: u64, volume: u128) -> u32 {
    debug_assert!(total > 0);
    let mut t = 0u32;
    while (total as u128) << t < volume {
        t += 1;
    }
    t
}

/// Splits a boxed set of dimension ≥ 2 into stacks over the first `d−1`
/// coordinates and classifies each against the density threshold.
pub fn stack_partition(a: &GridSet) -> Result<StackDecomposition> {
    let Some(dims) = a.box_dims() else {
        return Err(Error::shape("stack partition requires a declared box"));
    };
    if a.dim() < 2 {
        return Err(Error::shape("stack partition requires dimension >= 2"));
    }
    let volume: u128 = dims.iter().map(|n| *n as u128).product();
    let base_cells: u128 = dims[..dims.len() - 1].iter().map(|n| *n as u128).product();
    let last_axis = dims[dims.len() - 1];
    let total = a.len() as u64;

    let mut stacks: Vec<Stack> = Vec::new();
    for p in a.points() {
        let (base, last) = (&p[..p.len() - 1], p[p.len() - 1]);
        match stacks.last_mut() {
            Some(s) if s.base == base => s.elems.push(last),
            _ => stacks.push(Stack {
                base: base.to_vec(),
                elems: vec![last],
                dense: false,
            }),
        }
    }
    let mut dense_mass = 0u64;
    let mut sparse_mass = 0u64;
    for s in &mut stacks {
        // |A_x| > α·N_d/2  ⟺  2·|A_x|·Π_{i<d} Nᵢ > |A|, exact in integers.
        s.dense = 2 * s.elems.len() as u128 * base_cells > total as u128;
        if s.dense {
            dense_mass += s.elems.len() as u64;
        } else {
            sparse_mass += s.elems.len() as u64;
        }
    }
    // Sparse stacks each hold ≤ α·N_d/2 elements and there are at most
    // base_cells of them, so they hold at most |A|/2 elements in total.
    assert!(
        2 * sparse_mass <= total,
        "sparse stacks exceed half the set: {sparse_mass} of {total}"
    );
    let s = if total == 0 {
        1
    } else {
        ceil_log2_inv_alpha(total, volume).max(1)
    };
    Ok(StackDecomposition {
        stacks,
        total,
        volume,
        base_cells,
        last_axis,
        alpha: total as f64 / volume as f64,
        s,
        dense_mass,
        sparse_mass,
    })
}

/// The dyadic size class selected by [`dyadic_select`].
#[derive(Debug, Clone, Serialize)]
pub struct DyadicSelection {
    /// Class index `i`: the class collects dense stacks with
    /// `2^{i−1}·α·N_d < |A_x| ≤ 2^i·α·N_d`.
    pub class_index: u32,
    /// Number of classes needed to cover every dense stack:
    /// `⌈log₂ α⁻¹⌉ + 1`.
    pub num_classes: u32,
    /// The class threshold `t = 2^{i−1}·α·N_d` as an exact reduced fraction.
    pub threshold: (u128, u128),
    /// Base points of the stacks in the selected class, sorted.
    pub bases: Vec<Vec<i64>>,
    /// Elements of `A` covered by the selected class.
    pub covered_mass: u64,
    /// Covered mass of every class, indexed by `i`.
    pub class_masses: Vec<u64>,
}

/// Buckets the dense stacks into dyadic size classes and returns the class
/// of maximum covered mass (ties broken toward the smallest index).
///
/// The classes are `(2^{i−1}·α·N_d, 2^i·α·N_d]` for `i = 0, …,
/// ⌈log₂ α⁻¹⌉`. The top index is needed: dense stacks range up to `N_d`,
/// and the class at `i = ⌈log₂ α⁻¹⌉ − 1` tops out strictly below that. Each
/// dense stack lands in exactly one class, so the best class covers at least
/// `|A| / (2 · num_classes)` elements, which is asserted.
pub fn dyadic_select(dec: &StackDecomposition) -> Result<DyadicSelection> {
    if dec.stacks.iter().all(|s| !s.dense) {
        return Err(Error::Empty {
            what: "dense stack list",
        });
    }
    let i_max = ceil_log2_inv_alpha(dec.total, dec.volume);
    let num_classes = i_max + 1;
    let mut class_masses = vec![0u64; num_classes as usize];
    let mut class_bases: Vec<Vec<Vec<i64>>> = vec![Vec::new(); num_classes as usize];
    for s in dec.stacks.iter().filter(|s| s.dense) {
        let z = s.elems.len() as u128;
        // Class index: smallest i with z·P ≤ 2^i·|A|.
        let mut i = 0u32;
        while z * dec.base_cells > (dec.total as u128) << i {
            i += 1;
        }
        assert!(i <= i_max, "dense stack of size {z} escapes every class");
        class_masses[i as usize] += s.elems.len() as u64;
        class_bases[i as usize].push(s.base.clone());
    }
    let best = (0..num_classes as usize)
        .max_by_key(|&i| (class_masses[i], std::cmp::Reverse(i)))
        .expect("at least one class");
    let covered = class_masses[best];
    assert!(
        2 * covered as u128 * num_classes as u128 >= dec.total as u128,
        "selected class covers {covered} of {}, below the 1/(2·{num_classes}) share",
        dec.total
    );
    // Threshold 2^{i−1}·α·N_d = 2^{i−1}·|A|/P, as a reduced fraction.
    let (mut num, mut den) = if best == 0 {
        (dec.total as u128, 2 * dec.base_cells)
    } else {
        ((dec.total as u128) << (best - 1), dec.base_cells)
    };
    let g = gcd_u128(num, den).max(1);
    num /= g;
    den /= g;
    Ok(DyadicSelection {
        class_index: best as u32,
        num_classes,
        threshold: (num, den),
        bases: class_bases[best].clone(),
        covered_mass: covered,
        class_masses,
    })
}

/// The strictly increasing walk of sums produced by the replacement rule on
/// a set `B` of `2k` positive integers: start with `m` copies of each of the
/// `k` smallest elements; at each step replace one copy of `b_i` by
/// `b_{i+1}`, always at the largest eligible index; finish with `m` copies
/// of each of the `k` largest. Exactly `m·k² + 1` sums are visited, each a
/// sum of `mk` elements with per-element multiplicity at most `m`.
pub fn index_walk_witness(b: &IntSet, m: u32) -> Result<Vec<i64>> {
    if !b.len().is_multiple_of(2) {
        return Err(Error::shape(format!(
            "walk needs an even-size set, got {} elements",
            b.len()
        )));
    }
    if let Some(min) = b.min() {
        if min <= 0 {
            return Err(Error::domain(format!(
                "walk requires positive elements, found {min}"
            )));
        }
    }
    if m == 0 {
        return Err(Error::range("multiplicity m must be >= 1"));
    }
    let xs = b.as_slice();
    let k = xs.len() / 2;
    let add = |a: i64, b: i64| {
        a.checked_add(b)
            .ok_or_else(|| Error::overflow("summing walk entries"))
    };
    let mut counts = vec![0u32; xs.len()];
    let mut sum: i64 = 0;
    for (i, c) in counts.iter_mut().enumerate().take(k) {
        *c = m;
        for _ in 0..m {
            sum = add(sum, xs[i])?;
        }
    }
    let mut walk = Vec::with_capacity(k * k * m as usize + 1);
    walk.push(sum);
    loop {
        // Largest i with a copy of b_i on hand and room at b_{i+1}.
        let step = (0..xs.len().saturating_sub(1))
            .rev()
            .find(|&i| counts[i] > 0 && counts[i + 1] < m);
        let Some(i) = step else { break };
        counts[i] -= 1;
        counts[i + 1] += 1;
        sum = add(sum, xs[i + 1] - xs[i])?;
        walk.push(sum);
    }
    assert_eq!(
        walk.len(),
        m as usize * k * k + 1,
        "replacement walk visited an unexpected number of sums"
    );
    debug_assert!(walk.windows(2).all(|w| w[0] < w[1]));
    Ok(walk)
}

/// Drops the axes with `Nᵢ = 1` and returns the remaining coordinates and
/// axis bounds.
fn reduce_axes(x: &[i64], dims: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let mut xs = Vec::new();
    let mut ns = Vec::new();
    for (c, n) in x.iter().zip(dims) {
        if *n > 1 {
            xs.push(*c);
            ns.push(*n);
        }
    }
    (xs, ns)
}

/// The mixed-radix flattening underlying [`freiman_embed_box`], applied to
/// an arbitrary vector (no box membership required): axes with `Nᵢ = 1` are
/// dropped, the first remaining coordinate is kept, and the rest are
/// combined as `Σ xᵢ·Π_{j<i} Nⱼ` over the remaining axes. Linear, so it
/// commutes with coordinatewise sums.
pub fn freiman_flatten(x: &[i64], dims: &[i64]) -> Result<(i64, i64)> {
    if x.len() != dims.len() {
        return Err(Error::shape(format!(
            "vector has {} coordinates, box has {}",
            x.len(),
            dims.len()
        )));
    }
    let (xs, ns) = reduce_axes(x, dims);
    if xs.is_empty() {
        return Ok((0, 0));
    }
    let mut second: i128 = 0;
    let mut weight: i128 = 1;
    for (i, &c) in xs.iter().enumerate().skip(1) {
        if i > 1 {
            weight = weight
                .checked_mul(ns[i - 1] as i128)
                .ok_or_else(|| Error::overflow("computing flattening weight"))?;
        }
        second = second
            .checked_add(c as i128 * weight)
            .ok_or_else(|| Error::overflow("computing flattened coordinate"))?;
    }
    let second =
        i64::try_from(second).map_err(|_| Error::overflow("flattened coordinate exceeds i64"))?;
    Ok((xs[0], second))
}

/// Embeds a point of the box `[1, N₁] × … × [1, N_d]` into the plane by the
/// mixed-radix map `x ↦ (x₁, Σ_{i≥2} xᵢ·Π_{2≤j<i} Nⱼ)` (computed after
/// dropping axes with `Nᵢ = 1`). Injective on box points; the second
/// coordinate is at most `Σ_{i=2}^{d} N₂⋯Nᵢ ≤ 2·N₂⋯N_d`.
pub fn freiman_embed_box(x: &[i64], dims: &[i64]) -> Result<(i64, i64)> {
    if x.len() != dims.len() {
        return Err(Error::shape(format!(
            "point has {} coordinates, box has {}",
            x.len(),
            dims.len()
        )));
    }
    for (c, n) in x.iter().zip(dims) {
        if *n < 1 {
            return Err(Error::shape(format!("box axis bound must be >= 1, got {n}")));
        }
        if *c < 1 || c > n {
            return Err(Error::range(format!(
                "point {x:?} lies outside the box {dims:?}"
            )));
        }
    }
    freiman_flatten(x, dims)
}

/// Maps a boxed grid set through [`freiman_embed_box`] pointwise, producing
/// a 2-D grid set (without a box; image coordinates may include 0).
pub fn freiman_embed_set(a: &GridSet) -> Result<GridSet> {
    let Some(dims) = a.box_dims() else {
        return Err(Error::shape("embedding requires a declared box"));
    };
    let images: Vec<Vec<i64>> = a
        .points()
        .iter()
        .map(|p| freiman_embed_box(p, dims).map(|(u, v)| vec![u, v]))
        .collect::<Result<_>>()?;
    let img = GridSet::new(2, images)?;
    assert_eq!(img.len(), a.len(), "embedding collided on box points");
    Ok(img)
}

/// Descriptive measurement of the iterated-sumset size of a boxed set
/// against the polynomial lower-bound shape `|A|^{d+1}·m^d` with
/// logarithmic corrections.
#[derive(Debug, Clone, Serialize)]
pub struct DenseGapReport {
    pub dim: usize,
    pub size: u64,
    pub m: u32,
    pub box_dims: Vec<i64>,
    pub volume: u128,
    pub alpha: f64,
    /// Exact `|mΣ*A|`.
    pub sumset_size: u64,
    /// For `d = 1`: the provable exact bound `m·k(k+1)/2 + 1`, which is
    /// asserted against `sumset_size`.
    pub d1_lower_bound: Option<u64>,
    /// `sumset_size / d1_lower_bound` when the latter applies.
    pub d1_ratio: Option<f64>,
    /// `sumset_size · max(ln α⁻¹, 1)^{d²} / (|A|^{d+1} m^d)`.
    pub ratio_alpha_normalized: f64,
    /// Same with `max(ln |A|, 1)` in place of the density logarithm — the
    /// two normalizations bracket the intended correction term.
    pub ratio_size_normalized: f64,
}

/// Measures `|mΣ*A|` exactly and reports empirical constants against the
/// `|A|^{d+1} m^d` bound shape. Purely descriptive for `d ≥ 2`; the exact
/// `d = 1` chain bound is asserted.
pub fn verify_dense_gap_bound(a: &GridSet, m: u32) -> Result<DenseGapReport> {
    verify_dense_gap_bound_with(a, m, &Caps::default())
}

pub fn verify_dense_gap_bound_with(a: &GridSet, m: u32, caps: &Caps) -> Result<DenseGapReport> {
    let Some(dims) = a.box_dims() else {
        return Err(Error::shape("bound measurement requires a declared box"));
    };
    if a.is_empty() {
        return Err(Error::Empty { what: "grid set" });
    }
    if m == 0 {
        return Err(Error::range("multiplicity m must be >= 1"));
    }
    let d = a.dim();
    let k = a.len() as u64;
    let volume: u128 = dims.iter().map(|n| *n as u128).product();
    let sumset_size = grid_restricted_sumset_with(a, m, caps)?.len() as u64;

    let (d1_lower_bound, d1_ratio) = if d == 1 {
        // Box coordinates are ≥ 1, so the chain/repetition bound applies:
        // m·k(k+1)/2 + 1 distinct sums, which also dominates m·k²/2.
        let bound = m as u64 * k * (k + 1) / 2 + 1;
        assert!(
            sumset_size >= bound,
            "1-D sumset size {sumset_size} below provable bound {bound}"
        );
        assert!(2 * sumset_size as u128 >= m as u128 * k as u128 * k as u128);
        (Some(bound), Some(sumset_size as f64 / bound as f64))
    } else {
        (None, None)
    };

    let alpha = k as f64 / volume as f64;
    let clamped_ln = |t: f64| t.ln().max(1.0);
    let dd = (d * d) as f64;
    let denom = (k as f64).powi(d as i32 + 1) * (m as f64).powi(d as i32);
    Ok(DenseGapReport {
        dim: d,
        size: k,
        m,
        box_dims: dims.to_vec(),
        volume,
        alpha,
        sumset_size,
        d1_lower_bound,
        d1_ratio,
        ratio_alpha_normalized: sumset_size as f64 * clamped_ln(1.0 / alpha).powf(dd) / denom,
        ratio_size_normalized: sumset_size as f64 * clamped_ln(k as f64).powf(dd) / denom,
    })
}
