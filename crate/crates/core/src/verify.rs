//! Batch invariant suites: one entry point re-checking the library's
//! cross-module bounds and laws at configurable sizes.
//!
//! Each suite exercises public APIs only, records every check it makes, and
//! reports failures as human-readable strings instead of panicking, so a
//! single run can surface all violations at once. Suites draw their inputs
//! from the pinned generator with a per-suite derived seed: equal
//! [`VerifyConfig`]s produce byte-identical reports.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::budget::{Caps, SearchBudget};
use crate::coloring::{
    find_ap_free_coloring, find_mono_ap, product_coloring, Coloring,
};
use crate::error::{Error, Result};
use crate::gap::{containing_ap, decompose_rank2, find_collision, Gap};
use crate::grid::{
    freiman_embed_box, freiman_embed_set, freiman_flatten, grid_restricted_sumset,
    verify_dense_gap_bound, GridSet,
};
use crate::intset::IntSet;
use crate::ramsey::{census_small_sumsets, consistency_h_le_w, hilbert_number};
use crate::rng::{derive_seed, SplitMix64, DEFAULT_SEED};
use crate::sidon::{erdos_turan_sidon, sidon_cubic_lowerbound, Phase};
use crate::sumset::{m_fold_restricted_sumset, restricted_sumset};

/// Default trial count per randomized suite — smaller than a full
/// acceptance run, large enough to catch regressions.
pub const DEFAULT_SUITE_TRIALS: u64 = 300;

/// At most this many failure messages are kept per suite; the rest are
/// folded into a trailing count so a broken invariant cannot flood memory.
const MAX_RECORDED_FAILURES: usize = 16;

/// Which suites to run and how hard to push the randomized ones.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    /// `None` runs every suite; an explicit list runs exactly those, in the
    /// given order. An empty list is a valid no-op.
    pub suites: Option<Vec<String>>,
    pub seed: u64,
    pub trials: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            suites: None,
            seed: DEFAULT_SEED,
            trials: DEFAULT_SUITE_TRIALS,
        }
    }
}

/// Outcome of one suite: pass/fail, the number of individual checks, the
/// first failure messages, and any measured constants.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    pub checks: u64,
    pub failures: Vec<String>,
    pub measurements: BTreeMap<String, f64>,
}

/// Outcome of a whole run.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
    pub all_passed: bool,
}

/// Accumulator handed to each suite body.
struct SuiteRun {
    name: &'static str,
    checks: u64,
    failed: u64,
    failures: Vec<String>,
    measurements: BTreeMap<String, f64>,
}

impl SuiteRun {
    fn new(name: &'static str) -> Self {
        SuiteRun {
            name,
            checks: 0,
            failed: 0,
            failures: Vec::new(),
            measurements: BTreeMap::new(),
        }
    }

    /// Records one check; the message closure is only rendered on failure.
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(msg());
            }
        }
    }

    /// Records a `Result`-producing step, turning `Err` into a failure.
    fn try_check<T>(&mut self, res: Result<T>, what: &str) -> Option<T> {
        match res {
            Ok(v) => {
                self.checks += 1;
                Some(v)
            }
            Err(e) => {
                self.check(false, || format!("{what}: {e}"));
                None
            }
        }
    }

    fn measure(&mut self, key: &str, value: f64) {
        self.measurements.insert(key.to_string(), value);
    }

    fn finish(mut self) -> SuiteReport {
        let overflow = self.failed as usize - self.failures.len();
        if overflow > 0 {
            self.failures
                .push(format!("... and {overflow} more failures"));
        }
        SuiteReport {
            name: self.name,
            passed: self.failed == 0,
            checks: self.checks,
            failures: self.failures,
            measurements: self.measurements,
        }
    }
}

type SuiteFn = fn(&VerifyConfig, &mut SuiteRun);

/// Registry in default execution order. Seeds are derived per position, so
/// adding a suite at the end never changes earlier suites' inputs.
const SUITES: &[(&str, SuiteFn)] = &[
    ("chain", suite_chain),
    ("mfold", suite_mfold),
    ("census", suite_census),
    ("gap", suite_gap),
    ("freiman", suite_freiman),
    ("sidon-growth", suite_sidon_growth),
    ("product-coloring", suite_product_coloring),
    ("dense-box", suite_dense_box),
    ("consistency", suite_consistency),
];

/// Names of all registered suites, in default execution order.
pub fn available_suites() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

/// Runs the selected suites (all of them when the config names none) and
/// collects their reports. Unknown suite names are a domain error.
pub fn run_suites(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let selected: Vec<&(&str, SuiteFn)> = match &cfg.suites {
        None => SUITES.iter().collect(),
        Some(names) => names
            .iter()
            .map(|n| {
                SUITES
                    .iter()
                    .find(|(name, _)| name == n)
                    .ok_or_else(|| {
                        Error::domain(format!(
                            "unknown suite {n:?}; available: {}",
                            available_suites().join(", ")
                        ))
                    })
            })
            .collect::<Result<_>>()?,
    };
    let mut suites = Vec::with_capacity(selected.len());
    for (name, body) in selected {
        let mut run = SuiteRun::new(name);
        body(cfg, &mut run);
        suites.push(run.finish());
    }
    let all_passed = suites.iter().all(|s| s.passed);
    Ok(VerifyReport { suites, all_passed })
}

/// Random set of `k` distinct integers drawn from `[lo, hi]`.
fn random_set(rng: &mut SplitMix64, k: usize, lo: i64, hi: i64) -> IntSet {
    let mut vals = BTreeSet::new();
    while vals.len() < k {
        vals.insert(rng.next_in_range(lo, hi));
    }
    IntSet::new(vals.into_iter().collect())
}

/// All `2^|A|` subset sums by direct enumeration — the independent oracle
/// for the bitset kernel.
fn brute_subset_sums(a: &IntSet) -> IntSet {
    let elems = a.as_slice();
    let mut sums = BTreeSet::new();
    for mask in 0u64..(1 << elems.len()) {
        let mut s = 0i64;
        for (i, v) in elems.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s += v;
            }
        }
        sums.insert(s);
    }
    IntSet::new(sums.into_iter().collect())
}

/// Chain bound + oracle agreement on random positive sets: each restricted
/// sumset has at least `C(|A|+1, 2) + 1` elements and matches the
/// enumeration oracle exactly.
fn suite_chain(cfg: &VerifyConfig, run: &mut SuiteRun) {
    let mut rng = SplitMix64::new(derive_seed(cfg.seed, 0));
    let mut min_ratio = f64::INFINITY;
    for _ in 0..cfg.trials {
        let k = rng.next_in_range(1, 10) as usize;
        let a = random_set(&mut rng, k, 1, 60);
        let Some(s) = run.try_check(restricted_sumset(&a), "restricted_sumset") else {
            continue;
        };
        let bound = (k * (k + 1) / 2 + 1) as u64;
        run.check(s.len() as u64 >= bound, || {
            format!("chain bound: |Σ*{:?}| = {} < {bound}", a.as_slice(), s.len())
        });
        run.check(s == brute_subset_sums(&a), || {
            format!("sumset of {:?} disagrees with enumeration", a.as_slice())
        });
        min_ratio = min_ratio.min(s.len() as f64 / bound as f64);
    }
    run.measure("min_size_to_bound_ratio", min_ratio);
    run.measure("trials", cfg.trials as f64);
}

/// Iterated-sumset lower bound `|mΣ*A| ≥ m·C(|A|+1, 2) − m + 1` on random
/// positive sets.
fn suite_mfold(cfg: &VerifyConfig, run: &mut SuiteRun) {
    let mut rng = SplitMix64::new(derive_seed(cfg.seed, 1));
    for _ in 0..cfg.trials.div_ceil(5) {
        let k = rng.next_in_range(1, 6) as usize;
        let m = rng.next_in_range(1, 4) as u32;
        let a = random_set(&mut rng, k, 1, 40);
        let Some(s) = run.try_check(m_fold_restricted_sumset(&a, m), "m_fold_restricted_sumset")
        else {
            continue;
        };
        let c = (k * (k + 1) / 2) as u64;
        let bound = m as u64 * c - m as u64 + 1;
        run.check(s.len() as u64 >= bound, || {
            format!(
                "iterated bound: |{m}Σ*{:?}| = {} < {bound}",
                a.as_slice(),
                s.len()
            )
        });
    }
}

/// Exact census values and the counting bound on a small sweep.
fn suite_census(cfg: &VerifyConfig, run: &mut SuiteRun) {
    let _ = cfg;
    if let Some(r) = run.try_check(census_small_sumsets(10, 3, 6), "census(10,3,6)") {
        run.check(r.count == 0, || {
            format!("census(10,3,6) counted {} subsets, expected 0", r.count)
        });
        run.check(r.pass, || "census(10,3,6) exceeded its bound".into());
    }
    if let Some(r) = run.try_check(census_small_sumsets(10, 3, 7), "census(10,3,7)") {
        run.check(r.count == 20, || {
            format!("census(10,3,7) counted {} subsets, expected 20", r.count)
        });
        run.measure("census_10_3_7", r.count as f64);
    }
    for n in [8u64, 10, 12] {
        for k in [2u64, 3] {
            let u_min = k * (k + 1) / 2;
            for u in u_min..=(u_min + 6) {
                if let Some(r) =
                    run.try_check(census_small_sumsets(n, k, u), "census sweep")
                {
                    run.check(r.pass, || {
                        format!(
                            "census({n},{k},{u}): count {} exceeds bound {}",
                            r.count, r.bound
                        )
                    });
                }
            }
        }
    }
}

/// Structure of symmetric rank-2 progressions: the sign decomposition
/// partitions the closed index box, the containing progression covers it
/// with the stated length, and collision witnesses satisfy the Euclid
/// divisibility relation.
fn suite_gap(cfg: &VerifyConfig, run: &mut SuiteRun) {
    let mut rng = SplitMix64::new(derive_seed(cfg.seed, 3));
    for _ in 0..cfg.trials.div_ceil(5) {
        let m = rng.next_in_range(1, 4);
        let n = rng.next_in_range(1, 4);
        let d2 = rng.next_in_range(1, 8) * if rng.next_u64() & 1 == 1 { -1 } else { 1 };
        // d₁ beyond 2n|d₂| separates the d₁-levels, making the progression
        // proper on the closed box by the mixed-radix argument.
        let d1_lo = 2 * n * d2.abs() + 1;
        let d1 = rng.next_in_range(d1_lo, d1_lo + 40)
            * if rng.next_u64() & 1 == 1 { -1 } else { 1 };
        let base = rng.next_in_range(-100, 100);
        let q = match Gap::new(base, vec![d1, d2], vec![(-m, m), (-n, n)]) {
            Ok(q) => q,
            Err(e) => {
                run.check(false, || format!("constructing progression: {e}"));
                continue;
            }
        };
        let caps = Caps::default();
        let closed = match q.enumerate_closed_box(&caps) {
            Ok(v) => v,
            Err(e) => {
                run.check(false, || format!("enumerating closed box: {e}"));
                continue;
            }
        };
        run.check(
            closed.len() as i64 == (2 * m + 1) * (2 * n + 1),
            || format!("progression d=({d1},{d2}) not proper on its closed box"),
        );

        if let Some(dec) = run.try_check(decompose_rank2(&q), "decompose_rank2") {
            let total: usize = dec.parts.iter().map(|p| p.len()).sum();
            run.check(total == closed.len() && dec.union() == closed, || {
                format!(
                    "sign decomposition of d=({d1},{d2}) does not partition the box \
                     ({total} part elements vs {} values)",
                    closed.len()
                )
            });
        }

        if let Some(ap) = run.try_check(containing_ap(&q), "containing_ap") {
            let g = gcd_u(d1.unsigned_abs(), d2.unsigned_abs()) as i64;
            let span = m * d1.abs() + n * d2.abs();
            run.check(ap.length <= (1 + 2 * span / g) as u64, || {
                format!(
                    "containing progression has {} terms, above 1 + 2·{span}/{g}",
                    ap.length
                )
            });
            let terms: IntSet = ap.terms().into_iter().collect();
            run.check(closed.is_subset_of(&terms), || {
                format!("progression d=({d1},{d2}) escapes its containing progression")
            });
        }
    }

    // Collision witnesses: scan a small parameter grid and verify the
    // divisibility relation on every witness found.
    let mut witnesses = 0u64;
    for (d1, d2, m, n, k) in [
        (6i64, 10i64, 2u32, 1u32, 2u32),
        (4, 6, 2, 2, 2),
        (9, 15, 1, 1, 3),
        (10, 4, 2, 3, 2),
        (7, 11, 2, 2, 3),
    ] {
        match find_collision(d1, d2, m, n, k) {
            Ok(w) => {
                witnesses += 1;
                let lhs = d1 * w.x1 as i64 + d2 * w.x2 as i64;
                let rhs = d1 * w.y1 as i64 + d2 * w.y2 as i64;
                run.check(lhs == rhs && (w.x1, w.x2) != (w.y1, w.y2), || {
                    format!("collision witness for ({d1},{d2}) is not a collision")
                });
                let g = gcd_u(d1.unsigned_abs(), d2.unsigned_abs());
                let step = d1.unsigned_abs() / g;
                run.check((w.x2 as i64 - w.y2 as i64).unsigned_abs().is_multiple_of(step), || {
                    format!(
                        "witness for ({d1},{d2}) fails divisibility by |d1|/gcd = {step}"
                    )
                });
            }
            Err(Error::CollisionNotFound) => {
                run.checks += 1; // injectivity is an honest answer
            }
            Err(e) => run.check(false, || format!("find_collision({d1},{d2}): {e}")),
        }
    }
    run.measure("collision_witnesses", witnesses as f64);
}

fn gcd_u(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Box-flattening properties: injectivity on whole boxes, linearity of the
/// flattening map, and sumset-size preservation on random subsets.
fn suite_freiman(cfg: &VerifyConfig, run: &mut SuiteRun) {
    let mut rng = SplitMix64::new(derive_seed(cfg.seed, 4));

    // Injectivity of the embedding on every box with d ≤ 3, Nᵢ ≤ 3.
    for dims in all_boxes(3, 3) {
        let points = box_points(&dims);
        let mut images = BTreeSet::new();
        let mut ok = true;
        for p in &points {
            match freiman_embed_box(p, &dims) {
                Ok(img) => {
                    if !images.insert(img) {
                        ok = false;
                    }
                }
                Err(_) => ok = false,
            }
        }
        run.check(ok && images.len() == points.len(), || {
            format!("embedding collides on the box {dims:?}")
        });
    }

    // Linearity of the flattening on arbitrary vectors.
    for _ in 0..cfg.trials.div_ceil(10) {
        let d = rng.next_in_range(1, 3) as usize;
        let dims: Vec<i64> = (0..d).map(|_| rng.next_in_range(1, 3)).collect();
        let x: Vec<i64> = (0..d).map(|_| rng.next_in_range(-9, 9)).collect();
        let y: Vec<i64> = (0..d).map(|_| rng.next_in_range(-9, 9)).collect();
        let sum: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let fx = freiman_flatten(&x, &dims);
        let fy = freiman_flatten(&y, &dims);
        let fs = freiman_flatten(&sum, &dims);
        match (fx, fy, fs) {
            (Ok((a1, a2)), Ok((b1, b2)), Ok((c1, c2))) => {
                run.check(a1 + b1 == c1 && a2 + b2 == c2, || {
                    format!("flattening is not additive on {x:?} + {y:?} in {dims:?}")
                });
            }
            _ => run.check(false, || "flattening failed on in-range vectors".into()),
        }
    }

    // Guarded sumset-size preservation on random boxed subsets: the image
    // sumset never grows, and its size matches exactly when the flattening
    // is injective on the realized sum vectors. (It is not injective
    // unconditionally — carries between mixed-radix digits can merge sums.)
    for _ in 0..cfg.trials.div_ceil(10) {
        let d = rng.next_in_range(1, 3) as usize;
        let dims: Vec<i64> = (0..d).map(|_| rng.next_in_range(1, 3)).collect();
        let all = box_points(&dims);
        let size = rng.next_in_range(1, all.len().min(5) as i64) as usize;
        let mut chosen = BTreeSet::new();
        while chosen.len() < size {
            chosen.insert(rng.next_in_range(0, all.len() as i64 - 1) as usize);
        }
        let points: Vec<Vec<i64>> = chosen.iter().map(|&i| all[i].clone()).collect();
        let a = GridSet::new(d, points)
            .and_then(|g| g.with_box(dims.clone()))
            .expect("sampled points lie in their box");
        let direct = run.try_check(grid_restricted_sumset(&a, 1), "grid sumset");
        let image = run
            .try_check(freiman_embed_set(&a), "freiman_embed_set")
            .and_then(|img| run.try_check(grid_restricted_sumset(&img, 1), "image sumset"));
        if let (Some(direct), Some(image)) = (direct, image) {
            run.check(image.len() <= direct.len(), || {
                format!(
                    "embedding grew the sumset on {dims:?}: {} vs {}",
                    direct.len(),
                    image.len()
                )
            });
            let mut flat = BTreeSet::new();
            let mut flatten_ok = true;
            for v in direct.points() {
                match freiman_flatten(v, &dims) {
                    Ok(pair) => {
                        flat.insert(pair);
                    }
                    Err(_) => flatten_ok = false,
                }
            }
            run.check(
                flatten_ok && (flat.len() == direct.len()) == (image.len() == direct.len()),
                || {
                    format!(
                        "size preservation on {dims:?} disagrees with flattening \
                         injectivity on the sum vectors"
                    )
                },
            );
        }
    }
}

/// All boxes `[1,N₁]×…×[1,N_d]` with `d ≤ max_d`, `Nᵢ ≤ max_n`.
fn all_boxes(max_d: usize, max_n: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for d in 1..=max_d {
        let mut dims: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..d {
            dims = dims
                .into_iter()
                .flat_map(|p| {
                    (1..=max_n).map(move |n| {
                        let mut q = p.clone();
                        q.push(n);
                        q
                    })
                })
                .collect();
        }
        out.extend(dims);
    }
    out
}

/// All lattice points of the box `[1,N₁]×…×[1,N_d]`.
fn box_points(dims: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &n in dims {
        out = out
            .into_iter()
            .flat_map(|p| {
                (1..=n).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

/// Two-phase growth guarantees on prime-indexed Sidon sets, plus the
/// elementary upper sanity check on the ambient sumset.
fn suite_sidon_growth(cfg: &VerifyConfig, run: &mut SuiteRun) {
    let _ = cfg;
    for p in [11u64, 13, 17] {
        let Some(a) = run.try_check(erdos_turan_sidon(p), "erdos_turan_sidon") else {
            continue;
        };
        let Some(trace) = run.try_check(sidon_cubic_lowerbound(&a), "growth pipeline")
        else {
            continue;
        };
        let quarter = p / 4;
        let gain_floor = (quarter * (quarter - 1) / 2).div_ceil(2);
        for step in &trace.steps {
            match step.phase {
                Phase::Small => run.check(
                    2 * step.sumset_after >= 3 * step.sumset_before,
                    || format!("p={p}: small step ratio below 3/2: {step:?}"),
                ),
                Phase::Large => run.check(
                    step.sumset_after >= step.sumset_before + gain_floor,
                    || format!("p={p}: large step gain below {gain_floor}: {step:?}"),
                ),
            }
        }
        run.check(
            64 * trace.final_sumset_size >= quarter * quarter * (p / 8),
            || format!("p={p}: assembled cubic floor violated"),
        );
        // |Σ*A| ≤ max(Σ*A) + 1 = sum(A) + 1 ≤ |A|·max(A) + 1 for
        // nonnegative elements.
        let total: i64 = a.iter().sum();
        let max = a.max().unwrap_or(0);
        run.check(
            trace.ambient_sumset_size as i64 <= total + 1
                && total <= p as i64 * max,
            || format!("p={p}: ambient sumset exceeds its elementary ceiling"),
        );
        run.measure(&format!("cubic_constant_p{p}"), trace.cubic_constant);
    }
}

/// Product-coloring law (exhaustive on a small ground set) and the two
/// progression-avoidance pivot cases around n = 9.
fn suite_product_coloring(cfg: &VerifyConfig, run: &mut SuiteRun) {
    let _ = cfg;
    let n = 3i64;
    let all: Vec<Coloring> = (0..(1u32 << n))
        .map(|mask| {
            Coloring::new(2, (0..n).map(|i| mask >> i & 1).collect())
                .expect("two-coloring of [3]")
        })
        .collect();
    for c1 in &all {
        for c2 in &all {
            let Some(prod) = run.try_check(product_coloring(c1, c2), "product_coloring")
            else {
                continue;
            };
            let mut law_holds = true;
            for mask in 1u32..(1 << n) {
                let points: Vec<i64> =
                    (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
                let lhs = prod.is_monochromatic(&points);
                let rhs = c1.is_monochromatic(&points) && c2.is_monochromatic(&points);
                if lhs != rhs {
                    law_holds = false;
                }
            }
            run.check(law_holds, || {
                "product coloring disagrees with factorwise monochromaticity".into()
            });
        }
    }

    match find_ap_free_coloring(8, 3, 2) {
        Ok(Some(c)) => {
            run.check(find_mono_ap(&c, 3).is_none(), || {
                "coloring of [8] claimed progression-free but contains one".into()
            });
        }
        Ok(None) => run.check(false, || "no progression-free coloring of [8] found".into()),
        Err(e) => run.check(false, || format!("searching [8]: {e}")),
    }
    match find_ap_free_coloring(9, 3, 2) {
        Ok(None) => run.checks += 1,
        Ok(Some(_)) => run.check(false, || {
            "found a 3-progression-free 2-coloring of [9], which cannot exist".into()
        }),
        Err(e) => run.check(false, || format!("searching [9]: {e}")),
    }
}

/// Exact sumset sizes of full grids `[m]×[n]` with the cubic-normalized
/// ratio recorded. Descriptive: the measurements are reported, only the
/// computation itself can fail.
fn suite_dense_box(cfg: &VerifyConfig, run: &mut SuiteRun) {
    let _ = cfg;
    let mut min_ratio = f64::INFINITY;
    let mut max_ratio: f64 = 0.0;
    for m in 2i64..=4 {
        for n in 2i64..=4 {
            let points = box_points(&[m, n]);
            let a = GridSet::new(2, points)
                .and_then(|g| g.with_box(vec![m, n]))
                .expect("full grid is inside its own box");
            let Some(report) = run.try_check(verify_dense_gap_bound(&a, 1), "grid bound")
            else {
                continue;
            };
            let size = (m * n) as f64;
            let ratio = report.sumset_size as f64 / size.powi(3);
            min_ratio = min_ratio.min(ratio);
            max_ratio = max_ratio.max(ratio);
            run.measure(&format!("sumset_{m}x{n}"), report.sumset_size as f64);
        }
    }
    run.measure("min_cubic_ratio", min_ratio);
    run.measure("max_cubic_ratio", max_ratio);
    run.check(min_ratio > 0.0, || "cubic ratio degenerated to zero".into());
}

/// Cube numbers against progression numbers on the smallest nontrivial
/// instance, plus the dimension-1 pigeonhole value.
fn suite_consistency(cfg: &VerifyConfig, run: &mut SuiteRun) {
    let _ = cfg;
    if let Some(h1) = run.try_check(hilbert_number(1, 2, 10), "h(1,2)") {
        run.check(h1.value.exact() == Some(3), || {
            format!("h(1,2) computed as {:?}, expected 3", h1.value)
        });
    }
    if let Some(rep) =
        run.try_check(consistency_h_le_w(2, 2, 40, &SearchBudget::default()), "h ≤ W")
    {
        run.check(rep.conclusive && rep.holds == Some(true), || {
            "h(2,2) ≤ W(4,2) did not certify conclusively".into()
        });
        run.check(rep.hilbert.value.exact() == Some(11), || {
            format!("h(2,2) computed as {:?}, expected 11", rep.hilbert.value)
        });
        run.check(rep.vdw_repeat_free.value.exact() == Some(35), || {
            format!(
                "W(4,2) computed as {:?}, expected 35",
                rep.vdw_repeat_free.value
            )
        });
        if let (Some(h), Some(w)) = (
            rep.hilbert.value.exact(),
            rep.vdw_repeat_free.value.exact(),
        ) {
            run.measure("h_2_2", h as f64);
            run.measure("w_4_2", w as f64);
        }
    }
}
