//! Proper epsilon-nets and covering numbers, exact at desk scale.
//!
//! Coverage is by open balls: a function is covered by a center when its
//! pseudo-distance is strictly below epsilon. `greedy_proper_net` gives a
//! fast upper bound, `exact_min_proper_net` the true minimum by exhaustive
//! subset search, and `covering_number_sup` takes the sup over point
//! samples of a given size. Exhaustive searches are budgeted: a search
//! whose enumeration would exceed the budget fails loudly instead of
//! approximating.

use crate::capacity::bitset::Bitset;
use crate::capacity::class::FiniteFunctionClass;
use crate::error::{Error, Result};
use crate::exec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default cap on the number of subsets / candidate tuples an exhaustive
/// search may enumerate.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Knobs shared by all exhaustive searches.
///
/// `budget` caps each enumeration stage separately (center subsets of a
/// net search, point subsets of a sup search, candidate tuples of a
/// shattering search); exceeding it is a hard [`Error::Overbudget`].
/// `parallel` asks for rayon evaluation when the `parallel` feature is
/// compiled in; results do not depend on it.
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub budget: u64,
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            parallel: cfg!(feature = "parallel"),
        }
    }
}

impl SearchOptions {
    pub fn with_budget(budget: u64) -> Self {
        SearchOptions {
            budget,
            ..Default::default()
        }
    }

    /// Sequential execution regardless of compiled features.
    pub fn sequential() -> Self {
        SearchOptions {
            parallel: false,
            ..Default::default()
        }
    }
}

/// A proper epsilon-net: center indices into the class, plus the result of
/// re-verifying the coverage after construction.
#[derive(Debug, Clone)]
pub struct CoverResult {
    pub epsilon: f64,
    pub centers: Vec<usize>,
    pub size: usize,
    pub is_valid_cover: bool,
}

/// How `covering_number_sup` picks point subsets.
#[derive(Debug, Clone, Copy)]
pub enum SupMode {
    /// All size-n subsets; result is the exact sup over this domain.
    Exhaustive,
    /// Seeded random subsets; result is only a lower bound on the sup and
    /// is flagged as such.
    Randomized { seed: u64, trials: u64 },
}

/// Sup of the minimum proper net size over point subsets, with the subset
/// attaining it (original point ids). `exact` is false in randomized mode,
/// where the value is a lower bound.
#[derive(Debug, Clone)]
pub struct CoveringSup {
    pub count: usize,
    pub witness_points: Vec<usize>,
    pub exact: bool,
}

/// Open-ball coverage masks: `masks[f]` holds every function strictly
/// within `epsilon` of `f`.
fn coverage_masks(class: &FiniteFunctionClass, epsilon: f64) -> Vec<Bitset> {
    let nf = class.n_functions();
    let mut masks = vec![Bitset::empty(nf); nf];
    for f in 0..nf {
        masks[f].set(f);
        for g in (f + 1)..nf {
            let d = class.pseudo_metric(f, g).expect("indices in range");
            if d < epsilon {
                masks[f].set(g);
                masks[g].set(f);
            }
        }
    }
    masks
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::non_positive("epsilon", epsilon));
    }
    Ok(())
}

/// Verifies that `centers` covers every function with open epsilon-balls.
pub fn is_valid_cover(class: &FiniteFunctionClass, epsilon: f64, centers: &[usize]) -> bool {
    (0..class.n_functions()).all(|g| {
        centers
            .iter()
            .any(|&c| class.pseudo_metric(c, g).expect("indices in range") < epsilon)
    })
}

/// Greedy proper net: repeatedly pick the uncovered function whose open
/// ball covers the most still-uncovered functions (ties broken by lowest
/// index), until everything is covered. Deterministic; never smaller than
/// the exact minimum.
pub fn greedy_proper_net(class: &FiniteFunctionClass, epsilon: f64) -> Result<CoverResult> {
    check_epsilon(epsilon)?;
    let nf = class.n_functions();
    let masks = coverage_masks(class, epsilon);
    let mut uncovered = Bitset::full(nf);
    let mut centers = Vec::new();
    while uncovered.any() {
        let mut best: Option<(usize, usize)> = None; // (gain, index)
        for f in 0..nf {
            if !uncovered.test(f) {
                continue;
            }
            let gain = masks[f].count_intersection(&uncovered);
            if best.map(|(g, _)| gain > g).unwrap_or(true) {
                best = Some((gain, f));
            }
        }
        let (_, center) = best.expect("uncovered set nonempty");
        centers.push(center);
        let mut remaining = Bitset::empty(nf);
        for g in 0..nf {
            if uncovered.test(g) && !masks[center].test(g) {
                remaining.set(g);
            }
        }
        uncovered = remaining;
    }
    let valid = is_valid_cover(class, epsilon, &centers);
    Ok(CoverResult {
        epsilon,
        size: centers.len(),
        centers,
        is_valid_cover: valid,
    })
}

/// Number of k-subsets of an n-set, saturating at u128 bounds.
fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc.saturating_mul((n - j) as u128) / (j as u128 + 1);
    }
    acc
}

/// All k-subsets of {0, .., n-1} in lexicographic order.
fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let remaining = k - cur.len();
        for i in start..=(n - remaining) {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    if k == 0 {
        out.push(Vec::new());
    } else if k <= n {
        rec(n, k, 0, &mut cur, &mut out);
    }
    out
}

/// Minimum-cardinality proper epsilon-net by exhaustive search over center
/// subsets in increasing size; the oracle `greedy_proper_net` is checked
/// against. Lexicographically first minimal net is returned.
pub fn exact_min_proper_net(
    class: &FiniteFunctionClass,
    epsilon: f64,
    opts: &SearchOptions,
) -> Result<CoverResult> {
    check_epsilon(epsilon)?;
    let nf = class.n_functions();
    let masks = coverage_masks(class, epsilon);
    let mut examined: u128 = 0;
    for size in 1..=nf {
        examined += binomial(nf, size);
        if examined > opts.budget as u128 {
            return Err(Error::Overbudget {
                needed: examined,
                budget: opts.budget,
                unit: "center subsets",
            });
        }
        let subsets = k_subsets(nf, size);
        let found = exec::find_map_first(opts.parallel, &subsets, |subset| {
            let mut covered = Bitset::empty(nf);
            for &c in subset {
                covered.or_assign(&masks[c]);
            }
            covered.is_full().then(|| subset.clone())
        });
        if let Some(centers) = found {
            let valid = is_valid_cover(class, epsilon, &centers);
            return Ok(CoverResult {
                epsilon,
                size: centers.len(),
                centers,
                is_valid_cover: valid,
            });
        }
    }
    unreachable!("the full class always covers itself at size F");
}

/// Sup over size-n point subsets of the exact minimum proper net size.
///
/// Exhaustive mode enumerates every subset (budgeted) and is exact for the
/// supplied domain. Randomized mode samples `trials` seeded subsets and
/// reports a lower bound, flagged `exact: false`. The per-subset net
/// search gets the same options.
pub fn covering_number_sup(
    class: &FiniteFunctionClass,
    epsilon: f64,
    n: usize,
    mode: SupMode,
    opts: &SearchOptions,
) -> Result<CoveringSup> {
    check_epsilon(epsilon)?;
    if n == 0 || n > class.n_points() {
        return Err(Error::InvalidParameter {
            name: "n",
            requirement: "1 <= n <= number of points",
            value: n as f64,
        });
    }
    let (subsets, exact) = match mode {
        SupMode::Exhaustive => {
            let count = binomial(class.n_points(), n);
            if count > opts.budget as u128 {
                return Err(Error::Overbudget {
                    needed: count,
                    budget: opts.budget,
                    unit: "point subsets",
                });
            }
            (k_subsets(class.n_points(), n), true)
        }
        SupMode::Randomized { seed, trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut subsets = Vec::with_capacity(trials as usize);
            for _ in 0..trials {
                let mut pick = rand::seq::index::sample(&mut rng, class.n_points(), n).into_vec();
                pick.sort_unstable();
                subsets.push(pick);
            }
            (subsets, false)
        }
    };
    let sizes: Vec<Result<usize>> = exec::map_collect(opts.parallel, &subsets, |subset| {
        let restricted = class.restrict_points(subset)?;
        Ok(exact_min_proper_net(&restricted, epsilon, opts)?.size)
    });
    let mut best: Option<(usize, usize)> = None; // (size, subset index)
    for (idx, r) in sizes.into_iter().enumerate() {
        let size = r?;
        if best.map(|(s, _)| size > s).unwrap_or(true) {
            best = Some((size, idx));
        }
    }
    let (count, idx) = best.expect("at least one subset");
    let witness_points = subsets[idx]
        .iter()
        .map(|&row| class.point_ids()[row])
        .collect();
    Ok(CoveringSup {
        count,
        witness_points,
        exact,
    })
}
