//! Exhaustive search for paint costs, distinguishing numbers, cost numbers
//! and spectra on small trees.
//!
//! Colorings are searched with color 0 as a largest class: a coloring with
//! `m` special vertices is only considered when every special class has at
//! most `N - m` vertices. Special colors are assigned as restricted growth
//! strings, so colorings that differ by renaming special colors are visited
//! once.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::spectrum::SpectrumReport;
use crate::symmetry::{fixing_number_bruteforce, RootedView};
use crate::tree::{Coloring, Tree};

/// Environment variable overriding [`OracleBudget::max_candidate_colorings`].
pub const BUDGET_ENV: &str = "SYMSPEC_BUDGET";

const CHUNK: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest number of special vertices `min_paint_cost` tries.
    pub max_special_slots: usize,
    /// Cap on the number of colorings tested by one search.
    pub max_candidate_colorings: u64,
    pub time_limit: Option<Duration>,
    /// Worker threads; 0 uses rayon's default.
    pub jobs: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_special_slots: 8,
            max_candidate_colorings: 100_000_000,
            time_limit: None,
            jobs: 0,
        }
    }
}

impl OracleBudget {
    /// Defaults, with `SYMSPEC_BUDGET` replacing the candidate cap when set.
    pub fn from_env() -> Result<Self> {
        let mut budget = Self::default();
        if let Ok(raw) = std::env::var(BUDGET_ENV) {
            budget.max_candidate_colorings = raw
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("{BUDGET_ENV}={raw:?} is not a count")))?;
        }
        budget.validate()?;
        Ok(budget)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_special_slots == 0 || self.max_candidate_colorings == 0 {
            return Err(Error::domain("oracle budgets must be positive"));
        }
        Ok(())
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| Error::domain(format!("thread pool: {e}")))
    }
}

/// Order in which the paint-cost search visits candidates. Both orders
/// find the same minimum; witnesses may differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchOrder {
    /// Vertex subsets and color assignments in lexicographic order, so the
    /// witness is the lexicographically smallest minimal coloring.
    #[default]
    Forward,
    /// Subsets in reverse order with special colors `c` renamed `d - c`.
    Reverse,
}

/// A minimum paint cost together with a coloring achieving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaintCost {
    pub cost: usize,
    pub witness: Coloring,
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Restricted growth strings of length `len` with values in `1..=max_color`
/// where no value repeats more than `cap` times. Generation stops and
/// returns `None` once more than `limit` strings exist.
fn growth_strings(len: usize, max_color: u32, cap: usize, limit: u64) -> Option<Vec<Vec<u32>>> {
    fn rec(
        prefix: &mut Vec<u32>,
        counts: &mut Vec<usize>,
        len: usize,
        max_color: u32,
        cap: usize,
        limit: u64,
        out: &mut Vec<Vec<u32>>,
    ) -> bool {
        if prefix.len() == len {
            out.push(prefix.clone());
            return out.len() as u64 <= limit;
        }
        let used = counts.len() as u32;
        for c in 1..=(used + 1).min(max_color) {
            let i = c as usize - 1;
            if i == counts.len() {
                counts.push(0);
            }
            if counts[i] < cap {
                counts[i] += 1;
                prefix.push(c);
                let ok = rec(prefix, counts, len, max_color, cap, limit, out);
                prefix.pop();
                counts[i] -= 1;
                if !ok {
                    return false;
                }
            }
            if counts[i] == 0 {
                counts.pop();
            }
        }
        true
    }
    let mut out = Vec::new();
    if len > 0 && max_color == 0 {
        return Some(out);
    }
    let ok = rec(
        &mut Vec::new(),
        &mut Vec::new(),
        len,
        max_color,
        cap,
        limit,
        &mut out,
    );
    ok.then_some(out)
}

/// Next integer with the same number of set bits.
fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// All `m`-subsets of `0..n` as bitmasks in increasing numeric order, with
/// vertex `i` at bit `n - 1 - i`.
fn subsets(n: usize, m: usize) -> impl Iterator<Item = u64> {
    let count = binomial(n, m);
    let first = if m == 0 { 0 } else { (1u64 << m) - 1 };
    std::iter::successors(Some(first), move |&x| (x != 0).then(|| next_combination(x)))
        .take(count as usize)
}

fn mask_vertices(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> (n - 1 - i) & 1 == 1).collect()
}

/// Minimum number of non-neutral vertices in a distinguishing coloring with
/// at most `d` colors, with a lexicographically smallest witness.
pub fn min_paint_cost(tree: &Tree, d: u32, budget: &OracleBudget) -> Result<PaintCost> {
    min_paint_cost_ordered(tree, d, budget, SearchOrder::Forward)
}

pub fn min_paint_cost_ordered(
    tree: &Tree,
    d: u32,
    budget: &OracleBudget,
    order: SearchOrder,
) -> Result<PaintCost> {
    budget.validate()?;
    if d == 0 {
        return Err(Error::domain("palette size must be at least 1"));
    }
    let pool = budget.pool()?;
    pool.install(|| search(tree, d, budget, order, budget.max_special_slots))
}

fn search(
    tree: &Tree,
    d: u32,
    budget: &OracleBudget,
    order: SearchOrder,
    slot_cap: usize,
) -> Result<PaintCost> {
    let n = tree.vertex_count();
    if n > 64 {
        return Err(Error::budget(
            format!("oracle search on {n} vertices (limit 64)"),
            None,
        ));
    }
    let view = RootedView::new(tree);
    let start = Instant::now();
    let timed_out = AtomicBool::new(false);
    let mut spent: u64 = 0;
    // With d colors the neutral class has at least ceil(n / d) vertices.
    let max_m = n - n.div_ceil(d as usize);
    for m in 0..=max_m {
        if m > slot_cap {
            return Err(Error::budget(
                format!("paint cost search beyond {slot_cap} special vertices"),
                Some(m as u64),
            ));
        }
        let remaining = budget.max_candidate_colorings - spent;
        let subset_count = binomial(n, m);
        let per_subset = remaining / subset_count.max(1);
        let strings = growth_strings(m, d - 1, n - m, per_subset)
            .filter(|s| (s.len() as u64).saturating_mul(subset_count) <= remaining)
            .ok_or_else(|| {
                Error::budget(
                    format!(
                        "more than {} candidate colorings",
                        budget.max_candidate_colorings
                    ),
                    Some(m as u64),
                )
            })?;
        spent += strings.len() as u64 * subset_count;
        if strings.is_empty() {
            continue;
        }
        let strings: Vec<Vec<u32>> = match order {
            SearchOrder::Forward => strings,
            SearchOrder::Reverse => strings
                .into_iter()
                .rev()
                .map(|s| s.into_iter().map(|c| d - c).collect())
                .collect(),
        };

        let masks: Box<dyn Iterator<Item = u64>> = match order {
            SearchOrder::Forward => Box::new(subsets(n, m)),
            SearchOrder::Reverse => {
                let all: Vec<u64> = subsets(n, m).collect();
                Box::new(all.into_iter().rev())
            }
        };
        let mut masks = masks.peekable();
        while masks.peek().is_some() {
            let chunk: Vec<u64> = masks.by_ref().take(CHUNK).collect();
            let hit = chunk.par_iter().find_map_first(|&mask| {
                if let Some(limit) = budget.time_limit {
                    if start.elapsed() > limit {
                        timed_out.store(true, Ordering::Relaxed);
                        return None;
                    }
                }
                let verts = mask_vertices(mask, n);
                let mut colors = vec![0u32; n];
                strings.iter().find_map(|s| {
                    for (&v, &c) in verts.iter().zip(s) {
                        colors[v] = c;
                    }
                    view.distinguishes(&colors).then(|| colors.clone())
                })
            });
            if timed_out.load(Ordering::Relaxed) {
                return Err(Error::budget("oracle time limit", Some(m as u64)));
            }
            if let Some(colors) = hit {
                return Ok(PaintCost {
                    cost: m,
                    witness: Coloring::new(d, colors)?,
                });
            }
        }
    }
    Err(Error::Infeasible(format!(
        "no distinguishing coloring with {d} colors"
    )))
}

/// Distinguishing number: the least `d` admitting a distinguishing
/// `d`-coloring.
pub fn min_colors(tree: &Tree, budget: &OracleBudget) -> Result<u32> {
    budget.validate()?;
    let pool = budget.pool()?;
    pool.install(|| {
        for d in 1..=tree.vertex_count() as u32 {
            match search(tree, d, budget, SearchOrder::Forward, usize::MAX) {
                Ok(_) => return Ok(d),
                Err(Error::Infeasible(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        unreachable!("coloring every vertex differently always distinguishes")
    })
}

/// Smallest possible size of the least used color class over distinguishing
/// colorings that use all `d` colors, with the lexicographically first
/// witness.
pub fn cost_number(tree: &Tree, d: u32, budget: &OracleBudget) -> Result<(usize, Coloring)> {
    budget.validate()?;
    let n = tree.vertex_count();
    if d == 0 || d as usize > n {
        return Err(Error::domain(format!(
            "palette size {d} must lie in 1..={n}"
        )));
    }
    let candidates = stirling2(n, d as usize);
    if candidates > budget.max_candidate_colorings {
        return Err(Error::budget(
            format!("{candidates} colorings with exactly {d} colors"),
            None,
        ));
    }
    let view = RootedView::new(tree);
    let start = Instant::now();
    let mut best: Option<(usize, Vec<u32>)> = None;
    let mut colors = vec![0u32; n];
    let mut sizes = vec![0usize; d as usize];
    let mut timed_out = false;
    exact_strings(&mut colors, &mut sizes, 0, 0, &mut |colors, sizes| {
        if let Some(limit) = budget.time_limit {
            if start.elapsed() > limit {
                timed_out = true;
                return false;
            }
        }
        let smallest = *sizes.iter().min().expect("d >= 1");
        if best.as_ref().is_none_or(|(b, _)| smallest < *b) && view.distinguishes(colors) {
            best = Some((smallest, colors.to_vec()));
        }
        true
    });
    if timed_out {
        return Err(Error::budget("oracle time limit", None));
    }
    let (size, colors) = best.ok_or_else(|| {
        Error::Infeasible(format!(
            "no distinguishing coloring with exactly {d} colors"
        ))
    })?;
    Ok((size, Coloring::new(d, colors)?))
}

/// Visits every restricted growth string over `0..sizes.len()` using all
/// values, in lexicographic order. The visitor returns false to stop.
fn exact_strings(
    colors: &mut [u32],
    sizes: &mut [usize],
    pos: usize,
    used: usize,
    visit: &mut dyn FnMut(&[u32], &[usize]) -> bool,
) -> bool {
    let d = sizes.len();
    if pos == colors.len() {
        return used < d || visit(colors, sizes);
    }
    // Every still-unused color needs a later position.
    if colors.len() - pos < d - used {
        return true;
    }
    for c in 0..=used.min(d - 1) {
        colors[pos] = c as u32;
        sizes[c] += 1;
        let next_used = if c == used { used + 1 } else { used };
        let go_on = exact_strings(colors, sizes, pos + 1, next_used, visit);
        sizes[c] -= 1;
        if !go_on {
            return false;
        }
    }
    true
}

/// Stirling number of the second kind, saturating at `u64::MAX`.
fn stirling2(n: usize, k: usize) -> u64 {
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 0..n {
        for j in (1..=k).rev() {
            row[j] = (j as u128 * row[j] + row[j - 1]).min(u64::MAX as u128);
        }
        row[0] = 0;
    }
    row[k] as u64
}

/// Paint cost spectrum by exhaustive search: distinguishing number, fixing
/// number and the minimum paint cost for every `d` from `dist` to `fix + 1`.
pub fn spectrum_oracle(tree: &Tree, budget: &OracleBudget) -> Result<SpectrumReport<u64>> {
    let dist = min_colors(tree, budget)?;
    let fix = fixing_number_bruteforce(tree)?;
    let costs = (dist..=fix as u32 + 1)
        .map(|d| min_paint_cost(tree, d, budget).map(|p| p.cost as u64))
        .collect::<Result<Vec<_>>>()?;
    let (k, n) = tree
        .perfect_params()
        .map(|(k, n)| (Some(k as u32), Some(n as u32)))
        .unwrap_or((None, None));
    SpectrumReport::from_costs(k, n, dist as u64, fix as u64, &costs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::is_distinguishing;

    fn perfect(k: usize, n: usize) -> Tree {
        Tree::perfect(k, n).unwrap()
    }

    #[test]
    fn subset_order_is_lexicographic() {
        let sets: Vec<Vec<usize>> = subsets(4, 2).map(|m| mask_vertices(m, 4)).collect();
        assert_eq!(
            sets,
            vec![
                vec![2, 3],
                vec![1, 3],
                vec![1, 2],
                vec![0, 3],
                vec![0, 2],
                vec![0, 1]
            ]
        );
        assert_eq!(subsets(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets(6, 6).count(), 1);
    }

    #[test]
    fn growth_strings_counts() {
        // Bell(4) = 15; with at most 2 colors 2^3 = 8.
        assert_eq!(growth_strings(4, 10, 10, 100).unwrap().len(), 15);
        assert_eq!(growth_strings(4, 2, 10, 100).unwrap().len(), 8);
        assert_eq!(growth_strings(4, 2, 2, 100).unwrap().len(), 3);
        assert!(growth_strings(4, 10, 10, 14).is_none());
        assert_eq!(growth_strings(0, 0, 0, 1).unwrap(), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(7, 2), 63);
        assert_eq!(stirling2(4, 3), 6);
        assert_eq!(stirling2(3, 0), 0);
        assert_eq!(stirling2(0, 0), 1);
    }

    #[test]
    fn paint_cost_examples() {
        let b = OracleBudget::default();
        assert_eq!(min_paint_cost(&perfect(2, 2), 2, &b).unwrap().cost, 3);
        assert_eq!(min_paint_cost(&perfect(2, 2), 3, &b).unwrap().cost, 2);
        assert_eq!(min_paint_cost(&perfect(3, 1), 3, &b).unwrap().cost, 2);
        assert_eq!(min_paint_cost(&perfect(2, 3), 3, &b).unwrap().cost, 5);
    }

    #[test]
    fn witness_is_distinguishing_and_lex_first() {
        let t = perfect(2, 2);
        let p = min_paint_cost(&t, 2, &OracleBudget::default()).unwrap();
        assert!(is_distinguishing(&t, &p.witness).unwrap());
        assert_eq!(p.witness.paint_cost(), 3);
        // Paint one leaf of each bottom pair and one middle vertex.
        assert_eq!(p.witness.colors(), &[0, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn search_orders_agree() {
        let t = perfect(2, 2);
        for d in 2..=4 {
            let b = OracleBudget::default();
            let f = min_paint_cost_ordered(&t, d, &b, SearchOrder::Forward).unwrap();
            let r = min_paint_cost_ordered(&t, d, &b, SearchOrder::Reverse).unwrap();
            assert_eq!(f.cost, r.cost);
            assert!(is_distinguishing(&t, &r.witness).unwrap());
        }
    }

    #[test]
    fn too_few_colors_is_infeasible() {
        let b = OracleBudget::default();
        assert!(matches!(
            min_paint_cost(&perfect(3, 1), 2, &b),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            min_paint_cost(&perfect(2, 1), 1, &b),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn slot_cap_reports_lower_bound() {
        let b = OracleBudget {
            max_special_slots: 2,
            ..OracleBudget::default()
        };
        match min_paint_cost(&perfect(2, 2), 2, &b) {
            Err(Error::BudgetExceeded { lower_bound, .. }) => assert_eq!(lower_bound, Some(3)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn candidate_cap_is_enforced() {
        let b = OracleBudget {
            max_candidate_colorings: 10,
            ..OracleBudget::default()
        };
        assert!(matches!(
            min_paint_cost(&perfect(2, 3), 3, &b),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn distinguishing_numbers() {
        let b = OracleBudget::default();
        assert_eq!(min_colors(&perfect(2, 3), &b).unwrap(), 2);
        assert_eq!(min_colors(&perfect(3, 2), &b).unwrap(), 3);
        assert_eq!(min_colors(&Tree::kpode(&[1, 1]).unwrap(), &b).unwrap(), 2);
    }

    #[test]
    fn cost_numbers() {
        let b = OracleBudget::default();
        assert_eq!(cost_number(&perfect(2, 2), 2, &b).unwrap().0, 3);
        assert_eq!(cost_number(&perfect(3, 1), 3, &b).unwrap().0, 1);
        assert_eq!(cost_number(&perfect(3, 2), 3, &b).unwrap().0, 4);
        let (_, w) = cost_number(&perfect(2, 2), 2, &b).unwrap();
        assert!(is_distinguishing(&perfect(2, 2), &w).unwrap());
    }

    #[test]
    fn spectra() {
        let b = OracleBudget::default();
        let s = spectrum_oracle(&perfect(2, 2), &b).unwrap();
        assert_eq!((s.dist, s.fix), (2, 2));
        assert_eq!(s.costs().copied().collect::<Vec<_>>(), vec![3, 2]);
        assert_eq!((*s.ratio.numer(), *s.ratio.denom()), (1, 2));

        let s = spectrum_oracle(&perfect(3, 1), &b).unwrap();
        assert_eq!(s.costs().copied().collect::<Vec<_>>(), vec![2]);
        assert_eq!((*s.ratio.numer(), *s.ratio.denom()), (1, 1));
    }

    #[test]
    fn env_override() {
        // Only checks parsing; the variable is not set by the test harness.
        if std::env::var(BUDGET_ENV).is_err() {
            assert_eq!(OracleBudget::from_env().unwrap(), OracleBudget::default());
        }
    }
}
