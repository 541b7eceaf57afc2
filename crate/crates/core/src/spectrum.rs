//! Closed-form symmetry parameters of perfect k-ary trees and the paint cost
//! spectrum report shared with the brute-force oracle.
//!
//! All formulas are generic over an exact unsigned integer type. Arithmetic
//! is overflow-checked, so `u64` reports an error where `BigUint` keeps
//! going.

use std::fmt::{self, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Exact unsigned integer types the closed forms can be evaluated in.
pub trait Count:
    Clone + Ord + Integer + CheckedAdd + CheckedSub + CheckedMul + FromPrimitive + Display + fmt::Debug
{
}

impl<T> Count for T where
    T: Clone
        + Ord
        + Integer
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + Display
        + fmt::Debug
{
}

fn lift<N: Count>(x: u64) -> Result<N> {
    N::from_u64(x).ok_or(Error::Overflow("integer conversion"))
}

fn mul<N: Count>(a: &N, b: &N) -> Result<N> {
    a.checked_mul(b).ok_or(Error::Overflow("multiplication"))
}

fn add<N: Count>(a: &N, b: &N) -> Result<N> {
    a.checked_add(b).ok_or(Error::Overflow("addition"))
}

fn sub<N: Count>(a: &N, b: &N) -> Result<N> {
    a.checked_sub(b).ok_or(Error::Overflow("subtraction"))
}

fn pow<N: Count>(base: u32, exp: u32) -> Result<N> {
    let b: N = lift(base as u64)?;
    let mut acc = N::one();
    for _ in 0..exp {
        acc = mul(&acc, &b)?;
    }
    Ok(acc)
}

fn check(k: u32, n: u32) -> Result<()> {
    if k < 2 || n < 1 {
        return Err(Error::domain(format!(
            "perfect k-ary trees need k >= 2 and n >= 1 (got k = {k}, n = {n})"
        )));
    }
    Ok(())
}

/// Distinguishing number of `T_k^n`.
pub fn dist_closed<N: Count>(k: u32, n: u32) -> Result<N> {
    check(k, n)?;
    lift(k as u64)
}

/// Fixing number `(k-1) k^(n-1)`.
pub fn fix_closed<N: Count>(k: u32, n: u32) -> Result<N> {
    check(k, n)?;
    mul(&lift(k as u64 - 1)?, &pow(k, n - 1)?)
}

/// Frugal distinguishing number: `k`, `k+1` or `k+2` for `n = 1`, `2`, `>= 3`.
pub fn fdist_closed<N: Count>(k: u32, n: u32) -> Result<N> {
    check(k, n)?;
    lift(k as u64 + u64::from(n.min(3)) - 1)
}

/// Paint cost of `d`-distinguishing `T_k^n` for `d` in the spectrum range
/// `[k, fix + 1]`.
pub fn rho_closed<N: Count>(k: u32, n: u32, d: &N) -> Result<N> {
    let dist: N = dist_closed(k, n)?;
    let fix: N = fix_closed(k, n)?;
    if *d < dist || *d > add(&fix, &N::one())? {
        return Err(Error::domain(format!(
            "d = {d} is outside the spectrum range [{dist}, {}]",
            add(&fix, &N::one())?
        )));
    }
    paint_cost_closed(k, n, d)
}

/// Paint cost of `d`-distinguishing `T_k^n` for any `d >= k`. Beyond the
/// spectrum range the cost stays at the fixing number.
pub fn paint_cost_closed<N: Count>(k: u32, n: u32, d: &N) -> Result<N> {
    let dist: N = dist_closed(k, n)?;
    if *d < dist {
        return Err(Error::domain(format!(
            "T_{k}^{n} has no distinguishing coloring with {d} < {dist} colors"
        )));
    }
    let fdist: N = fdist_closed(k, n)?;
    if *d >= fdist {
        return fix_closed(k, n);
    }
    let kk: N = lift(k as u64)?;
    if *d == dist {
        // k^n - 1
        return sub(&pow(k, n)?, &N::one());
    }
    // d = k + 1 < fdist, so n >= 3: (k-1)(k^2+1)k^(n-3)
    let k_minus_1 = sub(&kk, &N::one())?;
    let k_sq_plus_1 = add(&mul(&kk, &kk)?, &N::one())?;
    mul(&mul(&k_minus_1, &k_sq_plus_1)?, &pow(k, n - 3)?)
}

/// Cost number `(k^n - 1) / (k - 1)`: smallest possible color class of a
/// `k`-distinguishing coloring.
pub fn cost_number_closed<N: Count>(k: u32, n: u32) -> Result<N> {
    check(k, n)?;
    let num = sub(&pow(k, n)?, &N::one())?;
    Ok(num / lift(k as u64 - 1)?)
}

/// Paint cost spectrum: costs for `d = dist, ..., fix + 1`, stored run-length
/// encoded because the list can be astronomically long.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport<N: Count> {
    /// Branching factor and depth, when the tree is perfect k-ary.
    pub k: Option<u32>,
    pub n: Option<u32>,
    pub dist: N,
    pub fix: N,
    pub fdist: N,
    /// `(cost, multiplicity)` runs in order of increasing `d`.
    pub costs_rle: Vec<(N, N)>,
    /// Fraction of the listed costs equal to `fix`, in lowest terms.
    pub ratio: Ratio<N>,
}

/// Entries printed individually by [`SpectrumReport::display_spectrum`]
/// before it falls back to run-length form.
pub const DISPLAY_EXPANSION_LIMIT: usize = 12;

/// Paint cost ratio `(fix - fdist + 2) / (fix - dist + 2)`.
pub fn paint_cost_ratio<N: Count>(dist: &N, fix: &N, fdist: &N) -> Result<Ratio<N>> {
    let two: N = lift(2)?;
    let num = sub(&add(fix, &two)?, fdist)?;
    let den = sub(&add(fix, &two)?, dist)?;
    if den.is_zero() {
        return Err(Error::domain("empty spectrum"));
    }
    Ok(Ratio::new(num, den))
}

impl<N: Count> SpectrumReport<N> {
    /// Assembles a report from an explicit cost list (`costs[i]` is the cost
    /// for `d = dist + i`).
    pub fn from_costs(
        k: Option<u32>,
        n: Option<u32>,
        dist: N,
        fix: N,
        costs: &[N],
    ) -> Result<Self> {
        let fdist_offset = costs
            .iter()
            .position(|c| *c == fix)
            .ok_or_else(|| Error::domain("cost list never reaches the fixing number"))?;
        let fdist = add(&dist, &lift(fdist_offset as u64)?)?;
        let mut costs_rle: Vec<(N, N)> = Vec::new();
        for c in costs {
            match costs_rle.last_mut() {
                Some((v, count)) if v == c => *count = add(count, &N::one())?,
                _ => costs_rle.push((c.clone(), N::one())),
            }
        }
        let ratio = paint_cost_ratio(&dist, &fix, &fdist)?;
        Ok(SpectrumReport {
            k,
            n,
            dist,
            fix,
            fdist,
            costs_rle,
            ratio,
        })
    }

    /// Number of listed costs.
    pub fn len(&self) -> N {
        self.costs_rle
            .iter()
            .fold(N::zero(), |acc, (_, c)| acc + c.clone())
    }

    pub fn is_empty(&self) -> bool {
        self.costs_rle.is_empty()
    }

    /// Lazily expanded cost list.
    pub fn costs(&self) -> impl Iterator<Item = &N> + '_ {
        self.costs_rle.iter().flat_map(|(v, c)| RepeatN {
            value: v,
            remaining: c.clone(),
        })
    }

    /// Fully expanded cost list, or `None` when it has more than `limit`
    /// entries.
    pub fn costs_vec(&self, limit: usize) -> Option<Vec<N>> {
        if self.len() > lift(limit as u64).ok()? {
            return None;
        }
        Some(self.costs().cloned().collect())
    }

    /// Cost for palette size `d`, if `d` lies in the spectrum range.
    pub fn cost_at(&self, d: &N) -> Option<&N> {
        if *d < self.dist {
            return None;
        }
        let mut offset = d.clone() - self.dist.clone();
        for (v, c) in &self.costs_rle {
            if offset < *c {
                return Some(v);
            }
            offset = offset - c.clone();
        }
        None
    }

    /// Checks the structural invariants: length `fix - dist + 2`,
    /// non-increasing costs ending at `fix`, and the ratio definition.
    pub fn validate(&self) -> Result<()> {
        let two: N = lift(2)?;
        if self.len() != sub(&add(&self.fix, &two)?, &self.dist)? {
            return Err(Error::domain("spectrum length is not fix - dist + 2"));
        }
        if self.costs_rle.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(Error::domain(
                "spectrum costs are not strictly decreasing between runs",
            ));
        }
        if self.costs_rle.last().map(|(v, _)| v) != Some(&self.fix) {
            return Err(Error::domain("spectrum does not end at the fixing number"));
        }
        if self.ratio != paint_cost_ratio(&self.dist, &self.fix, &self.fdist)? {
            return Err(Error::domain("ratio disagrees with fix, fdist and dist"));
        }
        Ok(())
    }

    /// Converts every number into another exact integer type.
    pub fn convert<M: Count + From<N>>(&self) -> SpectrumReport<M> {
        SpectrumReport {
            k: self.k,
            n: self.n,
            dist: self.dist.clone().into(),
            fix: self.fix.clone().into(),
            fdist: self.fdist.clone().into(),
            costs_rle: self
                .costs_rle
                .iter()
                .map(|(v, c)| (v.clone().into(), c.clone().into()))
                .collect(),
            ratio: Ratio::new(
                self.ratio.numer().clone().into(),
                self.ratio.denom().clone().into(),
            ),
        }
    }

    /// Human-readable `(dist; c1, c2, ...)`; long runs collapse to
    /// `value ×count`.
    pub fn display_spectrum(&self) -> String {
        let mut parts = Vec::new();
        if let Some(all) = self.costs_vec(DISPLAY_EXPANSION_LIMIT) {
            parts.extend(all.iter().map(ToString::to_string));
        } else {
            let three: N = lift(3).expect("small constant");
            for (v, c) in &self.costs_rle {
                if *c <= three {
                    let mut i = N::zero();
                    while i < *c {
                        parts.push(v.to_string());
                        i = i + N::one();
                    }
                } else {
                    parts.push(format!("{v}, …(×{c})"));
                }
            }
        }
        format!("({}; {})", self.dist, parts.join(", "))
    }

    /// JSON report with exact integers:
    /// `{"k", "n", "dist", "fix", "fdist", "costs_rle": [[v, c], ..], "ratio": [num, den]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "n": self.n,
            "dist": exact(&self.dist),
            "fix": exact(&self.fix),
            "fdist": exact(&self.fdist),
            "costs_rle": self
                .costs_rle
                .iter()
                .map(|(v, c)| json!([exact(v), exact(c)]))
                .collect::<Vec<_>>(),
            "ratio": [exact(self.ratio.numer()), exact(self.ratio.denom())],
        })
    }
}

/// Exact JSON number for any integer, however large.
pub(crate) fn exact<N: Display>(x: &N) -> Value {
    let text = x.to_string();
    match text.parse::<serde_json::Number>() {
        Ok(n) => Value::Number(n),
        Err(_) => Value::String(text),
    }
}

struct RepeatN<'a, N> {
    value: &'a N,
    remaining: N,
}

impl<'a, N: Count> Iterator for RepeatN<'a, N> {
    type Item = &'a N;

    fn next(&mut self) -> Option<&'a N> {
        if self.remaining.is_zero() {
            return None;
        }
        self.remaining = self.remaining.clone() - N::one();
        Some(self.value)
    }
}

/// The full closed-form spectrum of `T_k^n`.
pub fn spectrum_closed<N: Count>(k: u32, n: u32) -> Result<SpectrumReport<N>> {
    let dist: N = dist_closed(k, n)?;
    let fix: N = fix_closed(k, n)?;
    let fdist: N = fdist_closed(k, n)?;
    let mut costs_rle = Vec::new();
    // One run per distinct palette size below fdist, then a run at fix.
    let mut d = dist.clone();
    while d < fdist {
        costs_rle.push((paint_cost_closed(k, n, &d)?, N::one()));
        d = add(&d, &N::one())?;
    }
    let tail = sub(&add(&fix, &lift(2)?)?, &fdist)?;
    costs_rle.push((fix.clone(), tail));
    let ratio = paint_cost_ratio(&dist, &fix, &fdist)?;
    Ok(SpectrumReport {
        k: Some(k),
        n: Some(n),
        dist,
        fix,
        fdist,
        costs_rle,
        ratio,
    })
}
