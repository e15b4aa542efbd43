//! Edit-distance kernels.
//!
//! [`edit_distance_dp`] is the reference: the full Wagner-Fischer table kept
//! two rows at a time. Everything else is either a faster general kernel
//! ([`edit_distance_banded`]) or a specialized kernel for targets with at
//! most two runs, which is what resolving-set coordinates look like.

use std::cmp::{max, min};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::strings::{count_symbol, run_lengths, LevString, Symbol};

/// Levenshtein distance by the full dynamic program. `O(|u||v|)`.
pub fn edit_distance_dp(u: &[Symbol], v: &[Symbol]) -> usize {
    let (m, n) = (u.len(), v.len());
    if m == 0 {
        return n;
    }
    if n == 0 {
        return m;
    }
    let mut prev: Vec<usize> = (0..=n).collect();
    let mut cur = vec![0usize; n + 1];
    for i in 1..=m {
        cur[0] = i;
        let ui = u[i - 1];
        for j in 1..=n {
            let sub = prev[j - 1] + usize::from(ui != v[j - 1]);
            let del = prev[j] + 1;
            let ins = cur[j - 1] + 1;
            cur[j] = min(sub, min(del, ins));
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[n]
}

/// Levenshtein distance restricted to diagonals `|i - j| <= t`, doubling `t`
/// until the banded value is at most `t` (and therefore exact).
///
/// Runs in `O(d * min(|u|, |v|))` for distance `d`.
pub fn edit_distance_banded(u: &[Symbol], v: &[Symbol]) -> usize {
    let (u, v) = if u.len() <= v.len() { (u, v) } else { (v, u) };
    if u.is_empty() {
        return v.len();
    }
    let mut band = v.len() - u.len() + 1;
    loop {
        if let Some(d) = banded_within(u, v, band) {
            return d;
        }
        band *= 2;
    }
}

/// Banded DP; `Some(d)` when the band value `d <= band`, which makes it exact.
fn banded_within(u: &[Symbol], v: &[Symbol], band: usize) -> Option<usize> {
    const INF: usize = usize::MAX / 4;
    let (m, n) = (u.len(), v.len());
    let mut prev = vec![INF; n + 1];
    let mut cur = vec![INF; n + 1];
    for (j, slot) in prev.iter_mut().enumerate().take(min(n, band) + 1) {
        *slot = j;
    }
    for i in 1..=m {
        let lo = i.saturating_sub(band);
        let hi = min(n, i + band);
        if lo > 0 {
            cur[lo - 1] = INF;
        }
        let ui = u[i - 1];
        for j in lo..=hi {
            cur[j] = if j == 0 {
                i
            } else {
                let sub = prev[j - 1] + usize::from(ui != v[j - 1]);
                let del = prev[j] + 1;
                let ins = cur[j - 1] + 1;
                min(sub, min(del, ins))
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    let d = prev[n];
    (d <= band).then_some(d)
}

/// Number of mismatched positions of two equal-length strings.
pub fn hamming_distance(u: &[Symbol], v: &[Symbol]) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::invalid(format!(
            "Hamming distance needs equal lengths, got {} and {}",
            u.len(),
            v.len()
        )));
    }
    Ok(u.iter().zip(v).filter(|(x, y)| x != y).count())
}

/// `ℓ(w, alpha^l) = max(|w|, l) - min(N_alpha(w), l)`.
#[inline]
pub fn dist_one_run(w: &[Symbol], alpha: Symbol, l: usize) -> usize {
    max(w.len(), l) - min(count_symbol(w, alpha), l)
}

/// The string `alpha^l beta^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoRunPattern {
    pub alpha: Symbol,
    pub l: usize,
    pub beta: Symbol,
    pub r: usize,
}

impl TwoRunPattern {
    pub fn new(alpha: Symbol, l: usize, beta: Symbol, r: usize) -> Result<Self> {
        if l > 0 && r > 0 && alpha == beta {
            return Err(Error::invalid(format!(
                "two-run pattern needs distinct symbols, got {alpha} twice"
            )));
        }
        Ok(TwoRunPattern { alpha, l, beta, r })
    }

    pub fn len(&self) -> usize {
        self.l + self.r
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_string_value(&self) -> LevString {
        LevString::two_runs(self.alpha, self.l, self.beta, self.r)
    }

    /// Bounds `[i0, i1]` of the split positions worth examining for `|w| = k`.
    pub fn split_range(&self, k: usize) -> (usize, usize) {
        let (k, l, r) = (k as i64, self.l as i64, self.r as i64);
        let i0 = max(0, min(l, k - r));
        let i1 = min(k, max(l, k - r));
        (i0 as usize, i1 as usize)
    }
}

impl fmt::Display for TwoRunPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{} {}^{}", self.alpha, self.l, self.beta, self.r)
    }
}

/// `ℓ(w, alpha^l beta^r)` as the minimum over split positions `i0 <= i <= i1`
/// of `ℓ(w[..i], alpha^l) + ℓ(w[i..], beta^r)`. Reference kernel, `O(|w|^2)`.
pub fn dist_two_run_minform(w: &[Symbol], p: &TwoRunPattern) -> usize {
    let (i0, i1) = p.split_range(w.len());
    (i0..=i1)
        .map(|i| dist_one_run(&w[..i], p.alpha, p.l) + dist_one_run(&w[i..], p.beta, p.r))
        .min()
        .expect("split range is never empty")
}

/// `ℓ(w, alpha^l beta^r)` in one pass over `w`.
///
/// Walks the split positions `(i0, i1]` tracking
/// `f2(i) = g(l - l_i) + g(r - r_i)` with `g(x) = max(x, 0)`, where `l_i`
/// counts `alpha` in the prefix and `r_i` counts `beta` in the suffix. On
/// that range the length term is the constant `max(0, k - l - r)`.
///
/// Patterns with an empty run, or equal symbols, go through the one-run
/// closed form, as does the empty `w`.
pub fn dist_two_run_linear(w: &[Symbol], p: &TwoRunPattern) -> usize {
    let TwoRunPattern { alpha, l, beta, r } = *p;
    if l == 0 {
        return dist_one_run(w, beta, r);
    }
    if r == 0 {
        return dist_one_run(w, alpha, l);
    }
    if alpha == beta {
        return dist_one_run(w, alpha, l + r);
    }
    let k = w.len();
    if k == 0 {
        return l + r;
    }

    let (i0, i1) = p.split_range(k);
    let (l, r) = (l as i64, r as i64);
    let mut l_i = count_symbol(&w[..i0], alpha) as i64;
    let mut r_i = count_symbol(&w[i0..], beta) as i64;
    let mut f2 = max(l - l_i, 0) + max(r - r_i, 0);
    let mut best = f2;

    for &c in &w[i0..i1] {
        if c == beta {
            if r_i <= r {
                f2 += 1;
            }
            r_i -= 1;
        }
        if c == alpha && l_i < l {
            f2 -= 1;
            best = min(best, f2);
            l_i += 1;
        }
    }

    let f1 = max(k as i64 - l - r, 0);
    (f1 + best) as usize
}

/// Shape of a string with at most two runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunShape {
    Empty,
    OneRun { alpha: Symbol, len: usize },
    TwoRuns(TwoRunPattern),
}

impl RunShape {
    /// `None` when `v` has more than two runs.
    pub fn of(v: &[Symbol]) -> Option<RunShape> {
        match run_lengths(v).as_slice() {
            [] => Some(RunShape::Empty),
            &[(alpha, len)] => Some(RunShape::OneRun { alpha, len }),
            &[(alpha, l), (beta, r)] => {
                Some(RunShape::TwoRuns(TwoRunPattern { alpha, l, beta, r }))
            }
            _ => None,
        }
    }
}

/// `ℓ(w, v)` for `v` with at most two runs, by the cheapest applicable kernel.
///
/// Equal lengths use the Hamming distance, which coincides with the edit
/// distance when one side has at most two runs.
pub fn dist_to_run_pattern(w: &[Symbol], v: &[Symbol]) -> Result<usize> {
    let shape = RunShape::of(v).ok_or_else(|| {
        Error::invalid(format!(
            "target has more than two runs; use the general kernel ({})",
            LevString::from_symbols(v.to_vec())
        ))
    })?;
    Ok(dist_to_shape(w, &shape, v.len()))
}

pub(crate) fn dist_to_shape(w: &[Symbol], shape: &RunShape, target_len: usize) -> usize {
    match *shape {
        RunShape::Empty => w.len(),
        RunShape::OneRun { alpha, len } => dist_one_run(w, alpha, len),
        RunShape::TwoRuns(p) => {
            if w.len() == target_len {
                let (a, b) = w.split_at(p.l);
                (a.len() - count_symbol(a, p.alpha)) + (b.len() - count_symbol(b, p.beta))
            } else {
                dist_two_run_linear(w, &p)
            }
        }
    }
}
