//! Skorohod J1 distance between step paths.
//!
//! `d <= eps` holds iff the jumps of `g1` can be moved to new times `s_i`,
//! each within `eps` of its original time and in order, such that along the
//! merged timeline of moved `g1` jumps and fixed `g2` jumps every visited pair
//! of levels is within `eps`. The piecewise-linear time change through the
//! points `(s_i, a_i)` then witnesses the bound. Jumps of `g1` may coincide
//! with jumps of `g2` (a diagonal move) or with each other (in the limit of
//! homeomorphisms), in which case intermediate levels are still visited.
//!
//! The dynamic program keeps, per pair `(i, j)` of consumed jumps, the
//! earliest time at which that pair can be current; an earlier time never
//! hurts later placements.

use super::path::{domain_mismatch, StepPath};
use super::{bisect, MetricResult};
use crate::error::Result;
use crate::scalar::Real;

pub fn j1_distance<T: Real>(g1: &StepPath<T>, g2: &StepPath<T>, tol: T) -> Result<MetricResult<T>> {
    super::check_tol(tol)?;
    if !g1.same_domain(g2) {
        return Err(domain_mismatch(g1, g2));
    }
    if g1.jump_count() == 0 && g2.jump_count() == 0 {
        let d = (g1.initial_value() - g2.initial_value()).abs();
        return Ok(MetricResult::exact(d, tol));
    }
    // Both endpoints are fixed by every time change.
    let floor = (g1.initial_value() - g2.initial_value())
        .abs()
        .max((g1.final_value() - g2.final_value()).abs());
    let ceiling = g1.sup_distance(g2)?;
    bisect(floor, ceiling, tol, "J1", |eps| j1_feasible(g1, g2, eps))
}

/// Decision procedure for `d_J1(g1, g2) <= eps`.
pub fn j1_feasible<T: Real>(g1: &StepPath<T>, g2: &StepPath<T>, eps: T) -> bool {
    let a = g1.breakpoints();
    let b = g2.breakpoints();
    let (p, q) = (a.len(), b.len());
    let start = g1.start();
    let end = g1.domain_end();
    let inf = T::infinity();
    let ok = |i: usize, j: usize| (g1.level(i) - g2.level(j)).abs() <= eps;
    // Time of the g2 jump that opens level j (start for j = 0), and the one
    // that closes it (end for j = q).
    let opens = |j: usize| if j == 0 { start } else { b[j - 1] };
    let closes = |j: usize| if j == q { end } else { b[j] };
    // A jump of g2 at the end is pinned there, and jumps of g1 from before
    // the end can only approach it from the left.
    let pinned_end = q > 0 && b[q - 1] == end;
    let window = |i: usize| {
        let t = a[i - 1];
        if t == end {
            (end, end)
        } else {
            ((t - eps).max(start), (t + eps).min(end))
        }
    };

    // prev[j] = E[i-1][j], cur[j] = E[i][j]
    let mut prev = vec![inf; q + 1];
    let mut cur = vec![inf; q + 1];
    for i in 0..=p {
        for j in 0..=q {
            let mut best = inf;
            if ok(i, j) {
                if i == 0 && j == 0 {
                    best = start;
                }
                if i > 0 {
                    let (lo, hi) = window(i);
                    let early = a[i - 1] < end;
                    // g1 jump i placed while g2 sits at level j
                    let e = prev[j];
                    if e < inf && !(early && pinned_end && j == q) {
                        let s = e.max(lo).max(opens(j));
                        if s <= hi && s <= closes(j) {
                            best = best.min(s);
                        }
                    }
                    // g1 jump i placed exactly on g2 jump j
                    if j > 0 && !(early && b[j - 1] == end) {
                        let e = prev[j - 1];
                        let t = b[j - 1];
                        if e <= t && lo <= t && t <= hi {
                            best = best.min(t);
                        }
                    }
                }
                if j > 0 {
                    // g2 jump j while g1 sits at level i
                    let e = cur[j - 1];
                    if e <= b[j - 1] {
                        best = best.min(b[j - 1]);
                    }
                }
            }
            cur[j] = best;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[q] < inf
}
