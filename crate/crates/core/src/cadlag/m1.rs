//! Skorohod M1 distance between step paths.
//!
//! With graph-order monotone parametrizations, `d_M1(g1, g2)` is the Fréchet
//! distance between the completed graphs under the metric
//! `max(|dt|, |dx|)`. The decision "is it `<= eps`?" is answered on the
//! free-space diagram of the two polylines: a cell per pair of segments,
//! free intervals on the cell boundaries, and monotone reachability swept
//! column by column. The L-infinity ball is convex, so the free space of a
//! cell is convex and reachable boundary parts stay single intervals.
//!
//! Both polylines are nondecreasing in time, so a column only has free cells
//! in a band of rows whose time ranges come within `eps`; only that band is
//! stored and swept.

use super::graph::completed_graph;
use super::path::{domain_mismatch, StepPath};
use super::{bisect, MetricResult};
use crate::error::Result;
use crate::scalar::Real;

type Pt<T> = (T, T);

pub fn m1_distance<T: Real>(g1: &StepPath<T>, g2: &StepPath<T>, tol: T) -> Result<MetricResult<T>> {
    super::check_tol(tol)?;
    if !g1.same_domain(g2) {
        return Err(domain_mismatch(g1, g2));
    }
    if g1.jump_count() == 0 && g2.jump_count() == 0 {
        let d = (g1.initial_value() - g2.initial_value()).abs();
        return Ok(MetricResult::exact(d, tol));
    }
    let p = completed_graph(g1);
    let q = completed_graph(g2);
    let (p, q) = (p.vertices(), q.vertices());
    let floor = linf(p[0], q[0]).max(linf(p[p.len() - 1], q[q.len() - 1]));
    let ceiling = g1.sup_distance(g2)?;
    bisect(floor, ceiling, tol, "M1", |eps| frechet_feasible(p, q, eps))
}

#[inline]
fn linf<T: Real>(a: Pt<T>, b: Pt<T>) -> T {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

/// Closed parameter interval; empty when `lo > hi`.
#[derive(Debug, Clone, Copy)]
struct Span<T> {
    lo: T,
    hi: T,
}

impl<T: Real> Span<T> {
    fn empty() -> Self {
        Self {
            lo: T::one(),
            hi: T::zero(),
        }
    }

    #[inline]
    fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    #[inline]
    fn from_floor(self, floor: T) -> Self {
        Self {
            lo: self.lo.max(floor),
            hi: self.hi,
        }
    }
}

/// Parameters `u` in `[0,1]` with `|c - (a + u (b - a))|_inf <= eps`.
#[inline]
fn free_span<T: Real>(c: Pt<T>, a: Pt<T>, b: Pt<T>, eps: T) -> Span<T> {
    let mut lo = T::zero();
    let mut hi = T::one();
    for (ck, ak, bk) in [(c.0, a.0, b.0), (c.1, a.1, b.1)] {
        let d = bk - ak;
        let off = ck - ak;
        if d == T::zero() {
            if off.abs() > eps {
                return Span::empty();
            }
        } else {
            let u1 = (off - eps) / d;
            let u2 = (off + eps) / d;
            lo = lo.max(u1.min(u2));
            hi = hi.min(u1.max(u2));
        }
    }
    Span { lo, hi }
}

/// Reachable spans on the left edges of one column, for rows
/// `offset .. offset + spans.len()`; rows outside are unreachable.
struct Band<T> {
    offset: usize,
    spans: Vec<Span<T>>,
}

impl<T: Real> Band<T> {
    fn get(&self, j: usize) -> Span<T> {
        if j >= self.offset && j < self.offset + self.spans.len() {
            self.spans[j - self.offset]
        } else {
            Span::empty()
        }
    }

    fn end(&self) -> usize {
        self.offset + self.spans.len()
    }
}

/// Fréchet decision for polylines `p` (columns) and `q` (rows) under the
/// L-infinity metric.
pub(crate) fn frechet_feasible<T: Real>(p: &[Pt<T>], q: &[Pt<T>], eps: T) -> bool {
    let n = p.len() - 1;
    let m = q.len() - 1;
    if linf(p[0], q[0]) > eps || linf(p[n], q[m]) > eps {
        return false;
    }
    if n == 0 || m == 0 {
        // One polyline is a point: every vertex of the other must be close.
        return p.iter().all(|&a| q.iter().all(|&b| linf(a, b) <= eps));
    }

    // Left boundary column (s = 0): reachable straight up from the start.
    let mut left = Band {
        offset: 0,
        spans: Vec::new(),
    };
    for j in 0..m {
        let span = free_span(p[0], q[j], q[j + 1], eps);
        if span.is_empty() || span.lo > T::zero() {
            break;
        }
        left.spans.push(span);
        if span.hi < T::one() {
            break;
        }
    }
    // Whether the bottom boundary (t = 0) is still connected to the start.
    let mut bottom_open = true;
    // Lowest row whose time range can meet the current column.
    let mut row_floor = 0usize;

    for i in 0..n {
        let (pa, pb) = (p[i], p[i + 1]);
        let col_lo = pa.0.min(pb.0) - eps;
        while row_floor < m && q[row_floor].0.max(q[row_floor + 1].0) < col_lo {
            row_floor += 1;
        }

        let mut bottom = if bottom_open {
            let span = free_span(q[0], pa, pb, eps);
            if !span.is_empty() && span.lo <= T::zero() {
                bottom_open = span.hi >= T::one();
                span
            } else {
                bottom_open = false;
                Span::empty()
            }
        } else {
            Span::empty()
        };

        let first = if !bottom.is_empty() {
            0
        } else {
            left.offset.max(row_floor)
        };
        if bottom.is_empty() && left.get(first).is_empty() && first >= left.end() {
            return false;
        }
        let mut next = Band {
            offset: first,
            spans: Vec::new(),
        };
        let mut j = first;
        while j < m {
            let lr = left.get(j);
            if lr.is_empty() && bottom.is_empty() && j >= left.end() {
                break;
            }
            // Right edge: vertex p[i+1] against segment q[j].
            let right_free = free_span(pb, q[j], q[j + 1], eps);
            let right = if !bottom.is_empty() {
                right_free
            } else if !lr.is_empty() {
                right_free.from_floor(lr.lo)
            } else {
                Span::empty()
            };
            // Top edge: segment p[i] against vertex q[j+1].
            let top_free = free_span(q[j + 1], pa, pb, eps);
            let top = if !lr.is_empty() {
                top_free
            } else if !bottom.is_empty() {
                top_free.from_floor(bottom.lo)
            } else {
                Span::empty()
            };
            next.spans.push(right);
            bottom = top;
            j += 1;
        }
        // Trim unreachable rows at the front so the band stays narrow.
        let lead = next.spans.iter().take_while(|s| s.is_empty()).count();
        next.offset += lead;
        next.spans.drain(..lead);
        while next.spans.last().is_some_and(|s| s.is_empty()) {
            next.spans.pop();
        }

        if i == n - 1 {
            let via_top = j == m && !bottom.is_empty() && bottom.hi >= T::one();
            let via_right = next.get(m - 1).hi >= T::one() && !next.get(m - 1).is_empty();
            return via_top || via_right;
        }
        if next.spans.is_empty() && !bottom_open {
            return false;
        }
        left = next;
    }
    false
}
