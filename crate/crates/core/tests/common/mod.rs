//! Independent brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use intermittency::cadlag::{completed_graph, StepPath};
use rand::Rng;

/// Exact J1 distance between step paths by exhaustive search.
///
/// A time change `lambda` turns `g2` into a step path with the same value
/// sequence and jump times `s_i = lambda^{-1}(tau_i)`. Only the position of
/// each `s_i` relative to the jumps of `g1` matters for the sup term: either
/// on a jump time of `g1` or inside one of the open intervals between them.
/// Inside an interval the cheapest choice clamps `tau_i` to its closure.
pub fn j1_brute(g1: &StepPath<f64>, g2: &StepPath<f64>) -> f64 {
    let t_end = g1.domain_end();
    assert_eq!(t_end, g2.domain_end());
    let p = g1.breakpoints();
    let c = g1.values();

    // Slots in time order: (is_point, left, right, g1 value there).
    let mut slots: Vec<(bool, f64, f64, f64)> = Vec::new();
    let mut left = 0.0;
    let mut level = g1.initial_value();
    for (k, &pk) in p.iter().enumerate() {
        slots.push((false, left, pk, level));
        level = c[k];
        slots.push((true, pk, pk, level));
        left = pk;
    }
    if left < t_end {
        slots.push((false, left, t_end, level));
        slots.push((true, t_end, t_end, level));
    }
    let last = slots.len() - 1;

    let tau = g2.breakpoints();
    let v = g2.values();
    let m = tau.len();

    let mut best = f64::INFINITY;
    let mut assign = vec![0usize; m];
    fn rec(
        i: usize,
        from: usize,
        assign: &mut Vec<usize>,
        eval: &dyn Fn(&[usize]) -> f64,
        best: &mut f64,
        ok: &dyn Fn(usize, usize) -> bool,
        n_slots: usize,
    ) {
        if i == assign.len() {
            *best = best.min(eval(assign));
            return;
        }
        for s in from..n_slots {
            if !ok(i, s) {
                continue;
            }
            // A jump time of g1 can host at most one jump of g2.
            if i > 0 && assign[i - 1] == s && s % 2 == 1 {
                continue;
            }
            assign[i] = s;
            rec(i + 1, s, assign, eval, best, ok, n_slots);
        }
    }
    let ok = |i: usize, s: usize| {
        let at_end = tau[i] == t_end;
        let end_slot = s == last;
        at_end == end_slot
    };
    let eval = |a: &[usize]| -> f64 {
        let mut time = 0.0f64;
        for (i, &s) in a.iter().enumerate() {
            let (_, lo, hi, _) = slots[s];
            time = time.max(if tau[i] < lo {
                lo - tau[i]
            } else if tau[i] > hi {
                tau[i] - hi
            } else {
                0.0
            });
        }
        let mut sup = 0.0f64;
        let mut cur = g2.initial_value();
        let mut next = 0usize;
        for (s, &(point, _, _, g)) in slots.iter().enumerate() {
            if point {
                while next < m && a[next] == s {
                    cur = v[next];
                    next += 1;
                }
                sup = sup.max((cur - g).abs());
            } else {
                sup = sup.max((cur - g).abs());
                while next < m && a[next] == s {
                    cur = v[next];
                    next += 1;
                    sup = sup.max((cur - g).abs());
                }
            }
        }
        time.max(sup)
    };
    rec(0, 0, &mut assign, &eval, &mut best, &ok, slots.len());
    best
}

/// Discrete Fréchet distance under the max norm, Eiter-Mannila recursion.
pub fn discrete_frechet(p: &[(f64, f64)], q: &[(f64, f64)]) -> f64 {
    let d = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).abs().max((a.1 - b.1).abs());
    let mut prev = vec![f64::INFINITY; q.len()];
    for i in 0..p.len() {
        let mut cur = vec![f64::INFINITY; q.len()];
        for j in 0..q.len() {
            let c = d(p[i], q[j]);
            cur[j] = if i == 0 && j == 0 {
                c
            } else {
                let mut b = f64::INFINITY;
                if i > 0 {
                    b = b.min(prev[j]);
                    if j > 0 {
                        b = b.min(prev[j - 1]);
                    }
                }
                if j > 0 {
                    b = b.min(cur[j - 1]);
                }
                b.max(c)
            };
        }
        prev = cur;
    }
    prev[q.len() - 1]
}

/// Completed-graph vertices refined so no piece is longer than `h` in the
/// max norm.
pub fn refined_graph(g: &StepPath<f64>, h: f64) -> Vec<(f64, f64)> {
    let v = completed_graph(g).vertices().to_vec();
    let mut out = Vec::new();
    for w in v.windows(2) {
        let len = (w[1].0 - w[0].0).abs().max((w[1].1 - w[0].1).abs());
        let k = (len / h).ceil().max(1.0) as usize;
        for s in 0..k {
            let u = s as f64 / k as f64;
            out.push((w[0].0 + u * (w[1].0 - w[0].0), w[0].1 + u * (w[1].1 - w[0].1)));
        }
    }
    out.push(*v.last().unwrap());
    out
}

/// M1 enclosure `[dfd - h, dfd]` from refined discrete Fréchet.
pub fn m1_enclosure(g1: &StepPath<f64>, g2: &StepPath<f64>, h: f64) -> (f64, f64) {
    let d = discrete_frechet(&refined_graph(g1, h), &refined_graph(g2, h));
    ((d - h).max(0.0), d)
}

/// Random step path on `[0,1]` with up to `max_jumps` jumps on the 1/20
/// grid and values on the 1/10 grid in `[-1, 1]`.
pub fn random_path<R: Rng>(rng: &mut R, max_jumps: usize) -> StepPath<f64> {
    let k = rng.random_range(0..=max_jumps);
    let mut times: Vec<u32> = (1..=20).collect();
    for i in 0..k {
        let j = rng.random_range(i..times.len());
        times.swap(i, j);
    }
    let mut times: Vec<f64> = times[..k].iter().map(|&t| f64::from(t) / 20.0).collect();
    times.sort_by(f64::total_cmp);
    let mut value = || f64::from(rng.random_range(-10i32..=10)) / 10.0;
    let initial = value();
    let values = (0..k).map(|_| value()).collect();
    StepPath::new(1.0, initial, times, values).unwrap()
}
