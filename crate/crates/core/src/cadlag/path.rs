use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Right-continuous piecewise-constant path on `[start, end]`.
///
/// The path equals `initial` on `[start, b_1)`, `values[i]` on
/// `[b_{i+1}, b_{i+2})`, and `values.last()` at `end`. Breakpoints lie in
/// `(start, end]`; a breakpoint at `end` is a jump at the terminal time.
/// Breakpoints that do not change the value are dropped on construction, so
/// every stored breakpoint is a genuine jump.
#[derive(Debug, Clone, PartialEq)]
pub struct StepPath<T> {
    start: T,
    end: T,
    initial: T,
    breakpoints: Vec<T>,
    values: Vec<T>,
}

impl<T: Real> StepPath<T> {
    /// Path on `[0, end]`.
    pub fn new(end: T, initial: T, breakpoints: Vec<T>, values: Vec<T>) -> Result<Self> {
        Self::on_interval(T::zero(), end, initial, breakpoints, values)
    }

    pub fn constant(end: T, value: T) -> Result<Self> {
        Self::new(end, value, Vec::new(), Vec::new())
    }

    pub fn on_interval(
        start: T,
        end: T,
        initial: T,
        breakpoints: Vec<T>,
        values: Vec<T>,
    ) -> Result<Self> {
        if !(start.is_finite() && end.is_finite() && start < end) {
            return Err(Error::Validation(format!(
                "path domain [{start}, {end}] is not a proper interval"
            )));
        }
        if breakpoints.len() != values.len() {
            return Err(Error::Validation(format!(
                "{} breakpoints but {} values",
                breakpoints.len(),
                values.len()
            )));
        }
        if !initial.is_finite() || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation("path values must be finite".into()));
        }
        let mut prev_t = start;
        for &t in &breakpoints {
            if !(t > prev_t && t <= end) {
                return Err(Error::Validation(format!(
                    "breakpoints must increase strictly inside ({start}, {end}], got {t} after {prev_t}"
                )));
            }
            prev_t = t;
        }
        let mut kept_t = Vec::with_capacity(breakpoints.len());
        let mut kept_v = Vec::with_capacity(values.len());
        let mut current = initial;
        for (t, v) in breakpoints.into_iter().zip(values) {
            if v != current {
                kept_t.push(t);
                kept_v.push(v);
                current = v;
            }
        }
        Ok(Self {
            start,
            end,
            initial,
            breakpoints: kept_t,
            values: kept_v,
        })
    }

    pub fn start(&self) -> T {
        self.start
    }

    pub fn domain_end(&self) -> T {
        self.end
    }

    pub fn initial_value(&self) -> T {
        self.initial
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn jump_count(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn final_value(&self) -> T {
        self.values.last().copied().unwrap_or(self.initial)
    }

    /// Value before the `k`-th jump (`k = 0` gives the initial value).
    pub fn level(&self, k: usize) -> T {
        if k == 0 {
            self.initial
        } else {
            self.values[k - 1]
        }
    }

    /// `g(t)`, with `t` clamped to the domain.
    pub fn eval(&self, t: T) -> T {
        let idx = self.breakpoints.partition_point(|&b| b <= t);
        self.level(idx)
    }

    /// `g(t-)`; equals `g(start)` at the left endpoint.
    pub fn left_limit(&self, t: T) -> T {
        let idx = self.breakpoints.partition_point(|&b| b < t);
        self.level(idx)
    }

    /// Jumps as `(time, g(t-), g(t))`.
    pub fn jumps(&self) -> impl Iterator<Item = (T, T, T)> + '_ {
        self.breakpoints
            .iter()
            .enumerate()
            .map(move |(i, &t)| (t, self.level(i), self.values[i]))
    }

    pub fn sup(&self) -> T {
        self.values.iter().fold(self.initial, |m, &v| m.max(v))
    }

    pub fn inf(&self) -> T {
        self.values.iter().fold(self.initial, |m, &v| m.min(v))
    }

    /// Largest `|g(t) - g(t-)|`.
    pub fn max_jump(&self) -> T {
        self.jumps()
            .fold(T::zero(), |m, (_, before, after)| m.max((after - before).abs()))
    }

    pub fn same_domain(&self, other: &Self) -> bool {
        self.start == other.start && self.end == other.end
    }

    /// `sup_t |g1(t) - g2(t)|` over the common domain.
    pub fn sup_distance(&self, other: &Self) -> Result<T> {
        if !self.same_domain(other) {
            return Err(domain_mismatch(self, other));
        }
        let (mut i, mut j) = (0, 0);
        let mut best = (self.initial - other.initial).abs();
        while i < self.breakpoints.len() || j < other.breakpoints.len() {
            let ti = self.breakpoints.get(i).copied().unwrap_or(T::infinity());
            let tj = other.breakpoints.get(j).copied().unwrap_or(T::infinity());
            if ti <= tj {
                i += 1;
            }
            if tj <= ti {
                j += 1;
            }
            best = best.max((self.level(i) - other.level(j)).abs());
        }
        Ok(best)
    }

    /// Restriction to `[t1, t2]`, keeping absolute times. The value at `t1`
    /// is taken right-continuously.
    pub fn restrict(&self, t1: T, t2: T) -> Result<Self> {
        if !(t1 >= self.start && t1 < t2 && t2 <= self.end) {
            return Err(Error::Validation(format!(
                "cannot restrict [{}, {}] to [{t1}, {t2}]",
                self.start, self.end
            )));
        }
        let lo = self.breakpoints.partition_point(|&b| b <= t1);
        let hi = self.breakpoints.partition_point(|&b| b <= t2);
        Ok(Self {
            start: t1,
            end: t2,
            initial: self.eval(t1),
            breakpoints: self.breakpoints[lo..hi].to_vec(),
            values: self.values[lo..hi].to_vec(),
        })
    }

    /// Same path with the time axis shifted so that it starts at 0.
    pub fn rebased(&self) -> Self {
        let s = self.start;
        Self {
            start: T::zero(),
            end: self.end - s,
            initial: self.initial,
            breakpoints: self.breakpoints.iter().map(|&b| b - s).collect(),
            values: self.values.clone(),
        }
    }

    /// `1_[start, end) g(start) + 1_{end} g(end)`: the path collapsed to a
    /// single jump at its terminal time.
    pub fn flattened(&self) -> Self {
        let last = self.final_value();
        let (bp, vals) = if last != self.initial {
            (vec![self.end], vec![last])
        } else {
            (Vec::new(), Vec::new())
        };
        Self {
            start: self.start,
            end: self.end,
            initial: self.initial,
            breakpoints: bp,
            values: vals,
        }
    }

    /// The min-of-two-maxima functional
    /// `min( sup_{s<=t} (g(s) - g(t)), sup_{s<=t} (g(t) - g(s)) )`.
    pub fn monotonicity_defect(&self) -> T {
        let mut hi = self.initial;
        let mut lo = self.initial;
        let mut drawdown = T::zero();
        let mut drawup = T::zero();
        for &v in &self.values {
            hi = hi.max(v);
            lo = lo.min(v);
            drawdown = drawdown.max(hi - v);
            drawup = drawup.max(v - lo);
        }
        drawdown.min(drawup)
    }

    /// CSV form: a `T,initial_value` header and row, then a
    /// `breakpoint,value` header and one row per jump.
    pub fn to_csv(&self) -> Result<String> {
        if self.start != T::zero() {
            return Err(Error::Validation(
                "CSV paths must start at time 0; rebase first".into(),
            ));
        }
        let mut s = String::from("T,initial_value\n");
        let _ = writeln!(s, "{},{}", self.end, self.initial);
        s.push_str("breakpoint,value\n");
        for (t, v) in self.breakpoints.iter().zip(&self.values) {
            let _ = writeln!(s, "{t},{v}");
        }
        Ok(s)
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let mut expect_header = |want: &str| -> Result<()> {
            match lines.next() {
                Some((_, l)) if l.trim() == want => Ok(()),
                Some((n, l)) => Err(Error::Parse(format!(
                    "line {}: expected header `{want}`, found `{l}`",
                    n + 1
                ))),
                None => Err(Error::Parse(format!("missing header `{want}`"))),
            }
        };
        expect_header("T,initial_value")?;
        let (n, head) = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `T,initial_value` row".into()))?;
        let (end, initial) = parse_pair(head, n + 1)?;
        let mut lines = lines;
        match lines.next() {
            Some((_, l)) if l.trim() == "breakpoint,value" => {}
            Some((n, l)) => {
                return Err(Error::Parse(format!(
                    "line {}: expected header `breakpoint,value`, found `{l}`",
                    n + 1
                )))
            }
            None => return Self::new(end, initial, Vec::new(), Vec::new()),
        }
        let mut bps = Vec::new();
        let mut vals = Vec::new();
        for (n, l) in lines {
            let (t, v) = parse_pair(l, n + 1)?;
            bps.push(t);
            vals.push(v);
        }
        Self::new(end, initial, bps, vals)
    }
}

fn parse_pair<T: Real>(line: &str, lineno: usize) -> Result<(T, T)> {
    let mut parts = line.split(',');
    let mut next = || -> Result<T> {
        let raw = parts
            .next()
            .ok_or_else(|| Error::Parse(format!("line {lineno}: expected two fields")))?;
        let v: f64 = raw
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("line {lineno}: `{raw}` is not a number")))?;
        T::from_f64(v).ok_or_else(|| Error::Parse(format!("line {lineno}: `{raw}` out of range")))
    };
    let a = next()?;
    let b = next()?;
    if parts.next().is_some() {
        return Err(Error::Parse(format!("line {lineno}: expected two fields")));
    }
    Ok((a, b))
}

pub(crate) fn domain_mismatch<T: Real>(a: &StepPath<T>, b: &StepPath<T>) -> Error {
    Error::Validation(format!(
        "paths live on different domains [{}, {}] and [{}, {}]",
        a.start, a.end, b.start, b.end
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_jump(at: f64) -> StepPath<f64> {
        StepPath::new(1.0, 0.0, vec![at], vec![1.0]).unwrap()
    }

    #[test]
    fn evaluation_is_right_continuous() {
        let g = StepPath::new(2.0, 1.0, vec![0.5, 1.5], vec![3.0, -1.0]).unwrap();
        assert_eq!(g.eval(0.0), 1.0);
        assert_eq!(g.eval(0.4999), 1.0);
        assert_eq!(g.eval(0.5), 3.0);
        assert_eq!(g.left_limit(0.5), 1.0);
        assert_eq!(g.eval(1.5), -1.0);
        assert_eq!(g.left_limit(1.5), 3.0);
        assert_eq!(g.eval(2.0), -1.0);
        assert_eq!(g.left_limit(0.0), 1.0);
    }

    #[test]
    fn construction_validates() {
        assert!(StepPath::new(1.0, 0.0, vec![0.5, 0.5], vec![1.0, 2.0]).is_err());
        assert!(StepPath::new(1.0, 0.0, vec![0.0], vec![1.0]).is_err());
        assert!(StepPath::new(1.0, 0.0, vec![1.1], vec![1.0]).is_err());
        assert!(StepPath::new(1.0, 0.0, vec![0.5], vec![]).is_err());
        assert!(StepPath::new(0.0, 0.0, vec![], vec![]).is_err());
        assert!(StepPath::new(1.0, f64::NAN, vec![], vec![]).is_err());
        assert!(StepPath::new(1.0, 0.0, vec![1.0], vec![2.0]).is_ok());
    }

    #[test]
    fn redundant_breakpoints_dropped() {
        let g = StepPath::new(1.0, 0.0, vec![0.2, 0.4, 0.6], vec![0.0, 1.0, 1.0]).unwrap();
        assert_eq!(g.breakpoints(), &[0.4]);
        assert_eq!(g.jump_count(), 1);
    }

    #[test]
    fn sup_and_max_jump() {
        let c = StepPath::constant(1.0, 0.7).unwrap();
        assert_eq!(c.sup(), 0.7);
        assert_eq!(c.max_jump(), 0.0);
        let g = unit_jump(0.5);
        assert_eq!(g.sup(), 1.0);
        assert_eq!(g.max_jump(), 1.0);
    }

    #[test]
    fn restriction() {
        let g = StepPath::new(1.0, 0.0, vec![0.2, 0.5, 0.8], vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(g.restrict(0.0, 1.0).unwrap(), g);
        let r = g.restrict(0.3, 0.9).unwrap();
        assert_eq!(r.initial_value(), 1.0);
        assert_eq!(r.breakpoints(), &[0.5, 0.8]);
        assert_eq!(r.start(), 0.3);
        let at = g.restrict(0.5, 0.7).unwrap();
        assert_eq!(at.initial_value(), 2.0);
        assert_eq!(at.jump_count(), 0);
        let c = StepPath::constant(1.0, 4.0).unwrap().restrict(0.1, 0.2).unwrap();
        assert_eq!(c.eval(0.15), 4.0);
        assert!(g.restrict(0.5, 0.5).is_err());
        assert!(g.restrict(-0.1, 0.5).is_err());
        assert!(g.restrict(0.5, 1.5).is_err());
    }

    #[test]
    fn sup_distance_merges_timelines() {
        let a = StepPath::new(1.0, 0.0, vec![0.3], vec![1.0]).unwrap();
        let b = StepPath::new(1.0, 0.0, vec![0.6], vec![1.0]).unwrap();
        assert_eq!(a.sup_distance(&b).unwrap(), 1.0);
        assert_eq!(a.sup_distance(&a).unwrap(), 0.0);
        let c = StepPath::constant(2.0, 0.0).unwrap();
        assert!(a.sup_distance(&c).is_err());
    }

    #[test]
    fn monotonicity_defect_cases() {
        let mono = StepPath::new(1.0, 0.0, vec![0.2, 0.4], vec![1.0, 2.0]).unwrap();
        assert_eq!(mono.monotonicity_defect(), 0.0);
        let bump = StepPath::new(1.0, 0.0, vec![0.2, 0.4], vec![1.0, 0.0]).unwrap();
        assert_eq!(bump.monotonicity_defect(), 1.0);
        let mostly_up = StepPath::new(1.0, 0.0, vec![0.2, 0.4, 0.6], vec![3.0, 2.5, 5.0]).unwrap();
        assert_eq!(mostly_up.monotonicity_defect(), 0.5);
    }

    #[test]
    fn flattened_keeps_endpoints() {
        let g = StepPath::new(1.0, 0.0, vec![0.2, 0.4], vec![3.0, 2.0]).unwrap();
        let f = g.flattened();
        assert_eq!(f.eval(0.99), 0.0);
        assert_eq!(f.eval(1.0), 2.0);
    }

    #[test]
    fn csv_layout() {
        let g = StepPath::new(1.0, 0.25, vec![0.5], vec![-1.5]).unwrap();
        let text = g.to_csv().unwrap();
        assert_eq!(text, "T,initial_value\n1,0.25\nbreakpoint,value\n0.5,-1.5\n");
        assert_eq!(StepPath::<f64>::from_csv(&text).unwrap(), g);
        assert!(StepPath::<f64>::from_csv("T,initial\n1,0\n").is_err());
        assert!(StepPath::<f64>::from_csv("T,initial_value\n1,x\n").is_err());
        let shifted = g.restrict(0.25, 1.0).unwrap();
        assert!(shifted.to_csv().is_err());
        assert!(shifted.rebased().to_csv().is_ok());
    }
}
