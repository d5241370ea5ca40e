//! Minimal hand-written SVG charts. Plots are for inspection only; every
//! number they show is also in a CSV file.

use std::fmt::Write as _;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 160.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

#[derive(Debug, Clone)]
pub struct Axis {
    label: String,
    log: bool,
}

impl Axis {
    pub fn linear(label: &str) -> Self {
        Self {
            label: label.into(),
            log: false,
        }
    }

    pub fn log(label: &str) -> Self {
        Self {
            label: label.into(),
            log: true,
        }
    }

    fn map(&self, v: f64) -> f64 {
        if self.log {
            v.log10()
        } else {
            v
        }
    }

    fn ticks(&self, lo: f64, hi: f64) -> Vec<(f64, String)> {
        if self.log {
            let (a, b) = (lo.floor() as i32, hi.ceil() as i32);
            let inside = |t: &f64| *t >= lo - 1e-9 && *t <= hi + 1e-9;
            let decades: Vec<_> = (a..=b)
                .map(|e| (f64::from(e), format!("1e{e}")))
                .filter(|(t, _)| inside(t))
                .collect();
            if decades.len() >= 2 {
                return decades;
            }
            // Short ranges also get 2x and 5x marks.
            (a..=b)
                .flat_map(|e| {
                    [1.0, 2.0, 5.0].map(|m: f64| (f64::from(e) + m.log10(), format!("{m}e{e}")))
                })
                .filter(|(t, _)| inside(t))
                .collect()
        } else {
            let raw = (hi - lo) / 5.0;
            let mag = 10f64.powf(raw.log10().floor());
            let step = [1.0, 2.0, 5.0, 10.0]
                .iter()
                .map(|m| m * mag)
                .find(|s| *s >= raw)
                .unwrap_or(raw);
            let mut t = (lo / step).ceil() * step;
            let mut out = Vec::new();
            while t <= hi + 1e-9 * step {
                out.push((t, format!("{}", (t / step).round() * step)));
                t += step;
            }
            out
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    /// Markers joined by a thin line.
    Points,
    Line,
}

#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub data: Vec<(f64, f64)>,
    pub style: Style,
}

impl Series {
    pub fn points(name: &str, data: Vec<(f64, f64)>) -> Self {
        Self {
            name: name.into(),
            data,
            style: Style::Points,
        }
    }

    pub fn line(name: &str, data: Vec<(f64, f64)>) -> Self {
        Self {
            name: name.into(),
            data,
            style: Style::Line,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LineChart {
    title: String,
    x: Axis,
    y: Axis,
    pub series: Vec<Series>,
    /// Shaded x-intervals drawn behind the data.
    pub bands: Vec<(f64, f64)>,
}

impl LineChart {
    pub fn new(title: &str, x: Axis, y: Axis) -> Self {
        Self {
            title: title.into(),
            x,
            y,
            series: Vec::new(),
            bands: Vec::new(),
        }
    }

    pub fn push(&mut self, s: Series) {
        self.series.push(s);
    }

    fn range(&self, pick: impl Fn(&(f64, f64)) -> f64, axis: &Axis) -> (f64, f64) {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for s in &self.series {
            for p in &s.data {
                let v = axis.map(pick(p));
                if v.is_finite() {
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
            }
        }
        if !lo.is_finite() {
            return (0.0, 1.0);
        }
        if hi - lo < 1e-12 {
            return (lo - 0.5, hi + 0.5);
        }
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    }

    pub fn render(&self) -> String {
        let (x0, x1) = self.range(|p| p.0, &self.x);
        let (y0, y1) = self.range(|p| p.1, &self.y);
        let pw = WIDTH - LEFT - RIGHT;
        let ph = HEIGHT - TOP - BOTTOM;
        let sx = |v: f64| LEFT + (self.x.map(v) - x0) / (x1 - x0) * pw;
        let sy = |v: f64| TOP + ph - (self.y.map(v) - y0) / (y1 - y0) * ph;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">
<rect width="100%" height="100%" fill="white"/>
<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
            LEFT + pw / 2.0,
            escape(&self.title)
        );
        for &(a, b) in &self.bands {
            let (xa, xb) = (sx(a).max(LEFT), sx(b).min(LEFT + pw));
            if xb > xa {
                let _ = writeln!(
                    s,
                    r##"<rect x="{xa:.2}" y="{TOP}" width="{:.2}" height="{ph}" fill="#eeeeee"/>"##,
                    xb - xa
                );
            }
        }
        let _ = writeln!(
            s,
            r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
        );
        for (t, label) in self.x.ticks(x0, x1) {
            let px = LEFT + (t - x0) / (x1 - x0) * pw;
            let _ = writeln!(
                s,
                r#"<line x1="{px:.2}" y1="{}" x2="{px:.2}" y2="{}" stroke="black"/><text x="{px:.2}" y="{}" text-anchor="middle">{}</text>"#,
                TOP + ph,
                TOP + ph + 5.0,
                TOP + ph + 18.0,
                escape(&label)
            );
        }
        for (t, label) in self.y.ticks(y0, y1) {
            let py = TOP + ph - (t - y0) / (y1 - y0) * ph;
            let _ = writeln!(
                s,
                r#"<line x1="{}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/><text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
                LEFT - 5.0,
                LEFT - 8.0,
                py + 4.0,
                escape(&label)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            LEFT + pw / 2.0,
            HEIGHT - 10.0,
            escape(&self.x.label)
        );
        let _ = writeln!(
            s,
            r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
            TOP + ph / 2.0,
            TOP + ph / 2.0,
            escape(&self.y.label)
        );

        for (i, series) in self.series.iter().enumerate() {
            let color = COLORS[i % COLORS.len()];
            let pts: Vec<(f64, f64)> = series
                .data
                .iter()
                .filter(|p| self.x.map(p.0).is_finite() && self.y.map(p.1).is_finite())
                .map(|&(x, y)| (sx(x), sy(y)))
                .collect();
            if pts.len() > 1 {
                let mut d = String::new();
                for (k, (px, py)) in pts.iter().enumerate() {
                    let _ = write!(d, "{}{px:.2},{py:.2}", if k == 0 { "M" } else { " L" });
                }
                let width = if series.style == Style::Line { 1.5 } else { 1.0 };
                let _ = writeln!(
                    s,
                    r#"<path d="{d}" fill="none" stroke="{color}" stroke-width="{width}"/>"#
                );
            }
            if series.style == Style::Points {
                for (px, py) in &pts {
                    let _ = writeln!(
                        s,
                        r#"<circle cx="{px:.2}" cy="{py:.2}" r="3" fill="{color}"/>"#
                    );
                }
            }
            let ly = TOP + 10.0 + 18.0 * i as f64;
            let lx = LEFT + pw + 12.0;
            let _ = writeln!(
                s,
                r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
                lx + 20.0,
                lx + 26.0,
                ly + 4.0,
                escape(&series.name)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_is_escaped() {
        let mut c = LineChart::new("a < b & c", Axis::linear("x"), Axis::linear("y"));
        c.push(Series::points("s", vec![(0.0, 1.0), (1.0, 2.0)]));
        let svg = c.render();
        assert!(svg.contains("a &lt; b &amp; c"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn linear_ticks_cover_range() {
        let t = Axis::linear("x").ticks(0.0, 1.0);
        assert_eq!(t.first().unwrap().0, 0.0);
        assert!((t.last().unwrap().0 - 1.0).abs() < 1e-12);
    }
}
