// SPDX-License-Identifier: Apache-2.0

//! Minimal self-contained SVG line charts.
//!
//! Every drawn series carries its data-space samples in a `data-points`
//! attribute (`x,y` pairs separated by spaces, same number formatting as the
//! CSV writer) so plots can be checked against the numbers behind them.

use std::fmt::Write as _;
use std::path::Path;

use fintool_core::{SeriesStyle, SweepSeries};

use crate::output::emit;
use crate::Error;

const WIDTH: f64 = 860.0;
const HEIGHT: f64 = 520.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 230.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22",
];

/// A closed axis interval with "nice" tick spacing.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Axis {
    lo: f64,
    hi: f64,
    step: f64,
}

impl Axis {
    fn fit(mut lo: f64, mut hi: f64) -> Axis {
        if hi <= lo || hi.is_nan() || lo.is_nan() {
            let pad = if lo == 0.0 { 1.0 } else { lo.abs() * 0.1 };
            lo -= pad;
            hi += pad;
        }
        let step = nice_step((hi - lo) / 5.0);
        Axis {
            lo: (lo / step).floor() * step,
            hi: (hi / step).ceil() * step,
            step,
        }
    }

    fn ticks(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo) / self.step).round() as i64;
        (0..=count).map(|i| self.lo + i as f64 * self.step).collect()
    }

    fn contains(&self, v: f64) -> bool {
        v >= self.lo && v <= self.hi
    }
}

fn nice_step(raw: f64) -> f64 {
    let magnitude = 10f64.powf(raw.log10().floor());
    let fraction = raw / magnitude;
    let nice = if fraction <= 1.0 {
        1.0
    } else if fraction <= 2.0 {
        2.0
    } else if fraction <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * magnitude
}

struct Frame {
    x: Axis,
    y: Axis,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.lo) / (self.x.hi - self.x.lo) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y.lo) / (self.y.hi - self.y.lo) * (HEIGHT - TOP - BOTTOM)
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn tick_label(v: f64) -> String {
    let s = format!("{:.3}", v);
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn data_points(s: &SweepSeries) -> String {
    s.points
        .iter()
        .map(|(x, y)| format!("{x},{y}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders `series` into one chart. Axes span every sample; bands extend
/// down to zero.
pub fn render(series: &[SweepSeries], title: &str) -> Result<String, Error> {
    if series.iter().all(|s| s.points.is_empty()) {
        return Err(Error::Usage("cannot plot an empty series list".into()));
    }
    let all = series.iter().flat_map(|s| s.points.iter());
    let (mut xlo, mut xhi, mut ylo, mut yhi) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in all {
        xlo = xlo.min(x);
        xhi = xhi.max(x);
        ylo = ylo.min(y);
        yhi = yhi.max(y);
    }
    if series.iter().any(|s| s.style == SeriesStyle::Band) {
        ylo = ylo.min(0.0);
    }
    let frame = Frame {
        x: Axis::fit(xlo, xhi),
        y: Axis::fit(ylo, yhi),
    };
    let x_name = series.first().map(|s| s.x_name.as_str()).unwrap_or("");
    let y_name = series.first().map(|s| s.y_name.as_str()).unwrap_or("");

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    out.push_str(concat!(
        "<defs><pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"8\" height=\"8\" patternTransform=\"rotate(45)\">",
        "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"#888\" stroke-width=\"2\"/></pattern></defs>\n"
    ));
    let _ = writeln!(out, r##"<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
        (LEFT + WIDTH - RIGHT) / 2.0,
        escape(title)
    );

    // Grid, ticks and axis labels.
    let (x0, x1, y0, y1) = (
        frame.px(frame.x.lo),
        frame.px(frame.x.hi),
        frame.py(frame.y.lo),
        frame.py(frame.y.hi),
    );
    out.push_str("<g class=\"axes\" stroke=\"#ddd\">\n");
    for t in frame.x.ticks() {
        let px = frame.px(t);
        let _ = writeln!(out, r#"<line x1="{px:.2}" y1="{y1:.2}" x2="{px:.2}" y2="{y0:.2}"/>"#);
    }
    for t in frame.y.ticks() {
        let py = frame.py(t);
        let _ = writeln!(out, r#"<line x1="{x0:.2}" y1="{py:.2}" x2="{x1:.2}" y2="{py:.2}"/>"#);
    }
    out.push_str("</g>\n<g class=\"tick-labels\" fill=\"#333\">\n");
    for t in frame.x.ticks() {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            frame.px(t),
            y0 + 18.0,
            tick_label(t)
        );
    }
    for t in frame.y.ticks() {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 8.0,
            frame.py(t) + 4.0,
            tick_label(t)
        );
    }
    out.push_str("</g>\n");
    let _ = writeln!(
        out,
        r##"<rect x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#333"/>"##,
        x1 - x0,
        y0 - y1
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 18.0,
        escape(x_name)
    );
    let _ = writeln!(
        out,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">{}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        escape(y_name)
    );

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(out, r#"<g class="series" data-label="{}">"#, escape(&s.label));
        let pts = data_points(s);
        match s.style {
            SeriesStyle::Line => {
                let path: Vec<String> = s
                    .points
                    .iter()
                    .map(|&(x, y)| format!("{:.2},{:.2}", frame.px(x), frame.py(y)))
                    .collect();
                let _ = writeln!(
                    out,
                    r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}" data-points="{pts}"/>"#,
                    path.join(" ")
                );
            }
            SeriesStyle::Step => {
                let mut d = String::new();
                for (j, &(x, y)) in s.points.iter().enumerate() {
                    let (px, py) = (frame.px(x), frame.py(y));
                    if j == 0 {
                        let _ = write!(d, "M{px:.2},{py:.2}");
                    } else {
                        let _ = write!(d, " H{px:.2} V{py:.2}");
                    }
                }
                let _ = writeln!(
                    out,
                    r#"<path fill="none" stroke="{color}" stroke-width="2" d="{d}" data-points="{pts}"/>"#
                );
                for &(x, y) in &s.points {
                    let _ = writeln!(
                        out,
                        r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                        frame.px(x),
                        frame.py(y)
                    );
                }
            }
            SeriesStyle::Markers => {
                let _ = writeln!(out, r#"<g data-points="{pts}">"#);
                for &(x, y) in &s.points {
                    let _ = writeln!(
                        out,
                        r##"<circle cx="{:.2}" cy="{:.2}" r="5" fill="{color}" stroke="#000"/>"##,
                        frame.px(x),
                        frame.py(y)
                    );
                }
                out.push_str("</g>\n");
            }
            SeriesStyle::Band => {
                let xs = s.points.iter().map(|p| p.0);
                let (bx0, bx1) = (xs.clone().fold(f64::MAX, f64::min), xs.fold(f64::MIN, f64::max));
                let level = s.points.iter().map(|p| p.1).fold(f64::MIN, f64::max);
                let base = frame.y.lo.max(0.0).min(level);
                let (px0, px1, ptop, pbase) = (frame.px(bx0), frame.px(bx1), frame.py(level), frame.py(base));
                let _ = writeln!(
                    out,
                    r##"<rect x="{px0:.2}" y="{ptop:.2}" width="{:.2}" height="{:.2}" fill="url(#hatch)" stroke="#888" data-points="{pts}"/>"##,
                    px1 - px0,
                    pbase - ptop
                );
            }
        }
        // Legend entry.
        let ly = TOP + 10.0 + i as f64 * 20.0;
        let lx = WIDTH - RIGHT + 20.0;
        let swatch = match s.style {
            SeriesStyle::Band => format!(
                r##"<rect x="{lx}" y="{}" width="20" height="10" fill="url(#hatch)" stroke="#888"/>"##,
                ly - 5.0
            ),
            SeriesStyle::Markers => format!(r#"<circle cx="{}" cy="{ly}" r="5" fill="{color}"/>"#, lx + 10.0),
            _ => format!(
                r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#,
                lx + 20.0
            ),
        };
        let _ = writeln!(
            out,
            r#"{swatch}<text x="{}" y="{}">{}</text>"#,
            lx + 28.0,
            ly + 4.0,
            escape(&s.label)
        );
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn emit_svg(series: &[SweepSeries], path: &Path, title: &str) -> Result<(), Error> {
    let doc = render(series, title)?;
    emit(path, |w| std::io::Write::write_all(w, doc.as_bytes()))
}

/// Parses the `data-points` attributes of a rendered chart, in document
/// order.
pub fn plotted_points(doc: &str) -> Vec<Vec<(f64, f64)>> {
    doc.split("data-points=\"")
        .skip(1)
        .map(|rest| {
            let attr = &rest[..rest.find('"').unwrap_or(rest.len())];
            attr.split_whitespace()
                .filter_map(|pair| {
                    let (x, y) = pair.split_once(',')?;
                    Some((x.parse().ok()?, y.parse().ok()?))
                })
                .collect()
        })
        .collect()
}

/// Whether every sample of every series lies inside the chart's axis ranges.
pub fn within_axes(series: &[SweepSeries]) -> bool {
    let pts: Vec<(f64, f64)> = series.iter().flat_map(|s| s.points.iter().copied()).collect();
    if pts.is_empty() {
        return true;
    }
    let fold = |f: fn(&(f64, f64)) -> f64| {
        pts.iter()
            .map(f)
            .fold((f64::MAX, f64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
    };
    let (xlo, xhi) = fold(|p| p.0);
    let (ylo, yhi) = fold(|p| p.1);
    let (xa, ya) = (Axis::fit(xlo, xhi), Axis::fit(ylo, yhi));
    pts.iter().all(|&(x, y)| xa.contains(x) && ya.contains(y))
}
