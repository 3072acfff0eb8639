//! SVG rendering of a triangle inscribed in the graph of a polynomial.
//!
//! Coordinates are converted to floating point only when written out; the
//! vertex `data-x`/`data-y` attributes and the area label are exact.

use std::fmt::Write;

use crate::error::Result;
use crate::geometry::area_factored;
use crate::scalar::{Poly, Rational};
use crate::symmetric::Nodes;

pub const CURVE_SAMPLES: usize = 256;
const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 40.0;

struct Frame {
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x_lo) / (self.x_hi - self.x_lo) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y_lo) / (self.y_hi - self.y_lo) * (HEIGHT - 2.0 * MARGIN)
    }
}

/// Padded interval around `[lo, hi]`; a degenerate interval is widened to one
/// unit either side.
fn padded(lo: f64, hi: f64, fraction: f64) -> (f64, f64) {
    let span = hi - lo;
    if span > 0.0 && span.is_finite() {
        (lo - fraction * span, hi + fraction * span)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

/// The curve sampled at [`CURVE_SAMPLES`] points across the node range padded
/// by 20% on each side, the triangle on the three nodes, vertex markers, and
/// the exact area.
pub fn render_triangle(p: &Poly, xs: &Nodes) -> Result<String> {
    let area = area_factored(p, xs)?;
    let vertices: Vec<(Rational, Rational)> = xs.iter().map(|x| (x.clone(), p.eval(x))).collect();

    let lo = xs.iter().min().expect("non-empty").clone();
    let hi = xs.iter().max().expect("non-empty").clone();
    let span = if lo == hi {
        Rational::from_integer(5)
    } else {
        &hi - &lo
    };
    let pad = &span / &Rational::from_integer(5);
    let x_lo = &lo - &pad;
    let x_hi = &hi + &pad;
    let step = (&x_hi - &x_lo) / Rational::from_integer((CURVE_SAMPLES - 1) as i64);
    let samples: Vec<(f64, f64)> = (0..CURVE_SAMPLES)
        .map(|i| {
            let t = &x_lo + &(&step * &Rational::from_integer(i as i64));
            (t.to_f64(), p.eval(&t).to_f64())
        })
        .collect();
    let (x_lo, x_hi) = (x_lo.to_f64(), x_hi.to_f64());

    let ys = samples
        .iter()
        .map(|&(_, y)| y)
        .chain(vertices.iter().map(|(_, y)| y.to_f64()))
        .filter(|y| y.is_finite());
    let (y_min, y_max) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| {
        (a.min(y), b.max(y))
    });
    let (y_lo, y_hi) = padded(y_min, y_max, 0.05);
    let frame = Frame {
        x_lo,
        x_hi,
        y_lo,
        y_hi,
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"  <rect width="100%" height="100%" fill="white"/>"#);

    if y_lo < 0.0 && y_hi > 0.0 {
        let y0 = frame.py(0.0);
        let _ = writeln!(
            svg,
            r##"  <line class="axis" x1="{MARGIN}" y1="{y0:.3}" x2="{:.3}" y2="{y0:.3}" stroke="#999" stroke-width="1"/>"##,
            WIDTH - MARGIN
        );
    }
    if x_lo < 0.0 && x_hi > 0.0 {
        let x0 = frame.px(0.0);
        let _ = writeln!(
            svg,
            r##"  <line class="axis" x1="{x0:.3}" y1="{MARGIN}" x2="{x0:.3}" y2="{:.3}" stroke="#999" stroke-width="1"/>"##,
            HEIGHT - MARGIN
        );
    }

    let points: Vec<String> = samples
        .iter()
        .map(|&(x, y)| format!("{:.3},{:.3}", frame.px(x), frame.py(y)))
        .collect();
    let _ = writeln!(
        svg,
        r##"  <polyline class="curve" fill="none" stroke="#1f77b4" stroke-width="2" points="{}"/>"##,
        points.join(" ")
    );

    let corners: Vec<String> = vertices
        .iter()
        .map(|(x, y)| format!("{:.3},{:.3}", frame.px(x.to_f64()), frame.py(y.to_f64())))
        .collect();
    let _ = writeln!(
        svg,
        r##"  <polygon class="triangle" fill="#ff7f0e" fill-opacity="0.3" stroke="#d62728" stroke-width="2" points="{}"/>"##,
        corners.join(" ")
    );

    for (x, y) in &vertices {
        let _ = writeln!(
            svg,
            r##"  <circle class="vertex" data-x="{x}" data-y="{y}" cx="{:.3}" cy="{:.3}" r="4" fill="#d62728"/>"##,
            frame.px(x.to_f64()),
            frame.py(y.to_f64())
        );
        let _ = writeln!(
            svg,
            r#"  <text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="12">({x}, {y})</text>"#,
            frame.px(x.to_f64()) + 6.0,
            frame.py(y.to_f64()) - 6.0
        );
    }

    let _ = writeln!(
        svg,
        r#"  <text class="area" x="{MARGIN}" y="{:.3}" font-family="sans-serif" font-size="16">area = {area}</text>"#,
        MARGIN - 12.0
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}
