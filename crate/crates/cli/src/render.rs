//! SVG figure of a point configuration and interpolating curves.
//!
//! Curve ordinates are evaluated exactly at rational sample abscissae and
//! only then rounded for drawing, so the output depends on nothing but the
//! input and the options.

use std::fmt::Write;

use num_traits::ToPrimitive;
use polycurve_core::pointgeom::lagrange_eval;
use polycurve_core::tuple::sort_with_parity;
use polycurve_core::{Chirotope, PointConfig, Rational, Sign};

const MARGIN: f64 = 40.0;
const POINT_RADIUS: f64 = 4.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

pub struct RenderOptions {
    pub width: u32,
    pub height: u32,
    /// Samples per curve across the plotted x-range.
    pub density: u32,
    /// Curves as 1-based `(k+1)`-tuples; empty means consecutive tuples.
    pub bases: Vec<Vec<usize>>,
    /// Label every non-base point with its sign relative to each curve.
    pub annotate: bool,
}

/// `(1..=k+1), (2..=k+2), …`
pub fn consecutive_bases(n: usize, k: usize) -> Vec<Vec<usize>> {
    (1..=n - k).map(|s| (s..=s + k).collect()).collect()
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (self.width - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        self.height - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (self.height - 2.0 * MARGIN)
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    let span = if hi > lo { hi - lo } else { 1.0 };
    (lo - 0.1 * span, hi + 0.1 * span)
}

/// Sign of `χ(base, e)`: which side of the base curve `e` lies on, in the
/// orientation of `c`.
pub fn side_label(c: &Chirotope, base: &[usize], e: usize) -> Sign {
    let mut t: Vec<usize> = base.to_vec();
    t.push(e);
    let mut sorted = t.clone();
    let parity = sort_with_parity(&mut sorted);
    parity * c.get_sorted(&sorted)
}

pub fn render_svg(p: &PointConfig, k: usize, c: &Chirotope, opts: &RenderOptions) -> String {
    let bases = if opts.bases.is_empty() {
        consecutive_bases(p.len(), k)
    } else {
        opts.bases.clone()
    };
    let xs: Vec<f64> = p.points().iter().map(|q| to_f64(&q.x)).collect();
    let ys: Vec<f64> = p.points().iter().map(|q| to_f64(&q.y)).collect();
    let (x0, x1) = padded(xs[0], xs[xs.len() - 1]);
    let lo = ys.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let (y0, y1) = padded(lo, hi);
    let f = Frame {
        x0,
        x1,
        y0,
        y1,
        width: opts.width as f64,
        height: opts.height as f64,
    };

    let mut s = String::new();
    let (w, h) = (opts.width, opts.height);
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    let (fw, fh) = (f.width - 2.0 * MARGIN, f.height - 2.0 * MARGIN);
    writeln!(
        s,
        r#"<defs><clipPath id="plot"><rect x="{MARGIN}" y="{MARGIN}" width="{fw}" height="{fh}"/></clipPath></defs>"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<rect class="frame" x="{MARGIN}" y="{MARGIN}" width="{fw}" height="{fh}" fill="none" stroke="black"/>"#
    )
    .unwrap();

    // exact sample abscissae spanning the padded range
    let first = &p.points()[0].x;
    let last = &p.points()[p.len() - 1].x;
    let span = last - first;
    let pad = if span == Rational::from_integer(0.into()) {
        Rational::from_integer(1.into())
    } else {
        &span / Rational::from_integer(10.into())
    };
    let start = first - &pad;
    let step = (&span + &pad + &pad) / Rational::from_integer(opts.density.max(1).into());

    writeln!(s, r#"<g class="curves" clip-path="url(#plot)" fill="none">"#).unwrap();
    for (i, base) in bases.iter().enumerate() {
        let mut d = String::new();
        for j in 0..=opts.density.max(1) {
            let x = &start + &step * Rational::from_integer(j.into());
            let y = lagrange_eval(p, base, &x);
            let (px, py) = (f.px(to_f64(&x)), f.py(to_f64(&y)).clamp(-1e6, 1e6));
            write!(d, "{}{px:.2},{py:.2}", if j == 0 { "M" } else { " L" }).unwrap();
        }
        let color = PALETTE[i % PALETTE.len()];
        let label = join(base);
        writeln!(
            s,
            r#"<path class="curve" data-base="{label}" stroke="{color}" d="{d}"/>"#
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();

    writeln!(s, r#"<g class="points">"#).unwrap();
    for (i, (&x, &y)) in xs.iter().zip(&ys).enumerate() {
        let (px, py) = (f.px(x), f.py(y));
        writeln!(
            s,
            r#"<circle class="point" data-element="{}" cx="{px:.2}" cy="{py:.2}" r="{POINT_RADIUS}"/>"#,
            i + 1
        )
        .unwrap();
        writeln!(
            s,
            r#"<text class="element" x="{:.2}" y="{:.2}" font-size="12">{}</text>"#,
            px + 6.0,
            py - 6.0,
            i + 1
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();

    if opts.annotate {
        writeln!(s, r#"<g class="signs" font-size="10">"#).unwrap();
        for (i, base) in bases.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            for e in (1..=p.len()).filter(|e| !base.contains(e)) {
                let sign = side_label(c, base, e);
                let (px, py) = (f.px(xs[e - 1]), f.py(ys[e - 1]));
                writeln!(
                    s,
                    r#"<text class="sign" data-base="{}" data-element="{e}" x="{:.2}" y="{:.2}" fill="{color}">{}</text>"#,
                    join(base),
                    px + 6.0 + 8.0 * i as f64,
                    py + 14.0,
                    sign.to_char()
                )
                .unwrap();
            }
        }
        writeln!(s, "</g>").unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn join(t: &[usize]) -> String {
    t.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}
