//! Deterministic SVG export.
//!
//! The output depends only on the geometry: elements appear in input order,
//! numbers are printed with six decimals, and the plane's y axis is flipped
//! so pictures read as in the complex plane.

use std::fmt::Write;

use hexpack_core::airy::GridImage;
use hexpack_core::flower::Flower;
use hexpack_core::layout::PackingLayout;
use hexpack_core::{Complex, ExtComplex, OrientedCircle};

/// Axis-aligned region of the plane to draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub min: Complex,
    pub max: Complex,
}

impl Viewport {
    /// Box around the given points with a relative margin; the unit square
    /// around the origin when there are none.
    pub fn fit(points: impl IntoIterator<Item = Complex>, margin: f64) -> Self {
        let mut it = points.into_iter().filter(|z| z.is_finite());
        let Some(first) = it.next() else {
            return Viewport { min: Complex::new(-1.0, -1.0), max: Complex::new(1.0, 1.0) };
        };
        let (mut lo, mut hi) = (first, first);
        for z in it {
            lo = Complex::new(lo.re.min(z.re), lo.im.min(z.im));
            hi = Complex::new(hi.re.max(z.re), hi.im.max(z.im));
        }
        let pad = ((hi.re - lo.re).max(hi.im - lo.im) * margin).max(1e-6);
        Viewport { min: lo - Complex::new(pad, pad), max: hi + Complex::new(pad, pad) }
    }

    fn width(&self) -> f64 {
        self.max.re - self.min.re
    }

    fn height(&self) -> f64 {
        self.max.im - self.min.im
    }

    /// Piece of the line through `p` with direction `u` inside the box.
    fn clip_line(&self, p: Complex, u: Complex) -> Option<(Complex, Complex)> {
        let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
        for (pc, uc, lo, hi) in [(p.re, u.re, self.min.re, self.max.re), (p.im, u.im, self.min.im, self.max.im)] {
            if uc.abs() < 1e-300 {
                if pc < lo || pc > hi {
                    return None;
                }
            } else {
                let (a, b) = ((lo - pc) / uc, (hi - pc) / uc);
                t0 = t0.max(a.min(b));
                t1 = t1.min(a.max(b));
            }
        }
        (t0 < t1).then(|| (p + u * t0, p + u * t1))
    }
}

/// Something to draw.
#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Circle { circle: OrientedCircle, class: String },
    Point { at: ExtComplex, class: String },
    Polyline { points: Vec<ExtComplex>, class: String },
}

const STYLE: &str = ".positive{fill:none;stroke:#1f4e9c}.negative{fill:none;stroke:#b0302a}\
.center{fill:none;stroke:#111}.s-circle{fill:none;stroke:#2a8c55;stroke-dasharray:4 3}\
.touch{fill:#d4a017;stroke:none}.common{fill:#2a8c55;stroke:none}.grid{fill:none;stroke:#555}";

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

pub fn render(items: &[Item], view: &Viewport) -> String {
    let (w, h) = (view.width(), view.height());
    let scale = 800.0 / w.max(h);
    let stroke = 1.2 / scale;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        num(w * scale),
        num(h * scale),
        num(view.min.re),
        num(-view.max.im),
        num(w),
        num(h)
    );
    let _ = writeln!(out, "<style>{STYLE}</style>");
    let _ = writeln!(
        out,
        "<clipPath id=\"view\"><rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/></clipPath>",
        num(view.min.re),
        num(-view.max.im),
        num(w),
        num(h)
    );
    let _ = writeln!(out, "<g clip-path=\"url(#view)\" stroke-width=\"{}\">", num(stroke));
    for item in items {
        match item {
            Item::Circle { circle, class } => {
                if let Some((c, r)) = circle.center_radius() {
                    if r.is_finite() && r < 1e6 * w.max(h) {
                        let _ = writeln!(out, "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>", num(c.re), num(-c.im), num(r));
                    }
                } else if let Some((n, d)) = circle.line_params() {
                    let dir = n * Complex::new(0.0, 1.0);
                    if let Some((a, b)) = view.clip_line(n * d, dir) {
                        let _ = writeln!(
                            out,
                            "<line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                            num(a.re),
                            num(-a.im),
                            num(b.re),
                            num(-b.im)
                        );
                    }
                }
            }
            Item::Point { at, class } => {
                if let Some(z) = at.finite() {
                    let _ = writeln!(out, "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>", num(z.re), num(-z.im), num(2.5 / scale));
                }
            }
            Item::Polyline { points, class } => {
                // Split at points at infinity.
                for run in points.split(|p| p.finite().is_none()) {
                    if run.len() < 2 {
                        continue;
                    }
                    let coords: Vec<String> = run
                        .iter()
                        .filter_map(|p| p.finite())
                        .map(|z| format!("{},{}", num(z.re), num(-z.im)))
                        .collect();
                    let _ = writeln!(out, "<polyline class=\"{class}\" points=\"{}\"/>", coords.join(" "));
                }
            }
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn circle_item(c: &OrientedCircle) -> Item {
    let class = match c.orientation() {
        hexpack_core::moebius::Orientation::Positive => "positive",
        hexpack_core::moebius::Orientation::Negative => "negative",
    };
    Item::Circle { circle: *c, class: class.into() }
}

pub fn layout_svg(l: &PackingLayout, view: Option<Viewport>) -> String {
    let view = view.unwrap_or_else(|| Viewport::fit(l.touch_points.values().filter_map(|p| p.finite()), 0.08));
    let mut items: Vec<Item> = l.circles.values().map(circle_item).collect();
    items.extend(l.touch_points.values().map(|p| Item::Point { at: *p, class: "touch".into() }));
    render(&items, &view)
}

pub fn flower_svg(f: &Flower, s_circles: &[OrientedCircle], common: Option<ExtComplex>) -> String {
    let view = Viewport::fit(f.z.iter().chain(f.w.iter()).filter_map(|p| p.finite()), 0.15);
    let mut items = vec![Item::Circle { circle: f.center, class: "center".into() }];
    items.extend(f.petals.iter().map(circle_item));
    items.extend(s_circles.iter().map(|c| Item::Circle { circle: *c, class: "s-circle".into() }));
    items.extend(f.z.iter().chain(f.w.iter()).map(|p| Item::Point { at: *p, class: "touch".into() }));
    if let Some(p) = common {
        items.push(Item::Point { at: p, class: "common".into() });
    }
    render(&items, &view)
}

pub fn grid_svg(g: &GridImage) -> String {
    let view = Viewport::fit(g.vertices.iter().filter_map(|(_, w)| w.finite()), 0.05);
    let items: Vec<Item> = g.polylines.iter().map(|p| Item::Polyline { points: p.clone(), class: "grid".into() }).collect();
    render(&items, &view)
}
