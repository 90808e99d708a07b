//! SVG rendering of thermographs. Values grow leftward and the penalty grows
//! upward; the mast above the apex is dashed.

use std::fmt::Write;

use crate::dyadic::Dyadic;
use crate::thermo::{Thermograph, Wall};

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 40.0;

struct Frame {
    x_min: f64,
    x_max: f64,
    p_max: f64,
}

impl Frame {
    fn sx(&self, x: f64) -> f64 {
        let span = (self.x_max - self.x_min).max(1e-9);
        WIDTH - MARGIN - (x - self.x_min) / span * (WIDTH - 2.0 * MARGIN)
    }

    fn sy(&self, p: f64) -> f64 {
        HEIGHT - MARGIN - p / self.p_max * (HEIGHT - 2.0 * MARGIN)
    }
}

fn polyline(out: &mut String, f: &Frame, wall: &Wall, top: f64, color: &str) {
    let mut pts: Vec<(f64, f64)> = wall
        .vertices()
        .iter()
        .map(|v| (v.x.to_f64(), v.p.to_f64()))
        .filter(|&(_, p)| p <= top)
        .collect();
    let last = wall.at(Dyadic::from(top as i64)).to_f64();
    if pts.last().is_none_or(|&(_, p)| p < top) {
        pts.push((last, top));
    }
    let coords: Vec<String> = pts
        .iter()
        .map(|&(x, p)| format!("{:.2},{:.2}", f.sx(x), f.sy(p)))
        .collect();
    let _ = writeln!(
        out,
        r#"  <polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
        coords.join(" ")
    );
}

/// Deterministic SVG 1.1 document for `t`.
pub fn render_svg(t: &Thermograph) -> String {
    let temp = t.temperature.to_f64().max(0.0);
    let apex_top = temp.ceil() as i64;
    let p_max = (apex_top + 1).max(2) as f64;
    let xs = t
        .left
        .vertices()
        .iter()
        .chain(t.right.vertices())
        .map(|v| v.x.to_f64());
    let (mut x_min, mut x_max) = xs.fold((f64::MAX, f64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)));
    x_min -= 1.0;
    x_max += 1.0;
    let f = Frame { x_min, x_max, p_max };

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        out,
        r#"  <title>thermograph t={} m={}</title>"#,
        t.temperature, t.mean
    );
    let base = f.sy(0.0);
    let _ = writeln!(
        out,
        r#"  <line x1="{:.2}" y1="{base:.2}" x2="{:.2}" y2="{base:.2}" stroke="black"/>"#,
        MARGIN,
        WIDTH - MARGIN
    );
    for k in x_min.ceil() as i64..=x_max.floor() as i64 {
        let x = f.sx(k as f64);
        let _ = writeln!(
            out,
            r#"  <line x1="{x:.2}" y1="{base:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#,
            base + 4.0
        );
        let _ = writeln!(
            out,
            r#"  <text x="{x:.2}" y="{:.2}" font-size="10" text-anchor="middle">{k}</text>"#,
            base + 16.0
        );
    }

    let apex = temp.min(p_max);
    polyline(&mut out, &f, &t.left, apex_top as f64, "#1f4e9c");
    polyline(&mut out, &f, &t.right, apex_top as f64, "#9c1f1f");
    let mx = f.sx(t.mean.to_f64());
    let _ = writeln!(
        out,
        r#"  <line x1="{mx:.2}" y1="{:.2}" x2="{mx:.2}" y2="{:.2}" stroke="black" stroke-dasharray="4,3"/>"#,
        f.sy(apex),
        f.sy(p_max)
    );
    let _ = writeln!(out, "</svg>");
    out
}
