//! Static SVG 1.1 figure of an arc, its hull and optionally a
//! Λ-configuration with both support lines and labelled triple points.

use std::fmt::Write;

use crate::arc::PolyArc;
use crate::finder::LambdaConfig;
use crate::geom::Point2;
use crate::support::SupportLine;

const CANVAS_WIDTH: f64 = 640.0;
const MARGIN_RATIO: f64 = 0.15;

struct Viewport {
    min: Point2,
    max: Point2,
    scale: f64,
}

impl Viewport {
    fn around(points: &[Point2]) -> Viewport {
        let mut min = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min = Point2::new(min.x.min(p.x), min.y.min(p.y));
            max = Point2::new(max.x.max(p.x), max.y.max(p.y));
        }
        let side = (max.x - min.x).max(max.y - min.y);
        let side = if side > 0.0 { side } else { 1.0 };
        let m = MARGIN_RATIO * side;
        let min = Point2::new(min.x - m, min.y - m);
        let max = Point2::new(max.x + m, max.y + m);
        Viewport {
            min,
            max,
            scale: CANVAS_WIDTH / (max.x - min.x),
        }
    }

    fn height(&self) -> f64 {
        (self.max.y - self.min.y) * self.scale
    }

    /// World to canvas, with y pointing down.
    fn map(&self, p: Point2) -> (f64, f64) {
        ((p.x - self.min.x) * self.scale, (self.max.y - p.y) * self.scale)
    }

    /// Portion of the line inside the viewport (Liang-Barsky).
    fn clip(&self, line: &SupportLine) -> Option<(Point2, Point2)> {
        let o = line.anchor();
        let u = line.theta.direction();
        let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
        for (pos, dir, lo, hi) in [(o.x, u.x, self.min.x, self.max.x), (o.y, u.y, self.min.y, self.max.y)] {
            if dir.abs() < 1e-15 {
                if pos < lo || pos > hi {
                    return None;
                }
                continue;
            }
            let (a, b) = ((lo - pos) / dir, (hi - pos) / dir);
            t0 = t0.max(a.min(b));
            t1 = t1.min(a.max(b));
        }
        (t0 <= t1).then(|| (o + u * t0, o + u * t1))
    }
}

fn points_attr(vp: &Viewport, pts: &[Point2]) -> String {
    pts.iter()
        .map(|&p| {
            let (x, y) = vp.map(p);
            format!("{x:.3},{y:.3}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_svg(arc: &PolyArc, config: Option<&LambdaConfig>) -> String {
    let vp = Viewport::around(arc.vertices());
    let mut s = String::new();
    let (w, h) = (CANVAS_WIDTH, vp.height());
    // writing to a String cannot fail
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.3}" height="{h:.3}" viewBox="0 0 {w:.3} {h:.3}">"#
    );
    let _ = writeln!(s, r#"  <rect x="0" y="0" width="{w:.3}" height="{h:.3}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"  <polygon class="hull" points="{}" fill="none" stroke="#888888" stroke-width="1" stroke-dasharray="6 4"/>"##,
        points_attr(&vp, arc.hull())
    );

    if let Some(cfg) = config {
        for (class, line) in [("support-ends", &cfg.line_ends), ("support-mid", &cfg.line_mid)] {
            if let Some((a, b)) = vp.clip(line) {
                let ((x1, y1), (x2, y2)) = (vp.map(a), vp.map(b));
                let _ = writeln!(
                    s,
                    r##"  <line class="{class}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#1f5fbf" stroke-width="1.5"/>"##
                );
            }
        }
    }

    let _ = writeln!(
        s,
        r##"  <polyline class="arc" points="{}" fill="none" stroke="black" stroke-width="2" stroke-linejoin="round"/>"##,
        points_attr(&vp, arc.vertices())
    );

    if let Some(cfg) = config {
        for (i, p) in cfg.points.iter().enumerate() {
            let (x, y) = vp.map(*p);
            let _ = writeln!(
                s,
                r##"  <circle class="triple-point" cx="{x:.3}" cy="{y:.3}" r="5" fill="#d62728"/>"##
            );
            let _ = writeln!(
                s,
                r#"  <text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="16">p{}</text>"#,
                x + 8.0,
                y - 8.0,
                i + 1
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finder::find_all;
    use crate::gen::gen_named;

    #[test]
    fn tent_figure_structure() {
        let arc = gen_named("tent").unwrap();
        let cfg = find_all(&arc).unwrap().remove(0);
        let svg = render_svg(&arc, Some(&cfg));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 3);
        for label in ["p1", "p2", "p3"] {
            assert!(svg.contains(&format!(">{label}</text>")));
        }
        assert_eq!(svg.matches("<line").count(), 2);
        assert_eq!(svg, render_svg(&arc, Some(&cfg)));
    }

    #[test]
    fn arc_only_figure() {
        let arc = gen_named("spiral").unwrap();
        let svg = render_svg(&arc, None);
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches("<circle").count(), 0);
        assert_eq!(svg.matches("<line").count(), 0);
    }
}
