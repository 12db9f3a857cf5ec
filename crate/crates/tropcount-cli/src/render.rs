//! Static SVG drawing of a marked tropical curve with its dual subdivision.

use std::fmt::Write;

use tropcount::rational::QPoint;
use tropcount::tropcurve::{vertex_multiplicity, TropicalCurve};

#[derive(Debug, Clone, Copy, Default)]
pub struct RenderOptions {
    pub symlog: bool,
    pub inset: bool,
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 540.0;
const PAD: f64 = 60.0;
const INSET: f64 = 170.0;

fn symlog(v: f64) -> f64 {
    v.signum() * (1.0 + v.abs()).log10()
}

struct Frame {
    lo: (f64, f64),
    scale: f64,
    off: (f64, f64),
    symlog: bool,
}

impl Frame {
    fn fit(points: &[(f64, f64)], symlog_on: bool, box_lo: (f64, f64), box_hi: (f64, f64)) -> Frame {
        let tr = |p: &(f64, f64)| if symlog_on { (symlog(p.0), symlog(p.1)) } else { *p };
        let pts: Vec<(f64, f64)> = points.iter().map(tr).collect();
        let mut lo = (f64::INFINITY, f64::INFINITY);
        let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &pts {
            lo = (lo.0.min(p.0), lo.1.min(p.1));
            hi = (hi.0.max(p.0), hi.1.max(p.1));
        }
        if pts.is_empty() {
            lo = (0.0, 0.0);
            hi = (0.0, 0.0);
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
        let grow = if span <= 1e-9 { 1.0 } else { 0.25 * span };
        let lo = (lo.0 - grow, lo.1 - grow);
        let hi = (hi.0 + grow, hi.1 + grow);
        let w = box_hi.0 - box_lo.0;
        let h = box_hi.1 - box_lo.1;
        let scale = (w / (hi.0 - lo.0)).min(h / (hi.1 - lo.1));
        let off = (
            box_lo.0 + (w - scale * (hi.0 - lo.0)) / 2.0,
            box_lo.1 + (h - scale * (hi.1 - lo.1)) / 2.0,
        );
        Frame { lo, scale, off, symlog: symlog_on }
    }

    fn raw(&self, p: (f64, f64)) -> (f64, f64) {
        if self.symlog {
            (symlog(p.0), symlog(p.1))
        } else {
            p
        }
    }

    /// Page coordinates of an already transformed point; y grows upward on the page.
    fn page(&self, t: (f64, f64)) -> (f64, f64) {
        (
            self.off.0 + self.scale * (t.0 - self.lo.0),
            HEIGHT - (self.off.1 + self.scale * (t.1 - self.lo.1)),
        )
    }

    fn map(&self, p: (f64, f64)) -> (f64, f64) {
        self.page(self.raw(p))
    }
}

fn f(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn qp(p: &QPoint) -> (f64, f64) {
    p.to_f64()
}

pub fn render_svg(curve: &TropicalCurve, opts: &RenderOptions) -> String {
    let mut pts: Vec<(f64, f64)> = curve.vertices.iter().map(|v| qp(&v.position)).collect();
    pts.extend(curve.markings.iter().map(|m| qp(&m.point)));
    let right = if opts.inset { WIDTH - INSET - 2.0 * PAD / 3.0 } else { WIDTH - PAD };
    let frame = Frame::fit(&pts, opts.symlog, (PAD, PAD), (right, HEIGHT - PAD));
    let ray_len = 0.2 * (right - PAD).min(HEIGHT - 2.0 * PAD);

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        WIDTH, HEIGHT, WIDTH, HEIGHT
    );
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g id=\"curve\" stroke-linecap=\"round\">\n");
    for (i, e) in curve.edges.iter().enumerate() {
        let a = frame.map(qp(&curve.vertices[e.from].position));
        let b = match e.to {
            Some(t) => frame.map(qp(&curve.vertices[t].position)),
            None => {
                let (dx, dy) = (e.dir.x as f64, e.dir.y as f64);
                let n = (dx * dx + dy * dy).sqrt();
                (a.0 + ray_len * dx / n, a.1 - ray_len * dy / n)
            }
        };
        let (class, stroke, width) = match e.weight {
            1 => ("edge", "#222222", 1.6),
            2 => ("edge weight2", "#d62728", 3.6),
            _ => ("edge heavy", "#9467bd", 3.6),
        };
        let _ = writeln!(
            s,
            "<line class=\"{class}\" data-edge=\"{i}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{stroke}\" stroke-width=\"{width}\"/>",
            f(a.0), f(a.1), f(b.0), f(b.1)
        );
        if e.weight > 1 {
            let m = ((a.0 + b.0) / 2.0 + 6.0, (a.1 + b.1) / 2.0 - 6.0);
            let _ = writeln!(
                s,
                "<text class=\"weight\" x=\"{}\" y=\"{}\" font-size=\"13\" fill=\"{stroke}\">{}</text>",
                f(m.0), f(m.1), e.weight
            );
        }
    }
    for (i, v) in curve.vertices.iter().enumerate() {
        let p = frame.map(qp(&v.position));
        if v.crossing {
            let _ = writeln!(
                s,
                "<circle class=\"crossing\" cx=\"{}\" cy=\"{}\" r=\"6\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>",
                f(p.0), f(p.1)
            );
            continue;
        }
        let m = vertex_multiplicity(curve, i).unwrap_or(1);
        if m > 1 {
            let _ = writeln!(
                s,
                "<circle class=\"mult\" cx=\"{}\" cy=\"{}\" r=\"7\" fill=\"#ff7f0e\" fill-opacity=\"0.35\" stroke=\"#ff7f0e\"/>",
                f(p.0), f(p.1)
            );
            let _ = writeln!(
                s,
                "<text class=\"mult-label\" x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"#b35806\">m={m}</text>",
                f(p.0 + 9.0), f(p.1 + 14.0)
            );
        } else {
            let _ = writeln!(s, "<circle class=\"vertex\" cx=\"{}\" cy=\"{}\" r=\"2.5\" fill=\"#222222\"/>", f(p.0), f(p.1));
        }
    }
    for (j, m) in curve.markings.iter().enumerate() {
        let p = frame.map(qp(&m.point));
        let _ = writeln!(
            s,
            "<circle class=\"marking\" data-point=\"{j}\" cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#2ca02c\" stroke=\"black\" stroke-width=\"0.8\"/>",
            f(p.0), f(p.1)
        );
    }
    s.push_str("</g>\n");
    if opts.inset {
        inset(&mut s, curve);
    }
    s.push_str("</svg>\n");
    s
}

fn inset(s: &mut String, curve: &TropicalCurve) {
    let sub = &curve.dual;
    let (lo, hi) = sub.polygon.bounds();
    let span = ((hi.x - lo.x).max(hi.y - lo.y)).max(1) as f64;
    let x0 = WIDTH - INSET - 20.0;
    let y0 = 20.0;
    let unit = (INSET - 20.0) / span;
    let at = |x: i64, y: i64| (x0 + 10.0 + unit * (x - lo.x) as f64, y0 + INSET - 10.0 - unit * (y - lo.y) as f64);
    let _ = writeln!(
        s,
        "<g id=\"subdivision\"><rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#f7f7f7\" stroke=\"#bbbbbb\"/>",
        f(x0), f(y0), f(INSET), f(INSET)
    );
    for cell in &sub.cells {
        let pts: Vec<String> = cell.iter().map(|p| {
            let q = at(p.x, p.y);
            format!("{},{}", f(q.0), f(q.1))
        }).collect();
        let _ = writeln!(
            s,
            "<polygon class=\"cell\" points=\"{}\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>",
            pts.join(" ")
        );
    }
    let unused = sub.unused_points();
    for p in sub.polygon.lattice_points() {
        let q = at(p.x, p.y);
        let fill = if unused.contains(&p) { "white" } else { "#444444" };
        let _ = writeln!(
            s,
            "<circle class=\"lattice\" cx=\"{}\" cy=\"{}\" r=\"2.5\" fill=\"{fill}\" stroke=\"#444444\"/>",
            f(q.0), f(q.1)
        );
    }
    s.push_str("</g>\n");
}
