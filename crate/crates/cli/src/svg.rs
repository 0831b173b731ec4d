//! SVG export of a strand diagram and its braid closure.
//!
//! Strands run upward. Each crossing is a `<g class="crossing">` holding the
//! over segment; the under segment is drawn in two pieces around a gap.
//! Closure arcs nest on the right, so they add no crossings.

use std::fmt::Write;

use heckeflow::template::StrandDiagram;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 20.0;
const GAP: f64 = 0.22;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

struct Frame {
    n: usize,
    steps: usize,
    dx: f64,
    dy: f64,
    ring: f64,
    top: f64,
    bottom: f64,
}

impl Frame {
    fn new(d: &StrandDiagram) -> Self {
        let n = d.strand_count();
        let steps = d.levels().saturating_sub(1).max(1);
        // room for n nested closure arcs on the right, above and below
        let ring = ((WIDTH - 2.0 * MARGIN) * 0.35 / (n as f64 + 1.0))
            .min((HEIGHT - 2.0 * MARGIN) * 0.2 / (n as f64 + 1.0));
        let dx = (WIDTH - 2.0 * MARGIN - ring * (n as f64 + 1.0)) / n as f64;
        let top = MARGIN + ring * (n as f64 + 1.0);
        let bottom = HEIGHT - MARGIN - ring * (n as f64 + 1.0);
        Self {
            n,
            steps,
            dx,
            dy: (bottom - top) / steps as f64,
            ring,
            top,
            bottom,
        }
    }

    fn x(&self, pos: usize) -> f64 {
        MARGIN + self.dx * (pos as f64 + 0.5)
    }

    fn y(&self, level: usize) -> f64 {
        self.bottom - self.dy * level as f64
    }
}

fn line(out: &mut String, a: (f64, f64), b: (f64, f64), colour: &str) {
    let _ = writeln!(
        out,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{colour}"/>"#,
        a.0, a.1, b.0, b.1
    );
}

fn lerp(a: (f64, f64), b: (f64, f64), t: f64) -> (f64, f64) {
    (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t)
}

pub fn render(d: &StrandDiagram) -> String {
    let f = Frame::new(d);
    let colour = |strand: usize| PALETTE[d.strands()[strand].orbit % PALETTE.len()];
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(out, r#"<g fill="none" stroke-width="2" stroke-linecap="round">"#);

    let by_level: Vec<Option<usize>> = {
        let mut v = vec![None; f.steps];
        for (i, c) in d.crossings().iter().enumerate() {
            if c.level < f.steps {
                v[c.level] = Some(i);
            }
        }
        v
    };

    let _ = writeln!(out, r#"<g class="strands">"#);
    for s in d.strands() {
        for step in 0..f.steps {
            let (p, q) = match (s.positions.get(step), s.positions.get(step + 1)) {
                (Some(&p), Some(&q)) => (p, q),
                (Some(&p), None) => (p, p),
                _ => continue,
            };
            let a = (f.x(p), f.y(step));
            let b = (f.x(q), f.y(step + 1));
            let crossing = by_level[step].map(|i| &d.crossings()[i]);
            match crossing {
                Some(c) if c.over == s.id => {}
                Some(c) if c.under == s.id => {
                    line(&mut out, a, lerp(a, b, 0.5 - GAP), colour(s.id));
                    line(&mut out, lerp(a, b, 0.5 + GAP), b, colour(s.id));
                }
                _ => line(&mut out, a, b, colour(s.id)),
            }
        }
    }
    let _ = writeln!(out, "</g>");

    for c in d.crossings() {
        let s = &d.strands()[c.over];
        let (p, q) = (s.positions[c.level], s.positions[c.level + 1]);
        let _ = writeln!(out, r#"<g class="crossing">"#);
        line(&mut out, (f.x(p), f.y(c.level)), (f.x(q), f.y(c.level + 1)), colour(c.over));
        let _ = writeln!(out, "</g>");
    }

    // closure: the top of position p returns to the bottom of position p
    let _ = writeln!(out, r#"<g class="closure">"#);
    let right = f.x(f.n - 1);
    for s in d.strands() {
        let p = s.end();
        let off = f.ring * (f.n - p) as f64;
        let x = f.x(p);
        let top_y = f.y(f.steps);
        let _ = writeln!(
            out,
            r#"<path d="M {x:.2} {top_y:.2} V {:.2} H {:.2} V {:.2} H {x:.2} V {:.2}" stroke="{}"/>"#,
            f.top - off,
            right + off,
            f.bottom + off,
            f.bottom,
            colour(s.id)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}
