//! Deterministic SVG rendering of a knot's plane projection, with gaps in
//! the under strand at every crossing.

use polyknot::diagram::{extract_diagram, KnotDiagram};
use polyknot::embedding::PolyKnot;
use polyknot::error::Result;
use polyknot::poly::Polynomial;

const VIEW: f64 = 640.0;
const MARGIN: f64 = 32.0;
/// Gap half-width at an under passage, as a fraction of the world diagonal.
const GAP_FRACTION: f64 = 0.02;
/// Chord-flatness threshold as a fraction of the world diagonal.
const FLATNESS: f64 = 0.0005;
const MAX_DEPTH: u32 = 14;
const BASE_SEGMENTS: usize = 64;

pub fn render_svg(k: &PolyKnot) -> Result<String> {
    let d = extract_diagram(k)?;
    let (lo, hi) = parameter_window(&d);
    let (wx0, wy0, wx1, wy1) = world_bbox(&k.f, &k.g, lo, hi);
    let diag = ((wx1 - wx0).powi(2) + (wy1 - wy0).powi(2)).sqrt().max(1e-9);

    // parameter intervals to skip: a gap around each under passage, sized
    // so the world-space hole is GAP_FRACTION of the diagonal
    let mut gaps: Vec<(f64, f64)> = Vec::new();
    for p in &d.passages {
        if p.is_over {
            continue;
        }
        let t0 = p.param;
        let speed = (k.f.derivative().eval_f64(t0).powi(2)
            + k.g.derivative().eval_f64(t0).powi(2))
        .sqrt()
        .max(1e-9);
        let delta = GAP_FRACTION * diag / speed;
        gaps.push((t0 - delta, t0 + delta));
    }
    gaps.sort_by(|a, b| a.0.total_cmp(&b.0));

    // visible parameter intervals
    let mut intervals: Vec<(f64, f64)> = Vec::new();
    let mut cursor = lo;
    for &(a, b) in &gaps {
        if a > cursor {
            intervals.push((cursor, a.min(hi)));
        }
        cursor = cursor.max(b);
    }
    if cursor < hi {
        intervals.push((cursor, hi));
    }

    let to_view = |x: f64, y: f64| {
        let sx = (VIEW - 2.0 * MARGIN) / (wx1 - wx0).max(1e-9);
        let sy = (VIEW - 2.0 * MARGIN) / (wy1 - wy0).max(1e-9);
        let s = sx.min(sy);
        let cx = (wx0 + wx1) / 2.0;
        let cy = (wy0 + wy1) / 2.0;
        (
            VIEW / 2.0 + (x - cx) * s,
            VIEW / 2.0 - (y - cy) * s, // y up in world, down in SVG
        )
    };

    let mut paths = Vec::new();
    for &(a, b) in &intervals {
        let pts = sample_curve(&k.f, &k.g, a, b, FLATNESS * diag);
        if pts.len() < 2 {
            continue;
        }
        let mut data = String::new();
        for (i, &(x, y)) in pts.iter().enumerate() {
            let (vx, vy) = to_view(x, y);
            if i == 0 {
                data.push_str(&format!("M {:.3} {:.3}", vx, vy));
            } else {
                data.push_str(&format!(" L {:.3} {:.3}", vx, vy));
            }
        }
        paths.push(format!(
            "  <path d=\"{}\" fill=\"none\" stroke=\"#1a1a2e\" stroke-width=\"2.5\" stroke-linecap=\"round\"/>",
            data
        ));
    }

    let title = k.name.as_deref().unwrap_or("polynomial knot projection");
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{v}\" height=\"{v}\" viewBox=\"0 0 {v} {v}\">\n",
        v = VIEW
    ));
    svg.push_str(&format!("  <title>{}</title>\n", title));
    svg.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for p in paths {
        svg.push_str(&p);
        svg.push('\n');
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Parameter range to draw: the crossing parameters padded by 20%, or a
/// fixed window when the diagram has no crossings.
fn parameter_window(d: &KnotDiagram) -> (f64, f64) {
    if d.crossings.is_empty() {
        return (-1.5, 1.5);
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for c in &d.crossings {
        lo = lo.min(c.s);
        hi = hi.max(c.t);
    }
    let pad = 0.2 * (hi - lo).max(1.0);
    (lo - pad, hi + pad)
}

fn world_bbox(f: &Polynomial, g: &Polynomial, lo: f64, hi: f64) -> (f64, f64, f64, f64) {
    let (mut x0, mut y0) = (f64::INFINITY, f64::INFINITY);
    let (mut x1, mut y1) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for i in 0..=512 {
        let t = lo + (hi - lo) * (i as f64) / 512.0;
        let (x, y) = (f.eval_f64(t), g.eval_f64(t));
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    (x0, y0, x1, y1)
}

/// Adaptive polyline: start from a uniform grid and split every segment
/// whose midpoint strays from the chord by more than `tol` (world units).
fn sample_curve(f: &Polynomial, g: &Polynomial, lo: f64, hi: f64, tol: f64) -> Vec<(f64, f64)> {
    let mut pts = Vec::new();
    let at = |t: f64| (f.eval_f64(t), g.eval_f64(t));
    pts.push(at(lo));
    for i in 0..BASE_SEGMENTS {
        let a = lo + (hi - lo) * (i as f64) / BASE_SEGMENTS as f64;
        let b = lo + (hi - lo) * ((i + 1) as f64) / BASE_SEGMENTS as f64;
        refine(&at, a, b, tol, 0, &mut pts);
    }
    pts
}

fn refine(
    at: &impl Fn(f64) -> (f64, f64),
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
    out: &mut Vec<(f64, f64)>,
) {
    let m = 0.5 * (a + b);
    let (xa, ya) = at(a);
    let (xb, yb) = at(b);
    let (xm, ym) = at(m);
    // distance of the midpoint from the chord
    let (dx, dy) = (xb - xa, yb - ya);
    let len = (dx * dx + dy * dy).sqrt().max(1e-12);
    let dist = ((xm - xa) * dy - (ym - ya) * dx).abs() / len;
    if dist > tol && depth < MAX_DEPTH {
        refine(at, a, m, tol, depth + 1, out);
        refine(at, m, b, tol, depth + 1, out);
    } else {
        out.push((xm, ym));
        out.push((xb, yb));
    }
}
