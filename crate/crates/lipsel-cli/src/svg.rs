//! Static SVG rendering of an instance: one path per set, one polyline
//! for the selection. Output is a pure function of the input, so repeated
//! renders are byte-identical.

use std::fmt::Write;

use lipsel::geom::{ConvexSet, HalfPlane, Point};
use lipsel::refine::SetMap;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 24.0;

const SET_COLORS: [&str; 6] = [
    "#1b6ca8", "#c0392b", "#1e8449", "#7d3c98", "#b9770e", "#148f77",
];

struct Frame {
    min: Point,
    scale: f64,
    offset: Point,
}

impl Frame {
    /// Uniform scale mapping the world window into the canvas, centered.
    fn fit(min: Point, max: Point) -> Frame {
        let span_x = (max.x - min.x).max(1e-9);
        let span_y = (max.y - min.y).max(1e-9);
        let scale = ((WIDTH - 2.0 * MARGIN) / span_x).min((HEIGHT - 2.0 * MARGIN) / span_y);
        let offset = Point::new(
            (WIDTH - span_x * scale) / 2.0,
            (HEIGHT - span_y * scale) / 2.0,
        );
        Frame { min, scale, offset }
    }

    fn to_canvas(&self, p: Point) -> (f64, f64) {
        (
            self.offset.x + (p.x - self.min.x) * self.scale,
            HEIGHT - self.offset.y - (p.y - self.min.y) * self.scale,
        )
    }
}

/// Cut a convex polygon by a half-plane, keeping the inside.
fn clip(poly: &[Point], h: &HalfPlane) -> Vec<Point> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for (i, &cur) in poly.iter().enumerate() {
        let next = poly[(i + 1) % poly.len()];
        let (ec, en) = (h.eval(cur), h.eval(next));
        if ec <= 0.0 {
            out.push(cur);
        }
        if (ec <= 0.0) != (en <= 0.0) {
            let t = ec / (ec - en);
            out.push(Point::new(
                cur.x + t * (next.x - cur.x),
                cur.y + t * (next.y - cur.y),
            ));
        }
    }
    out
}

/// Finite coordinates that should be visible; infinite bounds are left to
/// the window clip.
fn anchors(set: &ConvexSet, xs: &mut Vec<f64>, ys: &mut Vec<f64>) {
    match set {
        ConvexSet::Polygon(p) => {
            for v in p.vertices() {
                xs.push(v.x);
                ys.push(v.y);
            }
        }
        ConvexSet::Segment(s) => {
            xs.extend([s.a.x, s.b.x]);
            ys.extend([s.a.y, s.b.y]);
        }
        ConvexSet::Rect(r) => {
            for v in [r.x.lo, r.x.hi] {
                if v.is_finite() {
                    xs.push(v);
                }
            }
            for v in [r.y.lo, r.y.hi] {
                if v.is_finite() {
                    ys.push(v);
                }
            }
        }
        ConvexSet::HalfPlane(h) => {
            // the boundary point closest to the origin
            xs.push(-h.alpha * h.n.x);
            ys.push(-h.alpha * h.n.y);
        }
        ConvexSet::Interval(iv) => {
            for v in [iv.lo, iv.hi] {
                if v.is_finite() {
                    xs.push(v);
                }
            }
            ys.push(0.0);
        }
        ConvexSet::Empty | ConvexSet::HalfPlanes(_) => {}
    }
}

/// The world-window polygon a set occupies, counterclockwise.
fn window_shape(set: &ConvexSet, lo: Point, hi: Point) -> Vec<Point> {
    let window = vec![
        Point::new(lo.x, lo.y),
        Point::new(hi.x, lo.y),
        Point::new(hi.x, hi.y),
        Point::new(lo.x, hi.y),
    ];
    match set {
        ConvexSet::Polygon(p) => p.vertices().to_vec(),
        ConvexSet::Segment(s) => vec![s.a, s.b],
        ConvexSet::Rect(r) => {
            let xlo = r.x.lo.max(lo.x);
            let xhi = r.x.hi.min(hi.x);
            let ylo = r.y.lo.max(lo.y);
            let yhi = r.y.hi.min(hi.y);
            vec![
                Point::new(xlo, ylo),
                Point::new(xhi, ylo),
                Point::new(xhi, yhi),
                Point::new(xlo, yhi),
            ]
        }
        ConvexSet::HalfPlane(h) => clip(&window, h),
        ConvexSet::Interval(iv) => vec![
            Point::new(iv.lo.max(lo.x), 0.0),
            Point::new(iv.hi.min(hi.x), 0.0),
        ],
        ConvexSet::Empty | ConvexSet::HalfPlanes(_) => Vec::new(),
    }
}

fn path_data(frame: &Frame, shape: &[Point], closed: bool) -> String {
    let mut d = String::new();
    for (i, &p) in shape.iter().enumerate() {
        let (x, y) = frame.to_canvas(p);
        let cmd = if i == 0 { 'M' } else { 'L' };
        let _ = write!(d, "{cmd}{x:.3} {y:.3} ");
    }
    if closed && shape.len() > 2 {
        d.push('Z');
    }
    d.trim_end().to_string()
}

pub fn render(map: &SetMap, selection: Option<&[Point]>) -> String {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for set in map.values() {
        anchors(set, &mut xs, &mut ys);
    }
    if let Some(sel) = selection {
        for p in sel {
            xs.push(p.x);
            ys.push(p.y);
        }
    }
    let spread = |vs: &[f64]| -> (f64, f64) {
        let lo = vs.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if lo.is_finite() && hi.is_finite() {
            let pad = 0.12 * (hi - lo).max(1.0);
            (lo - pad, hi + pad)
        } else {
            (-1.0, 1.0)
        }
    };
    let (xlo, xhi) = spread(&xs);
    let (ylo, yhi) = spread(&ys);
    let (lo, hi) = (Point::new(xlo, ylo), Point::new(xhi, yhi));
    let frame = Frame::fit(lo, hi);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(
        out,
        "  <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>"
    );
    for (i, set) in map.values().iter().enumerate() {
        let shape = window_shape(set, lo, hi);
        let closed = !matches!(set, ConvexSet::Segment(_) | ConvexSet::Interval(_));
        let color = SET_COLORS[i % SET_COLORS.len()];
        let fill = if closed && shape.len() > 2 { color } else { "none" };
        let _ = writeln!(
            out,
            "  <path d=\"{}\" fill=\"{}\" fill-opacity=\"0.15\" stroke=\"{}\" \
             stroke-width=\"1.5\"/>",
            path_data(&frame, &shape, closed),
            fill,
            color
        );
    }
    if let Some(sel) = selection {
        let pts: Vec<String> = sel
            .iter()
            .map(|&p| {
                let (x, y) = frame.to_canvas(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"#111111\" \
             stroke-width=\"2\" stroke-dasharray=\"5 3\"/>",
            pts.join(" ")
        );
        for p in pts {
            let (x, y) = p.split_once(',').expect("formatted above");
            let _ = writeln!(
                out,
                "  <circle cx=\"{x}\" cy=\"{y}\" r=\"3.5\" fill=\"#111111\"/>"
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
