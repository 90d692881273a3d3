//! Standalone SVG rendering of orbits.

use std::f64::consts::TAU;
use std::fmt::Write;

use pwilab::{Complex64, ConvexRegion, HalfPlane};

/// Width of the drawing in viewport units.
pub const CANVAS: f64 = 1000.0;
pub const DEFAULT_RADIUS: f64 = 0.3;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum PlotError {
    #[error("nothing to plot")]
    EmptyInput,
}

/// Axis-aligned data window mapped onto the canvas.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    /// Canvas height; the width is always [`CANVAS`].
    pub height: f64,
}

impl Viewport {
    /// The cylinder `[0, |I|] × [0, 2π)`.
    pub fn cylinder(length: f64) -> Self {
        Viewport {
            x0: 0.0,
            x1: length,
            y0: 0.0,
            y1: TAU,
            height: CANVAS,
        }
    }

    /// Bounding box of `points` padded by 5%, squared up so both axes share a scale.
    pub fn fit(points: &[Complex64]) -> Option<Self> {
        let first = points.first()?;
        let mut v = Viewport {
            x0: first.re,
            x1: first.re,
            y0: first.im,
            y1: first.im,
            height: CANVAS,
        };
        for p in points
            .iter()
            .filter(|p| p.re.is_finite() && p.im.is_finite())
        {
            v.x0 = v.x0.min(p.re);
            v.x1 = v.x1.max(p.re);
            v.y0 = v.y0.min(p.im);
            v.y1 = v.y1.max(p.im);
        }
        let side = (v.x1 - v.x0).max(v.y1 - v.y0).max(1e-9) * 1.1;
        let (cx, cy) = ((v.x0 + v.x1) / 2.0, (v.y0 + v.y1) / 2.0);
        Some(Viewport {
            x0: cx - side / 2.0,
            x1: cx + side / 2.0,
            y0: cy - side / 2.0,
            y1: cy + side / 2.0,
            height: CANVAS,
        })
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let sx = (x - self.x0) / (self.x1 - self.x0) * CANVAS;
        let sy = (self.y1 - y) / (self.y1 - self.y0) * self.height;
        (sx, sy)
    }

    fn edges(&self) -> [HalfPlane; 4] {
        use pwilab::Sense::{Ge, Le};
        [
            HalfPlane::vertical(self.x0, Ge),
            HalfPlane::vertical(self.x1, Le),
            HalfPlane::horizontal(self.y0, Ge),
            HalfPlane::horizontal(self.y1, Le),
        ]
    }
}

pub struct Plot {
    viewport: Viewport,
    radius: f64,
    body: String,
    markers: usize,
}

impl Plot {
    pub fn new(viewport: Viewport, radius: f64) -> Self {
        Plot {
            viewport,
            radius,
            body: String::new(),
            markers: 0,
        }
    }

    pub fn viewport(&self) -> Viewport {
        self.viewport
    }

    pub fn markers(&self) -> usize {
        self.markers
    }

    pub fn points(&mut self, points: impl IntoIterator<Item = (f64, f64)>, color: &str) {
        let _ = writeln!(self.body, "<g fill=\"{color}\">");
        for (x, y) in points {
            if !(x.is_finite() && y.is_finite()) {
                continue;
            }
            let (sx, sy) = self.viewport.map(x, y);
            let _ = writeln!(
                self.body,
                "<circle cx=\"{sx:.3}\" cy=\"{sy:.3}\" r=\"{}\"/>",
                self.radius
            );
            self.markers += 1;
        }
        self.body.push_str("</g>\n");
    }

    /// Draws the edges of each atom: every boundary line clipped to the
    /// other constraints of its atom and to the viewport.
    pub fn atoms(&mut self, atoms: &[ConvexRegion]) {
        self.body
            .push_str("<g stroke=\"#888\" stroke-width=\"1\" fill=\"none\">\n");
        let frame = self.viewport.edges();
        for atom in atoms {
            for (i, h) in atom.constraints.iter().enumerate() {
                let others = atom
                    .constraints
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i)
                    .map(|(_, c)| c)
                    .chain(frame.iter());
                if let Some((a, b)) = clip(h, others) {
                    let (ax, ay) = self.viewport.map(a.re, a.im);
                    let (bx, by) = self.viewport.map(b.re, b.im);
                    let _ = writeln!(
                        self.body,
                        "<line x1=\"{ax:.3}\" y1=\"{ay:.3}\" x2=\"{bx:.3}\" y2=\"{by:.3}\"/>"
                    );
                }
            }
        }
        self.body.push_str("</g>\n");
    }

    pub fn render(&self) -> String {
        let v = self.viewport;
        let h = v.height;
        let mut out = String::with_capacity(self.body.len() + 512);
        let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {CANVAS} {h:.3}\" \
             data-x-range=\"{} {}\" data-y-range=\"{} {}\">",
            v.x0, v.x1, v.y0, v.y1
        );
        let _ = writeln!(
            out,
            "<rect x=\"0\" y=\"0\" width=\"{CANVAS}\" height=\"{h:.3}\" fill=\"white\" stroke=\"black\"/>"
        );
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

/// The part of the boundary line of `h` satisfying every constraint in `others`.
fn clip<'a>(
    h: &HalfPlane,
    others: impl Iterator<Item = &'a HalfPlane>,
) -> Option<(Complex64, Complex64)> {
    let dir = h.direction();
    let base = h.anchor();
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for c in others {
        // value(base + t·dir) = v0 + t·slope
        let v0 = c.value(base);
        let slope = (c.phasor() * dir).im;
        let upper = matches!(c.sense(), pwilab::Sense::Lt | pwilab::Sense::Le);
        if slope.abs() < 1e-15 {
            if (upper && v0 > 0.0) || (!upper && v0 < 0.0) {
                return None;
            }
            continue;
        }
        let t = -v0 / slope;
        if (slope > 0.0) != upper {
            lo = lo.max(t);
        } else {
            hi = hi.min(t);
        }
    }
    (lo < hi && lo.is_finite() && hi.is_finite()).then(|| (base + dir * lo, base + dir * hi))
}

/// Scatter plot of planar points on a fitted viewport.
pub fn scatter(
    series: &[Vec<Complex64>],
    atoms: &[ConvexRegion],
    radius: f64,
) -> Result<String, PlotError> {
    let all: Vec<Complex64> = series.iter().flatten().copied().collect();
    let viewport = Viewport::fit(&all).ok_or(PlotError::EmptyInput)?;
    let mut plot = Plot::new(viewport, radius);
    if !atoms.is_empty() {
        plot.atoms(atoms);
    }
    for (k, s) in series.iter().enumerate() {
        plot.points(s.iter().map(|z| (z.re, z.im)), palette(k));
    }
    Ok(plot.render())
}

/// Plot of `(x, y)` pairs on `[0, |I|] × [0, 2π)`.
pub fn cylinder(series: &[Vec<(f64, f64)>], length: f64, radius: f64) -> Result<String, PlotError> {
    if series.iter().all(Vec::is_empty) {
        return Err(PlotError::EmptyInput);
    }
    let mut plot = Plot::new(Viewport::cylinder(length), radius);
    for (k, s) in series.iter().enumerate() {
        plot.points(s.iter().copied(), palette(k));
    }
    Ok(plot.render())
}

fn palette(k: usize) -> &'static str {
    const COLORS: [&str; 6] = [
        "#1f4e9c", "#c0392b", "#27ae60", "#8e44ad", "#d68910", "#16a085",
    ];
    COLORS[k % COLORS.len()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use pwilab::Sense;

    #[test]
    fn single_point_single_marker() {
        let svg = scatter(&[vec![Complex64::new(0.2, 0.1)]], &[], DEFAULT_RADIUS).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains("r=\"0.3\""));
    }

    #[test]
    fn empty_input_rejected() {
        assert_eq!(scatter(&[], &[], 0.3), Err(PlotError::EmptyInput));
        assert_eq!(scatter(&[vec![]], &[], 0.3), Err(PlotError::EmptyInput));
        assert_eq!(cylinder(&[vec![]], 1.0, 0.3), Err(PlotError::EmptyInput));
    }

    #[test]
    fn cylinder_viewport_is_fixed() {
        let v = Viewport::cylinder(0.7);
        assert_eq!((v.x0, v.x1, v.y0, v.y1), (0.0, 0.7, 0.0, TAU));
        let svg = cylinder(&[vec![(0.1, 1.0), (0.6, 6.0)]], 0.7, 0.3).unwrap();
        assert!(svg.contains(&format!("data-x-range=\"0 0.7\" data-y-range=\"0 {TAU}\"")));
        assert_eq!(v.map(0.0, TAU), (0.0, 0.0));
        let (sx, sy) = v.map(0.7, 0.0);
        assert!((sx - CANVAS).abs() < 1e-9 && (sy - v.height).abs() < 1e-9);
    }

    #[test]
    fn clipping_to_a_box() {
        let v = Viewport {
            x0: -1.0,
            x1: 1.0,
            y0: -1.0,
            y1: 1.0,
            height: CANVAS,
        };
        let diag = HalfPlane::new(
            -std::f64::consts::FRAC_PI_4,
            Complex64::new(0.0, 0.0),
            Sense::Ge,
        );
        let (a, b) = clip(&diag, v.edges().iter()).unwrap();
        let ends = [a, b];
        assert!(ends
            .iter()
            .any(|z| (z - Complex64::new(1.0, 1.0)).norm() < 1e-12));
        assert!(ends
            .iter()
            .any(|z| (z - Complex64::new(-1.0, -1.0)).norm() < 1e-12));

        let outside = HalfPlane::vertical(3.0, Sense::Ge);
        assert!(clip(&outside, v.edges().iter()).is_none());
    }

    #[test]
    fn atom_edges_are_segments() {
        let v = Viewport {
            x0: -1.0,
            x1: 1.0,
            y0: -1.0,
            y1: 1.0,
            height: CANVAS,
        };
        let mut plot = Plot::new(v, 0.3);
        plot.atoms(&[ConvexRegion::rectangle(0.0, 0.5, 0.0, 0.5)]);
        assert_eq!(plot.render().matches("<line").count(), 4);
    }
}
