//! Explicit vertex coordinates in the Poincaré disk or the upper half-plane,
//! with JSON and SVG output.
//!
//! The circumcenter sits at the origin of the disk and `x_0` on the positive
//! real axis. Walking around the polygon, each side turns the polar angle by
//! its central angle, backwards over the long side of a non-centered polygon.
//! Half-plane coordinates are the image under `w = i(1+z)/(1−z)`, which sends
//! the center to `(0, 1)`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::angles::solve_cyclic;
use crate::error::{domain, Error, Result};
use crate::params::{h0, PolygonClass, SideLengths, DEFAULT_TOL};
use crate::trig::{half_sinh, model_distance, HPoint, Model};

#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub model: Model,
    pub sides: SideLengths,
    pub class: PolygonClass,
    /// `vertices[i] = γ_i ∩ γ_{i+1}`.
    pub vertices: Vec<HPoint>,
    pub center: Option<HPoint>,
    pub j: Option<f64>,
}

impl Embedding {
    /// Distances between consecutive vertices, indexed like the sides.
    pub fn side_lengths(&self) -> Result<Vec<f64>> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| model_distance(self.vertices[(i + n - 1) % n], self.vertices[i]))
            .collect()
    }
}

pub fn embed_cyclic(d: &SideLengths, model: Model) -> Result<Embedding> {
    embed_cyclic_with_tol(d, model, DEFAULT_TOL)
}

pub fn embed_cyclic_with_tol(d: &SideLengths, model: Model, tol: f64) -> Result<Embedding> {
    let s = solve_cyclic(d, tol)?;
    let rho = (0.5 * s.j).tanh();
    // 1 − ρ and 1 − ρ² without cancellation
    let one_minus = 2.0 / (s.j.exp() + 1.0);
    let one_minus_sq = 1.0 / (0.5 * s.j).cosh().powi(2);
    let mut theta = 0.0;
    let mut vertices = Vec::with_capacity(d.len());
    for i in 0..d.len() {
        if i > 0 {
            theta += s.sign[i] * s.alpha[i];
        }
        let (sin, cos) = theta.sin_cos();
        let p = match model {
            Model::Disk => HPoint {
                x: rho * cos,
                y: rho * sin,
                model,
            },
            Model::Uhp => {
                let half = (0.5 * theta).sin();
                let den = one_minus * one_minus + 4.0 * rho * half * half;
                HPoint {
                    x: -2.0 * rho * sin / den,
                    y: one_minus_sq / den,
                    model,
                }
            }
        };
        vertices.push(p);
    }
    let center = match model {
        Model::Disk => HPoint {
            x: 0.0,
            y: 0.0,
            model,
        },
        Model::Uhp => HPoint {
            x: 0.0,
            y: 1.0,
            model,
        },
    };
    Ok(Embedding {
        model,
        sides: d.clone(),
        class: s.class,
        vertices,
        center: Some(center),
        j: Some(s.j),
    })
}

/// Horocyclic polygon with sides `(h0(rest), rest…)` on the horocycle `y = 1`:
/// `x_0 = (0, 1)` and consecutive vertices `2 sinh(d_i/2)` apart.
pub fn embed_horocyclic(rest: &[f64]) -> Result<Embedding> {
    let long = h0(rest)?;
    let mut sides = vec![long];
    sides.extend_from_slice(rest);
    let mut x = 0.0;
    let mut vertices = vec![HPoint {
        x,
        y: 1.0,
        model: Model::Uhp,
    }];
    for &d in rest {
        x += 2.0 * half_sinh(d);
        vertices.push(HPoint {
            x,
            y: 1.0,
            model: Model::Uhp,
        });
    }
    Ok(Embedding {
        model: Model::Uhp,
        sides: SideLengths::new(sides)?,
        class: PolygonClass::Horocyclic(0),
        vertices,
        center: None,
        j: None,
    })
}

#[derive(Serialize, Deserialize)]
struct EmbeddingJson {
    model: Model,
    sides: Vec<f64>,
    class: String,
    radius: Option<f64>,
    center: Option<[f64; 2]>,
    vertices: Vec<[f64; 2]>,
}

pub fn to_json(e: &Embedding) -> String {
    let raw = EmbeddingJson {
        model: e.model,
        sides: e.sides.as_slice().to_vec(),
        class: e.class.tag().to_string(),
        radius: e.j,
        center: e.center.map(|c| [c.x, c.y]),
        vertices: e.vertices.iter().map(|p| [p.x, p.y]).collect(),
    };
    serde_json::to_string(&raw).expect("embedding serializes")
}

pub fn from_json(s: &str) -> Result<Embedding> {
    let raw: EmbeddingJson = serde_json::from_str(s)
        .map_err(|e| Error::Precondition(format!("bad embedding json: {e}")))?;
    let sides = SideLengths::new(raw.sides)?;
    let class = PolygonClass::from_tag(&raw.class, &sides)?;
    let pt = |p: [f64; 2]| HPoint::new(p[0], p[1], raw.model);
    let vertices = raw
        .vertices
        .into_iter()
        .map(pt)
        .collect::<Result<Vec<_>>>()?;
    if vertices.len() != sides.len() {
        return Err(domain("vertex count differs from side count"));
    }
    Ok(Embedding {
        model: raw.model,
        sides,
        class,
        vertices,
        center: raw.center.map(pt).transpose()?,
        j: raw.radius,
    })
}

/// A geodesic edge in model coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Segment {
    Line {
        from: (f64, f64),
        to: (f64, f64),
    },
    /// Arc of the circle about `center`; `ccw` when it runs counterclockwise
    /// from `from` to `to`. Arcs are always shorter than a half circle.
    Arc {
        from: (f64, f64),
        to: (f64, f64),
        center: (f64, f64),
        radius: f64,
        ccw: bool,
    },
}

fn cross(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

/// Geodesic through two model points.
pub fn geodesic(p: HPoint, q: HPoint) -> Segment {
    let (a, b) = ((p.x, p.y), (q.x, q.y));
    let center = match p.model {
        Model::Disk => {
            // orthogonal circle: c·p = (|p|² + 1)/2, c·q = (|q|² + 1)/2
            let det = cross(a, b);
            let scale = (a.0.hypot(a.1) * b.0.hypot(b.1)).max(f64::MIN_POSITIVE);
            if det.abs() <= 1e-12 * scale {
                return Segment::Line { from: a, to: b };
            }
            let (ra, rb) = (
                0.5 * (a.0 * a.0 + a.1 * a.1 + 1.0),
                0.5 * (b.0 * b.0 + b.1 * b.1 + 1.0),
            );
            ((ra * b.1 - rb * a.1) / det, (a.0 * rb - b.0 * ra) / det)
        }
        Model::Uhp => {
            let dx = b.0 - a.0;
            if dx.abs() <= 1e-12 * (a.0.abs() + b.0.abs() + a.1 + b.1) {
                return Segment::Line { from: a, to: b };
            }
            (
                (b.0 * b.0 + b.1 * b.1 - a.0 * a.0 - a.1 * a.1) / (2.0 * dx),
                0.0,
            )
        }
    };
    let radius = (a.0 - center.0).hypot(a.1 - center.1);
    let ccw = cross(
        (a.0 - center.0, a.1 - center.1),
        (b.0 - center.0, b.1 - center.1),
    ) > 0.0;
    Segment::Arc {
        from: a,
        to: b,
        center,
        radius,
        ccw,
    }
}

/// Edges of the polygon, edge `i` running from `x_{i−1}` to `x_i`.
pub fn geodesic_segments(e: &Embedding) -> Vec<Segment> {
    let n = e.vertices.len();
    (0..n)
        .map(|i| geodesic(e.vertices[(i + n - 1) % n], e.vertices[i]))
        .collect()
}

const SIZE: f64 = 800.0;
const MARGIN: f64 = 20.0;

struct View {
    x0: f64,
    y0: f64,
    scale: f64,
}

impl View {
    fn map(&self, p: (f64, f64)) -> (f64, f64) {
        (
            MARGIN + (p.0 - self.x0) * self.scale,
            SIZE - MARGIN - (p.1 - self.y0) * self.scale,
        )
    }
}

pub fn to_svg(e: &Embedding) -> String {
    let segs = geodesic_segments(e);
    let view = match e.model {
        Model::Disk => View {
            x0: -1.0,
            y0: -1.0,
            scale: (SIZE - 2.0 * MARGIN) / 2.0,
        },
        Model::Uhp => {
            let xs = e.vertices.iter().map(|p| p.x);
            let mut lo = xs.clone().fold(f64::INFINITY, f64::min);
            let mut hi = xs.fold(f64::NEG_INFINITY, f64::max);
            let mut top = e.vertices.iter().map(|p| p.y).fold(0.0, f64::max);
            for s in &segs {
                if let Segment::Arc { center, radius, .. } = s {
                    top = top.max(*radius);
                    lo = lo.min(center.0 - radius);
                    hi = hi.max(center.0 + radius);
                }
            }
            let span = (hi - lo).max(top).max(1e-9) * 1.1;
            let mid = 0.5 * (lo + hi);
            View {
                x0: mid - 0.5 * span,
                y0: 0.0,
                scale: (SIZE - 2.0 * MARGIN) / span,
            }
        }
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800">"#
    );
    match e.model {
        Model::Disk => {
            let (cx, cy) = view.map((0.0, 0.0));
            let _ = writeln!(
                out,
                r#"<circle class="boundary" cx="{cx:.6}" cy="{cy:.6}" r="{:.6}" fill="none" stroke="gray"/>"#,
                view.scale
            );
        }
        Model::Uhp => {
            let (_, y) = view.map((0.0, 0.0));
            let _ = writeln!(
                out,
                r#"<line class="boundary" x1="0" y1="{y:.6}" x2="800" y2="{y:.6}" stroke="gray"/>"#
            );
            if matches!(e.class, PolygonClass::Horocyclic(_)) {
                let (_, y) = view.map((0.0, 1.0));
                let _ = writeln!(
                    out,
                    r#"<line class="horocycle" x1="0" y1="{y:.6}" x2="800" y2="{y:.6}" stroke="gray" stroke-dasharray="6 4"/>"#
                );
            }
        }
    }
    let mut path = String::new();
    for (k, s) in segs.iter().enumerate() {
        let (from, to) = match *s {
            Segment::Line { from, to } | Segment::Arc { from, to, .. } => {
                (view.map(from), view.map(to))
            }
        };
        if k == 0 {
            let _ = write!(path, "M {:.6} {:.6} ", from.0, from.1);
        }
        match *s {
            Segment::Line { .. } => {
                let _ = write!(path, "L {:.6} {:.6} ", to.0, to.1);
            }
            Segment::Arc { radius, ccw, .. } => {
                // the y flip turns counterclockwise into SVG's positive sweep
                let r = radius * view.scale;
                let _ = write!(
                    path,
                    "A {r:.6} {r:.6} 0 0 {} {:.6} {:.6} ",
                    u8::from(ccw),
                    to.0,
                    to.1
                );
            }
        }
    }
    let _ = writeln!(
        out,
        r#"<path class="polygon" d="{}Z" fill="none" stroke="black" stroke-width="1.5"/>"#,
        path
    );
    if let Some(c) = e.center {
        let (cx, cy) = view.map((c.x, c.y));
        let _ = writeln!(
            out,
            r#"<circle class="center" cx="{cx:.6}" cy="{cy:.6}" r="2" fill="none" stroke="red"/>"#
        );
    }
    out.push_str("</svg>\n");
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Svg,
}

pub fn emit(e: &Embedding, format: Format) -> Vec<u8> {
    match format {
        Format::Json => to_json(e).into_bytes(),
        Format::Svg => to_svg(e).into_bytes(),
    }
}
