//! Circumradius of a cyclic polygon from its side lengths.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::params::{classify, PolygonClass, SideLengths, DEFAULT_TOL};
use crate::solve::newton_bisect;
use crate::trig::{apex_with_dj, half_sinh};

/// Radii beyond this are treated as numerically horocyclic.
pub const J_CAP: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equation {
    /// `Σ A_{d_i}(J) = 2π`
    CenteredSum,
    /// `A_{d_{i0}}(J) = Σ_{i≠i0} A_{d_i}(J)`
    NoncenteredBalance,
    /// `J = d_{i0}/2` on the boundary of the centered region.
    BoundaryExact,
}

impl Equation {
    pub fn as_str(self) -> &'static str {
        match self {
            Equation::CenteredSum => "centered-sum",
            Equation::NoncenteredBalance => "noncentered-balance",
            Equation::BoundaryExact => "boundary-exact",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusResult {
    pub j: f64,
    /// `J − max(d)/2`, carried separately because it can be far smaller
    /// than the spacing of floats near `J`.
    pub excess: f64,
    pub equation_used: Equation,
    pub residual: f64,
    pub iterations: usize,
    pub class: PolygonClass,
}

/// Signed residual of the defining equation at `J = max/2 + g` and its
/// derivative: the centered sum `Σ A − 2π`, or with `long` the balance
/// `A_long − Σ_{others} A`.
fn residual_fn(d: &[f64], long: Option<usize>, g: f64) -> (f64, f64, f64) {
    let m = d.iter().cloned().fold(0.0, f64::max);
    let mut s = 0.0;
    let mut ds = 0.0;
    let mut scale = 0.0;
    for (i, &x) in d.iter().enumerate() {
        let (a, da) = apex_with_dj(x, 0.5 * (m - x) + g);
        let sign = match long {
            Some(l) if l != i => -1.0,
            _ => 1.0,
        };
        s += sign * a;
        ds += sign * da;
        scale += a;
    }
    if long.is_none() {
        s -= 2.0 * PI;
    }
    (s, ds, scale.max(PI))
}

/// Residual of the defining equation at `J` (centered sum unless `long` is given).
pub fn equation_residual(d: &SideLengths, long: Option<usize>, j: f64) -> f64 {
    residual_fn(d.as_slice(), long, (j - 0.5 * d.max()).max(0.0)).0
}

pub fn radius(d: &SideLengths) -> Result<RadiusResult> {
    radius_with_tol(d, DEFAULT_TOL)
}

/// Circumradius, choosing the equation from the classification of `d`.
pub fn radius_with_tol(d: &SideLengths, tol: f64) -> Result<RadiusResult> {
    let class = classify(d, tol)?;
    radius_for_class(d, class)
}

pub(crate) fn radius_for_class(d: &SideLengths, class: PolygonClass) -> Result<RadiusResult> {
    let v = d.as_slice();
    let (long, equation) = match class {
        PolygonClass::NotRealizable => return Err(Error::NotRealizable),
        PolygonClass::Horocyclic(_) => return Err(Error::Horocyclic),
        PolygonClass::BoundaryCentered(i) => {
            return Ok(RadiusResult {
                j: 0.5 * v[i],
                excess: 0.0,
                equation_used: Equation::BoundaryExact,
                residual: residual_fn(v, None, 0.0).0,
                iterations: 0,
                class,
            });
        }
        PolygonClass::Centered => (None, Equation::CenteredSum),
        PolygonClass::NonCentered(i) => (Some(i), Equation::NoncenteredBalance),
    };
    let half = 0.5 * d.max();
    let f = |g: f64| residual_fn(v, long, g);
    let mut hi = 1.0;
    while f(hi).0 >= 0.0 {
        if half + hi >= J_CAP {
            return Err(Error::NumericallyHorocyclic(J_CAP));
        }
        hi = (2.0 * hi).min(J_CAP - half);
    }
    let root = newton_bisect(f, 0.0, hi, 1e-15)?;
    Ok(RadiusResult {
        j: half + root.x,
        excess: root.x,
        equation_used: equation,
        residual: root.residual,
        iterations: root.iterations,
        class,
    })
}

fn positive(ds: &[f64]) -> Result<()> {
    if ds.iter().all(|d| *d > 0.0 && d.is_finite()) {
        Ok(())
    } else {
        Err(domain("side lengths must be positive and finite"))
    }
}

/// Closed-form circumradius of a triangle:
/// `sinh J = 2 s0 s1 s2 / √((s0+s1+s2) Π(−s_i + Σ_{j≠i} s_j))`, `s_i = sinh(d_i/2)`.
pub fn radius_closed_tri(d0: f64, d1: f64, d2: f64) -> Result<f64> {
    positive(&[d0, d1, d2])?;
    let s = [half_sinh(d0), half_sinh(d1), half_sinh(d2)];
    let sum: f64 = s.iter().sum();
    let f: Vec<f64> = s.iter().map(|x| sum - 2.0 * x).collect();
    if f.iter().any(|x| *x <= 0.0) {
        return Err(domain(format!(
            "({d0}, {d1}, {d2}) is not a cyclic triangle"
        )));
    }
    let den = (sum * f[0] * f[1] * f[2]).sqrt();
    Ok((2.0 * s[0] * s[1] * s[2] / den).asinh())
}

/// Closed-form circumradius of a quadrilateral:
/// `sinh J = 2 √((s0s1+s2s3)(s0s2+s1s3)(s0s3+s1s2) / Π(−s_i + Σ_{j≠i} s_j))`.
pub fn radius_closed_quad(d0: f64, d1: f64, d2: f64, d3: f64) -> Result<f64> {
    positive(&[d0, d1, d2, d3])?;
    let s = [half_sinh(d0), half_sinh(d1), half_sinh(d2), half_sinh(d3)];
    let sum: f64 = s.iter().sum();
    let f: Vec<f64> = s.iter().map(|x| sum - 2.0 * x).collect();
    if f.iter().any(|x| *x <= 0.0) {
        return Err(domain(format!(
            "({d0}, {d1}, {d2}, {d3}) is not a cyclic quadrilateral"
        )));
    }
    let num =
        (s[0] * s[1] + s[2] * s[3]) * (s[0] * s[2] + s[1] * s[3]) * (s[0] * s[3] + s[1] * s[2]);
    let den = f[0] * f[1] * f[2] * f[3];
    Ok((2.0 * (num / den).sqrt()).asinh())
}

/// Closed-form radius for `n = 3` or `n = 4`.
pub fn radius_closed(d: &SideLengths) -> Result<f64> {
    let v = d.as_slice();
    match v.len() {
        3 => radius_closed_tri(v[0], v[1], v[2]),
        4 => radius_closed_quad(v[0], v[1], v[2], v[3]),
        n => Err(domain(format!("no closed form for n = {n}"))),
    }
}

/// Length of the diagonal of a cyclic quadrilateral that separates sides
/// `d0, d1` from `d2, d3`:
/// `sinh²(D/2) = (s2s3(s0²+s1²) + s0s1(s2²+s3²)) / (s2s3 + s0s1)`.
pub fn quad_diagonal(d0: f64, d1: f64, d2: f64, d3: f64) -> Result<f64> {
    positive(&[d0, d1, d2, d3])?;
    let s = [half_sinh(d0), half_sinh(d1), half_sinh(d2), half_sinh(d3)];
    let sum: f64 = s.iter().sum();
    if s.iter().any(|x| sum - 2.0 * x <= 0.0) {
        return Err(domain(format!(
            "({d0}, {d1}, {d2}, {d3}) is not a cyclic quadrilateral"
        )));
    }
    let (p, q) = (s[0] * s[1], s[2] * s[3]);
    let x2 = (q * (s[0] * s[0] + s[1] * s[1]) + p * (s[2] * s[2] + s[3] * s[3])) / (p + q);
    Ok(2.0 * x2.sqrt().asinh())
}

/// Circumradius of the regular `n`-gon with side `d`: `sinh J = sinh(d/2)/sin(π/n)`.
pub fn radius_regular(n: usize, d: f64) -> Result<f64> {
    if n < 3 {
        return Err(domain(format!("need n >= 3, got {n}")));
    }
    positive(&[d])?;
    Ok((half_sinh(d) / (PI / n as f64).sin()).asinh())
}
