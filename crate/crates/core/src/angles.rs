//! Central, base and vertex angles; the radius-`R` defect and its bounds.
//!
//! Side `γ_i` joins vertices `x_{i−1}` and `x_i`. With circumradius `J`,
//! `α_i = A_{d_i}(J)` is the central angle over `γ_i`, `β_i = B_{d_i}(J)` the
//! base angle of the isosceles triangle on `γ_i`, and `ν_i` the interior angle
//! at `x_i`. On the non-centered region the triangle over the long side lies
//! outside the polygon and enters every sum with a minus sign; `sign[i]`
//! records this.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::params::{classify, h0, PolygonClass, SideLengths, DEFAULT_TOL};
use crate::radius::radius_for_class;
use crate::trig::{
    apex_angle_excess, base_angle, base_angle_excess, half_sinh, horocyclic_base_angle,
};

#[derive(Debug, Clone, PartialEq)]
pub struct AngleData {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub nu: Vec<f64>,
    pub class: PolygonClass,
    /// Circumradius; `None` for horocyclic input.
    pub j: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FanMode {
    /// The polygon is the union of the triangles.
    InteriorUnion,
    /// Adding the triangle on the long side to the polygon gives the union of
    /// the others.
    ExteriorTriangle(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsoscelesFan {
    pub apex_angles: Vec<f64>,
    pub base_angles: Vec<f64>,
    pub j: f64,
    pub mode: FanMode,
}

/// A cyclic polygon solved for its radius and fan angles.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Solved {
    pub class: PolygonClass,
    pub j: f64,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub sign: Vec<f64>,
    /// `J − d_i/2` for each side.
    pub excess: Vec<f64>,
}

/// `−1` on the long side of a non-centered (or horocyclic) tuple, `+1` elsewhere.
pub(crate) fn signs(n: usize, class: PolygonClass) -> Vec<f64> {
    let mut s = vec![1.0; n];
    if let PolygonClass::NonCentered(i) | PolygonClass::Horocyclic(i) = class {
        s[i] = -1.0;
    }
    s
}

pub(crate) fn vertex_angles(beta: &[f64], sign: &[f64]) -> Vec<f64> {
    let n = beta.len();
    (0..n)
        .map(|i| {
            let k = (i + 1) % n;
            sign[i] * beta[i] + sign[k] * beta[k]
        })
        .collect()
}

pub(crate) fn solve_cyclic(d: &SideLengths, tol: f64) -> Result<Solved> {
    let class = classify(d, tol)?;
    solve_cyclic_class(d, class)
}

pub(crate) fn solve_cyclic_class(d: &SideLengths, class: PolygonClass) -> Result<Solved> {
    let r = radius_for_class(d, class)?;
    let m = d.max();
    let excess: Vec<f64> = d
        .as_slice()
        .iter()
        .map(|&x| 0.5 * (m - x) + r.excess)
        .collect();
    let alpha = d
        .as_slice()
        .iter()
        .zip(&excess)
        .map(|(&x, &g)| apex_angle_excess(x, g))
        .collect();
    let beta = d
        .as_slice()
        .iter()
        .zip(&excess)
        .map(|(&x, &g)| base_angle_excess(x, g))
        .collect();
    Ok(Solved {
        class,
        j: r.j,
        alpha,
        beta,
        sign: signs(d.len(), class),
        excess,
    })
}

pub fn angles(d: &SideLengths) -> Result<AngleData> {
    angles_with_tol(d, DEFAULT_TOL)
}

/// Angles of the polygon; horocyclic input gets the limiting values
/// `α_i = 0`, `β_i = asin(1/cosh(d_i/2))`.
pub fn angles_with_tol(d: &SideLengths, tol: f64) -> Result<AngleData> {
    let class = classify(d, tol)?;
    match class {
        PolygonClass::NotRealizable => Err(Error::NotRealizable),
        PolygonClass::Horocyclic(_) => {
            let beta: Vec<f64> = d
                .as_slice()
                .iter()
                .map(|&x| horocyclic_base_angle(x))
                .collect();
            let nu = vertex_angles(&beta, &signs(d.len(), class));
            Ok(AngleData {
                alpha: vec![0.0; d.len()],
                beta,
                nu,
                class,
                j: None,
            })
        }
        _ => {
            let s = solve_cyclic_class(d, class)?;
            let nu = vertex_angles(&s.beta, &s.sign);
            Ok(AngleData {
                alpha: s.alpha,
                beta: s.beta,
                nu,
                class,
                j: Some(s.j),
            })
        }
    }
}

/// Decomposition of a cyclic polygon into the isosceles triangles over its sides.
pub fn isosceles_fan(d: &SideLengths) -> Result<IsoscelesFan> {
    let class = classify(d, DEFAULT_TOL)?;
    match class {
        PolygonClass::NotRealizable => return Err(Error::NotRealizable),
        PolygonClass::Horocyclic(_) => return Err(Error::Horocyclic),
        _ => {}
    }
    let s = solve_cyclic_class(d, class)?;
    let mode = match class {
        PolygonClass::NonCentered(i) => FanMode::ExteriorTriangle(i),
        _ => FanMode::InteriorUnion,
    };
    Ok(IsoscelesFan {
        apex_angles: s.alpha,
        base_angles: s.beta,
        j: s.j,
        mode,
    })
}

fn check_r(r: f64) -> Result<()> {
    if r >= 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "R must be finite and nonnegative, got {r}"
        )))
    }
}

pub fn defect(d: &SideLengths, r: f64) -> Result<f64> {
    defect_with_tol(d, r, DEFAULT_TOL)
}

/// Radius-`R` defect `(n−2)π − cosh R · Σ ν_i`.
pub fn defect_with_tol(d: &SideLengths, r: f64, tol: f64) -> Result<f64> {
    check_r(r)?;
    let a = angles_with_tol(d, tol)?;
    Ok(defect_from_nu(&a.nu, r))
}

pub(crate) fn defect_from_nu(nu: &[f64], r: f64) -> f64 {
    (nu.len() as f64 - 2.0) * PI - r.cosh() * nu.iter().sum::<f64>()
}

/// The same defect assembled from the sector defects of the fan:
/// `Σ_i sign_i · D_R(d_i, J)`.
pub fn defect_sector_form(d: &SideLengths, r: f64) -> Result<f64> {
    check_r(r)?;
    let s = solve_cyclic(d, DEFAULT_TOL)?;
    let cr = r.cosh();
    let mut sum = 0.0;
    for i in 0..d.len() {
        sum += s.sign[i] * (PI - s.alpha[i] - 2.0 * cr * s.beta[i]);
    }
    Ok(sum)
}

/// Defect of the regular `n`-gon: `(n−2)π − 2n cosh R asin(cos(π/n)/cosh(d/2))`.
pub fn regular_defect(n: usize, d: f64, r: f64) -> Result<f64> {
    check_r(r)?;
    if n < 3 || !(d > 0.0) || !d.is_finite() {
        return Err(Error::Precondition("need n >= 3 and d > 0".into()));
    }
    let nf = n as f64;
    Ok((nf - 2.0) * PI - 2.0 * nf * r.cosh() * ((PI / nf).cos() / (0.5 * d).cosh()).asin())
}

/// Samples the piecewise-linear path `d_i(t) = clamp(m + t, d_i, d'_i)`,
/// `m = min d`, `t ∈ [0, max d' − m]`, at `steps + 1` evenly spaced points.
pub fn monotone_path(
    d: &SideLengths,
    d_end: &SideLengths,
    steps: usize,
) -> Result<Vec<SideLengths>> {
    let pre = |m: &str| Err(Error::Precondition(m.to_string()));
    if d.len() != d_end.len() {
        return pre("endpoints have different numbers of sides");
    }
    if steps == 0 {
        return pre("steps must be positive");
    }
    if d.argmax() != 0 {
        return pre("start tuple must have its largest side first");
    }
    if d.as_slice()
        .iter()
        .zip(d_end.as_slice())
        .any(|(a, b)| a > b)
    {
        return pre("end tuple must dominate the start tuple entrywise");
    }
    for x in [d, d_end] {
        if !classify(x, DEFAULT_TOL)?.in_centered_closure() {
            return pre("endpoints must lie in the closure of the centered region");
        }
    }
    let lo = d.as_slice().iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = d_end.max();
    let mut out = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let t = if k == steps {
            hi - lo
        } else {
            (hi - lo) * k as f64 / steps as f64
        };
        let v: Vec<f64> = d
            .as_slice()
            .iter()
            .zip(d_end.as_slice())
            .map(|(&a, &b)| (lo + t).clamp(a, b))
            .collect();
        out.push(SideLengths::new(v)?);
    }
    Ok(out)
}

/// Defect of the horocyclic polygon `(h0(lower), lower…)`, a lower bound for
/// every non-centered tuple whose other sides dominate `lower`.
pub fn defect_lower_bound_horocyclic(lower: &[f64], r: f64) -> Result<f64> {
    check_r(r)?;
    h0(lower)?;
    let n = lower.len() + 1;
    // sinh(h0/2) is exactly Σ sinh(d_i/2)
    let long = 1f64.atan2(lower.iter().map(|&x| half_sinh(x)).sum::<f64>());
    let others: f64 = lower.iter().map(|&x| horocyclic_base_angle(x)).sum();
    Ok((n as f64 - 2.0) * PI + 2.0 * r.cosh() * (long - others))
}

/// Minimizes the defect over boundary-centered triangles `(B0, d, d')` with
/// `d, d' ≥ d_min`; the minimum sits at `d = d_min`.
pub fn min_defect_bc3(b0: f64, d_min: f64, r: f64) -> Result<((f64, f64), f64)> {
    check_r(r)?;
    if !(b0 > 0.0 && d_min > 0.0) || !b0.is_finite() || !d_min.is_finite() {
        return Err(Error::Precondition("B0 and d_min must be positive".into()));
    }
    if r > 0.5 * d_min {
        return Err(Error::Precondition(format!(
            "R = {r} exceeds d_min/2 = {}",
            0.5 * d_min
        )));
    }
    // cosh x − 1 = 2 sinh²(x/2)
    let (sb, sm) = (half_sinh(b0), half_sinh(d_min));
    let gap = (sb - sm) * (sb + sm) - sm * sm;
    if gap < -1e-12 * sb * sb {
        return Err(Error::Precondition(format!(
            "cosh B0 must be at least 2 cosh d_min - 1 (B0 = {b0}, d_min = {d_min})"
        )));
    }
    let other = if gap <= 0.0 {
        d_min
    } else {
        2.0 * ((sb - sm) * (sb + sm)).sqrt().asinh()
    };
    let j = 0.5 * b0;
    let value = PI - 2.0 * r.cosh() * (base_angle(d_min, j)? + base_angle(other, j)?);
    Ok(((d_min, other), value))
}
