//! Isosceles-triangle functions and model metrics.
//!
//! An isosceles triangle with two legs of length `J` and base `d` has apex
//! angle `A_d(J)` and base angles `B_d(J)`. Everything downstream (radius,
//! angles, defects, embeddings) is assembled from these.

use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Absolute slack accepted below `J = d/2` before clamping.
pub const DOMAIN_SLACK: f64 = 1e-12;

/// `sinh(x)`, evaluated through `expm1` for tiny arguments.
pub fn sinh_small(x: f64) -> f64 {
    if x.abs() < 5e-5 {
        let e = x.exp_m1();
        e * (e + 2.0) / (2.0 * (e + 1.0))
    } else {
        x.sinh()
    }
}

/// `sinh(d/2)`.
#[inline]
pub fn half_sinh(d: f64) -> f64 {
    sinh_small(0.5 * d)
}

/// Validates `(d, J)` and returns the excess `J − d/2`, clamped to zero
/// within the slack.
fn check(d: f64, j: f64) -> Result<f64> {
    check_side(d)?;
    if !j.is_finite() {
        return Err(domain(format!("radius must be finite, got {j}")));
    }
    let half = 0.5 * d;
    if j < half {
        if j >= half - DOMAIN_SLACK * half.max(1.0) {
            return Ok(0.0);
        }
        return Err(domain(format!("radius {j} is below half the side {half}")));
    }
    Ok(j - half)
}

fn check_side(d: f64) -> Result<()> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(domain(format!(
            "side length must be positive and finite, got {d}"
        )));
    }
    Ok(())
}

/// `(sin(A/2), cos(A/2))` for base `d` and radius `d/2 + g`, using
/// `sin(A/2) = sinh(d/2)/sinh J` in a form that neither overflows nor
/// cancels when `g` is tiny.
fn apex_half(d: f64, g: f64) -> (f64, f64) {
    let b = 0.5 * d;
    let a = b + g;
    let den = -(-2.0 * a).exp_m1();
    let r = (-g).exp() * (-(-2.0 * b).exp_m1()) / den;
    let one_minus_r = -(-g).exp_m1() * (1.0 + (-(a + b)).exp()) / den;
    (r, (one_minus_r.max(0.0) * (1.0 + r)).sqrt())
}

/// Apex angle `A_d(J)` of the isosceles triangle with legs `J` and base `d`.
pub fn apex_angle(d: f64, j: f64) -> Result<f64> {
    let g = check(d, j)?;
    Ok(apex_angle_excess(d, g))
}

/// `A_d(d/2 + g)` for `g ≥ 0`.
pub fn apex_angle_excess(d: f64, g: f64) -> f64 {
    let (s, c) = apex_half(d, g);
    2.0 * s.atan2(c)
}

/// `tan(A_d(J)/2)`; infinite at `J = d/2`.
pub fn apex_half_tan(d: f64, j: f64) -> Result<f64> {
    let g = check(d, j)?;
    Ok(apex_half_tan_excess(d, g))
}

pub fn apex_half_tan_excess(d: f64, g: f64) -> f64 {
    let (s, c) = apex_half(d, g);
    if c == 0.0 {
        f64::INFINITY
    } else {
        s / c
    }
}

/// Base angle `B_d(J)`.
pub fn base_angle(d: f64, j: f64) -> Result<f64> {
    let g = check(d, j)?;
    Ok(base_angle_excess(d, g))
}

/// `B_d(d/2 + g)` for `g ≥ 0`.
pub fn base_angle_excess(d: f64, g: f64) -> f64 {
    let b = 0.5 * d;
    let j = b + g;
    let t = b.tanh();
    // tanh J − tanh b = sinh g / (cosh J cosh b), written without overflow
    let diff = 2.0 * (-2.0 * b).exp() * (-(-2.0 * g).exp_m1())
        / ((1.0 + (-2.0 * j).exp()) * (1.0 + (-2.0 * b).exp()));
    (diff * (j.tanh() + t)).sqrt().atan2(t)
}

/// `dA_d/dJ`, strictly negative for `J > d/2`.
pub fn apex_angle_dj(d: f64, j: f64) -> Result<f64> {
    check_side(d)?;
    if !j.is_finite() {
        return Err(domain("apex derivative needs a finite radius"));
    }
    if j <= 0.5 * d {
        return Err(domain(format!(
            "apex derivative diverges at J = d/2 (d = {d}, J = {j})"
        )));
    }
    let (_, da) = apex_with_dj(d, j - 0.5 * d);
    if !da.is_finite() {
        return Err(domain("apex derivative diverges at J = d/2"));
    }
    Ok(da)
}

/// `A_d(d/2 + g)` and its `J`-derivative; the derivative is `−inf` at `g = 0`.
pub(crate) fn apex_with_dj(d: f64, g: f64) -> (f64, f64) {
    let (s, c) = apex_half(d, g);
    let a = 2.0 * s.atan2(c);
    let da = if c > 0.0 {
        -2.0 * s / (c * (0.5 * d + g).tanh())
    } else {
        f64::NEG_INFINITY
    };
    (a, da)
}

/// `π − A_d(J) − 2 cosh R · B_d(J)`.
pub fn sector_defect(d: f64, j: f64, r: f64) -> Result<f64> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(domain(format!("R must be finite and nonnegative, got {r}")));
    }
    Ok(PI - apex_angle(d, j)? - 2.0 * r.cosh() * base_angle(d, j)?)
}

/// Limit of `B_d(J)` as `J → ∞`: `asin(1/cosh(d/2))`.
pub fn horocyclic_base_angle(d: f64) -> f64 {
    1f64.atan2(half_sinh(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Disk,
    Uhp,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Disk => "disk",
            Model::Uhp => "uhp",
        }
    }
}

impl std::str::FromStr for Model {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "disk" => Ok(Model::Disk),
            "uhp" | "upper-half-plane" => Ok(Model::Uhp),
            _ => Err(domain(format!("unknown model {s:?}"))),
        }
    }
}

/// A point of the hyperbolic plane in one of the two conformal models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
    pub model: Model,
}

impl HPoint {
    pub fn new(x: f64, y: f64, model: Model) -> Result<Self> {
        let p = HPoint { x, y, model };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.x.is_finite() || !self.y.is_finite() {
            return Err(domain("point coordinates must be finite"));
        }
        match self.model {
            Model::Disk if self.x.hypot(self.y) >= 1.0 => Err(domain(format!(
                "({}, {}) is not inside the unit disk",
                self.x, self.y
            ))),
            Model::Uhp if self.y <= 0.0 => Err(domain(format!(
                "({}, {}) is not in the upper half-plane",
                self.x, self.y
            ))),
            _ => Ok(()),
        }
    }
}

/// Hyperbolic distance, via `sinh(dist/2)` to stay accurate for close points.
pub fn model_distance(p: HPoint, q: HPoint) -> Result<f64> {
    if p.model != q.model {
        return Err(domain("points belong to different models"));
    }
    p.validate()?;
    q.validate()?;
    let u = (p.x - q.x).hypot(p.y - q.y);
    let half = match p.model {
        Model::Disk => {
            let np = p.x.hypot(p.y);
            let nq = q.x.hypot(q.y);
            let wp = (1.0 - np) * (1.0 + np);
            let wq = (1.0 - nq) * (1.0 + nq);
            u / (wp * wq).sqrt()
        }
        Model::Uhp => u / (2.0 * (p.y * q.y).sqrt()),
    };
    Ok(2.0 * half.asinh())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn apex_at_half_side_is_pi() {
        for d in [1e-9, 1e-3, 0.5, 1.0, 7.0, 100.0, 1000.0] {
            assert_eq!(apex_angle(d, d / 2.0).unwrap(), PI);
            assert_eq!(base_angle(d, d / 2.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn apex_vanishes_for_large_radius() {
        assert!(apex_angle(1.0, 50.0).unwrap() < 1e-10);
        assert!(apex_angle(1.0, 690.0).unwrap() > 0.0);
    }

    #[test]
    fn apex_d2_j2_matches_high_precision() {
        // mpmath at 50 digits: acos(1 - 2 sinh(1)^2 / sinh(2)^2)
        let a = apex_angle(2.0, 2.0).unwrap();
        assert!(close(a, 0.6599664042157994, 1e-15), "{a}");
        // same angle from the law of cosines in the (2, 2, 2) triangle
        let loc = ((2f64.cosh() * 2f64.cosh() - 2f64.cosh()) / (2f64.sinh() * 2f64.sinh())).acos();
        assert!(close(a, loc, 1e-13));
    }

    #[test]
    fn base_d2_j2_matches_high_precision() {
        // legs and base all equal 2, so base and apex angles coincide
        let b = base_angle(2.0, 2.0).unwrap();
        assert!(close(b, (1f64.tanh() / 2f64.tanh()).acos(), 1e-14));
        assert!(close(b, 0.6599664042157994, 1e-15), "{b}");
        let a = apex_angle(2.0, 2.0).unwrap();
        assert!(close(b.sin() * 2f64.sinh(), a.sin() * 2f64.sinh(), 1e-13));
    }

    #[test]
    fn clamps_within_slack_and_rejects_beyond() {
        assert_eq!(apex_angle(2.0, 1.0 - 1e-13).unwrap(), PI);
        assert!(apex_angle(2.0, 1.0 - 1e-9).is_err());
        assert!(apex_angle(0.0, 1.0).is_err());
        assert!(apex_angle(-1.0, 1.0).is_err());
        assert!(apex_angle(f64::NAN, 1.0).is_err());
        assert!(base_angle(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn derivative_matches_central_difference() {
        let h = 1e-6;
        let fd =
            (apex_angle(1.0, 1.0 + h).unwrap() - apex_angle(1.0, 1.0 - h).unwrap()) / (2.0 * h);
        let an = apex_angle_dj(1.0, 1.0).unwrap();
        assert!(((fd - an) / an).abs() < 1e-6, "{fd} {an}");
        // closed form value
        let s = 0.5f64.sinh();
        let want = -2.0 / 1f64.tanh() * s / (1f64.sinh().powi(2) - s * s).sqrt();
        assert!(close(an, want, 1e-14));
    }

    #[test]
    fn derivative_diverges_at_half_side() {
        let d = 1.0;
        let j = 0.5 + 1e-14 * 0.5f64.cosh();
        assert!(apex_angle_dj(d, j).unwrap().abs() > 1e6);
        assert!(apex_angle_dj(d, 0.5).is_err());
    }

    #[test]
    fn derivative_magnitude_decreases_in_radius() {
        for d in [0.01, 0.3, 1.0, 4.0, 30.0] {
            let mut prev = f64::INFINITY;
            for k in 1..400 {
                let j = d / 2.0 + 0.05 * k as f64;
                let v = apex_angle_dj(d, j).unwrap().abs();
                assert!(v < prev, "d={d} j={j}");
                prev = v;
            }
        }
    }

    #[test]
    fn sector_defect_cases() {
        for r in [0.0, 0.3, 2.0] {
            assert_eq!(sector_defect(3.0, 1.5, r).unwrap(), 0.0);
        }
        let (a, b) = (apex_angle(1.0, 0.9).unwrap(), base_angle(1.0, 0.9).unwrap());
        assert!(close(
            sector_defect(1.0, 0.9, 0.0).unwrap(),
            PI - a - 2.0 * b,
            1e-15
        ));
        assert!(sector_defect(1.0, 0.9, -0.1).is_err());
    }

    #[test]
    fn tiny_sides_keep_relative_accuracy() {
        let d = 1e-9;
        assert_eq!(half_sinh(d), 5e-10);
        // for J = d the triangle is equilateral-ish: A = 2 asin(sinh(d/2)/sinh(d))
        let a = apex_angle(d, d).unwrap();
        assert!(close(a, PI / 3.0, 1e-9));
    }

    #[test]
    fn large_radius_has_no_overflow() {
        for j in [300.0, 360.0, 500.0, 699.0] {
            let a = apex_angle(3.0, j).unwrap();
            let b = base_angle(3.0, j).unwrap();
            assert!(a > 0.0 && a.is_finite());
            assert!(close(b, horocyclic_base_angle(3.0), 1e-12));
            // A ~ 2 sinh(d/2) / sinh J ~ 4 sinh(d/2) exp(-J)
            let want = ((4.0 * 1.5f64.sinh()).ln() - j).exp();
            assert!(close(a, want, 1e-12));
        }
    }

    #[test]
    fn distances() {
        let o = HPoint::new(0.0, 0.0, Model::Disk).unwrap();
        for j in [1e-6, 0.5, 3.0, 8.0] {
            let p = HPoint::new((j / 2.0f64).tanh(), 0.0, Model::Disk).unwrap();
            assert!(close(model_distance(o, p).unwrap(), j, 1e-12));
        }
        for l in [1e-7, 0.2, 5.0, 1e4] {
            let a = HPoint::new(0.0, 1.0, Model::Uhp).unwrap();
            let b = HPoint::new(l, 1.0, Model::Uhp).unwrap();
            assert!(close(
                model_distance(a, b).unwrap(),
                2.0 * (l / 2.0).asinh(),
                1e-14
            ));
        }
        let p = HPoint::new(0.3, -0.2, Model::Disk).unwrap();
        assert_eq!(model_distance(p, p).unwrap(), 0.0);
        assert!(HPoint::new(1.0, 0.0, Model::Disk).is_err());
        assert!(HPoint::new(1.0, 0.0, Model::Uhp).is_err());
        assert!(model_distance(p, HPoint::new(0.0, 1.0, Model::Uhp).unwrap()).is_err());
    }
}
