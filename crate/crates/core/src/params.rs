//! Side-length tuples, their classification into parameter regions, the
//! boundary functions `b0`/`h0`, and dihedral canonical forms.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::solve::newton_bisect;
use crate::trig::{apex_with_dj, half_sinh};

/// Default relative width of the boundary bands used by [`classify`].
pub const DEFAULT_TOL: f64 = 1e-12;

/// Cyclically ordered side lengths `(d_0, …, d_{n−1})`, `n ≥ 3`, all positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SideLengths(Vec<f64>);

impl SideLengths {
    pub fn new(d: Vec<f64>) -> Result<Self> {
        if d.len() < 3 {
            return Err(Error::InvalidSides(format!(
                "need at least 3 sides, got {}",
                d.len()
            )));
        }
        if let Some(x) = d.iter().find(|x| !(**x > 0.0) || !x.is_finite()) {
            return Err(Error::InvalidSides(format!(
                "side lengths must be positive and finite, got {x}"
            )));
        }
        Ok(SideLengths(d))
    }

    pub fn from_slice(d: &[f64]) -> Result<Self> {
        Self::new(d.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Index of the largest side; ties go to the smallest index.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &x) in self.0.iter().enumerate() {
            if x > self.0[best] {
                best = i;
            }
        }
        best
    }

    pub fn max(&self) -> f64 {
        self.0[self.argmax()]
    }

    /// The other sides, in cyclic order starting after index `i`.
    pub fn rest_after(&self, i: usize) -> Vec<f64> {
        let n = self.len();
        (1..n).map(|k| self.0[(i + k) % n]).collect()
    }

    /// `σ^k`: `(d_k, …, d_{n−1}, d_0, …, d_{k−1})`.
    pub fn rotated(&self, k: usize) -> SideLengths {
        let n = self.len();
        SideLengths((0..n).map(|j| self.0[(j + k) % n]).collect())
    }

    /// `τ`: `(d_0, d_{n−1}, …, d_1)`.
    pub fn reflected(&self) -> SideLengths {
        let n = self.len();
        SideLengths((0..n).map(|j| self.0[(n - j) % n]).collect())
    }
}

impl std::ops::Index<usize> for SideLengths {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl TryFrom<Vec<f64>> for SideLengths {
    type Error = Error;
    fn try_from(d: Vec<f64>) -> Result<Self> {
        Self::new(d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolygonClass {
    NotRealizable,
    Horocyclic(usize),
    NonCentered(usize),
    BoundaryCentered(usize),
    Centered,
}

impl PolygonClass {
    /// Kebab-case tag without the index.
    pub fn tag(&self) -> &'static str {
        match self {
            PolygonClass::NotRealizable => "not-realizable",
            PolygonClass::Horocyclic(_) => "horocyclic",
            PolygonClass::NonCentered(_) => "non-centered",
            PolygonClass::BoundaryCentered(_) => "boundary-centered",
            PolygonClass::Centered => "centered",
        }
    }

    pub fn long_index(&self) -> Option<usize> {
        match *self {
            PolygonClass::Horocyclic(i)
            | PolygonClass::NonCentered(i)
            | PolygonClass::BoundaryCentered(i) => Some(i),
            _ => None,
        }
    }

    /// Realized by a polygon inscribed in a circle.
    pub fn is_cyclic(&self) -> bool {
        matches!(
            self,
            PolygonClass::Centered
                | PolygonClass::BoundaryCentered(_)
                | PolygonClass::NonCentered(_)
        )
    }

    pub fn in_centered_closure(&self) -> bool {
        matches!(
            self,
            PolygonClass::Centered | PolygonClass::BoundaryCentered(_)
        )
    }

    /// Rebuilds a class from its tag; indexed tags take the argmax of `d`.
    pub fn from_tag(tag: &str, d: &SideLengths) -> Result<Self> {
        let i = d.argmax();
        Ok(match tag {
            "not-realizable" => PolygonClass::NotRealizable,
            "horocyclic" => PolygonClass::Horocyclic(i),
            "non-centered" => PolygonClass::NonCentered(i),
            "boundary-centered" => PolygonClass::BoundaryCentered(i),
            "centered" => PolygonClass::Centered,
            _ => return Err(Error::Precondition(format!("unknown class tag {tag:?}"))),
        })
    }
}

impl fmt::Display for PolygonClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.long_index() {
            Some(i) => write!(f, "{}({i})", self.tag()),
            None => f.write_str(self.tag()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalForm {
    pub representative: SideLengths,
    pub rotation: usize,
    pub reflected: bool,
}

fn check_rest(rest: &[f64]) -> Result<()> {
    if rest.len() < 2 {
        return Err(Error::InvalidSides(format!(
            "need at least 2 remaining sides, got {}",
            rest.len()
        )));
    }
    if let Some(x) = rest.iter().find(|x| !(**x > 0.0) || !x.is_finite()) {
        return Err(Error::InvalidSides(format!(
            "side lengths must be positive and finite, got {x}"
        )));
    }
    Ok(())
}

/// `h0(rest) = 2 asinh(Σ sinh(d_i/2))`: the side length at which the polygon
/// becomes horocyclic.
pub fn h0(rest: &[f64]) -> Result<f64> {
    check_rest(rest)?;
    let sum: f64 = rest.iter().map(|&d| half_sinh(d)).sum();
    if sum.is_finite() && sum < 1e150 {
        return Ok(2.0 * sum.asinh());
    }
    // log-sum-exp of ln sinh(d/2) = d/2 + ln((1 - e^-d)/2)
    let logs: Vec<f64> = rest
        .iter()
        .map(|&d| 0.5 * d + (-(-d).exp_m1() / 2.0).ln())
        .collect();
    let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let l = m + logs.iter().map(|x| (x - m).exp()).sum::<f64>().ln();
    Ok(2.0 * (l + (1.0 + (1.0 + (-2.0 * l).exp()).sqrt()).ln()))
}

/// `b0(rest)`: the length of the long side when the circumcenter lies on it,
/// i.e. `J = b0/2` solves `Σ A_{d_i}(J) = π`.
pub fn b0(rest: &[f64]) -> Result<f64> {
    check_rest(rest)?;
    // solve in the excess g = J − max/2
    let m = rest.iter().cloned().fold(0.0, f64::max);
    let hi = 0.5 * h0(rest)? - 0.5 * m;
    let f = |g: f64| {
        let mut s = -PI;
        let mut ds = 0.0;
        for &d in rest {
            let (a, da) = apex_with_dj(d, 0.5 * (m - d) + g);
            s += a;
            ds += da;
        }
        (s, ds, PI)
    };
    Ok(m + 2.0 * newton_bisect(f, 0.0, hi, 1e-15)?.x)
}

/// Closed form for three sides: `sinh(B0/2) = √(s_1² + s_2²)`, equivalently
/// `cosh B0 = cosh d_1 + cosh d_2 − 1`.
pub fn b0_closed_n3(d1: f64, d2: f64) -> Result<f64> {
    check_rest(&[d1, d2])?;
    Ok(2.0 * half_sinh(d1).hypot(half_sinh(d2)).asinh())
}

/// Closed form for four sides: `x = sinh(B0/2)` is the positive root of
/// `x³ − (s_1² + s_2² + s_3²) x − 2 s_1 s_2 s_3 = 0`, taken from Cardano's
/// formula in its trigonometric (three real roots) form.
pub fn b0_closed_n4(d1: f64, d2: f64, d3: f64) -> Result<f64> {
    check_rest(&[d1, d2, d3])?;
    let s = [half_sinh(d1), half_sinh(d2), half_sinh(d3)];
    // scale out the largest entry to keep the cubic well-conditioned
    let m = s.iter().cloned().fold(0.0, f64::max);
    let u = [s[0] / m, s[1] / m, s[2] / m];
    let p = u.iter().map(|x| x * x).sum::<f64>();
    let q = 2.0 * u[0] * u[1] * u[2];
    let r = (p / 3.0).sqrt();
    let c = (q / (2.0 * r * r * r)).clamp(-1.0, 1.0);
    let mut x = 2.0 * r * (c.acos() / 3.0).cos();
    // one Newton polish on the cubic
    let g = x * x * x - p * x - q;
    let dg = 3.0 * x * x - p;
    if dg > 0.0 {
        x -= g / dg;
    }
    Ok(2.0 * (m * x).asinh())
}

/// Classifies `d` with boundary bands of width `tol · max(1, d_{i0})`.
pub fn classify(d: &SideLengths, tol: f64) -> Result<PolygonClass> {
    if !(tol >= 0.0) || !tol.is_finite() {
        return Err(Error::Precondition(format!(
            "tolerance must be finite and nonnegative, got {tol}"
        )));
    }
    let i0 = d.argmax();
    let long = d[i0];
    let rest = d.rest_after(i0);
    let band = tol * long.max(1.0);
    let h = h0(&rest)?;
    if long > h + band {
        return Ok(PolygonClass::NotRealizable);
    }
    if (long - h).abs() <= band {
        return Ok(PolygonClass::Horocyclic(i0));
    }
    let b = b0(&rest)?;
    if long < b - band {
        Ok(PolygonClass::Centered)
    } else if (long - b).abs() <= band {
        Ok(PolygonClass::BoundaryCentered(i0))
    } else {
        Ok(PolygonClass::NonCentered(i0))
    }
}

/// Inscribed in some circle (neither horocyclic nor unrealizable).
pub fn is_cyclic_realizable(d: &SideLengths) -> bool {
    classify(d, DEFAULT_TOL)
        .map(|c| c.is_cyclic())
        .unwrap_or(false)
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Lexicographically least tuple over the dihedral orbit. The returned
/// `rotation` and `reflected` satisfy
/// `representative = σ^rotation(τ^reflected(d))`.
pub fn canonicalize(d: &SideLengths) -> CanonicalForm {
    let mut best = CanonicalForm {
        representative: d.clone(),
        rotation: 0,
        reflected: false,
    };
    for reflected in [false, true] {
        let base = if reflected { d.reflected() } else { d.clone() };
        for k in 0..d.len() {
            let img = base.rotated(k);
            if lex_cmp(img.as_slice(), best.representative.as_slice()) == Ordering::Less {
                best = CanonicalForm {
                    representative: img,
                    rotation: k,
                    reflected,
                };
            }
        }
    }
    best
}

/// Whether `a` and `b` lie in the same dihedral orbit up to an absolute
/// tolerance on each length.
pub fn congruent(a: &SideLengths, b: &SideLengths, tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let ra = canonicalize(a).representative;
    let close = |x: &SideLengths| {
        x.as_slice()
            .iter()
            .zip(ra.as_slice())
            .all(|(p, q)| (p - q).abs() <= tol)
    };
    for base in [b.clone(), b.reflected()] {
        for k in 0..b.len() {
            if close(&base.rotated(k)) {
                return true;
            }
        }
    }
    false
}
