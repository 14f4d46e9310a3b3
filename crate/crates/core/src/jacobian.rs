//! Analytic partial derivatives with respect to the side lengths.

use crate::angles::solve_cyclic_class;
use crate::error::{Error, Result};
use crate::params::{classify, PolygonClass, SideLengths, DEFAULT_TOL};
use crate::trig::apex_half_tan_excess;

/// The two one-sided derivative rows of `α_{i0}` and `β_{i0}` on the boundary
/// of the centered region. They are negatives of each other.
#[derive(Debug, Clone, PartialEq)]
pub struct OneSided {
    pub long_index: usize,
    pub d_alpha_centered: Vec<f64>,
    pub d_alpha_noncentered: Vec<f64>,
    pub d_beta_centered: Vec<f64>,
    pub d_beta_noncentered: Vec<f64>,
}

/// Partials with respect to `d_j`: `d_alpha[i][j] = ∂α_i/∂d_j`, and so on.
/// On the boundary the matrices hold the centered-side values and
/// `one_sided` carries both sides of the long-side rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Jacobian {
    pub class: PolygonClass,
    pub j: f64,
    pub r: f64,
    pub d_j: Vec<f64>,
    pub d_alpha: Vec<Vec<f64>>,
    pub d_beta: Vec<Vec<f64>>,
    pub d_nu: Vec<Vec<f64>>,
    pub d_defect: Vec<f64>,
    pub one_sided: Option<OneSided>,
}

pub fn jacobian(d: &SideLengths, r: f64) -> Result<Jacobian> {
    jacobian_with_tol(d, r, DEFAULT_TOL)
}

fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

/// `√(1/cosh²(d/2) − 1/cosh²J)` with `J = d/2 + g`, from
/// `sech² b − sech² J = sinh g · (tanh J + tanh b) / (cosh J cosh b)`.
fn beta_diag(d: f64, g: f64) -> f64 {
    let b = 0.5 * d;
    let j = b + g;
    (g.sinh() / j.cosh() / b.cosh() * (j.tanh() + b.tanh())).sqrt()
}

pub fn jacobian_with_tol(d: &SideLengths, r: f64, tol: f64) -> Result<Jacobian> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::Precondition(format!(
            "R must be finite and nonnegative, got {r}"
        )));
    }
    let class = classify(d, tol)?;
    match class {
        PolygonClass::NotRealizable => return Err(Error::NotRealizable),
        PolygonClass::Horocyclic(_) => return Err(Error::Horocyclic),
        _ => {}
    }
    let s = solve_cyclic_class(d, class)?;
    let v = d.as_slice();
    let n = v.len();
    let j = s.j;
    let coth_j = coth(j);
    let mut d_j = vec![0.0; n];
    let mut d_alpha = vec![vec![0.0; n]; n];
    let mut one_sided = None;

    match class {
        PolygonClass::BoundaryCentered(i0) => {
            d_j[i0] = 0.5;
            let mut t = vec![0.0; n];
            for k in 0..n {
                if k != i0 {
                    t[k] = apex_half_tan_excess(v[k], s.excess[k]);
                }
            }
            for a in 0..n {
                if a == i0 {
                    continue;
                }
                d_alpha[a][a] = t[a] * coth(0.5 * v[a]);
                d_alpha[a][i0] = -t[a] * coth_j;
            }
            let centered: Vec<f64> = (0..n)
                .map(|k| {
                    -(0..n)
                        .filter(|&a| a != i0)
                        .map(|a| d_alpha[a][k])
                        .sum::<f64>()
                })
                .collect();
            let noncentered: Vec<f64> = centered.iter().map(|x| -x).collect();
            d_alpha[i0] = centered.clone();
            let ch = 2.0 * j.cosh();
            one_sided = Some(OneSided {
                long_index: i0,
                d_beta_centered: centered.iter().map(|x| -x / ch).collect(),
                d_beta_noncentered: noncentered.iter().map(|x| -x / ch).collect(),
                d_alpha_centered: centered,
                d_alpha_noncentered: noncentered,
            });
        }
        _ => {
            let t: Vec<f64> = (0..n)
                .map(|k| apex_half_tan_excess(v[k], s.excess[k]))
                .collect();
            let den = 2.0 * (0..n).map(|i| s.sign[i] * t[i]).sum::<f64>();
            let th = j.tanh();
            for k in 0..n {
                d_j[k] = s.sign[k] * coth(0.5 * v[k]) * th * t[k] / den;
            }
            for a in 0..n {
                for k in 0..n {
                    let diag = if a == k { coth(0.5 * v[a]) } else { 0.0 };
                    d_alpha[a][k] = t[a] * (diag - 2.0 * coth_j * d_j[k]);
                }
            }
            // tan(α/2) blows up on the longest side near the boundary, so take
            // that row from the differentiated angle sum instead
            let i0 = d.argmax();
            for k in 0..n {
                let rest: f64 = (0..n)
                    .filter(|&a| a != i0)
                    .map(|a| s.sign[a] * d_alpha[a][k])
                    .sum();
                d_alpha[i0][k] = -s.sign[i0] * rest;
            }
        }
    }

    let ch = 2.0 * j.cosh();
    let mut d_beta = vec![vec![0.0; n]; n];
    for a in 0..n {
        for k in 0..n {
            d_beta[a][k] = -d_alpha[a][k] / ch;
        }
        d_beta[a][a] -= 0.5 * beta_diag(v[a], s.excess[a]);
    }
    let sign = &s.sign;
    let mut d_nu = vec![vec![0.0; n]; n];
    for a in 0..n {
        let b = (a + 1) % n;
        for k in 0..n {
            d_nu[a][k] = sign[a] * d_beta[a][k] + sign[b] * d_beta[b][k];
        }
    }
    let cr = r.cosh();
    let d_defect = (0..n)
        .map(|k| sign[k] * cr * beta_diag(v[k], s.excess[k]))
        .collect();
    Ok(Jacobian {
        class,
        j,
        r,
        d_j,
        d_alpha,
        d_beta,
        d_nu,
        d_defect,
        one_sided,
    })
}
