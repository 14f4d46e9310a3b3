//! Safeguarded Newton iteration for monotone scalar equations.

use crate::error::{Error, Result};

pub(crate) const MAX_ITER: usize = 400;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Root {
    pub x: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Finds the root of `f` in `[lo, hi]`, where `f(lo)` and `f(hi)` have opposite
/// signs (or one is zero). `f` returns `(value, derivative, scale)`; iteration
/// stops once `|value| <= rtol * scale` or the bracket collapses to `xtol(x)`.
pub(crate) fn newton_bisect<F>(f: F, mut lo: f64, mut hi: f64, rtol: f64) -> Result<Root>
where
    F: Fn(f64) -> (f64, f64, f64),
{
    let (f_lo, _, _) = f(lo);
    if f_lo == 0.0 {
        return Ok(Root {
            x: lo,
            residual: 0.0,
            iterations: 0,
        });
    }
    let lo_positive = f_lo > 0.0;
    let xtol = |x: f64| 4.0 * f64::EPSILON * x.abs() + 1e-300;
    let mut x = 0.5 * (lo + hi);
    let mut best = Root {
        x,
        residual: f64::INFINITY,
        iterations: 0,
    };
    for it in 1..=MAX_ITER {
        let (v, dv, scale) = f(x);
        if v.abs() < best.residual.abs() || !best.residual.is_finite() {
            best = Root {
                x,
                residual: v,
                iterations: it,
            };
        }
        best.iterations = it;
        if v == 0.0 || v.abs() <= rtol * scale {
            return Ok(Root {
                x,
                residual: v,
                iterations: it,
            });
        }
        if (v > 0.0) == lo_positive {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= xtol(x) {
            return Ok(best);
        }
        let step = v / dv;
        let newton = x - step;
        x = if dv.is_finite() && dv != 0.0 && newton > lo && newton < hi {
            if step.abs() <= xtol(x) {
                // one last evaluation at the Newton point, then stop
                let (v2, _, _) = f(newton);
                let r = if v2.abs() <= v.abs() {
                    Root {
                        x: newton,
                        residual: v2,
                        iterations: it + 1,
                    }
                } else {
                    Root {
                        x,
                        residual: v,
                        iterations: it + 1,
                    }
                };
                return Ok(r);
            }
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(Error::NoConvergence(MAX_ITER))
}
