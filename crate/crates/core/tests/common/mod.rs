#![allow(dead_code)]

use std::f64::consts::PI;

use hypcyc::{b0, classify, h0, model_distance, Embedding, PolygonClass, SideLengths, DEFAULT_TOL};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn sides(v: &[f64]) -> SideLengths {
    SideLengths::from_slice(v).unwrap()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

pub fn rest(rng: &mut StdRng, m: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..m).map(|_| rng.gen_range(lo..hi)).collect()
}

/// Independent sides uniform in `[lo, hi)`, rejected until cyclic-realizable.
pub fn iid_cyclic(rng: &mut StdRng, n: usize, lo: f64, hi: f64) -> SideLengths {
    loop {
        let d = sides(&rest(rng, n, lo, hi));
        if classify(&d, DEFAULT_TOL).unwrap().is_cyclic() {
            return d;
        }
    }
}

/// Randomly rotated and possibly reflected copy.
pub fn shuffle_dihedral(rng: &mut StdRng, d: &SideLengths) -> SideLengths {
    let k = rng.gen_range(0..d.len());
    let d = if rng.gen_bool(0.5) {
        d.reflected()
    } else {
        d.clone()
    };
    d.rotated(k)
}

/// `(d0, rest…)` with `d0` a fraction `t` of the way from `max(rest)` to `b0(rest)`.
pub fn centered_on_ray(rest: &[f64], t: f64) -> SideLengths {
    let m = rest.iter().cloned().fold(0.0, f64::max);
    let mut v = vec![m + t * (b0(rest).unwrap() - m)];
    v.extend_from_slice(rest);
    sides(&v)
}

/// `(d0, rest…)` with `d0` a fraction `t` of the way from `b0(rest)` to `h0(rest)`.
pub fn noncentered_on_ray(rest: &[f64], t: f64) -> SideLengths {
    let (b, h) = (b0(rest).unwrap(), h0(rest).unwrap());
    let mut v = vec![b + t * (h - b)];
    v.extend_from_slice(rest);
    sides(&v)
}

pub fn random_centered(rng: &mut StdRng, n: usize, lo: f64, hi: f64) -> SideLengths {
    loop {
        let r = rest(rng, n - 1, lo, hi);
        let t = rng.gen_range(0.0..1.0);
        let d = centered_on_ray(&r, t);
        if classify(&d, DEFAULT_TOL).unwrap() == PolygonClass::Centered {
            return shuffle_dihedral(rng, &d);
        }
    }
}

pub fn random_noncentered(rng: &mut StdRng, n: usize, lo: f64, hi: f64) -> SideLengths {
    loop {
        let r = rest(rng, n - 1, lo, hi);
        let t = rng.gen_range(0.0..1.0);
        let d = noncentered_on_ray(&r, t);
        if matches!(
            classify(&d, DEFAULT_TOL).unwrap(),
            PolygonClass::NonCentered(_)
        ) {
            return shuffle_dihedral(rng, &d);
        }
    }
}

pub fn permuted(rng: &mut StdRng, d: &SideLengths) -> SideLengths {
    let mut v = d.as_slice().to_vec();
    v.shuffle(rng);
    sides(&v)
}

/// Interior angle opposite `a` in the hyperbolic triangle with sides `a, b, c`,
/// from the half-angle form of the law of cosines.
pub fn triangle_angle(a: f64, b: f64, c: f64) -> f64 {
    let s = 0.5 * (a + b + c);
    let num = (s - b).sinh() * (s - c).sinh();
    let den = s.sinh() * (s - a).sinh();
    2.0 * (num / den).max(0.0).sqrt().atan()
}

pub fn triangle_area(a: f64, b: f64, c: f64) -> f64 {
    PI - triangle_angle(a, b, c) - triangle_angle(b, c, a) - triangle_angle(c, a, b)
}

/// Area of a convex embedded polygon from a fan of triangles at `x_0`, using
/// only model distances between vertices.
pub fn fan_area(e: &Embedding) -> f64 {
    let v = &e.vertices;
    let dist = |i: usize, k: usize| model_distance(v[i], v[k]).unwrap();
    (1..v.len() - 1)
        .map(|i| triangle_area(dist(i, i + 1), dist(0, i + 1), dist(0, i)))
        .sum()
}
