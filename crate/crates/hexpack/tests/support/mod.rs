//! Test-only oracles, written with plain complex arithmetic so that they share
//! no code path with the library they check.

#![allow(dead_code)]

use hexpack_core::{Complex, ExtComplex, MoebiusMap, OrientedCircle};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

pub fn finite(p: ExtComplex) -> Complex {
    p.finite().expect("finite point expected")
}

/// `(a-b)(c-d) / ((b-c)(d-a))`.
pub fn cross_ratio(a: Complex, b: Complex, cc: Complex, d: Complex) -> Complex {
    (a - b) * (cc - d) / ((b - cc) * (d - a))
}

/// `(z1-z2)(z3-z4)(z5-z6) / ((z2-z3)(z4-z5)(z6-z1))`.
pub fn multi_ratio(z: &[Complex; 6]) -> Complex {
    (z[0] - z[1]) * (z[2] - z[3]) * (z[4] - z[5]) / ((z[1] - z[2]) * (z[3] - z[4]) * (z[5] - z[0]))
}

pub fn mobius(m: &MoebiusMap, z: Complex) -> Complex {
    let [[a, b], [cc, d]] = m.matrix();
    (a * z + b) / (cc * z + d)
}

/// Touch point of two tangent circles, from centers and radii only.
pub fn tangency(c1: Complex, r1: f64, c2: Complex, r2: f64) -> Complex {
    let d = c2 - c1;
    let u = d / d.norm();
    let external = (d.norm() - (r1 + r2)).abs();
    let internal = (d.norm() - (r1 - r2).abs()).abs();
    if external <= internal || r1 > r2 {
        c1 + u * r1
    } else {
        c1 - u * r1
    }
}

pub fn center_radius(circle: &OrientedCircle) -> (Complex, f64) {
    circle.center_radius().expect("circle, not a line")
}

/// Whether four points are concyclic: the imaginary part of their cross-ratio,
/// relative to its size.
pub fn concyclic_defect(a: Complex, b: Complex, cc: Complex, d: Complex) -> f64 {
    let q = cross_ratio(a, b, cc, d);
    q.im.abs() / q.norm().max(1.0)
}

/// A Möbius map with bounded entries and `|det| >= 0.3`.
pub fn random_map(rng: &mut ChaCha8Rng) -> MoebiusMap {
    loop {
        let e: [Complex; 4] = core::array::from_fn(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)));
        if (e[0] * e[3] - e[1] * e[2]).norm() >= 0.3 {
            return MoebiusMap::new(e[0], e[1], e[2], e[3]).unwrap();
        }
    }
}

/// Six points on the real line plus infinity, with gaps `1, d1, d2, d2/d1`,
/// which is the closing condition `|m + 1| = 0`.
pub fn line_flower_points(rng: &mut ChaCha8Rng) -> [f64; 5] {
    let d1 = (rng.gen_range(-1.2f64..1.2)).exp();
    let d2 = (rng.gen_range(-1.2f64..1.2)).exp();
    let d3 = d2 / d1;
    [0.0, 1.0, 1.0 + d1, 1.0 + d1 + d2, 1.0 + d1 + d2 + d3]
}

/// Image of line points (and infinity) under a map whose pole keeps away from
/// all of them, so every image is finite and well separated.
pub fn place(rng: &mut ChaCha8Rng, x: &[f64; 5]) -> [ExtComplex; 6] {
    loop {
        let m = random_map(rng);
        let pts: Vec<ExtComplex> =
            x.iter().map(|&t| ExtComplex::from(t)).chain(core::iter::once(ExtComplex::Infinity)).map(|p| m.apply(p)).collect();
        let ok = pts.iter().all(|p| p.finite().is_some_and(|z| z.norm() < 20.0))
            && (0..6).all(|k| pts[k].chordal_distance(&pts[(k + 1) % 6]) > 1e-3);
        if ok {
            return [pts[0], pts[1], pts[2], pts[3], pts[4], pts[5]];
        }
    }
}

/// Random valid touching points in general position.
pub fn random_flower_points(rng: &mut ChaCha8Rng) -> [ExtComplex; 6] {
    let x = line_flower_points(rng);
    place(rng, &x)
}

/// Touching points still in cyclic order, but with one point moved along the
/// circle so that `|m + 1|` exceeds `0.01`.
pub fn random_perturbed_points(rng: &mut ChaCha8Rng) -> [ExtComplex; 6] {
    loop {
        let mut x = line_flower_points(rng);
        let k = rng.gen_range(2..5);
        let room = if k == 4 { 1.0 } else { x[k + 1] - x[k] };
        let back = x[k] - x[k - 1];
        x[k] += rng.gen_range(-0.45 * back..0.45 * room);
        let z = [x[0], x[1], x[2], x[3], x[4]].map(|t| c(t, 0.0));
        // The sixth point is infinity, so drop the factors containing it.
        let m = (z[0] - z[1]) * (z[2] - z[3]) / ((z[1] - z[2]) * (z[3] - z[4])) * c(-1.0, 0.0);
        if (m + 1.0).norm() > 0.02 {
            return place(rng, &x);
        }
    }
}

/// `ψ'' = z ψ` along the ray from `0` to `z`, by the Dormand–Prince 5(4) pair
/// with error control, starting from tabulated `Ai(0)` and `Ai'(0)`.
pub fn airy_ode(z: Complex, tol: f64) -> (Complex, Complex) {
    const AI0: f64 = 0.355_028_053_887_817_239;
    const AIP0: f64 = -0.258_819_403_792_806_798;
    let len = z.norm();
    if len == 0.0 {
        return (c(AI0, 0.0), c(AIP0, 0.0));
    }
    let u = z / len;
    // y = (ψ(t u), ψ'(t u)); d/dt y = (u ψ', u (t u) ψ).
    let rhs = |t: f64, y: [Complex; 2]| -> [Complex; 2] { [u * y[1], u * (u * t) * y[0]] };

    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
        [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
        [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
    ];
    const CS: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
    const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
    const B4: [f64; 7] =
        [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

    let mut t = 0.0;
    let mut y = [c(AI0, 0.0), c(AIP0, 0.0)];
    let mut h: f64 = 1e-3;
    while t < len {
        h = h.min(len - t);
        let mut k = [[c(0.0, 0.0); 2]; 7];
        k[0] = rhs(t, y);
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                for i in 0..2 {
                    ys[i] += kj[i] * (h * A[s - 1][j]);
                }
            }
            k[s] = rhs(t + CS[s] * h, ys);
        }
        let mut y5 = y;
        let mut err = 0.0f64;
        for i in 0..2 {
            let mut e = c(0.0, 0.0);
            for s in 0..7 {
                y5[i] += k[s][i] * (h * B5[s]);
                e += k[s][i] * (h * (B5[s] - B4[s]));
            }
            err = err.max(e.norm() / y5[i].norm().max(1.0));
        }
        if err <= tol {
            t += h;
            y = y5;
        }
        let factor = if err == 0.0 { 4.0 } else { (0.9 * (tol / err).powf(0.2)).clamp(0.2, 4.0) };
        h *= factor;
    }
    (y[0], y[1])
}

pub mod golden;
