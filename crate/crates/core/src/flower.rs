//! Hexagonal flowers: a center circle with a closed chain of six petals.
//!
//! Indices are zero based. Petal `k` touches the center at `z[k]` and the
//! next petal at `w[k]`, so `w[k]` lies on petals `k` and `k + 1 (mod 6)`.
//! The edge cross-ratio of petal `k` is
//! `s[k] = q(z[k], z[k-1], w[k-1], w[k])`.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{HexError, Result};
use crate::moebius::{
    circle_through, cross_ratio, fixed_points, involution_from_pairs, multi_ratio, multi_ratio_defect, ExtComplex,
    MoebiusMap, OrientedCircle, Orientation,
};
use crate::tolerance;
use crate::Complex;

/// Center circle, six petals and their touching points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flower {
    pub center: OrientedCircle,
    pub petals: [OrientedCircle; 6],
    pub z: [ExtComplex; 6],
    pub w: [ExtComplex; 6],
}

impl Flower {
    /// Image of the whole flower under a Möbius map.
    pub fn apply_moebius(&self, m: &MoebiusMap) -> Flower {
        Flower {
            center: self.center.apply_moebius(m),
            petals: self.petals.map(|p| p.apply_moebius(m)),
            z: self.z.map(|p| m.apply(p)),
            w: self.w.map(|p| m.apply(p)),
        }
    }

    /// Radius of the first petal in the frame that sends `z[5], z[0], z[1]`
    /// to `∞, 0, 1`. This is the parameter `r1` of [`build_flower`].
    pub fn normalized_r1(&self) -> Result<f64> {
        let t = MoebiusMap::from_triples([self.z[5], self.z[0], self.z[1]], [ExtComplex::Infinity, ExtComplex::ZERO, ExtComplex::ONE])?;
        self.petals[0]
            .apply_moebius(&t)
            .center_radius()
            .map(|(_, r)| r)
            .ok_or(HexError::DegenerateInput("first petal passes through z[5]"))
    }
}

/// The six edge cross-ratios of a flower.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossRatioSextet {
    pub s: [Complex; 6],
}

impl CrossRatioSextet {
    /// `max |s_k - s_{k+3}|`.
    pub fn opposite_defect(&self) -> f64 {
        (0..3).map(|k| (self.s[k] - self.s[k + 3]).norm()).fold(0.0, f64::max)
    }

    /// Every value has `-i s > 0`.
    pub fn is_positive_imaginary(&self, tol: f64) -> bool {
        self.s.iter().all(|s| crate::lattice::is_positive_imaginary(*s, tol))
    }

    /// Largest He–Schramm residual, relative to the size of the terms it
    /// sums, so that flowers with very uneven petals are judged fairly.
    pub fn max_he_schramm_residual(&self) -> f64 {
        let s = &self.s;
        he_schramm_residuals(s)
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let scale = [s[k].norm(), s[(k + 2) % 6].norm(), s[(k + 4) % 6].norm(), (s[k] * s[(k + 1) % 6] * s[(k + 2) % 6]).norm()]
                    .into_iter()
                    .fold(1.0, f64::max);
                r.norm() / scale
            })
            .fold(0.0, f64::max)
    }
}

/// `s_k + s_{k+2} + s_{k+4} + s_k s_{k+1} s_{k+2}` for every `k`.
pub fn he_schramm_residuals(s: &[Complex; 6]) -> [Complex; 6] {
    core::array::from_fn(|k| s[k] + s[(k + 2) % 6] + s[(k + 4) % 6] + s[k] * s[(k + 1) % 6] * s[(k + 2) % 6])
}

/// Map sending `z[5], z[0], z[1]` to `∞, 0, 1`, and the real images of
/// `z[0..5]`, which must increase strictly.
fn normalize_on_line(z: &[ExtComplex; 6]) -> Result<(MoebiusMap, [f64; 5])> {
    let tol = tolerance::default_tolerance();
    let t = MoebiusMap::from_triples([z[5], z[0], z[1]], [ExtComplex::Infinity, ExtComplex::ZERO, ExtComplex::ONE])?;
    let mut x = [0.0, 1.0, 0.0, 0.0, 0.0];
    for k in 2..5 {
        let p = t.apply(z[k]).finite().ok_or(HexError::DegenerateInput("touching points coincide"))?;
        if p.im.abs() > tol * (1.0 + p.norm()) {
            return Err(HexError::NotCyclicallyOrdered);
        }
        x[k] = p.re;
    }
    if !(x[1] < x[2] && x[2] < x[3] && x[3] < x[4]) {
        return Err(HexError::NotCyclicallyOrdered);
    }
    Ok((t, x))
}

fn check_multi_ratio(z: &[ExtComplex; 6]) -> Result<()> {
    let residual = multi_ratio_defect(multi_ratio(z)?);
    if !(residual <= tolerance::default_tolerance()) {
        return Err(HexError::NotAFlowerConfiguration { residual });
    }
    Ok(())
}

/// Flower with prescribed touching points on the center circle.
///
/// In the frame where `z[5] = ∞`, `z[0] = 0`, `z[1] = 1` the center is the
/// real axis, petals `0..5` are circles below it with radii
/// `r_{k+1} = ((x_{k+1} - x_k)/2)^2 / r_k` starting from `r1`, and petal 5 is
/// the horizontal line touching petals 0 and 4. The multi-ratio condition is
/// exactly what makes the last radius equal the first. Points may run either
/// way around the circle.
pub fn build_flower(z: &[ExtComplex; 6], r1: f64) -> Result<Flower> {
    if !(r1 > 0.0 && r1.is_finite()) {
        return Err(HexError::NonPositiveRadius(r1));
    }
    check_multi_ratio(z)?;
    let (t, x) = normalize_on_line(z)?;

    let mut r = [r1; 5];
    for k in 0..4 {
        let half = 0.5 * (x[k + 1] - x[k]);
        r[k + 1] = half * half / r[k];
    }
    let residual = (r[4] - r[0]).abs() / r[0];
    if residual > tolerance::SPREAD {
        return Err(HexError::NotAFlowerConfiguration { residual });
    }
    let depth = r[0] + r[4];

    let centers: [Complex; 5] = core::array::from_fn(|k| Complex::new(x[k], -r[k]));
    let mut petals = [OrientedCircle::line(Complex::new(0.0, -depth), Complex::new(-1.0, 0.0)); 6];
    for k in 0..5 {
        petals[k] = OrientedCircle::from_center_radius(centers[k], r[k], Orientation::Positive);
    }
    let mut w = [ExtComplex::Infinity; 6];
    for k in 0..4 {
        let p = centers[k] + (centers[k + 1] - centers[k]) * (r[k] / (r[k] + r[k + 1]));
        w[k] = ExtComplex::Finite(p);
    }
    w[4] = ExtComplex::new(x[4], -2.0 * r[4]);
    w[5] = ExtComplex::new(x[0], -2.0 * r[0]);
    let center = OrientedCircle::line(Complex::new(0.0, 0.0), Complex::new(1.0, 0.0));

    let back = t.inverse();
    Ok(Flower {
        center: center.apply_moebius(&back),
        petals: petals.map(|p| p.apply_moebius(&back)),
        z: *z,
        w: w.map(|p| back.apply(p)),
    })
}

/// Members of the one-parameter family for several values of `r1`.
pub fn flower_family(z: &[ExtComplex; 6], r1_values: &[f64]) -> Result<Vec<Flower>> {
    r1_values.iter().map(|&r| build_flower(z, r)).collect()
}

fn line_intersection(a: Complex, b: Complex, c: Complex, d: Complex) -> Result<Complex> {
    let cross = |p: Complex, q: Complex| (p.conj() * q).im;
    let den = cross(b - a, d - c);
    if den.abs() <= 1e-15 * (b - a).norm() * (d - c).norm() {
        return Err(HexError::DegenerateInput("parallel diagonals"));
    }
    Ok(a + (b - a) * (cross(c - a, d - c) / den))
}

/// The conformally symmetric member of the family through `z`.
///
/// The involution swapping opposite touching points has one fixed point `P`
/// on the center's side of the center circle. Sending `P` to infinity turns
/// the center into the unit circle, the involution into `z -> -z` and every
/// s-circle into a line, so `w[k]` is where the diagonals
/// `z[k-1] z[k+1]` and `z[k] z[k+2]` cross.
pub fn symmetric_flower(z: &[ExtComplex; 6]) -> Result<Flower> {
    let m = involution_from_pairs(z)?;
    normalize_on_line(z)?;
    let center = circle_through(z[0], z[1], z[2])?;
    let (f1, f2) = fixed_points(&m)?;
    if f1.chordal_distance(&f2) < tolerance::SPREAD {
        return Err(HexError::NumericallyParabolic);
    }
    let (p, p_out) = if center.eval(f1) < center.eval(f2) { (f1, f2) } else { (f2, f1) };

    let t = MoebiusMap::from_triples([p, p_out, z[0]], [ExtComplex::Infinity, ExtComplex::ZERO, ExtComplex::ONE])?;
    let zn: [Complex; 6] = {
        let mut out = [Complex::new(0.0, 0.0); 6];
        for k in 0..6 {
            out[k] = t.apply(z[k]).finite().ok_or(HexError::DegenerateInput("touching point at the fixed point"))?;
        }
        out
    };
    let mut wn = [Complex::new(0.0, 0.0); 6];
    for k in 0..6 {
        wn[k] = line_intersection(zn[(k + 5) % 6], zn[(k + 1) % 6], zn[k], zn[(k + 2) % 6])?;
    }
    let center_n = center.apply_moebius(&t);
    let mut petals = [center_n; 6];
    for k in 0..6 {
        let c = circle_through(wn[(k + 5) % 6].into(), zn[k].into(), wn[k].into())?;
        petals[k] = if center_n.inversive_product(&c) > 0.0 { c.reversed() } else { c };
    }
    let back = t.inverse();
    Ok(Flower {
        center,
        petals: petals.map(|c| c.apply_moebius(&back)),
        z: *z,
        w: wn.map(|p| back.apply(p.into())),
    })
}

fn finite(q: ExtComplex) -> Result<Complex> {
    q.finite().ok_or(HexError::DegenerateInput("infinite cross-ratio"))
}

/// `s[k] = q(z[k], z[k-1], w[k-1], w[k])`, checked against the equivalent
/// forms `-q(z[k+1], z[k-1], w[k-1], z[k])` and
/// `s[k]^2 = q(z[k+1], z[k-1], w[k-1], w[k])`.
pub fn cross_ratios_s(f: &Flower) -> Result<CrossRatioSextet> {
    let tol = tolerance::default_tolerance();
    let mut s = [Complex::new(0.0, 0.0); 6];
    let mut worst = 0.0f64;
    for k in 0..6 {
        let (prev, next) = ((k + 5) % 6, (k + 1) % 6);
        let sk = finite(cross_ratio(f.z[k], f.z[prev], f.w[prev], f.w[k])?)?;
        let alt = -finite(cross_ratio(f.z[next], f.z[prev], f.w[prev], f.z[k])?)?;
        let square = finite(cross_ratio(f.z[next], f.z[prev], f.w[prev], f.w[k])?)?;
        let scale = sk.norm().max(1.0);
        worst = worst.max((alt - sk).norm() / scale).max((square - sk * sk).norm() / (scale * scale));
        s[k] = sk;
    }
    if worst > tol.max(tolerance::SPREAD) {
        return Err(HexError::InconsistentCrossRatios(worst));
    }
    Ok(CrossRatioSextet { s })
}

/// s-circle `S_k` through `z[k-1]`, `z[k+1]`, `w[k]`; `w[k-1]` must lie on it too.
pub fn s_circles(f: &Flower) -> Result<[OrientedCircle; 6]> {
    let mut out = [f.center; 6];
    for k in 0..6 {
        let (prev, next) = ((k + 5) % 6, (k + 1) % 6);
        let c = circle_through(f.z[prev], f.z[next], f.w[k])?;
        let residual = c.incidence(f.w[prev]);
        if residual > tolerance::SPREAD {
            return Err(HexError::NotAFlowerConfiguration { residual });
        }
        out[k] = c;
    }
    Ok(out)
}

/// Best candidate for a point shared by all six circles, and its spread: the
/// largest scale-free incidence residual of the candidate on any circle,
/// which is comparable to the chordal distance from the circle.
///
/// Neighboring s-circles share a touching point, so their second
/// intersection is the only candidate. Opposite s-circles of a symmetric
/// flower touch at the common point and are not used.
pub fn common_point_spread(circles: &[OrientedCircle; 6]) -> (Option<ExtComplex>, f64) {
    let mut candidates = circles[0].intersections(&circles[1]).unwrap_or_default();
    candidates.extend(circles[0].intersections(&circles[2]).unwrap_or_default());
    let mut best: (Option<ExtComplex>, f64) = (None, f64::INFINITY);
    for cand in candidates {
        let spread = circles.iter().map(|c| c.incidence(cand)).fold(0.0, f64::max);
        if spread < best.1 {
            best = (Some(cand), spread);
        }
    }
    best
}

/// The point where all six circles meet, if their spread is below tolerance.
pub fn common_point(circles: &[OrientedCircle; 6]) -> Option<ExtComplex> {
    match common_point_spread(circles) {
        (Some(p), spread) if spread < tolerance::SPREAD => Some(p),
        _ => None,
    }
}

/// Outcome of the two symmetry criteria for a flower.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryReport {
    /// `max |s_k - s_{k+3}|` is below tolerance.
    pub symmetric: bool,
    pub opposite_defect: f64,
    /// Spread of the s-circle intersection points.
    pub spread: f64,
    pub common_point: Option<ExtComplex>,
    /// Both criteria give the same answer.
    pub criteria_agree: bool,
}

pub fn is_conformally_symmetric(f: &Flower) -> Result<SymmetryReport> {
    let s = cross_ratios_s(f)?;
    let scale = s.s.iter().map(|x| x.norm()).fold(1.0, f64::max);
    let opposite_defect = s.opposite_defect();
    let symmetric = opposite_defect < tolerance::default_tolerance() * scale;
    let (point, spread) = common_point_spread(&s_circles(f)?);
    let common_point = if spread < tolerance::SPREAD { point } else { None };
    Ok(SymmetryReport {
        symmetric,
        opposite_defect,
        spread,
        common_point,
        criteria_agree: symmetric == common_point.is_some(),
    })
}

/// Residuals of the defining incidences and tangencies of a flower.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowerResiduals {
    /// Touching points off their circles.
    pub incidence: f64,
    /// `|⟨C, P⟩ + 1|` over all touching pairs.
    pub tangency: f64,
    pub multi_ratio: f64,
    pub degenerate: bool,
}

impl FlowerResiduals {
    pub fn max(&self) -> f64 {
        if self.degenerate {
            f64::INFINITY
        } else {
            self.incidence.max(self.tangency).max(self.multi_ratio)
        }
    }
}

pub fn flower_residuals(f: &Flower) -> FlowerResiduals {
    let mut incidence = 0.0f64;
    let mut tangency = 0.0f64;
    for k in 0..6 {
        let next = (k + 1) % 6;
        incidence = incidence
            .max(f.center.incidence(f.z[k]))
            .max(f.petals[k].incidence(f.z[k]))
            .max(f.petals[k].incidence(f.w[k]))
            .max(f.petals[next].incidence(f.w[k]));
        tangency = tangency
            .max((f.center.inversive_product(&f.petals[k]) + 1.0).abs())
            .max((f.petals[k].inversive_product(&f.petals[next]) + 1.0).abs());
    }
    let multi = multi_ratio(&f.z).map(multi_ratio_defect).unwrap_or(f64::INFINITY);
    let degenerate = !f.center.is_real_circle() || f.petals.iter().any(|p| !p.is_real_circle());
    FlowerResiduals { incidence, tangency, multi_ratio: multi, degenerate }
}

/// Touching points `e^{iφ_k}` with opposite points antipodal.
fn antipodal_points(phi1: f64, phi2: f64) -> [ExtComplex; 6] {
    let ang = [0.0, phi1, phi2, PI, PI + phi1, PI + phi2];
    ang.map(|t| ExtComplex::new(t.cos(), t.sin()))
}

fn symmetric_s01(phi: [f64; 2]) -> Result<[f64; 2]> {
    let f = symmetric_flower(&antipodal_points(phi[0], phi[1]))?;
    let s = cross_ratios_s(&f)?;
    Ok([s.s[0].im, s.s[1].im])
}

/// A symmetric flower with `s[0] = i t1` and `s[1] = i t2`.
///
/// Equal opposite values reduce the hexagon relation to
/// `a + b + c + abc = 0`, so the remaining value is
/// `-i(t1 + t2)/(1 - t1 t2)`, which is positive imaginary only for
/// `t1 t2 > 1`. The touching points are searched among antipodal sextets on
/// the unit circle by damped Newton iteration, continued from the regular
/// flower along a path of targets.
pub fn symmetric_flower_with_cross_ratios(t1: f64, t2: f64) -> Result<Flower> {
    if !(t1 > 0.0 && t2 > 0.0 && t1.is_finite() && t2.is_finite()) || t1 * t2 <= 1.0 {
        return Err(HexError::TargetNotRealizable(t1, t2));
    }
    let start = 3f64.sqrt().ln();
    let steps = 24;
    let mut phi = [PI / 3.0, 2.0 * PI / 3.0];
    let mut residual = f64::INFINITY;
    for step in 1..=steps {
        let lam = step as f64 / steps as f64;
        let target = [
            ((1.0 - lam) * start + lam * t1.ln()).exp(),
            ((1.0 - lam) * start + lam * t2.ln()).exp(),
        ];
        let tol = if step == steps { 1e-13 } else { 1e-8 };
        let (next, res) = newton_phi(phi, target, tol)?;
        phi = next;
        residual = res;
    }
    if residual > 1e-10 * t1.max(t2) {
        return Err(HexError::NoConvergence { residual });
    }
    symmetric_flower(&antipodal_points(phi[0], phi[1]))
}

fn newton_phi(mut phi: [f64; 2], target: [f64; 2], tol: f64) -> Result<([f64; 2], f64)> {
    let admissible = |p: [f64; 2]| p[0] > 0.0 && p[0] < p[1] && p[1] < PI;
    let eval = |p: [f64; 2]| -> Result<[f64; 2]> {
        let v = symmetric_s01(p)?;
        Ok([v[0] - target[0], v[1] - target[1]])
    };
    let norm = |r: [f64; 2]| r[0].hypot(r[1]);
    let mut r = eval(phi)?;
    for _ in 0..60 {
        if norm(r) <= tol * target[0].max(target[1]) {
            return Ok((phi, norm(r)));
        }
        let h = 1e-7;
        let mut jac = [[0.0; 2]; 2];
        for j in 0..2 {
            let mut plus = phi;
            let mut minus = phi;
            plus[j] += h;
            minus[j] -= h;
            let (rp, rm) = (eval(plus)?, eval(minus)?);
            for i in 0..2 {
                jac[i][j] = (rp[i] - rm[i]) / (2.0 * h);
            }
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det.abs() < 1e-300 {
            return Err(HexError::NoConvergence { residual: norm(r) });
        }
        let step = [
            (jac[1][1] * r[0] - jac[0][1] * r[1]) / det,
            (-jac[1][0] * r[0] + jac[0][0] * r[1]) / det,
        ];
        let mut damp = 1.0;
        let mut accepted = false;
        while damp > 1e-6 {
            let trial = [phi[0] - damp * step[0], phi[1] - damp * step[1]];
            if admissible(trial) {
                if let Ok(rt) = eval(trial) {
                    if norm(rt) < norm(r) {
                        phi = trial;
                        r = rt;
                        accepted = true;
                        break;
                    }
                }
            }
            damp *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    let res = norm(r);
    if res <= tol.max(1e-10) * target[0].max(target[1]) {
        Ok((phi, res))
    } else {
        Err(HexError::NoConvergence { residual: res })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    fn line_points() -> [ExtComplex; 6] {
        let mut z = [ExtComplex::Infinity; 6];
        for k in 0..5 {
            z[k] = ExtComplex::from(k as f64);
        }
        z
    }

    fn roots_of_unity(shift: usize) -> [ExtComplex; 6] {
        core::array::from_fn(|k| {
            let t = (k + shift) as f64 * PI / 3.0;
            ExtComplex::new(t.cos(), t.sin())
        })
    }

    fn petal_radius(f: &Flower, k: usize) -> f64 {
        f.petals[k].center_radius().unwrap().1
    }

    #[test]
    fn equal_spacing_half_radius() {
        let f = build_flower(&line_points(), 0.5).unwrap();
        for k in 0..5 {
            assert!((petal_radius(&f, k) - 0.5).abs() < 1e-14);
        }
        assert!(f.petals[5].is_line());
        assert!(flower_residuals(&f).max() < 1e-12);
    }

    #[test]
    fn equal_spacing_unit_radius_alternates() {
        let f = build_flower(&line_points(), 1.0).unwrap();
        let expect = [1.0, 0.25, 1.0, 0.25, 1.0];
        for k in 0..5 {
            assert!((petal_radius(&f, k) - expect[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn regular_flower_has_unit_petals() {
        let z = roots_of_unity(0);
        let sym = symmetric_flower(&z).unwrap();
        for k in 0..6 {
            let (c, r) = sym.petals[k].center_radius().unwrap();
            assert!((r - 1.0).abs() < 1e-12, "{r}");
            assert!((c.norm() - 2.0).abs() < 1e-12);
        }
        let r1 = sym.normalized_r1().unwrap();
        let f = build_flower(&z, r1).unwrap();
        for k in 0..6 {
            assert!(f.petals[k].approx_eq(&sym.petals[k], 1e-10));
        }
    }

    #[test]
    fn regular_flower_cross_ratios() {
        let f = symmetric_flower(&roots_of_unity(1)).unwrap();
        let s = cross_ratios_s(&f).unwrap();
        for x in s.s {
            assert!((x - Complex::new(0.0, SQRT3)).norm() < 1e-12, "{x}");
        }
        let p = common_point(&s_circles(&f).unwrap()).unwrap();
        assert!(p.chordal_distance(&ExtComplex::ZERO) < 1e-10);
    }

    #[test]
    fn regular_s_circle_through_origin() {
        // The circle through e^{±iπ/3} and √3 e^{±iπ/6} is |z - 1| = 1.
        let h = 3f64.sqrt();
        let c = circle_through(
            ExtComplex::new(0.5, -h / 2.0),
            ExtComplex::new(1.5, h / 2.0),
            ExtComplex::new(0.5, h / 2.0),
        )
        .unwrap();
        assert!(c.incidence(ExtComplex::new(1.5, -h / 2.0)) < 1e-15);
        assert!(c.incidence(ExtComplex::ZERO) < 1e-15);
    }

    #[test]
    fn line_flower_symmetry() {
        let f = symmetric_flower(&line_points()).unwrap();
        let res = flower_residuals(&f);
        assert!(res.max() < 1e-10, "{res:?} {f:?}");
        let s = cross_ratios_s(&f).unwrap();
        assert!(s.opposite_defect() < 1e-10);
        let rep = is_conformally_symmetric(&f).unwrap();
        assert!(rep.symmetric && rep.criteria_agree);
    }

    #[test]
    fn generic_family_member_is_not_symmetric() {
        let f = build_flower(&line_points(), 1.0).unwrap();
        let rep = is_conformally_symmetric(&f).unwrap();
        assert!(!rep.symmetric && rep.common_point.is_none() && rep.criteria_agree);
        let s = cross_ratios_s(&f).unwrap();
        assert!(s.is_positive_imaginary(1e-9));
        assert!(s.max_he_schramm_residual() < 1e-12);
    }

    #[test]
    fn he_schramm_examples() {
        let regular = [Complex::new(0.0, SQRT3); 6];
        assert!(he_schramm_residuals(&regular).iter().all(|r| r.norm() < 1e-14));
        let mut bumped = regular;
        bumped[2] += Complex::new(0.0, 0.1);
        assert!(he_schramm_residuals(&bumped).iter().any(|r| r.norm() > 1e-3));
    }

    #[test]
    fn build_rejects_bad_input() {
        let mut z = line_points();
        z[4] = ExtComplex::from(5.0);
        assert!(matches!(build_flower(&z, 1.0), Err(HexError::NotAFlowerConfiguration { .. })));
        assert_eq!(build_flower(&line_points(), 0.0), Err(HexError::NonPositiveRadius(0.0)));
        let mut z = line_points();
        z.swap(1, 2);
        assert!(build_flower(&z, 1.0).is_err());
    }

    #[test]
    fn reversed_points_are_accepted() {
        let mut z = roots_of_unity(0);
        z.reverse();
        let f = build_flower(&z, 0.7).unwrap();
        assert!(flower_residuals(&f).max() < 1e-10);
        assert!(cross_ratios_s(&f).unwrap().is_positive_imaginary(1e-9));
    }

    #[test]
    fn inverse_problem_hits_target() {
        let f = symmetric_flower_with_cross_ratios(1.0, 3.0).unwrap();
        let s = cross_ratios_s(&f).unwrap();
        assert!((s.s[0] - Complex::new(0.0, 1.0)).norm() < 1e-9);
        assert!((s.s[1] - Complex::new(0.0, 3.0)).norm() < 1e-9);
        assert_eq!(
            symmetric_flower_with_cross_ratios(0.5, 1.0).unwrap_err(),
            HexError::TargetNotRealizable(0.5, 1.0)
        );
    }
}
