//! Packings on the triangular lattice: reconstruction from cross-ratio
//! fields, Doyle spirals, immersion checks and the inverse map back to
//! fields.
//!
//! A flag `(v, k)` is petal `k` of the flower around circle `v`. Its frame is
//! the Möbius map `F` with `F(∞) = z_k`, `F(0) = z_{k-1}`, `F(1) = w_{k-1}`.
//! In that frame the center is the imaginary axis, petal `k` is the line
//! `Re = 1`, `w_k = 1 - s_k` and `z_{k+1} = -s_k`. Moving to the next petal,
//! the previous petal, or across to the neighbor's flower multiplies the
//! frame on the right by a matrix depending only on `s_k`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{HexError, Result};
use crate::flower::Flower;
use crate::lattice::{EdgeField, HexEdge, LatticeIndex, SolutionParams, Window};
use crate::moebius::{cross_ratio, involution_from_pairs, multi_ratio, multi_ratio_defect, ExtComplex, MoebiusMap, OrientedCircle, Orientation};
use crate::tolerance;
use crate::Complex;

/// Radii law `R(n, m) = R A^n B^m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoyleParams {
    pub a: f64,
    pub b: f64,
    pub r: f64,
}

impl DoyleParams {
    pub fn new(a: f64, b: f64, r: f64) -> Result<Self> {
        for x in [a, b, r] {
            if !(x > 0.0 && x.is_finite()) {
                return Err(HexError::NonPositiveRadius(x));
            }
        }
        Ok(DoyleParams { a, b, r })
    }

    pub fn radius(&self, v: LatticeIndex) -> f64 {
        self.r * self.a.powi(v.n as i32) * self.b.powi(v.m as i32)
    }
}

/// Where a layout came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Provenance {
    Field(Option<SolutionParams>),
    Doyle(DoyleParams),
    Imported,
}

/// How the Möbius freedom of a layout is fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Normalization {
    /// Frame of the base flag.
    Frame(MoebiusMap),
    /// Images of `∞, 0, 1` under the base frame, i.e. the touching points
    /// `z_0`, `z_5` and `w_5` of the base flower.
    TouchPoints([ExtComplex; 3]),
}

impl Default for Normalization {
    fn default() -> Self {
        Normalization::Frame(MoebiusMap::identity())
    }
}

impl Normalization {
    /// Touching points of the regular packing of unit circles centered at
    /// `2(n + m e^{iπ/3})`.
    pub fn standard() -> Self {
        let h = 3f64.sqrt() / 2.0;
        Normalization::TouchPoints([
            ExtComplex::new(1.0, 0.0),
            ExtComplex::new(0.5, -h),
            ExtComplex::new(1.5, -h),
        ])
    }

    pub fn frame(&self) -> Result<MoebiusMap> {
        match *self {
            Normalization::Frame(m) => Ok(m),
            Normalization::TouchPoints(p) => MoebiusMap::from_triples([ExtComplex::Infinity, ExtComplex::ZERO, ExtComplex::ONE], p),
        }
    }
}

/// Circles and touching points indexed by the lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct PackingLayout {
    pub window: Window,
    pub circles: BTreeMap<LatticeIndex, OrientedCircle>,
    pub touch_points: BTreeMap<HexEdge, ExtComplex>,
    pub provenance: Provenance,
}

impl PackingLayout {
    pub fn circle(&self, v: &LatticeIndex) -> Option<OrientedCircle> {
        self.circles.get(v).copied()
    }

    /// Touching point of two adjacent circles.
    pub fn touch_point(&self, u: LatticeIndex, v: LatticeIndex) -> Option<ExtComplex> {
        self.touch_points.get(&HexEdge::between(u, v)?).copied()
    }

    /// The flower around `v`, when all its circles and touching points exist.
    pub fn flower_at(&self, v: LatticeIndex) -> Option<Flower> {
        let nb = v.neighbors();
        let center = self.circle(&v)?;
        let mut petals = [center; 6];
        let mut z = [ExtComplex::Infinity; 6];
        let mut w = [ExtComplex::Infinity; 6];
        for k in 0..6 {
            petals[k] = self.circle(&nb[k])?;
            z[k] = self.touch_point(v, nb[k])?;
            w[k] = self.touch_point(nb[k], nb[(k + 1) % 6])?;
        }
        Some(Flower { center, petals, z, w })
    }

    /// Circles whose whole flower is present, in lattice order.
    pub fn flower_centers(&self) -> Vec<LatticeIndex> {
        self.circles.keys().copied().filter(|v| self.flower_at(*v).is_some()).collect()
    }

    pub fn apply_moebius(&self, m: &MoebiusMap) -> PackingLayout {
        PackingLayout {
            window: self.window,
            circles: self.circles.iter().map(|(k, c)| (*k, c.apply_moebius(m))).collect(),
            touch_points: self.touch_points.iter().map(|(k, p)| (*k, m.apply(*p))).collect(),
            provenance: self.provenance,
        }
    }

    /// Largest chordal distance between touching points present in both layouts.
    pub fn touch_point_distance(&self, other: &PackingLayout) -> f64 {
        self.touch_points
            .iter()
            .filter_map(|(e, p)| other.touch_points.get(e).map(|q| p.chordal_distance(q)))
            .fold(0.0, f64::max)
    }
}

/// The vertex of the window closest to the origin, which carries the base flag.
pub fn base_vertex(window: &Window) -> LatticeIndex {
    LatticeIndex::new(0.clamp(window.n_min, window.n_max), 0.clamp(window.m_min, window.m_max))
}

fn step(a: Complex, b: Complex, c: Complex, d: Complex) -> MoebiusMap {
    MoebiusMap::new(a, b, c, d).expect("transfer matrices are invertible")
}

const ONE: Complex = Complex::new(1.0, 0.0);
const ZERO: Complex = Complex::new(0.0, 0.0);

/// Frames of all flags reachable from the base flag, with the largest
/// relative disagreement on edges outside the spanning tree.
fn propagate_frames(field: &EdgeField, base: MoebiusMap) -> (Vec<Option<MoebiusMap>>, f64) {
    let window = field.window();
    let mut frames: Vec<Option<MoebiusMap>> = vec![None; window.len() * 6];
    let flag = |v: &LatticeIndex, k: usize| window.slot(v) * 6 + k % 6;
    let v0 = base_vertex(&window);
    frames[flag(&v0, 0)] = Some(base);
    let mut queue = VecDeque::new();
    queue.push_back((v0, 0usize));
    let mut closure = 0.0f64;
    while let Some((v, k)) = queue.pop_front() {
        let f = frames[flag(&v, k)].expect("queued flags have frames");
        let mut moves: Vec<((LatticeIndex, usize), MoebiusMap)> = Vec::with_capacity(3);
        if let Some(s) = field.get(&HexEdge::around(v, k)) {
            moves.push(((v, (k + 1) % 6), f * step(-s, ONE, ONE, ZERO)));
            let u = v.neighbor(k);
            if window.contains(&u) {
                moves.push(((u, (k + 3) % 6), f * step(-ONE, ONE - s, ZERO, ONE)));
            }
        }
        if let Some(s) = field.get(&HexEdge::around(v, k + 5)) {
            moves.push(((v, (k + 5) % 6), f * step(ZERO, ONE, ONE, s)));
        }
        for ((u, j), g) in moves {
            let slot = flag(&u, j);
            match frames[slot] {
                None => {
                    frames[slot] = Some(g);
                    queue.push_back((u, j));
                }
                Some(h) => {
                    let rel = g.projective_distance(&h) / g.norm().max(h.norm());
                    closure = closure.max(rel);
                }
            }
        }
    }
    (frames, closure)
}

fn assemble(field: &EdgeField, frames: &[Option<MoebiusMap>]) -> PackingLayout {
    let window = field.window();
    let flag = |v: &LatticeIndex, k: usize| frames[window.slot(v) * 6 + k % 6];
    // The center of every flag frame is the imaginary axis traversed upward,
    // which keeps the petals on its right.
    let axis = OrientedCircle::line(ZERO, Complex::new(0.0, 1.0));
    let mut circles = BTreeMap::new();
    for v in window.vertices() {
        if let Some(f) = (0..6).find_map(|k| flag(&v, k)) {
            circles.insert(v, axis.apply_moebius(&f));
        }
    }
    let mut touch_points = BTreeMap::new();
    for e in window.edges() {
        let (u, v) = e.endpoints();
        let k = u.neighbor_slot(&v).expect("edge endpoints are adjacent");
        if let Some(f) = flag(&u, k).or_else(|| flag(&v, k + 3)) {
            touch_points.insert(e, f.apply(ExtComplex::Infinity));
        }
    }
    PackingLayout { window, circles, touch_points, provenance: Provenance::Field(field.params()) }
}

/// Packing realizing a cross-ratio field, unique up to the normalization.
///
/// Every value must be positive imaginary. Frames are spread over the flag
/// graph breadth first from the base flag; every edge not used by the tree
/// is a cycle whose closure is checked.
pub fn layout_from_field(field: &EdgeField, norm: &Normalization) -> Result<PackingLayout> {
    if let Some(e) = field.first_non_immersed(tolerance::default_tolerance()) {
        return Err(HexError::NotImmersed(e));
    }
    layout_from_field_unchecked(field, norm)
}

/// As [`layout_from_field`] but without the sign check on the values, for
/// inspecting packings past the immersed region. Cycle closure is still
/// enforced.
pub fn layout_from_field_unchecked(field: &EdgeField, norm: &Normalization) -> Result<PackingLayout> {
    let (frames, closure) = propagate_frames(field, norm.frame()?);
    if !(closure <= tolerance::CLOSURE) {
        return Err(HexError::FieldInconsistent { residual: closure });
    }
    Ok(assemble(field, &frames))
}

/// Largest cycle-closure residual of the frame propagation.
pub fn closure_residual(field: &EdgeField) -> f64 {
    propagate_frames(field, MoebiusMap::identity()).1
}

/// Doyle spiral with radii `R A^n B^m`, laid out in the plane.
///
/// The base circle sits at the origin and its neighbor `(1, 0)` on the
/// positive real axis. Repeated sweeps then place every circle that has two
/// placed neighbors adjacent to each other, on the left of the directed
/// segment between them. All circles are positively oriented and tangent
/// externally.
pub fn doyle_spiral(p: &DoyleParams, window: Window) -> Result<PackingLayout> {
    let mut centers: BTreeMap<LatticeIndex, Complex> = BTreeMap::new();
    let v0 = base_vertex(&window);
    centers.insert(v0, ZERO);
    let v1 = if window.contains(&v0.neighbor(0)) { v0.neighbor(0) } else { v0.neighbor(3) };
    if window.contains(&v1) {
        let sign = if v1 == v0.neighbor(0) { 1.0 } else { -1.0 };
        centers.insert(v1, Complex::new(sign * (p.radius(v0) + p.radius(v1)), 0.0));
    }
    let vertices: Vec<LatticeIndex> = window.vertices().collect();
    loop {
        let mut placed = false;
        for x in &vertices {
            if centers.contains_key(x) {
                continue;
            }
            let nb = x.neighbors();
            let pair = (0..6).find_map(|k| {
                let (u, w) = (nb[k], nb[(k + 1) % 6]);
                Some((u, *centers.get(&u)?, w, *centers.get(&w)?))
            });
            if let Some((u, cu, w, cw)) = pair {
                let rx = p.radius(*x);
                let d1 = rx + p.radius(u);
                let d2 = rx + p.radius(w);
                let len = (cw - cu).norm();
                let cos = ((d1 * d1 + len * len - d2 * d2) / (2.0 * d1 * len)).clamp(-1.0, 1.0);
                let sin = (1.0 - cos * cos).max(0.0).sqrt();
                centers.insert(*x, cu + (cw - cu) / len * Complex::new(cos, sin) * d1);
                placed = true;
            }
        }
        if !placed {
            break;
        }
    }

    let mut worst = 0.0f64;
    for e in window.edges() {
        let (u, v) = e.endpoints();
        if let (Some(cu), Some(cv)) = (centers.get(&u), centers.get(&v)) {
            let sum = p.radius(u) + p.radius(v);
            worst = worst.max(((cu - cv).norm() - sum).abs() / sum);
        } else {
            return Err(HexError::ClosureFailure { residual: f64::INFINITY });
        }
    }
    if !(worst <= tolerance::CLOSURE) {
        return Err(HexError::ClosureFailure { residual: worst });
    }

    let circles: BTreeMap<LatticeIndex, OrientedCircle> = centers
        .iter()
        .map(|(v, c)| (*v, OrientedCircle::from_center_radius(*c, p.radius(*v), Orientation::Positive)))
        .collect();
    let mut touch_points = BTreeMap::new();
    for e in window.edges() {
        let (u, v) = e.endpoints();
        let (cu, cv) = (centers[&u], centers[&v]);
        let (ru, rv) = (p.radius(u), p.radius(v));
        touch_points.insert(e, ExtComplex::Finite(cu + (cv - cu) * (ru / (ru + rv))));
    }
    let layout = PackingLayout { window, circles, touch_points, provenance: Provenance::Doyle(*p) };
    for v in layout.flower_centers() {
        let (pair, triple) = doyle_law_residuals(&layout, v).expect("flower present");
        if pair.max(triple) > 1e-12 {
            return Err(HexError::ClosureFailure { residual: pair.max(triple) });
        }
    }
    Ok(layout)
}

/// Relative residuals of `R_k R_{k+3} = R^2` and `R_k R_{k+2} R_{k+4} = R^3`
/// on the flower around `v`, read from the circles of a layout.
pub fn doyle_law_residuals(layout: &PackingLayout, v: LatticeIndex) -> Option<(f64, f64)> {
    let radius = |u: &LatticeIndex| layout.circle(u).and_then(|c| c.center_radius()).map(|(_, r)| r);
    let r = radius(&v)?;
    let mut petals = [0.0; 6];
    for (k, u) in v.neighbors().iter().enumerate() {
        petals[k] = radius(u)?;
    }
    let pair = (0..3).map(|k| (petals[k] * petals[k + 3] / (r * r) - 1.0).abs()).fold(0.0, f64::max);
    let triple = (0..2)
        .map(|k| (petals[k] * petals[k + 2] * petals[k + 4] / (r * r * r) - 1.0).abs())
        .fold(0.0, f64::max);
    Some((pair, triple))
}

/// What went wrong with one flower of a layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    /// A circle collapsed to a point or has no real locus.
    Degenerate,
    /// Neighboring circles are not tangent with opposite orientations.
    Tangency,
    /// A stored touching point is off one of its circles.
    TouchPoint,
    /// The touching points violate the multi-ratio condition.
    MultiRatio,
    /// An edge cross-ratio is not positive imaginary.
    CrossRatio,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowerFailure {
    pub center: LatticeIndex,
    pub kind: FailureKind,
    pub residual: f64,
}

/// Per-flower immersion check of a layout.
#[derive(Debug, Clone, PartialEq)]
pub struct ImmersionReport {
    pub flowers_checked: usize,
    pub tolerance: f64,
    pub worst_tangency: f64,
    pub worst_touch_point: f64,
    pub worst_multi_ratio: f64,
    pub failures: Vec<FlowerFailure>,
}

impl ImmersionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.flowers_checked > 0
    }
}

pub fn validate_immersion(layout: &PackingLayout) -> ImmersionReport {
    validate_immersion_with(layout, tolerance::CLOSURE)
}

pub fn validate_immersion_with(layout: &PackingLayout, tol: f64) -> ImmersionReport {
    let mut report = ImmersionReport {
        flowers_checked: 0,
        tolerance: tol,
        worst_tangency: 0.0,
        worst_touch_point: 0.0,
        worst_multi_ratio: 0.0,
        failures: Vec::new(),
    };
    for v in layout.flower_centers() {
        let f = layout.flower_at(v).expect("listed flowers exist");
        report.flowers_checked += 1;
        let mut fail = |kind, residual: f64| report.failures.push(FlowerFailure { center: v, kind, residual });

        let circles = core::iter::once(&f.center).chain(f.petals.iter());
        if circles.clone().any(|c| !c.is_real_circle() || c.center_radius().is_some_and(|(_, r)| !(r > 0.0 && r.is_finite()))) {
            fail(FailureKind::Degenerate, f64::INFINITY);
            continue;
        }

        let mut tangency = 0.0f64;
        let mut touch = 0.0f64;
        for k in 0..6 {
            let next = (k + 1) % 6;
            tangency = tangency
                .max((f.center.inversive_product(&f.petals[k]) + 1.0).abs())
                .max((f.petals[k].inversive_product(&f.petals[next]) + 1.0).abs());
            touch = touch
                .max(f.center.incidence(f.z[k]))
                .max(f.petals[k].incidence(f.z[k]))
                .max(f.petals[k].incidence(f.w[k]))
                .max(f.petals[next].incidence(f.w[k]));
        }
        let multi = multi_ratio(&f.z).map(multi_ratio_defect).unwrap_or(f64::INFINITY);
        let mut worst_sign = 0.0f64;
        for k in 0..6 {
            let prev = (k + 5) % 6;
            match cross_ratio(f.z[k], f.z[prev], f.w[prev], f.w[k]).map(|q| q.finite()) {
                Ok(Some(s)) if crate::lattice::is_positive_imaginary(s, tol) => {}
                Ok(Some(s)) => worst_sign = worst_sign.max(if s.im <= 0.0 { -s.im + s.re.abs() } else { s.re.abs() / s.norm() }),
                _ => worst_sign = f64::INFINITY,
            }
        }
        if tangency > tol {
            fail(FailureKind::Tangency, tangency);
        }
        if touch > tol {
            fail(FailureKind::TouchPoint, touch);
        }
        if multi > tol {
            fail(FailureKind::MultiRatio, multi);
        }
        if worst_sign > 0.0 {
            fail(FailureKind::CrossRatio, worst_sign);
        }
        report.worst_tangency = report.worst_tangency.max(tangency);
        report.worst_touch_point = report.worst_touch_point.max(touch);
        report.worst_multi_ratio = report.worst_multi_ratio.max(multi);
    }
    report
}

/// Edge cross-ratios read from the touching points of a layout.
///
/// An edge gets a value from every circle whose two adjacent petals around
/// it are present, computed both as `q(z_k, z_{k-1}, w_{k-1}, w_k)` and as
/// `q(z_k, w_k, z_{k+1}, z_{k-1})`; all of these must agree. Edges on the rim
/// of the window, whose neighboring petals are missing, stay empty.
pub fn field_from_layout(layout: &PackingLayout) -> Result<EdgeField> {
    let tol = tolerance::CLOSURE;
    let mut field = EdgeField::new(layout.window);
    if let Provenance::Field(params) = layout.provenance {
        field.set_params(params);
    }
    for (&v, _) in layout.circles.iter() {
        let nb = v.neighbors();
        for k in 0..6 {
            let (prev, next) = ((k + 5) % 6, (k + 1) % 6);
            let tp = |a: LatticeIndex, b: LatticeIndex| layout.touch_point(a, b);
            let (Some(zk), Some(zp), Some(zn), Some(wp), Some(wk)) =
                (tp(v, nb[k]), tp(v, nb[prev]), tp(v, nb[next]), tp(nb[prev], nb[k]), tp(nb[k], nb[next]))
            else {
                continue;
            };
            let e = HexEdge::around(v, k);
            let s = cross_ratio(zk, zp, wp, wk)?.finite().ok_or(HexError::NotImmersed(e))?;
            let alt = cross_ratio(zk, wk, zn, zp)?.finite().ok_or(HexError::NotImmersed(e))?;
            let scale = s.norm().max(1.0);
            let residual = (s - alt).norm() / scale;
            if residual > tol {
                return Err(HexError::FieldInconsistent { residual });
            }
            if !crate::lattice::is_positive_imaginary(s, tol) {
                return Err(HexError::NotImmersed(e));
            }
            match field.get(&e) {
                Some(old) => {
                    let residual = (old - s).norm() / scale;
                    if residual > tol {
                        return Err(HexError::FieldInconsistent { residual });
                    }
                }
                None => field.set(e, s)?,
            }
        }
    }
    Ok(field)
}

/// Distance between two circles as point sets: center and radius offsets
/// relative to the radius, or normal and offset differences for lines.
pub fn circle_set_distance(a: &OrientedCircle, b: &OrientedCircle) -> f64 {
    match (a.center_radius(), b.center_radius()) {
        (Some((c1, r1)), Some((c2, r2))) => ((c1 - c2).norm() + (r1 - r2).abs()) / r1.max(r2).max(1.0),
        (None, None) => match (a.line_params(), b.line_params()) {
            (Some((n1, d1)), Some((n2, d2))) => {
                let same = (n1 - n2).norm() + (d1 - d2).abs();
                let flipped = (n1 + n2).norm() + (d1 + d2).abs();
                same.min(flipped)
            }
            _ => f64::INFINITY,
        },
        _ => f64::INFINITY,
    }
}

/// How far the involution of the flower at `v` is from mapping the layout
/// onto itself: circle `u` should go to circle `2v - u`.
pub fn involution_invariance(layout: &PackingLayout, v: LatticeIndex) -> Result<f64> {
    let f = layout.flower_at(v).ok_or(HexError::DegenerateInput("incomplete flower"))?;
    let m = involution_from_pairs(&f.z)?;
    let mut worst = 0.0f64;
    for (u, c) in &layout.circles {
        if let Some(target) = layout.circle(&v.reflect(u)) {
            worst = worst.max(circle_set_distance(&c.apply_moebius(&m), &target));
        }
    }
    Ok(worst)
}

/// Möbius map taking `from` onto `to`, fitted on three touching points of the
/// base flower, and the largest chordal mismatch over all shared touching points.
pub fn fit_moebius(from: &PackingLayout, to: &PackingLayout) -> Result<(MoebiusMap, f64)> {
    let v = base_vertex(&from.window);
    let nb = v.neighbors();
    let pick = |l: &PackingLayout| -> Option<[ExtComplex; 3]> {
        Some([l.touch_point(v, nb[0])?, l.touch_point(v, nb[5])?, l.touch_point(nb[5], nb[0])?])
    };
    let (src, dst) = match (pick(from), pick(to)) {
        (Some(s), Some(d)) => (s, d),
        _ => return Err(HexError::DegenerateInput("base flower missing")),
    };
    let m = MoebiusMap::from_triples(src, dst)?;
    Ok((m, from.apply_moebius(&m).touch_point_distance(to)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flower::{cross_ratios_s, is_conformally_symmetric};
    use crate::lattice::{constant_field, solution_field};
    use core::f64::consts::PI;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    fn regular_field(k: i64) -> EdgeField {
        let s = Complex::new(0.0, SQRT3);
        constant_field(s, s, s, Window::square(k)).unwrap()
    }

    #[test]
    fn regular_field_gives_unit_circles() {
        let l = layout_from_field(&regular_field(4), &Normalization::standard()).unwrap();
        for (v, c) in &l.circles {
            let (center, r) = c.center_radius().unwrap();
            assert!((r - 1.0).abs() < 1e-12, "{v:?} {r}");
            assert!((center - v.position() * 2.0).norm() < 1e-11);
            assert_eq!(c.orientation(), Orientation::Positive);
        }
        assert!(validate_immersion(&l).passed());
    }

    #[test]
    fn identity_frame_puts_base_touch_point_at_infinity() {
        let l = layout_from_field(&regular_field(2), &Normalization::default()).unwrap();
        let o = LatticeIndex::ORIGIN;
        assert!(l.touch_point(o, o.neighbor(0)).unwrap().is_infinite());
        assert!(l.touch_point(o, o.neighbor(5)).unwrap().approx_eq(&ExtComplex::ZERO, 1e-15));
        assert!(l.touch_point(o.neighbor(5), o.neighbor(0)).unwrap().approx_eq(&ExtComplex::ONE, 1e-15));
    }

    #[test]
    fn doyle_unit_ratios_are_regular() {
        let p = DoyleParams::new(1.0, 1.0, 1.0).unwrap();
        let l = doyle_spiral(&p, Window::square(3)).unwrap();
        for (v, c) in &l.circles {
            let (center, r) = c.center_radius().unwrap();
            assert!((r - 1.0).abs() < 1e-15);
            assert!((center - v.position() * 2.0).norm() < 1e-12);
        }
    }

    #[test]
    fn doyle_flower_radii() {
        let p = DoyleParams::new(2.0, 1.0, 1.0).unwrap();
        let l = doyle_spiral(&p, Window::square(2)).unwrap();
        let radii: Vec<f64> = LatticeIndex::ORIGIN
            .neighbors()
            .iter()
            .map(|u| l.circle(u).unwrap().center_radius().unwrap().1)
            .collect();
        let expect = [2.0, 1.0, 0.5, 0.5, 1.0, 2.0];
        for k in 0..6 {
            assert!((radii[k] - expect[k]).abs() < 1e-14);
        }
        let f = l.flower_at(LatticeIndex::ORIGIN).unwrap();
        let s = cross_ratios_s(&f).unwrap();
        assert!(s.opposite_defect() < 1e-12);
        assert!(is_conformally_symmetric(&f).unwrap().symmetric);
        assert!(validate_immersion(&l).passed());
    }

    #[test]
    fn round_trip_through_layout() {
        let p = SolutionParams::new(PI / 3.0 + 0.01, PI / 3.0, PI / 3.0 - 0.004).unwrap();
        let f = solution_field(&p, Window::square(4)).unwrap();
        let l = layout_from_field(&f, &Normalization::standard()).unwrap();
        let back = field_from_layout(&l).unwrap();
        // Edges on the rim lack the petals needed to read them back.
        assert!(back.len() * 2 > f.len());
        for (e, s) in back.edges() {
            assert!((f.value(&e).unwrap() - s).norm() < 1e-9, "{e:?}");
        }
    }

    #[test]
    fn broken_field_is_rejected() {
        let mut f = regular_field(3);
        let e = HexEdge::around(LatticeIndex::new(1, 1), 0);
        f.set(e, Complex::new(0.0, 2.0)).unwrap();
        assert!(matches!(
            layout_from_field(&f, &Normalization::default()),
            Err(HexError::FieldInconsistent { .. })
        ));
    }

    #[test]
    fn zeroed_radius_is_degenerate() {
        let p = DoyleParams::new(1.2, 0.9, 1.0).unwrap();
        let mut l = doyle_spiral(&p, Window::square(2)).unwrap();
        let c = l.circles[&LatticeIndex::ORIGIN].center_radius().unwrap().0;
        l.circles.insert(LatticeIndex::ORIGIN, OrientedCircle::from_center_radius(c, 0.0, Orientation::Positive));
        let rep = validate_immersion(&l);
        assert!(!rep.passed());
        assert!(rep.failures.iter().any(|f| f.kind == FailureKind::Degenerate));
    }

    #[test]
    fn doyle_involution_maps_layout_to_itself() {
        let p = DoyleParams::new(1.3, 0.8, 1.0).unwrap();
        let l = doyle_spiral(&p, Window::square(3)).unwrap();
        assert!(involution_invariance(&l, LatticeIndex::ORIGIN).unwrap() < 1e-9);
    }
}
