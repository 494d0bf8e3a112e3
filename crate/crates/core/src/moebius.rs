//! Extended complex plane, cross-ratios, Möbius maps and oriented circles.
//!
//! Points are handled in homogeneous coordinates internally so that the point
//! at infinity never needs special casing in formulas: `z` is `[z : 1]` and
//! infinity is `[1 : 0]`. Every expression below uses each point the same
//! number of times in numerator and denominator, so the projective scale
//! cancels.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{HexError, Result};
use crate::tolerance;
use crate::Complex;

pub(crate) type Mat2 = [[Complex; 2]; 2];

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);
const I: Complex = Complex::new(0.0, 1.0);

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtComplex {
    Finite(Complex),
    Infinity,
}

impl ExtComplex {
    pub const INFINITY: ExtComplex = ExtComplex::Infinity;
    pub const ZERO: ExtComplex = ExtComplex::Finite(ZERO);
    pub const ONE: ExtComplex = ExtComplex::Finite(ONE);

    pub fn new(re: f64, im: f64) -> Self {
        ExtComplex::Finite(Complex::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }

    pub fn finite(&self) -> Option<Complex> {
        match *self {
            ExtComplex::Finite(z) => Some(z),
            ExtComplex::Infinity => None,
        }
    }

    /// Homogeneous coordinates `[z : 1]` or `[1 : 0]`.
    pub fn homogeneous(&self) -> [Complex; 2] {
        match *self {
            ExtComplex::Finite(z) => [z, ONE],
            ExtComplex::Infinity => [ONE, ZERO],
        }
    }

    /// The point `[num : den]`. A zero (or overflowing) ratio denominator gives infinity.
    pub fn from_homogeneous(num: Complex, den: Complex) -> Self {
        if den.re == 0.0 && den.im == 0.0 {
            return ExtComplex::Infinity;
        }
        let z = num / den;
        if z.re.is_infinite() || z.im.is_infinite() {
            ExtComplex::Infinity
        } else {
            ExtComplex::Finite(z)
        }
    }

    /// Chordal distance on the unit Riemann sphere,
    /// `2|a-b| / sqrt((1+|a|^2)(1+|b|^2))`, which lies in `[0, 2]`.
    pub fn chordal_distance(&self, other: &ExtComplex) -> f64 {
        match (*self, *other) {
            (ExtComplex::Infinity, ExtComplex::Infinity) => 0.0,
            (ExtComplex::Finite(a), ExtComplex::Infinity) | (ExtComplex::Infinity, ExtComplex::Finite(a)) => {
                2.0 / (1.0 + a.norm_sqr()).sqrt()
            }
            (ExtComplex::Finite(a), ExtComplex::Finite(b)) => {
                2.0 * (a - b).norm() / ((1.0 + a.norm_sqr()) * (1.0 + b.norm_sqr())).sqrt()
            }
        }
    }

    pub fn approx_eq(&self, other: &ExtComplex, tol: f64) -> bool {
        self.chordal_distance(other) <= tol
    }
}

impl From<Complex> for ExtComplex {
    fn from(z: Complex) -> Self {
        ExtComplex::Finite(z)
    }
}

impl From<f64> for ExtComplex {
    fn from(x: f64) -> Self {
        ExtComplex::new(x, 0.0)
    }
}

#[inline]
pub(crate) fn wedge(p: [Complex; 2], q: [Complex; 2]) -> Complex {
    p[0] * q[1] - p[1] * q[0]
}

fn coincident(a: &ExtComplex, b: &ExtComplex) -> bool {
    a.chordal_distance(b) <= tolerance::COINCIDENCE
}

/// Cross-ratio `(a-b)(c-d) / ((b-c)(d-a))` with the usual limits at infinity.
pub fn cross_ratio(a: ExtComplex, b: ExtComplex, c: ExtComplex, d: ExtComplex) -> Result<ExtComplex> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in i + 1..4 {
            if coincident(&pts[i], &pts[j]) {
                return Err(HexError::DegenerateInput("cross-ratio of coincident points"));
            }
        }
    }
    let [a, b, c, d] = pts.map(|p| p.homogeneous());
    Ok(ExtComplex::from_homogeneous(
        wedge(a, b) * wedge(c, d),
        wedge(b, c) * wedge(d, a),
    ))
}

/// Multi-ratio of six points,
/// `(z1-z2)(z3-z4)(z5-z6) / ((z2-z3)(z4-z5)(z6-z1))`.
pub fn multi_ratio(z: &[ExtComplex; 6]) -> Result<ExtComplex> {
    for k in 0..6 {
        if coincident(&z[k], &z[(k + 1) % 6]) {
            return Err(HexError::DegenerateInput("multi-ratio with coincident consecutive points"));
        }
    }
    let h = z.map(|p| p.homogeneous());
    Ok(ExtComplex::from_homogeneous(
        wedge(h[0], h[1]) * wedge(h[2], h[3]) * wedge(h[4], h[5]),
        wedge(h[1], h[2]) * wedge(h[3], h[4]) * wedge(h[5], h[0]),
    ))
}

/// `|m + 1|` for a multi-ratio value, infinite when `m` is.
pub fn multi_ratio_defect(m: ExtComplex) -> f64 {
    match m {
        ExtComplex::Finite(m) => (m + 1.0).norm(),
        ExtComplex::Infinity => f64::INFINITY,
    }
}

/// The sixth point that makes the multi-ratio of `z1..z5, z6` equal to `-1`.
///
/// The multi-ratio is a Möbius function of `z6`, so the solution is unique.
pub fn complete_sixth_point(z: &[ExtComplex; 5]) -> Result<ExtComplex> {
    for k in 0..4 {
        if coincident(&z[k], &z[k + 1]) {
            return Err(HexError::DegenerateInput("coincident consecutive points"));
        }
    }
    let h = z.map(|p| p.homogeneous());
    let k = wedge(h[0], h[1]) * wedge(h[2], h[3]) / (wedge(h[1], h[2]) * wedge(h[3], h[4]));
    if !(k.re.is_finite() && k.im.is_finite()) {
        return Err(HexError::DegenerateInput("coincident points"));
    }
    Ok(ExtComplex::from_homogeneous(k * h[4][0] - h[0][0], k * h[4][1] - h[0][1]))
}

pub(crate) fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

fn adjoint(a: &Mat2) -> Mat2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

fn frobenius(a: &Mat2) -> f64 {
    (a[0][0].norm_sqr() + a[0][1].norm_sqr() + a[1][0].norm_sqr() + a[1][1].norm_sqr()).sqrt()
}

/// Möbius transformation `z -> (a z + b) / (c z + d)`, stored with
/// determinant one and a canonical sign: the first entry that is not
/// negligible has argument in `(-pi/2, pi/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    m: Mat2,
}

impl MoebiusMap {
    pub fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Result<Self> {
        Self::from_matrix([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        MoebiusMap { m: [[ONE, ZERO], [ZERO, ONE]] }
    }

    pub(crate) fn from_matrix(m: Mat2) -> Result<Self> {
        let scale = m.iter().flatten().fold(0.0f64, |acc, x| acc.max(x.norm()));
        if !(scale.is_finite() && scale > 0.0) {
            return Err(HexError::DegenerateInput("Möbius matrix is zero or not finite"));
        }
        let m = m.map(|row| row.map(|x| x / scale));
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det.norm() <= 1e-300 {
            return Err(HexError::DegenerateInput("singular Möbius matrix"));
        }
        let root = det.sqrt();
        let mut m = m.map(|row| row.map(|x| x / root));
        let biggest = m.iter().flatten().fold(0.0f64, |acc, x| acc.max(x.norm()));
        let lead = m
            .iter()
            .flatten()
            .copied()
            .find(|x| x.norm() > 1e-14 * biggest)
            .unwrap_or(ONE);
        let canonical = lead.re > 0.0 || (lead.re == 0.0 && lead.im > 0.0);
        if !canonical {
            m = m.map(|row| row.map(|x| -x));
        }
        Ok(MoebiusMap { m })
    }

    /// Matrix entries `[[a, b], [c, d]]`.
    pub fn matrix(&self) -> Mat2 {
        self.m
    }

    pub fn apply_homogeneous(&self, p: [Complex; 2]) -> [Complex; 2] {
        let m = &self.m;
        [m[0][0] * p[0] + m[0][1] * p[1], m[1][0] * p[0] + m[1][1] * p[1]]
    }

    pub fn apply(&self, z: ExtComplex) -> ExtComplex {
        let [n, d] = self.apply_homogeneous(z.homogeneous());
        ExtComplex::from_homogeneous(n, d)
    }

    pub fn inverse(&self) -> Self {
        let [[a, b], [c, d]] = self.m;
        // det is one, so the adjugate is the inverse; re-canonicalize the sign.
        Self::from_matrix([[d, -b], [-c, a]]).expect("inverse of a normalized map")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MoebiusMap) -> Self {
        Self::from_matrix(mat_mul(&self.m, &other.m)).expect("product of unimodular maps")
    }

    pub fn trace(&self) -> Complex {
        self.m[0][0] + self.m[1][1]
    }

    /// Distance between the maps as elements of PSL(2, C): the smaller of
    /// `|A - B|` and `|A + B|` in the Frobenius norm.
    pub fn projective_distance(&self, other: &MoebiusMap) -> f64 {
        let mut minus = 0.0;
        let mut plus = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                minus += (self.m[i][j] - other.m[i][j]).norm_sqr();
                plus += (self.m[i][j] + other.m[i][j]).norm_sqr();
            }
        }
        minus.min(plus).sqrt()
    }

    pub fn norm(&self) -> f64 {
        frobenius(&self.m)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.projective_distance(&MoebiusMap::identity()) <= tol
    }

    pub fn is_involution(&self, tol: f64) -> bool {
        !self.is_identity(tol) && self.compose(self).is_identity(tol)
    }

    /// The map sending `p[0], p[1], p[2]` to `0, 1, infinity`.
    pub fn to_zero_one_infinity(p: [ExtComplex; 3]) -> Result<Self> {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if coincident(&p[i], &p[j]) {
                return Err(HexError::DegenerateInput("repeated point in triple"));
            }
        }
        let [p1, p2, p3] = p.map(|x| x.homogeneous());
        // z -> [(z ^ p1)(p2 ^ p3) : (z ^ p3)(p2 ^ p1)] with z ^ p = z0 p[1] - z1 p[0].
        let k1 = wedge(p2, p3);
        let k3 = wedge(p2, p1);
        Self::from_matrix([[k1 * p1[1], -k1 * p1[0]], [k3 * p3[1], -k3 * p3[0]]])
    }

    /// The unique map with `src[i] -> dst[i]`.
    pub fn from_triples(src: [ExtComplex; 3], dst: [ExtComplex; 3]) -> Result<Self> {
        let s = Self::to_zero_one_infinity(src)?;
        let d = Self::to_zero_one_infinity(dst)?;
        Ok(d.inverse().compose(&s))
    }

    /// Rotation-free scaling/translation `z -> scale z + shift`.
    pub fn affine(scale: Complex, shift: Complex) -> Result<Self> {
        Self::new(scale, shift, ZERO, ONE)
    }
}

impl core::ops::Mul for MoebiusMap {
    type Output = MoebiusMap;
    fn mul(self, rhs: MoebiusMap) -> MoebiusMap {
        self.compose(&rhs)
    }
}

/// See [`MoebiusMap::from_triples`].
pub fn moebius_from_triples(src: [ExtComplex; 3], dst: [ExtComplex; 3]) -> Result<MoebiusMap> {
    MoebiusMap::from_triples(src, dst)
}

/// The involution `M` with `M(z_k) = z_{k+3}`; exists exactly when the
/// multi-ratio of the six points is `-1`.
pub fn involution_from_pairs(z: &[ExtComplex; 6]) -> Result<MoebiusMap> {
    involution_from_pairs_tol(z, tolerance::default_tolerance())
}

pub fn involution_from_pairs_tol(z: &[ExtComplex; 6], tol: f64) -> Result<MoebiusMap> {
    let residual = multi_ratio_defect(multi_ratio(z)?);
    if !(residual <= tol) {
        return Err(HexError::NotAFlowerConfiguration { residual });
    }
    let m = MoebiusMap::from_triples([z[0], z[1], z[2]], [z[3], z[4], z[5]])?;
    let back = (0..3).fold(0.0f64, |acc, k| acc.max(m.apply(z[k + 3]).chordal_distance(&z[k])));
    if back > tolerance::SPREAD {
        return Err(HexError::NotAFlowerConfiguration { residual: residual.max(back) });
    }
    Ok(m)
}

/// Fixed points of a non-identity map, roots of `c z^2 + (d - a) z - b = 0`.
/// A parabolic map returns the same point twice.
pub fn fixed_points(m: &MoebiusMap) -> Result<(ExtComplex, ExtComplex)> {
    if m.is_identity(tolerance::CONSTRUCTION) {
        return Err(HexError::IdentityMap);
    }
    let [[a, b], [c, d]] = m.matrix();
    let scale = m.norm();
    if c.norm() <= 1e-14 * scale {
        let diff = d - a;
        if diff.norm() <= 1e-14 * scale {
            return Ok((ExtComplex::Infinity, ExtComplex::Infinity));
        }
        return Ok((ExtComplex::Infinity, ExtComplex::Finite(b / diff)));
    }
    let tr = a + d;
    let root = (tr * tr - 4.0).sqrt();
    let amd = a - d;
    let q = if (amd + root).norm() >= (amd - root).norm() { amd + root } else { amd - root };
    if q.norm() <= 1e-14 * scale {
        let z = ExtComplex::Finite(amd / (c * 2.0));
        return Ok((z, z));
    }
    let z1 = q / (c * 2.0);
    let z2 = -(b * 2.0) / q;
    Ok((ExtComplex::Finite(z1), ExtComplex::Finite(z2)))
}

/// Orientation of a circle. A positively oriented circle has its bounded
/// disk on the left, i.e. it runs counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }
}

/// Oriented circle or line `{z : A|z|^2 + conj(B) z + B conj(z) + C = 0}`.
///
/// The region on the left of the direction of traversal is where the form is
/// negative. Real circles are scaled so that `|B|^2 - AC = 1`, which makes
/// `A = ±1/r`; rescaling is always by a positive factor so the orientation
/// is carried by the overall sign.
///
/// Congruence by a unimodular matrix preserves `|B|^2 - AC`, so circles
/// built normalized stay normalized under Möbius maps and the radius can be
/// read off as `1/|A|`. Recomputing the discriminant instead would cancel
/// catastrophically for small circles far from the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedCircle {
    a: f64,
    b: Complex,
    c: f64,
    unit: bool,
}

impl OrientedCircle {
    pub fn from_hermitian(a: f64, b: Complex, c: f64) -> Self {
        let disc = b.norm_sqr() - a * c;
        let scale = if disc > 0.0 {
            disc.sqrt()
        } else {
            a.abs().max(b.norm()).max(c.abs())
        };
        if scale > 0.0 && scale.is_finite() {
            OrientedCircle { a: a / scale, b: b / scale, c: c / scale, unit: disc > 0.0 }
        } else {
            OrientedCircle { a, b, c, unit: false }
        }
    }

    /// Circle with given center and radius. A zero radius gives a degenerate
    /// point circle, which [`is_real_circle`](Self::is_real_circle) rejects.
    pub fn from_center_radius(center: Complex, radius: f64, orientation: Orientation) -> Self {
        let o = orientation.sign();
        if radius > 0.0 && radius.is_finite() {
            let d = center.norm();
            OrientedCircle {
                a: o / radius,
                b: -center * (o / radius),
                c: o * (d - radius) * ((d + radius) / radius),
                unit: true,
            }
        } else {
            OrientedCircle { a: o, b: -center * o, c: o * center.norm_sqr(), unit: false }
        }
    }

    /// Line through `point` traversed in direction `dir`.
    pub fn line(point: Complex, dir: Complex) -> Self {
        // Left of dir is where Im(conj(dir) (z - point)) > 0.
        let len = dir.norm();
        if !(len > 0.0 && len.is_finite()) {
            return OrientedCircle { a: 0.0, b: ZERO, c: 0.0, unit: false };
        }
        let u = dir / len;
        OrientedCircle { a: 0.0, b: -I * u, c: 2.0 * (u.conj() * point).im, unit: true }
    }

    pub fn coefficients(&self) -> (f64, Complex, f64) {
        (self.a, self.b, self.c)
    }

    pub(crate) fn hermitian(&self) -> Mat2 {
        [[Complex::new(self.a, 0.0), self.b], [self.b.conj(), Complex::new(self.c, 0.0)]]
    }

    fn from_mat(h: &Mat2, unit: bool) -> Self {
        let (a, b, c) = (h[0][0].re, (h[0][1] + h[1][0].conj()) * 0.5, h[1][1].re);
        if unit {
            OrientedCircle { a, b, c, unit }
        } else {
            Self::from_hermitian(a, b, c)
        }
    }

    pub fn discriminant(&self) -> f64 {
        self.b.norm_sqr() - self.a * self.c
    }

    /// `|B|^2 - AC > 0`.
    pub fn is_real_circle(&self) -> bool {
        self.unit || self.discriminant() > tolerance::CONSTRUCTION
    }

    pub fn is_line(&self) -> bool {
        self.a == 0.0
    }

    pub fn orientation(&self) -> Orientation {
        if self.a < 0.0 {
            Orientation::Negative
        } else {
            Orientation::Positive
        }
    }

    pub fn reversed(&self) -> Self {
        OrientedCircle { a: -self.a, b: -self.b, c: -self.c, unit: self.unit }
    }

    /// Center and radius, unless the circle is a line.
    pub fn center_radius(&self) -> Option<(Complex, f64)> {
        if self.a == 0.0 {
            return None;
        }
        let r = if self.unit {
            1.0 / self.a.abs()
        } else {
            self.discriminant().max(0.0).sqrt() / self.a.abs()
        };
        Some((-self.b / self.a, r))
    }

    /// Unit normal `n` and offset `d` of a line `{Re(conj(n) z) = d}` whose
    /// left side is `Re(conj(n) z) < d`.
    pub fn line_params(&self) -> Option<(Complex, f64)> {
        if self.a != 0.0 {
            return None;
        }
        let len = self.b.norm();
        if len == 0.0 {
            return None;
        }
        Some((self.b / len, -self.c / (2.0 * len)))
    }

    /// Value of the Hermitian form at `z` (for infinity, the coefficient `A`).
    pub fn eval(&self, z: ExtComplex) -> f64 {
        let p = z.homogeneous();
        self.a * p[0].norm_sqr() + 2.0 * (p[0].conj() * self.b * p[1]).re + self.c * p[1].norm_sqr()
    }

    /// Scale-free incidence residual: the form evaluated on the unit
    /// homogeneous representative of `z`, divided by the coefficient norm.
    pub fn incidence(&self, z: ExtComplex) -> f64 {
        let p = z.homogeneous();
        let pn = p[0].norm_sqr() + p[1].norm_sqr();
        let hn = (self.a * self.a + 2.0 * self.b.norm_sqr() + self.c * self.c).sqrt();
        self.eval(z).abs() / (pn * hn)
    }

    /// Strictly on the left side.
    pub fn is_interior(&self, z: ExtComplex) -> bool {
        self.eval(z) < 0.0
    }

    /// Inversive product of two normalized real circles: `-1` for tangency
    /// with opposite orientations at the touching point, `+1` for tangency
    /// with equal orientations, the cosine of the angle for crossings.
    pub fn inversive_product(&self, other: &OrientedCircle) -> f64 {
        let hermitian = (self.b * other.b.conj()).re - 0.5 * (self.a * other.c + other.a * self.c);
        if !(self.unit && other.unit && self.a != 0.0 && other.a != 0.0) {
            return hermitian;
        }
        // The same quantity in center/radius form, sign * (r1^2 + r2^2 - d^2) / (2 r1 r2).
        // Each form cancels large terms in a different regime (small far
        // circles versus near-lines), so take the one with smaller terms.
        let herm_scale = self.b.norm() * other.b.norm() + 0.5 * (self.a * other.c).abs() + 0.5 * (other.a * self.c).abs();
        let (r1, r2) = (1.0 / self.a.abs(), 1.0 / other.a.abs());
        let d = (self.b / self.a - other.b / other.a).norm();
        let sum = r1 + r2;
        let center_scale = (d + sum) * (d + sum) / (2.0 * r1 * r2);
        if herm_scale <= center_scale {
            return hermitian;
        }
        let gap = (r1 - r2).abs();
        let value = if (d - sum).abs() <= (d - gap).abs() {
            -2.0 * r1 * r2 - (d - sum) * (d + sum)
        } else {
            2.0 * r1 * r2 - (d - gap) * (d + gap)
        };
        (self.a * other.a).signum() * value / (2.0 * r1 * r2)
    }

    /// Image under `m`, by congruence with the inverse matrix.
    pub fn apply_moebius(&self, m: &MoebiusMap) -> Self {
        let inv = m.inverse().matrix();
        let h = mat_mul(&adjoint(&inv), &mat_mul(&self.hermitian(), &inv));
        Self::from_mat(&h, self.unit)
    }

    /// Three points on the circle in the order of traversal.
    pub fn three_points(&self) -> [ExtComplex; 3] {
        if let Some((center, r)) = self.center_radius() {
            let turn = if self.a > 0.0 { I } else { -I };
            [
                ExtComplex::Finite(center + r),
                ExtComplex::Finite(center + turn * r),
                ExtComplex::Finite(center - r),
            ]
        } else if let Some((n, d)) = self.line_params() {
            let p = n * d;
            let dir = I * n;
            [ExtComplex::Finite(p), ExtComplex::Finite(p + dir), ExtComplex::Infinity]
        } else {
            [ExtComplex::Infinity; 3]
        }
    }

    /// Touching point with a tangent circle: the null vector of the
    /// degenerate pencil member `H1 + H2`. For circles that are only nearly
    /// tangent this is the eigenvector of the smallest eigenvalue.
    pub fn tangency_point(&self, other: &OrientedCircle) -> ExtComplex {
        let a = self.a + other.a;
        let b = self.b + other.b;
        let c = self.c + other.c;
        let mid = 0.5 * (a + c);
        let rad = (0.25 * (a - c) * (a - c) + b.norm_sqr()).sqrt();
        let lambda = if mid >= 0.0 { mid - rad } else { mid + rad };
        let v1 = [b, Complex::new(lambda - a, 0.0)];
        let v2 = [Complex::new(lambda - c, 0.0), b.conj()];
        let n1 = v1[0].norm_sqr() + v1[1].norm_sqr();
        let n2 = v2[0].norm_sqr() + v2[1].norm_sqr();
        let v = if n1 >= n2 { v1 } else { v2 };
        ExtComplex::from_homogeneous(v[0], v[1])
    }

    /// Intersection points with another circle (0, 1 or 2 points; tangent
    /// circles report their touching point once).
    pub fn intersections(&self, other: &OrientedCircle) -> Result<Vec<ExtComplex>> {
        let t = MoebiusMap::to_zero_one_infinity(self.three_points())?;
        let back = t.inverse();
        let (a, b, c) = other.apply_moebius(&t).coefficients();
        // On the real axis the form reads a x^2 + 2 Re(b) x + c.
        let p = b.re;
        let scale = a.abs().max(p.abs()).max(c.abs());
        let mut out = Vec::new();
        if a.abs() <= 1e-13 * scale {
            if p.abs() > 1e-13 * scale {
                out.push(back.apply(ExtComplex::new(-c / (2.0 * p), 0.0)));
            }
            out.push(back.apply(ExtComplex::Infinity));
            return Ok(out);
        }
        let disc = p * p - a * c;
        if disc < -1e-13 * scale * scale {
            return Ok(out);
        }
        let root = disc.max(0.0).sqrt();
        if root <= 1e-13 * scale {
            out.push(back.apply(ExtComplex::new(-p / a, 0.0)));
            return Ok(out);
        }
        let q = -(p + p.signum() * root);
        out.push(back.apply(ExtComplex::new(q / a, 0.0)));
        out.push(back.apply(ExtComplex::new(c / q, 0.0)));
        Ok(out)
    }

    /// `n` points spread along the circle, for sampling-based checks.
    pub fn sample(&self, n: usize) -> Vec<ExtComplex> {
        if let Some((center, r)) = self.center_radius() {
            (0..n)
                .map(|j| {
                    let t = 2.0 * PI * (j as f64 + 0.25) / n as f64;
                    ExtComplex::Finite(center + Complex::new(t.cos(), t.sin()) * r)
                })
                .collect()
        } else if let Some((nrm, d)) = self.line_params() {
            (0..n)
                .map(|j| ExtComplex::Finite(nrm * d + I * nrm * (j as f64 - 0.5 * n as f64)))
                .collect()
        } else {
            Vec::new()
        }
    }

    pub fn approx_eq(&self, other: &OrientedCircle, tol: f64) -> bool {
        let d = ((self.a - other.a).powi(2) + (self.b - other.b).norm_sqr() + (self.c - other.c).powi(2)).sqrt();
        let s = 1.0f64.max((self.a * self.a + self.b.norm_sqr() + self.c * self.c).sqrt());
        d <= tol * s
    }
}

/// Circle through three distinct points, oriented by their order.
pub fn circle_through(a: ExtComplex, b: ExtComplex, c: ExtComplex) -> Result<OrientedCircle> {
    let t = MoebiusMap::to_zero_one_infinity([a, b, c])?.matrix();
    // The real axis traversed left to right: -Im z, negative on the upper half plane.
    // Scaled to |B|^2 - AC = 1, which congruence by t preserves.
    let h0: Mat2 = [[ZERO, -I], [I, ZERO]];
    let h = mat_mul(&adjoint(&t), &mat_mul(&h0, &t));
    Ok(OrientedCircle::from_mat(&h, true))
}

/// See [`OrientedCircle::apply_moebius`].
pub fn apply_moebius(m: &MoebiusMap, circle: &OrientedCircle) -> OrientedCircle {
    circle.apply_moebius(m)
}
