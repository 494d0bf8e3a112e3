//! Continuum limit of near-regular packings: Schwarzian derivatives, Airy
//! functions and the discrete Schwarzian of cross-ratio fields.
//!
//! Airy functions are evaluated from the Maclaurin series of `ψ'' = zψ`. The
//! initial values `Ai(0)` and `Ai'(0)` are not hard-coded; they come from
//! quadrature of the oscillatory integral `(1/π)∫₀^∞ cos(xt + t³/3) dt` and
//! its `x`-derivative at `x = 0`, and `Bi` follows from the rotation relation
//! `Bi(z) = i q² Ai(q² z) - i q Ai(q z)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[cfg(target_has_atomic = "64")]
use core::sync::atomic::{AtomicU64, Ordering};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{HexError, Result};
use crate::lattice::{Direction, EdgeField, HexEdge, LatticeIndex};
use crate::moebius::ExtComplex;
use crate::Complex;

/// Radius of the disk on which the series is trusted at double precision.
pub const VALIDATED_RADIUS: f64 = 6.0;

/// Default finite-difference step of [`schwarzian_fd`].
pub const DEFAULT_STEP: f64 = 1e-3;

const SERIES_CUTOFF: f64 = 1e-18;
const SQRT3: f64 = 1.732_050_807_568_877_2;

/// The cube root of unity `e^{2πi/3}`.
pub fn q() -> Complex {
    Complex::new(-0.5, SQRT3 / 2.0)
}

// ---------------------------------------------------------------------------
// Quadrature

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

fn integrate(rule: &[(f64, f64)], a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    rule.iter().map(|&(x, w)| w * f(mid + half * x)).sum::<f64>() * half
}

/// Wynn's epsilon acceleration of a sequence of partial sums.
fn wynn_epsilon(partial: &[f64]) -> f64 {
    let n = partial.len();
    let mut prev = alloc::vec![0.0; n + 1];
    let mut cur: Vec<f64> = partial.to_vec();
    let mut best = partial[n - 1];
    let mut column = 0;
    while cur.len() > 1 {
        let next: Vec<f64> = (0..cur.len() - 1)
            .map(|j| {
                let d = cur[j + 1] - cur[j];
                if d == 0.0 {
                    f64::INFINITY
                } else {
                    prev[j + 1] + 1.0 / d
                }
            })
            .collect();
        column += 1;
        if next.iter().any(|x| !x.is_finite()) {
            break;
        }
        prev = cur;
        cur = next;
        if column % 2 == 0 {
            best = cur[cur.len() - 1];
        }
    }
    best
}

/// `∫₀^∞ g(t³/3) t^p dt` for `g` = cos or sin.
///
/// The first stretch, up to the first zero of `g` past the origin, is done in
/// `t`. Beyond it the substitution `u = t³/3` turns the integrand into
/// `g(u) (3u)^{(p-2)/3}`, integrated between consecutive zeros of `g`; the
/// resulting alternating series is summed with Wynn's epsilon algorithm.
fn oscillatory_integral(cosine: bool, p: i32) -> f64 {
    let rule = gauss_legendre(24);
    let g = |u: f64| if cosine { u.cos() } else { u.sin() };
    let first_zero = if cosine { PI / 2.0 } else { PI };
    let t_end = (3.0 * first_zero).cbrt();
    let mut head = 0.0;
    let pieces = 8;
    for j in 0..pieces {
        let (a, b) = (t_end * j as f64 / pieces as f64, t_end * (j + 1) as f64 / pieces as f64);
        head += integrate(&rule, a, b, |t| g(t * t * t / 3.0) * t.powi(p));
    }
    let exponent = (p as f64 - 2.0) / 3.0;
    let mut sum = head;
    let mut partial = Vec::with_capacity(48);
    for k in 0..48 {
        let a = first_zero + k as f64 * PI;
        sum += integrate(&rule, a, a + PI, |u| g(u) * (3.0 * u).powf(exponent));
        partial.push(sum);
    }
    wynn_epsilon(&partial)
}

#[cfg(target_has_atomic = "64")]
static AI0_BITS: AtomicU64 = AtomicU64::new(0);
#[cfg(target_has_atomic = "64")]
static AI0P_BITS: AtomicU64 = AtomicU64::new(0);

/// `(Ai(0), Ai'(0))` from quadrature, computed once per process.
///
/// Targets without 64-bit atomics recompute on every call.
pub fn initial_values() -> (f64, f64) {
    #[cfg(target_has_atomic = "64")]
    {
        let cached = AI0_BITS.load(Ordering::Acquire);
        if cached != 0 {
            return (f64::from_bits(cached), f64::from_bits(AI0P_BITS.load(Ordering::Acquire)));
        }
    }
    let ai0 = oscillatory_integral(true, 0) / PI;
    let ai0p = -oscillatory_integral(false, 1) / PI;
    #[cfg(target_has_atomic = "64")]
    {
        AI0P_BITS.store(ai0p.to_bits(), Ordering::Release);
        AI0_BITS.store(ai0.to_bits(), Ordering::Release);
    }
    (ai0, ai0p)
}

// ---------------------------------------------------------------------------
// Series

/// Value and derivative of the solution of `ψ'' = zψ` with `ψ(0) = v0`,
/// `ψ'(0) = d0`.
pub fn airy_series(z: Complex, v0: f64, d0: f64) -> (Complex, Complex) {
    // c_n = c_{n-3} / (n (n-1)), c_2 = 0.
    let mut c = [Complex::new(v0, 0.0), Complex::new(d0, 0.0), Complex::new(0.0, 0.0)];
    let mut value = c[0] + c[1] * z;
    let mut deriv = c[1];
    // zpow holds z^(n-1) at the top of the loop.
    let mut zpow = z;
    let mut quiet = 0;
    for n in 2..2000usize {
        let cn = if n == 2 { Complex::new(0.0, 0.0) } else { c[n % 3] / (n * (n - 1)) as f64 };
        c[n % 3] = cn;
        let dterm = cn * zpow * n as f64;
        zpow *= z;
        let vterm = cn * zpow;
        value += vterm;
        deriv += dterm;
        let small = vterm.norm() < SERIES_CUTOFF * value.norm().max(1.0) && dterm.norm() < SERIES_CUTOFF * deriv.norm().max(1.0);
        quiet = if small { quiet + 1 } else { 0 };
        if quiet >= 3 && n > 3 {
            break;
        }
    }
    (value, deriv)
}

/// `Ai`, `Ai'`, `Bi` and `Bi'` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryValues {
    pub ai: Complex,
    pub ai_prime: Complex,
    pub bi: Complex,
    pub bi_prime: Complex,
}

impl AiryValues {
    pub fn wronskian(&self) -> Complex {
        self.ai * self.bi_prime - self.ai_prime * self.bi
    }
}

fn check_domain(z: Complex) -> Result<()> {
    if !(z.norm() <= VALIDATED_RADIUS) {
        return Err(HexError::OutOfValidatedDomain);
    }
    Ok(())
}

/// `Ai(z)` and `Ai'(z)`.
pub fn airy_ai(z: Complex) -> Result<(Complex, Complex)> {
    check_domain(z)?;
    let (a0, a1) = initial_values();
    Ok(airy_series(z, a0, a1))
}

/// `Bi(z)` and `Bi'(z)` from their own series, with initial data
/// `Bi(0) = √3 Ai(0)` and `Bi'(0) = -√3 Ai'(0)` forced by the rotation relation.
pub fn airy_bi_series(z: Complex) -> Result<(Complex, Complex)> {
    check_domain(z)?;
    let (a0, a1) = initial_values();
    Ok(airy_series(z, SQRT3 * a0, -SQRT3 * a1))
}

pub fn airy_with_derivatives(z: Complex) -> Result<AiryValues> {
    check_domain(z)?;
    let (a0, a1) = initial_values();
    let (q1, q2) = (q(), q() * q());
    let (ai, ai_prime) = airy_series(z, a0, a1);
    let (u1, u1p) = airy_series(q1 * z, a0, a1);
    let (u2, u2p) = airy_series(q2 * z, a0, a1);
    let i = Complex::new(0.0, 1.0);
    Ok(AiryValues {
        ai,
        ai_prime,
        bi: i * q2 * u2 - i * q1 * u1,
        bi_prime: i * q2 * q2 * u2p - i * q1 * q1 * u1p,
    })
}

/// `(Ai(z), Bi(z))` for `|z| ≤ 6`.
pub fn airy(z: Complex) -> Result<(Complex, Complex)> {
    airy_with_derivatives(z).map(|v| (v.ai, v.bi))
}

/// The rotationally symmetric solution `(Bi - √3 Ai)/(Bi + √3 Ai)` of the
/// Airy Schwarzian equation, with `f(0) = 0` and `f(qz) = q f(z)`.
///
/// Its Schwarzian derivative is `-2z`; see [`airy_map_unit`] for the rescaled
/// map with Schwarzian `z`.
pub fn airy_map(z: Complex) -> Result<ExtComplex> {
    let (ai, bi) = airy(z)?;
    Ok(ExtComplex::from_homogeneous(bi - ai * SQRT3, bi + ai * SQRT3))
}

/// Factor `κ = -2^{-1/3}` with `S(airy_map(κ z)) = z`.
pub fn unit_scale() -> f64 {
    -(0.5f64.cbrt())
}

/// `airy_map(κ z)`, normalized so that its Schwarzian is exactly `z`. The
/// rotation symmetry and `f(0) = 0` carry over since `κ` is real.
pub fn airy_map_unit(z: Complex) -> Result<ExtComplex> {
    airy_map(z * unit_scale())
}

// ---------------------------------------------------------------------------
// Schwarzian derivative

/// Schwarzian `(f''/f')' - (f''/f')²/2 = f'''/f' - (3/2)(f''/f')²` by fourth
/// order central differences with step `h`.
pub fn schwarzian_fd(f: impl Fn(Complex) -> Complex, z: Complex, h: f64) -> Result<Complex> {
    let s = |k: i32| f(z + h * k as f64);
    let (m3, m2, m1, z0, p1, p2, p3) = (s(-3), s(-2), s(-1), s(0), s(1), s(2), s(3));
    let d1 = (-p2 + p1 * 8.0 - m1 * 8.0 + m2) / (12.0 * h);
    let d2 = (-p2 + p1 * 16.0 - z0 * 30.0 + m1 * 16.0 - m2) / (12.0 * h * h);
    let d3 = (-p3 + p2 * 8.0 - p1 * 13.0 + m1 * 13.0 - m2 * 8.0 + m3) / (8.0 * h * h * h);
    let scale = [m2, m1, z0, p1, p2].iter().map(|w| w.norm()).fold(0.0, f64::max);
    if !(d1.norm() > 1e-12 * scale) || !d1.is_finite() {
        return Err(HexError::CriticalPoint);
    }
    let r = d2 / d1;
    Ok(d3 / d1 - r * r * 1.5)
}

/// Adapter turning a map with values on the sphere into a finite sampler,
/// for use with [`schwarzian_fd`] away from poles.
pub fn finite_part(f: impl Fn(Complex) -> Result<ExtComplex>) -> impl Fn(Complex) -> Complex {
    move |z| match f(z) {
        Ok(ExtComplex::Finite(w)) => w,
        _ => Complex::new(f64::NAN, f64::NAN),
    }
}

/// `S(f) = A z + B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchwarzianLinear {
    pub a: f64,
    pub b: Complex,
}

/// `z ↦ λ z + μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    pub lambda: f64,
    pub mu: Complex,
}

impl AffineMap {
    pub fn apply(&self, z: Complex) -> Complex {
        z * self.lambda + self.mu
    }
}

/// Affine change of variable `g` with `S(f∘g) = A z + B` whenever `S(f) = z`.
///
/// From `S(f∘g) = S(f)(g) λ²` this needs `λ³ = A` and `μ λ² = B`.
pub fn normalize_linear_schwarzian(s: SchwarzianLinear) -> Result<AffineMap> {
    if s.a == 0.0 {
        return Err(HexError::ConstantCase);
    }
    if !s.a.is_finite() || !s.b.is_finite() {
        return Err(HexError::InvalidParameter("non-finite Schwarzian coefficients"));
    }
    let lambda = s.a.cbrt();
    Ok(AffineMap { lambda, mu: s.b / (lambda * lambda) })
}

// ---------------------------------------------------------------------------
// Discrete Schwarzian

/// `h = (s/(i√3) - 1)/ε²` on every edge of the field.
pub fn discrete_schwarzians(field: &EdgeField, eps: f64) -> Result<BTreeMap<HexEdge, Complex>> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(HexError::InvalidParameter("epsilon must be positive"));
    }
    let reg = Complex::new(0.0, SQRT3);
    field
        .edges()
        .map(|(e, s)| {
            let rel = s / reg - 1.0;
            if !(rel.norm() < 0.5) {
                return Err(HexError::FarFromRegular(e));
            }
            Ok((e, rel / (eps * eps)))
        })
        .collect()
}

/// Directional components of the discrete Schwarzian around one vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripleSample {
    pub vertex: LatticeIndex,
    /// Continuum coordinate `ε e^{iπ/6} (n + m e^{iπ/3})`.
    pub point: Complex,
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
}

impl TripleSample {
    /// `4(a + q² b + q c)`.
    pub fn schwarzian(&self) -> Complex {
        let q = q();
        (self.a + q * q * self.b + q * self.c) * 4.0
    }

    pub fn sum(&self) -> Complex {
        self.a + self.b + self.c
    }

    /// Largest of `|6a - Re S|`, `|6b - Re(qS)|`, `|6c - Re(q²S)|`.
    pub fn real_part_residual(&self) -> f64 {
        let s = self.schwarzian();
        let q = q();
        [(self.a, s), (self.b, q * s), (self.c, q * q * s)]
            .iter()
            .map(|(x, t)| (x.re * 6.0 - t.re).abs())
            .fold(0.0, f64::max)
    }
}

/// Samples of the directional Schwarzians `a, b, c` with `q = e^{2πi/3}`.
///
/// In the continuum coordinate `ζ = e^{iπ/6} p` the lattice level `n` grows
/// with `Re ζ`, the level `1 - n - m` with `Re(qζ)` and `m` with `Re(q²ζ)`.
/// Hence `a` collects the A edges, `b` the C edges and `c` the B edges of each
/// hexagon, averaging the two opposite edges of a direction.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuumTriple {
    pub eps: f64,
    pub samples: Vec<TripleSample>,
}

impl ContinuumTriple {
    pub fn from_schwarzians(h: &BTreeMap<HexEdge, Complex>, eps: f64, vertices: impl Iterator<Item = LatticeIndex>) -> Self {
        let rot = Complex::from_polar(1.0, PI / 6.0);
        let samples = vertices
            .filter_map(|v| {
                let mut acc = [Complex::new(0.0, 0.0); 3];
                for e in HexEdge::hexagon(v) {
                    let slot = match e.dir {
                        Direction::A => 0,
                        Direction::C => 1,
                        Direction::B => 2,
                    };
                    acc[slot] += *h.get(&e)? * 0.5;
                }
                Some(TripleSample { vertex: v, point: rot * v.position() * eps, a: acc[0], b: acc[1], c: acc[2] })
            })
            .collect();
        ContinuumTriple { eps, samples }
    }

    pub fn from_field(field: &EdgeField, eps: f64) -> Result<Self> {
        let h = discrete_schwarzians(field, eps)?;
        Ok(Self::from_schwarzians(&h, eps, field.window().vertices()))
    }

    pub fn max_sum(&self) -> f64 {
        self.samples.iter().map(|s| s.sum().norm()).fold(0.0, f64::max)
    }

    pub fn max_real_part_residual(&self) -> f64 {
        self.samples.iter().map(TripleSample::real_part_residual).fold(0.0, f64::max)
    }
}

// ---------------------------------------------------------------------------
// Grid images

/// Region of the standard hexagonal grid to map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridWindow {
    /// Hexagons whose centers lie in the disk `|z| ≤ r`.
    Disk(f64),
    /// Hexagons whose centers lie in the rectangle.
    Rect { re: (f64, f64), im: (f64, f64) },
}

impl GridWindow {
    fn contains(&self, z: Complex) -> bool {
        match *self {
            GridWindow::Disk(r) => z.norm() <= r + 1e-12,
            GridWindow::Rect { re, im } => re.0 <= z.re && z.re <= re.1 && im.0 <= z.im && z.im <= im.1,
        }
    }

    fn reach(&self) -> f64 {
        match *self {
            GridWindow::Disk(r) => r,
            GridWindow::Rect { re, im } => [re.0, re.1, im.0, im.1].iter().map(|x| x.abs()).fold(0.0, f64::max) * 2.0,
        }
    }
}

/// Images of the hexagons of a honeycomb under a map.
#[derive(Debug, Clone, PartialEq)]
pub struct GridImage {
    pub spacing: f64,
    /// Distinct hexagon vertices with their images.
    pub vertices: Vec<(Complex, ExtComplex)>,
    /// One closed polyline per hexagon, sides subdivided for smooth images.
    pub polylines: Vec<Vec<ExtComplex>>,
}

impl GridImage {
    /// Bounding box of the finite image points.
    pub fn bounding_box(&self) -> Option<(Complex, Complex)> {
        let mut it = self.vertices.iter().filter_map(|(_, w)| w.finite());
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), w| {
            (Complex::new(lo.re.min(w.re), lo.im.min(w.im)), Complex::new(hi.re.max(w.re), hi.im.max(w.im)))
        }))
    }
}

/// The honeycomb with hexagon centers on `spacing · (n + m e^{iπ/3})`, one
/// center at the origin, mapped by `f`. Each side is split into
/// `subdivisions` segments.
pub fn hexgrid_image(
    f: impl Fn(Complex) -> Result<ExtComplex>,
    spacing: f64,
    window: GridWindow,
    subdivisions: usize,
) -> Result<GridImage> {
    if !(spacing > 0.0 && spacing.is_finite()) {
        return Err(HexError::InvalidParameter("spacing must be positive"));
    }
    let sub = subdivisions.max(1);
    let radius = spacing / SQRT3;
    let corners: Vec<Complex> = (0..6).map(|k| Complex::from_polar(radius, PI / 6.0 + k as f64 * PI / 3.0)).collect();
    let reach = (window.reach() / spacing).ceil() as i64 * 2 + 2;
    let mut vertices: Vec<(Complex, ExtComplex)> = Vec::new();
    let mut polylines = Vec::new();
    for n in -reach..=reach {
        for m in -reach..=reach {
            let c = LatticeIndex::new(n, m).position() * spacing;
            if !window.contains(c) {
                continue;
            }
            let mut line = Vec::with_capacity(6 * sub + 1);
            for k in 0..6 {
                let (p0, p1) = (c + corners[k], c + corners[(k + 1) % 6]);
                if !vertices.iter().any(|(v, _)| (v - p0).norm() < 1e-9 * spacing) {
                    vertices.push((p0, f(p0)?));
                }
                for j in 0..sub {
                    line.push(f(p0 + (p1 - p0) * (j as f64 / sub as f64))?);
                }
            }
            line.push(line[0]);
            polylines.push(line);
        }
    }
    Ok(GridImage { spacing, vertices, polylines })
}
