//! Cross-ratio fields on the edges of the honeycomb lattice.
//!
//! Hexagons of the honeycomb are dual to the vertices `n + m e^{iπ/3}` of the
//! triangular lattice, so a hexagon is named by a [`LatticeIndex`]. An edge of
//! the honeycomb separates two adjacent hexagons and is named by the pair of
//! adjacent lattice vertices, see [`HexEdge`].
//!
//! The six neighbors of a vertex are numbered counterclockwise starting with
//! `(1, 0)`. Edges come in three directions:
//!
//! | direction | step    | level         |
//! |-----------|---------|---------------|
//! | `A`       | `(0,1)` | `n`           |
//! | `B`       | `(1,0)` | `m`           |
//! | `C`       | `(-1,1)`| `1 - n - m`   |
//!
//! The level of an edge is constant along lines of its own direction, and the
//! three levels seen by a hexagon at `(n, m)` always sum to one. Going around
//! a hexagon counterclockwise the directions read `B, A, C, B, A, C`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{HexError, Result};
use crate::flower::he_schramm_residuals;
use crate::tolerance;
use crate::Complex;

/// Vertex `n + m e^{iπ/3}` of the triangular lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeIndex {
    pub n: i64,
    pub m: i64,
}

/// Neighbor steps in counterclockwise order.
pub const NEIGHBOR_OFFSETS: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

impl LatticeIndex {
    pub const ORIGIN: LatticeIndex = LatticeIndex { n: 0, m: 0 };

    pub const fn new(n: i64, m: i64) -> Self {
        LatticeIndex { n, m }
    }

    /// Position of the vertex in the plane.
    pub fn position(&self) -> Complex {
        let (s, c) = (PI / 3.0).sin_cos();
        Complex::new(self.n as f64 + self.m as f64 * c, self.m as f64 * s)
    }

    pub fn neighbor(&self, k: usize) -> LatticeIndex {
        let (dn, dm) = NEIGHBOR_OFFSETS[k % 6];
        LatticeIndex::new(self.n + dn, self.m + dm)
    }

    pub fn neighbors(&self) -> [LatticeIndex; 6] {
        core::array::from_fn(|k| self.neighbor(k))
    }

    /// Position `k` of `other` among the neighbors of `self`.
    pub fn neighbor_slot(&self, other: &LatticeIndex) -> Option<usize> {
        let d = (other.n - self.n, other.m - self.m);
        NEIGHBOR_OFFSETS.iter().position(|&o| o == d)
    }

    /// Point reflection `2·self - v`.
    pub fn reflect(&self, v: &LatticeIndex) -> LatticeIndex {
        LatticeIndex::new(2 * self.n - v.n, 2 * self.m - v.m)
    }
}

/// One of the three edge directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    A,
    B,
    C,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::A, Direction::B, Direction::C];

    /// Lattice step from the base vertex of an edge to its other endpoint.
    pub fn step(self) -> (i64, i64) {
        match self {
            Direction::A => (0, 1),
            Direction::B => (1, 0),
            Direction::C => (-1, 1),
        }
    }

    /// Direction of the edge shared with neighbor `k`.
    pub fn of_slot(k: usize) -> Direction {
        match k % 3 {
            0 => Direction::B,
            1 => Direction::A,
            _ => Direction::C,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::A => "A",
            Direction::B => "B",
            Direction::C => "C",
        }
    }

    pub fn from_name(s: &str) -> Option<Direction> {
        match s {
            "A" | "a" => Some(Direction::A),
            "B" | "b" => Some(Direction::B),
            "C" | "c" => Some(Direction::C),
            _ => None,
        }
    }
}

/// Honeycomb edge between the hexagons at `base` and `base + dir.step()`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HexEdge {
    pub base: LatticeIndex,
    pub dir: Direction,
}

impl HexEdge {
    pub const fn new(base: LatticeIndex, dir: Direction) -> Self {
        HexEdge { base, dir }
    }

    pub fn endpoints(&self) -> (LatticeIndex, LatticeIndex) {
        let (dn, dm) = self.dir.step();
        (self.base, LatticeIndex::new(self.base.n + dn, self.base.m + dm))
    }

    /// The edge separating two adjacent hexagons.
    pub fn between(u: LatticeIndex, v: LatticeIndex) -> Option<HexEdge> {
        let k = u.neighbor_slot(&v)?;
        Some(HexEdge::around(u, k))
    }

    /// The `k`-th edge of the hexagon at `center`, shared with neighbor `k`.
    pub fn around(center: LatticeIndex, k: usize) -> HexEdge {
        let k = k % 6;
        let base = if k < 3 { center } else { center.neighbor(k) };
        HexEdge::new(base, Direction::of_slot(k))
    }

    /// The six edges of a hexagon in counterclockwise order.
    pub fn hexagon(center: LatticeIndex) -> [HexEdge; 6] {
        core::array::from_fn(|k| HexEdge::around(center, k))
    }
}

/// Level of an edge in the `a_n, b_n, c_n` labeling.
pub fn edge_levels(e: &HexEdge) -> i64 {
    match e.dir {
        Direction::A => e.base.n,
        Direction::B => e.base.m,
        Direction::C => 1 - e.base.n - e.base.m,
    }
}

/// The levels `(ν_A, ν_B, ν_C)` seen by a hexagon.
pub fn hexagon_levels(center: LatticeIndex) -> (i64, i64, i64) {
    (center.n, center.m, 1 - center.n - center.m)
}

/// Rectangle of hexagons `n_min..=n_max` by `m_min..=m_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub n_min: i64,
    pub n_max: i64,
    pub m_min: i64,
    pub m_max: i64,
}

impl Window {
    pub fn new(n_min: i64, n_max: i64, m_min: i64, m_max: i64) -> Result<Self> {
        if n_min > n_max || m_min > m_max {
            return Err(HexError::InvalidParameter("empty window"));
        }
        Ok(Window { n_min, n_max, m_min, m_max })
    }

    /// The square `[-k, k]^2`.
    pub fn square(k: i64) -> Self {
        let k = k.abs();
        Window { n_min: -k, n_max: k, m_min: -k, m_max: k }
    }

    pub fn around(center: LatticeIndex, k: i64) -> Self {
        let k = k.abs();
        Window { n_min: center.n - k, n_max: center.n + k, m_min: center.m - k, m_max: center.m + k }
    }

    pub fn contains(&self, v: &LatticeIndex) -> bool {
        (self.n_min..=self.n_max).contains(&v.n) && (self.m_min..=self.m_max).contains(&v.m)
    }

    pub fn contains_edge(&self, e: &HexEdge) -> bool {
        let (u, v) = e.endpoints();
        self.contains(&u) && self.contains(&v)
    }

    pub fn width(&self) -> usize {
        (self.n_max - self.n_min + 1) as usize
    }

    pub fn height(&self) -> usize {
        (self.m_max - self.m_min + 1) as usize
    }

    pub fn len(&self) -> usize {
        self.width() * self.height()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub(crate) fn slot(&self, v: &LatticeIndex) -> usize {
        (v.n - self.n_min) as usize * self.height() + (v.m - self.m_min) as usize
    }

    /// Vertices, `n` outer and `m` inner.
    pub fn vertices(&self) -> impl Iterator<Item = LatticeIndex> + '_ {
        (self.n_min..=self.n_max).flat_map(move |n| (self.m_min..=self.m_max).map(move |m| LatticeIndex::new(n, m)))
    }

    /// Edges with both endpoints inside, in vertex order then `A, B, C`.
    pub fn edges(&self) -> impl Iterator<Item = HexEdge> + '_ {
        self.vertices()
            .flat_map(|v| Direction::ALL.into_iter().map(move |d| HexEdge::new(v, d)))
            .filter(move |e| self.contains_edge(e))
    }

    /// Hexagons all of whose neighbors are inside.
    pub fn interior(&self) -> impl Iterator<Item = LatticeIndex> + '_ {
        self.vertices().filter(move |v| v.neighbors().iter().all(|u| self.contains(u)))
    }
}

/// Parameters of the closed-form solution
/// `a_n = i tan(Δn + α)`, `b_n = i tan(Δn + β)`, `c_n = i tan(Δn + γ)`.
///
/// The angles are reduced to `[0, π)` on construction and `Δ = -α - β - γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
    delta: f64,
}

fn rem_pi(x: f64) -> f64 {
    x - PI * (x / PI).floor()
}

fn reduce_angle(x: f64) -> f64 {
    let r = rem_pi(x);
    if r >= PI {
        0.0
    } else {
        r
    }
}

impl SolutionParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite()) {
            return Err(HexError::InvalidParameter("angles must be finite"));
        }
        let (alpha, beta, gamma) = (reduce_angle(alpha), reduce_angle(beta), reduce_angle(gamma));
        Ok(SolutionParams { alpha, beta, gamma, delta: -alpha - beta - gamma })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `Δ` reduced to `(-π/2, π/2]`, with rounding noise around zero removed.
    /// Only integer multiples of `Δ` enter the solution, so this changes nothing.
    pub fn effective_delta(&self) -> f64 {
        let mut d = rem_pi(self.delta);
        if d > FRAC_PI_2 {
            d -= PI;
        }
        if d.abs() < tolerance::CONSTRUCTION {
            0.0
        } else {
            d
        }
    }

    /// `Δ ≡ 0 (mod π)`: the field is constant.
    pub fn is_constant(&self) -> bool {
        self.effective_delta() == 0.0
    }

    pub fn angle(&self, dir: Direction) -> f64 {
        match dir {
            Direction::A => self.alpha,
            Direction::B => self.beta,
            Direction::C => self.gamma,
        }
    }

    /// `Δ·level + angle` for an edge.
    pub fn phase(&self, e: &HexEdge) -> f64 {
        self.effective_delta() * edge_levels(e) as f64 + self.angle(e.dir)
    }

    /// Closed-form value on an edge.
    pub fn value(&self, e: &HexEdge) -> Result<Complex> {
        let (s, c) = self.phase(e).sin_cos();
        if c.abs() < tolerance::POLE {
            return Err(HexError::PoleOnWindow { edges: vec![*e] });
        }
        Ok(Complex::new(0.0, s / c))
    }
}

/// Values on the edges of a rectangular window; missing entries allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeField {
    window: Window,
    params: Option<SolutionParams>,
    values: Vec<Option<Complex>>,
}

impl EdgeField {
    pub fn new(window: Window) -> Self {
        EdgeField { window, params: None, values: vec![None; window.len() * 3] }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn params(&self) -> Option<SolutionParams> {
        self.params
    }

    pub fn set_params(&mut self, params: Option<SolutionParams>) {
        self.params = params;
    }

    fn slot(&self, e: &HexEdge) -> Option<usize> {
        if self.window.contains_edge(e) {
            Some(self.window.slot(&e.base) * 3 + e.dir.index())
        } else {
            None
        }
    }

    pub fn get(&self, e: &HexEdge) -> Option<Complex> {
        self.slot(e).and_then(|i| self.values[i])
    }

    pub fn value(&self, e: &HexEdge) -> Result<Complex> {
        self.get(e).ok_or(HexError::MissingEdge(*e))
    }

    /// Store a value; edges outside the window are rejected.
    pub fn set(&mut self, e: HexEdge, s: Complex) -> Result<()> {
        let i = self.slot(&e).ok_or(HexError::InvalidParameter("edge outside the field window"))?;
        self.values[i] = Some(s);
        Ok(())
    }

    /// Present edges in deterministic order.
    pub fn edges(&self) -> impl Iterator<Item = (HexEdge, Complex)> + '_ {
        self.window.edges().filter_map(move |e| self.get(&e).map(|s| (e, s)))
    }

    pub fn len(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether every edge of the window carries a value.
    pub fn is_complete(&self) -> bool {
        self.window.edges().all(|e| self.get(&e).is_some())
    }

    /// The six values `s_0..s_5` of a hexagon, counterclockwise from `(1,0)`.
    pub fn hexagon_values(&self, center: LatticeIndex) -> Result<[Complex; 6]> {
        let edges = HexEdge::hexagon(center);
        let mut out = [Complex::new(0.0, 0.0); 6];
        for (k, e) in edges.iter().enumerate() {
            out[k] = self.value(e)?;
        }
        Ok(out)
    }

    /// Hexagons with all six edges present.
    pub fn complete_hexagons(&self) -> impl Iterator<Item = LatticeIndex> + '_ {
        self.window.interior().filter(move |v| HexEdge::hexagon(*v).iter().all(|e| self.get(e).is_some()))
    }

    /// Largest hexagon residual over all complete hexagons.
    pub fn max_hexagon_residual(&self) -> f64 {
        self.complete_hexagons()
            .map(|v| hexagon_residual(self, v).unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    /// First edge whose value is not positive imaginary.
    pub fn first_non_immersed(&self, tol: f64) -> Option<HexEdge> {
        self.edges().find(|(_, s)| !is_positive_imaginary(*s, tol)).map(|(e, _)| e)
    }
}

/// `-i s > 0` with a real part negligible relative to `|s|`.
pub fn is_positive_imaginary(s: Complex, tol: f64) -> bool {
    s.im > 0.0 && s.re.abs() <= tol * s.norm().max(1.0)
}

/// `a + b + c + abc`.
pub fn abc_residual(a: Complex, b: Complex, c: Complex) -> Complex {
    a + b + c + a * b * c
}

/// Largest modulus of the six He–Schramm residuals of a hexagon. For
/// hexagons with equal opposite values this is `|a + b + c + abc|`.
pub fn hexagon_residual(field: &EdgeField, center: LatticeIndex) -> Result<f64> {
    let s = field.hexagon_values(center)?;
    Ok(he_schramm_residuals(&s).iter().map(|r| r.norm()).fold(0.0, f64::max))
}

/// `a + b + c + abc` from the three directions of a hexagon, together with
/// the largest mismatch between opposite edges.
pub fn symmetric_residual(field: &EdgeField, center: LatticeIndex) -> Result<(Complex, f64)> {
    let s = field.hexagon_values(center)?;
    let asym = (0..3).map(|k| (s[k] - s[k + 3]).norm()).fold(0.0, f64::max);
    Ok((abc_residual(s[0], s[1], s[2]), asym))
}

/// The value `c` with `a + b + c + abc = 0`.
pub fn complete_third(a: Complex, b: Complex) -> Result<Complex> {
    let den = Complex::new(1.0, 0.0) + a * b;
    if den.norm() <= 1e-14 * (a.norm() * b.norm()).max(1.0) {
        return Err(HexError::SingularPair);
    }
    Ok(-(a + b) / den)
}

/// Closed-form field on a window.
pub fn solution_field(p: &SolutionParams, window: Window) -> Result<EdgeField> {
    let mut field = EdgeField::new(window);
    field.params = Some(*p);
    let mut poles = Vec::new();
    for e in window.edges() {
        match p.value(&e) {
            Ok(s) => field.set(e, s)?,
            Err(_) => poles.push(e),
        }
    }
    if !poles.is_empty() {
        return Err(HexError::PoleOnWindow { edges: poles });
    }
    Ok(field)
}

/// Constant field `(a, b, c)` on the three directions; requires
/// `a + b + c + abc = 0`.
pub fn constant_field(a: Complex, b: Complex, c: Complex, window: Window) -> Result<EdgeField> {
    let residual = abc_residual(a, b, c).norm();
    if residual > tolerance::default_tolerance() {
        return Err(HexError::FieldInconsistent { residual });
    }
    let mut field = EdgeField::new(window);
    for e in window.edges() {
        let s = match e.dir {
            Direction::A => a,
            Direction::B => b,
            Direction::C => c,
        };
        field.set(e, s)?;
    }
    Ok(field)
}

/// Continue a conformally symmetric hexagon to its six neighbors.
///
/// `d1` is the value on the edge between neighbors 0 and 1 of `center`.
/// Walking around the hexagon, each neighbor sees the shared edge with the
/// center and two outer edges in three distinct directions, so the next outer
/// value is `complete_third(s_{j+1}, d_j)`. After six steps the walk returns
/// to the first outer edge; a mismatch is reported as a monodromy violation.
/// The returned field covers `center ± 2` and carries the center, the outer
/// ring and, by symmetry of the neighbors, all of their edges.
///
/// Each step is the Möbius map `[[-1, -s], [s, 1]]`, and the product of three
/// consecutive steps has trace zero whatever the values are. The walk
/// therefore closes for every symmetric hexagon, and a center violating
/// `a + b + c + abc = 0` is caught by checking that relation directly; it is
/// reported as a monodromy violation too.
pub fn propagate(field: &EdgeField, center: LatticeIndex, d1: Complex) -> Result<EdgeField> {
    let tol = tolerance::default_tolerance();
    let s = field.hexagon_values(center)?;
    let asym = (0..3).map(|k| (s[k] - s[k + 3]).norm()).fold(0.0, f64::max);
    let scale = s.iter().map(|x| x.norm()).fold(1.0, f64::max);
    if asym > tol * scale {
        return Err(HexError::AsymmetricHexagon(center));
    }
    let residual = abc_residual(s[0], s[1], s[2]).norm();
    if residual > tol * scale.powi(3) {
        return Err(HexError::MonodromyViolation { residual });
    }
    let mut d = [Complex::new(0.0, 0.0); 7];
    d[0] = d1;
    for j in 0..6 {
        d[j + 1] = complete_third(s[(j + 1) % 6], d[j])?;
    }
    let residual = (d[6] - d[0]).norm();
    if !(residual <= tol * d1.norm().max(1.0)) {
        return Err(HexError::MonodromyViolation { residual });
    }

    let window = Window::around(center, 2);
    let mut out = EdgeField::new(window);
    for (k, e) in HexEdge::hexagon(center).iter().enumerate() {
        out.set(*e, s[k])?;
    }
    let nb = center.neighbors();
    for j in 0..6 {
        out.set(HexEdge::around(nb[j], j + 2), d[j])?;
    }
    // Each neighbor is symmetric: opposite edges repeat its three known values.
    for (j, v) in nb.iter().enumerate() {
        let known = [(j + 2, d[j]), (j + 3, s[j]), (j + 4, d[(j + 5) % 6])];
        for (slot, value) in known {
            out.set(HexEdge::around(*v, slot), value)?;
            out.set(HexEdge::around(*v, slot + 3), value)?;
        }
    }
    Ok(out)
}

/// Fill a window from seed values using the conformally symmetric rule:
/// opposite edges of every hexagon agree and the three directions satisfy
/// `a + b + c + abc = 0`. Three edges meeting at a vertex determine the
/// field everywhere. Conflicting values are reported as a monodromy violation.
pub fn continue_symmetric_field(seed: &EdgeField, window: Window) -> Result<EdgeField> {
    let tol = tolerance::default_tolerance();
    let mut out = EdgeField::new(window);
    for (e, s) in seed.edges() {
        if window.contains_edge(&e) {
            out.set(e, s)?;
        }
    }
    let hexagons: Vec<LatticeIndex> = window.vertices().collect();
    loop {
        let mut changed = false;
        for v in &hexagons {
            let edges = HexEdge::hexagon(*v);
            let mut dir_value: [Option<Complex>; 3] = [None; 3];
            for k in 0..3 {
                let (x, y) = (out.get(&edges[k]), out.get(&edges[k + 3]));
                if let (Some(x), Some(y)) = (x, y) {
                    let residual = (x - y).norm();
                    if residual > tol * x.norm().max(1.0) {
                        return Err(HexError::MonodromyViolation { residual });
                    }
                }
                dir_value[k] = x.or(y);
            }
            let known = dir_value.iter().filter(|x| x.is_some()).count();
            if known < 2 {
                continue;
            }
            if known == 2 {
                let missing = dir_value.iter().position(|x| x.is_none()).unwrap_or(0);
                let others: Vec<Complex> = dir_value.iter().flatten().copied().collect();
                dir_value[missing] = Some(complete_third(others[0], others[1])?);
            } else if let [Some(a), Some(b), Some(c)] = dir_value {
                let residual = abc_residual(a, b, c).norm();
                if residual > tol * a.norm().max(b.norm()).max(c.norm()).max(1.0) {
                    return Err(HexError::MonodromyViolation { residual });
                }
            }
            for k in 0..6 {
                if window.contains_edge(&edges[k]) && out.get(&edges[k]).is_none() {
                    if let Some(x) = dir_value[k % 3] {
                        out.set(edges[k], x)?;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(out)
}

/// Contiguous range of levels `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelRange {
    pub lo: i64,
    pub hi: i64,
}

impl LevelRange {
    pub fn contains(&self, level: i64) -> bool {
        (self.lo..=self.hi).contains(&level)
    }

    pub fn width(&self) -> i64 {
        self.hi - self.lo + 1
    }
}

/// Where the closed-form field is positive imaginary.
///
/// For each family the range is the maximal run of levels containing level
/// zero on which `tan(Δ·level + angle) > 0`, scanned out to `cap` levels on
/// either side. A hexagon is immersed when its three levels lie in the three
/// ranges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImmersedWindow {
    pub a: Option<LevelRange>,
    pub b: Option<LevelRange>,
    pub c: Option<LevelRange>,
    pub cap: i64,
    /// `Δ ≡ 0` with every angle in `(0, π/2)`: the field is positive
    /// imaginary on the whole lattice.
    pub entire: bool,
}

impl ImmersedWindow {
    pub fn range(&self, dir: Direction) -> Option<LevelRange> {
        match dir {
            Direction::A => self.a,
            Direction::B => self.b,
            Direction::C => self.c,
        }
    }

    pub fn contains(&self, v: &LatticeIndex) -> bool {
        let (na, nb, nc) = hexagon_levels(*v);
        let inside = |r: Option<LevelRange>, x: i64| r.is_some_and(|r| r.contains(x));
        inside(self.a, na) && inside(self.b, nb) && inside(self.c, nc)
    }

    /// Whether every family reaches the cap on both sides.
    pub fn is_capped(&self) -> bool {
        [self.a, self.b, self.c]
            .iter()
            .all(|r| r.is_some_and(|r| r.lo <= -self.cap && r.hi >= self.cap))
    }

    /// Smallest window of `(n, m)` covering all immersed hexagons, clipped to
    /// `bound`, if any hexagon is immersed.
    pub fn bounding_window(&self, bound: Window) -> Option<Window> {
        let (a, b, c) = (self.a?, self.b?, self.c?);
        let n_min = a.lo.max(bound.n_min).max(1 - c.hi - b.hi);
        let n_max = a.hi.min(bound.n_max).min(1 - c.lo - b.lo);
        let m_min = b.lo.max(bound.m_min).max(1 - c.hi - a.hi);
        let m_max = b.hi.min(bound.m_max).min(1 - c.lo - a.lo);
        let w = Window::new(n_min, n_max, m_min, m_max).ok()?;
        let hit = w.vertices().any(|v| self.contains(&v));
        hit.then_some(w)
    }
}

fn positive_run(p: &SolutionParams, dir: Direction, cap: i64) -> Option<LevelRange> {
    let delta = p.effective_delta();
    let theta = p.angle(dir);
    let positive = |level: i64| {
        let (s, c) = (delta * level as f64 + theta).sin_cos();
        c.abs() >= tolerance::POLE && s / c > 0.0
    };
    if !positive(0) {
        return None;
    }
    let mut hi = 0;
    while hi < cap && positive(hi + 1) {
        hi += 1;
    }
    let mut lo = 0;
    while lo > -cap && positive(lo - 1) {
        lo -= 1;
    }
    Some(LevelRange { lo, hi })
}

/// The region around the origin where the closed-form field stays positive
/// imaginary, with each family scanned up to `max_extent` levels.
pub fn immersed_window(p: &SolutionParams, max_extent: i64) -> ImmersedWindow {
    let cap = max_extent.max(0);
    let in_range = |x: f64| x > 0.0 && x < FRAC_PI_2;
    let entire = p.is_constant() && in_range(p.alpha) && in_range(p.beta) && in_range(p.gamma);
    ImmersedWindow {
        a: positive_run(p, Direction::A, cap),
        b: positive_run(p, Direction::B, cap),
        c: positive_run(p, Direction::C, cap),
        cap,
        entire,
    }
}
