//! Computations behind the CLI subcommands and the HTTP endpoints.
//!
//! Every function takes already-parsed parameters, validates them, and
//! returns a serializable document. Both front ends format errors through
//! [`ApiError`].

use std::str::FromStr;

use hexpack_core::airy::{self, hexgrid_image, schwarzian_fd, GridWindow};
use hexpack_core::flower::{build_flower, is_conformally_symmetric, s_circles, symmetric_flower};
use hexpack_core::lattice::{immersed_window, solution_field, EdgeField, SolutionParams, Window};
use hexpack_core::layout::{
    doyle_law_residuals, doyle_spiral, field_from_layout, layout_from_field, layout_from_field_unchecked, validate_immersion,
    DoyleParams, FailureKind, Normalization, PackingLayout, Provenance,
};
use hexpack_core::moebius::{complete_sixth_point, multi_ratio, multi_ratio_defect};
use hexpack_core::{tolerance, Complex, ExtComplex, HexError, MoebiusMap};
use serde::{Deserialize, Serialize};

use crate::json::{
    CircleDoc, ComplexDoc, FieldDoc, FlowerDoc, FormatError, ImmersedWindowDoc, LayoutDoc, PointDoc, SymmetryDoc, GRID_FORMAT,
    VERSION,
};

/// Error reported to users: a stable machine-readable code and a message.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApiError {
    pub code: String,
    pub message: String,
}

impl ApiError {
    pub fn invalid(message: impl Into<String>) -> Self {
        ApiError { code: "invalid_parameter".into(), message: message.into() }
    }
}

impl std::fmt::Display for ApiError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl std::error::Error for ApiError {}

pub fn error_code(e: &HexError) -> &'static str {
    match e {
        HexError::DegenerateInput(_) => "degenerate_input",
        HexError::NotAFlowerConfiguration { .. } => "not_a_flower_configuration",
        HexError::NotCyclicallyOrdered => "not_cyclically_ordered",
        HexError::NonPositiveRadius(_) => "non_positive_radius",
        HexError::IdentityMap => "identity_map",
        HexError::NumericallyParabolic => "numerically_parabolic",
        HexError::InconsistentCrossRatios(_) => "inconsistent_cross_ratios",
        HexError::TargetNotRealizable(..) => "target_not_realizable",
        HexError::NoConvergence { .. } => "no_convergence",
        HexError::PoleOnWindow { .. } => "pole_on_window",
        HexError::MissingEdge(_) => "missing_edge",
        HexError::SingularPair => "singular_pair",
        HexError::MonodromyViolation { .. } => "monodromy_violation",
        HexError::AsymmetricHexagon(_) => "asymmetric_hexagon",
        HexError::FieldInconsistent { .. } => "field_inconsistent",
        HexError::NotImmersed(_) => "not_immersed",
        HexError::ClosureFailure { .. } => "closure_failure",
        HexError::CriticalPoint => "critical_point",
        HexError::OutOfValidatedDomain => "out_of_validated_domain",
        HexError::ConstantCase => "constant_case",
        HexError::FarFromRegular(_) => "far_from_regular",
        HexError::InvalidParameter(_) => "invalid_parameter",
    }
}

impl From<HexError> for ApiError {
    fn from(e: HexError) -> Self {
        ApiError { code: error_code(&e).into(), message: e.to_string() }
    }
}

impl From<FormatError> for ApiError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Core(inner) => inner.into(),
            other => ApiError { code: "invalid_document".into(), message: other.to_string() },
        }
    }
}

pub type ApiResult<T> = Result<T, ApiError>;

// ---------------------------------------------------------------------------
// Parameter parsing

/// One point of the sphere: `inf`, or a complex number such as `1.5-2i`.
pub fn parse_point(s: &str) -> ApiResult<ExtComplex> {
    let t = s.trim();
    if matches!(t, "inf" | "infinity" | "∞") {
        return Ok(ExtComplex::Infinity);
    }
    let z = Complex::from_str(t).map_err(|_| ApiError::invalid(format!("cannot parse point {t:?}")))?;
    if !z.is_finite() {
        return Err(ApiError::invalid(format!("point {t:?} is not finite")));
    }
    Ok(ExtComplex::Finite(z))
}

/// Comma-separated points.
pub fn parse_points<const N: usize>(s: &str) -> ApiResult<[ExtComplex; N]> {
    let pts: Vec<ExtComplex> = s.split(',').map(parse_point).collect::<ApiResult<_>>()?;
    pts.try_into().map_err(|v: Vec<_>| ApiError::invalid(format!("expected {N} points, got {}", v.len())))
}

pub fn parse_f64_list(s: &str) -> ApiResult<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| ApiError::invalid(format!("cannot parse number {t:?}"))))
        .collect()
}

/// The square window `[-k, k]²`.
pub fn square_window(k: i64) -> ApiResult<Window> {
    if !(1..=200).contains(&k) {
        return Err(ApiError::invalid("window must be between 1 and 200"));
    }
    Ok(Window::square(k))
}

pub fn solution_params(alpha: f64, beta: f64, gamma: f64) -> ApiResult<SolutionParams> {
    for x in [alpha, beta, gamma] {
        if !(x > 0.0 && x < std::f64::consts::PI) {
            return Err(ApiError::invalid("angles must lie in (0, π)"));
        }
    }
    Ok(SolutionParams::new(alpha, beta, gamma)?)
}

// ---------------------------------------------------------------------------
// Flowers

pub fn flower(points: &[ExtComplex; 6], r1: f64) -> ApiResult<FlowerDoc> {
    let f = build_flower(points, r1)?;
    let mut doc = FlowerDoc::new(&f)?;
    let report = is_conformally_symmetric(&f)?;
    doc.symmetry = Some(SymmetryDoc::new(&report, &[]));
    Ok(doc)
}

pub fn symmetric(points: &[ExtComplex; 6]) -> ApiResult<FlowerDoc> {
    let f = symmetric_flower(points)?;
    let mut doc = FlowerDoc::new(&f)?;
    let report = is_conformally_symmetric(&f)?;
    doc.symmetry = Some(SymmetryDoc::new(&report, &s_circles(&f)?));
    Ok(doc)
}

pub fn family(points: &[ExtComplex; 6], r1_values: &[f64]) -> ApiResult<Vec<FlowerDoc>> {
    r1_values.iter().map(|&r| flower(points, r)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SixthPointDoc {
    pub point: PointDoc,
    pub multi_ratio_defect: f64,
}

/// The touching point `z_5` completing five given ones to a flower configuration.
pub fn sixth_point(points: &[ExtComplex; 5]) -> ApiResult<SixthPointDoc> {
    let z6 = complete_sixth_point(points)?;
    let all = [points[0], points[1], points[2], points[3], points[4], z6];
    Ok(SixthPointDoc { point: z6.into(), multi_ratio_defect: multi_ratio_defect(multi_ratio(&all)?) })
}

// ---------------------------------------------------------------------------
// Fields and layouts

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldReport {
    pub field: FieldDoc,
    pub max_hexagon_residual: f64,
    pub immersed: bool,
    pub immersed_window: ImmersedWindowDoc,
}

/// Cap on the level scan of the immersed window.
pub const LEVEL_CAP: i64 = 10_000;

pub fn field(alpha: f64, beta: f64, gamma: f64, window: Window) -> ApiResult<FieldReport> {
    let p = solution_params(alpha, beta, gamma)?;
    let f = solution_field(&p, window)?;
    Ok(FieldReport {
        max_hexagon_residual: f.max_hexagon_residual(),
        immersed: f.first_non_immersed(tolerance::default_tolerance()).is_none(),
        immersed_window: immersed_window(&p, LEVEL_CAP).into(),
        field: FieldDoc::from_field(&f),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormalizationChoice {
    /// Regular packing of unit circles centered at `2(n + m e^{iπ/3})`.
    #[default]
    Standard,
    /// Base flag frame is the identity: its touching point goes to `∞`.
    Identity,
}

impl FromStr for NormalizationChoice {
    type Err = ApiError;
    fn from_str(s: &str) -> ApiResult<Self> {
        match s {
            "standard" => Ok(NormalizationChoice::Standard),
            "identity" => Ok(NormalizationChoice::Identity),
            other => Err(ApiError::invalid(format!("unknown normalization {other:?}"))),
        }
    }
}

impl NormalizationChoice {
    pub fn normalization(self) -> Normalization {
        match self {
            NormalizationChoice::Standard => Normalization::standard(),
            NormalizationChoice::Identity => Normalization::default(),
        }
    }
}

pub fn layout_of_field(f: &EdgeField, norm: NormalizationChoice, unchecked: bool) -> ApiResult<PackingLayout> {
    let n = norm.normalization();
    Ok(if unchecked { layout_from_field_unchecked(f, &n)? } else { layout_from_field(f, &n)? })
}

pub fn layout(alpha: f64, beta: f64, gamma: f64, window: Window, norm: NormalizationChoice) -> ApiResult<LayoutDoc> {
    let p = solution_params(alpha, beta, gamma)?;
    let f = solution_field(&p, window)?;
    Ok(LayoutDoc::from_layout(&layout_of_field(&f, norm, false)?))
}

pub fn doyle(a: f64, b: f64, r: f64, window: Window) -> ApiResult<LayoutDoc> {
    let p = DoyleParams::new(a, b, r)?;
    Ok(LayoutDoc::from_layout(&doyle_spiral(&p, window)?))
}

// ---------------------------------------------------------------------------
// Verification

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureDoc {
    pub n: i64,
    pub m: i64,
    pub kind: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub tolerance: f64,
    pub flowers_checked: usize,
    pub worst_tangency: f64,
    pub worst_touch_point: f64,
    /// Multi-ratio defect of the stored touching points.
    pub worst_multi_ratio: f64,
    /// Multi-ratio defect of touching points recomputed from the circles.
    pub worst_geometric_multi_ratio: f64,
    pub failures: Vec<FailureDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_error: Option<ApiError>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_doyle_law: Option<f64>,
}

fn kind_name(k: FailureKind) -> &'static str {
    match k {
        FailureKind::Degenerate => "degenerate",
        FailureKind::Tangency => "tangency",
        FailureKind::TouchPoint => "touch_point",
        FailureKind::MultiRatio => "multi_ratio",
        FailureKind::CrossRatio => "cross_ratio",
    }
}

/// All invariants of a layout.
///
/// Besides the per-flower immersion check on the stored data, the touching
/// points are recomputed from the circles themselves and their multi-ratio
/// is checked, so edits to circles alone are caught as multi-ratio
/// violations too.
pub fn verify(l: &PackingLayout) -> VerifyReport {
    let tol = tolerance::CLOSURE;
    let rep = validate_immersion(l);
    let mut failures: Vec<FailureDoc> = rep
        .failures
        .iter()
        .map(|f| FailureDoc { n: f.center.n, m: f.center.m, kind: kind_name(f.kind).into(), residual: f.residual })
        .collect();

    let mut geometric = 0.0f64;
    for v in l.flower_centers() {
        let f = l.flower_at(v).expect("listed flowers exist");
        let z = f.petals.map(|p| f.center.tangency_point(&p));
        let defect = multi_ratio(&z).map(multi_ratio_defect).unwrap_or(f64::INFINITY);
        geometric = geometric.max(defect);
        if !(defect <= tol) {
            failures.push(FailureDoc { n: v.n, m: v.m, kind: "geometric_multi_ratio".into(), residual: defect });
        }
    }

    let field_error = if rep.failures.is_empty() { field_from_layout(l).err().map(ApiError::from) } else { None };

    let worst_doyle_law = match l.provenance {
        Provenance::Doyle(_) => {
            let worst = l
                .flower_centers()
                .into_iter()
                .filter_map(|v| doyle_law_residuals(l, v))
                .map(|(a, b)| a.max(b))
                .fold(0.0, f64::max);
            if !(worst <= 1e-10) {
                failures.push(FailureDoc { n: 0, m: 0, kind: "doyle_law".into(), residual: worst });
            }
            Some(worst)
        }
        _ => None,
    };

    VerifyReport {
        ok: failures.is_empty() && field_error.is_none() && rep.flowers_checked > 0,
        tolerance: tol,
        flowers_checked: rep.flowers_checked,
        worst_tangency: rep.worst_tangency,
        worst_touch_point: rep.worst_touch_point,
        worst_multi_ratio: rep.worst_multi_ratio,
        worst_geometric_multi_ratio: geometric,
        failures,
        field_error,
        worst_doyle_law,
    }
}

// ---------------------------------------------------------------------------
// Airy grid images

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AiryMapChoice {
    /// `(Bi - √3 Ai)/(Bi + √3 Ai)`, Schwarzian `-2z`.
    #[default]
    Ratio,
    /// The same map with its argument scaled so that the Schwarzian is `z`.
    Unit,
}

impl FromStr for AiryMapChoice {
    type Err = ApiError;
    fn from_str(s: &str) -> ApiResult<Self> {
        match s {
            "ratio" => Ok(AiryMapChoice::Ratio),
            "unit" => Ok(AiryMapChoice::Unit),
            other => Err(ApiError::invalid(format!("unknown map {other:?}"))),
        }
    }
}

impl AiryMapChoice {
    pub fn eval(self, z: Complex) -> hexpack_core::Result<ExtComplex> {
        match self {
            AiryMapChoice::Ratio => airy::airy_map(z),
            AiryMapChoice::Unit => airy::airy_map_unit(z),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchwarzianCheck {
    pub samples: usize,
    pub step: f64,
    /// `|f(0)|`.
    pub value_at_origin: f64,
    /// `max |f(qz) - q f(z)|` over the samples.
    pub rotation_residual: f64,
    /// `max |S(f)(z) - z|`.
    pub residual_vs_z: f64,
    /// `max |S(f)(z) + 2z|`.
    pub residual_vs_minus_two_z: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridVertexDoc {
    pub z: ComplexDoc,
    pub image: PointDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDoc {
    pub format: String,
    pub version: u32,
    pub map: AiryMapChoice,
    pub spacing: f64,
    pub extent: f64,
    pub vertices: Vec<GridVertexDoc>,
    pub polylines: Vec<Vec<PointDoc>>,
    pub schwarzian: SchwarzianCheck,
}

/// Sample points on a few rings inside `|z| ≤ radius`, fixed for reproducibility.
pub fn check_points(radius: f64) -> Vec<Complex> {
    let mut pts = Vec::new();
    for ring in 1..=4 {
        let r = radius * ring as f64 / 4.0;
        for k in 0..5 {
            pts.push(Complex::from_polar(r, 0.37 + k as f64 * 1.3 + ring as f64 * 0.21));
        }
    }
    pts
}

pub fn schwarzian_check(map: AiryMapChoice, radius: f64) -> ApiResult<SchwarzianCheck> {
    let q = airy::q();
    let f = |z: Complex| map.eval(z);
    let finite = airy::finite_part(f);
    let mut check = SchwarzianCheck {
        samples: 0,
        step: airy::DEFAULT_STEP,
        value_at_origin: f(Complex::new(0.0, 0.0))?.finite().map(|w| w.norm()).unwrap_or(f64::INFINITY),
        rotation_residual: 0.0,
        residual_vs_z: 0.0,
        residual_vs_minus_two_z: 0.0,
    };
    for z in check_points(radius) {
        let s = schwarzian_fd(&finite, z, airy::DEFAULT_STEP)?;
        let rot = match (f(q * z)?.finite(), f(z)?.finite()) {
            (Some(a), Some(b)) => (a - q * b).norm(),
            _ => 0.0,
        };
        check.samples += 1;
        check.rotation_residual = check.rotation_residual.max(rot);
        check.residual_vs_z = check.residual_vs_z.max((s - z).norm());
        check.residual_vs_minus_two_z = check.residual_vs_minus_two_z.max((s + z * 2.0).norm());
    }
    Ok(check)
}

pub fn airy_grid(spacing: f64, extent: f64, map: AiryMapChoice) -> ApiResult<GridDoc> {
    if !(spacing >= 0.02 && spacing.is_finite()) {
        return Err(ApiError::invalid("grid spacing must be at least 0.02"));
    }
    if !(extent > 0.0 && extent + spacing <= airy::VALIDATED_RADIUS) {
        return Err(HexError::OutOfValidatedDomain.into());
    }
    let img = hexgrid_image(|z| map.eval(z), spacing, GridWindow::Disk(extent), 4)?;
    Ok(GridDoc {
        format: GRID_FORMAT.into(),
        version: VERSION,
        map,
        spacing,
        extent,
        vertices: img.vertices.iter().map(|(z, w)| GridVertexDoc { z: (*z).into(), image: (*w).into() }).collect(),
        polylines: img.polylines.iter().map(|p| p.iter().map(|w| (*w).into()).collect()).collect(),
        schwarzian: schwarzian_check(map, extent.min(1.0))?,
    })
}

/// Back from the document to the core grid type, for SVG export.
pub fn grid_image(doc: &GridDoc) -> ApiResult<airy::GridImage> {
    let point = |p: &PointDoc| p.to_point().map_err(ApiError::from);
    Ok(airy::GridImage {
        spacing: doc.spacing,
        vertices: doc
            .vertices
            .iter()
            .map(|v| Ok((Complex::new(v.z.re, v.z.im), point(&v.image)?)))
            .collect::<ApiResult<_>>()?,
        polylines: doc.polylines.iter().map(|p| p.iter().map(point).collect::<ApiResult<_>>()).collect::<ApiResult<_>>()?,
    })
}

// ---------------------------------------------------------------------------
// Möbius images of circles

/// A Möbius map as its four matrix entries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapDoc {
    pub a: ComplexDoc,
    pub b: ComplexDoc,
    pub c: ComplexDoc,
    pub d: ComplexDoc,
}

impl MapDoc {
    pub fn to_map(&self) -> ApiResult<MoebiusMap> {
        let z = |c: ComplexDoc| Complex::new(c.re, c.im);
        Ok(MoebiusMap::new(z(self.a), z(self.b), z(self.c), z(self.d))?)
    }
}

impl From<MoebiusMap> for MapDoc {
    fn from(m: MoebiusMap) -> Self {
        let [[a, b], [c, d]] = m.matrix();
        MapDoc { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoebiusRequest {
    pub map: MapDoc,
    pub circles: Vec<CircleDoc>,
}

pub fn apply_moebius(req: &MoebiusRequest) -> ApiResult<Vec<CircleDoc>> {
    let m = req.map.to_map()?;
    req.circles
        .iter()
        .map(|c| Ok(CircleDoc::from_circle(&c.to_circle()?.apply_moebius(&m), c.index())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_parse() {
        let p: [ExtComplex; 3] = parse_points("0, 1.5-2i, inf").unwrap();
        assert_eq!(p, [ExtComplex::ZERO, ExtComplex::new(1.5, -2.0), ExtComplex::Infinity]);
        assert!(parse_points::<2>("1,2,3").is_err());
        assert!(parse_point("nope").is_err());
    }

    #[test]
    fn sixth_point_of_regular_flower() {
        let h = 3f64.sqrt() / 2.0;
        let p: [ExtComplex; 5] = core::array::from_fn(|k| {
            let z = Complex::from_polar(1.0, k as f64 * std::f64::consts::PI / 3.0);
            ExtComplex::Finite(z)
        });
        let doc = sixth_point(&p).unwrap();
        let z = doc.point.to_point().unwrap().finite().unwrap();
        assert!((z - Complex::new(0.5, -h)).norm() < 1e-12);
        assert!(doc.multi_ratio_defect < 1e-12);
    }

    #[test]
    fn errors_carry_codes() {
        let e: ApiError = HexError::NotCyclicallyOrdered.into();
        assert_eq!(e.code, "not_cyclically_ordered");
        assert_eq!(square_window(0).unwrap_err().code, "invalid_parameter");
    }
}
