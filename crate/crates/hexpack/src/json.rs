//! Versioned JSON documents and the canonical writer.
//!
//! Every document carries a `format` tag and a `version`. Output is
//! canonical: object keys sorted, two-space indentation, and every float
//! written as `{:.16e}` (17 significant digits, enough to round-trip).

use std::collections::BTreeMap;
use std::io;

use hexpack_core::flower::{Flower, SymmetryReport};
use hexpack_core::lattice::{Direction, EdgeField, HexEdge, ImmersedWindow, LatticeIndex, LevelRange, SolutionParams, Window};
use hexpack_core::layout::{DoyleParams, PackingLayout, Provenance};
use hexpack_core::moebius::Orientation;
use hexpack_core::{Complex, ExtComplex, OrientedCircle};
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use thiserror::Error;

pub const VERSION: u32 = 1;
pub const FIELD_FORMAT: &str = "hexpack-field";
pub const LAYOUT_FORMAT: &str = "hexpack-layout";
pub const FLOWER_FORMAT: &str = "hexpack-flower";
pub const GRID_FORMAT: &str = "hexpack-grid-image";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("expected a {expected} document, found {found}")]
    WrongFormat { expected: &'static str, found: String },
    #[error("unsupported version {0}")]
    Version(u32),
    #[error("invalid document: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] hexpack_core::HexError),
}

struct Canonical<'a>(PrettyFormatter<'a>);

impl Formatter for Canonical<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Canonical text of any serializable value, newline-terminated.
pub fn to_canonical_string<T: Serialize>(value: &T) -> String {
    // Going through `Value` sorts the keys.
    let value = serde_json::to_value(value).expect("documents serialize");
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Canonical(PrettyFormatter::with_indent(b"  ")));
    value.serialize(&mut ser).expect("writing to memory");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON is UTF-8")
}

// ---------------------------------------------------------------------------
// Building blocks

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub infinite: bool,
}

impl From<ExtComplex> for PointDoc {
    fn from(p: ExtComplex) -> Self {
        match p {
            ExtComplex::Finite(z) => PointDoc { x: Some(z.re), y: Some(z.im), infinite: false },
            ExtComplex::Infinity => PointDoc { x: None, y: None, infinite: true },
        }
    }
}

impl PointDoc {
    pub fn to_point(&self) -> Result<ExtComplex, FormatError> {
        match (self.infinite, self.x, self.y) {
            (true, _, _) => Ok(ExtComplex::Infinity),
            (false, Some(x), Some(y)) => Ok(ExtComplex::new(x, y)),
            _ => Err(FormatError::Invalid("point needs x and y, or infinite".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub re: f64,
    pub im: f64,
}

impl From<Complex> for ComplexDoc {
    fn from(z: Complex) -> Self {
        ComplexDoc { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CircleKind {
    Circle,
    Line,
}

/// A circle by center and radius, or a line `Re(conj(n) z) = d` whose
/// interior is the side where `Re(conj(n) z) < d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    pub kind: CircleKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cx: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cy: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nx: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ny: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    pub orient: String,
}

fn orient_name(o: Orientation) -> String {
    match o {
        Orientation::Positive => "positive".into(),
        Orientation::Negative => "negative".into(),
    }
}

impl CircleDoc {
    pub fn from_circle(c: &OrientedCircle, at: Option<LatticeIndex>) -> Self {
        let mut doc = CircleDoc {
            n: at.map(|v| v.n),
            m: at.map(|v| v.m),
            kind: CircleKind::Circle,
            cx: None,
            cy: None,
            r: None,
            nx: None,
            ny: None,
            d: None,
            orient: orient_name(c.orientation()),
        };
        if let Some((center, r)) = c.center_radius() {
            doc.cx = Some(center.re);
            doc.cy = Some(center.im);
            doc.r = Some(r);
        } else if let Some((n, d)) = c.line_params() {
            doc.kind = CircleKind::Line;
            doc.nx = Some(n.re);
            doc.ny = Some(n.im);
            doc.d = Some(d);
        }
        doc
    }

    pub fn to_circle(&self) -> Result<OrientedCircle, FormatError> {
        let bad = |what: &str| FormatError::Invalid(format!("{what} missing from circle"));
        match self.kind {
            CircleKind::Circle => {
                let orient = match self.orient.as_str() {
                    "positive" => Orientation::Positive,
                    "negative" => Orientation::Negative,
                    other => return Err(FormatError::Invalid(format!("unknown orientation {other:?}"))),
                };
                let (cx, cy, r) = (self.cx.ok_or(bad("cx"))?, self.cy.ok_or(bad("cy"))?, self.r.ok_or(bad("r"))?);
                Ok(OrientedCircle::from_center_radius(Complex::new(cx, cy), r, orient))
            }
            CircleKind::Line => {
                let n = Complex::new(self.nx.ok_or(bad("nx"))?, self.ny.ok_or(bad("ny"))?);
                let d = self.d.ok_or(bad("d"))?;
                let len = n.norm();
                if !(len > 0.0) {
                    return Err(FormatError::Invalid("line normal is zero".into()));
                }
                Ok(OrientedCircle::from_hermitian(0.0, n / len, -2.0 * d))
            }
        }
    }

    pub fn index(&self) -> Option<LatticeIndex> {
        Some(LatticeIndex::new(self.n?, self.m?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowDoc {
    pub n_min: i64,
    pub n_max: i64,
    pub m_min: i64,
    pub m_max: i64,
}

impl From<Window> for WindowDoc {
    fn from(w: Window) -> Self {
        WindowDoc { n_min: w.n_min, n_max: w.n_max, m_min: w.m_min, m_max: w.m_max }
    }
}

impl WindowDoc {
    pub fn to_window(&self) -> Result<Window, FormatError> {
        Ok(Window::new(self.n_min, self.n_max, self.m_min, self.m_max)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamsDoc {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl From<SolutionParams> for ParamsDoc {
    fn from(p: SolutionParams) -> Self {
        ParamsDoc { alpha: p.alpha(), beta: p.beta(), gamma: p.gamma() }
    }
}

fn dir_from_name(name: &str) -> Result<Direction, FormatError> {
    Direction::from_name(name).ok_or_else(|| FormatError::Invalid(format!("unknown direction {name:?}")))
}

fn check_header(format: &str, version: u32, expected: &'static str) -> Result<(), FormatError> {
    if format != expected {
        return Err(FormatError::WrongFormat { expected, found: format.to_string() });
    }
    if version != VERSION {
        return Err(FormatError::Version(version));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Fields

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub n: i64,
    pub m: i64,
    pub dir: String,
    pub s_re: f64,
    pub s_im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldDoc {
    pub format: String,
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsDoc>,
    pub window: WindowDoc,
    pub edges: Vec<EdgeDoc>,
}

impl FieldDoc {
    pub fn from_field(f: &EdgeField) -> Self {
        FieldDoc {
            format: FIELD_FORMAT.into(),
            version: VERSION,
            params: f.params().map(ParamsDoc::from),
            window: f.window().into(),
            edges: f
                .edges()
                .map(|(e, s)| EdgeDoc { n: e.base.n, m: e.base.m, dir: e.dir.name().into(), s_re: s.re, s_im: s.im })
                .collect(),
        }
    }

    pub fn to_field(&self) -> Result<EdgeField, FormatError> {
        check_header(&self.format, self.version, FIELD_FORMAT)?;
        let mut f = EdgeField::new(self.window.to_window()?);
        if let Some(p) = self.params {
            f.set_params(Some(SolutionParams::new(p.alpha, p.beta, p.gamma)?));
        }
        for e in &self.edges {
            let edge = HexEdge::new(LatticeIndex::new(e.n, e.m), dir_from_name(&e.dir)?);
            f.set(edge, Complex::new(e.s_re, e.s_im))?;
        }
        Ok(f)
    }
}

pub fn parse_field(text: &str) -> Result<EdgeField, FormatError> {
    serde_json::from_str::<FieldDoc>(text)?.to_field()
}

// ---------------------------------------------------------------------------
// Layouts

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProvenanceDoc {
    /// `field`, `doyle` or `imported`.
    pub kind: ProvenanceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub doyle: Option<DoyleDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProvenanceKind {
    Field,
    Doyle,
    Imported,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoyleDoc {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "R")]
    pub r: f64,
}

impl From<Provenance> for ProvenanceDoc {
    fn from(p: Provenance) -> Self {
        match p {
            Provenance::Field(params) => ProvenanceDoc { kind: ProvenanceKind::Field, params: params.map(Into::into), doyle: None },
            Provenance::Doyle(d) => ProvenanceDoc { kind: ProvenanceKind::Doyle, params: None, doyle: Some(DoyleDoc { a: d.a, b: d.b, r: d.r }) },
            Provenance::Imported => ProvenanceDoc { kind: ProvenanceKind::Imported, params: None, doyle: None },
        }
    }
}

impl ProvenanceDoc {
    pub fn to_provenance(&self) -> Result<Provenance, FormatError> {
        Ok(match self.kind {
            ProvenanceKind::Field => {
                Provenance::Field(self.params.map(|p| SolutionParams::new(p.alpha, p.beta, p.gamma)).transpose()?)
            }
            ProvenanceKind::Doyle => {
                let d = self.doyle.ok_or_else(|| FormatError::Invalid("doyle provenance without parameters".into()))?;
                Provenance::Doyle(DoyleParams::new(d.a, d.b, d.r)?)
            }
            ProvenanceKind::Imported => Provenance::Imported,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TouchPointDoc {
    pub n: i64,
    pub m: i64,
    pub dir: String,
    #[serde(flatten)]
    pub point: PointDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutDoc {
    pub format: String,
    pub version: u32,
    pub provenance: ProvenanceDoc,
    pub window: WindowDoc,
    pub circles: Vec<CircleDoc>,
    pub touch_points: Vec<TouchPointDoc>,
}

impl LayoutDoc {
    pub fn from_layout(l: &PackingLayout) -> Self {
        LayoutDoc {
            format: LAYOUT_FORMAT.into(),
            version: VERSION,
            provenance: l.provenance.into(),
            window: l.window.into(),
            circles: l.circles.iter().map(|(v, c)| CircleDoc::from_circle(c, Some(*v))).collect(),
            touch_points: l
                .touch_points
                .iter()
                .map(|(e, p)| TouchPointDoc { n: e.base.n, m: e.base.m, dir: e.dir.name().into(), point: (*p).into() })
                .collect(),
        }
    }

    pub fn to_layout(&self) -> Result<PackingLayout, FormatError> {
        check_header(&self.format, self.version, LAYOUT_FORMAT)?;
        let window = self.window.to_window()?;
        let mut circles = BTreeMap::new();
        for c in &self.circles {
            let v = c.index().ok_or_else(|| FormatError::Invalid("layout circle without n, m".into()))?;
            circles.insert(v, c.to_circle()?);
        }
        let mut touch_points = BTreeMap::new();
        for t in &self.touch_points {
            let e = HexEdge::new(LatticeIndex::new(t.n, t.m), dir_from_name(&t.dir)?);
            touch_points.insert(e, t.point.to_point()?);
        }
        Ok(PackingLayout { window, circles, touch_points, provenance: self.provenance.to_provenance()? })
    }
}

pub fn parse_layout(text: &str) -> Result<PackingLayout, FormatError> {
    serde_json::from_str::<LayoutDoc>(text)?.to_layout()
}

// ---------------------------------------------------------------------------
// Flowers

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryDoc {
    pub symmetric: bool,
    pub opposite_defect: f64,
    pub spread: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub common_point: Option<PointDoc>,
    pub criteria_agree: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub s_circles: Vec<CircleDoc>,
}

impl SymmetryDoc {
    pub fn new(r: &SymmetryReport, s_circles: &[OrientedCircle]) -> Self {
        SymmetryDoc {
            symmetric: r.symmetric,
            opposite_defect: r.opposite_defect,
            spread: r.spread,
            common_point: r.common_point.map(Into::into),
            criteria_agree: r.criteria_agree,
            s_circles: s_circles.iter().map(|c| CircleDoc::from_circle(c, None)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowerDoc {
    pub format: String,
    pub version: u32,
    pub center: CircleDoc,
    pub petals: Vec<CircleDoc>,
    pub z: Vec<PointDoc>,
    pub w: Vec<PointDoc>,
    /// Edge cross-ratios `s_0 .. s_5`.
    pub s: Vec<ComplexDoc>,
    pub multi_ratio_defect: f64,
    pub max_residual: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<SymmetryDoc>,
}

impl FlowerDoc {
    pub fn new(f: &Flower) -> Result<Self, FormatError> {
        use hexpack_core::flower::{cross_ratios_s, flower_residuals};
        let residuals = flower_residuals(f);
        Ok(FlowerDoc {
            format: FLOWER_FORMAT.into(),
            version: VERSION,
            center: CircleDoc::from_circle(&f.center, None),
            petals: f.petals.iter().map(|c| CircleDoc::from_circle(c, None)).collect(),
            z: f.z.iter().map(|p| (*p).into()).collect(),
            w: f.w.iter().map(|p| (*p).into()).collect(),
            s: cross_ratios_s(f)?.s.iter().map(|s| (*s).into()).collect(),
            multi_ratio_defect: residuals.multi_ratio,
            max_residual: residuals.max(),
            r1: f.normalized_r1().ok(),
            symmetry: None,
        })
    }
}

// ---------------------------------------------------------------------------
// Reports shared by the CLI and the HTTP API

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelRangeDoc {
    pub lo: i64,
    pub hi: i64,
}

impl From<LevelRange> for LevelRangeDoc {
    fn from(r: LevelRange) -> Self {
        LevelRangeDoc { lo: r.lo, hi: r.hi }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImmersedWindowDoc {
    #[serde(default)]
    pub a: Option<LevelRangeDoc>,
    #[serde(default)]
    pub b: Option<LevelRangeDoc>,
    #[serde(default)]
    pub c: Option<LevelRangeDoc>,
    pub cap: i64,
    pub entire: bool,
    pub capped: bool,
}

impl From<ImmersedWindow> for ImmersedWindowDoc {
    fn from(w: ImmersedWindow) -> Self {
        ImmersedWindowDoc {
            a: w.a.map(Into::into),
            b: w.b.map(Into::into),
            c: w.c.map(Into::into),
            cap: w.cap,
            entire: w.entire,
            capped: w.is_capped(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hexpack_core::lattice::{solution_field, Window};
    use hexpack_core::layout::{doyle_spiral, layout_from_field, Normalization};

    #[test]
    fn floats_have_seventeen_digits_and_keys_sort() {
        #[derive(Serialize)]
        struct T {
            zeta: f64,
            alpha: u32,
        }
        let s = to_canonical_string(&T { zeta: 0.1, alpha: 3 });
        assert_eq!(s, "{\n  \"alpha\": 3,\n  \"zeta\": 1.0000000000000001e-1\n}\n");
        let back: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["zeta"].as_f64(), Some(0.1));
    }

    #[test]
    fn field_round_trip() {
        let p = SolutionParams::new(0.9, 1.0, 1.1).unwrap();
        let f = solution_field(&p, Window::square(2)).unwrap();
        let text = to_canonical_string(&FieldDoc::from_field(&f));
        let back = parse_field(&text).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn layout_round_trip_keeps_lines_and_infinity() {
        let p = SolutionParams::new(1.0, 1.0, 1.1).unwrap();
        let f = solution_field(&p, Window::square(2)).unwrap();
        let l = layout_from_field(&f, &Normalization::default()).unwrap();
        assert!(l.circles.values().any(|c| c.is_line()));
        let text = to_canonical_string(&LayoutDoc::from_layout(&l));
        let back = parse_layout(&text).unwrap();
        assert_eq!(back.touch_points, l.touch_points);
        for (v, c) in &l.circles {
            assert!(back.circles[v].approx_eq(c, 1e-12), "{v:?}");
        }
    }

    #[test]
    fn doyle_provenance_survives() {
        let d = DoyleParams::new(1.1, 0.9, 1.0).unwrap();
        let l = doyle_spiral(&d, Window::square(1)).unwrap();
        let back = parse_layout(&to_canonical_string(&LayoutDoc::from_layout(&l))).unwrap();
        assert_eq!(back.provenance, Provenance::Doyle(d));
    }

    #[test]
    fn wrong_format_is_rejected() {
        let f = EdgeField::new(Window::square(1));
        let text = to_canonical_string(&FieldDoc::from_field(&f));
        assert!(matches!(parse_layout(&text), Err(FormatError::WrongFormat { .. }) | Err(FormatError::Json(_))));
    }
}
