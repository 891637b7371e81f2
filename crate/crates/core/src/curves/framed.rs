//! Line-framed curves: a boundary curve with a transverse line field.
//!
//! Every piece carries a homogeneous polynomial parametrization `A(u)`, so
//! tangents `A(u) × A'(u)` and intersection multiplicities are closed-form in
//! every field.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::projective::{cross, PLine, Point2};
use crate::scalar::{argmax_magnitude, Scalar};

use super::poly::Poly;

/// Parameter domain of a piece.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Domain {
    /// Closed interval `[lo, hi]` (compared on real parts).
    Interval { lo: f64, hi: f64 },
    /// Every parameter value.
    Whole,
}

impl Domain {
    pub fn interval(lo: f64, hi: f64) -> Self {
        Domain::Interval { lo, hi }
    }

    pub fn contains(&self, u: f64) -> bool {
        match *self {
            Domain::Interval { lo, hi } => u >= lo && u <= hi,
            Domain::Whole => u.is_finite(),
        }
    }

    /// Bounds used for sampling; `Whole` samples `[-1, 1]`.
    pub fn sample_bounds(&self) -> (f64, f64) {
        match *self {
            Domain::Interval { lo, hi } => (lo, hi),
            Domain::Whole => (-1.0, 1.0),
        }
    }

    fn check(&self, u: f64) -> Result<()> {
        if self.contains(u) {
            Ok(())
        } else {
            let (lo, hi) = match *self {
                Domain::Interval { lo, hi } => (lo, hi),
                Domain::Whole => (f64::NEG_INFINITY, f64::INFINITY),
            };
            Err(Error::OutsideDomain { param: u, lo, hi })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    LineWithPivot,
    ConicNormal,
    ConicWithPivot,
    GraphCurve,
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CurveKind::LineWithPivot => "line_with_pivot",
            CurveKind::ConicNormal => "conic_normal",
            CurveKind::ConicWithPivot => "conic_with_pivot",
            CurveKind::GraphCurve => "graph_curve",
        };
        f.write_str(s)
    }
}

/// The transverse line field.
#[derive(Debug, Clone)]
pub enum FrameField<S> {
    /// All frame lines pass through a fixed point.
    Pivot(Point2<S>),
    /// Euclidean normal in the standard affine chart.
    EuclideanNormal,
    /// Frame slope given as a polynomial in the parameter.
    Slope(Poly<S>),
}

/// A boundary point with its frame and tangent line.
#[derive(Debug, Clone)]
pub struct FramedPoint<S> {
    pub point: Point2<S>,
    pub frame: PLine<S>,
    pub tangent: PLine<S>,
    pub curve_id: usize,
    pub param: S,
}

impl<S: Scalar> FramedPoint<S> {
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> FramedPoint<T> {
        FramedPoint {
            point: self.point.map(&f),
            frame: self.frame.map(&f),
            tangent: self.tangent.map(&f),
            curve_id: self.curve_id,
            param: f(&self.param),
        }
    }
}

/// Extra data allowing exact point location and implicit equations.
#[derive(Debug, Clone)]
enum Support<S> {
    /// `A(s) = (1 - s)·p + s·q` on the given representatives.
    Line { p: Point2<S>, q: Point2<S>, line: PLine<S> },
    /// Image of the unit circle under `X = c + x·e1 + y·e2`; `to_unit` maps
    /// homogeneous points to unit-circle coordinates, `matrix` is the conic.
    Conic { to_unit: [[S; 3]; 3], matrix: [[S; 3]; 3] },
    /// `A(u) = (x(u), y(u), 1)`.
    Parametric,
}

/// A line-framed curve piece.
#[derive(Debug, Clone)]
pub struct FramedCurve<S> {
    id: usize,
    kind: CurveKind,
    param: [Poly<S>; 3],
    dparam: [Poly<S>; 3],
    frame: FrameField<S>,
    domain: Domain,
    support: Support<S>,
}

fn mat_vec<S: Scalar>(m: &[[S; 3]; 3], v: &[S; 3]) -> [S; 3] {
    std::array::from_fn(|i| {
        (0..3).fold(S::zero(), |acc, j| acc + m[i][j].clone() * v[j].clone())
    })
}

/// Frame line through `a` with slope `g`: `(−w·g, w, x·g − y)`.
fn slope_line<S: Scalar>(a: &Point2<S>, g: &S) -> PLine<S> {
    let [x, y, w] = a.coords().clone();
    PLine::from_coeffs_unchecked([
        -(w.clone() * g.clone()),
        w,
        x * g.clone() - y,
    ])
}

/// Euclidean normal at `a` of the line `tangent`: `(b·w, −a·w, a·y − b·x)`.
fn normal_line<S: Scalar>(a: &Point2<S>, tangent: &PLine<S>) -> PLine<S> {
    let [x, y, w] = a.coords().clone();
    let [ta, tb, _] = tangent.coeffs().clone();
    PLine::from_coeffs_unchecked([
        tb.clone() * w.clone(),
        -(ta.clone() * w),
        ta * y - tb * x,
    ])
}

const TRANSVERSALITY_SAMPLES: usize = 64;

impl<S: Scalar> FramedCurve<S> {
    fn build(
        kind: CurveKind,
        param: [Poly<S>; 3],
        frame: FrameField<S>,
        domain: Domain,
        support: Support<S>,
    ) -> Result<Self> {
        let dparam = [
            param[0].derivative(),
            param[1].derivative(),
            param[2].derivative(),
        ];
        let curve = Self {
            id: 0,
            kind,
            param,
            dparam,
            frame,
            domain,
            support,
        };
        curve.validate_transversality()?;
        Ok(curve)
    }

    fn validate_transversality(&self) -> Result<()> {
        let (lo, hi) = self.domain.sample_bounds();
        for i in 0..=TRANSVERSALITY_SAMPLES {
            let u = lo + (hi - lo) * i as f64 / TRANSVERSALITY_SAMPLES as f64;
            let s = S::from_f64(u);
            let fp = self.eval_unchecked(&s)?;
            if fp.frame.same_as(&fp.tangent) {
                return Err(Error::NotTransverse { param: u });
            }
        }
        Ok(())
    }

    /// Segment `A(s) = (1 − s)·p + s·q` framed by lines through `pivot`.
    pub fn line_with_pivot(
        p: &Point2<S>,
        q: &Point2<S>,
        pivot: &Point2<S>,
        domain: Domain,
    ) -> Result<Self> {
        let line = p.join(q)?;
        if line.contains(pivot) {
            return Err(Error::PivotOnLine);
        }
        let param = std::array::from_fn(|i| {
            let (a, b) = (p.coords()[i].clone(), q.coords()[i].clone());
            Poly::linear(a.clone(), b - a)
        });
        Self::build(
            CurveKind::LineWithPivot,
            param,
            FrameField::Pivot(pivot.clone()),
            domain,
            Support::Line {
                p: p.clone(),
                q: q.clone(),
                line,
            },
        )
    }

    /// Conic `X = c + x·e1 + y·e2` with `x² + y² = 1`, parametrized by
    /// `(x, y) = ((1 − u²), 2u) / (1 + u²)`.
    fn conic(
        kind: CurveKind,
        center: [S; 2],
        e1: [S; 2],
        e2: [S; 2],
        frame: FrameField<S>,
        domain: Domain,
    ) -> Result<Self> {
        let det = e1[0].clone() * e2[1].clone() - e1[1].clone() * e2[0].clone();
        let scale = crate::scalar::norm2(&e1) * crate::scalar::norm2(&e2);
        if det.near_zero(scale) {
            return Err(Error::DegenerateConic);
        }
        let one = S::one();
        let two = S::from_i64(2);
        // (1+u²)c + (1−u²)e1 + 2u·e2
        let param = [0, 1]
            .map(|i| {
                Poly::new(vec![
                    center[i].clone() + e1[i].clone(),
                    two.clone() * e2[i].clone(),
                    center[i].clone() - e1[i].clone(),
                ])
            });
        let param = [
            param[0].clone(),
            param[1].clone(),
            Poly::new(vec![one.clone(), S::zero(), one]),
        ];
        // inverse of [e1 e2], then translate by −c
        let g = [
            [e2[1].clone() / det.clone(), -e2[0].clone() / det.clone()],
            [-e1[1].clone() / det.clone(), e1[0].clone() / det],
        ];
        let gc = [
            g[0][0].clone() * center[0].clone() + g[0][1].clone() * center[1].clone(),
            g[1][0].clone() * center[0].clone() + g[1][1].clone() * center[1].clone(),
        ];
        let to_unit = [
            [g[0][0].clone(), g[0][1].clone(), -gc[0].clone()],
            [g[1][0].clone(), g[1][1].clone(), -gc[1].clone()],
            [S::zero(), S::zero(), S::one()],
        ];
        // matrix = Hᵀ diag(1, 1, −1) H
        let sign = [S::one(), S::one(), -S::one()];
        let matrix = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).fold(S::zero(), |acc, k| {
                    acc + to_unit[k][i].clone() * sign[k].clone() * to_unit[k][j].clone()
                })
            })
        });
        if let FrameField::Pivot(p) = &frame {
            let v = mat_vec(&matrix, p.coords());
            let q = crate::projective::dot(p.coords(), &v);
            if q.near_zero(p.norm() * p.norm()) {
                return Err(Error::PivotOnLine);
            }
        }
        Self::build(
            kind,
            param,
            frame,
            domain,
            Support::Conic { to_unit, matrix },
        )
    }

    /// Conic with Euclidean normal frames.
    pub fn euclidean_normal_frame(
        center: [S; 2],
        e1: [S; 2],
        e2: [S; 2],
        domain: Domain,
    ) -> Result<Self> {
        Self::conic(
            CurveKind::ConicNormal,
            center,
            e1,
            e2,
            FrameField::EuclideanNormal,
            domain,
        )
    }

    /// Conic with frames through a pivot off the conic.
    pub fn conic_with_pivot(
        center: [S; 2],
        e1: [S; 2],
        e2: [S; 2],
        pivot: &Point2<S>,
        domain: Domain,
    ) -> Result<Self> {
        Self::conic(
            CurveKind::ConicWithPivot,
            center,
            e1,
            e2,
            FrameField::Pivot(pivot.clone()),
            domain,
        )
    }

    /// Circle of radius `r` about `center` with normal frames.
    pub fn circle(center: [S; 2], r: S, domain: Domain) -> Result<Self> {
        Self::euclidean_normal_frame(
            center,
            [r.clone(), S::zero()],
            [S::zero(), r],
            domain,
        )
    }

    /// Parametric polynomial curve `(x(u), y(u))` with frame slope `g(u)`.
    pub fn parametric(x: Poly<S>, y: Poly<S>, frame_slope: Poly<S>, domain: Domain) -> Result<Self> {
        Self::build(
            CurveKind::GraphCurve,
            [x, y, Poly::constant(S::one())],
            FrameField::Slope(frame_slope),
            domain,
            Support::Parametric,
        )
    }

    /// Graph `y = f(x)` with frame slope `g(x)`.
    pub fn graph(f: Poly<S>, frame_slope: Poly<S>, domain: Domain) -> Result<Self> {
        Self::parametric(Poly::linear(S::zero(), S::one()), f, frame_slope, domain)
    }

    pub fn with_id(mut self, id: usize) -> Self {
        self.id = id;
        self
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn with_domain(mut self, domain: Domain) -> Result<Self> {
        self.domain = domain;
        self.validate_transversality()?;
        Ok(self)
    }

    pub fn frame_field(&self) -> &FrameField<S> {
        &self.frame
    }

    /// Homogeneous parametrization.
    pub fn parametrization(&self) -> &[Poly<S>; 3] {
        &self.param
    }

    /// The supporting line of a line piece.
    pub fn supporting_line(&self) -> Option<&PLine<S>> {
        match &self.support {
            Support::Line { line, .. } => Some(line),
            _ => None,
        }
    }

    /// Symmetric matrix of a conic piece.
    pub fn conic_matrix(&self) -> Option<&[[S; 3]; 3]> {
        match &self.support {
            Support::Conic { matrix, .. } => Some(matrix),
            _ => None,
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> FramedCurve<T> {
        let mp = |p: &Poly<S>| p.map(f);
        let mm = |m: &[[S; 3]; 3]| -> [[T; 3]; 3] {
            std::array::from_fn(|i| std::array::from_fn(|j| f(&m[i][j])))
        };
        FramedCurve {
            id: self.id,
            kind: self.kind,
            param: [mp(&self.param[0]), mp(&self.param[1]), mp(&self.param[2])],
            dparam: [
                mp(&self.dparam[0]),
                mp(&self.dparam[1]),
                mp(&self.dparam[2]),
            ],
            frame: match &self.frame {
                FrameField::Pivot(p) => FrameField::Pivot(p.map(f)),
                FrameField::EuclideanNormal => FrameField::EuclideanNormal,
                FrameField::Slope(g) => FrameField::Slope(mp(g)),
            },
            domain: self.domain,
            support: match &self.support {
                Support::Line { p, q, line } => Support::Line {
                    p: p.map(f),
                    q: q.map(f),
                    line: line.map(f),
                },
                Support::Conic { to_unit, matrix } => Support::Conic {
                    to_unit: mm(to_unit),
                    matrix: mm(matrix),
                },
                Support::Parametric => Support::Parametric,
            },
        }
    }

    /// `1/u` when a floating conic is better evaluated through
    /// `B(v) = v²·A(1/v)`: for large `u` the quadratic terms of `A` swamp
    /// the linear one.
    fn reciprocal(&self, u: &S) -> Option<S> {
        (!S::EXACT && matches!(self.support, Support::Conic { .. }) && u.magnitude() > 1.0)
            .then(|| S::one() / u.clone())
    }

    fn coeff(&self, i: usize, k: usize) -> S {
        self.param[i].coeffs().get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn point_unchecked(&self, u: &S) -> Point2<S> {
        if let Some(v) = self.reciprocal(u) {
            return Point2::from_coords_unchecked(std::array::from_fn(|i| {
                (self.coeff(i, 0) * v.clone() + self.coeff(i, 1)) * v.clone() + self.coeff(i, 2)
            }));
        }
        Point2::from_coords_unchecked(std::array::from_fn(|i| self.param[i].eval(u)))
    }

    pub fn point(&self, u: &S) -> Result<Point2<S>> {
        self.domain.check(u.real())?;
        Ok(self.point_unchecked(u))
    }

    /// Derivative of the representative returned by `point_unchecked`, up to
    /// a factor; only the tangent line `A × A'` is read from it.
    fn velocity(&self, u: &S) -> [S; 3] {
        if let Some(v) = self.reciprocal(u) {
            return std::array::from_fn(|i| S::from_i64(2) * self.coeff(i, 0) * v.clone() + self.coeff(i, 1));
        }
        std::array::from_fn(|i| self.dparam[i].eval(u))
    }

    /// Framed point at parameter `u`, ignoring the domain.
    pub fn eval_unchecked(&self, u: &S) -> Result<FramedPoint<S>> {
        let a = self.point_unchecked(u);
        let tc = cross(a.coords(), &self.velocity(u));
        if tc.iter().all(|c| c.near_zero(a.norm() * a.norm())) {
            return Err(Error::DegenerateConfiguration("singular point of the curve"));
        }
        let tangent = PLine::from_coeffs_unchecked(tc);
        let frame = match &self.frame {
            FrameField::Pivot(p) => a.join(p).map_err(|_| Error::PivotOnLine)?,
            FrameField::EuclideanNormal => {
                let n = normal_line(&a, &tangent);
                if n.coeffs().iter().all(Scalar::is_zero) {
                    return Err(Error::DegenerateConic);
                }
                n
            }
            FrameField::Slope(g) => slope_line(&a, &g.eval(u)),
        };
        Ok(FramedPoint {
            point: a,
            frame,
            tangent,
            curve_id: self.id,
            param: u.clone(),
        })
    }

    pub fn eval(&self, u: &S) -> Result<FramedPoint<S>> {
        self.domain.check(u.real())?;
        let fp = self.eval_unchecked(u)?;
        if fp.frame.same_as(&fp.tangent) {
            return Err(Error::NotTransverse { param: u.real() });
        }
        Ok(fp)
    }

    /// `⟨l, A(u)⟩` as a polynomial in `u`.
    pub fn restrict_line(&self, l: &PLine<S>) -> Poly<S> {
        let c = l.coeffs();
        self.param[0]
            .scale(&c[0])
            .add(&self.param[1].scale(&c[1]))
            .add(&self.param[2].scale(&c[2]))
    }

    /// Parameter of a point on the curve (exact for lines and conics).
    pub fn locate(&self, x: &Point2<S>) -> Result<S> {
        let u = self.nearest_param(x)?;
        if !self.point_unchecked(&u).same_as(x) {
            return Err(Error::PointNotOnCurve);
        }
        Ok(u)
    }

    /// Parameter of a curve point near `x`, without requiring incidence:
    /// the projection along the pivot pencil for lines, stereographic
    /// projection for conics, the closest solution of `x(u) = x` otherwise.
    pub fn nearest_param(&self, x: &Point2<S>) -> Result<S> {
        match &self.support {
            Support::Line { p, q, .. } => {
                // (1 − s)·(x × p) + s·(x × q) = 0
                let xp = cross(x.coords(), p.coords());
                let xq = cross(x.coords(), q.coords());
                let d: [S; 3] = std::array::from_fn(|i| xp[i].clone() - xq[i].clone());
                let k = argmax_magnitude(&d).expect("nonempty");
                if d[k].is_zero() {
                    return Err(Error::PointNotOnCurve);
                }
                Ok(xp[k].clone() / d[k].clone())
            }
            Support::Conic { to_unit, .. } => {
                // stereographic projection from (−1, 0)
                let [cx, cy, w] = mat_vec(to_unit, x.coords());
                // near the pole use the equivalent form (w − x)/y on the conic
                if !S::EXACT && cx.real() * w.real() < 0.0 && !cy.is_zero() {
                    let q = cx.clone() * cx.clone() + cy.clone() * cy.clone() - w.clone() * w.clone();
                    let n = cx.magnitude().hypot(cy.magnitude()).hypot(w.magnitude());
                    if q.near_zero(n * n) {
                        return Ok((w - cx) / cy);
                    }
                }
                let den = w + cx;
                if den.is_zero() {
                    return Err(Error::PointNotOnCurve);
                }
                Ok(cy / den)
            }
            Support::Parametric => self.locate_parametric(x),
        }
    }

    fn locate_parametric(&self, x: &Point2<S>) -> Result<S> {
        let [px, py, pw] = x.coords().clone();
        if pw.is_zero() {
            return Err(Error::PointNotOnCurve);
        }
        let (xa, ya) = (px / pw.clone(), py / pw);
        let candidates_from = |p: &Poly<S>, target: &S| -> Result<Vec<S>> {
            p.add(&Poly::constant(-target.clone())).roots()
        };
        let mut roots = if self.param[0].degree() >= 1 {
            candidates_from(&self.param[0], &xa)?
        } else {
            candidates_from(&self.param[1], &ya)?
        };
        let target = Point2::from_coords_unchecked([xa, ya, S::one()]);
        let exact: Vec<S> = roots
            .iter()
            .filter(|u| self.point_unchecked(u).same_as(&target))
            .cloned()
            .collect();
        if !exact.is_empty() {
            roots = exact;
        }
        let (lo, hi) = self.domain.sample_bounds();
        let mid = 0.5 * (lo + hi);
        let dist = |u: &S| {
            let p = self.point_unchecked(u);
            match p.xy() {
                Some((x, y)) => (x - target.coords()[0].clone())
                    .magnitude()
                    .hypot((y - target.coords()[1].clone()).magnitude()),
                None => f64::INFINITY,
            }
        };
        roots
            .into_iter()
            .map(|u| (dist(&u), (u.real() - mid).abs(), u))
            .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)))
            .map(|t| t.2)
            .ok_or(Error::PointNotOnCurve)
    }

    /// Scale-free defect of `x` against the curve's equation: `⟨l, x⟩` for
    /// lines, `xᵀMx` for conics, and the chart distance to the located point
    /// for parametric curves.
    pub fn implicit_defect(&self, x: &Point2<S>) -> f64 {
        match &self.support {
            Support::Line { line, .. } => line.incidence_defect(x),
            Support::Conic { matrix, .. } => {
                let v = mat_vec(matrix, x.coords());
                let q = crate::projective::dot(x.coords(), &v);
                let n = x.norm();
                q.magnitude() / (n * n)
            }
            Support::Parametric => {
                let Some(xy) = x.xy() else {
                    return f64::INFINITY;
                };
                let fx = self.param[0].clone();
                let fy = self.param[1].clone();
                let use_x = fx.degree() >= 1;
                let (p, t) = if use_x { (&fx, &xy.0) } else { (&fy, &xy.1) };
                let Ok(roots) = p.add(&Poly::constant(-t.clone())).roots() else {
                    return f64::INFINITY;
                };
                roots
                    .iter()
                    .map(|u| {
                        let dx = (fx.eval(u) - xy.0.clone()).magnitude();
                        let dy = (fy.eval(u) - xy.1.clone()).magnitude();
                        dx.hypot(dy)
                    })
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Raw implicit value whose vanishing means `x` lies on the curve, for
    /// line and conic pieces.
    pub fn implicit_value(&self, x: &Point2<S>) -> Option<S> {
        match &self.support {
            Support::Line { line, .. } => Some(line.eval(x)),
            Support::Conic { matrix, .. } => {
                let v = mat_vec(matrix, x.coords());
                Some(crate::projective::dot(x.coords(), &v))
            }
            Support::Parametric => None,
        }
    }
}

/// The framed line `ω(l, P)`: points of `l`, frames through `P`.
///
/// Lines that are not vertical are parametrized by `x`, vertical ones by `y`.
pub fn omega<S: Scalar>(l: &PLine<S>, pivot: &Point2<S>, domain: Domain) -> Result<FramedCurve<S>> {
    if l.contains(pivot) {
        return Err(Error::PivotOnLine);
    }
    let [a, b, c] = l.coeffs().clone();
    let (p, q) = if !b.is_zero() {
        // (b·s, −(a·s + c), b) at s = 0 and s = 1
        (
            Point2::from_coords_unchecked([S::zero(), -c.clone(), b.clone()]),
            Point2::from_coords_unchecked([b.clone(), -(a + c), b]),
        )
    } else if !a.is_zero() {
        (
            Point2::from_coords_unchecked([-c.clone(), S::zero(), a.clone()]),
            Point2::from_coords_unchecked([-c, a.clone(), a]),
        )
    } else {
        return Err(Error::LineIsReference);
    };
    FramedCurve::line_with_pivot(&p, &q, pivot, domain)
}
