//! Points of the extended phase space and their affine charts.

use crate::curves::{Billiard, FramedCurve, FramedPoint};
use crate::dynamics::third_vertex;
use crate::error::{Error, Result};
use crate::projective::{azimuth, harmonic_defect, harmonic_form, P1Value, PLine, Point2};
use crate::scalar::Scalar;

/// A point with a frame line and a tangent line through it.
#[derive(Debug, Clone)]
pub struct Vertex<S> {
    pub point: Point2<S>,
    pub frame: PLine<S>,
    pub tangent: PLine<S>,
}

impl<S: Scalar> From<FramedPoint<S>> for Vertex<S> {
    fn from(m: FramedPoint<S>) -> Self {
        Self {
            point: m.point,
            frame: m.frame,
            tangent: m.tangent,
        }
    }
}

/// `(m_A, m_B, m_C)` with `m_A` on the framed curve `α` and free framed
/// points `m_B`, `m_C`.
#[derive(Debug, Clone)]
pub struct PhasePoint<S> {
    pub a: FramedPoint<S>,
    pub b: Vertex<S>,
    pub c: Vertex<S>,
}

impl<S: Scalar> PhasePoint<S> {
    pub fn new(a: FramedPoint<S>, b: Vertex<S>, c: Vertex<S>) -> Result<Self> {
        let ab = a
            .point
            .join(&b.point)
            .map_err(|_| Error::DegenerateConfiguration("A = B"))?;
        if ab.contains(&c.point) {
            return Err(Error::CollinearVertices);
        }
        if b.frame.same_as(&b.tangent) || c.frame.same_as(&c.tangent) {
            return Err(Error::DegenerateFrame);
        }
        for v in [&b, &c] {
            if !v.frame.contains(&v.point) || !v.tangent.contains(&v.point) {
                return Err(Error::NotThroughPoint);
            }
        }
        Ok(Self { a, b, c })
    }

    /// The triangular orbit of a billiard through `A = α(s)`, `B = β(t)`,
    /// with `m_C` the framed point of `γ` at the third vertex.
    pub fn from_family(bil: &Billiard<S>, s: &S, t: &S) -> Result<Self> {
        let a = bil.piece(0).eval(s)?;
        let b = bil.piece(1).eval(t)?;
        let c = third_vertex(&a, &b)?;
        let gamma = bil.piece(2);
        let mc = gamma.eval_unchecked(&gamma.nearest_param(&c)?)?;
        Self::new(a, b.into(), mc.into())
    }

    /// Scale-free defects of the three reflection laws.
    pub fn constraint_defects(&self) -> Result<[f64; 3]> {
        let (a, b, c) = (&self.a.point, &self.b.point, &self.c.point);
        let az = |l: &PLine<S>| azimuth(l).map_err(|_| Error::ChartDegenerate);
        let j = |p: &Point2<S>, q: &Point2<S>| p.join(q).map_err(|_| Error::CollinearVertices);
        Ok([
            harmonic_defect(&az(&self.a.frame)?, &az(&self.a.tangent)?, &az(&j(a, b)?)?, &az(&j(a, c)?)?),
            harmonic_defect(&az(&self.b.frame)?, &az(&self.b.tangent)?, &az(&j(b, a)?)?, &az(&j(b, c)?)?),
            harmonic_defect(&az(&self.c.frame)?, &az(&self.c.tangent)?, &az(&j(c, a)?)?, &az(&j(c, b)?)?),
        ])
    }
}

/// Rotations `(cos, sin) = (a/c, b/c)` by Pythagorean triples, tried in
/// order when a chart degenerates.
const ROTATIONS: [(i64, i64, i64); 6] = [(1, 0, 1), (3, 4, 5), (4, 3, 5), (-3, 4, 5), (5, 12, 13), (-12, 5, 13)];

/// Slopes and affine coordinates beyond this size count as degenerate.
const CHART_BOUND: f64 = 1e4;

/// Affine chart on `α × 𝒫 ` with coordinates
/// `(u, B_x, B_y, ℓ_B, τ_B, C_x, C_y, ℓ_C, τ_C)`: the parameter of `A` on
/// `α`, the affine coordinates of `B` and `C`, and the slopes of their frame
/// and tangent lines, all read after rotating the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chart {
    rotation: usize,
}

pub const CHART_DIM: usize = 9;

fn slope_between<S: Scalar>(p: &(S, S), q: &(S, S)) -> P1Value<S> {
    P1Value::from_raw(q.1.clone() - p.1.clone(), q.0.clone() - p.0.clone())
}

impl Chart {
    pub fn count() -> usize {
        ROTATIONS.len()
    }

    pub fn rotated(rotation: usize) -> Self {
        assert!(rotation < ROTATIONS.len());
        Self { rotation }
    }

    pub fn index(self) -> usize {
        self.rotation
    }

    fn matrix<S: Scalar>(self) -> [[S; 3]; 3] {
        let (a, b, c) = ROTATIONS[self.rotation];
        let (co, si) = (S::from_ratio(a, c), S::from_ratio(b, c));
        [
            [co.clone(), -si.clone(), S::zero()],
            [si, co, S::zero()],
            [S::zero(), S::zero(), S::one()],
        ]
    }

    fn apply<S: Scalar>(m: &[[S; 3]; 3], x: &[S; 3]) -> [S; 3] {
        std::array::from_fn(|i| {
            (0..3).fold(S::zero(), |acc, k| acc + m[i][k].clone() * x[k].clone())
        })
    }

    fn transpose<S: Scalar>(m: &[[S; 3]; 3]) -> [[S; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
    }

    // rotations are orthogonal, so lines transform like points
    fn point<S: Scalar>(self, p: &Point2<S>) -> Point2<S> {
        Point2::from_coords_unchecked(Self::apply(&self.matrix(), p.coords()))
    }

    fn line<S: Scalar>(self, l: &PLine<S>) -> PLine<S> {
        PLine::from_coeffs_unchecked(Self::apply(&self.matrix(), l.coeffs()))
    }

    fn unrotate_point<S: Scalar>(self, p: [S; 3]) -> Point2<S> {
        Point2::from_coords_unchecked(Self::apply(&Self::transpose(&self.matrix()), &p))
    }

    fn unrotate_line<S: Scalar>(self, l: [S; 3]) -> PLine<S> {
        PLine::from_coeffs_unchecked(Self::apply(&Self::transpose(&self.matrix()), &l))
    }

    fn xy<S: Scalar>(self, p: &Point2<S>) -> Result<(S, S)> {
        self.point(p).xy().ok_or(Error::ChartDegenerate)
    }

    fn slope<S: Scalar>(self, l: &PLine<S>) -> Result<S> {
        azimuth(&self.line(l))
            .ok()
            .and_then(|z| z.value())
            .ok_or(Error::ChartDegenerate)
    }

    /// Chart coordinates of `z`.
    pub fn coords<S: Scalar>(self, z: &PhasePoint<S>) -> Result<[S; CHART_DIM]> {
        let (bx, by) = self.xy(&z.b.point)?;
        let (cx, cy) = self.xy(&z.c.point)?;
        let x = [
            z.a.param.clone(),
            bx,
            by,
            self.slope(&z.b.frame)?,
            self.slope(&z.b.tangent)?,
            cx,
            cy,
            self.slope(&z.c.frame)?,
            self.slope(&z.c.tangent)?,
        ];
        if x[1..].iter().any(|v| v.magnitude() > CHART_BOUND) {
            return Err(Error::ChartDegenerate);
        }
        Ok(x)
    }

    /// Inverse of [`Chart::coords`] for the curve `alpha`.
    pub fn phase_point<S: Scalar>(self, alpha: &FramedCurve<S>, x: &[S; CHART_DIM]) -> Result<PhasePoint<S>> {
        let a = alpha.eval_unchecked(&x[0])?;
        let vertex = |px: &S, py: &S, l: &S, t: &S| {
            let point = self.unrotate_point([px.clone(), py.clone(), S::one()]);
            // slope m through (x0, y0): m·x − y + (y0 − m·x0) = 0
            let line = |m: &S| {
                self.unrotate_line([m.clone(), -S::one(), py.clone() - m.clone() * px.clone()])
            };
            Vertex {
                point,
                frame: line(l),
                tangent: line(t),
            }
        };
        PhasePoint::new(
            a,
            vertex(&x[1], &x[2], &x[3], &x[4]),
            vertex(&x[5], &x[6], &x[7], &x[8]),
        )
    }

    /// The three reflection constraints as harmonic forms of slopes, at the
    /// chart point `x`.
    pub fn constraints<S: Scalar>(self, alpha: &FramedCurve<S>, x: &[S; CHART_DIM]) -> Result<[S; 3]> {
        let ma = alpha.eval_unchecked(&x[0])?;
        let a = self.xy(&ma.point)?;
        let b = (x[1].clone(), x[2].clone());
        let c = (x[5].clone(), x[6].clone());
        let az = |l: &PLine<S>| azimuth(&self.line(l)).map_err(|_| Error::ChartDegenerate);
        let fin = |v: &S| P1Value::finite(v.clone());
        Ok([
            harmonic_form(&az(&ma.frame)?, &az(&ma.tangent)?, &slope_between(&a, &b), &slope_between(&a, &c)),
            harmonic_form(&fin(&x[3]), &fin(&x[4]), &slope_between(&b, &a), &slope_between(&b, &c)),
            harmonic_form(&fin(&x[7]), &fin(&x[8]), &slope_between(&c, &a), &slope_between(&c, &b)),
        ])
    }

    /// First chart in which `z` has moderate coordinates.
    pub fn choose<S: Scalar>(z: &PhasePoint<S>) -> Result<Self> {
        (0..ROTATIONS.len())
            .map(Self::rotated)
            .find(|ch| ch.coords(z).is_ok())
            .ok_or(Error::ChartDegenerate)
    }
}
