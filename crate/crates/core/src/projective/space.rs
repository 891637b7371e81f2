//! Points, planes and lines of projective 3-space.

use crate::error::{Error, Result};
use crate::scalar::{norm2, Scalar};

use super::point::{dot, is_null, proportional, Point3};

/// Plane `⟨π, X⟩ = 0` of projective 3-space.
#[derive(Debug, Clone)]
pub struct Plane<S> {
    coeffs: [S; 4],
}

/// Line of projective 3-space spanned by two distinct points.
#[derive(Debug, Clone)]
pub struct Line3<S> {
    p: Point3<S>,
    q: Point3<S>,
}

fn det3<S: Scalar>(m: [[&S; 3]; 3]) -> S {
    m[0][0].clone() * (m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone())
        - m[0][1].clone() * (m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone())
        + m[0][2].clone() * (m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone())
}

/// The four 3×3 minors of the 3×4 matrix with rows `a, b, c`, signed so that
/// the result is the covector of the plane they span.
fn plane_covector<S: Scalar>(a: &[S; 4], b: &[S; 4], c: &[S; 4]) -> [S; 4] {
    std::array::from_fn(|skip| {
        let cols: Vec<usize> = (0..4).filter(|&j| j != skip).collect();
        let m = [a, b, c].map(|r| [&r[cols[0]], &r[cols[1]], &r[cols[2]]]);
        let d = det3(m);
        if skip % 2 == 0 {
            d
        } else {
            -d
        }
    })
}

/// Whether three points of 3-space are collinear (or coincide).
pub fn collinear<S: Scalar>(a: &Point3<S>, b: &Point3<S>, c: &Point3<S>) -> bool {
    let pi = plane_covector(a.coords(), b.coords(), c.coords());
    is_null(&pi, a.norm() * b.norm() * c.norm())
}

impl<S: Scalar> Plane<S> {
    pub fn new(coeffs: [S; 4]) -> Result<Self> {
        if coeffs.iter().all(Scalar::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { coeffs })
    }

    /// Plane spanned by three non-collinear points.
    pub fn through(a: &Point3<S>, b: &Point3<S>, c: &Point3<S>) -> Result<Self> {
        let coeffs = plane_covector(a.coords(), b.coords(), c.coords());
        if is_null(&coeffs, a.norm() * b.norm() * c.norm()) {
            return Err(Error::CollinearVertices);
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[S; 4] {
        &self.coeffs
    }

    pub fn norm(&self) -> f64 {
        norm2(&self.coeffs)
    }

    pub fn eval(&self, x: &Point3<S>) -> S {
        dot(&self.coeffs, x.coords())
    }

    pub fn contains(&self, x: &Point3<S>) -> bool {
        self.eval(x).near_zero(self.norm() * x.norm())
    }

    /// `|⟨π, X⟩| / (‖π‖‖X‖)`.
    pub fn defect(&self, x: &Point3<S>) -> f64 {
        let s = self.norm() * x.norm();
        if s == 0.0 {
            0.0
        } else {
            self.eval(x).magnitude() / s
        }
    }

    pub fn same_as(&self, other: &Self) -> bool {
        proportional(&self.coeffs, &other.coeffs)
    }
}

impl<S: Scalar> Line3<S> {
    pub fn through(p: &Point3<S>, q: &Point3<S>) -> Result<Self> {
        if p.same_as(q) {
            return Err(Error::CoincidentPoints);
        }
        Ok(Self {
            p: p.clone(),
            q: q.clone(),
        })
    }

    pub fn points(&self) -> [&Point3<S>; 2] {
        [&self.p, &self.q]
    }

    pub fn contains(&self, x: &Point3<S>) -> bool {
        collinear(&self.p, &self.q, x)
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.contains(&other.p) && self.contains(&other.q)
    }

    /// Sine of the angle between `x` and the 2-space spanned by the line,
    /// as vectors of the ambient 4-space; zero iff `x` is on the line.
    pub fn defect(&self, x: &Point3<S>) -> f64 {
        let (a, b) = (self.p.coords(), self.q.coords());
        let mut pq = 0.0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let m = a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
                pq += m.magnitude().powi(2);
            }
        }
        let s = pq.sqrt() * x.norm();
        if s == 0.0 {
            return f64::INFINITY;
        }
        norm2(&plane_covector(a, b, x.coords())) / s
    }

    /// Intersection with a plane not containing the line.
    pub fn meet_plane(&self, plane: &Plane<S>) -> Result<Point3<S>> {
        let x = self
            .p
            .combine(&plane.eval(&self.q), &self.q, &-plane.eval(&self.p));
        if is_null(x.coords(), self.p.norm() * self.q.norm() * plane.norm()) {
            return Err(Error::CurveInLine);
        }
        Ok(x)
    }

    /// A point of the line other than `at`, chosen as far from `at` as the
    /// two spanning points allow.
    pub fn point_other_than(&self, at: &Point3<S>) -> Point3<S> {
        let sep = |x: &Point3<S>| {
            let (a, b) = (at.coords(), x.coords());
            let mut s = 0.0;
            for i in 0..4 {
                for j in (i + 1)..4 {
                    let m = a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
                    s += m.magnitude().powi(2);
                }
            }
            s.sqrt() / (at.norm() * x.norm()).max(f64::MIN_POSITIVE)
        };
        if sep(&self.p) >= sep(&self.q) {
            self.p.clone()
        } else {
            self.q.clone()
        }
    }
}

/// Reflection of a line through a framed point of a hypersurface of 3-space.
///
/// `at` lies on the surface with tangent plane `tangent`, `frame` is the
/// frame line. The incoming and frame lines span a plane `Π` meeting the
/// tangent plane in a line `T`; inside `Π` the outgoing line is the harmonic
/// conjugate of the incoming one with respect to `{frame, T}`. Choosing
/// points `X_in`, `X_f` on the incoming and frame lines, the outgoing line
/// passes through `2⟨h, X_in⟩X_f − ⟨h, X_f⟩X_in`.
pub fn reflect_nd<S: Scalar>(
    at: &Point3<S>,
    incoming: &Line3<S>,
    frame: &Line3<S>,
    tangent: &Plane<S>,
) -> Result<Line3<S>> {
    if !tangent.contains(at) || !incoming.contains(at) || !frame.contains(at) {
        return Err(Error::NotThroughPoint);
    }
    let x_in = incoming.point_other_than(at);
    let x_f = frame.point_other_than(at);
    let h_f = tangent.eval(&x_f);
    if h_f.near_zero(tangent.norm() * x_f.norm()) {
        return Err(Error::FrameInTangentPlane);
    }
    if collinear(at, &x_in, &x_f) {
        return Err(Error::IncomingEqualsFrame);
    }
    let two = S::from_i64(2);
    let y = x_f.combine(&(two * tangent.eval(&x_in)), &x_in, &-h_f);
    Line3::through(at, &y)
}

/// Line `Π ∩ tangent` used by [`reflect_nd`], returned as a spanning point
/// besides `at`: `⟨h, X_in⟩X_f − ⟨h, X_f⟩X_in`.
pub fn reflection_tangent_point<S: Scalar>(
    at: &Point3<S>,
    incoming: &Line3<S>,
    frame: &Line3<S>,
    tangent: &Plane<S>,
) -> Point3<S> {
    let x_in = incoming.point_other_than(at);
    let x_f = frame.point_other_than(at);
    x_f.combine(&tangent.eval(&x_in), &x_in, &-tangent.eval(&x_f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn p(c: [i64; 3]) -> Point3<Rational> {
        Point3::new([
            Rational::from_i64(c[0]),
            Rational::from_i64(c[1]),
            Rational::from_i64(c[2]),
            Rational::from_i64(1),
        ])
        .unwrap()
    }

    #[test]
    fn plane_through_three_points() {
        let (a, b, c) = (p([1, 0, 0]), p([0, 2, 0]), p([0, 0, 3]));
        let pl = Plane::through(&a, &b, &c).unwrap();
        for x in [&a, &b, &c] {
            assert!(pl.contains(x));
        }
        assert!(!pl.contains(&p([0, 0, 0])));
        assert_eq!(
            Plane::through(&a, &p([2, 0, 0]), &p([3, 0, 0])).unwrap_err(),
            Error::CollinearVertices
        );
    }

    #[test]
    fn euclidean_mirror_in_a_coordinate_plane() {
        // tangent plane z = 0 at the origin with the z-axis as frame:
        // ordinary mirror reflection
        let o = p([0, 0, 0]);
        let h = Plane::new([0, 0, 1, 0].map(Rational::from_i64)).unwrap();
        let frame = Line3::through(&o, &p([0, 0, 1])).unwrap();
        let inc = Line3::through(&o, &p([1, 2, 3])).unwrap();
        let out = reflect_nd(&o, &inc, &frame, &h).unwrap();
        assert!(out.contains(&p([1, 2, -3])));
    }

    #[test]
    fn reflect_nd_errors() {
        let o = p([0, 0, 0]);
        let h = Plane::new([0, 0, 1, 0].map(Rational::from_i64)).unwrap();
        let flat = Line3::through(&o, &p([1, 0, 0])).unwrap();
        let inc = Line3::through(&o, &p([1, 2, 3])).unwrap();
        assert_eq!(
            reflect_nd(&o, &inc, &flat, &h).unwrap_err(),
            Error::FrameInTangentPlane
        );
        assert_eq!(
            reflect_nd(&o, &inc, &inc, &h).unwrap_err(),
            Error::IncomingEqualsFrame
        );
        let off = Line3::through(&p([5, 0, 0]), &p([5, 0, 1])).unwrap();
        assert_eq!(
            reflect_nd(&o, &off, &inc, &h).unwrap_err(),
            Error::NotThroughPoint
        );
    }
}
