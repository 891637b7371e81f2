//! Triangular orbits in projective 3-space.

use crate::error::{Error, Result};
use crate::projective::{reflect_nd, Line3, PLine, Plane, Point3};
use crate::scalar::Scalar;

use super::map::Orbit;

/// Three framed vertices of a closed triangle in 3-space.
#[derive(Debug, Clone)]
pub struct Orbit3<S> {
    pub vertices: [Point3<S>; 3],
    pub frames: [Line3<S>; 3],
    pub tangents: [Plane<S>; 3],
}

/// A coordinate point far from `pi`, so that it spans 3-space with `pi`.
fn off_plane<S: Scalar>(pi: &Plane<S>) -> Point3<S> {
    let k = crate::scalar::argmax_magnitude(pi.coeffs()).expect("nonempty");
    Point3::from_coords_unchecked(std::array::from_fn(|i| {
        if i == k {
            S::one()
        } else {
            S::zero()
        }
    }))
}

/// Line `π ∩ h` through `at`, where `p`, `q` span `π` together with `at`.
fn trace<S: Scalar>(at: &Point3<S>, p: &Point3<S>, q: &Point3<S>, h: &Plane<S>) -> Result<Line3<S>> {
    if !h.contains(at) {
        return Err(Error::NotThroughPoint);
    }
    let x = p.combine(&h.eval(q), q, &-h.eval(p));
    if x.coords().iter().all(Scalar::is_zero) || x.same_as(at) {
        return Err(Error::DegenerateConfiguration("vertex plane inside the tangent plane"));
    }
    Line3::through(at, &x)
}

/// The frame at `at` making `(at p, at q)` symmetric with respect to the
/// frame and `T = π ∩ h`: the harmonic conjugate of `T` with respect to
/// `{at p, at q}`.
fn closing_frame<S: Scalar>(
    at: &Point3<S>,
    p: &Point3<S>,
    q: &Point3<S>,
    h: &Plane<S>,
    pi: &Plane<S>,
) -> Result<Line3<S>> {
    let t = trace(at, p, q, h)?;
    let aux = Plane::through(at, q, &off_plane(pi))?;
    reflect_nd(at, &t, &Line3::through(at, p)?, &aux)
}

impl<S: Scalar> Orbit3<S> {
    /// Builds a triangle from `A`, the framed point `(B, L_B, h_B)` and the
    /// parameter `c` of `C = B + c·(Y − B)` on the mirror image of `AB` at
    /// `B`. The frames at `A` and `C` are then the unique ones in the plane
    /// `ABC` closing the triangle for the tangent planes `h_A` and `h_C`.
    pub fn close_chain(
        a: &Point3<S>,
        b: &Point3<S>,
        frame_b: &Line3<S>,
        tangent_b: &Plane<S>,
        c: &S,
        tangent_a: &Plane<S>,
        tangent_c: &Plane<S>,
    ) -> Result<Self> {
        let pc = Self::third_vertex(a, b, frame_b, tangent_b, c)?;
        let pi = Plane::through(a, b, &pc)?;
        if !tangent_c.contains(&pc) {
            return Err(Error::NotThroughPoint);
        }
        let frame_a = closing_frame(a, b, &pc, tangent_a, &pi)?;
        let frame_c = closing_frame(&pc, a, b, tangent_c, &pi)?;
        Ok(Self {
            vertices: [a.clone(), b.clone(), pc],
            frames: [frame_a, frame_b.clone(), frame_c],
            tangents: [tangent_a.clone(), tangent_b.clone(), tangent_c.clone()],
        })
    }

    /// `C = B + c·(Y − B)` on the mirror image `BY` of `AB` at `B`.
    pub fn third_vertex(
        a: &Point3<S>,
        b: &Point3<S>,
        frame_b: &Line3<S>,
        tangent_b: &Plane<S>,
        c: &S,
    ) -> Result<Point3<S>> {
        let ab = Line3::through(a, b)?;
        let out = reflect_nd(b, &ab, frame_b, tangent_b)?;
        let y = out.point_other_than(b);
        let pc = b.combine(&(S::one() - c.clone()), &y, c);
        if pc.same_as(b) || pc.same_as(a) {
            return Err(Error::DegenerateConfiguration("C coincides with A or B"));
        }
        Ok(pc)
    }

    /// A planar orbit placed in the hyperplane `x₂ = 0`, each tangent line
    /// `(a, b, c)` thickened to the plane `(a, b, 1, c)`.
    pub fn embed_planar(orbit: &Orbit<S>) -> Result<Self> {
        if orbit.vertices.len() < 3 {
            return Err(Error::CollinearVertices);
        }
        let lift = |x: &[S; 3]| {
            Point3::from_coords_unchecked([x[0].clone(), x[1].clone(), S::zero(), x[2].clone()])
        };
        let second = |at: &[S; 3], l: &PLine<S>| -> Result<Point3<S>> {
            let [a, b, c] = l.coeffs().clone();
            let cands = [[b.clone(), -a.clone(), S::zero()], [c.clone(), S::zero(), -a], [S::zero(), c, -b]];
            cands
                .into_iter()
                .map(|x| lift(&x))
                .find(|x| {
                    !x.coords().iter().all(Scalar::is_zero) && !x.same_as(&lift(at))
                })
                .ok_or(Error::ZeroVector)
        };
        let mut vertices = Vec::new();
        let mut frames = Vec::new();
        let mut tangents = Vec::new();
        for v in &orbit.vertices[..3] {
            let x = v.point.point.coords();
            vertices.push(lift(x));
            frames.push(Line3::through(&lift(x), &second(x, &v.point.frame)?)?);
            let [a, b, c] = v.point.tangent.coeffs().clone();
            tangents.push(Plane::new([a, b, S::one(), c])?);
        }
        Ok(Self {
            vertices: to_array(vertices),
            frames: to_array(frames),
            tangents: to_array(tangents),
        })
    }

    /// Distance of `X_{j+1}` from the mirror image of `X_{j−1}X_j` at each
    /// vertex `X_j`.
    pub fn reflection_defects(&self) -> Result<[f64; 3]> {
        let v = &self.vertices;
        let mut out = [0.0; 3];
        for j in 0..3 {
            let prev = &v[(j + 2) % 3];
            let next = &v[(j + 1) % 3];
            let inc = Line3::through(prev, &v[j])?;
            let r = reflect_nd(&v[j], &inc, &self.frames[j], &self.tangents[j])?;
            out[j] = r.defect(next);
        }
        Ok(out)
    }
}

fn to_array<T: std::fmt::Debug>(v: Vec<T>) -> [T; 3] {
    v.try_into().expect("three entries")
}

/// Largest normalized distance from the plane `ABC` of the spanning points
/// of `AB`, `BC`, `CA`, `L_A`, `L_B`, `L_C`.
pub fn planarity_check<S: Scalar>(orbit: &Orbit3<S>) -> Result<f64> {
    let [a, b, c] = &orbit.vertices;
    let pi = Plane::through(a, b, c)?;
    let mut worst = 0.0f64;
    for x in [a, b, c] {
        worst = worst.max(pi.defect(x));
    }
    for l in &orbit.frames {
        for x in l.points() {
            worst = worst.max(pi.defect(x));
        }
    }
    Ok(worst)
}
