//! Billiards on the unit sphere and their tautological projection.
//!
//! A geodesic is stored as the unit normal of its plane. The projection
//! `x ↦ [x₀ : x₁ : x₂]` sends the geodesic with normal `n` to the line with
//! covector `n`.

use crate::error::{Error, Result};
use crate::projective::{PLine, Point2};

use super::billiard::Billiard;
use super::framed::{Domain, FramedCurve};

pub type Vec3 = [f64; 3];

pub fn dot3(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn unit(a: &Vec3) -> Vec3 {
    let n = dot3(a, a).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

/// `x ↦ [x₀ : x₁ : x₂]`.
pub fn spherical_project(x: &Vec3) -> Point2<f64> {
    Point2::from_coords_unchecked(*x)
}

/// Image line of the geodesic with normal `n`.
pub fn project_geodesic(n: &Vec3) -> PLine<f64> {
    PLine::from_coeffs_unchecked(*n)
}

/// Mirror law at `at` on the great circle with unit normal `g`: the geodesic
/// direction `v = n × at` becomes `v − 2(v·g)g`.
pub fn spherical_reflect(geodesic: &Vec3, at: &Vec3, great_circle: &Vec3) -> Vec3 {
    let v = cross3(geodesic, at);
    let k = 2.0 * dot3(&v, great_circle);
    let v2 = [
        v[0] - k * great_circle[0],
        v[1] - k * great_circle[1],
        v[2] - k * great_circle[2],
    ];
    unit(&cross3(at, &v2))
}

/// Billiard bounded by great circles with unit normals `normals[i]`.
#[derive(Debug, Clone)]
pub struct GreatCircleBilliard {
    normals: Vec<Vec3>,
}

impl GreatCircleBilliard {
    pub fn new(normals: Vec<Vec3>) -> Self {
        Self {
            normals: normals.iter().map(unit).collect(),
        }
    }

    /// Three pairwise orthogonal great circles: the rows of a rotation
    /// matrix, ordered so that circle `i` is the side opposite to the
    /// projected axis point `i + 2` (mod 3).
    pub fn orthogonal(rotation: [Vec3; 3]) -> Self {
        let [g0, g1, g2] = rotation;
        Self::new(vec![g2, g0, g1])
    }

    pub fn normals(&self) -> &[Vec3] {
        &self.normals
    }

    /// Follows the geodesic through `a` (on circle 0) and `b` (on circle 1)
    /// for `steps` further reflections, starting at `b`. Returns the
    /// successive vertices `a, b, c, ...`.
    pub fn orbit(&self, a: &Vec3, b: &Vec3, steps: usize) -> Result<Vec<Vec3>> {
        let k = self.normals.len();
        let mut n = unit(&cross3(a, b));
        let mut pts = vec![*a, *b];
        for step in 0..steps {
            let j = (step + 1) % k;
            let at = *pts.last().expect("nonempty");
            n = spherical_reflect(&n, &at, &self.normals[j]);
            let g = &self.normals[(j + 1) % k];
            let c = cross3(&n, g);
            if dot3(&c, &c).sqrt() < 1e-14 {
                return Err(Error::NoIntersectionInDomain);
            }
            let c = unit(&c);
            // first hit along the direction of travel
            let v = cross3(&n, &at);
            let ang = |p: &Vec3| {
                let t = dot3(p, &v).atan2(dot3(p, &at));
                if t <= 1e-12 {
                    t + std::f64::consts::TAU
                } else {
                    t
                }
            };
            let minus = [-c[0], -c[1], -c[2]];
            let next = if ang(&c) <= ang(&minus) { c } else { minus };
            pts.push(next);
        }
        Ok(pts)
    }

    /// Projected billiard: line `n_i` framed by lines through the projected
    /// pole `[n_i]`, each side parametrized between the two poles of the
    /// neighbouring circles.
    pub fn projected(&self) -> Result<Billiard<f64>> {
        let k = self.normals.len();
        let pieces = (0..k)
            .map(|i| {
                let p = spherical_project(&self.normals[(i + k - 1) % k]);
                let q = spherical_project(&self.normals[(i + 1) % k]);
                let pivot = spherical_project(&self.normals[i]);
                FramedCurve::line_with_pivot(&p, &q, &pivot, Domain::Whole)
            })
            .collect::<Result<Vec<_>>>()?;
        Billiard::new(pieces)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_of_axis_point() {
        let p = spherical_project(&[0.0, 0.0, 1.0]);
        assert_eq!(p.coords(), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn great_circle_projects_to_a_line() {
        let n = unit(&[1.0, -2.0, 0.5]);
        let l = project_geodesic(&n);
        let e = unit(&cross3(&n, &[0.3, 0.1, 0.9]));
        let f = cross3(&n, &e);
        for k in 0..10 {
            let t = k as f64 * 0.6;
            let x = [
                t.cos() * e[0] + t.sin() * f[0],
                t.cos() * e[1] + t.sin() * f[1],
                t.cos() * e[2] + t.sin() * f[2],
            ];
            assert!(l.contains(&spherical_project(&x)));
        }
    }

    #[test]
    fn reflection_preserves_the_angle_with_the_mirror() {
        let g = [0.0, 0.0, 1.0];
        let at = [1.0, 0.0, 0.0];
        let n = unit(&[0.0, -0.6, 0.8]);
        let n2 = spherical_reflect(&n, &at, &g);
        let v = cross3(&n, &at);
        let v2 = cross3(&n2, &at);
        assert!((dot3(&v, &g) + dot3(&v2, &g)).abs() < 1e-15);
        assert!((dot3(&v, &[0.0, 1.0, 0.0]) - dot3(&v2, &[0.0, 1.0, 0.0])).abs() < 1e-15);
    }

    #[test]
    fn octant_orbits_close_after_three_reflections() {
        let b = GreatCircleBilliard::orthogonal([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        // a on z = 0, b on x = 0
        let a = unit(&[0.6, 0.8, 0.0]);
        let bb = unit(&[0.0, 0.3, 0.7]);
        let pts = b.orbit(&a, &bb, 6).unwrap();
        for (x, y) in pts[0..2].iter().zip(&pts[6..8]) {
            let d = cross3(x, y);
            assert!(dot3(&d, &d).sqrt() < 1e-12);
        }
    }
}
