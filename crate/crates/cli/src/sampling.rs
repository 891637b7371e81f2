//! Seeded random configurations for the verification suites.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use projbill::birkhoff::PhasePoint;
use projbill::curves::sphere::{cross3, dot3, spherical_project, unit, GreatCircleBilliard, Vec3};
use projbill::curves::{right_spherical, Billiard};
use projbill::dynamics::{closure_residual, iterate, planarity_check, Orbit3};
use projbill::projective::{Line3, Plane, Point2, Point3};
use projbill::Result;

/// Uniform rotation from a normalized random quaternion.
pub fn random_rotation(rng: &mut ChaCha8Rng) -> [Vec3; 3] {
    let q: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [w, x, y, z] = q.map(|c| c / n);
    [
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ]
}

/// One spherical orbit compared with its planar image.
#[derive(Debug, Clone, Copy)]
pub struct SphericalSample {
    /// Largest sine of the angle between a spherical vertex and the
    /// corresponding planar vertex.
    pub mismatch: f64,
    pub residual: f64,
    pub periodic: bool,
}

/// Random orbit of the billiard bounded by three mutually orthogonal great
/// circles, traced on the sphere and in the projected plane.
pub fn spherical_sample(rng: &mut ChaCha8Rng) -> Result<SphericalSample> {
    let rot = random_rotation(rng);
    let sph = GreatCircleBilliard::orthogonal(rot);
    let [g0, g1, g2] = rot;
    let (th, ph): (f64, f64) = (rng.random_range(0.1..1.4), rng.random_range(0.1..1.4));
    let a = unit(&std::array::from_fn(|i| th.cos() * g0[i] + th.sin() * g1[i]));
    let b = unit(&std::array::from_fn(|i| ph.cos() * g1[i] + ph.sin() * g2[i]));
    let pts = sph.orbit(&a, &b, 4)?;
    let bil = sph.projected()?;
    let s = bil.piece(0).locate(&spherical_project(&a))?;
    let t = bil.piece(1).locate(&spherical_project(&b))?;
    let orbit = iterate(&bil, &s, &t, 4)?;
    let mismatch = pts
        .iter()
        .zip(&orbit.vertices)
        .map(|(x, v)| {
            let y: Vec3 = *v.point.point.coords();
            let c = cross3(x, &y);
            dot3(&c, &c).sqrt() / dot3(&y, &y).sqrt()
        })
        .fold(0.0, f64::max);
    Ok(SphericalSample {
        mismatch,
        residual: closure_residual(&bil, &s, &t)?.value(),
        periodic: orbit.periodic,
    })
}

/// Right-spherical billiard on a random triangle in `[-2, 2]²` together with
/// initial parameters at which the family point is defined.
pub fn family_point(rng: &mut ChaCha8Rng) -> (Billiard<f64>, f64, f64) {
    loop {
        let mut p = || Point2::affine(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let (a, b, c) = (p(), p(), p());
        let Ok(bil) = right_spherical(&a, &b, &c) else { continue };
        let (s, t) = (rng.random_range(0.1..0.9), rng.random_range(0.1..0.9));
        if PhasePoint::from_family(&bil, &s, &t).is_ok() {
            return (bil, s, t);
        }
    }
}

/// As [`family_point`], moved off the real locus.
pub fn complex_family_point(rng: &mut ChaCha8Rng) -> (Billiard<Complex64>, Complex64, Complex64) {
    loop {
        let (bil, s, t) = family_point(rng);
        let bil = bil.map(|x| Complex64::new(*x, 0.0));
        let s = Complex64::new(s, rng.random_range(-0.2..0.2));
        let t = Complex64::new(t, rng.random_range(-0.2..0.2));
        if PhasePoint::from_family(&bil, &s, &t).is_ok() {
            return (bil, s, t);
        }
    }
}

fn p3(x: [f64; 3]) -> Point3<f64> {
    Point3::from_coords_unchecked([x[0], x[1], x[2], 1.0])
}

fn cube(rng: &mut ChaCha8Rng) -> [f64; 3] {
    std::array::from_fn(|_| rng.random_range(-1.0..1.0))
}

/// Plane through `x` with a random normal.
fn plane_through(rng: &mut ChaCha8Rng, x: &Point3<f64>) -> Result<Plane<f64>> {
    let n = cube(rng);
    let c = x.coords();
    let d = -(n[0] * c[0] + n[1] * c[1] + n[2] * c[2]) / c[3];
    Plane::new([n[0], n[1], n[2], d])
}

/// A random closed reflection triangle in 3-space: `A`, the framed point
/// `B` and the tangent planes are random, `C` is chosen on the reflected
/// ray, and the frames at `A`, `C` are those closing the triangle.
pub fn random_chain(rng: &mut ChaCha8Rng) -> Result<Orbit3<f64>> {
    let a = p3(cube(rng));
    let b = p3(cube(rng));
    let frame_b = Line3::through(&b, &p3(cube(rng)))?;
    let hb = plane_through(rng, &b)?;
    let ha = plane_through(rng, &a)?;
    let c = rng.random_range(0.2..2.0);
    let pc = Orbit3::third_vertex(&a, &b, &frame_b, &hb, &c)?;
    let hc = plane_through(rng, &pc)?;
    Orbit3::close_chain(&a, &b, &frame_b, &hb, &c, &ha, &hc)
}

/// The chain with the frame at `B` tilted out of the plane `ABC`.
pub fn tilted(orbit: &Orbit3<f64>, eps: f64) -> Result<Orbit3<f64>> {
    let [a, b, c] = &orbit.vertices;
    let pi = Plane::through(a, b, c)?;
    let [n0, n1, n2, _] = *pi.coeffs();
    let bx = b.to_affine().expect("affine vertex");
    let other = orbit.frames[1].point_other_than(b).to_affine().expect("affine frame point");
    let len = (0..3).map(|i| (other[i] - bx[i]).powi(2)).sum::<f64>().sqrt();
    let nn = (n0 * n0 + n1 * n1 + n2 * n2).sqrt();
    let lifted: [f64; 3] = std::array::from_fn(|i| other[i] + eps * len * [n0, n1, n2][i] / nn);
    let mut out = orbit.clone();
    out.frames[1] = Line3::through(b, &p3(lifted))?;
    Ok(out)
}

/// Planarity defect of the chain, or `None` when it is degenerate.
pub fn chain_defect(orbit: &Orbit3<f64>) -> Option<f64> {
    planarity_check(orbit).ok().filter(|d| d.is_finite())
}
