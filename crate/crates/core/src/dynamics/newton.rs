//! Damped Gauss-Newton search for periodic orbits.

use nalgebra::{DMatrix, DVector};

use crate::curves::{Billiard, FramedPoint};
use crate::error::{Error, Result};
use crate::projective::{dot, reflect_line};
use crate::scalar::{Dual, Scalar};

use super::map::{Orbit, OrbitVertex};

const MAX_HALVINGS: usize = 30;

/// A periodic orbit found by [`find_periodic`].
#[derive(Debug, Clone)]
pub struct PeriodicOrbit {
    pub orbit: Orbit<f64>,
    pub params: Vec<f64>,
    /// Largest per-vertex closure equation at the returned parameters.
    pub residual: f64,
    pub iterations: usize,
}

/// Vertex `j` sits on piece `j mod n` at parameter `u[j]`; equation `j`
/// asks the mirror image of `A_{j−1}A_j` at `A_j` to pass through `A_{j+1}`.
fn equations<S: Scalar>(bil: &Billiard<S>, u: &[S]) -> Result<Vec<S>> {
    let k = u.len();
    let pts: Vec<FramedPoint<S>> = u
        .iter()
        .enumerate()
        .map(|(j, uj)| bil.piece(j).eval(uj))
        .collect::<Result<_>>()?;
    (0..k)
        .map(|j| {
            let prev = &pts[(j + k - 1) % k];
            let cur = &pts[j];
            let next = &pts[(j + 1) % k];
            let inc = prev
                .point
                .join(&cur.point)
                .map_err(|_| Error::DegenerateConfiguration("consecutive vertices coincide"))?;
            let out = reflect_line(&cur.point, &inc, &cur.frame, &cur.tangent)?;
            let scale = (dot(out.coeffs(), out.coeffs())
                * dot(next.point.coords(), next.point.coords()))
            .sqrt()
            .filter(|s| !s.is_zero())
            .ok_or(Error::DegenerateConfiguration("null reflected line"))?;
            Ok(dot(out.coeffs(), next.point.coords()) / scale)
        })
        .collect()
}

fn sup(r: &[f64]) -> f64 {
    r.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn out_of_domain(bil: &Billiard<f64>, u: &[f64]) -> Option<usize> {
    u.iter()
        .enumerate()
        .find(|(j, uj)| !bil.piece(*j).domain().contains(**uj))
        .map(|(j, _)| j % bil.len())
}

fn jacobian(dual: &Billiard<Dual<f64>>, u: &[f64]) -> Result<DMatrix<f64>> {
    let k = u.len();
    let mut jac = DMatrix::zeros(k, k);
    for i in 0..k {
        let ud: Vec<Dual<f64>> = u
            .iter()
            .enumerate()
            .map(|(j, x)| if j == i { Dual::variable(*x) } else { Dual::constant(*x) })
            .collect();
        let col = equations(dual, &ud)?;
        for (j, c) in col.iter().enumerate() {
            jac[(j, i)] = c.eps;
        }
    }
    Ok(jac)
}

/// Looks for a `k`-periodic orbit with vertex `j` on piece `j mod n`,
/// starting from `seed`. Steps are Gauss-Newton steps through the SVD
/// pseudo-inverse, halved until the residual decreases.
pub fn find_periodic(
    bil: &Billiard<f64>,
    k: usize,
    seed: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<PeriodicOrbit> {
    if k < 2 || seed.len() != k {
        return Err(Error::DegenerateConfiguration("need k ≥ 2 seed parameters"));
    }
    if let Some(piece) = out_of_domain(bil, seed) {
        return Err(Error::LeftDomain { piece });
    }
    let dual = bil.map(|x| Dual::constant(*x));
    let mut u = seed.to_vec();
    let mut r = equations(bil, &u)?;
    let mut best = sup(&r);
    let mut iterations = 0;
    while best > tol {
        if iterations == max_iter {
            return Err(Error::NoConvergence {
                best_residual: best,
            });
        }
        iterations += 1;
        let jac = jacobian(&dual, &u)?;
        let svd = jac.svd(true, true);
        let rv = DVector::from_column_slice(&r);
        let eps = svd.singular_values.max() * 1e-13;
        let step = svd
            .solve(&rv, eps)
            .map_err(|_| Error::DegenerateConfiguration("singular Jacobian"))?;
        let mut lam = 1.0;
        let mut accepted = false;
        let mut left = None;
        for _ in 0..=MAX_HALVINGS {
            let cand: Vec<f64> = u.iter().zip(step.iter()).map(|(x, d)| x - lam * d).collect();
            if let Some(piece) = out_of_domain(bil, &cand) {
                left = Some(piece);
            } else if let Ok(rc) = equations(bil, &cand) {
                let m = sup(&rc);
                if m < best {
                    u = cand;
                    r = rc;
                    best = m;
                    accepted = true;
                    break;
                }
            }
            lam *= 0.5;
        }
        if !accepted {
            return Err(match left {
                Some(piece) => Error::LeftDomain { piece },
                None => Error::NoConvergence {
                    best_residual: best,
                },
            });
        }
    }
    let orbit = closed_orbit(bil, &u)?;
    Ok(PeriodicOrbit {
        orbit,
        params: u,
        residual: best,
        iterations,
    })
}

/// The closed polygon through the vertices at parameters `u`.
pub fn closed_orbit<S: Scalar>(bil: &Billiard<S>, u: &[S]) -> Result<Orbit<S>> {
    let k = u.len();
    let pts: Vec<FramedPoint<S>> = u
        .iter()
        .enumerate()
        .map(|(j, uj)| bil.piece(j).eval(uj))
        .collect::<Result<_>>()?;
    let vertices = (0..k)
        .map(|j| {
            Ok(OrbitVertex {
                point: pts[j].clone(),
                incoming: pts[(j + k - 1) % k].point.join(&pts[j].point)?,
                outgoing: pts[j].point.join(&pts[(j + 1) % k].point)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Orbit {
        vertices,
        periodic: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{right_spherical, Domain, FramedCurve};
    use crate::projective::Point2;

    fn circle_arcs() -> Billiard<f64> {
        let pieces = (0..3)
            .map(|i| {
                let a = i as f64 * std::f64::consts::TAU / 3.0;
                FramedCurve::euclidean_normal_frame(
                    [0.0, 0.0],
                    [a.cos(), a.sin()],
                    [-a.sin(), a.cos()],
                    Domain::interval(-0.7, 0.7),
                )
                .unwrap()
            })
            .collect();
        Billiard::new(pieces).unwrap()
    }

    #[test]
    fn circle_triangle_is_equilateral() {
        let bil = circle_arcs();
        let found = find_periodic(&bil, 3, &[0.1, -0.2, 0.25], 1e-14, 50).unwrap();
        let angles: Vec<f64> = found
            .orbit
            .vertices
            .iter()
            .map(|v| {
                let (x, y) = v.point.point.xy().unwrap();
                y.atan2(x)
            })
            .collect();
        for j in 0..3 {
            let d = (angles[(j + 1) % 3] - angles[j]).rem_euclid(std::f64::consts::TAU);
            assert!((d - std::f64::consts::TAU / 3.0).abs() < 1e-10, "{angles:?}");
        }
        for d in found.orbit.defects(&bil) {
            assert!(d.reflection < 1e-12);
        }
    }

    #[test]
    fn right_spherical_needs_no_step() {
        let bil = right_spherical(
            &Point2::affine(0.0, 0.0),
            &Point2::affine(0.0, 1.0),
            &Point2::affine(1.0, 0.0),
        )
        .unwrap();
        // any A, B determine C; seed with the third vertex of (0.3, 0.6)
        let a = bil.piece(0).eval(&0.3).unwrap();
        let b = bil.piece(1).eval(&0.6).unwrap();
        let c = super::super::third_vertex(&a, &b).unwrap();
        let w = bil.piece(2).locate(&c).unwrap();
        let found = find_periodic(&bil, 3, &[0.3, 0.6, w], 1e-12, 10).unwrap();
        assert!(found.iterations <= 2);
    }

    #[test]
    fn seed_outside_domain() {
        let bil = circle_arcs();
        let e = find_periodic(&bil, 3, &[0.1, 0.9, 0.0], 1e-12, 10).unwrap_err();
        assert_eq!(e, Error::LeftDomain { piece: 1 });
    }
}
