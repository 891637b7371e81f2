//! The billiard map and orbit iteration.

use serde::Serialize;

use crate::curves::{Billiard, FramedCurve, FramedPoint};
use crate::error::{Error, Result};
use crate::projective::{cross, reflect_line, PLine, Point2};
use crate::scalar::{norm2, Scalar};

/// A vertex of an orbit with the lines arriving at and leaving it.
#[derive(Debug, Clone)]
pub struct OrbitVertex<S> {
    pub point: FramedPoint<S>,
    pub incoming: PLine<S>,
    pub outgoing: PLine<S>,
}

#[derive(Debug, Clone)]
pub struct Orbit<S> {
    pub vertices: Vec<OrbitVertex<S>>,
    pub periodic: bool,
}

/// Per-vertex consistency numbers of an orbit.
#[derive(Debug, Clone, Serialize)]
pub struct VertexDefect {
    /// Distance between `outgoing` and the reflection of `incoming`.
    pub reflection: f64,
    /// Incidence of the vertex with its piece.
    pub on_curve: f64,
    /// Incidence of the next vertex with `outgoing`.
    pub chain: f64,
}

/// Sine of the angle between two covectors: zero iff the lines coincide.
pub fn line_distance<S: Scalar>(a: &PLine<S>, b: &PLine<S>) -> f64 {
    let c = cross(a.coeffs(), b.coeffs());
    let s = a.norm() * b.norm();
    if s == 0.0 {
        return f64::INFINITY;
    }
    norm2(&c) / s
}

/// Meets `line` with `piece`, skipping the root at `exclude` when that point
/// lies on the piece. Among several admissible roots the one closest in
/// parameter to `prev` wins, else the smallest parameter.
pub fn intersect_piece<S: Scalar>(
    piece: &FramedCurve<S>,
    line: &PLine<S>,
    exclude: Option<&Point2<S>>,
    prev: Option<f64>,
) -> Result<FramedPoint<S>> {
    let mut f = piece.restrict_line(line);
    if f.is_zero() {
        return Err(Error::TangentIncidence);
    }
    if let Some(x) = exclude {
        if let Ok(u1) = piece.locate(x) {
            if line.contains(x) {
                f = f.deflate_stable(&u1);
            }
        }
    }
    let roots = f.roots()?;
    let domain = piece.domain();
    let mut best: Option<(S, f64)> = None;
    for u in roots {
        let ur = u.real();
        if !domain.contains(ur) {
            continue;
        }
        let key = prev.map_or(ur, |p| (ur - p).abs());
        let better = match &best {
            None => true,
            Some((b, k)) => key < *k || (key == *k && ur < b.real()),
        };
        if better {
            best = Some((u, key));
        }
    }
    let (u, _) = best.ok_or(Error::NoIntersectionInDomain)?;
    let fp = piece.eval(&u)?;
    if fp.tangent.same_as(line) {
        return Err(Error::TangentIncidence);
    }
    Ok(fp)
}

fn check_framed<S: Scalar>(m: &FramedPoint<S>) -> Result<()> {
    if m.frame.same_as(&m.tangent) {
        return Err(Error::DegenerateFrame);
    }
    Ok(())
}

/// Reflects the line `m1 m2` at `m2` and meets the result with `piece3`.
pub fn billiard_map<S: Scalar>(
    m1: &FramedPoint<S>,
    m2: &FramedPoint<S>,
    piece3: &FramedCurve<S>,
    prev: Option<f64>,
) -> Result<(FramedPoint<S>, FramedPoint<S>)> {
    check_framed(m1)?;
    check_framed(m2)?;
    let incoming = m1.point.join(&m2.point)?;
    if incoming.same_as(&m1.tangent) || incoming.same_as(&m2.tangent) {
        return Err(Error::TangentIncidence);
    }
    let out = reflect_line(&m2.point, &incoming, &m2.frame, &m2.tangent)?;
    let m3 = intersect_piece(piece3, &out, Some(&m2.point), prev)?;
    Ok((m2.clone(), m3))
}

/// Follows the orbit through `piece(0)(s)` and `piece(1)(t)` for `steps`
/// further reflections; vertex `j` lies on piece `j mod k`.
pub fn iterate<S: Scalar>(bil: &Billiard<S>, s: &S, t: &S, steps: usize) -> Result<Orbit<S>> {
    let k = bil.len();
    let mut pts = vec![bil.piece(0).eval(s)?, bil.piece(1).eval(t)?];
    let mut last_param: Vec<Option<f64>> = vec![None; k];
    last_param[0] = Some(s.real());
    last_param[1] = Some(t.real());
    for j in 0..steps {
        let next = (j + 2) % k;
        let (_, m3) = billiard_map(&pts[j], &pts[j + 1], bil.piece(next), last_param[next])?;
        last_param[next] = Some(m3.param.real());
        pts.push(m3);
    }
    let n = pts.len();
    let mut vertices = Vec::with_capacity(n);
    for j in 0..n {
        let p = &pts[j];
        let (incoming, outgoing) = if j + 1 < n {
            let out = p.point.join(&pts[j + 1].point)?;
            let inc = if j > 0 {
                pts[j - 1].point.join(&p.point)?
            } else {
                reflect_line(&p.point, &out, &p.frame, &p.tangent)?
            };
            (inc, out)
        } else {
            let inc = pts[j - 1].point.join(&p.point)?;
            let out = reflect_line(&p.point, &inc, &p.frame, &p.tangent)?;
            (inc, out)
        };
        vertices.push(OrbitVertex {
            point: p.clone(),
            incoming,
            outgoing,
        });
    }
    let periodic = n >= k + 2
        && pts[k].point.same_as(&pts[0].point)
        && pts[k + 1].point.same_as(&pts[1].point);
    Ok(Orbit { vertices, periodic })
}

impl<S: Scalar> Orbit<S> {
    pub fn defects(&self, bil: &Billiard<S>) -> Vec<VertexDefect> {
        let n = self.vertices.len();
        (0..n)
            .map(|j| {
                let v = &self.vertices[j];
                let reflection =
                    match reflect_line(&v.point.point, &v.incoming, &v.point.frame, &v.point.tangent) {
                        Ok(r) => line_distance(&r, &v.outgoing),
                        Err(_) => f64::INFINITY,
                    };
                let on_curve = bil.piece(v.point.curve_id).implicit_defect(&v.point.point);
                let chain = if j + 1 < n {
                    v.outgoing.incidence_defect(&self.vertices[j + 1].point.point)
                } else {
                    0.0
                };
                VertexDefect {
                    reflection,
                    on_curve,
                    chain,
                }
            })
            .collect()
    }

    /// The same orbit traversed backwards.
    pub fn reversed(&self) -> Self {
        let vertices = self
            .vertices
            .iter()
            .rev()
            .map(|v| OrbitVertex {
                point: v.point.clone(),
                incoming: v.outgoing.clone(),
                outgoing: v.incoming.clone(),
            })
            .collect();
        Self {
            vertices,
            periodic: self.periodic,
        }
    }
}
