//! Projective billiards as ordered collections of framed pieces.

use crate::error::{Error, Result};
use crate::projective::Point2;
use crate::scalar::Scalar;

use super::framed::{Domain, FramedCurve};

/// An ordered list of framed pieces in the projective plane.
#[derive(Debug, Clone)]
pub struct Billiard<S> {
    pieces: Vec<FramedCurve<S>>,
    dim: usize,
}

const DISTINCT_SAMPLES: usize = 17;

impl<S: Scalar> Billiard<S> {
    /// Pieces are renumbered `0..k` in order.
    pub fn new(pieces: Vec<FramedCurve<S>>) -> Result<Self> {
        if pieces.len() < 3 {
            return Err(Error::TooFewPieces(3));
        }
        let pieces: Vec<_> = pieces
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.with_id(i))
            .collect();
        for i in 0..pieces.len() {
            for j in (i + 1)..pieces.len() {
                if same_samples(&pieces[i], &pieces[j]) {
                    return Err(Error::DegenerateConfiguration("two pieces coincide"));
                }
            }
        }
        Ok(Self { pieces, dim: 2 })
    }

    pub fn pieces(&self) -> &[FramedCurve<S>] {
        &self.pieces
    }

    pub fn piece(&self, i: usize) -> &FramedCurve<S> {
        &self.pieces[i % self.pieces.len()]
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> Billiard<T> {
        Billiard {
            pieces: self.pieces.iter().map(|c| c.map(f)).collect(),
            dim: self.dim,
        }
    }
}

fn same_samples<S: Scalar>(a: &FramedCurve<S>, b: &FramedCurve<S>) -> bool {
    let (la, ha) = a.domain().sample_bounds();
    let (lb, hb) = b.domain().sample_bounds();
    (0..DISTINCT_SAMPLES).all(|i| {
        let t = i as f64 / (DISTINCT_SAMPLES - 1) as f64;
        let pa = a.point_unchecked(&S::from_f64(la + (ha - la) * t));
        let pb = b.point_unchecked(&S::from_f64(lb + (hb - lb) * t));
        pa.same_as(&pb)
    })
}

/// The billiard `(ω(PQ, R), ω(QR, P), ω(RP, Q))`, each side parametrized as
/// a segment `(1 − s)·X + s·Y` over `[0, 1]`.
pub fn right_spherical<S: Scalar>(p: &Point2<S>, q: &Point2<S>, r: &Point2<S>) -> Result<Billiard<S>> {
    right_spherical_on(p, q, r, Domain::interval(0.0, 1.0))
}

/// [`right_spherical`] with an explicit parameter domain for every side.
pub fn right_spherical_on<S: Scalar>(
    p: &Point2<S>,
    q: &Point2<S>,
    r: &Point2<S>,
    domain: Domain,
) -> Result<Billiard<S>> {
    let pq = p.join(q).map_err(|_| Error::CollinearVertices)?;
    if pq.contains(r) {
        return Err(Error::CollinearVertices);
    }
    Billiard::new(vec![
        FramedCurve::line_with_pivot(p, q, r, domain)?,
        FramedCurve::line_with_pivot(q, r, p, domain)?,
        FramedCurve::line_with_pivot(r, p, q, domain)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn pt(x: i64, y: i64) -> Point2<Rational> {
        Point2::affine(Rational::from_i64(x), Rational::from_i64(y))
    }

    #[test]
    fn right_spherical_pieces() {
        let (p, q, r) = (pt(0, 0), pt(0, 1), pt(1, 0));
        let b = right_spherical(&p, &q, &r).unwrap();
        assert_eq!(b.len(), 3);
        let line = b.piece(0).supporting_line().unwrap().clone();
        assert_eq!(line, p.join(&q).unwrap());
        let fp = b.piece(0).eval(&Rational::from_ratio(1, 2)).unwrap();
        assert!(fp.frame.contains(&r));
        assert_eq!(
            right_spherical(&p, &q, &pt(0, 5)).unwrap_err(),
            Error::CollinearVertices
        );
    }

    #[test]
    fn too_few_or_duplicate_pieces() {
        let (p, q, r) = (pt(0, 0), pt(0, 1), pt(1, 0));
        let a = FramedCurve::line_with_pivot(&p, &q, &r, Domain::interval(0.0, 1.0)).unwrap();
        assert_eq!(
            Billiard::new(vec![a.clone(), a.clone()]).unwrap_err(),
            Error::TooFewPieces(3)
        );
        assert!(Billiard::new(vec![a.clone(), a.clone(), a]).is_err());
    }
}
