use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use projbill::birkhoff::{
    birkhoff_d, column_span, intersection_dim, restricted_rank, tangent_m_alpha, Chart, PhasePoint,
    DEFAULT_SV_TOL,
};
use projbill::curves::right_spherical;
use projbill::projective::Point2;

fn random_family_point(rng: &mut ChaCha8Rng) -> (projbill::curves::Billiard<f64>, f64, f64) {
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

#[test]
fn orbit_surfaces_are_integral() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut measured = 0;
    while measured < 20 {
        let (bil, s, t) = random_family_point(&mut rng);
        let Ok(rec) = restricted_rank(&bil, &s, &t, DEFAULT_SV_TOL) else { continue };
        measured += 1;
        assert_eq!((rec.dims.d, rec.dims.tm, rec.dims.s, rec.dims.s_in_d), (7, 6, 2, 2), "{rec:?}");
        assert!(rec.principal_angle <= 1e-9, "{rec:?}");
        assert!(rec.sv_gap >= 1e6, "{rec:?}");
    }
}

#[test]
fn generic_planes_in_the_phase_space_are_not_integral() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let (bil, s, t) = random_family_point(&mut rng);
        let z = PhasePoint::from_family(&bil, &s, &t).unwrap();
        let chart = Chart::choose(&z).unwrap();
        let (tm, _) = tangent_m_alpha(chart, bil.piece(0), &z, DEFAULT_SV_TOL).unwrap();
        let (d, _) = birkhoff_d(chart, &z, DEFAULT_SV_TOL).unwrap();
        let mix = DMatrix::from_fn(tm.dim(), 2, |_, _| rng.random_range(-1.0..1.0));
        let (plane, _) = column_span(&(&tm.vectors * mix), DEFAULT_SV_TOL).unwrap();
        let (k, _) = intersection_dim(&plane, &d, DEFAULT_SV_TOL).unwrap();
        assert!(k <= 1, "{k}");
    }
}
